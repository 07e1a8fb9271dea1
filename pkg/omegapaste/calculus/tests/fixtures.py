"""Globular sets for the weak omega-category suites."""
from schemes.globular import validate_globular_set

# a --f,g,h--> b --i--> c --j,k--> d, with alpha: f=>g, beta: g=>h, gamma: j=>k
UNIT_EXAMPLE = {
    "max_dim": 2,
    "cells": {
        "0": ["a", "b", "c", "d"],
        "1": ["f", "g", "h", "i", "j", "k"],
        "2": ["alpha", "beta", "gamma"],
    },
    "src": {
        "1": {"f": "a", "g": "a", "h": "a", "i": "b", "j": "c", "k": "c"},
        "2": {"alpha": "f", "beta": "g", "gamma": "j"},
    },
    "tgt": {
        "1": {"f": "b", "g": "b", "h": "b", "i": "c", "j": "d", "k": "d"},
        "2": {"alpha": "g", "beta": "h", "gamma": "k"},
    },
}

# a single 0-cell with a loop
LOOP = {
    "max_dim": 1,
    "cells": {"0": ["a"], "1": ["f"]},
    "src": {"1": {"f": "a"}},
    "tgt": {"1": {"f": "a"}},
}


def unit_example_set():
    return validate_globular_set(UNIT_EXAMPLE)


def loop_set():
    return validate_globular_set(LOOP)
