"""Small globular sets shared by the test suites."""
from schemes.globular import validate_globular_set

# a --f,g--> b --h--> c --i,j,k--> d, with 2-cells alpha: f=>g, beta: i=>j, gamma: j=>k
TWO_DIAGRAM = {
    "max_dim": 2,
    "cells": {
        "0": ["a", "b", "c", "d"],
        "1": ["f", "g", "h", "i", "j", "k"],
        "2": ["alpha", "beta", "gamma"],
    },
    "src": {
        "1": {"f": "a", "g": "a", "h": "b", "i": "c", "j": "c", "k": "c"},
        "2": {"alpha": "f", "beta": "i", "gamma": "j"},
    },
    "tgt": {
        "1": {"f": "b", "g": "b", "h": "c", "i": "d", "j": "d", "k": "d"},
        "2": {"alpha": "g", "beta": "j", "gamma": "k"},
    },
}

# a --f--> b --g--> c --h--> d, plus a loop e: a -> a
PATH = {
    "max_dim": 1,
    "cells": {"0": ["a", "b", "c", "d"], "1": ["e", "f", "g", "h"]},
    "src": {"1": {"e": "a", "f": "a", "g": "b", "h": "c"}},
    "tgt": {"1": {"e": "a", "f": "b", "g": "c", "h": "d"}},
}


def two_diagram_set():
    return validate_globular_set(TWO_DIAGRAM)


def path_set():
    return validate_globular_set(PATH)


def cells(space, *names):
    """Look cells up by name, highest dimension first."""
    found = []
    for name in names:
        for dim in range(space.max_dim, -1, -1):
            matches = [c for c in space.cells_of(dim) if c.name == name]
            if matches:
                found.append(matches[0])
                break
        else:
            raise KeyError(name)
    return found
