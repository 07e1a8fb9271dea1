from itertools import product

from django.test import SimpleTestCase

from schemes.exceptions import (
    DanglingBoundary,
    DimensionOutOfRange,
    DimMismatch,
    GlobularityViolation,
)
from schemes.globular import (
    Cell,
    GlobMap,
    GlobularSet,
    build_disk,
    disk_face,
    disk_inclusion,
    glue,
    hom_globular_set,
    is_parallel,
    pair_map,
    validate_globular_set,
)
from schemes.serializers import GlobularSetSerializer
from schemes.values import Side

from .fixtures import PATH, TWO_DIAGRAM, cells, path_set, two_diagram_set


class ValidateGlobularSetTests(SimpleTestCase):

    def test_single_point(self):
        space = validate_globular_set({"cells": {"0": ["x"]}})
        self.assertEqual(space.max_dim, 0)
        self.assertEqual(space.cell_counts(), (1,))

    def test_one_arrow(self):
        space = validate_globular_set({
            "cells": {"0": ["a", "b"], "1": ["f"]},
            "src": {"1": {"f": "a"}},
            "tgt": {"1": {"f": "b"}},
        })
        f, a = cells(space, "f", "a")
        self.assertEqual(space.source(f), a)

    def test_mismatched_endpoints(self):
        presentation = {
            "cells": {"0": ["a", "b", "c"], "1": ["f", "g"], "2": ["alpha"]},
            "src": {"1": {"f": "a", "g": "a"}, "2": {"alpha": "f"}},
            "tgt": {"1": {"f": "b", "g": "c"}, "2": {"alpha": "g"}},
        }
        with self.assertRaises(GlobularityViolation):
            validate_globular_set(presentation)

    def test_dangling(self):
        with self.assertRaises(DanglingBoundary):
            validate_globular_set({
                "cells": {"0": ["a"], "1": ["f"]},
                "src": {"1": {"f": "a"}},
                "tgt": {"1": {"f": "z"}},
            })
        with self.assertRaises(DanglingBoundary):
            validate_globular_set({"cells": {"0": ["a"], "1": ["f"]}})

    def test_presentation_round_trip(self):
        space = two_diagram_set()
        self.assertEqual(validate_globular_set(space.to_presentation()), space)
        self.assertEqual(space.to_presentation()["cells"]["2"], ["alpha", "beta", "gamma"])


class DiskTests(SimpleTestCase):

    def test_empty_boundary_of_point(self):
        self.assertEqual(len(build_disk(0, True)), 0)

    def test_counts(self):
        self.assertEqual(build_disk(2).cell_counts(), (2, 2, 1))
        self.assertEqual(build_disk(1, True).cell_counts(), (2,))

    def test_inclusion_and_faces(self):
        self.assertEqual(len(disk_inclusion(3).domain), 6)
        face = disk_face(1, 2, Side.TGT)
        self.assertEqual(face(Cell(1, "e1")), Cell(1, "t1"))
        self.assertEqual(face(Cell(0, "s0")), Cell(0, "s0"))


class ParallelTests(SimpleTestCase):

    def test_points_are_parallel(self):
        a, d = cells(two_diagram_set(), "a", "d")
        self.assertTrue(is_parallel(two_diagram_set(), a, d))

    def test_arrows(self):
        space = two_diagram_set()
        f, g, h = cells(space, "f", "g", "h")
        self.assertTrue(is_parallel(space, f, g))
        self.assertFalse(is_parallel(space, f, h))
        with self.assertRaises(DimMismatch):
            is_parallel(space, f, cells(space, "alpha")[0])

    def test_pair_maps_match_parallel_pairs(self):
        space = two_diagram_set()
        for dim in (0, 1):
            for u, v in product(space.cells_of(dim), repeat=2):
                try:
                    pair_map(space, u, v)
                    exists = True
                except GlobularityViolation:
                    exists = False
                self.assertEqual(exists, is_parallel(space, u, v), (u, v))


class GlueTests(SimpleTestCase):

    def test_pushout_of_boundaries(self):
        for n in (1, 2, 3):
            edge = build_disk(n - 1, True)
            disk = build_disk(n - 1)
            inclusion = disk_inclusion(n - 1)
            colimit = glue([edge, disk, disk], [(0, 1, inclusion), (0, 2, inclusion)])
            self.assertEqual(colimit.apex.cell_counts(), build_disk(n, True).cell_counts())

    def test_single_object(self):
        space = two_diagram_set()
        colimit = glue([space])
        self.assertEqual(colimit.apex.cell_counts(), space.cell_counts())
        self.assertTrue(colimit.legs[0].is_isomorphism())

    def test_names_are_canonical(self):
        colimit = glue([build_disk(1)])
        names = sorted(c.name for c in colimit.apex)
        self.assertEqual(names, ["q0_0", "q0_1", "q1_0"])

    def test_arrow_must_match_objects(self):
        with self.assertRaises(GlobularityViolation):
            glue([build_disk(1), build_disk(2)], [(0, 1, disk_inclusion(1))])


class HomTests(SimpleTestCase):

    def test_single_arrow(self):
        space = path_set()
        a, b = cells(space, "a", "b")
        hom = hom_globular_set(space, a, b)
        self.assertEqual(hom.cell_counts(), (1,))
        self.assertEqual(hom.cells_of(0)[0].name, "f")

    def test_loops(self):
        space = path_set()
        a, = cells(space, "a")
        self.assertEqual([c.name for c in hom_globular_set(space, a, a).cells_of(0)], ["e"])

    def test_discrete(self):
        space = GlobularSet({0: [Cell(0, "a")], 1: []}, max_dim=1)
        self.assertEqual(len(hom_globular_set(space, Cell(0, "a"), Cell(0, "a"))), 0)
        with self.assertRaises(DimensionOutOfRange):
            hom_globular_set(build_disk(0), Cell(0, "e0"), Cell(0, "e0"))

    def test_counts_match_filter(self):
        space = two_diagram_set()
        for x, y in product(space.cells_of(0), repeat=2):
            hom = hom_globular_set(space, x, y)
            for dim in (1, 2):
                expected = [
                    c for c in space.cells_of(dim)
                    if space.source_at(c, 0) == x and space.target_at(c, 0) == y
                ]
                self.assertEqual(len(hom.cells_of(dim - 1)), len(expected))


class GlobMapTests(SimpleTestCase):

    def test_relabelling_round_trip(self):
        space = path_set()
        renamed = validate_globular_set({
            "cells": {"0": ["A", "B", "C", "D"], "1": ["E", "F", "G", "H"]},
            "src": {"1": {"E": "A", "F": "A", "G": "B", "H": "C"}},
            "tgt": {"1": {"E": "A", "F": "B", "G": "C", "H": "D"}},
        })
        mapping = {c: renamed.cell(c.name.upper(), c.dim) for c in space}
        iso = GlobMap(space, renamed, mapping)
        self.assertTrue(iso.is_isomorphism())
        back = iso.then(iso.inverse())
        self.assertEqual(back.mapping, GlobMap.identity(space).mapping)

    def test_non_commuting_map(self):
        space = path_set()
        f, g = cells(space, "f", "g")
        mapping = {c: c for c in space}
        mapping[f] = g
        with self.assertRaises(GlobularityViolation):
            GlobMap(space, space, mapping)


class GlobularSetSerializerTests(SimpleTestCase):

    def test_valid(self):
        serializer = GlobularSetSerializer(data=TWO_DIAGRAM)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data["globular_set"], two_diagram_set())

    def test_domain_error_keeps_its_code(self):
        broken = dict(PATH, tgt={"1": {"e": "a", "f": "b", "g": "c", "h": "nowhere"}})
        serializer = GlobularSetSerializer(data=broken)
        self.assertFalse(serializer.is_valid())
        self.assertEqual(serializer.errors["non_field_errors"][0].code, "dangling_boundary")

    def test_bad_dimension_key(self):
        serializer = GlobularSetSerializer(data={"cells": {"zero": ["a"]}})
        self.assertFalse(serializer.is_valid())
        self.assertIn("cells", serializer.errors)

    def test_names_outside_the_syntax(self):
        for name in ("f-1", "1f", "f g", ""):
            serializer = GlobularSetSerializer(data={"cells": {"0": ["a", name]}})
            self.assertFalse(serializer.is_valid(), name)
            self.assertIn("cells", serializer.errors)
        broken = dict(PATH, src={"1": dict(PATH["src"]["1"], f="a.0")})
        serializer = GlobularSetSerializer(data=broken)
        self.assertFalse(serializer.is_valid())
        self.assertIn("src", serializer.errors)

    def test_unicode_and_primes(self):
        data = {"cells": {"0": ["a", "a'"], "1": ["α", "_f2"]}, "src": {"1": {"α": "a", "_f2": "a"}},
                "tgt": {"1": {"α": "a'", "_f2": "a'"}}}
        serializer = GlobularSetSerializer(data=data)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(sorted(c.name for c in serializer.validated_data["globular_set"].cells_of(1)), ["_f2", "α"])
