"""
Unit tests for the layered triangulation and its boundary torus
"""

import cmath
import itertools
import random
import unittest

from src.core.exceptions import DegenerateShape
from src.farey import parse_word
from src.triangulation import (
    build_triangulation,
    gluing_equations,
    holonomy,
    reference_level,
    semi_meridian_curve,
    slot_value,
)

FIGURE_EIGHT_SHAPE = cmath.exp(1j * cmath.pi / 3)


def canonical_words(max_period):
    seen = set()
    for period in range(2, max_period + 1):
        for letters in itertools.product('LR', repeat=period):
            if len(set(letters)) < 2:
                continue
            word = parse_word(''.join(letters))
            if word.text not in seen:
                seen.add(word.text)
                yield word


def random_shape(rng):
    while True:
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(z) > 0.2 and abs(z - 1) > 0.2:
            return z


class TestLayeredTriangulation(unittest.TestCase):
    """Test edge classes and gluing equations"""

    def test_slot_exponents(self):
        """Test that every tetrahedron meets each slot pair twice"""
        for word in canonical_words(6):
            tri = build_triangulation(word)
            self.assertEqual(tri.size, word.period)
            self.assertEqual(len(tri.edges), word.period)
            self.assertEqual(sum(e.valence for e in tri.edges), 6 * word.period)
            for tet in range(tri.size):
                per_slot = {0: 0, 1: 0, 2: 0}
                for _, slot, exp in tri.incidences(tet):
                    per_slot[slot] += exp
                self.assertEqual(per_slot, {0: 2, 1: 2, 2: 2})

    def test_hinge_tags(self):
        """Test hinge tetrahedra of LLRLR"""
        tri = build_triangulation(parse_word('LLRLR'))
        self.assertEqual([t.hinge for t in tri.tets], [None, 'v', 't', 'v', 't'])

    def test_gluing_dependency(self):
        """Test that the product of all gluing equations is identically 1"""
        rng = random.Random(7)
        for word in canonical_words(8):
            equations = gluing_equations(build_triangulation(word))
            for _ in range(100):
                shapes = {t: random_shape(rng) for t in range(word.period)}
                product = 1 + 0j
                for eq in equations:
                    product *= eq.evaluate(shapes)
                self.assertLess(abs(product - 1), 1e-10, word.text)

    def test_figure_eight_edges(self):
        """Test the two edge equations of LR"""
        tri = build_triangulation(parse_word('LR'))
        self.assertEqual(
            tri.edges[0].incidences, ((0, 0, 1), (0, 2, 2), (1, 0, 1), (1, 2, 2))
        )
        self.assertEqual(
            tri.edges[1].incidences, ((0, 0, 1), (0, 1, 2), (1, 0, 1), (1, 1, 2))
        )

    def test_figure_eight_complete_structure(self):
        """Test that both shapes exp(i pi / 3) solve LR"""
        tri = build_triangulation(parse_word('LR'))
        shapes = {0: FIGURE_EIGHT_SHAPE, 1: FIGURE_EIGHT_SHAPE}
        for eq in tri.equations():
            self.assertLess(eq.residual(shapes), 1e-12)

    def test_slot_values(self):
        """Test that the three slot values multiply to -1"""
        z = 0.3 + 0.4j
        product = slot_value(z, 0) * slot_value(z, 1) * slot_value(z, 2)
        self.assertAlmostEqual(product, -1 + 0j, places=12)


class TestCuspTriangulation(unittest.TestCase):
    """Test the boundary torus and its curves"""

    def test_boundary_is_torus(self):
        """Test that the boundary has Euler characteristic 0"""
        for word in canonical_words(5):
            cusp = build_triangulation(word).boundary
            self.assertEqual(len(cusp.triangles()), 4 * word.period)
            self.assertEqual(cusp.vertex_count(), 2 * word.period)
            self.assertEqual(cusp.euler_characteristic(), 0)

    def test_reference_level(self):
        """Test that the reference level is the first hinge"""
        self.assertEqual(reference_level(build_triangulation(parse_word('LLLRR'))), 2)

    def test_semi_meridian_is_half_turn(self):
        """Test that the semi-meridian closes up under the half turn"""
        tri = build_triangulation(parse_word('LR'))
        curve = semi_meridian_curve(tri)
        self.assertTrue(curve.half_turn)
        self.assertEqual(curve.homology_class, (1, 0))
        self.assertTrue(curve.corner_steps)

    def test_complete_meridian_holonomy(self):
        """Test that the semi-meridian squares to 1 at the complete structure"""
        tri = build_triangulation(parse_word('LR'))
        shapes = {0: FIGURE_EIGHT_SHAPE, 1: FIGURE_EIGHT_SHAPE}
        value = holonomy(tri, shapes, semi_meridian_curve(tri))
        self.assertLess(abs(value ** 2 - 1), 1e-12)

    def test_degenerate_shape(self):
        """Test that holonomy refuses degenerate shapes"""
        tri = build_triangulation(parse_word('LR'))
        with self.assertRaises(DegenerateShape):
            holonomy(tri, {0: 1, 1: FIGURE_EIGHT_SHAPE}, semi_meridian_curve(tri))


if __name__ == '__main__':
    unittest.main()
