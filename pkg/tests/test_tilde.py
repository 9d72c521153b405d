"""
Unit tests for the leading-order equation systems
"""

import json
import unittest

from src.core.exceptions import OrderImbalance
from src.farey import build_farey_strip, enumerate_minimal_paths, parse_word
from src.surfaces import (
    DegenerationProfile,
    DegenerationType,
    add_spheres,
    orientability_and_double,
    path_to_yoshida,
)
from src.tilde import (
    DIRECTION,
    build_tilde_system,
    dump_tilde_system,
    evaluate_bar_residual,
    leading_term,
    mu_measurements,
)
from src.triangulation import build_triangulation


def system_for(text, index):
    word = parse_word(text)
    tri = build_triangulation(word)
    path = enumerate_minimal_paths(build_farey_strip(word))[index]
    profile, _ = add_spheres(path_to_yoshida(path, tri), tri, path)
    _, profile = orientability_and_double(profile, tri, path)
    return tri, profile, build_tilde_system(profile, tri)


class TestLeadingTerms(unittest.TestCase):
    """Test coefficients of single slots"""

    def test_degenerate_slots(self):
        """Test y, -1/y and 1 coefficients of a T1 tetrahedron"""
        profile = DegenerationProfile((2, 0), (DegenerationType.T1, DegenerationType.NONE))
        terms = [leading_term(profile, 0, slot, 1) for slot in range(3)]
        self.assertEqual([t.coefficient for t in terms], ['1', 'y', '-1/y'])
        self.assertEqual([t.zeta_order for t in terms], [0, 2, -2])
        self.assertEqual(terms[2].value({0: 4}), -0.25)

    def test_angle_slots(self):
        """Test the three angle coefficients of a non-degenerate tetrahedron"""
        profile = DegenerationProfile((2, 0), (DegenerationType.T1, DegenerationType.NONE))
        terms = [leading_term(profile, 1, slot, 1) for slot in range(3)]
        self.assertEqual([t.coefficient for t in terms], ['z', '(z-1)/z', '1/(1-z)'])
        z = 0.5 + 0.5j
        product = 1
        for term in terms:
            product *= term.value({1: z})
        self.assertAlmostEqual(abs(product + 1), 0, places=12)


class TestTildeSystem(unittest.TestCase):
    """Test bar equations of verified profiles"""

    def test_sphere_equations(self):
        """Test the two sphere vertices of the pivot path of LLLRRR"""
        _, _, system = system_for('LLLRRR', 2)
        spheres = system.sphere_equations
        self.assertEqual([eq.edge_id for eq in spheres], [0, 4])
        self.assertEqual(spheres[0].terms, ((1, -1), (5, -1)))
        self.assertEqual(spheres[1].terms, ((3, -1), (5, -1)))
        self.assertEqual(str(spheres[0]), '-y1 -y5 = 0')
        self.assertEqual([eq.edge_id for eq in system.regular_equations], [1, 2, 3, 5])
        self.assertEqual(system.direction_ids(), list(range(6)))

    def test_mu_reference(self):
        """Test the semi-meridian monomial of the outer L path of LR"""
        _, profile, system = system_for('LR', 0)
        self.assertTrue(profile.doubled)
        self.assertEqual(system.zeta_exponent_unit, 2)
        self.assertEqual(system.mu_reference.zeta_order, 4)
        self.assertAlmostEqual(system.mu_reference.value({0: 2, 1: 5}), -4)

    def test_bar_residual(self):
        """Test that y0 = 1, y1 = -1 solves the outer L path of LR"""
        _, _, system = system_for('LR', 0)
        self.assertLess(evaluate_bar_residual(system, {0: 1, 1: -1}), 1e-12)
        self.assertLess(evaluate_bar_residual(system, {0: -1, 1: -1}), 1e-12)
        self.assertGreater(evaluate_bar_residual(system, {0: 1, 1: 1}), 0.5)

    def test_every_level(self):
        """Test that the semi-meridian under every level gives -1 at the solution"""
        tri, _, system = system_for('LR', 0)
        measurements = mu_measurements(system, tri)
        self.assertEqual(len(measurements), tri.size)
        self.assertEqual(measurements[0].level, system.mu_reference.level)
        self.assertEqual({m.zeta_order for m in measurements}, {4})
        self.assertLess(evaluate_bar_residual(system, {0: 1, 1: -1}, measurements), 1e-12)

    def test_missing_variable(self):
        """Test that a partial assignment is rejected"""
        _, _, system = system_for('LR', 0)
        with self.assertRaises(KeyError):
            evaluate_bar_residual(system, {0: 1})

    def test_order_imbalance(self):
        """Test that unmatched twisted squares are rejected"""
        tri = build_triangulation(parse_word('LR'))
        profile = DegenerationProfile((1, 0), (DegenerationType.T1, DegenerationType.NONE))
        with self.assertRaises(OrderImbalance) as raised:
            build_tilde_system(profile, tri)
        self.assertEqual(raised.exception.exit_code, 4)

    def test_dump(self):
        """Test the JSON dump of a tilde system"""
        tri, _, system = system_for('LLLRRR', 2)
        data = json.loads(dump_tilde_system(system, tri))
        self.assertEqual(len(data['equations']), 6)
        self.assertTrue(all('name' in eq for eq in data['equations']))
        spheres = [eq for eq in data['equations'] if eq['class'] == 'sphere']
        self.assertEqual([eq['text'] for eq in spheres], ['-y1 -y5 = 0', '-y3 -y5 = 0'])
        self.assertTrue(all(v['kind'] == DIRECTION for v in data['variables']))


if __name__ == '__main__':
    unittest.main()
