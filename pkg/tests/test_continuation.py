"""
Unit tests for continuation, rate fits and peripheral orders
"""

import cmath
import math
import unittest
from fractions import Fraction

from src.core.exceptions import InsufficientSteps, NoConvergence, RateMismatch
from src.continuation import (
    ContinuationTrace,
    HolonomyConstraint,
    TetState,
    check_rates,
    fit_rates,
    gluing_residual,
    newton_refine,
    order_zero_class,
    peripheral_orders,
    reconstruct_shapes,
    shapes_of,
    run_continuation,
    zeta_schedule,
)
from src.farey import build_farey_strip, enumerate_minimal_paths, parse_word
from src.solver import ClosedFormSolver, IdealPointSolution
from src.surfaces import add_spheres, orientability_and_double, path_to_yoshida
from src.tilde import build_tilde_system
from src.triangulation import build_triangulation, holonomy, semi_meridian_curve
from src.utils.config_loader import ConfigLoader

FIGURE_EIGHT_SHAPE = cmath.exp(1j * cmath.pi / 3)


class TestShapes(unittest.TestCase):
    """Test shape states near the ideal point"""

    def test_small_slot_precision(self):
        """Test that the slot tending to 1 keeps its tiny correction"""
        state = TetState(0, complex(math.log(1e-20)))
        self.assertLess(abs(state.log_slot(2) / 1e-20 - 1), 1e-12)
        self.assertLess(abs(state.log_slot(1) - (math.log(1e20) + 1j * math.pi)), 1e-12)

    def test_shape_from_carry(self):
        """Test that every carrying slot gives back the same shape"""
        z = 0.3 + 0.9j
        for carry, value in ((0, z), (1, (z - 1) / z), (2, 1 / (1 - z))):
            state = TetState(carry, cmath.log(value))
            self.assertLess(abs(state.shape - z), 1e-12, carry)

    def test_reconstruct_range(self):
        """Test that zeta must lie strictly between 0 and 1"""
        solution = IdealPointSolution(values={0: 1, 1: -1}, mu=-1)
        profile = setup_lr()[1]
        for zeta in (0, 1, 2):
            with self.assertRaises(ValueError):
                reconstruct_shapes(solution, profile, zeta)

    def test_reconstruct_power_law(self):
        """Test Z = zeta^k * y in the carrying slot"""
        solution = IdealPointSolution(values={0: 1, 1: -1}, mu=-1)
        profile = setup_lr()[1]
        states = reconstruct_shapes(solution, profile, 0.1)
        self.assertLess(abs(states[0].value - 1e-2), 1e-15)
        self.assertLess(abs(states[1].value + 1e-4), 1e-17)


def setup_lr():
    word = parse_word('LR')
    tri = build_triangulation(word)
    path = enumerate_minimal_paths(build_farey_strip(word))[0]
    profile, _ = add_spheres(path_to_yoshida(path, tri), tri, path)
    _, profile = orientability_and_double(profile, tri, path)
    return tri, profile


class TestRefinement(unittest.TestCase):
    """Test Newton refinement of the gluing equations"""

    def test_complete_structure(self):
        """Test that refinement pinned at the complete holonomy finds exp(i pi / 3)"""
        tri = build_triangulation(parse_word('LR'))
        curve = semi_meridian_curve(tri)
        complete = holonomy(tri, {0: FIGURE_EIGHT_SHAPE, 1: FIGURE_EIGHT_SHAPE}, curve)
        constraint = HolonomyConstraint(curve, cmath.log(complete))
        seed = {t: TetState(0, cmath.log(0.55 + 0.8j)) for t in range(2)}
        result = newton_refine(tri, seed, constraint)
        shapes = shapes_of(result.states)
        self.assertEqual(list(shapes), [0, 1])
        for z in shapes.values():
            self.assertLess(abs(z - FIGURE_EIGHT_SHAPE), 1e-9)
        self.assertLess(gluing_residual(tri, result.states, constraint), 1e-10)

    def test_overflowing_start(self):
        """Test that a start far outside the float range ends in NoConvergence"""
        tri = build_triangulation(parse_word('LR'))
        curve = semi_meridian_curve(tri)
        constraint = HolonomyConstraint(curve, cmath.log(-1))
        seed = {t: TetState(0, complex(800, 0)) for t in range(2)}
        self.assertEqual(gluing_residual(tri, seed, constraint), float('inf'))
        with self.assertRaises(NoConvergence):
            newton_refine(tri, seed, constraint, max_iterations=5)


class TestContinuation(unittest.TestCase):
    """Test a full continuation run on the outer L path of LR"""

    @classmethod
    def setUpClass(cls):
        cls.config = ConfigLoader.default_config()
        cls.tri, cls.profile = setup_lr()
        system = build_tilde_system(cls.profile, cls.tri)
        solution = ClosedFormSolver(cls.config).solve(system, cls.tri)
        cls.trace = run_continuation(cls.tri, cls.profile, solution, cls.config)

    def test_schedule(self):
        """Test that every scheduled parameter was reached"""
        self.assertEqual([s.zeta for s in self.trace.steps], zeta_schedule(self.config))
        self.assertTrue(all(s.residual < 1e-10 for s in self.trace.steps))

    def test_mu_pinned(self):
        """Test that the normalised semi-meridian stays at -1"""
        self.assertEqual(self.trace.mu_order, 4)
        for step in self.trace.steps:
            self.assertLess(abs(step.mu + 1), 1e-8)

    def test_fitted_rates(self):
        """Test that the fitted slopes reproduce the doubled rates"""
        rates = fit_rates(self.trace)
        self.assertAlmostEqual(rates[0], 2, delta=0.05)
        self.assertAlmostEqual(rates[1], 4, delta=0.05)
        self.assertEqual(self.trace.fitted_rates, rates)

    def test_closed_form_shapes(self):
        """Test the refined shapes against the exact equations"""
        for step in self.trace.steps:
            z0 = step.states[0].value
            z1 = step.states[1].value
            zeta4 = step.zeta ** 4
            self.assertLess(abs(z0 * z0 + zeta4 * z0 - zeta4), 1e-8 * zeta4)
            self.assertLess(abs(z1 * (z1 - 1) - zeta4), 1e-8 * zeta4)

    def test_trace_dict(self):
        """Test the serialised trace"""
        data = self.trace.to_dict()
        self.assertEqual(len(data['steps']), len(self.trace.steps))
        self.assertEqual(len(data['steps'][0]['abs_values']), 2)
        self.assertEqual(data['mu_order'], 4)

    def test_insufficient_steps(self):
        """Test that a short trace cannot be fitted"""
        trace = ContinuationTrace(zeta_schedule=[0.1], steps=self.trace.steps[:2])
        with self.assertRaises(InsufficientSteps):
            fit_rates(trace)

    def test_rate_check(self):
        """Test that fitted rates are held to the profile"""
        rates = fit_rates(self.trace)
        check_rates(rates, self.profile.rates)
        with self.assertRaises(RateMismatch) as raised:
            check_rates({0: 2.2, 1: rates[1]}, self.profile.rates)
        self.assertEqual(raised.exception.stage, 'continuation')
        self.assertEqual(raised.exception.exit_code, 4)
        self.assertIn('z0', str(raised.exception))


class TestSchedule(unittest.TestCase):
    """Test schedule truncation"""

    def test_zeta_min(self):
        """Test that zeta_min cuts the schedule"""
        config = ConfigLoader.default_config()
        config['continuation']['zeta_min'] = 1e-3
        self.assertEqual(zeta_schedule(config), [1e-1, 3e-2, 1e-2, 3e-3, 1e-3])

    def test_empty(self):
        """Test that a schedule entirely below zeta_min is rejected"""
        config = ConfigLoader.default_config()
        config['continuation']['zeta_schedule'] = [1e-5]
        with self.assertRaises(ValueError):
            zeta_schedule(config)


class TestPeripheral(unittest.TestCase):
    """Test peripheral orders"""

    def test_semi_meridian_order(self):
        """Test the semi-meridian order of the doubled LR surface"""
        tri, profile = setup_lr()
        orders = peripheral_orders(profile, tri)
        self.assertEqual(orders.semi_meridian, 4)
        self.assertEqual(orders.meridian, 8)
        p, q = orders.boundary_slope
        self.assertEqual(p * orders.meridian + q * orders.fiber, 0)

    def test_order_zero_class(self):
        """Test primitive classes of order zero"""
        self.assertEqual(order_zero_class(8, Fraction(4)), (1, -2))
        self.assertEqual(order_zero_class(8, Fraction(0)), (0, 1))
        self.assertEqual(order_zero_class(3, Fraction(-3, 2)), (1, 2))


if __name__ == '__main__':
    unittest.main()
