"""
Unit tests for the ideal-point solvers
"""

import unittest

import numpy as np

from src.core.exceptions import UnknownCase, UnsolvedVariable
from src.farey import build_farey_strip, enumerate_minimal_paths, parse_word
from src.solver import (
    AngleChain,
    ClosedFormSolver,
    NewtonSolver,
    chain_recursion_residual,
    compute_phi_psi,
    detect_angle_chains,
    lr_contexts,
    solve_directions,
    solve_angle_chain,
    sphere_case,
    sphere_case_values,
    verify_solution,
)
from src.solver.angle_chains import chain_seed, recursion_kinds
from src.solver.directions import make_solution
from src.solver.equations import bar_equations, newton
from src.surfaces import add_spheres, orientability_and_double, path_to_yoshida
from src.tilde import build_tilde_system
from src.triangulation import build_triangulation
from src.utils.config_loader import ConfigLoader


def setup_surface(text, index):
    word = parse_word(text)
    tri = build_triangulation(word)
    path = enumerate_minimal_paths(build_farey_strip(word))[index]
    base = path_to_yoshida(path, tri)
    profile, _ = add_spheres(base, tri, path)
    _, profile = orientability_and_double(profile, tri, path)
    return tri, build_tilde_system(profile, tri), lr_contexts(path, base)


class TestAngleChains(unittest.TestCase):
    """Test the closed-form chain solutions"""

    def test_chain_lengths(self):
        """Test the number of interior values"""
        self.assertEqual(solve_angle_chain(AngleChain.of_length('a', 1)), [])
        self.assertEqual(len(solve_angle_chain(AngleChain.of_length('a', 5))), 4)

    def test_a_type_recursion(self):
        """Test a-type chains up to length 50"""
        for n in range(1, 51):
            values = solve_angle_chain(AngleChain.of_length('a', n))
            self.assertTrue(all(v.real > 1 and v.imag == 0 for v in values), n)
            scale = max([1.0] + [abs(v) ** 2 for v in values])
            self.assertLess(chain_recursion_residual(values, 'a'), 1e-12 * scale, n)

    def test_b_type_recursion(self):
        """Test b-type chains up to length 50"""
        for n in range(1, 51):
            values = solve_angle_chain(AngleChain.of_length('b', n))
            self.assertTrue(all(0 < v.real < 1 for v in values), n)
            self.assertLess(chain_recursion_residual(values, 'b'), 1e-12, n)

    def test_first_chain(self):
        """Test the single interior value of a length-2 chain"""
        value, = solve_angle_chain(AngleChain.of_length('a', 2))
        self.assertAlmostEqual(value.real, 2.0, places=12)

    def test_unknown_kind(self):
        """Test that an unknown chain type is rejected"""
        with self.assertRaises(ValueError):
            solve_angle_chain(AngleChain.of_length('c', 3))


class TestSphereCases(unittest.TestCase):
    """Test the closed forms around an LR section"""

    def test_case_selection(self):
        """Test the five weight cases"""
        self.assertEqual(sphere_case(0, 3), 'top')
        self.assertEqual(sphere_case(3, 0), 'bottom')
        self.assertEqual(sphere_case(2, 2), 'equal')
        self.assertEqual(sphere_case(1, 2), 'top_adjacent')
        self.assertEqual(sphere_case(2, 1), 'bottom_adjacent')

    def test_context_products(self):
        """Test that every case reproduces phi above and psi below"""
        phi, psi = 1.3 + 0.4j, 0.7 - 0.2j
        for case in ('top', 'bottom', 'equal', 'top_adjacent', 'bottom_adjacent'):
            for branch in (0, 1):
                values = sphere_case_values(case, phi, psi, branch)
                if 'a' in values:
                    self.assertAlmostEqual(abs(-values['b'] / values['a'] ** 2 - phi), 0, places=12)
                if 'a_check' in values:
                    self.assertAlmostEqual(abs(values['a_check'] ** 2 / values['d'] - psi), 0, places=12)

    def test_top_case_has_no_bottom(self):
        """Test that the top case leaves the bottom 1-tetrahedron free"""
        self.assertNotIn('a_check', sphere_case_values('top', 2, 3))

    def test_top_values(self):
        """Test the top case worked in from phi alone"""
        values = sphere_case_values('top', 2, None)
        self.assertEqual(values, {'a': 1, 'b': -2, 'c': -1, 'd': 0.5})

    def test_bottom_values(self):
        """Test the bottom case worked in from psi alone"""
        values = sphere_case_values('bottom', None, 0.5)
        self.assertEqual(values, {'a_check': -1, 'd': 2, 'c': 1, 'b': -0.5})

    def test_equal_values(self):
        """Test the balanced case and its two square roots"""
        phi, psi = 4, 9
        roots = []
        for branch in (0, 1):
            values = sphere_case_values('equal', phi, psi, branch)
            self.assertAlmostEqual(values['c'] ** 2, psi / phi)
            self.assertEqual(values['a'], -values['c'])
            self.assertEqual(values['a_check'], -values['c'])
            self.assertEqual(values['b'], -psi)
            self.assertEqual(values['d'], 1 / phi)
            self.assertAlmostEqual(phi * values['a'] ** 2 / psi, 1)
            roots.append(values['c'])
        self.assertAlmostEqual(roots[0], -roots[1])
        self.assertAlmostEqual(roots[0], 1.5)

    def test_unknown_case(self):
        """Test that an unknown case name is rejected"""
        with self.assertRaises(UnknownCase):
            sphere_case_values('sideways', 1, 1)


class TestContextProducts(unittest.TestCase):
    """Test phi and psi at the LR section of the pivot path of LLLRRR"""

    def setUp(self):
        self.tri, self.system, self.contexts = setup_surface('LLLRRR', 2)

    def test_context(self):
        """Test the weights and case of the only LR section"""
        context, = self.contexts
        self.assertEqual((context.alpha, context.beta), (0, 0))
        self.assertEqual(context.case, 'equal')

    def test_phi_psi(self):
        """Test that both context products are read off single bar equations"""
        geometry = self.contexts[0].geometry
        self.assertAlmostEqual(compute_phi_psi(self.system, {}, geometry, 'top'), 1)
        self.assertAlmostEqual(compute_phi_psi(self.system, {}, geometry, 'bottom'), 1)
        with self.assertRaises(ValueError):
            compute_phi_psi(self.system, {}, geometry, 'middle')


class TestChainTyping(unittest.TestCase):
    """Test that angle chains are typed from their recursion equations"""

    def test_types_follow_equations(self):
        """Test chain types against the squared slot of their recursions"""
        for text, index in (('LRR', 0), ('LLRR', 0), ('LLLRR', 0), ('LLRRLR', 0)):
            _, system, _ = setup_surface(text, index)
            kinds = recursion_kinds(system)
            for chain in detect_angle_chains(system):
                self.assertEqual({kinds[t] for t in chain.members if t in kinds}, {chain.kind}, text)

    def test_v_hinge_runs_are_b_type(self):
        """Test that a run opening at an (L, R) hinge takes the b-type recursion"""
        for text in ('LRR', 'LLRR'):
            tri, system, _ = setup_surface(text, 0)
            chains = detect_angle_chains(system)
            opening = [c for c in chains if tri.tets[c.members[0]].hinge == 'v']
            self.assertTrue(opening, text)
            self.assertTrue(all(c.kind == 'b' for c in opening), text)

    def test_seed_solves_angle_equations(self):
        """Test that the chain values satisfy every equation among angles only"""
        for text, index in (('LRR', 0), ('LLRR', 0), ('LLLRR', 0)):
            _, system, _ = setup_surface(text, index)
            seed = chain_seed(detect_angle_chains(system))
            angles = set(system.angle_ids())
            self.assertEqual(set(seed), angles, text)
            for eq in system.regular_equations:
                tets = {t.tet_id for t in eq.terms if t.coefficient != '1'}
                if tets and tets <= angles:
                    self.assertLess(eq.residual(seed), 1e-10, text)


class TestPivotPathSweep(unittest.TestCase):
    """Test the closed-form sweep through the LR section of the pivot path of LLLRRR"""

    def setUp(self):
        self.config = ConfigLoader.default_config()
        self.tri, self.system, self.contexts = setup_surface('LLLRRR', 2)

    def test_balanced_section(self):
        """Test c = +-sqrt(psi / phi), a = a_check = -c, b = -psi and d = 1 / phi"""
        solution = ClosedFormSolver(self.config).solve(self.system, self.tri, self.contexts)
        y = solution.values
        self.assertEqual(solution.method, 'closed_form')
        self.assertLess(solution.residual, 1e-10)
        self.assertLess(abs(y[0] - 1), 1e-10)
        self.assertLess(abs(y[4] + 1), 1e-10)
        self.assertLess(abs(y[5] ** 2 - 1), 1e-10)
        self.assertLess(abs(y[3] + y[5]), 1e-10)
        self.assertLess(abs(y[1] + y[5]), 1e-10)
        self.assertLess(abs(y[2] ** 2 - 1), 1e-10)
        self.assertLess(abs(solution.mu + 1), 1e-10)

    def test_verified(self):
        """Test that Newton started next to the sweep comes back to it"""
        solver = ClosedFormSolver(self.config)
        solution = solver.solve(self.system, self.tri, self.contexts)
        report = verify_solution(self.system, solution, tri=self.tri)
        self.assertLess(report.level_residual, 1e-10)
        self.assertIsNotNone(report.newton_distance)
        self.assertLess(report.newton_distance, 1e-4)


class TestSolverFailures(unittest.TestCase):
    """Test that unreachable or overflowing systems end in library errors"""

    def setUp(self):
        self.tri, self.system, _ = setup_surface('LR', 0)

    def test_unsolved_variable(self):
        """Test that a partial assignment is reported, not padded"""
        equations = bar_equations(self.system)
        with self.assertRaises(UnsolvedVariable) as raised:
            make_solution(self.system, {0: 1}, [], 'closed_form', equations)
        self.assertEqual(raised.exception.stage, 'solver')

    def test_overflowing_newton(self):
        """Test that values beyond the float range give an infinite residual"""
        equations = bar_equations(self.system)
        start = {t: complex(1e300, 0) for t in range(self.system.size)}
        _, residual, _ = newton(equations, start, list(range(self.system.size)), 1e-12, 10)
        self.assertEqual(residual, np.inf)


class TestClosedFormSolver(unittest.TestCase):
    """Test the closed-form solver on the outer L path of LR"""

    def setUp(self):
        self.config = ConfigLoader.default_config()
        self.tri, self.system, self.contexts = setup_surface('LR', 0)

    def test_principal_branch(self):
        """Test y0 = 1 and y1 = -1"""
        solver = ClosedFormSolver(self.config)
        solution = solver.solve(self.system, self.tri, self.contexts)
        self.assertLess(abs(solution.values[0] - 1), 1e-12)
        self.assertLess(abs(solution.values[1] + 1), 1e-12)
        self.assertLess(abs(solution.mu + 1), 1e-12)
        self.assertLess(solution.residual, 1e-10)

    def test_alternate_branch(self):
        """Test that the alternate policy takes the other square root"""
        self.config['solver']['branch_policy'] = 'alternate'
        solution = ClosedFormSolver(self.config).solve(self.system, self.tri, self.contexts)
        self.assertLess(abs(solution.values[0] + 1), 1e-12)
        self.assertLess(abs(solution.values[1] + 1), 1e-12)

    def test_verification(self):
        """Test that the solution is isolated from its branch flip"""
        solver = ClosedFormSolver(self.config)
        solution = solver.solve(self.system, self.tri, self.contexts)
        report = verify_solution(self.system, solution, solver=solver, tri=self.tri,
                                 lr_contexts=self.contexts)
        self.assertTrue(report.isolated)
        self.assertEqual(report.unknowns, 2)
        self.assertEqual(report.jacobian_rank, 2)
        self.assertTrue(all(a['status'] == 'solved' for a in report.alternates))
        self.assertLess(report.level_residual, 1e-12)

    def test_solve_directions(self):
        """Test the functional entry point with closed-form angle chains"""
        solution = solve_directions(self.system, self.tri, config=self.config)
        self.assertLess(abs(solution.values[0] - 1), 1e-12)
        self.assertLess(abs(solution.values[1] + 1), 1e-12)

    def test_newton_solver(self):
        """Test that random restarts find a solution"""
        solution = NewtonSolver(self.config).solve(self.system, self.tri, self.contexts)
        self.assertLess(solution.residual, 1e-10)
        self.assertLess(abs(solution.values[0] ** 2 - 1), 1e-8)
        self.assertLess(abs(solution.values[1] + 1), 1e-8)
        self.assertEqual(solution.method, 'random_seed+newton')


if __name__ == '__main__':
    unittest.main()
