"""
Main pipeline orchestration for surface detection
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional

from .. import __version__
from ..continuation import check_rates, fit_rates, peripheral_orders, run_continuation
from ..farey import (
    EdgePath,
    FareyStrip,
    MonodromyWord,
    build_farey_strip,
    classify_semi_fiber,
    enumerate_minimal_paths,
    parse_word,
)
from ..solver import IdealSolver, lr_contexts, verify_solution
from ..surfaces import add_spheres, orientability_and_double, path_to_yoshida
from ..report import validate_report
from ..tilde import build_tilde_system, evaluate_bar_residual
from ..triangulation import Triangulation, build_triangulation
from ..utils.config_loader import ConfigLoader
from ..utils.logger import Logger
from .exceptions import PathIndexError, ReportFormatError, SemiFiber, TorusSurfacesError

TOOL_NAME = 'torus-surfaces'


@dataclass
class WordContext:
    """Everything built once per word"""
    word: MonodromyWord
    strip: FareyStrip
    tri: Triangulation
    paths: List[EdgePath]

    def path(self, index: int) -> EdgePath:
        if not 0 <= index < len(self.paths):
            raise PathIndexError(
                f"Path index {index} out of range: word {self.word.text} has {len(self.paths)} minimal paths"
            )
        return self.paths[index]


class SurfacePipeline:
    """
    Orchestrates the ideal-point construction for the surfaces of a word

    Pipeline stages:
    1. Word parsing and Farey strip
    2. Layered triangulation
    3. Minimal path enumeration and semi-fiber classification
    4. Degeneration profile (section tables)
    5. Sphere addition
    6. Orientability (doubling)
    7. Tilde system
    8. Ideal-point solution (swappable solver) and verification
    9. Continuation, rate fit and peripheral orders
    """

    def __init__(self, config_path: Optional[str] = None, config: Optional[Dict] = None, logger: Logger = None):
        """Initialize pipeline with a config file, a config dict, or the defaults"""
        if config is None:
            config = ConfigLoader.load_config(config_path)
        self.config = config
        self.logger = logger or Logger(self.config)
        self.solver = self._initialize_solver()

    def _initialize_solver(self) -> IdealSolver:
        """Initialize ideal-point solver based on config"""
        solver_type = self.config.get('solver', {}).get('type', 'closed_form')

        if solver_type == 'closed_form':
            from ..solver import ClosedFormSolver
            return ClosedFormSolver(self.config, self.logger)
        elif solver_type == 'newton':
            from ..solver import NewtonSolver
            return NewtonSolver(self.config, self.logger)
        else:
            raise ValueError(f"Unknown solver type: {solver_type}")

    def prepare(self, text: str) -> WordContext:
        """
        Parse a word and build its strip, triangulation and paths

        Raises:
            EmptyWord, InvalidCharacter, NotHyperbolic: Bad word
        """
        word = parse_word(text)
        strip = build_farey_strip(word)
        tri = build_triangulation(word)
        paths = enumerate_minimal_paths(strip)
        self.logger.info(
            "Word prepared", word=word.text, stage='prepare',
            tets=tri.size, fans=len(strip.fans), paths=len(paths),
        )
        return WordContext(word, strip, tri, paths)

    def _report(self, context: WordContext, surfaces: List[Dict]) -> Dict[str, any]:
        return {
            'tool': {'name': TOOL_NAME, 'version': __version__},
            'word': context.word.text,
            'period': context.word.period,
            'triangulation': context.tri.to_dict(),
            'config': self.config,
            'surfaces': sorted(surfaces, key=lambda s: s['index']),
        }

    def _enumerated(self, context: WordContext, index: int) -> Dict[str, any]:
        path = context.paths[index]
        semi_fiber, tight = classify_semi_fiber(path)
        return {
            'index': index,
            'path': path.to_dict(),
            'semi_fiber': semi_fiber,
            'tight_subpaths': [
                {'edges': list(t.edges), 'lr_fans': [s.fan for s in t.lr_sections], 'cyclic': t.cyclic}
                for t in tight
            ],
            'status': 'enumerated',
        }

    def run_surfaces(self, text: str, solve: bool = False, jobs: Optional[int] = None) -> Dict[str, any]:
        """
        Enumerate the surfaces of a word, optionally solving every one

        Args:
            text: Monodromy word
            solve: Run the full pipeline on every surface
            jobs: Worker threads for solving (default report.jobs)

        Returns:
            Report dictionary, surfaces sorted by path index
        """
        context = self.prepare(text)
        if not solve:
            surfaces = [self._enumerated(context, i) for i in range(len(context.paths))]
            return self._report(context, surfaces)

        jobs = jobs or self.config.get('report', {}).get('jobs', 1)
        indices = range(len(context.paths))
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                surfaces = list(pool.map(lambda i: self.process_surface(context, i), indices))
        else:
            surfaces = [self.process_surface(context, i) for i in indices]

        stats = {
            status: sum(1 for s in surfaces if s['status'] == status)
            for status in ('solved', 'refused', 'failed')
        }
        self.logger.info(
            "Batch processing complete", word=context.word.text, total=len(surfaces), **stats
        )
        return self._report(context, surfaces)

    def run_ideal(self, text: str, path_index: int) -> Dict[str, any]:
        """
        Full pipeline for one surface

        Raises:
            PathIndexError: Index out of range
            SemiFiber: The surface is a semi-fiber
            TorusSurfacesError: Construction or numerical failure
        """
        context = self.prepare(text)
        context.path(path_index)
        surface = self.solve_surface(context, path_index)
        return self._report(context, [surface])

    def process_surface(self, context: WordContext, index: int) -> Dict[str, any]:
        """
        Run one surface, recording refusal or failure instead of raising

        Returns:
            Surface dictionary with status solved, refused or failed
        """
        try:
            return self.solve_surface(context, index)
        except SemiFiber as e:
            entry = self._enumerated(context, index)
            entry.update({'status': 'refused', 'reason': str(e), 'stage': e.stage})
            self.logger.info("Surface refused", word=context.word.text, path_index=index, reason=str(e))
            return entry
        except TorusSurfacesError as e:
            entry = self._enumerated(context, index)
            entry.update({
                'status': 'failed', 'reason': str(e), 'stage': e.stage, 'error': type(e).__name__,
            })
            self.logger.error(
                "Surface failed", word=context.word.text, path_index=index,
                stage=e.stage, error=type(e).__name__, reason=str(e),
            )
            return entry

    def build_profile(self, context: WordContext, index: int):
        """
        Stages 4 to 6 for one path

        Returns:
            (base profile, final profile, sphere counts, orientable)

        Raises:
            SemiFiber: Tight path, no finite sphere count exists
        """
        path = context.path(index)
        word = context.word.text
        semi_fiber, _ = classify_semi_fiber(path)
        if semi_fiber:
            raise SemiFiber(
                f"Path {index} ({path.label}) is tight everywhere: the chains of LR crossings close up, "
                "so no finite number of spheres gives every sphere vertex a repeated minimum"
            )

        base = path_to_yoshida(path, context.tri)
        self.logger.debug("Profile from section tables", word=word, path_index=index, stage='profile',
                          rates=list(base.rates))
        profile, spheres = add_spheres(base, context.tri, path)
        self.logger.debug("Spheres added", word=word, path_index=index, stage='spheres',
                          sections=len(spheres), rates=list(profile.rates))
        orientable, profile = orientability_and_double(profile, context.tri, path)
        if not orientable:
            self.logger.info("Non-orientable surface, profile doubled", word=word, path_index=index,
                             stage='orientability')
        return base, profile, spheres, orientable

    def solve_surface(self, context: WordContext, index: int) -> Dict[str, any]:
        """
        Stages 4 to 9 for one path

        Returns:
            Surface dictionary with status solved
        """
        word = context.word.text
        tri = context.tri
        path = context.path(index)
        self.logger.info("Processing surface", word=word, path_index=index, choices=path.label)

        base, profile, spheres, orientable = self.build_profile(context, index)

        system = build_tilde_system(profile, tri)
        self.logger.debug(
            "Tilde system built", word=word, path_index=index, stage='tilde',
            regular=len(system.regular_equations), sphere=len(system.sphere_equations),
        )

        contexts = lr_contexts(path, base)
        solution = self.solver.solve(system, tri, contexts)
        solver_config = self.config.get('solver', {})
        verification = verify_solution(
            system, solution,
            tolerance=solver_config.get('residual_tolerance', 1e-10),
            isolation_distance=solver_config.get('isolation_distance', 1e-6),
            solver=self.solver, tri=tri, lr_contexts=contexts,
        )
        self.logger.info(
            "Ideal point solved", word=word, path_index=index, stage='solver',
            method=solution.method, residual=solution.residual,
        )

        trace = run_continuation(tri, profile, solution, self.config, self.logger)
        rates = fit_rates(trace)
        tolerance = self.config.get('continuation', {}).get('rate_tolerance', 0.05)
        check_rates(rates, profile.rates, tolerance)
        peripheral = peripheral_orders(profile, tri)
        self.logger.info(
            "Continuation complete", word=word, path_index=index, stage='continuation',
            steps=len(trace.steps), final_residual=trace.final_residual,
        )

        entry = self._enumerated(context, index)
        continuation = trace.to_dict()
        continuation['rate_tolerance'] = tolerance
        entry.update({
            'status': 'solved',
            'base_profile': base.to_dict(),
            'profile': profile.to_dict(),
            'spheres': {str(section): counts.to_dict() for section, counts in sorted(spheres.items())},
            'orientable': orientable,
            'tilde': system.to_dict(),
            'solution': solution.to_dict(system),
            'verification': verification.to_dict(),
            'continuation': continuation,
            'peripheral': peripheral.to_dict(),
        })
        return entry

    def verify_report(self, report: Dict[str, any]) -> List[Dict[str, any]]:
        """
        Re-evaluate the bar residual of every solved surface of a report

        The profile and tilde system are rebuilt from the word and path
        index; the stored values are substituted with the reference
        measurement at -1.

        Returns:
            One entry per solved surface: index, residual, passed

        Raises:
            ReportFormatError: The report does not follow the schema
        """
        validate_report(report)
        context = self.prepare(report['word'])
        tolerance = self.config.get('solver', {}).get('residual_tolerance', 1e-10)
        results = []
        for surface in report['surfaces']:
            if surface['status'] != 'solved':
                continue
            index = surface['index']
            try:
                values = {
                    int(v['tet']): complex(v['re'], v['im'])
                    for v in surface['solution']['variables']
                }
            except (KeyError, TypeError, ValueError) as e:
                raise ReportFormatError(f"surface {index}: bad solution variables ({e})")
            _, profile, _, _ = self.build_profile(context, index)
            system = build_tilde_system(profile, context.tri)
            try:
                residual = evaluate_bar_residual(system, values)
            except (KeyError, ZeroDivisionError) as e:
                raise ReportFormatError(f"surface {index}: solution does not fit the system ({e})")
            passed = residual < tolerance
            log = self.logger.info if passed else self.logger.error
            log("Stored solution checked", word=context.word.text, path_index=index,
                stage='verify', residual=residual, passed=passed)
            results.append({'index': index, 'residual': residual, 'passed': passed})
        return results
