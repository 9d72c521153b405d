"""
Torus Surfaces - Main Entry Point
Ideal points of punctured torus bundles detected by incompressible surfaces
"""

import argparse
import json
import sys
from typing import List, Optional

from src.core.exceptions import ReportFormatError, TorusSurfacesError
from src.core.pipeline import SurfacePipeline
from src.report import render_boundary_svg, trace_to_csv
from src.utils.config_loader import ConfigLoader

EXIT_OK = 0
EXIT_INPUT = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Torus Surfaces - ideal points detected by surfaces in punctured torus bundles'
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', type=str, default=None,
                        help='Path to configuration file (default: built-in defaults)')
    common.add_argument('--json', action='store_true',
                        help='Print the JSON report on standard output')
    common.add_argument('--output', type=str, default=None,
                        help='Write the report (or SVG) to this file')
    common.add_argument('--zeta-min', type=float, default=None,
                        help='Smallest continuation parameter')
    common.add_argument('--jobs', type=int, default=None,
                        help='Worker threads when solving several surfaces')
    common.add_argument('--verbose', action='store_true',
                        help='Enable verbose output (DEBUG level logging)')

    commands = parser.add_subparsers(dest='command', required=True)

    surfaces = commands.add_parser('surfaces', parents=[common],
                                   help='Enumerate minimal invariant paths of a word')
    surfaces.add_argument('word', type=str, help='Monodromy word in L and R')
    surfaces.add_argument('--solve', action='store_true',
                          help='Run the full pipeline on every surface')

    ideal = commands.add_parser('ideal', parents=[common],
                                help='Construct the ideal point of one surface')
    ideal.add_argument('word', type=str, help='Monodromy word in L and R')
    ideal.add_argument('path_index', type=int, help='Index into the path list of `surfaces`')
    ideal.add_argument('--csv', type=str, default=None,
                       help='Write the continuation trace as CSV')

    svg = commands.add_parser('svg', parents=[common],
                              help='Draw the boundary picture of one surface')
    svg.add_argument('word', type=str, help='Monodromy word in L and R')
    svg.add_argument('path_index', type=int, help='Index into the path list of `surfaces`')

    verify = commands.add_parser('verify', parents=[common],
                                 help='Re-check the residuals of a stored report')
    verify.add_argument('report', type=str, help='Report JSON file')
    return parser


def _config(args) -> dict:
    config = ConfigLoader.load_config(args.config)
    if args.zeta_min is not None:
        config['continuation']['zeta_min'] = args.zeta_min
    if args.jobs is not None:
        config['report']['jobs'] = args.jobs
    if args.verbose:
        config['logging']['level'] = 'DEBUG'
    ConfigLoader._validate_config(config)
    return config


def _emit(text: str, args, stdout) -> None:
    if args.output:
        with open(args.output, 'w', encoding='utf-8') as f:
            f.write(text)
    else:
        stdout.write(text)


def dump_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def _summary(report: dict) -> str:
    lines = [f"Word: {report['word']} (period {report['period']})",
             f"Minimal paths: {len(report['surfaces'])}"]
    for surface in report['surfaces']:
        path = surface['path']
        sections = ' '.join(f"{s['type']}{s['fan_length']}" for s in path['sections'])
        line = f"  [{surface['index']}] {path['choices']:<8} {sections:<24}"
        line += ' semi-fiber' if surface['semi_fiber'] else ''
        line += f"  {surface['status']}"
        if surface['status'] == 'solved':
            line += (f"  rates {surface['profile']['rates']}"
                     f"  residual {surface['solution']['residual']:.1e}"
                     f"  slope {tuple(surface['peripheral']['boundary_slope'])}")
        elif 'reason' in surface:
            line += f"  ({surface['reason']})"
        lines.append(line)
    return '\n'.join(lines) + '\n'


def run(args, stdout) -> int:
    if args.command == 'verify':
        try:
            with open(args.report, 'r', encoding='utf-8') as f:
                report = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ReportFormatError(f"Cannot read report {args.report}: {e}")
        pipeline = SurfacePipeline(config=_config(args))
        results = pipeline.verify_report(report)
        failed = [r for r in results if not r['passed']]
        if args.json:
            _emit(json.dumps({'results': results}, sort_keys=True, indent=2) + '\n', args, stdout)
        else:
            for r in results:
                stdout.write(f"surface {r['index']}: residual {r['residual']:.3e} "
                             f"{'ok' if r['passed'] else 'FAILED'}\n")
        return 4 if failed else EXIT_OK

    pipeline = SurfacePipeline(config=_config(args))

    if args.command == 'surfaces':
        report = pipeline.run_surfaces(args.word, solve=args.solve)
    elif args.command == 'ideal':
        report = pipeline.run_ideal(args.word, args.path_index)
        if args.csv:
            trace_to_csv(report['surfaces'][0]['continuation'], args.csv)
    else:
        context = pipeline.prepare(args.word)
        _, profile, _, _ = pipeline.build_profile(context, args.path_index)
        _emit(render_boundary_svg(context.tri, profile, pipeline.config) + '\n', args, stdout)
        return EXIT_OK

    if args.json:
        _emit(dump_report(report), args, stdout)
    else:
        if args.output:
            with open(args.output, 'w', encoding='utf-8') as f:
                f.write(dump_report(report))
        stdout.write(_summary(report))
    return EXIT_OK


def main(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    """Main entry point for CLI; returns the exit code"""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK

    try:
        return run(args, stdout)
    except TorusSurfacesError as e:
        stderr.write(f"Error ({type(e).__name__}, stage {e.stage}): {e}\n")
        return e.exit_code
    except (ValueError, FileNotFoundError) as e:
        stderr.write(f"Error: {e}\n")
        return EXIT_INPUT


if __name__ == '__main__':
    sys.exit(main())
