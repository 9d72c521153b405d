"""
Unit tests for report validation, the SVG picture and the CSV trace
"""

import copy
import csv
import io
import tempfile
import unittest
import xml.etree.ElementTree as ET
from collections import Counter
from pathlib import Path

from main import dump_report
from src.core.exceptions import ReportFormatError
from src.core.pipeline import SurfacePipeline
from src.farey import build_farey_strip, enumerate_minimal_paths, parse_word
from src.report import render_boundary_svg, trace_to_csv, validate_report
from src.report.svg import SVG_NS
from src.surfaces import path_to_yoshida
from src.triangulation import build_triangulation
from src.utils.config_loader import ConfigLoader


def quiet_config():
    config = ConfigLoader.default_config()
    config['logging']['console_output'] = False
    return config


class TestReportSchema(unittest.TestCase):
    """Test report validation"""

    @classmethod
    def setUpClass(cls):
        cls.report = SurfacePipeline(config=quiet_config()).run_surfaces('LLRR')

    def test_enumerated_report(self):
        """Test that an enumeration report is valid"""
        validate_report(self.report)
        self.assertEqual(self.report['word'], 'LLRR')
        self.assertEqual([s['index'] for s in self.report['surfaces']], [0, 1, 2])
        self.assertEqual([s['semi_fiber'] for s in self.report['surfaces']], [False, False, True])

    def test_missing_key(self):
        """Test that a report without a word is rejected"""
        report = copy.deepcopy(self.report)
        del report['word']
        with self.assertRaises(ReportFormatError):
            validate_report(report)

    def test_bad_type(self):
        """Test that a string period is rejected"""
        report = copy.deepcopy(self.report)
        report['period'] = '4'
        with self.assertRaises(ReportFormatError):
            validate_report(report)

    def test_unknown_status(self):
        """Test that surface statuses are checked"""
        report = copy.deepcopy(self.report)
        report['surfaces'][0]['status'] = 'pending'
        with self.assertRaises(ReportFormatError):
            validate_report(report)

    def test_refusal_needs_reason(self):
        """Test that a refused surface must say why"""
        report = copy.deepcopy(self.report)
        report['surfaces'][2]['status'] = 'refused'
        with self.assertRaises(ReportFormatError):
            validate_report(report)
        report['surfaces'][2]['reason'] = 'semi-fiber'
        validate_report(report)

    def test_deterministic_dump(self):
        """Test that two runs give byte-identical reports"""
        again = SurfacePipeline(config=quiet_config()).run_surfaces('LLRR')
        self.assertEqual(dump_report(self.report), dump_report(again))


class TestBoundarySvg(unittest.TestCase):
    """Test the boundary picture of the pivot path of LLLRRR"""

    @classmethod
    def setUpClass(cls):
        word = parse_word('LLLRRR')
        tri = build_triangulation(word)
        path = enumerate_minimal_paths(build_farey_strip(word))[2]
        cls.profile = path_to_yoshida(path, tri)
        cls.root = ET.fromstring(render_boundary_svg(tri, cls.profile, quiet_config()))
        cls.arcs = [
            el for el in cls.root.iter(f'{{{SVG_NS}}}path') if el.get('class') == 'arc'
        ]

    def test_triangles(self):
        """Test that every boundary triangle is drawn"""
        polygons = list(self.root.iter(f'{{{SVG_NS}}}polygon'))
        self.assertEqual(len(polygons), 4 * 6)

    def test_arc_labels(self):
        """Test that arcs carry the rates of their tetrahedra"""
        self.assertEqual(len(self.arcs), 4 * 6)
        for arc in self.arcs:
            tet = int(arc.get('data-tet'))
            self.assertEqual(int(arc.get('data-rate')), self.profile.rates[tet])
            self.assertEqual(arc.get('data-type'), self.profile.types[tet].value)
        labels = [el for el in self.root.iter(f'{{{SVG_NS}}}text') if el.get('class') == 'rate']
        self.assertEqual(sorted(int(el.text) for el in labels),
                         sorted(int(arc.get('data-rate')) for arc in self.arcs))

    def test_arcs_balance(self):
        """Test that arcs entering a vertex match those leaving it"""
        entering, leaving = Counter(), Counter()
        for arc in self.arcs:
            rate = int(arc.get('data-rate'))
            leaving[arc.get('data-from')] += rate
            entering[arc.get('data-to')] += rate
        self.assertEqual(entering, leaving)

    def test_sizes(self):
        """Test that the canvas follows the configured sizes"""
        self.assertEqual(self.root.get('width'), '520')
        self.assertEqual(self.root.get('height'), '580')


class TestTraceCsv(unittest.TestCase):
    """Test the CSV dump of a continuation trace"""

    def setUp(self):
        self.continuation = {
            'steps': [
                {'zeta': 0.1, 'abs_values': [0.01, 1e-4], 'residual': 1e-13,
                 'mu': {'re': -1.0, 'im': 0.0}},
                {'zeta': 0.01, 'abs_values': [1e-4, 1e-8], 'residual': 2e-13,
                 'mu': {'re': -1.0, 'im': 0.0}},
            ],
        }

    def test_rows(self):
        """Test header and one row per step"""
        rows = list(csv.reader(io.StringIO(trace_to_csv(self.continuation))))
        self.assertEqual(rows[0], ['zeta', 'abs_z0', 'abs_z1', 'residual', 'mu_re', 'mu_im'])
        self.assertEqual(len(rows), 3)
        self.assertAlmostEqual(float(rows[2][2]), 1e-8)

    def test_file(self):
        """Test that the CSV is written to a file"""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'trace.csv'
            text = trace_to_csv(self.continuation, str(path))
            self.assertEqual(path.read_text(encoding='utf-8'), text)

    def test_empty(self):
        """Test that an empty trace gives a bare header"""
        self.assertEqual(trace_to_csv({'steps': []}), 'zeta,residual,mu_re,mu_im\n')


if __name__ == '__main__':
    unittest.main()
