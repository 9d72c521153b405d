"""
Unit tests for configuration loading and structured logging
"""

import json
import logging
import tempfile
import unittest
from pathlib import Path

from src.utils.config_loader import ConfigLoader
from src.utils.logger import LOGGER_NAME, Logger


class TestConfigLoader(unittest.TestCase):
    """Test configuration files and environment overrides"""

    def setUp(self):
        """Set up a temporary directory for config files"""
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, text):
        path = self.dir / 'config.yaml'
        path.write_text(text, encoding='utf-8')
        return str(path)

    def test_defaults(self):
        """Test that no path gives the built-in defaults"""
        config = ConfigLoader.load_config(None, environ={})
        self.assertEqual(config, ConfigLoader.default_config())
        self.assertEqual(config['solver']['type'], 'closed_form')
        self.assertEqual(config['continuation']['mu_target'], -1)

    def test_repository_config(self):
        """Test that the shipped config.yaml is valid"""
        path = Path(__file__).resolve().parent.parent / 'config.yaml'
        config = ConfigLoader.load_config(str(path), environ={})
        self.assertEqual(config['solver']['branch_policy'], 'principal')
        self.assertIsInstance(config['continuation']['residual_tolerance'], float)

    def test_file_merge(self):
        """Test that file values override defaults key by key"""
        path = self.write("solver:\n  newton_restarts: 3\ncontinuation:\n  zeta_min: 1.0e-3\n")
        config = ConfigLoader.load_config(path, environ={})
        self.assertEqual(config['solver']['newton_restarts'], 3)
        self.assertEqual(config['solver']['type'], 'closed_form')
        self.assertEqual(config['continuation']['zeta_min'], 1e-3)

    def test_missing_file(self):
        """Test that a missing file is reported"""
        with self.assertRaises(FileNotFoundError):
            ConfigLoader.load_config(str(self.dir / 'absent.yaml'), environ={})

    def test_missing_section(self):
        """Test that a file without a solver section is rejected"""
        path = self.write("continuation:\n  zeta_min: 1.0e-3\n")
        with self.assertRaises(ValueError):
            ConfigLoader.load_config(path, environ={})

    def test_env_override(self):
        """Test TORUS_SURFACES_ overrides with typed values"""
        environ = {
            'TORUS_SURFACES_SOLVER__RESIDUAL_TOLERANCE': '1e-9',
            'TORUS_SURFACES_REPORT__JOBS': '4',
            'TORUS_SURFACES_LOGGING__CONSOLE_OUTPUT': 'false',
            'OTHER_SOLVER__TYPE': 'newton',
        }
        config = ConfigLoader.load_config(None, environ=environ)
        self.assertEqual(config['solver']['residual_tolerance'], 1e-9)
        self.assertEqual(config['report']['jobs'], 4)
        self.assertIs(config['logging']['console_output'], False)
        self.assertEqual(config['solver']['type'], 'closed_form')

    def test_invalid_values(self):
        """Test validation of solver type, schedule and jobs"""
        for key, value in (
            ('TORUS_SURFACES_SOLVER__TYPE', 'bisection'),
            ('TORUS_SURFACES_SOLVER__BRANCH_POLICY', 'random'),
            ('TORUS_SURFACES_CONTINUATION__ZETA_SCHEDULE', '[0.1, 0.2]'),
            ('TORUS_SURFACES_CONTINUATION__ZETA_MIN', '2'),
            ('TORUS_SURFACES_REPORT__JOBS', '0'),
        ):
            with self.assertRaises(ValueError, msg=key):
                ConfigLoader.load_config(None, environ={key: value})


class TestLogger(unittest.TestCase):
    """Test structured log output"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.log_file = Path(self.tmp.name) / 'logs' / 'run.log'

    def tearDown(self):
        for handler in list(logging.getLogger(LOGGER_NAME).handlers):
            handler.close()
        logging.getLogger(LOGGER_NAME).handlers = []
        self.tmp.cleanup()

    def config(self, **logging_config):
        settings = {'level': 'DEBUG', 'format': 'json', 'log_file': str(self.log_file),
                    'console_output': False}
        settings.update(logging_config)
        return {'logging': settings}

    def test_json_lines(self):
        """Test that JSON entries carry the structured fields"""
        logger = Logger(self.config())
        logger.info("Ideal point solved", word='LR', path_index=0, residual=1e-12)
        logger.debug("Continuation step", zeta=0.1)
        lines = self.log_file.read_text(encoding='utf-8').splitlines()
        self.assertEqual(len(lines), 2)
        entry = json.loads(lines[0])
        self.assertEqual(entry['level'], 'INFO')
        self.assertEqual(entry['message'], "Ideal point solved")
        self.assertEqual(entry['word'], 'LR')
        self.assertEqual(entry['path_index'], 0)
        self.assertIn('timestamp', entry)

    def test_level_filter(self):
        """Test that entries below the level are dropped"""
        logger = Logger(self.config(level='WARNING'))
        logger.info("hidden")
        logger.warning("Zero direction, flipping a root branch", reason='y3')
        lines = self.log_file.read_text(encoding='utf-8').splitlines()
        self.assertEqual(len(lines), 1)
        self.assertEqual(json.loads(lines[0])['reason'], 'y3')

    def test_text_format(self):
        """Test the text format with trailing fields"""
        logger = Logger(self.config(format='text'))
        self.assertEqual(logger._format_log('INFO', "Word prepared", tets=2),
                         "Word prepared [tets=2]")
        self.assertEqual(logger._format_log('INFO', "Done"), "Done")

    def test_invalid_level(self):
        """Test that an unknown level is rejected"""
        with self.assertRaises(ValueError):
            Logger(self.config(level='LOUD'))

    def test_silent(self):
        """Test that a logger without outputs still accepts entries"""
        logger = Logger({'logging': {'console_output': False, 'log_file': None}})
        logger.error("Surface failed", stage='solver')
        self.assertTrue(logger.logger.handlers)


if __name__ == '__main__':
    unittest.main()
