"""
Structured logging for pipeline stages
"""

import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Dict

LOGGER_NAME = 'torus_surfaces'


class Logger:
    """
    Logger for surface detection runs
    Supports JSON and text log formats; console output goes to stderr
    """

    def __init__(self, config: Dict = None):
        """Initialize logger with configuration"""
        self.config = config or {}
        logging_config = self.config.get('logging', {})

        self.log_level = str(logging_config.get('level', 'INFO')).upper()
        self.log_format = logging_config.get('format', 'json')
        self.log_file = logging_config.get('log_file')
        self.console_output = logging_config.get('console_output', True)

        if self.log_level not in ('DEBUG', 'INFO', 'WARNING', 'ERROR'):
            raise ValueError(f"Invalid log level: {self.log_level}")

        self._setup_logger()

    def _setup_logger(self):
        """Setup Python logging"""
        level = getattr(logging, self.log_level)
        self.logger = logging.getLogger(LOGGER_NAME)
        self.logger.setLevel(level)
        self.logger.propagate = False

        for handler in list(self.logger.handlers):
            handler.close()
        self.logger.handlers = []

        if self.log_format == 'json':
            formatter = logging.Formatter('%(message)s')
        else:
            formatter = logging.Formatter(
                '%(asctime)s - %(levelname)s - %(message)s',
                datefmt='%Y-%m-%d %H:%M:%S'
            )

        if self.console_output:
            console_handler = logging.StreamHandler()
            console_handler.setLevel(level)
            console_handler.setFormatter(formatter)
            self.logger.addHandler(console_handler)

        if self.log_file:
            log_path = Path(self.log_file)
            log_path.parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_path, encoding='utf-8')
            file_handler.setLevel(level)
            file_handler.setFormatter(logging.Formatter('%(message)s'))
            self.logger.addHandler(file_handler)

        if not self.logger.handlers:
            self.logger.addHandler(logging.NullHandler())

    def _format_log(self, level: str, message: str, **kwargs) -> str:
        """
        Format log entry

        Args:
            level: Log level
            message: Log message
            **kwargs: Structured fields (word, path index, stage, residuals)

        Returns:
            Formatted log entry
        """
        if self.log_format == 'json':
            log_entry = {
                'timestamp': datetime.now().isoformat(),
                'level': level,
                'message': message,
                **kwargs
            }
            return json.dumps(log_entry, ensure_ascii=False, default=str)
        if kwargs:
            fields = ' '.join(f"{key}={value}" for key, value in kwargs.items())
            return f"{message} [{fields}]"
        return message

    def debug(self, message: str, **kwargs):
        self.logger.debug(self._format_log('DEBUG', message, **kwargs))

    def info(self, message: str, **kwargs):
        self.logger.info(self._format_log('INFO', message, **kwargs))

    def warning(self, message: str, **kwargs):
        """Log warning message (solver fallbacks, branch flips)"""
        self.logger.warning(self._format_log('WARNING', message, **kwargs))

    def error(self, message: str, **kwargs):
        self.logger.error(self._format_log('ERROR', message, **kwargs))
