"""
Utility modules (logging, config)
"""

from .logger import Logger
from .config_loader import ConfigLoader

__all__ = ['Logger', 'ConfigLoader']
