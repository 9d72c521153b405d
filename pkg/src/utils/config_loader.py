"""
Configuration loader for YAML config files with environment overrides
"""

import copy
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml

ENV_PREFIX = 'TORUS_SURFACES_'
ENV_SEPARATOR = '__'

VALID_SOLVER_TYPES = ['closed_form', 'newton']
VALID_BRANCH_POLICIES = ['principal', 'alternate']

_DEFAULTS = {
    'logging': {
        'level': 'INFO',
        'format': 'json',
        'log_file': None,
        'console_output': True,
    },
    'solver': {
        'type': 'closed_form',
        'residual_tolerance': 1e-10,
        'isolation_distance': 1e-6,
        'branch_policy': 'principal',
        'max_branch_flips': 32,
        'newton_max_iterations': 60,
        'newton_restarts': 24,
        'random_seed': 0,
    },
    'continuation': {
        'zeta_schedule': [1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4],
        'zeta_min': 1e-4,
        'residual_tolerance': 1e-10,
        'max_iterations': 50,
        'collision_radius': 1e-6,
        'rate_tolerance': 0.05,
        'mu_target': -1,
    },
    'report': {
        'jobs': 1,
        'svg': {'cell': 60, 'band_height': 90, 'margin': 20},
    },
}


def _parse_value(raw: str) -> Any:
    value = yaml.safe_load(raw)
    if isinstance(value, str):
        # YAML 1.1 reads 1e-9 as a string
        try:
            return float(value)
        except ValueError:
            return value
    return value


def _merge(base: Dict[str, Any], override: Mapping[str, Any]) -> Dict[str, Any]:
    for key, value in override.items():
        if isinstance(value, Mapping) and isinstance(base.get(key), dict):
            _merge(base[key], value)
        else:
            base[key] = value
    return base


class ConfigLoader:
    """Load and validate configuration"""

    @staticmethod
    def default_config() -> Dict[str, Any]:
        """Built-in defaults, used for every missing key"""
        return copy.deepcopy(_DEFAULTS)

    @staticmethod
    def load_config(
        config_path: Optional[str] = "config.yaml",
        environ: Optional[Mapping[str, str]] = None,
    ) -> Dict[str, Any]:
        """
        Load configuration from a YAML file

        Args:
            config_path: Path to config file, or None for the defaults only
            environ: Environment to read overrides from (default os.environ)

        Returns:
            Configuration dictionary with defaults filled in

        Raises:
            FileNotFoundError: The file does not exist
            ValueError: If configuration is invalid
        """
        config = ConfigLoader.default_config()

        if config_path is not None:
            config_file = Path(config_path)
            if not config_file.exists():
                raise FileNotFoundError(f"Configuration file not found: {config_path}")

            with open(config_file, 'r', encoding='utf-8') as f:
                loaded = yaml.safe_load(f) or {}
            if not isinstance(loaded, dict):
                raise ValueError(f"Configuration must be a mapping: {config_path}")

            for section in ('solver', 'continuation'):
                if section not in loaded:
                    raise ValueError(f"Missing required config section: {section}")
            _merge(config, loaded)

        ConfigLoader.apply_env_overrides(config, os.environ if environ is None else environ)
        ConfigLoader._validate_config(config)
        return config

    @staticmethod
    def apply_env_overrides(config: Dict[str, Any], environ: Mapping[str, str]) -> Dict[str, Any]:
        """
        Apply TORUS_SURFACES_SECTION__KEY=value overrides

        Values are parsed as YAML scalars, so numbers and booleans keep
        their types.
        """
        for name in sorted(environ):
            if not name.startswith(ENV_PREFIX):
                continue
            keys = [k.lower() for k in name[len(ENV_PREFIX):].split(ENV_SEPARATOR) if k]
            if not keys:
                continue
            target = config
            for key in keys[:-1]:
                target = target.setdefault(key, {})
                if not isinstance(target, dict):
                    raise ValueError(f"Environment override {name} does not name a section")
            target[keys[-1]] = _parse_value(environ[name])
        return config

    @staticmethod
    def _validate_config(config: Dict[str, Any]):
        """
        Validate configuration

        Args:
            config: Configuration dictionary

        Raises:
            ValueError: If configuration is invalid
        """
        solver = config['solver']
        if solver.get('type') not in VALID_SOLVER_TYPES:
            raise ValueError(f"Invalid solver type: {solver.get('type')}")
        if solver.get('branch_policy') not in VALID_BRANCH_POLICIES:
            raise ValueError(f"Invalid branch policy: {solver.get('branch_policy')}")

        for key in ('residual_tolerance', 'isolation_distance'):
            if not float(solver[key]) > 0:
                raise ValueError(f"solver.{key} must be positive")

        continuation = config['continuation']
        schedule = [float(z) for z in continuation['zeta_schedule']]
        if not schedule or any(not 0 < z < 1 for z in schedule):
            raise ValueError("continuation.zeta_schedule must hold values in (0, 1)")
        if any(b >= a for a, b in zip(schedule, schedule[1:])):
            raise ValueError("continuation.zeta_schedule must be decreasing")
        if not 0 < float(continuation['zeta_min']) < 1:
            raise ValueError("continuation.zeta_min must lie in (0, 1)")

        jobs = config['report'].get('jobs', 1)
        if not isinstance(jobs, int) or jobs < 1:
            raise ValueError(f"Invalid report.jobs: {jobs}")
