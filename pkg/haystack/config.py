"""
Haystack Configuration Module

Provides configuration management for experiment sweeps. A config file is
flat TOML whose keys mirror the experiment spec; anything not set falls
back to DEFAULT_CONFIG.

Example file:
    archs = ["global", "local"]
    target = "square"
    d_list = [4, 8, 16, 32]
    n_total_list = [20000]
    epochs = 300
    alpha = 20
    output = "sweep.csv"
"""

import sys

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - Python 3.10 fallback
    import tomli as tomllib

from haystack.core.constants import (
    DEFAULT_ALPHA, DEFAULT_BATCH_DIVISOR, DEFAULT_BATCH_SIZE, DEFAULT_D_LIST,
    DEFAULT_DECAY, DEFAULT_EPOCHS, DEFAULT_LOG_EVERY, DEFAULT_LR,
    DEFAULT_SEEDS_PER_CELL,
)
from haystack.exceptions import ConfigError
from haystack.utils import parse_int_list, parse_str_list


# Default configuration values
DEFAULT_CONFIG = {
    # Grid
    'archs': ['global'],
    'target': 'square',
    'd_list': list(DEFAULT_D_LIST),
    'n_total_list': [100000],
    'seeds_per_cell': DEFAULT_SEEDS_PER_CELL,

    # Network
    'alpha': DEFAULT_ALPHA,

    # Training
    'epochs': DEFAULT_EPOCHS,
    'lr': DEFAULT_LR,
    'decay': DEFAULT_DECAY,
    'batch_policy': 'ratio',            # ratio | fixed
    'batch_divisor': DEFAULT_BATCH_DIVISOR,
    'batch_size': DEFAULT_BATCH_SIZE,
    'reg': 'none',                      # none | l1 | l2 | path
    'lambda': None,                     # None = tuned default for reg
    'record_history': False,

    # Seeds
    'base_seed': 0,                     # First optimizer seed of each cell
    'data_seed': 1234,                  # Mixed with (d, n_total) per cell

    # Execution
    'workers': 1,
    'output': 'sweep.csv',
    'log_every': DEFAULT_LOG_EVERY,
    'loglevel': 'notice',               # debug, verbose, notice, warning
}

_LIST_PARSERS = {
    'archs': parse_str_list,
    'd_list': parse_int_list,
    'n_total_list': parse_int_list,
}


def _coerce(key, value):
    """Check value against the type of its default and normalize it."""
    default = DEFAULT_CONFIG[key]
    if key in _LIST_PARSERS:
        try:
            return _LIST_PARSERS[key](value)
        except (TypeError, ValueError) as e:
            raise ConfigError(f'{key}: {e}') from None
    if default is None:
        if value is None:
            return None
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
        raise ConfigError(f'{key} must be a number, got {value!r}')
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(f'{key} must be true or false, got {value!r}')
        return value
    if isinstance(default, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f'{key} must be a number, got {value!r}')
        return float(value)
    if isinstance(default, int):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f'{key} must be an integer, got {value!r}')
        return value
    if not isinstance(value, str):
        raise ConfigError(f'{key} must be a string, got {value!r}')
    return value


class Config:
    """
    Configuration manager for Haystack.

    Provides get/set access to configuration values with validation.
    Only keys present in DEFAULT_CONFIG are accepted.
    """

    __slots__ = ('_config',)

    def __init__(self, initial_config=None):
        """
        Initialize configuration with defaults.

        Args:
            initial_config: dict - Optional values to merge with defaults;
                unknown keys raise ConfigError
        """
        self._config = {k: (list(v) if isinstance(v, list) else v) for k, v in DEFAULT_CONFIG.items()}
        if initial_config:
            for key, value in initial_config.items():
                if key not in DEFAULT_CONFIG:
                    raise ConfigError(f'unknown key {key!r}')
                self._config[key] = _coerce(key, value)

    def get(self, key, default=None):
        """
        Get configuration value.

        Args:
            key: str - Configuration key
            default: Any - Default value if key not found

        Returns:
            Configuration value or default
        """
        return self._config.get(key, default)

    def set(self, key, value):
        """
        Set configuration value.

        Args:
            key: str - Configuration key
            value: Any - Value to set (type-checked)

        Returns:
            bool: True if key exists and was set, False if unknown key
        """
        if key in DEFAULT_CONFIG:
            self._config[key] = _coerce(key, value)
            return True
        return False

    def get_all(self):
        """
        Get all configuration values.

        Returns:
            dict: Copy of all configuration values
        """
        return dict(self._config)


def load_config(filepath):
    """
    Load a flat TOML configuration file.

    Args:
        filepath: str - Path to the file

    Returns:
        Config
    """
    try:
        with open(filepath, 'rb') as f:
            values = tomllib.load(f)
    except OSError as e:
        raise ConfigError(f'cannot read {filepath}: {e.strerror}') from None
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f'{filepath}: {e}') from None

    nested = [k for k, v in values.items() if isinstance(v, dict)]
    if nested:
        raise ConfigError(f'{filepath}: tables are not supported ({", ".join(nested)})')
    return Config(values)

