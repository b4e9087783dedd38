"""
Haystack Utility Functions

Logging setup with the bracketed '[Haystack]' prefix, float formatting for
round-trip exact CSV output, and small parsing helpers shared by the config
layer and the CLI.
"""

import logging
import sys

from haystack.core.constants import FLOAT_FORMAT


# Between DEBUG (10) and INFO (20): per-epoch progress lines
VERBOSE = 15
logging.addLevelName(VERBOSE, 'VERBOSE')

# Config vocabulary -> logging level
LOG_LEVELS = {
    'debug': logging.DEBUG,
    'verbose': VERBOSE,
    'notice': logging.INFO,
    'warning': logging.WARNING,
}

LOG_FORMAT = '[Haystack] %(message)s'


def configure_logging(loglevel='notice', stream=None):
    """
    Configure the 'haystack' logger hierarchy.

    Args:
        loglevel: str - One of debug, verbose, notice, warning
        stream: file - Output stream (default: stderr)

    Returns:
        logging.Logger: The package root logger
    """
    level = LOG_LEVELS.get(str(loglevel).lower())
    if level is None:
        raise ValueError(f'unknown loglevel {loglevel!r} (expected one of: {", ".join(LOG_LEVELS)})')

    logger = logging.getLogger('haystack')
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger


def format_float(value):
    """
    Format a float with 17 significant digits (round-trip exact).

    Args:
        value: float

    Returns:
        str
    """
    return format(float(value), FLOAT_FORMAT)


def parse_int_list(text):
    """
    Parse '4,8,16' or '4:60:4' (start:stop:step, stop inclusive) into ints.

    Args:
        text: str or list - Comma list, range spec, or an existing list

    Returns:
        list[int]
    """
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    text = str(text).strip()
    if ':' in text:
        parts = [int(p) for p in text.split(':')]
        if len(parts) != 3 or parts[2] <= 0:
            raise ValueError(f'range spec must be start:stop:step with step > 0, got {text!r}')
        start, stop, step = parts
        return list(range(start, stop + 1, step))
    return [int(p) for p in text.split(',') if p.strip()]


def parse_str_list(text):
    """Parse 'a,b,c' (or a list) into stripped strings."""
    if isinstance(text, (list, tuple)):
        return [str(v) for v in text]
    return [p.strip() for p in str(text).split(',') if p.strip()]
