"""
Unit Parsing Module

Converts command-line and config-file quantities with explicit units into
the internal units: GHz for frequencies, ns for durations, radians for
angles.
"""

import math
import re

from config import FLOAT_FORMAT
from .errors import UnitError

# Scale factors to the internal unit
FREQUENCY_UNITS = {'ghz': 1.0, 'mhz': 1e-3, 'khz': 1e-6}
DURATION_UNITS = {'ns': 1.0, 'us': 1e3, 'ps': 1e-3}
ANGLE_UNITS = {'rad': 1.0, 'deg': math.pi / 180, 'pi': math.pi}

_QUANTITY = re.compile(r'^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([a-zA-Z]*)\s*$')


def _split(text, kind):
    """Number and lower-cased unit suffix of a quantity string."""
    if isinstance(text, bool) or not isinstance(text, str):
        raise UnitError(f"{kind} '{text}' must be a string with a unit")
    match = _QUANTITY.match(text)
    if not match:
        raise UnitError(f"Cannot parse {kind} '{text}'")
    return float(match.group(1)), match.group(2).lower()


def parse_frequency(text):
    """
    Frequency or energy in GHz.

    Args:
        text: e.g. '25MHz', '0.025GHz', '-4.12 MHz'

    Returns:
        float: Value in GHz
    """
    value, unit = _split(text, 'frequency')
    if unit not in FREQUENCY_UNITS:
        raise UnitError(f"Frequency '{text}' needs a unit ({', '.join(FREQUENCY_UNITS)})")
    return value * FREQUENCY_UNITS[unit]


def parse_duration(text):
    """Duration in ns, from e.g. '10ns' or '0.01us'."""
    value, unit = _split(text, 'duration')
    if unit not in DURATION_UNITS:
        raise UnitError(f"Duration '{text}' needs a unit ({', '.join(DURATION_UNITS)})")
    if value < 0:
        raise UnitError(f"Duration '{text}' is negative")
    return value * DURATION_UNITS[unit]


def parse_angle(text):
    """
    Angle in radians.

    Bare numbers are radians; 'deg', 'rad' and 'pi' (multiples of pi)
    suffixes are accepted.
    """
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        return float(text)
    value, unit = _split(text, 'angle')
    if unit == '':
        return value
    if unit not in ANGLE_UNITS:
        raise UnitError(f"Angle '{text}' has unknown unit '{unit}'")
    return value * ANGLE_UNITS[unit]


def parse_euler(text):
    """'beta,gamma,delta' with per-component angle units, e.g. '90deg,90deg,60deg'."""
    parts = [p for p in str(text).split(',')]
    if len(parts) != 3:
        raise UnitError(f"Euler angles need three comma-separated values, got '{text}'")
    return tuple(parse_angle(p.strip()) for p in parts)


def fmt(value):
    """Number formatted for files and tables."""
    return format(float(value), FLOAT_FORMAT)
