"""
Solution File Module

Reads and writes a GateSolution as flat JSON text: one key per line in a
fixed order, units in the key names, numbers in FLOAT_FORMAT so identical
solutions give byte-identical files.
"""

import json
import logging

from config import SOLUTION_SCHEMA_VERSION
from .errors import ConfigError
from .solver import GateSolution
from .su2 import EulerAngles
from .units import fmt

logger = logging.getLogger('PulseSolver')

# key -> (GateSolution field, kind)
FIELDS = [
    ('epsilon_GHz', 'epsilon', 'float'),
    ('xi_GHz', 'xi', 'float'),
    ('tunneling_GHz', 'tunneling', 'float'),
    ('kappa_GHz', 'kappa', 'float'),
    ('T_ns', 'T', 'float'),
    ('P', 'P', 'int'),
    ('branch', 'branch', 'int'),
    ('epsilon_a_GHz', 'epsilon_a', 'float'),
    ('residual', 'residuals', 'float'),
    ('approximate', 'approximate', 'bool'),
    ('fidelity_penalty', 'fidelity_penalty', 'float'),
    ('winding', 'winding', 'int'),
]
ANGLE_KEYS = [('beta_rad', 'beta'), ('gamma_rad', 'gamma'), ('delta_rad', 'delta')]
SPECTATOR_KEY = 'spectator_xis_GHz'


def _encode(value, kind):
    if kind == 'float':
        return fmt(value)
    if kind == 'int':
        return str(int(value))
    return 'true' if value else 'false'


def dumps(sol):
    """Solution file text for one GateSolution."""
    lines = [f'  "schema_version": {SOLUTION_SCHEMA_VERSION}']
    for key, attr, kind in FIELDS:
        lines.append(f'  "{key}": {_encode(getattr(sol, attr), kind)}')
    for key, attr in ANGLE_KEYS:
        lines.append(f'  "{key}": {fmt(getattr(sol.angles, attr))}')
    spectators = ', '.join(fmt(x) for x in sol.spectator_xis)
    lines.append(f'  "{SPECTATOR_KEY}": [{spectators}]')
    return '{\n' + ',\n'.join(lines) + '\n}\n'


def write_solution(path, sol):
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(dumps(sol))
    logger.info(f"Solution written to {path}")


def loads(text):
    """
    Parse solution file text.

    Raises:
        ConfigError: malformed text, wrong schema version or missing keys
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Solution file is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError("Solution file must hold a single object")
    version = data.get('schema_version')
    if version != SOLUTION_SCHEMA_VERSION:
        raise ConfigError(f"Unsupported solution schema version {version!r}, expected {SOLUTION_SCHEMA_VERSION}")

    required = [key for key, _, _ in FIELDS] + [key for key, _ in ANGLE_KEYS]
    missing = [key for key in required if key not in data]
    if missing:
        raise ConfigError(f"Solution file is missing: {', '.join(missing)}")

    kwargs = {}
    try:
        for key, attr, kind in FIELDS:
            raw = data[key]
            if kind == 'float':
                kwargs[attr] = float(raw)
            elif kind == 'int':
                kwargs[attr] = int(raw)
            else:
                kwargs[attr] = bool(raw)
        angles = EulerAngles(**{attr: float(data[key]) for key, attr in ANGLE_KEYS})
        spectators = tuple(float(x) for x in data.get(SPECTATOR_KEY, []))
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Solution file has a malformed value: {e}") from e
    if kwargs['branch'] not in (1, -1):
        raise ConfigError(f"branch must be +1 or -1, got {kwargs['branch']}")
    return GateSolution(angles=angles, spectator_xis=spectators, **kwargs)


def read_solution(path):
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise ConfigError(f"Cannot read solution file {path}: {e}") from e
    return loads(text)
