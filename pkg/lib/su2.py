"""
SU(2) Module

ZYZ Euler parameterization U = Rz(beta) Ry(gamma) Rz(delta), its inverse,
projection of U(2) onto SU(2), named gates and the controlled-U target.
"""

import logging
from dataclasses import dataclass

import numpy as np

from config import UNITARY_TOL
from .errors import NotUnitary, NotSpecialUnitary
from .linalg import as_matrix, block_diag, unitarity_defect
from .units import parse_angle

logger = logging.getLogger('PulseSolver')

FOUR_PI = 4 * np.pi

# Below this |U00| or |U10| the matching half-angle sum is undetermined
_POLE_TOL = 1e-9


@dataclass(frozen=True)
class EulerAngles:
    """
    Angles in radians of U = Rz(beta) Ry(gamma) Rz(delta).

    Prose lists the tuple as (beta, delta, gamma); the fields are named so
    the order never matters in code.
    """
    beta: float
    gamma: float
    delta: float

    @property
    def half_sum(self):
        """(beta + delta) / 2, the phase of the diagonal."""
        return 0.5 * (self.beta + self.delta)

    @property
    def half_difference(self):
        """(beta - delta) / 2, the phase of the off-diagonal."""
        return 0.5 * (self.beta - self.delta)


@dataclass(frozen=True)
class ControlledTarget:
    """4x4 controlled-U gate diag-block(I, U) with det(U) = 1."""
    matrix: np.ndarray

    @property
    def target_block(self):
        return self.matrix[2:, 2:]


def from_euler(a):
    """
    SU(2) matrix for the given Euler angles.

    Args:
        a: EulerAngles (any reals)

    Returns:
        np.ndarray: 2x2 special unitary
    """
    c = np.cos(a.gamma / 2)
    s = np.sin(a.gamma / 2)
    return np.array([
        [np.exp(-1j * a.half_sum) * c, -np.exp(-1j * a.half_difference) * s],
        [np.exp(1j * a.half_difference) * s, np.exp(1j * a.half_sum) * c],
    ], dtype=np.complex128)


def _check_special_unitary(u, tol):
    defect = unitarity_defect(u)
    if defect > tol:
        raise NotUnitary(f"Matrix is not unitary (defect {defect:.3e})")
    det = np.linalg.det(u)
    if abs(det - 1) > tol:
        raise NotSpecialUnitary(f"Determinant is {det:.6g}, expected 1")


def to_euler(u):
    """
    Euler angles of an SU(2) matrix.

    gamma is returned in [0, pi], beta and delta in [0, 4 pi). When gamma is
    0 or pi only beta + delta (resp. beta - delta) is determined; delta is
    then set to 0.

    Args:
        u: 2x2 special unitary matrix

    Returns:
        EulerAngles
    """
    m = as_matrix(u)
    if m.shape != (2, 2):
        raise NotSpecialUnitary(f"Expected a 2x2 matrix, got shape {m.shape}")
    _check_special_unitary(m, UNITARY_TOL)

    c = abs(m[0, 0])
    s = abs(m[1, 0])
    gamma = 2 * np.arctan2(s, c)

    if s <= _POLE_TOL:
        beta, delta = -2 * np.angle(m[0, 0]), 0.0
    elif c <= _POLE_TOL:
        beta, delta = 2 * np.angle(m[1, 0]), 0.0
    else:
        half_sum = -np.angle(m[0, 0])
        half_difference = np.angle(m[1, 0])
        beta = half_sum + half_difference
        delta = half_sum - half_difference

    return EulerAngles(beta=float(beta % FOUR_PI), gamma=float(gamma), delta=float(delta % FOUR_PI))


def project_su2(u):
    """
    Split a U(2) matrix into e^{i phi} V with det(V) = 1.

    phi is half the principal argument of det(U), so phi is in (-pi/2, pi/2].

    Returns:
        tuple: (V, phi)
    """
    m = as_matrix(u)
    defect = unitarity_defect(m)
    if defect > UNITARY_TOL:
        raise NotUnitary(f"Matrix is not unitary (defect {defect:.3e})")
    phi = 0.5 * float(np.angle(np.linalg.det(m)))
    # det on the negative real axis (either sign of zero imaginary part) -> +pi/2
    if phi <= -np.pi / 2 + 1e-12:
        phi += np.pi
    return np.exp(-1j * phi) * m, phi


def controlled_target(u):
    """
    Controlled-U target diag-block(I, U).

    Args:
        u: 2x2 matrix with det 1

    Returns:
        ControlledTarget
    """
    m = as_matrix(u)
    if m.shape != (2, 2):
        raise NotSpecialUnitary(f"Expected a 2x2 matrix, got shape {m.shape}")
    _check_special_unitary(m, UNITARY_TOL)
    return ControlledTarget(matrix=block_diag(np.eye(2), m))


_SQRT_HALF = np.sqrt(0.5)

# Named gates: (unitary, Euler angles realizing it up to a global phase)
NAMED_GATES = {
    'identity': (np.eye(2, dtype=np.complex128), EulerAngles(0.0, 0.0, 0.0)),
    'x': (np.array([[0, 1], [1, 0]], dtype=np.complex128), EulerAngles(np.pi, np.pi, 0.0)),
    'y': (np.array([[0, -1j], [1j, 0]], dtype=np.complex128), EulerAngles(0.0, np.pi, 0.0)),
    'z': (np.array([[1, 0], [0, -1]], dtype=np.complex128), EulerAngles(np.pi, 0.0, 0.0)),
    'h': (np.array([[1, 1], [1, -1]], dtype=np.complex128) * _SQRT_HALF, EulerAngles(2 * np.pi, np.pi / 2, np.pi)),
    's': (np.diag([1, 1j]).astype(np.complex128), EulerAngles(np.pi / 2, 0.0, 0.0)),
    't': (np.diag([1, np.exp(1j * np.pi / 4)]).astype(np.complex128), EulerAngles(np.pi / 4, 0.0, 0.0)),
}


def phase_gate(theta):
    """diag(e^{-i theta/2}, e^{i theta/2}) and its angles (theta, 0, 0)."""
    u = np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)]).astype(np.complex128)
    return u, EulerAngles(float(theta), 0.0, 0.0)


def named_gate(name):
    """
    Look up a gate by name ('x', 'h', 'z', ... or 'phase:<angle>').

    The phase angle takes the same units as parse_angle: bare radians,
    'deg', 'rad' or 'pi'.

    Returns:
        tuple: (unitary, EulerAngles)
    """
    key = name.strip().lower()
    if key.startswith('phase:'):
        return phase_gate(parse_angle(key.split(':', 1)[1].strip()))
    if key not in NAMED_GATES:
        raise KeyError(f"Unknown gate '{name}'. Known: {', '.join(sorted(NAMED_GATES))}, phase:<theta>")
    u, angles = NAMED_GATES[key]
    return u.copy(), angles
