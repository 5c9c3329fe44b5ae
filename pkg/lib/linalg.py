"""
Linear Algebra Module

Dense complex arithmetic for the 2- and 4-dimensional systems: Hermitian
exponentiation, state evolution and gate fidelities.

Units: generators in GHz, durations in ns. Phases are 2*pi*f*t.
"""

import enum
import logging

import numpy as np
import scipy.linalg as la

from config import HERMITIAN_TOL, UNITARY_TOL
from .errors import NonHermitianInput, DimensionMismatch, ModeUnsupported

logger = logging.getLogger('PulseSolver')

SUPPORTED_DIMS = (2, 4)


class FidelityMode(enum.Enum):
    """How a realized gate or state is compared with its target."""
    GLOBAL_PHASE = 'global'
    BLOCK_PHASE = 'block'
    STATE_OVERLAP = 'overlap'


def as_matrix(matrix):
    """
    Coerce input to a square complex matrix of a supported dimension.

    Args:
        matrix: array-like, 2x2 or 4x4

    Returns:
        np.ndarray: complex128 copy
    """
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in SUPPORTED_DIMS:
        raise DimensionMismatch(f"Expected a 2x2 or 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("Matrix contains NaN or Inf entries")
    return m


def as_state(state):
    """Coerce input to a complex state vector of a supported dimension."""
    v = np.asarray(state, dtype=np.complex128).reshape(-1)
    if v.shape[0] not in SUPPORTED_DIMS:
        raise DimensionMismatch(f"Expected a 2- or 4-dimensional state, got {v.shape[0]}")
    return v


def basis_state(index, dim=4):
    """Computational basis vector |index> in the given dimension."""
    v = np.zeros(dim, dtype=np.complex128)
    v[index] = 1.0
    return v


def hermiticity_defect(matrix):
    """Largest entry of |H - H^dagger|."""
    m = np.asarray(matrix)
    return float(np.max(np.abs(m - m.conj().T)))


def unitarity_defect(matrix):
    """Largest entry of |U^dagger U - I|."""
    m = np.asarray(matrix)
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


def is_unitary(matrix, tol=UNITARY_TOL):
    return unitarity_defect(matrix) <= tol


def block_diag(upper, lower):
    """4x4 block-diagonal matrix diag-block(upper, lower) of two 2x2 blocks."""
    return la.block_diag(np.asarray(upper, dtype=np.complex128),
                         np.asarray(lower, dtype=np.complex128))


def expm_unitary(hamiltonian, t, method='eigh'):
    """
    Propagator exp(-i 2 pi H t) of a Hermitian generator.

    Args:
        hamiltonian: Hermitian 2x2 or 4x4 matrix in GHz
        t: Duration in ns (t >= 0)
        method: 'eigh' (spectral decomposition, default) or 'expm'
            (scipy scaling-and-squaring, kept as an independent cross-check)

    Returns:
        np.ndarray: Unitary propagator of the same dimension
    """
    h = as_matrix(hamiltonian)
    defect = hermiticity_defect(h)
    if defect > HERMITIAN_TOL:
        raise NonHermitianInput(f"Generator is not Hermitian (defect {defect:.3e})")
    if t < 0:
        raise ValueError(f"Duration must be non-negative, got {t}")

    if method == 'eigh':
        eig_val, eig_vec = la.eigh(0.5 * (h + h.conj().T))
        phases = np.exp(-2j * np.pi * eig_val * t)
        return np.einsum('ij,j,kj->ik', eig_vec, phases, eig_vec.conj())
    elif method == 'expm':
        return la.expm(-2j * np.pi * t * h)
    else:
        raise ValueError(f"Unknown exponentiation method: {method}")


def spectral_evolution(hamiltonian, state, times):
    """
    States exp(-i 2 pi H t) |state> for an array of times.

    One diagonalization serves every sample.

    Returns:
        np.ndarray: shape (len(times), dim)
    """
    h = as_matrix(hamiltonian)
    v = as_state(state)
    if v.shape[0] != h.shape[0]:
        raise DimensionMismatch(f"State dimension {v.shape[0]} does not match generator {h.shape[0]}")
    eig_val, eig_vec = la.eigh(0.5 * (h + h.conj().T))
    coeffs = eig_vec.conj().T @ v
    phases = np.exp(-2j * np.pi * np.outer(np.asarray(times, dtype=float), eig_val))
    return (phases * coeffs) @ eig_vec.T


def evolve(state, hamiltonian, t):
    """
    Evolve a state for time t under a constant Hamiltonian.

    Sub-normalized states are allowed (subspace components); the norm is
    preserved either way.
    """
    v = as_state(state)
    h = as_matrix(hamiltonian)
    if v.shape[0] != h.shape[0]:
        raise DimensionMismatch(f"State dimension {v.shape[0]} does not match generator {h.shape[0]}")
    return expm_unitary(h, t) @ v


def fidelity(a, b, mode=FidelityMode.GLOBAL_PHASE):
    """
    Compare two unitaries or two states.

    Args:
        a: Reference matrix or state
        b: Realized matrix or state of the same kind
        mode: FidelityMode
            GLOBAL_PHASE  -> |tr(A^dagger B)| / dim
            BLOCK_PHASE   -> (|tr_0(A^dagger B)| + |tr_1(A^dagger B)|) / 4 over the
                             control-|0> and control-|1> blocks (4x4 only)
            STATE_OVERLAP -> |<a|b>|^2

    Returns:
        float: Fidelity in [0, 1]
    """
    if mode is FidelityMode.STATE_OVERLAP:
        va = as_state(a)
        vb = as_state(b)
        if va.shape != vb.shape:
            raise DimensionMismatch(f"State dimensions differ: {va.shape[0]} vs {vb.shape[0]}")
        return float(min(1.0, abs(np.vdot(va, vb)) ** 2))

    ma = as_matrix(a)
    mb = as_matrix(b)
    if ma.shape != mb.shape:
        raise DimensionMismatch(f"Matrix dimensions differ: {ma.shape} vs {mb.shape}")
    for name, m in (('reference', ma), ('realized', mb)):
        if not is_unitary(m):
            raise ValueError(f"The {name} matrix is not unitary (defect {unitarity_defect(m):.3e})")

    product = ma.conj().T @ mb
    dim = ma.shape[0]
    if mode is FidelityMode.GLOBAL_PHASE:
        value = abs(np.trace(product)) / dim
    elif mode is FidelityMode.BLOCK_PHASE:
        if dim != 4:
            raise ModeUnsupported("Block-phase fidelity needs a 4x4 two-qubit matrix")
        value = (abs(np.trace(product[:2, :2])) + abs(np.trace(product[2:, 2:]))) / 4
    else:
        raise ModeUnsupported(f"Unknown fidelity mode: {mode}")
    return float(min(1.0, value))


def polar(amplitude):
    """Modulus and phase in degrees of a complex amplitude."""
    return abs(amplitude), float(np.degrees(np.angle(amplitude)))
