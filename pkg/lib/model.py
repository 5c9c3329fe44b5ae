"""
Hamiltonian Model Module

Builders for the single-qubit, two-qubit (Ising and anisotropic) and
reduced target-qubit Hamiltonians, their closed-form propagators and the
Rabi oscillation profile.

Basis order is |00>, |01>, |10>, |11> with the first label the control
qubit A and the second the target qubit B.
"""

import enum
import logging
from dataclasses import dataclass
from typing import Union

import numpy as np

from config import REDUCED_VALIDITY_RATIO
from .errors import DegenerateParams, WrongCouplingVariant, KappaUnsupported
from .linalg import basis_state

logger = logging.getLogger('PulseSolver')

IDENTITY = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


@dataclass(frozen=True)
class QubitParams:
    """Single-qubit parameters in GHz: tunneling (Delta), bias (epsilon), kappa (k)."""
    tunneling: float
    bias: float
    kappa: float = 0.0

    def __post_init__(self):
        for name in ('tunneling', 'bias', 'kappa'):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"QubitParams.{name} must be finite")

    def with_bias(self, bias):
        return QubitParams(self.tunneling, bias, self.kappa)


@dataclass(frozen=True)
class Ising:
    """Ising coupling xi * sigma_z sigma_z, in GHz."""
    xi: float

    @property
    def family(self):
        return 'ising'


@dataclass(frozen=True)
class Anisotropic:
    """Coupling jx XX + jy YY + jz ZZ, in GHz."""
    jx: float
    jy: float
    jz: float

    @property
    def family(self):
        if self.jx == 0 and self.jy == 0:
            return 'ising'
        if self.jx == self.jy == self.jz:
            return 'heisenberg'
        if self.jz == 0:
            return 'xy'
        if self.jx == self.jy:
            return 'xxz'
        return 'anisotropic'


CouplingSpec = Union[Ising, Anisotropic]


@dataclass(frozen=True)
class TwoQubitParams:
    """Control qubit A, target qubit B and their coupling."""
    qubit_a: QubitParams
    qubit_b: QubitParams
    coupling: CouplingSpec

    def __post_init__(self):
        if isinstance(self.coupling, Anisotropic) and (self.qubit_a.kappa != 0 or self.qubit_b.kappa != 0):
            raise KappaUnsupported("Anisotropic coupling requires kappa_A = kappa_B = 0")

    def with_target_bias(self, bias):
        return TwoQubitParams(self.qubit_a, self.qubit_b.with_bias(bias), self.coupling)


@dataclass(frozen=True)
class OscillationProfile:
    """Offset X, amplitude Y and frequency f (GHz) of P(|1>)(t)."""
    offset: float
    amplitude: float
    frequency: float


class Subspace(enum.Enum):
    """State of the frozen control qubit."""
    CONTROL_ZERO = 0
    CONTROL_ONE = 1

    @property
    def sign(self):
        """Expectation of sigma_z on the control: +1 for |0>, -1 for |1>."""
        return 1 if self is Subspace.CONTROL_ZERO else -1

    @property
    def indices(self):
        """Rows of the 4x4 basis belonging to this block."""
        return (0, 1) if self is Subspace.CONTROL_ZERO else (2, 3)


def _local(p):
    """Single-qubit generator Delta X + k Y + epsilon Z."""
    return p.tunneling * PAULI_X + p.kappa * PAULI_Y + p.bias * PAULI_Z


def h_single(p):
    """
    Single-qubit Hamiltonian [[eps, Delta - i k], [Delta + i k, -eps]].

    Args:
        p: QubitParams

    Returns:
        np.ndarray: 2x2 Hermitian, traceless
    """
    return _local(p)


def w_single(p, t):
    """
    Closed-form single-qubit propagator exp(-i 2 pi H t).

    Args:
        p: QubitParams
        t: Duration in ns

    Returns:
        np.ndarray: 2x2 special unitary matrix
    """
    if t < 0:
        raise ValueError(f"Duration must be non-negative, got {t}")
    omega = np.sqrt(p.tunneling ** 2 + p.bias ** 2 + p.kappa ** 2)
    phase = 2 * np.pi * omega * t
    cos = np.cos(phase)
    # sin(2 pi omega t) / omega, finite as omega -> 0
    sinc = 2 * np.pi * t * np.sinc(2 * omega * t)
    return np.array([
        [cos - 1j * p.bias * sinc, (-1j * p.tunneling - p.kappa) * sinc],
        [(-1j * p.tunneling + p.kappa) * sinc, cos + 1j * p.bias * sinc],
    ], dtype=np.complex128)


def oscillation_profile(p, initial=0):
    """
    Offset, amplitude and frequency of the |1> probability oscillation.

    Args:
        p: QubitParams
        initial: Starting basis state, 0 or 1

    Returns:
        OscillationProfile
    """
    if initial not in (0, 1):
        raise ValueError(f"Initial state must be 0 or 1, got {initial}")
    transverse = p.tunneling ** 2 + p.kappa ** 2
    total = transverse + p.bias ** 2
    if total == 0:
        raise DegenerateParams("Delta, epsilon and k are all zero, there is no oscillation")
    sign = 1 if initial == 0 else -1
    offset = 0.5 - sign * p.bias ** 2 / (2 * total)
    amplitude = transverse / (2 * total)
    return OscillationProfile(offset=offset, amplitude=amplitude, frequency=2 * np.sqrt(total))


def probability_one(profile, t, initial=0):
    """P(|1>)(t) = X -/+ Y cos(2 pi f t), minus for a |0> start."""
    sign = 1 if initial == 0 else -1
    return profile.offset - sign * profile.amplitude * np.cos(2 * np.pi * profile.frequency * t)


def h_two_ising(p):
    """
    Two-qubit Hamiltonian with Ising coupling.

    Args:
        p: TwoQubitParams with Ising coupling

    Returns:
        np.ndarray: 4x4 Hermitian
    """
    if not isinstance(p.coupling, Ising):
        raise WrongCouplingVariant(f"Expected Ising coupling, got {type(p.coupling).__name__}")
    return (np.kron(_local(p.qubit_a), IDENTITY)
            + np.kron(IDENTITY, _local(p.qubit_b))
            + p.coupling.xi * np.kron(PAULI_Z, PAULI_Z))


def h_two_aniso(p):
    """
    Two-qubit Hamiltonian with anisotropic coupling jx XX + jy YY + jz ZZ.

    Carries no k terms; kappa on either qubit is rejected.
    """
    if not isinstance(p.coupling, Anisotropic):
        raise WrongCouplingVariant(f"Expected anisotropic coupling, got {type(p.coupling).__name__}")
    if p.qubit_a.kappa != 0 or p.qubit_b.kappa != 0:
        raise KappaUnsupported("Anisotropic Hamiltonian has no k terms")
    c = p.coupling
    return (np.kron(_local(p.qubit_a), IDENTITY)
            + np.kron(IDENTITY, _local(p.qubit_b))
            + c.jx * np.kron(PAULI_X, PAULI_X)
            + c.jy * np.kron(PAULI_Y, PAULI_Y)
            + c.jz * np.kron(PAULI_Z, PAULI_Z))


def h_two(p):
    """Dispatch on the coupling family."""
    if isinstance(p.coupling, Ising):
        return h_two_ising(p)
    return h_two_aniso(p)


def reduced_validity(p):
    """
    How far the control qubit is into the frozen regime.

    Returns:
        tuple: (ratio epsilon_A / |Delta_A|, valid) with valid True when the
            ratio reaches REDUCED_VALIDITY_RATIO
    """
    ratio = abs(p.qubit_a.bias) / max(abs(p.qubit_a.tunneling), 1e-300)
    return ratio, ratio >= REDUCED_VALIDITY_RATIO


def effective_target(p, s, spectator_xis=()):
    """
    Target-qubit parameters seen in one control subspace.

    The coupling adds to the target bias for control |0> and subtracts for
    control |1>; spectators frozen in |0> always add.
    """
    if not isinstance(p.coupling, Ising):
        raise WrongCouplingVariant(f"Reduced model needs Ising coupling, got {type(p.coupling).__name__}")
    bias = p.qubit_b.bias + s.sign * p.coupling.xi + float(sum(spectator_xis))
    return p.qubit_b.with_bias(bias)


def h_reduced(p, s):
    """
    Reduced 2x2 Hamiltonian of the target qubit in one control subspace.

    epsilon_A is dropped (pure energy shift of the block). A warning is
    logged when epsilon_A / |Delta_A| is below REDUCED_VALIDITY_RATIO.
    """
    target = effective_target(p, s)
    ratio, valid = reduced_validity(p)
    if not valid:
        logger.warning(f"Reduced model outside its regime: epsilon_A/|Delta_A| = {ratio:.3g}")
    return h_single(target)


def w_reduced(p, s, t):
    """Closed-form reduced propagator of the target qubit in one subspace."""
    return w_single(effective_target(p, s), t)


def h_layout(base, spectator_xis, control):
    """
    Reduced target Hamiltonian with extra neighbours frozen in |0>.

    Args:
        base: TwoQubitParams with Ising coupling to the control qubit
        spectator_xis: Couplings (GHz) to spectator qubits held in |0>
        control: Subspace of the control qubit

    Returns:
        np.ndarray: 2x2 Hermitian
    """
    return h_single(effective_target(base, control, spectator_xis))


def basis_label(index):
    """Two-qubit basis label for a row index, e.g. 2 -> '10'."""
    return format(index, '02b')


def basis_state_from_label(label):
    """State vector for a label such as '10' (4-dim) or '1' (2-dim)."""
    dim = 2 ** len(label)
    return basis_state(int(label, 2), dim)
