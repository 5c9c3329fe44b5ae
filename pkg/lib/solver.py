"""
Pulse Parameter Solver Module

Finds the target-qubit parameters (epsilon, xi, Delta, k) and pulse length T
for which one square pulse realizes a controlled-SU(2) gate:

  - control |0> block: the reduced propagator must be the identity,
    sqrt(Delta^2 + k^2 + (eps + xi)^2) T = P with P a positive integer;
  - control |1> block: the reduced propagator must equal the target U
    (or -U), which fixes the rotation angle and axis
    (eps - xi, k, -Delta) of the pulse.

Both signs of the target are enumerated: +U is reached with rotation angle
theta = arccos(cos((beta+delta)/2) cos(gamma/2)) about axis u_hat, -U with
angle pi - theta about -u_hat.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Tuple, Union

import numpy as np

from config import (
    CONTROL_BIAS_GHZ, RESIDUAL_TOL, PHASE_INTEGRALITY_TOL,
    APPROXIMATION_LIMIT, DEGENERACY_TOL,
)
from .errors import (
    DegenerateTarget, SignInfeasible, NoFeasibleP, ApproximationInvalid,
)
from .linalg import fidelity, FidelityMode
from .model import QubitParams, Ising, TwoQubitParams, w_single
from .su2 import EulerAngles, from_euler

logger = logging.getLogger('PulseSolver')

# Axis components below this are cos(pi/2)-style round-off
_ROUND_OFF = 1e-14


@dataclass(frozen=True)
class FixTunneling:
    """Hold Delta (GHz) fixed and solve for T."""
    delta: float

    def __post_init__(self):
        if self.delta == 0:
            raise ValueError("Fixed tunneling must be non-zero")


@dataclass(frozen=True)
class FixTime:
    """Hold T (ns) fixed and solve for Delta."""
    T: float

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError(f"Fixed pulse time must be positive, got {self.T}")


@dataclass(frozen=True)
class SmallestFeasible:
    """Least integer P >= 1 compatible with the transverse terms."""


@dataclass(frozen=True)
class Explicit:
    P: int

    def __post_init__(self):
        if int(self.P) != self.P or self.P < 1:
            raise ValueError(f"P must be an integer >= 1, got {self.P}")


@dataclass(frozen=True)
class SolveSpec:
    """
    Solver request.

    Attributes:
        angles: Target EulerAngles
        fix: FixTunneling or FixTime
        p_policy: SmallestFeasible or Explicit
        epsilon_a: Control-qubit bias in GHz during the pulse
        max_winding: Extra full turns (2 pi) of the pulse rotation to enumerate
        tunneling: Hardware Delta (GHz) for approximate diagonal solutions
    """
    angles: EulerAngles
    fix: Union[FixTunneling, FixTime]
    p_policy: Union[SmallestFeasible, Explicit] = SmallestFeasible()
    epsilon_a: float = CONTROL_BIAS_GHZ
    max_winding: int = 0
    tunneling: Union[float, None] = None


@dataclass(frozen=True)
class GateSolution:
    """
    One pulse realizing the target (branch +1) or its negative (branch -1).

    epsilon is the bias the target qubit is pulsed to; with spectators the
    bias it actually sees is epsilon + sum(spectator_xis).
    """
    epsilon: float
    xi: float
    tunneling: float
    kappa: float
    T: float
    P: int
    branch: int
    residuals: float
    angles: EulerAngles
    epsilon_a: float = CONTROL_BIAS_GHZ
    spectator_xis: Tuple[float, ...] = ()
    approximate: bool = False
    fidelity_penalty: float = 0.0
    winding: int = 0

    @property
    def effective_epsilon(self):
        return self.epsilon + float(sum(self.spectator_xis))

    @property
    def block_phase_aligned(self):
        """True when epsilon_A T is an integer, so both blocks pick up the same phase."""
        product = self.epsilon_a * self.T
        return abs(product - round(product)) <= PHASE_INTEGRALITY_TOL

    def target_params(self, subspace_sign):
        """Reduced target-qubit parameters for control sign +1 (|0>) or -1 (|1>)."""
        return QubitParams(self.tunneling, self.effective_epsilon + subspace_sign * self.xi, self.kappa)

    def to_params(self, epsilon_a=None, control_tunneling=None, coupling=None):
        """
        Two-qubit parameters for the pulse window.

        Args:
            epsilon_a: Control bias (default: the solution's)
            control_tunneling: Control Delta_A (default: equal to the target's)
            coupling: CouplingSpec (default: Ising with the solved xi)

        Spectators frozen in |0> are folded into the target bias.

        Returns:
            TwoQubitParams
        """
        qubit_a = QubitParams(
            tunneling=self.tunneling if control_tunneling is None else control_tunneling,
            bias=self.epsilon_a if epsilon_a is None else epsilon_a,
        )
        qubit_b = QubitParams(self.tunneling, self.effective_epsilon, self.kappa)
        return TwoQubitParams(qubit_a, qubit_b, Ising(self.xi) if coupling is None else coupling)


@dataclass(frozen=True)
class FeasibilityReport:
    n_controls: int
    equations: int
    unknowns: int
    solvable: bool


@dataclass(frozen=True)
class VerificationReport:
    """Equation defects and the reconstructed subspace propagators."""
    residuals: dict
    max_residual: float
    w_b1: np.ndarray = field(repr=False)
    w_b2: np.ndarray = field(repr=False)
    identity_fidelity: float
    target_fidelity: float
    passed: bool


def _sin_over_omega(omega, T):
    """sin(2 pi omega T) / omega without the 0/0 at omega = 0."""
    return 2 * np.pi * T * np.sinc(2 * omega * T)


def equation_residuals(epsilon, xi, tunneling, kappa, T, P, branch, angles):
    """
    Defects of the identity condition and the four entry equations.

    Right-hand sides of the entry equations are multiplied by branch, so a
    branch -1 solution is checked against -U.

    Returns:
        dict: name -> absolute defect
    """
    transverse = tunneling ** 2 + kappa ** 2
    difference = epsilon - xi
    omega = math.sqrt(transverse + difference ** 2)
    rotation = 2 * np.pi * omega * T
    sin_ratio = _sin_over_omega(omega, T)
    c = math.cos(angles.gamma / 2)
    s = math.sin(angles.gamma / 2)
    return {
        'identity': abs(math.sqrt(transverse + (epsilon + xi) ** 2) * T - P),
        'diagonal_real': abs(branch * math.cos(angles.half_sum) * c - math.cos(rotation)),
        'diagonal_imag': abs(branch * math.sin(angles.half_sum) * c - difference * sin_ratio),
        'offdiag_real': abs(branch * math.cos(angles.half_difference) * s - kappa * sin_ratio),
        'offdiag_imag': abs(branch * math.sin(angles.half_difference) * s + tunneling * sin_ratio),
    }


def _pick_P(T, transverse, p_policy):
    """Integer P for the identity condition, or None when infeasible."""
    floor_value = T * math.sqrt(transverse)
    if isinstance(p_policy, Explicit):
        return p_policy.P if p_policy.P >= floor_value - 1e-12 else None
    return max(1, math.ceil(floor_value - 1e-12))


def _build(spec, difference, kappa, tunneling, T, branch, winding, approximate=False):
    """Close the identity condition and package a candidate, or return None."""
    transverse = tunneling ** 2 + kappa ** 2
    P = _pick_P(T, transverse, spec.p_policy)
    if P is None:
        logger.debug(f"Branch {branch:+d}: no P >= {T * math.sqrt(transverse):.6g} allowed by {spec.p_policy}")
        return None
    total = math.sqrt(max(0.0, (P / T) ** 2 - transverse))
    epsilon = 0.5 * (total + difference)
    xi = 0.5 * (total - difference)
    residuals = equation_residuals(epsilon, xi, tunneling, kappa, T, P, branch, spec.angles)
    worst = max(residuals.values())
    return GateSolution(
        epsilon=epsilon, xi=xi, tunneling=tunneling, kappa=kappa, T=T, P=P,
        branch=branch, residuals=worst, angles=spec.angles, epsilon_a=spec.epsilon_a,
        approximate=approximate, winding=winding,
    )


def _warn_phase(solution):
    if not solution.block_phase_aligned:
        logger.warning(
            f"epsilon_A*T = {solution.epsilon_a * solution.T:.6g} is not an integer: "
            f"the control blocks acquire different phases"
        )


def solve_controlled_u(spec):
    """
    Solve for single-pulse parameters realizing controlled-U (up to sign).

    Args:
        spec: SolveSpec with a non-diagonal target

    Returns:
        list: GateSolution candidates, Delta >= 0 first

    Raises:
        DegenerateTarget: sin(gamma/2) ~ 0, use solve_diagonal
        SignInfeasible: fixed Delta cannot be matched by either branch
        NoFeasibleP: an explicit P is too small for every candidate
    """
    a = spec.angles
    sin_half_gamma = math.sin(a.gamma / 2)
    cos_half_gamma = math.cos(a.gamma / 2)
    if abs(sin_half_gamma) <= DEGENERACY_TOL:
        raise DegenerateTarget("Target is diagonal (sin(gamma/2) ~ 0): use solve_diagonal")

    theta = math.acos(max(-1.0, min(1.0, math.cos(a.half_sum) * cos_half_gamma)))
    axis = np.array([
        math.sin(a.half_sum) * cos_half_gamma,
        math.cos(a.half_difference) * sin_half_gamma,
        math.sin(a.half_difference) * sin_half_gamma,
    ])
    # round-off from cos(pi/2) must not leave a spurious k or Delta
    axis[np.abs(axis) <= _ROUND_OFF] = 0.0
    axis /= np.linalg.norm(axis)
    logger.debug(f"theta = {theta:.12g} rad, axis = {axis}")

    candidates = []
    sign_blocked = 0
    p_blocked = 0
    for branch in (1, -1):
        direction = branch * axis
        base = theta if branch == 1 else math.pi - theta
        for winding in range(spec.max_winding + 1):
            angle = base + 2 * math.pi * winding
            if angle <= 0:
                continue
            if isinstance(spec.fix, FixTime):
                T = spec.fix.T
                rate = angle / (2 * math.pi * T)
                tunneling = -rate * direction[2]
            else:
                tunneling = spec.fix.delta
                if abs(direction[2]) <= DEGENERACY_TOL:
                    sign_blocked += 1
                    continue
                rate = -tunneling / direction[2]
                if rate <= 0:
                    sign_blocked += 1
                    continue
                T = angle / (2 * math.pi * rate)
            difference = rate * direction[0]
            kappa = rate * direction[1]

            candidate = _build(spec, difference, kappa, tunneling, T, branch, winding)
            if candidate is None:
                p_blocked += 1
                continue
            if candidate.residuals > RESIDUAL_TOL:
                logger.debug(f"Branch {branch:+d} winding {winding} discarded, residual {candidate.residuals:.3e}")
                continue
            logger.debug(
                f"Branch {branch:+d} winding {winding}: eps={candidate.epsilon:.9g} xi={candidate.xi:.9g} "
                f"Delta={candidate.tunneling:.9g} k={candidate.kappa:.9g} T={candidate.T:.9g} P={candidate.P}"
            )
            candidates.append(candidate)

    if not candidates:
        if p_blocked:
            raise NoFeasibleP(f"Identity condition cannot be met with {spec.p_policy}")
        if sign_blocked:
            raise SignInfeasible(
                f"Fixed Delta = {spec.fix.delta} GHz cannot satisfy the off-diagonal imaginary equation "
                f"(target needs Delta with the opposite sign or Delta = 0)"
            )
        raise SignInfeasible("No branch satisfies the entry equations")

    candidates.sort(key=lambda c: (c.tunneling < 0, c.winding))
    for c in candidates:
        _warn_phase(c)
    logger.info(f"Found {len(candidates)} candidate(s) for {a}")
    return candidates


def solve_diagonal(spec):
    """
    Solve for a diagonal target diag(e^{-i phi}, e^{i phi}).

    Exact mode (Delta = k = 0) needs FixTime and no hardware tunneling.
    Approximate mode keeps a small hardware Delta (spec.tunneling, or the
    FixTunneling value with T chosen at the validity limit), neglects it in
    the entry equations and reports the fidelity it costs.

    Returns:
        list: GateSolution for branch +1 and -1, lowest fidelity penalty
            first in approximate mode
    """
    a = spec.angles
    if abs(math.sin(a.gamma / 2)) > DEGENERACY_TOL:
        raise DegenerateTarget("Target is not diagonal: use solve_controlled_u")

    if isinstance(spec.fix, FixTunneling):
        tunneling = spec.fix.delta
        T = math.sqrt(APPROXIMATION_LIMIT) / abs(tunneling)
    else:
        tunneling = spec.tunneling or 0.0
        T = spec.fix.T
    approximate = tunneling != 0
    if approximate:
        if tunneling ** 2 * T ** 2 > APPROXIMATION_LIMIT * (1 + 1e-9):
            raise ApproximationInvalid(
                f"Delta^2 T^2 = {tunneling ** 2 * T ** 2:.3g} exceeds {APPROXIMATION_LIMIT}"
            )
        logger.warning(f"Approximate diagonal solution: Delta = {tunneling} GHz neglected in the entry equations")

    # cos(gamma/2) = -1 folds into the phase
    phase = a.half_sum + (math.pi if math.cos(a.gamma / 2) < 0 else 0.0)
    target = from_euler(a)

    candidates = []
    for branch in (1, -1):
        branch_phase = (phase + (0.0 if branch == 1 else math.pi)) % (2 * math.pi)
        for winding in range(spec.max_winding + 1):
            difference = (branch_phase + 2 * math.pi * winding) / (2 * math.pi * T)
            candidate = _build(spec, difference, 0.0, tunneling, T, branch, winding, approximate)
            if candidate is None:
                continue
            if approximate:
                realized = w_single(candidate.target_params(-1), T)
                penalty = 1.0 - fidelity(branch * target, realized, FidelityMode.GLOBAL_PHASE)
                candidate = replace(candidate, fidelity_penalty=penalty)
                logger.info(f"Branch {branch:+d}: approximation costs {penalty:.3e} in target fidelity")
            elif candidate.residuals > RESIDUAL_TOL:
                logger.debug(f"Branch {branch:+d} discarded, residual {candidate.residuals:.3e}")
                continue
            candidates.append(candidate)

    if not candidates:
        raise NoFeasibleP(f"Identity condition cannot be met with {spec.p_policy}")
    if approximate:
        candidates.sort(key=lambda c: (c.fidelity_penalty, c.winding))
    for c in candidates:
        _warn_phase(c)
    return candidates


def solve(spec):
    """Route to solve_diagonal when the target is diagonal, else solve_controlled_u."""
    if abs(math.sin(spec.angles.gamma / 2)) <= DEGENERACY_TOL:
        logger.info("Diagonal target, using the diagonal solver")
        return solve_diagonal(spec)
    return solve_controlled_u(spec)


def reconstruct(sol):
    """Reduced propagators (W_B1, W_B2) of a solution, spectators included."""
    return w_single(sol.target_params(1), sol.T), w_single(sol.target_params(-1), sol.T)


def verify_solution(sol, angles=None):
    """
    Re-check a solution against the equations and the target matrix.

    Args:
        sol: GateSolution
        angles: Target EulerAngles (default: the ones the solution was made for)

    Returns:
        VerificationReport
    """
    angles = sol.angles if angles is None else angles
    residuals = equation_residuals(
        sol.effective_epsilon, sol.xi, sol.tunneling, sol.kappa, sol.T, sol.P, sol.branch, angles,
    )
    worst = max(residuals.values())
    w_b1, w_b2 = reconstruct(sol)
    # Real part: -I in the control |0> block is a failure, not a phase
    identity_fidelity = float(np.real(np.trace(w_b1)) / 2)
    target_fidelity = fidelity(from_euler(angles), w_b2, FidelityMode.GLOBAL_PHASE)

    if sol.approximate:
        passed = (identity_fidelity >= 1 - 1e-6
                  and target_fidelity >= 1 - sol.fidelity_penalty - 1e-9)
    else:
        passed = (worst <= RESIDUAL_TOL
                  and identity_fidelity >= 1 - 1e-6
                  and target_fidelity >= 1 - 1e-9)
    if not passed:
        failing = max(residuals, key=residuals.get)
        logger.warning(f"Verification failed: worst equation '{failing}' defect {worst:.3e}")
    return VerificationReport(
        residuals=residuals, max_residual=worst, w_b1=w_b1, w_b2=w_b2,
        identity_fidelity=identity_fidelity, target_fidelity=target_fidelity, passed=passed,
    )


def feasibility(n_controls):
    """
    Equation/unknown count for a target with n control qubits.

    2^n - 1 identity conditions plus three rotation conditions, against
    Delta, eps, k, T and n couplings.
    """
    if int(n_controls) != n_controls or n_controls < 1:
        raise ValueError(f"Need at least one control qubit, got {n_controls}")
    n = int(n_controls)
    equations = 2 ** n + 2
    unknowns = n + 4
    return FeasibilityReport(n_controls=n, equations=equations, unknowns=unknowns,
                             solvable=equations <= unknowns)


def layout_adjust(sol, spectator_xis):
    """
    Compensate couplings to neighbours frozen in |0>.

    The pulsed bias is lowered by the sum of the spectator couplings so the
    target sees the same effective bias as in the isolated solution.
    """
    xis = tuple(float(x) for x in spectator_xis)
    if not xis:
        return sol
    adjusted = replace(
        sol,
        epsilon=sol.epsilon - sum(xis),
        spectator_xis=sol.spectator_xis + xis,
    )
    report = verify_solution(adjusted)
    adjusted = replace(adjusted, residuals=report.max_residual)
    logger.info(f"Layout adjusted: eps {sol.epsilon:.6g} -> {adjusted.epsilon:.6g} GHz for {len(xis)} spectator(s)")
    return adjusted
