"""
Pulse Schedule Simulator Module

Evolves the full two-qubit system through piecewise-constant pulse
schedules, records probability traces, reconstructs the realized gate by
process tomography and compares the full model with the reduced
target-qubit model.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from config import (
    CONTROL_BIAS_GHZ, HOLD_BIAS_GHZ, DEFAULT_TUNNELING_GHZ, DEFAULT_SAMPLE_DT_NS,
    CONVENTIONAL_TIMINGS_NS,
)
from .errors import DimensionMismatch, TimingsIncomplete, WrongCouplingVariant
from .linalg import (
    as_state, basis_state, block_diag, expm_unitary, fidelity, polar,
    spectral_evolution, FidelityMode,
)
from .model import (
    QubitParams, Ising, TwoQubitParams, Subspace, h_single, h_two, w_reduced,
    basis_label, reduced_validity,
)
from .solver import SolveSpec, FixTime, solve_controlled_u, reconstruct
from .su2 import ControlledTarget, named_gate

logger = logging.getLogger('PulseSolver')


@dataclass(frozen=True)
class PulseSegment:
    """Constant parameters held for duration ns."""
    params: TwoQubitParams
    duration: float
    label: str = ''

    def __post_init__(self):
        if not self.duration >= 0:
            raise ValueError(f"Segment duration must be non-negative, got {self.duration}")


@dataclass(frozen=True)
class PulseSchedule:
    segments: Tuple[PulseSegment, ...]
    sample_dt: float = DEFAULT_SAMPLE_DT_NS

    def __post_init__(self):
        object.__setattr__(self, 'segments', tuple(self.segments))
        if not self.sample_dt > 0:
            raise ValueError(f"sample_dt must be positive, got {self.sample_dt}")

    @property
    def total_duration(self):
        return float(sum(s.duration for s in self.segments))


@dataclass(frozen=True)
class ProbabilityTrace:
    """Basis-state probabilities sampled over time."""
    times: np.ndarray
    probabilities: np.ndarray

    @property
    def labels(self):
        dim = self.probabilities.shape[1]
        return [format(i, 'b').zfill(int(math.log2(dim))) for i in range(dim)]

    @property
    def final(self):
        return self.probabilities[-1]


@dataclass(frozen=True)
class TomographyResult:
    realized: np.ndarray = field(repr=False)
    fidelity_global: float
    fidelity_block: float


@dataclass(frozen=True)
class AmplitudeComparison:
    """One basis amplitude from the full and the reassembled reduced evolution."""
    label: str
    full: complex
    reduced: complex

    @property
    def probability_delta(self):
        return abs(self.full) ** 2 - abs(self.reduced) ** 2

    @property
    def modulus_delta(self):
        return abs(self.full) - abs(self.reduced)

    @property
    def phase_delta_deg(self):
        """Phase of full relative to reduced, wrapped to [-180, 180)."""
        if abs(self.full) == 0 or abs(self.reduced) == 0:
            return 0.0
        delta = polar(self.full)[1] - polar(self.reduced)[1]
        return float((delta + 180.0) % 360.0 - 180.0)


@dataclass(frozen=True)
class ReducedComparison:
    """
    Full and reassembled reduced evolution of one state.

    validity_ratio is epsilon_A / |Delta_A|; valid is False when the control
    qubit is not frozen deep enough for the reduced model.
    """
    full_state: np.ndarray = field(repr=False)
    reassembled_state: np.ndarray = field(repr=False)
    subspace_states: Tuple[np.ndarray, np.ndarray] = field(repr=False)
    amplitudes: Tuple[AmplitudeComparison, ...]
    overlap: float
    validity_ratio: float = math.inf
    valid: bool = True


def _sample_times(duration, sample_dt):
    """Local sample times in (0, duration], the endpoint included."""
    if duration <= 0:
        return np.empty(0)
    count = math.ceil(duration / sample_dt - 1e-9)
    return np.minimum(np.arange(1, count + 1) * sample_dt, duration)


def evolve_schedule(initial, sched):
    """
    Evolve a state through a pulse schedule.

    Each segment is exponentiated exactly; the trace is sampled every
    sample_dt inside a segment and at every segment end.

    Args:
        initial: 4-dim state vector
        sched: PulseSchedule

    Returns:
        tuple: (ProbabilityTrace, final state)
    """
    state = as_state(initial)
    if state.shape[0] != 4:
        raise DimensionMismatch(f"Two-qubit schedule needs a 4-dim state, got {state.shape[0]}")

    times = [0.0]
    rows = [np.abs(state) ** 2]
    start = 0.0
    for index, segment in enumerate(sched.segments):
        if segment.duration == 0:
            continue
        hamiltonian = h_two(segment.params)
        local = _sample_times(segment.duration, sched.sample_dt)
        samples = spectral_evolution(hamiltonian, state, local)
        times.extend(start + local)
        rows.extend(np.abs(samples) ** 2)
        state = expm_unitary(hamiltonian, segment.duration) @ state
        start += segment.duration
        logger.debug(f"Segment {index} ({segment.label or 'unnamed'}): {segment.duration} ns, {len(local)} samples")

    trace = ProbabilityTrace(times=np.asarray(times), probabilities=np.vstack(rows))
    return trace, state


def final_state(initial, sched):
    """Final state only, without sampling a trace."""
    state = as_state(initial)
    if state.shape[0] != 4:
        raise DimensionMismatch(f"Two-qubit schedule needs a 4-dim state, got {state.shape[0]}")
    for segment in sched.segments:
        if segment.duration > 0:
            state = expm_unitary(h_two(segment.params), segment.duration) @ state
    return state


def single_qubit_trace(p, initial, duration, sample_dt=DEFAULT_SAMPLE_DT_NS):
    """
    Two-level trace under a constant single-qubit Hamiltonian.

    Args:
        p: QubitParams
        initial: 2-dim state vector
        duration: ns
        sample_dt: ns

    Returns:
        tuple: (ProbabilityTrace with columns p0, p1, final state)
    """
    state = as_state(initial)
    if state.shape[0] != 2:
        raise DimensionMismatch(f"Single-qubit trace needs a 2-dim state, got {state.shape[0]}")
    local = _sample_times(duration, sample_dt)
    samples = spectral_evolution(h_single(p), state, local)
    times = np.concatenate([[0.0], local])
    rows = np.vstack([np.abs(state) ** 2, np.abs(samples) ** 2]) if len(local) else np.abs(state)[None, :] ** 2
    final = expm_unitary(h_single(p), duration) @ state if duration > 0 else state
    return ProbabilityTrace(times=times, probabilities=rows), final


def tomography(sched, target, workers=None):
    """
    Realized 4x4 gate of a schedule, one basis column at a time.

    Args:
        sched: PulseSchedule
        target: ControlledTarget or 4x4 matrix
        workers: Thread count for evolving the columns (None: sequential)

    Returns:
        TomographyResult
    """
    reference = target.matrix if isinstance(target, ControlledTarget) else np.asarray(target, dtype=np.complex128)
    inputs = [basis_state(i) for i in range(4)]
    if workers:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            columns = list(pool.map(lambda v: final_state(v, sched), inputs))
    else:
        columns = [final_state(v, sched) for v in inputs]
    realized = np.column_stack(columns)
    return TomographyResult(
        realized=realized,
        fidelity_global=fidelity(reference, realized, FidelityMode.GLOBAL_PHASE),
        fidelity_block=fidelity(reference, realized, FidelityMode.BLOCK_PHASE),
    )


def compare_reduced_full(params, initial, t, block_phases=True):
    """
    Evolve a two-qubit state in the full model and in the reduced model.

    The reduced path evolves the control-|0> and control-|1> components of
    the state separately (each sub-normalized) under their 2x2 Hamiltonians
    and reassembles them.

    Args:
        params: TwoQubitParams with Ising coupling
        initial: 4-dim normalized state
        t: Duration in ns
        block_phases: Include the e^{-/+ i 2 pi eps_A t} factor of each
            block in the reassembled state

    Returns:
        ReducedComparison
    """
    if not isinstance(params.coupling, Ising):
        raise WrongCouplingVariant(f"Reduced comparison needs Ising coupling, got {type(params.coupling).__name__}")
    state = as_state(initial)
    if state.shape[0] != 4:
        raise DimensionMismatch(f"Comparison needs a 4-dim state, got {state.shape[0]}")

    ratio, valid = reduced_validity(params)
    if not valid:
        logger.warning(f"Reduced model outside its regime: epsilon_A/|Delta_A| = {ratio:.3g}")

    full = expm_unitary(h_two(params), t) @ state
    parts = []
    for subspace in (Subspace.CONTROL_ZERO, Subspace.CONTROL_ONE):
        rows = list(subspace.indices)
        evolved = w_reduced(params, subspace, t) @ state[rows]
        if block_phases:
            evolved = evolved * np.exp(-2j * np.pi * subspace.sign * params.qubit_a.bias * t)
        parts.append(evolved)
    reassembled = np.concatenate(parts)

    amplitudes = tuple(
        AmplitudeComparison(label=basis_label(i), full=complex(full[i]), reduced=complex(reassembled[i]))
        for i in range(4)
    )
    overlap = fidelity(full, reassembled, FidelityMode.STATE_OVERLAP)
    logger.info(f"Reduced vs full overlap after {t} ns: {overlap:.9f}")
    return ReducedComparison(
        full_state=full, reassembled_state=reassembled, subspace_states=tuple(parts),
        amplitudes=amplitudes, overlap=overlap, validity_ratio=ratio, valid=valid,
    )


def pulse_schedule(solution, pre, post, coupling=None, hold_bias=HOLD_BIAS_GHZ,
                   epsilon_a=None, control_tunneling=None, sample_dt=DEFAULT_SAMPLE_DT_NS):
    """
    Hold, pulse, hold: the target bias sits at hold_bias, drops to the
    solved epsilon for T and returns.

    Args:
        solution: GateSolution
        pre: Hold before the pulse (ns)
        post: Hold after the pulse (ns)
        coupling: CouplingSpec for every segment (default: Ising with the solved xi)

    Returns:
        PulseSchedule
    """
    pulse = solution.to_params(epsilon_a=epsilon_a, control_tunneling=control_tunneling, coupling=coupling)
    return hold_pulse_hold(pulse, solution.T, pre, post, hold_bias, sample_dt)


def hold_pulse_hold(pulse, duration, pre=0.0, post=0.0, hold_bias=HOLD_BIAS_GHZ,
                    sample_dt=DEFAULT_SAMPLE_DT_NS):
    """Schedule for explicit pulse-window parameters; the holds differ only in the target bias."""
    hold = pulse.with_target_bias(hold_bias)
    segments = [
        PulseSegment(hold, pre, 'hold'),
        PulseSegment(pulse, duration, 'pulse'),
        PulseSegment(hold, post, 'hold'),
    ]
    return PulseSchedule(segments=[s for s in segments if s.duration > 0], sample_dt=sample_dt)


def _rotation_segment(angle, duration, control, label):
    """R_y(angle) on the target through its k term, coupling off."""
    if duration is None or not duration > 0:
        raise TimingsIncomplete(f"Gate '{label}' needs a positive duration, got {duration}")
    kappa = angle / (4 * np.pi * duration)
    return PulseSegment(TwoQubitParams(control, QubitParams(0.0, 0.0, kappa), Ising(0.0)), duration, label)


def conventional_controlled_h_schedule(timings=None, epsilon_a=CONTROL_BIAS_GHZ,
                                       control_tunneling=DEFAULT_TUNNELING_GHZ,
                                       hold_bias=HOLD_BIAS_GHZ, sample_dt=DEFAULT_SAMPLE_DT_NS):
    """
    Controlled-H built from R_y(pi/4), a CNOT pulse and R_y(7 pi/4).

    H = R_y(-pi/4) X R_y(pi/4), and R_y(7 pi/4) = -R_y(-pi/4), so the
    sequence realizes controlled(-iH) up to a global phase. The rotation
    rate of each R_y segment follows from its duration; the CNOT pulse is
    solved for the given duration. The final settle segment returns the
    target bias to hold_bias.

    Args:
        timings: dict with 'ry_pre', 'cnot', 'ry_post', 'settle' in ns

    Returns:
        PulseSchedule
    """
    timings = dict(CONVENTIONAL_TIMINGS_NS if timings is None else timings)
    missing = [name for name in CONVENTIONAL_TIMINGS_NS if name not in timings]
    if missing:
        raise TimingsIncomplete(f"Missing durations for: {', '.join(missing)}")
    if timings['settle'] < 0:
        raise TimingsIncomplete(f"Settle duration must be non-negative, got {timings['settle']}")
    if not timings['cnot'] > 0:
        raise TimingsIncomplete(f"CNOT pulse needs a positive duration, got {timings['cnot']}")

    control = QubitParams(control_tunneling, epsilon_a)
    _, x_angles = named_gate('x')
    cnot = solve_controlled_u(SolveSpec(angles=x_angles, fix=FixTime(timings['cnot']), epsilon_a=epsilon_a))[0]
    cnot_params = cnot.to_params(control_tunneling=control_tunneling)

    segments = [
        _rotation_segment(np.pi / 4, timings['ry_pre'], control, 'ry_pre'),
        PulseSegment(cnot_params, cnot.T, 'cnot'),
        _rotation_segment(7 * np.pi / 4, timings['ry_post'], control, 'ry_post'),
        PulseSegment(TwoQubitParams(control, QubitParams(0.0, hold_bias), Ising(0.0)), timings['settle'], 'settle'),
    ]
    sched = PulseSchedule(segments=segments, sample_dt=sample_dt)
    logger.info(f"Conventional controlled-H schedule: {sched.total_duration:g} ns over {len(segments)} segments")
    return sched


def reduced_prediction(solution, epsilon_a):
    """4x4 gate the reduced model predicts, block phases included."""
    w_b1, w_b2 = reconstruct(solution)
    phase = np.exp(-2j * np.pi * epsilon_a * solution.T)
    return block_diag(phase * w_b1, np.conj(phase) * w_b2)


def reduced_model_sweep(solution, epsilon_a_values, control_tunneling=None):
    """
    Full-model infidelity against the reduced prediction for each epsilon_A.

    Returns:
        list: (epsilon_a, 1 - block fidelity) in input order
    """
    results = []
    for epsilon_a in epsilon_a_values:
        params = solution.to_params(epsilon_a=epsilon_a, control_tunneling=control_tunneling)
        sched = PulseSchedule(segments=[PulseSegment(params, solution.T, 'pulse')])
        result = tomography(sched, reduced_prediction(solution, epsilon_a))
        infidelity = max(0.0, 1.0 - result.fidelity_block)
        logger.debug(f"epsilon_A = {epsilon_a} GHz: infidelity {infidelity:.3e}")
        results.append((float(epsilon_a), infidelity))
    return results
