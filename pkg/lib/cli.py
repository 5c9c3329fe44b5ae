"""
Command Line Module

Subcommands:
    solve        pulse parameters for a controlled-SU(2) target
    simulate     probability trace of a hold-pulse-hold schedule
    verify       process tomography of a solution file
    compare      full vs reduced model for one state
    feasibility  equation/unknown count for n control qubits
    schedule     conventional controlled-H sequence benchmark

Exit codes: 0 pass, 1 physics fail, 2 usage or input error.
"""

import argparse
import csv
import json
import logging
import math
import sys
from dataclasses import replace

import numpy as np

from config import (
    CONTROL_BIAS_GHZ, HOLD_BIAS_GHZ, DEFAULT_TUNNELING_GHZ, DEFAULT_SAMPLE_DT_NS,
    CONVENTIONAL_TIMINGS_NS, FIDELITY_THRESHOLD, NORMALIZATION_TOL, RESIDUAL_TOL,
)
from .errors import PulseSolverError, ConfigError, UnitError, DegenerateParams
from .linalg import polar
from .model import (
    QubitParams, Ising, Anisotropic, TwoQubitParams, oscillation_profile, probability_one,
    basis_state_from_label,
)
from .simulator import (
    PulseSchedule, PulseSegment, evolve_schedule, single_qubit_trace, tomography,
    compare_reduced_full, hold_pulse_hold, conventional_controlled_h_schedule,
)
from .solution_file import read_solution, write_solution
from .solver import (
    SolveSpec, FixTunneling, FixTime, SmallestFeasible, Explicit,
    solve, layout_adjust, verify_solution, feasibility,
)
from .su2 import EulerAngles, from_euler, to_euler, project_su2, controlled_target, named_gate
from .units import parse_frequency, parse_duration, parse_euler, fmt

logger = logging.getLogger('PulseSolver')

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

# Initial state of the reduced-vs-full experiment: (sqrt3/2)|00> + (sqrt3/4)|10> + (1/4)|11>
COMPARE_INITIAL = ','.join(fmt(x) for x in (math.sqrt(3) / 2, 0.0, math.sqrt(3) / 4, 0.25))

# Options whose values must carry a unit
UNIT_OPTIONS = set()


def _arg_type(parse):
    """Wrap a unit parser so argparse reports its message."""
    def convert(text):
        try:
            return parse(text)
        except UnitError as e:
            raise argparse.ArgumentTypeError(str(e))
    convert.__name__ = parse.__name__
    return convert


FREQUENCY = _arg_type(parse_frequency)
DURATION = _arg_type(parse_duration)


def _frequency_list(text):
    return [parse_frequency(p.strip()) for p in text.split(',') if p.strip()]


FREQUENCY_LIST = _arg_type(_frequency_list)


def _unit_option(parser, flag, kind, **kwargs):
    action = parser.add_argument(flag, type=kind, **kwargs)
    UNIT_OPTIONS.add(action.dest)
    return action


def _add_target_options(parser):
    group = parser.add_argument_group('target')
    group.add_argument('--target', help="Named gate: x, y, z, h, s, t, identity or phase:<radians>")
    group.add_argument('--euler', help="beta,gamma,delta; radians, or with a deg/pi suffix")
    group.add_argument('--matrix', help="Four comma-separated complex entries U00,U01,U10,U11")


def _add_pulse_options(parser):
    group = parser.add_argument_group('pulse parameters')
    group.add_argument('--solution', help="Solution file written by solve")
    _unit_option(group, '--epsilon-a', FREQUENCY, help="Control bias (default 10GHz)")
    _unit_option(group, '--delta-a', FREQUENCY, help="Control tunneling (default: target's)")
    _unit_option(group, '--epsilon-b', FREQUENCY, help="Target bias during the pulse")
    _unit_option(group, '--delta-b', FREQUENCY, help="Target tunneling")
    _unit_option(group, '--kappa-b', FREQUENCY, help="Target k term")
    _unit_option(group, '--xi', FREQUENCY, help="Ising coupling")
    group.add_argument('--coupling', choices=['ising', 'heisenberg', 'xxz', 'xy'], default='ising')
    _unit_option(group, '--j', FREQUENCY, help="Coupling strength J (default: xi)")
    _unit_option(group, '--jxy', FREQUENCY, help="J_X = J_Y for xxz (default: J)")


def build_parser():
    """
    Argument parser and its subparsers by command name.

    Returns:
        tuple: (ArgumentParser, dict)
    """
    parser = argparse.ArgumentParser(
        prog='pulse_solver',
        description="Single-pulse controlled-SU(2) gates on two coupled qubits",
    )
    parser.add_argument('-v', '--verbose', action='store_true', help="Debug logging on the console")
    sub = parser.add_subparsers(dest='command', required=True)
    commands = {}

    p = sub.add_parser('solve', help="Solve for pulse parameters")
    _add_target_options(p)
    _unit_option(p, '--fix-delta', FREQUENCY, help="Hold the tunneling fixed, solve for T")
    _unit_option(p, '--fix-time', DURATION, help="Hold T fixed, solve for the tunneling")
    p.add_argument('--P', type=int, help="Explicit integer P (default: smallest feasible)")
    _unit_option(p, '--epsilon-a', FREQUENCY, default=f'{CONTROL_BIAS_GHZ}GHz')
    p.add_argument('--max-winding', type=int, default=0)
    _unit_option(p, '--tunneling', FREQUENCY, help="Hardware tunneling kept in a diagonal solution")
    _unit_option(p, '--spectators', FREQUENCY_LIST, help="Couplings to neighbours held in |0>, e.g. 10MHz,20MHz")
    p.add_argument('--select', type=int, default=0, help="Candidate written to the solution file")
    p.add_argument('--output', default='solution.json')
    p.set_defaults(handler=cmd_solve)
    commands['solve'] = p

    p = sub.add_parser('simulate', help="Probability trace of a pulse schedule")
    _add_pulse_options(p)
    _unit_option(p, '--pre', DURATION, default='0ns')
    _unit_option(p, '--pulse', DURATION, help="Pulse length (default: the solution's T)")
    _unit_option(p, '--post', DURATION, default='0ns')
    _unit_option(p, '--hold-bias', FREQUENCY, default=f'{HOLD_BIAS_GHZ}GHz')
    _unit_option(p, '--sample-dt', DURATION, default=f'{DEFAULT_SAMPLE_DT_NS}ns')
    p.add_argument('--initial', default='10', help="Basis label (e.g. 10) or comma-separated amplitudes")
    p.add_argument('--subnormalized', action='store_true', help="Accept an initial state with norm below 1")
    p.add_argument('--normalize', action='store_true', help="Rescale the initial state to norm 1")
    p.add_argument('--single', action='store_true', help="Evolve the target qubit alone (2-level trace)")
    p.add_argument('--trace', default='trace.csv')
    p.set_defaults(handler=cmd_simulate)
    commands['simulate'] = p

    p = sub.add_parser('verify', help="Process tomography of a solution")
    p.add_argument('--solution', required=False)
    _add_target_options(p)
    _unit_option(p, '--epsilon-a', FREQUENCY)
    _unit_option(p, '--delta-a', FREQUENCY)
    p.add_argument('--threshold', type=float, default=FIDELITY_THRESHOLD)
    p.add_argument('--workers', type=int, default=None, help="Threads for the basis columns")
    p.set_defaults(handler=cmd_verify)
    commands['verify'] = p

    p = sub.add_parser('compare', help="Full vs reduced model for one state")
    _unit_option(p, '--epsilon-a', FREQUENCY, default='10GHz')
    _unit_option(p, '--delta-a', FREQUENCY, default='50MHz')
    _unit_option(p, '--epsilon-b', FREQUENCY, default='30MHz')
    _unit_option(p, '--delta-b', FREQUENCY, default='50MHz')
    _unit_option(p, '--kappa-b', FREQUENCY, default='0GHz')
    _unit_option(p, '--xi', FREQUENCY, default='12.5MHz')
    _unit_option(p, '--time', DURATION, default='10ns')
    p.add_argument('--initial', default=COMPARE_INITIAL)
    p.add_argument('--no-block-phases', action='store_true',
                   help="Leave out the e^(-/+ i 2 pi eps_A t) factor of each control block")
    p.add_argument('--threshold', type=float, default=FIDELITY_THRESHOLD)
    p.set_defaults(handler=cmd_compare)
    commands['compare'] = p

    p = sub.add_parser('feasibility', help="Equations vs unknowns for n controls")
    p.add_argument('--controls', type=int, default=1)
    p.add_argument('--up-to', type=int, default=None, help="Tabulate n = 1..N instead")
    p.set_defaults(handler=cmd_feasibility)
    commands['feasibility'] = p

    p = sub.add_parser('schedule', help="Conventional controlled-H sequence vs one pulse")
    for name, default in CONVENTIONAL_TIMINGS_NS.items():
        _unit_option(p, '--' + name.replace('_', '-'), DURATION, default=f'{default}ns')
    _unit_option(p, '--epsilon-a', FREQUENCY, default=f'{CONTROL_BIAS_GHZ}GHz')
    _unit_option(p, '--delta-a', FREQUENCY, default=f'{DEFAULT_TUNNELING_GHZ}GHz')
    _unit_option(p, '--sample-dt', DURATION, default=f'{DEFAULT_SAMPLE_DT_NS}ns')
    p.add_argument('--initial', default='10')
    p.add_argument('--trace', default=None, help="Also write the trace of --initial")
    p.add_argument('--threshold', type=float, default=FIDELITY_THRESHOLD)
    p.set_defaults(handler=cmd_schedule)
    commands['schedule'] = p

    for p in commands.values():
        p.add_argument('--config', help="JSON file with option values (flags win)")
    return parser, commands


def load_run_config(path, known):
    """
    Option values from a JSON config file, keyed by argparse dest.

    Raises:
        ConfigError: unreadable file, unknown key or unitless quantity
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must hold a single object")

    values = {}
    for key, value in data.items():
        dest = key.replace('-', '_')
        if dest not in known or dest in ('command', 'config', 'handler'):
            raise ConfigError(f"Unknown option '{key}' in {path}")
        if dest in UNIT_OPTIONS and not isinstance(value, str):
            raise ConfigError(f"Option '{key}' in {path} needs a unit, e.g. \"25MHz\"")
        values[dest] = value
    return values


def parse_args(argv=None):
    """Parse the command line, merging a --config file below explicit flags."""
    parser, commands = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, 'config', None):
        values = load_run_config(args.config, set(vars(args)))
        commands[args.command].set_defaults(**values)
        args = parser.parse_args(argv)
    return args


def _enable_debug():
    logger.setLevel(logging.DEBUG)
    for handler in logger.handlers:
        if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
            handler.setLevel(logging.DEBUG)


# Input helpers

def _parse_complex(text):
    try:
        return complex(text.strip().replace(' ', '').replace('i', 'j'))
    except ValueError as e:
        raise ConfigError(f"Cannot parse complex number '{text}'") from e


def parse_state(text, dim, subnormalized=False, normalize=False):
    """
    Basis label ('10', '1') or comma-separated amplitudes.

    Raises:
        ConfigError: wrong length, or norm off by more than NORMALIZATION_TOL
            without subnormalized/normalize
    """
    text = str(text).strip()
    if ',' not in text and set(text) <= {'0', '1'} and 2 ** len(text) == dim:
        return basis_state_from_label(text)
    amplitudes = np.array([_parse_complex(p) for p in text.split(',')], dtype=np.complex128)
    if amplitudes.shape[0] != dim:
        raise ConfigError(f"Initial state needs {dim} amplitudes, got {amplitudes.shape[0]}")
    norm = float(np.linalg.norm(amplitudes))
    if normalize:
        if norm == 0:
            raise ConfigError("Cannot normalize the zero vector")
        return amplitudes / norm
    if abs(norm ** 2 - 1) > NORMALIZATION_TOL:
        if not subnormalized or norm ** 2 > 1 + NORMALIZATION_TOL:
            raise ConfigError(f"Initial state has squared norm {norm ** 2:.9g}; "
                              f"use --normalize or --subnormalized")
    return amplitudes


def _parse_matrix(text):
    entries = [_parse_complex(p) for p in text.split(',')]
    if len(entries) != 4:
        raise ConfigError(f"--matrix needs four entries, got {len(entries)}")
    return np.array(entries, dtype=np.complex128).reshape(2, 2)


def resolve_target(args, default_angles=None):
    """
    Target Euler angles and its det-1 matrix from --target, --euler or --matrix.

    Returns:
        tuple: (EulerAngles, 2x2 special unitary)
    """
    given = [name for name in ('target', 'euler', 'matrix') if getattr(args, name, None)]
    if len(given) > 1:
        raise ConfigError(f"Give only one of --target, --euler, --matrix (got {', '.join(given)})")
    if args.target:
        u, angles = named_gate(args.target)
        return angles, project_su2(u)[0]
    if args.euler:
        angles = EulerAngles(*parse_euler(args.euler))
        return angles, from_euler(angles)
    if args.matrix:
        v, phase = project_su2(_parse_matrix(args.matrix))
        logger.info(f"Target matrix projected to SU(2), global phase {math.degrees(phase):.6g} deg")
        return to_euler(v), v
    if default_angles is not None:
        return default_angles, from_euler(default_angles)
    raise ConfigError("No target given: use --target, --euler or --matrix")


def _coupling(args, xi):
    strength = xi if args.j is None else args.j
    if args.coupling == 'ising':
        return Ising(strength)
    if args.coupling == 'heisenberg':
        return Anisotropic(strength, strength, strength)
    if args.coupling == 'xy':
        return Anisotropic(strength, strength, 0.0)
    jxy = strength if args.jxy is None else args.jxy
    return Anisotropic(jxy, jxy, strength)


def _value(value, default):
    return default if value is None else value


# Output helpers

def _amplitude(a):
    modulus, degrees = polar(a)
    return f"{modulus:.6f}∠{degrees:+.3f}°"


def print_solutions(candidates):
    header = f"{'#':>2} {'branch':>6} {'eps[MHz]':>12} {'xi[MHz]':>12} {'Delta[MHz]':>12} " \
             f"{'k[MHz]':>12} {'T[ns]':>10} {'P':>3} {'residual':>10}"
    print(header)
    print('-' * len(header))
    for i, c in enumerate(candidates):
        print(f"{i:>2} {c.branch:>+6d} {c.epsilon * 1e3:>12.6f} {c.xi * 1e3:>12.6f} {c.tunneling * 1e3:>12.6f} "
              f"{c.kappa * 1e3:>12.6f} {c.T:>10.6f} {c.P:>3d} {c.residuals:>10.2e}")
        if c.approximate:
            print(f"   approximate: fidelity penalty {c.fidelity_penalty:.3e}")
        if c.spectator_xis:
            print(f"   spectators: {', '.join(fmt(x * 1e3) for x in c.spectator_xis)} MHz, "
                  f"effective eps {c.effective_epsilon * 1e3:.6f} MHz")


def write_trace(path, trace):
    """CSV trace time_ns,p00,p01,p10,p11 (or time_ns,p0,p1)."""
    with open(path, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(['time_ns'] + ['p' + label for label in trace.labels])
        for t, row in zip(trace.times, trace.probabilities):
            writer.writerow([fmt(t)] + [fmt(p) for p in row])
    logger.info(f"Trace with {len(trace.times)} rows written to {path}")


def print_state(state, labels):
    for label, a in zip(labels, state):
        print(f"|{label}>  {_amplitude(a)}  p={abs(a) ** 2:.6f}")


def print_matrix(m):
    for row in m:
        print('  '.join(_amplitude(a) for a in row))


def print_oscillation(p, initial, duration):
    """Closed-form P(|1>) offset, amplitude, frequency and end value for a basis start."""
    try:
        profile = oscillation_profile(p, initial)
    except DegenerateParams:
        print(f"No oscillation: P(1) stays at {initial}")
        return
    print(f"P(1)(t) = {profile.offset:.9g} {'-' if initial == 0 else '+'} {profile.amplitude:.9g} "
          f"cos(2 pi {profile.frequency:.9g} GHz t)")
    print(f"P(1) at {duration:g} ns: {probability_one(profile, duration, initial):.9f}")


# Commands

def cmd_solve(args):
    angles, _ = resolve_target(args)
    if (args.fix_delta is None) == (args.fix_time is None):
        raise ConfigError("Give exactly one of --fix-delta or --fix-time")
    fix = FixTunneling(args.fix_delta) if args.fix_delta is not None else FixTime(args.fix_time)
    spec = SolveSpec(
        angles=angles,
        fix=fix,
        p_policy=Explicit(args.P) if args.P is not None else SmallestFeasible(),
        epsilon_a=args.epsilon_a,
        max_winding=args.max_winding,
        tunneling=args.tunneling,
    )
    candidates = solve(spec)
    if args.spectators:
        candidates = [layout_adjust(c, args.spectators) for c in candidates]

    print_solutions(candidates)
    for c in candidates:
        if not c.block_phase_aligned:
            print(f"warning: candidate with T = {c.T:.6g} ns has non-integer eps_A*T = {c.epsilon_a * c.T:.6g}")

    passing = [i for i, c in enumerate(candidates) if c.approximate or c.residuals <= RESIDUAL_TOL]
    if not passing:
        print("No candidate passes the residual check")
        return EXIT_FAIL
    if not 0 <= args.select < len(candidates):
        raise ConfigError(f"--select {args.select} out of range (0..{len(candidates) - 1})")
    if args.select not in passing:
        print(f"Candidate {args.select} fails the residual check "
              f"({candidates[args.select].residuals:.3e} > {RESIDUAL_TOL:g}), not written")
        return EXIT_FAIL
    write_solution(args.output, candidates[args.select])
    print(f"Solution {args.select} written to {args.output}")
    return EXIT_OK


def cmd_simulate(args):
    sol = read_solution(args.solution) if args.solution else None

    if args.single:
        if sol is not None:
            p = QubitParams(sol.tunneling, sol.effective_epsilon, sol.kappa)
        else:
            if args.epsilon_b is None:
                raise ConfigError("--single needs --solution or --epsilon-b")
            p = QubitParams(_value(args.delta_b, 0.0), args.epsilon_b, _value(args.kappa_b, 0.0))
        duration = args.pulse if args.pulse is not None else (sol.T if sol else None)
        if duration is None:
            raise ConfigError("--single needs --pulse or a solution file")
        initial = parse_state(args.initial, 2, args.subnormalized, args.normalize)
        trace, final = single_qubit_trace(p, initial, duration, args.sample_dt)
        write_trace(args.trace, trace)
        print_state(final, trace.labels)
        label = str(args.initial).strip()
        if label in ('0', '1'):
            print_oscillation(p, int(label), duration)
        return EXIT_OK

    if sol is not None:
        if args.epsilon_a is not None:
            sol = replace(sol, epsilon_a=args.epsilon_a)
        params = sol.to_params(control_tunneling=args.delta_a, coupling=_coupling(args, sol.xi))
        duration = sol.T if args.pulse is None else args.pulse
    else:
        if args.epsilon_b is None or args.pulse is None:
            raise ConfigError("Without --solution give at least --epsilon-b and --pulse")
        delta_b = _value(args.delta_b, 0.0)
        params = TwoQubitParams(
            QubitParams(_value(args.delta_a, delta_b), _value(args.epsilon_a, CONTROL_BIAS_GHZ)),
            QubitParams(delta_b, args.epsilon_b, _value(args.kappa_b, 0.0)),
            _coupling(args, _value(args.xi, 0.0)),
        )
        duration = args.pulse

    sched = hold_pulse_hold(params, duration, args.pre, args.post, args.hold_bias, args.sample_dt)
    initial = parse_state(args.initial, 4, args.subnormalized, args.normalize)
    trace, final = evolve_schedule(initial, sched)
    write_trace(args.trace, trace)
    print(f"Final state after {sched.total_duration:g} ns ({params.coupling.family} coupling):")
    print_state(final, trace.labels)
    return EXIT_OK


def cmd_verify(args):
    if not args.solution:
        raise ConfigError("verify needs --solution")
    sol = read_solution(args.solution)
    if args.epsilon_a is not None:
        sol = replace(sol, epsilon_a=args.epsilon_a)
    angles, matrix = resolve_target(args, default_angles=sol.angles)

    params = sol.to_params(control_tunneling=args.delta_a)
    sched = PulseSchedule(segments=[PulseSegment(params, sol.T, 'pulse')])
    target = controlled_target(matrix)
    result = tomography(sched, target, workers=args.workers)
    # not exactly unitary while the control qubit tunnels
    block = abs(np.trace(target.target_block.conj().T @ result.realized[2:, 2:])) / 2
    report = verify_solution(sol, angles)

    print("Realized gate (columns |00>, |01>, |10>, |11>):")
    print_matrix(result.realized)
    print(f"Global-phase fidelity: {result.fidelity_global:.9f}")
    print(f"Block-phase fidelity:  {result.fidelity_block:.9f}")
    print(f"Control-|1> block vs U: {block:.9f}")
    print(f"Reduced-model equations: max defect {report.max_residual:.3e} "
          f"({'pass' if report.passed else 'fail'})")
    if not sol.block_phase_aligned:
        print(f"warning: eps_A*T = {sol.epsilon_a * sol.T:.6g} is not an integer, "
              f"the control blocks differ by a relative phase")

    if result.fidelity_block >= args.threshold:
        return EXIT_OK
    print(f"FAIL: block fidelity below {args.threshold}")
    return EXIT_FAIL


def cmd_compare(args):
    params = TwoQubitParams(
        QubitParams(args.delta_a, args.epsilon_a),
        QubitParams(args.delta_b, args.epsilon_b, args.kappa_b),
        Ising(args.xi),
    )
    initial = parse_state(args.initial, 4)
    result = compare_reduced_full(params, initial, args.time, block_phases=not args.no_block_phases)

    print(f"{'state':>5} {'full':>22} {'p_full':>9} {'reduced':>22} {'p_reduced':>9} {'dp':>10} "
          f"{'dmod':>10} {'dphase':>9}")
    for a in result.amplitudes:
        print(f"|{a.label}> {_amplitude(a.full):>22} {abs(a.full) ** 2:>9.5f} {_amplitude(a.reduced):>22} "
              f"{abs(a.reduced) ** 2:>9.5f} {a.probability_delta:>+10.2e} {a.modulus_delta:>+10.2e} "
              f"{a.phase_delta_deg:>+8.3f}°")
    print(f"Overlap |<full|reduced>|^2 = {result.overlap:.9f}")
    print(f"Reduced-model validity: eps_A/|Delta_A| = {result.validity_ratio:.6g} "
          f"({'valid' if result.valid else 'outside regime'})")
    return EXIT_OK if result.overlap >= args.threshold else EXIT_FAIL


def cmd_feasibility(args):
    counts = range(1, args.up_to + 1) if args.up_to else [args.controls]
    print(f"{'n':>3} {'equations':>10} {'unknowns':>9} {'solvable':>9}")
    for n in counts:
        r = feasibility(n)
        print(f"{r.n_controls:>3} {r.equations:>10} {r.unknowns:>9} {'yes' if r.solvable else 'no':>9}")
    return EXIT_OK


def cmd_schedule(args):
    timings = {name: getattr(args, name) for name in CONVENTIONAL_TIMINGS_NS}
    sched = conventional_controlled_h_schedule(
        timings, epsilon_a=args.epsilon_a, control_tunneling=args.delta_a, sample_dt=args.sample_dt,
    )
    h, h_angles = named_gate('h')
    result = tomography(sched, controlled_target(project_su2(h)[0]))
    single = solve(SolveSpec(angles=h_angles, fix=FixTunneling(args.delta_a), epsilon_a=args.epsilon_a))[0]

    for segment in sched.segments:
        print(f"{segment.label:>8}: {segment.duration:g} ns")
    print(f"Conventional sequence: {sched.total_duration:g} ns")
    print(f"Single pulse:          {single.T:.6g} ns")
    print(f"Global-phase fidelity: {result.fidelity_global:.9f}")
    print(f"Block-phase fidelity:  {result.fidelity_block:.9f}")

    if args.trace:
        trace, _ = evolve_schedule(parse_state(args.initial, 4), sched)
        write_trace(args.trace, trace)
    return EXIT_OK if result.fidelity_block >= args.threshold else EXIT_FAIL


def main(argv=None):
    """
    Run one subcommand.

    Returns:
        int: exit code
    """
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except PulseSolverError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if args.verbose:
        _enable_debug()

    try:
        return args.handler(args)
    except (PulseSolverError, KeyError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
