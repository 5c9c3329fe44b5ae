"""
Controlled-Unitary Pulse Solver Library
Modular components for solving and simulating single-pulse two-qubit gates
"""

from .linalg import expm_unitary, evolve, fidelity, FidelityMode
from .model import QubitParams, Ising, Anisotropic, TwoQubitParams, Subspace, h_two, w_single
from .su2 import EulerAngles, from_euler, to_euler, project_su2, controlled_target, named_gate
from .solver import (
    SolveSpec, FixTunneling, FixTime, SmallestFeasible, Explicit, GateSolution,
    solve, solve_controlled_u, solve_diagonal, verify_solution, feasibility, layout_adjust,
)
from .simulator import (
    PulseSegment, PulseSchedule, evolve_schedule, tomography, compare_reduced_full,
    pulse_schedule, conventional_controlled_h_schedule, reduced_model_sweep,
)

__all__ = [
    'expm_unitary',
    'evolve',
    'fidelity',
    'FidelityMode',
    'QubitParams',
    'Ising',
    'Anisotropic',
    'TwoQubitParams',
    'Subspace',
    'h_two',
    'w_single',
    'EulerAngles',
    'from_euler',
    'to_euler',
    'project_su2',
    'controlled_target',
    'named_gate',
    'SolveSpec',
    'FixTunneling',
    'FixTime',
    'SmallestFeasible',
    'Explicit',
    'GateSolution',
    'solve',
    'solve_controlled_u',
    'solve_diagonal',
    'verify_solution',
    'feasibility',
    'layout_adjust',
    'PulseSegment',
    'PulseSchedule',
    'evolve_schedule',
    'tomography',
    'compare_reduced_full',
    'pulse_schedule',
    'conventional_controlled_h_schedule',
    'reduced_model_sweep',
]
