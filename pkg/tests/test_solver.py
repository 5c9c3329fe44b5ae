import logging
from dataclasses import replace

import numpy as np
import pytest
from numpy.testing import assert_allclose

from lib.errors import DegenerateTarget, SignInfeasible, ApproximationInvalid
from lib.linalg import fidelity
from lib.su2 import EulerAngles, from_euler, named_gate
from lib.solver import (
    SolveSpec, FixTunneling, FixTime, Explicit, solve, solve_controlled_u, solve_diagonal,
    verify_solution, feasibility, layout_adjust, reconstruct, equation_residuals,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def find(candidates, **expected):
    """First candidate matching every expected value within 1%."""
    for c in candidates:
        if all(getattr(c, k) == pytest.approx(v, rel=1e-2) for k, v in expected.items()):
            return c
    raise AssertionError(f"No candidate matches {expected}: {candidates}")


def test_cnot_fixed_tunneling(cnot_solution):
    c = cnot_solution
    assert c.epsilon == pytest.approx(0.0484, rel=5e-3)
    assert c.xi == pytest.approx(0.0484, rel=5e-3)
    assert c.kappa == pytest.approx(0.0, abs=1e-12)
    assert c.T == pytest.approx(10.0, rel=1e-9)
    assert c.P == 1
    assert c.branch == -1
    assert c.residuals <= 1e-9


def test_cnot_has_a_single_candidate():
    _, angles = named_gate('x')
    assert len(solve_controlled_u(SolveSpec(angles=angles, fix=FixTunneling(0.025)))) == 1


def test_controlled_h_fixed_tunneling():
    _, angles = named_gate('h')
    c = find(solve_controlled_u(SolveSpec(angles=angles, fix=FixTunneling(0.025))),
             epsilon=0.0821, xi=0.0571)
    assert c.T == pytest.approx(7.07, rel=1e-2)
    assert c.T < 7.1


def test_controlled_h_fixed_time():
    _, angles = named_gate('h')
    candidates = solve_controlled_u(SolveSpec(angles=angles, fix=FixTime(10.0)))
    c = find(candidates, epsilon=0.0581, xi=0.0404)
    assert abs(c.tunneling) == pytest.approx(0.0177, rel=1e-2)
    assert c.tunneling > 0
    assert candidates[0].tunneling >= 0


def test_generic_gate_fixed_time(generic_solution):
    c = generic_solution
    assert c.epsilon == pytest.approx(0.0570, rel=3e-2)
    assert c.xi == pytest.approx(0.0417, rel=3e-2)
    assert c.tunneling == pytest.approx(-0.00412, rel=3e-2)
    assert c.kappa == pytest.approx(0.0153, rel=3e-2)
    assert c.P == 1


def test_fixed_time_branches_differ_by_sign(generic_angles):
    plus, minus = sorted(solve_controlled_u(SolveSpec(angles=generic_angles, fix=FixTime(10.0))),
                         key=lambda c: -c.branch)
    assert (plus.branch, minus.branch) == (1, -1)
    assert_allclose(reconstruct(plus)[1], -reconstruct(minus)[1], atol=1e-9)


def test_branch_magnitudes_agree_for_quarter_turn_targets():
    # theta = pi/2 for X, so both branches rotate by the same angle
    _, angles = named_gate('x')
    first, second = solve_controlled_u(SolveSpec(angles=angles, fix=FixTime(10.0)))
    assert {first.branch, second.branch} == {1, -1}
    for attr in ('tunneling', 'kappa', 'T', 'P'):
        assert abs(getattr(first, attr)) == pytest.approx(abs(getattr(second, attr)), abs=1e-12)


def test_end_to_end_soundness(rng):
    for _ in range(200):
        angles = EulerAngles(rng.uniform(0, 4 * np.pi), rng.uniform(0.1, np.pi - 0.1), rng.uniform(0, 4 * np.pi))
        candidates = solve_controlled_u(SolveSpec(angles=angles, fix=FixTime(10.0)))
        assert candidates
        target = from_euler(angles)
        for c in candidates:
            assert c.residuals <= 1e-9
            w_b1, w_b2 = reconstruct(c)
            assert np.real(np.trace(w_b1)) / 2 >= 1 - 1e-9
            assert fidelity(target, w_b2) >= 1 - 1e-9
            assert_allclose(w_b2, c.branch * target, atol=1e-8)


def test_identity_condition_holds(generic_solution):
    c = generic_solution
    total = np.sqrt(c.tunneling ** 2 + c.kappa ** 2 + (c.epsilon + c.xi) ** 2)
    assert total * c.T == pytest.approx(c.P, abs=1e-9)


def test_explicit_P():
    _, angles = named_gate('x')
    c = solve_controlled_u(SolveSpec(angles=angles, fix=FixTunneling(0.025), p_policy=Explicit(2)))[0]
    assert c.P == 2
    assert c.epsilon + c.xi == pytest.approx(np.sqrt(0.2 ** 2 - 0.025 ** 2))


def test_explicit_P_drops_fast_windings():
    # one extra turn at T = 10 ns needs Delta T = 1.25, so P = 1 only fits winding 0
    _, angles = named_gate('x')
    spec = SolveSpec(angles=angles, fix=FixTime(10.0), p_policy=Explicit(1), max_winding=2)
    assert {c.winding for c in solve_controlled_u(spec)} == {0}


def test_windings_add_candidates(generic_angles):
    base = solve_controlled_u(SolveSpec(angles=generic_angles, fix=FixTime(10.0)))
    wound = solve_controlled_u(SolveSpec(angles=generic_angles, fix=FixTime(10.0), max_winding=1))
    assert len(wound) == 2 * len(base)
    assert {c.winding for c in wound} == {0, 1}


def test_degenerate_target_routes_to_diagonal():
    with pytest.raises(DegenerateTarget):
        solve_controlled_u(SolveSpec(angles=EulerAngles(np.pi, 0, 0), fix=FixTime(100.0)))


def test_fixed_tunneling_needs_nonzero_delta_component():
    # gamma = pi with beta = delta: the target needs Delta = 0
    with pytest.raises(SignInfeasible):
        solve_controlled_u(SolveSpec(angles=EulerAngles(0, np.pi, 0), fix=FixTunneling(0.025)))


def test_fix_validation():
    with pytest.raises(ValueError):
        FixTunneling(0.0)
    with pytest.raises(ValueError):
        FixTime(0.0)
    with pytest.raises(ValueError):
        Explicit(0)


def test_phase_warning(caplog):
    _, angles = named_gate('h')
    with caplog.at_level(logging.WARNING, logger='PulseSolver'):
        c = solve_controlled_u(SolveSpec(angles=angles, fix=FixTunneling(0.025)))[0]
    assert not c.block_phase_aligned
    assert 'not an integer' in caplog.text


def test_controlled_z_exact():
    candidates = solve_diagonal(SolveSpec(angles=EulerAngles(np.pi, 0, 0), fix=FixTime(100.0)))
    c = next(c for c in candidates if c.branch == 1)
    assert c.epsilon - c.xi == pytest.approx(0.0025)
    assert c.epsilon == pytest.approx(0.00625)
    assert c.xi == pytest.approx(0.00375)
    assert c.tunneling == 0 and c.kappa == 0
    assert c.residuals <= 1e-9
    assert_allclose(reconstruct(c)[1], np.diag([-1j, 1j]), atol=1e-9)


def test_diagonal_negative_branch():
    c = next(c for c in solve_diagonal(SolveSpec(angles=EulerAngles(np.pi, 0, 0), fix=FixTime(100.0)))
             if c.branch == -1)
    assert_allclose(reconstruct(c)[1], np.diag([1j, -1j]), atol=1e-9)


def test_identity_target():
    c = solve(SolveSpec(angles=EulerAngles(0, 0, 0), fix=FixTime(10.0)))[0]
    assert c.epsilon - c.xi == pytest.approx(0.0, abs=1e-15)
    w_b1, w_b2 = reconstruct(c)
    assert_allclose(w_b1, np.eye(2), atol=1e-9)
    assert_allclose(w_b2, np.eye(2), atol=1e-9)


def test_controlled_phase():
    theta = np.pi / 4
    c = solve(SolveSpec(angles=EulerAngles(theta, 0, 0), fix=FixTime(50.0)))[0]
    assert c.epsilon - c.xi == pytest.approx((theta / 2) / (2 * np.pi * 50.0))
    assert verify_solution(c).passed


def test_diagonal_approximate_mode():
    spec = SolveSpec(angles=EulerAngles(np.pi, 0, 0), fix=FixTime(1.0), tunneling=0.025)
    c = solve_diagonal(spec)[0]
    assert c.approximate
    assert 0 < c.fidelity_penalty < 1e-2
    total = np.sqrt(c.tunneling ** 2 + (c.epsilon + c.xi) ** 2)
    assert total * c.T == pytest.approx(c.P, abs=1e-9)
    assert verify_solution(c).passed


def test_diagonal_approximation_invalid():
    with pytest.raises(ApproximationInvalid):
        solve_diagonal(SolveSpec(angles=EulerAngles(np.pi, 0, 0), fix=FixTime(100.0), tunneling=0.025))


def test_diagonal_fixed_tunneling_picks_time():
    c = solve_diagonal(SolveSpec(angles=EulerAngles(np.pi, 0, 0), fix=FixTunneling(0.025)))[0]
    assert (c.tunneling * c.T) ** 2 == pytest.approx(1e-3)


@pytest.mark.parametrize('fix, tunneling', [(FixTunneling(0.025), None), (FixTime(1.0), 0.025)])
def test_diagonal_approximate_candidates_best_first(fix, tunneling):
    candidates = solve_diagonal(SolveSpec(angles=EulerAngles(np.pi, 0, 0), fix=fix, tunneling=tunneling,
                                          max_winding=2))
    penalties = [c.fidelity_penalty for c in candidates]
    assert len(penalties) > 1
    assert penalties == sorted(penalties)


def test_diagonal_rejects_rotation():
    _, angles = named_gate('x')
    with pytest.raises(DegenerateTarget):
        solve_diagonal(SolveSpec(angles=angles, fix=FixTime(10.0)))


def test_verify_cnot(cnot_solution):
    report = verify_solution(cnot_solution)
    assert report.passed
    assert report.max_residual <= 1e-9
    assert_allclose(report.w_b1, np.eye(2), atol=1e-6)
    assert_allclose(report.w_b2, -1j * X, atol=1e-9)


def test_verify_flags_perturbed_solution(cnot_solution):
    report = verify_solution(replace(cnot_solution, epsilon=cnot_solution.epsilon + 0.001))
    assert not report.passed
    assert report.residuals['identity'] > 1e-3


def test_residual_names(cnot_solution):
    c = cnot_solution
    residuals = equation_residuals(c.epsilon, c.xi, c.tunneling, c.kappa, c.T, c.P, c.branch, c.angles)
    assert set(residuals) == {'identity', 'diagonal_real', 'diagonal_imag', 'offdiag_real', 'offdiag_imag'}


@pytest.mark.parametrize('n', range(1, 11))
def test_feasibility_counts(n):
    r = feasibility(n)
    assert r.equations == 2 ** n + 2
    assert r.unknowns == n + 4
    assert r.solvable == (n <= 2)


def test_feasibility_examples():
    assert (feasibility(1).equations, feasibility(1).unknowns) == (4, 5)
    assert (feasibility(2).equations, feasibility(2).unknowns) == (6, 6)
    assert (feasibility(3).equations, feasibility(3).unknowns, feasibility(3).solvable) == (10, 7, False)


def test_layout_adjust_empty_is_unchanged(cnot_solution):
    assert layout_adjust(cnot_solution, []) == cnot_solution


def test_layout_adjust_spectators(cnot_solution):
    adjusted = layout_adjust(cnot_solution, [0.01, 0.02, 0.03])
    assert adjusted.epsilon == pytest.approx(cnot_solution.epsilon - 0.06)
    assert adjusted.epsilon == pytest.approx(-0.0116, abs=1e-4)
    assert adjusted.effective_epsilon == pytest.approx(cnot_solution.epsilon)
    # control |1>: effective bias eps - xi stays 0
    assert adjusted.target_params(-1).bias == pytest.approx(0.0, abs=1e-12)
    assert adjusted.residuals <= 1e-9
    assert verify_solution(adjusted).passed
