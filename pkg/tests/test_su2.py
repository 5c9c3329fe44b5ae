import numpy as np
import pytest
from numpy.testing import assert_allclose

from lib.errors import NotUnitary, NotSpecialUnitary
from lib.linalg import unitarity_defect
from lib.su2 import (
    EulerAngles, NAMED_GATES, from_euler, to_euler, project_su2, controlled_target,
    named_gate, phase_gate,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def test_from_euler_identity():
    assert_allclose(from_euler(EulerAngles(0, 0, 0)), np.eye(2), atol=1e-15)


def test_from_euler_cnot_angles():
    assert_allclose(from_euler(EulerAngles(np.pi, np.pi, 0)), 1j * X, atol=1e-15)


def test_from_euler_hadamard_angles():
    assert_allclose(from_euler(EulerAngles(2 * np.pi, np.pi / 2, np.pi)), 1j * H, atol=1e-15)


def test_from_euler_is_special_unitary(rng):
    for _ in range(200):
        u = from_euler(EulerAngles(*rng.uniform(-10, 10, size=3)))
        assert unitarity_defect(u) <= 1e-12
        assert abs(np.linalg.det(u) - 1) <= 1e-12


def test_round_trip(rng):
    for _ in range(1000):
        a = EulerAngles(rng.uniform(0, 4 * np.pi), rng.uniform(0, np.pi), rng.uniform(0, 4 * np.pi))
        u = from_euler(a)
        b = to_euler(u)
        assert 0 <= b.gamma <= np.pi
        assert_allclose(from_euler(b), u, atol=1e-8)


@pytest.mark.parametrize('u, expected', [
    (np.eye(2), (0.0, 0.0, 0.0)),
    (1j * X, (np.pi, np.pi, 0.0)),
    (np.diag([-1j, 1j]), (np.pi, 0.0, 0.0)),
])
def test_to_euler_tie_break(u, expected):
    a = to_euler(u)
    assert (a.beta, a.gamma, a.delta) == pytest.approx(expected, abs=1e-12)


def test_to_euler_rejects_det_minus_one():
    with pytest.raises(NotSpecialUnitary):
        to_euler(X)


def test_to_euler_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        to_euler(np.array([[1, 1], [0, 1]]))


@pytest.mark.parametrize('u, v', [(X, -1j * X), (H, -1j * H)])
def test_project_det_minus_one(u, v):
    projected, phase = project_su2(u)
    assert phase == pytest.approx(np.pi / 2)
    assert_allclose(projected, v, atol=1e-12)


def test_project_special_unitary_is_unchanged():
    u = from_euler(EulerAngles(0.3, 1.2, -0.7))
    projected, phase = project_su2(u)
    assert phase == pytest.approx(0.0, abs=1e-12)
    assert_allclose(projected, u, atol=1e-12)


def test_project_phase_squares_to_determinant(rng):
    for _ in range(100):
        u = np.exp(1j * rng.uniform(-np.pi, np.pi)) * from_euler(EulerAngles(*rng.uniform(0, 6, size=3)))
        projected, phase = project_su2(u)
        assert -np.pi / 2 < phase <= np.pi / 2
        assert np.exp(2j * phase) == pytest.approx(np.linalg.det(u), abs=1e-10)
        assert np.linalg.det(projected) == pytest.approx(1.0, abs=1e-10)


def test_project_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        project_su2(2 * np.eye(2))


def test_controlled_target_placement():
    m = controlled_target(-1j * X).matrix
    expected = np.zeros((4, 4), dtype=complex)
    expected[0, 0] = expected[1, 1] = 1
    expected[2, 3] = expected[3, 2] = -1j
    assert_allclose(m, expected)
    assert_allclose(controlled_target(-1j * X).target_block, -1j * X)


def test_controlled_target_matches_reference_column():
    m = controlled_target(from_euler(EulerAngles(np.pi / 2, np.pi / 2, np.pi / 3))).matrix
    column = m[:, 2]
    assert_allclose(column[:2], [0, 0], atol=1e-15)
    assert abs(column[2]) == pytest.approx(1 / np.sqrt(2))
    assert np.degrees(np.angle(column[2])) == pytest.approx(-75.0)
    assert np.degrees(np.angle(column[3])) == pytest.approx(15.0)


def test_controlled_target_rejects_det_minus_one():
    with pytest.raises(NotSpecialUnitary):
        controlled_target(X)


@pytest.mark.parametrize('name', sorted(NAMED_GATES))
def test_named_gate_angles_realize_gate(name):
    u, angles = named_gate(name)
    v, _ = project_su2(u)
    overlap = abs(np.trace(from_euler(angles).conj().T @ v)) / 2
    assert overlap == pytest.approx(1.0, abs=1e-12)


def test_phase_gate_by_name():
    u, angles = named_gate('phase:0.785398163397')
    assert angles.beta == pytest.approx(np.pi / 4)
    assert_allclose(u, phase_gate(np.pi / 4)[0], atol=1e-12)


@pytest.mark.parametrize('name', ['phase:45deg', 'phase:0.25pi', 'PHASE: 0.785398163397 rad'])
def test_phase_gate_angle_units(name):
    u, angles = named_gate(name)
    assert angles.beta == pytest.approx(np.pi / 4)
    assert_allclose(u, phase_gate(np.pi / 4)[0], atol=1e-12)


def test_unknown_gate():
    with pytest.raises(KeyError):
        named_gate('toffoli')
