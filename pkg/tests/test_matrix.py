import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import assert_close
from sucalc.cases import random_tuple
from sucalc.expr import absval, pr, sqrt_pos
from sucalc.jacobi import jacobi_eigh
from sucalc.matrix import (
    CommutingTuple,
    NonCommutingError,
    NotHermitianError,
    apply_function,
    bicommutant_dimension,
    is_coercive,
    joint_diagonalize,
    joint_spectrum,
    make_commuting_tuple,
    matrix_from_json,
    matrix_to_json,
    random_unitary,
    rational_evaluate,
    resolvent_test,
    sup_norm,
    uniform_distance,
)
from sucalc.poly import parse_poly
from sucalc.rng import Lcg64

MOTZKIN = "t1^4*t2^2 + t1^2*t2^4 - 3*t1^2*t2^2 + 1"


def random_hermitian(rng, d):
    x = np.array([[complex(rng.normal(), rng.normal()) for _ in range(d)] for _ in range(d)])
    return x + x.conj().T


@pytest.mark.parametrize("d", [1, 2, 5, 12])
def test_jacobi_matches_lapack(d):
    a = random_hermitian(Lcg64(d), d)
    w, v = jacobi_eigh(a)
    assert_close(w, np.linalg.eigvalsh(a), 1e-10)
    assert_close(v @ np.diag(w) @ v.conj().T, a, 1e-10)
    assert_close(v.conj().T @ v, np.eye(d), 1e-12)


def test_jacobi_repeated_eigenvalues():
    u = random_unitary(Lcg64(1), 6)
    a = u @ np.diag([1.0, 1.0, 1.0, -2.0, -2.0, 7.0]) @ u.conj().T
    w, _ = jacobi_eigh(a)
    assert_close(w, [-2, -2, 1, 1, 1, 7], 1e-12)


def test_make_tuple_identity_unitary():
    t = make_commuting_tuple(None, [[1, 2, 3]])
    assert_close(t[0], np.diag([1, 2, 3]), 0)


def test_make_tuple_two_generators_spectrum():
    t = make_commuting_tuple(None, [[0, 1], [1, 0]])
    assert joint_spectrum(t).points == ((0.0, 1.0), (1.0, 0.0))


def test_random_unitary_conjugation_keeps_spectrum():
    spec = joint_spectrum(make_commuting_tuple(42, [[1, 1, 5]]))
    assert len(spec) == 2
    assert spec.multiplicities == (2, 1)
    assert_close(spec.as_array().ravel(), [1, 5], 1e-10)


def test_random_unitary_is_unitary():
    u = random_unitary(Lcg64(9), 7)
    assert_close(u.conj().T @ u, np.eye(7), 1e-12)


def test_joint_diagonalize_diagonal_pair():
    t = make_commuting_tuple(None, [[1, 2], [3, 4]])
    u, values = joint_diagonalize(t)
    assert sorted(map(tuple, np.round(values, 12))) == [(1, 3), (2, 4)]
    assert_close(np.abs(u.conj().T @ u), np.eye(2), 1e-12)


def test_joint_diagonalize_pauli_x():
    t = CommutingTuple([[[0, 1], [1, 0]]])
    _, values = joint_diagonalize(t)
    assert_close(np.sort(values[:, 0]), [-1, 1], 1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_construction_round_trip(seed):
    rng = Lcg64(seed)
    t, diags = random_tuple(rng, d_max=16, n_max=3)
    u, values = t.diagonalization()
    want = sorted(map(tuple, np.array(diags).T))
    got = sorted(map(tuple, values))
    assert_close(np.array(got), np.array(want), 1e-8)
    for k, a in enumerate(t.matrices):
        assert_close(u @ np.diag(values[:, k]) @ u.conj().T, a, 1e-8)


def test_joint_spectrum_examples():
    spec = joint_spectrum(make_commuting_tuple(None, [[1, 2, 3]]))
    assert spec.points == ((1.0,), (2.0,), (3.0,)) and spec.multiplicities == (1, 1, 1)
    spec = joint_spectrum(make_commuting_tuple(None, [[1, 1, 5]]))
    assert spec.points == ((1.0,), (5.0,)) and spec.multiplicities == (2, 1)


def test_spectrum_membership_via_distance_matrix():
    a = np.diag([1.0, 2.0])
    assert np.linalg.eigvalsh((1.5 * np.eye(2) - a) @ (1.5 * np.eye(2) - a))[0] == 0.25
    assert is_coercive((1.5 * np.eye(2) - a) @ (1.5 * np.eye(2) - a))
    assert not is_coercive((np.eye(2) - a) @ (np.eye(2) - a))


def test_apply_function_examples():
    assert_close(apply_function(make_commuting_tuple(None, [[4, 9]]), sqrt_pos(pr(1))),
                 np.diag([2, 3]), 1e-12)
    t = make_commuting_tuple(None, [[1, 2], [3, 4]])
    assert_close(apply_function(t, pr(1) * pr(2)), np.diag([3, 8]), 1e-12)
    assert_close(apply_function(make_commuting_tuple(None, [[-2, 5]]), absval(pr(1))),
                 np.diag([2, 5]), 1e-12)


def test_rational_evaluate_examples():
    names = ["s", "t1"]
    t = make_commuting_tuple(None, [[1, 2]])
    assert_close(rational_evaluate(t, parse_poly("s", names)), np.diag([0.5, 0.2]), 1e-14)
    t = make_commuting_tuple(3, [[1, -4, 2]])
    assert_close(rational_evaluate(t, parse_poly("t1", names)), t[0], 1e-14)
    t = make_commuting_tuple(None, [[1, 0], [1, 2]])
    m = rational_evaluate(t, parse_poly(MOTZKIN, ["s", "t1", "t2"]))
    assert np.linalg.eigvalsh(m)[0] >= -1e-9
    assert_close(m, np.diag([0, 1]), 1e-12)


def test_norm_examples():
    assert sup_norm(np.diag([1, -3])) == pytest.approx(3)
    assert uniform_distance(np.zeros((1, 1)), np.diag([5])) == 1
    assert sup_norm([[0, 2], [0, 0]]) == pytest.approx(2)


def test_coercive_and_resolvent_examples():
    assert is_coercive(np.diag([1, 2]))
    assert not is_coercive(np.diag([0, 1]))
    assert resolvent_test(np.diag([1, 2]), 1.5)
    assert not resolvent_test(np.diag([1, 2]), 2.0)


def test_bicommutant_examples():
    assert bicommutant_dimension(make_commuting_tuple(None, [[1, 2, 3]])) == 3
    assert bicommutant_dimension(make_commuting_tuple(None, [[1, 1, 5]])) == 2
    assert bicommutant_dimension(make_commuting_tuple(None, [[0, 1], [1, 0]])) == 2


@pytest.mark.parametrize("seed", range(10))
def test_bicommutant_counts_spectrum_points(seed):
    t, _ = random_tuple(Lcg64(100 + seed), d_max=10, n_max=3)
    assert bicommutant_dimension(t) == len(joint_spectrum(t))


def test_validation_errors():
    with pytest.raises(NotHermitianError):
        CommutingTuple([[[0, 1], [0, 0]]])
    with pytest.raises(NonCommutingError) as info:
        CommutingTuple([np.diag([1.0, 2.0]), [[0, 1], [1, 0]]])
    assert info.value.norm > 0
    with pytest.raises(ValueError):
        make_commuting_tuple(None, [[1, 2], [1, 2, 3]])


def test_tuple_matrices_are_read_only():
    t = make_commuting_tuple(1, [[1, 2]])
    with pytest.raises(ValueError):
        t.matrices[0][0, 0] = 5


def test_json_round_trip():
    t = make_commuting_tuple(7, [[1, 2, 2], [0, 0, 3]])
    back = CommutingTuple.from_json(t.to_json())
    for a, b in zip(t.matrices, back.matrices):
        assert_close(a, b, 0)
    a = np.array([[1 + 2j, 3], [0.5, -1j]])
    assert_close(matrix_from_json(matrix_to_json(a)), a, 0)


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=6), st.integers(0, 2**32))
def test_ordered_algebra_compatibility(diag, seed):
    # a <= b implies d* a d <= d* b d
    rng = Lcg64(seed)
    k = len(diag)
    z = np.array([[complex(rng.normal(), rng.normal()) for _ in range(k)] for _ in range(k)])
    a = np.diag(np.array(diag, dtype=float))
    b = a + z @ z.conj().T
    d = random_hermitian(rng, k)
    gap = d.conj().T @ (b - a) @ d
    assert np.linalg.eigvalsh(gap)[0] >= -1e-10 * max(1.0, sup_norm(gap))
