import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from resgeo.errors import DegenerateBlockError, NumericError, ValidationError
from resgeo.linalg import (
    centering_projector,
    inertia,
    normalize_indices,
    pseudoinverse,
    schur_complement,
    schur_sequential,
    solve_conditioned,
    svd,
    sym_eig,
)


def random_matrix(seed, shape):
    return np.random.default_rng(seed).normal(size=shape)


def test_pseudoinverse_penrose_fixed():
    a = np.array([[1.0, 2.0], [2.0, 4.0], [0.0, 1.0]])
    ap = pseudoinverse(a)
    assert np.abs(a @ ap @ a - a).max() < 1e-12
    assert np.abs(ap @ a @ ap - ap).max() < 1e-12
    assert np.abs((a @ ap) - (a @ ap).T).max() < 1e-12
    assert np.abs((ap @ a) - (ap @ a).T).max() < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 6), st.integers(1, 6))
def test_pseudoinverse_penrose_random(seed, rows, cols):
    a = random_matrix(seed, (rows, cols))
    ap = pseudoinverse(a)
    scale = max(1.0, np.abs(a).max())
    assert np.abs(a @ ap @ a - a).max() < 1e-10 * scale
    assert np.abs(ap @ a @ ap - ap).max() < 1e-10 * max(1.0, np.abs(ap).max())


def test_pseudoinverse_rank_deficient():
    # rank one, so the pseudoinverse must ignore the zero singular value
    a = np.outer([1.0, 2.0], [3.0, 4.0])
    ap = pseudoinverse(a)
    assert np.linalg.matrix_rank(ap) == 1
    assert np.abs(a @ ap @ a - a).max() < 1e-12


def test_pseudoinverse_small_oracles():
    assert np.abs(pseudoinverse(np.diag([2.0, 0.0]))
                  - np.diag([0.5, 0.0])).max() < 1e-15
    edge = np.array([[1.0, -1.0], [-1.0, 1.0]])
    assert np.abs(pseudoinverse(edge) - edge / 4.0).max() < 1e-15


def test_pseudoinverse_penrose_large():
    a = random_matrix(99, (50, 50))
    ap = pseudoinverse(a)
    assert np.abs(a @ ap @ a - a).max() < 1e-9 * np.abs(a).max()


def test_pseudoinverse_matches_numpy():
    a = random_matrix(3, (5, 4))
    assert np.abs(pseudoinverse(a) - np.linalg.pinv(a)).max() < 1e-12


def test_sym_eig_descending_and_reconstruction():
    a = random_matrix(7, (5, 5))
    a = a + a.T
    eig = sym_eig(a)
    assert all(x >= y for x, y in zip(eig.values, eig.values[1:]))
    recon = eig.vectors @ np.diag(eig.values) @ eig.vectors.T
    assert np.abs(recon - a).max() < 1e-10


def test_sym_eig_sign_convention_deterministic():
    a = random_matrix(11, (4, 4))
    a = a + a.T
    v1 = sym_eig(a).vectors
    v2 = sym_eig(a.copy()).vectors
    assert np.array_equal(v1, v2)
    for k in range(4):
        lead = v1[np.abs(v1[:, k]) > 1e-8 * np.abs(v1[:, k]).max(), k][0]
        assert lead > 0


def test_sym_eig_rejects_asymmetric():
    with pytest.raises(ValidationError):
        sym_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_svd_reconstruction():
    a = random_matrix(5, (4, 6))
    d = svd(a)
    assert np.abs(d.u @ np.diag(d.s) @ d.v.T - a).max() < 1e-10


def test_schur_complement_reproduces_inverse_block():
    # Schur complement onto keep equals the inverse of the keep block of
    # the inverse, for invertible matrices
    a = random_matrix(9, (6, 6)) + 6.0 * np.eye(6)
    keep = [0, 2, 5]
    red = schur_complement(a, keep)
    expected = np.linalg.inv(np.linalg.inv(a)[np.ix_(keep, keep)])
    assert np.abs(red - expected).max() < 1e-9


def test_schur_block_matches_sequential():
    a = random_matrix(13, (7, 7)) + 7.0 * np.eye(7)
    keep = [1, 3, 4]
    block = schur_complement(a, keep)
    seq = schur_sequential(a, keep)
    assert np.abs(block - seq).max() < 1e-9


def test_schur_full_keep_is_copy():
    a = random_matrix(17, (4, 4))
    red = schur_complement(a, range(4))
    assert np.array_equal(red, a)
    red[0, 0] = 99.0
    assert a[0, 0] != 99.0


def test_schur_small_oracles():
    assert np.abs(schur_complement(np.array([[2.0, 1.0], [1.0, 2.0]]), [0])
                  - 1.5).max() < 1e-15
    cycle = np.array([[1.0, -1.0, 0.0], [0.0, 1.0, -1.0], [-1.0, 0.0, 1.0]])
    expected = np.array([[1.0, -1.0], [-1.0, 1.0]])
    assert np.abs(schur_complement(cycle, [0, 1]) - expected).max() < 1e-15
    assert np.abs(schur_sequential(cycle, [0, 1]) - expected).max() < 1e-15


def test_schur_singular_block_raises():
    a = np.zeros((3, 3))
    a[0, 0] = 1.0
    with pytest.raises(DegenerateBlockError):
        schur_complement(a, [0])
    with pytest.raises(DegenerateBlockError):
        schur_sequential(a, [0])


def test_inertia_counts():
    sig = inertia(np.diag([2.0, -1.0, 0.0, 3.0]))
    assert (sig.positive, sig.negative, sig.zero) == (2, 1, 1)
    sig = inertia(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert (sig.positive, sig.negative, sig.zero) == (1, 1, 0)


def test_inertia_threshold_is_relative():
    sig = inertia(np.diag([1e6, 1e-5]))
    assert sig.zero == 1


def test_centering_projector():
    j = centering_projector(4)
    assert np.abs(j @ np.ones(4)).max() < 1e-15
    assert np.abs(j @ j - j).max() < 1e-15


def test_centering_projector_small_oracles():
    assert np.abs(centering_projector(1) - np.zeros((1, 1))).max() < 1e-15
    expected = np.array([[0.5, -0.5], [-0.5, 0.5]])
    assert np.abs(centering_projector(2) - expected).max() < 1e-15


def test_solve_conditioned_rejects_singular():
    with pytest.raises(NumericError):
        solve_conditioned(np.ones((2, 2)), np.ones(2), what="test system")


def test_normalize_indices():
    assert normalize_indices([3, 1, 1], 5).tolist() == [1, 3]
    with pytest.raises(ValidationError):
        normalize_indices([0, 9], 5)
    with pytest.raises(ValidationError):
        normalize_indices([-1], 5)
    with pytest.raises(ValidationError):
        normalize_indices([0], 5, min_size=2)
    with pytest.raises(ValidationError):
        normalize_indices([0.5], 5)


def test_as_matrix_rejects_nonfinite():
    with pytest.raises(ValidationError):
        pseudoinverse(np.array([[1.0, np.nan], [0.0, 1.0]]))
