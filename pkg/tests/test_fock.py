import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import gammaincc

from coherentkit.errors import ContractViolation, InvalidDimension, TruncationError
from coherentkit.fock import (
    basis,
    choose_dim,
    coherent_tail_bound,
    commutator,
    exp_antihermitian,
    exp_antihermitian_blocks,
    ladder_ops,
    require_tail,
)


def test_ladder_dim2():
    a, ad, n = ladder_ops(2)
    np.testing.assert_array_equal(a, [[0, 1], [0, 0]])
    np.testing.assert_array_equal(ad, a.conj().T)


def test_number_dim3():
    _, _, n = ladder_ops(3)
    np.testing.assert_array_equal(n, np.diag([0, 1, 2]))


def test_ccr_interior_exact():
    a, ad, _ = ladder_ops(8)
    # sqrt(n)^2 rounds, so "exact" means a few ulps
    assert np.max(np.abs((commutator(a, ad) - np.eye(8))[:7, :7])) < 1e-14


@pytest.mark.parametrize("bad", [0, -1, 2.5, "3"])
def test_bad_dimension(bad):
    with pytest.raises(InvalidDimension):
        ladder_ops(bad)


def test_exp_zero_is_identity():
    np.testing.assert_allclose(exp_antihermitian(np.zeros((5, 5))), np.eye(5), atol=1e-15)


def test_exp_rotation_2x2():
    v = 0.3
    U = exp_antihermitian(np.array([[0, v], [-v, 0]]))
    np.testing.assert_allclose(U, [[math.cos(v), math.sin(v)], [-math.sin(v), math.cos(v)]], atol=1e-14)


def test_exp_displacement_column():
    z, dim = 0.5, 32
    a, ad, _ = ladder_ops(dim)
    col = exp_antihermitian(z * ad - np.conj(z) * a)[:, 0]
    n = np.arange(11)
    expected = np.exp(-abs(z) ** 2 / 2) * z**n / np.sqrt([math.factorial(k) for k in n])
    np.testing.assert_allclose(col[:11], expected, atol=1e-10)


def test_exp_rejects_non_antihermitian():
    with pytest.raises(ContractViolation, match="anti-Hermitian"):
        exp_antihermitian(np.eye(3))


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 12), st.integers(0, 2**31 - 1))
def test_exp_is_unitary(dim, seed):
    rng = np.random.default_rng(seed)
    H = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    X = H - H.conj().T
    U = exp_antihermitian(X)
    assert np.max(np.abs(U.conj().T @ U - np.eye(dim))) < 1e-12


def test_blockwise_matches_dense():
    rng = np.random.default_rng(3)
    X = np.zeros((9, 9), dtype=complex)
    for blk in ([0, 4], [1, 2, 7], [3, 5, 6, 8]):
        H = rng.normal(size=(len(blk), len(blk))) + 1j * rng.normal(size=(len(blk), len(blk)))
        X[np.ix_(blk, blk)] = H - H.conj().T
    np.testing.assert_allclose(exp_antihermitian_blocks(X), exp_antihermitian(X), atol=1e-13)


def test_tail_bound_examples():
    assert coherent_tail_bound(0.0, 1).bound == 0
    assert coherent_tail_bound(1.0, 2).bound == pytest.approx(1 - 2 * math.exp(-1), abs=1e-14)
    assert coherent_tail_bound(2.0, 32).bound < 1e-12


@pytest.mark.parametrize("z_abs,dim", [(0.5, 4), (1.3, 10), (3.0, 20)])
def test_tail_bound_matches_incomplete_gamma(z_abs, dim):
    # P(N >= dim) for Poisson(|z|^2) equals the regularized lower incomplete gamma
    expected = 1 - gammaincc(dim, z_abs**2)
    assert coherent_tail_bound(z_abs, dim).bound == pytest.approx(expected, rel=1e-10)


def test_choose_dim_and_require_tail():
    d = choose_dim(2.0, 1e-12)
    assert coherent_tail_bound(2.0, d).bound <= 1e-12
    assert d == 16 or coherent_tail_bound(2.0, d - 1).bound > 1e-12
    with pytest.raises(TruncationError) as info:
        require_tail(3.0, 8, 1e-10)
    assert info.value.suggested_dim > 8


def test_basis():
    np.testing.assert_array_equal(basis(4, 2), [0, 0, 1, 0])
