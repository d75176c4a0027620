import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import iv

from coherentkit.errors import InvalidParameter, SingularParameter, TruncationError
from coherentkit.fock import commutator
from coherentkit.su_reps import (
    bg_amplitudes,
    bg_eigen_defect,
    bg_norm_squared,
    bg_state,
    disentangled_operator,
    eta_of_v,
    generator_matrix_elements,
    generator_matrix_elements_numeric,
    overlap_closed_su11,
    overlap_closed_su2,
    perelomov_state,
    perelomov_state_exp,
    spin_j,
    spin_k,
    supplement_identity_defect,
    zeta_of_w,
)

disk_c = st.complex_numbers(max_magnitude=1.0, allow_nan=False, allow_infinity=False)
sphere_c = st.complex_numbers(max_magnitude=1.4, allow_nan=False, allow_infinity=False)


@pytest.fixture(scope="module")
def k1():
    return spin_k(1.0, 400)


def test_spin_k_algebra():
    r = spin_k(1.5, 30)
    m = 28
    blk = lambda X: X[:m, :m]
    assert np.max(np.abs(blk(commutator(r.k_3, r.k_plus) - r.k_plus))) < 1e-12
    assert np.max(np.abs(blk(commutator(r.k_3, r.k_minus) + r.k_minus))) < 1e-12
    assert np.max(np.abs(blk(commutator(r.k_plus, r.k_minus) + 2 * r.k_3))) < 1e-12
    np.testing.assert_array_equal(r.k_plus.conj().T, r.k_minus)


def test_spin_examples():
    np.testing.assert_array_equal(spin_j(0.5).k_plus, [[0, 0], [1, 0]])
    assert spin_k(1.0, 5).k_plus[2, 1] == pytest.approx(math.sqrt(6))
    np.testing.assert_array_equal(np.diag(spin_j(1.0).k_3), [-1, 0, 1])


@pytest.mark.parametrize("J", [0.5, 1.0, 1.5, 2.0, 3.5])
def test_spin_j_algebra(J):
    r = spin_j(J)
    assert np.max(np.abs(commutator(r.k_plus, r.k_minus) - 2 * r.k_3)) < 1e-12
    assert r.dim == int(2 * J + 1)


def test_spin_rejects():
    with pytest.raises(InvalidParameter):
        spin_j(0.7)
    with pytest.raises(InvalidParameter):
        spin_k(-1, 10)


def test_perelomov_examples(k1):
    v = perelomov_state(k1, 0.0)
    assert v[0] == 1 and np.all(v[1:] == 0)
    s = perelomov_state(spin_j(0.5), math.pi / 4)
    np.testing.assert_allclose(s, [1 / math.sqrt(2), 1 / math.sqrt(2)], atol=1e-14)
    c = perelomov_state(k1, 0.5)
    assert zeta_of_w(0.5) == pytest.approx(0.46212, abs=1e-5)
    assert c[1] / c[0] == pytest.approx(math.sqrt(2) * math.tanh(0.5), rel=1e-13)


def test_su11_tail_error():
    with pytest.raises(TruncationError):
        perelomov_state(spin_k(1.0, 20), 2.0)


def test_eta_pole():
    with pytest.raises(SingularParameter):
        eta_of_v(math.pi / 2)


@settings(max_examples=15, deadline=None)
@given(disk_c)
def test_disentangling_su11(w):
    r = spin_k(0.75, 300)
    assert np.max(np.abs(perelomov_state_exp(r, w) - perelomov_state(r, w))) < 1e-8


@settings(max_examples=15, deadline=None)
@given(sphere_c)
def test_disentangling_su2(v):
    r = spin_j(1.5)
    assert np.max(np.abs(perelomov_state_exp(r, v) - perelomov_state(r, v))) < 1e-10
    from coherentkit.fock import exp_antihermitian

    U = exp_antihermitian(v * r.k_plus - np.conj(v) * r.k_minus)
    np.testing.assert_allclose(disentangled_operator(r, v), U, atol=1e-10)


def test_overlap_examples():
    assert overlap_closed_su11(1.0, 0.3j, 0.3j) == pytest.approx(1)
    w1, w2 = np.arctanh(0.2), np.arctanh(0.5)
    assert overlap_closed_su11(1.0, w1, w2) == pytest.approx(0.96 * 0.75 / 0.81, abs=1e-12)
    assert abs(overlap_closed_su2(0.5, 0.0, math.pi / 4)) == pytest.approx(1 / math.sqrt(2), abs=1e-12)


@settings(max_examples=15, deadline=None)
@given(disk_c, disk_c)
def test_su11_overlap_and_generators(w1, w2):
    r = spin_k(1.0, 400)
    num = np.vdot(perelomov_state(r, w1), perelomov_state(r, w2))
    assert abs(num - overlap_closed_su11(1.0, w1, w2)) < 1e-8
    for a, b in zip(generator_matrix_elements(r, w1, w2), generator_matrix_elements_numeric(r, w1, w2)):
        assert abs(a - b) < 1e-8


@settings(max_examples=15, deadline=None)
@given(sphere_c, sphere_c)
def test_su2_overlap_and_generators(v1, v2):
    r = spin_j(1.0)
    num = np.vdot(perelomov_state(r, v1), perelomov_state(r, v2))
    assert abs(num - overlap_closed_su2(1.0, v1, v2)) < 1e-10
    for a, b in zip(generator_matrix_elements(r, v1, v2), generator_matrix_elements_numeric(r, v1, v2)):
        assert abs(a - b) < 1e-10


def test_generator_examples(k1):
    np.testing.assert_allclose(generator_matrix_elements(k1, 0, 0), (0, 0, 2.0), atol=1e-15)
    assert generator_matrix_elements(spin_j(1.0), 0, 0)[2] == pytest.approx(2)
    w = np.arctanh(0.5)
    assert generator_matrix_elements(k1, w, w)[0] == pytest.approx(4 / 3, abs=1e-12)


def test_supplement_identities():
    assert supplement_identity_defect(spin_j(0.5), 0.3) < 1e-10
    assert supplement_identity_defect(spin_k(0.75, 400), 0.4) < 1e-8
    assert supplement_identity_defect(spin_j(1.0), 0.3, form="eigen") < 1e-10
    with pytest.raises(SingularParameter):
        supplement_identity_defect(spin_j(1.0), 0.0)


def test_bg_state_examples():
    v = bg_state(1.0, 0.0, 10)
    assert v[0] == 1 and np.all(v[1:] == 0)
    amps = bg_amplitudes(1.0, 0.5, 4)
    np.testing.assert_allclose(amps, [1, 0.5 / math.sqrt(2), 0.25 / math.sqrt(12), 0.125 / math.sqrt(6 * 24)], rtol=1e-14)
    full = bg_amplitudes(1.0, 0.5, 40)
    assert np.sum(abs(full) ** 2) == pytest.approx(bg_norm_squared(1.0, 0.5), abs=1e-9)


@pytest.mark.parametrize("k,w", [(1.0, 0.5), (0.75, 1.2 + 0.3j), (2.0, 2.0j)])
def test_bg_norm_against_scipy(k, w):
    x = abs(w)
    expected = math.gamma(2 * k) * x ** (1 - 2 * k) * iv(2 * k - 1, 2 * x)
    assert bg_norm_squared(k, w) == pytest.approx(expected, rel=1e-12)


def test_bg_eigen_defect():
    assert bg_eigen_defect(1.0, 0.5, 40) < 1e-12
    assert bg_eigen_defect(0.75, 1.0 - 1.0j, 60) < 1e-10
