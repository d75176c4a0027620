import math

import numpy as np
import pytest

from coherentkit.errors import InconclusiveError, InvalidParameter, PreconditionError
from coherentkit.two_mode import (
    CNOT_1,
    CNOT_2,
    clone_target,
    cnot_swap,
    dg_discrepancy,
    imperfect_clone,
    interior,
    product_coherent,
    rotation_law_defects,
    schwinger_generators,
    squeezer_commutation_defect,
    su11_adjoint_matrix,
    su2_adjoint_matrix,
    swap_protocol,
    u_j,
    u_k,
    uk_from_rotated_squeezers,
    universal_swap,
)

KAPPA_QUARTER = (math.pi / 4) * np.exp(-0.5j * math.pi)


@pytest.fixture(scope="module")
def gens12():
    return schwinger_generators(12)


def test_schwinger_brackets(gens12):
    (kp, km, k3), (jp, jm, j3) = gens12
    assert np.max(np.abs(interior(jp @ jm - jm @ jp - 2 * j3, 12, 10))) < 1e-12
    assert np.max(np.abs(interior(kp @ km - km @ kp + 2 * k3, 12, 10))) < 1e-12


def test_j3_eigenvalue(gens12):
    _, (_, _, j3) = gens12
    v = np.zeros(144)
    v[1 * 12 + 0] = 1
    np.testing.assert_allclose(j3 @ v, 0.5 * v, atol=1e-15)


def test_u_identity_and_vacuum():
    np.testing.assert_allclose(u_j(0, 8), np.eye(64), atol=1e-15)
    np.testing.assert_allclose(u_k(0, 8), np.eye(64), atol=1e-15)
    vac = np.zeros(24 * 24)
    vac[0] = 1
    assert np.linalg.norm(u_j(0.7, 24) @ vac - vac) < 1e-12


def test_u_j_quarter_turn_coefficients():
    M = su2_adjoint_matrix(math.pi / 2)
    assert abs(M[0, 0]) < 1e-15 and abs(abs(M[0, 1]) - 1) < 1e-15


@pytest.mark.parametrize("t", [0.4, 0.7 * np.exp(0.4j), math.pi / 2])
def test_su2_rotation_laws(t):
    assert max(rotation_law_defects(t, 24, "su2")) < 1e-8


def test_su11_rotation_laws():
    assert max(rotation_law_defects(0.3 * np.exp(0.4j), 36, "su11")) < 1e-8


@pytest.mark.parametrize("t", [0.3, 1.1 * np.exp(2.0j)])
def test_adjoint_matrices_group_property(t):
    U = su2_adjoint_matrix(t)
    np.testing.assert_allclose(U.conj().T @ U, np.eye(2), atol=1e-14)
    V = su11_adjoint_matrix(t)
    eta = np.diag([1, -1])
    np.testing.assert_allclose(V.conj().T @ eta @ V, eta, atol=1e-13)


@pytest.mark.parametrize("w", [0, 0.3, 0.2j])
def test_uk_from_rotated_squeezers(w):
    assert uk_from_rotated_squeezers(w, 32) < 1e-6


def test_uk_from_rotated_squeezers_needs_larger_dim_for_large_w():
    # convergence in dim is slow for |w| beyond ~0.3; a smaller defect at higher dim is the signal
    assert uk_from_rotated_squeezers(0.5, 40) < uk_from_rotated_squeezers(0.5, 24)


def test_squeezer_commutation():
    assert squeezer_commutation_defect(0.3, 0.3, 0.5) < 1e-6
    t = 0.5 * np.exp(0.25j * math.pi)
    assert squeezer_commutation_defect(0.3, 0.3 * np.conj(t) / t, t) < 1e-6
    assert squeezer_commutation_defect(0.3, 0.3, 0.5j, check_condition=False) > 1e-2
    with pytest.raises(PreconditionError):
        squeezer_commutation_defect(0.3, 0.3, 0.5j)


def test_swap_examples():
    _, f = swap_protocol(0, 0)
    assert f == pytest.approx(1, abs=1e-14)
    out, f = swap_protocol(0.5, 0)
    assert f >= 1 - 1e-8
    np.testing.assert_allclose(out, product_coherent(0, 0.5, 24), atol=1e-10)
    assert swap_protocol(0.4, 0.3j)[1] >= 1 - 1e-8


@pytest.mark.parametrize("seed", range(4))
def test_swap_random_phases(seed):
    rng = np.random.default_rng(seed)
    a1, a2 = 0.8 * np.exp(2j * np.pi * rng.uniform(size=2)) * np.sqrt(rng.uniform(size=2))
    assert swap_protocol(a1, a2, 24, delta=rng.uniform(-3, 3))[1] >= 1 - 1e-6


def test_clone_examples():
    out, _ = imperfect_clone(0, math.pi / 4)
    np.testing.assert_allclose(out, product_coherent(0, 0, 24), atol=1e-14)
    out, fids = imperfect_clone(0.6, math.pi / 4)
    np.testing.assert_allclose(out, product_coherent(0.6 / math.sqrt(2), 0.6 / math.sqrt(2), 24), atol=1e-8)
    assert fids[0] == pytest.approx(fids[1])
    out, _ = imperfect_clone(0.6, math.pi / 2)
    np.testing.assert_allclose(out, clone_target(0.6, math.pi / 2), atol=1e-8)
    np.testing.assert_allclose(out, product_coherent(0, 0.6, 24), atol=1e-8)


def test_clone_with_phase():
    out, _ = imperfect_clone(0.5j, 0.9, delta=1.3)
    np.testing.assert_allclose(out, clone_target(0.5j, 0.9), atol=1e-8)


@pytest.mark.parametrize("eps,alpha", [(0.3, 0.5), (0.5, 0.2j), (0.4 * np.exp(0.7j), 0.3 - 0.1j)])
def test_dg_discrepancy(eps, alpha):
    res = dg_discrepancy(alpha, eps, KAPPA_QUARTER)
    assert res.verdict
    assert res.distance_corrected < 1e-6
    assert res.distance_competing > 1e-2


def test_dg_degenerate_and_precondition():
    with pytest.raises(InconclusiveError):
        dg_discrepancy(0.5, 0.0, KAPPA_QUARTER)
    with pytest.raises(PreconditionError):
        dg_discrepancy(0.5, 0.3, math.pi / 4)


def test_universal_swap():
    np.testing.assert_array_equal(universal_swap(1), [[1]])
    np.testing.assert_array_equal(universal_swap(2), [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    np.testing.assert_array_equal(cnot_swap(), universal_swap(2))
    np.testing.assert_array_equal(CNOT_1 @ CNOT_1, np.eye(4))
    np.testing.assert_array_equal(CNOT_2 @ CNOT_2, np.eye(4))
    rng = np.random.default_rng(1)
    a, b = rng.normal(size=4), rng.normal(size=4)
    np.testing.assert_array_equal(universal_swap(4) @ np.kron(a, b), np.kron(b, a))
    with pytest.raises(InvalidParameter):
        universal_swap(0)
