import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coherentkit.errors import InvalidElement
from coherentkit.so3 import (
    SU2Element,
    adjoint_crosscheck,
    homomorphism_defect,
    orthogonality_defect,
    random_su2,
    rho,
    rho_explicit,
)

seeds = st.integers(0, 2**31 - 1)


def test_identity():
    np.testing.assert_allclose(rho(SU2Element(1, 0, 0, 0)), np.eye(3), atol=1e-15)
    assert adjoint_crosscheck(SU2Element(1, 0, 0, 0)) == 0


def test_rotation_about_axis():
    th = math.pi / 3
    G = rho(SU2Element(math.cos(th / 2), math.sin(th / 2), 0, 0))
    expected = [[math.cos(th), -math.sin(th), 0], [math.sin(th), math.cos(th), 0], [0, 0, 1]]
    np.testing.assert_allclose(G, expected, atol=1e-15)


def test_b_equals_one():
    np.testing.assert_allclose(rho(SU2Element(0, 1, 0, 0)), np.diag([-1, -1, 1]), atol=1e-15)


def test_crosscheck_examples():
    assert adjoint_crosscheck(random_su2(np.random.default_rng(42))) < 1e-12
    assert adjoint_crosscheck(SU2Element(0, 0, 0, 1)) < 1e-12


def test_non_unit_rejected():
    with pytest.raises(InvalidElement):
        SU2Element(1, 1, 0, 0)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_rho_properties(seed):
    rng = np.random.default_rng(seed)
    g1, g2 = random_su2(rng), random_su2(rng)
    G = rho(g1)
    np.testing.assert_allclose(G, rho_explicit(g1), atol=1e-14)
    assert orthogonality_defect(G) < 1e-12
    assert abs(np.linalg.det(G) - 1) < 1e-12
    assert adjoint_crosscheck(g1) < 1e-12
    assert homomorphism_defect(g1, g2) < 1e-12
    # SU(2) double cover
    np.testing.assert_allclose(rho(-g1), G, atol=1e-14)


def test_map_is_an_antihomomorphism():
    # with g^-1 tau g the map composes in reverse order; the left-ordered law fails
    rng = np.random.default_rng(0)
    g1, g2 = random_su2(rng), random_su2(rng)
    assert homomorphism_defect(g1, g2, order="right") < 1e-12
    assert homomorphism_defect(g1, g2, order="left") > 1e-2
