import math

import numpy as np
import pytest
from scipy import special as sp

from coherentkit.errors import InvalidParameter
from coherentkit.special import (
    bessel_i_scaled_series,
    bessel_i_series,
    bessel_k_integral,
    binomial_sqrt_table,
    log_pochhammer,
    pochhammer,
)


def test_pochhammer_values():
    assert pochhammer(2, 2) == pytest.approx(6)
    assert pochhammer(1.5, 1) == pytest.approx(1.5)
    assert pochhammer(3.7, 0) == 1
    assert math.exp(log_pochhammer(0.5, 10)) == pytest.approx(sp.poch(0.5, 10), rel=1e-13)


def test_pochhammer_rejects():
    with pytest.raises(InvalidParameter):
        pochhammer(1.0, -1)


def test_binomial_table():
    np.testing.assert_allclose(binomial_sqrt_table(4) ** 2, [1, 4, 6, 4, 1], rtol=1e-14)


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.0, 3.3])
@pytest.mark.parametrize("x", [1e-3, 0.5, 1.0, 7.5, 30.0])
def test_bessel_i_against_scipy(nu, x):
    assert bessel_i_series(nu, x) == pytest.approx(sp.iv(nu, x), rel=1e-12)
    assert bessel_i_scaled_series(nu, x) == pytest.approx(sp.iv(nu, x) / x**nu, rel=1e-12)


def test_bessel_i_scaled_at_zero():
    assert bessel_i_scaled_series(1.0, 0.0) == pytest.approx(0.5)


@pytest.mark.parametrize("nu", [0.5, 1.0, 2.0, -1.0])
@pytest.mark.parametrize("z", [0.05, 1.0, 4.0, 20.0])
def test_bessel_k_against_scipy(nu, z):
    assert bessel_k_integral(nu, z) == pytest.approx(sp.kv(nu, z), rel=1e-10)


def test_bessel_k_rejects_nonpositive():
    with pytest.raises(InvalidParameter):
        bessel_k_integral(1.0, 0.0)
