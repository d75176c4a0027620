"""Special functions needed by the coherent-state families."""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from .errors import InvalidParameter


def log_pochhammer(a, n):
    """``log((a)_n)`` for ``a > 0`` via a running sum of logs."""
    if n < 0:
        raise InvalidParameter("n must be nonnegative")
    if a <= 0:
        raise InvalidParameter("log_pochhammer requires a > 0")
    return float(sum(math.log(a + j) for j in range(int(n))))


def pochhammer(a, n):
    """Rising factorial ``a (a+1) ... (a+n-1)``; ``(a)_0 = 1``."""
    if n == 0:
        return 1.0
    if a > 0:
        return math.exp(log_pochhammer(a, n))
    out = 1.0
    for j in range(int(n)):
        out *= a + j
    return out


def log_pochhammer_table(a, n_max):
    """Array of ``log((a)_n)`` for ``n = 0 .. n_max - 1``."""
    steps = np.log(a + np.arange(max(n_max - 1, 0), dtype=float))
    return np.concatenate(([0.0], np.cumsum(steps)))[:n_max]


def binomial_sqrt_table(two_j):
    """``sqrt(C(2J, m))`` for ``m = 0 .. 2J``."""
    return np.sqrt([math.comb(two_j, m) for m in range(two_j + 1)])


def bessel_i_series(nu, x, tol=1e-17, max_terms=10_000):
    """Modified Bessel function of the first kind by its defining power series."""
    x = float(x)
    if x < 0:
        raise InvalidParameter("bessel_i_series expects x >= 0")
    if x == 0.0:
        return 1.0 if nu == 0 else 0.0
    half = 0.5 * x
    log_term = nu * math.log(half) - math.lgamma(nu + 1)
    term = math.exp(log_term)
    total = term
    q = half * half
    for m in range(1, max_terms):
        term *= q / (m * (m + nu))
        total += term
        if term < tol * total:
            break
    return total


def bessel_i_scaled_series(nu, x):
    """``x**(-nu) * I_nu(x)`` stable at ``x -> 0``."""
    half = 0.5 * x
    term = 0.5**nu / math.gamma(nu + 1)
    total = term
    q = half * half
    m = 1
    while True:
        term *= q / (m * (m + nu))
        total += term
        if term < 1e-17 * total or m > 10_000:
            return total
        m += 1


def bessel_k_integral(nu, z):
    """Modified Bessel function of the second kind from its integral representation.

    ``K_nu(z) = sqrt(pi) / Gamma(nu + 1/2) (z/2)^nu int_1^inf exp(-z y) (y^2 - 1)^(nu - 1/2) dy``,
    valid for ``nu > -1/2``; other orders use ``K_{-nu} = K_nu``. The substitution
    ``y = 1 + u/z`` maps the integral onto ``[0, inf)`` with an ``exp(-u)`` envelope.
    """
    z = float(z)
    if z <= 0:
        raise InvalidParameter("bessel_k_integral requires z > 0")
    nu = abs(float(nu))
    p = nu - 0.5

    def integrand(u):
        s = u / z
        return math.exp(-u) * (s * (2.0 + s)) ** p

    opts = dict(epsabs=0.0, epsrel=1e-13, limit=400)
    head, _ = integrate.quad(integrand, 0.0, 1.0, **opts)
    tail, _ = integrate.quad(integrand, 1.0, math.inf, **opts)
    log_pref = 0.5 * math.log(math.pi) - math.lgamma(nu + 0.5) + nu * math.log(0.5 * z) - z - math.log(z)
    return math.exp(log_pref) * (head + tail)
