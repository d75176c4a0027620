"""Harmonic-oscillator trace ``tr exp(-i T omega N)`` by three routes.

1. Abel-summed closed form ``1 / (1 - exp(-i omega T))``.
2. The discretized coherent-state path integral, ``1 / det A`` with ``A`` the cyclic
   bidiagonal matrix of the time-sliced action.
3. The damped Fock trace, both as a geometric series and as a coherent-state
   quadrature of the diagonal matrix elements.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csc_matrix
from scipy.sparse.linalg import splu

from .errors import InvalidParameter, PoleError
from .quadrature import QuadratureGrid, integrate, planar_grid

RICHARDSON_DAMPINGS = (0.9, 0.99, 0.999)


@dataclass(frozen=True)
class TraceProblem:
    omega: float
    T: float
    N: int = 64
    damping: float = 0.99

    def __post_init__(self):
        if not (self.omega > 0 and self.T > 0):
            raise InvalidParameter("omega and T must be positive")
        if int(self.N) != self.N or self.N < 1:
            raise InvalidParameter("N must be a positive integer")
        if not 0 < self.damping < 1:
            raise InvalidParameter("damping must lie in (0, 1)")

    @property
    def dt(self) -> float:
        return self.T / self.N


def abel_trace_closed(omega, T, pole_tol=1e-10):
    denom = 1 - cmath.exp(-1j * omega * T)
    if abs(denom) < pole_tol:
        raise PoleError(f"omega*T = {omega * T:.6g} sits on a pole (|1 - e^(-i omega T)| = {abs(denom):.1e})")
    return 1 / denom


def _check_damping(r):
    if not 0 <= r < 1:
        raise InvalidParameter(f"damping must satisfy 0 <= r < 1, got {r}")


def abel_trace_series(omega, T, damping, n_terms):
    """Partial sum ``sum_{n < n_terms} r^n exp(-i n omega T)`` evaluated term by term."""
    _check_damping(damping)
    n = np.arange(int(n_terms))
    terms = damping**n * np.exp(-1j * n * omega * T)
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def geometric_partial_sum(q, n_terms):
    return (1 - q**n_terms) / (1 - q)


def richardson_to_one(dampings, values):
    """Extrapolate ``f(r)`` to ``r = 1`` by polynomial interpolation in ``h = 1 - r`` (Neville)."""
    h = [1.0 - r for r in dampings]
    p = [complex(v) for v in values]
    n = len(p)
    for level in range(1, n):
        for i in range(n - level):
            j = i + level
            p[i] = (h[j] * p[i] - h[i] * p[i + 1]) / (h[j] - h[i])
    return p[0]


def abel_trace_extrapolated(omega, T, dampings=RICHARDSON_DAMPINGS):
    vals = []
    for r in dampings:
        n_terms = _terms_for(r)
        vals.append(abel_trace_series(omega, T, r, n_terms))
    return richardson_to_one(dampings, vals)


def _terms_for(r, eps=1e-17):
    return int(math.ceil(math.log(eps) / math.log(r))) + 1


def cyclic_matrix(problem: TraceProblem):
    """``A`` with 1 on the diagonal and ``-(1 - i omega dt)`` on the superdiagonal and bottom-left corner."""
    N = int(problem.N)
    c = -(1 - 1j * problem.omega * problem.dt)
    rows = list(range(N)) + list(range(N - 1)) + [N - 1]
    cols = list(range(N)) + list(range(1, N)) + [0]
    vals = [1.0] * N + [c] * (N - 1) + [c]
    return csc_matrix((np.array(vals, dtype=complex), (rows, cols)), shape=(N, N))


def _permutation_sign(perm):
    perm = np.asarray(perm)
    seen = np.zeros(perm.size, dtype=bool)
    sign = 1
    for i in range(perm.size):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def lu_determinant(A):
    """Determinant from a sparse LU factorization with partial pivoting."""
    lu = splu(csc_matrix(A), permc_spec="NATURAL", diag_pivot_thresh=1.0)
    diag = lu.U.diagonal()
    # Accumulate in log-magnitude and phase to avoid overflow for large N.
    log_mag = float(np.sum(np.log(np.abs(diag))))
    phase = float(np.sum(np.angle(diag)))
    sign = _permutation_sign(lu.perm_r) * _permutation_sign(lu.perm_c)
    return sign * cmath.exp(log_mag + 1j * phase)


def discretized_determinant(problem: TraceProblem):
    """``(numeric_det, closed_det)`` with ``closed_det = 1 - (1 - i omega dt)^N``."""
    if problem.N < 2:
        raise InvalidParameter("N must be at least 2")
    numeric = lu_determinant(cyclic_matrix(problem))
    closed = 1 - (1 - 1j * problem.omega * problem.dt) ** problem.N
    return numeric, closed


def determinant_convergence(omega, T, schedule=(64, 128, 256, 512, 1024, 2048, 4096)):
    """Errors ``|1/det(N) - closed|`` and the fitted exponent ``p`` in ``err ~ c N^-p``."""
    closed = abel_trace_closed(omega, T)
    errs = []
    for N in schedule:
        det, _ = discretized_determinant(TraceProblem(omega, T, N))
        errs.append(abs(1 / det - closed))
    slope = float(np.polyfit(np.log(schedule), np.log(errs), 1)[0])
    return errs, -slope


def determinant_extrapolated(omega, T, schedule=(1024, 2048, 4096)):
    """Richardson extrapolation of ``1/det(N)`` in ``1/N`` to ``N -> infinity``."""
    vals = [1 / discretized_determinant(TraceProblem(omega, T, N))[0] for N in schedule]
    # Reuse the Neville scheme with h = 1/N written as 1 - r.
    return richardson_to_one([1 - 1 / N for N in schedule], vals)


@dataclass(frozen=True)
class FockTrace:
    series: complex
    quadrature: complex | None


def truncated_fock_trace(omega, T, dim, damping, grid: QuadratureGrid | None = None):
    """Damped trace of ``exp(-i T (omega - i gamma) N)`` with ``gamma = -ln(damping) / T``.

    ``series`` sums ``q^n`` for ``n < dim`` with ``q = damping * exp(-i omega T)``.
    ``quadrature`` integrates ``<z| q^N |z>`` restricted to the same ``dim`` levels,
    ``sum_{n<dim} exp(-|z|^2) |z|^(2n) q^n / n!``, over a planar grid (skipped when
    ``grid`` is None).
    """
    if not 0 < damping < 1:
        raise InvalidParameter(f"damping must lie in (0, 1), got {damping}")
    q = damping * cmath.exp(-1j * omega * T)
    n = np.arange(int(dim))
    terms = q**n
    series = complex(math.fsum(terms.real), math.fsum(terms.imag))
    quad = None
    if grid is not None:
        if grid.kind != "planar":
            raise InvalidParameter("the Fock-trace quadrature needs a planar grid")
        t = np.abs(grid.points) ** 2
        log_fact = np.array([math.lgamma(j + 1) for j in n])
        with np.errstate(divide="ignore"):
            log_t = np.log(t)
        # exp(-t) t^n / n! as a (node, n) table, then contract with q^n
        poisson = np.exp(-t[:, None] + n[None, :] * log_t[:, None] - log_fact[None, :])
        poisson[t == 0, 1:] = 0.0
        quad = complex(integrate(grid, poisson @ terms))
    return FockTrace(series, quad)


def fock_trace_extrapolated(omega, T, dampings=RICHARDSON_DAMPINGS):
    """Richardson limit ``r -> 1`` of the damped Fock trace with ``dim`` large enough to be untruncated."""
    vals = [truncated_fock_trace(omega, T, _terms_for(r), r).series for r in dampings]
    return richardson_to_one(dampings, vals)


def three_route_spread(omega, T):
    """Max pairwise distance among closed form, extrapolated determinant and extrapolated Fock trace."""
    routes = [abel_trace_closed(omega, T), determinant_extrapolated(omega, T), fock_trace_extrapolated(omega, T)]
    return max(abs(a - b) for a in routes for b in routes), routes


def default_fock_grid():
    return planar_grid(48, 64)
