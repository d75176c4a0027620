"""Quadrature grids for the planar, disk, sphere-chart and Bessel-K radial measures.

Every grid stores complex ``points`` and positive ``weights`` such that
``sum(weights * f(points))`` approximates the integral of ``f`` against the grid's
reference measure:

================  ============================================================
kind              reference measure
================  ============================================================
planar            ``[d^2 z] / pi`` over the whole plane
disk              ``[d^2 zeta] / (pi (1 - |zeta|^2)^2)`` over ``|zeta|^2 <= 1 - delta``
sphere-chart      ``[d^2 eta] / (pi (1 + |eta|^2)^2)`` over the whole plane
radial-besselK    ``2 K_{2k-1}(2|w|) |w|^(2k-1) [d^2 w] / (pi Gamma(2k))``
================  ============================================================

Family prefactors such as ``2K - 1`` or ``2J + 1`` are applied by the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.laguerre import laggauss
from numpy.polynomial.legendre import leggauss

from .errors import InvalidGrid, InvalidParameter, MismatchError
from .params import RepParams
from .special import bessel_k_integral, log_pochhammer

GRID_KINDS = ("planar", "disk", "sphere-chart", "radial-besselK")
FAMILY_GRID = {"coherent": "planar", "su11": "disk", "su2": "sphere-chart", "bg": "radial-besselK"}


@dataclass(frozen=True)
class QuadratureGrid:
    kind: str
    radial_nodes: int
    angular_nodes: int
    cutoff: float
    points: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    exactness: str = ""
    label: float | None = None

    @property
    def size(self) -> int:
        return int(self.points.size)


def _check_counts(radial_nodes, angular_nodes):
    for name, val in (("radial_nodes", radial_nodes), ("angular_nodes", angular_nodes)):
        if isinstance(val, bool) or int(val) != val or val < 1:
            raise InvalidGrid(f"{name} must be a positive integer, got {val!r}")


def _angles(angular_nodes):
    return 2.0 * np.pi * np.arange(angular_nodes) / angular_nodes


def _tensor(radii, radial_weights, angular_nodes):
    theta = _angles(angular_nodes)
    pts = (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()
    wts = np.repeat(radial_weights / angular_nodes, angular_nodes)
    return pts, wts


def _gauss_legendre(a, b, n):
    x, w = leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w


def planar_grid(radial_nodes, angular_nodes) -> QuadratureGrid:
    """Gauss-Laguerre in ``t = |z|^2`` times an equally spaced angular rule."""
    _check_counts(radial_nodes, angular_nodes)
    t, w = laggauss(int(radial_nodes))
    # Divide out the Laguerre weight so plain integrands can be supplied.
    radial_w = np.exp(np.log(w) + t)
    pts, wts = _tensor(np.sqrt(t), radial_w, int(angular_nodes))
    return QuadratureGrid(
        "planar", int(radial_nodes), int(angular_nodes), 1.0, pts, wts,
        exactness=f"exp(-t) * poly(t) of degree <= {2 * radial_nodes - 1}; "
        f"angular frequencies < {angular_nodes}",
    )


def _graded_panels(lo_gap, ratio=0.5):
    """Breakpoints ``1 = g_0 > g_1 > ... > g_m = lo_gap`` with geometric grading."""
    gaps = [1.0]
    while gaps[-1] * ratio > lo_gap:
        gaps.append(gaps[-1] * ratio)
    if gaps[-1] > lo_gap:
        gaps.append(lo_gap)
    return gaps


def disk_grid(radial_nodes, angular_nodes, delta) -> QuadratureGrid:
    """Composite Gauss-Legendre in ``rho = |zeta|^2`` on ``[0, 1 - delta]``.

    Panels are graded geometrically toward the boundary (``1 - rho`` halves from
    panel to panel) and ``radial_nodes`` is the node count per panel.
    """
    _check_counts(radial_nodes, angular_nodes)
    if not 0.0 < delta < 1.0:
        raise InvalidGrid(f"delta must lie in (0, 1), got {delta!r}")
    gaps = _graded_panels(delta)
    rhos, ws = [], []
    for g_hi, g_lo in zip(gaps[:-1], gaps[1:]):
        r, w = _gauss_legendre(1.0 - g_hi, 1.0 - g_lo, int(radial_nodes))
        rhos.append(r)
        ws.append(w)
    rho = np.concatenate(rhos)
    w = np.concatenate(ws) / (1.0 - rho) ** 2
    pts, wts = _tensor(np.sqrt(rho), w, int(angular_nodes))
    return QuadratureGrid(
        "disk", int(radial_nodes), int(angular_nodes), 1.0 - delta, pts, wts,
        exactness=f"(1-rho)^-2 * poly(rho) of degree <= {2 * radial_nodes - 1} per panel",
    )


def sphere_grid(radial_nodes, angular_nodes) -> QuadratureGrid:
    """Gauss-Legendre in ``s = |eta|^2 / (1 + |eta|^2)`` on ``[0, 1]``.

    The map turns ``d rho / (1 + rho)^2`` into ``ds``, so spin-J integrands become
    polynomials in ``s``.
    """
    _check_counts(radial_nodes, angular_nodes)
    s, w = _gauss_legendre(0.0, 1.0, int(radial_nodes))
    rho = s / (1.0 - s)
    pts, wts = _tensor(np.sqrt(rho), w, int(angular_nodes))
    return QuadratureGrid(
        "sphere-chart", int(radial_nodes), int(angular_nodes), 1.0, pts, wts,
        exactness=f"poly(s) of degree <= {2 * radial_nodes - 1}",
    )


def besselk_radial_density(k, r):
    """``(4 / Gamma(2k)) r^(2k) K_{2k-1}(2r)``: radial density after angular integration."""
    nu = 2.0 * k - 1.0
    return math.exp(math.log(4.0) - math.lgamma(2.0 * k) + 2.0 * k * math.log(r)) * bessel_k_integral(nu, 2.0 * r)


def besselk_radial_grid(k, radial_nodes, angular_nodes=16, r_max=40.0, min_gap=2.0**-14) -> QuadratureGrid:
    """Radial rule for the Barut-Girardello measure.

    Composite Gauss-Legendre panels graded geometrically toward ``r = 0`` (where
    ``K_nu`` is singular) and unit panels out to ``r_max``.
    """
    if not k > 0:
        raise InvalidParameter(f"k must be positive, got {k!r}")
    _check_counts(radial_nodes, angular_nodes)
    edges = [g for g in reversed(_graded_panels(min_gap))]
    edges = [0.0] + edges + list(np.arange(2.0, r_max + 0.5, 1.0))
    rs, ws = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        r, w = _gauss_legendre(a, b, int(radial_nodes))
        rs.append(r)
        ws.append(w)
    r = np.concatenate(rs)
    w = np.concatenate(ws)
    dens = np.array([besselk_radial_density(k, x) for x in r])
    pts, wts = _tensor(r, w * dens, int(angular_nodes))
    return QuadratureGrid(
        "radial-besselK", int(radial_nodes), int(angular_nodes), r_max, pts, wts,
        exactness="composite Gauss-Legendre; moments accurate to ~1e-9 for n <= 10",
        label=float(k),
    )


def _neumaier_add(s, c, x):
    t = s + x
    big = np.abs(s) >= np.abs(x)
    c = c + np.where(big, (s - t) + x, (x - t) + s)
    return t, c


def compensated_sum(terms):
    """Neumaier summation over the leading axis, in index order.

    Complex input is handled component-wise. Deterministic for a fixed input order.
    """
    terms = np.asarray(terms)
    if np.iscomplexobj(terms):
        return compensated_sum(terms.real) + 1j * compensated_sum(terms.imag)
    shape = terms.shape[1:]
    s = np.zeros(shape)
    c = np.zeros(shape)
    for x in terms:
        s, c = _neumaier_add(s, c, x)
    return s + c


def integrate(grid: QuadratureGrid, values):
    """Integrate sampled values (leading axis = grid node) against the grid measure."""
    values = np.asarray(values)
    if values.shape[0] != grid.size:
        raise MismatchError(f"expected {grid.size} samples, got {values.shape[0]}")
    w = grid.weights.reshape((-1,) + (1,) * (values.ndim - 1))
    return compensated_sum(w * values)


def family_amplitudes(family: RepParams, points, n):
    """Leading ``n`` Fock amplitudes of the family's states at each point (rows = points)."""
    points = np.asarray(points, dtype=complex)
    idx = np.arange(n)
    rho = np.abs(points) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        if family.kind == "coherent":
            logc = -0.5 * np.array([math.lgamma(j + 1) for j in idx])
            amps = np.exp(-0.5 * rho)[:, None] * np.exp(logc)[None, :] * points[:, None] ** idx
        elif family.kind == "su11":
            K = family.label
            logc = 0.5 * np.array([log_pochhammer(2 * K, j) - math.lgamma(j + 1) for j in idx])
            amps = ((1.0 - rho) ** K)[:, None] * np.exp(logc)[None, :] * points[:, None] ** idx
        elif family.kind == "su2":
            two_j = family.two_j
            if n > two_j + 1:
                raise MismatchError(f"subspace {n} exceeds spin dimension {two_j + 1}")
            c = np.sqrt([math.comb(two_j, j) for j in idx])
            amps = ((1.0 + rho) ** (-0.5 * two_j))[:, None] * c[None, :] * points[:, None] ** idx
        else:
            k = family.label
            logc = -0.5 * np.array([log_pochhammer(2 * k, j) + math.lgamma(j + 1) for j in idx])
            amps = np.exp(logc)[None, :] * points[:, None] ** idx
    return amps


def family_prefactor(family: RepParams) -> float:
    if family.kind == "su11":
        return 2.0 * family.label - 1.0
    if family.kind == "su2":
        return family.two_j + 1.0
    return 1.0


def resolution_operator(family: RepParams, grid: QuadratureGrid, subspace_dim):
    """``int dmu |u><u|`` restricted to the leading ``subspace_dim`` block."""
    expected = FAMILY_GRID[family.kind]
    if grid.kind != expected:
        raise MismatchError(f"{family.kind} family needs a {expected} grid, got {grid.kind}")
    if family.kind == "bg" and grid.label is not None and abs(grid.label - family.label) > 1e-15:
        raise MismatchError(f"grid built for k={grid.label}, family has k={family.label}")
    amps = family_amplitudes(family, grid.points, int(subspace_dim))
    outer = amps[:, :, None] * amps.conj()[:, None, :]
    return family_prefactor(family) * integrate(grid, outer)


def resolution_defect(family: RepParams, grid: QuadratureGrid, subspace_dim) -> float:
    op = resolution_operator(family, grid, subspace_dim)
    return float(np.max(np.abs(op - np.eye(int(subspace_dim)))))
