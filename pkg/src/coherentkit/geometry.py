"""Projectors onto coherent-state families, curvature scalars and geometric Bell states.

Family parameters here are chart coordinates: ``z`` for harmonic coherent states,
``zeta`` (unit disk) for su(1,1) and ``eta`` (complex plane chart of CP^1) for su(2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, MismatchError, OutsideDomain
from .fock import choose_dim
from .params import RepParams
from .quadrature import QuadratureGrid, disk_grid, integrate
from .single_mode import coherent_amplitudes
from .su_reps import su11_coefficients, su2_coefficients

BELL_VARIANTS = ("conj", "neg-conj", "inv-conj", "neg-inv-conj")


@dataclass(frozen=True)
class StateFamily:
    rep: RepParams
    parameters: tuple

    @property
    def m(self) -> int:
        return len(self.parameters)


def su11_dim(K, zeta, eps=1e-14, hi=4096):
    """Smallest truncation whose su(1,1) series misses less than ``eps`` of the norm."""
    rho = abs(zeta) ** 2
    if rho == 0:
        return 2
    c = np.abs(su11_coefficients(K, zeta, hi)) ** 2
    missing = 1.0 - np.cumsum(c)
    hits = np.flatnonzero(missing < eps)
    return int(hits[0]) + 2 if hits.size else hi


def family_state(rep: RepParams, point, dim=None):
    """Normalized state of ``rep`` at a chart point, truncated where necessary."""
    point = complex(point)
    if rep.kind == "coherent":
        dim = dim or choose_dim(abs(point), 1e-14)
        return coherent_amplitudes(point, dim)
    if rep.kind == "su11":
        if abs(point) >= 1:
            raise OutsideDomain(f"|zeta| = {abs(point):.4g} is outside the unit disk")
        dim = dim or su11_dim(rep.label, point)
        return su11_coefficients(rep.label, point, dim)
    if rep.kind == "su2":
        return su2_coefficients(rep.label, point)
    raise MismatchError(f"family kind {rep.kind!r} has no chart geometry here")


def family_dim(family: StateFamily):
    rep = family.rep
    if rep.kind == "coherent":
        return choose_dim(max(abs(complex(p)) for p in family.parameters), 1e-14)
    if rep.kind == "su11":
        return max(su11_dim(rep.label, p) for p in family.parameters)
    return rep.two_j + 1


def gram_and_projector(family: StateFamily, dim=None, det_floor=1e-12):
    """Gram matrix ``V^dag V`` and projector ``V (V^dag V)^-1 V^dag`` of the family's states."""
    dim = dim or family_dim(family)
    V = np.column_stack([family_state(family.rep, p, dim) for p in family.parameters])
    G = V.conj().T @ V
    det = float(np.real(np.linalg.det(G)))
    if abs(det) < det_floor:
        raise OutsideDomain(f"Gram determinant {det:.3e} is singular; the states are not independent", det=det)
    P = V @ np.linalg.solve(G, V.conj().T)
    return G, P


def projector_defects(P, m):
    """``(||P^2 - P||, ||P^dag - P||, |tr P - m|)`` in the max-abs norm."""
    return (
        float(np.max(np.abs(P @ P - P))),
        float(np.max(np.abs(P.conj().T - P))),
        float(abs(np.trace(P) - m)),
    )


def curvature_closed(rep: RepParams, point):
    """Closed-form curvature scalar: 1, ``2K/(1-|zeta|^2)^2`` or ``2J/(1+|eta|^2)^2``."""
    rho = abs(complex(point)) ** 2
    if rep.kind == "coherent":
        return 1.0
    if rep.kind == "su11":
        return 2 * rep.label / (1 - rho) ** 2
    if rep.kind == "su2":
        return 2 * rep.label / (1 + rho) ** 2
    raise MismatchError(f"no closed-form curvature for {rep.kind!r}")


def curvature_scalar_numeric(rep: RepParams, point, step=1e-4, dim=None):
    """Scalar ``c`` in ``d<psi| (1 - P) d|psi> = c dxi_bar ^ dxi`` by central differences.

    The holomorphic derivative is ``(d/dx - i d/dy) / 2`` of the normalized state;
    components along the state itself are projected out.
    """
    if not 1e-6 <= step <= 1e-3:
        raise InvalidParameter(f"step must lie in [1e-6, 1e-3], got {step}")
    point = complex(point)
    if rep.kind == "su11" and abs(point) > 0.9:
        raise OutsideDomain(f"|zeta| = {abs(point):.3g} is too close to the disk boundary (limit 0.9)")
    if rep.kind == "su11":
        dim = dim or su11_dim(rep.label, (abs(point) + 2 * step))
    elif rep.kind == "coherent":
        dim = dim or choose_dim(abs(point) + 2 * step, 1e-14)
    psi = family_state(rep, point, dim)

    def f(x):
        return family_state(rep, x, dim)

    dx = (f(point + step) - f(point - step)) / (2 * step)
    dy = (f(point + 1j * step) - f(point - 1j * step)) / (2 * step)
    d = 0.5 * (dx - 1j * dy)
    d_perp = d - psi * np.vdot(psi, d) / np.vdot(psi, psi)
    return float(np.vdot(d_perp, d_perp).real)


def normalization_constants(rep: RepParams) -> float:
    """``C`` with ``C * Omega / (2 pi i)`` equal to the resolution measure.

    ``C_K = (2K-1)/(2K)``, ``C_J = (2J+1)/(2J)`` and 1 for harmonic coherent states.
    """
    if rep.kind == "coherent":
        return 1.0
    if rep.kind == "su11":
        if rep.label <= 0.5:
            raise InvalidParameter(f"K = {rep.label} <= 1/2 gives a non-positive measure")
        return (2 * rep.label - 1) / (2 * rep.label)
    if rep.kind == "su2":
        return (2 * rep.label + 1) / (2 * rep.label)
    raise MismatchError(f"no normalization constant for {rep.kind!r}")


def measure_density(rep: RepParams, point):
    """Resolution-measure density with respect to ``[d^2 xi]``."""
    rho = abs(complex(point)) ** 2
    if rep.kind == "coherent":
        return 1.0 / math.pi
    if rep.kind == "su11":
        return (2 * rep.label - 1) / (math.pi * (1 - rho) ** 2)
    if rep.kind == "su2":
        return (2 * rep.label + 1) / (math.pi * (1 + rho) ** 2)
    raise MismatchError(f"no measure for {rep.kind!r}")


def normalization_consistency(rep: RepParams, points, step=1e-4):
    """Max deviation of ``C * c(xi) / pi`` from the measure density over ``points``."""
    C = normalization_constants(rep)
    return max(abs(C * curvature_scalar_numeric(rep, p, step) / math.pi - measure_density(rep, p)) for p in points)


def cpn_projector(homogeneous):
    """Rank-1 projector ``|zeta><zeta|`` of a point ``[zeta_0 : ... : zeta_N]`` of CP^N."""
    v = np.asarray(homogeneous, dtype=complex).ravel()
    norm2 = float(np.vdot(v, v).real)
    if norm2 == 0:
        raise InvalidParameter("the zero vector is not a point of projective space")
    return np.outer(v, v.conj()) / norm2


def chart_vector(chart, coords, n_plus_1=None):
    """Homogeneous vector on chart ``U_{chart+1}`` (where ``zeta_chart != 0``, scaled to 1)."""
    coords = list(np.atleast_1d(np.asarray(coords, dtype=complex)))
    n_plus_1 = n_plus_1 or len(coords) + 1
    if not 0 <= chart < n_plus_1:
        raise InvalidParameter(f"chart index {chart} out of range")
    v = coords[:chart] + [1.0] + coords[chart:]
    return np.asarray(v, dtype=complex)


def chart_projector(chart, coords):
    return cpn_projector(chart_vector(chart, coords))


@dataclass(frozen=True)
class BellSpec:
    J: float
    variant: str

    def __post_init__(self):
        if self.variant not in BELL_VARIANTS:
            raise InvalidParameter(f"variant must be one of {BELL_VARIANTS}")
        if self.J <= 0 or abs(2 * self.J - round(2 * self.J)) > 1e-12:
            raise InvalidParameter("J must be a positive half-integer")

    @property
    def two_j(self) -> int:
        return int(round(2 * self.J))


def flat_state(spec: BellSpec, eta):
    """``|eta^flat>_J`` from its expansion in ``conj(eta)``; finite at ``eta = 0`` for every variant."""
    two_j = spec.two_j
    eta = complex(eta)
    k = np.arange(two_j + 1)
    coeff = (1 + abs(eta) ** 2) ** (-two_j / 2) * np.sqrt([math.comb(two_j, j) for j in k]) * eta.conjugate() ** k
    if spec.variant.startswith("neg"):
        coeff = coeff * (-1.0) ** k
    if spec.variant.endswith("inv-conj"):
        coeff = coeff[::-1]
    return coeff


def bell_quadrature(spec: BellSpec, grid: QuadratureGrid):
    """``(2J+1)^(-1/2) int dmu |eta>_J (x) |eta^flat>_J`` on a sphere-chart grid."""
    if grid.kind != "sphere-chart":
        raise MismatchError(f"Bell construction needs a sphere-chart grid, got {grid.kind}")
    dim = spec.two_j + 1
    samples = np.array([np.kron(su2_coefficients(spec.J, e), flat_state(spec, e)) for e in grid.points])
    return dim * integrate(grid, samples) / math.sqrt(dim)


def bell_closed(spec: BellSpec):
    dim = spec.two_j + 1
    out = np.zeros(dim * dim)
    for k in range(dim):
        col = dim - 1 - k if spec.variant.endswith("inv-conj") else k
        out[k * dim + col] = (-1.0) ** k if spec.variant.startswith("neg") else 1.0
    return out / math.sqrt(dim)


def sphere_moment(J, k, grid: QuadratureGrid):
    """``(2J+1)/pi int [d^2 eta] |eta|^(2k) / (1+|eta|^2)^(2J+2)``; equals ``1 / C(2J, k)``."""
    if grid.kind != "sphere-chart":
        raise MismatchError("sphere_moment needs a sphere-chart grid")
    rho = np.abs(grid.points) ** 2
    two_j = int(round(2 * J))
    return float((two_j + 1) * integrate(grid, rho**k / (1 + rho) ** two_j))


def su11_bell_divergence(K, delta_sequence, radial_nodes=16):
    """Total su(1,1) measure of the disk ``|zeta|^2 <= 1 - delta`` for each ``delta``."""
    if K <= 0.5:
        raise InvalidParameter("K must exceed 1/2")
    out = []
    for d in delta_sequence:
        g = disk_grid(radial_nodes, 1, d)
        out.append(float((2 * K - 1) * integrate(g, np.ones(g.size))))
    return out


def growth_exponent(delta_sequence, values):
    """Least-squares slope of ``log(value)`` against ``log(1/delta)``."""
    x = np.log(1.0 / np.asarray(delta_sequence, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    return float(np.polyfit(x, y, 1)[0])
