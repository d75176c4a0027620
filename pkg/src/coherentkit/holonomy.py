"""One-qubit holonomy: the connection of ``W(alpha, beta) = D(alpha) S(beta)`` on the frame ``(|0>, |1>)``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm, logm

from .errors import ContractViolation, InvalidParameter
from .fock import ladder_ops

E = np.array([[0, 1], [0, 0]], dtype=complex)
F = np.array([[0, 0], [1, 0]], dtype=complex)
K = np.array([[0, 0], [0, 1]], dtype=complex)
L = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class ConnectionValue:
    A_alpha: np.ndarray
    A_beta: np.ndarray
    point: tuple

    def one_form(self, d_alpha, d_beta):
        """``A_a da + A_b db - A_a^dag conj(da) - A_b^dag conj(db)``, anti-Hermitian by construction."""
        return (
            self.A_alpha * d_alpha
            + self.A_beta * d_beta
            - self.A_alpha.conj().T * np.conj(d_alpha)
            - self.A_beta.conj().T * np.conj(d_beta)
        )


def _sinhc(x):
    return math.sinh(x) / x if x else 1.0


def connection_closed(alpha, beta) -> ConnectionValue:
    """``A_alpha = conj(alpha)/2 L + cosh|b| F + conj(b) sinh|b|/|b| E``,
    ``A_beta = conj(b) (cosh 2|b| - 1) / (4|b|^2) (K + L/2)``."""
    alpha, beta = complex(alpha), complex(beta)
    r = abs(beta)
    A_a = alpha.conjugate() / 2 * L + math.cosh(r) * F + beta.conjugate() * _sinhc(r) * E
    # (cosh 2r - 1) / (4 r^2) = (sinh r / r)^2 / 2, which is regular at r = 0.
    coef = beta.conjugate() * _sinhc(r) ** 2 / 2
    A_b = coef * (K + 0.5 * L)
    return ConnectionValue(A_a, A_b, (alpha, beta))


def _frame(alpha, beta, dim):
    """First two columns of ``D(alpha) S(beta)``, via eigendecompositions of the generators."""
    a, adag, _ = ladder_ops(dim)
    gen_d = alpha * adag - np.conj(alpha) * a
    gen_s = 0.5 * (beta * adag @ adag - np.conj(beta) * a @ a)
    cols = np.eye(dim, 2, dtype=complex)
    for G in (gen_s, gen_d):
        lam, V = np.linalg.eigh(1j * G)
        cols = V @ (np.exp(-1j * lam)[:, None] * (V.conj().T @ cols))
    return cols


def connection_numeric(alpha, beta, step=1e-4, dim=96) -> ConnectionValue:
    """``<vac| W^-1 dW |vac>`` by central differences of the truncated frame.

    ``A_alpha = <vac|W^dag (d/dx - i d/dy)/2 W|vac>`` with ``alpha = x + i y``; the same
    for ``beta``.
    """
    if not 1e-6 <= step <= 1e-3:
        raise InvalidParameter(f"step must lie in [1e-6, 1e-3], got {step}")
    if abs(beta) > 1.5:
        raise InvalidParameter("|beta| exceeds the squeeze cap 1.5")
    alpha, beta = complex(alpha), complex(beta)
    W0 = _frame(alpha, beta, dim)
    leak = float(np.max(np.abs(W0[-4:])))
    if leak > 1e-10:
        raise ContractViolation(f"frame leaks {leak:.1e} to the top of dim={dim}; increase dim")

    def wirtinger(shift):
        dx = (_frame(*shift(step), dim) - _frame(*shift(-step), dim)) / (2 * step)
        dy = (_frame(*shift(1j * step), dim) - _frame(*shift(-1j * step), dim)) / (2 * step)
        return 0.5 * (dx - 1j * dy)

    d_a = wirtinger(lambda h: (alpha + h, beta))
    d_b = wirtinger(lambda h: (alpha, beta + h))
    return ConnectionValue(W0.conj().T @ d_a, W0.conj().T @ d_b, (alpha, beta))


@dataclass(frozen=True)
class LoopPath:
    """Closed path sampled at ``steps + 1`` points ``(alpha, beta)``."""

    samples: tuple

    def __post_init__(self):
        if len(self.samples) < 2:
            raise InvalidParameter("a loop needs at least two samples")
        a0, b0 = self.samples[0]
        a1, b1 = self.samples[-1]
        if abs(a0 - a1) > 1e-12 or abs(b0 - b1) > 1e-12:
            raise InvalidParameter("path is not closed: first and last samples differ")

    @property
    def steps(self) -> int:
        return len(self.samples) - 1

    def reversed(self) -> "LoopPath":
        return LoopPath(tuple(reversed(self.samples)))

    def refined(self) -> "LoopPath":
        """Insert segment midpoints, doubling the step count."""
        out = [self.samples[0]]
        for (a0, b0), (a1, b1) in zip(self.samples[:-1], self.samples[1:]):
            out.append(((a0 + a1) / 2, (b0 + b1) / 2))
            out.append((a1, b1))
        return LoopPath(tuple(out))


COORDS = ("re_alpha", "im_alpha", "re_beta", "im_beta")
_UNIT = {"re_alpha": (1, 0), "im_alpha": (1j, 0), "re_beta": (0, 1), "im_beta": (0, 1j)}


def square_loop(plane, side, steps=200, base=(0j, 0j)):
    """Square of the given side in a coordinate plane, anchored at ``base`` and run counterclockwise."""
    u, v = (_UNIT[c] for c in plane)
    corners = [(0, 0), (side, 0), (side, side), (0, side), (0, 0)]
    per_edge = max(steps // 4, 1)
    pts = []
    for (x0, y0), (x1, y1) in zip(corners[:-1], corners[1:]):
        for j in range(per_edge):
            s = j / per_edge
            x, y = x0 + s * (x1 - x0), y0 + s * (y1 - y0)
            pts.append((base[0] + x * u[0] + y * v[0], base[1] + x * u[1] + y * v[1]))
    pts.append(pts[0])
    return LoopPath(tuple(pts))


def constant_loop(point=(0j, 0j), steps=100):
    return LoopPath(tuple([point] * (steps + 1)))


def holonomy_of_loop(path: LoopPath, use_closed_form=True, dim=96, step=1e-4):
    """Path-ordered exponential of the connection around ``path``.

    Each segment contributes ``expm(A(midpoint) applied to the segment displacement)``;
    later segments multiply from the left. The factors are exactly unitary because the
    one-form is anti-Hermitian.
    """
    if path.steps < 100:
        raise InvalidParameter(f"need at least 100 steps, got {path.steps}")
    out = np.eye(2, dtype=complex)
    for (a0, b0), (a1, b1) in zip(path.samples[:-1], path.samples[1:]):
        am, bm = (a0 + a1) / 2, (b0 + b1) / 2
        conn = connection_closed(am, bm) if use_closed_form else connection_numeric(am, bm, step, dim)
        out = expm(conn.one_form(a1 - a0, b1 - b0)) @ out
    return out


def standard_battery(side=0.5, steps=200):
    """Squares at the origin in all six coordinate planes of ``(Re a, Im a, Re b, Im b)``."""
    planes = [(COORDS[i], COORDS[j]) for i in range(4) for j in range(i + 1, 4)]
    return [square_loop(p, side, steps) for p in planes]


def _to_vec(X):
    """Real coordinates of an anti-Hermitian 2x2 matrix."""
    return np.array([X[0, 0].imag, X[1, 1].imag, X[0, 1].real, X[0, 1].imag])


def _basis_from(vectors, tol):
    if not vectors:
        return np.zeros((0, 4))
    M = np.array(vectors)
    _, s, vt = np.linalg.svd(M, full_matrices=False)
    rank = int(np.sum(s > tol * max(s[0], 1e-300)))
    return vt[:rank]


def _from_vec(v):
    return np.array([[1j * v[0], v[2] + 1j * v[3]], [-v[2] + 1j * v[3], 1j * v[1]]])


def lie_closure_dimension(generators, tol=1e-8):
    """Real dimension of the Lie algebra generated by anti-Hermitian 2x2 matrices."""
    vecs = [_to_vec(0.5 * (X - X.conj().T)) for X in generators if np.max(np.abs(X)) > 0]
    basis = _basis_from(vecs, tol)
    while True:
        mats = [_from_vec(v) for v in basis]
        brackets = [_to_vec(A @ B - B @ A) for i, A in enumerate(mats) for B in mats[i + 1:]]
        new = _basis_from(list(basis) + brackets, tol)
        if len(new) == len(basis):
            return len(basis)
        basis = new


def irreducibility_probe(sample_loops, use_closed_form=True, min_loops=6, tol=1e-8):
    """Dimension of the Lie-algebra closure of the log-holonomies of ``sample_loops``."""
    if len(sample_loops) < min_loops:
        raise InvalidParameter(f"need at least {min_loops} loops, got {len(sample_loops)}")
    logs = [logm(holonomy_of_loop(p, use_closed_form)) for p in sample_loops]
    return lie_closure_dimension(logs, tol)
