"""The map ``rho: SU(2) -> SO(3)`` written as ``G = 1 + 2aM + 2M^2``.

With ``g = [[a+ib, c+id], [-c+id, a-ib]]`` and ``tau_j = sigma_j / 2`` the matrix
``G = rho(g)`` satisfies ``g^-1 tau_i g = sum_j tau_j G_ji``. Because conjugation is by
``g^-1 ... g`` (a right action), ``rho(g1 g2) = rho(g2) rho(g1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidElement

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
TAU = tuple(s / 2 for s in PAULI)


@dataclass(frozen=True)
class SU2Element:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        norm2 = self.a**2 + self.b**2 + self.c**2 + self.d**2
        if abs(norm2 - 1) > 1e-12:
            raise InvalidElement(f"a^2+b^2+c^2+d^2 = {norm2!r}, expected 1")

    def matrix(self):
        a, b, c, d = self.a, self.b, self.c, self.d
        return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])

    @classmethod
    def from_matrix(cls, g):
        g = np.asarray(g)
        return cls(g[0, 0].real, g[0, 0].imag, g[0, 1].real, g[0, 1].imag)

    def __mul__(self, other: "SU2Element") -> "SU2Element":
        prod = self.matrix() @ other.matrix()
        q = np.array([prod[0, 0].real, prod[0, 0].imag, prod[0, 1].real, prod[0, 1].imag])
        q /= np.linalg.norm(q)
        return SU2Element(*q)

    def __neg__(self) -> "SU2Element":
        return SU2Element(-self.a, -self.b, -self.c, -self.d)


def random_su2(rng) -> SU2Element:
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    return SU2Element(*q)


def rho(g: SU2Element):
    M = np.array([[0.0, -g.b, g.c], [g.b, 0.0, -g.d], [-g.c, g.d, 0.0]])
    return np.eye(3) + 2 * g.a * M + 2 * M @ M


def rho_explicit(g: SU2Element):
    """The same matrix entry by entry."""
    a, b, c, d = g.a, g.b, g.c, g.d
    return np.array(
        [
            [a * a - b * b - c * c + d * d, -2 * (a * b - c * d), 2 * (a * c + b * d)],
            [2 * (a * b + c * d), a * a - b * b + c * c - d * d, -2 * (a * d - b * c)],
            [-2 * (a * c - b * d), 2 * (a * d + b * c), a * a + b * b - c * c - d * d],
        ]
    )


def adjoint_crosscheck(g: SU2Element) -> float:
    """Max deviation of ``g^-1 tau_i g`` from ``sum_j tau_j rho(g)_ji``."""
    G = rho(g)
    m = g.matrix()
    m_inv = m.conj().T
    dev = 0.0
    for i in range(3):
        lhs = m_inv @ TAU[i] @ m
        rhs = sum(TAU[j] * G[j, i] for j in range(3))
        dev = max(dev, float(np.max(np.abs(lhs - rhs))))
    return dev


def orthogonality_defect(G) -> float:
    return float(np.max(np.abs(G.T @ G - np.eye(3))))


def homomorphism_defect(g1: SU2Element, g2: SU2Element, order="right") -> float:
    """``||rho(g1 g2) - rho(g2) rho(g1)||`` (``order="right"``) or the left-ordered product."""
    lhs = rho(g1 * g2)
    rhs = rho(g2) @ rho(g1) if order == "right" else rho(g1) @ rho(g2)
    return float(np.max(np.abs(lhs - rhs)))
