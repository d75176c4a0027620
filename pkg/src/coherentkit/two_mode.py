"""Two-mode Schwinger-boson constructions, swap and cloning protocols.

Two-mode operators act on the product basis ``|n1> (x) |n2>`` ordered
lexicographically (``n1`` major), i.e. index ``n1 * dim + n2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InconclusiveError, InvalidParameter, PreconditionError, TruncationError
from .fock import exp_antihermitian_blocks, ladder_ops, require_tail
from .single_mode import coherent_amplitudes, displacement, overlap_closed, phase_rotor, squeeze, squeezed_alpha

DEFAULT_DIM = 24


@dataclass(frozen=True)
class ProtocolParams:
    alpha1: complex = 0j
    alpha2: complex = 0j
    kappa: complex = 0j
    epsilon: complex = 0j

    @property
    def delta(self) -> float:
        return cmath.phase(self.kappa)


def mode_ops(dim):
    """``(a1, a2)`` on the product space."""
    if dim < 2:
        raise InvalidParameter("dim_per_mode must be >= 2")
    a, _, _ = ladder_ops(dim)
    eye = np.eye(dim)
    return np.kron(a, eye), np.kron(eye, a)


def schwinger_generators(dim):
    """``((K+, K-, K3), (J+, J-, J3))`` built from two modes.

    ``J+ = a1^dag a2``, ``J- = a2^dag a1``, ``J3 = (N1 - N2)/2``;
    ``K+ = a1^dag a2^dag``, ``K- = a2 a1``, ``K3 = (N1 + N2 + 1)/2``.
    """
    a1, a2 = mode_ops(dim)
    a1d, a2d = a1.conj().T, a2.conj().T
    n1, n2 = a1d @ a1, a2d @ a2
    eye = np.eye(dim * dim)
    k_ops = (a1d @ a2d, a2 @ a1, 0.5 * (n1 + n2 + eye))
    j_ops = (a1d @ a2, a2d @ a1, 0.5 * (n1 - n2))
    return k_ops, j_ops


def interior_indices(dim, m):
    """Product-basis indices with ``n1 < m`` and ``n2 < m``."""
    return np.array([n1 * dim + n2 for n1 in range(m) for n2 in range(m)])


def interior(X, dim, m):
    idx = interior_indices(dim, m)
    return X[np.ix_(idx, idx)]


def u_j(v, dim):
    """``U_J(v) = exp(v J+ - conj(v) J-)``; exact on total-number sectors ``n1 + n2 < dim``."""
    _, (jp, jm, _) = schwinger_generators(dim)
    v = complex(v)
    return exp_antihermitian_blocks(v * jp - v.conjugate() * jm)


def u_k(w, dim, tail_eps=1e-10):
    """``U_K(w) = exp(w K+ - conj(w) K-)`` with a two-mode squeezed-vacuum tail check."""
    (kp, km, _), _ = schwinger_generators(dim)
    w = complex(w)
    U = exp_antihermitian_blocks(w * kp - w.conjugate() * km)
    if w != 0:
        # Two-mode squeezed vacuum has weight tanh|w|^(2n) / cosh|w|^2 on |n,n>
        tail = math.tanh(abs(w)) ** (2 * (dim - 2))
        if tail > tail_eps:
            raise TruncationError(f"two-mode squeeze tail {tail:.1e} at dim={dim}", suggested_dim=2 * dim)
    return U


def su2_adjoint_matrix(t):
    """Matrix ``M`` with ``(U a1 U^-1, U a2 U^-1) = (a1, a2) M`` for ``U = U_J(t)``."""
    t = complex(t)
    r = abs(t)
    s = math.sin(r) / r if r else 1.0
    return np.array([[math.cos(r), t.conjugate() * s], [-t * s, math.cos(r)]])


def su11_adjoint_matrix(t):
    """Matrix ``M`` with ``(U a1 U^-1, U a2^dag U^-1) = (a1, a2^dag) M`` for ``U = U_K(t)``."""
    t = complex(t)
    r = abs(t)
    s = math.sinh(r) / r if r else 1.0
    return np.array([[math.cosh(r), -t.conjugate() * s], [-t * s, math.cosh(r)]])


def rotation_law_defects(t, dim, algebra="su2", m=None):
    """Max-abs deviation of both adjoint rotation laws on the interior block.

    su(2): ``U a1 U^-1 = cos|t| a1 - (t sin|t|/|t|) a2`` and
    ``U a2 U^-1 = cos|t| a2 + (conj(t) sin|t|/|t|) a1``.
    su(1,1): ``U a1 U^-1 = cosh|t| a1 - (t sinh|t|/|t|) a2^dag`` and
    ``U a2^dag U^-1 = cosh|t| a2^dag - (conj(t) sinh|t|/|t|) a1``.
    """
    a1, a2 = mode_ops(dim)
    m = m if m is not None else dim // 3
    if algebra == "su2":
        U = u_j(t, dim)
        M = su2_adjoint_matrix(t)
        ops = (a1, a2)
    elif algebra == "su11":
        U = u_k(t, dim)
        M = su11_adjoint_matrix(t)
        ops = (a1, a2.conj().T)
    else:
        raise InvalidParameter(f"unknown algebra {algebra!r}")
    Ud = U.conj().T
    out = []
    for col in range(2):
        lhs = U @ ops[col] @ Ud
        rhs = ops[0] * M[0, col] + ops[1] * M[1, col]
        out.append(float(np.max(np.abs(interior(lhs - rhs, dim, m)))))
    return tuple(out)


def two_mode_squeezers(alpha, beta, dim):
    # Heavy squeezed tails only pollute the top levels; callers compare on an interior block.
    return np.kron(squeeze(alpha, dim, check=False), squeeze(beta, dim, check=False))


def uk_from_rotated_squeezers(w, dim=32, m=None):
    """Deviation between ``U_J(-pi/4) S1(w) S2(-w) U_J(-pi/4)^-1`` and ``U_K(w)`` on the interior."""
    w = complex(w)
    if abs(w) > 0.8:
        raise InvalidParameter("|w| must be <= 0.8")
    m = m if m is not None else dim // 4
    UJ = u_j(-math.pi / 4, dim)
    lhs = UJ @ two_mode_squeezers(w, -w, dim) @ UJ.conj().T
    rhs = u_k(w, dim)
    return float(np.max(np.abs(interior(lhs - rhs, dim, m))))


def squeezer_commutation_defect(alpha, beta, t, dim=32, check_condition=True, m=None):
    """``||U_J(t) S1(alpha) S2(beta) U_J(t)^-1 - S1(alpha) S2(beta)||`` on the interior block.

    The commutation needs ``beta t = alpha conj(t)``; with ``check_condition`` a
    violation raises instead of computing.
    """
    alpha, beta, t = complex(alpha), complex(beta), complex(t)
    if check_condition and abs(beta * t - alpha * t.conjugate()) > 1e-12 * max(1.0, abs(alpha * t)):
        raise PreconditionError(
            f"commuting condition beta*t = alpha*conj(t) violated by {abs(beta * t - alpha * t.conjugate()):.3e}"
        )
    m = m if m is not None else dim // 4
    UJ = u_j(t, dim)
    S = two_mode_squeezers(alpha, beta, dim)
    return float(np.max(np.abs(interior(UJ @ S @ UJ.conj().T - S, dim, m))))


def product_coherent(alpha1, alpha2, dim):
    return np.kron(coherent_amplitudes(alpha1, dim), coherent_amplitudes(alpha2, dim))


def _two_mode_rotor(t1, t2, dim):
    return np.kron(np.diag(phase_rotor(t1, dim)), np.diag(phase_rotor(t2, dim)))


def swap_protocol(alpha1, alpha2, dim=DEFAULT_DIM, delta=0.0, tail_eps=1e-12):
    """Swap two coherent amplitudes with ``U_J(kappa)``, ``|kappa| = pi/2``, then a phase correction.

    Returns ``(state, fidelity)`` where fidelity is ``|<alpha2 (x) alpha1|out>|``.
    """
    for al in (alpha1, alpha2):
        require_tail(abs(al), dim, tail_eps)
    kappa = (math.pi / 2) * cmath.exp(1j * delta)
    psi = product_coherent(alpha1, alpha2, dim)
    out = _two_mode_rotor(-delta, delta + math.pi, dim) * (u_j(kappa, dim) @ psi)
    target = product_coherent(alpha2, alpha1, dim)
    return out, float(abs(np.vdot(target, out)))


def imperfect_clone(alpha, kappa_abs, dim=DEFAULT_DIM, delta=0.0, tail_eps=1e-12):
    """Split ``|alpha> (x) |0>`` into ``|cos|k| alpha> (x) |sin|k| alpha>``.

    Returns ``(state, (f1, f2))`` with ``f_i`` the overlap modulus of each output mode
    with the input ``|alpha>``, from the closed-form overlap.
    """
    require_tail(abs(alpha), dim, tail_eps)
    kappa = kappa_abs * cmath.exp(1j * delta)
    psi = product_coherent(alpha, 0.0, dim)
    out = _two_mode_rotor(0.0, delta + math.pi, dim) * (u_j(kappa, dim) @ psi)
    c, s = math.cos(kappa_abs), math.sin(kappa_abs)
    fids = (abs(overlap_closed(alpha, c * alpha)), abs(overlap_closed(alpha, s * alpha)))
    return out, fids


def clone_target(alpha, kappa_abs, dim=DEFAULT_DIM):
    return product_coherent(math.cos(kappa_abs) * alpha, math.sin(kappa_abs) * alpha, dim)


@dataclass(frozen=True)
class DiscrepancyResult:
    lhs_param: complex
    corrected_param: complex
    competing_param: complex
    verdict: bool
    distance_corrected: float
    distance_competing: float


def extract_displacement(op):
    """Displacement parameter of ``op`` from the amplitude ratio ``<1|op|0> / <0|op|0>``."""
    return complex(op[1, 0] / op[0, 0])


def dg_discrepancy(alpha, epsilon, kappa, dim=48, tol=1e-6):
    """Compare ``S(e) D(-i sin|k| alpha~) S(e)^-1`` against the two competing closed forms.

    ``alpha~ = cosh|e| alpha + e^{i phi} sinh|e| conj(alpha)``. The corrected value is
    ``-i sin|k| alpha``; the competing claim is ``-i sin|k| alpha~~`` with
    ``alpha~~ = cosh(2|e|) alpha + e^{i phi} sinh(2|e|) conj(alpha)``. The phase of
    ``kappa`` must satisfy ``e^{-i delta} = i``.
    """
    alpha, epsilon, kappa = complex(alpha), complex(epsilon), complex(kappa)
    if kappa == 0 or abs(cmath.exp(-1j * cmath.phase(kappa)) - 1j) > 1e-12:
        raise PreconditionError("kappa must have phase delta with exp(-i delta) = i, e.g. delta = -pi/2")
    s = math.sin(abs(kappa))
    r = abs(epsilon)
    phase = cmath.exp(1j * cmath.phase(epsilon)) if r else 1.0
    beta = -1j * s * squeezed_alpha(alpha, epsilon)
    S = squeeze(epsilon, dim)
    op = S @ displacement(beta, dim) @ S.conj().T
    lhs = extract_displacement(op)
    corrected = -1j * s * alpha
    competing = -1j * s * (math.cosh(2 * r) * alpha + phase * math.sinh(2 * r) * alpha.conjugate())
    d_corr, d_comp = abs(lhs - corrected), abs(lhs - competing)
    if d_corr <= tol and d_comp <= tol:
        raise InconclusiveError(
            f"both candidates fit: distance to corrected value {d_corr:.2e}, to competing value {d_comp:.2e}",
            distances=(d_corr, d_comp),
        )
    return DiscrepancyResult(lhs, corrected, competing, bool(d_corr <= tol), d_corr, d_comp)


def universal_swap(n):
    """Permutation matrix ``U_{ij,kl} = delta_il delta_jk`` on ``C^n (x) C^n``."""
    if int(n) != n or n < 1:
        raise InvalidParameter("n must be a positive integer")
    n = int(n)
    U = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            U[i * n + j, j * n + i] = 1.0
    return U


CNOT_1 = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=float)
CNOT_2 = np.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=float)


def cnot_swap():
    """``CNOT_1 CNOT_2 CNOT_1``; the first gate is controlled by qubit 1, the second by qubit 2."""
    return CNOT_1 @ CNOT_2 @ CNOT_1
