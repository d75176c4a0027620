"""Single-mode displacement, squeeze and phase operators and coherent states."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, MismatchError, TruncationError
from .fock import basis, choose_dim, exp_antihermitian, ladder_ops, max_abs, require_tail

SQUEEZE_CAP = 1.5


@dataclass(frozen=True)
class CoherentParams:
    """Parameters of the single-mode protocols: ``alpha = |alpha| e^{i chi}``, ``epsilon = |epsilon| e^{i phi}``."""

    z: complex = 0j
    epsilon: complex = 0j
    t: float = 0.0

    @property
    def chi(self) -> float:
        return cmath.phase(self.z)

    @property
    def phi(self) -> float:
        return cmath.phase(self.epsilon)


def coherent_amplitudes(z, n):
    """``exp(-|z|^2/2) z^k / sqrt(k!)`` for ``k < n`` (series form, no truncation error)."""
    z = complex(z)
    k = np.arange(n)
    log_fact = np.array([math.lgamma(j + 1) for j in k])
    if z == 0:
        out = np.zeros(n, dtype=complex)
        out[0] = 1.0
        return out
    log_mag = -0.5 * abs(z) ** 2 + k * math.log(abs(z)) - 0.5 * log_fact
    return np.exp(log_mag) * np.exp(1j * k * cmath.phase(z))


def coherent_state(z, dim, method="series", tail_eps=1e-10):
    """Truncated coherent state ``|z>``.

    ``method="series"`` sums the number-state expansion; ``method="exp"`` applies the
    truncated displacement operator to the vacuum.
    """
    require_tail(abs(z), dim, tail_eps)
    if method == "series":
        return coherent_amplitudes(z, dim)
    if method == "exp":
        return displacement(z, dim, tail_eps=tail_eps)[:, 0].copy()
    raise InvalidParameter(f"unknown method {method!r}")


def displacement(z, dim, tail_eps=1e-10):
    """``D(z) = exp(z a^dagger - conj(z) a)``."""
    require_tail(abs(z), dim, tail_eps)
    a, adag, _ = ladder_ops(dim)
    return exp_antihermitian(complex(z) * adag - np.conj(z) * a)


def overlap_closed(z, w):
    """``<z|w> = exp(-|z|^2/2 - |w|^2/2 + conj(z) w)``."""
    z, w = complex(z), complex(w)
    return cmath.exp(-0.5 * abs(z) ** 2 - 0.5 * abs(w) ** 2 + z.conjugate() * w)


def laguerre_assoc(n, alpha, x):
    """Associated Laguerre polynomial ``L_n^(alpha)(x)`` by the three-term recurrence.

    ``(k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}``. Integer
    ``alpha >= -n`` is accepted; negative orders use
    ``L_n^(-m)(x) = (-x)^m (n-m)!/n! L_{n-m}^(m)(x)``.
    """
    n = int(n)
    if n < 0:
        raise InvalidParameter("n must be nonnegative")
    if alpha < 0:
        m = -int(alpha)
        if m > n:
            raise InvalidParameter("alpha must be >= -n")
        return (-x) ** m * math.exp(math.lgamma(n - m + 1) - math.lgamma(n + 1)) * laguerre_assoc(n - m, m, x)
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur if np.ndim(cur) else float(cur)


def matrix_element_D(n, m, z):
    """``<n|D(z)|m>`` in closed form through associated Laguerre polynomials."""
    z = complex(z)
    x = abs(z) ** 2
    if n <= m:
        pref = math.exp(0.5 * (math.lgamma(n + 1) - math.lgamma(m + 1)))
        return cmath.exp(-0.5 * x) * pref * (-z.conjugate()) ** (m - n) * laguerre_assoc(n, m - n, x)
    pref = math.exp(0.5 * (math.lgamma(m + 1) - math.lgamma(n + 1)))
    return cmath.exp(-0.5 * x) * pref * z ** (n - m) * laguerre_assoc(m, n - m, x)


def normal_ordered_projector(z, dim, tail_eps=1e-10):
    """``sum_k (-1)^k / k! (a^dagger - conj z)^k (a - z)^k`` on the truncated space."""
    require_tail(abs(z), dim, tail_eps)
    a, adag, _ = ladder_ops(dim)
    eye = np.eye(dim, dtype=complex)
    left = adag - np.conj(z) * eye
    right = a - z * eye
    out = np.zeros((dim, dim), dtype=complex)
    lk = eye.copy()
    rk = eye.copy()
    coef = 1.0
    for k in range(8 * dim + 64):
        term = coef * (lk @ rk)
        out += term
        if k >= dim and max_abs(term) < 1e-18:
            break
        lk = lk @ left
        rk = rk @ right
        coef *= -1.0 / (k + 1)
    return out


def glauber_reconstruct(A, grid, block=None):
    """Reconstruct ``A`` from its characteristic function, ``int [d^2z]/pi Tr[A D(z)^dagger] D(z)``.

    Both the trace and the reconstructed matrix use closed-form matrix elements of
    ``D(z)`` on the occupied leading block, which avoids the cutoff artefacts of a
    truncated ``D``.
    """
    if grid.kind != "planar":
        raise MismatchError(f"Glauber reconstruction needs a planar grid, got {grid.kind}")
    A = np.asarray(A, dtype=complex)
    dim = A.shape[0]
    if block is None:
        nz = np.nonzero(np.abs(A) > 0)
        block = int(max(nz[0].max(), nz[1].max()) + 1) if nz[0].size else 1
    if block > max(dim // 4, 1):
        raise MismatchError(f"A occupies a {block}-block, more than dim/4 = {dim // 4}")
    from .quadrature import integrate

    full = np.array([[[matrix_element_D(n, m, z) for m in range(block)] for n in range(block)] for z in grid.points])
    sub = A[:block, :block]
    # Tr[A D^dagger] = sum_{n,m} A_{nm} conj(<n|D|m>) with A supported on the block
    traces = np.einsum("nm,pnm->p", sub, full.conj())
    out = np.zeros((dim, dim), dtype=complex)
    out[:block, :block] = integrate(grid, traces[:, None, None] * full)
    return out


def squeeze(epsilon, dim, check=True, tol=1e-7):
    """``S(epsilon) = exp((epsilon a^dagger^2 - conj(epsilon) a^2) / 2)`` with ``|epsilon| <= 1.5``."""
    epsilon = complex(epsilon)
    if abs(epsilon) > SQUEEZE_CAP:
        raise InvalidParameter(f"|epsilon| = {abs(epsilon):.3g} exceeds the cap {SQUEEZE_CAP}")
    a, adag, _ = ladder_ops(dim)
    S = exp_antihermitian(0.5 * (epsilon * adag @ adag - epsilon.conjugate() * a @ a))
    if check and epsilon != 0:
        # Squeezed vacuum mass must stay inside the truncation.
        vac = S[:, 0]
        tail = float(np.sum(np.abs(vac[-max(dim // 8, 2):]) ** 2))
        if tail > tol**2:
            raise TruncationError(
                f"squeezed vacuum leaks {tail:.2e} into the top of a dim={dim} space", suggested_dim=2 * dim
            )
    return S


def squeeze_adjoint_coefficients(epsilon):
    """``S a S^-1 = c_a a + c_ad a^dagger`` with ``(c_a, c_ad) = (cosh|e|, -e^{i phi} sinh|e|)``."""
    r = abs(epsilon)
    phase = cmath.exp(1j * cmath.phase(epsilon)) if r else 1.0
    return math.cosh(r), -phase * math.sinh(r)


def squeezed_alpha(alpha, epsilon):
    """``alpha~`` with ``S(epsilon) D(alpha) S(epsilon)^-1 = D(alpha~)``."""
    r = abs(epsilon)
    phase = cmath.exp(1j * cmath.phase(epsilon)) if r else 1.0
    return math.cosh(r) * alpha + phase * math.sinh(r) * complex(alpha).conjugate()


def phase_rotor(t, dim):
    """``V(t) = exp(i t N)``; diagonal with entries ``e^{i t n}``."""
    return np.diag(np.exp(1j * t * np.arange(dim)))


def default_dim(z_abs, eps=1e-12):
    return choose_dim(z_abs, eps)


def vacuum(dim):
    return basis(dim, 0)
