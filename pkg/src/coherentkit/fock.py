"""Truncated Fock-space linear algebra.

Operators are plain ``numpy`` complex arrays of shape ``(dim, dim)`` in the
number basis ``|0>, ..., |dim-1>``; states are complex vectors of length ``dim``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, InvalidDimension, TruncationError

MIN_DIM = 16
MAX_DIM = 256


def _check_dim(dim) -> int:
    if isinstance(dim, bool) or int(dim) != dim or dim < 1:
        raise InvalidDimension(f"dimension must be a positive integer, got {dim!r}")
    return int(dim)


def ladder_ops(dim):
    """Return ``(a, a_dagger, number)`` on the ``dim``-dimensional truncated space.

    ``a[n-1, n] = sqrt(n)``. The commutator ``[a, a_dagger]`` equals the identity
    except in the last row and column, where truncation removes ``|dim>``.
    """
    dim = _check_dim(dim)
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)
    adag = a.conj().T.copy()
    number = np.diag(np.arange(dim, dtype=float)).astype(complex)
    return a, adag, number


def annihilation(dim):
    return ladder_ops(dim)[0]


def creation(dim):
    return ladder_ops(dim)[1]


def max_abs(x) -> float:
    x = np.asarray(x)
    return float(np.max(np.abs(x))) if x.size else 0.0


def exp_antihermitian(X, rtol=1e-12):
    """Exponentiate an anti-Hermitian matrix through the eigendecomposition of ``iX``.

    ``iX = V diag(lam) V^dagger`` with real ``lam``, hence ``exp(X) = V diag(exp(-i lam)) V^dagger``,
    which is unitary up to eigensolver roundoff.
    """
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ContractViolation(f"expected a square matrix, got shape {X.shape}")
    scale = max_abs(X)
    if scale == 0.0:
        return np.eye(X.shape[0], dtype=complex)
    defect = max_abs(X + X.conj().T)
    if defect > rtol * scale:
        raise ContractViolation(
            f"matrix is not anti-Hermitian: ||X + X^dagger||_max = {defect:.3e} "
            f"exceeds {rtol:.1e} * ||X||_max = {rtol * scale:.3e}"
        )
    H = 1j * X
    H = 0.5 * (H + H.conj().T)
    lam, V = np.linalg.eigh(H)
    return (V * np.exp(-1j * lam)) @ V.conj().T


@dataclass(frozen=True)
class TailBound:
    """Poisson mass beyond the truncation: ``sum_{n >= dim} exp(-x) x^n / n!`` with ``x = |z|^2``."""

    parameter_magnitude: float
    dim: int
    bound: float


def coherent_tail_bound(z_abs, dim) -> TailBound:
    dim = _check_dim(dim)
    z_abs = float(z_abs)
    if z_abs < 0:
        raise ContractViolation("z_abs must be nonnegative")
    x = z_abs * z_abs
    if x == 0.0:
        return TailBound(z_abs, dim, 0.0)
    # Sum upward from n = dim in log space; terms decay once n exceeds x.
    log_x = math.log(x)
    n = dim
    log_term = -x + n * log_x - math.lgamma(n + 1)
    total = 0.0
    while True:
        term = math.exp(log_term)
        total += term
        if n > x and (term <= 1e-18 * total or term < 1e-300):
            break
        n += 1
        log_term += log_x - math.log(n)
    return TailBound(z_abs, dim, min(total, 1.0))


def choose_dim(z_abs, eps=1e-12, lo=MIN_DIM, hi=MAX_DIM) -> int:
    """Smallest ``dim`` in ``[lo, hi]`` whose coherent tail is below ``eps``."""
    for dim in range(lo, hi + 1):
        if coherent_tail_bound(z_abs, dim).bound < eps:
            return dim
    return hi


def require_tail(z_abs, dim, eps):
    tail = coherent_tail_bound(z_abs, dim)
    if tail.bound >= eps:
        suggested = choose_dim(z_abs, eps, lo=dim, hi=max(MAX_DIM, dim))
        raise TruncationError(
            f"coherent tail {tail.bound:.3e} at |z|={z_abs:.4g}, dim={dim} exceeds {eps:.1e}; "
            f"try dim={suggested}",
            suggested_dim=suggested,
        )
    return tail


def commutator(A, B):
    return A @ B - B @ A


def basis(dim, n):
    v = np.zeros(_check_dim(dim), dtype=complex)
    v[n] = 1.0
    return v


def exp_antihermitian_blocks(X, rtol=1e-12):
    """``exp_antihermitian`` applied to each decoupled block of ``X``.

    Generators that conserve a quantum number (total or relative excitation number
    for two-mode operators) are block diagonal after a permutation; exponentiating
    the blocks separately gives the same matrix at a fraction of the cost.
    """
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components

    X = np.asarray(X, dtype=complex)
    n_comp, labels = connected_components(csr_matrix(np.abs(X) > 0), directed=False)
    out = np.zeros_like(X)
    for c in range(n_comp):
        idx = np.flatnonzero(labels == c)
        out[np.ix_(idx, idx)] = exp_antihermitian(X[np.ix_(idx, idx)], rtol=rtol)
    return out
