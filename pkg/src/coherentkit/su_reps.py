"""Spin-K su(1,1) and spin-J su(2) representations and their coherent states."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameter, SingularParameter, TruncationError
from .fock import exp_antihermitian
from .special import bessel_i_scaled_series, log_pochhammer_table


@dataclass(frozen=True)
class SpinK:
    """Discrete-series su(1,1) representation truncated to ``dim`` levels.

    ``K_+ |K,n> = sqrt((n+1)(2K+n)) |K,n+1>``, ``K_3 |K,n> = (K+n) |K,n>``.
    """

    K: float
    dim: int
    k_plus: np.ndarray = field(repr=False)
    k_minus: np.ndarray = field(repr=False)
    k_3: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class SpinJ:
    """Spin-J su(2) representation on ``|J,m>``, ``m = 0..2J``, with ``J_3 |J,m> = (m-J) |J,m>``."""

    J: float
    k_plus: np.ndarray = field(repr=False)
    k_minus: np.ndarray = field(repr=False)
    k_3: np.ndarray = field(repr=False)

    @property
    def two_j(self) -> int:
        return int(round(2 * self.J))

    @property
    def dim(self) -> int:
        return self.two_j + 1

    # Readable aliases for the su(2) letters.
    @property
    def j_plus(self):
        return self.k_plus

    @property
    def j_minus(self):
        return self.k_minus

    @property
    def j_3(self):
        return self.k_3


def spin_k(K, dim) -> SpinK:
    if not K > 0:
        raise InvalidParameter(f"K must be positive, got {K!r}")
    if int(dim) != dim or dim < 2:
        raise InvalidParameter(f"dim must be an integer >= 2, got {dim!r}")
    n = np.arange(dim - 1)
    kp = np.diag(np.sqrt((n + 1) * (2 * K + n)), -1).astype(complex)
    k3 = np.diag(K + np.arange(dim, dtype=float)).astype(complex)
    return SpinK(float(K), int(dim), kp, kp.conj().T.copy(), k3)


def spin_j(J) -> SpinJ:
    two_j = 2 * J
    if not J > 0 or abs(two_j - round(two_j)) > 1e-12:
        raise InvalidParameter(f"J must be a positive half-integer, got {J!r}")
    two_j = int(round(two_j))
    m = np.arange(two_j)
    jp = np.diag(np.sqrt((m + 1) * (two_j - m)), -1).astype(complex)
    j3 = np.diag(np.arange(two_j + 1) - two_j / 2).astype(complex)
    if np.any(np.linalg.matrix_power(jp, two_j + 1)):
        raise InvalidParameter("J_+ is not nilpotent of order 2J+1")
    return SpinJ(two_j / 2, jp, jp.conj().T.copy(), j3)


def zeta_of_w(w):
    """``zeta = w tanh|w| / |w|`` with the removable singularity at 0."""
    w = complex(w)
    r = abs(w)
    if r < 1e-8:
        return w * (1.0 - r * r / 3.0)
    return w * math.tanh(r) / r


def eta_of_v(v):
    """``eta = v tan|v| / |v|`` with the removable singularity at 0."""
    v = complex(v)
    r = abs(v)
    if r < 1e-8:
        return v * (1.0 + r * r / 3.0)
    if abs(math.cos(r)) < 1e-14:
        raise SingularParameter(f"|v| = {r} is at a pole of tan")
    return v * math.tan(r) / r


def su11_coefficients(K, zeta, dim):
    """``(1 - |zeta|^2)^K sqrt((2K)_n / n!) zeta^n`` for ``n < dim``."""
    zeta = complex(zeta)
    rho = abs(zeta) ** 2
    if rho >= 1:
        raise InvalidParameter("|zeta| must be < 1")
    n = np.arange(dim)
    logc = 0.5 * (log_pochhammer_table(2 * K, dim) - np.array([math.lgamma(j + 1) for j in n]))
    if zeta == 0:
        out = np.zeros(dim, dtype=complex)
        out[0] = 1.0
        return out
    mag = np.exp(K * math.log1p(-rho) + logc + n * math.log(abs(zeta)))
    return mag * np.exp(1j * n * cmath.phase(zeta))


def su2_coefficients(J, eta):
    """``(1 + |eta|^2)^-J sqrt(C(2J, m)) eta^m`` for ``m = 0..2J``."""
    two_j = int(round(2 * J))
    eta = complex(eta)
    c = np.sqrt([math.comb(two_j, m) for m in range(two_j + 1)])
    return (1 + abs(eta) ** 2) ** (-two_j / 2) * c * eta ** np.arange(two_j + 1)


def _su11_tail(K, zeta, dim):
    """Norm mass the truncated series misses: ``1 - sum_{n<dim} |c_n|^2``."""
    c = su11_coefficients(K, zeta, dim)
    return max(0.0, 1.0 - float(np.sum(np.abs(c) ** 2)))


def perelomov_state(rep, w_or_v, tail_eps=1e-10):
    """Coherent state from the number-state series.

    For ``SpinK`` the parameter is ``w`` (mapped to ``zeta``); for ``SpinJ`` it is ``v``
    (mapped to ``eta``).
    """
    if isinstance(rep, SpinJ):
        return su2_coefficients(rep.J, eta_of_v(w_or_v))
    zeta = zeta_of_w(w_or_v)
    tail = _su11_tail(rep.K, zeta, rep.dim)
    if tail > tail_eps:
        raise TruncationError(f"su(1,1) series tail {tail:.2e} at dim={rep.dim} exceeds {tail_eps:.1e}")
    return su11_coefficients(rep.K, zeta, rep.dim)


def perelomov_state_exp(rep, w_or_v):
    """``exp(w K_+ - conj(w) K_-) |0>`` by exponentiating the truncated generator."""
    w = complex(w_or_v)
    U = exp_antihermitian(w * rep.k_plus - w.conjugate() * rep.k_minus)
    return U[:, 0].copy()


def disentangled_operator(rep, w_or_v):
    """Gauss-decomposed product ``e^{x X_+} e^{log(1 -+ |x|^2) X_3} e^{-conj(x) X_-}``.

    su(1,1): ``x = zeta`` with ``log(1 - |zeta|^2)``; su(2): ``x = eta`` with ``log(1 + |eta|^2)``.
    The exponentials of the nilpotent (truncated) raising and lowering matrices are
    evaluated by their finite power series.
    """
    if isinstance(rep, SpinJ):
        x = eta_of_v(w_or_v)
        diag_log = math.log1p(abs(x) ** 2)
    else:
        x = zeta_of_w(w_or_v)
        diag_log = math.log1p(-abs(x) ** 2)
    mid = np.diag(np.exp(diag_log * np.diag(rep.k_3).real))
    return _nilpotent_exp(x * rep.k_plus) @ mid @ _nilpotent_exp(-np.conj(x) * rep.k_minus)


def _nilpotent_exp(N):
    dim = N.shape[0]
    out = np.eye(dim, dtype=complex)
    term = np.eye(dim, dtype=complex)
    for k in range(1, dim):
        term = term @ N / k
        if not np.any(term):
            break
        out += term
    return out


def overlap_closed_su11(K, w1, w2):
    """``{(1-|z1|^2)(1-|z2|^2) / (1 - conj(z1) z2)^2}^K``.

    The power is split as ``N^K (1 - conj(z1) z2)^(-2K)`` on the principal branch;
    ``Re(1 - conj(z1) z2) > 0`` inside the disk, so the phase is continuous and
    agrees with the number-state series.
    """
    z1, z2 = zeta_of_w(w1), zeta_of_w(w2)
    norms = (1 - abs(z1) ** 2) * (1 - abs(z2) ** 2)
    return norms**K * cmath.exp(-2 * K * cmath.log(1 - z1.conjugate() * z2))


def overlap_closed_su2(J, v1, v2):
    """``{(1 + conj(e1) e2)^2 / ((1+|e1|^2)(1+|e2|^2))}^J`` with the integer power ``2J`` taken exactly."""
    e1, e2 = eta_of_v(v1), eta_of_v(v2)
    two_j = int(round(2 * J))
    norms = (1 + abs(e1) ** 2) * (1 + abs(e2) ** 2)
    return (1 + e1.conjugate() * e2) ** two_j / norms ** (two_j / 2)


def generator_matrix_elements(rep, w1, w2):
    """Closed forms ``(<1|X_+|2>, <1|X_-|2>, <1|X_- X_+|2>)`` for the family of ``rep``."""
    if isinstance(rep, SpinJ):
        J = rep.J
        e1, e2 = eta_of_v(w1), eta_of_v(w2)
        ov = overlap_closed_su2(J, w1, w2)
        d = 1 + e1.conjugate() * e2
        return (
            ov * 2 * J * e1.conjugate() / d,
            ov * 2 * J * e2 / d,
            ov * (2 * J + 4 * J * J * e1.conjugate() * e2) / d**2,
        )
    K = rep.K
    z1, z2 = zeta_of_w(w1), zeta_of_w(w2)
    ov = overlap_closed_su11(K, w1, w2)
    d = 1 - z1.conjugate() * z2
    return (
        ov * 2 * K * z1.conjugate() / d,
        ov * 2 * K * z2 / d,
        ov * (2 * K + 4 * K * K * z1.conjugate() * z2) / d**2,
    )


def generator_matrix_elements_numeric(rep, w1, w2):
    s1 = perelomov_state(rep, w1)
    s2 = perelomov_state(rep, w2)
    return (
        np.vdot(s1, rep.k_plus @ s2),
        np.vdot(s1, rep.k_minus @ s2),
        np.vdot(s1, rep.k_minus @ (rep.k_plus @ s2)),
    )


def supplement_identity_defect(rep, w_or_v, form="symmetric", block=None):
    """Residual norm of the eigen-identities satisfied by Perelomov states.

    su(1,1): ``(zeta^-1 K_- - zeta K_+)|w> = 2K|w>`` (``form="symmetric"``) or
    ``(K_- - zeta^2 K_+)|w> = 2K zeta |w>`` (``form="eigen"``).
    su(2): ``(eta^-1 J_- + eta J_+)|v> = 2J|v>`` or ``(J_- + eta^2 J_+)|v> = 2J eta |v>``.
    For the truncated su(1,1) space the residual is measured on the first ``dim - 1``
    components, since ``K_+`` pushes the top level out of the space.
    """
    x = complex(w_or_v)
    if x == 0:
        raise SingularParameter("parameter 0 makes the inverse coordinate undefined")
    state = perelomov_state(rep, x)
    if isinstance(rep, SpinJ):
        e, sign, c = eta_of_v(x), +1, 2 * rep.J
    else:
        e, sign, c = zeta_of_w(x), -1, 2 * rep.K
    if form == "symmetric":
        resid = (rep.k_minus @ state) / e + sign * e * (rep.k_plus @ state) - c * state
    elif form == "eigen":
        resid = rep.k_minus @ state + sign * e * e * (rep.k_plus @ state) - c * e * state
    else:
        raise InvalidParameter(f"unknown form {form!r}")
    if not isinstance(rep, SpinJ):
        resid = resid[: rep.dim - 1 if block is None else block]
    return float(np.linalg.norm(resid))


def bg_amplitudes(k, w, dim):
    """Unnormalized Barut-Girardello amplitudes ``w^n / sqrt(n! (2k)_n)``."""
    w = complex(w)
    n = np.arange(dim)
    logc = -0.5 * (log_pochhammer_table(2 * k, dim) + np.array([math.lgamma(j + 1) for j in n]))
    if w == 0:
        out = np.zeros(dim, dtype=complex)
        out[0] = 1.0
        return out
    return np.exp(logc + n * math.log(abs(w))) * np.exp(1j * n * cmath.phase(w))


def bg_norm_squared(k, w):
    """``Gamma(2k) |w|^(1-2k) I_{2k-1}(2|w|)`` through the power series of ``I``."""
    r = abs(complex(w))
    nu = 2 * k - 1
    # |w|^(1-2k) I_nu(2|w|) = 2^nu (2|w|)^-nu I_nu(2|w|)
    return math.gamma(2 * k) * 2.0**nu * bessel_i_scaled_series(nu, 2 * r)


def bg_state(k, w, dim, tail_eps=1e-10):
    """Normalized Barut-Girardello state, the eigenvector of ``K_-`` with eigenvalue ``w``."""
    if not k > 0:
        raise InvalidParameter(f"k must be positive, got {k!r}")
    amps = bg_amplitudes(k, w, dim)
    norm2 = bg_norm_squared(k, w)
    tail = 1.0 - float(np.sum(np.abs(amps) ** 2)) / norm2
    if tail > tail_eps:
        raise TruncationError(f"Barut-Girardello tail {tail:.2e} at dim={dim} exceeds {tail_eps:.1e}")
    return amps / math.sqrt(norm2)


def bg_eigen_defect(k, w, dim):
    rep = spin_k(k, dim)
    state = bg_state(k, w, dim)
    resid = rep.k_minus @ state - complex(w) * state
    return float(np.linalg.norm(resid[: dim - 1]))
