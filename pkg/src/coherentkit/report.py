"""Named verification suites and their machine-readable reports."""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import dataclass, field, fields

import numpy as np

from . import __version__
from . import geometry as geo
from . import holonomy as hol
from . import path_integral as pi_
from . import quadrature as quad
from . import single_mode as sm
from . import so3
from . import su_reps as su
from . import two_mode as tm
from .errors import InvalidParameter
from .fock import coherent_tail_bound, ladder_ops
from .params import RepParams
from .special import pochhammer

SUITES = (
    "coherent-basics",
    "su11",
    "su2",
    "barut-girardello",
    "schwinger",
    "swap-clone",
    "geometry-curvature",
    "bell",
    "holonomy",
    "path-integral",
    "so3",
)
ALL = "all"


@dataclass(frozen=True)
class SuiteConfig:
    suite: str = "all"
    truncation_eps: float = 1e-12
    radial: int = 48
    angular: int = 64
    delta: float = 1e-6
    seed: int = 0
    output_path: str | None = None
    format: str = "json"
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.suite not in SUITES + (ALL,):
            raise InvalidParameter(f"unknown suite {self.suite!r}")
        if self.format not in ("json", "csv"):
            raise InvalidParameter(f"unknown format {self.format!r}")
        if not self.truncation_eps > 0:
            raise InvalidParameter("truncation_eps must be positive")
        if self.radial < 1 or self.angular < 1:
            raise InvalidParameter("grid node counts must be positive")
        if not 0 < self.delta < 1:
            raise InvalidParameter("delta must lie in (0, 1)")
        for k, v in self.tolerances.items():
            if not v > 0:
                raise InvalidParameter(f"tolerance for {k!r} must be positive")

    def echo(self):
        """Configuration fields that influence the computation."""
        out = {f.name: getattr(self, f.name) for f in fields(self) if f.name not in ("output_path", "format")}
        out["tolerances"] = dict(sorted(self.tolerances.items()))
        return out


@dataclass(frozen=True)
class Check:
    name: str
    computed: complex | float
    expected: complex | float
    abs_err: float
    tol: float
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    config: dict
    checks: tuple
    wall_time_ms: float
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class _Collector:
    def __init__(self, cfg: SuiteConfig, prefix: str):
        self.cfg = cfg
        self.prefix = prefix
        self.checks = []

    def _tol(self, name, tol):
        return self.cfg.tolerances.get(name, tol)

    def compare(self, name, computed, expected, tol):
        name = f"{self.prefix}.{name}"
        tol = self._tol(name, tol)
        err = float(abs(complex(computed) - complex(expected)))
        self.checks.append(Check(name, _scalar(computed), _scalar(expected), err, tol, bool(err <= tol)))

    def bound(self, name, value, tol):
        """Nonnegative defect that must stay at or below ``tol``."""
        self.compare(name, float(value), 0.0, tol)

    def flag(self, name, ok):
        self.compare(name, 1.0 if ok else 0.0, 1.0, 0.5)


def _scalar(x):
    x = complex(x) if np.iscomplexobj(x) or isinstance(x, complex) else float(x)
    return x


def _rand_c(rng, scale):
    r = scale * math.sqrt(rng.uniform())
    return r * complex(math.cos(t := rng.uniform(0, 2 * math.pi)), math.sin(t))


# ---------------------------------------------------------------- suites


def suite_coherent_basics(cfg, c: _Collector):
    rng = np.random.default_rng(cfg.seed)
    grid = quad.planar_grid(cfg.radial, cfg.angular)
    c.bound("resolution_defect_12", quad.resolution_defect(RepParams("coherent"), grid, 12), 1e-8)
    c.compare("tail_bound_z1_dim2", coherent_tail_bound(1.0, 2).bound, 1 - 2 * math.exp(-1), 1e-14)
    dim = 40
    c.compare("vacuum_element_D1", sm.displacement(1.0, dim)[0, 0], math.exp(-0.5), 1e-12)
    z, w = 0.3, 0.2j
    lhs = sm.displacement(z, dim) @ sm.displacement(w, dim)
    rhs = np.exp(z * np.conj(w) - np.conj(z) * w) * sm.displacement(w, dim) @ sm.displacement(z, dim)
    c.bound("weyl_commutation", np.max(np.abs((lhs - rhs)[:20, :20])), 1e-10)
    worst = 0.0
    for _ in range(20):
        z, w = _rand_c(rng, 1.0), _rand_c(rng, 1.0)
        lhs = sm.displacement(z + w, dim)
        rhs = np.exp(-0.5 * (z * np.conj(w) - np.conj(z) * w)) * sm.displacement(z, dim) @ sm.displacement(w, dim)
        worst = max(worst, float(np.max(np.abs((lhs - rhs)[:20, :20]))))
    c.bound("composition_law_20", worst, 1e-10)
    worst = 0.0
    for _ in range(20):
        z, w = _rand_c(rng, 1.5), _rand_c(rng, 1.5)
        num = np.vdot(sm.coherent_state(z, 48), sm.coherent_state(w, 48))
        worst = max(worst, abs(num - sm.overlap_closed(z, w)))
    c.bound("overlap_closed_vs_numeric", worst, 1e-10)
    z = 0.4 - 0.3j
    D = sm.displacement(z, 48)
    worst = max(abs(D[n, m] - sm.matrix_element_D(n, m, z)) for n in range(13) for m in range(13))
    c.bound("laguerre_matrix_elements", worst, 1e-9)
    t, wl = np.polynomial.laguerre.laggauss(20)
    c.compare("laguerre_orthogonality_L2_L3", np.sum(wl * sm.laguerre_assoc(2, 0, t) * sm.laguerre_assoc(3, 0, t)), 0.0, 1e-10)
    P = sm.normal_ordered_projector(0.5, 16)
    c.compare("normal_ordered_trace", np.trace(P), 1.0, 1e-9)
    c.bound("normal_ordered_idempotency", np.max(np.abs(P @ P - P)), 1e-8)
    A = np.zeros((8, 8), dtype=complex)
    A[1, 1] = 1.0
    c.compare("glauber_11", sm.glauber_reconstruct(A, quad.planar_grid(32, 32))[1, 1], 1.0, 1e-5)
    a, _, _ = ladder_ops(48)
    S = sm.squeeze(0.4, 48)
    X = S @ a @ S.conj().T
    ca, cad = sm.squeeze_adjoint_coefficients(0.4)
    c.compare("squeeze_adjoint_a", X[0, 1], ca, 1e-7)
    c.compare("squeeze_adjoint_adag", X[1, 0], cad, 1e-7)
    alpha, eps = 0.3, 0.2
    lhs = S2 = sm.squeeze(eps, 48)
    lhs = S2 @ sm.displacement(alpha, 48) @ S2.conj().T
    c.bound("squeeze_displacement_phi_2chi", np.max(np.abs((lhs - sm.displacement(math.exp(eps) * alpha, 48))[:16, :16])), 1e-7)
    fid = abs(np.vdot(sm.coherent_state(0.4 * np.exp(1j * math.pi / 3), 32), sm.phase_rotor(math.pi / 3, 32) @ sm.coherent_state(0.4, 32)))
    c.compare("phase_rotor_fidelity", fid, 1.0, 1e-10)


def _disentangling(rep, rng, scale):
    worst = 0.0
    for _ in range(20):
        p = _rand_c(rng, scale)
        worst = max(worst, float(np.max(np.abs(su.perelomov_state_exp(rep, p) - su.perelomov_state(rep, p)))))
    return worst


def _pairs(rep, rng, scale):
    ov = gen = 0.0
    closed_overlap = su.overlap_closed_su2 if isinstance(rep, su.SpinJ) else su.overlap_closed_su11
    label = rep.J if isinstance(rep, su.SpinJ) else rep.K
    for _ in range(20):
        p1, p2 = _rand_c(rng, scale), _rand_c(rng, scale)
        num = np.vdot(su.perelomov_state(rep, p1), su.perelomov_state(rep, p2))
        ov = max(ov, abs(num - closed_overlap(label, p1, p2)))
        a = su.generator_matrix_elements(rep, p1, p2)
        b = su.generator_matrix_elements_numeric(rep, p1, p2)
        gen = max(gen, max(abs(x - y) for x, y in zip(a, b)))
    return ov, gen


def suite_su11(cfg, c: _Collector):
    rng = np.random.default_rng(cfg.seed)
    for K in (1.0, 1.5):
        g = quad.disk_grid(16, cfg.angular, cfg.delta)
        c.bound(f"resolution_defect_K{K:g}", quad.resolution_defect(RepParams("su11", K), g, 8), 1e-6)
    rep = su.spin_k(1.0, 400)
    c.bound("disentangling_20", _disentangling(rep, rng, 1.0), 1e-8)
    ov, gen = _pairs(rep, rng, 1.0)
    c.bound("overlap_closed_20", ov, 1e-8)
    c.bound("generator_elements_20", gen, 1e-8)
    c.compare("kitaichi_Kplus_zeta05", su.generator_matrix_elements(rep, np.arctanh(0.5), np.arctanh(0.5))[0], 4 / 3, 1e-12)
    c.bound("supplement_identity_K075", su.supplement_identity_defect(su.spin_k(0.75, 400), 0.4), 1e-8)


def suite_su2(cfg, c: _Collector):
    rng = np.random.default_rng(cfg.seed)
    g = quad.sphere_grid(cfg.radial, cfg.angular)
    for J in (0.5, 1.0, 1.5):
        c.bound(f"resolution_defect_J{J:g}", quad.resolution_defect(RepParams("su2", J), g, int(2 * J + 1)), 1e-8)
    rep = su.spin_j(1.5)
    c.bound("disentangling_20", _disentangling(rep, rng, 1.2), 1e-8)
    ov, gen = _pairs(rep, rng, 1.2)
    c.bound("overlap_closed_20", ov, 1e-8)
    c.bound("generator_elements_20", gen, 1e-8)
    c.bound("supplement_identity_J05", su.supplement_identity_defect(su.spin_j(0.5), 0.3), 1e-10)
    c.bound("eigen_identity_J1", su.supplement_identity_defect(su.spin_j(1.0), 0.3, form="eigen"), 1e-10)


def suite_bg(cfg, c: _Collector):
    for k in (0.75, 1.0):
        g = quad.besselk_radial_grid(k, 16, angular_nodes=16)
        moments = [float(np.sum(g.weights * np.abs(g.points) ** (2 * n))) for n in range(3)]
        for n in range(3):
            c.compare(f"moment_k{k:g}_n{n}", moments[n], pochhammer(2 * k, n) * math.factorial(n), 1e-6)
        c.bound(f"resolution_defect_k{k:g}", quad.resolution_defect(RepParams("bg", k), g, 8), 1e-6)
    c.bound("eigen_defect_k1_w05", su.bg_eigen_defect(1.0, 0.5, 40), 1e-8)
    amps = su.bg_amplitudes(1.0, 0.5, 40)
    c.compare("norm_series_k1_w05", np.sum(np.abs(amps) ** 2), su.bg_norm_squared(1.0, 0.5), 1e-9)


def suite_schwinger(cfg, c: _Collector):
    dim = 12
    (kp, km, k3), (jp, jm, j3) = tm.schwinger_generators(dim)
    m = dim - 2
    c.bound("su2_brackets", np.max(np.abs(tm.interior(jp @ jm - jm @ jp - 2 * j3, dim, m))), 1e-12)
    c.bound("su11_brackets", np.max(np.abs(tm.interior(kp @ km - km @ kp + 2 * k3, dim, m))), 1e-12)
    t = 0.7 * np.exp(0.4j)
    c.bound("j_rotation_laws", max(tm.rotation_law_defects(t, 24, "su2")), 1e-8)
    c.bound("k_rotation_laws", max(tm.rotation_law_defects(0.3 * np.exp(0.4j), 36, "su11")), 1e-8)
    vac = np.zeros(24 * 24)
    vac[0] = 1
    c.bound("vacuum_invariance", np.linalg.norm(tm.u_j(0.7, 24) @ vac - vac), 1e-12)
    for w in (0.3, 0.2j):
        c.bound(f"uk_from_rotated_squeezers_{w}", tm.uk_from_rotated_squeezers(w, 32), 1e-6)
    c.bound("squeezer_commutation_condition", tm.squeezer_commutation_defect(0.3, 0.3 * np.exp(-0.5j * math.pi), 0.5 * np.exp(0.25j * math.pi)), 1e-6)
    c.flag("squeezer_commutation_violated_large", tm.squeezer_commutation_defect(0.3, 0.3, 0.5j, check_condition=False) > 1e-2)
    c.compare("su2_matrix_det", np.linalg.det(tm.su2_adjoint_matrix(t)), 1.0, 1e-12)
    c.compare("su11_matrix_det", np.linalg.det(tm.su11_adjoint_matrix(t)), 1.0, 1e-12)


def suite_swap_clone(cfg, c: _Collector):
    rng = np.random.default_rng(cfg.seed)
    worst = 1.0
    for _ in range(5):
        a1, a2 = _rand_c(rng, 0.8), _rand_c(rng, 0.8)
        worst = min(worst, tm.swap_protocol(a1, a2, 24, delta=rng.uniform(-math.pi, math.pi))[1])
    c.compare("swap_fidelity_min", worst, 1.0, 1e-6)
    out, _ = tm.imperfect_clone(0.6, math.pi / 4)
    c.bound("clone_pi4", np.max(np.abs(out - tm.clone_target(0.6, math.pi / 4))), 1e-6)
    out, _ = tm.imperfect_clone(0.6, math.pi / 2)
    c.bound("clone_pi2", np.max(np.abs(out - tm.clone_target(0.6, math.pi / 2))), 1e-6)
    U = tm.universal_swap(3)
    a, b = rng.normal(size=3) + 1j * rng.normal(size=3), rng.normal(size=3) + 1j * rng.normal(size=3)
    c.bound("universal_swap_action", np.max(np.abs(U @ np.kron(a, b) - np.kron(b, a))), 1e-14)
    c.bound("cnot_product", np.max(np.abs(tm.cnot_swap() - tm.universal_swap(2))), 1e-14)
    for eps, alpha in ((0.3, 0.5), (0.5, 0.2j)):
        res = tm.dg_discrepancy(alpha, eps, (math.pi / 4) * np.exp(-0.5j * math.pi))
        c.compare(f"squeezed_shift_corrected_eps{eps}", res.lhs_param, res.corrected_param, 1e-6)
        c.flag(f"squeezed_shift_competing_rejected_eps{eps}", res.distance_competing > 1e-2)


CHART_POINTS = {
    "coherent": (0.3 + 0.1j, 0.0, -0.8j, 1.2, 0.5 - 0.5j),
    "su11": (0.0, 0.5, 0.3j, -0.6 + 0.2j, 0.7),
    "su2": (0.0, 0.5, 1.0j, -2.0 + 1.0j, 3.0),
}
CURVATURE_LABELS = {"coherent": None, "su11": 1.0, "su2": 1.0}


def suite_geometry(cfg, c: _Collector):
    for kind, pts in CHART_POINTS.items():
        rep = RepParams(kind, CURVATURE_LABELS[kind])
        worst = max(abs(geo.curvature_scalar_numeric(rep, p) - geo.curvature_closed(rep, p)) for p in pts)
        c.bound(f"curvature_{kind}", worst, 1e-4)
        c.bound(f"normalization_consistency_{kind}", geo.normalization_consistency(rep, pts), 1e-5)
    G, P = geo.gram_and_projector(geo.StateFamily(RepParams("coherent"), (0.0, 1.0)))
    c.compare("gram_det_m2", np.linalg.det(G), 1 - math.exp(-1), 1e-12)
    c.bound("projector_axioms_m2", max(geo.projector_defects(P, 2)), 1e-9)
    c.bound("cpn_scale_invariance", np.max(np.abs(geo.cpn_projector([1, 2, -1]) - geo.cpn_projector(3j * np.array([1, 2, -1])))), 1e-12)


def suite_bell(cfg, c: _Collector):
    g = quad.sphere_grid(cfg.radial, cfg.angular)
    for J in (0.5, 1.0):
        outs = []
        for v in geo.BELL_VARIANTS:
            spec = geo.BellSpec(J, v)
            b = geo.bell_quadrature(spec, g)
            outs.append(b)
            c.bound(f"J{J:g}_{v}", np.max(np.abs(b - geo.bell_closed(spec))), 1e-6)
        if J == 0.5:
            gram = np.abs(np.array(outs).conj() @ np.array(outs).T)
            c.bound("J0.5_orthonormal", np.max(np.abs(gram - np.eye(4))), 1e-6)
        else:
            c.compare("J1_rank", np.linalg.matrix_rank(np.array(outs), tol=1e-6), 3, 0.5)
    deltas = [1e-2 / 2**j for j in range(5)]
    vals = geo.su11_bell_divergence(1.0, deltas)
    c.compare("su11_divergence_exponent", geo.growth_exponent(deltas, vals), 1.0, 0.1)


def suite_holonomy(cfg, c: _Collector):
    worst = 0.0
    anti = 0.0
    rng = np.random.default_rng(cfg.seed)
    for ra in np.linspace(0, 0.6, 5):
        for rb in np.linspace(0, 0.6, 5):
            a, b = ra * np.exp(0.7j), rb * np.exp(-1.1j)
            cc, cn = hol.connection_closed(a, b), hol.connection_numeric(a, b)
            worst = max(worst, np.max(np.abs(cc.A_alpha - cn.A_alpha)), np.max(np.abs(cc.A_beta - cn.A_beta)))
            X = cn.one_form(complex(*rng.normal(size=2)), complex(*rng.normal(size=2)))
            anti = max(anti, np.max(np.abs(X + X.conj().T)))
    c.bound("connection_grid_5x5", worst, 1e-4)
    c.bound("numeric_form_antihermitian", anti, 1e-8)
    battery = hol.standard_battery()
    unit = max(np.max(np.abs((G := hol.holonomy_of_loop(p)).conj().T @ G - np.eye(2))) for p in battery)
    c.bound("holonomy_unitarity", unit, 1e-6)
    c.compare("lie_closure_dimension", hol.irreducibility_probe(battery), 4, 0.5)


def suite_path_integral(cfg, c: _Collector):
    worst = 0.0
    for N in (2, 16, 64, 256, 1024, 4096):
        det, closed = pi_.discretized_determinant(pi_.TraceProblem(1.0, math.pi, N))
        worst = max(worst, abs(det - closed) / abs(closed))
    c.bound("det_identity_relative", worst, 1e-10)
    errs, p = pi_.determinant_convergence(1.0, math.pi)
    c.compare("convergence_exponent", p, 1.0, 0.1)
    det, _ = pi_.discretized_determinant(pi_.TraceProblem(1.0, math.pi, 4096))
    c.compare("inverse_det_N4096", 1 / det, 0.5, 4e-3)
    for label, wt in (("pi/3", math.pi / 3), ("pi/2", math.pi / 2), ("pi", math.pi)):
        spread, _ = pi_.three_route_spread(1.0, wt)
        c.bound(f"three_routes_{label}", spread, 2e-3)
    c.compare("abel_extrapolated_pi", pi_.abel_trace_extrapolated(1.0, math.pi), 0.5, 1e-3)
    r = pi_.truncated_fock_trace(1.0, math.pi, 64, 0.9, quad.planar_grid(cfg.radial, cfg.angular))
    c.compare("fock_quadrature_vs_series", r.quadrature, r.series, 1e-8)


def suite_so3(cfg, c: _Collector):
    rng = np.random.default_rng(cfg.seed)
    gs = [so3.random_su2(rng) for _ in range(51)]
    c.bound("homomorphism_right_action_50", max(so3.homomorphism_defect(a, b) for a, b in zip(gs[:-1], gs[1:])), 1e-12)
    c.bound(
        "special_orthogonal_50",
        max(max(so3.orthogonality_defect(so3.rho(g)), abs(np.linalg.det(so3.rho(g)) - 1)) for g in gs[:50]),
        1e-12,
    )
    c.bound("adjoint_crosscheck_50", max(so3.adjoint_crosscheck(g) for g in gs[:50]), 1e-12)


SUITE_FUNCS = {
    "coherent-basics": suite_coherent_basics,
    "su11": suite_su11,
    "su2": suite_su2,
    "barut-girardello": suite_bg,
    "schwinger": suite_schwinger,
    "swap-clone": suite_swap_clone,
    "geometry-curvature": suite_geometry,
    "bell": suite_bell,
    "holonomy": suite_holonomy,
    "path-integral": suite_path_integral,
    "so3": suite_so3,
}


def run_suite(config: SuiteConfig) -> VerificationReport:
    """Run the configured suite (or all of them in declaration order) and collect checks."""
    names = SUITES if config.suite == ALL else (config.suite,)
    start = time.perf_counter()
    checks = []
    for name in names:
        col = _Collector(config, name)
        SUITE_FUNCS[name](config, col)
        checks.extend(col.checks)
    elapsed = 1000.0 * (time.perf_counter() - start)
    return VerificationReport(config.suite, config.echo(), tuple(checks), elapsed)


# ---------------------------------------------------------------- serialization


def _num(x) -> str:
    if x is None or (isinstance(x, float) and not math.isfinite(x)):
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    s = format(float(x), ".17g")
    if "." not in s and "e" not in s and "n" not in s:
        s += ".0"
    return s


def _value(x):
    if isinstance(x, complex):
        return f"[{_num(x.real)}, {_num(x.imag)}]"
    return _num(x)


def _json_str(s) -> str:
    import json

    return json.dumps(s, ensure_ascii=False)


def _json_obj(d) -> str:
    parts = []
    for k, v in d.items():
        if isinstance(v, dict):
            rendered = _json_obj(v)
        elif isinstance(v, str):
            rendered = _json_str(v)
        elif v is None:
            rendered = "null"
        else:
            rendered = _value(v)
        parts.append(f"{_json_str(k)}: {rendered}")
    return "{" + ", ".join(parts) + "}"


def report_to_json(report: VerificationReport, include_wall_time=True) -> str:
    lines = ["{"]
    lines.append(f'  "suite": {_json_str(report.suite)},')
    lines.append(f'  "config": {_json_obj(report.config)},')
    if report.checks:
        lines.append('  "checks": [')
        rows = []
        for ch in report.checks:
            rows.append(
                "    {"
                f'"name": {_json_str(ch.name)}, '
                f'"computed": {_value(ch.computed)}, '
                f'"expected": {_value(ch.expected)}, '
                f'"abs_err": {_num(ch.abs_err)}, '
                f'"tol": {_num(ch.tol)}, '
                f'"pass": {_num(ch.passed)}'
                "}"
            )
        lines.append(",\n".join(rows))
        lines.append("  ],")
    else:
        lines.append('  "checks": [],')
    lines.append(f'  "passed": {_num(report.passed)},')
    if include_wall_time:
        lines.append(f'  "wall_time_ms": {_num(report.wall_time_ms)},')
    lines.append(f'  "version": {_json_str(report.version)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


CSV_HEADER = ("name", "computed_re", "computed_im", "expected_re", "expected_im", "abs_err", "tol", "pass")


def report_to_csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for ch in report.checks:
        cv, ev = complex(ch.computed), complex(ch.expected)
        w.writerow([ch.name, _num(cv.real), _num(cv.imag), _num(ev.real), _num(ev.imag), _num(ch.abs_err), _num(ch.tol), _num(ch.passed)])
    return buf.getvalue()


def emit_report(report: VerificationReport, format="json", path=None):
    """Write the report to ``path`` (or return the text when ``path`` is None)."""
    if format == "json":
        text = report_to_json(report)
    elif format == "csv":
        text = report_to_csv(report)
    else:
        raise InvalidParameter(f"unknown format {format!r}")
    if path is None:
        return text
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text
