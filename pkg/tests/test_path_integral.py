import math

import numpy as np
import pytest

from coherentkit.errors import InvalidParameter, PoleError
from coherentkit.path_integral import (
    TraceProblem,
    abel_trace_closed,
    abel_trace_extrapolated,
    abel_trace_series,
    cyclic_matrix,
    determinant_convergence,
    discretized_determinant,
    fock_trace_extrapolated,
    lu_determinant,
    richardson_to_one,
    three_route_spread,
    truncated_fock_trace,
)
from coherentkit.quadrature import planar_grid


def test_closed_trace():
    assert abel_trace_closed(1.0, math.pi) == pytest.approx(0.5)
    assert abel_trace_closed(1.0, math.pi / 2) == pytest.approx((1 - 1j) / 2)
    with pytest.raises(PoleError):
        abel_trace_closed(1.0, 2 * math.pi)


def test_abel_series_and_extrapolation():
    assert abel_trace_series(1.0, math.pi, 0.99, 10_000) == pytest.approx(1 / 1.99, abs=1e-10)
    assert abel_trace_extrapolated(1.0, math.pi) == pytest.approx(0.5, abs=1e-3)
    assert abel_trace_extrapolated(1.0, math.pi / 2) == pytest.approx((1 - 1j) / 2, abs=1e-3)


def test_richardson_exact_on_polynomials():
    h = np.array([0.1, 0.01, 0.001])
    vals = 3.0 + 2 * h - 5 * h**2
    assert richardson_to_one(1 - h, vals) == pytest.approx(3.0, abs=1e-12)


def test_damping_validation():
    with pytest.raises(InvalidParameter):
        abel_trace_series(1.0, 1.0, 1.0, 10)


def test_small_determinant():
    # omega*dt = 1 at N = 2 gives det = 1 - (1 - i)^2 = 1 + 2i
    det, closed = discretized_determinant(TraceProblem(1.0, 2.0, N=2))
    assert det == pytest.approx(1 + 2j, abs=1e-14)
    assert closed == pytest.approx(1 + 2j, abs=1e-14)


def test_lu_determinant_matches_dense():
    A = cyclic_matrix(TraceProblem(0.7, 1.9, N=12))
    assert lu_determinant(A) == pytest.approx(np.linalg.det(A.toarray()), rel=1e-12)


@pytest.mark.parametrize("N", [64, 512, 4096])
def test_det_identity(N):
    det, closed = discretized_determinant(TraceProblem(1.0, math.pi, N))
    assert abs(det - closed) / abs(closed) < 1e-10


def test_inverse_det_limit():
    det64, _ = discretized_determinant(TraceProblem(1.0, math.pi, 64))
    assert abs(1 / det64 - 0.5) < 0.05
    det1k, _ = discretized_determinant(TraceProblem(1.0, math.pi, 1024))
    assert abs(1 / det1k - 0.5) < 0.004


def test_first_order_convergence():
    _, p = determinant_convergence(1.0, math.pi)
    assert p == pytest.approx(1.0, abs=0.1)


def test_fock_trace():
    r = truncated_fock_trace(1.0, math.pi, 64, 0.5)
    assert r.series == pytest.approx(2 / 3, abs=1e-10)
    r = truncated_fock_trace(1.0, math.pi, 64, 0.9, planar_grid(48, 64))
    assert abs(r.quadrature - r.series) < 1e-8
    assert fock_trace_extrapolated(1.0, math.pi) == pytest.approx(0.5, abs=1e-3)


@pytest.mark.parametrize("wt", [math.pi / 3, math.pi / 2, math.pi])
def test_three_routes(wt):
    spread, _ = three_route_spread(1.0, wt)
    assert spread < 2e-3
