"""Lemma checks: oscillatory integrals, local expansions and coefficient bounds."""

import math

import pytest

from src.checks.base import LabTables
from src.checks.cgg_integral import cgg_main_term
from src.checks.chi_asym import chi_relative_error
from src.checks.dirichlet import dirichlet_consistency
from src.checks.sp_integral import indicator, stationary_main_term
from src.complex_eval import EvalPoint
from src.diagnostics import CheckId, DiagnosticSpec
from src.errors import DomainError, ZeroProximity
from src.lemma_lab import (
    CHECKS,
    bound_ratio_scan,
    cgg_integral_check,
    default_grid,
    mv_local_check,
    run_grid,
    sp_integral_check,
)

TWO_PI = 2 * math.pi


def test_indicator():
    assert indicator(100, 500, 300) == 1
    assert indicator(100, 500, 500) == 1
    assert indicator(100, 500, 100) == 0
    assert indicator(100, 500, 2000) == 0


def test_stationary_main_term_vanishes_outside():
    assert stationary_main_term(100, 500, 0.5, 2000, 1) == 0
    main = stationary_main_term(100, 500, 0.5, 300, 0)
    assert abs(main) == pytest.approx(math.sqrt(TWO_PI * 300))


def test_cgg_main_term_for_j_zero_has_unit_modulus():
    assert abs(cgg_main_term(200, 350, 1, 275 / TWO_PI, 0)) == pytest.approx(1.0)
    assert cgg_main_term(200, 350, 1, 1000 / TWO_PI, 0) == 0


@pytest.mark.parametrize("a,b,sigma,u,m", [
    (100, 500, 0.5, 300, 0),
    (100, 500, 0.5, 2000, 1),
    (100, 500, 0.5, 300, 1),
    (100, 500, 0.25, 250, 0),
    (100, 500, 0.75, 350, 0),
    (200, 1000, 1.0, 600, 0),
    (200, 1000, 1.5, 600, 1),
    (1000, 3000, 0.5, 2000, 0),
    (1000, 3000, 2.0, 50000, 0),
    (50, 400, 0.1, 5, 0),
])
def test_sp_integral_within_envelope(a, b, sigma, u, m):
    report = sp_integral_check(a, b, sigma, u, m)
    assert report.check_id == CheckId.SP_INTEGRAL
    assert report.ratio <= 5
    assert report.passed


@pytest.mark.parametrize("v", [275 / TWO_PI, 1000 / TWO_PI])
@pytest.mark.parametrize("j", [-1, 0, 1])
def test_cgg_integral_within_envelope(v, j):
    report = cgg_integral_check(1.0, 200, 350, 1.0, v, j)
    assert report.ratio <= 5
    assert report.passed


def test_mv_local_with_supplied_zeros(zeros_10_100):
    report = mv_local_check(2.0, 50.0, zeros_10_100)
    assert report.predicted_bound == pytest.approx(math.log(50))
    assert report.passed


def test_mv_local_in_the_strip(zeros_10_100):
    report = mv_local_check(0.5, 23.0, zeros_10_100)
    assert report.ratio <= 5


def test_mv_local_near_a_zero(zeros_10_100):
    with pytest.raises(ZeroProximity):
        mv_local_check(0.5, zeros_10_100.zeros[0].gamma + 0.01, zeros_10_100)


@pytest.mark.parametrize("sigma,t", [(0.5, 1e4), (0.0, 1e2), (-1.0, 1e3), (2.0, 1e3)])
def test_chi_asymptotic_error_leading_coefficient(sigma, t):
    expected = abs(sigma * (1 - sigma) / 2 - 1 / 12)
    assert t * chi_relative_error(sigma, t) == pytest.approx(expected, rel=0.05)
    report = bound_ratio_scan(DiagnosticSpec(CheckId.CHI_ASYM, {"sigma": sigma, "t": t}))
    assert report.passed


def test_series_bound_at_101():
    report = bound_ratio_scan(DiagnosticSpec(CheckId.SERIES_BOUND, {"x": 101, "y": 1}))
    assert report.predicted_bound == pytest.approx(math.log(101) ** 2)
    assert report.ratio <= 5


def test_technical_bound():
    report = bound_ratio_scan(DiagnosticSpec(CheckId.TECHNICAL_BOUND, {"x": 100, "t": 1e4}))
    assert report.ratio <= 5


def test_summation_bound():
    report = bound_ratio_scan(DiagnosticSpec(CheckId.SUMMATION_BOUND, {"t": 1e4, "t_prime": 9000, "y": 1}))
    assert report.passed
    assert "terms=1000" in report.details


def test_dirichlet_consistency_single_term():
    report = dirichlet_consistency(EvalPoint(2.0, 0.0), 0.0, 1)
    assert report.observed == pytest.approx(0.9375482543, abs=1e-5)
    assert report.passed


def test_dirichlet_consistency_long_series():
    report = dirichlet_consistency(EvalPoint(2.0, 0.0), 0.0, 10 ** 5)
    assert report.ratio <= 1.0
    assert report.passed


def test_dirichlet_consistency_with_twist():
    report = dirichlet_consistency(EvalPoint(2.0, 5.0), 1.0, 10 ** 4)
    assert report.passed


def test_lindelof_scan_is_informational():
    report = bound_ratio_scan(DiagnosticSpec(CheckId.LINDELOF_SCAN, {"t_lo": 10, "t_hi": 100, "samples": 8}))
    assert report.passed
    assert report.observed >= 0
    assert "empirical_lambda" in report.details


@pytest.mark.parametrize("check_id,params", [
    (CheckId.SP_INTEGRAL, {"a": 5, "b": 20, "sigma": 0.5, "u": 10, "m": 0}),
    (CheckId.SP_INTEGRAL, {"a": 100, "b": 500, "sigma": 0.5, "u": 300, "m": 2}),
    (CheckId.CGG_INTEGRAL, {"c": 1, "T1": 200, "T2": 350, "y": 1, "v": 40, "j": 2}),
    (CheckId.CGG_INTEGRAL, {"c": 1, "T1": 200, "T2": 450, "y": 1, "v": 40, "j": 0}),
    (CheckId.MV_LOCAL, {"sigma": 3, "t": 50}),
    (CheckId.CHI_ASYM, {"sigma": 0.5, "t": 5}),
    (CheckId.LINDELOF_SCAN, {"t_lo": 10, "t_hi": 100, "samples": 1}),
    (CheckId.SERIES_BOUND, {"x": 5, "y": 1}),
    (CheckId.TECHNICAL_BOUND, {"x": 100, "t": 500}),
    (CheckId.SUMMATION_BOUND, {"t": 1e4, "t_prime": 9000, "y": 0}),
    (CheckId.DIRICHLET_CONSISTENCY, {"sigma": 1.2, "t": 0, "y": 0, "N": 10}),
])
def test_preconditions(check_id, params):
    with pytest.raises(DomainError):
        bound_ratio_scan(DiagnosticSpec(check_id, params))


def test_spec_requires_parameters():
    with pytest.raises(ValueError):
        DiagnosticSpec(CheckId.SERIES_BOUND, {"x": 101})
    assert DiagnosticSpec("chi_asym", {"sigma": 0.5, "t": 100}).check_id == CheckId.CHI_ASYM


def test_every_check_is_registered():
    assert set(CHECKS) == set(CheckId)
    assert {spec.check_id for spec in default_grid()} == set(CheckId)


def test_run_grid_keeps_order():
    specs = [DiagnosticSpec(CheckId.CHI_ASYM, {"sigma": s, "t": 100}) for s in (-1.0, 0.0, 0.5, 1.0, 2.0)]
    reports = run_grid(specs, threads=3)
    assert [r.params["sigma"] for r in reports] == [-1.0, 0.0, 0.5, 1.0, 2.0]


def test_lab_tables_reuse_larger_sieve():
    tables = LabTables()
    big = tables.von_mangoldt(1000)
    assert tables.von_mangoldt(500) is big
    assert tables.coefficients(1.0, 100) is tables.coefficients(1.0, 100)


def test_lab_tables_use_zero_provider(zeros_10_100):
    calls = []

    def provider(lo, hi):
        calls.append((lo, hi))
        return zeros_10_100

    report = bound_ratio_scan(DiagnosticSpec(CheckId.MV_LOCAL, {"sigma": 0.5, "t": 23.0}),
                              tables=LabTables(zero_provider=provider))
    assert calls == [(21.0, 25.0)]
    assert report.ratio <= 5


@pytest.mark.parametrize("sigma,t,y,N", [(1.25, 0.0, 0.0, 10 ** 4), (1.25, 20.0, 1.0, 10 ** 4), (1.5, 10.0, 1.0, 10 ** 5)])
def test_dirichlet_consistency_from_the_boundary_abscissa(sigma, t, y, N):
    report = dirichlet_consistency(EvalPoint(sigma, t), y, N)
    assert report.ratio <= 1.0
    assert report.passed
