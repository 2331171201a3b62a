"""Zeta, Hardy Z, theta, chi and log-derivative evaluation against mpmath."""

import math

import mpmath
import pytest

from src.complex_eval import (
    EvalPoint,
    Method,
    abscissae,
    chi,
    chi_asymptotic,
    digamma,
    hardy_z,
    logderiv_zeta,
    rs_theta,
    theta,
    zeta,
    zeta_prime,
)
from src.config import EvalConfig
from src.errors import (
    AccuracyUnreachable,
    DomainError,
    MissingZeroCoverage,
    OverflowGuard,
    PoleProximity,
    ZeroProximity,
)

GAMMA_1 = 14.134725141734693


def _close(value: complex, reference: complex, target: float = 1e-6) -> bool:
    return abs(value - reference) <= 2 * target * max(1.0, abs(reference))


def test_zeta_at_one_half(cfg):
    fv = zeta(EvalPoint(0.5, 0.0), cfg)
    assert abs(fv.value - (-1.4603545088095868)) < 1e-6
    assert fv.abs_error_estimate <= cfg.target_abs_error


def test_zeta_at_two(cfg):
    assert _close(zeta(EvalPoint(2.0, 0.0), cfg).value, math.pi ** 2 / 6)


@pytest.mark.parametrize("sigma,t", [
    (0.5, 14.0), (0.5, 100.0), (2.0, 10.0), (0.3, 1000.0), (-1.5, 20.0), (0.75, -40.0), (3.0, 0.5),
])
def test_zeta_matches_mpmath(cfg, sigma, t):
    reference = complex(mpmath.zeta(mpmath.mpc(sigma, t)))
    assert _close(zeta(EvalPoint(sigma, t), cfg).value, reference)


def test_zeta_uses_riemann_siegel_high_on_critical_line(cfg):
    fv = zeta(EvalPoint(0.5, 1000.0), cfg)
    assert fv.method_used == Method.RIEMANN_SIEGEL
    assert _close(fv.value, complex(mpmath.zeta(mpmath.mpc(0.5, 1000.0))))


def test_zeta_reflection_branch(cfg):
    fv = zeta(EvalPoint(-2.5, 30.0), cfg)
    assert fv.method_used == Method.REFLECTION


def test_trivial_zeros_are_exact(cfg):
    assert zeta(EvalPoint(-2.0, 0.0), cfg).value == 0
    assert zeta(EvalPoint(-6.0, 0.0), cfg).value == 0


def test_zeta_conjugate_symmetry(cfg):
    up = zeta(EvalPoint(0.6, 25.0), cfg).value
    down = zeta(EvalPoint(0.6, -25.0), cfg).value
    assert down == pytest.approx(up.conjugate(), abs=1e-12)


def test_zeta_pole(cfg):
    with pytest.raises(PoleProximity):
        zeta(EvalPoint(1.0, 0.0), cfg)
    with pytest.raises(PoleProximity):
        zeta(EvalPoint(1.0 + 1e-7, 0.0), cfg)


def test_zeta_overflow_guard(cfg):
    with pytest.raises(OverflowGuard):
        zeta(EvalPoint(0.5, 2e7), cfg)


def test_unreachable_accuracy():
    strict = EvalConfig(em_terms=30, em_bernoulli_order=1, target_abs_error=1e-15)
    with pytest.raises(AccuracyUnreachable):
        zeta(EvalPoint(0.5, 5.0), strict)


def test_eval_point_must_be_finite():
    with pytest.raises(DomainError):
        EvalPoint(float("nan"), 1.0)


def test_hardy_z_is_real_and_vanishes_at_first_zero(cfg):
    fv = hardy_z(GAMMA_1, cfg)
    assert fv.value.imag == 0
    assert abs(fv.value.real) < 1e-6


@pytest.mark.parametrize("t", [20.0, 77.7, 250.0, 5000.0])
def test_hardy_z_matches_mpmath(cfg, t):
    assert _close(hardy_z(t, cfg).value.real, float(mpmath.siegelz(t)))


def test_hardy_z_rejects_negative_height(cfg):
    with pytest.raises(DomainError):
        hardy_z(-1.0, cfg)


@pytest.mark.parametrize("t", [3.0, 10.0, 17.8455995, 1000.0])
def test_theta_matches_mpmath(t):
    assert theta(t) == pytest.approx(float(mpmath.siegeltheta(t)), abs=1e-9)


def test_rs_theta_domain():
    with pytest.raises(DomainError):
        rs_theta(9.0)
    assert rs_theta(100.0) == pytest.approx(float(mpmath.siegeltheta(100)), abs=1e-10)


def test_chi_at_two():
    assert chi(EvalPoint(2.0, 0.0)).chi_value == pytest.approx(-2 * math.pi ** 2, rel=1e-12)


def test_chi_satisfies_functional_equation(cfg):
    p = EvalPoint(0.3, 40.0)
    lhs = zeta(p, cfg).value
    rhs = chi(p).chi_value * zeta(EvalPoint(0.7, -40.0), cfg).value
    assert _close(lhs, rhs)


def test_chi_poles():
    with pytest.raises(PoleProximity):
        chi(EvalPoint(1.0, 0.0))
    with pytest.raises(PoleProximity):
        chi(EvalPoint(3.0, 0.0))


def test_chi_modulus_on_critical_line():
    assert abs(chi(EvalPoint(0.5, 123.0)).chi_value) == pytest.approx(1.0, abs=1e-12)


def test_chi_asymptotic_relative_error_shrinks_like_one_over_t():
    for t in (1e2, 1e3, 1e4):
        exact = chi(EvalPoint(0.25, t)).chi_value
        approx = chi_asymptotic(0.75, t)
        assert t * abs(exact / approx - 1) < 1.0


def test_digamma():
    assert digamma(EvalPoint(10.0, 0.0)) == pytest.approx(complex(mpmath.digamma(10)), abs=1e-12)
    with pytest.raises(PoleProximity):
        digamma(EvalPoint(0.0, 0.0))
    with pytest.raises(PoleProximity):
        digamma(EvalPoint(-3.0, 0.0))


@pytest.mark.parametrize("sigma,t", [(0.5, 20.0), (-1.0, 10.0), (2.0, 3.0)])
def test_zeta_prime_matches_mpmath(cfg, sigma, t):
    reference = complex(mpmath.zeta(mpmath.mpc(sigma, t), derivative=1))
    assert _close(zeta_prime(EvalPoint(sigma, t), cfg).value, reference)


def test_logderiv_dirichlet_branch(cfg):
    fv = logderiv_zeta(EvalPoint(3.0, 0.0), None, cfg)
    reference = float(mpmath.zeta(3, derivative=1) / mpmath.zeta(3))
    assert fv.method_used == Method.DIRICHLET_SERIES
    assert fv.value.real == pytest.approx(reference, abs=2e-6)


def test_logderiv_in_strip_needs_zeros(cfg):
    with pytest.raises(MissingZeroCoverage):
        logderiv_zeta(EvalPoint(0.6, GAMMA_1 + 0.5), None, cfg)


def test_logderiv_in_strip_matches_mpmath(cfg, zeros_10_100):
    s = mpmath.mpc(0.6, GAMMA_1 + 0.5)
    reference = complex(mpmath.zeta(s, derivative=1) / mpmath.zeta(s))
    fv = logderiv_zeta(EvalPoint(0.6, GAMMA_1 + 0.5), zeros_10_100, cfg)
    assert _close(fv.value, reference)


def test_logderiv_local_zero_expansion(cfg, zeros_10_100):
    t = GAMMA_1 + 0.5
    s = complex(0.6, t)
    local = sum(1 / (s - z.rho) for z in zeros_10_100.between(t - 1, t + 1))
    fv = logderiv_zeta(EvalPoint(0.6, t), zeros_10_100, cfg)
    assert abs(fv.value - local) <= 2 * math.log(t)


def test_logderiv_reflection_branch(cfg, zeros_10_100):
    s = mpmath.mpc(-0.5, 30.0)
    reference = complex(mpmath.zeta(s, derivative=1) / mpmath.zeta(s))
    fv = logderiv_zeta(EvalPoint(-0.5, 30.0), zeros_10_100, cfg)
    assert fv.method_used == Method.REFLECTION
    assert _close(fv.value, reference)


def test_logderiv_at_a_zero(cfg, zeros_10_100):
    with pytest.raises(ZeroProximity) as info:
        logderiv_zeta(EvalPoint(0.5, zeros_10_100.zeros[0].gamma), zeros_10_100, cfg)
    assert info.value.gamma == zeros_10_100.zeros[0].gamma


def test_abscissae():
    values = abscissae(1e4, 101)
    assert values["b"] == pytest.approx(0.5 - 1 / math.log(math.log(1e4)))
    assert values["b_prime"] == pytest.approx(1 - values["b"])
    assert values["c"] == pytest.approx(1 + 1 / math.log(101))
    assert EvalPoint.on_c(101, 5.0).sigma == pytest.approx(values["c"])
    with pytest.raises(DomainError):
        abscissae(2.0, 101)


LOW_HEIGHTS = [10.0, 10.5, 11.25, 12.0, 13.0, 14.0, 15.5, 16.0, 17.0, 17.8, 18.5, 19.25, 20.0]


@pytest.mark.parametrize("t", LOW_HEIGHTS)
def test_theta_is_odd_and_negative_below_its_first_root(t):
    reference = float(mpmath.siegeltheta(t))
    assert theta(t) == pytest.approx(reference, abs=1e-9)
    assert theta(-t) == pytest.approx(-reference, abs=1e-9)
    if t < 17.8:
        assert theta(t) < 0


@pytest.mark.parametrize("t", LOW_HEIGHTS)
def test_hardy_z_at_low_height(cfg, t):
    assert _close(hardy_z(t, cfg).value.real, float(mpmath.siegelz(t)))


@pytest.mark.parametrize("sigma", [-2.0, -0.5, 0.3, 0.5, 1.7, 3.0])
@pytest.mark.parametrize("t", [10.0, 123.4, 1000.0, 7777.7])
def test_functional_equation_grid(cfg, sigma, t):
    p = EvalPoint(sigma, t)
    left = zeta(p, cfg)
    right = zeta(EvalPoint(1 - sigma, -t), cfg)
    factor = chi(p).chi_value
    gap = abs(left.value - factor * right.value)
    allowed = 10 * (left.abs_error_estimate + abs(factor) * right.abs_error_estimate)
    assert gap <= allowed + 1e-9 * max(1.0, abs(left.value))


@pytest.mark.parametrize("sigma,t", [
    (0.2, 23.0), (0.7, 23.0), (0.2, 41.5), (0.8, 74.0), (2.0, 30.0), (-0.8, 60.0),
])
def test_logderiv_functional_equation_grid(cfg, zeros_10_100, sigma, t):
    s = complex(sigma, t)
    forward = logderiv_zeta(EvalPoint(sigma, t), zeros_10_100, cfg).value
    backward = logderiv_zeta(EvalPoint(1 - sigma, -t), zeros_10_100, cfg).value
    half = complex(mpmath.digamma(s / 2) + mpmath.digamma((1 - s) / 2)) / 2
    assert abs(forward + backward - math.log(math.pi) + half) < 1e-4


def test_logderiv_with_zeros_within_distance_two(cfg, zeros_10_100):
    t = 50.0
    nearby = [z for z in zeros_10_100 if abs(z.gamma - t) <= 2]
    assert min(z.gamma for z in nearby) > t - 2
    assert max(z.gamma for z in nearby) < t + 2
    s = mpmath.mpc(0.8, t)
    reference = complex(mpmath.zeta(s, derivative=1) / mpmath.zeta(s))
    assert _close(logderiv_zeta(EvalPoint(0.8, t), nearby, cfg).value, reference)


def test_logderiv_rejects_a_table_short_of_the_window(cfg, zeros_10_100):
    with pytest.raises(MissingZeroCoverage):
        logderiv_zeta(EvalPoint(0.8, 99.0), zeros_10_100, cfg)


def test_points_on_the_distinguished_lines():
    values = abscissae(1e4, 2)
    assert EvalPoint.on_b(1e4, 50.0) == EvalPoint(values["b"], 50.0)
    assert EvalPoint.on_b_prime(1e4, 50.0).sigma == pytest.approx(1 - values["b"])
    assert EvalPoint.on_b(1e4, 50.0).sigma < 0.5 < EvalPoint.on_b_prime(1e4, 50.0).sigma
    with pytest.raises(DomainError):
        EvalPoint.on_b(math.e, 50.0)
    with pytest.raises(DomainError):
        EvalPoint.on_b_prime(2.0, 50.0)
