"""Shifted zero sums, the witness search and the residual sweep."""

import math

import mpmath
import pytest

from src.errors import DomainError, EmptyWindow, IncompleteZeroTable
from src.prime_window import is_prime
from src.zero_locator import count_zeros_rvm, find_zeros
from src.zero_sum import (
    ExperimentSpec,
    ZeroSumExperiment,
    epsilon_for,
    main_term,
    main_term_dominates,
    n0y_count,
    normalizer,
    pairwise_sum,
    residual_sweep,
    theorem1_spec,
    theorem1_witness,
    zero_sum,
)
from src.zero_table import ZeroTable


@pytest.fixture(scope="module")
def report(cfg, zeros_10_100):
    spec = ExperimentSpec(T1=50.0, T2=90.0, y=1.0, x=101, Theta=1.0)
    return zero_sum(spec, zeros_10_100, cfg, keep_breakdown=True)


def test_spec_validation():
    with pytest.raises(DomainError):
        ExperimentSpec(T1=2.0, T2=3.0, y=1.0, x=101)
    with pytest.raises(DomainError):
        ExperimentSpec(T1=100.0, T2=150.0, y=0.0, x=101)
    with pytest.raises(DomainError):
        ExperimentSpec(T1=100.0, T2=150.0, y=1.0, x=100)
    with pytest.raises(DomainError):
        ExperimentSpec(T1=100.0, T2=250.0, y=1.0, x=101)
    with pytest.raises(DomainError):
        ExperimentSpec(T1=100.0, T2=150.0, y=1.0, x=101, Theta=0.0)


def test_spec_advisories():
    relaxed = ExperimentSpec(T1=100.0, T2=250.0, y=1.0, x=101, strict=False)
    assert any(note.startswith("relaxed") for note in relaxed.advisories)

    low_theta = ExperimentSpec(T1=100.0, T2=150.0, y=1.0, x=101, Theta=1.0)
    assert "Theta=1.0 is below 2" in low_theta.advisories

    quiet = ExperimentSpec(T1=100.0, T2=150.0, y=1.0, x=101, A=0.5, Theta=3.0)
    assert quiet.advisories == ()


def test_spec_derived_values():
    spec = ExperimentSpec(T1=100.0, T2=150.0, y=1.0, x=101)
    assert spec.Delta == 50.0
    assert spec.T_bold == 125.0
    assert spec.epsilon == pytest.approx(epsilon_for(100.0, 1.0))
    assert spec.to_dict()["strict"] is True


def test_epsilon():
    assert epsilon_for(100.0, 1.0) == pytest.approx(0.0490, abs=1e-4)


def test_theorem1_spec_window():
    spec = theorem1_spec(1000.0, 1.0, 1.0, x=101)
    assert spec.A == 2.0
    assert spec.T2 == pytest.approx(1000.0 * (1 + epsilon_for(1000.0, 1.0)))


def test_main_term_modulus():
    M = main_term(101, 1.0, 50.0, 90.0)
    dev = 2 * abs(math.sin(math.log(101) / 2))
    assert abs(M) == pytest.approx(dev * 40 * math.log(70) / (2 * math.pi))
    with pytest.raises(DomainError):
        main_term(101, 1.0, 90.0, 50.0)


def test_pairwise_sum():
    assert pairwise_sum([]) == 0
    assert pairwise_sum([1, 2, 3, 4, 5]) == 15
    assert pairwise_sum([1j]) == 1j


def test_zero_sum_matches_direct_evaluation(report, zeros_10_100):
    gammas = [z.gamma for z in zeros_10_100.between(50.0, 90.0)]
    reference = sum(
        complex(mpmath.power(101, mpmath.mpc(0.5, g)) * mpmath.zeta(mpmath.mpc(0.5, g + 1.0)))
        for g in gammas
    )
    assert report.zero_count == len(gammas) == 15
    assert report.S == pytest.approx(reference, abs=1e-3)
    assert report.residual == pytest.approx(report.S - report.M)
    assert report.ratio == pytest.approx(report.residual_abs / normalizer(report.spec))
    assert [g for g, _ in report.per_zero_breakdown] == gammas
    assert report.error is None


def test_zero_sum_is_thread_invariant(cfg, zeros_10_100, report):
    threaded = zero_sum(report.spec, zeros_10_100, cfg, threads=4)
    assert threaded.S == report.S


def test_zero_sum_needs_complete_coverage(cfg, zeros_10_100):
    spec = ExperimentSpec(T1=90.0, T2=120.0, y=1.0, x=101)
    with pytest.raises(IncompleteZeroTable):
        zero_sum(spec, zeros_10_100, cfg)


def test_zero_sum_needs_x(cfg, zeros_10_100):
    spec = ExperimentSpec(T1=50.0, T2=90.0, y=1.0, x=None)
    with pytest.raises(DomainError):
        zero_sum(spec, zeros_10_100, cfg)


def test_endpoint_on_an_ordinate_is_moved(cfg, zeros_10_100):
    gamma = zeros_10_100.zeros[10].gamma
    spec = ExperimentSpec(T1=gamma, T2=90.0, y=1.0, x=101)
    result = zero_sum(spec, zeros_10_100, cfg)
    assert result.spec.T1 == pytest.approx(gamma - 1e-5)
    assert len(result.perturbations) == 1
    assert result.zero_count == len(zeros_10_100.between(gamma - 1e-5, 90.0))


def test_main_term_dominance(report):
    check = main_term_dominates(report)
    assert check.witness_deviation == pytest.approx(1.481, abs=1e-3)
    assert check.is_witness
    assert check.consistent
    assert check.implies_nonzero == check.main_dominates


def test_theorem1_witness(cfg, zeros_10_100):
    result = theorem1_witness(60.0, 1.0, 1.0, 1e-3, cfg, zeros=zeros_10_100)
    assert result.zeros_in_window == (zeros_10_100.zeros[13].gamma,)
    assert result.witness_gamma == result.zeros_in_window[0]
    assert result.shifted_values[0][1] > 1e-3


def test_theorem1_witness_empty_window(cfg, zeros_10_100):
    with pytest.raises(EmptyWindow):
        theorem1_witness(50.0, 1.0, 1.0, 1e-3, cfg, zeros=zeros_10_100)
    with pytest.raises(DomainError):
        theorem1_witness(40.0, 1.0, 1.0, 1e-3, cfg, zeros=zeros_10_100)


def test_n0y_count(cfg, zeros_10_100):
    counted = n0y_count(100.0, 1.0, 1e-3, zeros_10_100, cfg)
    assert counted.total == 29
    assert counted.nonvanishing == 29
    assert counted.flagged == ()


def test_n0y_requires_table_from_first_zero(cfg):
    table = find_zeros(100.0, 105.0, cfg)
    with pytest.raises(IncompleteZeroTable):
        n0y_count(105.0, 1.0, 1e-3, table, cfg)


def test_select_x(cfg):
    experiment = ZeroSumExperiment(cfg)
    assert experiment.select_x(5000.0, 1.0, 1.0) == (97, "prime_range")
    assert experiment.select_x(1000.0, 1.0, 10.0) == (3, "witness_fallback")


def test_sweep_orders_reports_and_records_failures(cfg):
    def provider(lo, hi):
        if lo < 150:
            return find_zeros(lo, hi, cfg)
        return ZeroTable.from_ordinates([], lo, hi, complete=False)

    reports = residual_sweep([200.0, 100.0], 1.0, 1.0, 1.0, 0.05, cfg, zero_provider=provider)
    assert [r.spec.T1 for r in reports] == [100.0, 200.0]

    good, bad = reports
    assert good.error is None
    assert good.x_source == "prime_range"
    assert is_prime(good.spec.x)
    assert math.isfinite(good.ratio)

    assert bad.error.startswith("IncompleteZeroTable")
    assert math.isnan(bad.ratio)


def test_sweep_rejects_bad_parameters(cfg):
    with pytest.raises(DomainError):
        residual_sweep([100.0], 1.0, 1.0, 1.0, 0.6, cfg)
    with pytest.raises(DomainError):
        residual_sweep([50.0], 1.0, 1.0, 1.0, 0.1, cfg)


@pytest.fixture(scope="module")
def zeros_5000_5250(cfg):
    return find_zeros(5000.0, 5250.0, cfg, threads=4)


def test_zero_sum_is_additive_over_a_partition(cfg, zeros_5000_5250):
    whole = zero_sum(ExperimentSpec(T1=5000.0, T2=5250.0, y=1.0, x=101), zeros_5000_5250, cfg, threads=4)
    cuts = [5000.0, 5080.0, 5170.0, 5250.0]
    parts = [zero_sum(ExperimentSpec(T1=lo, T2=hi, y=1.0, x=101), zeros_5000_5250, cfg)
             for lo, hi in zip(cuts, cuts[1:])]
    assert not whole.perturbations
    assert not any(part.perturbations for part in parts)
    assert sum(part.zero_count for part in parts) == whole.zero_count
    assert sum(part.S for part in parts) == pytest.approx(whole.S, rel=1e-9)


def test_main_term_vanishes_without_shift():
    assert main_term(101, 0.0, 50.0, 90.0) == 0


def test_main_term_vanishes_when_the_twist_is_a_full_turn():
    y = 2 * math.pi * 3 / math.log(101)
    assert abs(main_term(101, y, 50.0, 90.0)) < 1e-12


@pytest.mark.parametrize("x,y", [(101, 1.3), (2, 0.25), (9973, 7.0)])
def test_main_term_conjugates_under_negated_shift(x, y):
    up = main_term(x, y, 1000.0, 1200.0)
    down = main_term(x, -y, 1000.0, 1200.0)
    assert down == pytest.approx(up.conjugate(), abs=1e-12)
    assert abs(up) <= 200.0 * math.log(1100.0) / math.pi


def test_witness_at_height_100(cfg):
    result = theorem1_witness(100.0, 1.0, 1.0, 1e-3, cfg)
    assert list(result.zeros_in_window) == pytest.approx([101.3178510, 103.7255380], abs=1e-6)
    assert result.window[0] <= result.witness_gamma <= result.window[1]
    magnitude = dict(result.shifted_values)[result.witness_gamma]
    assert magnitude > 1e-3
    reference = abs(mpmath.zeta(mpmath.mpc(0.5, result.witness_gamma + 1.0)))
    assert magnitude == pytest.approx(float(reference), rel=1e-4)


def test_witness_at_height_1000(cfg):
    result = theorem1_witness(1000.0, 1.0, 1.0, 1e-3, cfg, threads=4)
    lo, hi = result.window
    assert hi == pytest.approx(1000.0 * (1 + epsilon_for(1000.0, 1.0)))
    assert result.zeros_in_window
    for gamma in result.zeros_in_window:
        assert lo <= gamma <= hi
        assert abs(float(mpmath.siegelz(gamma))) < 1e-6
    assert lo <= result.witness_gamma <= hi
    reference = abs(mpmath.zeta(mpmath.mpc(0.5, result.witness_gamma + 1.0)))
    assert dict(result.shifted_values)[result.witness_gamma] == pytest.approx(float(reference), rel=1e-4)
    assert float(reference) > 1e-3


def test_residual_sweep_baseline(cfg):
    heights = [5e3, 1e4, 5e4]
    reports = residual_sweep(heights, 1.0, 1.0, 1.0, 0.05, cfg, threads=4)
    assert [r.spec.T1 for r in reports] == heights
    for report in reports:
        assert report.error is None
        assert is_prime(report.spec.x)
        expected = count_zeros_rvm(report.spec.T2).main - count_zeros_rvm(report.spec.T1).main
        assert abs(report.zero_count - expected) <= 6
        assert math.isfinite(report.ratio)
        assert report.ratio > 0
