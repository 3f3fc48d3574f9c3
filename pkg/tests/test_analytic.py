import unittest
from fractions import Fraction

import pytest

from masim.exceptions import DomainError
from masim.sim.analytic import (
    AnalyticModel,
    cdf,
    expected_peak_count,
    mean,
    mean_distance_estimate,
    pi_no_interior_max,
    pmf,
    prob_max,
    series_mean,
    series_variance,
    tail_mass,
    variance,
)


@pytest.mark.localtest
def test_prob_max():
    assert prob_max() == Fraction(1, 4)
    assert float(prob_max()) == 0.25
    assert 1 / prob_max() == 4


@pytest.mark.localtest
def test_expected_peak_count():
    assert expected_peak_count(100) == 25
    with pytest.raises(DomainError):
        expected_peak_count(-1)


@pytest.mark.localtest
@pytest.mark.parametrize("n,expected", [(5, 20.0), (8, 8.0)])
def test_mean_distance_estimate(n, expected):
    assert mean_distance_estimate(n) == pytest.approx(expected)


@pytest.mark.localtest
def test_mean_distance_estimate_limit():
    assert mean_distance_estimate(10**9) == pytest.approx(4.000000016, abs=1e-9)
    assert abs(mean_distance_estimate(10**9) - 4) < 1e-7


@pytest.mark.localtest
@pytest.mark.parametrize("n", [0, 3, 4])
def test_mean_distance_estimate_domain(n):
    with pytest.raises(DomainError):
        mean_distance_estimate(n)


@pytest.mark.localtest
@pytest.mark.parametrize(
    "d,expected", [(2, Fraction(1)), (3, Fraction(1)), (4, Fraction(3, 4))]
)
def test_pi_no_interior_max(d, expected):
    assert pi_no_interior_max(d) == expected


@pytest.mark.localtest
@pytest.mark.parametrize(
    "d,expected", [(2, Fraction(1, 4)), (3, Fraction(1, 4)), (4, Fraction(3, 16))]
)
def test_pmf(d, expected):
    assert pmf(d) == expected


@pytest.mark.localtest
@pytest.mark.parametrize("fn", [pmf, pi_no_interior_max])
@pytest.mark.parametrize("d", [1, 0, -3])
def test_distance_domain(fn, d):
    with pytest.raises(DomainError):
        fn(d)


@pytest.mark.localtest
def test_bayes_consistency():
    for d in range(2, 65):
        assert pmf(d) == pi_no_interior_max(d) * prob_max()


@pytest.mark.localtest
def test_cdf():
    assert cdf(1) == 0
    assert cdf(2) == Fraction(1, 4)
    assert cdf(3) == Fraction(1, 2)
    assert abs(float(cdf(64)) - 1) < 1e-12
    values = [cdf(d) for d in range(2, 40)]
    assert values == sorted(values)


@pytest.mark.localtest
def test_cdf_equals_partial_sums():
    running = Fraction(0)
    for d in range(2, 80):
        running += pmf(d)
        assert cdf(d) == running


@pytest.mark.localtest
def test_cdf_and_tail_are_complementary():
    for d in range(1, 65):
        assert cdf(d) + tail_mass(d) == 1


@pytest.mark.localtest
def test_normalization():
    total = sum(pmf(d) for d in range(2, 65)) + tail_mass(64)
    assert total == 1
    assert abs(float(sum(pmf(d) for d in range(2, 65))) + float(tail_mass(64)) - 1) < 1e-12


@pytest.mark.localtest
def test_moments():
    assert mean() == 4
    assert variance() == 4
    assert abs(series_mean() - 4) < 1e-12
    assert abs(series_variance() - 4) < 1e-12


@pytest.mark.localtest
def test_truncated_mean_series():
    assert abs(float(sum(d * pmf(d) for d in range(2, 65))) - 4) < 1e-12


@pytest.mark.localtest
def test_analytic_model():
    model = AnalyticModel(d_max=10)
    assert list(model.distances) == list(range(2, 11))
    assert sum(model.pmf_table()) + model.tail() == 1
    assert model.pmf(4) == Fraction(3, 16)
    assert model.in_asymptotic_regime(4, q=5)
    assert not model.in_asymptotic_regime(5, q=5)
    assert not model.in_asymptotic_regime(2, q=None)
    with pytest.raises(DomainError):
        AnalyticModel(d_max=1)


if __name__ == "__main__":
    unittest.main()
