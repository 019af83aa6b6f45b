"""Speed, flow, demand and supply laws of a single section."""

import math

import numpy as np
import pytest

from apps.core.exceptions import DomainError
from apps.diagram.entities import ExponentialShape, FundamentalDiagram, SectionParams, SpeedModel
from apps.diagram.services.laws import (
    demand,
    demand_profile,
    exponential_speed,
    fit_beta_gamma,
    flow,
    flow_profile,
    linear_speed,
    normalized_service_rate,
    quadratic_flow,
    speed,
    speed_profile,
    supply,
    supply_profile,
)


@pytest.fixture
def odd_section() -> FundamentalDiagram:
    """c = 19 with q_max = 1000 puts the parabola vertex on n = 10."""
    return FundamentalDiagram(SectionParams(length=0.1, free_speed=100, jam_density=190), q_max_override=1000)


class TestSectionParams:
    def test_capacity_from_length_and_jam_density(self, section1):
        assert section1.capacity == 18
        assert section1.params.critical_density == 90
        assert section1.params.free_service_time == pytest.approx(0.001)

    def test_fractional_capacity_rejected(self):
        with pytest.raises(DomainError):
            SectionParams(length=0.1, free_speed=100, jam_density=185.5)

    @pytest.mark.parametrize('field', ['length', 'free_speed', 'jam_density'])
    def test_non_positive_parameters_rejected(self, field):
        values = {'length': 0.1, 'free_speed': 100, 'jam_density': 180, field: 0}
        with pytest.raises(DomainError):
            SectionParams(**values)

    def test_section_shorter_than_one_car_rejected(self):
        with pytest.raises(DomainError):
            SectionParams(length=0.001, free_speed=100, jam_density=180)


class TestSpeedLaws:
    def test_linear_speed_endpoints(self, section1):
        assert linear_speed(1, section1.params) == 100
        assert linear_speed(18, section1.params) == pytest.approx(100 / 18)
        assert linear_speed(9, section1.params) == pytest.approx(100 * 10 / 18)

    @pytest.mark.parametrize('n', [0, 19])
    def test_linear_speed_outside_domain(self, section1, n):
        with pytest.raises(DomainError):
            linear_speed(n, section1.params)

    def test_exponential_speed_values(self):
        assert exponential_speed(1, 100, 19, 1) == 100
        assert exponential_speed(20, 100, 19, 1) == pytest.approx(100 / math.e)
        assert exponential_speed(39, 100, 19, 1) == pytest.approx(100 * math.exp(-2))

    def test_exponential_speed_rejects_bad_shape(self):
        with pytest.raises(DomainError):
            exponential_speed(2, 100, 0, 1)
        with pytest.raises(DomainError):
            exponential_speed(0, 100, 19, 1)

    def test_speed_dispatches_on_model(self, section1):
        shaped = FundamentalDiagram(section1.params, shape=ExponentialShape(beta=10, gamma=2))
        assert shaped.model == SpeedModel.EXPONENTIAL
        assert speed(3, shaped) == pytest.approx(100 * math.exp(-0.04))
        assert speed(3, section1) == linear_speed(3, section1.params)


class TestFit:
    def test_fit_recovers_rounded_points(self):
        beta, gamma = fit_beta_gamma(100, 20, 36.788, 39, 13.534)
        assert beta == pytest.approx(19, rel=1e-3)
        assert gamma == pytest.approx(1, rel=1e-3)

    def test_fit_round_trip_on_random_shapes(self):
        rng = np.random.default_rng(20240101)
        for _ in range(100):
            beta = rng.uniform(5, 40)
            gamma = rng.uniform(0.5, 2.5)
            a = int(rng.integers(2, 11))
            b = a + int(rng.integers(5, 31))
            va = exponential_speed(a, 100, beta, gamma)
            vb = exponential_speed(b, 100, beta, gamma)
            fitted_beta, fitted_gamma = fit_beta_gamma(100, a, va, b, vb)
            assert fitted_beta == pytest.approx(beta, rel=1e-6)
            assert fitted_gamma == pytest.approx(gamma, rel=1e-6)

    @pytest.mark.parametrize('args', [
        (100, 1, 90, 10, 50),
        (100, 10, 90, 5, 50),
        (100, 5, 50, 10, 90),
        (100, 5, 100, 10, 50),
        (100, 5, 90, 10, 0),
    ])
    def test_fit_rejects_inconsistent_points(self, args):
        with pytest.raises(DomainError):
            fit_beta_gamma(*args)


class TestQuadraticFlow:
    def test_values(self, odd_section):
        assert quadratic_flow(0, odd_section) == 0
        assert quadratic_flow(1, odd_section) == pytest.approx(4 * 19 / 400 * 1000)
        assert quadratic_flow(10, odd_section) == pytest.approx(1000, rel=1e-12)
        assert normalized_service_rate(1, odd_section) == pytest.approx(0.19)
        assert normalized_service_rate(10, odd_section) == pytest.approx(0.1, rel=1e-12)

    def test_symmetry(self, section1):
        c = section1.capacity
        for n in range(c + 2):
            if n <= c and c + 1 - n <= c:
                assert quadratic_flow(n, section1) == quadratic_flow(c + 1 - n, section1)

    def test_matches_linear_speed(self, section1):
        """(q_n / n) / (q_1 / 1) equals v_n / v_1."""
        q1 = quadratic_flow(1, section1)
        for n in range(1, section1.capacity + 1):
            ratio = quadratic_flow(n, section1) / n / q1
            assert ratio == pytest.approx(linear_speed(n, section1.params) / 100, rel=1e-12)

    def test_flow_equals_speed_times_density(self, section1):
        for n in range(1, section1.capacity + 1):
            assert flow(n, section1) == pytest.approx(speed(n, section1) * n / 0.1, rel=1e-12)

    def test_capacity_flow_of_table_sections(self, section1, section2):
        assert section1.q_max == pytest.approx(5000, rel=5e-3)
        assert section2.q_max == pytest.approx(2500, rel=5e-3)

    def test_override_replaces_vertex_flow(self, section1):
        overridden = FundamentalDiagram(section1.params, q_max_override=5000)
        assert overridden.q_max == 5000
        assert quadratic_flow(1, overridden) == pytest.approx(5000 * 4 * 18 / 361)

    def test_quadratic_flow_requires_linear_model(self, section1):
        shaped = FundamentalDiagram(section1.params, shape=ExponentialShape(beta=10, gamma=2))
        with pytest.raises(DomainError):
            quadratic_flow(2, shaped)
        assert flow(2, shaped) == pytest.approx(2 * 100 * math.exp(-0.01) / 0.1)


class TestDemandSupply:
    def test_table_values(self, section1):
        assert demand(9, section1) == pytest.approx(5000, rel=1e-9)
        assert demand(10, section1) == section1.q_max
        assert supply(18, section1) == pytest.approx(1000, rel=1e-9)
        assert supply(0, section1) == section1.q_max

    @pytest.mark.parametrize('capacity', [1, 2, 7, 18, 19])
    def test_min_of_demand_and_supply_is_flow(self, capacity):
        d = FundamentalDiagram(SectionParams(length=1, free_speed=60, jam_density=capacity))
        for n in range(capacity + 1):
            assert min(demand(n, d), supply(n, d)) == quadratic_flow(n, d)

    def test_monotone_profiles(self, section1):
        demands = demand_profile(section1)
        supplies = supply_profile(section1)
        assert np.all(np.diff(demands) >= 0)
        assert np.all(np.diff(supplies) <= 0)
        assert np.all(demands <= section1.q_max)
        assert np.all(supplies <= section1.q_max)
        np.testing.assert_array_equal(np.minimum(demands, supplies), flow_profile(section1))

    def test_profiles_match_pointwise_laws(self, section1):
        for n in range(section1.capacity + 1):
            assert demand_profile(section1)[n] == pytest.approx(demand(n, section1), rel=1e-15)
            assert supply_profile(section1)[n] == pytest.approx(supply(n, section1), rel=1e-15)

    def test_speed_profile_starts_at_one(self, section1):
        f = speed_profile(section1)
        assert f.shape == (18,)
        assert f[0] == 1
        assert f[-1] == pytest.approx(1 / 18)
