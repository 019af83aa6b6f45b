"""Decomposition of the tandem into a constrained section 1 and a closed section 2."""

import numpy as np
import pytest

from apps.core.exceptions import DomainError
from apps.diagram.entities import ExponentialShape, FundamentalDiagram
from apps.diagram.services.laws import normalized_service_rate
from apps.section.entities import DistributionSource
from apps.section.services.stationary import stationary_flow_form
from apps.tandem.entities import TandemConfig
from apps.tandem.services.coupling import (
    closed_section_reference,
    conditional_matrix,
    delta_throughput,
    fixed_point_residual,
    g1_coupled,
    h,
    joint_distribution,
    p1_conditional,
    p1_marginal,
    p2_given_theta,
)


class TestConditional:
    def test_columns_are_distributions(self, tandem):
        cfg = tandem(2000)
        matrix = conditional_matrix(2000, cfg)
        assert matrix.shape == (19, 19)
        np.testing.assert_allclose(matrix.sum(axis=0), 1, atol=1e-12)
        assert np.all(matrix >= 0)

    def test_free_downstream_does_not_constrain(self, tandem):
        """While section 2 offers its full capacity flow the conditional law does not depend on n2."""
        cfg = tandem(2000)
        reference = p1_conditional(2000, 0, cfg)
        for n2 in range(1, 10):
            np.testing.assert_array_equal(p1_conditional(2000, n2, cfg).probs, reference.probs)
        assert reference.condition == 0
        assert reference.source == DistributionSource.TANDEM_CONDITIONAL

    def test_blocking_grows_with_downstream_congestion(self, tandem):
        blocking = conditional_matrix(3000, tandem(3000))[-1]
        assert np.all(np.diff(blocking) >= 0)
        assert blocking[-1] > blocking[0]

    def test_coupled_service_rate(self, tandem):
        cfg = tandem(1000)
        for i1 in (1, 2):
            assert g1_coupled(i1, 0, cfg) == pytest.approx(normalized_service_rate(i1, cfg.section1), rel=1e-12)
        # a full section 2 lets cars in at its own flow of 500 veh/h
        assert g1_coupled(9, 18, cfg) == pytest.approx(500 / cfg.section1.q_max / 9, rel=1e-9)

    def test_conditional_index_checked(self, tandem):
        with pytest.raises(DomainError):
            p1_conditional(1000, 19, tandem(1000))

    def test_tandem_requires_quadratic_diagrams(self, section1):
        shaped = FundamentalDiagram(section1.params, shape=ExponentialShape(beta=10, gamma=2))
        with pytest.raises(DomainError):
            TandemConfig(section1=section1, section2=shaped, arrival_rate=100)


class TestFixedPointMap:
    def test_h_is_bounded_and_non_increasing(self, tandem):
        cfg = tandem(3000)
        thetas = np.linspace(0, 3000, 31)
        values = np.array([h(theta, cfg) for theta in thetas])
        assert np.all((values >= 0) & (values <= 3000))
        assert np.all(np.diff(values) <= 1e-9)
        assert values[-1] < values[0]

    def test_residual_changes_sign(self, tandem):
        cfg = tandem(2000)
        assert fixed_point_residual(0, cfg) > 0
        assert fixed_point_residual(2000, cfg) < 0

    def test_theta_above_lambda_rejected(self, tandem):
        with pytest.raises(DomainError):
            h(1000.5, tandem(1000))

    def test_marginal_mixes_conditionals(self, tandem):
        cfg = tandem(2500)
        p2 = p2_given_theta(1800, cfg)
        p1 = p1_marginal(2500, 1800, cfg)
        expected = sum(p2[n2] * p1_conditional(2500, n2, cfg).probs for n2 in range(19))
        np.testing.assert_allclose(p1.probs, expected, atol=1e-14)
        assert h(1800, cfg) == pytest.approx(2500 * (1 - p1.blocking), rel=1e-10)

    def test_p2_is_closed_section_fed_at_theta(self, tandem):
        cfg = tandem(2500)
        np.testing.assert_array_equal(p2_given_theta(1800, cfg).probs, stationary_flow_form(1800, cfg.section2).probs)
        assert delta_throughput(1800, cfg) == pytest.approx(1800 * (1 - p2_given_theta(1800, cfg).blocking))

    def test_joint_distribution_marginals(self, tandem):
        cfg = tandem(2500)
        p2 = p2_given_theta(1800, cfg)
        joint = joint_distribution(conditional_matrix(2500, cfg), p2)
        np.testing.assert_allclose(joint.sum(axis=0), p2.probs, atol=1e-15)
        np.testing.assert_allclose(joint.sum(axis=1), p1_marginal(2500, 1800, cfg).probs, atol=1e-15)
        assert joint.sum() == pytest.approx(1, abs=1e-12)

    def test_closed_reference_is_section2_fed_at_lambda(self, tandem):
        cfg = tandem(2000)
        reference = closed_section_reference(cfg)
        assert reference.source == DistributionSource.FLOW_FORM
        np.testing.assert_array_equal(reference.probs, stationary_flow_form(2000, cfg.section2).probs)


class TestEdgeCases:
    def test_no_arrivals_keeps_section1_empty(self, tandem):
        cfg = tandem(0)
        for n2 in (0, 9, 18):
            assert p1_conditional(0, n2, cfg)[0] == 1
        assert p1_marginal(0, 0, cfg)[0] == 1
        assert h(0, cfg) == 0

    def test_empty_downstream_gives_first_column(self, tandem):
        cfg = tandem(2000)
        np.testing.assert_allclose(p1_marginal(2000, 0, cfg).probs, p1_conditional(2000, 0, cfg).probs, atol=1e-15)

    def test_full_downstream_blocks_more(self, tandem):
        cfg = tandem(2000)
        assert p1_conditional(2000, 18, cfg).blocking > p1_conditional(2000, 0, cfg).blocking
