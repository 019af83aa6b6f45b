"""
Decomposition of the tandem into a closed section 2 fed at rate theta and a
section 1 constrained by the supply of section 2.

The conditional law of section 1 given n2 does not depend on theta, so the
(c1 + 1) x (c2 + 1) matrix of conditional columns is computed once per
(section1, section2, lambda) and cached; every evaluation of h(theta) is then
a single dot product with P^(2)(theta). Mixtures run over n2 = 0..c2.
"""

from functools import lru_cache

import numpy as np

from apps.core.exceptions import DomainError
from apps.diagram.entities import FundamentalDiagram
from apps.diagram.services.laws import check_count, demand, demand_profile, supply, supply_profile
from apps.section.entities import DistributionSource, StationaryDistribution
from apps.section.services.stationary import (
    birth_death_log_weights,
    check_rate,
    normalize_log_weights,
    stationary_flow_form,
)
from apps.tandem.entities import TandemConfig

__all__ = [
    'conditional_matrix',
    'p2_given_theta',
    'g1_coupled',
    'p1_conditional',
    'p1_marginal',
    'h',
    'fixed_point_residual',
    'joint_distribution',
    'delta_throughput',
    'closed_section_reference',
]


@lru_cache(maxsize=256)
def _conditional_matrix(section1: FundamentalDiagram, section2: FundamentalDiagram, arrival_rate: float) -> np.ndarray:
    c1, c2 = section1.capacity, section2.capacity
    if arrival_rate == 0:
        matrix = np.zeros((c1 + 1, c2 + 1))
        matrix[0, :] = 1.0
    else:
        # transfer rate q12 = min(demand1(n1), supply2(n2)), rows n1 = 1..c1
        rates = np.minimum(demand_profile(section1)[1:, np.newaxis], supply_profile(section2)[np.newaxis, :])
        matrix = normalize_log_weights(birth_death_log_weights(arrival_rate, rates), axis=0)
    matrix.setflags(write=False)
    return matrix


def conditional_matrix(arrival_rate: float, cfg: TandemConfig) -> np.ndarray:
    """Column n2 holds P^(1|2)(. | n2)."""
    return _conditional_matrix(cfg.section1, cfg.section2, check_rate('lambda', arrival_rate))


def p2_given_theta(theta: float, cfg: TandemConfig) -> StationaryDistribution:
    return stationary_flow_form(check_rate('theta', theta), cfg.section2, source=DistributionSource.TANDEM_MARGINAL)


def g1_coupled(i1: int, i2: int, cfg: TandemConfig) -> float:
    check_count(i1, 1, cfg.section1.capacity, name='i1')
    check_count(i2, 0, cfg.section2.capacity, name='i2')
    transfer = min(demand(i1, cfg.section1), supply(i2, cfg.section2))
    return transfer / cfg.section1.q_max / i1


def p1_conditional(arrival_rate: float, n2: int, cfg: TandemConfig) -> StationaryDistribution:
    check_count(n2, 0, cfg.section2.capacity, name='n2')
    column = conditional_matrix(arrival_rate, cfg)[:, n2]
    return StationaryDistribution(probs=column, source=DistributionSource.TANDEM_CONDITIONAL, condition=int(n2))


def p1_marginal(arrival_rate: float, theta: float, cfg: TandemConfig) -> StationaryDistribution:
    mixture = conditional_matrix(arrival_rate, cfg) @ p2_given_theta(theta, cfg).probs
    return StationaryDistribution(probs=mixture, source=DistributionSource.TANDEM_MARGINAL)


def h(theta: float, cfg: TandemConfig) -> float:
    """lambda (1 - P^(1)_{c1}(lambda, theta)): outflow of section 1 when section 2 is fed at theta."""
    lam = cfg.arrival_rate
    theta = check_rate('theta', theta)
    if theta > lam:
        raise DomainError(f'theta={theta} exceeds lambda={lam}')
    row = conditional_matrix(lam, cfg)[-1]
    # offset by the free-downstream blocking so that h stays monotone in floating point
    blocking = row[0] + (row - row[0]) @ p2_given_theta(theta, cfg).probs
    return lam * (1.0 - float(blocking))


def fixed_point_residual(theta: float, cfg: TandemConfig) -> float:
    return h(theta, cfg) - theta


def joint_distribution(p1_given_2: np.ndarray, p2: StationaryDistribution) -> np.ndarray:
    joint = np.asarray(p1_given_2) * p2.probs[np.newaxis, :]
    joint.setflags(write=False)
    return joint


def delta_throughput(theta: float, cfg: TandemConfig) -> float:
    return theta * (1.0 - p2_given_theta(theta, cfg).blocking)


def closed_section_reference(cfg: TandemConfig) -> StationaryDistribution:
    """Section 2 alone, closed and fed by lambda, for comparison with the constrained section 1."""
    return stationary_flow_form(cfg.arrival_rate, cfg.section2)
