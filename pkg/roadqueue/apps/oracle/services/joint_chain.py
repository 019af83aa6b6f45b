"""
Exact Markov chain of the tandem on (n1, n2).

Arrivals join section 1 at rate lambda while n1 < c1; a car moves to
section 2 at rate min(demand1(n1), supply2(n2)) while n1 > 0 and n2 < c2;
section 2 releases cars at rate q2(n2). Nothing enters a full section 2,
although supply2(c2) > 0: the decomposition's use of that supply is part of
what this chain measures.
"""

import logging
from itertools import product

import numpy as np
from django.conf import settings

from apps.core.exceptions import StateSpaceTooLargeError
from apps.diagram.services.laws import demand_profile, flow_profile, supply_profile
from apps.oracle.entities import CtmcSpec, JointChainResult
from apps.tandem.entities import TandemConfig

__all__ = [
    'joint_transfer_rates',
    'joint_tandem_chain',
    'joint_tandem_stationary',
]

logger = logging.getLogger(__name__)


def joint_transfer_rates(cfg: TandemConfig) -> np.ndarray:
    """q12(n1, n2) as a (c1 + 1) x (c2 + 1) matrix, zero where no car can move."""
    c1, c2 = cfg.capacities
    rates = np.minimum(demand_profile(cfg.section1)[:, np.newaxis], supply_profile(cfg.section2)[np.newaxis, :])
    rates[0, :] = 0.0
    rates[:, c2] = 0.0
    return rates


def joint_tandem_chain(cfg: TandemConfig) -> CtmcSpec:
    c1, c2 = cfg.capacities
    lam = cfg.arrival_rate
    transfer = joint_transfer_rates(cfg)
    departure = flow_profile(cfg.section2)
    rates = {}
    for n1, n2 in product(range(c1 + 1), range(c2 + 1)):
        if n1 < c1 and lam > 0:
            rates[((n1, n2), (n1 + 1, n2))] = lam
        if transfer[n1, n2] > 0:
            rates[((n1, n2), (n1 - 1, n2 + 1))] = float(transfer[n1, n2])
        if n2 > 0:
            rates[((n1, n2), (n1, n2 - 1))] = float(departure[n2])
    return CtmcSpec(states=tuple(product(range(c1 + 1), range(c2 + 1))), rates=rates)


def joint_tandem_stationary(cfg: TandemConfig, max_states: int | None = None) -> JointChainResult:
    limit = settings.ROADQUEUE_ORACLE_MAX_STATES if max_states is None else max_states
    c1, c2 = cfg.capacities
    size = (c1 + 1) * (c2 + 1)
    if size > limit:
        raise StateSpaceTooLargeError(size, limit)

    if cfg.arrival_rate == 0:
        # every state drains into (0, 0), which the normalization-row solve cannot see
        pi, residual = np.zeros(size), 0.0
        pi[0] = 1.0
    else:
        logger.debug('Solving joint chain with %d states at lambda=%s', size, cfg.arrival_rate)
        pi, residual = joint_tandem_chain(cfg).stationary()
    return JointChainResult(
        joint=pi.reshape(c1 + 1, c2 + 1),
        residual=residual,
        arrival_rate=cfg.arrival_rate,
        transfer_rates=joint_transfer_rates(cfg),
        departure_rates=flow_profile(cfg.section2),
    )
