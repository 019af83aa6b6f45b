import math
from collections.abc import Sequence

import numpy as np

from apps.core.exceptions import DomainError
from apps.oracle.entities import CtmcSpec
from apps.section.entities import DistributionSource, StationaryDistribution
from apps.section.services.stationary import check_rate

__all__ = [
    'birth_death_stationary',
    'birth_death_chain',
    'birth_death_generator',
]


def _death_rates(death_rates: Sequence[float]) -> list[float]:
    rates = [float(rate) for rate in death_rates]
    if not rates:
        raise DomainError('At least one death rate is needed')
    if any(not math.isfinite(rate) or rate <= 0 for rate in rates):
        raise DomainError('Death rates must be finite and > 0')
    return rates


def birth_death_stationary(arrival_rate: float, death_rates: Sequence[float]) -> StationaryDistribution:
    """Forward recursion pi_n = pi_{n-1} lambda / q_n, carried in logarithms."""
    arrival_rate = check_rate('lambda', arrival_rate)
    rates = _death_rates(death_rates)
    probs = np.zeros(len(rates) + 1)
    if arrival_rate == 0:
        probs[0] = 1.0
        return StationaryDistribution(probs=probs, source=DistributionSource.CTMC_ORACLE)

    log_pi = [0.0]
    for rate in rates:
        log_pi.append(log_pi[-1] + math.log(arrival_rate) - math.log(rate))
    top = max(log_pi)
    probs[:] = [math.exp(value - top) for value in log_pi]
    return StationaryDistribution(probs=probs / math.fsum(probs), source=DistributionSource.CTMC_ORACLE)


def birth_death_chain(arrival_rate: float, death_rates: Sequence[float]) -> CtmcSpec:
    arrival_rate = check_rate('lambda', arrival_rate)
    rates = _death_rates(death_rates)
    transitions = {}
    for n, rate in enumerate(rates, start=1):
        transitions[(n - 1, n)] = arrival_rate
        transitions[(n, n - 1)] = rate
    return CtmcSpec(states=tuple(range(len(rates) + 1)), rates=transitions)


def birth_death_generator(arrival_rate: float, death_rates: Sequence[float]) -> np.ndarray:
    return birth_death_chain(arrival_rate, death_rates).generator()
