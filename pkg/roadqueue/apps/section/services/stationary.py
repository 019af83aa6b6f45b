"""
Stationary distributions of a single M/G/c/c state-dependent section.

All forms reduce to a birth-death chain with birth rate lambda and a death
rate per occupancy. Unnormalized weights are accumulated as logarithms and
exponentiated after subtracting their maximum, which keeps sections with
thousands of cars finite.
"""

import math
from collections.abc import Sequence

import numpy as np

from apps.core.exceptions import DomainError
from apps.diagram.entities import FundamentalDiagram, SectionParams
from apps.diagram.services.laws import flow_profile
from apps.section.entities import DistributionSource, OutflowKind, StationaryDistribution
from apps.section.services.outflow import outflow_profile

__all__ = [
    'check_rate',
    'point_mass',
    'normalize_log_weights',
    'birth_death_log_weights',
    'stationary_speed_form',
    'stationary_flow_form',
    'stationary_by_outflow',
]

SPEED_PROFILE_ATOL = 1e-12


def check_rate(name: str, value: float) -> float:
    if isinstance(value, bool) or not isinstance(value, int | float | np.floating) or not math.isfinite(value) or value < 0:
        raise DomainError(f'{name} must be a finite rate >= 0, got {value!r}')
    return float(value)


def point_mass(capacity: int, source: DistributionSource, at: int = 0, condition: int | None = None) -> StationaryDistribution:
    probs = np.zeros(capacity + 1)
    probs[at] = 1.0
    return StationaryDistribution(probs=probs, source=source, condition=condition)


def normalize_log_weights(log_weights: np.ndarray, axis: int = 0) -> np.ndarray:
    shifted = np.exp(log_weights - np.max(log_weights, axis=axis, keepdims=True))
    return shifted / shifted.sum(axis=axis, keepdims=True)


def birth_death_log_weights(arrival_rate: float, death_rates: np.ndarray) -> np.ndarray:
    """log of prod_{i<=n} lambda / mu_i for n = 0..c, along the first axis."""
    death_rates = np.asarray(death_rates, dtype=float)
    if np.any(death_rates <= 0):
        raise DomainError('Death rates must be strictly positive')
    log_terms = math.log(arrival_rate) - np.log(death_rates)
    zeros = np.zeros((1, *death_rates.shape[1:]))
    return np.concatenate([zeros, np.cumsum(log_terms, axis=0)], axis=0)


def _birth_death(arrival_rate: float, death_rates: np.ndarray, source: DistributionSource) -> StationaryDistribution:
    if arrival_rate == 0:
        return point_mass(len(death_rates), source)
    probs = normalize_log_weights(birth_death_log_weights(arrival_rate, death_rates))
    return StationaryDistribution(probs=probs, source=source)


def stationary_speed_form(arrival_rate: float, params: SectionParams, f: Sequence[float]) -> StationaryDistribution:
    """P_n proportional to (lambda L / v1)^n / prod_{i<=n} i f(i), with f(i) = v_i / v_1."""
    arrival_rate = check_rate('lambda', arrival_rate)
    f = np.asarray(f, dtype=float)
    if f.shape != (params.capacity,):
        raise DomainError(f'Speed profile needs {params.capacity} values, got shape {f.shape}')
    if abs(f[0] - 1.0) > SPEED_PROFILE_ATOL or np.any(f <= 0):
        raise DomainError('Speed profile must start at f(1) = 1 and stay positive')
    # i f(i) v1 / L is the total service rate with i cars on the section
    death_rates = np.arange(1, params.capacity + 1) * f * params.free_speed / params.length
    return _birth_death(arrival_rate, death_rates, DistributionSource.SPEED_FORM)


def stationary_flow_form(
    arrival_rate: float,
    d: FundamentalDiagram,
    source: DistributionSource = DistributionSource.FLOW_FORM,
) -> StationaryDistribution:
    """P_n proportional to prod_{i<=n} lambda / q_i for the quadratic diagram."""
    arrival_rate = check_rate('lambda', arrival_rate)
    d.require_linear()
    return _birth_death(arrival_rate, flow_profile(d)[1:], source)


def stationary_by_outflow(
    arrival_rate: float,
    d: FundamentalDiagram,
    kind: OutflowKind,
    supply_downstream: float | None = None,
) -> StationaryDistribution:
    """Section whose departures follow the open, constrained or closed outflow rule."""
    arrival_rate = check_rate('lambda', arrival_rate)
    rates = outflow_profile(kind, d, supply_downstream)[1:]
    return _birth_death(arrival_rate, rates, DistributionSource.FLOW_FORM)
