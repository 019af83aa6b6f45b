"""
Deterministic traffic laws of a road section.

Speeds are in km/h, flows in veh/h and car counts are integers in 0..c.
The quadratic flow law is the flow-density counterpart of the linear
speed-density law:

    v_n = v_1 (c - n + 1) / c
    q_n = q_max (1 - ((c - 2n + 1) / (c + 1))^2) = q_max 4 n (c + 1 - n) / (c + 1)^2

The factored form is used so that q_0 = 0 and q_n = q_{c+1-n} hold exactly.
"""

import math

import numpy as np

from apps.core.exceptions import DomainError
from apps.diagram.entities import FundamentalDiagram, SectionParams, require_positive

__all__ = [
    'linear_speed',
    'exponential_speed',
    'fit_beta_gamma',
    'speed',
    'quadratic_flow',
    'flow',
    'demand',
    'supply',
    'normalized_service_rate',
    'speed_profile',
    'flow_profile',
    'demand_profile',
    'supply_profile',
]

# Relative agreement required between the two beta expressions of the fit.
BETA_AGREEMENT_RTOL = 1e-9


def check_count(n: int, low: int, high: int, name: str = 'n') -> None:
    if isinstance(n, bool) or not isinstance(n, int | np.integer):
        raise DomainError(f'{name} must be an integer car count, got {n!r}')
    if not low <= n <= high:
        raise DomainError(f'{name}={n} outside {low}..{high}')


def _uncongested(n, c: int):
    # n <= (c + 1) / 2 compared exactly, also for even c
    return 2 * n <= c + 1


def _quadratic(n, c: int, q_max: float):
    # ratio <= 1 exactly, hence q_n <= q_max
    return q_max * ((4 * n * (c + 1 - n)) / (c + 1) ** 2)


def linear_speed(n: int, params: SectionParams) -> float:
    c = params.capacity
    check_count(n, 1, c)
    return params.free_speed * (c - n + 1) / c


def exponential_speed(n: int, v1: float, beta: float, gamma: float) -> float:
    if n < 1:
        raise DomainError(f'n must be >= 1, got {n}')
    require_positive('v1', v1)
    require_positive('beta', beta)
    require_positive('gamma', gamma)
    return v1 * math.exp(-(((n - 1) / beta) ** gamma))


def fit_beta_gamma(v1: float, a: float, va: float, b: float, vb: float) -> tuple[float, float]:
    """Shape and scale of the exponential speed law through (a, va) and (b, vb)."""
    if not 1 < a < b:
        raise DomainError(f'Fit points must satisfy 1 < a < b, got a={a}, b={b}')
    if not 0 < vb < va < v1:
        raise DomainError(f'Fit speeds must satisfy 0 < vb < va < v1, got vb={vb}, va={va}, v1={v1}')
    gamma = math.log(math.log(va / v1) / math.log(vb / v1)) / math.log((a - 1) / (b - 1))
    if not math.isfinite(gamma) or gamma <= 0:
        raise DomainError(f'Fit produced an invalid gamma={gamma}')
    beta = (a - 1) / math.log(v1 / va) ** (1 / gamma)
    beta_b = (b - 1) / math.log(v1 / vb) ** (1 / gamma)
    if not math.isclose(beta, beta_b, rel_tol=BETA_AGREEMENT_RTOL):
        raise DomainError(f'Fit is inconsistent: beta={beta} from a, {beta_b} from b')
    return beta, gamma


def speed(n: int, d: FundamentalDiagram) -> float:
    if d.shape is None:
        return linear_speed(n, d.params)
    check_count(n, 1, d.capacity)
    return exponential_speed(n, d.params.free_speed, d.shape.beta, d.shape.gamma)


def quadratic_flow(n: int, d: FundamentalDiagram) -> float:
    d.require_linear()
    check_count(n, 0, d.capacity)
    return _quadratic(n, d.capacity, d.q_max)


def flow(n: int, d: FundamentalDiagram) -> float:
    """Flow at n cars for either model: q_n = v_n * n / L."""
    if d.shape is None:
        return quadratic_flow(n, d)
    check_count(n, 0, d.capacity)
    if n == 0:
        return 0.0
    return speed(n, d) * n / d.params.length


def demand(n: int, d: FundamentalDiagram) -> float:
    q = quadratic_flow(n, d)
    return q if _uncongested(n, d.capacity) else d.q_max


def supply(n: int, d: FundamentalDiagram) -> float:
    q = quadratic_flow(n, d)
    return d.q_max if _uncongested(n, d.capacity) else q


def normalized_service_rate(i: int, d: FundamentalDiagram) -> float:
    check_count(i, 1, d.capacity, name='i')
    return quadratic_flow(i, d) / d.q_max / i


def speed_profile(d: FundamentalDiagram) -> np.ndarray:
    """f(i) = v_i / v_1 for i = 1..c."""
    c = d.capacity
    i = np.arange(1, c + 1, dtype=float)
    if d.shape is None:
        return (c - i + 1) / c
    return np.exp(-(((i - 1) / d.shape.beta) ** d.shape.gamma))


def flow_profile(d: FundamentalDiagram) -> np.ndarray:
    """q_n for n = 0..c."""
    c = d.capacity
    n = np.arange(c + 1, dtype=float)
    if d.shape is None:
        return _quadratic(n, c, d.q_max)
    q = np.zeros(c + 1)
    q[1:] = d.params.free_speed * speed_profile(d) * n[1:] / d.params.length
    return q


def demand_profile(d: FundamentalDiagram) -> np.ndarray:
    d.require_linear()
    n = np.arange(d.capacity + 1)
    return np.where(_uncongested(n, d.capacity), flow_profile(d), d.q_max)


def supply_profile(d: FundamentalDiagram) -> np.ndarray:
    d.require_linear()
    n = np.arange(d.capacity + 1)
    return np.where(_uncongested(n, d.capacity), d.q_max, flow_profile(d))
