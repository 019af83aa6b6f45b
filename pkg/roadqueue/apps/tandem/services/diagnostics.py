"""Monotonicity and stability diagnostics of the fixed-point map h."""

import numpy as np
import pandas as pd

from apps.core.exceptions import DomainError
from apps.section.services.stationary import check_rate
from apps.tandem.entities import StabilityReport, TandemConfig
from apps.tandem.services.coupling import conditional_matrix, h, p2_given_theta

__all__ = [
    'p2_derivative',
    's_statistic',
    'h_derivative',
    'stability_condition',
    'h_curve',
]


def _positive_theta(theta: float) -> float:
    theta = check_rate('theta', theta)
    if theta == 0:
        raise DomainError('theta must be > 0')
    return theta


def p2_derivative(theta: float, cfg: TandemConfig) -> np.ndarray:
    """dP^(2)_n / dtheta = P^(2)_n (n - mean) / theta."""
    theta = _positive_theta(theta)
    p2 = p2_given_theta(theta, cfg)
    return p2.probs * (np.arange(len(p2)) - p2.mean()) / theta


def s_statistic(theta: float, cfg: TandemConfig) -> float:
    """Covariance of the section-1 blocking probability given n2 with n2 under P^(2)(theta)."""
    theta = _positive_theta(theta)
    p2 = p2_given_theta(theta, cfg)
    blocking = conditional_matrix(cfg.arrival_rate, cfg)[-1]
    centered = np.arange(len(p2)) - p2.mean()
    # blocking[n2] - blocking[0] vanishes exactly while supply2 is at q_max2
    return float(np.sum((blocking - blocking[0]) * p2.probs * centered))


def h_derivative(theta: float, cfg: TandemConfig) -> float:
    return -cfg.arrival_rate / _positive_theta(theta) * s_statistic(theta, cfg)


def stability_condition(theta: float, cfg: TandemConfig) -> StabilityReport:
    """Sufficient condition S < theta / lambda for the iteration to converge, evaluated at theta."""
    if cfg.arrival_rate == 0:
        raise DomainError('lambda must be > 0')
    s = s_statistic(theta, cfg)
    bound = theta / cfg.arrival_rate
    return StabilityReport(satisfied=s < bound, s=s, bound=bound)


def h_curve(cfg: TandemConfig, points: int = 50) -> pd.DataFrame:
    if points < 2:
        raise DomainError('A curve needs at least two points')
    thetas = np.linspace(0.0, cfg.arrival_rate, points)
    values = [h(theta, cfg) for theta in thetas]
    slopes = [h_derivative(theta, cfg) if theta > 0 else np.nan for theta in thetas]
    return pd.DataFrame({
        'theta': thetas,
        'h': values,
        'e': np.asarray(values) - thetas,
        'dh_dtheta': slopes,
    })
