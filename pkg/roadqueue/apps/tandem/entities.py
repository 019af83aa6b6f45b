from dataclasses import dataclass, field
from typing import Any

import numpy as np
from django.db import models
from django.utils.translation import gettext_lazy as _

from apps.core.exceptions import DomainError
from apps.diagram.entities import FundamentalDiagram
from apps.diagram.services.loader import dump_section
from apps.section.entities import DistributionSource, PerformanceReport, StationaryDistribution
from apps.section.services.stationary import check_rate

__all__ = [
    'JOINT_ATOL',
    'SolverKind',
    'SolverMode',
    'TandemConfig',
    'TandemSolution',
    'StabilityReport',
]

JOINT_ATOL = 1e-10


class SolverKind(models.TextChoices):
    BISECTION = 'bisection', _('Bisection on h(theta) - theta')
    ITERATION = 'iteration', _('Fixed point iteration')


class SolverMode(models.TextChoices):
    CONVERGED_ITERATION = 'converged_iteration', _('Converged iteration')
    BISECTION_ROOT = 'bisection_root', _('Bisection root')
    OSCILLATORY_AVERAGED = 'oscillatory_averaged', _('Oscillatory, averaged')


@dataclass(frozen=True)
class TandemConfig:
    """Constrained section 1 feeding closed section 2, with Poisson arrivals at `arrival_rate` veh/h."""

    section1: FundamentalDiagram
    section2: FundamentalDiagram
    arrival_rate: float

    def __post_init__(self):
        self.section1.require_linear()
        self.section2.require_linear()
        object.__setattr__(self, 'arrival_rate', check_rate('lambda', self.arrival_rate))

    @property
    def capacities(self) -> tuple[int, int]:
        return self.section1.capacity, self.section2.capacity


@dataclass(frozen=True)
class StabilityReport:
    satisfied: bool
    s: float
    bound: float


@dataclass(frozen=True, eq=False)
class TandemSolution:
    """
    Stationary regime of the tandem.

    `theta` is the reported transfer throughput. In oscillatory mode it is the
    average of the two adherence values, while every distribution, `delta` and
    the reports are evaluated at `fixed_point`, the root of h(theta) = theta.
    """

    config: TandemConfig
    theta: float
    delta: float
    mode: SolverMode
    trace: tuple[float, ...]
    fixed_point: float
    residual: float
    p2: StationaryDistribution
    p1: StationaryDistribution
    p1_given_2: np.ndarray
    joint: np.ndarray
    reports: tuple[PerformanceReport, PerformanceReport]
    adherence: tuple[float, float] | None = None
    closed_reference: StationaryDistribution | None = field(default=None)

    def __post_init__(self):
        lam = self.config.arrival_rate
        if not 0.0 <= self.theta <= lam or not 0.0 <= self.fixed_point <= lam:
            raise DomainError(f'Throughput outside [0, {lam}]: theta={self.theta}, fixed point={self.fixed_point}')
        if not 0.0 <= self.delta <= self.fixed_point:
            raise DomainError(f'delta={self.delta} outside [0, {self.fixed_point}]')
        c1, c2 = self.config.capacities
        if self.joint.shape != (c1 + 1, c2 + 1) or self.p1_given_2.shape != (c1 + 1, c2 + 1):
            raise DomainError('Joint and conditional matrices must be (c1 + 1) x (c2 + 1)')
        if abs(self.joint.sum() - 1.0) > JOINT_ATOL:
            raise DomainError(f'Joint distribution sums to {self.joint.sum()!r}')
        if np.max(np.abs(self.joint.sum(axis=1) - self.p1.probs)) > JOINT_ATOL:
            raise DomainError('Joint distribution does not marginalize to p1')

    @property
    def arrival_rate(self) -> float:
        return self.config.arrival_rate

    def to_dict(self) -> dict[str, Any]:
        lam = self.arrival_rate
        report1, report2 = self.reports
        document = {
            'lambda': lam,
            'sections': [dump_section(self.config.section1), dump_section(self.config.section2)],
            'theta': self.theta,
            'delta': self.delta,
            'mode': self.mode.value,
            'fixed_point': self.fixed_point,
            'residual': self.residual,
            'adherence': self.adherence,
            'trace': self.trace,
            'p1': self.p1.to_dict(lam),
            'p2': self.p2.to_dict(self.fixed_point),
            'p1_given_2': self.p1_given_2,
            'joint': {'source': DistributionSource.TANDEM_JOINT.value, 'probs': self.joint},
            'reports': {'section1': report1.to_dict(), 'section2': report2.to_dict()},
        }
        if self.closed_reference is not None:
            document['closed_reference'] = self.closed_reference.to_dict(lam)
        return document
