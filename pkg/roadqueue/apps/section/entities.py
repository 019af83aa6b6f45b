import math
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np
import pandas as pd
from django.db import models
from django.utils.translation import gettext_lazy as _

from apps.core.exceptions import DomainError

__all__ = [
    'NORMALIZATION_ATOL',
    'DistributionSource',
    'OutflowKind',
    'StationaryDistribution',
    'PerformanceReport',
]

NORMALIZATION_ATOL = 1e-12


class DistributionSource(models.TextChoices):
    SPEED_FORM = 'speed_form', _('Speed form')
    FLOW_FORM = 'flow_form', _('Flow form')
    CTMC_ORACLE = 'ctmc_oracle', _('Markov chain oracle')
    TANDEM_MARGINAL = 'tandem_marginal', _('Tandem marginal')
    TANDEM_CONDITIONAL = 'tandem_conditional', _('Tandem conditional')
    TANDEM_JOINT = 'tandem_joint', _('Tandem joint')


class OutflowKind(models.TextChoices):
    OPEN = 'open', _('Open section')
    CONSTRAINED = 'constrained', _('Constrained section')
    CLOSED = 'closed', _('Closed section')


@dataclass(frozen=True, eq=False)
class StationaryDistribution:
    """Probabilities of 0..c cars; `condition` holds n2 for conditional distributions."""

    probs: np.ndarray
    source: DistributionSource
    condition: int | None = None

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        if probs.ndim != 1 or probs.size < 2:
            raise DomainError('A distribution needs a vector over 0..c with c >= 1')
        if not np.all(np.isfinite(probs)) or np.any(probs < 0):
            raise DomainError('Probabilities must be finite and non-negative')
        total = probs.sum()
        if abs(total - 1.0) > NORMALIZATION_ATOL:
            raise DomainError(f'Probabilities sum to {total!r}, not 1')
        if (self.source == DistributionSource.TANDEM_CONDITIONAL) != (self.condition is not None):
            raise DomainError('Only conditional distributions carry a condition')
        probs.setflags(write=False)
        object.__setattr__(self, 'probs', probs)
        object.__setattr__(self, 'source', DistributionSource(self.source))

    def __len__(self) -> int:
        return self.probs.size

    def __getitem__(self, n):
        return self.probs[n]

    @property
    def capacity(self) -> int:
        return self.probs.size - 1

    @property
    def blocking(self) -> float:
        return float(self.probs[-1])

    def mean(self) -> float:
        return float(np.arange(self.probs.size) @ self.probs)

    def mode(self) -> int:
        return int(np.argmax(self.probs))

    def to_dict(self, arrival_rate: float) -> dict[str, Any]:
        document = {
            'capacity': self.capacity,
            'lambda': arrival_rate,
            'probs': self.probs,
            'source': self.source.value,
        }
        if self.condition is not None:
            document['condition_n2'] = self.condition
        return document

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({'n': np.arange(self.probs.size), 'prob': self.probs})


@dataclass(frozen=True)
class PerformanceReport:
    """Blocking, throughput (veh/h), expected cars and expected time in hours."""

    blocking_probability: float
    throughput: float
    expected_count: float
    expected_time: float
    expected_time_defined: bool

    def __post_init__(self):
        if not 0.0 <= self.blocking_probability <= 1.0:
            raise DomainError(f'Blocking probability {self.blocking_probability} outside [0, 1]')
        if self.expected_time_defined == math.isnan(self.expected_time):
            raise DomainError('expected_time must be NaN exactly when it is flagged undefined')

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)
