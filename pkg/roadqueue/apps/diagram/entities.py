import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from django.db import models
from django.utils.translation import gettext_lazy as _

from apps.core.exceptions import DomainError

__all__ = [
    'SpeedModel',
    'SectionParams',
    'ExponentialShape',
    'FundamentalDiagram',
]

# Largest accepted distance between L * rho_j and the nearest integer capacity.
CAPACITY_ATOL = 1e-9


class SpeedModel(models.TextChoices):
    LINEAR = 'linear', _('Linear speed, quadratic flow')
    EXPONENTIAL = 'exponential', _('Exponential speed')


def require_positive(name: str, value: float) -> None:
    if isinstance(value, bool) or not isinstance(value, int | float) or not math.isfinite(value) or value <= 0:
        raise DomainError(f'{name} must be a finite number > 0, got {value!r}')


@dataclass(frozen=True)
class SectionParams:
    """Physical description of a road section: km, km/h and veh/km."""

    length: float
    free_speed: float
    jam_density: float
    capacity: int = field(init=False)

    def __post_init__(self):
        require_positive('length', self.length)
        require_positive('free_speed', self.free_speed)
        require_positive('jam_density', self.jam_density)
        cars = self.length * self.jam_density
        capacity = round(cars)
        if abs(cars - capacity) > CAPACITY_ATOL * max(1.0, cars):
            raise DomainError(f'length * jam_density = {cars!r} is not an integer number of cars')
        if capacity < 1:
            raise DomainError(f'Section must hold at least one car, got capacity {capacity}')
        object.__setattr__(self, 'capacity', capacity)

    @property
    def critical_density(self) -> float:
        return self.jam_density / 2

    @property
    def free_service_time(self) -> float:
        """Hours needed to cross the empty section."""
        return self.length / self.free_speed


@dataclass(frozen=True)
class ExponentialShape:
    beta: float
    gamma: float

    def __post_init__(self):
        require_positive('beta', self.beta)
        require_positive('gamma', self.gamma)


@dataclass(frozen=True)
class FundamentalDiagram:
    params: SectionParams
    shape: ExponentialShape | None = None
    q_max_override: float | None = None

    def __post_init__(self):
        if self.q_max_override is not None:
            require_positive('q_max_override', self.q_max_override)

    @property
    def model(self) -> SpeedModel:
        return SpeedModel.LINEAR if self.shape is None else SpeedModel.EXPONENTIAL

    @property
    def capacity(self) -> int:
        return self.params.capacity

    @cached_property
    def q_max(self) -> float:
        if self.q_max_override is not None:
            return float(self.q_max_override)
        p = self.params
        if self.shape is None:
            c = p.capacity
            # flow at the vertex n = (c + 1) / 2 of the parabola
            return p.free_speed / (p.length * c) * ((c + 1) / 2) ** 2
        n = np.arange(1, p.capacity + 1)
        speeds = p.free_speed * np.exp(-(((n - 1) / self.shape.beta) ** self.shape.gamma))
        return float(np.max(speeds * n / p.length))

    def require_linear(self) -> None:
        if self.shape is not None:
            raise DomainError('Operation is defined for the linear speed / quadratic flow model only')
