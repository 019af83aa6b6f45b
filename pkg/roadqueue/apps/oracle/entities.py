import math
from collections.abc import Hashable, Mapping
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy import linalg

from apps.core.exceptions import DomainError

__all__ = [
    'CtmcSpec',
    'JointChainResult',
    'OracleComparison',
]


@dataclass(frozen=True, eq=False)
class CtmcSpec:
    """Finite continuous-time Markov chain given by its off-diagonal rates."""

    states: tuple[Hashable, ...]
    rates: Mapping[tuple[Hashable, Hashable], float]

    def __post_init__(self):
        index = {state: i for i, state in enumerate(self.states)}
        if len(index) != len(self.states):
            raise DomainError('States must be distinct')
        for (source, target), rate in self.rates.items():
            if source not in index or target not in index:
                raise DomainError(f'Transition {source} -> {target} leaves the state space')
            if source == target:
                raise DomainError(f'Self-loop on state {source}')
            if not math.isfinite(rate) or rate < 0:
                raise DomainError(f'Rate {source} -> {target} must be finite and >= 0, got {rate}')
        object.__setattr__(self, '_index', index)

    def _transitions(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        sources = np.array([self._index[source] for source, _ in self.rates], dtype=np.intp)
        targets = np.array([self._index[target] for _, target in self.rates], dtype=np.intp)
        return sources, targets, np.fromiter(self.rates.values(), dtype=float, count=len(self.rates))

    def generator(self) -> np.ndarray:
        size = len(self.states)
        q = np.zeros((size, size))
        for (source, target), rate in self.rates.items():
            q[self._index[source], self._index[target]] += rate
        q[np.diag_indices(size)] = -q.sum(axis=1)
        return q

    def balance_residual(self, pi: np.ndarray) -> float:
        """max |pi Q|, accumulated from the rates without forming Q."""
        sources, targets, rates = self._transitions()
        size = len(self.states)
        moved = pi[sources] * rates
        flux = np.bincount(targets, weights=moved, minlength=size) - np.bincount(sources, weights=moved, minlength=size)
        return float(np.max(np.abs(flux)))

    def stationary(self) -> tuple[np.ndarray, float]:
        """Solve pi Q = 0 with the last balance equation replaced by sum(pi) = 1; returns pi and max |pi Q|."""
        size = len(self.states)
        sources, targets, rates = self._transitions()
        # Q transposed, assembled in place: the only dense array of the solve
        system = np.zeros((size, size))
        np.add.at(system, (targets, sources), rates)
        np.add.at(system, (sources, sources), -rates)
        system[-1, :] = 1.0
        rhs = np.zeros(size)
        rhs[-1] = 1.0
        try:
            pi = linalg.solve(system, rhs, overwrite_a=True, check_finite=False)
        except linalg.LinAlgError as e:
            raise DomainError('Generator is singular: the chain has more than one closed class') from e
        pi = np.clip(pi, 0.0, None)
        pi /= pi.sum()
        return pi, self.balance_residual(pi)


@dataclass(frozen=True, eq=False)
class JointChainResult:
    """Stationary law of the exact (n1, n2) chain and the flows it implies."""

    joint: np.ndarray
    residual: float
    arrival_rate: float
    transfer_rates: np.ndarray
    departure_rates: np.ndarray

    @property
    def marginal1(self) -> np.ndarray:
        return self.joint.sum(axis=1)

    @property
    def marginal2(self) -> np.ndarray:
        return self.joint.sum(axis=0)

    @property
    def blocking_probability(self) -> float:
        return float(self.joint[-1, :].sum())

    @property
    def accepted_flow(self) -> float:
        return self.arrival_rate * (1.0 - self.blocking_probability)

    @property
    def transfer_flow(self) -> float:
        return float(np.sum(self.joint * self.transfer_rates))

    @property
    def departure_flow(self) -> float:
        return float(self.marginal2 @ self.departure_rates)


@dataclass(frozen=True)
class OracleComparison:
    arrival_rate: float
    tv_p1: float
    tv_p2: float
    theta_decomposition: float
    theta_joint: float
    delta_decomposition: float
    delta_joint: float
    joint_residual: float

    def to_dict(self) -> dict[str, Any]:
        return {
            'lambda': self.arrival_rate,
            'tv_p1': self.tv_p1,
            'tv_p2': self.tv_p2,
            'theta_decomposition': self.theta_decomposition,
            'theta_joint': self.theta_joint,
            'delta_decomposition': self.delta_decomposition,
            'delta_joint': self.delta_joint,
            'joint_residual': self.joint_residual,
        }
