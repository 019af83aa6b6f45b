from collections.abc import Sequence

__all__ = [
    'RoadQueueError',
    'DomainError',
    'ContractError',
    'ConfigError',
    'StateSpaceTooLargeError',
    'NonConvergenceError',
]


class RoadQueueError(Exception):
    pass


class DomainError(RoadQueueError, ValueError):
    """Argument outside the domain of a traffic law or a stationary formula."""


class ContractError(RoadQueueError):
    """Caller broke the calling convention of an operation."""


class ConfigError(RoadQueueError):
    """Malformed run or section configuration document."""


class StateSpaceTooLargeError(DomainError):
    def __init__(self, states: int, limit: int):
        super().__init__(f'Joint state space has {states} states, the dense solve accepts at most {limit}')
        self.states = states
        self.limit = limit


class NonConvergenceError(RoadQueueError):
    def __init__(self, message: str, trace: Sequence[float]):
        super().__init__(message)
        self.trace = tuple(trace)
