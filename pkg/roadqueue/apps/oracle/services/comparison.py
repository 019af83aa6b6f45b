import numpy as np

from apps.core.exceptions import ContractError
from apps.oracle.entities import OracleComparison
from apps.oracle.services.joint_chain import joint_tandem_stationary
from apps.section.entities import StationaryDistribution
from apps.tandem.entities import TandemConfig
from apps.tandem.services.solvers import solve_bisection

__all__ = [
    'tv_distance',
    'compare_with_decomposition',
]


def _vector(p: StationaryDistribution | np.ndarray) -> np.ndarray:
    return p.probs if isinstance(p, StationaryDistribution) else np.asarray(p, dtype=float)


def tv_distance(p: StationaryDistribution | np.ndarray, q: StationaryDistribution | np.ndarray) -> float:
    p, q = _vector(p), _vector(q)
    if p.shape != q.shape:
        raise ContractError(f'Distributions differ in length: {p.shape} and {q.shape}')
    return float(0.5 * np.abs(p - q).sum())


def compare_with_decomposition(cfg: TandemConfig, tol: float | None = None, max_states: int | None = None) -> OracleComparison:
    """Distance between the decomposition's marginals and those of the exact joint chain."""
    exact = joint_tandem_stationary(cfg, max_states=max_states)
    solution = solve_bisection(cfg, tol=tol)
    return OracleComparison(
        arrival_rate=cfg.arrival_rate,
        tv_p1=tv_distance(solution.p1, exact.marginal1),
        tv_p2=tv_distance(solution.p2, exact.marginal2),
        theta_decomposition=solution.theta,
        theta_joint=exact.transfer_flow,
        delta_decomposition=solution.delta,
        delta_joint=exact.departure_flow,
        joint_residual=exact.residual,
    )
