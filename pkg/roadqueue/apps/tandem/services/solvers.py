"""
Solvers of the fixed-point equation theta = h(theta).

e(theta) = h(theta) - theta is positive at 0, negative at lambda and
strictly decreasing, so bisection on [0, lambda] always finds the unique
root. The plain iteration theta_k = h(theta_{k-1}) is kept as an alternate
mode: it converges for light traffic and falls into a 2-cycle once the
slope of h at the root drops below -1.
"""

import logging

from django.conf import settings
from scipy import optimize

from apps.core.exceptions import DomainError, NonConvergenceError
from apps.section.entities import DistributionSource, StationaryDistribution
from apps.section.services.performance import performance_measures
from apps.section.services.stationary import check_rate
from apps.tandem.entities import SolverKind, SolverMode, TandemConfig, TandemSolution
from apps.tandem.services.coupling import (
    closed_section_reference,
    conditional_matrix,
    fixed_point_residual,
    h,
    joint_distribution,
    p2_given_theta,
)

__all__ = [
    'default_tolerance',
    'solve_bisection',
    'solve_iteration',
    'solve',
]

logger = logging.getLogger(__name__)

# Bracket width at which scipy's bisection stops, relative to lambda.
BISECTION_XTOL = 1e-12
BISECTION_MAXITER = 200


def default_tolerance(cfg: TandemConfig) -> float:
    return settings.ROADQUEUE_TOL_FACTOR * cfg.section1.q_max


def _tolerance(cfg: TandemConfig, tol: float | None) -> float:
    tol = default_tolerance(cfg) if tol is None else check_rate('tol', tol)
    if tol == 0:
        raise DomainError('tol must be > 0')
    return tol


def _assemble(
    cfg: TandemConfig,
    fixed_point: float,
    theta: float,
    mode: SolverMode,
    trace: list[float],
    adherence: tuple[float, float] | None = None,
) -> TandemSolution:
    lam = cfg.arrival_rate
    p2 = p2_given_theta(fixed_point, cfg)
    p1_given_2 = conditional_matrix(lam, cfg)
    p1 = StationaryDistribution(probs=p1_given_2 @ p2.probs, source=DistributionSource.TANDEM_MARGINAL)
    report1 = performance_measures(lam, p1)
    report2 = performance_measures(fixed_point, p2)
    return TandemSolution(
        config=cfg,
        theta=theta,
        delta=report2.throughput,
        mode=mode,
        trace=tuple(trace),
        fixed_point=fixed_point,
        residual=abs(report1.throughput - fixed_point),
        p2=p2,
        p1=p1,
        p1_given_2=p1_given_2,
        joint=joint_distribution(p1_given_2, p2),
        reports=(report1, report2),
        adherence=adherence,
        closed_reference=closed_section_reference(cfg),
    )


def solve_bisection(cfg: TandemConfig, tol: float | None = None) -> TandemSolution:
    tol = _tolerance(cfg, tol)
    lam = cfg.arrival_rate
    if lam == 0:
        return _assemble(cfg, 0.0, 0.0, SolverMode.BISECTION_ROOT, [0.0])

    trace: list[float] = []

    def residual(theta: float) -> float:
        trace.append(float(theta))
        return fixed_point_residual(theta, cfg)

    root = float(optimize.bisect(residual, 0.0, lam, xtol=BISECTION_XTOL * lam, maxiter=BISECTION_MAXITER))
    solution = _assemble(cfg, root, root, SolverMode.BISECTION_ROOT, trace)
    if solution.residual > tol:
        raise NonConvergenceError(f'Bisection residual {solution.residual} exceeds tol={tol}', trace)
    logger.debug('lambda=%s: bisection root %s after %d evaluations', lam, root, len(trace))
    return solution


def solve_iteration(
    cfg: TandemConfig,
    theta0: float | None = None,
    max_iter: int | None = None,
    tol: float | None = None,
    window: int | None = None,
) -> TandemSolution:
    """
    Iterate theta_k = h(theta_{k-1}) from theta0 (default lambda).

    Stops when two consecutive iterates are within tol, or declares an
    oscillation once |theta_k - theta_{k-2}| <= tol < |theta_k - theta_{k-1}|
    held for `window` consecutive steps. An oscillation reports
    (lambda + h(lambda)) / 2 as theta and the bisection root as fixed point.
    """
    tol = _tolerance(cfg, tol)
    max_iter = settings.ROADQUEUE_MAX_ITER if max_iter is None else max_iter
    window = settings.ROADQUEUE_OSCILLATION_WINDOW if window is None else window
    lam = cfg.arrival_rate
    if lam == 0:
        return _assemble(cfg, 0.0, 0.0, SolverMode.CONVERGED_ITERATION, [0.0])

    theta0 = lam if theta0 is None else check_rate('theta0', theta0)
    if theta0 > lam:
        raise DomainError(f'theta0={theta0} exceeds lambda={lam}')

    trace = [theta0]
    hits = 0
    for _ in range(max_iter):
        current = h(trace[-1], cfg)
        trace.append(current)
        if abs(current - trace[-2]) <= tol:
            logger.debug('lambda=%s: iteration converged to %s in %d steps', lam, current, len(trace) - 1)
            return _assemble(cfg, current, current, SolverMode.CONVERGED_ITERATION, trace)
        hits = hits + 1 if len(trace) >= 3 and abs(current - trace[-3]) <= tol else 0
        if hits >= window:
            averaged = (lam + h(lam, cfg)) / 2
            root = solve_bisection(cfg, tol).fixed_point
            adherence = (max(trace[-1], trace[-2]), min(trace[-1], trace[-2]))
            logger.info('lambda=%s: iteration oscillates between %s and %s', lam, *adherence)
            return _assemble(cfg, root, averaged, SolverMode.OSCILLATORY_AVERAGED, trace, adherence)

    logger.warning('lambda=%s: iteration exhausted %d steps', lam, max_iter)
    raise NonConvergenceError(f'Fixed point iteration did not settle within {max_iter} steps', trace)


def solve(
    cfg: TandemConfig,
    solver: SolverKind = SolverKind.BISECTION,
    *,
    tol: float | None = None,
    max_iter: int | None = None,
    theta0: float | None = None,
) -> TandemSolution:
    if SolverKind(solver) == SolverKind.ITERATION:
        return solve_iteration(cfg, theta0=theta0, max_iter=max_iter, tol=tol)
    return solve_bisection(cfg, tol=tol)
