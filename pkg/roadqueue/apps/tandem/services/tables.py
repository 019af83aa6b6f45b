from typing import Any

from apps.tandem.entities import TandemSolution

__all__ = [
    'SWEEP_COLUMNS',
    'sweep_row',
]

SWEEP_COLUMNS = (
    'lambda',
    'theta',
    'delta',
    'mode',
    'p1_block',
    'p2_block',
    'n1_mean',
    'n2_mean',
    'w1_hours',
    'w2_hours',
    'residual',
)


def sweep_row(solution: TandemSolution) -> dict[str, Any]:
    """One sweep line; travel times come from Little's law, W1 = N1 / theta and W2 = N2 / delta."""
    report1, report2 = solution.reports
    return {
        'lambda': solution.arrival_rate,
        'theta': solution.theta,
        'delta': solution.delta,
        'mode': solution.mode.value,
        'p1_block': report1.blocking_probability,
        'p2_block': report2.blocking_probability,
        'n1_mean': report1.expected_count,
        'n2_mean': report2.expected_count,
        'w1_hours': report1.expected_time,
        'w2_hours': report2.expected_time,
        'residual': solution.residual,
    }
