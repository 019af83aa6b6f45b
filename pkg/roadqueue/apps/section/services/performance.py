import math

from apps.section.entities import PerformanceReport, StationaryDistribution
from apps.section.services.stationary import check_rate

__all__ = [
    'performance_measures',
]


def performance_measures(arrival_rate: float, dist: StationaryDistribution) -> PerformanceReport:
    """Blocking, throughput, mean occupancy and, by Little's law, mean time in the section."""
    arrival_rate = check_rate('lambda', arrival_rate)
    blocking = dist.blocking
    throughput = arrival_rate * (1.0 - blocking)
    expected_count = dist.mean()
    defined = throughput > 0
    return PerformanceReport(
        blocking_probability=blocking,
        throughput=throughput,
        expected_count=expected_count,
        expected_time=expected_count / throughput if defined else math.nan,
        expected_time_defined=defined,
    )
