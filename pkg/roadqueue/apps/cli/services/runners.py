import logging
from pathlib import Path

import pandas as pd

from apps.cli.run_config import OutputFormat, RunConfig
from apps.cli.services.sweeps import ordered_map
from apps.core.artifacts import write_json, write_table
from apps.core.exceptions import NonConvergenceError
from apps.diagram.services.laws import speed_profile
from apps.oracle.services.comparison import compare_with_decomposition
from apps.section.entities import DistributionSource, StationaryDistribution
from apps.section.services.performance import performance_measures
from apps.section.services.stationary import stationary_flow_form, stationary_speed_form
from apps.tandem.services.diagnostics import h_curve
from apps.tandem.services.solvers import solve
from apps.tandem.services.tables import SWEEP_COLUMNS, sweep_row

__all__ = [
    'SectionRunService',
    'TandemRunService',
    'OracleRunService',
]

logger = logging.getLogger(__name__)


def _write_records(config: RunConfig, frame: pd.DataFrame, key: str) -> list[Path]:
    if config.output.format == OutputFormat.CSV:
        return [write_table(config.output.path, frame, config.digest)]
    return [write_json(config.output.path, {key: frame.to_dict(orient='records')}, config.digest)]


class SectionRunService:
    @staticmethod
    def distribution(config: RunConfig, arrival_rate: float) -> StationaryDistribution:
        section = config.sections[0]
        if config.form == DistributionSource.SPEED_FORM:
            return stationary_speed_form(arrival_rate, section.params, speed_profile(section))
        return stationary_flow_form(arrival_rate, section)

    @staticmethod
    def analyze(config: RunConfig) -> list[Path]:
        config.require_sections(1)
        arrival_rate = config.require_single_rate()
        dist = SectionRunService.distribution(config, arrival_rate)
        report = performance_measures(arrival_rate, dist)
        if config.output.format == OutputFormat.CSV:
            return [
                write_table(config.output.path, dist.to_frame(), config.digest),
                write_json(config.output.sibling('.report.json'), report.to_dict(), config.digest),
            ]
        payload = {**dist.to_dict(arrival_rate), 'report': report.to_dict()}
        return [write_json(config.output.path, payload, config.digest)]

    @staticmethod
    def sweep(config: RunConfig) -> list[Path]:
        config.require_sections(1)

        def row(arrival_rate: float) -> dict:
            report = performance_measures(arrival_rate, SectionRunService.distribution(config, arrival_rate))
            return {
                'lambda': arrival_rate,
                'p_block': report.blocking_probability,
                'throughput': report.throughput,
                'n_mean': report.expected_count,
                'w_hours': report.expected_time,
            }

        frame = pd.DataFrame(ordered_map(row, config.arrival_rates()))
        return _write_records(config, frame, 'rows')


class TandemRunService:
    @staticmethod
    def _solve(config: RunConfig, arrival_rate: float):
        try:
            return solve(
                config.tandem(arrival_rate),
                config.solver,
                tol=config.tol,
                max_iter=config.max_iter,
                theta0=config.theta0,
            )
        except NonConvergenceError as e:
            write_json(
                config.output.sibling('.trace.json'),
                {'lambda': arrival_rate, 'error': str(e), 'trace': e.trace},
                config.digest,
            )
            raise

    @staticmethod
    def solve(config: RunConfig) -> list[Path]:
        config.require_sections(2)
        solution = TandemRunService._solve(config, config.require_single_rate())
        if config.output.format == OutputFormat.CSV:
            frame = pd.DataFrame([sweep_row(solution)], columns=SWEEP_COLUMNS)
            return [
                write_table(config.output.path, frame, config.digest),
                write_json(config.output.sibling('.solution.json'), solution.to_dict(), config.digest),
            ]
        return [write_json(config.output.path, solution.to_dict(), config.digest)]

    @staticmethod
    def sweep(config: RunConfig) -> list[Path]:
        config.require_sections(2)
        solutions = ordered_map(lambda rate: TandemRunService._solve(config, rate), config.arrival_rates())
        frame = pd.DataFrame([sweep_row(solution) for solution in solutions], columns=SWEEP_COLUMNS)
        logger.info('Tandem sweep over %d arrival rates finished', len(frame))
        return _write_records(config, frame, 'rows')

    @staticmethod
    def curve(config: RunConfig) -> list[Path]:
        tandem = config.tandem(config.require_single_rate())
        return _write_records(config, h_curve(tandem, config.points), 'curve')


class OracleRunService:
    @staticmethod
    def compare(config: RunConfig) -> list[Path]:
        config.require_sections(2)
        comparisons = ordered_map(
            lambda rate: compare_with_decomposition(config.tandem(rate), tol=config.tol),
            config.arrival_rates(),
        )
        if config.sweep is None and config.output.format == OutputFormat.JSON:
            return [write_json(config.output.path, comparisons[0].to_dict(), config.digest)]
        frame = pd.DataFrame([comparison.to_dict() for comparison in comparisons])
        return _write_records(config, frame, 'comparisons')
