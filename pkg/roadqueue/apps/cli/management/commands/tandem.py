from apps.cli.services.runners import TandemRunService

from ._base import RunConfigCommand


class Command(RunConfigCommand):
    help = "Two road sections in tandem"
    actions = {
        'solve': 'Solve the transfer throughput and all distributions at one arrival rate',
        'sweep': 'Throughputs and travel times over a grid of arrival rates',
        'curve': 'Tabulate h(theta) over [0, lambda] at one arrival rate',
    }

    def run_solve(self, config):
        return TandemRunService.solve(config)

    def run_sweep(self, config):
        return TandemRunService.sweep(config)

    def run_curve(self, config):
        return TandemRunService.curve(config)
