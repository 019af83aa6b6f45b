from apps.cli.services.runners import SectionRunService

from ._base import RunConfigCommand


class Command(RunConfigCommand):
    help = "Stationary analysis of a single road section"
    actions = {
        'analyze': 'Distribution and performance measures at one arrival rate',
        'sweep': 'Performance measures over a grid of arrival rates',
    }

    def run_analyze(self, config):
        return SectionRunService.analyze(config)

    def run_sweep(self, config):
        return SectionRunService.sweep(config)
