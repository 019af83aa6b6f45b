from apps.cli.services.runners import OracleRunService

from ._base import RunConfigCommand


class Command(RunConfigCommand):
    help = "Compare the tandem decomposition with the exact joint Markov chain"
    actions = {
        'compare': 'Total variation distances and throughputs of both models',
    }

    def run_compare(self, config):
        return OracleRunService.compare(config)
