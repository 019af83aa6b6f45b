from django.core.management import BaseCommand

from apps.cli.run_config import load_run_config
from apps.cli.services.errors import command_errors


class RunConfigCommand(BaseCommand):
    """Management command with `<action> --config <file>` subcommands."""

    actions: dict[str, str] = {}
    requires_system_checks = []

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='action', required=True)
        for action, help_text in self.actions.items():
            subparser = subparsers.add_parser(action, help=help_text)
            subparser.add_argument(
                '--config',
                required=True,
                help='Path to the JSON run configuration',
            )

    def handle(self, *args, **options):
        action = options['action']
        with command_errors():
            config = load_run_config(options['config'])
            self.stdout.write(f'Running {self.name} {action}...')
            paths = getattr(self, f'run_{action}')(config)
        for path in paths:
            self.stdout.write(self.style.SUCCESS(f'Wrote {path}'))

    @property
    def name(self) -> str:
        return self.__module__.rsplit('.', 1)[-1]
