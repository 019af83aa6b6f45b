from contextlib import contextmanager

from django.core.management import CommandError

from apps.core.exceptions import ConfigError, ContractError, DomainError, NonConvergenceError

__all__ = [
    'EXIT_DOMAIN',
    'EXIT_CONFIG',
    'EXIT_NON_CONVERGENCE',
    'command_errors',
]

EXIT_DOMAIN = 1
EXIT_CONFIG = 2
EXIT_NON_CONVERGENCE = 3


@contextmanager
def command_errors():
    """Map library errors onto CommandError exit codes."""
    try:
        yield
    except ConfigError as e:
        raise CommandError(f'Invalid configuration: {e}', returncode=EXIT_CONFIG) from e
    except NonConvergenceError as e:
        raise CommandError(str(e), returncode=EXIT_NON_CONVERGENCE) from e
    except (DomainError, ContractError) as e:
        raise CommandError(str(e), returncode=EXIT_DOMAIN) from e
