"""
Base dos comandos: relatórios em stdout, logs em stderr e códigos de saída
1 (uso), 2 (falha numérica) e 3 (valor de referência fora da tolerância).
"""
import logging
import sys

import orjson
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from apps.configurations.services import configuration_from_payload
from apps.utils.choices import ExitCode, QuadratureBackend
from apps.utils.exceptions import GoldenMismatchError, InvalidInputError, NumericalError
from apps.utils.formatting import dumps_json, write_csv

logger = logging.getLogger(__name__)


def load_configuration(path):
    """Reads a configuration JSON file; unreadable or invalid files are usage errors."""
    try:
        with open(path, 'rb') as stream:
            payload = orjson.loads(stream.read())
    except OSError as e:
        raise InvalidInputError(f'cannot read {path}: {e.strerror}')
    except orjson.JSONDecodeError as e:
        raise InvalidInputError(f'{path} is not valid JSON: {e}')
    return configuration_from_payload(payload)


class MelnikovCommand(BaseCommand):
    """
    Subclasses implementam ``add_command_arguments`` e ``run``; ``--tol``
    e ``--progress`` valem para todos os comandos.
    """

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        if self._called_from_command_line:
            # uso incorreto sai com 1
            def error(message):
                parser.print_usage(sys.stderr)
                parser.exit(ExitCode.USAGE, f'{parser.prog}: error: {message}\n')

            parser.error = error
        return parser

    def add_arguments(self, parser):
        parser.add_argument('--tol', type=float, default=None, help='tolerance override')
        parser.add_argument('--progress', action='store_true', help='progress bar on stderr')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def run(self, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except GoldenMismatchError as e:
            payload = getattr(e, 'payload', None)
            if payload is not None:
                self.write_json(payload)
            raise CommandError(str(e), returncode=ExitCode.GOLDEN)
        except InvalidInputError as e:
            raise CommandError(str(e), returncode=ExitCode.USAGE)
        except NumericalError as e:
            logger.debug('numerical failure in %s', self.__class__.__module__, exc_info=True)
            raise CommandError(f'{e.__class__.__name__}: {e}', returncode=ExitCode.NUMERICAL)

    @staticmethod
    def quad_tol(options):
        tol = options.get('tol')
        return settings.MELNIKOV_QUAD_TOL if tol is None else tol

    @staticmethod
    def add_backend_argument(parser):
        parser.add_argument(
            '--backend',
            choices=QuadratureBackend.values,
            default=QuadratureBackend.DIRECT,
            help='quadrature pipeline',
        )

    def write_json(self, payload):
        self.stdout.write(dumps_json(payload).decode(), ending='')

    def write_csv(self, header, rows):
        write_csv(self.stdout, header, rows)
