"""Helpers shared by the management commands: exit codes and generator options."""
from contextlib import contextmanager

from django.core.management.base import CommandError

from .bipermutive import BipermutiveRule
from .catalog import resolve_generator
from .errors import ContractViolation, ResourceLimitExceeded


EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def yes_no(value: bool) -> str:
    return 'yes' if value else 'no'


def usage_error(message: str) -> CommandError:
    return CommandError(message, returncode=EXIT_USAGE)


def negative(message: str) -> CommandError:
    return CommandError(message, returncode=EXIT_NEGATIVE)


@contextmanager
def translated_errors():
    """Map library exceptions onto the command exit-code contract."""
    try:
        yield
    except ResourceLimitExceeded as exc:
        raise CommandError(str(exc), returncode=EXIT_RESOURCE) from exc
    except ContractViolation as exc:
        raise usage_error(str(exc)) from exc


def add_generator_arguments(parser) -> None:
    parser.add_argument(
        '--generator',
        type=str,
        required=True,
        help='Catalog name, hex truth table (e.g. 0x5a) or ANF expression (e.g. x1^x3^x1x4)',
    )
    parser.add_argument(
        '--diameter',
        type=int,
        required=True,
        help='Diameter d of the bipermutive rule; the generator has d-2 variables',
    )


def generator_rule(options) -> BipermutiveRule:
    with translated_errors():
        return resolve_generator(options['generator'], options['diameter'])
