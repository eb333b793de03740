from django.core.management.base import BaseCommand

from rules.cli import negative, translated_errors
from search.verification import PROPERTIES, run_suite


class Command(BaseCommand):
    help = 'Run an exhaustive equivalence suite and report the first counterexample, if any.'

    def add_arguments(self, parser):
        parser.add_argument(
            '--property',
            type=str,
            required=True,
            choices=PROPERTIES,
            help='lemma1: Latin iff bipermutive; theorem1: diagonal transversal iff invertible PBCA; '
                 'closure: complement and reversal closure of the invertible set',
        )
        parser.add_argument(
            '--diameter',
            type=int,
            required=True,
            help='Diameter to check exhaustively',
        )

    def handle(self, *args, **options):
        with translated_errors():
            result = run_suite(options['property'], options['diameter'])

        for line in result.lines():
            self.stdout.write(line)
        if not result.passed:
            raise negative(f'{result.property} fails at d={result.diameter}.')
