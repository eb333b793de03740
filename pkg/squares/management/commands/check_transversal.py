"""Decide whether a CA-generated square has a transversal on its (shifted) main diagonal."""
from django.core.management.base import BaseCommand

from automata.configs import BitConfig
from automata.diagonal import diagonal_is_permutation, generator_pbca
from automata.pbca import is_invertible
from rules.cli import add_generator_arguments, generator_rule, negative, translated_errors, yes_no
from squares.transversals import shifted_diagonal_is_transversal


class Command(BaseCommand):
    help = 'Check the main diagonal (or an XOR-shifted diagonal) for a transversal.'

    def add_arguments(self, parser):
        add_generator_arguments(parser)
        parser.add_argument(
            '--shift',
            type=str,
            default=None,
            help='0/1 string c of length d-1; checks the cells (phi(x), phi(x xor c))',
        )

    def handle(self, *args, **options):
        rule = generator_rule(options)

        with translated_errors():
            diagonal = diagonal_is_permutation(rule)
            invertible = is_invertible(generator_pbca(rule))
            shift = BitConfig.from_string(options['shift']) if options['shift'] else None
            shifted = shifted_diagonal_is_transversal(rule, shift) if shift else None

        self.stdout.write(f'diagonal-transversal: {yes_no(diagonal)}')
        self.stdout.write(f'pbca-invertible: {yes_no(invertible)}')
        if diagonal != invertible:
            raise negative(f'Diagonal and PBCA verdicts disagree for generator {rule.generator}.')

        verdict = diagonal
        if shift is not None:
            self.stdout.write(f'shift: {shift}')
            self.stdout.write(f'shifted-diagonal-transversal: {yes_no(shifted)}')
            verdict = shifted
        if not verdict:
            raise negative('No transversal on the requested diagonal.')
