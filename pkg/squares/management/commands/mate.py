"""Search a CA-generated square for N disjoint transversals and write the orthogonal mate."""
import json

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from rules.bipermutive import expand
from rules.cli import (
    EXIT_RESOURCE,
    add_generator_arguments,
    generator_rule,
    negative,
    translated_errors,
    usage_error,
    yes_no,
)
from squares.decomposition import DecompositionVerdict, find_disjoint_decomposition, mate_from_decomposition
from squares.export import write_grid
from squares.grid import are_orthogonal, build_square, is_latin


class Command(BaseCommand):
    help = 'Find an orthogonal mate of a small CA-generated square by transversal decomposition.'

    def add_arguments(self, parser):
        add_generator_arguments(parser)
        parser.add_argument(
            '--budget',
            type=int,
            default=None,
            help=(
                'Search node budget (default: DECOMPOSITION_NODE_BUDGET, 10**7). '
                'The search visits roughly 50k nodes per second, so 10**7 nodes take a few minutes '
                'on an order-16 square before it answers "unknown"'
            ),
        )
        parser.add_argument(
            '--out',
            type=str,
            default=None,
            help='Where to write the mate square; a .certificate.json is written next to it',
        )
        parser.add_argument(
            '--format',
            type=str,
            default='csv',
            choices=('csv', 'json'),
            help='Mate square format (default: csv)',
        )

    def handle(self, *args, **options):
        rule = generator_rule(options)
        cap = settings.DECOMPOSITION_ORDER_CAP
        order = 1 << rule.window
        if order > cap:
            raise usage_error(
                f'Order {order} is above the brute-force decomposition cap of {cap}; '
                f'use a diameter of at most {cap.bit_length()}.'
            )
        budget = options['budget']
        if budget is not None and budget < 1:
            raise usage_error('--budget must be positive.')

        with translated_errors():
            grid = build_square(expand(rule))
            result = find_disjoint_decomposition(grid, budget=budget)

        self.stdout.write(f'order: {order}')
        self.stdout.write(f'nodes: {result.nodes}')
        if result.verdict == DecompositionVerdict.UNKNOWN:
            self.stdout.write('decomposition: unknown (budget exhausted)')
            raise CommandError('Node budget exhausted before the search finished.', returncode=EXIT_RESOURCE)
        if result.verdict == DecompositionVerdict.NONE:
            self.stdout.write('decomposition: none')
            raise negative('The square has no decomposition into disjoint transversals.')

        mate = mate_from_decomposition(result.decomposition)
        orthogonal = are_orthogonal(grid, mate)
        self.stdout.write('decomposition: found')
        self.stdout.write(f'orthogonal: {yes_no(orthogonal)}')

        if options['out']:
            path = write_grid(mate, options['out'], options['format'])
            certificate = path.with_name(f'{path.stem}.certificate.json')
            certificate.write_text(json.dumps({
                'order': order,
                'generator': rule.generator.to_hex(),
                'diameter': rule.diameter,
                'latin': is_latin(mate),
                'orthogonal': orthogonal,
                'classes': [[list(cell) for cell in coords] for coords in result.decomposition.classes],
            }) + '\n')
            self.stdout.write(f'written: {path}')
            self.stdout.write(f'certificate: {certificate}')
