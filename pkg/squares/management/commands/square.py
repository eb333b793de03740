"""Build the Latin square of a bipermutive CA and export it."""
import json

from django.core.management.base import BaseCommand

from rules.bipermutive import expand
from rules.cli import add_generator_arguments, generator_rule, translated_errors, usage_error, yes_no
from squares.export import FORMATS, grid_to_csv, grid_to_dict, write_grid, write_mask
from squares.grid import build_square
from squares.transversals import diagonal_coords, is_transversal


class Command(BaseCommand):
    help = 'Build the square S(i, j) = phi(F(psi(i) || psi(j))) of a bipermutive CA and write it.'

    def add_arguments(self, parser):
        add_generator_arguments(parser)
        parser.add_argument(
            '--format',
            type=str,
            default='csv',
            choices=FORMATS,
            help='Output format (default: csv)',
        )
        parser.add_argument(
            '--out',
            type=str,
            default=None,
            help='Output path; csv and json are printed to stdout when omitted',
        )
        parser.add_argument(
            '--mark-diagonal',
            action='store_true',
            help='Also write a mask file marking the main diagonal cells',
        )

    def handle(self, *args, **options):
        rule = generator_rule(options)
        fmt = options['format']
        out = options['out']

        if not out and (fmt == 'pgm' or options['mark_diagonal']):
            raise usage_error('--out is required for pgm output and for --mark-diagonal.')

        with translated_errors():
            grid = build_square(expand(rule))

        if not out:
            if fmt == 'csv':
                self.stdout.write(grid_to_csv(grid))
            else:
                self.stdout.write(json.dumps(grid_to_dict(grid)))
            return

        with translated_errors():
            path = write_grid(grid, out, fmt)
            self.stdout.write(f'order: {grid.order}')
            self.stdout.write(f'latin: {yes_no(grid.verified)}')
            self.stdout.write(f'written: {path}')
            if options['mark_diagonal']:
                coords = diagonal_coords(grid.order)
                mask = write_mask(coords, grid.order, path, fmt)
                self.stdout.write(f'diagonal-transversal: {yes_no(is_transversal(grid, coords))}')
                self.stdout.write(f'mask: {mask}')
