"""Exhaustively search generating functions whose periodic CA is invertible."""
from pathlib import Path

from django.core.management.base import BaseCommand

from rules.cli import translated_errors, usage_error
from search.engine import CSV_HEADER, check_diameter
from search.services import record_run, run_search


class Command(BaseCommand):
    help = 'Enumerate every generating function of d-2 variables and report the invertible ones.'

    def add_arguments(self, parser):
        parser.add_argument(
            '--diameter',
            type=int,
            required=True,
            help='Rule diameter d (3..7)',
        )
        parser.add_argument(
            '--jobs',
            type=int,
            default=1,
            help='Worker processes (default: 1); the report does not depend on it',
        )
        parser.add_argument(
            '--out',
            type=str,
            default=None,
            help='Write the JSON report to this path',
        )
        parser.add_argument(
            '--resume',
            action='store_true',
            help='Continue an interrupted run from its saved checkpoint (d >= 7 runs always checkpoint)',
        )
        parser.add_argument(
            '--save',
            action='store_true',
            help='Store the report as a SearchRun',
        )
        parser.add_argument(
            '--summary-csv',
            type=str,
            default=None,
            help='Append a one-line CSV summary to this file',
        )

    def handle(self, *args, **options):
        diameter = options['diameter']
        jobs = options['jobs']
        if jobs < 1:
            raise usage_error('--jobs must be at least 1.')

        with translated_errors():
            check_diameter(diameter)
            report = run_search(diameter, parallelism=jobs, resume=options['resume'])

        if options['out']:
            Path(options['out']).write_text(report.to_json())
        if options['summary_csv']:
            summary = Path(options['summary_csv'])
            fresh = not summary.exists() or summary.stat().st_size == 0
            with open(summary, 'a') as handle:
                if fresh:
                    handle.write(CSV_HEADER + '\n')
                handle.write(report.csv_row() + '\n')
        if options['save']:
            run = record_run(report, parallelism=jobs)
            self.stderr.write(f'Saved search run {run.pk}')

        self.stdout.write(report.summary())
