from io import StringIO
import json
from pathlib import Path
import tempfile

from django.core.management import call_command
from django.core.management.base import CommandError
from django.db.models.signals import post_save
from django.test import SimpleTestCase, TestCase, override_settings

from automata.diagonal import diagonal_is_permutation
from automata.pbca import PbcaMap, is_invertible
from rules.anf import DegreeClass, parse_anf
from rules.bipermutive import BipermutiveRule
from rules.errors import ContractViolation
from rules.truthtable import TruthTable

from .engine import (
    CSV_HEADER,
    SearchReport,
    complement_closure_violations,
    enumerate_invertible,
    filter_by_class,
    reversal_closure_violations,
    spot_check,
)
from .models import SearchCheckpoint, SearchRun
from .services import load_checkpoint, record_run, run_search, save_checkpoint
from .verification import run_suite, verify_closure, verify_lemma1, verify_theorem1


QUADRATIC_CODE = parse_anf('x1^x3^x1*x4', 4).bits


class EnumerationTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.report_6 = enumerate_invertible(6)

    def test_diameter_three(self):
        report = enumerate_invertible(3)
        self.assertEqual(report.invertible_codes, (1, 2))
        self.assertEqual(report.total_generators, 4)

    def test_diameter_four(self):
        report = enumerate_invertible(4)
        self.assertEqual(report.invertible_codes, (3, 5, 10, 12))
        self.assertEqual(report.nonlinear_count, 0)

    def test_diameter_five_is_linear(self):
        report = enumerate_invertible(5)
        self.assertEqual(len(report.invertible_codes), 8)
        self.assertEqual(report.class_counts, {'constant': 0, 'linear': 4, 'affine': 4, 'nonlinear': 0})

    def test_diameter_six_census(self):
        report = self.report_6
        self.assertEqual(report.total_generators, 65536)
        self.assertEqual(len(report.invertible_codes), 472)
        self.assertEqual(report.class_counts, {'constant': 0, 'linear': 8, 'affine': 8, 'nonlinear': 456})
        self.assertEqual(report.summary(), 'd=6 invertible=472 nonlinear=456')
        self.assertIn(QUADRATIC_CODE, filter_by_class(report, DegreeClass.NONLINEAR))

    def test_parallelism_does_not_change_the_report(self):
        reference = self.report_6.to_dict()
        del reference['wall_time_ms']
        for parallelism in (2, 8):
            data = enumerate_invertible(6, parallelism=parallelism, chunk_size=4096).to_dict()
            del data['wall_time_ms']
            self.assertEqual(data, reference)

    def test_chunk_size_does_not_change_the_report(self):
        self.assertEqual(
            enumerate_invertible(5, chunk_size=7).invertible_codes,
            enumerate_invertible(5).invertible_codes,
        )

    def test_closures(self):
        for diameter in (3, 4, 5):
            report = enumerate_invertible(diameter)
            self.assertEqual(complement_closure_violations(report), [])
            self.assertEqual(reversal_closure_violations(report), [])
        self.assertEqual(complement_closure_violations(self.report_6), [])
        self.assertEqual(reversal_closure_violations(self.report_6), [])

    def test_closure_violations_are_reported(self):
        report = SearchReport.from_codes(4, [3, 5, 10])
        self.assertEqual(complement_closure_violations(report), [3])
        self.assertEqual(reversal_closure_violations(report), [10])

    def test_agrees_with_both_invertibility_checks(self):
        for diameter in (3, 4, 5):
            listed = set(enumerate_invertible(diameter).invertible_codes)
            arity = diameter - 2
            for code in range(1 << (1 << arity)):
                generator = TruthTable(arity, code)
                self.assertEqual(code in listed, is_invertible(PbcaMap(generator, diameter - 1)), code)
                self.assertEqual(code in listed, diagonal_is_permutation(BipermutiveRule(diameter, generator)), code)

    def test_segments(self):
        seen = []
        report = enumerate_invertible(5, segment_size=64, on_segment=lambda next_code, codes: seen.append(next_code))
        self.assertEqual(seen, [64, 128, 192, 256])
        self.assertEqual(len(report.invertible_codes), 8)

    def test_resume_from_partial_scan(self):
        full = enumerate_invertible(5)
        found = [code for code in full.invertible_codes if code < 100]
        resumed = enumerate_invertible(5, start_code=100, found=found)
        self.assertEqual(resumed.invertible_codes, full.invertible_codes)

    def test_bad_arguments(self):
        with self.assertRaises(ContractViolation):
            enumerate_invertible(2)
        with self.assertRaises(ContractViolation):
            enumerate_invertible(8)
        with self.assertRaises(ContractViolation):
            enumerate_invertible(4, parallelism=0)

    def test_filter_by_unknown_class(self):
        with self.assertRaises(ContractViolation):
            filter_by_class(self.report_6, 'cubic')


class ReportTests(SimpleTestCase):
    def test_json_shape(self):
        data = json.loads(enumerate_invertible(3).to_json())
        self.assertEqual(data['diameter'], 3)
        self.assertEqual(data['total'], 4)
        self.assertEqual(data['invertible'], ['1', '2'])
        self.assertEqual(data['classes'], {'constant': 0, 'linear': 1, 'affine': 1, 'nonlinear': 0})
        self.assertIn('wall_time_ms', data)

    def test_from_dict(self):
        report = enumerate_invertible(4)
        self.assertEqual(SearchReport.from_dict(report.to_dict()), report)
        data = report.to_dict()
        data['total'] = 17
        with self.assertRaises(ContractViolation):
            SearchReport.from_dict(data)

    def test_csv_row(self):
        self.assertEqual(CSV_HEADER.split(',')[0], 'diameter')
        row = enumerate_invertible(3).csv_row()
        self.assertTrue(row.startswith('3,4,2,0,1,1,0,'))
        self.assertEqual(len(row.split(',')), len(CSV_HEADER.split(',')))

    def test_codes_must_be_increasing(self):
        with self.assertRaises(ContractViolation):
            SearchReport(3, 4, (2, 1), (DegreeClass.LINEAR, DegreeClass.AFFINE), {'linear': 1, 'affine': 1})


class SpotCheckTests(SimpleTestCase):
    def test_correct_report_passes(self):
        result = spot_check(enumerate_invertible(4), samples=16)
        self.assertTrue(result.passed)
        self.assertEqual(result.checked, 16)

    def test_sampled_check_passes(self):
        self.assertTrue(spot_check(enumerate_invertible(5), samples=10, seed=3).passed)

    def test_removed_code_is_caught(self):
        result = spot_check(SearchReport.from_codes(4, [3, 5, 10]), samples=16)
        self.assertFalse(result.passed)
        self.assertEqual(result.counterexample, 12)

    def test_added_code_is_caught(self):
        result = spot_check(SearchReport.from_codes(4, [3, 5, 6, 10, 12]), samples=16)
        self.assertFalse(result.passed)
        self.assertEqual(result.counterexample, 6)


class VerificationTests(SimpleTestCase):
    def test_latin_suite(self):
        result = verify_lemma1(3)
        self.assertTrue(result.passed)
        self.assertEqual(result.checked, 256)

    def test_latin_suite_on_four_variables(self):
        result = verify_lemma1(4)
        self.assertTrue(result.passed)
        self.assertEqual(result.checked, 65536)

    def test_diagonal_suite(self):
        for diameter, checked in ((2, 2), (3, 4), (4, 16), (5, 256)):
            result = verify_theorem1(diameter)
            self.assertTrue(result.passed)
            self.assertEqual(result.checked, checked)

    def test_corrupted_oracle_fails(self):
        result = verify_theorem1(4, oracle=lambda rule: False)
        self.assertFalse(result.passed)
        self.assertEqual(result.checked, 4)
        self.assertEqual(result.counterexample, 'generator 3')
        self.assertIn('result: fail', result.lines())

    def test_closure(self):
        result = verify_closure(5)
        self.assertTrue(result.passed)
        self.assertEqual(result.checked, 8)

    def test_scale_limits(self):
        with self.assertRaises(ContractViolation):
            run_suite('lemma1', 5)
        with self.assertRaises(ContractViolation):
            run_suite('closure', 2)
        with self.assertRaises(ContractViolation):
            run_suite('parity', 3)

    @override_settings(LATIN_VERIFY_LIMITS={'lemma1': 3, 'theorem1': 3, 'closure': 3})
    def test_scale_limits_from_settings(self):
        with self.assertRaises(ContractViolation):
            run_suite('theorem1', 4)


class ServiceTests(TestCase):
    def test_record_run(self):
        report = enumerate_invertible(4)
        run = record_run(report, parallelism=2)
        self.assertEqual(SearchRun.objects.count(), 1)
        self.assertEqual(run.parallelism, 2)
        self.assertEqual(SearchRun.objects.get().to_report(), report)

    def test_small_diameters_skip_checkpoints(self):
        run_search(5, resume=True)
        self.assertFalse(SearchCheckpoint.objects.exists())

    @override_settings(SEARCH_CHECKPOINT_MIN_DIAMETER=5, SEARCH_CHECKPOINT_INTERVAL=64, SEARCH_CHUNK_SIZE=16)
    def test_checkpointed_run_matches_plain_run(self):
        report = run_search(5, resume=True)
        self.assertEqual(report.invertible_codes, enumerate_invertible(5).invertible_codes)
        self.assertIsNone(load_checkpoint(5))

    @override_settings(SEARCH_CHECKPOINT_MIN_DIAMETER=5, SEARCH_CHECKPOINT_INTERVAL=64)
    def test_resume_continues_from_checkpoint(self):
        full = enumerate_invertible(5)
        save_checkpoint(5, 128, [code for code in full.invertible_codes if code < 128])
        self.assertEqual(load_checkpoint(5).next_code, 128)
        self.assertEqual(run_search(5, resume=True).invertible_codes, full.invertible_codes)
        self.assertFalse(SearchCheckpoint.objects.filter(diameter=5).exists())

    @override_settings(SEARCH_CHECKPOINT_MIN_DIAMETER=5, SEARCH_CHECKPOINT_INTERVAL=64)
    def test_plain_run_saves_checkpoints(self):
        saved = []

        def record(sender, instance, **kwargs):
            saved.append(instance.next_code)

        post_save.connect(record, sender=SearchCheckpoint)
        self.addCleanup(post_save.disconnect, record, sender=SearchCheckpoint)
        report = run_search(5)
        self.assertEqual(saved, [64, 128, 192, 256])
        self.assertEqual(len(report.invertible_codes), 8)
        self.assertIsNone(load_checkpoint(5))

    @override_settings(SEARCH_CHECKPOINT_MIN_DIAMETER=5, SEARCH_CHECKPOINT_INTERVAL=64)
    def test_plain_run_ignores_stale_checkpoint(self):
        save_checkpoint(5, 256, [1])
        report = run_search(5)
        self.assertEqual(report.invertible_codes, enumerate_invertible(5).invertible_codes)


class CommandTests(TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)

    def run_command(self, *args):
        out = StringIO()
        call_command(*args, stdout=out, stderr=StringIO())
        return out.getvalue()

    def test_search_summary(self):
        self.assertEqual(self.run_command('search', '--diameter', '3'), 'd=3 invertible=2 nonlinear=0\n')
        self.assertEqual(self.run_command('search', '--diameter', '5'), 'd=5 invertible=8 nonlinear=0\n')

    def test_search_diameter_six(self):
        target = self.dir / 'report.json'
        output = self.run_command('search', '--diameter', '6', '--jobs', '2', '--out', str(target))
        self.assertEqual(output, 'd=6 invertible=472 nonlinear=456\n')
        self.assertEqual(len(json.loads(target.read_text())['invertible']), 472)

    def test_search_summary_csv_and_save(self):
        summary = self.dir / 'summary.csv'
        self.run_command('search', '--diameter', '3', '--summary-csv', str(summary), '--save')
        self.run_command('search', '--diameter', '4', '--summary-csv', str(summary))
        lines = summary.read_text().splitlines()
        self.assertEqual(lines[0], CSV_HEADER)
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[2].startswith('4,16,4,'))
        self.assertEqual(SearchRun.objects.get().diameter, 3)

    def test_search_usage_errors(self):
        for args in (('--diameter', '2'), ('--diameter', '9'), ('--diameter', '4', '--jobs', '0')):
            with self.assertRaises(CommandError) as ctx:
                self.run_command('search', *args)
            self.assertEqual(ctx.exception.returncode, 2)

    def test_verify_pass(self):
        output = self.run_command('verify', '--property', 'theorem1', '--diameter', '4')
        self.assertEqual(output, 'property: theorem1\ndiameter: 4\nchecked: 16\nresult: pass\n')

    def test_verify_latin_suite(self):
        output = self.run_command('verify', '--property', 'lemma1', '--diameter', '3')
        self.assertIn('checked: 256\nresult: pass\n', output)

    def test_verify_out_of_scale(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command('verify', '--property', 'lemma1', '--diameter', '9')
        self.assertEqual(ctx.exception.returncode, 2)
