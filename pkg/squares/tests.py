from io import StringIO
import json
from pathlib import Path
import tempfile

import numpy as np
from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from automata.configs import BitConfig
from automata.diagonal import diagonal_is_permutation, generator_pbca
from automata.pbca import is_invertible
from rules.anf import parse_anf
from rules.bipermutive import BipermutiveRule, expand, is_bipermutive
from rules.errors import ContractViolation, ResourceLimitExceeded
from rules.truthtable import TruthTable

from .decomposition import (
    DecompositionVerdict,
    TransversalDecomposition,
    find_disjoint_decomposition,
    mate_from_decomposition,
    symbol_classes,
)
from .export import grayscale, grid_to_csv, grid_to_dict, mask_path, pgm_bytes, write_grid, write_mask
from .grid import LatinSquareGrid, are_orthogonal, build_square, coord_decode, coord_encode, is_latin
from .transversals import (
    CoordSet,
    diagonal_coords,
    is_transversal,
    shifted_diagonal_coords,
    shifted_diagonal_is_transversal,
)


SQUARE_90 = build_square(TruthTable(3, 90))
SQUARE_105 = build_square(TruthTable(3, 105))
SQUARE_150 = build_square(TruthTable(3, 150))
SQUARE_165 = build_square(TruthTable(3, 165))
IDENTITY_RULE = BipermutiveRule(3, TruthTable.from_array(1, [0, 1]))
ZERO_RULE = BipermutiveRule(3, TruthTable.constant(1, 0))
QUADRATIC_RULE = BipermutiveRule(6, parse_anf('x1^x3^x1*x4', 4))


def small_rules():
    for arity in range(0, 4):
        for code in range(1 << (1 << arity)):
            yield BipermutiveRule(arity + 2, TruthTable(arity, code))


class CoordinateTests(SimpleTestCase):
    def test_encode(self):
        self.assertEqual(coord_encode(BitConfig.from_string('000')), 1)
        self.assertEqual(coord_encode(BitConfig.from_string('101')), 6)
        self.assertEqual(coord_encode(BitConfig.from_string('11')), 4)

    def test_decode_inverts_encode(self):
        for value in range(8):
            config = BitConfig.from_value(value, 3)
            self.assertEqual(coord_decode(coord_encode(config), 3), config)

    def test_decode_range(self):
        with self.assertRaises(ContractViolation):
            coord_decode(0, 2)
        with self.assertRaises(ContractViolation):
            coord_decode(5, 2)


class GridTests(SimpleTestCase):
    def test_from_rows(self):
        grid = LatinSquareGrid.from_rows([[1, 2], [2, 1]])
        self.assertTrue(grid.verified)
        self.assertEqual(grid.order, 2)
        self.assertEqual(grid[1, 2], 2)
        self.assertFalse(LatinSquareGrid.from_rows([[1, 1], [2, 2]]).verified)

    def test_rejects_bad_shapes_and_symbols(self):
        with self.assertRaises(ContractViolation):
            LatinSquareGrid.from_rows([[1, 2, 1], [2, 1, 2]])
        with self.assertRaises(ContractViolation):
            LatinSquareGrid.from_rows([[0, 1], [1, 0]])
        with self.assertRaises(ContractViolation):
            LatinSquareGrid.from_rows([[1, 3], [3, 1]])

    def test_cells_are_read_only(self):
        with self.assertRaises(ValueError):
            SQUARE_150.cells[0, 0] = 2

    def test_diameter_two_square(self):
        grid = build_square(expand(BipermutiveRule(2, TruthTable.constant(0, 0))))
        self.assertEqual(grid.rows(), ((1, 2), (2, 1)))

    def test_rule_150_first_row(self):
        self.assertEqual(SQUARE_150.rows()[0], (1, 2, 4, 3))
        self.assertTrue(SQUARE_150.verified)

    def test_rule_90_is_xor_table(self):
        for row in range(1, 5):
            for column in range(1, 5):
                self.assertEqual(SQUARE_90[row, column], ((row - 1) ^ (column - 1)) + 1)

    def test_non_bipermutive_rule_is_not_latin(self):
        grid = build_square(TruthTable(3, 30))
        self.assertFalse(grid.verified)
        self.assertFalse(is_latin(grid))

    def test_latin_iff_bipermutive(self):
        for arity in (2, 3):
            for code in range(1 << (1 << arity)):
                table = TruthTable(arity, code)
                self.assertEqual(is_latin(build_square(table)), is_bipermutive(table), code)

    def test_diameter_range(self):
        with self.assertRaises(ContractViolation):
            build_square(TruthTable.constant(1, 0))

    def test_quadratic_rule_square(self):
        grid = build_square(expand(QUADRATIC_RULE))
        self.assertEqual(grid.order, 32)
        self.assertTrue(is_latin(grid))
        self.assertTrue(is_transversal(grid, diagonal_coords(32)))

    def test_orthogonality(self):
        self.assertTrue(are_orthogonal(SQUARE_90, SQUARE_150))
        self.assertTrue(are_orthogonal(SQUARE_150, SQUARE_165))
        self.assertFalse(are_orthogonal(SQUARE_150, SQUARE_150))
        self.assertFalse(are_orthogonal(SQUARE_150, SQUARE_105))

    def test_orthogonality_is_symmetric(self):
        rng = np.random.default_rng(7)
        bases = [build_square(expand(BipermutiveRule(4, TruthTable(2, code)))) for code in range(16)]

        def shuffled(grid):
            rows = rng.permutation(8)
            columns = rng.permutation(8)
            symbols = rng.permutation(8) + 1
            return LatinSquareGrid(symbols[grid.cells[np.ix_(rows, columns)] - 1], verified=True)

        for _ in range(50):
            first = shuffled(bases[rng.integers(16)])
            second = shuffled(bases[rng.integers(16)])
            self.assertEqual(are_orthogonal(first, second), are_orthogonal(second, first))
        self.assertTrue(are_orthogonal(SQUARE_150, SQUARE_90))

    def test_orthogonality_needs_equal_orders(self):
        with self.assertRaises(ContractViolation):
            are_orthogonal(SQUARE_150, LatinSquareGrid.from_rows([[1]]))


class TransversalTests(SimpleTestCase):
    def test_coord_set_rejects_repeats(self):
        with self.assertRaises(ContractViolation):
            CoordSet.of([(1, 1), (1, 2)])
        with self.assertRaises(ContractViolation):
            CoordSet.of([(1, 2), (2, 2)])

    def test_diagonals(self):
        self.assertTrue(is_transversal(SQUARE_150, diagonal_coords(4)))
        self.assertFalse(is_transversal(SQUARE_90, diagonal_coords(4)))

    def test_off_diagonal_transversal(self):
        grid = LatinSquareGrid.from_rows([[1, 2, 3], [2, 3, 1], [3, 1, 2]])
        self.assertTrue(is_transversal(grid, diagonal_coords(3)))
        self.assertFalse(is_transversal(grid, CoordSet.of([(1, 3), (2, 2), (3, 1)])))

    def test_wrong_size_or_range(self):
        with self.assertRaises(ContractViolation):
            is_transversal(SQUARE_150, diagonal_coords(3))
        with self.assertRaises(ContractViolation):
            is_transversal(SQUARE_150, CoordSet.of([(1, 1), (2, 2), (3, 3), (4, 5)]))

    def test_shifted_diagonal_coords(self):
        coords = shifted_diagonal_coords(BitConfig.from_string('01'))
        self.assertEqual(tuple(coords), ((1, 2), (2, 1), (3, 4), (4, 3)))

    def test_shifted_diagonals_of_linear_rules(self):
        for text in ('00', '01', '10', '11'):
            shift = BitConfig.from_string(text)
            self.assertTrue(shifted_diagonal_is_transversal(IDENTITY_RULE, shift))
            self.assertFalse(shifted_diagonal_is_transversal(ZERO_RULE, shift))

    def test_zero_shift_is_main_diagonal(self):
        for rule in small_rules():
            zero = BitConfig.zeros(rule.window)
            self.assertEqual(shifted_diagonal_is_transversal(rule, zero), diagonal_is_permutation(rule))

    def test_diagonal_transversal_iff_generator_pbca_invertible(self):
        for rule in small_rules():
            grid = build_square(expand(rule))
            self.assertEqual(
                is_transversal(grid, diagonal_coords(grid.order)),
                is_invertible(generator_pbca(rule)),
                rule,
            )

    def test_shifted_verdict_matches_grid(self):
        for arity in (1, 2):
            for code in range(1 << (1 << arity)):
                rule = BipermutiveRule(arity + 2, TruthTable(arity, code))
                grid = build_square(expand(rule))
                for value in range(1 << rule.window):
                    shift = BitConfig.from_value(value, rule.window)
                    self.assertEqual(
                        shifted_diagonal_is_transversal(rule, shift),
                        is_transversal(grid, shifted_diagonal_coords(shift)),
                    )

    def test_shift_length_must_match(self):
        with self.assertRaises(ContractViolation):
            shifted_diagonal_is_transversal(IDENTITY_RULE, BitConfig.from_string('010'))


class DecompositionTests(SimpleTestCase):
    def test_order_one(self):
        result = find_disjoint_decomposition(LatinSquareGrid.from_rows([[1]]))
        self.assertEqual(result.verdict, DecompositionVerdict.FOUND)

    def test_order_two_has_none(self):
        result = find_disjoint_decomposition(LatinSquareGrid.from_rows([[1, 2], [2, 1]]))
        self.assertEqual(result.verdict, DecompositionVerdict.NONE)
        self.assertIsNone(result.decomposition)

    def test_rule_150_mate(self):
        result = find_disjoint_decomposition(SQUARE_150)
        self.assertEqual(result.verdict, DecompositionVerdict.FOUND)
        self.assertTrue(result.decomposition.is_decomposition_of(SQUARE_150))
        mate = mate_from_decomposition(result.decomposition)
        self.assertTrue(mate.verified)
        self.assertTrue(are_orthogonal(SQUARE_150, mate))

    def test_cyclic_order_three(self):
        grid = LatinSquareGrid.from_rows([[1, 2, 3], [2, 3, 1], [3, 1, 2]])
        result = find_disjoint_decomposition(grid)
        self.assertEqual(result.verdict, DecompositionVerdict.FOUND)
        self.assertTrue(are_orthogonal(grid, mate_from_decomposition(result.decomposition)))

    def test_symbol_classes_of_an_orthogonal_square(self):
        decomposition = symbol_classes(SQUARE_150)
        self.assertTrue(decomposition.is_decomposition_of(SQUARE_90))
        self.assertEqual(mate_from_decomposition(decomposition), SQUARE_150)

    def test_budget_exhaustion(self):
        grid = build_square(expand(BipermutiveRule(4, TruthTable.constant(2, 0))))
        result = find_disjoint_decomposition(grid, budget=1)
        self.assertEqual(result.verdict, DecompositionVerdict.UNKNOWN)

    @override_settings(DECOMPOSITION_NODE_BUDGET=1)
    def test_default_budget_from_settings(self):
        grid = build_square(expand(BipermutiveRule(4, TruthTable.constant(2, 0))))
        result = find_disjoint_decomposition(grid)
        self.assertEqual(result.verdict, DecompositionVerdict.UNKNOWN)
        self.assertEqual(result.nodes, 2)

    def test_project_budget_stops_within_minutes(self):
        self.assertEqual(settings.DECOMPOSITION_NODE_BUDGET, 10 ** 7)

    def test_order_cap(self):
        with self.assertRaises(ResourceLimitExceeded):
            find_disjoint_decomposition(build_square(expand(QUADRATIC_RULE)))

    @override_settings(DECOMPOSITION_ORDER_CAP=2)
    def test_order_cap_from_settings(self):
        with self.assertRaises(ResourceLimitExceeded):
            find_disjoint_decomposition(SQUARE_150)

    def test_needs_latin_square(self):
        with self.assertRaises(ContractViolation):
            find_disjoint_decomposition(build_square(TruthTable(3, 30)))

    def test_overlapping_classes(self):
        with self.assertRaises(ContractViolation):
            TransversalDecomposition((diagonal_coords(2), diagonal_coords(2)))


class ExportTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)

    def test_csv_and_json(self):
        self.assertEqual(grid_to_csv(SQUARE_150).splitlines()[0], '1,2,4,3')
        self.assertEqual(grid_to_dict(SQUARE_150)['order'], 4)

        path = write_grid(SQUARE_150, self.dir / 'square.csv', 'csv')
        self.assertEqual(path.read_text().splitlines()[0], '1,2,4,3')
        path = write_grid(SQUARE_150, self.dir / 'square.json', 'json')
        self.assertEqual(json.loads(path.read_text())['cells'][0], [1, 2, 4, 3])

    def test_pgm(self):
        self.assertEqual(sorted(set(grayscale(SQUARE_150).ravel().tolist())), [0, 85, 170, 255])
        data = write_grid(SQUARE_150, self.dir / 'square.pgm', 'pgm').read_bytes()
        self.assertTrue(data.startswith(b'P5\n4 4\n255\n'))
        self.assertEqual(len(data), len(b'P5\n4 4\n255\n') + 16)

    def test_pgm_of_order_one(self):
        data = pgm_bytes(grayscale(LatinSquareGrid.from_rows([[1]])))
        self.assertEqual(data, b'P5\n1 1\n255\n\x00')

    def test_mask(self):
        self.assertEqual(mask_path(Path('out/square.pgm')), Path('out/square.mask.pgm'))
        target = write_mask(diagonal_coords(2), 2, self.dir / 'square.csv', 'csv')
        self.assertEqual(target.name, 'square.mask.csv')
        self.assertEqual(target.read_text(), '1,0\n0,1\n')

    def test_unknown_format(self):
        with self.assertRaises(ContractViolation):
            write_grid(SQUARE_150, self.dir / 'square.svg', 'svg')


class SquareCommandTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)

    def run_command(self, *args):
        out = StringIO()
        call_command(*args, stdout=out, stderr=StringIO())
        return out.getvalue()

    def test_square_to_stdout(self):
        self.assertEqual(self.run_command('square', '--generator', '0', '--diameter', '2'), '1,2\n2,1\n')

    def test_square_json_to_stdout(self):
        output = self.run_command('square', '--generator', 'identity', '--diameter', '3', '--format', 'json')
        self.assertEqual(json.loads(output)['cells'][0], [1, 2, 4, 3])

    def test_square_file_with_mask(self):
        target = self.dir / 'quadratic.pgm'
        output = self.run_command(
            'square', '--generator', 'x1^x3^x1x4', '--diameter', '6',
            '--format', 'pgm', '--out', str(target), '--mark-diagonal',
        )
        self.assertIn('latin: yes', output)
        self.assertIn('diagonal-transversal: yes', output)
        self.assertTrue(target.read_bytes().startswith(b'P5\n32 32\n255\n'))
        self.assertTrue((self.dir / 'quadratic.mask.pgm').exists())

    def test_pgm_needs_out(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command('square', '--generator', '0', '--diameter', '2', '--format', 'pgm')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_bad_generator(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command('square', '--generator', 'x9', '--diameter', '3')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_check_negative(self):
        out = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command('check_transversal', '--generator', 'zero', '--diameter', '3', stdout=out)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertEqual(out.getvalue(), 'diagonal-transversal: no\npbca-invertible: no\n')

    def test_check_positive(self):
        output = self.run_command('check_transversal', '--generator', 'quadratic6', '--diameter', '6')
        self.assertEqual(output, 'diagonal-transversal: yes\npbca-invertible: yes\n')

    def test_check_chi_on_even_size(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command('check_transversal', '--generator', 'chi', '--diameter', '5')
        self.assertEqual(ctx.exception.returncode, 1)

    def test_check_shift(self):
        output = self.run_command('check_transversal', '--generator', 'identity', '--diameter', '3', '--shift', '01')
        self.assertIn('shift: 01\nshifted-diagonal-transversal: yes\n', output)

    def test_check_shift_length(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command('check_transversal', '--generator', 'identity', '--diameter', '3', '--shift', '011')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_mate_found(self):
        target = self.dir / 'mate.csv'
        output = self.run_command('mate', '--generator', 'identity', '--diameter', '3', '--out', str(target))
        self.assertIn('decomposition: found', output)
        self.assertIn('orthogonal: yes', output)
        mate = LatinSquareGrid.from_rows([
            [int(value) for value in line.split(',')] for line in target.read_text().splitlines()
        ])
        self.assertTrue(are_orthogonal(SQUARE_150, mate))
        certificate = json.loads((self.dir / 'mate.certificate.json').read_text())
        self.assertEqual(certificate['order'], 4)
        self.assertTrue(certificate['orthogonal'])
        self.assertTrue(certificate['latin'])
        self.assertEqual(len(certificate['classes']), 4)

    def test_mate_none(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command('mate', '--generator', '0', '--diameter', '2')
        self.assertEqual(ctx.exception.returncode, 1)

    def test_mate_budget(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command('mate', '--generator', '0', '--diameter', '4', '--budget', '1')
        self.assertEqual(ctx.exception.returncode, 3)

    def test_mate_order_cap(self):
        with self.assertRaises(CommandError) as ctx:
            self.run_command('mate', '--generator', 'quadratic6', '--diameter', '6')
        self.assertEqual(ctx.exception.returncode, 2)
