from itertools import product
import random

from django.test import SimpleTestCase, override_settings

from rules.anf import parse_anf
from rules.bipermutive import BipermutiveRule, expand
from rules.errors import ContractViolation, ResourceLimitExceeded
from rules.truthtable import TruthTable

from .configs import BitConfig
from .diagonal import diagonal_is_permutation, diagonal_map, generator_pbca
from .pbca import PbcaMap, is_invertible, nbca_eval, pbca_eval, pbca_images


RULE_90 = TruthTable(3, 90)
RULE_150 = TruthTable(3, 150)
CHI = parse_anf('x1^x2^x2*x3', 3)
QUADRATIC_GENERATOR = parse_anf('x1^x3^x1*x4', 4)
IDENTITY = TruthTable.from_array(1, [0, 1])


def bits(text):
    return BitConfig.from_string(text)


def all_configs(length):
    return [BitConfig.from_value(value, length) for value in range(1 << length)]


class BitConfigTests(SimpleTestCase):
    def test_string_codec(self):
        self.assertEqual(str(bits('0110')), '0110')
        self.assertEqual(bits('0110').value, 6)
        self.assertEqual(BitConfig.from_value(6, 4), bits('0110'))

    def test_rejects_bad_input(self):
        with self.assertRaises(ContractViolation):
            BitConfig.from_string('012')
        with self.assertRaises(ContractViolation):
            BitConfig(())
        with self.assertRaises(ContractViolation):
            BitConfig.from_value(8, 3)

    def test_rotation_and_xor(self):
        self.assertEqual(bits('1000').rotate_left(), bits('0001'))
        self.assertEqual(bits('110').xor(bits('011')), bits('101'))
        self.assertEqual(bits('10').concat(bits('01')), bits('1001'))


class NbcaTests(SimpleTestCase):
    def test_rule_90(self):
        self.assertEqual(nbca_eval(RULE_90, bits('0110')), bits('11'))

    def test_rule_150(self):
        self.assertEqual(nbca_eval(RULE_150, bits('10010')), bits('111'))

    def test_length_equal_to_diameter_is_single_application(self):
        rule = TruthTable(3, 30)
        for config in all_configs(3):
            self.assertEqual(nbca_eval(rule, config), BitConfig((rule.evaluate(config),)))

    def test_too_short(self):
        with self.assertRaises(ContractViolation):
            nbca_eval(RULE_90, bits('01'))


class PbcaTests(SimpleTestCase):
    def test_chi_step(self):
        self.assertEqual(pbca_eval(PbcaMap(CHI, 3), bits('100')), bits('101'))

    def test_identity_rule(self):
        for n in range(1, 6):
            pbca = PbcaMap(IDENTITY, n)
            for config in all_configs(n):
                self.assertEqual(pbca(config), config)

    def test_constant_zero_rule(self):
        pbca = PbcaMap(TruthTable.constant(3, 0), 4)
        for config in all_configs(4):
            self.assertEqual(pbca_eval(pbca, config), BitConfig.zeros(4))

    def test_window_longer_than_configuration_wraps(self):
        # Window (x1, x2, x1) on two cells.
        pbca = PbcaMap(RULE_150, 2)
        self.assertEqual(pbca_eval(pbca, bits('10')), bits('01'))

    def test_length_mismatch(self):
        with self.assertRaises(ContractViolation):
            pbca_eval(PbcaMap(CHI, 3), bits('1001'))
        with self.assertRaises(ContractViolation):
            PbcaMap(CHI, 0)

    def test_images_match_cellwise_evaluation(self):
        pbca = PbcaMap(QUADRATIC_GENERATOR, 5)
        images = pbca_images(pbca)
        for config in all_configs(5):
            self.assertEqual(int(images[config.value]), pbca_eval(pbca, config).value)

    def test_shift_equivariance(self):
        rng = random.Random(20240601)
        rules = [TruthTable(arity, rng.randrange(1 << (1 << arity)))
                 for arity in (1, 2, 3, 4) for _ in range(25)]
        for rule in rules:
            for n in range(1, 9):
                pbca = PbcaMap(rule, n)
                for config in all_configs(n):
                    self.assertEqual(pbca(config.rotate_left()), pbca(config).rotate_left())


class InvertibilityTests(SimpleTestCase):
    def test_chi_parity(self):
        for size in (3, 5, 7):
            self.assertTrue(is_invertible(PbcaMap(CHI, size)), size)
        for size in (4, 6):
            self.assertFalse(is_invertible(PbcaMap(CHI, size)), size)

    def test_constant_rule_is_not_invertible(self):
        for size in range(1, 6):
            self.assertFalse(is_invertible(PbcaMap(TruthTable.constant(2, 0), size)))

    def test_quadratic_generator(self):
        self.assertTrue(is_invertible(PbcaMap(QUADRATIC_GENERATOR, 5)))

    def test_cap(self):
        with self.assertRaises(ResourceLimitExceeded) as ctx:
            is_invertible(PbcaMap(CHI, 9), cap=8)
        self.assertEqual(ctx.exception.limit, 8)

    def test_default_cap_is_24_cells(self):
        with self.assertRaises(ResourceLimitExceeded) as ctx:
            is_invertible(PbcaMap(CHI, 25))
        self.assertEqual(ctx.exception.limit, 24)
        self.assertEqual(ctx.exception.requested, 25)

    @override_settings(BRUTE_FORCE_CAP=4)
    def test_cap_from_settings(self):
        with self.assertRaises(ResourceLimitExceeded):
            is_invertible(PbcaMap(CHI, 5))

    def test_worker_count_does_not_change_verdict(self):
        for size in (17, 18):
            pbca = PbcaMap(CHI, size)
            self.assertEqual(is_invertible(pbca, workers=1), is_invertible(pbca, workers=4))


class DiagonalTests(SimpleTestCase):
    def test_rule_150_swaps(self):
        rule = BipermutiveRule(3, IDENTITY)
        self.assertEqual(diagonal_map(rule, bits('01')), bits('10'))
        self.assertTrue(diagonal_is_permutation(rule))

    def test_rule_90_is_constant(self):
        rule = BipermutiveRule(3, TruthTable.constant(1, 0))
        for config in all_configs(2):
            self.assertEqual(diagonal_map(rule, config), bits('00'))
        self.assertFalse(diagonal_is_permutation(rule))

    def test_quadratic_rule(self):
        rule = BipermutiveRule(6, QUADRATIC_GENERATOR)
        self.assertEqual(diagonal_map(rule, bits('00000')), bits('00000'))
        self.assertTrue(diagonal_is_permutation(rule))

    def test_length_mismatch(self):
        with self.assertRaises(ContractViolation):
            diagonal_map(BipermutiveRule(3, IDENTITY), bits('010'))

    def test_cap(self):
        with self.assertRaises(ResourceLimitExceeded):
            diagonal_is_permutation(BipermutiveRule(6, QUADRATIC_GENERATOR), cap=4)

    def test_diagonal_is_rotated_generator_pbca(self):
        for arity in range(0, 4):
            for code in range(1 << (1 << arity)):
                rule = BipermutiveRule(arity + 2, TruthTable(arity, code))
                pbca = generator_pbca(rule)
                for config in all_configs(rule.window):
                    self.assertEqual(diagonal_map(rule, config), pbca(config).rotate_left())

    def test_diagonal_permutation_iff_generator_pbca_invertible(self):
        checked = 0
        for arity in range(0, 4):
            for code in range(1 << (1 << arity)):
                rule = BipermutiveRule(arity + 2, TruthTable(arity, code))
                self.assertEqual(diagonal_is_permutation(rule), is_invertible(generator_pbca(rule)), rule)
                checked += 1
        self.assertEqual(checked, 2 + 4 + 16 + 256)

    def test_boundary_variables_cancel(self):
        # Flipping x1 and xd together leaves a bipermutive rule's output unchanged.
        rule = BipermutiveRule(5, CHI)
        table = expand(rule)
        for values in product((0, 1), repeat=5):
            flipped = (values[0] ^ 1,) + values[1:4] + (values[4] ^ 1,)
            self.assertEqual(table.evaluate(values), table.evaluate(flipped))
