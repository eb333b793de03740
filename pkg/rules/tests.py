from itertools import product
from pathlib import Path
import tempfile

from django.test import SimpleTestCase

from .anf import DegreeClass, anf, degree_class, format_anf, mobius_transform, parse_anf
from .bipermutive import BipermutiveRule, expand, extract_generator, is_bipermutive
from .catalog import load_catalog, resolve_generator
from .errors import CatalogError, ContractViolation, NotBipermutiveError
from .truthtable import TruthTable, WolframCode, evaluate


RULE_30 = TruthTable(3, 30)
RULE_90 = TruthTable(3, 90)
RULE_105 = TruthTable(3, 105)
RULE_150 = TruthTable(3, 150)
RULE_165 = TruthTable(3, 165)
QUADRATIC_GENERATOR = TruthTable.from_function(4, lambda x1, x2, x3, x4: x1 ^ x3 ^ (x1 & x4))


class TruthTableTests(SimpleTestCase):
    def test_eval_rule_90_is_x1_xor_x3(self):
        self.assertEqual(evaluate(RULE_90, (1, 0, 1)), 0)
        for bits in product((0, 1), repeat=3):
            self.assertEqual(evaluate(RULE_90, bits), bits[0] ^ bits[2])

    def test_eval_rule_150(self):
        self.assertEqual(evaluate(RULE_150, (1, 1, 1)), 1)

    def test_eval_zero_function(self):
        zero = TruthTable.constant(3, 0)
        for bits in product((0, 1), repeat=3):
            self.assertEqual(zero.evaluate(bits), 0)

    def test_eval_length_mismatch(self):
        with self.assertRaises(ContractViolation):
            evaluate(RULE_90, (1, 0))

    def test_hex_codec(self):
        self.assertEqual(RULE_90.to_hex(), '5a')
        self.assertEqual(TruthTable.from_hex(3, '5a'), RULE_90)
        self.assertEqual(TruthTable.from_hex(3, '0x5A'), RULE_90)
        with self.assertRaises(ContractViolation):
            TruthTable.from_hex(3, 'zz')

    def test_value_must_fit_arity(self):
        with self.assertRaises(ContractViolation):
            TruthTable(2, 16)
        with self.assertRaises(ContractViolation):
            TruthTable(9, 0)

    def test_wolfram_code_matches_table_bits(self):
        code = WolframCode(90, 3)
        self.assertEqual(code.to_table(), RULE_90)
        self.assertEqual(str(WolframCode.from_table(RULE_150)), '150')

    def test_reversed_variables(self):
        x1 = TruthTable.from_function(3, lambda a, b, c: a)
        x3 = TruthTable.from_function(3, lambda a, b, c: c)
        self.assertEqual(x1.reversed_variables(), x3)
        self.assertEqual(RULE_30.reversed_variables().reversed_variables(), RULE_30)

    def test_complemented(self):
        self.assertEqual(RULE_90.complemented(), RULE_165)


class BipermutiveTests(SimpleTestCase):
    def test_is_bipermutive_examples(self):
        self.assertTrue(is_bipermutive(RULE_150))
        self.assertTrue(is_bipermutive(RULE_90))
        self.assertFalse(is_bipermutive(RULE_30))

    def test_is_bipermutive_needs_two_variables(self):
        with self.assertRaises(ContractViolation):
            is_bipermutive(TruthTable(1, 2))

    def test_arity_three_census(self):
        accepted = {code for code in range(256) if is_bipermutive(TruthTable(3, code))}
        self.assertEqual(accepted, {90, 105, 150, 165})
        expected = {
            TruthTable.from_function(3, lambda a, b, c, h=h: a ^ h(b) ^ c).bits
            for h in (lambda b: 0, lambda b: 1, lambda b: b, lambda b: b ^ 1)
        }
        self.assertEqual(accepted, expected)

    def test_extract_generator_examples(self):
        self.assertEqual(extract_generator(RULE_150).generator, TruthTable.from_array(1, [0, 1]))
        self.assertEqual(extract_generator(RULE_90).generator, TruthTable.constant(1, 0))
        self.assertEqual(extract_generator(RULE_165).generator, TruthTable.constant(1, 1))
        self.assertEqual(extract_generator(RULE_150).diameter, 3)

    def test_extract_generator_names_violated_side(self):
        with self.assertRaises(NotBipermutiveError) as ctx:
            extract_generator(RULE_30)
        self.assertEqual(ctx.exception.side, 'right')

        left_broken = TruthTable.from_function(3, lambda a, b, c: (a & b) ^ c)
        with self.assertRaises(NotBipermutiveError) as ctx:
            extract_generator(left_broken)
        self.assertEqual(ctx.exception.side, 'left')

    def test_expand_examples(self):
        self.assertEqual(expand(BipermutiveRule(3, TruthTable.from_array(1, [0, 1]))), RULE_150)
        self.assertEqual(expand(BipermutiveRule(3, TruthTable.constant(1, 0))), RULE_90)

        quadratic = expand(BipermutiveRule(6, QUADRATIC_GENERATOR))
        self.assertEqual(quadratic.arity, 6)
        self.assertTrue(is_bipermutive(quadratic))

    def test_diameter_two_rule(self):
        rule = BipermutiveRule(2, TruthTable.constant(0, 0))
        self.assertEqual(expand(rule), TruthTable.from_function(2, lambda a, b: a ^ b))
        self.assertEqual(extract_generator(expand(rule)), rule)

    def test_generator_arity_must_match(self):
        with self.assertRaises(ContractViolation):
            BipermutiveRule(4, TruthTable(1, 2))

    def test_round_trip_from_generators(self):
        for arity in range(0, 4):
            for code in range(1 << (1 << arity)):
                rule = BipermutiveRule(arity + 2, TruthTable(arity, code))
                self.assertEqual(extract_generator(expand(rule)), rule)

    def test_round_trip_generators_of_arity_four(self):
        for code in range(1 << 16):
            rule = BipermutiveRule(6, TruthTable(4, code))
            self.assertEqual(extract_generator(expand(rule)).generator.bits, code)

    def test_round_trip_from_bipermutive_tables(self):
        for arity in range(2, 5):
            for code in range(1 << (1 << arity)):
                table = TruthTable(arity, code)
                if is_bipermutive(table):
                    self.assertEqual(expand(extract_generator(table)), table)


class AnfTests(SimpleTestCase):
    def test_rule_90(self):
        form = anf(RULE_90)
        self.assertEqual(form.monomials(), [(1,), (3,)])
        self.assertEqual(form.degree, 1)

    def test_constant_one(self):
        form = anf(TruthTable.constant(3, 1))
        self.assertEqual(form.monomials(), [()])
        self.assertEqual(form.degree, 0)

    def test_zero_function_has_degree_zero(self):
        self.assertEqual(anf(TruthTable.constant(2, 0)).degree, 0)

    def test_quadratic_generator(self):
        form = anf(QUADRATIC_GENERATOR)
        self.assertEqual(form.monomials(), [(1,), (3,), (1, 4)])
        self.assertEqual(form.degree, 2)
        self.assertEqual(format_anf(form), 'x1^x3^x1*x4')

    def test_transform_is_involution(self):
        for arity in range(0, 4):
            for code in range(1 << (1 << arity)):
                table = TruthTable(arity, code)
                form = anf(table)
                self.assertEqual(form.to_table(), table)
                twice = mobius_transform(mobius_transform(table.array))
                self.assertEqual(list(twice), list(table.array))

    def test_degree_class_examples(self):
        self.assertEqual(degree_class(QUADRATIC_GENERATOR), DegreeClass.NONLINEAR)
        self.assertEqual(degree_class(TruthTable.constant(2, 0)), DegreeClass.CONSTANT)
        self.assertEqual(
            degree_class(TruthTable.from_function(2, lambda a, b: a ^ b ^ 1)),
            DegreeClass.AFFINE,
        )

    def test_degree_class_partition_on_two_variables(self):
        counts = {cls: 0 for cls in DegreeClass}
        for code in range(16):
            counts[degree_class(TruthTable(2, code))] += 1
        self.assertEqual(counts, {
            DegreeClass.CONSTANT: 2,
            DegreeClass.LINEAR: 3,
            DegreeClass.AFFINE: 3,
            DegreeClass.NONLINEAR: 8,
        })

    def test_parse_anf(self):
        self.assertEqual(parse_anf('x1^x3', 3), RULE_90)
        self.assertEqual(parse_anf('x1 ^ x2 ^ x3', 3), RULE_150)
        self.assertEqual(parse_anf('x1^x3^x1x4', 4), QUADRATIC_GENERATOR)
        self.assertEqual(parse_anf('x1^x3^x1*x4', 4), QUADRATIC_GENERATOR)
        self.assertEqual(parse_anf('1', 0), TruthTable.constant(0, 1))
        self.assertEqual(parse_anf('x1^x1', 2), TruthTable.constant(2, 0))

    def test_parse_anf_rejects_bad_terms(self):
        with self.assertRaises(ContractViolation):
            parse_anf('x5', 4)
        with self.assertRaises(ContractViolation):
            parse_anf('y1^x2', 2)
        with self.assertRaises(ContractViolation):
            parse_anf('', 2)


class CatalogTests(SimpleTestCase):
    def test_project_catalog_entries(self):
        catalog = load_catalog()
        self.assertEqual(catalog['quadratic6'].rule().generator, QUADRATIC_GENERATOR)
        self.assertEqual(catalog['identity'].rule().expand(), RULE_150)
        self.assertEqual(catalog['zero'].rule().expand(), RULE_90)
        self.assertEqual(catalog['complement'].rule().expand(), RULE_105)
        self.assertEqual(set(catalog), {'zero', 'identity', 'complement', 'chi', 'quadratic6', 'shift'})

    def test_resolve_generator_forms(self):
        self.assertEqual(resolve_generator('quadratic6', 6).generator, QUADRATIC_GENERATOR)
        self.assertEqual(resolve_generator('0x2', 3).generator, TruthTable(1, 2))
        self.assertEqual(resolve_generator('2', 3).generator, TruthTable(1, 2))
        self.assertEqual(resolve_generator('x1^x3^x1x4', 6).generator, QUADRATIC_GENERATOR)
        self.assertEqual(resolve_generator('0', 2).generator, TruthTable.constant(0, 0))

    def test_resolve_generator_errors(self):
        with self.assertRaises(CatalogError):
            resolve_generator('quadratic6', 5)
        with self.assertRaises(CatalogError):
            resolve_generator('ff', 3)
        with self.assertRaises(CatalogError):
            resolve_generator('x1^q', 4)

    def test_catalog_from_custom_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'rules.yaml'
            path.write_text("generators:\n  - name: swap\n    diameter: 4\n    anf: x2\n")
            catalog = load_catalog(path)
        self.assertEqual(resolve_generator('swap', 4, catalog=catalog).generator,
                         TruthTable.from_function(2, lambda a, b: b))
        self.assertEqual(load_catalog(Path('/nonexistent/rules.yaml')), {})
