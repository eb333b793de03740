"""Exhaustive equivalence suites behind the ``verify`` command."""
from dataclasses import dataclass
import logging
from typing import Callable, Optional

from django.conf import settings

from automata.diagonal import diagonal_is_permutation, generator_pbca
from automata.pbca import is_invertible
from rules.bipermutive import BipermutiveRule, is_bipermutive
from rules.errors import ContractViolation
from rules.truthtable import TruthTable
from squares.grid import build_square, is_latin

from .engine import complement_closure_violations, enumerate_invertible, reversal_closure_violations


logger = logging.getLogger(__name__)

PROPERTIES = ('lemma1', 'theorem1', 'closure')
MIN_DIAMETERS = {'lemma1': 2, 'theorem1': 2, 'closure': 3}

RuleOracle = Callable[[BipermutiveRule], bool]


@dataclass(frozen=True)
class VerificationResult:
    property: str
    diameter: int
    checked: int
    passed: bool
    counterexample: Optional[str] = None

    def lines(self) -> list[str]:
        lines = [
            f"property: {self.property}",
            f"diameter: {self.diameter}",
            f"checked: {self.checked}",
            f"result: {'pass' if self.passed else 'fail'}",
        ]
        if self.counterexample is not None:
            lines.append(f"counterexample: {self.counterexample}")
        return lines


def check_suite_scale(prop: str, diameter: int) -> None:
    if prop not in PROPERTIES:
        raise ContractViolation(f"Unknown property {prop!r}; expected one of {', '.join(PROPERTIES)}.")
    limit = getattr(settings, 'LATIN_VERIFY_LIMITS', {}).get(prop, 4)
    low = MIN_DIAMETERS[prop]
    if not low <= diameter <= limit:
        raise ContractViolation(f"The {prop} suite runs for diameters {low}..{limit}, got {diameter}.")


def verify_lemma1(diameter: int) -> VerificationResult:
    """A rule's square is Latin exactly when the rule is bipermutive."""
    check_suite_scale('lemma1', diameter)
    checked = 0
    for code in range(1 << (1 << diameter)):
        table = TruthTable(diameter, code)
        checked += 1
        if is_latin(build_square(table)) != is_bipermutive(table):
            return VerificationResult('lemma1', diameter, checked, False, f"rule {code}")
    return VerificationResult('lemma1', diameter, checked, True)


def pbca_oracle(rule: BipermutiveRule) -> bool:
    return is_invertible(generator_pbca(rule))


def verify_theorem1(diameter: int, oracle: Optional[RuleOracle] = None) -> VerificationResult:
    """Diagonal transversal verdict against invertibility of the generator's PBCA."""
    check_suite_scale('theorem1', diameter)
    oracle = oracle or pbca_oracle
    arity = diameter - 2
    checked = 0
    for code in range(1 << (1 << arity)):
        rule = BipermutiveRule(diameter, TruthTable(arity, code))
        checked += 1
        if diagonal_is_permutation(rule) != oracle(rule):
            return VerificationResult('theorem1', diameter, checked, False, f"generator {rule.generator.to_hex()}")
    return VerificationResult('theorem1', diameter, checked, True)


def verify_closure(diameter: int) -> VerificationResult:
    """The invertible set is closed under complement and under variable reversal."""
    check_suite_scale('closure', diameter)
    report = enumerate_invertible(diameter)
    checked = len(report.invertible_codes)
    for kind, violations in (
        ('complement', complement_closure_violations(report)),
        ('reversal', reversal_closure_violations(report)),
    ):
        if violations:
            return VerificationResult('closure', diameter, checked, False, f"{kind} of generator {violations[0]}")
    return VerificationResult('closure', diameter, checked, True)


SUITES = {
    'lemma1': verify_lemma1,
    'theorem1': verify_theorem1,
    'closure': verify_closure,
}


def run_suite(prop: str, diameter: int) -> VerificationResult:
    check_suite_scale(prop, diameter)
    result = SUITES[prop](diameter)
    logger.info("%s d=%d: %s over %d", prop, diameter, 'pass' if result.passed else 'fail', result.checked)
    return result
