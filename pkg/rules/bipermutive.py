"""Bipermutive local rules f = x1 ^ g(x2, ..., x_{d-1}) ^ xd."""
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, NotBipermutiveError
from .truthtable import MAX_ARITY, TruthTable


@dataclass(frozen=True)
class BipermutiveRule:
    """A diameter-d rule kept as its (d-2)-variable generating function."""
    diameter: int
    generator: TruthTable

    def __post_init__(self):
        if not 2 <= self.diameter <= MAX_ARITY:
            raise ContractViolation(f"Diameter must be between 2 and {MAX_ARITY}, got {self.diameter}.")
        if self.generator.arity != self.diameter - 2:
            raise ContractViolation(
                f"A diameter-{self.diameter} rule needs a generator of arity "
                f"{self.diameter - 2}, got {self.generator.arity}."
            )

    @classmethod
    def from_generator(cls, generator: TruthTable) -> 'BipermutiveRule':
        return cls(generator.arity + 2, generator)

    @property
    def window(self) -> int:
        """Length of the diagonal configuration, d - 1."""
        return self.diameter - 1

    def expand(self) -> TruthTable:
        return expand(self)


def _permutivity_failures(table: TruthTable) -> tuple[bool, bool]:
    values = table.array
    index = np.arange(table.size)
    left = np.all(values ^ values[index ^ (1 << (table.arity - 1))])
    right = np.all(values ^ values[index ^ 1])
    return not left, not right


def is_bipermutive(table: TruthTable) -> bool:
    if table.arity < 2:
        raise ContractViolation(f"Bipermutivity needs at least two variables, got arity {table.arity}.")
    left_fails, right_fails = _permutivity_failures(table)
    return not (left_fails or right_fails)


def extract_generator(table: TruthTable) -> BipermutiveRule:
    if table.arity < 2:
        raise ContractViolation(f"Bipermutivity needs at least two variables, got arity {table.arity}.")
    left_fails, right_fails = _permutivity_failures(table)
    if left_fails:
        raise NotBipermutiveError('left', f"Rule {table} is not permutive in x1.")
    if right_fails:
        raise NotBipermutiveError('right', f"Rule {table} is not permutive in x{table.arity}.")

    # g(m) = f(0 || m || 0)
    middle = np.arange(1 << (table.arity - 2))
    generator = TruthTable.from_array(table.arity - 2, table.array[middle << 1])
    return BipermutiveRule(table.arity, generator)


def expand(rule: BipermutiveRule) -> TruthTable:
    d = rule.diameter
    index = np.arange(1 << d)
    first = index >> (d - 1)
    last = index & 1
    middle = (index >> 1) & ((1 << (d - 2)) - 1)
    values = first ^ rule.generator.array[middle] ^ last
    return TruthTable.from_array(d, values)
