"""Algebraic normal form, algebraic degree and the ANF expression grammar."""
from dataclasses import dataclass
import re

import numpy as np
from django.db import models

from .errors import ContractViolation
from .truthtable import TruthTable


class DegreeClass(models.TextChoices):
    CONSTANT = 'constant', 'Constant'
    LINEAR = 'linear', 'Linear'
    AFFINE = 'affine', 'Affine'
    NONLINEAR = 'nonlinear', 'Nonlinear'


@dataclass(frozen=True)
class Anf:
    """ANF coefficients indexed by monomial mask.

    The mask uses the same bit positions as truth table inputs, so x1 is the
    most significant bit of a mask of width ``arity``.
    """
    arity: int
    coefficients: TruthTable

    @property
    def degree(self) -> int:
        masks = np.flatnonzero(self.coefficients.array)
        if masks.size == 0:
            return 0
        return max(int(mask).bit_count() for mask in masks)

    @property
    def constant_term(self) -> int:
        return self.coefficients.bits & 1

    def monomials(self) -> list[tuple[int, ...]]:
        """Set monomials as tuples of 1-based variable indices, () for the constant."""
        result = []
        for mask in np.flatnonzero(self.coefficients.array):
            result.append(tuple(
                position + 1
                for position in range(self.arity)
                if (int(mask) >> (self.arity - 1 - position)) & 1
            ))
        return sorted(result, key=lambda monomial: (len(monomial), monomial))

    def to_table(self) -> TruthTable:
        return TruthTable.from_array(self.arity, mobius_transform(self.coefficients.array))


def mobius_transform(values: np.ndarray) -> np.ndarray:
    """Binary Möbius transform over GF(2); it is its own inverse."""
    result = np.array(values, dtype=np.uint8, copy=True)
    size = result.size
    step = 1
    while step < size:
        blocks = result.reshape(-1, 2, step)
        blocks[:, 1, :] ^= blocks[:, 0, :]
        step <<= 1
    return result


def anf(table: TruthTable) -> Anf:
    coefficients = TruthTable.from_array(table.arity, mobius_transform(table.array))
    return Anf(table.arity, coefficients)


def degree_class(table: TruthTable) -> DegreeClass:
    form = anf(table)
    degree = form.degree
    if degree == 0:
        return DegreeClass.CONSTANT
    if degree == 1:
        return DegreeClass.AFFINE if form.constant_term else DegreeClass.LINEAR
    return DegreeClass.NONLINEAR


_TERM_PATTERN = re.compile(r'^(?:x\d+\*?)+$')
_VARIABLE_PATTERN = re.compile(r'x(\d+)')


def parse_anf(expression: str, arity: int) -> TruthTable:
    """Parse ``x1^x3^x1*x4`` style expressions (``x1x4`` also means x1*x4)."""
    text = expression.replace(' ', '').lower()
    if not text:
        raise ContractViolation("Empty ANF expression.")

    coefficients = 0
    for term in text.replace('+', '^').split('^'):
        if term in {'0', '1'}:
            mask = 0 if term == '1' else None
        elif _TERM_PATTERN.match(term) and not term.endswith('*'):
            mask = 0
            for match in _VARIABLE_PATTERN.finditer(term):
                variable = int(match.group(1))
                if not 1 <= variable <= arity:
                    raise ContractViolation(
                        f"Variable x{variable} out of range for arity {arity} in {expression!r}."
                    )
                mask |= 1 << (arity - variable)
        else:
            raise ContractViolation(f"Cannot parse ANF term {term!r} in {expression!r}.")
        if mask is not None:
            coefficients ^= 1 << mask

    return Anf(arity, TruthTable(arity, coefficients)).to_table()


def format_anf(form: Anf) -> str:
    terms = []
    for monomial in form.monomials():
        terms.append('1' if not monomial else '*'.join(f"x{variable}" for variable in monomial))
    return '^'.join(terms) if terms else '0'
