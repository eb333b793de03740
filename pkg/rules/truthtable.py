"""Boolean functions stored as truth tables.

Bit ``v`` of a table is the function evaluated on the input whose MSB-first
integer value is ``v`` (x1 is the most significant variable), which is the
classic Wolfram numbering: rule 90 at arity 3 is x1 ^ x3.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import ContractViolation


MAX_ARITY = 8


@dataclass(frozen=True)
class TruthTable:
    arity: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.arity <= MAX_ARITY:
            raise ContractViolation(f"Arity must be between 0 and {MAX_ARITY}, got {self.arity}.")
        if not 0 <= self.bits < (1 << self.size):
            raise ContractViolation(
                f"Truth table value {self.bits:#x} does not fit {self.size} entries."
            )

    @property
    def size(self) -> int:
        return 1 << self.arity

    @cached_property
    def array(self) -> np.ndarray:
        """The table as a read-only uint8 vector of length 2**arity."""
        values = (self.bits >> np.arange(self.size, dtype=object)) & 1
        table = np.asarray(values, dtype=np.uint8)
        table.setflags(write=False)
        return table

    @classmethod
    def from_array(cls, arity: int, values: Iterable[int]) -> 'TruthTable':
        bits = 0
        count = 0
        for index, value in enumerate(values):
            if int(value):
                bits |= 1 << index
            count += 1
        if count != 1 << arity:
            raise ContractViolation(f"Expected {1 << arity} truth table entries, got {count}.")
        return cls(arity, bits)

    @classmethod
    def from_function(cls, arity: int, func: Callable[..., int]) -> 'TruthTable':
        """Tabulate ``func(x1, ..., xk)`` over all inputs."""
        return cls.from_array(
            arity,
            (func(*input_bits(value, arity)) & 1 for value in range(1 << arity)),
        )

    @classmethod
    def constant(cls, arity: int, value: int) -> 'TruthTable':
        return cls(arity, ((1 << (1 << arity)) - 1) if value else 0)

    @classmethod
    def from_hex(cls, arity: int, text: str) -> 'TruthTable':
        cleaned = text.strip().lower()
        if cleaned.startswith('0x'):
            cleaned = cleaned[2:]
        try:
            value = int(cleaned, 16)
        except ValueError as exc:
            raise ContractViolation(f"Not a hexadecimal truth table: {text!r}") from exc
        return cls(arity, value)

    def to_hex(self) -> str:
        return format(self.bits, 'x')

    def evaluate(self, inputs: Sequence[int]) -> int:
        return evaluate(self, inputs)

    def complemented(self) -> 'TruthTable':
        return TruthTable(self.arity, self.bits ^ ((1 << self.size) - 1))

    def reversed_variables(self) -> 'TruthTable':
        """g(x1, ..., xk) -> g(xk, ..., x1)."""
        return TruthTable.from_array(
            self.arity,
            (self.array[reverse_bits(value, self.arity)] for value in range(self.size)),
        )

    def __str__(self):
        return f"{self.to_hex()}/{self.arity}"


@dataclass(frozen=True)
class WolframCode:
    value: int
    arity: int

    def to_table(self) -> TruthTable:
        return TruthTable(self.arity, self.value)

    @classmethod
    def from_table(cls, table: TruthTable) -> 'WolframCode':
        return cls(table.bits, table.arity)

    def __str__(self):
        return f"{self.value}"


def input_bits(value: int, width: int) -> tuple[int, ...]:
    """MSB-first bits of ``value``: element 0 is x1."""
    return tuple((value >> (width - 1 - position)) & 1 for position in range(width))


def input_value(bits: Sequence[int]) -> int:
    value = 0
    for bit in bits:
        value = (value << 1) | (int(bit) & 1)
    return value


def reverse_bits(value: int, width: int) -> int:
    result = 0
    for _ in range(width):
        result = (result << 1) | (value & 1)
        value >>= 1
    return result


def evaluate(table: TruthTable, inputs: Sequence[int]) -> int:
    inputs = tuple(inputs)
    if len(inputs) != table.arity:
        raise ContractViolation(
            f"Input of length {len(inputs)} given to a table of arity {table.arity}."
        )
    return (table.bits >> input_value(inputs)) & 1
