"""Fixed-length bit configurations; cell 1 is the leftmost (most significant) bit."""
from dataclasses import dataclass
from typing import Iterable, Iterator

from rules.errors import ContractViolation
from rules.truthtable import input_bits, input_value


@dataclass(frozen=True)
class BitConfig:
    bits: tuple[int, ...]

    def __post_init__(self):
        if not self.bits:
            raise ContractViolation("A configuration needs at least one cell.")
        if any(bit not in (0, 1) for bit in self.bits):
            raise ContractViolation(f"Configuration cells must be 0 or 1, got {self.bits!r}.")

    @classmethod
    def of(cls, bits: Iterable[int]) -> 'BitConfig':
        return cls(tuple(int(bit) for bit in bits))

    @classmethod
    def from_string(cls, text: str) -> 'BitConfig':
        text = text.strip()
        if not text or set(text) - {'0', '1'}:
            raise ContractViolation(f"Configurations are written as 0/1 strings, got {text!r}.")
        return cls(tuple(int(char) for char in text))

    @classmethod
    def from_value(cls, value: int, length: int) -> 'BitConfig':
        if not 0 <= value < (1 << length):
            raise ContractViolation(f"Value {value} does not fit in {length} cells.")
        return cls(input_bits(value, length))

    @classmethod
    def zeros(cls, length: int) -> 'BitConfig':
        return cls((0,) * length)

    @property
    def length(self) -> int:
        return len(self.bits)

    @property
    def value(self) -> int:
        return input_value(self.bits)

    def concat(self, other: 'BitConfig') -> 'BitConfig':
        return BitConfig(self.bits + other.bits)

    def xor(self, other: 'BitConfig') -> 'BitConfig':
        if other.length != self.length:
            raise ContractViolation(
                f"Cannot XOR configurations of lengths {self.length} and {other.length}."
            )
        return BitConfig(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def rotate_left(self, steps: int = 1) -> 'BitConfig':
        steps %= self.length
        return BitConfig(self.bits[steps:] + self.bits[:steps])

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __getitem__(self, index):
        return self.bits[index]

    def __str__(self):
        return ''.join(str(bit) for bit in self.bits)
