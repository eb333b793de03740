"""Transversals: N cells, one per row and column, carrying every symbol once."""
from dataclasses import dataclass
from typing import Iterable, Optional

from automata.configs import BitConfig
from automata.diagonal import concatenation_images
from automata.pbca import check_cap, is_bijective_images
from rules.bipermutive import BipermutiveRule
from rules.errors import ContractViolation

from .grid import LatinSquareGrid, coord_encode


@dataclass(frozen=True)
class CoordSet:
    """1-based (row, column) pairs with pairwise distinct rows and columns."""
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(row), int(column)) for row, column in self.pairs)
        rows = [row for row, _ in pairs]
        columns = [column for _, column in pairs]
        if len(set(rows)) != len(rows):
            raise ContractViolation("Coordinate set repeats a row.")
        if len(set(columns)) != len(columns):
            raise ContractViolation("Coordinate set repeats a column.")
        object.__setattr__(self, 'pairs', pairs)

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> 'CoordSet':
        return cls(tuple(pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def diagonal_coords(order: int) -> CoordSet:
    return CoordSet(tuple((index, index) for index in range(1, order + 1)))


def shifted_diagonal_coords(shift: BitConfig) -> CoordSet:
    """{(phi(x), phi(x ^ c))} for every x of the shift's length."""
    return CoordSet(tuple(
        (coord_encode(config), coord_encode(config.xor(shift)))
        for config in (BitConfig.from_value(value, shift.length) for value in range(1 << shift.length))
    ))


def is_transversal(grid: LatinSquareGrid, coords: CoordSet) -> bool:
    order = grid.order
    if len(coords) != order:
        raise ContractViolation(f"A transversal of an order-{order} square has {order} cells, got {len(coords)}.")
    for row, column in coords:
        if not (1 <= row <= order and 1 <= column <= order):
            raise ContractViolation(f"Cell ({row}, {column}) is outside the order-{order} square.")
    symbols = {grid[row, column] for row, column in coords}
    return len(symbols) == order


def shifted_diagonal_is_transversal(rule: BipermutiveRule, shift: BitConfig, cap: Optional[int] = None) -> bool:
    """True iff x -> F(x || x ^ c) is a bijection on F_2^(d-1)."""
    if shift.length != rule.window:
        raise ContractViolation(
            f"A diameter-{rule.diameter} rule needs a shift of {rule.window} cells, got {shift.length}."
        )
    check_cap('Diagonal length', rule.window, cap)
    return is_bijective_images(concatenation_images(rule, shift.value), rule.window)
