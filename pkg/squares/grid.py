"""Latin squares generated by no-boundary bipermutive CA."""
from dataclasses import dataclass, field
import logging
from typing import Sequence

import numpy as np

from automata.configs import BitConfig
from automata.pbca import apply_rule
from rules.errors import ContractViolation
from rules.truthtable import TruthTable


logger = logging.getLogger(__name__)

MAX_SQUARE_DIAMETER = 8


@dataclass(frozen=True, eq=False)
class LatinSquareGrid:
    """An N x N grid over symbols 1..N.

    ``verified`` records whether every row and column was found to be a
    permutation; only build_square on a non-bipermutive rule produces an
    unverified grid.
    """
    cells: np.ndarray
    verified: bool = field(default=False)

    def __post_init__(self):
        cells = np.array(self.cells, dtype=np.int64, copy=True)
        if cells.ndim != 2 or cells.shape[0] != cells.shape[1] or cells.shape[0] == 0:
            raise ContractViolation(f"A square grid is needed, got shape {cells.shape}.")
        order = cells.shape[0]
        if cells.min() < 1 or cells.max() > order:
            raise ContractViolation(f"Symbols must lie in 1..{order}.")
        cells.setflags(write=False)
        object.__setattr__(self, 'cells', cells)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> 'LatinSquareGrid':
        grid = cls(np.asarray(rows, dtype=np.int64))
        return cls(grid.cells, verified=is_latin(grid))

    @property
    def order(self) -> int:
        return int(self.cells.shape[0])

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(value) for value in row) for row in self.cells)

    def __getitem__(self, coord: tuple[int, int]) -> int:
        """1-based (row, column) access."""
        row, column = coord
        return int(self.cells[row - 1, column - 1])

    def __eq__(self, other):
        if not isinstance(other, LatinSquareGrid):
            return NotImplemented
        return np.array_equal(self.cells, other.cells)

    __hash__ = None


def coord_encode(config: BitConfig) -> int:
    """phi: MSB-first value plus one."""
    return config.value + 1


def coord_decode(symbol: int, length: int) -> BitConfig:
    """psi, the inverse of phi on configurations of ``length`` cells."""
    if not 1 <= symbol <= (1 << length):
        raise ContractViolation(f"Symbol {symbol} is outside 1..{1 << length}.")
    return BitConfig.from_value(symbol - 1, length)


def build_square(rule: TruthTable) -> LatinSquareGrid:
    """S(i, j) = phi(F(psi(i) || psi(j))) for the no-boundary CA of ``rule``."""
    d = rule.arity
    if not 2 <= d <= MAX_SQUARE_DIAMETER:
        raise ContractViolation(f"Squares are built for diameters 2..{MAX_SQUARE_DIAMETER}, got {d}.")
    n = d - 1
    order = 1 << n
    rows = np.arange(order, dtype=np.int64)
    values = ((rows[:, None] << n) | rows[None, :]).ravel()
    images = apply_rule(rule, values, 2 * n, np.arange(n), wrap=False)
    cells = images.reshape(order, order) + 1
    grid = LatinSquareGrid(cells, verified=_is_latin_cells(cells))
    if not grid.verified:
        logger.debug("Rule %s produced a non-Latin grid of order %d", rule, order)
    return grid


def _is_latin_cells(cells: np.ndarray) -> bool:
    order = cells.shape[0]
    expected = np.arange(1, order + 1)
    for axis in (0, 1):
        occupancy = np.sort(cells, axis=axis)
        reference = expected[:, None] if axis == 0 else expected[None, :]
        if not np.array_equal(occupancy, np.broadcast_to(reference, cells.shape)):
            return False
    return True


def is_latin(grid: LatinSquareGrid) -> bool:
    return _is_latin_cells(grid.cells)


def are_orthogonal(first: LatinSquareGrid, second: LatinSquareGrid) -> bool:
    if first.order != second.order:
        raise ContractViolation(
            f"Orthogonality needs equal orders, got {first.order} and {second.order}."
        )
    order = first.order
    pairs = (first.cells - 1) * order + (second.cells - 1)
    occupancy = np.zeros(order * order, dtype=bool)
    occupancy[pairs.ravel()] = True
    return bool(occupancy.all())
