"""Splitting a Latin square into disjoint transversals, and the orthogonal mate it yields."""
from dataclasses import dataclass
import logging
from typing import Optional

from django.conf import settings
from django.db import models

from rules.errors import ContractViolation, ResourceLimitExceeded

from .grid import LatinSquareGrid, is_latin
from .transversals import CoordSet, is_transversal


logger = logging.getLogger(__name__)


class DecompositionVerdict(models.TextChoices):
    FOUND = 'found', 'Decomposition found'
    NONE = 'none', 'No decomposition'
    UNKNOWN = 'unknown', 'Unknown (budget exhausted)'


@dataclass(frozen=True)
class TransversalDecomposition:
    classes: tuple[CoordSet, ...]

    def __post_init__(self):
        order = len(self.classes)
        seen = set()
        for coords in self.classes:
            if len(coords) != order:
                raise ContractViolation(f"Every class of an order-{order} decomposition needs {order} cells.")
            for row, column in coords:
                if not (1 <= row <= order and 1 <= column <= order):
                    raise ContractViolation(f"Cell ({row}, {column}) is outside the order-{order} square.")
                seen.add((row, column))
        if len(seen) != order * order:
            raise ContractViolation("Decomposition classes overlap.")

    @property
    def order(self) -> int:
        return len(self.classes)

    def is_decomposition_of(self, grid: LatinSquareGrid) -> bool:
        if grid.order != self.order:
            return False
        return all(is_transversal(grid, coords) for coords in self.classes)


@dataclass(frozen=True)
class DecompositionResult:
    verdict: DecompositionVerdict
    nodes: int
    decomposition: Optional[TransversalDecomposition] = None


class _BudgetExhausted(Exception):
    pass


class TransversalSearch:
    """Depth-first search that fills the square row by row.

    In each row every class receives one column, skipping columns and symbols
    the class already holds; after each placement the remaining classes of the
    row must still have a candidate cell. Classes are labelled by their column
    in the first row.
    """

    def __init__(self, grid: LatinSquareGrid, budget: int):
        self.order = grid.order
        self.symbols = [[int(value) - 1 for value in row] for row in grid.cells]
        self.column_of = [[0] * self.order for _ in range(self.order)]
        for row, values in enumerate(self.symbols):
            for column, symbol in enumerate(values):
                self.column_of[row][symbol] = column
        self.budget = budget
        self.nodes = 0
        self.used_columns = [0] * self.order
        self.used_symbols = [0] * self.order
        self.cells: list[list[tuple[int, int]]] = [[] for _ in range(self.order)]

    def run(self) -> DecompositionResult:
        for klass in range(self.order):
            self._place(klass, 0, klass)
        try:
            found = self._fill(1, 0, 0)
        except _BudgetExhausted:
            logger.debug("Decomposition search stopped after %d nodes", self.nodes)
            return DecompositionResult(DecompositionVerdict.UNKNOWN, self.nodes)

        if not found:
            return DecompositionResult(DecompositionVerdict.NONE, self.nodes)
        classes = tuple(
            CoordSet(tuple((row + 1, column + 1) for row, column in cells))
            for cells in self.cells
        )
        return DecompositionResult(DecompositionVerdict.FOUND, self.nodes, TransversalDecomposition(classes))

    def _place(self, klass: int, row: int, column: int) -> None:
        self.used_columns[klass] |= 1 << column
        self.used_symbols[klass] |= 1 << self.symbols[row][column]
        self.cells[klass].append((row, column))

    def _unplace(self, klass: int, row: int, column: int) -> None:
        self.used_columns[klass] &= ~(1 << column)
        self.used_symbols[klass] &= ~(1 << self.symbols[row][column])
        self.cells[klass].pop()

    def _candidates(self, klass: int, row: int, taken: int) -> int:
        mask = 0
        for symbol in range(self.order):
            if not self.used_symbols[klass] >> symbol & 1:
                mask |= 1 << self.column_of[row][symbol]
        return mask & ~taken & ~self.used_columns[klass]

    def _fill(self, row: int, klass: int, taken: int) -> bool:
        if row == self.order:
            return True
        if klass == self.order:
            return self._fill(row + 1, 0, 0)

        candidates = self._candidates(klass, row, taken)
        while candidates:
            bit = candidates & -candidates
            candidates ^= bit
            column = bit.bit_length() - 1

            self.nodes += 1
            if self.nodes > self.budget:
                raise _BudgetExhausted()

            self._place(klass, row, column)
            if self._forward_check(row, klass + 1, taken | bit) and self._fill(row, klass + 1, taken | bit):
                return True
            self._unplace(klass, row, column)
        return False

    def _forward_check(self, row: int, first_klass: int, taken: int) -> bool:
        return all(self._candidates(klass, row, taken) for klass in range(first_klass, self.order))


def find_disjoint_decomposition(grid: LatinSquareGrid, budget: Optional[int] = None) -> DecompositionResult:
    cap = getattr(settings, 'DECOMPOSITION_ORDER_CAP', 16)
    if grid.order > cap:
        raise ResourceLimitExceeded('Square order', grid.order, cap)
    if not is_latin(grid):
        raise ContractViolation("Transversal decompositions are only searched in Latin squares.")
    if budget is None:
        budget = getattr(settings, 'DECOMPOSITION_NODE_BUDGET', 10 ** 7)

    result = TransversalSearch(grid, budget).run()
    logger.info("Order-%d decomposition search: %s after %d nodes", grid.order, result.verdict, result.nodes)
    return result


def mate_from_decomposition(decomposition: TransversalDecomposition) -> LatinSquareGrid:
    """Symbol k on every cell of class k."""
    order = decomposition.order
    rows = [[0] * order for _ in range(order)]
    for symbol, coords in enumerate(decomposition.classes, start=1):
        for row, column in coords:
            rows[row - 1][column - 1] = symbol
    mate = LatinSquareGrid.from_rows(rows)
    if not mate.verified:
        raise ContractViolation("Decomposition classes do not form a Latin mate.")
    return mate


def symbol_classes(grid: LatinSquareGrid) -> TransversalDecomposition:
    """The N symbol classes of a Latin square, in symbol order."""
    if not is_latin(grid):
        raise ContractViolation("Symbol classes only partition Latin squares into transversal shapes.")
    classes = []
    for symbol in range(1, grid.order + 1):
        classes.append(CoordSet(tuple(
            (row, column)
            for row in range(1, grid.order + 1)
            for column in range(1, grid.order + 1)
            if grid[row, column] == symbol
        )))
    return TransversalDecomposition(tuple(classes))
