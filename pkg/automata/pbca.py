"""No-boundary and periodic-boundary cellular automata over F_2."""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import logging
from typing import Optional

import numpy as np
from django.conf import settings

from rules.errors import ContractViolation, ResourceLimitExceeded
from rules.truthtable import TruthTable

from .configs import BitConfig


logger = logging.getLogger(__name__)

BLOCK_SIZE = 1 << 16


@dataclass(frozen=True)
class PbcaMap:
    rule: TruthTable
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ContractViolation(f"A periodic CA needs at least one cell, got size {self.size}.")

    def __call__(self, config: BitConfig) -> BitConfig:
        return pbca_eval(self, config)


def brute_force_cap(cap: Optional[int] = None) -> int:
    return cap if cap is not None else getattr(settings, 'BRUTE_FORCE_CAP', 24)


def check_cap(what: str, cells: int, cap: Optional[int] = None) -> None:
    limit = brute_force_cap(cap)
    if cells > limit:
        raise ResourceLimitExceeded(what, cells, limit)


def window_indices(values: np.ndarray, length: int, starts: np.ndarray, width: int, wrap: bool) -> np.ndarray:
    """Truth table index of every window of every configuration.

    ``values`` holds MSB-first configurations of ``length`` cells; the result
    has shape ``(len(values), len(starts))``.
    """
    shifts = np.arange(length - 1, -1, -1, dtype=np.int64)
    cells = ((values[:, None] >> shifts) & 1).astype(np.uint8)
    positions = starts[:, None] + np.arange(width)[None, :]
    if wrap:
        positions %= length
    windows = cells[:, positions]
    weights = np.left_shift(1, np.arange(width - 1, -1, -1, dtype=np.int64))
    return windows @ weights


def apply_rule(table: TruthTable, values: np.ndarray, length: int, starts: np.ndarray, wrap: bool) -> np.ndarray:
    """Images (as MSB-first integers) of ``values`` under the windowed rule."""
    indices = window_indices(values, length, starts, table.arity, wrap)
    outputs = table.array[indices].astype(np.int64)
    weights = np.left_shift(1, np.arange(len(starts) - 1, -1, -1, dtype=np.int64))
    return outputs @ weights


def nbca_eval(rule: TruthTable, config: BitConfig) -> BitConfig:
    d = rule.arity
    n = config.length
    if n < d:
        raise ContractViolation(f"A no-boundary CA of diameter {d} needs at least {d} cells, got {n}.")
    return BitConfig(tuple(
        rule.evaluate(config.bits[start:start + d])
        for start in range(n - d + 1)
    ))


def pbca_eval(pbca: PbcaMap, config: BitConfig) -> BitConfig:
    """Cell i reads the window starting at i, wrapping modulo n (k > n allowed)."""
    n = pbca.size
    if config.length != n:
        raise ContractViolation(f"Configuration of length {config.length} given to a size-{n} PBCA.")
    k = pbca.rule.arity
    return BitConfig(tuple(
        pbca.rule.evaluate([config.bits[(start + offset) % n] for offset in range(k)])
        for start in range(n)
    ))


def pbca_images(pbca: PbcaMap, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
    n = pbca.size
    stop = (1 << n) if stop is None else stop
    values = np.arange(start, stop, dtype=np.int64)
    return apply_rule(pbca.rule, values, n, np.arange(n), wrap=True)


def is_bijective_images(images: np.ndarray, cells: int) -> bool:
    occupancy = np.zeros(1 << cells, dtype=bool)
    occupancy[images] = True
    return bool(occupancy.all())


def is_invertible(pbca: PbcaMap, cap: Optional[int] = None, workers: int = 1) -> bool:
    """Decide bijectivity by marking every image in a 2**n boolean occupancy array.

    The array takes one byte per configuration, 16 MB at the default cap of
    24 cells.

    The configuration range is cut into blocks; with ``workers > 1`` the
    blocks are marked from a thread pool. Marking is idempotent, so the
    verdict does not depend on the partitioning.
    """
    n = pbca.size
    check_cap('PBCA size', n, cap)

    total = 1 << n
    occupancy = np.zeros(total, dtype=bool)
    blocks = [(start, min(start + BLOCK_SIZE, total)) for start in range(0, total, BLOCK_SIZE)]

    def mark(block):
        occupancy[pbca_images(pbca, *block)] = True

    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            list(executor.map(mark, blocks))
    else:
        for block in blocks:
            mark(block)

    verdict = bool(occupancy.all())
    logger.debug("PBCA %s on %d cells: invertible=%s", pbca.rule, n, verdict)
    return verdict
