"""Exhaustive search for generating functions with an invertible periodic CA."""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import timedelta
import json
import logging
import random
import time
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from automata.pbca import PbcaMap, is_invertible, window_indices
from rules.anf import DegreeClass, degree_class
from rules.errors import ContractViolation
from rules.truthtable import TruthTable


logger = logging.getLogger(__name__)

MIN_DIAMETER = 3
MAX_DIAMETER = 7
DEFAULT_CHUNK_SIZE = 4096

CSV_HEADER = 'diameter,total,invertible,constant,linear,affine,nonlinear,wall_time_ms'


@dataclass(frozen=True)
class SearchReport:
    diameter: int
    total_generators: int
    invertible_codes: tuple[int, ...]
    code_classes: tuple[DegreeClass, ...]
    class_counts: dict = field(compare=False)
    wall_time: timedelta = field(default=timedelta(0), compare=False)

    def __post_init__(self):
        if len(self.code_classes) != len(self.invertible_codes):
            raise ContractViolation("Every invertible code needs a degree class.")
        if any(a >= b for a, b in zip(self.invertible_codes, self.invertible_codes[1:])):
            raise ContractViolation("Invertible codes must be strictly increasing.")
        if sum(self.class_counts.values()) != len(self.invertible_codes):
            raise ContractViolation("Class counts do not add up to the number of invertible codes.")

    @classmethod
    def from_codes(cls, diameter: int, codes: Iterable[int], wall_time: timedelta = timedelta(0)) -> 'SearchReport':
        arity = diameter - 2
        ordered = tuple(sorted(set(int(code) for code in codes)))
        classes = tuple(degree_class(TruthTable(arity, code)) for code in ordered)
        counts = {klass.value: 0 for klass in DegreeClass}
        for klass in classes:
            counts[klass.value] += 1
        return cls(
            diameter=diameter,
            total_generators=total_generators(diameter),
            invertible_codes=ordered,
            code_classes=classes,
            class_counts=counts,
            wall_time=wall_time,
        )

    @classmethod
    def from_dict(cls, data: dict) -> 'SearchReport':
        report = cls.from_codes(
            int(data['diameter']),
            (int(code) for code in data['invertible']),
            timedelta(milliseconds=int(data.get('wall_time_ms', 0))),
        )
        if report.total_generators != int(data['total']):
            raise ContractViolation(f"Report total {data['total']} does not match diameter {data['diameter']}.")
        return report

    @property
    def nonlinear_count(self) -> int:
        return self.class_counts[DegreeClass.NONLINEAR.value]

    @property
    def wall_time_ms(self) -> int:
        return int(self.wall_time / timedelta(milliseconds=1))

    def to_dict(self) -> dict:
        return {
            'diameter': self.diameter,
            'total': self.total_generators,
            'invertible': [str(code) for code in self.invertible_codes],
            'classes': {klass.value: self.class_counts[klass.value] for klass in DegreeClass},
            'wall_time_ms': self.wall_time_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + '\n'

    def csv_row(self) -> str:
        counts = [str(self.class_counts[klass.value]) for klass in DegreeClass]
        return ','.join([
            str(self.diameter),
            str(self.total_generators),
            str(len(self.invertible_codes)),
            *counts,
            str(self.wall_time_ms),
        ])

    def summary(self) -> str:
        return f"d={self.diameter} invertible={len(self.invertible_codes)} nonlinear={self.nonlinear_count}"


def total_generators(diameter: int) -> int:
    return 1 << (1 << (diameter - 2))


def check_diameter(diameter: int) -> None:
    if not MIN_DIAMETER <= diameter <= MAX_DIAMETER:
        raise ContractViolation(
            f"Search diameter must be between {MIN_DIAMETER} and {MAX_DIAMETER}, got {diameter}."
        )


def scan_chunk(diameter: int, start: int, stop: int) -> list[int]:
    """Codes in [start, stop) whose generator gives an invertible size-(d-1) PBCA.

    Windows depend only on the configuration, so one window table serves every
    generator of the chunk; each generator is then a single gather.
    """
    arity = diameter - 2
    cells = diameter - 1
    configs = np.arange(1 << cells, dtype=np.int64)
    windows = window_indices(configs, cells, np.arange(cells), arity, wrap=True)
    weights = np.left_shift(1, np.arange(cells - 1, -1, -1, dtype=np.int64))

    codes = np.arange(start, stop, dtype=np.int64)
    tables = ((codes[:, None] >> np.arange(1 << arity, dtype=np.int64)) & 1).astype(np.uint8)
    outputs = tables[:, windows].astype(np.int64)
    images = outputs @ weights
    images.sort(axis=1)
    bijective = np.all(images == configs[None, :], axis=1)
    return [int(code) for code in codes[bijective]]


def chunk_bounds(start: int, stop: int, chunk_size: int) -> list[tuple[int, int]]:
    return [(low, min(low + chunk_size, stop)) for low in range(start, stop, chunk_size)]


def _scan_ranges(diameter: int, bounds: Sequence[tuple[int, int]], parallelism: int) -> list[int]:
    """Merge chunk results by chunk index, whatever order workers finish in."""
    if parallelism <= 1 or len(bounds) <= 1:
        results = [scan_chunk(diameter, low, high) for low, high in bounds]
    else:
        with ProcessPoolExecutor(max_workers=parallelism) as executor:
            results = list(executor.map(
                scan_chunk,
                [diameter] * len(bounds),
                [low for low, _ in bounds],
                [high for _, high in bounds],
            ))
    codes = []
    for index, found in enumerate(results):
        logger.debug("Chunk %d %s: %d invertible", index, bounds[index], len(found))
        codes.extend(found)
    return codes


def enumerate_invertible(
    diameter: int,
    parallelism: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    start_code: int = 0,
    found: Sequence[int] = (),
    segment_size: Optional[int] = None,
    on_segment: Optional[Callable[[int, list[int]], None]] = None,
) -> SearchReport:
    """Scan every generating function of ``diameter - 2`` variables.

    ``start_code``/``found`` resume an interrupted scan. When ``segment_size``
    is given the range is processed in segments of that many candidates and
    ``on_segment(next_code, codes_so_far)`` runs after each one.
    """
    check_diameter(diameter)
    if parallelism < 1:
        raise ContractViolation(f"Parallelism must be at least 1, got {parallelism}.")

    total = total_generators(diameter)
    codes = list(found)
    began = time.monotonic()
    segment = segment_size or total

    for low in range(start_code, total, segment):
        high = min(low + segment, total)
        codes.extend(_scan_ranges(diameter, chunk_bounds(low, high, chunk_size), parallelism))
        if on_segment is not None:
            on_segment(high, list(codes))
        if segment_size:
            logger.info("d=%d: scanned up to %d of %d (%d invertible)", diameter, high, total, len(codes))

    report = SearchReport.from_codes(diameter, codes, timedelta(seconds=time.monotonic() - began))
    logger.info("%s (%d ms)", report.summary(), report.wall_time_ms)
    return report


def filter_by_class(report: SearchReport, klass: DegreeClass | str) -> list[int]:
    try:
        klass = DegreeClass(klass)
    except ValueError as exc:
        raise ContractViolation(f"Unknown degree class {klass!r}.") from exc
    return [
        code
        for code, code_class in zip(report.invertible_codes, report.code_classes)
        if code_class == klass
    ]


@dataclass(frozen=True)
class SpotCheckResult:
    passed: bool
    checked: int
    counterexample: Optional[int] = None
    reason: str = ''


def _code_is_invertible(diameter: int, code: int) -> bool:
    return is_invertible(PbcaMap(TruthTable(diameter - 2, code), diameter - 1))


def _sample_unlisted(rng: random.Random, total: int, listed: set[int], samples: int) -> list[int]:
    unlisted_count = total - len(listed)
    if samples >= unlisted_count:
        return [code for code in range(total) if code not in listed]
    chosen: set[int] = set()
    while len(chosen) < samples:
        code = rng.randrange(total)
        if code not in listed:
            chosen.add(code)
    return sorted(chosen)


def spot_check(report: SearchReport, samples: int, seed: int = 0) -> SpotCheckResult:
    """Re-verify random listed codes (must be invertible) and unlisted ones (must not)."""
    rng = random.Random(seed)
    listed = set(report.invertible_codes)
    positives = rng.sample(report.invertible_codes, min(samples, len(report.invertible_codes)))
    negatives = _sample_unlisted(rng, report.total_generators, listed, samples)

    checked = 0
    for code in positives:
        checked += 1
        if not _code_is_invertible(report.diameter, code):
            return SpotCheckResult(False, checked, code, f"listed code {code} is not invertible")
    for code in negatives:
        checked += 1
        if _code_is_invertible(report.diameter, code):
            return SpotCheckResult(False, checked, code, f"unlisted code {code} is invertible")
    return SpotCheckResult(True, checked)


def complement_closure_violations(report: SearchReport) -> list[int]:
    listed = set(report.invertible_codes)
    mask = report.total_generators - 1
    return [code for code in report.invertible_codes if code ^ mask not in listed]


def reversal_closure_violations(report: SearchReport) -> list[int]:
    listed = set(report.invertible_codes)
    arity = report.diameter - 2
    return [
        code for code in report.invertible_codes
        if TruthTable(arity, code).reversed_variables().bits not in listed
    ]
