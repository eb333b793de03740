"""Persistence helpers for search runs and resumable checkpoints."""
import logging
from typing import Optional

from django.conf import settings
from django.db import transaction

from .engine import SearchReport, enumerate_invertible
from .models import SearchCheckpoint, SearchRun


logger = logging.getLogger(__name__)


def record_run(report: SearchReport, parallelism: int = 1) -> SearchRun:
    return SearchRun.objects.create(
        diameter=report.diameter,
        total_generators=report.total_generators,
        invertible_codes=list(report.invertible_codes),
        class_counts=dict(report.class_counts),
        parallelism=parallelism,
        wall_time_ms=report.wall_time_ms,
    )


def load_checkpoint(diameter: int) -> Optional[SearchCheckpoint]:
    return SearchCheckpoint.objects.filter(diameter=diameter).first()


def save_checkpoint(diameter: int, next_code: int, codes: list[int]) -> SearchCheckpoint:
    with transaction.atomic():
        checkpoint, _ = SearchCheckpoint.objects.update_or_create(
            diameter=diameter,
            defaults={'next_code': next_code, 'invertible_codes': codes},
        )
    logger.debug("Checkpoint d=%d saved at %d", diameter, next_code)
    return checkpoint


def clear_checkpoint(diameter: int) -> None:
    SearchCheckpoint.objects.filter(diameter=diameter).delete()


def run_search(diameter: int, parallelism: int = 1, resume: bool = False) -> SearchReport:
    """Run enumerate_invertible, checkpointing every segment at large diameters.

    With ``resume`` the scan continues from the stored checkpoint; without it
    any stale checkpoint is discarded and the scan starts at code 0.
    """
    min_diameter = getattr(settings, 'SEARCH_CHECKPOINT_MIN_DIAMETER', 7)
    chunk_size = getattr(settings, 'SEARCH_CHUNK_SIZE', 4096)

    if diameter < min_diameter:
        return enumerate_invertible(diameter, parallelism=parallelism, chunk_size=chunk_size)

    start_code, found = 0, []
    if resume:
        checkpoint = load_checkpoint(diameter)
        if checkpoint:
            start_code = checkpoint.next_code
            found = list(checkpoint.invertible_codes)
            logger.info("Resuming d=%d search at code %d with %d codes found", diameter, start_code, len(found))
    else:
        clear_checkpoint(diameter)

    report = enumerate_invertible(
        diameter,
        parallelism=parallelism,
        chunk_size=chunk_size,
        start_code=start_code,
        found=found,
        segment_size=getattr(settings, 'SEARCH_CHECKPOINT_INTERVAL', 1 << 24),
        on_segment=lambda next_code, codes: save_checkpoint(diameter, next_code, codes),
    )
    clear_checkpoint(diameter)
    return report
