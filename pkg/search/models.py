from datetime import timedelta

from django.db import models

from .engine import SearchReport


class SearchRun(models.Model):
    """A saved result of an exhaustive generating-function search"""
    diameter = models.PositiveSmallIntegerField()
    total_generators = models.BigIntegerField()
    invertible_codes = models.JSONField(default=list, help_text="Invertible generator codes, ascending")
    class_counts = models.JSONField(default=dict, blank=True)
    parallelism = models.PositiveIntegerField(default=1)
    wall_time_ms = models.BigIntegerField(default=0)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at']

    def __str__(self):
        return f"d={self.diameter}: {len(self.invertible_codes)} invertible ({self.created_at:%Y-%m-%d %H:%M})"

    def to_report(self) -> SearchReport:
        return SearchReport.from_codes(
            self.diameter,
            self.invertible_codes,
            timedelta(milliseconds=self.wall_time_ms),
        )


class SearchCheckpoint(models.Model):
    """Resume point of a long search, one per diameter"""
    diameter = models.PositiveSmallIntegerField(unique=True)
    next_code = models.BigIntegerField(default=0)
    invertible_codes = models.JSONField(default=list, blank=True)
    updated_at = models.DateTimeField(auto_now=True)

    def __str__(self):
        return f"Checkpoint d={self.diameter} at {self.next_code}"
