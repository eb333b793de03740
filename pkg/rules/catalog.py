"""Named generating functions and the --generator value syntax."""
from dataclasses import dataclass
import logging
import re
from pathlib import Path
from typing import Optional

import yaml
from django.conf import settings

from .anf import parse_anf
from .bipermutive import BipermutiveRule
from .errors import CatalogError, ContractViolation
from .truthtable import TruthTable


logger = logging.getLogger(__name__)

_HEX_PATTERN = re.compile(r'^(?:0x)?[0-9a-f]+$')


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    diameter: int
    anf: str
    description: str = ''

    def rule(self) -> BipermutiveRule:
        return BipermutiveRule(self.diameter, parse_anf(self.anf, self.diameter - 2))


def load_catalog(path: Optional[Path] = None) -> dict[str, CatalogEntry]:
    path = Path(path or settings.RULE_CATALOG)
    if not path.exists():
        logger.debug("Rule catalog not found at %s", path)
        return {}

    with open(path, 'r') as handle:
        data = yaml.safe_load(handle) or {}

    entries = {}
    for item in data.get('generators', []):
        try:
            entry = CatalogEntry(
                name=str(item['name']),
                diameter=int(item['diameter']),
                anf=str(item['anf']),
                description=item.get('description', ''),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CatalogError(f"Malformed catalog entry in {path}: {item!r}") from exc
        entries[entry.name] = entry
    return entries


def resolve_generator(spec: str, diameter: int, catalog: Optional[dict[str, CatalogEntry]] = None) -> BipermutiveRule:
    """Turn a catalog name, hex truth table or ANF expression into a rule.

    Catalog names win over hex, hex wins over ANF. A catalog entry with a
    different diameter is rejected rather than silently re-embedded.
    """
    text = spec.strip()
    arity = diameter - 2
    if arity < 0:
        raise CatalogError(f"Diameter must be at least 2, got {diameter}.")

    entries = load_catalog() if catalog is None else catalog
    entry = entries.get(text)
    try:
        if entry:
            if entry.diameter != diameter:
                raise CatalogError(
                    f"Catalog generator {entry.name!r} has diameter {entry.diameter}, not {diameter}."
                )
            return entry.rule()
        if _HEX_PATTERN.match(text.lower()):
            return BipermutiveRule(diameter, TruthTable.from_hex(arity, text))
        return BipermutiveRule(diameter, parse_anf(text, arity))
    except CatalogError:
        raise
    except ContractViolation as exc:
        raise CatalogError(f"Bad generator {spec!r} for diameter {diameter}: {exc}") from exc
