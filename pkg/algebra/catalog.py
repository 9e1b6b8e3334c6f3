"""Built-in catalog: named semigroups described by ``catalog/catalog.json``."""
import json
import logging
import os
from functools import lru_cache
from typing import Dict, List, Optional

from algebra import rees, semigroup
from algebra.errors import ParseError, UnknownCatalogEntry
from algebra.formats import load_input, semigroup_from_input, table_spec_of
from models.schema import CatalogEntry, CatalogIndex, InputSpec
from toolkit_config import settings

logger = logging.getLogger(__name__)

CATALOG_PREFIX = "catalog:"

# family name -> builder; string arguments name other catalog entries
FAMILIES = {
    "trivial_monoid": semigroup.trivial_monoid,
    "cyclic_group": semigroup.cyclic_group,
    "klein_four": semigroup.klein_four,
    "left_zero": semigroup.left_zero,
    "right_zero": semigroup.right_zero,
    "full_transformation_monoid": semigroup.full_transformation_monoid,
    "rectangular_band": rees.make_rectangular_band,
    "left_group": rees.make_left_group,
    "right_group": rees.make_right_group,
}

TRANSFORMS = {
    "adjoin_zero": semigroup.adjoin_zero,
    "adjoin_identity": semigroup.adjoin_identity,
    "opposite": semigroup.opposite,
}


@lru_cache(maxsize=None)
def catalog_index(directory: Optional[str] = None) -> CatalogIndex:
    directory = directory or settings.catalog_dir
    path = os.path.join(directory, "catalog.json")
    try:
        with open(path, encoding="utf-8") as handle:
            return CatalogIndex.model_validate(json.load(handle))
    except OSError as e:
        raise ParseError(0, f"cannot read catalog index {path}: {e.strerror}")


def _entries(directory: Optional[str]) -> Dict[str, CatalogEntry]:
    return {entry.name: entry for entry in catalog_index(directory).entries}


def catalog_names(directory: Optional[str] = None) -> List[str]:
    return sorted(_entries(directory))


def catalog_spec(name: str, directory: Optional[str] = None) -> InputSpec:
    """The input shape of an entry; built entries come back as tables."""
    entries = _entries(directory)
    if name not in entries:
        raise UnknownCatalogEntry(f"no catalog entry named {name}", name=name)
    entry = entries[name]
    if entry.file is not None:
        return load_input(os.path.join(directory or settings.catalog_dir, entry.file))
    return table_spec_of(catalog_semigroup(name, directory))


def catalog_semigroup(name: str, directory: Optional[str] = None) -> semigroup.FiniteSemigroup:
    entries = _entries(directory)
    if name not in entries:
        raise UnknownCatalogEntry(f"no catalog entry named {name}", name=name)
    entry = entries[name]
    if entry.file is not None:
        return semigroup_from_input(catalog_spec(name, directory))
    if entry.family is not None:
        args = [catalog_semigroup(a, directory) if isinstance(a, str) else a for a in entry.args]
        logger.debug("building catalog entry %s from %s", name, entry.family)
        return FAMILIES[entry.family](*args)
    return TRANSFORMS[entry.transform](catalog_semigroup(entry.base, directory))


def is_catalog_ref(ref: str) -> bool:
    return ref.startswith(CATALOG_PREFIX)


def resolve_ref(ref: str, directory: Optional[str] = None) -> InputSpec:
    """``catalog:<name>`` or a file path."""
    if is_catalog_ref(ref):
        return catalog_spec(ref[len(CATALOG_PREFIX):], directory)
    return load_input(ref)


def describe(name: str, directory: Optional[str] = None) -> Dict[str, object]:
    S = catalog_semigroup(name, directory)
    spec = catalog_spec(name, directory)
    return {"name": name, "kind": spec.kind, "order": S.order, "monoid": S.is_monoid}
