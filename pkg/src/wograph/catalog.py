"""The exceptional well-covered graphs used by the structural deciders.

Seven reference graphs ship as a packaged JSON edge list. Each entry
carries asserted metadata (vertex count, edge count, girth, well-
coveredness) that is recomputed and cross-checked the first time the
catalog loads, so a corrupted data file fails fast instead of skewing
decider verdicts.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .covers import is_well_covered
from .errors import ConsistencyError, PreconditionError
from .graph import UnderlyingGraph

SPECIAL_NAMES = ("K1", "C7", "T10", "P10", "P13", "P14", "Q13")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    graph: UnderlyingGraph
    girth: float
    well_covered: bool


def _validate(entry: CatalogEntry, item: dict) -> None:
    g = entry.graph
    checks = {
        "vertex_count": (len(g.vertices), item["vertex_count"]),
        "edge_count": (len(g.edges), item["edge_count"]),
        "girth": (g.girth(), entry.girth),
        "well_covered": (is_well_covered(g), entry.well_covered),
    }
    for field, (computed, stored) in checks.items():
        if computed != stored:
            raise ConsistencyError(
                f"catalog entry {entry.name!r}: stored {field}={stored!r} "
                f"but the edge list gives {computed!r}"
            )


@lru_cache(maxsize=1)
def catalog() -> tuple[CatalogEntry, ...]:
    raw = json.loads(
        resources.files("wograph").joinpath("data/catalog.json").read_text("utf-8")
    )
    entries = []
    for item in raw["graphs"]:
        graph = UnderlyingGraph(
            item["vertices"], [tuple(e) for e in item["edges"]]
        )
        girth = math.inf if item["girth"] is None else float(item["girth"])
        entry = CatalogEntry(
            name=item["name"],
            graph=graph,
            girth=girth,
            well_covered=bool(item["well_covered"]),
        )
        _validate(entry, item)
        entries.append(entry)
    if tuple(e.name for e in entries) != SPECIAL_NAMES:
        raise ConsistencyError(
            f"catalog names {[e.name for e in entries]} do not match "
            f"{list(SPECIAL_NAMES)}"
        )
    return tuple(entries)


def catalog_entry(name: str) -> CatalogEntry:
    for entry in catalog():
        if entry.name == name:
            return entry
    raise PreconditionError(
        f"unknown catalog graph {name!r}; choices: {', '.join(SPECIAL_NAMES)}"
    )


def catalog_graph(name: str) -> UnderlyingGraph:
    return catalog_entry(name).graph
