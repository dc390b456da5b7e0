"""Seeded random instance generator for fuzzing and cross-validation.

`gen_random` turns a FuzzConfig into a deterministic stream of weighted
oriented graphs: edges by independent coin flips, a uniform direction per
edge, weights > 1 sprinkled at the configured rate. Structural constraints
(forbidden cycle lengths, family membership) are enforced by rejection;
an exhausted retry budget raises GenerationError rather than looping.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .covers import is_konig
from .errors import GenerationError, PreconditionError
from .families import (
    PERFECT_MAX_VERTICES,
    is_chordal,
    is_perfect,
    is_simplicial_graph,
    scq_decompose,
)
from .graph import UnderlyingGraph, WeightedOrientedGraph

DEFAULT_ATTEMPTS_PER_INSTANCE = 3000


def _no_isolated(g: UnderlyingGraph) -> bool:
    return all(g.degree(v) > 0 for v in g.vertices)


FAMILY_PREDICATES: dict[str, Callable[[UnderlyingGraph], bool]] = {
    "perfect": is_perfect,
    "konig": lambda g: _no_isolated(g) and is_konig(g),
    "scq": lambda g: scq_decompose(g) is not None,
    "simplicial-or-chordal": lambda g: is_simplicial_graph(g) or is_chordal(g),
    "no-3-5-cycles": lambda g: not g.has_cycle_of_length(3)
    and not g.has_cycle_of_length(5),
    "no-4-5-cycles": lambda g: not g.has_cycle_of_length(4)
    and not g.has_cycle_of_length(5),
    "girth-ge-6": lambda g: _no_isolated(g) and g.girth() >= 6,
    "girth-ge-5": lambda g: g.girth() >= 5,
}


@dataclass(frozen=True)
class FuzzConfig:
    """Knobs for one generation run; the seed fixes the whole stream."""

    min_vertices: int = 1
    max_vertices: int = 9
    arc_probability: float = 0.3
    weight_probability: float = 0.3
    max_weight: int = 2
    forbidden_cycle_lengths: frozenset = frozenset()
    family: Optional[str] = None
    seed: int = 0
    count: int = 100
    attempts_per_instance: int = DEFAULT_ATTEMPTS_PER_INSTANCE

    def __post_init__(self):
        if not 0 <= self.min_vertices <= self.max_vertices:
            raise PreconditionError(
                f"need 0 <= min_vertices <= max_vertices, got "
                f"{self.min_vertices}..{self.max_vertices}"
            )
        for name in ("arc_probability", "weight_probability"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise PreconditionError(f"{name} must lie in [0, 1], got {p}")
        if self.max_weight < 2:
            raise PreconditionError(f"max_weight must be >= 2, got {self.max_weight}")
        if self.count < 0:
            raise PreconditionError(f"count must be >= 0, got {self.count}")
        if self.attempts_per_instance < 1:
            raise PreconditionError("attempts_per_instance must be >= 1")
        lengths = frozenset(self.forbidden_cycle_lengths)
        if any(not isinstance(k, int) or k < 3 for k in lengths):
            raise PreconditionError(
                f"forbidden cycle lengths must be integers >= 3, got {sorted(lengths)}"
            )
        object.__setattr__(self, "forbidden_cycle_lengths", lengths)
        if self.family is not None and self.family not in FAMILY_PREDICATES:
            raise PreconditionError(
                f"unknown family {self.family!r}; choices: "
                f"{', '.join(sorted(FAMILY_PREDICATES))}"
            )
        if self.family == "perfect" and self.max_vertices > PERFECT_MAX_VERTICES:
            raise PreconditionError(
                f"family 'perfect' is only decided up to "
                f"{PERFECT_MAX_VERTICES} vertices; lower max_vertices"
            )


def _vertex_names(n: int) -> list[str]:
    width = max(2, len(str(n)))
    return [f"v{i:0{width}d}" for i in range(1, n + 1)]


def _draw(rng: random.Random, cfg: FuzzConfig) -> WeightedOrientedGraph:
    n = rng.randint(cfg.min_vertices, cfg.max_vertices)
    names = _vertex_names(n)
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < cfg.arc_probability:
                pair = (names[i], names[j])
                if rng.random() < 0.5:
                    pair = (names[j], names[i])
                arcs.append(pair)
    weights = {}
    for v in names:
        if rng.random() < cfg.weight_probability:
            weights[v] = rng.randint(2, cfg.max_weight)
    return WeightedOrientedGraph(names, arcs, weights)


def _admissible(d: WeightedOrientedGraph, cfg: FuzzConfig) -> bool:
    g = d.underlying
    for k in sorted(cfg.forbidden_cycle_lengths):
        if g.has_cycle_of_length(k):
            return False
    if cfg.family is not None and not FAMILY_PREDICATES[cfg.family](g):
        return False
    return True


def gen_random(cfg: FuzzConfig) -> Iterator[WeightedOrientedGraph]:
    """Yield cfg.count graphs; identical configs yield identical streams."""
    rng = random.Random(cfg.seed)
    for index in range(cfg.count):
        for _ in range(cfg.attempts_per_instance):
            d = _draw(rng, cfg)
            if _admissible(d, cfg):
                yield d
                break
        else:
            raise GenerationError(
                f"gave up on instance {index} after "
                f"{cfg.attempts_per_instance} attempts; loosen the "
                "constraints (smaller arc_probability, fewer forbidden "
                "cycle lengths, or no family filter)"
            )
