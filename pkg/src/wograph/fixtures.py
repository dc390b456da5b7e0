"""Worked example graphs shipped as documents.

Four hand-checked instances (two mixed 9-vertex graphs, the unmixed
exceptional 10-vertex graph, and a 36-vertex mixed graph used only for
semi-forest validation) load from packaged JSON. Each file carries its
expected verdict; the loader cross-checks the stored text against the
canonical serializer so the shipped bytes stay in canonical form.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .errors import ConsistencyError, PreconditionError
from .graph import WeightedOrientedGraph
from .graphio import GraphDocument, parse_document, serialize

FIXTURE_NAMES = ("d1", "d2", "d3", "d4")


def _data_text(filename: str) -> str:
    return (
        resources.files("wograph").joinpath("data").joinpath(filename).read_text()
    )


@lru_cache(maxsize=None)
def fixture_text(name: str) -> str:
    """Raw document text, byte-identical to the shipped file."""
    if name not in FIXTURE_NAMES:
        raise PreconditionError(
            f"unknown fixture {name!r}; choices: {', '.join(FIXTURE_NAMES)}"
        )
    text = _data_text(f"{name}.json")
    if serialize(parse_document(text)) != text:
        raise ConsistencyError(f"fixture {name!r} is not in canonical form")
    return text


def fixture_document(name: str) -> GraphDocument:
    return parse_document(fixture_text(name))


def fixture_graph(name: str) -> WeightedOrientedGraph:
    doc = fixture_document(name)
    d = doc.to_graph()
    if d != doc.to_graph(normalize=False):
        raise ConsistencyError(f"fixture {name!r} is not normalized")
    return d
