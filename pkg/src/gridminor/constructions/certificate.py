"""Certificates emitted by the constructions, and the embedding checker."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Sequence

from ..graph import Graph, GraphError, make_grid
from ..models import MalformedModelError, MinorModel, ValidationReport, subgraph_model, validate_model


@dataclass(frozen=True, eq=False)
class GridModelCertificate:
    """A model of the ``k``-grid together with where it came from."""

    k: int
    model: MinorModel
    provenance: str
    parameters: dict[str, Any] = field(default_factory=dict)

    def check(self) -> ValidationReport:
        if self.model.pattern != make_grid(self.k):
            return ValidationReport(False, "pattern", {"k": self.k}, f"pattern is not the {self.k}-grid")
        return validate_model(self.model)

    def to_dict(self) -> dict:
        out = {"kind": "grid-model", "lemma": self.provenance, "parameters": dict(self.parameters), "k": self.k}
        out.update(self.model.to_dict())
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


@dataclass(frozen=True, eq=False)
class SubgraphEmbedding:
    """Injective map of pattern vertices to host vertices that sends edges to edges."""

    pattern: Graph
    host: Graph
    map: tuple[int, ...]
    provenance: str = ""
    parameters: dict[str, Any] = field(default_factory=dict)

    @property
    def k(self) -> int | None:
        return self.parameters.get("k")

    def check(self) -> ValidationReport:
        return check_embedding(self.pattern, self.host, self.map)

    def as_model(self) -> MinorModel:
        return subgraph_model(self.pattern, self.host, self.map)

    def to_dict(self) -> dict:
        return {
            "kind": "subgraph-embedding",
            "lemma": self.provenance,
            "parameters": dict(self.parameters),
            "k": self.k,
            "pattern": self.pattern.to_dict(),
            "host": self.host.to_dict(compact=True),
            "map": list(self.map),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def check_embedding(pattern: Graph, host: Graph, phi: Sequence[int]) -> ValidationReport:
    if len(phi) != pattern.n:
        raise MalformedModelError(f"map has {len(phi)} entries for {pattern.n} pattern vertices")
    for x, v in enumerate(phi):
        if not (isinstance(v, int) and 0 <= v < host.n):
            raise MalformedModelError(f"pattern vertex {x} maps to {v!r}, outside the host")
    seen: dict[int, int] = {}
    for x, v in enumerate(phi):
        if v in seen:
            return ValidationReport(False, "injective", {"vertex": v, "pattern_vertices": [seen[v], x]},
                                    f"pattern vertices {seen[v]} and {x} both map to {v}")
        seen[v] = x
    for x, y in pattern.edges:
        if not host.has_edge(phi[x], phi[y]):
            return ValidationReport(False, "edge", {"pattern_edge": [x, y]},
                                    f"edge {x}-{y} maps to the non-edge {phi[x]}-{phi[y]}")
    return ValidationReport(True, message="ok")


def certificate_from_dict(d: dict) -> GridModelCertificate | SubgraphEmbedding:
    """Parse either certificate form; raises :class:`MalformedModelError` on bad input."""
    if not isinstance(d, dict):
        raise MalformedModelError("certificate must be a JSON object")
    kind = d.get("kind", "grid-model")
    try:
        if kind == "subgraph-embedding":
            params = dict(d.get("parameters", {}))
            if d.get("k") is not None:
                params["k"] = int(d["k"])
            return SubgraphEmbedding(
                Graph.from_dict(d["pattern"]), Graph.from_dict(d["host"]),
                tuple(int(v) for v in d["map"]), d.get("lemma", ""), params,
            )
        if kind == "grid-model":
            return GridModelCertificate(int(d["k"]), MinorModel.from_dict(d), d.get("lemma", ""),
                                        dict(d.get("parameters", {})))
    except (KeyError, TypeError, ValueError, GraphError) as exc:
        if isinstance(exc, MalformedModelError):
            raise
        raise MalformedModelError(f"malformed certificate: {exc}") from exc
    raise MalformedModelError(f"unknown certificate kind {kind!r}")
