"""Instance files: the rotation-JSON format.

This is the authoritative on-disk representation since embeddings matter;
graph6 is interchange only.  Schema (``format: 1``):

    {
      "format": 1,
      "n": 6,
      "edges": [[0, 1], ...],
      "rotations": {"0": [1, 4, 2], ...},   # clockwise neighbor order
      "outer_face": [0, 1, 2],              # clockwise outer walk
      "outer_cycle": [0, 1, 2],             # optional, circuit instances
      "query": {"u": 0, "v": 2, "e": [0, 1]},  # optional
      "metadata": {...}                     # optional, free-form
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..planar_core import Edge, RotationEmbedding, norm_edge

FORMAT = 1


class FileFormatError(ValueError):
    """Raised when a payload does not match the documented schema."""


def _require(obj: dict, key: str, typ) -> Any:
    if key not in obj:
        raise FileFormatError(f"missing field {key!r}")
    value = obj[key]
    if not isinstance(value, typ):
        raise FileFormatError(f"field {key!r} has wrong type")
    return value


def check_format(obj: Any) -> dict:
    if not isinstance(obj, dict):
        raise FileFormatError("payload must be a JSON object")
    if obj.get("format") != FORMAT:
        raise FileFormatError(f"unsupported format {obj.get('format')!r}")
    return obj


def embedding_to_json(emb: RotationEmbedding) -> dict:
    return {
        "format": FORMAT,
        "n": emb.n,
        "edges": [list(e) for e in sorted(emb.edges)],
        "rotations": {str(v): list(order) for v, order in sorted(emb.rotations.items())},
        "outer_face": list(emb.outer_face),
    }


def embedding_from_json(obj: dict) -> RotationEmbedding:
    check_format(obj)
    n = _require(obj, "n", int)
    raw_rot = _require(obj, "rotations", dict)
    rotations = {}
    for key, order in raw_rot.items():
        try:
            v = int(key)
        except ValueError as exc:
            raise FileFormatError(f"bad vertex key {key!r}") from exc
        if not isinstance(order, list) or not all(isinstance(w, int) for w in order):
            raise FileFormatError(f"rotation of vertex {key} must be an int list")
        rotations[v] = tuple(order)
    if len(rotations) != n:
        raise FileFormatError("n does not match the number of rotations")
    outer = _require(obj, "outer_face", list)
    if not all(isinstance(w, int) for w in outer):
        raise FileFormatError("outer_face must be an int list")
    declared = {norm_edge(u, v) for u, v in (_require(obj, "edges", list) or [])}
    emb = RotationEmbedding.build(rotations, tuple(outer))
    if declared != emb.edges:
        raise FileFormatError("edges do not match the rotations")
    return emb


@dataclass(frozen=True)
class Query:
    """Endpoints and the required cycle edge of one solver invocation."""

    u: int
    v: int
    e: Edge

    def to_json(self) -> dict:
        return {"u": self.u, "v": self.v, "e": list(self.e)}

    @staticmethod
    def from_json(obj: dict) -> "Query":
        u = _require(obj, "u", int)
        v = _require(obj, "v", int)
        e = _require(obj, "e", list)
        if len(e) != 2 or not all(isinstance(w, int) for w in e):
            raise FileFormatError("query edge must be a pair of ints")
        return Query(u, v, norm_edge(*e))


@dataclass(frozen=True)
class Instance:
    """One corpus item: an embedding plus optional query and metadata."""

    emb: RotationEmbedding
    query: Query | None = None
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        obj = embedding_to_json(self.emb)
        obj["outer_cycle"] = list(self.emb.outer_face)
        if self.query is not None:
            obj["query"] = self.query.to_json()
        if self.metadata:
            obj["metadata"] = self.metadata
        return obj

    @staticmethod
    def from_json(obj: dict) -> "Instance":
        emb = embedding_from_json(check_format(obj))
        query = None
        if "query" in obj:
            query = Query.from_json(_require(obj, "query", dict))
            if not emb.has_edge(*query.e):
                raise FileFormatError("query edge is not an edge of the graph")
        if "outer_cycle" in obj:
            walk = _require(obj, "outer_cycle", list)
            if set(walk) != set(emb.outer_face) or len(walk) != len(emb.outer_face):
                raise FileFormatError("outer_cycle does not match outer_face")
        metadata = obj.get("metadata", {})
        if not isinstance(metadata, dict):
            raise FileFormatError("metadata must be an object")
        return Instance(emb, query, dict(metadata))


def load_instance(path: str | Path) -> Instance:
    try:
        payload = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"not valid JSON: {exc}") from exc
    return Instance.from_json(payload)


def save_instance(path: str | Path, instance: Instance) -> None:
    Path(path).write_text(json.dumps(instance.to_json(), indent=2) + "\n")
