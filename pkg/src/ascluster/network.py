"""Quantizer output: units with reference vectors plus undirected aged edges."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


def edge_key(a: int, b: int) -> tuple[int, int]:
    """Canonical unordered pair; self-loops are rejected."""
    if a == b:
        raise ValueError(f"self-loop edge on unit {a}")
    return (a, b) if a < b else (b, a)


@dataclass
class Unit:
    w: np.ndarray
    error: float = 0.0


@dataclass
class Network:
    """Units keyed by id plus undirected edges keyed by sorted id pair.

    Unit ids are creation-ordered and never reused, so they are stable
    diagnostics even after unit removal.
    """

    d: int
    units: dict[int, Unit] = field(default_factory=dict)
    edges: dict[tuple[int, int], int] = field(default_factory=dict)

    def add_unit(self, uid: int, w: np.ndarray, error: float = 0.0) -> None:
        if uid in self.units:
            raise ValueError(f"duplicate unit id {uid}")
        w = np.asarray(w, dtype=np.float64)
        if w.shape != (self.d,):
            raise ValueError(f"unit {uid}: expected dimension {self.d}, got {w.shape}")
        self.units[uid] = Unit(w, error)

    def set_edge(self, a: int, b: int, age: int = 0) -> None:
        key = edge_key(a, b)
        if a not in self.units or b not in self.units:
            raise ValueError(f"edge ({a}, {b}) references a missing unit")
        if age < 0:
            raise ValueError("edge age must be >= 0")
        self.edges[key] = age

    def neighbors(self, uid: int) -> list[int]:
        return [b if a == uid else a for (a, b) in self.edges if uid in (a, b)]

    def degree(self, uid: int) -> int:
        return sum(1 for key in self.edges if uid in key)

    @property
    def m(self) -> int:
        return len(self.units)

    def unit_ids(self) -> list[int]:
        return sorted(self.units)

    def weight_matrix(self) -> tuple[list[int], np.ndarray]:
        """Reference vectors stacked in ascending unit-id order."""
        ids = self.unit_ids()
        if not ids:
            return ids, np.empty((0, self.d))
        return ids, np.stack([self.units[i].w for i in ids])

    def validate(self) -> None:
        """Raise if any structural invariant is violated."""
        for uid, unit in self.units.items():
            if unit.w.shape != (self.d,):
                raise ValueError(f"unit {uid}: wrong dimensionality")
            if unit.error < 0:
                raise ValueError(f"unit {uid}: negative accumulated error")
        for (a, b), age in self.edges.items():
            if a == b:
                raise ValueError(f"self-loop on unit {a}")
            if a > b:
                raise ValueError(f"edge key ({a}, {b}) not canonically ordered")
            if a not in self.units or b not in self.units:
                raise ValueError(f"edge ({a}, {b}) references a missing unit")
            if age < 0:
                raise ValueError(f"edge ({a}, {b}) has negative age")

    def to_json(self) -> dict:
        return {
            "units": [
                {"id": uid, "w": self.units[uid].w.tolist(), "E": self.units[uid].error}
                for uid in self.unit_ids()
            ],
            "edges": [
                {"a": a, "b": b, "age": age}
                for (a, b), age in sorted(self.edges.items())
            ],
            "d": self.d,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Network":
        net = cls(d=int(doc["d"]))
        for u in doc["units"]:
            net.add_unit(int(u["id"]), np.array(u["w"], dtype=np.float64), float(u["E"]))
        for e in doc["edges"]:
            net.set_edge(int(e["a"]), int(e["b"]), int(e["age"]))
        return net

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json()), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "Network":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))
