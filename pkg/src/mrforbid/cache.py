"""Append-only JSON-lines cache of minimum ranks keyed by (canonical graph6, p)."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from . import ENGINE_VERSION
from .graphs import Graph, canonical_form


@dataclass(frozen=True)
class CacheEntry:
    graph6: str
    p: int
    mr: int
    engine: str
    timestamp: float
    mrset_digest: str | None = None

    @property
    def key(self) -> tuple[str, int]:
        return (self.graph6, self.p)


class ResultCache:
    """Entries written by another engine version are ignored on load."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.entries: dict[tuple[str, int], CacheEntry] = {}
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                if not line.strip():
                    continue
                try:
                    e = CacheEntry(**json.loads(line))
                except (TypeError, ValueError):
                    continue
                if e.engine == ENGINE_VERSION:
                    self.entries[e.key] = e

    @staticmethod
    def key_for(g: Graph, p: int) -> tuple[str, int]:
        return (canonical_form(g).graph6(), p)

    def get(self, g: Graph, p: int) -> CacheEntry | None:
        return self.entries.get(self.key_for(g, p))

    def put(self, g: Graph, p: int, mr: int, mrset_digest: str | None = None) -> CacheEntry:
        g6, _ = self.key_for(g, p)
        old = self.entries.get((g6, p))
        if old is not None:
            if old.mr != mr:
                raise ValueError(f"cache conflict for {g6} over GF({p}): stored {old.mr}, computed {mr}")
            return old
        e = CacheEntry(g6, p, mr, ENGINE_VERSION, time.time(), mrset_digest)
        self.entries[e.key] = e
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(json.dumps(asdict(e), sort_keys=True) + "\n")
        return e
