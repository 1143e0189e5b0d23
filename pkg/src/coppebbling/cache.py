"""Append-only JSON-lines result cache keyed by the graph's edge-list hash."""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Callable

from . import __version__

DEFAULT_PATH = Path(os.environ.get("COPPEBBLING_CACHE", Path.home() / ".cache" / "coppebbling" / "results.jsonl"))


@dataclass
class CacheRecord:
    graph_key: str
    invariant: str
    params: dict
    value: Any
    witness: Any = None
    version: str = __version__
    timestamp: float = 0.0


class ResultCache:
    def __init__(self, path: str | Path = DEFAULT_PATH):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._index: dict[tuple, CacheRecord] = {}
        self._load()

    @staticmethod
    def _key(graph_key: str, invariant: str, params: dict) -> tuple:
        return graph_key, invariant, json.dumps(params, sort_keys=True)

    def _load(self):
        if not self.path.exists():
            return
        for line in self.path.read_text().splitlines():
            if not line.strip():
                continue
            try:
                rec = CacheRecord(**json.loads(line))
            except (ValueError, TypeError):
                continue  # tolerate a torn final line
            self._index[self._key(rec.graph_key, rec.invariant, rec.params)] = rec

    def get(self, graph_key: str, invariant: str, params: dict | None = None) -> CacheRecord | None:
        return self._index.get(self._key(graph_key, invariant, params or {}))

    def put(self, graph_key: str, invariant: str, value, witness=None, params: dict | None = None) -> CacheRecord:
        rec = CacheRecord(graph_key, invariant, params or {}, value, witness, __version__, time.time())
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as fh:
                fh.write(json.dumps(asdict(rec), sort_keys=True) + "\n")
            self._index[self._key(graph_key, invariant, rec.params)] = rec
        return rec

    def __len__(self):
        return len(self._index)

    def records(self) -> list[CacheRecord]:
        return list(self._index.values())

    def verify(self, recompute: Callable[[CacheRecord], Any]) -> list[CacheRecord]:
        """Recompute every record; returns the ones whose stored value is not reproduced."""
        return [rec for rec in self._index.values() if recompute(rec) != rec.value]
