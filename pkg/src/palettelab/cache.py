"""Persistent admission-verdict cache.

Records are keyed by sha256 over the canonical serializations of the
graph and the palette, so color- and vertex-relabeled instances share
one verdict.  Witnesses are stored in canonical coordinates; the caller
transforms them back through its relabeling.  One JSON file per verdict,
written atomically (temp file + rename), safe under concurrent writers
because records for one key are identical.  Inconclusive outcomes are
never stored.
"""
from __future__ import annotations

import hashlib
import json
import os
import shutil
import tempfile
from pathlib import Path

from .core import (
    CANONICAL_COLOR_LIMIT,
    CANONICAL_VERTEX_LIMIT,
    Palette,
    ThreeGraph,
    dumps,
    palette_to_dict,
    three_graph_to_dict,
)

RECORD_VERSION = 1


class _BaseCache:
    vertex_limit = CANONICAL_VERTEX_LIMIT
    color_limit = CANONICAL_COLOR_LIMIT

    def __init__(self) -> None:
        self.hits = 0
        self.misses = 0
        self.searches = 0

    def accepts(self, f: ThreeGraph, p: Palette) -> bool:
        """Caching needs canonical forms, so both caps must hold."""
        return f.vertices <= self.vertex_limit and p.colors <= self.color_limit

    def key(self, cf: ThreeGraph, cp: Palette) -> str:
        payload = dumps(three_graph_to_dict(cf)) + "|" + dumps(palette_to_dict(cp))
        return hashlib.sha256(payload.encode()).hexdigest()

    def _load(self, key: str) -> dict | None:
        raise NotImplementedError

    def _store(self, key: str, record: dict) -> None:
        raise NotImplementedError

    def get(self, key: str, cf: ThreeGraph, cp: Palette) -> dict | None:
        record = self._load(key)
        if record is not None and (
            record.get("version") != RECORD_VERSION
            or record.get("graph") != three_graph_to_dict(cf)
            or record.get("palette") != palette_to_dict(cp)
        ):
            record = None  # stale or colliding record; treat as absent
        if record is None:
            self.misses += 1
            return None
        self.hits += 1
        return record

    def put(self, key: str, cf: ThreeGraph, cp: Palette, verdict: dict) -> None:
        record = {
            "version": RECORD_VERSION,
            "graph": three_graph_to_dict(cf),
            "palette": palette_to_dict(cp),
            **verdict,
        }
        self._store(key, record)


class MemoryCache(_BaseCache):
    """Process-local cache; useful for sweeps without a cache directory."""

    def __init__(self) -> None:
        super().__init__()
        self.records: dict[str, dict] = {}

    def _load(self, key: str) -> dict | None:
        record = self.records.get(key)
        return json.loads(json.dumps(record)) if record is not None else None

    def _store(self, key: str, record: dict) -> None:
        self.records[key] = json.loads(json.dumps(record))

    def stats(self) -> dict:
        payload = sum(len(json.dumps(r)) for r in self.records.values())
        return {"records": len(self.records), "bytes": payload}

    def clear(self) -> int:
        n = len(self.records)
        self.records.clear()
        return n


class VerdictCache(_BaseCache):
    def __init__(self, directory: str | os.PathLike) -> None:
        super().__init__()
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def _load(self, key: str) -> dict | None:
        try:
            with open(self._path(key), encoding="utf-8") as fh:
                return json.load(fh)
        except FileNotFoundError:
            return None
        except (OSError, json.JSONDecodeError):
            return None  # unreadable record counts as absent

    def _store(self, key: str, record: dict) -> None:
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(record, fh, sort_keys=True)
            os.replace(tmp, self._path(key))
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise

    def record_files(self) -> list[Path]:
        return sorted(self.directory.glob("*.json"))

    def stats(self) -> dict:
        files = self.record_files()
        return {"records": len(files), "bytes": sum(f.stat().st_size for f in files)}

    def clear(self) -> int:
        """Swap the directory aside, then delete; readers never observe a
        half-cleared cache."""
        count = len(self.record_files())
        graveyard = self.directory.with_name(self.directory.name + f".clear-{os.getpid()}")
        os.replace(self.directory, graveyard)
        self.directory.mkdir(parents=True, exist_ok=True)
        shutil.rmtree(graveyard, ignore_errors=True)
        return count
