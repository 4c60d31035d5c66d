"""On-disk cache for expensive lattice enumerations.

One JSON file per (key, tag) under the cache directory, written atomically
under an advisory file lock.  Entries carry a versioned header; anything
unreadable or mismatched is reported, ignored and later overwritten.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path

from filelock import FileLock

log = logging.getLogger(__name__)

CACHE_FORMAT = "perpcalc-cache"
CACHE_VERSION = 1


class ResultCache:
    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self.stats = {"hits": 0, "misses": 0, "writes": 0, "corrupt": 0}

    def path(self, key: str, tag: str) -> Path:
        return self.directory / f"{key}.{tag}.json"

    def _lock(self, path: Path) -> FileLock:
        return FileLock(str(path) + ".lock")

    def get(self, key: str, tag: str):
        path = self.path(key, tag)
        if not path.exists():
            self.stats["misses"] += 1
            return None
        with self._lock(path):
            try:
                doc = json.loads(path.read_text())
                header = doc["header"]
                if (header["format"], header["version"], header["key"], header["tag"]) != (
                        CACHE_FORMAT, CACHE_VERSION, key, tag):
                    raise ValueError(f"header mismatch {header}")
                value = doc["value"]
            except (OSError, ValueError, KeyError, TypeError) as exc:
                log.warning("ignoring corrupt cache entry %s: %s", path.name, exc)
                self.stats["corrupt"] += 1
                self.stats["misses"] += 1
                return None
        self.stats["hits"] += 1
        return value

    def put(self, key: str, tag: str, value) -> None:
        path = self.path(key, tag)
        doc = {"header": {"format": CACHE_FORMAT, "version": CACHE_VERSION, "key": key, "tag": tag},
               "value": value}
        data = json.dumps(doc, sort_keys=True, separators=(",", ":"))
        with self._lock(path):
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(data)
            os.replace(tmp, path)
        self.stats["writes"] += 1


_active: list[ResultCache | None] = [None]


@contextmanager
def use_cache(cache: ResultCache | None):
    _active.append(cache)
    try:
        yield cache
    finally:
        _active.pop()


def active_cache() -> ResultCache | None:
    return _active[-1]
