"""Persistent JSON cache of dimension tables.

One JSON document maps ``"k=<k>,i=<i>,N=<N>,v=<code version>"`` to the
serialized :class:`~pslab.characters.BivariateSeries`.  Entries written by
another code version are dropped on load.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from functools import lru_cache
from pathlib import Path
from typing import Dict, Optional

from . import __version__

ENV_VAR = "PSLAB_CACHE"


@lru_cache(maxsize=None)
def code_version() -> str:
    """Hash of the package version and its source files."""
    h = hashlib.sha256(__version__.encode())
    root = Path(__file__).resolve().parent
    for path in sorted(root.glob("*.py")):
        h.update(path.name.encode())
        h.update(path.read_bytes())
    return h.hexdigest()[:16]


def default_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "pslab" / "dimensions.json"


def entry_key(k: int, i: int, order: int, version: str = None) -> str:
    return "k=%d,i=%d,N=%d,v=%s" % (k, i, order, version or code_version())


class DimensionCache:
    def __init__(self, path: Optional[Path] = None):
        self.path = Path(path) if path else default_path()
        self.entries: Dict[str, list] = {}
        self.stale = 0
        self._load()

    def _load(self):
        try:
            data = json.loads(self.path.read_text())
        except FileNotFoundError:
            return
        except (OSError, ValueError):
            # unreadable cache is treated as empty and overwritten on save
            self.stale = -1
            return
        suffix = ",v=" + code_version()
        for key, value in data.get("entries", {}).items():
            if key.endswith(suffix):
                self.entries[key] = value
            else:
                self.stale += 1

    def get(self, k: int, i: int, order: int) -> Optional[list]:
        return self.entries.get(entry_key(k, i, order))

    def put(self, k: int, i: int, order: int, table: list) -> None:
        self.entries[entry_key(k, i, order)] = table

    def save(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        doc = {"version": code_version(), "entries": dict(sorted(self.entries.items()))}
        fd, tmp = tempfile.mkstemp(dir=str(self.path.parent), prefix=".pslab-cache-")
        with os.fdopen(fd, "w") as f:
            json.dump(doc, f, sort_keys=True)
        os.replace(tmp, self.path)

    def clear(self) -> None:
        self.entries = {}
        if self.path.exists():
            self.path.unlink()
