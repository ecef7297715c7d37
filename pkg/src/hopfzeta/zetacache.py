"""Persistent cache of numeric polyzeta values (JSON lines, append only).

Each line holds one entry::

    {"word": "2,1", "value": "1.2020569...", "man": "...", "exp": -127,
     "error_bound": 1e-12, "N_used": 40, "precision_bits": 128}

``man``/``exp`` store the binary mantissa and exponent so a reload gives a
bit-identical mpmath number; ``value`` is only for humans.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from dataclasses import dataclass
from typing import Any

from .series import mp_context

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ZetaCacheEntry:
    word: str
    value: Any
    error_bound: float
    N_used: int
    precision_bits: int

    def to_json(self) -> str:
        man, exp = _man_exp(self.value)
        ctx = mp_context(self.precision_bits)
        return json.dumps({
            "word": self.word,
            "value": ctx.nstr(self.value, 30),
            "man": str(man),
            "exp": exp,
            "error_bound": float(self.error_bound),
            "N_used": int(self.N_used),
            "precision_bits": int(self.precision_bits),
        }, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "ZetaCacheEntry":
        d = json.loads(line)
        prec = int(d["precision_bits"])
        ctx = mp_context(prec)
        man, exp = int(d["man"]), int(d["exp"])
        value = ctx.mpf((man, exp))
        return cls(str(d["word"]), value, float(d["error_bound"]), int(d["N_used"]), prec)


def _man_exp(x) -> tuple[int, int]:
    man, exp = x.man, x.exp
    if x < 0:
        man = -man
    return int(man), int(exp)


class ZetaCache:
    """Thread-safe map ``(word, precision) -> entry``, optionally file backed."""

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = os.fspath(path) if path is not None else None
        self._lock = threading.Lock()
        self._entries: dict[tuple[str, int], ZetaCacheEntry] = {}
        self.corrupt_lines = 0
        if self.path is not None:
            self.load()

    def load(self) -> int:
        """(Re)read the backing file; returns the number of entries loaded."""
        if self.path is None or not os.path.exists(self.path):
            return 0
        loaded = 0
        bad = 0
        with self._lock, open(self.path, encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                try:
                    e = ZetaCacheEntry.from_json(line)
                except (ValueError, KeyError, TypeError):
                    bad += 1
                    continue
                self._store(e)
                loaded += 1
            self.corrupt_lines = bad
        if bad:
            log.warning("skipped %d corrupt zeta cache line(s) in %s", bad, self.path)
        return loaded

    def _store(self, e: ZetaCacheEntry):
        key = (e.word, e.precision_bits)
        old = self._entries.get(key)
        if old is None or e.error_bound <= old.error_bound:
            self._entries[key] = e

    def get(self, word: str, tol: float, prec: int) -> ZetaCacheEntry | None:
        """An entry at precision >= prec whose bound is <= tol, if any."""
        with self._lock:
            best = None
            for (w, p), e in self._entries.items():
                if w == word and p >= prec and e.error_bound <= tol:
                    if best is None or p < best.precision_bits:
                        best = e
            return best

    def put(self, entry: ZetaCacheEntry):
        with self._lock:
            self._store(entry)
            if self.path is not None:
                try:
                    with open(self.path, "a", encoding="utf-8") as fh:
                        fh.write(entry.to_json() + "\n")
                except OSError as exc:
                    raise OSError(f"cannot write zeta cache {self.path}: {exc}") from exc

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)

    def entries(self) -> list[ZetaCacheEntry]:
        with self._lock:
            return sorted(self._entries.values(), key=lambda e: (e.word, e.precision_bits))


DEFAULT_CACHE = ZetaCache()
