"""On-disk E_p cache: one ``p:m1,m2,...`` line per prime, sorted by p."""

from __future__ import annotations

import logging
import os
import tempfile
import threading
from pathlib import Path

from .ep import EpSet, ep_compute
from .primes import is_prime

log = logging.getLogger(__name__)

CACHE_ENV = "HARMDENOM_CACHE_DIR"
CACHE_FILE = "ep_cache.txt"


def format_record(ep: EpSet) -> str:
    return f"{ep.p}:{','.join(map(str, ep.members))}\n"


def parse_record(line: str) -> EpSet:
    """Parse one cache line, raising ValueError on anything malformed."""
    head, sep, tail = line.strip().partition(":")
    if not sep:
        raise ValueError(f"missing ':' in {line!r}")
    p = int(head)
    members = tuple(int(t) for t in tail.split(",")) if tail else ()
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if list(members) != sorted(set(members)) or not members:
        raise ValueError(f"members of E_{p} not strictly ascending")
    if members[0] <= 1 or members[-1] != p - 1:
        raise ValueError(f"members of E_{p} out of range")
    inner = set(members[:-1])
    if any(p - 1 - m not in inner for m in inner):
        raise ValueError(f"members of E_{p} not closed under m -> p-1-m")
    if (((p - 1) // 2) in inner) != (pow(2, p, p * p) == 2):
        raise ValueError(f"midpoint membership of E_{p} contradicts the Wieferich test")
    return EpSet(p, members)


class EpCache:
    """E_p sets persisted under ``cache_dir``; ``None`` means compute only."""

    def __init__(self, cache_dir: str | os.PathLike | None):
        self.path = Path(cache_dir) / CACHE_FILE if cache_dir is not None else None
        self._lock = threading.Lock()
        self._entries: dict[int, EpSet] | None = None
        self._dirty_lines = False

    @classmethod
    def from_env(cls, cache_dir=None) -> "EpCache":
        return cls(cache_dir if cache_dir is not None else os.environ.get(CACHE_ENV))

    def _load(self) -> dict[int, EpSet]:
        if self._entries is not None:
            return self._entries
        entries: dict[int, EpSet] = {}
        if self.path is not None and self.path.exists():
            for lineno, line in enumerate(self.path.read_text("utf-8").splitlines(), 1):
                if not line.strip():
                    continue
                try:
                    ep = parse_record(line)
                except ValueError as exc:
                    log.warning("dropping corrupt cache line %d in %s: %s", lineno, self.path, exc)
                    self._dirty_lines = True
                    continue
                entries[ep.p] = ep
        self._entries = entries
        return entries

    def _write(self) -> None:
        assert self.path is not None and self._entries is not None
        self.path.parent.mkdir(parents=True, exist_ok=True)
        text = "".join(format_record(self._entries[p]) for p in sorted(self._entries))
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".ep_cache.")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            os.replace(tmp, self.path)
        except BaseException:
            os.unlink(tmp)
            raise
        self._dirty_lines = False

    def get(self, p: int) -> EpSet:
        """Cached E_p if present and valid, else computed and persisted."""
        with self._lock:
            entries = self._load()
            hit = entries.get(p)
            if hit is not None:
                return hit
            ep = ep_compute(p)
            if self.path is not None:
                entries[p] = ep
                self._write()
            return ep

    def get_many(self, primes) -> list[EpSet]:
        """Like :meth:`get` for a batch, rewriting the file at most once."""
        with self._lock:
            entries = self._load()
            out, changed = [], self._dirty_lines
            for p in primes:
                ep = entries.get(p)
                if ep is None:
                    ep = ep_compute(p)
                    if self.path is not None:
                        entries[p] = ep
                        changed = True
                out.append(ep)
            if changed and self.path is not None:
                self._write()
            return out

    def __call__(self, p: int) -> EpSet:
        return self.get(p)


def cache_load_or_compute(p: int, cache_dir) -> EpSet:
    return EpCache(cache_dir).get(p)
