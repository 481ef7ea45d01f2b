"""Thread-safe in-memory cache with simple eviction."""

from __future__ import annotations

import threading
from typing import Any, Generic, Hashable, Optional, TypeVar

V = TypeVar("V")


class MemoryCache(Generic[V]):
    """Insertion-ordered store; when full, the oldest tenth is evicted."""

    def __init__(self, max_size: int = 4096):
        self._store: dict[Hashable, V] = {}
        self._max_size = max_size
        self._lock = threading.Lock()
        self._hits = 0
        self._misses = 0

    def get(self, key: Hashable) -> Optional[V]:
        with self._lock:
            value = self._store.get(key)
            if value is None:
                self._misses += 1
                return None
            self._hits += 1
            return value

    def set(self, key: Hashable, value: V) -> None:
        with self._lock:
            if key not in self._store and len(self._store) >= self._max_size:
                for stale in list(self._store)[: self._max_size // 10 + 1]:
                    del self._store[stale]
            self._store[key] = value

    def clear(self) -> None:
        with self._lock:
            self._store.clear()
            self._hits = 0
            self._misses = 0

    def __len__(self) -> int:
        return len(self._store)

    @property
    def stats(self) -> dict[str, Any]:
        total = self._hits + self._misses
        return {
            "size": len(self._store),
            "hits": self._hits,
            "misses": self._misses,
            "hit_rate": round(self._hits / total, 3) if total > 0 else 0.0,
        }


class OrbitSizeCache(MemoryCache[int]):
    """Orbit sizes keyed by the certificate of the assignment-encoded graph."""

    def get_or_compute(self, certificate: bytes, compute) -> int:
        size = self.get(certificate)
        if size is None:
            size = compute()
            self.set(certificate, size)
        return size


__all__ = ["MemoryCache", "OrbitSizeCache"]
