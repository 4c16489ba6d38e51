"""
Cache manager for the spherical class engine.

Root systems, class Weyl elements and class monoids are immutable and costly
to rebuild, so they are memoized here under string keys. The cache is shared
between the worker threads of a verification run.
"""

import logging
import threading
import time
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, TypeVar


logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass
class CacheEntry:
    """Cache entry with value and creation time."""
    value: Any
    created_at: float


class CacheManager:
    """
    In-memory cache manager for immutable derived objects.

    Entries never expire; values are pure functions of their keys.
    """

    def __init__(self, max_size: Optional[int] = None):
        """
        Initialize the cache manager.

        Args:
            max_size: Optional bound on the number of entries; the oldest
                entry is evicted first when it is reached
        """
        self._cache: Dict[str, CacheEntry] = {}
        self._lock = threading.RLock()
        self.max_size = max_size
        self._hits = 0
        self._misses = 0

    def get(self, key: str) -> Optional[Any]:
        with self._lock:
            entry = self._cache.get(key)
            if entry is None:
                self._misses += 1
                return None
            self._hits += 1
            return entry.value

    def set(self, key: str, value: Any) -> None:
        with self._lock:
            if self.max_size is not None and len(self._cache) >= self.max_size:
                oldest = min(self._cache, key=lambda k: self._cache[k].created_at)
                del self._cache[oldest]
            self._cache[key] = CacheEntry(value=value, created_at=time.monotonic())

    def get_or_create(self, key: str, factory: Callable[[], T]) -> T:
        """
        Return the cached value for key, building it with factory on a miss.

        The factory runs outside the lock; two threads racing on the same key
        both compute the value and the first stored one wins.
        """
        cached = self.get(key)
        if cached is not None:
            return cached
        value = factory()
        with self._lock:
            existing = self._cache.get(key)
            if existing is not None:
                return existing.value
            self.set(key, value)
        logger.debug("Cached value", extra={"cache_key": key})
        return value

    def clear(self) -> None:
        with self._lock:
            self._cache.clear()
            self._hits = 0
            self._misses = 0

    def get_stats(self) -> Dict[str, Any]:
        """Hit/miss counters and size."""
        with self._lock:
            lookups = self._hits + self._misses
            return {
                "total_entries": len(self._cache),
                "hits": self._hits,
                "misses": self._misses,
                "hit_rate": self._hits / lookups if lookups else 0.0,
                "max_size": self.max_size,
            }


# Shared cache for the engine services
engine_cache = CacheManager()
