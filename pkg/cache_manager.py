"""
Cache Manager for permcover
Persists oracle reports on disk with age tracking.
"""
from datetime import datetime
from pathlib import Path
from typing import Any, Optional, Tuple

import diskcache

import config
from console import status


class ReportCache:
    """Timestamped entries in a diskcache directory, opened on first use."""

    def __init__(self, cache_dir: Optional[Path] = None):
        self.cache_dir = Path(cache_dir or config.CACHE_DIR)
        self._store: Optional[diskcache.Cache] = None

    @property
    def store(self) -> diskcache.Cache:
        if self._store is None:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
            self._store = diskcache.Cache(str(self.cache_dir))
        return self._store

    def set(self, key: str, data: Any) -> bool:
        """
        Cache data with timestamp.

        Returns:
            True if successful, False otherwise
        """
        try:
            self.store.set(key, {'timestamp': datetime.now().isoformat(), 'data': data})
            return True
        except Exception as e:
            status('error', f"Failed to cache {key}: {e}")
            return False

    def get(self, key: str, max_age_days: Optional[int] = None) -> Optional[Tuple[Any, int]]:
        """
        Get cached data with age information.

        Args:
            key: Cache key identifier
            max_age_days: Maximum age in days (None = config.MAX_CACHE_AGE_DAYS)

        Returns:
            Tuple of (data, age_in_days) if found and fresh enough, None otherwise
        """
        try:
            entry = self.store.get(key)
            if entry is None:
                return None

            age_days = (datetime.now() - datetime.fromisoformat(entry['timestamp'])).days
            max_age = config.MAX_CACHE_AGE_DAYS if max_age_days is None else max_age_days
            if age_days > max_age:
                status('warn', f"Cache for {key} is {age_days} days old (max: {max_age})")
                return None

            return entry['data'], age_days
        except Exception as e:
            status('error', f"Failed to read cache {key}: {e}")
            return None

    def delete(self, key: str) -> bool:
        try:
            self.store.delete(key)
            return True
        except Exception as e:
            status('error', f"Failed to delete cache {key}: {e}")
            return False

    def clear_all(self) -> int:
        """Clear all cached data. Returns number of entries deleted."""
        try:
            return self.store.clear()
        except Exception as e:
            status('error', f"Failed to clear cache: {e}")
            return 0

    def close(self) -> None:
        if self._store is not None:
            self._store.close()
            self._store = None


# Global cache instance
cache = ReportCache()


if __name__ == '__main__':
    print("Testing Report Cache...")
    cache.set('test_key', {'n': 4, 'mode': 'pair'})
    result = cache.get('test_key')
    if result:
        data, age = result
        print(f"✓ Retrieved cached data (age: {age} days): {data}")
    else:
        print("❌ Failed to retrieve cache")
    cache.delete('test_key')
    print("✓ Cache successfully deleted" if cache.get('test_key') is None else "❌ Cache still exists")
