"""
結果快取測試
"""

import os

from src.algebra.qscalar import EXACT_FIELD, SpecializedField
from src.core.cache import (
    FileResultCache,
    NullResultCache,
    cache_key,
    create_result_cache,
)
from src.core.redis_cache import RedisResultMirror
from src.models.run_config import RunConfig

UNREACHABLE_REDIS = "redis://127.0.0.1:1/0"


class TestCacheKey:
    def test_stable(self, fast_field):
        a = cache_key("cube", {"l": 3, "n": 2}, fast_field)
        b = cache_key("cube", {"n": 2, "l": 3}, fast_field)
        assert a == b
        assert len(a) == 64

    def test_depends_on_backend_and_point(self, fast_field):
        base = cache_key("cube", {"l": 3}, fast_field)
        assert base != cache_key("cube", {"l": 3}, EXACT_FIELD)
        assert base != cache_key("cube", {"l": 3}, SpecializedField(2))
        assert base != cache_key("cube", {"l": 4}, fast_field)


class TestFileResultCache:
    def test_round_trip(self, tmp_path):
        cache = FileResultCache(str(tmp_path))
        cache.set("ab" + "0" * 62, [{"name": "x", "passed": True}])
        assert cache.get("ab" + "0" * 62) == [{"name": "x", "passed": True}]
        assert os.path.exists(tmp_path / "ab" / ("ab" + "0" * 62 + ".json"))

    def test_missing(self, tmp_path):
        assert FileResultCache(str(tmp_path)).get("cd" + "1" * 62) is None

    def test_corrupt_file(self, tmp_path):
        cache = FileResultCache(str(tmp_path))
        key = "ef" + "2" * 62
        cache.set(key, {"ok": True})
        with open(cache._path(key), "w", encoding="utf-8") as f:
            f.write("{not json")
        assert cache.get(key) is None


class TestNullResultCache:
    def test_never_stores(self):
        cache = NullResultCache()
        cache.set("k", 1)
        assert cache.get("k") is None


class TestRedisMirror:
    def test_unreachable(self):
        mirror = RedisResultMirror(UNREACHABLE_REDIS)
        assert not mirror.available
        assert mirror.get("k") is None
        assert mirror.set("k", {"a": 1}) is False


class TestFactory:
    def test_disabled(self):
        assert isinstance(create_result_cache(RunConfig(use_cache=False)), NullResultCache)

    def test_file_cache(self, tmp_path):
        cache = create_result_cache(RunConfig(cache_dir=str(tmp_path / "c")))
        assert isinstance(cache, FileResultCache)
        assert cache.mirror is None

    def test_unreachable_redis_degrades(self, tmp_path):
        cache = create_result_cache(RunConfig(cache_dir=str(tmp_path), redis_url=UNREACHABLE_REDIS))
        assert isinstance(cache, FileResultCache)
        assert cache.mirror is None
