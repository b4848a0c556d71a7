"""
驗證控制器與套件執行流程測試
"""

import pytest

from src.algebra.errors import ResourceLimit
from src.core.cache import FileResultCache, NullResultCache
from src.models.base import CheckRecord, SuiteStats
from src.models.run_config import RunConfig
from src.workers.controller import VerificationController, _module_name
from src.workers.processors.exact_confirmation import ExactConfirmationProcessor
from src.workers.suites.decompose import DecomposeSuite
from src.workers.suites.t_count import TCountSuite
from tests.conftest import CountingSuite


class TestSuiteRun:
    def test_cached_result_is_reused(self, tmp_path, run_config):
        suite = CountingSuite({}, run_config, FileResultCache(str(tmp_path)))
        first = suite.run("ok", {"x": 1})
        second = suite.run("ok", {"x": 1})
        assert suite.calls == 1
        assert first == second

    def test_without_cache(self, run_config):
        suite = CountingSuite({}, run_config)
        suite.run("ok", {"x": 1})
        suite.run("ok", {"x": 1})
        assert suite.calls == 2

    def test_error_becomes_record(self, tmp_path, run_config):
        cache = FileResultCache(str(tmp_path))
        suite = CountingSuite({}, run_config, cache)
        (record,) = suite.run("boom", {"x": 2})
        assert record.name == "counting.boom"
        assert record.error
        assert not record.passed
        assert "ValueError" in record.note
        suite.run("boom", {"x": 2})
        assert suite.calls == 2

    def test_resource_limit_propagates(self):
        rc = RunConfig(use_cache=False, max_block=3)
        suite = DecomposeSuite({"l": 3, "n": 2}, rc)
        with pytest.raises(ResourceLimit):
            suite.collect_checks()

    def test_invalid_suite_config(self, run_config):
        with pytest.raises(ValueError):
            TCountSuite({"l_max": -1}, run_config)
        with pytest.raises(ValueError):
            DecomposeSuite({"l": 2, "n": 2, "kind": "alt"}, run_config)

    def test_backend_override(self, run_config):
        suite = DecomposeSuite({"l": 1, "n": 2, "backend": "exact"}, run_config)
        assert suite.field.name == "exact"


class TestExactConfirmation:
    def test_failed_specialized_record_is_rechecked(self, run_config):
        suite = CountingSuite({}, run_config)
        (record,) = suite.run("exact-only", {"x": 3})
        assert not record.passed
        confirmed = ExactConfirmationProcessor({}).process_record(record, suite)
        assert confirmed.passed
        assert confirmed.confirmed_by == "exact"
        assert suite.calls == 2

    def test_passed_record_untouched(self, run_config):
        suite = CountingSuite({}, run_config)
        (record,) = suite.run("ok", {"x": 1})
        assert ExactConfirmationProcessor({}).process_record(record, suite) is record

    def test_disabled(self, run_config):
        suite = CountingSuite({}, run_config)
        (record,) = suite.run("exact-only", {"x": 3})
        assert ExactConfirmationProcessor({"enabled": False}).process_record(record, suite) is record

    def test_unknown_origin(self, run_config):
        suite = CountingSuite({}, run_config)
        stray = CheckRecord(name="counting", params={"x": 9}, passed=False, backend="specialize")
        assert ExactConfirmationProcessor({}).process_record(stray, suite) is stray


class TestModuleName:
    @pytest.mark.parametrize(
        "class_name,suffix,expected",
        [
            ("MainTheoremSuite", "Suite", "main_theorem"),
            ("HwEmbeddingSuite", "Suite", "hw_embedding"),
            ("TCountSuite", "Suite", "t_count"),
            ("ExactConfirmationProcessor", "Processor", "exact_confirmation"),
        ],
    )
    def test_camel_case(self, class_name, suffix, expected):
        assert _module_name(class_name, suffix) == expected


class TestController:
    def test_uses_null_cache_when_disabled(self, base_config, run_config):
        controller = VerificationController(base_config, run_config)
        assert isinstance(controller.cache, NullResultCache)

    def test_loaders(self, base_config, run_config):
        controller = VerificationController(base_config, run_config)
        assert controller._load_suite_class("TCountSuite") is TCountSuite
        assert controller._load_processor_class("ExactConfirmationProcessor") is ExactConfirmationProcessor
        with pytest.raises(ImportError):
            controller._load_suite_class("NoSuchSuite")
        with pytest.raises(ImportError):
            controller._load_processor_class("NoSuchProcessor")

    def test_suite_names(self, base_config, run_config):
        controller = VerificationController(base_config, run_config)
        assert controller.suite_names() == ["t-count"]

    def test_verify_single_suite(self, base_config, run_config):
        controller = VerificationController(base_config, run_config)
        report = controller.verify("t-count")
        assert len(report.checks) == 9
        assert report.all_passed
        assert report.command == "verify t-count"
        assert report.config["backend"] == "specialize"

    def test_verify_all_skips_disabled(self, base_config, run_config):
        controller = VerificationController(base_config, run_config)
        report = controller.verify("all")
        assert {c.name for c in report.checks} == {"t-count"}

    def test_overrides(self, base_config, run_config):
        controller = VerificationController(base_config, run_config)
        report = controller.verify("t-count", {"l_max": 1, "n_max": 3})
        assert [c.params for c in report.checks] == [{"l": 1, "n": 2}, {"l": 1, "n": 3}]

    def test_builtin_decompose(self, base_config, run_config):
        controller = VerificationController(base_config, run_config)
        report = controller.verify("decompose", {"l": 3, "n": 4, "kind": "sym"}, command="decompose")
        (check,) = report.checks
        assert check.computed["dim"] == 22
        assert check.ms == 0
        assert check.passed

    def test_unknown_suite(self, base_config, run_config):
        controller = VerificationController(base_config, run_config)
        with pytest.raises(ValueError):
            controller.verify("nope")

    def test_bad_override_is_config_error(self, base_config, run_config):
        controller = VerificationController(base_config, run_config)
        with pytest.raises(ValueError):
            controller.verify("t-count", {"n_max": 1})

    def test_processor_counts_confirmations(self, base_config, run_config):
        controller = VerificationController(base_config, run_config)
        suite = CountingSuite({}, run_config)
        records = suite.run("exact-only", {"x": 4}) + suite.run("ok", {"x": 1})
        stats = SuiteStats()
        processed = controller._process_records("ExactConfirmationProcessor", {}, records, suite, stats)
        assert stats.confirmed == 1
        assert all(r.passed for r in processed)
