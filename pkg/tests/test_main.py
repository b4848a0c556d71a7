"""
命令列入口測試
"""

import json
import logging

import pytest

from src.main import EXIT_FAILED, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, main

FAST = ["--no-cache", "--no-timing"]


@pytest.fixture(autouse=True)
def reset_logging():
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestDecompose:
    def test_json_report(self, capsys, config_file):
        code, out = _run(capsys, "decompose", "-c", config_file, "--l", "3", "--n", "4", *FAST)
        assert code == EXIT_OK
        report = json.loads(out)
        (check,) = report["checks"]
        assert check["computed"] == {"dim": 22, "components": [{"hw": 12, "mult": 1}, {"hw": 8, "mult": 1}]}
        assert check["pass"] is True
        assert check["ms"] == 0
        assert report["config"] == {"backend": "specialize", "seed": 0, "max_block": 2000, "q0": "7/5"}

    def test_exterior_vanishes(self, capsys, config_file):
        code, out = _run(capsys, "decompose", "-c", config_file, "--l", "2", "--n", "5", "--kind", "ext", *FAST)
        assert code == EXIT_OK
        assert json.loads(out)["checks"][0]["computed"] == {"dim": 0, "components": []}

    def test_exact_backend(self, capsys, config_file):
        code, out = _run(capsys, "decompose", "-c", config_file, "--l", "1", "--n", "3", "--backend", "exact", *FAST)
        assert code == EXIT_OK
        assert json.loads(out)["config"] == {"backend": "exact", "seed": 0, "max_block": 2000}

    def test_reproducible(self, capsys, config_file):
        _, first = _run(capsys, "decompose", "-c", config_file, "--l", "2", "--n", "3", *FAST)
        _, second = _run(capsys, "decompose", "-c", config_file, "--l", "2", "--n", "3", *FAST)
        assert first == second


class TestExitCodes:
    def test_classical_point_rejected(self, capsys, config_file):
        code, _ = _run(capsys, "decompose", "-c", config_file, "--l", "1", "--n", "2", "--q0", "1", *FAST)
        assert code == EXIT_USAGE

    def test_missing_config(self, capsys, tmp_path):
        code, _ = _run(capsys, "decompose", "-c", str(tmp_path / "none.yaml"), "--l", "1", "--n", "2")
        assert code == EXIT_USAGE

    def test_resource_limit(self, capsys, config_file):
        code, out = _run(capsys, "decompose", "-c", config_file, "--l", "3", "--n", "2", "--max-block", "3", *FAST)
        assert code == EXIT_RESOURCE
        assert out == ""

    def test_unknown_suite_class(self, capsys, tmp_path, base_config):
        import yaml

        base_config["suites"][0]["suite_class"] = "MissingSuite"
        path = tmp_path / "broken.yaml"
        path.write_text(yaml.safe_dump(base_config), encoding="utf-8")
        code, _ = _run(capsys, "verify", "t-count", "-c", str(path), *FAST)
        assert code == EXIT_USAGE

    def test_argparse_error(self, config_file):
        with pytest.raises(SystemExit) as info:
            main(["decompose", "-c", config_file])
        assert info.value.code == 2

    def test_failed_check(self, capsys, config_file, monkeypatch):
        from src.workers.suites import t_count

        monkeypatch.setattr(t_count, "t_count_formula", lambda ell, n: -1)
        code, _ = _run(capsys, "verify", "t-count", "-c", config_file, "--l-max", "1", "--n-max", "2", *FAST)
        assert code == EXIT_FAILED


class TestVerify:
    def test_csv(self, capsys, config_file):
        code, out = _run(capsys, "verify", "t-count", "-c", config_file, "--format", "csv", *FAST)
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert lines[0] == "name,params,expected,computed,pass,ms"
        assert len(lines) == 10

    def test_table(self, capsys, config_file):
        code, out = _run(capsys, "verify", "all", "-c", config_file, "--format", "table", *FAST)
        assert code == EXIT_OK
        assert out.strip().endswith("9/9 passed")

    def test_hilbert_poisson(self, capsys, config_file):
        code, out = _run(capsys, "hilbert", "poisson", "-c", config_file, "--l", "2", "--n-max", "3", *FAST)
        assert code == EXIT_OK
        dims = [c["computed"]["dim"] for c in json.loads(out)["checks"]]
        assert dims == [1, 3, 6, 10]

    def test_hilbert_veronese(self, capsys, config_file):
        code, out = _run(
            capsys, "hilbert", "veronese", "-c", config_file, "--n", "1", "--d", "2", "--k-max", "2", *FAST
        )
        assert code == EXIT_OK
        dims = [c["computed"]["dim"] for c in json.loads(out)["checks"]]
        assert dims == [3, 5]


class TestExport:
    def test_relations(self, capsys, config_file):
        code, out = _run(capsys, "export", "relations", "-c", config_file, "--n", "1", "--d", "2")
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert lines[0] == "I,J,K,L,exponent,lambda_exponent,agree"
        assert len(lines) == 6

    def test_t_monomials(self, capsys, config_file):
        code, out = _run(capsys, "export", "t-monomials", "-c", config_file, "--l", "3", "--n", "4")
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert lines[0] == "k0,k1,k2,k3"
        assert len(lines) == 23
