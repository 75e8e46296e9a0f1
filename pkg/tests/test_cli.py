"""Pipeline orchestration, exit statuses, structured output, determinism."""

from __future__ import annotations

import json

import pytest

from loopsing.cli import (
    CACHE_ENV_VAR,
    ConfigError,
    Report,
    RunConfig,
    main,
    run,
    validate_report,
)
from loopsing.cohom import GradedDims

from conftest import CORPUS, NON_ISOLATED_SOURCES


def run_source(source: str, **overrides) -> Report:
    return run(RunConfig(function_source=source, **overrides))


class TestRun:
    def test_quadric_defaults(self):
        report = run_source("z^2")
        assert report.milnor_number == 1
        assert report.isolated is True
        assert report.lambda_term_count == 2
        assert all(c.ok for c in report.checks.values())
        assert report.cohomology is not None
        assert report.cohomology.renormalized == GradedDims({0: 1})
        assert report.exit_status == 0

    def test_fermat_cubic(self):
        report = run_source("x^3 + y^3")
        assert report.milnor_number == 4
        assert report.cohomology.renormalized == GradedDims({1: 4})

    def test_non_isolated_skips_cohomology(self):
        report = run_source("x^2*y")
        assert report.isolated is False
        assert report.milnor_number is None
        assert not report.checks["milnor"].ok
        assert report.checks["milnor"].witness
        assert report.checks["cohomology"].skipped
        assert report.cohomology is None
        assert report.exit_status == 1

    def test_check_subset(self):
        report = run_source("x^3 + y^3", checks=("lambda", "milnor"))
        assert set(report.checks) == {"lambda", "milnor"}
        assert report.cohomology is None
        assert report.exit_status == 0

    def test_emit_lambda(self):
        report = run_source("z^2", emit_lambda=True)
        assert report.lambda_polynomial == "z_0^2 + 2*z_-1*z_1"

    def test_wider_window(self):
        report = run_source("z^2", window_bottom=3)
        assert report.window.bottom == 3 and report.window.top == 3
        assert report.lambda_term_count == 4
        assert report.exit_status == 0

    def test_truncation_table_height(self):
        report = run_source("z^2", n_max=6)
        assert [n for n, _ in report.cohomology.truncations] == list(range(7))
        assert report.cohomology.truncations[6][1] == GradedDims({0: 1, 12: 1})

    def test_axioms_listed_when_cohomology_runs(self):
        report = run_source("z^2")
        assert any("residue" in axiom for axiom in report.axioms)
        bare = run_source("z^2", checks=("lambda",))
        assert bare.axioms == ()


class TestConfigValidation:
    def test_empty_checks(self):
        with pytest.raises(ConfigError):
            run_source("z^2", checks=())

    def test_unknown_check(self):
        with pytest.raises(ConfigError):
            run_source("z^2", checks=("lambda", "mystery"))

    def test_nmax_must_cover_window(self):
        with pytest.raises(ConfigError):
            run_source("z^2", window_bottom=5, n_max=3)

    def test_structural_checks_need_poles(self):
        with pytest.raises(ConfigError):
            run_source("z^2", window_bottom=0)
        # without the pole-sensitive checks a pole-free window is fine
        report = run_source("z^2", window_bottom=0, checks=("lambda", "milnor"))
        assert report.exit_status == 0


class TestStructuredOutput:
    @pytest.mark.parametrize("entry", CORPUS, ids=lambda e: e.source)
    def test_schema_on_corpus(self, entry):
        document = run_source(entry.source).to_dict()
        assert validate_report(document) == []

    @pytest.mark.parametrize("source", NON_ISOLATED_SOURCES)
    def test_schema_on_non_isolated(self, source):
        document = run_source(source).to_dict()
        assert validate_report(document) == []
        assert document["isolated"] is False
        assert document["cohomology"] is None

    def test_schema_rejects_malformed_documents(self):
        good = run_source("z^2").to_dict()
        assert validate_report({}) != []
        broken = dict(good)
        broken["checks"] = {"lambda": {"ok": False}}  # failed without witness
        assert validate_report(broken) != []
        broken = dict(good)
        broken["cohomology"] = dict(good["cohomology"])
        broken["cohomology"]["renormalized"] = {"0.5": 1}
        assert validate_report(broken) != []

    def test_degree_keys_are_decimal_strings(self):
        document = run_source("x^3 + y^3").to_dict()
        stabilization = document["cohomology"]["stabilization"]
        assert all(isinstance(key, str) for key in stabilization)
        assert any(key.startswith("-") for key in stabilization)

    def test_reports_are_deterministic(self):
        docs = []
        for _ in range(2):
            doc = run_source("x^3 + y^3").to_dict()
            doc.pop("timing")
            docs.append(json.dumps(doc, sort_keys=True))
        assert docs[0].encode() == docs[1].encode()


class TestMain:
    def test_success_text(self, capsys):
        assert main(["-f", "z^2"]) == 0
        out = capsys.readouterr().out
        assert "milnor_number" in out and "renormalized" in out

    def test_structured_format(self, capsys):
        assert main(["-f", "z^2", "--format", "structured"]) == 0
        document = json.loads(capsys.readouterr().out)
        assert validate_report(document) == []
        assert document["milnor_number"] == 1

    def test_check_list_flag(self, capsys):
        assert main(["-f", "z^2", "--checks", "lambda,support", "--format", "structured"]) == 0
        document = json.loads(capsys.readouterr().out)
        assert set(document["checks"]) == {"lambda", "support"}
        assert document["cohomology"] is None

    def test_non_isolated_exit_code(self, capsys):
        assert main(["-f", "x^2*y"]) == 1

    def test_config_error_exit_code(self, capsys):
        assert main(["-f", "x^2 + y^3"]) == 2
        assert "error" in capsys.readouterr().err

    def test_syntax_error_exit_code(self, capsys):
        assert main(["-f", "x +"]) == 2

    def test_missing_file_exit_code(self, capsys):
        assert main(["--file", "/nonexistent/input.txt"]) == 2

    def test_file_input(self, tmp_path, capsys):
        path = tmp_path / "fn.txt"
        path.write_text("# plane cubic\nx^3 + y^3\n")
        assert main(["--file", str(path)]) == 0

    def test_output_path(self, tmp_path):
        out = tmp_path / "report.json"
        assert main(["-f", "z^2", "--format", "structured", "--output", str(out)]) == 0
        document = json.loads(out.read_text())
        assert validate_report(document) == []

    def test_emit_lambda_flag(self, capsys):
        assert main(["-f", "z^2", "--emit-lambda"]) == 0
        assert "z_0^2" in capsys.readouterr().out

    def test_cache_env_variable(self, tmp_path, monkeypatch, capsys):
        cache = tmp_path / "cache"
        monkeypatch.setenv(CACHE_ENV_VAR, str(cache))
        assert main(["-f", "x^3 + y^3"]) == 0
        entries = list(cache.glob("*.json"))
        assert len(entries) == 1
        assert main(["-f", "x^3 + y^3"]) == 0
        assert list(cache.glob("*.json")) == entries
