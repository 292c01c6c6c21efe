import json

import pytest
from hypothesis import given, strategies as st

from rank2spectra.verify import (SUITES, TOL_ENV, Check, parse_tolerances, registry, resolve_tolerances,
                                  run_suite)
from rank2spectra import verify


class TestTolerances:
    def test_parse(self):
        assert parse_tolerances(None) == {}
        assert parse_tolerances("1e-6") == {"*": 1e-6}
        assert parse_tolerances("C06=1e-5, C10=1e-4") == {"C06": 1e-5, "C10": 1e-4}
        assert parse_tolerances(["1e-3", "C02=1e-12"]) == {"*": 1e-3, "C02": 1e-12}
        with pytest.raises(ValueError):
            parse_tolerances("C06=abc")

    def test_precedence(self):
        env = {TOL_ENV: "C06=1e-30"}
        assert resolve_tolerances(None, env) == {"C06": 1e-30}
        assert resolve_tolerances("1e-6", env) == {"*": 1e-6}
        assert resolve_tolerances(None, {}) == {}

    def test_longest_prefix_and_exact_checks(self):
        approx = Check("C06.A_Sp2.k3", "a-series", "m", {}, 1e-6, lambda: (0, 0, 0))
        exact = Check("C01.moments.x", "moments", "m", {}, 0, lambda: (0, 0, 0))
        over = {"*": 1e-2, "C06": 1e-3, "C06.A_Sp2": 1e-4}
        assert verify._tolerance_for(approx, over) == 1e-4
        assert verify._tolerance_for(approx, {}) == 1e-6
        assert verify._tolerance_for(approx, {"*": 1e-2}) == 1e-2
        assert verify._tolerance_for(exact, over) == 0

    @given(st.floats(1e-12, 1.0), st.floats(1e-12, 1.0))
    def test_flag_always_wins(self, a, b):
        env = {TOL_ENV: f"C06={a}"}
        assert resolve_tolerances(f"C06={b}", env)["C06"] == b


class TestEvaluate:
    def test_statuses(self):
        ok = Check("X.ok", "s", "m", {}, 1e-6, lambda: (1.0, 1.0, 0.0))
        bad = Check("X.bad", "s", "m", {}, 1e-6, lambda: (1.0, 2.0, 1.0))
        doc = Check("X.doc", "s", "m", {}, 1e-6, lambda: (1.5, 1.5, 0.0), documented=True)
        doc_off = Check("X.doc-off", "s", "m", {}, 1e-6, lambda: (1.5, 1.4, 0.1), documented=True)
        boom = Check("X.boom", "s", "m", {}, 1e-6, lambda: 1 / 0)
        nan = Check("X.nan", "s", "m", {}, 1e-6, lambda: (1.0, float("nan"), float("nan")))
        got = {c.check_id: verify._evaluate(c, c.tolerance).status for c in (ok, bad, doc, doc_off, boom, nan)}
        assert got == {"X.ok": "pass", "X.bad": "fail", "X.doc": "discrepancy-documented",
                       "X.doc-off": "fail", "X.boom": "fail", "X.nan": "fail"}
        assert "ZeroDivisionError" in verify._evaluate(boom, 1.0).note


class TestRegistry:
    def test_suites_partition_all(self):
        every = [c.check_id for c in registry("all")]
        assert len(every) == len(set(every))
        assert every == sorted(every)
        parts = [c.check_id for s in SUITES if s != "all" for c in registry(s)]
        assert sorted(parts) == every

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            registry("nope")
        with pytest.raises(ValueError):
            run_suite("nope")

    def test_each_criterion_present(self):
        prefixes = {c.check_id.split(".")[0] for c in registry("all")}
        assert {f"C{i:02d}" for i in range(1, 12)} <= prefixes

    def test_stated_tolerances(self):
        stated = {"C01": 0, "C02": 1e-10, "C03": 0, "C04": 1e-10, "C05": 1e-8, "C06": 1e-6, "C07": 1e-8,
                  "C09": 0, "C11": 1e-6}
        for c in registry("all"):
            head = c.check_id.split(".")[0]
            if head == "C07" and c.check_id.endswith(".mass"):
                assert c.tolerance == 1e-10
            elif head in stated:
                assert c.tolerance == stated[head], c.check_id


class TestReports:
    @pytest.mark.parametrize("suite", ["geometry", "smatrix", "exceptional"])
    def test_deterministic_across_worker_counts(self, suite):
        one = run_suite(suite, workers=1, env={})
        many = run_suite(suite, workers=8, env={})
        assert one.to_json() == many.to_json()
        assert one.to_csv() == many.to_csv()
        assert not one.failed

    def test_exceptional_documents_discrepancies(self):
        report = run_suite("exceptional", env={})
        status = {r.check_id: r.status for r in report.results}
        assert status["C08.E3M.mass"] == "discrepancy-documented"
        assert status["C08.E12.mass"] == "discrepancy-documented"
        assert status["C08x.E8-printed.mass"] == "discrepancy-documented"
        assert status["C08.E3.mass"] == status["C08.E7.mass"] == status["C08.E7M.mass"] == "pass"
        assert report.counts()["fail"] == 0

    def test_json_shape(self):
        body = json.loads(run_suite("geometry", env={}).to_json())
        assert set(body) == {"summary", "checks"}
        row = body["checks"][0]
        assert list(row) == ["check-id", "model", "parameters", "lhs", "rhs", "abs-error", "tolerance",
                             "status", "note"]
        assert sum(body["summary"].values()) == len(body["checks"])

    def test_tight_tolerance_fails(self):
        report = run_suite("smatrix", tol="C02=0", env={})
        assert report.failed
        assert all(r.status == "fail" for r in report.results if r.check_id.startswith("C02")
                   and r.abs_error > 0)

    def test_env_is_read(self, monkeypatch):
        monkeypatch.setenv(TOL_ENV, "C04=0")
        assert run_suite("smatrix").failed
        assert not run_suite("smatrix", tol="1e-9").failed
