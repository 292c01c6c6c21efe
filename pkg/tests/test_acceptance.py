"""Acceptance criteria 1-11, one report line per criterion.

Each criterion runs its verification checks (ids C01..C11) at the stated
tolerances, plus the companion rows (C..x) that quantify printed-formula
errata.  Run directly with ``python tests/test_acceptance.py`` or under pytest.
"""

import sys
import time

import pytest

from rank2spectra.verify import registry, run_checks

CRITERIA = {
    1: ("moment oracle triangle", 5),
    2: ("S-matrix unitarity and symmetry", 5),
    3: ("Verlinde integrality and graph equality", 10),
    4: ("psi* three evaluation modes", 5),
    5: ("Jacobian consistency", 2),
    6: ("A-series measure theorems", 30),
    7: ("D-series measure theorem", 10),
    8: ("exceptional measure theorems", 10),
    9: ("orbit-measure geometry", 1),
    10: ("one-dimensional weights", 60),
    11: ("A_infinity limit", 30),
}


def run_criterion(n: int):
    head = f"C{n:02d}"
    checks = [c for c in registry("all") if c.check_id.split(".")[0] in (head, head + "x")]
    start = time.perf_counter()
    report = run_checks(checks, env={})
    elapsed = time.perf_counter() - start
    return report, elapsed


def summary_line(n: int, report, elapsed: float) -> str:
    name, budget = CRITERIA[n]
    counts = report.counts()
    verdict = "FAIL" if report.failed else "PASS"
    extra = f", {counts['discrepancy-documented']} discrepancy-documented" if counts["discrepancy-documented"] else ""
    return (f"criterion {n:2d} {verdict}  {name}: {counts['pass']} pass{extra}, "
            f"{counts['fail']} fail  [{elapsed:.1f} s, budget {budget} s]")


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    report, elapsed = run_criterion(n)
    line = summary_line(n, report, elapsed)
    with capsys.disabled():
        print("\n" + line)
    failures = [f"{r.check_id}: {r.abs_error!r} > {r.tolerance!r} {r.note}" for r in report.results
                if r.status == "fail"]
    assert not failures, "\n".join(failures)
    assert report.counts()["pass"] > 0
    assert elapsed < CRITERIA[n][1], f"criterion {n} took {elapsed:.1f} s"
    assert len({r.check_id for r in report.results}) == len(report.results)


def test_documented_discrepancies_are_the_expected_ones():
    report, _ = run_criterion(8)
    documented = {r.check_id for r in report.results if r.status == "discrepancy-documented"}
    assert {"C08.E3M.mass", "C08.E12.mass", "C08x.E8-printed.mass"} <= documented
    assert not any(r.check_id.startswith("C08.") and r.status == "discrepancy-documented"
                   and r.check_id not in ("C08.E3M.mass", "C08.E12.mass") for r in report.results)


if __name__ == "__main__":
    failed = False
    for n in sorted(CRITERIA):
        report, elapsed = run_criterion(n)
        print(summary_line(n, report, elapsed), flush=True)
        failed |= report.failed
    sys.exit(1 if failed else 0)
