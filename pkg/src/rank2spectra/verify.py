"""Acceptance checks and the verification report.

Each check yields exactly one report row.  A row compares an lhs against an rhs
and passes when the absolute error is within tolerance.  Rows marked
``documented`` compare a printed formula against the quantity it actually
equals (for instance the printed mass of a measure against 3/2 rather than 1);
they report ``discrepancy-documented`` when that quantified deviation holds and
``fail`` otherwise.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import graphs, measures, modular, weights, weyl
from .torus import TorusPoint, Weight, char_fund

SUITES = ("all", "moments", "smatrix", "geometry", "a-series", "d-series", "exceptional", "weights")
STATUSES = ("pass", "fail", "discrepancy-documented")
TOL_ENV = "RANK2_SPECTRA_TOL"
SEED = 20100806


@dataclass(frozen=True)
class Result:
    check_id: str
    model: str
    parameters: dict
    lhs: float
    rhs: float
    abs_error: float
    tolerance: float
    status: str
    note: str = ""

    def to_json(self) -> dict:
        return {"check-id": self.check_id, "model": self.model, "parameters": self.parameters,
                "lhs": _num(self.lhs), "rhs": _num(self.rhs), "abs-error": _num(self.abs_error),
                "tolerance": self.tolerance, "status": self.status, "note": self.note}


def _rat(v) -> list[int]:
    f = Fraction(v)
    return [f.numerator, f.denominator]


def _num(v):
    if isinstance(v, (int, np.integer)):
        return int(v)
    v = float(v)
    return v if math.isfinite(v) else repr(v)


@dataclass(frozen=True)
class Check:
    check_id: str
    suite: str
    model: str
    parameters: dict
    tolerance: float
    run: Callable[[], tuple[float, float, float]]  # -> (lhs, rhs, abs_error)
    documented: bool = False
    note: str = ""


@dataclass
class VerificationReport:
    results: list[Result] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(r.status == "fail" for r in self.results)

    def counts(self) -> dict[str, int]:
        return {s: sum(r.status == s for r in self.results) for s in STATUSES}

    def to_json(self) -> str:
        body = {"summary": self.counts(), "checks": [r.to_json() for r in self.results]}
        return json.dumps(body, indent=2, sort_keys=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["check-id", "model", "parameters", "lhs", "rhs", "abs-error", "tolerance",
                      "status", "note"])
        for r in self.results:
            out.writerow([r.check_id, r.model, json.dumps(r.parameters, sort_keys=True),
                          repr(float(r.lhs)), repr(float(r.rhs)), repr(float(r.abs_error)),
                          repr(r.tolerance), r.status, r.note])
        return buf.getvalue()


# tolerance configuration -----------------------------------------------------

def parse_tolerances(spec: str | list[str] | tuple[str, ...] | None) -> dict[str, float]:
    """'1e-6' sets every non-exact tolerance; 'C06=1e-5,C10=1e-4' sets per-prefix values."""
    if not spec:
        return {}
    items = spec if isinstance(spec, (list, tuple)) else [spec]
    out: dict[str, float] = {}
    for item in items:
        for part in str(item).split(","):
            part = part.strip()
            if not part:
                continue
            key, _, value = part.rpartition("=")
            out[key or "*"] = float(value)
    return out


def resolve_tolerances(flag=None, env: dict | None = None) -> dict[str, float]:
    """Precedence: flag > RANK2_SPECTRA_TOL > built-in defaults.

    A flag replaces the environment setting as a whole, so an environment prefix
    entry can never outrank a global value given on the command line.
    """
    from_flag = parse_tolerances(flag)
    if from_flag:
        return from_flag
    env = os.environ if env is None else env
    return parse_tolerances(env.get(TOL_ENV))


def _tolerance_for(check: Check, overrides: dict[str, float]) -> float:
    if check.tolerance == 0:
        return 0.0  # exact checks stay exact
    best, best_len = None, -1
    for key, value in overrides.items():
        if key != "*" and check.check_id.startswith(key) and len(key) > best_len:
            best, best_len = value, len(key)
    if best is not None:
        return best
    return overrides.get("*", check.tolerance)


# helpers -----------------------------------------------------------------------

def _max_diff(pairs):
    """Worst (lhs, rhs, |lhs - rhs|) over an iterable of pairs."""
    worst = (0.0, 0.0, -1.0)
    for a, b in pairs:
        err = abs(float(a) - float(b))
        if not math.isfinite(err):
            return (a, b, math.inf)
        if err > worst[2]:
            worst = (a, b, err)
    return worst if worst[2] >= 0 else (0.0, 0.0, 0.0)


def _rel_max(pairs):
    worst = (0.0, 0.0, 0.0)
    for a, b in pairs:
        err = abs(a - b) / max(1.0, abs(b))
        if err > worst[2]:
            worst = (float(a), float(b), float(err))
    return worst


def _random_points(n: int, seed: int = SEED):
    rng = np.random.default_rng(seed)
    return rng.random(n), rng.random(n)


# criterion 1: moments --------------------------------------------------------

def _moment_checks():
    out = []
    for u in "xyz":
        def run(u=u):
            worst = (0, 0, 0)
            for m in range(13):
                a = graphs.moment_multinomial(u, m)
                b = graphs.moment_walk_dp(u, m)
                c = graphs.moment_constant_term(u, m)
                err = max(abs(a - b), abs(a - c))
                if err >= worst[2]:
                    worst = (a, c if abs(a - c) >= abs(a - b) else b, err)
            return worst
        out.append(Check(f"C01.moments.{u}", "moments", f"A_infty(Z2,{u})", {"u": u, "max_m": 12},
                         0, run, note="multinomial = walk DP = constant term"))
    return out


# criteria 2-4: modular data ----------------------------------------------------

def _smatrix_checks():
    out = []
    for k in range(1, 21):
        def run(k=k):
            s = modular.smatrix(k)
            return (s.unitarity_residual(), s.symmetry_residual(),
                    max(s.unitarity_residual(), s.symmetry_residual()))
        out.append(Check(f"C02.smatrix.k{k:02d}", "smatrix", f"Sp2 level {k}", {"k": k}, 1e-10, run,
                         note="lhs unitarity residual, rhs symmetry residual"))
    for k in range(1, 9):
        for group, u, w in (("Sp2", "x", Weight(1, 0)), ("Sp2", "y", Weight(0, 1)),
                            ("SO5", "y", Weight(0, 1)), ("SO5", "z", Weight(2, 0))):
            if group == "SO5" and u == "z" and k < 2:
                continue

            def run(k=k, group=group, u=u, w=w):
                g = graphs.a_graph(group, k, u)
                n = modular.verlinde_N(k, w)
                s = modular.smatrix(k)
                order = [s.index(graphs.so5_to_sp2(v) if group == "SO5" else Weight(*v))
                         for v in g.vertices]
                sub = n[np.ix_(order, order)]
                diff = int(np.max(np.abs(sub - g.dense())))
                return int(np.sum(g.dense())), int(np.sum(sub)), diff
            cid = "C03.verlinde" if group == "Sp2" else "C03x.verlinde-so5"
            out.append(Check(f"{cid}.k{k}.{u}", "smatrix", f"A_{k}({group})",
                             {"k": k, "generator": u, "weight": list(w.as_tuple())}, 0, run,
                             note="lhs/rhs: total edge weight of graph / Verlinde block"))
    for k in range(1, 13):
        def run(k=k):
            s = modular.smatrix(k)
            pairs = []
            for i, w in enumerate(s.weights):
                ref = float(s.matrix[0, i])
                for mode in ("cosine", "jacobian", "kac-weyl"):
                    pairs.append((modular.psi_star(k, w, mode), ref))
            return _max_diff(pairs)
        out.append(Check(f"C04.psi.k{k:02d}", "smatrix", f"Sp2 level {k}", {"k": k}, 1e-10, run,
                         note="cosine, Jacobian and Kac-Weyl forms against S_{0,w}"))

    def printed_jacobian():
        pairs = []
        for k in range(1, 13):
            for w in graphs.sp2_alcove(k):
                pairs.append((modular.psi_star(k, w, "jacobian", "printed")
                              / modular.psi_star(k, w, "cosine"), -1.0))
        return _max_diff(pairs)

    def printed_kac_weyl():
        pairs = []
        for k in range(1, 13):
            for w in graphs.sp2_alcove(k):
                pairs.append((modular.psi_star(k, w, "kac-weyl", "printed")
                              / modular.psi_star(k, w, "cosine"), 2.0))
        return _max_diff(pairs)

    out.append(Check("C04x.psi-printed.jacobian-sign", "smatrix", "Sp2 k<=12", {"k_max": 12}, 1e-10,
                     printed_jacobian, documented=True,
                     note="printed -J/(8 kappa pi^2) is exactly -psi_*; ratio asserted = -1"))
    out.append(Check("C04x.psi-printed.kac-weyl-norm", "smatrix", "Sp2 k<=12", {"k_max": 12}, 1e-10,
                     printed_kac_weyl, documented=True,
                     note="printed prefactor 16 is twice the normalised 8; ratio asserted = 2"))
    return out


# criteria 5 and 9: geometry ----------------------------------------------------

def _geometry_checks():
    t1, t2 = _random_points(1000)
    x, y, z = (char_fund(u, (t1, t2)) for u in "xyz")

    def theta_vs_sine():
        return _rel_max(zip(weyl.jacobian_xy((t1, t2)), weyl.jacobian_xy_sine((t1, t2))))

    def theta_vs_factored():
        a = weyl.jacobian_xy((t1, t2)) ** 2
        b = weyl.jacobian_xy_squared_from_xy(x, y)
        scale = 16 * weyl.PI4 * 64
        return _rel_max(zip(a / scale, b / scale))

    def yz_sine():
        return _rel_max(zip(weyl.jacobian_yz((t1, t2)), weyl.jacobian_yz_sine((t1, t2))))

    def yz_relation():
        a = np.abs(weyl.jacobian_yz((t1, t2)))
        b = 2 * np.sqrt(np.maximum(z + y + 1, 0)) * np.abs(weyl.jacobian_xy((t1, t2)))
        scale = 128 * weyl.PI2
        return _rel_max(zip(a / scale, b / scale))

    def printed_j2():
        # printed factor (4y - x^2 - 4) flips the sign of the whole product
        a = weyl.jacobian_xy((t1, t2)) ** 2
        printed = 16 * weyl.PI4 * (y + 2 * x + 3) * (y - 2 * x + 3) * (4 * y - x ** 2 - 4)
        keep = a > 1e-6 * np.max(a)
        return _max_diff(zip(printed[keep] / a[keep], np.full(int(keep.sum()), -1.0)))

    pts = {"points": 1000, "seed": SEED}
    out = [
        Check("C05.jacobian.xy-theta-vs-sine", "geometry", "J_xy", pts, 1e-8, theta_vs_sine),
        Check("C05.jacobian.xy-theta-vs-factored", "geometry", "J_xy", pts, 1e-8, theta_vs_factored,
              note="uses (x^2+4-4y); relative to 1024 pi^4"),
        Check("C05.jacobian.yz-theta-vs-sine", "geometry", "J_yz", pts, 1e-8, yz_sine),
        Check("C05.jacobian.yz-relation", "geometry", "J_yz = 2 sqrt(z+y+1) J_xy", pts, 1e-8,
              yz_relation),
        Check("C05x.jacobian.printed-J2-sign", "geometry", "J_xy^2 printed", pts, 1e-8, printed_j2,
              documented=True, note="printed factor (4y-x^2-4): product equals -J^2; ratio asserted = -1"),
    ]

    def support(theta, expected):
        def run():
            n = measures.d8_orbit_measure(*theta).support_size()
            return n, expected, abs(n - expected)
        return run

    third = Fraction(1, 7)
    cases = [("C09.orbit.origin", (0, 0), 2), ("C09.orbit.half", (Fraction(1, 2), Fraction(1, 2)), 2),
             ("C09.orbit.line", (third, Fraction(1, 2) - third), 8),
             ("C09.orbit.generic", (Fraction(1, 20), Fraction(2, 20)), 16)]
    for cid, theta, expected in cases:
        out.append(Check(cid, "geometry", "d^(theta)", {"theta": [_rat(t) for t in theta]}, 0,
                         support(theta, expected)))

    def partner():
        mu = measures.d8_orbit_measure(Fraction(1, 20), Fraction(2, 20))
        hit = TorusPoint(Fraction(8, 20), Fraction(9, 20)) in mu.support
        return int(hit), 1, int(not hit)
    out.append(Check("C09.orbit.e7-partner", "geometry", "d^(1/20,2/20)",
                     {"theta": [[1, 20], [1, 10]], "partner": [[2, 5], [9, 20]]}, 0, partner))
    return out


# criteria 6 and 11: A series -------------------------------------------------

def _a_checks():
    out = []
    for k in range(1, 9):
        for group, model, pair in (("Sp2", "A_Sp2", "xy"), ("SO5", "A_SO5", "yz")):
            def run(k=k, group=group, model=model, pair=pair):
                mu = measures.measure_for(f"{model}({k})")
                g1, g2 = graphs.a_graph(group, k, pair[0]), graphs.a_graph(group, k, pair[1])
                return _max_diff((measures.measure_cross_moment(mu, pair, m, n),
                                  graphs.graph_cross_moment(g1, g2, m, n))
                                 for m in range(7) for n in range(7 - m))
            out.append(Check(f"C06.{model}.k{k}", "a-series", f"{model}({k})",
                             {"k": k, "pair": pair, "max_order": 6}, 1e-6, run))

        def printed_so5(k=k):
            kappa = k + 3
            full = measures.measure_for(f"A_SO5({k})", variant="printed").mass()
            line = math.fsum(float(weyl.jacobian_xy_sine(TorusPoint(Fraction(j, 2 * kappa),
                                                                     Fraction(kappa - j, 2 * kappa)))) ** 2
                             for j in range(1, k)) / (64 * kappa ** 2 * weyl.PI4)
            return full - 1.0, line, abs(full - 1.0 - line)
        out.append(Check(f"C06x.A_SO5-printed.k{k}", "a-series", f"A_SO5({k}) printed",
                         {"k": k}, 1e-10, printed_so5, documented=k >= 2,
                         note="correction-line atoms add mass sum_j J^2/(64 kappa^2 pi^4); asserted"
                         if k >= 2 else "no correction-line atoms at k = 1"))

    for group, pair in (("Sp2", "xy"), ("SO5", "yz")):
        def run(group=group, pair=pair):
            mu = measures.measure_for("A_infty", grid=400)
            return _max_diff((measures.measure_cross_moment(mu, pair, m, n),
                              graphs.a_infty_cross_moment(group, m, n))
                             for m in range(9) for n in range(9 - m))
        out.append(Check(f"C11.A_infty.{group}", "a-series", f"A_infty({group})",
                         {"pair": pair, "grid": 400, "max_order": 8}, 1e-6, run))
    return out


# criterion 7: D series -------------------------------------------------------

def _d_checks():
    out = []
    for k in range(2, 9):
        def moments(k=k):
            mu = measures.measure_for(f"D({k})")
            data = modular.eigendata(f"D({k})")
            return _max_diff((measures.measure_cross_moment(mu, "xy", m, n),
                              modular.exponent_sum_moment(data, "xy", m, n))
                             for m in range(7) for n in range(7 - m))

        def mass(k=k):
            w = modular.eigendata(f"D({k})").total_weight()
            return w, 1.0, abs(w - 1.0)

        def printed(k=k):
            kappa = k + 3
            got = modular.eigendata(f"D({k})", "printed").total_weight()
            expect = 1 - 2 / kappa if k % 2 == 0 else 1 + 2 / kappa
            return got, expect, abs(got - expect)

        out.append(Check(f"C07.D.k{k}.moments", "d-series", f"D({k})",
                         {"k": k, "pair": "xy", "max_order": 6}, 1e-8, moments))
        out.append(Check(f"C07.D.k{k}.mass", "d-series", f"D({k})", {"k": k}, 1e-10, mass))
        out.append(Check(f"C07x.D-printed.k{k}.mass", "d-series", f"D({k}) printed", {"k": k}, 1e-10,
                         printed, documented=True,
                         note="printed fixed-point weights give 1 -/+ 2/kappa for k even/odd"))
    return out


# criterion 8: exceptional ----------------------------------------------------

_E_MASS = {"E3": 1.0, "E3M": 1.5, "E7": 1.0, "E7M": 1.0, "E8": 1.0, "E12": 19 / 15}


def _e_checks():
    out = []
    for name, mass in _E_MASS.items():
        def moments(name=name):
            mu = measures.measure_for(name)
            data = modular.eigendata(name)
            return _max_diff((measures.measure_cross_moment(mu, pair, m, n),
                              modular.exponent_sum_moment(data, pair, m, n))
                             for pair in ("xy", "yz") for m in range(7) for n in range(7 - m))

        def total(name=name, mass=mass):
            w = modular.eigendata(name).total_weight()
            return w, mass, abs(w - mass)

        out.append(Check(f"C08.{name}.moments", "exceptional", name,
                         {"pairs": ["xy", "yz"], "max_order": 6}, 1e-8, moments))
        documented = mass != 1.0
        out.append(Check(f"C08.{name}.mass", "exceptional", name, {}, 1e-10, total,
                         documented=documented,
                         note="table weights sum to this value, not 1; reported, not rescaled"
                         if documented else ""))

    def vieta():
        a, _ = modular.e8_roots()
        c = modular.E8_A_POLY
        exact = 2 * Fraction(-c[1], c[0])
        return 2 * math.fsum(a), float(exact), abs(2 * math.fsum(a) - float(exact))
    out.append(Check("C08.E8.a-part-vieta", "exceptional", "E8", {"expected": "6/11"}, 1e-12, vieta,
                     note="2 * sum of a_i from roots vs Vieta"))

    def b_interp():
        _, b = modular.e8_roots()
        part = math.fsum(1 / (11 * v) for v in b)
        return part, 5 / 11, abs(part - 5 / 11)
    out.append(Check("C08.E8.b-part-1/(11b)", "exceptional", "E8", {"expected": "5/11"}, 1e-12, b_interp,
                     note="b-line weights read as 1/(11 b_i)"))

    def e8_printed():
        _, b = modular.e8_roots()
        got = modular.eigendata("E8", "printed").total_weight()
        a, _ = modular.e8_roots()
        expect = 2 * math.fsum(a) + 11 * math.fsum(b)
        return got, expect, abs(got - expect)
    out.append(Check("C08x.E8-printed.mass", "exceptional", "E8 printed", {}, 1e-9, e8_printed,
                     documented=True, note="printed 11 b_i weights give mass 6/11 + 121"))

    def printed_measure(name, expect_mass):
        def run():
            got = measures.measure_for(name, variant="printed").mass()
            return got, expect_mass, abs(got - expect_mass)
        return run
    # E3: printed 1/384 pi^2 on d6 x d6 leaves that part with 1/64 of its mass
    r3 = math.sqrt(3)
    e3_orbits = 2 * ((3 - r3) / 24 + (3 + r3) / 24)
    out.append(Check("C08x.E3-printed.mass", "exceptional", "E3 printed", {}, 1e-10,
                     printed_measure("E3", e3_orbits + 0.5 / 36), documented=True,
                     note="printed 1/(384 pi^2) on d6 x d6 should be 3/(32 pi^2)"))
    out.append(Check("C08x.E3M-printed.mass", "exceptional", "E3M printed", {}, 1e-10,
                     printed_measure("E3M", 2 * e3_orbits + 0.5 / 36), documented=True,
                     note="printed 1/(384 pi^2) on d6 x d6 should be 3/(32 pi^2)"))
    out.append(Check("C08x.E7M-printed.mass", "exceptional", "E7M printed", {}, 1e-10,
                     printed_measure("E7M", 0.5), documented=True,
                     note="printed 1/(80 pi^2) is half the 1/(40 pi^2) the table needs"))
    return out


# criterion 10: weights ---------------------------------------------------------

def _weight_checks():
    out = []
    combos = [(f, u) for f in weights.FAMILIES for u in "xyz"]
    oracle = {
        "T2": lambda u, m: graphs.moment_multinomial(u, m),
        "Haar": lambda u, m: graphs.apex_moment("SO5" if u == "z" else "Sp2", u, m),
    }
    for fam, u in combos:
        def mass(fam=fam, u=u):
            v = weights.weight_for(fam, u).mass()
            return v, 1.0, abs(v - 1.0)

        def chain(fam=fam, u=u):
            mo = weights.weight_for(fam, u).moments(6)
            return _max_diff((mo[m], oracle[fam](u, m)) for m in range(7))
        out.append(Check(f"C10.{fam}-{u}.mass", "weights", f"J_{u}^{fam}", {}, 1e-6, mass))
        out.append(Check(f"C10.{fam}-{u}.moments", "weights", f"J_{u}^{fam}", {"max_order": 6}, 1e-5,
                         chain))

    def shift():
        ys = np.linspace(-3, 5, 52)[1:-1]
        ys = ys[np.abs(ys - 1) > 1e-9]
        return _max_diff((weights.jy_t2_quad(v), weights.jx_t2(v - 1)) for v in ys[:50])
    out.append(Check("C10.T2-y.shift-identity", "weights", "J_y^T2(y) = J_x^T2(y-1)", {"points": 50},
                     1e-8, shift, note="lhs by slice quadrature, rhs by the K formula"))

    def continuity(fn, at):
        def run():
            h = 1e-7
            return fn(at - h), fn(at + h), abs(fn(at - h) - fn(at + h))
        return run
    out.append(Check("C10.T2-x.continuity-0", "weights", "J_x^T2", {"at": 0}, 1e-6,
                     continuity(weights.jx_t2, 0.0),
                     note="both K branches at x = -/+ 1e-7; the common value diverges like log|x|"))
    out.append(Check("C10.Haar-y.continuity-1", "weights", "J_y^Sp2", {"at": 1}, 1e-6,
                     continuity(lambda t: weights.jy_haar_raw(t) / (16 * weyl.PI4), 1.0)))
    out.append(Check("C10.Haar-x.continuity-0", "weights", "J_x^Sp2", {"at": 0}, 1e-6,
                     continuity(lambda t: weights.jx_haar_raw(t) / (16 * weyl.PI4), 0.0)))

    def closed_vs_quad(closed, quad, pts):
        def run():
            return _rel_max((closed(t), quad(t)) for t in pts)
        return run
    xs = [float(v) for v in np.linspace(-3.95, 3.95, 40) if abs(v) > 1e-9]
    ys = [float(v) for v in np.linspace(-2.95, 4.95, 40) if abs(v - 1) > 1e-9]
    out.append(Check("C10.T2-x.closed-vs-quadrature", "weights", "J_x^T2", {"points": len(xs)}, 1e-8,
                     closed_vs_quad(weights.jx_t2, weights.jx_t2_quad, xs)))
    out.append(Check("C10.Haar-x.closed-vs-quadrature", "weights", "J_x^Sp2", {"points": len(xs)},
                     1e-8, closed_vs_quad(weights.jx_haar_raw, weights.jx_haar_quad, xs),
                     note="K coefficient 16"))
    out.append(Check("C10.Haar-y.closed-vs-quadrature", "weights", "J_y^Sp2", {"points": len(ys)},
                     1e-8, closed_vs_quad(weights.jy_haar_raw, weights.jy_haar_quad, ys)))

    def second_form():
        pts = [float(v) for v in np.linspace(-3.9, -0.1, 20)]
        return _max_diff((weights.jx_t2_second_form(t, "principal") / weights.jx_t2(t), -1.0)
                         for t in pts)
    out.append(Check("C10x.T2-x.second-form-branch", "weights", "J_x^T2 printed second form",
                     {"points": 20}, 1e-12, second_form, documented=True,
                     note="needs v^(1/2) = (x+4)/(x-4); the positive root gives -J_x^T2"))

    def printed_mass(u, expect):
        def run():
            v = weights.weight_Haar(u, "printed").mass()
            return v, expect, abs(v - expect)
        return run
    hx = weights.Weight1D("Haar-x-printed", -4.0, 4.0,
                          lambda t: weights.jx_haar_raw(t, "printed") / (16 * weyl.PI4), (0.0,))
    # independent expectation: printed = corrected + 32 x K(.) pi^2/15 (4 -/+ x) / 16pi^4
    delta = weights.Weight1D("delta", -4.0, 4.0,
                             lambda t: (weights.jx_haar_raw(t, "printed") - weights.jx_haar_raw(t))
                             / (16 * weyl.PI4), (0.0,))
    out.append(Check("C10x.Haar-x.printed-mass", "weights", "J_x^Sp2 printed", {}, 1e-8,
                     lambda: (hx.mass(), 1.0 + delta.mass(), abs(hx.mass() - 1.0 - delta.mass())),
                     documented=True,
                     note="K coefficient 12 instead of 16; mass 1 + the integral of the difference"))
    out.append(Check("C10x.Haar-z.printed-mass", "weights", "J_z^Sp2 printed", {}, 1e-8,
                     printed_mass("z", 2.0), documented=True,
                     note="prefactor 1/(8 pi^4) doubles the 1/(16 pi^4) of the derivation"))
    return out


# registry and runner -----------------------------------------------------------

_BUILDERS = {
    "moments": _moment_checks,
    "smatrix": _smatrix_checks,
    "geometry": _geometry_checks,
    "a-series": _a_checks,
    "d-series": _d_checks,
    "exceptional": _e_checks,
    "weights": _weight_checks,
}


def registry(suite: str = "all") -> list[Check]:
    if suite not in SUITES:
        raise ValueError(f"suite must be one of {SUITES}")
    names = list(_BUILDERS) if suite == "all" else [suite]
    checks = [c for name in names for c in _BUILDERS[name]()]
    checks.sort(key=lambda c: c.check_id)
    ids = [c.check_id for c in checks]
    if len(ids) != len(set(ids)):
        raise AssertionError("duplicate check ids")
    return checks


def _evaluate(check: Check, tol: float) -> Result:
    try:
        lhs, rhs, err = check.run()
        err = float(err)
        ok = math.isfinite(err) and err <= tol
        note = check.note
    except Exception as exc:  # a crashing check is a failing check
        lhs = rhs = err = math.nan
        ok = False
        note = f"{type(exc).__name__}: {exc}"
    if not ok:
        status = "fail"
    else:
        status = "discrepancy-documented" if check.documented else "pass"
    return Result(check.check_id, check.model, check.parameters, lhs, rhs, err, tol, status, note)


def run_suite(suite: str = "all", tol=None, workers: int | None = None,
              env: dict | None = None) -> VerificationReport:
    return run_checks(registry(suite), tol, workers, env)


def run_checks(checks: list[Check], tol=None, workers: int | None = None,
               env: dict | None = None) -> VerificationReport:
    """Evaluate checks in a thread pool; the report is ordered by check id."""
    overrides = resolve_tolerances(tol, env)
    tols = [_tolerance_for(c, overrides) for c in checks]
    workers = workers or min(8, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_evaluate, checks, tols))
    return VerificationReport(sorted(results, key=lambda r: r.check_id))


__all__ = ["Check", "Result", "SUITES", "TOL_ENV", "VerificationReport", "parse_tolerances", "registry",
           "resolve_tolerances", "run_checks", "run_suite"]
