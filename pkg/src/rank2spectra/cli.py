"""Command-line front end: rank2-spectra {graph, moments, smatrix, measure, weights, verify}."""

from __future__ import annotations

import csv
import io
import json
import sys

import click
import numpy as np

from . import graphs, measures, modular, verify, weights
from .torus import char_fund

FORMATS = click.Choice(["json", "csv"])


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


@click.group()
def main():
    """Spectral measures for Sp(2) and SO(5) fusion graphs."""


def _merge(positional, names, options):
    """Fill flag values from positional arguments; a flag and a positional for the same slot must agree."""
    if len(positional) > len(names):
        raise click.UsageError(f"expected at most {len(names)} positional arguments: {' '.join(names)}")
    merged = dict(options)
    for name, value in zip(names, positional):
        if merged.get(name) is not None and str(merged[name]) != value:
            raise click.UsageError(f"conflicting values for {name}: {merged[name]} and {value}")
        merged[name] = value
    missing = [n for n in names if merged.get(n) is None]
    if missing:
        raise click.UsageError(f"missing {', '.join(missing)}")
    return merged


def _convert(value, kind: click.ParamType, name: str):
    try:
        return kind.convert(value, None, None)
    except click.BadParameter as exc:
        raise click.UsageError(f"invalid {name}: {exc.message}") from None


@main.command()
@click.argument("positional", nargs=-1, metavar="[GROUP LEVEL GENERATOR]")
@click.option("--group", default=None, help="Sp2 or SO5")
@click.option("--level", default=None, help="level k >= 1")
@click.option("--generator", default=None, help="x, y (Sp2) or y, z (SO5)")
@click.option("--format", "fmt", type=FORMATS, default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def graph(positional, group, level, generator, fmt, out):
    """Export the truncated fusion graph A_k(G) for one generator."""
    args = _merge(positional, ("group", "level", "generator"),
                  {"group": group, "level": level, "generator": generator})
    group = _convert(args["group"], click.Choice(sorted(graphs.GROUP_GENERATORS)), "group")
    level = _convert(args["level"], click.IntRange(min=1), "level")
    generator = args["generator"]
    if generator not in graphs.GROUP_GENERATORS[group]:
        raise click.UsageError(f"generator {generator} is not available for {group}; "
                               f"choose from {', '.join(graphs.GROUP_GENERATORS[group])}")
    g = graphs.a_graph(group, level, generator)
    if fmt == "json":
        _emit(json.dumps(g.to_json(), indent=2) + "\n", out)
    else:
        rows = [[*g.vertices[i], *g.vertices[j], v] for (i, j), v in sorted(g.adjacency.items())]
        _emit(_csv(rows, ["from_l1", "from_l2", "to_l1", "to_l2", "multiplicity"]), out)


def _lebesgue_moment(pair: str, m: int, n: int, grid: int) -> float:
    t = np.arange(grid) / grid
    t1, t2 = np.meshgrid(t, t, indexing="ij")
    u, v = pair if len(pair) == 2 else (pair, pair)
    vals = char_fund(u, (t1, t2)) ** m * (char_fund(v, (t1, t2)) ** n if len(pair) == 2 else 1)
    return float(np.mean(vals))


@main.command()
@click.argument("positional", nargs=-1, metavar="[PAIR [MAX_ORDER]]")
@click.option("--pair", default=None, help="x, y, z alone or a pair xy, yz, xz")
@click.option("--max-order", default=None, help="largest m (or m + n for pairs), default 6")
@click.option("--grid", type=click.IntRange(min=8), default=64, show_default=True,
              help="torus grid for the quadrature column")
@click.option("--format", "fmt", type=FORMATS, default="csv", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def moments(positional, pair, max_order, grid, fmt, out):
    """Torus moments from the multinomial formula, walk DP, constant term and quadrature."""
    if max_order is None and len(positional) < 2:
        max_order = "6"
    args = _merge(positional, ("pair", "max_order"), {"pair": pair, "max_order": max_order})
    pair = _convert(args["pair"], click.Choice(["x", "y", "z", "xy", "yz", "xz"]), "pair")
    max_order = _convert(args["max_order"], click.IntRange(min=0, max=16), "max-order")
    rows = []
    if len(pair) == 1:
        for m in range(max_order + 1):
            a = graphs.moment_multinomial(pair, m)
            b = graphs.moment_walk_dp(pair, m)
            c = graphs.moment_constant_term(pair, m)
            q = _lebesgue_moment(pair, m, 0, grid)
            rows.append({"m": m, "n": 0, "multinomial": a, "walk_dp": b, "constant_term": c,
                         "quadrature": q, "agree": a == b == c and abs(q - a) < 1e-6 * max(1, a)})
    else:
        u, v = pair
        for m in range(max_order + 1):
            for n in range(max_order + 1 - m):
                b = graphs.cross_moment_walk_dp(u, v, m, n)
                c = graphs.moment_constant_term(u, m, v, n)
                q = _lebesgue_moment(pair, m, n, grid)
                rows.append({"m": m, "n": n, "multinomial": None, "walk_dp": b, "constant_term": c,
                             "quadrature": q, "agree": b == c and abs(q - b) < 1e-6 * max(1, b)})
    if fmt == "json":
        _emit(json.dumps({"pair": pair, "rows": rows}, indent=2) + "\n", out)
    else:
        header = list(rows[0])
        _emit(_csv([[("" if r[h] is None else r[h]) for h in header] for r in rows], header), out)


@main.command()
@click.option("--level", type=click.IntRange(min=1), required=True)
@click.option("--format", "fmt", type=FORMATS, default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def smatrix(level, fmt, out):
    """The level-k S-matrix of Sp(2), rows and columns in alcove order."""
    s = modular.smatrix(level)
    labels = [list(w.as_tuple()) for w in s.weights]
    if fmt == "json":
        body = {"level": level, "weights": labels, "matrix": s.matrix.tolist(),
                "unitarity_residual": s.unitarity_residual(), "symmetry_residual": s.symmetry_residual()}
        _emit(json.dumps(body, indent=2) + "\n", out)
    else:
        rows = [[f"{a[0]},{a[1]}", *map(repr, row)] for a, row in zip(labels, s.matrix.tolist())]
        _emit(_csv(rows, ["weight", *(f"{a[0]},{a[1]}" for a in labels)]), out)


@main.command()
@click.option("--model", required=True, help="A_Sp2(k), A_SO5(k), D(k), E3, E3M, E7, E7M, E8, E12 or A_infty")
@click.option("--pair", type=click.Choice(["xy", "yz", "xz"]), default=None)
@click.option("--variant", type=click.Choice(measures.VARIANTS), default="corrected", show_default=True)
@click.option("--grid", type=click.IntRange(min=8), default=measures.DEFAULT_GRID, show_default=True)
@click.option("--max-order", type=click.IntRange(min=0), default=None,
              help="also report cross moments up to this total order")
@click.option("--format", "fmt", type=FORMATS, default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def measure(model, pair, variant, grid, max_order, fmt, out):
    """Export a joint spectral measure (atoms, or the density grid for A_infty)."""
    try:
        mu = measures.measure_for(model, pair, variant, grid)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    if fmt == "csv":
        if isinstance(mu, measures.DensityMeasure2):
            raise click.UsageError("A_infty is a density; use --format json")
        _emit(mu.to_csv(), out)
        return
    body = mu.to_json()
    body["mass"] = mu.mass()
    if max_order is not None:
        body["moments"] = [{"m": m, "n": n, "value": measures.measure_cross_moment(mu, mu.pair, m, n)}
                           for m in range(max_order + 1) for n in range(max_order + 1 - m)]
    _emit(json.dumps(body, indent=2) + "\n", out)


@main.command("weights")
@click.argument("positional", nargs=-1, metavar="[FAMILY GENERATOR [SAMPLES]]")
@click.option("--family", default=None, help="T2 or Haar")
@click.option("--generator", default=None, help="x, y or z")
@click.option("--samples", default=None, help="number of sample points (>= 2, default 801)")
@click.option("--variant", type=click.Choice(["corrected", "printed"]), default="corrected",
              show_default=True, help="only affects the Haar family")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def weights_cmd(positional, family, generator, samples, variant, out):
    """Sample a one-dimensional weight on its interval as CSV."""
    names = ("family", "generator", "samples")
    if samples is None and len(positional) < 3:
        samples = "801"
    args = _merge(positional, names, {"family": family, "generator": generator, "samples": samples})
    family = _convert(args["family"], click.Choice(weights.FAMILIES), "family")
    generator = _convert(args["generator"], click.Choice(["x", "y", "z"]), "generator")
    samples = _convert(args["samples"], click.IntRange(min=2), "samples")
    w = weights.weight_for(family, generator, variant)
    _emit(w.to_csv(samples), out)


@main.command("verify")
@click.option("--suite", type=click.Choice(verify.SUITES), default="all", show_default=True)
@click.option("--tol", multiple=True,
              help="override tolerances: '1e-6' for all, or 'C06=1e-5' per check-id prefix")
@click.option("--format", "fmt", type=FORMATS, default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--workers", type=click.IntRange(min=1), default=None)
def verify_cmd(suite, tol, fmt, out, workers):
    """Run acceptance checks; exit status 1 if any check fails."""
    report = verify.run_suite(suite, list(tol) or None, workers)
    text = report.to_json() if fmt == "json" else report.to_csv()
    if out:
        _emit(text, out)
        for r in report.results:
            click.echo(f"{r.status:24s} {r.check_id}  err={float(r.abs_error):.3g} tol={r.tolerance:g}")
        counts = report.counts()
        click.echo(" ".join(f"{k}={v}" for k, v in counts.items()))
    else:
        _emit(text, None)
    sys.exit(1 if report.failed else 0)


if __name__ == "__main__":  # pragma: no cover
    main()
