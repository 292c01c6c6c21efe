"""Step sets, fusion graphs A_k(Sp(2)) and A_k(SO(5)), and exact moment oracles."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Iterable

from .torus import FUNDAMENTALS, Weight, char_fund_poly

GROUP_GENERATORS = {"Sp2": ("x", "y"), "SO5": ("y", "z")}
# generators as Sp(2) partitions

def unfolded_step_set(u: str) -> dict[tuple[int, int], int]:
    """Steps of the W-unfolded graph on Z^2: the monomials of the restricted character."""
    return char_fund_poly(u).coeffs


def multinomial(parts: Iterable[int]) -> int:
    parts = list(parts)
    if any(p < 0 for p in parts):
        return 0
    out = factorial(sum(parts))
    for p in parts:
        out //= factorial(p)
    return out


def moment_multinomial(u: str, m: int) -> int:
    """phi((v_Z^u)^m) via the closed multinomial sums."""
    if m < 0:
        raise ValueError("moment order must be nonnegative")
    if u == "x":
        if m % 2:
            return 0
        h = m // 2
        return sum(multinomial((k, k, h - k, h - k)) for k in range(h + 1))
    if u == "y":
        return sum(multinomial((k1, k1, k3, k3, m - 2 * k1 - 2 * k3))
                   for k1 in range(m // 2 + 1) for k3 in range((m - 2 * k1) // 2 + 1))
    if u == "z":
        return _moment_z(m)
    raise ValueError(f"unknown generator {u!r}")


def _moment_z(m: int) -> int:
    # free indices k1..k6, k9; p1, p2 are forced by the two return-to-origin constraints
    total = 0
    for k1 in range(m + 1):
        for k2 in range(m + 1 - k1):
            for k3 in range(m + 1 - k1 - k2):
                for k4 in range(m + 1 - k1 - k2 - k3):
                    base = k1 - k2
                    for k5 in range(m + 1 - k1 - k2 - k3 - k4):
                        p1 = base + k3 - k4 + k5
                        if p1 < 0:
                            continue
                        for k6 in range(m + 1):
                            p2 = base - k3 + k4 + k6
                            if p2 < 0:
                                continue
                            used = k1 + k2 + k3 + k4 + k5 + k6 + p1 + p2
                            if used > m:
                                break
                            for k9 in range(m - used + 1):
                                total += multinomial((k1, k2, k3, k4, k5, k6, p1, p2, k9, m - used - k9))
    return total


def cross_moment_walk_dp(u1: str, u2: str, m: int, n: int) -> int:
    """Number of closed walks on Z^2 using m steps from u1 and n steps from u2."""
    schedule = [unfolded_step_set(u1)] * m + [unfolded_step_set(u2)] * n
    reach = [max(abs(a) + abs(b) for a, b in s) for s in schedule]
    remaining = sum(reach)
    state = {(0, 0): 1}
    for steps, r in zip(schedule, reach):
        remaining -= r
        nxt: dict[tuple[int, int], int] = {}
        for (a, b), c in state.items():
            for (da, db), mult in steps.items():
                key = (a + da, b + db)
                if abs(key[0]) + abs(key[1]) > remaining:
                    continue  # cannot return to the origin
                nxt[key] = nxt.get(key, 0) + c * mult
        state = nxt
    return state.get((0, 0), 0)


def moment_walk_dp(u: str, m: int) -> int:
    return cross_moment_walk_dp(u, u, m, 0)


def moment_constant_term(u1: str, m: int, u2: str | None = None, n: int = 0) -> int:
    poly = char_fund_poly(u1) ** m
    if u2 is not None and n:
        poly = poly * char_fund_poly(u2) ** n
    return poly.constant_term()


# classical tensor-product rules, partition labels ----------------------------

def printed_product_rule(u: str, mu: tuple[int, int]) -> dict[tuple[int, int], int]:
    """chi_u * chi_mu read off the classical rules as printed (partitions; invalid terms dropped).

    The x and y rules agree with racah_speiser everywhere; the z rule does not at
    mu = (0,0), along mu2 = 0 for mu1 >= 2, and near mu1 = mu2.  Kept for comparison.
    """
    m1, m2 = mu
    if u == "x":
        terms = [(m1 + 1, m2), (m1 - 1, m2), (m1, m2 + 1), (m1, m2 - 1)]
    elif u == "y":
        terms = [(m1 + 1, m2 + 1), (m1 - 1, m2 - 1), (m1 + 1, m2 - 1), (m1 - 1, m2 + 1)]
        if m1 != m2:
            terms.append((m1, m2))
    elif u == "z":
        if m2 == 0:
            terms = [(m1, m2), (m1 - 2, m2), (m1 + 2, m2), (m1 - 1, m2 + 1), (m1 + 1, m2 + 1)]
        elif m1 == m2:
            terms = [(m1, m2), (m1 + 2, m2), (m1, m2 - 2), (m1 + 1, m2 - 1)]
        else:
            terms = [(m1, m2), (m1, m2), (m1 - 2, m2), (m1 + 2, m2), (m1, m2 - 2), (m1, m2 + 2),
                     (m1 - 1, m2 - 1), (m1 - 1, m2 + 1), (m1 + 1, m2 - 1), (m1 + 1, m2 + 1)]
    else:
        raise ValueError(f"unknown generator {u!r}")
    out: dict[tuple[int, int], int] = {}
    for t in terms:
        if t[1] < 0 or t[0] < t[1]:
            continue
        out[t] = out.get(t, 0) + 1
    return out


_RHO_EPS = (2, 1)  # rho of C2 in the epsilon (partition) basis


def _to_dominant(a: int, b: int):
    """Move (a, b) into a > b > 0 by a signed permutation; None if it lies on a wall."""
    sign = 1
    if a < 0:
        a, sign = -a, -sign
    if b < 0:
        b, sign = -b, -sign
    if a < b:
        a, b, sign = b, a, -sign
    if a == b or b == 0:
        return None
    return (a, b), sign


def product_rule(u: str, mu: tuple[int, int]) -> dict[tuple[int, int], int]:
    """chi_u * chi_mu in partition labels, by Racah-Speiser over the torus weights of rho_u."""
    out: dict[tuple[int, int], int] = {}
    for (a, b), mult in char_fund_poly(u).items():
        r = _to_dominant(mu[0] + a + _RHO_EPS[0], mu[1] + b + _RHO_EPS[1])
        if r is None:
            continue
        (c, d), sign = r
        key = (c - _RHO_EPS[0], d - _RHO_EPS[1])
        out[key] = out.get(key, 0) + sign * mult
    return {k: v for k, v in out.items() if v}


def sp2_alcove(k: int) -> list[Weight]:
    """P_+^{k,Sp(2)} = {l1 + l2 <= k}, ordered so that (0,0) comes first."""
    return [Weight(l1, l2) for l1 in range(k + 1) for l2 in range(k + 1 - l1)]


def so5_alcove(k: int) -> list[tuple[int, int]]:
    """P_+^{k,SO(5)} = {2 l1 + l2 <= k} in SO(5) Dynkin labels."""
    return [(a, b) for a in range(k // 2 + 1) for b in range(k + 1 - 2 * a)]


def so5_to_sp2(label: tuple[int, int]) -> Weight:
    return Weight(2 * label[0], label[1])


def sp2_to_so5(w: Weight) -> tuple[int, int]:
    if w.l1 % 2:
        raise ValueError(f"{w.as_tuple()} is not an SO(5) representation")
    return (w.l1 // 2, w.l2)


@dataclass(frozen=True)
class LabeledGraph:
    group: str
    level: int | None
    generator: str
    vertices: tuple[tuple[int, int], ...]
    adjacency: dict[tuple[int, int], int] = field(hash=False)
    root: int = 0

    @property
    def size(self) -> int:
        return len(self.vertices)

    def index(self, label) -> int:
        return self.vertices.index(tuple(label))

    def neighbours(self, i: int) -> dict[int, int]:
        return {j: v for (a, j), v in self.adjacency.items() if a == i}

    def row_sums(self) -> list[int]:
        sums = [0] * self.size
        for (i, _), v in self.adjacency.items():
            sums[i] += v
        return sums

    def dense(self):
        import numpy as np
        a = np.zeros((self.size, self.size), dtype=np.int64)
        for (i, j), v in self.adjacency.items():
            a[i, j] = v
        return a

    def apply(self, vec: list[int]) -> list[int]:
        out = [0] * self.size
        for (i, j), v in self.adjacency.items():
            if vec[j]:
                out[i] += v * vec[j]
        return out

    def is_symmetric(self) -> bool:
        return all(self.adjacency.get((j, i)) == v for (i, j), v in self.adjacency.items())

    def to_json(self) -> dict:
        edges = [[i, j, v] for (i, j), v in sorted(self.adjacency.items())]
        return {"group": self.group, "level": self.level, "generator": self.generator,
                "vertices": [list(v) for v in self.vertices], "edges": edges}


def a_graph(group: str, k: int, u: str) -> LabeledGraph:
    """The truncated fusion graph A_k(G) for generator u, labelled by G's Dynkin labels."""
    if group not in GROUP_GENERATORS:
        raise ValueError(f"group must be one of {sorted(GROUP_GENERATORS)}, got {group!r}")
    if u not in GROUP_GENERATORS[group]:
        raise ValueError(f"generator {u!r} is not available for {group}; "
                         f"use one of {GROUP_GENERATORS[group]}")
    if k < 1:
        raise ValueError("level must be >= 1")
    if group == "Sp2":
        sp_vertices = sp2_alcove(k)
        labels = [w.as_tuple() for w in sp_vertices]
    else:
        labels = so5_alcove(k)
        sp_vertices = [so5_to_sp2(v) for v in labels]
    index = {w.as_tuple(): i for i, w in enumerate(sp_vertices)}
    adjacency: dict[tuple[int, int], int] = {}
    for i, w in enumerate(sp_vertices):
        for mu, mult in product_rule(u, w.partition).items():
            folded = fold_to_alcove((mu[0] - mu[1], mu[1]), k)
            if folded is None:
                continue
            target, sign = folded
            j = index[target]
            adjacency[(i, j)] = adjacency.get((i, j), 0) + sign * mult
    adjacency = {key: v for key, v in adjacency.items() if v}
    if any(v < 0 for v in adjacency.values()):
        raise ArithmeticError(f"negative fusion multiplicity for {group} level {k} generator {u}")
    return LabeledGraph(group, k, u, tuple(labels), adjacency)


# simple roots of C2 in Dynkin labels (rows of the Cartan matrix); theta = 2 alpha1 + alpha2
_ALPHA = ((2, -1), (-2, 2))
_THETA = (2, 0)


def fold_to_alcove(lam: tuple[int, int], k: int):
    """Kac-Walton folding of a dominant weight into the level-k alcove.

    Returns (weight, sign) or None when lam + rho sits on a wall of the shifted affine
    Weyl group.  For the generators x and y every out-of-alcove term lands on the wall,
    so this reduces to dropping it; for z some terms reflect back with a minus sign.
    """
    kappa = k + 3
    h1, h2 = lam[0] + 1, lam[1] + 1
    sign = 1
    for _ in range(64):
        if h1 == 0 or h2 == 0 or h1 + h2 == kappa:
            return None
        if h1 + h2 > kappa:
            d = h1 + h2 - kappa
            h1, h2 = h1 - d * _THETA[0], h2 - d * _THETA[1]
        elif h1 < 0:
            h1, h2 = h1 - h1 * _ALPHA[0][0], h2 - h1 * _ALPHA[0][1]
        elif h2 < 0:
            h1, h2 = h1 - h2 * _ALPHA[1][0], h2 - h2 * _ALPHA[1][1]
        else:
            return (h1 - 1, h2 - 1), sign
        sign = -sign
    raise ArithmeticError(f"folding of {lam} at level {k} did not terminate")


def graph_cross_moment(g1: LabeledGraph, g2: LabeledGraph, m: int, n: int) -> int:
    """<G1^m G2^n e_root, e_root> in exact integer arithmetic."""
    if g1.vertices != g2.vertices:
        raise ValueError("graphs must share a vertex set")
    vec = [0] * g1.size
    vec[g1.root] = 1
    for _ in range(n):
        vec = g2.apply(vec)
    for _ in range(m):
        vec = g1.apply(vec)
    return vec[g1.root]


def apex_moment(group: str, u: str, m: int) -> int:
    """Closed m-walks at (0,0) on A_infinity, read off a level large enough not to truncate them."""
    g = a_graph(group, 2 * m + 2, u)
    return graph_cross_moment(g, g, m, 0)


def a_infty_cross_moment(group: str, m: int, n: int) -> int:
    """<G_u^m G_v^n e_0, e_0> on A_infinity(group); walks of length m+n never feel level 2(m+n)+2."""
    u, v = GROUP_GENERATORS[group]
    k = 2 * (m + n) + 2
    return graph_cross_moment(a_graph(group, k, u), a_graph(group, k, v), m, n)


__all__ = [
    "FUNDAMENTALS", "GROUP_GENERATORS", "LabeledGraph", "a_graph", "a_infty_cross_moment", "apex_moment",
    "cross_moment_walk_dp", "fold_to_alcove", "graph_cross_moment", "moment_constant_term", "moment_multinomial",
    "moment_walk_dp", "multinomial", "printed_product_rule", "product_rule", "so5_alcove", "so5_to_sp2", "sp2_alcove",
    "sp2_to_so5", "unfolded_step_set",
]
