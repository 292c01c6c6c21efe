"""The Weyl group D8 on the torus, the maps Psi onto the character domains, and Jacobians."""

from __future__ import annotations

import math

import numpy as np

from .torus import TWO_PI, TorusPoint, angles, char_fund

PI2 = math.pi ** 2
PI4 = math.pi ** 4
DOMAIN_TOL = 1e-9

IDENTITY = ((1, 0), (0, 1))
T2 = ((0, 1), (1, 0))
T4 = ((0, 1), (-1, 0))


class DomainError(ValueError):
    """A point lies outside a character domain by more than the tolerance."""


def matmul(g, h):
    return tuple(
        tuple(sum(g[i][k] * h[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


def _generate(gens):
    group = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = matmul(a, g)
                if b not in group:
                    group.add(b)
                    nxt.append(b)
        frontier = nxt
    return tuple(sorted(group))


D8 = _generate((T2, T4))


def d8_act(g, p: TorusPoint) -> TorusPoint:
    (a, b), (c, d) = g
    return TorusPoint(a * p.theta1 + b * p.theta2, c * p.theta1 + d * p.theta2)


def d8_orbit(p: TorusPoint) -> frozenset[TorusPoint]:
    return frozenset(d8_act(g, p) for g in D8)


def canonical(p: TorusPoint) -> TorusPoint:
    """Lexicographically least point of the orbit; the fundamental-domain representative."""
    return min(d8_orbit(p))


def in_fundamental_domain(p: TorusPoint) -> bool:
    return canonical(p) == p


# Jacobians ---------------------------------------------------------------

def jacobian_xy(p):
    """det d(x,y)/d(theta1,theta2) in the cosine form."""
    t1, t2 = angles(p)
    c = np.cos
    return 8 * PI2 * (c(TWO_PI * (t1 + 2 * t2)) + c(TWO_PI * (2 * t1 - t2))
                      - c(TWO_PI * (2 * t1 + t2)) - c(TWO_PI * (t1 - 2 * t2)))


def jacobian_xy_sine(p):
    t1, t2 = angles(p)
    s = np.sin
    return -64 * PI2 * s(TWO_PI * t1) * s(TWO_PI * t2) * s(math.pi * (t1 + t2)) * s(math.pi * (t1 - t2))


def jacobian_yz(p):
    """det d(y,z)/d(theta1,theta2) in the cosine form."""
    t1, t2 = angles(p)
    c = np.cos
    return 16 * PI2 * (c(TWO_PI * (t1 - 3 * t2)) + c(TWO_PI * (3 * t1 + t2))
                       - c(TWO_PI * (t1 + 3 * t2)) - c(TWO_PI * (3 * t1 - t2)))


def jacobian_yz_sine(p):
    t1, t2 = angles(p)
    s = np.sin
    return 128 * PI2 * s(TWO_PI * t1) * s(TWO_PI * t2) * s(TWO_PI * (t1 + t2)) * s(TWO_PI * (t1 - t2))


def xy_factors(x, y):
    return (y + 2 * x + 3, y - 2 * x + 3, x * x + 4 - 4 * y)


def yz_factors(y, z):
    return (z - 3 * y + 5, z + y + 1, y * y + 2 * y + 5 - 4 * z)


def _checked_product(factors, where, tol):
    for f in factors:
        if np.any(np.asarray(f) < -tol):
            raise DomainError(f"{where}: boundary factor {float(np.min(f)):.3g} < 0")
    prod = factors[0] * factors[1] * factors[2]
    return np.maximum(prod, 0.0)


def in_domain_xy(x, y, tol=DOMAIN_TOL) -> bool:
    return all(f >= -tol for f in xy_factors(x, y))


def in_domain_yz(y, z, tol=DOMAIN_TOL) -> bool:
    return all(f >= -tol for f in yz_factors(y, z))


def jacobian_xy_squared_from_xy(x, y):
    """16 pi^4 (y+2x+3)(y-2x+3)(x^2+4-4y), no domain check."""
    a, b, c = xy_factors(x, y)
    return 16 * PI4 * a * b * c


def jacobian_xy_from_xy(x, y, tol=DOMAIN_TOL):
    """|J_{x,y}| as a function on the domain D_{x,y}."""
    return 4 * PI2 * np.sqrt(_checked_product(xy_factors(x, y), f"({x}, {y}) not in D_xy", tol))


def jacobian_yz_from_yz(y, z, tol=DOMAIN_TOL):
    """|J_{y,z}| as a function on the domain D_{y,z}."""
    return 8 * PI2 * np.sqrt(_checked_product(yz_factors(y, z), f"({y}, {z}) not in D_yz", tol))


def jacobian_xy_from_yz(y, z, tol=DOMAIN_TOL):
    """|J_{x,y}| expressed in the (y,z) coordinates: |J_{y,z}| / (2 sqrt(z+y+1))."""
    a, _, c = yz_factors(y, z)
    if np.any(np.asarray(a) < -tol) or np.any(np.asarray(c) < -tol):
        raise DomainError(f"({y}, {z}) not in D_yz")
    return 4 * PI2 * np.sqrt(np.maximum(a * c, 0.0))


def psi_map(pair: str, p):
    """(chi_u, chi_v) at p for pair 'xy' or 'yz'."""
    if pair not in ("xy", "yz"):
        raise ValueError(f"pair must be 'xy' or 'yz', got {pair!r}")
    return char_fund(pair[0], p), char_fund(pair[1], p)
