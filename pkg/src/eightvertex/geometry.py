"""Minkowski decomposition of the region U into the open simplex V and the triangle cone W.

U = {u > 0 : each coordinate < 1 + the other two, x + y + z > 1}
V = {v > 0 : x + y + z = 1}
W = {w > 0 : each coordinate < the sum of the other two}

Exact (Fraction) input gives an exact decomposition; float input gives one
accurate to rounding.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .scalar import is_exact

FLOAT_TOL = 1e-12


class RegionError(ValueError):
    pass


@dataclass(frozen=True)
class DecompositionResult:
    v: tuple
    w: tuple
    margin: object
    branch: str

    def to_json(self) -> dict:
        from .scalar import format_scalar

        def render(x):
            return format_scalar(x) if is_exact(x) else float(x)

        return {"v": [render(x) for x in self.v], "w": [render(x) for x in self.w],
                "margin": render(self.margin), "branch": self.branch}


def region_slacks(u) -> list:
    """Slacks of the seven closure(U) constraints; all >= 0 iff u lies in closure(U)."""
    x, y, z = u
    return [x, y, z, y + z + 1 - x, x + z + 1 - y, x + y + 1 - z, x + y + z - 1]


def v_slacks(v) -> list:
    return list(v)


def w_slacks(w) -> list:
    x, y, z = w
    return [y + z - x, x + z - y, x + y - z]


def in_closure(u, tol=0.0) -> bool:
    return all(s >= -tol for s in region_slacks(u))


def _tetrahedron(u) -> bool:
    x, y, z = u
    return -x + y + z <= 1 and x - y + z <= 1 and x + y - z <= 1 and x + y + z >= 1


def _halfplanes(u, one):
    """Constraints alpha*v1 + beta*v2 + gamma >= 0 on (v1, v2), with v3 = 1 - v1 - v2."""
    x, y, z = u
    zero = 0 * one
    return [
        (one, zero, zero),                       # v1 >= 0
        (zero, one, zero),                       # v2 >= 0
        (-one, -one, one),                       # v3 >= 0
        # w = (x - v1, y - v2, z - 1 + v1 + v2)
        (2 * one, zero, y + z - x - one),        # w2 + w3 - w1
        (zero, 2 * one, x + z - y - one),        # w1 + w3 - w2
        (-2 * one, -2 * one, x + y - z + one),   # w1 + w2 - w3
    ]


def _polygon_vertices_exact(u):
    # Scale by the common denominator so every test is integer arithmetic.
    den = math.lcm(*(t.denominator for t in u))
    scaled = tuple(int(t * den) for t in u)
    lines = _halfplanes(scaled, den)
    pts = set()
    for (a1, b1, c1), (a2, b2, c2) in itertools.combinations(lines, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        n1 = -c1 * b2 + c2 * b1
        n2 = -a1 * c2 + a2 * c1
        if det < 0:
            det, n1, n2 = -det, -n1, -n2
        # Every coefficient carries the same factor den, so (n1, n2) / det is the vertex.
        if all(a * n1 + b * n2 + c * det >= 0 for a, b, c in lines):
            pts.add((Fraction(n1, det), Fraction(n2, det)))
    return sorted(pts)


def _polygon_vertices_float(u):
    lines = _halfplanes(u, 1.0)
    tol = 1e-12 * max(1.0, *(abs(t) for t in u))
    pts = []
    for (a1, b1, c1), (a2, b2, c2) in itertools.combinations(lines, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        v1 = (-c1 * b2 + c2 * b1) / det
        v2 = (-a1 * c2 + a2 * c1) / det
        if all(a * v1 + b * v2 + c >= -tol for a, b, c in lines):
            if not any(abs(v1 - p) <= tol and abs(v2 - q) <= tol for p, q in pts):
                pts.append((v1, v2))
    return pts


def decompose_minkowski(u) -> DecompositionResult:
    """Split u in closure(U) as v + w with v on the simplex and w in the triangle cone.

    Inside the tetrahedron cut out by the three ``x + y - z <= 1`` type
    constraints, ``w`` is taken along the diagonal (1, 1, 1).  Elsewhere ``v`` is
    the centroid of the vertices of the feasible polygon of simplex points,
    which keeps ``v`` away from the simplex boundary whenever possible.
    """
    exact = all(is_exact(t) for t in u)
    u = tuple(Fraction(t) for t in u) if exact else tuple(float(t) for t in u)
    tol = 0 if exact else FLOAT_TOL * max(1.0, *(abs(t) for t in u))
    if not in_closure(u, tol):
        raise RegionError("not in Minkowski region")
    if _tetrahedron(u):
        lam = (sum(u) - 1) / 3
        v = tuple(t - lam for t in u)
        w = (lam, lam, lam)
        branch = "diagonal"
    else:
        pts = _polygon_vertices_exact(u) if exact else _polygon_vertices_float(u)
        if not pts:
            raise RegionError("not in Minkowski region")
        v1 = sum(p for p, _ in pts) / len(pts)
        v2 = sum(q for _, q in pts) / len(pts)
        v = (v1, v2, 1 - v1 - v2)
        w = tuple(t - s for t, s in zip(u, v))
        branch = "polygon"
    margin = min(v_slacks(v) + w_slacks(w))
    if not exact:
        w = tuple(t - s for t, s in zip(u, v))
    if margin < -tol or (exact and sum(v) != 1):
        raise AssertionError(f"decomposition failed its own check (margin {margin})")
    return DecompositionResult(v, w, margin, branch)


def random_closure_point(rng, interior_only=False):
    """Rejection-sample a point of closure(U) in the box [0, 4]^3 (exact rationals)."""
    while True:
        u = tuple(Fraction(rng.randint(0, 4000), 1000) for _ in range(3))
        slacks = region_slacks(u)
        if interior_only and min(slacks) > 0:
            return u
        if not interior_only and min(slacks) >= 0:
            return u
