"""Matchgates: signatures by perfect matchings, the product-inequality region, and synthesis.

A matchgate has vertices ``0..n-1``, weighted internal edges and four ordered
dangling edges.  A dangling edge assigned 1 covers its vertex, so the entry at
pattern ``x1x2x3x4`` is the weighted count of perfect matchings of the vertices
left uncovered.

Synthesis targets the even family

    M(f) = [[d1, 0, 0, a1], [0, b1, c1, 0], [0, c2, b2, 0], [a2, 0, 0, d2]]

with nonnegative entries obeying the four product inequalities
``a1 a2 <= b1 b2 + c1 c2 + d1 d2`` (and the three symmetric ones).  The odd
family is handled by flipping port 1.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .geometry import decompose_minkowski
from .scalar import all_exact, format_scalar, is_exact, parse_scalar, to_float
from .signature import PATTERNS, ConstraintFunction4, flip_bits, parity_check

MAX_VERTICES = 24
ROUNDTRIP_TOL = 1e-6
BOUNDARY_TOL = 1e-9

EVEN_POSITIONS = {
    "a1": 0b0011, "a2": 0b1100, "b1": 0b0110, "b2": 0b1001,
    "c1": 0b0101, "c2": 0b1010, "d1": 0b0000, "d2": 0b1111,
}
ODD_POSITIONS = {
    "a1": 0b0001, "a2": 0b1110, "b1": 0b0100, "b2": 0b1011,
    "c1": 0b0111, "c2": 0b1000, "d1": 0b0010, "d2": 0b1101,
}
NAMES = ("a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2")
CLASSES = ("a", "b", "c", "d")
# Flipping these ports moves the given class into the d slot.
CLASS_FLIP = {"a": 0b1100, "b": 0b1001, "c": 0b1010, "d": 0b0000}


class MatchgateError(ValueError):
    pass


class SynthesisError(ValueError):
    def __init__(self, message, residual=None):
        super().__init__(message if residual is None else f"{message} (residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class Matchgate:
    n: int
    edges: tuple
    dangling: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v), w) for u, v, w in self.edges))
        object.__setattr__(self, "dangling", tuple(int(v) for v in self.dangling))

    def validate(self) -> list[str]:
        problems = []
        if len(self.dangling) != 4:
            problems.append(f"need 4 dangling edges, got {len(self.dangling)}")
        for v in self.dangling:
            if not 0 <= v < self.n:
                problems.append(f"dangling vertex {v} out of range")
        for k, (u, v, w) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                problems.append(f"edge {k} has an endpoint out of range")
            if u == v:
                problems.append(f"edge {k} is a loop")
            if w < 0:
                problems.append(f"edge {k} has negative weight")
        return problems

    @property
    def exact(self) -> bool:
        return all_exact(w for _, _, w in self.edges)

    def add_vertices(self, count: int) -> tuple:
        return tuple(range(self.n, self.n + count))

    def to_json(self) -> dict:
        def render(w):
            return format_scalar(w) if is_exact(w) else repr(float(w))

        return {"vertices": self.n, "edges": [[u, v, render(w)] for u, v, w in self.edges],
                "dangling": list(self.dangling)}

    @classmethod
    def from_json(cls, obj, exact=True) -> "Matchgate":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            edges = tuple((int(u), int(v), parse_scalar(str(w), exact)) for u, v, w in obj["edges"])
            gate = cls(int(obj["vertices"]), edges, tuple(obj["dangling"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise MatchgateError(f"malformed matchgate JSON: {exc}") from None
        problems = gate.validate()
        if problems:
            raise MatchgateError("; ".join(problems))
        return gate


def _weight_table(mg: Matchgate) -> list[dict]:
    adj = [dict() for _ in range(mg.n)]
    for u, v, w in mg.edges:
        if w == 0:
            continue
        adj[u][v] = adj[u].get(v, 0) + w
        adj[v][u] = adj[v].get(u, 0) + w
    return adj


def _matching_sum(adj: list[dict], n: int):
    """Memoized weighted perfect-matching sum over vertex subsets given as bitmasks."""

    @lru_cache(maxsize=None)
    def pm(mask: int):
        if mask == 0:
            return 1
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        total = 0
        for j, w in adj[i].items():
            if rest >> j & 1:
                sub = pm(rest & ~(1 << j))
                if sub:
                    total = total + w * sub
        return total

    return pm


def signature(mg: Matchgate) -> ConstraintFunction4:
    problems = mg.validate()
    if problems:
        raise MatchgateError("; ".join(problems))
    if mg.n > MAX_VERTICES:
        raise MatchgateError(f"enumeration limited to {MAX_VERTICES} vertices, gate has {mg.n}")
    pm = _matching_sum(_weight_table(mg), mg.n)
    full = (1 << mg.n) - 1
    zero = Fraction(0) if mg.exact else 0.0
    entries = []
    for bits in PATTERNS:
        covered = 0
        ok = True
        for b, v in zip(bits, mg.dangling):
            if b:
                if covered >> v & 1:
                    ok = False
                    break
                covered |= 1 << v
        value = pm(full & ~covered) if ok else 0
        entries.append(value + zero)
    return ConstraintFunction4(tuple(entries))


def perfect_matchings(mg: Matchgate, pattern) -> list[frozenset]:
    """All perfect matchings for a dangling pattern, as sets of edge ids.

    Internal edge ``k`` has id ``k``; dangling edge ``i`` (1-based) has id ``("d", i)``.
    Zero-weight edges are skipped.
    """
    if isinstance(pattern, int):
        pattern = PATTERNS[pattern]
    covered = 0
    chosen = []
    for i, (b, v) in enumerate(zip(pattern, mg.dangling), start=1):
        if b:
            if covered >> v & 1:
                return []
            covered |= 1 << v
            chosen.append(("d", i))
    incident = [[] for _ in range(mg.n)]
    for k, (u, v, w) in enumerate(mg.edges):
        if w != 0:
            incident[u].append((k, v))
            incident[v].append((k, u))
    out = []

    def extend(mask, acc):
        if mask == 0:
            out.append(frozenset(acc))
            return
        i = (mask & -mask).bit_length() - 1
        for k, j in incident[i]:
            if j != i and mask >> j & 1:
                acc.append(k)
                extend(mask & ~(1 << i) & ~(1 << j), acc)
                acc.pop()

    extend(((1 << mg.n) - 1) & ~covered, [])
    return [m | frozenset(chosen) for m in out]


def matching_weight(mg: Matchgate, m) -> object:
    w = 1
    for e in m:
        if not isinstance(e, tuple):
            w = w * mg.edges[e][2]
    return w


# ---------------------------------------------------------------------------
# The eight-parameter family.


@dataclass(frozen=True)
class GeneralSignature8:
    a1: object
    a2: object
    b1: object
    b2: object
    c1: object
    c2: object
    d1: object
    d2: object
    parity: str = "even"

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise ValueError("parity must be 'even' or 'odd'")

    def values(self) -> tuple:
        return tuple(getattr(self, name) for name in NAMES)

    def products(self) -> dict:
        return {"a": self.a1 * self.a2, "b": self.b1 * self.b2,
                "c": self.c1 * self.c2, "d": self.d1 * self.d2}

    def positions(self) -> dict:
        return EVEN_POSITIONS if self.parity == "even" else ODD_POSITIONS

    def to_function(self) -> ConstraintFunction4:
        zero = 0 * self.a1
        entries = [zero] * 16
        for name, idx in self.positions().items():
            entries[idx] = getattr(self, name)
        return ConstraintFunction4(tuple(entries))

    @classmethod
    def from_function(cls, f: ConstraintFunction4, parity: Optional[str] = None, tol=None):
        found = parity_check(f, tol)
        if parity is None:
            parity = "even" if found in ("even", "zero") else found
        if found not in (parity, "zero"):
            raise MatchgateError(f"function has {found} parity, expected {parity}")
        pos = EVEN_POSITIONS if parity == "even" else ODD_POSITIONS
        return cls(*(f[pos[name]] for name in NAMES), parity=parity)

    @classmethod
    def from_json(cls, obj, exact=True, parity=None) -> "GeneralSignature8":
        if isinstance(obj, str):
            obj = json.loads(obj)
        vals = [parse_scalar(v if isinstance(v, (list, tuple)) else str(v), exact) for v in obj["tuple"]]
        if len(vals) != 8:
            raise MatchgateError("tuple needs eight entries (a1, a2, b1, b2, c1, c2, d1, d2)")
        return cls(*vals, parity=parity or obj.get("parity", "even"))

    def to_json(self) -> dict:
        return {"tuple": [format_scalar(v) if is_exact(v) else float(v) for v in self.values()],
                "parity": self.parity}


@dataclass(frozen=True)
class Membership:
    status: str
    classes: tuple
    slacks: dict

    def __str__(self):
        return self.status if not self.classes else f"{self.status}({','.join(self.classes)})"


def membership(s: GeneralSignature8, tol=None) -> Membership:
    """Evaluate the four product inequalities: interior, boundary(which) or outside(which)."""
    prods = s.products()
    exact = all(is_exact(v) for v in prods.values())
    tol = BOUNDARY_TOL if tol is None else tol
    slacks = {}
    boundary, outside = [], []
    for cls in CLASSES:
        rhs = sum(prods[o] for o in CLASSES if o != cls)
        slack = rhs - prods[cls]
        slacks[cls] = slack
        if exact:
            is_eq, is_out = slack == 0, slack < 0
        else:
            band = tol * max(1.0, abs(to_float(rhs)))
            is_eq, is_out = abs(slack) <= band, slack < -band
        if is_out:
            outside.append(cls)
        elif is_eq:
            boundary.append(cls)
    if outside:
        return Membership("outside", tuple(outside), slacks)
    if boundary:
        return Membership("boundary", tuple(boundary), slacks)
    return Membership("interior", (), slacks)


def check_product_inequalities(f: ConstraintFunction4, tol=1e-9) -> dict:
    """Slack of each product inequality for a pure-parity function (zero functions pass)."""
    parity = parity_check(f)
    if parity == "mixed":
        raise MatchgateError("mixed parity")
    s = GeneralSignature8.from_function(f, "odd" if parity == "odd" else "even")
    return membership(s, tol).slacks


# ---------------------------------------------------------------------------
# Gate surgery.


def flip_port(mg: Matchgate, port: int) -> Matchgate:
    """Move dangling ``port`` onto a new vertex joined to the old one by a weight-1 edge."""
    if port not in (1, 2, 3, 4):
        raise MatchgateError("port must be 1..4")
    (x,) = mg.add_vertices(1)
    old = mg.dangling[port - 1]
    one = Fraction(1) if mg.exact else 1.0
    dangling = list(mg.dangling)
    dangling[port - 1] = x
    return Matchgate(mg.n + 1, mg.edges + ((old, x, one),), tuple(dangling))


def flip_ports(mg: Matchgate, mask: int) -> Matchgate:
    """Flip every port whose bit is set in ``mask`` (port 1 is the most significant bit)."""
    for port in (1, 2, 3, 4):
        if mask >> (4 - port) & 1:
            mg = flip_port(mg, port)
    return mg


def attach_port_scaler(mg: Matchgate, port: int, s, t) -> Matchgate:
    """Insert a two-edge chain on ``port``: entries with that bit 1 scale by s, bit 0 by t."""
    if port not in (1, 2, 3, 4):
        raise MatchgateError("port must be 1..4")
    if s < 0 or t < 0:
        raise MatchgateError("scaler weights must be nonnegative")
    x, y = mg.add_vertices(2)
    old = mg.dangling[port - 1]
    dangling = list(mg.dangling)
    dangling[port - 1] = y
    return Matchgate(mg.n + 2, mg.edges + ((old, x, s), (x, y, t)), tuple(dangling))


# The scaler exponents act on the within-pair log ratios through this matrix
# (rows: d, a, b, c pairs; columns: ports 1..4).  It is invertible.
PAIR_SIGN_PATTERN = ((1, 1, 1, 1), (-1, -1, 1, 1), (-1, 1, 1, -1), (-1, 1, -1, 1))


def _solve_port_scalers(base: ConstraintFunction4, target: ConstraintFunction4):
    """Exponents u_j with target ~ base * prod_j exp(u_j x_j), or None if supports differ."""
    rows, rhs = [], []
    for idx in range(16):
        tv, bv = target[idx], base[idx]
        if tv == 0 and bv == 0:
            continue
        if tv == 0 or bv == 0:
            return None
        tv, bv = float(to_float(tv)), float(to_float(bv))
        if tv < 0 or bv < 0:
            return None
        rows.append([1.0] + [float(b) for b in PATTERNS[idx]])
        rhs.append(math.log(tv) - math.log(bv))
    if not rows:
        return (0.0, 0.0, 0.0, 0.0)
    sol, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
    return tuple(float(x) for x in sol[1:])


def proportional_exactly(f: ConstraintFunction4, g: ConstraintFunction4) -> bool:
    """Exact test that f = lambda * g for some lambda > 0."""
    ratio = None
    for x, y in zip(f.entries, g.entries):
        if (x == 0) != (y == 0):
            return False
        if x != 0:
            r = x / y
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
    return ratio is None or ratio > 0


def fit_port_scalers(mg: Matchgate, target: ConstraintFunction4) -> Matchgate:
    """Append port scalers so the gate's signature becomes proportional to ``target``."""
    base = signature(mg)
    if base.exact and target.exact and proportional_exactly(base, target):
        return mg
    u = _solve_port_scalers(base, target)
    if u is None:
        raise SynthesisError("base gate support differs from the target support")
    for port, uj in enumerate(u, start=1):
        if abs(uj) > 1e-12:
            mg = attach_port_scaler(mg, port, math.exp(uj), 1.0)
    return mg


def roundtrip_residual(f: ConstraintFunction4, target: ConstraintFunction4) -> float:
    """Max relative entry error of ``f`` against the best positive multiple of ``target``.

    Nonzero target entries are compared relatively; zero target entries are
    compared against the largest entry.
    """
    fv = [float(to_float(x)) for x in f.entries]
    tv = [float(to_float(x)) for x in target.entries]
    if all(t == 0 for t in tv):
        return 0.0 if all(x == 0 for x in fv) else math.inf
    k = max(range(16), key=lambda i: abs(tv[i]))
    lam = fv[k] / tv[k]
    if lam <= 0:
        return math.inf
    scale = max(abs(lam * t) for t in tv)
    err = 0.0
    for x, t in zip(fv, tv):
        if t != 0:
            err = max(err, abs(x - lam * t) / abs(lam * t))
        else:
            err = max(err, abs(x) / scale)
    if f.exact and target.exact and proportional_exactly(f, target):
        return 0.0
    return err


# ---------------------------------------------------------------------------
# Base constructions.


def k4_gate(a1, a2, b1, b2, c1, c2) -> Matchgate:
    """Weighted K4 realizing d1 = a1a2 + b1b2 + c1c2, d2 = 1 and the six given entries."""
    edges = ((0, 1, a1), (2, 3, a2), (0, 3, b1), (1, 2, b2), (0, 2, c1), (1, 3, c2))
    return Matchgate(4, edges, (0, 1, 2, 3))


@dataclass
class K6SolveState:
    A: tuple = ()          # target (A~, B~, C~, D~) before scaling
    primed: tuple = ()     # (A', B', C') realized
    RST: tuple = ()        # (R, S, T) realized
    XYZ: tuple = ()        # decomposition part in the triangle cone
    o: tuple = ()
    p: tuple = ()
    q: tuple = ()
    r: float = 0.0
    s: float = 0.0
    t: float = 0.0
    c: float = 0.0
    zero_d: str = "none"


def _root(t: float) -> float:
    """Larger root of o + 1/o = t (t >= 2)."""
    return (t + math.sqrt(max(t * t - 4.0, 0.0))) / 2.0


def k6_gate(products: dict, zero_d: str = "none"):
    """Weighted K6 whose four pair products are proportional to ``products``.

    ``products`` must lie strictly inside the product region, except that the
    d product may be 0; ``zero_d`` then says which d entries vanish
    ("d1" or "both").
    """
    a, b, c, d = (float(to_float(products[k])) for k in CLASSES)
    At = 0.5 * (-a + b + c + d)
    Bt = 0.5 * (a - b + c + d)
    Ct = 0.5 * (a + b - c + d)
    Dt = 0.5 * (a + b + c - d)
    if min(At, Bt, Ct, Dt) <= 0:
        raise SynthesisError("K6 construction needs strictly interior products")
    state = K6SolveState(A=(At, Bt, Ct, Dt), zero_d=zero_d)
    u = (At / Dt, Bt / Dt, Ct / Dt)
    if zero_d != "none":
        v, w = u, (0.0, 0.0, 0.0)
    else:
        dec = decompose_minkowski(u)
        v, w = dec.v, dec.w
    X, Y, Z = w
    Rt, St, Tt = 0.5 * (-X + Y + Z), 0.5 * (X - Y + Z), 0.5 * (X + Y - Z)
    scale = max(2.0 / vi for vi in v)
    o3, o1, o2 = _root(scale * v[0]), _root(scale * v[1]), _root(scale * v[2])
    p1 = math.sqrt(o2 * o3 / o1)
    p2 = math.sqrt(o3 * o1 / o2)
    p3 = math.sqrt(o1 * o2 / o3)
    p4 = 1.0 / (p1 * p2 * p3)
    sigma = p1 + p2 + p3 + p4

    def solve(target):
        target = max(target, 0.0)
        return (-sigma + math.sqrt(sigma * sigma + 4.0 * scale * target)) / 2.0

    r, s, t = (0.0, 0.0, 0.0) if zero_d != "none" else (solve(Rt), solve(St), solve(Tt))
    w56 = 0.0 if zero_d == "both" else 1.0
    edges = (
        (0, 1, r), (2, 3, r), (0, 3, s), (1, 2, s), (0, 2, t), (1, 3, t),
        (0, 4, p1), (1, 4, p2), (2, 4, p3), (3, 4, p4),
        (0, 5, 1.0), (1, 5, 1.0), (2, 5, 1.0), (3, 5, 1.0),
        (4, 5, w56),
    )
    state.o = (o1, o2, o3)
    state.p = (p1, p2, p3, p4)
    state.q = (1.0, 1.0, 1.0, 1.0)
    state.r, state.s, state.t, state.c = r, s, t, scale
    state.XYZ = (X, Y, Z)
    state.primed = (p1 * p2 + p3 * p4, p1 * p4 + p2 * p3, p1 * p3 + p2 * p4)
    state.RST = (r * r + r * sigma, s * s + s * sigma, t * t + t * sigma)
    return Matchgate(6, edges, (0, 1, 2, 3)), state


def zero_gate() -> Matchgate:
    """A gate with identically zero signature: K4 plus an isolated vertex."""
    one = Fraction(1)
    gate = k4_gate(one, one, one, one, one, one)
    return Matchgate(5, gate.edges, gate.dangling)


# ---------------------------------------------------------------------------
# Synthesis.


@dataclass
class SynthesisReport:
    gate: Matchgate
    residual: float
    method: str
    flips: int = 0
    k6: Optional[K6SolveState] = None

    def to_json(self) -> dict:
        return {"gate": self.gate.to_json(), "residual": self.residual, "method": self.method,
                "flipped_ports": [p for p in (1, 2, 3, 4) if self.flips >> (4 - p) & 1]}


def _synthesize_even_function(target: ConstraintFunction4, tol=None) -> SynthesisReport:
    s = GeneralSignature8.from_function(target, "even")
    mem = membership(s, tol)
    if mem.status == "outside":
        raise SynthesisError(f"outside the matchgate region: violated {', '.join(mem.classes)}")
    if target.is_zero():
        gate = zero_gate()
        return _finish(gate, target, "zero", 0)

    prods = s.products()
    k6_state = None
    if all(prods[cls] == 0 for cls in CLASSES):
        # At most one nonzero entry per pair; move a nonzero entry to 1111.
        x = next(i for i in range(16) if target[i] != 0)
        flips = x ^ 0b1111
        r = flip_bits(target, flips)
        method = "k4-zero-products"
        base = _k4_for(r)
    elif mem.status == "boundary":
        cls = next(c for c in mem.classes if prods[c] != 0)
        flips = CLASS_FLIP[cls]
        r = flip_bits(target, flips)
        method = f"k4-boundary-{cls}"
        base = _k4_for(r)
    else:
        cls = min(CLASSES, key=lambda c: (float(to_float(prods[c])), c != "d"))
        flips = CLASS_FLIP[cls]
        r = flip_bits(target, flips)
        zero_d = "none"
        if r[0b0000] == 0 and r[0b1111] == 0:
            zero_d = "both"
        elif r[0b1111] == 0:
            flips ^= 0b1111
            r = flip_bits(target, flips)
            zero_d = "d1"
        elif r[0b0000] == 0:
            zero_d = "d1"
        rs = GeneralSignature8.from_function(r, "even")
        base, k6_state = k6_gate(rs.products(), zero_d)
        method = "k6-interior" if zero_d == "none" else f"k6-zero-{zero_d}"
    gate = fit_port_scalers(base, r)
    gate = flip_ports(gate, flips)
    report = _finish(gate, target, method, flips)
    report.k6 = k6_state
    return report


def _k4_for(r: ConstraintFunction4) -> Matchgate:
    s = GeneralSignature8.from_function(r, "even")
    return k4_gate(s.a1, s.a2, s.b1, s.b2, s.c1, s.c2)


def _finish(gate: Matchgate, target: ConstraintFunction4, method: str, flips: int) -> SynthesisReport:
    residual = roundtrip_residual(signature(gate), target)
    if not residual <= ROUNDTRIP_TOL:
        raise SynthesisError("round-trip verification failed", residual)
    return SynthesisReport(gate, residual, method, flips)


def _as_signature(s, parity) -> GeneralSignature8:
    if isinstance(s, GeneralSignature8):
        if s.parity != parity:
            raise SynthesisError(f"parity mismatch: expected {parity}, got {s.parity}")
        sig = s
    else:
        sig = GeneralSignature8(*s, parity=parity)
    if any(v < 0 for v in sig.values()):
        raise SynthesisError("entries must be nonnegative")
    return sig


def synthesize_even_report(s, tol=None) -> SynthesisReport:
    sig = _as_signature(s, "even")
    return _synthesize_even_function(sig.to_function(), tol)


def synthesize_odd_report(s, tol=None) -> SynthesisReport:
    sig = _as_signature(s, "odd")
    target = sig.to_function()
    rehoused = flip_bits(target, 0b1000)
    report = _synthesize_even_function(rehoused, tol)
    gate = flip_port(report.gate, 1)
    residual = roundtrip_residual(signature(gate), target)
    if not residual <= ROUNDTRIP_TOL:
        raise SynthesisError("round-trip verification failed", residual)
    return SynthesisReport(gate, residual, report.method + "+flip1", report.flips ^ 0b1000, report.k6)


def synthesize_even(s, tol=None) -> Matchgate:
    return synthesize_even_report(s, tol).gate


def synthesize_odd(s, tol=None) -> Matchgate:
    return synthesize_odd_report(s, tol).gate


# ---------------------------------------------------------------------------
# The injection behind the product inequalities.

# For each class: (ports assigned 1 in the first matching, in the second).
SOURCE_SETS = {
    "a": ({1, 2}, {3, 4}),
    "b": ({1, 4}, {2, 3}),
    "c": ({1, 3}, {2, 4}),
    "d": (set(), {1, 2, 3, 4}),
}


def _pattern(ports: set) -> int:
    return sum(1 << (4 - p) for p in ports)


def _path_from_port1(mg: Matchgate, sym: frozenset):
    """Edges of the alternating path in ``sym`` that starts at dangling edge 1."""
    vert_edges = [[] for _ in range(mg.n)]
    for e in sym:
        if isinstance(e, tuple):
            v = mg.dangling[e[1] - 1]
            vert_edges[v].append(e)
        else:
            u, v, _ = mg.edges[e]
            vert_edges[u].append(e)
            vert_edges[v].append(e)
    path = [("d", 1)]
    v = mg.dangling[0]
    prev = ("d", 1)
    while True:
        nxt = [e for e in vert_edges[v] if e != prev]
        if len(nxt) != 1:
            raise AssertionError("symmetric difference is not a union of paths and cycles")
        e = nxt[0]
        path.append(e)
        if isinstance(e, tuple):
            return frozenset(path), e[1]
        u, w, _ = mg.edges[e]
        v = w if u == v else u
        prev = e


@dataclass
class InjectionReport:
    cls: str
    sources: int
    injective: bool
    weight_preserving: bool
    targets_valid: bool
    lhs: object
    rhs: object

    @property
    def ok(self) -> bool:
        return self.injective and self.weight_preserving and self.targets_valid


def check_injection_mu(mg: Matchgate, classes=CLASSES, max_pairs: int = 2_000_000) -> dict:
    """Build the path-switching map for each product class and verify its properties.

    For (m1, m2) in the source pair of matching sets, the path pi in m1 xor m2
    starting at dangling edge 1 is switched: (m3, m4) = (m1 xor pi, m2 xor pi).
    """
    if mg.n > MAX_VERTICES:
        raise MatchgateError("enumeration limited to small gates")
    f = signature(mg)
    reports = {}
    cache = {}

    def matchings(ports):
        key = _pattern(ports)
        if key not in cache:
            cache[key] = perfect_matchings(mg, key)
        return cache[key]

    sets = {}

    def matching_set(ports):
        key = _pattern(ports)
        if key not in sets:
            sets[key] = frozenset(matchings(ports))
        return sets[key]

    for cls in classes:
        left, right = SOURCE_SETS[cls]
        m1s, m2s = matchings(left), matchings(right)
        if len(m1s) * len(m2s) > max_pairs:
            raise MatchgateError("too many matching pairs to enumerate")
        images = set()
        injective = weight_ok = valid = True
        for m1 in m1s:
            for m2 in m2s:
                sym = m1 ^ m2
                pi, end = _path_from_port1(mg, sym)
                m3, m4 = m1 ^ pi, m2 ^ pi
                new_left = left ^ {1, end}
                new_right = right ^ {1, end}
                if m3 not in matching_set(new_left) or m4 not in matching_set(new_right):
                    valid = False
                if (m3, m4) in images:
                    injective = False
                images.add((m3, m4))
                before = matching_weight(mg, m1) * matching_weight(mg, m2)
                after = matching_weight(mg, m3) * matching_weight(mg, m4)
                same = before == after if is_exact(before) else math.isclose(before, after, rel_tol=1e-9)
                if not same:
                    weight_ok = False
        lhs = f[_pattern(left)] * f[_pattern(right)]
        rhs = sum(f[_pattern(SOURCE_SETS[o][0])] * f[_pattern(SOURCE_SETS[o][1])]
                  for o in CLASSES if o != cls)
        reports[cls] = InjectionReport(cls, len(m1s) * len(m2s), injective, weight_ok, valid, lhs, rhs)
    return reports


# ---------------------------------------------------------------------------
# Random gates and samples.


def random_matchgate(rng: random.Random, max_vertices: int = 10, exact: bool = True,
                     density: float = 0.5) -> Matchgate:
    n = rng.randint(4, max_vertices)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                w = Fraction(rng.randint(1, 9), rng.randint(1, 4)) if exact else rng.uniform(0.1, 3.0)
                edges.append((u, v, w))
    dangling = tuple(rng.sample(range(n), 4))
    return Matchgate(n, tuple(edges), dangling)


def random_region_sample(rng: random.Random, kind: str, parity: str = "even") -> GeneralSignature8:
    """Random point of the product region of the requested kind.

    Kinds: "interior", "boundary-a" .. "boundary-d", "zero-product" (one pair
    product zero, interior otherwise) and "all-zero-products".
    """
    def pair(prod):
        if prod == 0:
            x = rng.uniform(0.2, 3.0)
            return (x, 0.0) if rng.random() < 0.5 else ((0.0, x) if rng.random() < 0.8 else (0.0, 0.0))
        t = rng.uniform(0.3, 3.0)
        return (t, prod / t)

    while True:
        if kind == "all-zero-products":
            vals = []
            for _ in CLASSES:
                vals.extend(pair(0))
            return GeneralSignature8(*vals, parity=parity)
        prods = {c: rng.uniform(0.1, 3.0) for c in CLASSES}
        if kind.startswith("boundary-"):
            cls = kind[-1]
            prods[cls] = sum(prods[o] for o in CLASSES if o != cls)
        elif kind == "zero-product":
            prods[rng.choice(CLASSES)] = 0.0
        vals = []
        for cls in CLASSES:
            vals.extend(pair(prods[cls]))
        sig = GeneralSignature8(*vals, parity=parity)
        status = membership(sig).status
        if kind == "interior" and status == "interior":
            return sig
        if kind.startswith("boundary-") and status == "boundary":
            return sig
        if kind == "zero-product" and status == "interior":
            return sig
