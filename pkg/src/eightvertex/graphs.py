"""Port-labeled 4-regular multigraphs, even orientations and Holant evaluation.

An edge is a pair of endpoints ``((v, p), (w, q))``.  Its first endpoint is
``(v, p)``.  Loops (``v == w``) and parallel edges are allowed.

Orientation convention: an edge carries a direction bit ``t``.  At the first
endpoint the local bit is ``1 - t``, at the second it is ``t``; a local bit of 1
means the edge points away from that vertex.  So ``t = 0`` orients the edge
from its first endpoint to its second.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .scalar import is_exact, parse_scalar, simplify
from .signature import BinaryConnector, ConstraintFunction4, eight_vertex_signature

MAX_BRUTEFORCE = 1 << 24
_CHUNK = 1 << 16


class GraphError(ValueError):
    """Raised for malformed graphs or instances; ``violations`` lists every problem found."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class PortedGraph:
    n: int
    edges: tuple

    def __post_init__(self):
        edges = tuple(
            ((int(e[0][0]), int(e[0][1])), (int(e[1][0]), int(e[1][1]))) for e in self.edges)
        object.__setattr__(self, "edges", edges)

    def port_map(self) -> dict:
        """(vertex, port) -> (edge index, 0 for first endpoint / 1 for second)."""
        table = {}
        for k, (u, w) in enumerate(self.edges):
            table.setdefault(u, (k, 0))
            table.setdefault(w, (k, 1))
        return table

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[list(u), list(w)] for u, w in self.edges]}

    @classmethod
    def from_json(cls, obj) -> "PortedGraph":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            return cls(int(obj["n"]), tuple(tuple(tuple(end) for end in e) for e in obj["edges"]))
        except (KeyError, TypeError, IndexError) as exc:
            raise GraphError([f"malformed graph JSON: {exc}"]) from None

    @classmethod
    def load(cls, path) -> "PortedGraph":
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def disjoint_union(self, other: "PortedGraph") -> "PortedGraph":
        shift = self.n
        moved = tuple(((u[0] + shift, u[1]), (w[0] + shift, w[1])) for u, w in other.edges)
        return PortedGraph(self.n + other.n, self.edges + moved)


def validate_graph(g: PortedGraph) -> list[str]:
    """Return the list of 4-regularity violations (empty when the graph is valid)."""
    problems = []
    if g.n < 0:
        problems.append(f"negative vertex count {g.n}")
    seen = Counter()
    for k, (u, w) in enumerate(g.edges):
        for v, p in (u, w):
            if not 0 <= v < g.n:
                problems.append(f"edge {k}: vertex {v} out of range")
            if p not in (1, 2, 3, 4):
                problems.append(f"edge {k}: port {p} not in 1..4")
            seen[(v, p)] += 1
        if u == w:
            problems.append(f"edge {k}: loop reuses port {u[1]} of vertex {u[0]}")
    for (v, p), count in sorted(seen.items()):
        if count > 1:
            problems.append(f"duplicate port: vertex {v} port {p} used {count} times")
    for v in range(max(g.n, 0)):
        for p in (1, 2, 3, 4):
            if (v, p) not in seen:
                problems.append(f"vertex {v} port {p} unused")
    if len(g.edges) != 2 * g.n and not problems:
        problems.append(f"edge count {len(g.edges)} != 2n = {2 * g.n}")
    return problems


def require_valid(g: PortedGraph) -> None:
    problems = validate_graph(g)
    if problems:
        raise GraphError(problems)


def component_count(g: PortedGraph) -> int:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (v, _), (w, _) in g.edges:
        parent[find(v)] = find(w)
    return len({find(v) for v in range(g.n)})


def random_four_regular(n: int, rng: random.Random) -> PortedGraph:
    """Uniformly pair the 4n half-edges (configuration model); loops and multi-edges allowed."""
    halves = [(v, p) for v in range(n) for p in (1, 2, 3, 4)]
    rng.shuffle(halves)
    edges = tuple((halves[2 * k], halves[2 * k + 1]) for k in range(2 * n))
    return PortedGraph(n, edges)


def aligned_bond_graph() -> PortedGraph:
    """Two vertices joined by four parallel edges, port i to port i."""
    return PortedGraph(2, tuple(((0, p), (1, p)) for p in (1, 2, 3, 4)))


def double_loop_graph() -> PortedGraph:
    """One vertex with loops on ports (1, 2) and (3, 4)."""
    return PortedGraph(1, (((0, 1), (0, 2)), ((0, 3), (0, 4))))


@dataclass(frozen=True)
class HolantInstance:
    graph: PortedGraph
    functions: tuple
    connectors: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        if self.connectors is not None:
            object.__setattr__(self, "connectors", tuple(self.connectors))

    @classmethod
    def uniform(cls, graph: PortedGraph, f: ConstraintFunction4, connector=None):
        conns = None if connector is None else (connector,) * len(graph.edges)
        return cls(graph, (f,) * graph.n, conns)

    def validate(self) -> list[str]:
        problems = validate_graph(self.graph)
        if len(self.functions) != self.graph.n:
            problems.append(f"{len(self.functions)} functions for {self.graph.n} vertices")
        if self.connectors is not None and len(self.connectors) != len(self.graph.edges):
            problems.append(f"{len(self.connectors)} connectors for {len(self.graph.edges)} edges")
        return problems


# ---------------------------------------------------------------------------
# Shared enumeration engine.  A sum-product over 0/1 variables is described by
# factors; each factor is a value table plus, for each table bit, the variable
# feeding it and whether that bit is negated.  Factors sharing a table are
# grouped, the per-assignment histogram of table indices is collected with
# numpy, and only the distinct histograms are evaluated in exact arithmetic.


def _table_key(values) -> tuple:
    return tuple(values)


def _sum_product(num_vars: int, factors, cap: int):
    if num_vars > 62 or (1 << num_vars) > cap:
        raise GraphError([f"brute force needs 2^{num_vars} assignments, above the cap {cap}; use holant_contract"])
    groups: dict = {}
    for table, wiring in factors:
        key = _table_key(table)
        groups.setdefault(key, []).append(wiring)
    keys = list(groups)
    offsets = []
    width = 0
    for key in keys:
        offsets.append(width)
        width += len(key)

    histogram = Counter()
    total_assignments = 1 << num_vars
    for start in range(0, total_assignments, _CHUNK):
        stop = min(total_assignments, start + _CHUNK)
        xs = np.arange(start, stop, dtype=np.int64)
        bits = [((xs >> j) & 1) for j in range(num_vars)]
        cols = []
        for key, offset in zip(keys, offsets):
            arity = (len(key) - 1).bit_length()
            counts = np.zeros((stop - start, len(key)), dtype=np.int64)
            base = np.arange(stop - start, dtype=np.int64) * len(key)
            for wiring in groups[key]:
                idx = np.zeros(stop - start, dtype=np.int64)
                for pos, (var, neg) in enumerate(wiring):
                    b = bits[var] ^ 1 if neg else bits[var]
                    idx |= b << (arity - 1 - pos)
                counts += np.bincount(base + idx, minlength=counts.size).reshape(counts.shape)
            cols.append(counts)
        if cols:
            block = np.concatenate(cols, axis=1)
            uniq, mult = np.unique(block, axis=0, return_counts=True)
            for row, m in zip(uniq, mult):
                histogram[tuple(int(x) for x in row)] += int(m)
        else:
            histogram[()] += stop - start

    flat_values = [v for key in keys for v in key]
    total = 0
    for row, mult in histogram.items():
        term = 1
        for value, count in zip(flat_values, row):
            if count:
                term = term * value ** count
                if term == 0:
                    break
        if term != 0:
            total = total + term * mult
    return simplify(total) if total != 0 else _zero_like(flat_values)


def _zero_like(values):
    if values and not all(is_exact(v) for v in values):
        return 0.0
    return Fraction(0)


def _permutation_kind(conn: BinaryConnector):
    """False for a diagonal connector, True for an anti-diagonal one, else None."""
    m = conn.matrix
    if m[0][1] == 0 and m[1][0] == 0:
        return False
    if m[0][0] == 0 and m[1][1] == 0:
        return True
    return None


def holant_bruteforce(inst: HolantInstance, cap: int = MAX_BRUTEFORCE):
    """Sum over all 0/1 edge assignments of the product of vertex (and connector) values."""
    problems = inst.validate()
    if problems:
        raise GraphError(problems)
    g = inst.graph
    factors = []
    num_vars = 0
    half_var = {}
    for k, (u, w) in enumerate(g.edges):
        conn = None if inst.connectors is None else inst.connectors[k]
        if conn is None:
            half_var[u] = half_var[w] = (num_vars, False)
            num_vars += 1
        elif _permutation_kind(conn) is not None:
            # The second bit is a function of the first: keep one variable.
            flip = _permutation_kind(conn)
            half_var[u], half_var[w] = (num_vars, False), (num_vars, flip)
            table = [conn.matrix[0][int(flip)], conn.matrix[1][1 - int(flip)]]
            factors.append((table, ((num_vars, False),)))
            num_vars += 1
        else:
            half_var[u], half_var[w] = (num_vars, False), (num_vars + 1, False)
            table = [conn.matrix[i][j] for i in (0, 1) for j in (0, 1)]
            factors.append((table, ((num_vars, False), (num_vars + 1, False))))
            num_vars += 2
    for v in range(g.n):
        wiring = tuple(half_var[(v, p)] for p in (1, 2, 3, 4))
        factors.append((inst.functions[v].entries, wiring))
    return _sum_product(num_vars, factors, cap)


def z_eight_vertex(g: PortedGraph, a, b, c, d, cap: int = MAX_BRUTEFORCE):
    """Sum over even orientations of the product of per-vertex weights a, b, c, d."""
    require_valid(g)
    f = eight_vertex_signature(a, b, c, d)
    factors = []
    ends = {}
    for k, (u, w) in enumerate(g.edges):
        ends[u] = (k, True)   # first endpoint: local bit = 1 - t
        ends[w] = (k, False)  # second endpoint: local bit = t
    for v in range(g.n):
        factors.append((f.entries, tuple(ends[(v, p)] for p in (1, 2, 3, 4))))
    return _sum_product(len(g.edges), factors, cap)


def local_patterns(g: PortedGraph, directions: Sequence[int]) -> list[tuple]:
    """Per-vertex bit patterns x1..x4 (1 = pointing away) under the given direction bits."""
    pat = [[None] * 4 for _ in range(g.n)]
    for t, (u, w) in zip(directions, g.edges):
        pat[u[0]][u[1] - 1] = 1 - t
        pat[w[0]][w[1] - 1] = t
    return [tuple(p) for p in pat]


def even_orientations(g: PortedGraph):
    """Yield direction-bit tuples whose local patterns all have even weight."""
    m = len(g.edges)
    for mask in range(1 << m):
        directions = tuple((mask >> k) & 1 for k in range(m))
        if all(sum(p) % 2 == 0 for p in local_patterns(g, directions)):
            yield directions


def orientation_weight(g: PortedGraph, directions, a, b, c, d):
    f = eight_vertex_signature(a, b, c, d)
    weight = 1
    for p in local_patterns(g, directions):
        weight = weight * f[p]
    return weight


# ---------------------------------------------------------------------------
# Contraction path.


def _object_array(values, shape):
    arr = np.empty(int(np.prod(shape)) if shape else 1, dtype=object)
    arr[:] = list(values)
    return arr.reshape(shape)


def _trace_repeated(arr, labels):
    labels = list(labels)
    while True:
        dup = next((lab for lab in labels if labels.count(lab) > 1), None)
        if dup is None:
            return arr, labels
        i = labels.index(dup)
        j = labels.index(dup, i + 1)
        arr = np.trace(arr, axis1=i, axis2=j)
        if not isinstance(arr, np.ndarray):
            arr = _object_array([arr], ())
        labels = [lab for k, lab in enumerate(labels) if k not in (i, j)]


def holant_contract(inst: HolantInstance):
    """Holant value by greedy pairwise tensor contraction (exact on object arrays)."""
    problems = inst.validate()
    if problems:
        raise GraphError(problems)
    g = inst.graph
    label_at = {}
    tensors = []
    for k, (u, w) in enumerate(g.edges):
        conn = None if inst.connectors is None else inst.connectors[k]
        if conn is None:
            label_at[u] = label_at[w] = ("e", k)
        else:
            label_at[u], label_at[w] = ("h", k, 0), ("h", k, 1)
            flat = [conn.matrix[i][j] for i in (0, 1) for j in (0, 1)]
            tensors.append((_object_array(flat, (2, 2)), [("h", k, 0), ("h", k, 1)]))
    for v in range(g.n):
        tensors.append((inst.functions[v].tensor(), [label_at[(v, p)] for p in (1, 2, 3, 4)]))

    tensors = [_trace_repeated(arr, labs) for arr, labs in tensors]
    scalars = []
    while tensors:
        best = None
        for i in range(len(tensors)):
            li = set(tensors[i][1])
            if not li:
                continue
            for j in range(i + 1, len(tensors)):
                shared = li & set(tensors[j][1])
                if shared:
                    size = len(li | set(tensors[j][1])) - 2 * len(shared)
                    if best is None or size < best[0]:
                        best = (size, i, j, shared)
        if best is None:
            for arr, labs in tensors:
                scalars.append(arr[()] if arr.shape == () else arr.reshape(-1)[0])
            break
        _, i, j, shared = best
        (A, la), (B, lb) = tensors[i], tensors[j]
        shared = sorted(shared, key=la.index)
        ax_a = [la.index(s) for s in shared]
        ax_b = [lb.index(s) for s in shared]
        C = np.tensordot(A, B, axes=(ax_a, ax_b))
        if not isinstance(C, np.ndarray):
            C = _object_array([C], ())
        lc = [s for s in la if s not in shared] + [s for s in lb if s not in shared]
        C, lc = _trace_repeated(C, lc)
        tensors = [t for k, t in enumerate(tensors) if k not in (i, j)]
        if lc:
            tensors.append((C, lc))
        else:
            scalars.append(C[()])
    total = Fraction(1)
    for s in scalars:
        total = total * s
    return simplify(total)


def holant(inst: HolantInstance, method: str = "auto", cap: int = MAX_BRUTEFORCE):
    if method == "bruteforce":
        return holant_bruteforce(inst, cap)
    if method == "contract":
        return holant_contract(inst)
    edges = len(inst.graph.edges) * (1 if inst.connectors is None else 2)
    if (1 << min(edges, 62)) <= min(cap, 1 << 20):
        return holant_bruteforce(inst, cap)
    return holant_contract(inst)


def instance_from_json(obj, exact=True) -> HolantInstance:
    """Parse ``{"graph": {...}, "functions": [sig, ...] | "function": sig, "connector": "NEQ2"}``."""
    from .signature import EQ2, NEQ2, signature_from_json

    if isinstance(obj, str):
        obj = json.loads(obj)
    graph = PortedGraph.from_json(obj["graph"])
    if "functions" in obj:
        funcs = tuple(signature_from_json(f, exact) for f in obj["functions"])
    elif "function" in obj:
        funcs = (signature_from_json(obj["function"], exact),) * graph.n
    else:
        raise GraphError(["instance needs 'function' or 'functions'"])
    conn = obj.get("connector")
    connectors = None
    if conn is not None:
        named = {"EQ2": EQ2, "NEQ2": NEQ2}
        if isinstance(conn, str):
            if conn not in named:
                raise GraphError([f"unknown connector {conn!r}"])
            connector = named[conn]
        else:
            connector = BinaryConnector(tuple(tuple(parse_scalar(v, exact) for v in row) for row in conn))
        connectors = (connector,) * len(graph.edges)
    return HolantInstance(graph, funcs, connectors)
