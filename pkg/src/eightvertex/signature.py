"""4-ary constraint functions, binary connectors and holographic transformations.

Entries of a :class:`ConstraintFunction4` are stored flat, indexed by the bit
string ``x1x2x3x4`` read as a binary number (``x1`` most significant).  The
constraint-matrix view puts ``f(x1x2x3x4)`` at row ``2*x1 + x2`` and column
``2*x4 + x3``; every module uses this one convention.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .scalar import (
    I,
    all_exact,
    close,
    is_zero,
    parse_scalar,
    scalar_to_json,
    simplify,
    to_exact,
    to_float,
)

PATTERNS = tuple(tuple((idx >> (3 - k)) & 1 for k in range(4)) for idx in range(16))

# Flat index of each eight-vertex class (zero-field, even parity).
EIGHT_VERTEX_POSITIONS = {
    "a": (0b0011, 0b1100),
    "b": (0b0110, 0b1001),
    "c": (0b0101, 0b1010),
    "d": (0b0000, 0b1111),
}


def bits_to_index(bits) -> int:
    if isinstance(bits, str):
        bits = [int(ch) for ch in bits]
    x1, x2, x3, x4 = bits
    return 8 * x1 + 4 * x2 + 2 * x3 + x4


def matrix_position(index: int) -> tuple[int, int]:
    """Row and column of flat entry ``index`` in the constraint matrix."""
    x1, x2, x3, x4 = PATTERNS[index]
    return 2 * x1 + x2, 2 * x4 + x3


def flat_index(row: int, col: int) -> int:
    return 4 * row + 2 * (col & 1) + (col >> 1)


@dataclass(frozen=True)
class ConstraintFunction4:
    entries: tuple

    def __post_init__(self):
        entries = tuple(self.entries)
        if len(entries) != 16:
            raise ValueError(f"a 4-ary signature needs 16 entries, got {len(entries)}")
        object.__setattr__(self, "entries", entries)

    def __getitem__(self, key):
        if isinstance(key, int):
            return self.entries[key]
        return self.entries[bits_to_index(key)]

    @classmethod
    def from_matrix(cls, matrix):
        rows = [list(r) for r in matrix]
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("constraint matrix must be 4x4")
        entries = [None] * 16
        for r in range(4):
            for c in range(4):
                entries[flat_index(r, c)] = rows[r][c]
        return cls(tuple(entries))

    @classmethod
    def from_function(cls, fn):
        """Tabulate ``fn(x1, x2, x3, x4)`` over all 16 inputs."""
        return cls(tuple(fn(*p) for p in PATTERNS))

    def matrix(self) -> list[list]:
        m = [[None] * 4 for _ in range(4)]
        for idx, value in enumerate(self.entries):
            r, c = matrix_position(idx)
            m[r][c] = value
        return m

    def tensor(self) -> np.ndarray:
        """Entries as an object array of shape (2, 2, 2, 2), axis k = port k+1."""
        arr = np.empty(16, dtype=object)
        arr[:] = list(self.entries)
        return arr.reshape(2, 2, 2, 2)

    @property
    def exact(self) -> bool:
        return all_exact(self.entries)

    @property
    def parity(self) -> str:
        return parity_check(self)

    def is_zero(self, tol=None) -> bool:
        return all(is_zero(v, tol) for v in self.entries)

    def isclose(self, other: "ConstraintFunction4", tol=None) -> bool:
        return all(close(x, y, tol) for x, y in zip(self.entries, other.entries))

    def map(self, fn) -> "ConstraintFunction4":
        return ConstraintFunction4(tuple(fn(v) for v in self.entries))

    def scale(self, factor) -> "ConstraintFunction4":
        return self.map(lambda v: v * factor)

    def to_float(self) -> "ConstraintFunction4":
        return self.map(to_float)

    def to_json(self) -> dict:
        return {"entries": [scalar_to_json(v) for v in self.entries]}

    def __str__(self):
        from .scalar import format_scalar

        rows = (" ".join(format_scalar(v) for v in row) for row in self.matrix())
        return "[" + "; ".join(rows) + "]"


def signature_from_json(obj, exact=True) -> ConstraintFunction4:
    """Parse ``{"entries": [[re, im] x16]}``, ``{"eight_vertex": [a, b, c, d]}`` or ``{"matrix": ...}``."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if "eight_vertex" in obj:
        params = [parse_scalar(v, exact) for v in obj["eight_vertex"]]
        if len(params) != 4:
            raise ValueError("eight_vertex needs exactly four parameters")
        return eight_vertex_signature(*params)
    if "matrix" in obj:
        return ConstraintFunction4.from_matrix(
            [[parse_scalar(v, exact) for v in row] for row in obj["matrix"]])
    if "entries" in obj:
        return ConstraintFunction4(tuple(parse_scalar(v, exact) for v in obj["entries"]))
    raise ValueError("signature literal needs 'entries', 'eight_vertex' or 'matrix'")


def eight_vertex_signature(a, b, c, d) -> ConstraintFunction4:
    """The zero-field eight-vertex signature, M(f) = [[d,0,0,a],[0,b,c,0],[0,c,b,0],[a,0,0,d]]."""
    zero = 0 * a
    return ConstraintFunction4.from_matrix([
        [d, zero, zero, a],
        [zero, b, c, zero],
        [zero, c, b, zero],
        [a, zero, zero, d],
    ])


def eight_vertex_params(f: ConstraintFunction4, tol=None) -> tuple:
    """Recover (a, b, c, d) from a zero-field even signature, or raise ValueError."""
    params = []
    for cls in "abcd":
        i, j = EIGHT_VERTEX_POSITIONS[cls]
        if not close(f[i], f[j], tol):
            raise ValueError(f"not a zero-field eight-vertex signature: {cls}-pair differs")
        params.append(f[i])
    for idx in range(16):
        if bin(idx).count("1") % 2 and not is_zero(f[idx], tol):
            raise ValueError("not a zero-field eight-vertex signature: odd-weight entry is nonzero")
    return tuple(params)


def parity_check(f: ConstraintFunction4, tol=None) -> str:
    """Classify the support of ``f`` as 'even', 'odd', 'mixed' or 'zero'."""
    weights = {bin(idx).count("1") % 2 for idx in range(16) if not is_zero(f[idx], tol)}
    if not weights:
        return "zero"
    if weights == {0}:
        return "even"
    if weights == {1}:
        return "odd"
    return "mixed"


def relabel_ports(f: ConstraintFunction4, order) -> ConstraintFunction4:
    """g(x1, x2, x3, x4) = f(x_order[0], ..., x_order[3]) with 1-based port numbers."""
    order = tuple(order)
    if sorted(order) != [1, 2, 3, 4]:
        raise ValueError(f"{order} is not a permutation of ports 1..4")
    return ConstraintFunction4.from_function(
        lambda *x: f[tuple(x[k - 1] for k in order)])


def flip_bits(f: ConstraintFunction4, mask: int) -> ConstraintFunction4:
    """g(x) = f(x XOR mask), mask read with port 1 as the most significant bit."""
    return ConstraintFunction4(tuple(f[idx ^ mask] for idx in range(16)))


def _abc_relabelings() -> dict:
    # Port permutations fixing port 1 act faithfully on the three pairings
    # {12|34}, {14|23}, {13|24}, i.e. on the a, b, c slots.
    symbolic = eight_vertex_signature("a", "b", "c", "d")
    table = {}
    for rest in itertools.permutations((2, 3, 4)):
        order = (1,) + rest
        g = ConstraintFunction4(tuple(
            symbolic[tuple(x[k - 1] for k in order)] for x in PATTERNS))
        new = tuple(g[EIGHT_VERTEX_POSITIONS[cls][0]] for cls in "abc")
        perm = tuple("abc".index(name) for name in new)
        table[perm] = order
    return table


ABC_RELABELINGS = _abc_relabelings()


def permute_abc(f: ConstraintFunction4, perm) -> ConstraintFunction4:
    """Permute the (a, b, c) weights of an eight-vertex signature by relabeling ports.

    ``perm = (i, j, k)`` produces new (a, b, c) = (old[i], old[j], old[k]);
    e.g. ``(0, 2, 1)`` swaps b and c, ``(2, 0, 1)`` sends a -> b -> c -> a.
    """
    perm = tuple(perm)
    if perm not in ABC_RELABELINGS:
        raise ValueError(f"{perm} is not a permutation of (0, 1, 2)")
    old = eight_vertex_params(f)
    g = relabel_ports(f, ABC_RELABELINGS[perm])
    expected = eight_vertex_signature(old[perm[0]], old[perm[1]], old[perm[2]], old[3])
    if g.entries != expected.entries:
        raise AssertionError("port relabeling disagrees with the requested permutation")
    return g


@dataclass(frozen=True)
class Transform2:
    """A 2x2 basis change ``sqrt(scale_sq) * matrix``.

    Keeping the square of the prefactor separate lets transforms such as
    Z = (1/sqrt 2) [[1, 1], [i, -i]] act exactly on even-arity signatures.
    """

    matrix: tuple
    scale_sq: object = Fraction(1)

    def __post_init__(self):
        m = tuple(tuple(row) for row in self.matrix)
        if len(m) != 2 or any(len(row) != 2 for row in m):
            raise ValueError("Transform2 needs a 2x2 matrix")
        object.__setattr__(self, "matrix", m)

    @property
    def det(self):
        (p, q), (r, s) = self.matrix
        return p * s - q * r

    @property
    def invertible(self) -> bool:
        return not is_zero(self.det) and not is_zero(self.scale_sq)

    def inverse(self) -> "Transform2":
        if not self.invertible:
            raise ValueError("non-invertible transform")
        (p, q), (r, s) = self.matrix
        det = self.det
        inv = ((s / det, -q / det), (-r / det, p / det))
        return Transform2(tuple(tuple(simplify(v) for v in row) for row in inv), 1 / self.scale_sq)


IDENTITY = Transform2(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))))
Z_TRANSFORM = Transform2(((Fraction(1), Fraction(1)), (I, -I)), Fraction(1, 2))


def _apply_axis(values: list, m, axis: int, transpose: bool) -> list:
    out = [0] * 16
    shift = 3 - axis
    for idx in range(16):
        y = (idx >> shift) & 1
        base = idx & ~(1 << shift)
        if transpose:
            out[idx] = values[base] * m[0][y] + values[base | (1 << shift)] * m[1][y]
        else:
            out[idx] = m[y][0] * values[base] + m[y][1] * values[base | (1 << shift)]
    return out


def apply_holographic(T: Transform2, f: ConstraintFunction4) -> ConstraintFunction4:
    """Return T^{(x)4} f, the contravariant action of T on every argument of f."""
    if not T.invertible:
        raise ValueError("non-invertible transform")
    values = list(f.entries)
    for axis in range(4):
        values = _apply_axis(values, T.matrix, axis, transpose=False)
    factor = T.scale_sq * T.scale_sq
    return ConstraintFunction4(tuple(simplify(v * factor) for v in values))


def transform_binary(g, T: Transform2):
    """Return the covariant transform g (T^{-1})^{(x)2} of a 2x2 binary function."""
    Tinv = T.inverse()
    m = Tinv.matrix
    out = [[0, 0], [0, 0]]
    for y1 in range(2):
        for y2 in range(2):
            total = 0
            for x1 in range(2):
                for x2 in range(2):
                    total = total + g[x1][x2] * m[x1][y1] * m[x2][y2]
            out[y1][y2] = simplify(total * Tinv.scale_sq)
    return tuple(tuple(row) for row in out)


@dataclass(frozen=True)
class BinaryConnector:
    """A binary function placed on an edge; value ``matrix[x_first][x_second]``."""

    matrix: tuple
    kind: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(row) for row in self.matrix))

    def lifted(self) -> list[list]:
        """The connector acting on a two-edge bundle, as a 4x4 matrix (Kronecker square)."""
        m = self.matrix
        out = [[0] * 4 for _ in range(4)]
        for c in range(4):
            x4, x3 = c >> 1, c & 1
            for r in range(4):
                y1, y2 = r >> 1, r & 1
                out[c][r] = m[x4][y1] * m[x3][y2]
        return out


EQ2 = BinaryConnector(((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))), "EQ2")
NEQ2 = BinaryConnector(((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))), "NEQ2")


def matmul(A, B) -> list[list]:
    n, k, m = len(A), len(B), len(B[0])
    return [[sum((A[i][t] * B[t][j] for t in range(k)), 0 * A[0][0]) for j in range(m)]
            for i in range(n)]


def compose_pair(f1: ConstraintFunction4, conn: BinaryConnector, f2: ConstraintFunction4) -> ConstraintFunction4:
    """Two-vertex chain gadget: M(g) = M(f1) . C . M(f2).

    Ports 3 and 4 of ``f1`` are wired to ports 2 and 1 of ``f2`` through
    ``conn``; the result keeps ports 1, 2 of ``f1`` and ports 3, 4 of ``f2``.
    """
    product = matmul(matmul(f1.matrix(), conn.lifted()), f2.matrix())
    return ConstraintFunction4.from_matrix(
        [[simplify(v) for v in row] for row in product])


def identity_signature(one=Fraction(1)) -> ConstraintFunction4:
    """The signature whose constraint matrix is the 4x4 identity (neutral for EQ2 composition)."""
    zero = one * 0
    return ConstraintFunction4.from_matrix(
        [[one if r == c else zero for c in range(4)] for r in range(4)])


def exact_one4() -> ConstraintFunction4:
    return ConstraintFunction4.from_function(
        lambda *x: Fraction(1) if sum(x) == 1 else Fraction(0))


def exact_signature(f: ConstraintFunction4) -> ConstraintFunction4:
    return f.map(to_exact)
