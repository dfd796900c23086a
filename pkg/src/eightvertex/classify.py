"""Approximation-complexity verdicts for zero-field eight-vertex parameters (a, b, c, d).

Regions, all with inclusive inequalities:

    DO     = {x <= sum of the other three, for each x in a, b, c, d}
    d-SUM  = {a + d <= b + c, b + d <= a + c, c + d <= a + b}
    SQ-SUM = {x^2 <= sum of the squares of the other three}

Exact inputs (int, Fraction) are compared exactly.  Float inputs use a
tolerance relative to the largest parameter so that verdicts are invariant
under positive scaling.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .scalar import DEFAULT_TOL, format_scalar, is_exact

EXACTLY_TRACTABLE = "exactly-tractable"
FPRAS = "FPRAS"
PM_EASY = "PM-easy"
PM_HARD = "PM-hard"
PM_EQUIVALENT = "PM-equivalent"
NP_HARD = "NP-hard"
OPEN = "open-in-DO"
VERDICTS = (EXACTLY_TRACTABLE, FPRAS, PM_EASY, PM_HARD, PM_EQUIVALENT, NP_HARD, OPEN)

CITATIONS = {
    EXACTLY_TRACTABLE: "exact dichotomy: polynomial time when a = b = c = d, at least three "
                       "parameters vanish, or two vanish and the other two are equal",
    NP_HARD: "prior work: approximating the partition function outside DO is NP-hard",
    FPRAS: "prior work: FPRAS on general 4-regular graphs in d-SUM intersect SQ-SUM",
    PM_EASY: "matchgate realizability: every SQ-SUM point reduces to #PerfectMatchings",
    PM_HARD: "gadget reduction: #PerfectMatchings reduces to any point outside d-SUM "
             "with d > 0 and at most one zero among a, b, c",
    PM_EQUIVALENT: "both reductions apply: SQ-SUM minus d-SUM is #PerfectMatchings-equivalent",
    OPEN: "no classification is known inside DO outside d-SUM and SQ-SUM",
}


class ClassifyError(ValueError):
    pass


@dataclass(frozen=True)
class RegionFlags:
    in_DO: bool
    in_dSUM: bool
    in_SQSUM: bool
    boundary: tuple = ()  # names of inequalities that hold with equality

    def to_json(self) -> dict:
        return {"DO": self.in_DO, "d-SUM": self.in_dSUM, "SQ-SUM": self.in_SQSUM,
                "boundary": list(self.boundary)}


@dataclass(frozen=True)
class Verdict:
    params: tuple
    flags: RegionFlags
    verdict: str
    pm_hard_lower_bound: bool
    citations: tuple
    planar_note: str
    notes: tuple = field(default=())

    def to_json(self) -> dict:
        return {
            "params": [format_scalar(x) if is_exact(x) else float(x) for x in self.params],
            "flags": self.flags.to_json(),
            "verdict": self.verdict,
            "pm_hard_lower_bound": self.pm_hard_lower_bound,
            "citations": list(self.citations),
            "planar_note": self.planar_note,
            "notes": list(self.notes),
        }

    def __str__(self):
        extra = " (PM-hard lower bound)" if self.verdict == OPEN and self.pm_hard_lower_bound else ""
        return f"{self.verdict}{extra}"


def _check(params):
    params = tuple(params)
    if len(params) != 4:
        raise ClassifyError("need four parameters a b c d")
    for x in params:
        if x < 0:
            raise ClassifyError("parameters must be nonnegative")
    exact = all(is_exact(x) for x in params)
    if not exact:
        params = tuple(float(x) for x in params)
    return params, exact


def _comparators(params, exact, tol):
    """Return (le, eq, le2, eq2) for linear and quadratic comparisons."""
    if exact:
        return (lambda x, y: x <= y), (lambda x, y: x == y), (lambda x, y: x <= y), (lambda x, y: x == y)
    scale = max(params)
    band = tol * scale
    band2 = tol * scale * scale
    return ((lambda x, y: x <= y + band), (lambda x, y: abs(x - y) <= band),
            (lambda x, y: x <= y + band2), (lambda x, y: abs(x - y) <= band2))


def _flags(params, exact, tol) -> RegionFlags:
    a, b, c, d = params
    le, eq, le2, eq2 = _comparators(params, exact, tol)
    total = a + b + c + d
    sq = (a * a, b * b, c * c, d * d)
    sqtotal = sum(sq)
    names = "abcd"
    boundary = []
    in_do = True
    in_sq = True
    for name, x, x2 in zip(names, params, sq):
        rest = total - x
        if not le(x, rest):
            in_do = False
        elif eq(x, rest):
            boundary.append(f"DO:{name}")
        rest2 = sqtotal - x2
        if not le2(x2, rest2):
            in_sq = False
        elif eq2(x2, rest2):
            boundary.append(f"SQ-SUM:{name}")
    in_d = True
    for name, x, y, z in (("a", a, b, c), ("b", b, a, c), ("c", c, a, b)):
        if not le(x + d, y + z):
            in_d = False
        elif eq(x + d, y + z):
            boundary.append(f"d-SUM:{name}")
    return RegionFlags(in_do, in_d, in_sq, tuple(boundary))


def region_flags(a, b, c, d, tol=DEFAULT_TOL) -> RegionFlags:
    params, exact = _check((a, b, c, d))
    return _flags(params, exact, tol)


def _exactly_tractable(params, eq) -> bool:
    zeros = [x for x in params if eq(x, 0)]
    if eq(params[0], params[1]) and eq(params[1], params[2]) and eq(params[2], params[3]):
        return True
    if len(zeros) >= 3:
        return True
    if len(zeros) == 2:
        x, y = (v for v in params if not eq(v, 0))
        return eq(x, y)
    return False


def _planar_note(params, flags, exact, tol) -> str:
    a, b, c, d = params
    le, _, _, eq2 = _comparators(params, exact, tol)
    notes = []
    if flags.in_SQSUM and le(a + d, b + c) and le(b + d, a + c) and le(a + b, c + d):
        notes.append("planar graphs: inside the extra planar FPRAS region")
    if eq2(a * a + b * b, c * c + d * d):
        notes.append("planar graphs: exactly computable by FKT since a^2 + b^2 = c^2 + d^2")
    return "; ".join(notes) if notes else "no additional planar result applies"


def verdict_label(a, b, c, d, tol=DEFAULT_TOL) -> str:
    """The verdict string only; the fast path used by bulk classification."""
    params, exact = _check((a, b, c, d))
    return _decide(params, exact, tol)[0]


def _decide(params, exact, tol):
    flags = _flags(params, exact, tol)
    _, eq, _, _ = _comparators(params, exact, tol)
    a, b, c, d = params
    zeros_abc = sum(1 for x in (a, b, c) if eq(x, 0))
    hard_bound = (not flags.in_dSUM) and not eq(d, 0) and zeros_abc <= 1
    if _exactly_tractable(params, eq):
        label = EXACTLY_TRACTABLE
    elif not flags.in_DO:
        label = NP_HARD
    elif flags.in_dSUM and flags.in_SQSUM:
        label = FPRAS
    elif flags.in_SQSUM and hard_bound:
        label = PM_EQUIVALENT
    elif flags.in_SQSUM:
        label = PM_EASY
    else:
        label = OPEN
    return label, flags, hard_bound


def verdict(a, b, c, d, tol=DEFAULT_TOL) -> Verdict:
    params, exact = _check((a, b, c, d))
    label, flags, hard_bound = _decide(params, exact, tol)
    citations = [CITATIONS[label]]
    if label == PM_EQUIVALENT:
        citations = [CITATIONS[PM_EASY], CITATIONS[PM_HARD]]
    elif label == OPEN and hard_bound:
        citations.append(CITATIONS[PM_HARD])
    notes = []
    if flags.boundary:
        notes.append("on the boundary of: " + ", ".join(flags.boundary))
    if not exact:
        notes.append(f"float comparisons with relative tolerance {tol:g}")
    sorted_abc = tuple(sorted(params[:3]))
    if sorted_abc != params[:3]:
        notes.append("a, b, c are symmetric; zero-parameter cases are read after sorting them")
    return Verdict(params, flags, label, hard_bound, tuple(citations),
                   _planar_note(params, flags, exact, tol), tuple(notes))


def parse_params(tokens, exact=True) -> tuple:
    from .scalar import parse_scalar

    return tuple(parse_scalar(t, exact) for t in tokens)
