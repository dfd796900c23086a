"""Named randomized invariant checks shared by ``verify`` and the acceptance tests.

Every check takes a seed plus size parameters and returns a CheckResult.  The
checks compare each computation against an independent oracle: orientation
enumeration against tensor contraction, closed forms against explicit
gadget compositions, and synthesized gates against perfect-matching
enumeration.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import classify, geometry, graphs, matchgate, reductions
from .signature import Z_TRANSFORM, apply_holographic, eight_vertex_signature, parity_check


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail, "seconds": round(self.seconds, 3)}

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}  ({self.seconds:.2f}s)  {self.detail}"


def _rational(rng, top=9, den=4):
    return Fraction(rng.randint(0, top), rng.randint(1, den))


def holographic_identity(seed=0, count=200, max_vertices=6) -> CheckResult:
    """2^|V| Z_8v(G) equals the Holant of twice the Z-transformed signature."""
    rng = random.Random(seed)
    for i in range(count):
        g = graphs.random_four_regular(rng.randint(1, max_vertices), rng)
        a, b, c, d = (_rational(rng) for _ in range(4))
        lhs = 2 ** g.n * graphs.z_eight_vertex(g, a, b, c, d)
        transformed = apply_holographic(Z_TRANSFORM, eight_vertex_signature(a, b, c, d)).scale(2)
        rhs = graphs.holant_contract(graphs.HolantInstance.uniform(g, transformed))
        if lhs != rhs:
            return CheckResult("holographic identity", False, f"instance {i}: {lhs} != {rhs} for {(a, b, c, d)}")
    return CheckResult("holographic identity", True, f"{count} graphs, exact equality")


def ising_equivalence(seed=0, count=200, lifts=100, max_vertices=6) -> CheckResult:
    """Holant with the (w, z) signature equals the crossing-circuit Ising sum; lifting inverts crossing."""
    rng = random.Random(seed)
    for i in range(count):
        g = graphs.random_four_regular(rng.randint(1, max_vertices), rng)
        w, z = _rational(rng), _rational(rng)
        report = reductions.verify_ising_identity(g, w, z)
        if not report.equal:
            return CheckResult("Ising equivalence", False, f"instance {i}: {report.to_json()}")
    for i in range(lifts):
        h = reductions.random_multigraph(rng)
        back = reductions.crossing_circuit_graph(reductions.lift_to_four_regular(h))
        if not reductions.label_preserving_isomorphic(back, h):
            return CheckResult("Ising equivalence", False, f"lift round trip failed on {h.to_json()}")
    return CheckResult("Ising equivalence", True, f"{count} identities, {lifts} lift round trips")


def _ordered_quadruple(rng):
    d = Fraction(rng.randint(1, 6), rng.randint(1, 3))
    a = d + _rational(rng, 6, 3)
    b = a + _rational(rng, 6, 3)
    c = b + _rational(rng, 6, 3)
    return (a, b, c, d)


def gadget_semantics(seed=0, count=100) -> CheckResult:
    """Closed-form G1, G2 and chain maps equal explicit compositions of signatures."""
    rng = random.Random(seed)
    for i in range(count):
        p = _ordered_quadruple(rng)
        f = eight_vertex_signature(*p)
        if eight_vertex_signature(*reductions.g1_step(p)) != reductions.g1_gadget(f):
            return CheckResult("gadget semantics", False, f"G1 mismatch at {p}")
        q = p
        while q[2] * q[3] > q[0] * q[1]:
            q = _ordered_quadruple(rng)
        if eight_vertex_signature(*reductions.g2_step(q)) != reductions.g2_gadget(eight_vertex_signature(*q)):
            return CheckResult("gadget semantics", False, f"G2 mismatch at {q}")
        r = tuple(_rational(rng) for _ in range(4))
        k = rng.randint(1, 5)
        if eight_vertex_signature(*reductions.chain_power(r, k)) != \
                reductions.chain_gadget(eight_vertex_signature(*r), k):
            return CheckResult("gadget semantics", False, f"chain mismatch at {r}, k={k}")
    return CheckResult("gadget semantics", True, f"{count} quadruples for each of G1, G2, chain")


def convergence_bound(seed=0, starts=50, max_k=4) -> CheckResult:
    """After 3(k+1) rounds the normalized gap is at most 2^(-2^k)."""
    rng = random.Random(seed)
    rounds = 3 * (max_k + 1)
    trace = reductions.iterate_rounds((1.2, 1.3, 1.5, 1.0), 12)
    if not trace.final_gap <= 2.0 ** -8:
        return CheckResult("convergence bound", False, f"worked start gap {trace.final_gap} > 2^-8")
    worst = 0.0
    for _ in range(starts):
        a, b, c = sorted(rng.uniform(1.0, 1.5) for _ in range(3))
        trace = reductions.iterate_rounds((a, b, c, 1.0), rounds)
        for k in range(1, max_k + 1):
            gap = trace.gaps[3 * (k + 1) - 1]
            bound = 2.0 ** -(2 ** k)
            worst = max(worst, gap / bound)
            if gap > bound:
                return CheckResult("convergence bound", False, f"start {(a, b, c)}: k={k} gap {gap} > {bound}")
    return CheckResult("convergence bound", True, f"{starts} starts, k=1..{max_k}, worst gap/bound {worst:.3g}")


def _valid_normalize_input(rng):
    while True:
        p = tuple(Fraction(rng.randint(0, 9)) for _ in range(4))
        a, b, c, d = p
        if d > 0 and sum(1 for x in (a, b, c) if x == 0) <= 1 and not a == b == c == d:
            return p


def normalization(seed=0, count=100) -> CheckResult:
    """normalize_to_star reaches the star condition and its recipe replays exactly."""
    rng = random.Random(seed)
    steps = 0
    for _ in range(count):
        p = _valid_normalize_input(rng)
        result = reductions.normalize_to_star(p)
        q = result.params
        if not (q.star() and q.d == 1):
            return CheckResult("normalization", False, f"{p}: output {q} misses the star condition")
        if reductions.replay_params(p, result.recipe) != q:
            return CheckResult("normalization", False, f"{p}: recipe does not replay to {q}")
        steps += len(result.recipe)
    return CheckResult("normalization", True, f"{count} inputs, {steps} recipe steps replayed exactly")


def matchgate_necessity(seed=0, count=1000, injections=100) -> CheckResult:
    """Random matchgate signatures have pure parity and satisfy the product inequalities."""
    rng = random.Random(seed)
    worst = None
    for i in range(count):
        exact = i % 2 == 0
        mg = matchgate.random_matchgate(rng, 10, exact=exact)
        f = matchgate.signature(mg)
        if parity_check(f) == "mixed":
            return CheckResult("matchgate necessity", False, f"mixed parity for {mg.to_json()}")
        slacks = matchgate.check_product_inequalities(f)
        low = min(float(s) for s in slacks.values())
        worst = low if worst is None else min(worst, low)
        if (exact and min(slacks.values()) < 0) or low < -1e-9:
            return CheckResult("matchgate necessity", False, f"negative slack {slacks} for {mg.to_json()}")
    for _ in range(injections):
        mg = matchgate.random_matchgate(rng, 10, exact=True)
        report = matchgate.check_injection_mu(mg)
        bad = [cls for cls, r in report.items() if not r.ok]
        if bad:
            return CheckResult("matchgate necessity", False, f"injection failed for {bad} on {mg.to_json()}")
    return CheckResult("matchgate necessity", True,
                       f"{count} gates, min slack {worst:.3g}; {injections} injection checks")


SAMPLE_KINDS = ("interior", "boundary-a", "boundary-b", "boundary-c", "boundary-d",
                "zero-product", "all-zero-products")


def _outside_sample(rng, parity):
    prods = {c: rng.uniform(0.1, 3.0) for c in matchgate.CLASSES}
    cls = rng.choice(matchgate.CLASSES)
    prods[cls] = sum(prods[o] for o in matchgate.CLASSES if o != cls) * rng.uniform(1.01, 2.0)
    vals = []
    for c in matchgate.CLASSES:
        t = rng.uniform(0.3, 3.0)
        vals.extend((t, prods[c] / t))
    return matchgate.GeneralSignature8(*vals, parity=parity)


def matchgate_sufficiency(seed=0, even=1000, odd=200, rejections=100) -> CheckResult:
    """Synthesis round-trips across all sample kinds; out-of-region inputs are rejected."""
    rng = random.Random(seed)
    worst = 0.0
    seen = set()
    for parity, count in (("even", even), ("odd", odd)):
        synth = matchgate.synthesize_even_report if parity == "even" else matchgate.synthesize_odd_report
        for i in range(count):
            kind = SAMPLE_KINDS[i % len(SAMPLE_KINDS)]
            s = matchgate.random_region_sample(rng, kind, parity)
            try:
                report = synth(s)
            except matchgate.SynthesisError as exc:
                return CheckResult("matchgate sufficiency", False, f"{parity} {kind} {s.values()}: {exc}")
            # Re-evaluate independently of the synthesizer's own check.
            residual = matchgate.roundtrip_residual(matchgate.signature(report.gate), s.to_function())
            worst = max(worst, residual)
            seen.add(report.method)
            if residual > matchgate.ROUNDTRIP_TOL:
                return CheckResult("matchgate sufficiency", False, f"{parity} {kind}: residual {residual}")
    for i in range(rejections):
        parity = "even" if i % 2 == 0 else "odd"
        s = _outside_sample(rng, parity)
        synth = matchgate.synthesize_even if parity == "even" else matchgate.synthesize_odd
        try:
            synth(s)
        except matchgate.SynthesisError:
            continue
        return CheckResult("matchgate sufficiency", False, f"accepted out-of-region {s.values()}")
    return CheckResult("matchgate sufficiency", True,
                       f"{even} even + {odd} odd, max residual {worst:.2e}, {len(seen)} routes, "
                       f"{rejections} rejections")


def _coarse_closure_point(rng):
    while True:
        u = tuple(Fraction(rng.randint(0, 12), 4) for _ in range(3))
        if geometry.in_closure(u):
            return u


def minkowski_decomposition(seed=0, count=10_000) -> CheckResult:
    """u = v + w with v on the simplex and w in the triangle cone; strict interior gives positive margin."""
    rng = random.Random(seed)
    interior = 0
    for i in range(count):
        u = _coarse_closure_point(rng) if i % 10 == 0 else geometry.random_closure_point(rng)
        res = geometry.decompose_minkowski(u)
        v, w = res.v, res.w
        if sum(v) != 1 or min(v) < 0 or min(geometry.w_slacks(w)) < 0 or min(w) < 0:
            return CheckResult("Minkowski decomposition", False, f"{u}: invalid pair {res}")
        if any(x + y != t for x, y, t in zip(v, w, u)):
            return CheckResult("Minkowski decomposition", False, f"{u}: v + w != u")
        if min(geometry.region_slacks(u)) > 0:
            interior += 1
            if not res.margin > 0:
                return CheckResult("Minkowski decomposition", False, f"{u}: interior point with margin 0")
    return CheckResult("Minkowski decomposition", True, f"{count} points ({interior} strictly interior)")


WORKED_VERDICTS = (
    ((1, 1, 1, 1), classify.EXACTLY_TRACTABLE, False),
    ((1.1, 1.1, 1.1, 1), classify.FPRAS, False),
    ((1, 1, 1.5, 1), classify.PM_EQUIVALENT, True),
    ((1, 1, 1, 2), classify.OPEN, True),
    ((1, 1, 1, 4), classify.NP_HARD, True),
)


def classifier(seed=0, count=100_000) -> CheckResult:
    """Worked verdicts, plus permutation and scaling invariance on random quadruples."""
    for params, expected, bound in WORKED_VERDICTS:
        v = classify.verdict(*params)
        if v.verdict != expected or v.pm_hard_lower_bound != bound:
            return CheckResult("classifier", False, f"{params}: got {v}, expected {expected}")
    rng = random.Random(seed)
    label = classify.verdict_label
    for i in range(count):
        if i % 4 == 0:
            p = [rng.randint(0, 4) for _ in range(4)]
            lam = rng.randint(1, 9)
        else:
            p = [rng.uniform(0.0, 2.0) for _ in range(4)]
            lam = rng.uniform(0.01, 100.0)
        base = label(*p)
        perm = rng.sample(p[:3], 3) + [p[3]]
        if label(*perm) != base or label(*(x * lam for x in p)) != base:
            return CheckResult("classifier", False, f"invariance broken at {p} (perm {perm}, scale {lam})")
        if i % 10 == 0:
            f = classify.region_flags(*p)
            if (f.in_dSUM and not f.in_DO) or (f.in_SQSUM and not f.in_DO):
                return CheckResult("classifier", False, f"subset invariant broken at {p}")
    return CheckResult("classifier", True, f"5 worked points, {count} invariance checks")


# Cross-module invariants beyond the headline criteria.


def contraction_agrees(seed=0, count=60, max_vertices=6) -> CheckResult:
    """Greedy tensor contraction agrees with brute-force enumeration, with and without connectors."""
    from .signature import NEQ2

    rng = random.Random(seed)
    for i in range(count):
        g = graphs.random_four_regular(rng.randint(1, max_vertices), rng)
        f = eight_vertex_signature(*(_rational(rng) for _ in range(4)))
        conn = NEQ2 if i % 2 else None
        inst = graphs.HolantInstance.uniform(g, f, conn)
        if graphs.holant_bruteforce(inst) != graphs.holant_contract(inst):
            return CheckResult("contraction agrees with enumeration", False, f"instance {i}")
    return CheckResult("contraction agrees with enumeration", True, f"{count} instances")


def gate_surgery(seed=0, count=100) -> CheckResult:
    """flip_port and attach_port_scaler transform entries exactly as predicted."""
    from .signature import flip_bits

    rng = random.Random(seed)
    for _ in range(count):
        mg = matchgate.random_matchgate(rng, 8, exact=True)
        f = matchgate.signature(mg)
        port = rng.randint(1, 4)
        mask = 1 << (4 - port)
        if matchgate.signature(matchgate.flip_port(mg, port)) != flip_bits(f, mask):
            return CheckResult("gate surgery", False, f"flip_port({port}) mismatch")
        s, t = _rational(rng), _rational(rng)
        expected = [x * (s if idx & mask else t) for idx, x in enumerate(f.entries)]
        got = matchgate.signature(matchgate.attach_port_scaler(mg, port, s, t))
        if list(got.entries) != expected:
            return CheckResult("gate surgery", False, f"attach_port_scaler({port}) mismatch")
    return CheckResult("gate surgery", True, f"{count} gates")


def k6_products(seed=0, count=200) -> CheckResult:
    """The unscaled K6 gate realizes pair products proportional to the target products."""
    rng = random.Random(seed)
    for _ in range(count):
        s = matchgate.random_region_sample(rng, "interior")
        prods = s.products()
        gate, _ = matchgate.k6_gate(prods)
        got = matchgate.GeneralSignature8.from_function(matchgate.signature(gate), "even").products()
        lam = got["d"] / prods["d"]
        for cls in matchgate.CLASSES:
            if abs(got[cls] - lam * prods[cls]) > 1e-8 * lam * max(prods.values()):
                return CheckResult("K6 realized products", False, f"{cls}: {got} vs {prods}")
    return CheckResult("K6 realized products", True, f"{count} interior targets")


ACCEPTANCE = (
    holographic_identity, ising_equivalence, gadget_semantics, convergence_bound, normalization,
    matchgate_necessity, matchgate_sufficiency, minkowski_decomposition, classifier,
)
EXTRA = (contraction_agrees, gate_surgery, k6_products)
ALL_CHECKS = ACCEPTANCE + EXTRA
QUICK_SIZES = {
    "holographic_identity": {"count": 20}, "ising_equivalence": {"count": 20, "lifts": 10},
    "gadget_semantics": {"count": 10}, "convergence_bound": {"starts": 5},
    "normalization": {"count": 10}, "matchgate_necessity": {"count": 100, "injections": 10},
    "matchgate_sufficiency": {"even": 100, "odd": 20, "rejections": 10},
    "minkowski_decomposition": {"count": 1000}, "classifier": {"count": 10_000},
    "contraction_agrees": {"count": 10}, "gate_surgery": {"count": 10}, "k6_products": {"count": 20},
}


def run_check(check, seed=0, quick=False) -> CheckResult:
    kwargs = QUICK_SIZES.get(check.__name__, {}) if quick else {}
    start = time.perf_counter()
    try:
        result = check(seed=seed, **kwargs)
    except Exception as exc:  # a crash is reported as a failed invariant
        result = CheckResult(check.__name__, False, f"{type(exc).__name__}: {exc}")
    result.seconds = time.perf_counter() - start
    return result


def _run_named(args):
    name, seed, quick = args
    return run_check(globals()[name], seed, quick)


def run_all(seed=0, quick=False, jobs=1) -> list[CheckResult]:
    names = [c.__name__ for c in ALL_CHECKS]
    if jobs <= 1:
        return [run_check(c, seed, quick) for c in ALL_CHECKS]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_named, [(n, seed, quick) for n in names]))
