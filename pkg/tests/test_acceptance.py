"""The nine headline acceptance criteria, each at full size and under its time limit.

Each test prints one PASS/FAIL line; the lines are repeated in the pytest
terminal summary.
"""

import time

import pytest

from eightvertex import suite

LINES = []

CRITERIA = [
    (1, "holographic identity: 200 graphs, exact", suite.holographic_identity, {"count": 200}, 10.0),
    (2, "Ising equivalence: 200 identities + 100 lifts", suite.ising_equivalence,
     {"count": 200, "lifts": 100}, 10.0),
    (3, "gadget semantics: 100 quadruples", suite.gadget_semantics, {"count": 100}, 5.0),
    (4, "convergence bound: 50 starts, k = 1..4", suite.convergence_bound, {"starts": 50, "max_k": 4}, 5.0),
    (5, "normalization: 100 inputs replay exactly", suite.normalization, {"count": 100}, 10.0),
    (6, "matchgate necessity: 1000 gates + 100 injections", suite.matchgate_necessity,
     {"count": 1000, "injections": 100}, 60.0),
    (7, "matchgate sufficiency: 1000 even + 200 odd + rejections", suite.matchgate_sufficiency,
     {"even": 1000, "odd": 200}, 60.0),
    (8, "Minkowski decomposition: 10^4 points", suite.minkowski_decomposition, {"count": 10_000}, 5.0),
    (9, "classifier: worked points + 10^5 invariance checks", suite.classifier, {"count": 100_000}, 5.0),
]


@pytest.mark.parametrize("number,title,check,sizes,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_acceptance(number, title, check, sizes, limit):
    start = time.perf_counter()
    result = check(seed=0, **sizes)
    elapsed = time.perf_counter() - start
    within = elapsed < limit
    ok = result.ok and within
    line = (f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} | {result.detail} | "
            f"{elapsed:.2f}s of {limit:.0f}s")
    LINES.append(line)
    print(line)
    assert result.ok, result.detail
    assert within, f"took {elapsed:.2f}s, limit {limit}s"
