import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from eightvertex.matchgate import (GeneralSignature8, Matchgate, MatchgateError, SynthesisError,
                                   attach_port_scaler, check_injection_mu, check_product_inequalities,
                                   flip_port, k4_gate, k6_gate, membership, random_matchgate,
                                   random_region_sample, roundtrip_residual, signature,
                                   synthesize_even, synthesize_even_report, synthesize_odd,
                                   synthesize_odd_report)
from eightvertex.signature import exact_one4, flip_bits, parity_check

F = Fraction
ONE = F(1)
K4 = k4_gate(*[ONE] * 6)


def two_vertex_gate(w):
    return Matchgate(2, ((0, 1, w),), (0, 0, 1, 1))


# Signatures by enumeration.

def test_k4_signature():
    assert signature(K4).matrix() == [[3, 0, 0, 1], [0, 1, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1]]


def test_single_vertex_gate_is_exact_one():
    assert signature(Matchgate(1, (), (0, 0, 0, 0))) == exact_one4()


def test_two_vertex_gate():
    w = F(5, 2)
    assert signature(two_vertex_gate(w)).matrix() == [[w, 0, 0, 0], [0, 1, 1, 0], [0, 1, 1, 0], [0, 0, 0, 0]]


def test_size_cap_and_validation():
    with pytest.raises(MatchgateError, match="limited"):
        signature(Matchgate(25, (), (0, 1, 2, 3)))
    with pytest.raises(MatchgateError):
        signature(Matchgate(2, ((0, 1, F(-1)),), (0, 0, 1, 1)))
    with pytest.raises(MatchgateError):
        Matchgate.from_json({"vertices": 2, "edges": [[0, 5, "1"]], "dangling": [0, 0, 1, 1]})


def test_gate_json_round_trip():
    gate = synthesize_even([1, 2, 1, 3, 2, 1, 1, 2])
    again = Matchgate.from_json(json.loads(json.dumps(gate.to_json())), exact=False)
    assert signature(again).isclose(signature(gate))
    exact_gate = Matchgate.from_json(json.dumps(K4.to_json()))
    assert signature(exact_gate) == signature(K4)


# Membership.

def test_membership_examples():
    assert membership(GeneralSignature8(*[1] * 8)).status == "interior"
    m = membership(GeneralSignature8(1, 1, 1, 1, 1, 1, 3, 1))
    assert (m.status, m.classes) == ("boundary", ("d",))
    m = membership(GeneralSignature8(1, 1, 1, 1, 1, 1, 4, 1))
    assert (m.status, m.classes) == ("outside", ("d",))


def test_membership_float_tolerance():
    m = membership(GeneralSignature8(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 3.0 + 1e-12, 1.0))
    assert m.status == "boundary"


# Necessity on random gates.

@settings(max_examples=80)
@given(st.integers(0, 10 ** 6), st.booleans())
def test_random_gates_satisfy_product_inequalities(seed, exact):
    gate = random_matchgate(random.Random(seed), 10, exact=exact)
    f = signature(gate)
    assert parity_check(f) != "mixed"
    slacks = check_product_inequalities(f)
    if exact:
        assert min(slacks.values()) >= 0
    else:
        assert min(slacks.values()) >= -1e-9


def test_injection_on_k4():
    report = check_injection_mu(K4)
    assert all(r.ok for r in report.values())
    assert (report["a"].lhs, report["a"].rhs) == (1, 5)


def test_injection_vacuous_when_source_empty():
    report = check_injection_mu(two_vertex_gate(F(3)))
    assert report["a"].sources == 0 and report["a"].ok


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_injection_random(seed):
    report = check_injection_mu(random_matchgate(random.Random(seed), 10, exact=True, density=0.6))
    assert all(r.ok for r in report.values())


# Surgery.

def test_flip_port_examples():
    f = signature(K4)
    flipped = flip_port(K4, 2)
    assert parity_check(signature(flipped)) == "odd"
    assert signature(flip_port(flipped, 2)) == f
    g = signature(flip_port(two_vertex_gate(F(7)), 1))
    assert g == flip_bits(signature(two_vertex_gate(F(7))), 0b1000)
    assert g[(1, 0, 0, 0)] == 7


def test_port_scaler_examples():
    assert signature(attach_port_scaler(K4, 3, ONE, ONE)) == signature(K4)
    assert signature(attach_port_scaler(K4, 1, F(2), ONE)).matrix() == \
        [[3, 0, 0, 1], [0, 1, 1, 0], [0, 2, 2, 0], [2, 0, 0, 2]]


@settings(max_examples=30)
@given(st.integers(0, 10 ** 6), st.lists(st.fractions(F(1, 4), 4, max_denominator=4), min_size=8, max_size=8))
def test_all_port_scalers_scale_pair_products_uniformly(seed, weights):
    gate = random_matchgate(random.Random(seed), 8, exact=True)
    before = GeneralSignature8.from_function(signature(gate), None)
    scaled = gate
    for port in range(1, 5):
        scaled = attach_port_scaler(scaled, port, weights[2 * port - 2], weights[2 * port - 1])
    after = GeneralSignature8.from_function(signature(scaled), before.parity)
    factor = 1
    for w in weights:
        factor *= w
    for cls, value in before.products().items():
        assert after.products()[cls] == factor * value


# Synthesis.

def test_all_ones_even_round_trip():
    report = synthesize_even_report([F(1)] * 8)
    assert report.residual <= 1e-6 and report.method.startswith("k6")


def test_boundary_d_gives_all_ones_k4():
    gate = synthesize_even([1, 1, 1, 1, 1, 1, 3, 1])
    assert signature(gate) == signature(K4)
    assert gate.n == 4 and all(w == 1 for _, _, w in gate.edges)


def test_outside_region_rejected():
    with pytest.raises(SynthesisError, match="outside"):
        synthesize_even([1, 1, 1, 1, 1, 1, 4, 1])
    with pytest.raises(SynthesisError, match="outside"):
        synthesize_odd([1, 1, 1, 1, 1, 1, 4, 1])


def test_parity_and_sign_errors():
    with pytest.raises(SynthesisError, match="parity"):
        synthesize_even(GeneralSignature8(*[1] * 8, parity="odd"))
    with pytest.raises(SynthesisError, match="nonnegative"):
        synthesize_even([1, 1, 1, 1, 1, 1, 1, -1])


def test_exact_one_odd_tuple():
    s = GeneralSignature8(1, 0, 1, 0, 0, 1, 1, 0, parity="odd")
    assert s.to_function() == exact_one4()
    gate = synthesize_odd(s)
    assert roundtrip_residual(signature(gate), exact_one4()) == 0


def test_all_ones_odd_round_trip():
    assert synthesize_odd_report([1.0] * 8).residual <= 1e-6


def test_zero_function():
    gate = synthesize_even([0] * 8)
    assert signature(gate).is_zero()


@pytest.mark.parametrize("kind", ["interior", "boundary-a", "boundary-b", "boundary-c", "boundary-d",
                                  "zero-product", "all-zero-products"])
@pytest.mark.parametrize("parity", ["even", "odd"])
def test_round_trip_each_sample_kind(kind, parity):
    rng = random.Random(hash((kind, parity)) & 0xFFFF)
    synth = synthesize_even_report if parity == "even" else synthesize_odd_report
    for _ in range(15):
        s = random_region_sample(rng, kind, parity)
        report = synth(s)
        assert roundtrip_residual(signature(report.gate), s.to_function()) <= 1e-6
        assert all(w >= 0 for _, _, w in report.gate.edges)


@settings(max_examples=40)
@given(st.lists(st.integers(0, 6), min_size=8, max_size=8))
def test_integer_tuples_synthesize_or_reject(vals):
    s = GeneralSignature8(*vals)
    if membership(s).status == "outside":
        with pytest.raises(SynthesisError):
            synthesize_even(s)
    else:
        report = synthesize_even_report(s)
        assert roundtrip_residual(signature(report.gate), s.to_function()) <= 1e-6


def test_k6_state_invariants():
    rng = random.Random(4)
    for _ in range(20):
        s = random_region_sample(rng, "interior")
        gate, state = k6_gate(s.products())
        assert all(w >= 0 for _, _, w in gate.edges)
        assert min(state.o) > 0
        assert min(state.c * v for v in state.primed) >= 0
        lam = state.c
        # The scaled primed values are each at least 2.
        scaled = [o + 1 / o for o in state.o]
        assert min(scaled) >= 2 - 1e-12
        assert lam > 0
