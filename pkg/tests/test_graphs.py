import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from eightvertex.graphs import (GraphError, HolantInstance, PortedGraph, double_loop_graph,
                                even_orientations, holant, holant_bruteforce, holant_contract,
                                instance_from_json, orientation_weight, random_four_regular,
                                validate_graph, z_eight_vertex)
from eightvertex.signature import EQ2, NEQ2, ConstraintFunction4, eight_vertex_signature

from conftest import aligned_bond_json, quad, small_rationals

F = Fraction
BOND = PortedGraph.from_json(aligned_bond_json())


def test_validation_accepts_bond_graph_and_reports_problems():
    assert validate_graph(BOND) == []
    broken = PortedGraph(2, (((0, 1), (1, 1)), ((0, 1), (1, 2))))
    problems = validate_graph(broken)
    assert any("duplicate port" in p for p in problems)
    assert any("unused" in p for p in problems)
    with pytest.raises(GraphError):
        z_eight_vertex(broken, 1, 1, 1, 1)


def test_bond_graph_values():
    assert z_eight_vertex(BOND, 1, 1, 1, 1) == 8
    assert z_eight_vertex(BOND, 2, 1, 1, 1) == 14


@given(quad(small_rationals))
def test_bond_graph_closed_form(p):
    a, b, c, d = p
    assert z_eight_vertex(BOND, a, b, c, d) == 2 * (a * a + b * b + c * c + d * d)


def test_zero_weights_give_zero():
    rng = random.Random(3)
    for _ in range(5):
        assert z_eight_vertex(random_four_regular(3, rng), 0, 0, 0, 0) == 0


def test_holant_examples():
    diag = ConstraintFunction4.from_matrix([[4, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 4]])
    assert holant_bruteforce(HolantInstance.uniform(BOND, diag)) == 32
    ones_even = eight_vertex_signature(1, 1, 1, 1)
    assert holant_bruteforce(HolantInstance.uniform(double_loop_graph(), ones_even)) == 4
    zero = eight_vertex_signature(0, 0, 0, 0)
    assert holant_bruteforce(HolantInstance.uniform(BOND, zero)) == 0


def test_empty_graph_contracts_to_one():
    assert holant_contract(HolantInstance(PortedGraph(0, ()), ())) == 1


def test_orientations_agree_with_enumeration_engine():
    rng = random.Random(5)
    for _ in range(10):
        g = random_four_regular(rng.randint(1, 4), rng)
        p = tuple(F(rng.randint(0, 5), rng.randint(1, 3)) for _ in range(4))
        direct = sum(orientation_weight(g, o, *p) for o in even_orientations(g))
        assert direct == z_eight_vertex(g, *p)


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6), st.integers(1, 7), quad(small_rationals), st.booleans())
def test_contraction_equals_bruteforce(seed, n, p, with_connector):
    g = random_four_regular(n, random.Random(seed))
    inst = HolantInstance.uniform(g, eight_vertex_signature(*p), NEQ2 if with_connector else None)
    assert holant_contract(inst) == holant_bruteforce(inst)


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6), st.integers(1, 5), quad(small_rationals))
def test_eight_vertex_is_holant_with_disequality_edges(seed, n, p):
    g = random_four_regular(n, random.Random(seed))
    inst = HolantInstance.uniform(g, eight_vertex_signature(*p), NEQ2)
    assert holant(inst) == z_eight_vertex(g, *p)


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6), st.integers(1, 4), st.integers(1, 4))
def test_disjoint_union_multiplies(seed, n1, n2):
    rng = random.Random(seed)
    g1, g2 = random_four_regular(n1, rng), random_four_regular(n2, rng)
    p = (F(2), F(1), F(3), F(1, 2))
    assert z_eight_vertex(g1.disjoint_union(g2), *p) == z_eight_vertex(g1, *p) * z_eight_vertex(g2, *p)


def test_eq2_connector_is_neutral():
    rng = random.Random(9)
    g = random_four_regular(3, rng)
    f = eight_vertex_signature(F(1), F(2), F(3), F(5))
    assert holant(HolantInstance.uniform(g, f, EQ2)) == holant(HolantInstance.uniform(g, f))


def test_bruteforce_cap_is_enforced():
    g = random_four_regular(6, random.Random(1))
    with pytest.raises(GraphError, match="cap"):
        z_eight_vertex(g, 1, 1, 1, 1, cap=16)


def test_instance_json_forms():
    inst = instance_from_json({"graph": aligned_bond_json(),
                               "function": {"eight_vertex": ["2", "1", "1", "1"]}, "connector": "NEQ2"})
    assert holant(inst) == 14
    with pytest.raises(GraphError):
        instance_from_json({"graph": aligned_bond_json()})
    with pytest.raises(GraphError):
        PortedGraph.from_json({"edges": []})
