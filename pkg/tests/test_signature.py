from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eightvertex.scalar import I
from eightvertex.signature import (EQ2, IDENTITY, NEQ2, PATTERNS, Z_TRANSFORM, ConstraintFunction4,
                                   Transform2, apply_holographic, compose_pair, eight_vertex_params,
                                   eight_vertex_signature, flip_bits, identity_signature, parity_check,
                                   permute_abc, relabel_ports, transform_binary)

from conftest import quad, signed_rationals, small_rationals

F = Fraction


def test_matrix_layout_of_eight_vertex_signature():
    f = eight_vertex_signature(1, 2, 3, 4)
    assert f.matrix() == [[4, 0, 0, 1], [0, 2, 3, 0], [0, 3, 2, 0], [1, 0, 0, 4]]
    assert f[(0, 0, 1, 1)] == 1 and f[(0, 1, 0, 1)] == 3 and f[(0, 1, 1, 0)] == 2 and f[(0, 0, 0, 0)] == 4


def test_zero_and_uniform_signatures():
    assert parity_check(eight_vertex_signature(0, 0, 0, 0)) == "zero"
    f = eight_vertex_signature(1, 1, 1, 1)
    for idx, bits in enumerate(PATTERNS):
        assert f[idx] == (1 if sum(bits) % 2 == 0 else 0)


@given(quad(small_rationals))
def test_eight_vertex_signature_is_even_and_invertible(p):
    f = eight_vertex_signature(*p)
    assert parity_check(f) in ("even", "zero")
    assert eight_vertex_params(f) == p


def test_parity_classes():
    assert parity_check(ConstraintFunction4.from_function(lambda *x: sum(x) % 2)) == "odd"
    assert parity_check(ConstraintFunction4.from_function(lambda *x: 1)) == "mixed"


def test_eight_vertex_params_rejects_non_eight_vertex_functions():
    with pytest.raises(ValueError):
        eight_vertex_params(ConstraintFunction4.from_function(lambda *x: 1))


def test_z_transform_examples():
    assert apply_holographic(Z_TRANSFORM, eight_vertex_signature(1, 1, 1, 1)).matrix() == \
        [[2, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 2]]
    assert apply_holographic(Z_TRANSFORM, eight_vertex_signature(1, 2, 3, 4)).matrix() == \
        [[5, 0, 0, 0], [0, -1, -2, 0], [0, -2, -1, 0], [0, 0, 0, 5]]


@given(quad(signed_rationals))
def test_z_transform_closed_form(p):
    a, b, c, d = p
    g = apply_holographic(Z_TRANSFORM, eight_vertex_signature(a, b, c, d))
    half = F(1, 2)
    expected = [[half * (a + b + c + d), 0, 0, half * (-a + b + c - d)],
                [0, half * (a - b + c - d), half * (a + b - c - d), 0],
                [0, half * (a + b - c - d), half * (a - b + c - d), 0],
                [half * (-a + b + c - d), 0, 0, half * (a + b + c + d)]]
    assert g.matrix() == expected


def test_identity_transform_and_singular_transform():
    f = eight_vertex_signature(1, 2, 3, 4)
    assert apply_holographic(IDENTITY, f) == f
    with pytest.raises(ValueError, match="non-invertible transform"):
        apply_holographic(Transform2(((1, 1), (1, 1))), f)


@given(quad(signed_rationals))
def test_transform_then_inverse_is_identity(p):
    f = eight_vertex_signature(*p)
    assert apply_holographic(Z_TRANSFORM.inverse(), apply_holographic(Z_TRANSFORM, f)) == f


def test_disequality_becomes_equality_under_z():
    assert transform_binary(NEQ2.matrix, Z_TRANSFORM) == ((1, 0), (0, 1))


def test_compose_pair_examples():
    ones = eight_vertex_signature(1, 1, 1, 1)
    assert compose_pair(ones, NEQ2, ones) == eight_vertex_signature(2, 2, 2, 2)
    f = eight_vertex_signature(1, 2, 3, 4)
    assert compose_pair(f, EQ2, identity_signature()) == f


def test_compose_pair_matches_explicit_wiring():
    """Ports 3, 4 of the left copy meet ports 2, 1 of the right copy through the connector."""
    f1 = ConstraintFunction4(tuple(F(k + 1) for k in range(16)))
    f2 = ConstraintFunction4(tuple(F(2 * k - 7) for k in range(16)))
    for conn in (EQ2, NEQ2):
        g = compose_pair(f1, conn, f2)
        for x1, x2, x3, x4 in PATTERNS:
            total = 0
            for e3 in (0, 1):
                for e4 in (0, 1):
                    for y2 in (0, 1):
                        for y1 in (0, 1):
                            total += f1[(x1, x2, e3, e4)] * conn.matrix[e3][y2] * conn.matrix[e4][y1] \
                                * f2[(y1, y2, x3, x4)]
            assert g[(x1, x2, x3, x4)] == total


@pytest.mark.parametrize("perm", [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)])
def test_permute_abc_all_permutations(perm):
    p = (F(1), F(2), F(3), F(4))
    g = permute_abc(eight_vertex_signature(*p), perm)
    assert eight_vertex_params(g) == (p[perm[0]], p[perm[1]], p[perm[2]], p[3])


def test_swap_b_and_c_is_a_port_relabeling():
    f = eight_vertex_signature(1, 2, 3, 4)
    assert permute_abc(f, (0, 2, 1)) == relabel_ports(f, (1, 2, 4, 3))
    assert eight_vertex_params(permute_abc(f, (0, 2, 1))) == (1, 3, 2, 4)


def test_exchanging_ports_2_and_3_swaps_a_and_c():
    f = eight_vertex_signature(1, 2, 3, 4)
    assert eight_vertex_params(relabel_ports(f, (1, 3, 2, 4))) == (3, 2, 1, 4)


@given(st.integers(0, 15), st.integers(0, 15))
def test_flip_bits_composes_by_xor(m1, m2):
    f = ConstraintFunction4(tuple(range(16)))
    assert flip_bits(flip_bits(f, m1), m2) == flip_bits(f, m1 ^ m2)


def test_gaussian_entries_survive_transform():
    f = ConstraintFunction4.from_function(lambda *x: I if sum(x) == 2 else 0)
    g = apply_holographic(Z_TRANSFORM.inverse(), apply_holographic(Z_TRANSFORM, f))
    assert g == f
