from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pfres.errors import PreconditionError, SizeError
from pfres.pfaffian import comp_pfaffian, full_pfaffian, generic_skew, sub_pfaffian
from pfres.schubert import (
    GradedFormat,
    gorenstein_format,
    hasse_to_dot,
    identity_subset,
    linking_degrees,
    mapping_cone_format,
    poset_leq,
    schubert_ideal,
    spinor_to_pfaffian,
    subset_poset,
    weyl_action,
    weyl_word_subset,
)
from pfres.suites import N4_COVERS, generators_match_d1
from pfres.resolution import build


def test_weyl_examples():
    assert weyl_action(2, (3, 4), 4) == (2, 4)
    assert weyl_action(4, (), 4) == (3, 4)
    assert weyl_action(1, (3, 4), 4) == (3, 4)
    assert weyl_action(4, (3, 4), 4) == ()
    assert weyl_action(4, (1, 3), 4) == (1, 3)
    with pytest.raises(SizeError):
        weyl_action(5, (), 4)


@pytest.mark.parametrize("n", range(2, 9))
def test_reflections_are_involutions_preserving_parity(n):
    for k in range(n + 1):
        for I in combinations(range(1, n + 1), k):
            for i in range(1, n + 1):
                J = weyl_action(i, I, n)
                assert len(J) % 2 == len(I) % 2
                assert weyl_action(i, J, n) == I


def test_order_examples():
    assert poset_leq((1, 4), (2, 4), 4)
    assert poset_leq((), (3, 4), 4)
    assert not poset_leq((3, 4), (), 4)
    # {1,2} <= {1,3} <= {1,4} under the generating moves
    assert poset_leq((1, 2), (1, 4), 4)
    with pytest.raises(PreconditionError):
        poset_leq((1,), (1, 2), 4)


@pytest.mark.parametrize("n", range(2, 11))
def test_cardinality(n):
    for cls in ("even-subsets", "odd-subsets"):
        assert len(subset_poset(n, cls)) == 2 ** (n - 1)


def test_n4_hasse_diagram():
    P = subset_poset(4)
    assert set(P.covers()) == N4_COVERS
    dot = hasse_to_dot(P)
    assert dot.count("[label=") == 8 + len(N4_COVERS)
    assert 'label="∅"' in dot
    assert dot.startswith("digraph")


def test_n4_extremes():
    P = subset_poset(4)
    assert sorted(P.minimal()) == [(), (1, 2)]
    assert sorted(P.maximal()) == [(1, 2, 3, 4), (3, 4)]


@st.composite
def triples(draw):
    n = draw(st.integers(2, 7))
    P = subset_poset(n)
    els = P.elements
    pick = st.integers(0, len(els) - 1)
    return P, els[draw(pick)], els[draw(pick)], els[draw(pick)]


@given(triples())
def test_order_axioms(data):
    P, I, J, K = data
    assert P.leq(I, I)
    if P.leq(I, J) and P.leq(J, I):
        assert I == J
    if P.leq(I, J) and P.leq(J, K):
        assert P.leq(I, K)


@given(triples())
def test_covers_are_reflections(data):
    P = data[0]
    for lo, hi, i in P.covers():
        assert weyl_action(i, lo, P.n) == hi
        assert P.leq(lo, hi) and lo != hi


def test_spinor_examples():
    X = generic_skew(6)
    assert spinor_to_pfaffian((), X) == full_pfaffian(X)
    assert spinor_to_pfaffian((1, 2), X) == comp_pfaffian(X, (5, 6))
    Y = generic_skew(5)
    assert spinor_to_pfaffian((5,), Y) == comp_pfaffian(Y, (1,))
    Z = generic_skew(4)
    assert spinor_to_pfaffian((3, 4), Z) == sub_pfaffian(Z, (3, 4))
    with pytest.raises(PreconditionError):
        spinor_to_pfaffian((7,), X)


def test_identity_and_words():
    assert identity_subset(6) == ()
    assert identity_subset(7) == (7,)
    assert weyl_word_subset((), 7) == (7,)
    assert weyl_word_subset((6,), 7) == (6,)
    # even n: the top two letters are exchanged, so s_{n-1} leaves the identity
    assert weyl_word_subset((5,), 6) == (5, 6)
    assert weyl_word_subset((6,), 6) == ()


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_four_generator_ideal_is_d1(n):
    assert generators_match_d1(n)


def test_w_prime_n5_are_submaximal_pfaffians():
    X = generic_skew(5)
    ideal = schubert_ideal(5, "w'", X)
    assert len(ideal.generators) == 5
    want = {comp_pfaffian(X, (i,)) for i in range(1, 6)}
    got = {g for g in ideal.generators} | {-g for g in ideal.generators}
    assert want <= got


def test_w_prime_n6_starts_with_full_pfaffian():
    X = generic_skew(6)
    ideal = schubert_ideal(6, "w-prime", X)
    assert ideal.generators[0] == full_pfaffian(X)
    assert ideal.redundant == (0,)
    data = ideal.to_json()
    assert data["generators"][0]["redundant"] is True
    assert len(data["generators"]) == 6


def test_ideal_errors():
    with pytest.raises(SizeError):
        schubert_ideal(4, "w'")
    with pytest.raises(SizeError):
        schubert_ideal(6, "w3")
    with pytest.raises(SizeError):
        schubert_ideal(6, "w'", generic_skew(5))


def test_formats_n6_n7():
    G, A = mapping_cone_format(6)
    assert G.modules == (((1, 0),), ((5, 2),), ((5, 3),), ((1, 5),))
    assert A.modules == (((1, 0),), ((1, 3), (3, 2)), ((6, 4),), ((3, 5),))
    G, A = mapping_cone_format(7)
    assert G.modules == (((1, 0),), ((7, 3),), ((7, 4),), ((1, 7),))
    assert A.modules == (((1, 0),), ((3, 3), (1, 2)), ((7, 5),), ((4, 6),))
    assert str(A) == "0 → R^4(-6) → R^7(-5) → R^3(-3)⊕R(-2) → R"


@pytest.mark.parametrize("n", range(5, 11))
def test_linked_ranks(n):
    _, A = mapping_cone_format(n)
    assert A.ranks == (1, 4, n, n - 3)
    C = build(n, "odd" if n % 2 else "even", "generic")
    assert A.ranks == (1, C.d1.cols, C.d2.cols, C.d3.cols)
    # the Euler characteristic of the graded format vanishes in rank
    assert A.ranks[0] - A.ranks[1] + A.ranks[2] - A.ranks[3] == 0


@pytest.mark.parametrize("n", range(5, 11))
def test_linked_generator_degrees_match_resolution(n):
    _, A = mapping_cone_format(n)
    C = build(n, "odd" if n % 2 else "even", "generic")
    degs = sorted(x.min_degree() for x in C.d1.entries[0])
    assert all(len(x.degrees()) == 1 for x in C.d1.entries[0])
    assert degs == A.shifts(1)


def test_gorenstein_is_self_dual():
    for n in range(5, 11):
        G = gorenstein_format(n)
        top = G.shifts(3)[0]
        assert [top - d for d in reversed(G.shifts(2))] == G.shifts(1)
        assert len(linking_degrees(n)) == 3


def test_graded_format_validation():
    with pytest.raises(SizeError):
        GradedFormat((((1, 0),),))
    with pytest.raises(SizeError):
        GradedFormat((((1, 0),), ((0, 1),), ((1, 2),), ((1, 3),)))
