import itertools
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from oracles import matching_pfaffian, principal_subsets, same, sympy_skew
from pfres.brill import PolyMatrix, det_oracle
from pfres.errors import PreconditionError, SizeError
from pfres.pfaffian import (
    LEMMA_IDS,
    SkewMatrix,
    admissible_indices,
    check_lemma,
    check_overlapping,
    check_overlapping_empty_gamma,
    check_overlapping_expansion,
    check_overlapping_single_b,
    check_overlapping_single_c,
    comp_pfaffian,
    full_pfaffian,
    generic_skew,
    lemma_sides,
    pfaffian_oracle,
    pfaffian_word,
    random_assignment,
    specialize,
    sub_pfaffian,
    word_sign,
    zero_block_skew,
)
from pfres.polyring import ONE, ZERO, evaluate, t, to_string
from pfres.suites import overlapping_cases

PF4 = "t_1_2*t_3_4-t_1_3*t_2_4+t_1_4*t_2_3"


def test_generic_skew_entries():
    T2 = generic_skew(2)
    assert [[T2[i, j] for j in (1, 2)] for i in (1, 2)] == [[ZERO, t(1, 2)], [-t(1, 2), ZERO]]
    assert generic_skew(4)[3, 1] == -t(1, 3)
    assert generic_skew(5)[2, 2] == ZERO


def test_zero_block_entries():
    U = zero_block_skew(5)
    assert U[1, 2] == ZERO and U[2, 3] == ZERO and U[1, 3] == ZERO
    assert U[1, 4] == t(1, 4)
    assert U[4, 5] == t(4, 5)
    with pytest.raises(SizeError):
        zero_block_skew(3)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_skew_symmetry(n):
    for T in (generic_skew(n), zero_block_skew(n)):
        for i in range(1, n + 1):
            assert T[i, i] == ZERO
            for j in range(1, n + 1):
                assert T[i, j] == -T[j, i]


def test_word_sign_examples():
    assert word_sign((1, 2, 3), (2, 1, 3)) == -1
    assert word_sign((1, 1, 2, 3), (1, 1, 2, 3)) == 0
    assert word_sign((1, 2), (1, 2)) == 1
    assert word_sign((1, 2, 3), (1, 2, 4)) == 0


def test_pfaffian_word_examples():
    T = generic_skew(4)
    assert to_string(pfaffian_word(T, (1, 2, 3, 4))) == PF4
    assert pfaffian_word(T, (1, 2, 3)) == ZERO
    assert pfaffian_word(T, (1, 2, 1, 3)) == ZERO
    assert pfaffian_word(T, ()) == ONE


def test_sub_and_comp_examples():
    assert sub_pfaffian(generic_skew(5), (4, 5)) == t(4, 5)
    assert sub_pfaffian(generic_skew(5), ()) == ONE
    assert to_string(sub_pfaffian(generic_skew(6), (1, 2, 3, 4))) == PF4
    assert comp_pfaffian(generic_skew(5), (1, 2, 3)) == t(4, 5)
    assert to_string(comp_pfaffian(generic_skew(4), ())) == PF4
    assert comp_pfaffian(generic_skew(5), (1, 2)) == ZERO


def test_comp_pfaffian_rejects_repeats():
    with pytest.raises((PreconditionError, SizeError, ValueError)):
        comp_pfaffian(generic_skew(5), (1, 1))


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_full_pfaffian_matches_matching_sum(n):
    assert same(full_pfaffian(generic_skew(n)), matching_pfaffian(sympy_skew(n), range(n)))


def test_sub_pfaffians_match_oracles_up_to_size_8():
    n = 8
    T = generic_skew(n)
    for I in principal_subsets(n, 8):
        assert sub_pfaffian(T, I) == pfaffian_oracle(T, I)
    # the sympy matching sum for a sample of sizes
    M = sympy_skew(n)
    for I in [(1, 2), (2, 5, 6, 8), (1, 3, 4, 5, 7, 8)]:
        assert same(sub_pfaffian(T, I), matching_pfaffian(M, [i - 1 for i in I]))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_pfaffian_squared_is_determinant(n):
    T = generic_skew(n)
    for I in principal_subsets(n, min(n, 6)):
        M = PolyMatrix.from_skew(T, I, I)
        assert sub_pfaffian(T, I) ** 2 == (det_oracle(M) if I else ONE)


def test_pfaffian_squared_is_sympy_determinant():
    assert same(full_pfaffian(generic_skew(6)) ** 2, sympy_skew(6).det(method="berkowitz"))


@given(st.lists(st.integers(1, 7), max_size=6))
def test_unsorted_words_pick_up_the_sign(w):
    T = generic_skew(7)
    w = tuple(w)
    assert pfaffian_word(T, w) == word_sign(w, tuple(sorted(w))) * pfaffian_word(T, tuple(sorted(w)))


@given(st.integers(0, 2**31), st.lists(st.integers(1, 7), unique=True, max_size=7))
def test_specialisation_commutes_with_pfaffians(seed, I):
    T = generic_skew(7)
    p = 32003
    point = random_assignment(sorted({v for row in T.rows for x in row for v in x.variables()}), seed, p)
    S = specialize(T, point, p)
    I = tuple(sorted(I))
    assert sub_pfaffian(S, I) == evaluate(sub_pfaffian(T, I), point, p)


def test_integer_matrix_pfaffian():
    S = SkewMatrix.from_upper(4, lambda i, j: i + j, one=1)
    # (1,2)(3,4) - (1,3)(2,4) + (1,4)(2,3) with entries i + j
    assert full_pfaffian(S) == 3 * 7 - 4 * 6 + 5 * 5


# -- overlapping formula -------------------------------------------------------


def test_overlapping_examples():
    assert check_overlapping(generic_skew(4), (), (1, 2, 3, 4), (), 1)
    assert check_overlapping(generic_skew(5), (5,), (1, 2), (3, 4), 1)
    with pytest.raises(PreconditionError):
        check_overlapping(generic_skew(5), (), (1, 2), (2, 3), 1)
    with pytest.raises(PreconditionError):
        check_overlapping(generic_skew(5), (), (1, 2), (3,), 4)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_overlapping_exhaustive(n):
    for T in (generic_skew(n), zero_block_skew(n)) if n >= 4 else (generic_skew(n),):
        for case in overlapping_cases(n):
            assert check_overlapping(T, *case), case


@pytest.mark.parametrize("n", [7, 8])
def test_overlapping_random(n):
    rng = random.Random(n)
    pool = list(overlapping_cases(n)) if n == 7 else None
    T = generic_skew(n)
    for _ in range(150):
        if pool is not None:
            case = rng.choice(pool)
        else:
            owner = [rng.randrange(4) for _ in range(n)]
            b = rng.randint(1, n)
            owner[b - 1] = 1
            words = [tuple(i + 1 for i in range(n) if owner[i] == k) for k in range(3)]
            case = (*words, b)
        assert check_overlapping(T, *case), case


def test_reduced_forms():
    T = generic_skew(6)
    letters = range(1, 7)
    for alpha_len in (0, 1, 2):
        for alpha in itertools.combinations(letters, alpha_len):
            rest = [x for x in letters if x not in alpha]
            b = rest[0]
            gamma = tuple(rest[1:3])
            assert check_overlapping_single_b(T, alpha, b, gamma)
            beta = tuple(rest[:3])
            c = rest[-1]
            assert check_overlapping_single_c(T, alpha, beta, c, beta[1])
            assert check_overlapping_empty_gamma(T, alpha, beta, beta[0])
    for beta in principal_subsets(6, 6):
        for b in beta:
            assert check_overlapping_expansion(T, beta, b)


# -- lemmas ----------------------------------------------------------------------


def test_lemma_examples():
    T4 = generic_skew(4)
    lhs, rhs = lemma_sides("exp", T4, (1, 2, 3, 4), 1)
    assert lhs == rhs == full_pfaffian(T4)
    assert to_string(rhs) == PF4
    assert check_lemma("pf1-1", generic_skew(5), (1, 2, 3, 4))
    assert check_lemma("42-even", generic_skew(6), (1, 2, 3, 4, 5, 6))
    assert check_lemma("531-odd", generic_skew(7), (1, 2, 3, 4, 5, 6))
    assert check_lemma("51-odd", generic_skew(5), (1, 2, 3, 4, 5))


@pytest.mark.parametrize("lemma", LEMMA_IDS)
@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_lemmas_exhaustive(lemma, n):
    for T in (generic_skew(n), zero_block_skew(n)):
        for u, ell in admissible_indices(lemma, n):
            assert check_lemma(lemma, T, u, ell), (lemma, n, u, ell)


@pytest.mark.parametrize(
    "lemma, u, ell",
    [
        ("exp", (2, 1, 3), 1),
        ("exp", (1, 2), 3),
        ("421-even", (1, 2, 3), 3),
        ("531-odd", (1, 2, 3, 4, 5), None),
        ("51-odd", (4, 1, 2, 3, 5), None),
        ("51-odd", (1, 1, 2, 3, 5), None),
    ],
)
def test_lemma_preconditions(lemma, u, ell):
    with pytest.raises(PreconditionError):
        check_lemma(lemma, generic_skew(6), u, ell)


def test_unknown_lemma():
    with pytest.raises(PreconditionError):
        list(admissible_indices("nope", 5))


def test_531_odd_alternate_last_sign_fails():
    """Flipping the sign of the final term of the five-three-one identity breaks it."""
    T = generic_skew(7)
    pb = lambda *I: comp_pfaffian(T, I)  # noqa: E731
    a, b, c, d, y, z = 1, 2, 3, 4, 5, 6
    lhs, rhs = lemma_sides("531-odd", T, (a, b, c, d, y, z))
    flipped = rhs + 2 * pb(d, y, z) * pb(a, b, c)
    assert lhs == rhs
    assert lhs != flipped


def test_matching_sum_oracle_is_independent():
    M = sympy.Matrix(4, 4, lambda i, j: (i + 1) * 10 + j + 1 if i < j else (-((j + 1) * 10 + i + 1) if i > j else 0))
    assert matching_pfaffian(M, range(4)) ** 2 == M.det()
