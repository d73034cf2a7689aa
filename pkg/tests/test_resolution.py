import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import GOLDEN
from pfres.brill import PolyMatrix
from pfres.errors import IdentityFailure, SizeError
from pfres.pfaffian import comp_pfaffian, full_pfaffian, generic_skew, zero_block_skew
from pfres.polyring import ONE, ZERO, parse, t
from pfres.resolution import (
    ResolutionComplex,
    build,
    change_of_basis,
    check_change_of_basis,
    check_column_independence,
    check_complex,
    check_dg_products,
    check_ideal_equality,
    check_minor_product,
    check_pf_squares,
    check_regseq_expansions,
    dg_products,
    dumps,
    majority_rank,
    minor_product_sides,
    specialize_and_rank,
    to_json,
    to_latex,
)

SIZES = [(5, "odd"), (6, "even"), (7, "odd"), (8, "even")]


def test_odd_d1_display():
    C = build(5, "odd", "generic")
    T = generic_skew(5)
    pb = lambda *I: comp_pfaffian(T, I)  # noqa: E731
    assert list(C.d1.entries[0]) == [-pb(1), pb(2), -pb(3), pb(1, 2, 3)]
    assert C.d2[1, 1] == pb(1, 2, 3) == t(4, 5)


def test_even_zero_block_d1_generators():
    C = build(6, "even", "zero-block")
    U = zero_block_skew(6)
    gens = {full_pfaffian(U), comp_pfaffian(U, (1, 2)), comp_pfaffian(U, (1, 3)), comp_pfaffian(U, (2, 3))}
    assert {x if x in gens else -x for x in C.d1.entries[0]} == gens


@pytest.mark.parametrize("n, parity", SIZES + [(9, "odd"), (10, "even")])
@pytest.mark.parametrize("variant", ["generic", "zero-block"])
def test_format_and_complex(n, parity, variant):
    C = build(n, parity, variant)
    assert C.d1.shape == (1, 4) and C.d2.shape == (4, n) and C.d3.shape == (n, n - 3)
    assert check_complex(C)


def test_d3_is_a_block_of_the_matrix():
    C = build(7, "odd")
    T = generic_skew(7)
    assert C.d3 == PolyMatrix.from_skew(T, range(1, 8), range(4, 8))


def test_corrupted_complex_reports_position():
    C = build(5, "odd")
    rows = [list(r) for r in C.d2.entries]
    rows[1][2] = rows[1][2] + t(1, 2)
    bad = ResolutionComplex(C.n, C.parity, C.variant, C.d3, PolyMatrix(rows), C.d1, C.matrix)
    verdict = check_complex(bad)
    assert not verdict
    assert verdict.where[0] in ("d1*d2", "d2*d3")


@pytest.mark.parametrize("n, parity", [(4, "odd"), (6, "odd"), (5, "even"), (4, "even"), (7, "weird")])
def test_build_rejects_bad_sizes(n, parity):
    with pytest.raises(SizeError):
        build(n, parity)


def test_build_rejects_bad_variant():
    with pytest.raises(SizeError):
        build(5, "odd", "other")


@pytest.mark.parametrize("n, parity", SIZES)
def test_identity_suites(n, parity):
    assert check_ideal_equality(n, parity)
    assert check_change_of_basis(n, parity)
    assert check_dg_products(n, parity)
    assert check_regseq_expansions(n, parity)
    assert check_pf_squares(n, parity)


@pytest.mark.parametrize("parity", ["odd", "even"])
def test_change_of_basis_inverse(parity):
    cob = change_of_basis(parity)
    assert cob.S @ cob.S_inv == PolyMatrix.identity(4)
    assert cob.S_inv @ cob.S == PolyMatrix.identity(4)


def test_ideal_equality_examples():
    T, U = generic_skew(5), zero_block_skew(5)
    assert comp_pfaffian(T, (1,)) - t(2, 3) * comp_pfaffian(U, (1, 2, 3)) - comp_pfaffian(U, (1,)) == ZERO
    T, U = generic_skew(6), zero_block_skew(6)
    pb = lambda *I: comp_pfaffian(T, I)  # noqa: E731
    lhs = full_pfaffian(T) - t(1, 2) * pb(1, 2) + t(1, 3) * pb(1, 3) - t(2, 3) * pb(2, 3) - full_pfaffian(U)
    assert lhs == ZERO


def test_regseq_example_even():
    T = generic_skew(6)
    expansion = sum(((-1) ** i * t(3, i) * comp_pfaffian(T, (1, 2, 3, i)) for i in range(4, 7)), ZERO)
    assert comp_pfaffian(T, (1, 2)) - expansion == ZERO


def _d3_column(C, j):
    return [C.d3[i, j] for i in range(1, C.n + 1)]


def _d3_image(C, coeffs):
    out = [ZERO] * C.n
    for j, a in coeffs.items():
        for i, x in enumerate(_d3_column(C, j)):
            out[i] = out[i] + a * x
    return out


def _d3_of_e_f(C, table, i, j):
    """d(e_i f_j) = d1(e_i) f_j - e_i d2(f_j), using the products e_i e_k."""
    v = [ZERO] * C.n
    v[j - 1] = C.d1[1, i]
    for k in range(1, 5):
        coeff = C.d2[k, j]
        v = [x - coeff * y for x, y in zip(v, table[(i, k)])]
    return v


def test_dg_specials_at_five():
    """``e4 f4 = g2`` and ``e4 f5 = -g1`` for the zero-block complex at n = 5."""
    C = build(5, "odd", "zero-block")
    table = dg_products(5, "odd")
    e4f4 = _d3_of_e_f(C, table, 4, 4)
    e4f5 = _d3_of_e_f(C, table, 4, 5)
    assert e4f4 == _d3_image(C, {2: ONE}) == [t(1, 5), t(2, 5), t(3, 5), t(4, 5), ZERO]
    assert e4f5 == _d3_image(C, {1: -ONE}) == [-t(1, 4), -t(2, 4), -t(3, 4), ZERO, t(4, 5)]
    # the coefficient of f4 is +t45; a minus sign there would not match column g2
    assert e4f4 != [t(1, 5), t(2, 5), t(3, 5), -t(4, 5), ZERO]


def test_dg_products_table_is_alternating():
    for n, parity in SIZES:
        table = dg_products(n, parity)
        for a, b in itertools.product(range(1, 5), repeat=2):
            assert table[(a, b)] == [-x for x in table[(b, a)]]


def test_dg_even_example():
    """d2(e2 e3) = d2(-f1) at n = 6."""
    C = build(6, "even", "zero-block")
    d1 = C.d1.entries[0]
    lhs = [ZERO] * 4
    lhs[2] = lhs[2] + d1[1]
    lhs[1] = lhs[1] - d1[2]
    rhs = [-C.d2[i, 1] for i in range(1, 5)]
    assert lhs == rhs


# -- minor products ------------------------------------------------------------


def _golden_signs():
    return json.loads((GOLDEN / "minor_product_signs.json").read_text(encoding="utf-8"))


def _key(n, parity, r, s):
    return f"{n}:{parity}:{','.join(map(str, r))}:{','.join(map(str, s))}"


def test_minor_product_examples():
    C = build(5, "odd")
    lhs, rhs = minor_product_sides(C, (1, 2, 3), (1, 2, 3))
    assert lhs == t(4, 5) ** 3 and rhs == t(4, 5) ** 3
    assert check_minor_product(C, (1, 2, 3), (1, 2, 3)) == 1
    C6 = build(6, "even")
    assert minor_product_sides(C6, (1, 2, 3), (2, 3, 4)) == (ZERO, ZERO)
    assert check_minor_product(C6, (1, 2, 3), (2, 3, 4)) == 1


@pytest.mark.parametrize("n, parity", SIZES)
def test_minor_product_signs_match_golden(n, parity):
    golden = _golden_signs()
    C = build(n, parity)
    count = 0
    for r in itertools.combinations(range(1, n + 1), 3):
        for s in itertools.combinations(range(1, 5), 3):
            assert check_minor_product(C, r, s) == golden[_key(n, parity, r, s)]
            count += 1
    assert count == {5: 40, 6: 80, 7: 140, 8: 224}[n]


@pytest.mark.parametrize("n, parity", SIZES)
def test_minor_product_sign_rule(n, parity):
    """Whenever a side is nonzero the sign is (-1)^(r1+r2+r3+k), negated for even n,
    with k the row of d2 left out of s.  The sign is therefore not constant in s."""
    golden = _golden_signs()
    C = build(n, parity)
    both_zero = 0
    for r in itertools.combinations(range(1, n + 1), 3):
        signs_for_r = set()
        for s in itertools.combinations(range(1, 5), 3):
            lhs, rhs = minor_product_sides(C, r, s)
            e = golden[_key(n, parity, r, s)]
            if not lhs and not rhs:
                both_zero += 1
                continue
            k = next(k for k in range(1, 5) if k not in s)
            rule = (-1) ** (sum(r) + k) * (1 if parity == "odd" else -1)
            assert e == rule
            signs_for_r.add(e)
        if signs_for_r:
            assert signs_for_r == {1, -1}
    assert both_zero == (4 if parity == "even" else 0)


def test_minor_product_failure_is_reported():
    C = build(5, "odd")
    rows = [list(r) for r in C.d1.entries]
    rows[0][3] = rows[0][3] + ONE
    bad = ResolutionComplex(C.n, C.parity, C.variant, C.d3, C.d2, PolyMatrix(rows), C.matrix)
    with pytest.raises(IdentityFailure) as info:
        for s in itertools.combinations(range(1, 5), 3):
            check_minor_product(bad, (1, 2, 4), s)
    assert info.value.lhs != info.value.rhs


def test_minor_product_rejects_bad_indices():
    C = build(5, "odd")
    with pytest.raises(SizeError):
        check_minor_product(C, (3, 2, 1), (1, 2, 3))
    with pytest.raises(SizeError):
        check_minor_product(C, (1, 2, 3), (1, 2, 5))


# -- ranks and independence ------------------------------------------------------


def test_column_independence():
    for n, parity in SIZES + [(9, "odd")]:
        assert check_column_independence(build(n, parity))
    assert check_column_independence(build(5, "odd"), columns=[1])


def test_rank_examples():
    assert specialize_and_rank(build(7, "odd"), seed=42, prime=32003) == (4, 3, 1)
    assert specialize_and_rank(build(6, "even"), seed=7, prime=32003) == (3, 3, 1)
    C = build(5, "odd")
    zero_point = {v: 0 for row in C.matrix.rows for x in row for v in x.variables()}
    assert specialize_and_rank(C, assignment=zero_point) == (0, 0, 0)


@pytest.mark.parametrize("n", range(5, 11))
def test_majority_rank(n):
    parity = "odd" if n % 2 else "even"
    assert majority_rank(build(n, parity), seed=0, prime=32003, votes=5) == (n - 3, 3, 1)


@given(st.integers(0, 10**6))
def test_ranks_at_random_seeds(seed):
    assert specialize_and_rank(build(7, "odd"), seed=seed) == (4, 3, 1)


def test_rank_rejects_bad_primes():
    with pytest.raises(SizeError):
        specialize_and_rank(build(5, "odd"), prime=4)
    with pytest.raises(SizeError):
        specialize_and_rank(build(5, "odd"), prime=23)


def test_specialising_first_matches_evaluating_entries():
    """Rebuilding from a specialised matrix equals evaluating every entry."""
    from pfres.pfaffian import random_assignment, specialize
    from pfres.polyring import evaluate
    from pfres.resolution import assemble

    p = 32003
    C = build(7, "odd")
    point = random_assignment(sorted({v for r in C.matrix.rows for x in r for v in x.variables()}), 5, p)
    S = assemble(specialize(C.matrix, point, p), "odd", "generic")
    for mine, theirs in ((S.d1, C.d1), (S.d2, C.d2), (S.d3, C.d3)):
        assert [list(r) for r in mine.entries] == [[evaluate(x, point, p) for x in r] for r in theirs.entries]


# -- export ------------------------------------------------------------------------


def test_json_matches_golden():
    golden = json.loads((GOLDEN / "complexes.json").read_text(encoding="utf-8"))
    for key, data in golden.items():
        n, parity, variant = key.split(":")
        assert to_json(build(int(n), parity, variant)) == data


def test_json_round_trip():
    C = build(6, "even", "zero-block")
    data = json.loads(dumps(C))
    assert set(data) == {"n", "parity", "variant", "d3", "d2", "d1"}
    assert PolyMatrix([[parse(x) for x in r] for r in data["d2"]]) == C.d2


def test_latex_has_three_matrices():
    text = to_latex(build(6, "even"))
    assert text.count("\\begin{pmatrix}") == 3
    assert "\\tau_{45}" in text


def test_generator_entries_are_complementary_pfaffians():
    for n in (5, 7, 9):
        T = generic_skew(n)
        allowed = {comp_pfaffian(T, I) for I in [(1,), (2,), (3,), (1, 2, 3)]}
        assert all(x in allowed or -x in allowed for x in build(n, "odd").d1.entries[0])


def test_variables_are_the_t_family():
    C = build(6, "even")
    names = {v.name for r in C.d2.entries for x in r for v in x.variables()}
    assert names == {"t"}


@pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
def test_specialized_minor_products_hold_mod_p(n):
    from pfres.suites import minor_product_signs

    signs = minor_product_signs(n, specialize_prime=32003, seed=3)
    assert len(signs) == 4 * len(list(itertools.combinations(range(n), 3)))
    if n <= 8:
        assert signs == minor_product_signs(n)
