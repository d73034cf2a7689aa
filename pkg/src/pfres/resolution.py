"""The length three resolutions of format (1, 4, n, n-3) and their checks.

``build`` produces the complex over the generic ring; the same assembly
works for any :class:`~pfres.pfaffian.SkewMatrix`, which is how numeric
specialisations are formed for the rank witness.
"""

from __future__ import annotations

import itertools
import json
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .brill import PolyMatrix, det_oracle
from .errors import IdentityFailure, SizeError
from .pfaffian import (
    SkewMatrix,
    comp_pfaffian,
    full_pfaffian,
    generic_skew,
    random_assignment,
    specialize,
    zero_block_skew,
)
from .polyring import ONE, ZERO, t, to_string
from .verdict import Verdict

__all__ = [
    "ResolutionComplex",
    "ChangeOfBasis",
    "PARITIES",
    "VARIANTS",
    "validate",
    "build",
    "assemble",
    "check_complex",
    "check_ideal_equality",
    "change_of_basis",
    "check_change_of_basis",
    "check_minor_product",
    "minor_product_sides",
    "dg_products",
    "check_dg_products",
    "check_regseq_expansions",
    "check_pf_squares",
    "check_column_independence",
    "rank_mod_p",
    "specialize_and_rank",
    "majority_rank",
    "to_json",
    "to_latex",
]

PARITIES = ("odd", "even")
VARIANTS = ("generic", "zero-block")


def _sgn(e: int) -> int:
    return 1 if e % 2 == 0 else -1


def validate(n: int, parity: str) -> None:
    if parity not in PARITIES:
        raise SizeError(f"parity must be 'odd' or 'even', got {parity!r}")
    if parity == "odd" and (n < 5 or n % 2 == 0):
        raise SizeError(f"odd parity needs an odd n >= 5, got {n}")
    if parity == "even" and (n < 6 or n % 2):
        raise SizeError(f"even parity needs an even n >= 6, got {n}")


@dataclass(frozen=True)
class ResolutionComplex:
    n: int
    parity: str
    variant: str
    d3: PolyMatrix
    d2: PolyMatrix
    d1: PolyMatrix
    matrix: SkewMatrix

    @property
    def format(self) -> tuple:
        return (1, 4, self.n, self.n - 3)


@dataclass(frozen=True)
class ChangeOfBasis:
    S: PolyMatrix
    S_inv: PolyMatrix


def assemble(T: SkewMatrix, parity: str, variant: str = "generic") -> ResolutionComplex:
    """Differentials built from the Pfaffians of an arbitrary skew matrix ``T``."""
    n = T.n
    validate(n, parity)
    zero = T.zero
    pb = lambda *I: comp_pfaffian(T, I)  # noqa: E731
    d3 = PolyMatrix.from_skew(T, range(1, n + 1), range(4, n + 1))
    rows = [[zero] * n for _ in range(4)]
    if parity == "odd":
        p123 = pb(1, 2, 3)
        for j in range(1, n + 1):
            s = _sgn(j + 1)
            if j <= 3:
                rows[j - 1][j - 1] = p123
            else:
                rows[0][j - 1] = s * pb(2, 3, j)
                rows[1][j - 1] = s * pb(1, 3, j)
                rows[2][j - 1] = s * pb(1, 2, j)
            rows[3][j - 1] = s * pb(j)
        d1 = [[-pb(1), pb(2), -pb(3), p123]]
    else:
        p12, p13, p23 = pb(1, 2), pb(1, 3), pb(2, 3)
        rows[1][0], rows[1][1] = p13, -p23
        rows[2][0], rows[2][2] = -p12, p23
        rows[3][1], rows[3][2] = p12, -p13
        for i in range(4, n + 1):
            s = _sgn(i)
            rows[0][i - 1] = -s * pb(1, 2, 3, i)
            rows[1][i - 1] = s * pb(3, i)
            rows[2][i - 1] = -s * pb(2, i)
            rows[3][i - 1] = s * pb(1, i)
        d1 = [[full_pfaffian(T), p12, p13, p23]]
    if T.modulus:
        p = T.modulus
        rows = [[x % p for x in r] for r in rows]
        d1 = [[x % p for x in d1[0]]]
    d2 = PolyMatrix(rows, T.one, T.modulus)
    return ResolutionComplex(n, parity, variant, d3, d2, PolyMatrix(d1, T.one, T.modulus), T)


def build(n: int, parity: str, variant: str = "generic") -> ResolutionComplex:
    """The resolution over the generic ring, from the generic or the zero-block matrix."""
    validate(n, parity)
    if variant == "generic":
        T = generic_skew(n)
    elif variant == "zero-block":
        T = zero_block_skew(n)
    else:
        raise SizeError(f"variant must be 'generic' or 'zero-block', got {variant!r}")
    return assemble(T, parity, variant)


def check_complex(C: ResolutionComplex) -> Verdict:
    """``d1 d2 = 0`` and ``d2 d3 = 0``; a failure names the product and entry."""
    for name, prod in (("d1*d2", C.d1 @ C.d2), ("d2*d3", C.d2 @ C.d3)):
        hit = prod.first_nonzero()
        if hit is not None:
            (i, j), value = hit
            return Verdict.failed((name, i, j), f"{name}[{i},{j}] = {to_string(value)}")
    return Verdict.passed()


# -- identities relating the generic and zero-block matrices --------------------


def _ideal_equality_identities(n: int, parity: str):
    validate(n, parity)
    T, U = generic_skew(n), zero_block_skew(n)
    pT = lambda *I: comp_pfaffian(T, I)  # noqa: E731
    pU = lambda *I: comp_pfaffian(U, I)  # noqa: E731
    out = []
    if parity == "odd":
        out.append(("pfbar_T(1) = t23 pfbar_U(123) + pfbar_U(1)", pT(1) == t(2, 3) * pU(1, 2, 3) + pU(1)))
        out.append(("pfbar_T(2) = t13 pfbar_U(123) + pfbar_U(2)", pT(2) == t(1, 3) * pU(1, 2, 3) + pU(2)))
        out.append(("pfbar_T(3) = t12 pfbar_U(123) + pfbar_U(3)", pT(3) == t(1, 2) * pU(1, 2, 3) + pU(3)))
        out.append(("pfbar_T(123) = pfbar_U(123)", pT(1, 2, 3) == pU(1, 2, 3)))
        expand1 = sum((_sgn(i - 1) * (t(2, i) * pT(1, 2, i)) for i in range(3, n + 1)), ZERO)
        expand2 = sum((_sgn(i - 1) * (t(1, i) * pT(1, 2, i)) for i in range(3, n + 1)), ZERO)
        expand3 = t(1, 2) * pT(1, 2, 3) + sum(
            (_sgn(i - 1) * (t(1, i) * pT(1, 3, i)) for i in range(4, n + 1)), ZERO
        )
        out.append(("pfbar_T(1) expanded along 2", pT(1) == expand1))
        out.append(("pfbar_T(2) expanded along 1", pT(2) == expand2))
        out.append(("pfbar_T(3) expanded along 1", pT(3) == expand3))
        for pair in ((1, 2), (1, 3), (2, 3)):
            for i in range(1, n + 1):
                if i not in pair:
                    out.append((f"pfbar_T{pair + (i,)} = pfbar_U", pT(*pair, i) == pU(*pair, i)))
        for j in range(4, n + 1):
            lhs = pT(j) - t(1, 2) * pT(1, 2, j) + t(1, 3) * pT(1, 3, j)
            out.append((f"fourth row, column {j}", lhs == t(2, 3) * pT(2, 3, j) + pU(j)))
    else:
        for pair in ((1, 2), (1, 3), (2, 3)):
            out.append((f"pfbar_T{pair} = pfbar_U{pair}", pT(*pair) == pU(*pair)))
        pf_T, pf_U = full_pfaffian(T), full_pfaffian(U)
        expansion = sum((t(1, i) * _sgn(i) * pT(1, i) for i in range(2, n + 1)), ZERO)
        out.append(("Pf(T) expanded along 1", pf_T == expansion))
        for i in range(4, n + 1):
            out.append((f"pfbar_T(1{i}) = t23 pfbar_T(123{i}) + pfbar_U(1{i})", pT(1, i) == t(2, 3) * pT(1, 2, 3, i) + pU(1, i)))
            out.append((f"pfbar_T(2{i}) = t13 pfbar_T(123{i}) + pfbar_U(2{i})", pT(2, i) == t(1, 3) * pT(1, 2, 3, i) + pU(2, i)))
            out.append((f"pfbar_T(3{i}) = t12 pfbar_T(123{i}) + pfbar_U(3{i})", pT(3, i) == t(1, 2) * pT(1, 2, 3, i) + pU(3, i)))
            out.append((f"pfbar_T(123{i}) = pfbar_U(123{i})", pT(1, 2, 3, i) == pU(1, 2, 3, i)))
        lhs = pf_T - t(1, 2) * pT(1, 2) + t(1, 3) * pT(1, 3)
        out.append(("Pf(T) - t12 pfbar(12) + t13 pfbar(13) = t23 pfbar(23) + Pf(U)", lhs == t(2, 3) * pT(2, 3) + pf_U))
    return out


def check_ideal_equality(n: int, parity: str) -> Verdict:
    return Verdict.collect(_ideal_equality_identities(n, parity))


def change_of_basis(parity: str) -> ChangeOfBasis:
    z, o = ZERO, ONE
    if parity == "odd":
        S = [[o, z, z, z], [z, o, z, z], [z, z, o, z], [t(2, 3), -t(1, 3), t(1, 2), o]]
        Si = [[o, z, z, z], [z, o, z, z], [z, z, o, z], [-t(2, 3), t(1, 3), -t(1, 2), o]]
    elif parity == "even":
        S = [[o, z, z, z], [-t(1, 2), o, z, z], [t(1, 3), z, o, z], [-t(2, 3), z, z, o]]
        Si = [[o, z, z, z], [t(1, 2), o, z, z], [-t(1, 3), z, o, z], [t(2, 3), z, z, o]]
    else:
        raise SizeError(f"unknown parity {parity!r}")
    return ChangeOfBasis(PolyMatrix(S), PolyMatrix(Si))


def check_change_of_basis(n: int, parity: str) -> Verdict:
    F = build(n, parity, "generic")
    L = build(n, parity, "zero-block")
    cob = change_of_basis(parity)
    return Verdict.collect(
        [
            ("S * S_inv = I", cob.S @ cob.S_inv == PolyMatrix.identity(4)),
            ("d1^L = d1^F S", L.d1 == F.d1 @ cob.S),
            ("d2^L = S_inv d2^F", L.d2 == cob.S_inv @ F.d2),
            ("d3^L = d3^F", L.d3 == F.d3),
        ]
    )


# -- minor products -------------------------------------------------------------


def minor_product_sides(C: ResolutionComplex, r: Sequence[int], s: Sequence[int]):
    r, s = tuple(r), tuple(s)
    if len(r) != 3 or not 1 <= r[0] < r[1] < r[2] <= C.n:
        raise SizeError(f"r must satisfy 1 <= r1 < r2 < r3 <= {C.n}, got {r}")
    if len(s) != 3 or not 1 <= s[0] < s[1] < s[2] <= 4:
        raise SizeError(f"s must satisfy 1 <= s1 < s2 < s3 <= 4, got {s}")
    keep = [i for i in range(1, C.n + 1) if i not in r]
    missing = next(k for k in range(1, 5) if k not in s)
    lhs = det_oracle(C.d3.submatrix(keep, range(1, C.n - 2))) * C.d1[1, missing]
    rhs = det_oracle(C.d2.submatrix(s, r))
    return lhs, rhs


def check_minor_product(C: ResolutionComplex, r: Sequence[int], s: Sequence[int]) -> int:
    """The sign ``e`` with ``det(d3 minor) * d1 entry = e * det(d2 minor)``."""
    lhs, rhs = minor_product_sides(C, r, s)
    p = C.d2.modulus
    if p:
        lhs, rhs = lhs % p, rhs % p
        if lhs == rhs:
            return 1
        if lhs == -rhs % p:
            return -1
        raise IdentityFailure(f"minor product fails mod {p} for r={tuple(r)}, s={tuple(s)}", lhs, rhs)
    if lhs == rhs:
        return 1
    if lhs == -rhs:
        return -1
    raise IdentityFailure(f"minor product fails for r={tuple(r)}, s={tuple(s)}", lhs, rhs)


# -- products in the resolution ------------------------------------------------


def dg_products(n: int, parity: str) -> dict:
    """The products ``e_a e_b`` as coefficient vectors in the basis ``f_1..f_n``."""
    validate(n, parity)
    zero = [ZERO] * n

    def vec(entries: dict) -> list:
        v = list(zero)
        for k, x in entries.items():
            v[k - 1] = x
        return v

    def tsum(a: int) -> list:
        return vec({i: t(a, i) for i in range(4, n + 1)})

    if parity == "odd":
        basic = {
            (4, 1): vec({1: ONE}),
            (4, 2): vec({2: ONE}),
            (4, 3): vec({3: ONE}),
            (1, 2): tsum(3),
            (2, 3): tsum(1),
            (3, 1): tsum(2),
        }
    else:
        basic = {
            (2, 3): vec({1: -ONE}),
            (3, 4): vec({3: -ONE}),
            (4, 2): vec({2: -ONE}),
            (1, 2): tsum(3),
            (1, 3): tsum(2),
            (1, 4): tsum(1),
        }
    table = {}
    for (a, b), v in basic.items():
        table[(a, b)] = v
        table[(b, a)] = [-x for x in v]
    for a in range(1, 5):
        table[(a, a)] = list(zero)
    return table


def _apply(M: PolyMatrix, v: Sequence) -> list:
    out = []
    for row in M.entries:
        acc = ZERO
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def _in_m_squared(v: Sequence) -> bool:
    return all(not x or x.min_degree() >= 2 for x in v)


def check_dg_products(n: int, parity: str) -> Verdict:
    """Every product identity used to read off the multiplication on Tor.

    Computed on the zero-block complex, with ``d(xy) = d(x) y - x d(y)`` for
    ``x`` in degree one.
    """
    C = build(n, parity, "zero-block")
    table = dg_products(n, parity)
    d1 = C.d1.entries[0]
    out = []
    for a, b in itertools.combinations(range(1, 5), 2):
        leibniz = [ZERO] * 4
        leibniz[b - 1] = leibniz[b - 1] + d1[a - 1]
        leibniz[a - 1] = leibniz[a - 1] - d1[b - 1]
        out.append((f"d2(e{a}e{b})", _apply(C.d2, table[(a, b)]) == leibniz))

    def d3_of_ef(i: int, j: int) -> list:
        # d(e_i f_j) = d1(e_i) f_j - e_i d2(f_j)
        v = [ZERO] * n
        v[j - 1] = d1[i - 1]
        for k in range(1, 5):
            c = C.d2[k, j]
            if c:
                v = [x - c * y for x, y in zip(v, table[(i, k)])]
        return v

    zero_n = [ZERO] * n
    if parity == "odd":
        for j in (1, 2, 3):
            out.append((f"d3(e4f{j}) = 0", d3_of_ef(4, j) == zero_n))
        pb = lambda *I: comp_pfaffian(C.matrix, I)  # noqa: E731
        for j in range(4, n + 1):
            expected = [ZERO] * n
            s = _sgn(j)
            expected[0] = s * pb(2, 3, j)
            expected[1] = s * pb(1, 3, j)
            expected[2] = s * pb(1, 2, j)
            expected[j - 1] = expected[j - 1] + pb(1, 2, 3)
            got = d3_of_ef(4, j)
            out.append((f"d3(e4f{j}) closed form", got == expected))
            if n == 5:
                g = C.d3.column(2) if j == 4 else [-x for x in C.d3.column(1)]
                label = "d3(e4f4) = d3(g2)" if j == 4 else "d3(e4f5) = -d3(g1)"
                out.append((label, got == list(g)))
            else:
                out.append((f"d3(e4f{j}) in m^2 F2", _in_m_squared(got)))
        for i in (1, 2, 3):
            for j in range(1, n + 1):
                out.append((f"d3(e{i}f{j}) in m^2 F2", _in_m_squared(d3_of_ef(i, j))))
    else:
        for i in range(1, 5):
            for j in range(1, n + 1):
                out.append((f"d3(e{i}f{j}) in m^2 F2", _in_m_squared(d3_of_ef(i, j))))
    for i in range(1, 5):
        for j in range(1, n + 1):
            out.append((f"d2 d3(e{i}f{j}) = 0", _apply(C.d2, d3_of_ef(i, j)) == [ZERO] * 4))
    return Verdict.collect(out)


# -- regular sequence expansions and squares -------------------------------------


def check_regseq_expansions(n: int, parity: str) -> Verdict:
    validate(n, parity)
    T = generic_skew(n)
    pb = lambda *I: comp_pfaffian(T, I)  # noqa: E731
    out = []
    if parity == "odd":
        s1 = sum((_sgn(i - 1) * (t(2, i) * pb(1, 2, i)) for i in range(4, n + 1)), ZERO)
        s2 = sum((_sgn(i - 1) * (t(1, i) * pb(1, 2, i)) for i in range(4, n + 1)), ZERO)
        out.append(("pfbar(1) = sum t2i pfbar(12i) mod pfbar(123)", pb(1) - s1 == t(2, 3) * pb(1, 2, 3)))
        out.append(("pfbar(2) = sum t1i pfbar(12i) mod pfbar(123)", pb(2) - s2 == t(1, 3) * pb(1, 2, 3)))
    else:
        for pair, a in (((1, 2), 3), ((1, 3), 2), ((2, 3), 1)):
            s = sum((_sgn(i) * (t(a, i) * pb(1, 2, 3, i)) for i in range(4, n + 1)), ZERO)
            out.append((f"pfbar{pair} expansion", pb(*pair) == s))
    return Verdict.collect(out)


def check_pf_squares(n: int, parity: str) -> Verdict:
    """Squares of the generators equal the corresponding principal minors."""
    validate(n, parity)
    T = generic_skew(n)
    sets = [(1,), (2,), (3,), (1, 2, 3)] if parity == "odd" else [(), (1, 2), (1, 3), (2, 3)]
    out = []
    for I in sets:
        keep = [i for i in range(1, n + 1) if i not in I]
        p = comp_pfaffian(T, I)
        out.append((f"pfbar{I}^2 = det", p * p == det_oracle(PolyMatrix.from_skew(T, keep, keep))))
    return Verdict.collect(out)


# -- linear independence and ranks ----------------------------------------------


def _rank_fraction(rows: list) -> int:
    rows = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((k for k in range(rank, len(rows)) if rows[k][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank]
        for k in range(len(rows)):
            if k != rank and rows[k][c]:
                f = rows[k][c] / p[c]
                rows[k] = [x - f * y for x, y in zip(rows[k], p)]
        rank += 1
    return rank


def check_column_independence(C: ResolutionComplex, columns: Sequence[int] | None = None) -> bool:
    """No nonzero rational (hence integer) combination of the chosen d3 columns vanishes."""
    cols = list(columns) if columns is not None else list(range(1, C.d3.cols + 1))
    keys = {}
    vectors = []
    for j in cols:
        coeffs = {}
        for i, x in enumerate(C.d3.column(j)):
            if x:
                for m, a in x._terms.items():
                    coeffs[(i, m)] = a
                    keys.setdefault((i, m), len(keys))
        vectors.append(coeffs)
    if not keys:
        return not cols
    rows = [[v.get(k, 0) for k in keys] for v in vectors]
    return _rank_fraction(rows) == len(cols)


def rank_mod_p(M: PolyMatrix, p: int) -> int:
    """Rank over the prime field of an integer matrix."""
    rows = [[x % p for x in r] for r in M.entries]
    rank = 0
    for c in range(M.cols):
        pivot = next((k for k in range(rank, len(rows)) if rows[k][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        prow = [x * inv % p for x in rows[rank]]
        rows[rank] = prow
        for k in range(rank + 1, len(rows)):
            f = rows[k][c]
            if f:
                rows[k] = [(x - f * y) % p for x, y in zip(rows[k], prow)]
        rank += 1
    return rank


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def specialize_and_rank(C: ResolutionComplex, seed: int = 0, prime: int = 32003, assignment: dict | None = None) -> tuple:
    """Ranks of ``(d3, d2, d1)`` over ``Z/prime`` at a seeded random point.

    The matrix is specialised first and the complex rebuilt from it; this
    equals entrywise evaluation because Pfaffians commute with ring maps.
    """
    if not _is_prime(prime):
        raise SizeError(f"{prime} is not prime")
    if prime <= C.n * C.n:
        raise SizeError(f"prime must exceed n^2 = {C.n * C.n}")
    T = C.matrix
    if assignment is None:
        variables = set()
        for row in T.rows:
            for x in row:
                variables |= x.variables()
        assignment = random_assignment(variables, seed, prime)
    S = assemble(specialize(T, assignment, prime), C.parity, C.variant)
    return tuple(rank_mod_p(M, prime) for M in (S.d3, S.d2, S.d1))


def majority_rank(C: ResolutionComplex, seed: int = 0, prime: int = 32003, votes: int = 5) -> tuple:
    """Most frequent rank triple over seeds ``seed, seed+1, ...``; ties go to the larger triple."""
    tally = Counter(specialize_and_rank(C, seed + k, prime) for k in range(votes))
    best = max(tally.values())
    return max(r for r, c in tally.items() if c == best)


# -- export ---------------------------------------------------------------------


def to_json(C: ResolutionComplex) -> dict:
    return {
        "n": C.n,
        "parity": C.parity,
        "variant": C.variant,
        "d3": C.d3.to_strings(),
        "d2": C.d2.to_strings(),
        "d1": C.d1.to_strings(),
    }


def dumps(C: ResolutionComplex) -> str:
    return json.dumps(to_json(C), indent=2, ensure_ascii=False) + "\n"


_LATEX_SYMBOL = {"t": "\\tau", "c": "c", "u": "u"}


def _latex_poly(s: str) -> str:
    def sub(m):
        sep = "," if m.group(1) == "u" else ""
        return "%s_{%s%s%s}" % (_LATEX_SYMBOL[m.group(1)], m.group(2), sep, m.group(3))

    return re.sub(r"([tcu])_(\d+)_(\d+)", sub, s).replace("*", " ")


def to_latex(C: ResolutionComplex) -> str:
    parts = []
    for name, M in (("\\partial_3", C.d3), ("\\partial_2", C.d2), ("\\partial_1", C.d1)):
        body = " \\\\\n".join(" & ".join(_latex_poly(x) for x in row) for row in M.to_strings())
        parts.append(f"{name} = \\begin{{pmatrix}}\n{body}\n\\end{{pmatrix}}")
    return "\n\n".join(parts) + "\n"
