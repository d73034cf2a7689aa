"""Pfaffians of skew-symmetric matrices and the overlapping-Pfaffian identities.

The central object is :class:`SkewMatrix`, a skew-symmetric matrix whose
entries live in any commutative ring supporting ``+``, ``-`` and ``*``
(``Polynomial`` for symbolic work, ``int`` for specialisations, optionally
reduced modulo a prime).  Sub-Pfaffians are computed by first-index
Laplace expansion with a per-matrix memo keyed by the index bitmask.

Indices are 1-based throughout, matching the usual matrix notation.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from .errors import PreconditionError, SizeError
from .polyring import ONE, Var, evaluate, t

__all__ = [
    "SkewMatrix",
    "generic_skew",
    "zero_block_skew",
    "specialize",
    "random_assignment",
    "permutation_sign",
    "word_sign",
    "pfaffian_word",
    "sub_pfaffian",
    "comp_pfaffian",
    "full_pfaffian",
    "pfaffian_oracle",
    "overlapping_sides",
    "check_overlapping",
    "check_overlapping_single_b",
    "check_overlapping_single_c",
    "check_overlapping_empty_gamma",
    "check_overlapping_expansion",
    "LEMMA_IDS",
    "lemma_sides",
    "check_lemma",
    "admissible_indices",
]


class SkewMatrix:
    """An ``n x n`` skew-symmetric matrix with a memoised Pfaffian cache.

    ``rows`` is a 0-based grid; ``T[i, j]`` reads entries 1-based.
    When ``modulus`` is set, entries are integers and every Pfaffian is
    reduced modulo it.
    """

    __slots__ = ("n", "rows", "one", "zero", "modulus", "_pf_cache")

    def __init__(self, rows: Sequence[Sequence], one=ONE, modulus: int | None = None):
        n = len(rows)
        self.n = n
        self.rows = tuple(tuple(r) for r in rows)
        self.one = one
        self.zero = one - one
        self.modulus = modulus
        self._pf_cache: dict = {}
        for i in range(n):
            if len(self.rows[i]) != n:
                raise SizeError("skew matrix must be square")
            if self.rows[i][i] != 0:
                raise PreconditionError(f"nonzero diagonal entry at ({i + 1},{i + 1})")
            for j in range(i + 1, n):
                if self.rows[i][j] != -self.rows[j][i]:
                    raise PreconditionError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are not opposite")

    @classmethod
    def from_upper(cls, n: int, entry: Callable[[int, int], object], one=ONE, modulus=None) -> "SkewMatrix":
        """Build from ``entry(i, j)`` for ``1 <= i < j <= n``."""
        zero = one - one
        rows = [[zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                x = entry(i + 1, j + 1)
                if modulus:
                    x %= modulus
                    rows[i][j] = x
                    rows[j][i] = (-x) % modulus
                else:
                    rows[i][j] = x
                    rows[j][i] = -x
        m = cls.__new__(cls)
        m.n = n
        m.rows = tuple(tuple(r) for r in rows)
        m.one = one
        m.zero = zero
        m.modulus = modulus
        m._pf_cache = {}
        return m

    def __getitem__(self, key):
        i, j = key
        return self.rows[i - 1][j - 1]

    def entry(self, i: int, j: int):
        return self.rows[i - 1][j - 1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SkewMatrix):
            return NotImplemented
        return self.rows == other.rows and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash((self.rows, self.modulus))

    def __repr__(self) -> str:
        return f"SkewMatrix(n={self.n}{', mod ' + str(self.modulus) if self.modulus else ''})"

    def _reduce(self, x):
        return x % self.modulus if self.modulus else x

    def pf_mask(self, mask: int):
        """Pfaffian of the principal submatrix on the bits of ``mask`` (bit k is index k+1)."""
        cache = self._pf_cache
        v = cache.get(mask)
        if v is not None:
            return v
        if mask == 0:
            v = self.one
        else:
            bits = [k for k in range(self.n) if mask >> k & 1]
            if len(bits) % 2:
                v = self.zero
            else:
                first = bits[0]
                row = self.rows[first]
                rest = mask ^ (1 << first)
                v = self.zero
                for pos, other in enumerate(bits[1:]):
                    e = row[other]
                    if not e:
                        continue
                    sub = self.pf_mask(rest ^ (1 << other))
                    if not sub:
                        continue
                    if pos % 2 == 0:
                        v = v + e * sub
                    else:
                        v = v - e * sub
                v = self._reduce(v)
        cache[mask] = v
        return v


@lru_cache(maxsize=None)
def generic_skew(n: int) -> SkewMatrix:
    """The generic matrix with entries ``t_ij`` above the diagonal."""
    if n < 1:
        raise SizeError("n must be at least 1")
    return SkewMatrix.from_upper(n, t)


@lru_cache(maxsize=None)
def zero_block_skew(n: int) -> SkewMatrix:
    """The generic matrix with its upper-left 3x3 block replaced by zeros."""
    if n < 4:
        raise SizeError(f"zero-block matrix needs n >= 4, got {n}")
    return SkewMatrix.from_upper(n, lambda i, j: ONE - ONE if j <= 3 else t(i, j))


def random_assignment(variables: Iterable[Var], seed: int, modulus: int) -> dict:
    """Seeded uniform point of ``(Z/modulus)^k``, deterministic in the sorted variable order."""
    rng = random.Random(seed)
    return {v: rng.randrange(modulus) for v in sorted(set(variables), key=Var.sort_key)}


def specialize(T: SkewMatrix, assignment: dict, modulus: int | None = None) -> SkewMatrix:
    """Integer matrix obtained by evaluating every entry of ``T``."""
    return SkewMatrix.from_upper(
        T.n, lambda i, j: evaluate(T[i, j], assignment, modulus), one=1, modulus=modulus
    )


# -- words ------------------------------------------------------------------


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation of ``0..k-1`` given in one-line notation."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def word_sign(rho: Sequence[int], sigma: Sequence[int]) -> int:
    """Sign of the permutation carrying ``rho`` to ``sigma``.

    Zero when ``rho`` repeats a letter or ``sigma`` is not a rearrangement of it.
    """
    rho = tuple(rho)
    sigma = tuple(sigma)
    if len(set(rho)) != len(rho) or len(rho) != len(sigma) or set(rho) != set(sigma):
        return 0
    pos = {x: k for k, x in enumerate(rho)}
    return permutation_sign([pos[x] for x in sigma])


def _mask(T: SkewMatrix, letters: Iterable[int]) -> int:
    m = 0
    for a in letters:
        if not 1 <= a <= T.n:
            raise PreconditionError(f"index {a} outside 1..{T.n}")
        m |= 1 << (a - 1)
    return m


def pfaffian_word(T: SkewMatrix, w: Sequence[int]):
    """Knuth's function on words: zero on odd length or repeats, signed otherwise."""
    w = tuple(w)
    m = _mask(T, w)
    if len(w) % 2 or bin(m).count("1") != len(w):
        return T.zero
    s = word_sign(w, sorted(w))
    v = T.pf_mask(m)
    return v if s == 1 else -v


def sub_pfaffian(T: SkewMatrix, I: Iterable[int]):
    """Pfaffian of the principal submatrix on ``I``; 1 on the empty set."""
    return T.pf_mask(_mask(T, I))


def comp_pfaffian(T: SkewMatrix, I: Iterable[int]):
    """Pfaffian of the principal submatrix obtained by deleting ``I``."""
    I = tuple(I)
    m = _mask(T, I)
    if bin(m).count("1") != len(I):
        raise PreconditionError(f"repeated index in {I}")
    return T.pf_mask(((1 << T.n) - 1) ^ m)


def full_pfaffian(T: SkewMatrix):
    return T.pf_mask((1 << T.n) - 1)


def _matchings(letters: tuple) -> Iterator[list]:
    if not letters:
        yield []
        return
    a = letters[0]
    for k in range(1, len(letters)):
        rest = letters[1:k] + letters[k + 1:]
        for m in _matchings(rest):
            yield [(a, letters[k])] + m


def pfaffian_oracle(T: SkewMatrix, I: Sequence[int]):
    """Definitional perfect-matching sum; only meant for ``|I| <= 8``."""
    letters = tuple(sorted(I))
    if len(letters) > 8:
        raise SizeError("matching oracle restricted to at most 8 letters")
    if len(letters) % 2:
        return T.zero
    total = T.zero
    pos = {x: k for k, x in enumerate(letters)}
    for matching in _matchings(letters):
        perm = [pos[x] for pair in matching for x in pair]
        term = T.one
        for a, b in matching:
            term = term * T[a, b]
        total = total + term if permutation_sign(perm) == 1 else total - term
    return T._reduce(total)


# -- overlapping Pfaffians ----------------------------------------------------


def _minus(word: Sequence[int], drop: Iterable[int]) -> tuple:
    drop = set(drop)
    return tuple(x for x in word if x not in drop)


def _check_disjoint(T: SkewMatrix, **words) -> None:
    owner = {}
    for name, w in words.items():
        for a in w:
            if not 1 <= a <= T.n:
                raise PreconditionError(f"letter {a} of {name} outside 1..{T.n}")
            if a in owner and owner[a] != name:
                raise PreconditionError(f"letter {a} occurs in both {owner[a]} and {name}")
            owner[a] = name


def overlapping_sides(T: SkewMatrix, alpha, beta, gamma, b):
    """Both sides of the overlapping-Pfaffian formula for ``b`` in ``beta``."""
    alpha, beta, gamma = tuple(alpha), tuple(beta), tuple(gamma)
    _check_disjoint(T, alpha=alpha, beta=beta, gamma=gamma)
    if b not in beta:
        raise PreconditionError(f"letter {b} is not in beta")
    P = lambda w: pfaffian_word(T, w)  # noqa: E731
    lhs = P(alpha + beta) * P(alpha + gamma)
    rhs = T.zero
    for i in beta:
        rest = _minus(beta, (b, i))
        s = word_sign(beta, (b, i) + rest)
        if s:
            rhs = rhs + s * (P(alpha + rest) * P(alpha + gamma + (b, i)))
    sb = word_sign(beta, (b,) + _minus(beta, (b,)))
    beta_b = _minus(beta, (b,))
    for j in gamma:
        gamma_j = _minus(gamma, (j,))
        s = sb * word_sign(gamma, (j,) + gamma_j)
        rhs = rhs + s * (P(alpha + (j,) + beta_b) * P(alpha + (b,) + gamma_j))
    return T._reduce(lhs), T._reduce(rhs)


def check_overlapping(T: SkewMatrix, alpha, beta, gamma, b) -> bool:
    lhs, rhs = overlapping_sides(T, alpha, beta, gamma, b)
    return lhs == rhs


def check_overlapping_single_b(T: SkewMatrix, alpha, b, gamma) -> bool:
    """Reduced form with ``beta = b``."""
    alpha, gamma = tuple(alpha), tuple(gamma)
    _check_disjoint(T, alpha=alpha, beta=(b,), gamma=gamma)
    P = lambda w: pfaffian_word(T, w)  # noqa: E731
    rhs = T.zero
    for j in gamma:
        rest = _minus(gamma, (j,))
        rhs = rhs + word_sign(gamma, (j,) + rest) * (P(alpha + (j,)) * P(alpha + (b,) + rest))
    return T._reduce(P(alpha + (b,)) * P(alpha + gamma)) == T._reduce(rhs)


def check_overlapping_single_c(T: SkewMatrix, alpha, beta, c, b) -> bool:
    """Reduced form with ``gamma = c``."""
    alpha, beta = tuple(alpha), tuple(beta)
    _check_disjoint(T, alpha=alpha, beta=beta, gamma=(c,))
    if b not in beta:
        raise PreconditionError(f"letter {b} is not in beta")
    P = lambda w: pfaffian_word(T, w)  # noqa: E731
    rhs = T.zero
    for i in beta:
        rest = _minus(beta, (b, i))
        s = word_sign(beta, (b, i) + rest)
        if s:
            rhs = rhs + s * (P(alpha + rest) * P(alpha + (c, b, i)))
    beta_b = _minus(beta, (b,))
    rhs = rhs + word_sign(beta, (b,) + beta_b) * (P(alpha + (c,) + beta_b) * P(alpha + (b,)))
    return T._reduce(P(alpha + beta) * P(alpha + (c,))) == T._reduce(rhs)


def check_overlapping_empty_gamma(T: SkewMatrix, alpha, beta, b) -> bool:
    alpha, beta = tuple(alpha), tuple(beta)
    _check_disjoint(T, alpha=alpha, beta=beta)
    if b not in beta:
        raise PreconditionError(f"letter {b} is not in beta")
    P = lambda w: pfaffian_word(T, w)  # noqa: E731
    rhs = T.zero
    for i in beta:
        rest = _minus(beta, (b, i))
        s = word_sign(beta, (b, i) + rest)
        if s:
            rhs = rhs + s * (P(alpha + rest) * P(alpha + (b, i)))
    return T._reduce(P(alpha + beta) * P(alpha)) == T._reduce(rhs)


def check_overlapping_expansion(T: SkewMatrix, beta, b) -> bool:
    """Reduced form with ``alpha`` and ``gamma`` empty: expansion along ``b``."""
    return check_overlapping_empty_gamma(T, (), beta, b)


# -- the lemmas -----------------------------------------------------------------

LEMMA_IDS = ("exp", "pf1-2", "pf3-1", "421-even", "pf1-1", "531-odd", "42-even", "51-odd")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise PreconditionError(message)


def _increasing(u: Sequence[int], n: int, names: str = "u") -> None:
    _require(all(1 <= a <= n for a in u), f"indices of {names} must lie in 1..{n}")
    _require(all(a < b for a, b in zip(u, u[1:])), f"{names} must be strictly increasing")


def lemma_sides(lemma_id: str, T: SkewMatrix, u: Sequence[int], ell: int | None = None):
    """``(lhs, rhs)`` of the named Pfaffian identity.

    ``u`` is the increasing index word for the first five lemmas, the six
    letters ``(u, v, w, x, y, z)`` for ``531-odd`` and ``42-even``, and
    ``(u, v, w, x, y)`` for ``51-odd``.  ``ell`` is 1-based.
    """
    u = tuple(u)
    n = T.n
    zero = T.zero
    pf = lambda I: sub_pfaffian(T, I)  # noqa: E731
    pb = lambda I: comp_pfaffian(T, I)  # noqa: E731
    sgn = lambda e: 1 if e % 2 == 0 else -1  # noqa: E731

    if lemma_id in ("exp", "pf1-2", "pf3-1", "421-even"):
        _increasing(u, n)
        k = len(u)
        upper = k - 1 if lemma_id == "421-even" else k
        _require(ell is not None and 1 <= ell <= upper, f"ell must satisfy 1 <= ell <= {upper}")
        ul = u[ell - 1]
        lhs = rhs = zero
        if lemma_id == "exp":
            lhs = sgn(ell - 1) * pf(u)
            for i in range(1, k + 1):
                if i == ell:
                    continue
                ui = u[i - 1]
                entry = T[ui, ul] if i < ell else T[ul, ui]
                rhs = rhs + sgn(i) * (entry * pf(_minus(u, (ui, ul))))
        elif lemma_id == "pf1-2":
            for i in range(1, k + 1):
                ui = u[i - 1]
                if i < ell:
                    lhs = lhs + sgn(i) * (T[ui, ul] * pf(_minus(u, (ui,))))
                elif i > ell:
                    rhs = rhs + sgn(i) * (T[ul, ui] * pf(_minus(u, (ui,))))
        elif lemma_id == "pf3-1":
            lhs = sgn(ell - 1) * (full_pfaffian(T) * pb(u))
            for i in range(1, k + 1):
                if i == ell:
                    continue
                ui = u[i - 1]
                rhs = rhs + sgn(i) * (pb((ui, ul)) * pb(_minus(u, (ui, ul))))
        else:
            for i in range(1, k + 1):
                ui = u[i - 1]
                if i < ell:
                    lhs = lhs + sgn(i) * (pb(_minus(u, (ui,))) * pb((ui, ul)))
                elif i > ell:
                    rhs = rhs + sgn(i) * (pb(_minus(u, (ui,))) * pb((ul, ui)))
        return T._reduce(lhs), T._reduce(rhs)

    if lemma_id == "pf1-1":
        _increasing(u, n)
        lhs = zero
        for i in range(1, len(u) + 1):
            ui = u[i - 1]
            lhs = lhs + sgn(i) * (pb((ui,)) * pb(_minus(u, (ui,))))
        return T._reduce(lhs), zero

    if lemma_id in ("531-odd", "42-even"):
        _require(len(u) == 6, "expected six letters u < v < w < x < y < z")
        _increasing(u, n, "u < v < w < x < y < z")
        a, b, c, d, y, z = u
        if lemma_id == "531-odd":
            lhs = pb((y,)) * pb((a, b, c, d, z)) - pb((z,)) * pb((a, b, c, d, y))
            rhs = (
                pb((a, y, z)) * pb((b, c, d))
                - pb((b, y, z)) * pb((a, c, d))
                + pb((c, y, z)) * pb((a, b, d))
                - pb((d, y, z)) * pb((a, b, c))
            )
        else:
            lhs = pb((d, y)) * pb((a, b, c, z)) - pb((d, z)) * pb((a, b, c, y)) + pb((y, z)) * pb((a, b, c, d))
            rhs = pb((a, b)) * pb((c, d, y, z)) - pb((a, c)) * pb((b, d, y, z)) + pb((b, c)) * pb((a, d, y, z))
        return T._reduce(lhs), T._reduce(rhs)

    if lemma_id == "51-odd":
        _require(len(u) == 5, "expected five letters (u, v, w, x, y)")
        a, v, w, x, y = u
        _require(all(1 <= s <= n for s in u), f"letters must lie in 1..{n}")
        _require(a < x < y, "u < x < y")
        _require(v < w < x, "v < w < x")
        _require(a not in (v, w), "u must differ from v and w")
        lhs = pb((a, x, y)) * pb((a, v, w)) - pb((a,)) * pb((a, v, w, x, y))
        rhs = pb((a, v, x)) * pb((a, w, y)) - pb((a, w, x)) * pb((a, v, y))
        return T._reduce(lhs), T._reduce(rhs)

    raise PreconditionError(f"unknown lemma id {lemma_id!r}")


def check_lemma(lemma_id: str, T: SkewMatrix, u: Sequence[int], ell: int | None = None) -> bool:
    lhs, rhs = lemma_sides(lemma_id, T, u, ell)
    return lhs == rhs


def admissible_indices(lemma_id: str, n: int) -> Iterator[tuple]:
    """Every admissible ``(u, ell)`` pair for the named lemma at size ``n``."""
    letters = range(1, n + 1)
    if lemma_id in ("exp", "pf1-2", "pf3-1", "421-even"):
        for k in range(1, n + 1):
            upper = k - 1 if lemma_id == "421-even" else k
            for u in itertools.combinations(letters, k):
                for ell in range(1, upper + 1):
                    yield u, ell
    elif lemma_id == "pf1-1":
        for k in range(0, n + 1):
            for u in itertools.combinations(letters, k):
                yield u, None
    elif lemma_id in ("531-odd", "42-even"):
        for u in itertools.combinations(letters, 6):
            yield u, None
    elif lemma_id == "51-odd":
        for a, x, y in itertools.combinations(letters, 3):
            for v, w in itertools.combinations(range(1, x), 2):
                if a not in (v, w):
                    yield (a, v, w, x, y), None
    else:
        raise PreconditionError(f"unknown lemma id {lemma_id!r}")
