"""Subset posets for W(D_n)/W(A_{n-1}), spinor coordinates and codimension-3 Schubert ideals.

Subsets are represented as sorted tuples.  The poset of even subsets is
used for even ``n`` and the poset of odd subsets for odd ``n``; in both
cases the identity coset is the subset whose spinor coordinate is the
top Pfaffian available (``()`` for even ``n``, ``(n,)`` for odd ``n``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import PreconditionError, SizeError
from .pfaffian import SkewMatrix, comp_pfaffian
from .polyring import Polynomial

__all__ = [
    "SubsetPoset",
    "subset_poset",
    "weyl_action",
    "poset_leq",
    "hasse_to_dot",
    "identity_subset",
    "weyl_word_subset",
    "spinor_to_pfaffian",
    "SchubertIdeal",
    "IDEALS",
    "schubert_ideal",
    "schubert_ideal_generators",
    "GradedFormat",
    "gorenstein_format",
    "linking_degrees",
    "mapping_cone_format",
]

PARITY_CLASSES = ("even-subsets", "odd-subsets")


def _normalize(I: Iterable[int]) -> tuple:
    return tuple(sorted(set(I)))


def weyl_action(i: int, I: Iterable[int], n: int) -> tuple:
    """Simple reflection ``s_i`` applied to the subset ``I`` of ``{1..n}``.

    ``s_i`` for ``i < n`` exchanges ``i`` and ``i + 1``; ``s_n`` adds
    ``{n-1, n}`` to a subset that misses both and removes it from one that
    holds both.  Anything else is left fixed.
    """
    if not 1 <= i <= n:
        raise SizeError(f"reflection index must lie in 1..{n}, got {i}")
    S = set(I)
    if i < n:
        a, b = i, i + 1
        if (a in S) != (b in S):
            S ^= {a, b}
    else:
        pair = {n - 1, n}
        if pair <= S:
            S -= pair
        elif not (pair & S):
            S |= pair
    return _normalize(S)


def _raises(I: tuple, n: int) -> Iterator[tuple]:
    """Upper neighbours of ``I`` under the generating inequalities."""
    S = set(I)
    for x in I:
        if x + 1 <= n and x + 1 not in S:
            yield _normalize((S - {x}) | {x + 1})
    if n - 1 not in S and n not in S and (not I or max(I) < n - 1):
        yield _normalize(S | {n - 1, n})


@dataclass(frozen=True)
class SubsetPoset:
    """Even or odd subsets of ``{1..n}`` with the order generated by the raising moves.

    ``I <= J`` when ``J`` is reached from ``I`` by repeatedly moving one
    element ``x`` to a free ``x + 1``, or by adjoining ``{n-1, n}`` to a
    subset lying below ``n - 1``.
    """

    n: int
    parity_class: str

    def __post_init__(self):
        if self.n < 1:
            raise SizeError(f"n must be positive, got {self.n}")
        if self.parity_class not in PARITY_CLASSES:
            raise SizeError(f"parity_class must be one of {PARITY_CLASSES}, got {self.parity_class!r}")

    @cached_property
    def elements(self) -> tuple:
        want = 0 if self.parity_class == "even-subsets" else 1
        out = [
            I
            for k in range(want, self.n + 1, 2)
            for I in itertools.combinations(range(1, self.n + 1), k)
        ]
        return tuple(sorted(out, key=lambda I: (sum(I), len(I), I)))

    def __contains__(self, I) -> bool:
        I = _normalize(I)
        return all(1 <= x <= self.n for x in I) and len(I) % 2 == (self.parity_class == "odd-subsets")

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def _up(self) -> dict:
        """Every element mapped to the frozenset of elements above it (inclusive)."""
        up: dict = {}
        # elements are sorted by element sum, and every move raises the sum
        for I in reversed(self.elements):
            reach = {I}
            for J in _raises(I, self.n):
                reach |= up[J]
            up[I] = frozenset(reach)
        return up

    def leq(self, I, J) -> bool:
        I, J = _normalize(I), _normalize(J)
        for K in (I, J):
            if K not in self:
                raise PreconditionError(f"{K} is not in the {self.parity_class} poset for n={self.n}")
        return J in self._up[I]

    def covers(self) -> list:
        """Hasse edges ``(lower, upper, i)`` where ``upper = s_i(lower)``."""
        out = []
        for I in self.elements:
            for J in sorted(set(_raises(I, self.n))):
                labels = [i for i in range(1, self.n + 1) if weyl_action(i, I, self.n) == J]
                out.append((I, J, labels[0]))
        return out

    def minimal(self) -> list:
        return [I for I in self.elements if not any(I != J and self.leq(J, I) for J in self.elements)]

    def maximal(self) -> list:
        return [I for I in self.elements if len(self._up[I]) == 1]


@lru_cache(maxsize=None)
def subset_poset(n: int, parity_class: str | None = None) -> SubsetPoset:
    """The poset used for ``n``; by default even subsets for even ``n`` and odd ones for odd ``n``."""
    if parity_class is None:
        parity_class = "even-subsets" if n % 2 == 0 else "odd-subsets"
    return SubsetPoset(n, parity_class)


def poset_leq(I, J, n: int) -> bool:
    I, J = _normalize(I), _normalize(J)
    if len(I) % 2 != len(J) % 2:
        raise PreconditionError(f"{I} and {J} lie in different posets")
    return subset_poset(n, "even-subsets" if len(I) % 2 == 0 else "odd-subsets").leq(I, J)


def _fmt_subset(I: tuple) -> str:
    return "{" + ",".join(map(str, I)) + "}" if I else "∅"


def hasse_to_dot(P: SubsetPoset) -> str:
    """Hasse diagram in DOT, edges pointing from ``s_i(I)`` down to ``I`` as in the usual drawing."""
    names = {I: f"n{k}" for k, I in enumerate(P.elements)}
    lines = [f"digraph P{P.n} {{", "  rankdir=BT;"]
    for I in P.elements:
        lines.append(f'  {names[I]} [label="{_fmt_subset(I)}"];')
    for lo, hi, i in P.covers():
        lines.append(f'  {names[hi]} -> {names[lo]} [label="s{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def identity_subset(n: int) -> tuple:
    return () if n % 2 == 0 else (n,)


def weyl_word_subset(word: Sequence[int], n: int) -> tuple:
    """Subset reached from the identity coset by the word ``s_{w1} s_{w2} ... s_{wk}``.

    The rightmost letter acts first.  For even ``n`` the letters ``n - 1``
    and ``n`` are exchanged before acting: in the even-subset model the
    identity is ``()``, which ``s_{n-1}`` fixes, and the words below are
    written for the other half-spin labelling.
    """
    I = identity_subset(n)
    for letter in reversed(tuple(word)):
        if n % 2 == 0 and letter in (n - 1, n):
            letter = 2 * n - 1 - letter
        I = weyl_action(letter, I, n)
    return I


def spinor_to_pfaffian(I: Iterable[int], X: SkewMatrix) -> Polynomial:
    """Restriction of ``q_I`` to the big cell: delete rows and columns ``n + 1 - i``."""
    n = X.n
    I = _normalize(I)
    if any(not 1 <= i <= n for i in I):
        raise PreconditionError(f"{I} is not a subset of 1..{n}")
    return comp_pfaffian(X, [n + 1 - i for i in I])


IDEALS = {"w-prime": "w-prime", "w1": "w-prime", "w'": "w-prime", "w-double-prime": "w-double-prime", "w2": "w-double-prime", "w''": "w-double-prime"}


def _words(n: int, which: str) -> list:
    if which == "w-prime":
        # q_id, q_{s_{n-1}}, q_{s_{n-2}s_{n-1}}, ..., q_{s_1...s_{n-1}}
        return [()] + [tuple(range(k, n)) for k in range(n - 1, 0, -1)]
    return [(), (n - 1,), (n - 2, n - 1), (n, n - 2, n - 1)]


@dataclass(frozen=True)
class SchubertIdeal:
    n: int
    which: str
    words: tuple
    subsets: tuple
    generators: tuple
    redundant: tuple = field(default=())

    def to_json(self) -> dict:
        from .polyring import to_string

        return {
            "n": self.n,
            "ideal": self.which,
            "generators": [
                {
                    "word": ["s%d" % i for i in w],
                    "subset": list(I),
                    "pfaffian": to_string(g),
                    "redundant": k in self.redundant,
                }
                for k, (w, I, g) in enumerate(zip(self.words, self.subsets, self.generators))
            ],
        }


def schubert_ideal(n: int, which: str, X: SkewMatrix | None = None) -> SchubertIdeal:
    """Generators of ``I_{w'}`` (``n`` of them) or ``I_{w''}`` (four), as Pfaffians of ``X``."""
    if n < 5:
        raise SizeError(f"codimension-3 Schubert ideals need n >= 5, got {n}")
    if which not in IDEALS:
        raise SizeError(f"unknown ideal {which!r}; choose from {sorted(IDEALS)}")
    which = IDEALS[which]
    if X is None:
        from .pfaffian import generic_skew

        X = generic_skew(n)
    if X.n != n:
        raise SizeError(f"matrix has size {X.n}, expected {n}")
    words = _words(n, which)
    subsets = tuple(weyl_word_subset(w, n) for w in words)
    gens = tuple(spinor_to_pfaffian(I, X) for I in subsets)
    redundant = (0,) if which == "w-prime" and n % 2 == 0 else ()
    return SchubertIdeal(n, which, tuple(words), subsets, gens, redundant)


def schubert_ideal_generators(n: int, which: str, X: SkewMatrix | None = None) -> list:
    return list(schubert_ideal(n, which, X).generators)


@dataclass(frozen=True)
class GradedFormat:
    """Free modules ``F_0..F_3``, each a tuple of ``(rank, d)`` meaning ``R(-d)^rank``."""

    modules: tuple

    def __post_init__(self):
        if len(self.modules) != 4:
            raise SizeError("a graded format lists homological degrees 0..3")
        for mod in self.modules:
            for rank, _ in mod:
                if rank <= 0:
                    raise SizeError("ranks must be positive")

    @property
    def ranks(self) -> tuple:
        return tuple(sum(r for r, _ in mod) for mod in self.modules)

    def shifts(self, i: int) -> list:
        """Internal degrees of the basis of ``F_i``, with multiplicity, sorted."""
        return sorted(d for r, d in self.modules[i] for _ in range(r))

    def __str__(self) -> str:
        def mod(m):
            return "⊕".join(("R" if d == 0 else f"R(-{d})") if r == 1 else (f"R^{r}" if d == 0 else f"R^{r}(-{d})") for r, d in m)

        return "0 → " + " → ".join(mod(self.modules[i]) for i in (3, 2, 1, 0))


def _from_shifts(shifts: Iterable[int]) -> tuple:
    counts: dict = {}
    for d in shifts:
        counts[d] = counts.get(d, 0) + 1
    return tuple((counts[d], d) for d in sorted(counts, reverse=True))


def _split(n: int) -> tuple:
    if n < 5:
        raise SizeError(f"need n >= 5, got {n}")
    return (n - 2) // 2 if n % 2 == 0 else (n - 3) // 2


def gorenstein_format(n: int) -> GradedFormat:
    """Format of the codimension-3 Gorenstein ideal ``I_{w'}``."""
    m = _split(n)
    if n % 2 == 0:
        return GradedFormat((((1, 0),), ((2 * m + 1, m),), ((2 * m + 1, m + 1),), ((1, 2 * m + 1),)))
    return GradedFormat((((1, 0),), ((2 * m + 3, m + 1),), ((2 * m + 3, m + 2),), ((1, 2 * m + 3),)))


def linking_degrees(n: int) -> tuple:
    m = _split(n)
    return (m, m, m + 1) if n % 2 == 0 else (m + 1, m + 1, m + 1)


def mapping_cone_format(n: int) -> tuple:
    """``(gorenstein, aci)`` formats, the second obtained by linkage.

    With ``G`` resolving the Gorenstein ideal, ``K`` the Koszul complex on
    the linking sequence and ``s`` the sum of its degrees, the dual of the
    mapping cone gives ``F_1 = G_3* ⊕ K_2*``, ``F_2 = G_2* ⊕ K_1*`` and
    ``F_3 = G_1*``, all twisted by ``-s``.  Each linking element of the
    same degree as a minimal generator of the Gorenstein ideal splits off
    one pair of summands between ``F_2`` and ``F_3``.
    """
    G = gorenstein_format(n)
    a = linking_degrees(n)
    s = sum(a)
    k1 = list(a)
    k2 = [a[i] + a[j] for i, j in ((0, 1), (0, 2), (1, 2))]
    f1 = [s - d for d in G.shifts(3)] + [s - d for d in k2]
    f2 = [s - d for d in G.shifts(2)] + [s - d for d in k1]
    f3 = [s - d for d in G.shifts(1)]
    for d in a:
        if d in G.shifts(1):
            f2.remove(s - d)
            f3.remove(s - d)
    aci = GradedFormat((((1, 0),), _from_shifts(f1), _from_shifts(f2), _from_shifts(f3)))
    return G, aci
