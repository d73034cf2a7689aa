"""Rectangular matrices, a division-free determinant, and Brill's minor formula."""

from __future__ import annotations

import itertools
from typing import Callable, Sequence

from .errors import SizeError
from .pfaffian import SkewMatrix, comp_pfaffian, full_pfaffian, pfaffian_word, word_sign
from .polyring import ONE, to_string

__all__ = [
    "PolyMatrix",
    "det_oracle",
    "brill_minor",
    "d3_minor_formula",
    "d3_submatrix",
]


class PolyMatrix:
    """Dense rectangular matrix over the same rings as :class:`SkewMatrix`.

    ``entries`` is a 0-based grid; ``M[i, j]`` reads 1-based.
    """

    __slots__ = ("rows", "cols", "entries", "one", "zero", "modulus")

    def __init__(self, entries: Sequence[Sequence], one=ONE, modulus: int | None = None, cols: int | None = None):
        self.entries = tuple(tuple(r) for r in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else (cols or 0)
        if any(len(r) != self.cols for r in self.entries):
            raise SizeError("ragged matrix")
        self.one = one
        self.zero = one - one
        self.modulus = modulus

    @classmethod
    def build(cls, rows: int, cols: int, entry: Callable[[int, int], object], one=ONE, modulus=None) -> "PolyMatrix":
        """Matrix with ``entry(i, j)`` at 1-based position ``(i, j)``."""
        return cls([[entry(i, j) for j in range(1, cols + 1)] for i in range(1, rows + 1)], one, modulus, cols)

    @classmethod
    def identity(cls, k: int, one=ONE) -> "PolyMatrix":
        zero = one - one
        return cls([[one if i == j else zero for j in range(k)] for i in range(k)], one)

    @classmethod
    def from_skew(cls, T: SkewMatrix, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return cls([[T[i, j] for j in cols] for i in rows], T.one, T.modulus, len(cols))

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, key):
        i, j = key
        return self.entries[i - 1][j - 1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols})"

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        """Rows and columns selected by 1-based index lists."""
        return PolyMatrix([[self.entries[i - 1][j - 1] for j in cols] for i in rows], self.one, self.modulus, len(cols))

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(col) for col in zip(*self.entries)], self.one, self.modulus, self.rows)

    def map(self, f: Callable) -> "PolyMatrix":
        return PolyMatrix([[f(x) for x in r] for r in self.entries], self.one, self.modulus, self.cols)

    def column(self, j: int) -> tuple:
        return tuple(r[j - 1] for r in self.entries)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise SizeError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.zero
        out = []
        ocols = list(zip(*other.entries)) if other.entries else [()] * other.cols
        for r in self.entries:
            row = []
            for col in ocols:
                acc = zero
                for a, b in zip(r, col):
                    if a and b:
                        acc = acc + a * b
                if self.modulus:
                    acc %= self.modulus
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.one, self.modulus, other.cols)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise SizeError("shape mismatch")
        return PolyMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.one, self.modulus, self.cols)

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda x: -x)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def first_nonzero(self):
        """``((i, j), value)`` of the first nonzero entry (1-based), or ``None``."""
        for i, r in enumerate(self.entries, 1):
            for j, x in enumerate(r, 1):
                if x:
                    return (i, j), x
        return None

    def is_zero(self) -> bool:
        return self.first_nonzero() is None

    def to_strings(self) -> list:
        return [[to_string(x) for x in r] for r in self.entries]


def det_oracle(M: PolyMatrix):
    """Determinant by memoised Laplace expansion along rows over column subsets."""
    if M.rows != M.cols:
        raise SizeError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    m = M.rows
    rows = M.entries
    one, zero, modulus = M.one, M.zero, M.modulus
    cache = {0: one}

    def det(mask: int, size: int):
        v = cache.get(mask)
        if v is not None:
            return v
        r = rows[m - size]
        v = zero
        pos = 0
        for c in range(m):
            if mask >> c & 1:
                e = r[c]
                if e:
                    sub = det(mask ^ (1 << c), size - 1)
                    if sub:
                        v = v + e * sub if pos % 2 == 0 else v - e * sub
                pos += 1
        if modulus:
            v %= modulus
        cache[mask] = v
        return v

    return det((1 << m) - 1, m)


def brill_minor(T: SkewMatrix, rows: Sequence[int], cols: Sequence[int]):
    """``det T[rows; cols]`` as a signed sum of Pfaffian products."""
    rho, sigma = tuple(rows), tuple(cols)
    m = len(rho)
    if m != len(sigma) or m < 1:
        raise SizeError(f"row and column sets must have the same positive size, got {m} and {len(sigma)}")
    if list(rho) != sorted(set(rho)) or list(sigma) != sorted(set(sigma)):
        raise SizeError("row and column sets must be strictly increasing")
    common = set(rho) & set(sigma)
    total = T.zero
    for k in range(m // 2 + 1):
        inner = T.zero
        for omega in itertools.combinations(rho, 2 * k):
            if not common.issubset(omega):
                continue
            rest = tuple(x for x in rho if x not in omega)
            p = pfaffian_word(T, omega)
            if not p:
                continue
            q = pfaffian_word(T, rest + sigma)
            if not q:
                continue
            s = word_sign(rho, omega + rest)
            inner = inner + s * (p * q)
        total = total + inner if k % 2 == 0 else total - inner
    if (m // 2) % 2:
        total = -total
    return T._reduce(total)


def d3_submatrix(T: SkewMatrix, r: Sequence[int]) -> PolyMatrix:
    """``T`` with rows ``r`` deleted, restricted to columns ``4..n``."""
    rows = [i for i in range(1, T.n + 1) if i not in r]
    return PolyMatrix.from_skew(T, rows, list(range(4, T.n + 1)))


def d3_minor_formula(T: SkewMatrix, parity: str, r: Sequence[int]):
    """Closed form for the maximal minor of ``T[rows not in r; columns 4..n]``."""
    n = T.n
    if parity == "odd":
        if n < 5 or n % 2 == 0:
            raise SizeError(f"odd formula needs odd n >= 5, got {n}")
    elif parity == "even":
        if n < 6 or n % 2:
            raise SizeError(f"even formula needs even n >= 6, got {n}")
    else:
        raise SizeError(f"unknown parity {parity!r}")
    r1, r2, r3 = r
    if not 1 <= r1 < r2 < r3 <= n:
        raise SizeError(f"need 1 <= r1 < r2 < r3 <= {n}, got {tuple(r)}")
    pb = lambda *I: comp_pfaffian(T, I)  # noqa: E731

    if parity == "odd":
        base = pb(r1, r2, r3) * pb(1, 2, 3)
        if r2 <= 3:
            return base
        if r1 <= 3:
            return base - pb(1, 2, 3, r2, r3) * pb(r1)
        return (
            base
            - pb(2, 3, r1, r2, r3) * pb(1)
            + pb(1, 3, r1, r2, r3) * pb(2)
            - pb(1, 2, r1, r2, r3) * pb(3)
        )

    if r3 == 3:
        return T.zero
    if r2 <= 3:
        return pb(1, 2, 3, r3) * pb(r1, r2)
    if r1 == 1:
        return pb(1, 2, r2, r3) * pb(1, 3) - pb(1, 3, r2, r3) * pb(1, 2)
    if r1 == 2:
        return pb(1, 2, r2, r3) * pb(2, 3) - pb(2, 3, r2, r3) * pb(1, 2)
    if r1 == 3:
        return pb(1, 3, r2, r3) * pb(2, 3) - pb(2, 3, r2, r3) * pb(1, 3)
    return (
        pb(1, r1, r2, r3) * pb(2, 3)
        - pb(2, r1, r2, r3) * pb(1, 3)
        + pb(3, r1, r2, r3) * pb(1, 2)
        - pb(1, 2, 3, r1, r2, r3) * full_pfaffian(T)
    )
