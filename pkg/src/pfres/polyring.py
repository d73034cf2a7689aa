"""Sparse multivariate polynomials over the integers.

Variables are indexed by a family symbol and an ordered pair, ``t_i_j``
for the generic skew matrix, ``c_i_j`` and ``u_k_i`` for the
equivariant ring.  A monomial is packed into a single Python integer,
one fixed-width exponent slot per variable, so that multiplying two
monomials is an integer addition.  Slots are handed out by a
process-wide, append-only interning table; equality never depends on
the slot order because every monomial of a given variable set packs the
same way within one process.

Canonical printing uses graded lexicographic order with variables
ordered by ``(family, i, j)``.
"""

from __future__ import annotations

import threading
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Tuple, Union

__all__ = [
    "Var",
    "Polynomial",
    "MissingVariableError",
    "ZERO",
    "ONE",
    "t",
    "c",
    "u",
    "const",
    "add",
    "mul",
    "neg",
    "evaluate",
    "substitute",
    "bidegree",
    "INHOMOGENEOUS",
]

SLOT_BITS = 16
_SLOT_MASK = (1 << SLOT_BITS) - 1
# highest bit of a slot set means the exponent has reached 2**15
_HIGH_BIT = 1 << (SLOT_BITS - 1)

FAMILY_ORDER = {"t": 0, "c": 1, "u": 2}


class Var(NamedTuple):
    """A variable ``<name>_<i>_<j>``; indices are 1-based."""

    name: str
    i: int
    j: int

    def sort_key(self) -> Tuple[int, int, int]:
        return (FAMILY_ORDER.get(self.name, 99), self.i, self.j)

    def __str__(self) -> str:
        return f"{self.name}_{self.i}_{self.j}"


class MissingVariableError(KeyError):
    """Raised by evaluate/substitute when an occurring variable is unassigned."""

    def __init__(self, var: Var):
        super().__init__(f"no value assigned to variable {var}")
        self.var = var


class _Registry:
    def __init__(self) -> None:
        self.slot_of: Dict[Var, int] = {}
        self.vars: list = []
        self.high_mask = 0
        self._lock = threading.Lock()

    def slot(self, v: Var) -> int:
        s = self.slot_of.get(v)
        if s is not None:
            return s
        with self._lock:
            s = self.slot_of.get(v)
            if s is None:
                s = len(self.vars)
                self.vars.append(v)
                self.high_mask |= _HIGH_BIT << (SLOT_BITS * s)
                self.slot_of[v] = s
        return s


_REG = _Registry()


def _unpack(mono: int) -> Iterator[Tuple[Var, int]]:
    s = 0
    while mono:
        e = mono & _SLOT_MASK
        if e:
            yield _REG.vars[s], e
        mono >>= SLOT_BITS
        s += 1


def _mono_key(mono: int):
    """Sort key realising descending grlex when sorted ascending."""
    factors = sorted(((v.sort_key(), e) for v, e in _unpack(mono)))
    degree = sum(e for _, e in factors)
    expanded = []
    for k, e in factors:
        expanded.extend([k] * e)
    return (-degree, expanded)


Coeff = int
Scalar = Union[int, "Polynomial"]


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to
    nonzero integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        if terms:
            self._terms = {m: a for m, a in terms.items() if a}
        else:
            self._terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[int, int]) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def variable(cls, v: Var) -> "Polynomial":
        return cls._raw({1 << (SLOT_BITS * _REG.slot(v)): 1})

    @classmethod
    def constant(cls, a: int) -> "Polynomial":
        return cls._raw({0: a} if a else {})

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def terms(self) -> list:
        """``[(((var, exp), ...), coeff), ...]`` in descending grlex order."""
        out = []
        for m in sorted(self._terms, key=_mono_key):
            factors = tuple(sorted(_unpack(m), key=lambda ve: ve[0].sort_key()))
            out.append((factors, self._terms[m]))
        return out

    def variables(self) -> set:
        found = set()
        for m in self._terms:
            for v, _ in _unpack(m):
                found.add(v)
        return found

    def degrees(self) -> set:
        return {sum(e for _, e in _unpack(m)) for m in self._terms}

    def min_degree(self) -> int | None:
        return min(self.degrees()) if self._terms else None

    def constant_term(self) -> int:
        return self._terms.get(0, 0)

    def as_int(self) -> int:
        """The value of a constant polynomial."""
        if any(m for m in self._terms):
            raise ValueError("polynomial is not constant")
        return self._terms.get(0, 0)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: Scalar) -> "Polynomial":
        if isinstance(other, int):
            if not other:
                return self
            other = Polynomial.constant(other)
        elif not isinstance(other, Polynomial):
            return NotImplemented
        if len(self._terms) < len(other._terms):
            small, big = self._terms, other._terms
        else:
            small, big = other._terms, self._terms
        out = dict(big)
        for m, a in small.items():
            b = out.get(m)
            if b is None:
                out[m] = a
            else:
                s = a + b
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -a for m, a in self._terms.items()})

    def __sub__(self, other: Scalar) -> "Polynomial":
        if isinstance(other, int):
            return self + (-other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self._terms)
        for m, a in other._terms.items():
            b = out.get(m)
            if b is None:
                out[m] = -a
            else:
                s = b - a
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(out)

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "Polynomial":
        if isinstance(other, int):
            if not other:
                return ZERO
            return Polynomial._raw({m: a * other for m, a in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        st, ot = self._terms, other._terms
        if not st or not ot:
            return ZERO
        if len(st) > len(ot):
            st, ot = ot, st
        out: Dict[int, int] = {}
        get = out.get
        for m1, a1 in st.items():
            for m2, a2 in ot.items():
                m = m1 + m2
                out[m] = get(m, 0) + a1 * a2
        out = {m: a for m, a in out.items() if a}
        high = _REG.high_mask
        for m in out:
            if m & high:
                raise OverflowError("exponent slot overflow")
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative exponent")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- comparison -----------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            if not other:
                return not self._terms
            return self._terms == {0: other}
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- printing -------------------------------------------------------
    def __str__(self) -> str:
        return to_string(self)

    def __repr__(self) -> str:
        return f"Polynomial({to_string(self)!r})"


ZERO = Polynomial()
ONE = Polynomial.constant(1)


def t(i: int, j: int) -> Polynomial:
    """The generic indeterminate tau_ij; ``t(j, i) == -t(i, j)``, ``t(i, i) == 0``."""
    if i == j:
        return ZERO
    if i > j:
        return -Polynomial.variable(Var("t", j, i))
    return Polynomial.variable(Var("t", i, j))


def c(i: int, j: int) -> Polynomial:
    if i == j:
        return ZERO
    if i > j:
        return -Polynomial.variable(Var("c", j, i))
    return Polynomial.variable(Var("c", i, j))


def u(k: int, i: int) -> Polynomial:
    return Polynomial.variable(Var("u", k, i))


def const(a: int) -> Polynomial:
    return Polynomial.constant(a)


def add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def neg(a: Polynomial) -> Polynomial:
    return -a


def _coerce(x: Scalar) -> Polynomial:
    return Polynomial.constant(x) if isinstance(x, int) else x


def evaluate(p: Scalar, assignment: Mapping[Var, int], modulus: int | None = None) -> int:
    """Exact integer value of ``p`` at ``assignment`` (reduced when ``modulus`` is given)."""
    p = _coerce(p)
    total = 0
    for m, a in p._terms.items():
        val = a
        for v, e in _unpack(m):
            try:
                x = assignment[v]
            except KeyError:
                raise MissingVariableError(v) from None
            val *= pow(x, e, modulus) if modulus else x**e
        total += val
        if modulus:
            total %= modulus
    return total


def substitute(p: Scalar, mapping: Mapping[Var, Polynomial]) -> Polynomial:
    """Simultaneous substitution of every variable of ``p``."""
    p = _coerce(p)
    cache: Dict[Tuple[Var, int], Polynomial] = {}
    out = ZERO
    for m, a in p._terms.items():
        term = Polynomial.constant(a)
        for v, e in _unpack(m):
            key = (v, e)
            piece = cache.get(key)
            if piece is None:
                try:
                    image = mapping[v]
                except KeyError:
                    raise MissingVariableError(v) from None
                piece = _coerce(image) ** e
                cache[key] = piece
            term = term * piece
        out = out + term
    return out


INHOMOGENEOUS = "inhomogeneous"


def bidegree(p: Scalar, c_class: Iterable[str] = ("c",), u_class: Iterable[str] = ("u",)):
    """Common ``(c-degree, u-degree)`` of all monomials, or ``INHOMOGENEOUS``.

    The zero polynomial is homogeneous of every bidegree and yields ``None``.
    """
    p = _coerce(p)
    c_names, u_names = set(c_class), set(u_class)
    found = None
    for m in p._terms:
        dc = du = 0
        for v, e in _unpack(m):
            if v.name in c_names:
                dc += e
            elif v.name in u_names:
                du += e
        if found is None:
            found = (dc, du)
        elif found != (dc, du):
            return INHOMOGENEOUS
    return found


def to_string(p: Scalar) -> str:
    """Canonical form, e.g. ``t_1_2*t_3_4-t_1_3*t_2_4+t_1_4*t_2_3``."""
    p = _coerce(p)
    if not p._terms:
        return "0"
    pieces = []
    for factors, a in p.terms():
        body = "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in factors)
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        pieces.append(sign + text)
    out = "".join(pieces)
    return out[1:] if out[0] == "+" else out


def parse(text: str) -> Polynomial:
    """Inverse of ``to_string``."""
    text = text.strip()
    if text == "0":
        return ZERO
    out = ZERO
    i = 0
    n = len(text)
    while i < n:
        sign = 1
        if text[i] in "+-":
            sign = -1 if text[i] == "-" else 1
            i += 1
        j = i
        while j < n and text[j] not in "+-":
            j += 1
        term = Polynomial.constant(sign)
        for factor in text[i:j].split("*"):
            if factor.isdigit():
                term = term * int(factor)
                continue
            base, _, exp = factor.partition("^")
            name, a, b = base.split("_")
            term = term * Polynomial.variable(Var(name, int(a), int(b))) ** (int(exp) if exp else 1)
        out = out + term
        i = j
    return out
