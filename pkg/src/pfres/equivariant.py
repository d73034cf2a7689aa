"""Exterior-algebra form of the complexes over Z[c_ij, u_ki].

``F`` has basis ``g_1..g_r`` with ``r = 2m`` when ``n = 2m + 3`` (odd
parity) and ``r = 2m + 1`` when ``n = 2m + 4`` (even parity).  Elements of
the exterior algebra are stored as maps from increasing index tuples to
polynomial coefficients.  Entries of the differentials are coefficients
of top forms, written ``[w]`` below; the signs that make the complex agree with the zero-block resolution are kept in a frozen table
(``data/equivariant_signs.json``).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Dict, Mapping

from .brill import PolyMatrix
from .errors import SizeError
from .pfaffian import SkewMatrix, sub_pfaffian
from .polyring import INHOMOGENEOUS, ONE, ZERO, Polynomial, Var, bidegree, c, substitute, t, u
from .resolution import build as build_resolution
from .resolution import check_complex
from .verdict import Verdict

__all__ = [
    "ExteriorElement",
    "wedge",
    "basis_vector",
    "rank_of_F",
    "n_of",
    "generic_A",
    "build_C",
    "build_C_power",
    "iterated_wedge_power",
    "u_vector",
    "top_coefficient",
    "equivariant_generators",
    "assemble_differentials",
    "raw_differentials",
    "frozen_signs",
    "equivariant_differentials",
    "substitution_map",
    "discover_signs",
    "load_sign_table",
    "ROW_TO_RESOLUTION",
    "twists",
    "substitution_check",
    "bidegree_check",
    "to_json",
]


@dataclass(frozen=True)
class ExteriorElement:
    rank: int
    terms: Mapping[tuple, Polynomial] = field(default_factory=dict)

    def __post_init__(self):
        clean = {k: v for k, v in self.terms.items() if v}
        degrees = {len(k) for k in clean}
        if len(degrees) > 1:
            raise SizeError("exterior element must be homogeneous")
        for k in clean:
            if any(not 1 <= a <= self.rank for a in k) or list(k) != sorted(set(k)):
                raise SizeError(f"bad basis index {k} for rank {self.rank}")
        object.__setattr__(self, "terms", clean)

    @property
    def degree(self) -> int | None:
        return len(next(iter(self.terms))) if self.terms else None

    def __add__(self, other: "ExteriorElement") -> "ExteriorElement":
        if self.rank != other.rank:
            raise SizeError("rank mismatch")
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return ExteriorElement(self.rank, out)

    def scale(self, a) -> "ExteriorElement":
        return ExteriorElement(self.rank, {k: v * a for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self.terms.items())))


def _merge_sign(a: tuple, b: tuple) -> int:
    """Sign of the shuffle that sorts the concatenation ``a + b``; 0 on overlap."""
    inversions = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        if j < len(b) and b[j] == x:
            return 0
        inversions += j
    # inversions counts pairs (x in a, y in b) with y < x
    return -1 if inversions % 2 else 1


def wedge(a: ExteriorElement, b: ExteriorElement) -> ExteriorElement:
    if a.rank != b.rank:
        raise SizeError(f"rank mismatch: {a.rank} and {b.rank}")
    out: Dict[tuple, Polynomial] = {}
    for ka, va in a.terms.items():
        for kb, vb in b.terms.items():
            s = _merge_sign(ka, kb)
            if not s:
                continue
            key = tuple(sorted(ka + kb))
            prod = va * vb
            out[key] = out.get(key, ZERO) + (prod if s == 1 else -prod)
    return ExteriorElement(a.rank, out)


def wedge_all(*elements: ExteriorElement) -> ExteriorElement:
    result = elements[0]
    for e in elements[1:]:
        result = wedge(result, e)
    return result


def scalar(rank: int, a=ONE) -> ExteriorElement:
    return ExteriorElement(rank, {(): a})


def basis_vector(rank: int, i: int) -> ExteriorElement:
    return ExteriorElement(rank, {(i,): ONE})


def _check_parity(parity: str) -> None:
    if parity not in ("odd", "even"):
        raise SizeError(f"parity must be 'odd' or 'even', got {parity!r}")


def rank_of_F(m: int, parity: str) -> int:
    _check_parity(parity)
    if m < 1:
        raise SizeError(f"m must be at least 1, got {m}")
    return 2 * m if parity == "odd" else 2 * m + 1


def n_of(m: int, parity: str) -> int:
    return rank_of_F(m, parity) + 3


@lru_cache(maxsize=None)
def generic_A(rank: int) -> SkewMatrix:
    return SkewMatrix.from_upper(rank, c)


def build_C(rank: int) -> ExteriorElement:
    return ExteriorElement(rank, {(i, j): c(i, j) for i in range(1, rank + 1) for j in range(i + 1, rank + 1)})


@lru_cache(maxsize=None)
def _C_power(rank: int, j: int) -> ExteriorElement:
    if 2 * j > rank or j < 0:
        raise SizeError(f"C^{j} does not fit in rank {rank}")
    A = generic_A(rank)
    return ExteriorElement(rank, {I: sub_pfaffian(A, I) for I in itertools.combinations(range(1, rank + 1), 2 * j)})


def build_C_power(m: int, parity: str, j: int) -> ExteriorElement:
    """Divided power of ``C``: the coefficient of ``g_I`` is ``Pf(A[I; I])``."""
    return _C_power(rank_of_F(m, parity), j)


def iterated_wedge_power(rank: int, j: int) -> ExteriorElement:
    """The literal ``C ^ ... ^ C`` (``j`` factors); equals ``j!`` times the divided power."""
    result = scalar(rank)
    C = build_C(rank)
    for _ in range(j):
        result = wedge(result, C)
    return result


def u_vector(rank: int, k: int) -> ExteriorElement:
    return ExteriorElement(rank, {(i,): u(k, i) for i in range(1, rank + 1)})


def top_coefficient(e: ExteriorElement) -> Polynomial:
    """Coefficient of ``g_1 ^ ... ^ g_r``; zero for elements of lower degree."""
    return e.terms.get(tuple(range(1, e.rank + 1)), ZERO)


def _top(rank: int, *factors: ExteriorElement) -> Polynomial:
    return top_coefficient(wedge_all(scalar(rank), *factors))


def _pairs(gamma: int) -> tuple:
    return tuple(k for k in (1, 2, 3) if k != gamma)


def equivariant_generators(m: int, parity: str) -> list:
    """The four generators ``(x1, x2, x3, x4)`` read off as top-form coefficients."""
    r = rank_of_F(m, parity)
    U = [None] + [u_vector(r, k) for k in (1, 2, 3)]
    if parity == "odd":
        Cm1 = _C_power(r, m - 1)
        return [
            _top(r, _C_power(r, m)),
            _top(r, Cm1, U[2], U[3]),
            _top(r, Cm1, U[1], U[3]),
            _top(r, Cm1, U[1], U[2]),
        ]
    Cm = _C_power(r, m)
    return [
        _top(r, _C_power(r, m - 1), U[1], U[2], U[3]),
        _top(r, Cm, U[1]),
        _top(r, Cm, U[2]),
        _top(r, Cm, U[3]),
    ]


UNSIGNED = {"generators": [1, 1, 1, 1], "koszul_columns": [1, 1, 1], "g_block_rows": [1, 1, 1, 1]}


def assemble_differentials(m: int, parity: str, signs: Mapping = UNSIGNED):
    """``(d3, d2, d1)`` from top-form entries and a sign table.

    ``signs["generators"]`` rescales the four generators (and so ``d1``);
    the Koszul relations are written in the rescaled generators and then
    multiplied by ``signs["koszul_columns"]``; the ``w``/``v`` block of row
    ``k`` is multiplied by ``signs["g_block_rows"][k]``.  Middle module
    columns: the Koszul relations for ``gamma = 1, 2, 3`` (matching the
    ``u``-rows of ``d3``), then ``g_1..g_r``.
    """
    r = rank_of_F(m, parity)
    sigma, kappa, rho = signs["generators"], signs["koszul_columns"], signs["g_block_rows"]
    y = [s * x for s, x in zip(sigma, equivariant_generators(m, parity))]
    U = [None] + [u_vector(r, k) for k in (1, 2, 3)]
    g = [None] + [basis_vector(r, i) for i in range(1, r + 1)]
    A = generic_A(r)
    d3 = [[u(k, i) for i in range(1, r + 1)] for k in (1, 2, 3)]
    d3 += [[A[a, i] for i in range(1, r + 1)] for a in range(1, r + 1)]
    d2 = [[ZERO] * (3 + r) for _ in range(4)]
    if parity == "odd":
        # relation between C^m and the generator omitting u_gamma
        for gamma in (1, 2, 3):
            d2[0][gamma - 1] = -kappa[gamma - 1] * y[gamma]
            d2[gamma][gamma - 1] = kappa[gamma - 1] * y[0]
        Cm1 = _C_power(r, m - 1)
        Cm2 = _C_power(r, m - 2) if m >= 2 else None
        for i in range(1, r + 1):
            w = _top(r, Cm2, U[1], U[2], U[3], g[i]) if Cm2 is not None else ZERO
            d2[0][2 + i] = rho[0] * w
            for gamma in (1, 2, 3):
                d2[gamma][2 + i] = rho[gamma] * _top(r, Cm1, U[gamma], g[i])
    else:
        # relation between C^m u_a and C^m u_b, where {a, b, gamma} = {1, 2, 3}
        for gamma in (1, 2, 3):
            a, b = _pairs(gamma)
            d2[a][gamma - 1] = kappa[gamma - 1] * y[b]
            d2[b][gamma - 1] = -kappa[gamma - 1] * y[a]
        Cm = _C_power(r, m)
        Cm1 = _C_power(r, m - 1)
        for i in range(1, r + 1):
            d2[0][2 + i] = rho[0] * _top(r, Cm, g[i])
            for gamma in (1, 2, 3):
                a, b = _pairs(gamma)
                d2[gamma][2 + i] = rho[gamma] * _top(r, Cm1, U[a], U[b], g[i])
    return PolyMatrix(d3), PolyMatrix(d2), PolyMatrix([y])


def raw_differentials(m: int, parity: str):
    """Differentials with every sign in the table set to +1."""
    return assemble_differentials(m, parity, UNSIGNED)


# Row k of (d2, d1) corresponds to this row of the zero-block resolution.
ROW_TO_RESOLUTION = {"odd": (4, 1, 2, 3), "even": (1, 4, 3, 2)}


def substitution_map(m: int, parity: str) -> dict:
    """``c_ij -> t_{i+3, j+3}`` and ``u_ki -> t_{k, i+3}``."""
    r = rank_of_F(m, parity)
    out = {}
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            out[Var("c", i, j)] = t(i + 3, j + 3)
        for k in (1, 2, 3):
            out[Var("u", k, i)] = t(k, i + 3)
    return out


def _sub_matrix(M: PolyMatrix, mapping: dict) -> PolyMatrix:
    return M.map(lambda p: substitute(p, mapping))


def _relative_sign(mine, theirs) -> int | None:
    """The common sign ``s`` with ``mine[k] == s * theirs[k]`` for all k, 0 if all vanish."""
    found = 0
    for a, b in zip(mine, theirs):
        if not a and not b:
            continue
        s = 1 if a == b else -1 if a == -b else None
        if s is None or (found and s != found):
            return None
        found = s
    return found


def discover_signs(m: int, parity: str) -> dict:
    """Sign table that aligns the top-form complex with the zero-block resolution.

    Raises :class:`SizeError` when some block agrees with no choice of sign,
    which would mean an entry is wrong rather than merely mis-signed.
    """
    mapping = substitution_map(m, parity)
    R = build_resolution(n_of(m, parity), parity, "zero-block")
    perm = ROW_TO_RESOLUTION[parity]
    x = [substitute(p, mapping) for p in equivariant_generators(m, parity)]
    sigma = []
    for k, target in enumerate(perm):
        s = _relative_sign([x[k]], [R.d1.entries[0][target - 1]])
        if not s:
            raise SizeError(f"generator {k + 1} does not match resolution generator {target}")
        sigma.append(s)
    trial = {"generators": sigma, "koszul_columns": [1, 1, 1], "g_block_rows": [1, 1, 1, 1]}
    _, d2, _ = assemble_differentials(m, parity, trial)
    d2 = _sub_matrix(d2, mapping)
    target_rows = [R.d2.entries[k - 1] for k in perm]
    kappa = []
    for col in range(3):
        s = _relative_sign([row[col] for row in d2.entries], [row[col] for row in target_rows])
        if not s:
            raise SizeError(f"Koszul column {col + 1} matches no sign")
        kappa.append(s)
    rho = []
    for k in range(4):
        s = _relative_sign(d2.entries[k][3:], target_rows[k][3:])
        if s is None:
            raise SizeError(f"row {k + 1} of the w/v block matches no sign")
        rho.append(s or 1)
    return {"generators": sigma, "koszul_columns": kappa, "g_block_rows": rho}


@lru_cache(maxsize=1)
def load_sign_table() -> dict:
    text = resources.files("pfres").joinpath("data/equivariant_signs.json").read_text(encoding="utf-8")
    return json.loads(text)


def frozen_signs(m: int, parity: str) -> dict:
    key = f"{parity}:{m}"
    table = load_sign_table()
    if key in table:
        return table[key]
    if parity in table:
        return table[parity]
    raise SizeError(f"no frozen signs for m={m}, parity={parity}")


def equivariant_differentials(m: int, parity: str):
    """``(d3, d2, d1)`` with the frozen sign table applied."""
    return assemble_differentials(m, parity, frozen_signs(m, parity))


def substitution_check(m: int, parity: str, differentials=None) -> Verdict:
    """After substitution the complex equals the zero-block resolution, row for row.

    ``differentials`` overrides the matrices under test (used for perturbation tests).
    """
    d3, d2, d1 = differentials if differentials is not None else equivariant_differentials(m, parity)
    mapping = substitution_map(m, parity)
    n = n_of(m, parity)
    R = build_resolution(n, parity, "zero-block")
    perm = ROW_TO_RESOLUTION[parity]
    sd3, sd2, sd1 = (_sub_matrix(M, mapping) for M in (d3, d2, d1))
    checks = [("d3", sd3 == R.d3)]
    for k, target in enumerate(perm):
        checks.append((f"d2 row {k + 1}", list(sd2.entries[k]) == list(R.d2.entries[target - 1])))
        checks.append((f"d1 entry {k + 1}", sd1.entries[0][k] == R.d1.entries[0][target - 1]))
    verdict = Verdict.collect(checks)
    if not verdict:
        return verdict
    from .resolution import ResolutionComplex

    permuted = ResolutionComplex(n, parity, "zero-block", sd3, sd2, sd1, R.matrix)
    return check_complex(permuted)


def twists(m: int, parity: str) -> dict:
    """Bidegrees of the basis elements of ``F1, F2, F3`` (negated twists)."""
    r = rank_of_F(m, parity)
    if parity == "odd":
        f1 = [(m, 0)] + [(m - 1, 2)] * 3
        f2 = [(2 * m - 1, 2)] * 3 + [(2 * m - 2, 3)] * r
        f3 = [(2 * m - 1, 3)] * r
    else:
        f1 = [(m - 1, 3)] + [(m, 1)] * 3
        f2 = [(2 * m, 2)] * 3 + [(2 * m - 1, 3)] * r
        f3 = [(2 * m, 3)] * r
    return {"F0": [(0, 0)], "F1": f1, "F2": f2, "F3": f3}


def _entry_ok(p: Polynomial, expected: tuple) -> bool:
    if not p:
        return True
    b = bidegree(p)
    return b != INHOMOGENEOUS and tuple(b) == tuple(expected)


def bidegree_check(m: int, parity: str) -> Verdict:
    """Every entry is bihomogeneous of degree (source twist) - (target twist)."""
    d3, d2, d1 = equivariant_differentials(m, parity)
    tw = twists(m, parity)
    checks = []
    for name, M, src, tgt in (("d1", d1, "F1", "F0"), ("d2", d2, "F2", "F1"), ("d3", d3, "F3", "F2")):
        for i, row in enumerate(M.entries):
            for j, p in enumerate(row):
                want = tuple(a - b for a, b in zip(tw[src][j], tw[tgt][i]))
                checks.append((f"{name}[{i + 1},{j + 1}]", _entry_ok(p, want)))
    return Verdict.collect(checks)


def to_json(m: int, parity: str) -> dict:
    d3, d2, d1 = equivariant_differentials(m, parity)
    tw = twists(m, parity)
    return {
        "n": n_of(m, parity),
        "m": m,
        "parity": parity,
        "variant": "equivariant",
        "d3": d3.to_strings(),
        "d2": d2.to_strings(),
        "d1": d1.to_strings(),
        "grading": {name: [[-a, -b] for a, b in degs] for name, degs in tw.items()},
    }
