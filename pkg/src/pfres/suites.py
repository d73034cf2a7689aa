"""Verification suites shared by the command line and the acceptance tests.

A suite maps one ``n`` to a list of :class:`Check` records, one per family
of identities; a family passes when every instance in it holds.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import brill, equivariant, pfaffian, resolution, schubert
from .errors import IdentityFailure, PfresError, PreconditionError, SizeError
from .pfaffian import generic_skew, random_assignment, specialize, zero_block_skew

DEFAULT_PRIME = 32003
MAX_LISTED_FAILURES = 5


@dataclass(frozen=True)
class Check:
    suite: str
    n: int
    name: str
    cases: int
    failures: tuple = ()
    note: str = ""

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status} {self.suite} n={self.n} {self.name} ({self.cases} cases)"
        if self.note:
            text += f" {self.note}"
        for f in self.failures[:MAX_LISTED_FAILURES]:
            text += f"\n    failed at {f}"
        if len(self.failures) > MAX_LISTED_FAILURES:
            text += f"\n    ... {len(self.failures) - MAX_LISTED_FAILURES} more"
        return text


@dataclass
class VerificationReport:
    suite: str
    ns: tuple
    seed: int
    prime: int
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_text(self) -> str:
        head = f"suite={self.suite} n={','.join(map(str, self.ns))} seed={self.seed} prime={self.prime}"
        body = [c.line() for c in self.checks]
        passed = sum(c.ok for c in self.checks)
        tail = f"{passed}/{len(self.checks)} checks passed"
        return "\n".join([head, *body, tail]) + "\n"

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "n": list(self.ns),
            "seed": self.seed,
            "prime": self.prime,
            "ok": self.ok,
            "checks": [
                {"suite": c.suite, "n": c.n, "name": c.name, "cases": c.cases, "ok": c.ok, "failures": [str(f) for f in c.failures], "note": c.note}
                for c in self.checks
            ],
        }


def parity_of(n: int) -> str:
    return "odd" if n % 2 else "even"


def _family(suite: str, n: int, name: str, cases: Iterable, test: Callable, note: str = "") -> Check:
    """Run ``test`` on every case; a case fails when it returns falsy or raises a library error."""
    count = 0
    bad = []
    for case in cases:
        count += 1
        try:
            ok = test(case)
        except (PfresError, ValueError, AssertionError) as exc:
            ok = False
            case = (case, f"{type(exc).__name__}: {exc}")
        if not ok:
            bad.append(case)
    return Check(suite, n, name, count, tuple(bad), note)


def _verdict_check(suite: str, n: int, name: str, verdict) -> Check:
    failures = verdict.failures or ((verdict.where,) if not verdict else ())
    return Check(suite, n, name, 1, tuple(failures), verdict.detail if not verdict else "")


# -- individual suites ------------------------------------------------------------------


def overlapping_cases(n: int) -> Iterable[tuple]:
    """Every ``(alpha, beta, gamma, b)`` of disjoint increasing words in ``1..n`` with ``b`` in ``beta``."""
    letters = range(1, n + 1)
    for b in letters:
        others = [x for x in letters if x != b]
        for owner in itertools.product(range(4), repeat=len(others)):
            words = ([], [b], [], [])
            for x, o in zip(others, owner):
                words[o].append(x)
            alpha, beta, gamma, _ = (tuple(sorted(w)) for w in words)
            yield alpha, beta, gamma, b


def _matrices(n: int) -> list:
    out = [("generic", generic_skew(n))]
    if n >= 4:
        out.append(("zero-block", zero_block_skew(n)))
    return out


def suite_appendix_a(n: int, seed: int = 0, prime: int = DEFAULT_PRIME) -> list:
    checks = []
    for label, T in _matrices(n):
        if n <= 7:
            cases, note = overlapping_cases(n), "exhaustive"
        else:
            rng = random.Random(seed)
            pool = list(overlapping_cases(n))
            cases, note = rng.sample(pool, min(500, len(pool))), "500 seeded samples"
        checks.append(_family("appendix-a", n, f"overlapping {label}", cases, lambda c: pfaffian.check_overlapping(T, *c), note))
        for lemma in pfaffian.LEMMA_IDS:
            checks.append(
                _family("appendix-a", n, f"lemma {lemma} {label}", pfaffian.admissible_indices(lemma, n), lambda c: pfaffian.check_lemma(lemma, T, *c))
            )
    return checks


def _subset_pairs(n: int, max_size: int):
    letters = range(1, n + 1)
    for k in range(1, max_size + 1):
        for rows in itertools.combinations(letters, k):
            for cols in itertools.combinations(letters, k):
                yield rows, cols


def brill_random_trials(n: int, trials: int, seed: int = 0, prime: int = DEFAULT_PRIME) -> Iterable[tuple]:
    """Seeded ``(matrix, rows, cols)`` triples over ``Z/prime``; one fresh point per trial."""
    rng = random.Random(seed * 1000003 + n)
    T = generic_skew(n)
    variables = sorted({v for row in T.rows for x in row for v in x.variables()})
    for _ in range(trials):
        S = specialize(T, random_assignment(variables, rng.randrange(2**31), prime), prime)
        k = rng.randint(1, n)
        rows = tuple(sorted(rng.sample(range(1, n + 1), k)))
        cols = tuple(sorted(rng.sample(range(1, n + 1), k)))
        yield S, rows, cols


def _brill_ok(T, rows, cols) -> bool:
    M = brill.PolyMatrix.from_skew(T, rows, cols)
    return brill.brill_minor(T, rows, cols) == brill.det_oracle(M)


def suite_brill(n: int, seed: int = 0, prime: int = DEFAULT_PRIME, trials: int = 500) -> list:
    checks = []
    if n <= 7:
        T = generic_skew(n)
        checks.append(
            _family("brill", n, "brill-minor symbolic", _subset_pairs(n, min(4, n)), lambda c: _brill_ok(T, *c), "all subsets of size <= 4")
        )
    else:
        checks.append(
            _family("brill", n, f"brill-minor mod {prime}", brill_random_trials(n, trials, seed, prime), lambda c: _brill_ok(*c), f"{trials} seeded trials")
        )
    if n >= 5:
        parity = parity_of(n)
        T = generic_skew(n)
        checks.append(
            _family(
                "brill",
                n,
                f"d3-minor {parity}",
                itertools.combinations(range(1, n + 1), 3),
                lambda r: brill.d3_minor_formula(T, parity, r) == brill.det_oracle(brill.d3_submatrix(T, r)),
            )
        )
    return checks


def _need_resolution_size(n: int) -> None:
    if n < 5:
        raise SizeError(f"this suite needs n >= 5, got {n}")


def suite_complex(n: int, seed: int = 0, prime: int = DEFAULT_PRIME) -> list:
    _need_resolution_size(n)
    return [
        _verdict_check("complex", n, f"d1*d2=0, d2*d3=0 {variant}", resolution.check_complex(resolution.build(n, parity_of(n), variant)))
        for variant in resolution.VARIANTS
    ]


def minor_product_signs(n: int, specialize_prime: int | None = None, seed: int = 0) -> dict:
    """``{(r, s): sign}`` for every index pair; raises :class:`IdentityFailure` on a mismatch."""
    C = resolution.build(n, parity_of(n), "generic")
    if specialize_prime is not None:
        T = C.matrix
        variables = sorted({v for row in T.rows for x in row for v in x.variables()})
        S = specialize(T, random_assignment(variables, seed, specialize_prime), specialize_prime)
        C = resolution.assemble(S, C.parity, "generic")
    out = {}
    for r in itertools.combinations(range(1, n + 1), 3):
        for s in itertools.combinations(range(1, 5), 3):
            out[(r, s)] = resolution.check_minor_product(C, r, s)
    return out


def suite_minor_product(n: int, seed: int = 0, prime: int = DEFAULT_PRIME, specialize_mod: bool = False) -> list:
    _need_resolution_size(n)
    parity = parity_of(n)
    C = resolution.build(n, parity, "generic")
    note = "symbolic"
    if specialize_mod:
        T = C.matrix
        variables = sorted({v for row in T.rows for x in row for v in x.variables()})
        C = resolution.assemble(specialize(T, random_assignment(variables, seed, prime), prime), parity, "generic")
        note = f"mod {prime}, seed {seed}"
    cases = [(r, s) for r in itertools.combinations(range(1, n + 1), 3) for s in itertools.combinations(range(1, 5), 3)]

    def test(case):
        resolution.check_minor_product(C, *case)
        return True

    return [_family("minor-product", n, f"det(d3)*d1 = ±det(d2) {parity}", cases, test, note)]


def suite_ideal_equality(n: int, seed: int = 0, prime: int = DEFAULT_PRIME) -> list:
    _need_resolution_size(n)
    return [_verdict_check("ideal-equality", n, "expansions", resolution.check_ideal_equality(n, parity_of(n)))]


def suite_change_of_basis(n: int, seed: int = 0, prime: int = DEFAULT_PRIME) -> list:
    _need_resolution_size(n)
    return [_verdict_check("change-of-basis", n, "d1 S and S^-1 d2", resolution.check_change_of_basis(n, parity_of(n)))]


def suite_dg_products(n: int, seed: int = 0, prime: int = DEFAULT_PRIME) -> list:
    _need_resolution_size(n)
    return [_verdict_check("dg-products", n, "products", resolution.check_dg_products(n, parity_of(n)))]


def suite_regseq(n: int, seed: int = 0, prime: int = DEFAULT_PRIME) -> list:
    _need_resolution_size(n)
    parity = parity_of(n)
    return [
        _verdict_check("regseq", n, "expansions", resolution.check_regseq_expansions(n, parity)),
        _verdict_check("regseq", n, "pf^2 = det", resolution.check_pf_squares(n, parity)),
    ]


def m_of(n: int) -> int:
    return (n - 3) // 2 if n % 2 else (n - 4) // 2


def suite_equivariant(n: int, seed: int = 0, prime: int = DEFAULT_PRIME) -> list:
    _need_resolution_size(n)
    m, parity = m_of(n), parity_of(n)
    return [
        _verdict_check("equivariant", n, f"substitution m={m}", equivariant.substitution_check(m, parity)),
        _verdict_check("equivariant", n, f"bidegrees m={m}", equivariant.bidegree_check(m, parity)),
    ]


N4_COVERS = {
    ((), (3, 4), 4),
    ((2, 4), (3, 4), 2),
    ((1, 4), (2, 4), 1),
    ((2, 3), (2, 4), 3),
    ((1, 3), (1, 4), 3),
    ((1, 3), (2, 3), 1),
    ((1, 2), (1, 3), 2),
    ((1, 2), (1, 2, 3, 4), 4),
}


def _poset_axioms(P) -> bool:
    E = P.elements
    up = {a: {b for b in E if P.leq(a, b)} for a in E}
    for a in E:
        if a not in up[a]:
            return False
        for b in up[a]:
            if b != a and a in up[b]:
                return False
            if not up[b] <= up[a]:
                return False
    return True


def generators_match_d1(n: int) -> bool:
    """The four-generator Schubert ideal equals the entries of ``d1`` up to sign."""
    d1 = list(resolution.build(n, parity_of(n), "generic").d1.entries[0])
    gens = schubert.schubert_ideal_generators(n, "w-double-prime", generic_skew(n))
    remaining = list(d1)
    for g in gens:
        for cand in (g, -g):
            if cand in remaining:
                remaining.remove(cand)
                break
        else:
            return False
    return not remaining


def suite_schubert(n: int, seed: int = 0, prime: int = DEFAULT_PRIME) -> list:
    checks = []
    for cls in schubert.PARITY_CLASSES:
        P = schubert.SubsetPoset(n, cls)
        checks.append(Check("schubert", n, f"|{cls}| = 2^(n-1)", 1, () if len(P) == 2 ** (n - 1) else (len(P),)))
        checks.append(
            _family(
                "schubert",
                n,
                f"s_i involutions on {cls}",
                [(i, I) for i in range(1, n + 1) for I in P.elements],
                lambda c: schubert.weyl_action(c[0], schubert.weyl_action(c[0], c[1], n), n) == c[1]
                and schubert.weyl_action(c[0], c[1], n) in P,
            )
        )
        if n <= 8:
            checks.append(Check("schubert", n, f"order axioms on {cls}", 1, () if _poset_axioms(P) else ("axioms",)))
    if n == 4:
        got = set(schubert.subset_poset(4).covers())
        checks.append(Check("schubert", n, "example Hasse diagram", 1, () if got == N4_COVERS else (sorted(got ^ N4_COVERS),)))
    if n >= 5:
        checks.append(Check("schubert", n, "w'' generators = d1 up to sign", 1, () if generators_match_d1(n) else ("w''",)))
        _, aci = schubert.mapping_cone_format(n)
        want = (1, 4, n, n - 3)
        checks.append(Check("schubert", n, "linked format ranks (1,4,n,n-3)", 1, () if aci.ranks == want else (aci.ranks,)))
        C = resolution.build(n, parity_of(n), "generic")
        shape = (1, C.d1.cols, C.d2.cols, C.d3.cols)
        checks.append(Check("schubert", n, "linked format ranks = resolution", 1, () if aci.ranks == shape else (shape,)))
    return checks


SUITES = {
    "appendix-a": suite_appendix_a,
    "brill": suite_brill,
    "complex": suite_complex,
    "minor-product": suite_minor_product,
    "ideal-equality": suite_ideal_equality,
    "change-of-basis": suite_change_of_basis,
    "dg-products": suite_dg_products,
    "regseq": suite_regseq,
    "equivariant": suite_equivariant,
    "schubert": suite_schubert,
}

# suites that only make sense for n >= 5; "all" skips smaller n for them
_NEEDS_FIVE = {"complex", "minor-product", "ideal-equality", "change-of-basis", "dg-products", "regseq", "equivariant"}


def run_suite(name: str, ns: Iterable[int], seed: int = 0, prime: int = DEFAULT_PRIME, specialize_mod: bool = False) -> VerificationReport:
    """Run one suite (or ``all``) over ``ns``; checks come out sorted by ``(suite, n)``."""
    if name != "all" and name not in SUITES:
        raise PreconditionError(f"unknown suite {name!r}")
    ns = tuple(sorted(set(ns)))
    names = list(SUITES) if name == "all" else [name]
    report = VerificationReport(name, ns, seed, prime)
    start = time.perf_counter()
    for suite in names:
        for n in ns:
            if name == "all" and suite in _NEEDS_FIVE and n < 5:
                continue
            kwargs = {"specialize_mod": specialize_mod} if suite == "minor-product" else {}
            try:
                report.checks.extend(SUITES[suite](n, seed=seed, prime=prime, **kwargs))
            except IdentityFailure as exc:
                report.checks.append(Check(suite, n, "run", 1, (str(exc),)))
    report.seconds = time.perf_counter() - start
    return report
