"""Command line: ``pfres build | verify | rank | schubert``.

Exit codes: 0 success, 1 a verification failed, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import equivariant, resolution, schubert
from .errors import PfresError
from .polyring import to_string
from .config import VerifyConfig
from .suites import DEFAULT_PRIME, SUITES

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SLOW_SYMBOLIC_MINOR_PRODUCT = 9


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_n_list(text: str) -> list:
    """``"5,6,7"``, ``"5..8"``, ``"5-8"`` or mixtures such as ``"5,7..9"``."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        for sep in ("..", "-"):
            if sep in part:
                lo, hi = part.split(sep, 1)
                lo, hi = int(lo), int(hi)
                if lo > hi:
                    raise argparse.ArgumentTypeError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
                break
        else:
            out.append(int(part))
    if not out or any(n < 1 for n in out):
        raise argparse.ArgumentTypeError(f"bad n list {text!r}")
    return sorted(set(out))


def _n_list(text: str) -> list:
    try:
        return parse_n_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pfres", description="Resolutions of grade three almost complete intersections built from Pfaffians.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="print the differentials of one complex")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--parity", choices=resolution.PARITIES)
    b.add_argument("--variant", choices=resolution.VARIANTS + ("equivariant",), default="generic")
    b.add_argument("--format", choices=("json", "latex", "text"), default="json")
    b.add_argument("--output", "-o", help="write to this file instead of stdout")

    v = sub.add_parser("verify", help="run an identity suite")
    v.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    v.add_argument("--n", type=_n_list, default=[5, 6, 7, 8], help="list or range, e.g. 5,6 or 5..8")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    v.add_argument("--specialize", action="store_true", help="minor-product suite: work mod --prime")
    v.add_argument("--json", action="store_true", help="print the report as JSON")
    v.add_argument("--timing", action="store_true", help="report wall-clock time on stderr")

    r = sub.add_parser("rank", help="ranks of the differentials at random points mod a prime")
    r.add_argument("--n", type=int, default=5)
    r.add_argument("--parity", choices=resolution.PARITIES)
    r.add_argument("--variant", choices=resolution.VARIANTS, default="generic")
    r.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--votes", type=int, default=5)

    s = sub.add_parser("schubert", help="subset posets and codimension-3 Schubert ideals")
    s.add_argument("--n", type=int, required=True)
    what = s.add_mutually_exclusive_group(required=True)
    what.add_argument("--poset", action="store_true", help="Hasse diagram of the subset poset")
    what.add_argument("--ideal", choices=sorted(schubert.IDEALS), help="generators of a codimension-3 Schubert ideal")
    what.add_argument("--format-cone", dest="cone", action="store_true", help="graded formats from linkage")
    s.add_argument("--parity-class", choices=schubert.PARITY_CLASSES)
    s.add_argument("--format", choices=("text", "json", "dot"), default="text")
    return p


def _parity(n: int, given: str | None) -> str:
    parity = given or ("odd" if n % 2 else "even")
    resolution.validate(n, parity)
    return parity


def _emit(text: str, path: str | None = None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _matrix_text(name: str, rows) -> str:
    width = max((len(x) for row in rows for x in row), default=1)
    body = "\n".join("  [" + ", ".join(x.rjust(width) for x in row) + "]" for row in rows)
    return f"{name} =\n{body}\n"


def cmd_build(args) -> int:
    parity = _parity(args.n, args.parity)
    if args.variant == "equivariant":
        m = args.n // 2 - 1 if parity == "odd" else args.n // 2 - 2
        data = equivariant.to_json(m, parity)
        mats = [(k, data[k]) for k in ("d3", "d2", "d1")]
        if args.format == "latex":
            raise UsageError("LaTeX output is available for the generic and zero-block variants")
    else:
        C = resolution.build(args.n, parity, args.variant)
        data = resolution.to_json(C)
        mats = [(k, data[k]) for k in ("d3", "d2", "d1")]
        if args.format == "latex":
            _emit(resolution.to_latex(C), args.output)
            return EXIT_OK
    if args.format == "json":
        _emit(json.dumps(data, indent=2, ensure_ascii=False) + "\n", args.output)
    else:
        _emit("\n".join(_matrix_text(k, rows) for k, rows in mats), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite in ("minor-product", "all") and not args.specialize and max(args.n) >= SLOW_SYMBOLIC_MINOR_PRODUCT:
        print(
            f"warning: symbolic minor-product checks at n >= {SLOW_SYMBOLIC_MINOR_PRODUCT} are slow; --specialize works mod --prime",
            file=sys.stderr,
        )
    config = VerifyConfig(args.suite, tuple(args.n), args.seed, args.prime, args.specialize)
    report = config.run()
    if args.json:
        sys.stdout.write(json.dumps(report.to_json(), indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(report.to_text())
    if args.timing:
        print(f"elapsed {report.seconds:.2f} s", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_rank(args) -> int:
    parity = _parity(args.n, args.parity)
    if args.votes < 1:
        raise UsageError("--votes must be positive")
    C = resolution.build(args.n, parity, args.variant)
    ranks = resolution.majority_rank(C, seed=args.seed, prime=args.prime, votes=args.votes)
    print(str(ranks))
    return EXIT_OK if ranks == (args.n - 3, 3, 1) else EXIT_FAIL


def cmd_schubert(args) -> int:
    n = args.n
    if args.poset:
        P = schubert.subset_poset(n, args.parity_class)
        if args.format == "dot":
            sys.stdout.write(schubert.hasse_to_dot(P))
        elif args.format == "json":
            data = {
                "n": n,
                "parity_class": P.parity_class,
                "elements": [list(I) for I in P.elements],
                "covers": [{"lower": list(lo), "upper": list(hi), "reflection": i} for lo, hi, i in P.covers()],
            }
            sys.stdout.write(json.dumps(data, indent=2) + "\n")
        else:
            for lo, hi, i in P.covers():
                print(f"{list(lo)} < {list(hi)}  (s{i})")
        return EXIT_OK
    if args.cone:
        G, A = schubert.mapping_cone_format(n)
        if args.format == "json":
            data = {"n": n, "gorenstein": [list(map(list, m)) for m in G.modules], "aci": [list(map(list, m)) for m in A.modules], "aci_ranks": list(A.ranks)}
            sys.stdout.write(json.dumps(data, indent=2) + "\n")
        else:
            print(f"gorenstein: {G}")
            print(f"linked:     {A}")
        return EXIT_OK
    ideal = schubert.schubert_ideal(n, args.ideal)
    if args.format == "json":
        sys.stdout.write(json.dumps(ideal.to_json(), indent=2, ensure_ascii=False) + "\n")
    elif args.format == "dot":
        raise UsageError("DOT output is for --poset")
    else:
        for k, (w, I, g) in enumerate(zip(ideal.words, ideal.subsets, ideal.generators)):
            flag = "  [redundant]" if k in ideal.redundant else ""
            word = "".join(f"s{i}" for i in w) or "id"
            print(f"q_{word} = q_{list(I)} = {to_string(g)}{flag}")
    return EXIT_OK


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "rank": cmd_rank, "schubert": cmd_schubert}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, PfresError, ValueError) as exc:
        print(f"pfres {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
