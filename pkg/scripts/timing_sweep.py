"""Wall-clock time of each verification suite per n, as a small table.

    python scripts/timing_sweep.py --n 5..8 --repeats 3
"""

import argparse
import time

from pfres.cli import parse_n_list
from pfres.config import SweepConfig
from pfres.suites import run_suite


def sweep(config: SweepConfig) -> list:
    rows = []
    for suite in config.suites:
        for n in config.ns:
            best = float("inf")
            ok = True
            for _ in range(config.repeats):
                start = time.perf_counter()
                report = run_suite(suite, [n], seed=config.seed, prime=config.prime)
                best = min(best, time.perf_counter() - start)
                ok = ok and report.ok
            rows.append((suite, n, best, ok))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=parse_n_list, default=[5, 6, 7, 8])
    ap.add_argument("--suites", nargs="*", default=list(SweepConfig.suites))
    ap.add_argument("--repeats", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    config = SweepConfig(tuple(args.suites), tuple(args.n), args.repeats, args.seed)
    print(f"{'suite':<16}{'n':>4}{'seconds':>10}  result")
    for suite, n, secs, ok in sweep(config):
        print(f"{suite:<16}{n:>4}{secs:>10.3f}  {'pass' if ok else 'FAIL'}")


if __name__ == "__main__":
    main()
