"""Ratio between the iterated wedge C^j and the divided power C^(j).

The generators of the equivariant complex use the divided power, whose
coefficients are sub-Pfaffians of A.  The plain iterated wedge of C with
itself is j! times larger.  This script prints that ratio per (rank, j).

    python scripts/measure_cpower_factor.py --max-rank 8
"""

import argparse
from math import factorial

from pfres.equivariant import _C_power, iterated_wedge_power


def ratio(rank: int, j: int):
    """``j!`` when the iterated wedge is ``j!`` times the divided power, ``1`` when they agree, else ``None``."""
    divided = _C_power(rank, j)
    plain = iterated_wedge_power(rank, j)
    for k in (1, factorial(j)):
        if plain == divided.scale(k):
            return k
    return None


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-rank", type=int, default=7)
    args = ap.parse_args()
    print(f"{'rank':>4} {'j':>2} {'wedge / divided':>16}")
    for rank in range(2, args.max_rank + 1):
        for j in range(1, rank // 2 + 1):
            r = ratio(rank, j)
            print(f"{rank:>4} {j:>2} {str(r) if r is not None else 'not a constant':>16}")


if __name__ == "__main__":
    main()
