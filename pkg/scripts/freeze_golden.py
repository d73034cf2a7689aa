"""Regenerate frozen data: the equivariant sign table and the test golden files.

    python scripts/freeze_golden.py            # everything
    python scripts/freeze_golden.py --only signs

Signs for the equivariant complex are discovered independently for several
m and must agree; the parity-level entry is what the library reads.
"""

import argparse
import json
from pathlib import Path

from pfres import resolution
from pfres.equivariant import discover_signs
from pfres.suites import minor_product_signs

ROOT = Path(__file__).resolve().parents[1]
SIGNS = ROOT / "src" / "pfres" / "data" / "equivariant_signs.json"
GOLDEN = ROOT / "tests" / "golden"


def _write(path: Path, data) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"wrote {path.relative_to(ROOT)}")


def freeze_signs(max_m: int) -> None:
    table = {}
    for parity in ("odd", "even"):
        found = [discover_signs(m, parity) for m in range(1, max_m + 1)]
        ref = found[-1]
        for m, s in enumerate(found, 1):
            for key, vec in s.items():
                for a, b in zip(vec, ref[key]):
                    # at m = 1 (odd) the w-row is identically zero, so its sign is free
                    if a != b and not (parity == "odd" and m == 1 and key == "g_block_rows"):
                        raise SystemExit(f"sign table depends on m: {parity} m={m} {key}")
        table[parity] = ref
    _write(SIGNS, table)


def freeze_minor_products(ns) -> None:
    out = {}
    for n in ns:
        parity = "odd" if n % 2 else "even"
        for (r, s), e in sorted(minor_product_signs(n).items()):
            out[f"{n}:{parity}:{','.join(map(str, r))}:{','.join(map(str, s))}"] = e
    _write(GOLDEN / "minor_product_signs.json", out)


def freeze_complexes() -> None:
    out = {}
    for n, parity in ((5, "odd"), (6, "even")):
        for variant in resolution.VARIANTS:
            out[f"{n}:{parity}:{variant}"] = resolution.to_json(resolution.build(n, parity, variant))
    _write(GOLDEN / "complexes.json", out)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-m", type=int, default=3)
    ap.add_argument("--only", choices=("signs", "minor-products", "complexes"))
    args = ap.parse_args()
    if args.only in (None, "signs"):
        freeze_signs(args.max_m)
    if args.only in (None, "minor-products"):
        freeze_minor_products((5, 6, 7, 8))
    if args.only in (None, "complexes"):
        freeze_complexes()


if __name__ == "__main__":
    main()
