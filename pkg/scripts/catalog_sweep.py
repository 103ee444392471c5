"""Sweep the whole rule catalog: measure checks, geometry checks, and
aperiodicity verdicts in one table.

Usage: python scripts/catalog_sweep.py [--depth 5] [--max-bits 5]
"""

import argparse
import itertools

from tessera.analysis import aperiodicity_by_irrationality
from tessera.engine import decompose, disjointness_report
from tessera.rules import CATALOG_NAMES, catalog, validate_measure


def silver_names(max_bits):
    for n in range(2, max_bits + 1):
        for bits in itertools.product((0, 1), repeat=n - 1):
            b = bits + (1,)
            if sum(b) >= 2:
                yield "silver-1d:" + "".join(map(str, b))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--depth", type=int, default=5)
    ap.add_argument("--max-bits", type=int, default=5)
    args = ap.parse_args()

    names = list(CATALOG_NAMES) + list(silver_names(args.max_bits)) + [
        "cartesian:11:translation", "cartesian:11:isometry",
        "cartesian:111:isometry",
    ]
    print(f"{'rule':28s} {'measure':8s} {'geometry':10s} {'verdict':14s}")
    for name in names:
        rule = catalog(name)
        mr = validate_measure(rule)
        measure = "exact" if mr.ok and mr.exact else ("ok" if mr.ok else "FAIL")
        if rule.equivalence == "measure-only":
            geometry = "n/a"
        else:
            depth = args.depth if rule.dimension == 2 else args.depth + 4
            rep = disjointness_report(decompose(rule, 0, depth))
            good = rep.area_deficit < 1e-6 and rep.max_overlap < 1e-6
            geometry = f"{'ok' if good else 'FAIL'} n={rep.tile_count}"
        verdict = aperiodicity_by_irrationality(rule).verdict
        print(f"{name:28s} {measure:8s} {geometry:10s} {verdict:14s}")


if __name__ == "__main__":
    main()
