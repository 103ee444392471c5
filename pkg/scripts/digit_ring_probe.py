"""Probe which small integers have finite digit expansions with digits
{0, 1} in non-negative powers of the radix.

Usage: python scripts/digit_ring_probe.py [--bound 30] [--degree 20]
"""

import argparse
from fractions import Fraction

from tessera.analysis import z_rho_member
from tessera.numberfield import (
    AlgebraicNumber,
    IntPolynomial,
    NumberField,
    SilverIndex,
    field_for,
)

BASES = {
    "golden (x^2-x-1)": lambda: field_for(SilverIndex((1, 1))),
    "three-bit (x^3-x^2-x-1)": lambda: field_for(SilverIndex((1, 1, 1))),
    "sqrt2 (x^2-2)": lambda: NumberField(AlgebraicNumber(
        IntPolynomial((-2, 0, 1)), Fraction(1), Fraction(2), 80)),
    "base 2 (x-2)": lambda: NumberField(AlgebraicNumber(
        IntPolynomial((-2, 1)), Fraction(2), Fraction(2), 80)),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--bound", type=int, default=30)
    ap.add_argument("--degree", type=int, default=20)
    args = ap.parse_args()

    for label, make in BASES.items():
        nf = make()
        hits = []
        for n in range(1, args.bound + 1):
            if z_rho_member(nf.from_rational(n), max_degree=args.degree):
                hits.append(n)
        print(f"{label}: {len(hits)}/{args.bound} representable")
        print(f"  {hits}")


if __name__ == "__main__":
    main()
