"""Render the standard set of figures into an output directory.

Usage: python scripts/make_figures.py [--out figures]
"""

import argparse
import os

from tessera.cli import main as tessera


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="figures")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    jobs = [
        # rule, mode, depth, extra flags, filename
        ("silver-1d:11", "barcode", 10, [], "golden_barcode_d10.svg"),
        ("penrose", "tiles", 6, [], "penrose_tiles_d6.svg"),
        ("penrose", "points", 8, [], "penrose_points_d8.svg"),
        ("penrose", "path", 8, [], "penrose_path_d8.svg"),
        ("penrose", "curves", 5, ["--curves-only", "--pinwheel", "10"],
         "penrose_pinwheel_d5.svg"),
        ("taylor-trapezoid", "curves", 5, [], "trapezoid_curves_d5.svg"),
        ("square2", "curves", 4, ["--pinwheel", "4", "--curves-only"],
         "square_diagonals_d4.svg"),
        ("ammann-chair", "tiles", 8, [], "chair_tiles_d8.svg"),
        ("cartesian:11:isometry", "tiles", 6, [], "cartesian_11_d6.svg"),
    ]
    for rule, mode, depth, extra, filename in jobs:
        out = os.path.join(args.out, filename)
        code = tessera(["render", rule, "--mode", mode, "--depth", str(depth),
                        "--out", out] + extra)
        if code != 0:
            raise SystemExit(f"render failed for {rule} {mode}")


if __name__ == "__main__":
    main()
