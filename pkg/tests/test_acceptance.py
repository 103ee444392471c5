"""Acceptance gate: fourteen end-to-end criteria, one pass/fail line each.

Run with `pytest -s tests/test_acceptance.py` to see the summary lines.
"""

import itertools
import json
import math
from fractions import Fraction

from tessera.analysis import (
    aperiodicity_by_irrationality,
    dominant_eigen,
    lattice_multiplier,
    recurrence_sequence,
    silver_identity_check,
    z_rho_member,
)
from tessera.cli import main
from tessera.engine import (
    decompose,
    disjointness_report,
    expansion_from_steps,
    project_to_1d,
)
from tessera.numberfield import (
    AlgebraicNumber,
    IntPolynomial,
    NumberField,
    SilverIndex,
    field_for,
    silver_root,
)
from tessera.rules import build_1d_silver_rule, catalog

PHI = (1 + math.sqrt(5)) / 2

GEOMETRIC_2D = (
    "square2",
    "checkerboard",
    "penrose",
    "penrose-rotation",
    "ammann-chair",
    "ammann-phi",
    "taylor-trapezoid",
)


def report(num, label, ok):
    print(f"criterion {num:2d} {label}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {num} ({label}) failed"


def bisect_root(f, lo, hi, iterations=80):
    flo = f(lo)
    for _ in range(iterations):
        mid = (lo + hi) / 2
        if (f(mid) > 0) == (flo > 0):
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def test_criterion_01_silver_roots():
    ok = abs(float(silver_root(SilverIndex((1, 1)))) - (1 + math.sqrt(5)) / 2) < 1e-10
    three = float(silver_root(SilverIndex((1, 1, 1))))
    ok = ok and abs(three - 1.839) < 1e-3
    oracle = bisect_root(lambda x: x ** 3 - x ** 2 - x - 1, 1.0, 2.0)
    ok = ok and abs(three - oracle) < 1e-12
    lam = float(silver_root(SilverIndex((0, 1, 0, 1))))
    ok = ok and abs(lam * lam - float(silver_root(SilverIndex((1, 1))))) < 1e-10
    report(1, "silver roots", ok)


def test_criterion_02_partition_matrices():
    u = build_1d_silver_rule(SilverIndex((1, 1))).partition_matrix()
    ok = u.entries == ((1, 1), (1, 0))
    ok = ok and u.power(2).entries == ((2, 1), (1, 1))
    u2 = catalog("cartesian:11:translation").partition_matrix()
    ok = ok and [list(r) for r in u2.entries] == [
        [1, 1, 1, 1], [1, 0, 1, 0], [1, 1, 0, 0], [1, 0, 0, 0]]
    u3 = catalog("cartesian:111:isometry").partition_matrix()
    ok = ok and [list(r) for r in u3.entries] == [
        [1, 2, 2, 1, 2, 1],
        [1, 1, 1, 0, 0, 0],
        [0, 1, 0, 1, 1, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
    ]
    report(2, "partition matrices", ok)


def test_criterion_03_eigen_structure():
    res = dominant_eigen(build_1d_silver_rule(SilverIndex((1, 1))).partition_matrix())
    # eigenvector proportional to (1/rho, 1/rho^2)
    ok = res.converged and abs(res.eigenvector[0] / res.eigenvector[1] - PHI) < 1e-9
    res2 = dominant_eigen(catalog("cartesian:11:translation").partition_matrix())
    ok = ok and abs(res2.eigenvalue - PHI ** 2) < 1e-9
    v = res2.eigenvector
    for got, want in zip(v, (PHI ** 2, PHI, PHI, 1.0)):
        ok = ok and abs(got / v[3] - want) < 1e-9
    report(3, "eigen-structure", ok)


def test_criterion_04_tile_count_combinatorics():
    u2 = build_1d_silver_rule(SilverIndex((1, 1))).partition_matrix().power(2)
    # twice-inflated small type: one of each; twice-inflated large type:
    # two large plus one small (types indexed largest first)
    ok = u2.apply((0, 1)) == (1, 1)
    ok = ok and u2.apply((1, 0)) == (2, 1)
    seq = recurrence_sequence(SilverIndex((1, 1)), 42)
    ok = ok and seq[:6] == [1, 1, 2, 3, 5, 8]
    ok = ok and abs(seq[41] / seq[40] - PHI) < 1e-8
    report(4, "tile-count combinatorics", ok)


def test_criterion_05_geometric_soundness():
    ok = True
    for name in GEOMETRIC_2D:
        rule = catalog(name)
        depth, tol = (8, 1e-6) if name == "taylor-trapezoid" else (6, 1e-9)
        tiling = decompose(rule, 0, depth)
        rep = disjointness_report(tiling)
        ok = ok and rep.tile_count == rule.partition_matrix().power(depth).row_sum(0)
        ok = ok and rep.area_deficit < tol * max(1.0, rep.expected_area)
        ok = ok and rep.max_overlap < tol
    report(5, "geometric soundness", ok)


def test_criterion_06_silver_identities():
    nf = field_for(SilverIndex((1, 1)))
    rho_inv = nf.rho().inverse()

    def value(digits):
        acc = nf.zero()
        p = nf.one()
        for d in digits:
            p = p * rho_inv
            acc = acc + d * p
        return acc

    one = nf.one().coeffs
    ok = value([1, 1]).coeffs == one
    # the chain (0.1) = (0.011) = (0.01011) at the next scale down
    lhs = value([1])
    ok = ok and lhs.coeffs == value([0, 1, 1]).coeffs
    ok = ok and lhs.coeffs == value([0, 1, 0, 1, 1]).coeffs
    for n in range(2, 7):
        for bits in itertools.product((0, 1), repeat=n - 1):
            b = bits + (1,)
            if sum(b) < 2:
                continue
            ok = ok and silver_identity_check(SilverIndex(b))
    report(6, "silver identities", ok)


def test_criterion_07_digit_ring_gap():
    golden = field_for(SilverIndex((1, 1)))
    ok = z_rho_member(golden.from_rational(2), max_degree=20) is None
    base2 = NumberField(AlgebraicNumber(
        IntPolynomial((-2, 1)), Fraction(2), Fraction(2), 80))
    ok = ok and z_rho_member(base2.from_rational(2), max_degree=20) == "10"
    sqrt2 = NumberField(AlgebraicNumber(
        IntPolynomial((-2, 0, 1)), Fraction(1), Fraction(2), 80))
    for n in range(1, 51):
        ok = ok and z_rho_member(sqrt2.from_rational(n), max_degree=20) is not None
    report(7, "digit-ring membership gap", ok)


def test_criterion_08_lattice_multipliers():
    a = lattice_multiplier(1j, 1 + 1j)
    ok = a is not None
    if ok:
        (p, q), (r, s) = a
        rho = 1 + 1j
        ok = p + s == 2 and p * s - q * r == 2
        ok = ok and abs(rho * rho - (p + s) * rho + (p * s - q * r)) < 1e-9
    ok = ok and lattice_multiplier(1j, complex(PHI, 0)) is None
    report(8, "lattice multipliers", ok)


def test_criterion_09_path_endpoint():
    rule = catalog("penrose")
    steps = [(1, p % 10) for p in (0, 4, 8, 2, 6, 0, 4, 8)]
    e = expansion_from_steps(rule, steps)
    expected = complex(
        -35 / 2 + 8 * math.sqrt(5),
        0.5 * math.sqrt(85 - 38 * math.sqrt(5)),
    )
    report(9, "eight-digit path endpoint", abs(e.value - expected) < 1e-9)


def test_criterion_10_derotation():
    from tessera.rules import derotate
    rot = derotate(catalog("penrose"))
    ok = len(rot.tile_types) == 20
    res = dominant_eigen(rot.partition_matrix())
    ok = ok and res.converged and abs(res.eigenvalue - PHI ** 2) < 1e-9
    report(10, "derotation", ok)


def test_criterion_11_projection():
    rule = catalog("penrose")
    proj = project_to_1d(rule)
    rho = rule.field.rho()
    ok = proj.tile_types[0].length.coeffs == (2 - rho).coeffs     # 1/rho^2
    ok = ok and proj.tile_types[1].length.coeffs == (rho - 1).coeffs  # 1/rho
    ok = ok and proj.partition_matrix() == rule.partition_matrix()
    vals = {round(d.value(proj.multiplier_value(), 1).real, 9)
            for d in proj.digit_set()}
    ok = ok and {0.0, 1.0, round(1 / PHI, 9)} <= vals
    report(11, "measure projection", ok)


def test_criterion_12_taylor_trapezoid():
    rule = catalog("taylor-trapezoid")
    ok = rule.partition_matrix().entries == ((4,),)
    ok = ok and abs(float(rule.measure_factor()) - 4.0) < 1e-12
    tiling = decompose(rule, 0, 1)
    from tessera.engine import placed_polygon
    areas = [placed_polygon(rule, t).area() for t in tiling.tiles]
    ok = ok and max(areas) - min(areas) < 1e-6
    rep = disjointness_report(decompose(rule, 0, 8))
    ok = ok and rep.area_deficit < 1e-6
    report(12, "monotile trapezoid", ok)


def test_criterion_13_determinism(tmp_path, capsys):
    commands = [
        ["verify", "penrose", "--depth", "4"],
        ["verify", "silver-1d:1011", "--depth", "6"],
        ["analyze", "silver-1d:11"],
        ["analyze", "cartesian:11:isometry"],
        ["expand", "ammann-chair", "--depth", "3"],
        ["project", "penrose", "--out", str(tmp_path / "proj.json")],
    ]
    ok = True
    for argv in commands:
        main(list(argv))
        first = capsys.readouterr().out
        main(list(argv))
        second = capsys.readouterr().out
        ok = ok and first == second
    renders = [
        ("penrose", "tiles", "4"),
        ("penrose", "points", "5"),
        ("penrose", "path", "6"),
        ("silver-1d:11", "barcode", "10"),
        ("taylor-trapezoid", "curves", "4"),
    ]
    for rule, mode, depth in renders:
        a = tmp_path / f"{mode}_a.svg"
        b = tmp_path / f"{mode}_b.svg"
        main(["render", rule, "--mode", mode, "--depth", depth, "--out", str(a)])
        main(["render", rule, "--mode", mode, "--depth", depth, "--out", str(b)])
        capsys.readouterr()
        ok = ok and a.read_bytes() == b.read_bytes()
    with capsys.disabled():
        report(13, "byte determinism", ok)


def test_criterion_14_aperiodicity_verdicts():
    ok = True
    for n in range(2, 6):
        for bits in itertools.product((0, 1), repeat=n - 1):
            b = bits + (1,)
            if sum(b) < 2:
                continue
            name = "silver-1d:" + "".join(map(str, b))
            ok = ok and aperiodicity_by_irrationality(catalog(name)).verdict == "aperiodic"
    for name in ("penrose", "cartesian:11:translation", "cartesian:11:isometry",
                 "cartesian:101:isometry"):
        ok = ok and aperiodicity_by_irrationality(catalog(name)).verdict == "aperiodic"
    for name in ("square2", "taylor-trapezoid"):
        ok = ok and aperiodicity_by_irrationality(catalog(name)).method == "inapplicable"
    report(14, "aperiodicity verdicts", ok)
