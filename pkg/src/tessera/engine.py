"""Inflation and decomposition to arbitrary depth, digit expansions and
paths, recurrence checks, and the measure-preserving projection to 1-D.

Both decompose-in-place and inflate-outward walk the same substitution
tree depth-first in declared piece order, so tile order is deterministic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .geometry import IDENTITY, Polyline, Similarity, unit_root
from .rules import Digit, PartitionMatrix, Piece, RuleError, RuleSystem, TileType

DEFAULT_CAP = 10 ** 6


class CapExceededError(RuleError):
    def __init__(self, count, cap):
        super().__init__(f"tile count {count} exceeds cap {cap}")
        self.count = count
        self.cap = cap


@dataclass(frozen=True)
class PlacedTile:
    type_id: int
    transform: Similarity


@dataclass(frozen=True)
class Tiling:
    rule: RuleSystem
    root_type: int
    depth: int
    tiles: tuple
    mode: str  # "decompose" or "inflate"


def _check_geometric(rule: RuleSystem):
    if rule.equivalence == "measure-only":
        raise RuleError(
            f"rule {rule.name} is measure-only (fractal tiles); it supports "
            "measure validation and projection but not geometric expansion")


def _check_cap(rule, root_type, depth, cap):
    u = rule.partition_matrix()
    count = u.power(depth).row_sum(root_type)
    if count > cap:
        raise CapExceededError(count, cap)
    return count


def decompose(rule: RuleSystem, root_type: int, depth: int, cap=DEFAULT_CAP) -> Tiling:
    """Recursive substitution at scale 1/rho per level: every tile stays
    inside the root reference shape."""
    _check_geometric(rule)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    _check_cap(rule, root_type, depth, cap)
    r = rule.multiplier_value()
    m = rule.rotation_order_m
    tiles = []
    stack = [(root_type, IDENTITY, depth)]
    while stack:
        tid, t, left = stack.pop()
        if left == 0:
            tiles.append(PlacedTile(tid, t))
            continue
        children = []
        for p in rule.pieces[tid]:
            step = Similarity(
                scale_exponent=-1,
                rotation_power=p.rotation_power,
                conjugate=p.conjugate,
                translation=p.digit.value(r, m) / r,
            )
            children.append((p.child, t.compose(step, r, m), left - 1))
        stack.extend(reversed(children))
    return Tiling(rule, root_type, depth, tuple(tiles), "decompose")


def inflate_outward(rule: RuleSystem, root_type: int, depth: int, cap=DEFAULT_CAP) -> Tiling:
    """Same tree as decompose but the root is magnified by rho^depth, so
    the children sit at the original scale."""
    base = decompose(rule, root_type, depth, cap)
    r = rule.multiplier_value()
    m = rule.rotation_order_m
    blowup = Similarity(scale_exponent=depth)
    tiles = tuple(
        PlacedTile(t.type_id, blowup.compose(t.transform, r, m)) for t in base.tiles
    )
    return Tiling(rule, root_type, depth, tiles, "inflate")


@dataclass(frozen=True)
class DigitExpansion:
    """One leaf of the substitution tree as a positional expansion
    z = sum_k z_k rho^-k u_k.  Each step is (digit index into the rule's
    digit set, accumulated rotation power, accumulated conjugation)."""

    rule: RuleSystem
    steps: tuple
    value: complex

    def terms(self):
        digits = self.rule.digit_set()
        r = self.rule.multiplier_value()
        m = self.rule.rotation_order_m
        out = []
        for k, (idx, p, c) in enumerate(self.steps, start=1):
            d = digits[idx].value(r, m)
            if c:
                d = d.conjugate()
            out.append(r ** (-k) * d * unit_root(m, p))
        return out


def expansions(rule: RuleSystem, root_type: int, depth: int, cap=DEFAULT_CAP):
    """One DigitExpansion per leaf, depth-first in declared piece order."""
    _check_geometric(rule)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    _check_cap(rule, root_type, depth, cap)
    r = rule.multiplier_value()
    m = rule.rotation_order_m
    order = 2 * m
    digits = rule.digit_set()
    index = {d.key(m): i for i, d in enumerate(digits)}
    out = []

    def walk(tid, k, p, c, val, steps):
        if k > depth:
            out.append(DigitExpansion(rule, tuple(steps), val))
            return
        for q in rule.pieces[tid]:
            d = q.digit.value(r, m)
            if c:
                d = d.conjugate()
            term = r ** (-k) * d * unit_root(m, p)
            p2 = (p + (-q.rotation_power if c else q.rotation_power)) % order
            steps.append((index[q.digit.key(m)], p, c))
            walk(q.child, k + 1, p2, c != q.conjugate, val + term, steps)
            steps.pop()

    walk(root_type, 1, 0, False, 0j, [])
    return out


def expansion_from_steps(rule: RuleSystem, steps) -> DigitExpansion:
    """Build an expansion from explicit steps (digit index, rotation power,
    conjugate), evaluating z = sum_k rho^-k u^p_k (conj? dbar : d)."""
    digits = rule.digit_set()
    r = rule.multiplier_value()
    m = rule.rotation_order_m
    val = 0j
    fixed = []
    for k, step in enumerate(steps, start=1):
        idx, p, c = (step if len(step) == 3 else (step[0], step[1], False))
        d = digits[idx].value(r, m)
        if c:
            d = d.conjugate()
        val += r ** (-k) * d * unit_root(m, p)
        fixed.append((idx, p, c))
    return DigitExpansion(rule, tuple(fixed), val)


def path(e: DigitExpansion) -> Polyline:
    """The polygonal path of the expansion: partial sums after each digit,
    starting from 0.  All-zero expansions yield a flagged degenerate path."""
    if not e.steps:
        raise ValueError("empty expansion has no path")
    terms = e.terms()
    vertices = [0j]
    acc = 0j
    for t in terms:
        acc += t
        vertices.append(acc)
    degenerate = all(abs(t) == 0 for t in terms)
    return Polyline(tuple(vertices), degenerate=degenerate)


def recurrence_check(rule: RuleSystem, root_type: int, prefix_depth: int, splice) -> bool:
    """Follow the splice (a sequence of piece indices) from root_type and
    check that the depth-k expansion tree reappears at the end, by direct
    structural comparison of the two trees."""
    tid = root_type
    for step in splice:
        plist = rule.pieces[tid]
        if not (0 <= step < len(plist)):
            raise ValueError(f"splice step {step} invalid for type {tid} "
                             f"({len(plist)} pieces)")
        tid = plist[step].child

    def tree(t, k):
        if k == 0:
            return (t,)
        return (t, tuple(tree(p.child, k - 1) for p in rule.pieces[t]))

    return tree(root_type, prefix_depth) == tree(tid, prefix_depth)


def project_to_1d(rule: RuleSystem) -> RuleSystem:
    """Measure-preserving projection: intervals I_j = [0, m(R_j)], the
    multiplier becomes rho^d, sub-intervals are left-packed in declared
    piece order, and the digits are the exact left endpoints."""
    if rule.dimension == 1:
        return rule
    nf = rule.field
    exact = all(t.measure is not None for t in rule.tile_types)
    if exact:
        measures = [t.measure for t in rule.tile_types]
    else:
        warnings.warn(f"rule {rule.name}: missing exact measures, projecting in float")
        measures = [nf.from_rational(Fraction(t.measure_float)) for t in rule.tile_types]
    types = [
        TileType(id=t.id, name=f"I_{t.name}", length=measures[t.id],
                 measure=measures[t.id], measure_float=float(measures[t.id]))
        for t in rule.tile_types
    ]
    pieces = {}
    for tid, plist in rule.pieces.items():
        acc = nf.zero()
        out = []
        for p in plist:
            out.append(Piece(child=p.child, digit=Digit.scalar(acc)))
            acc = acc + measures[p.child]
        pieces[tid] = tuple(out)
    return RuleSystem(
        name=f"{rule.name}:projected",
        dimension=1,
        field=nf,
        multiplier=rule.measure_factor(),
        rotation_order_m=1,
        tile_types=types,
        pieces=pieces,
        equivalence="translation-only",
    )


def tile_counts(u: PartitionMatrix, root: int, n: int):
    """Exact big-integer tile counts sum_j (U^k)[root][j] for k = 0..n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out = [1]
    vec = tuple([1] * u.size)  # U^k applied to the all-ones vector
    for _ in range(n):
        vec = u.apply(vec)
        out.append(vec[root])
    return out


# ---------------------------------------------------------------------------
# geometric verification helpers


def placed_polygon(rule: RuleSystem, tile: PlacedTile):
    shape = rule.tile_types[tile.type_id].shape
    return shape.transformed(tile.transform, rule.multiplier_value(), rule.rotation_order_m)


def placed_interval(rule: RuleSystem, tile: PlacedTile):
    r = rule.multiplier_value()
    length = float(rule.tile_types[tile.type_id].length) * r ** tile.transform.scale_exponent
    start = tile.transform.translation.real
    return start, start + length


@dataclass
class DisjointnessReport:
    tile_count: int
    expected_area: float
    total_area: float
    area_deficit: float
    max_overlap: float
    largest_tile_area: float


def disjointness_report(tiling: Tiling) -> DisjointnessReport:
    """Area law plus max pairwise overlap, with a spatial hash so deep
    decompositions stay near-linear."""
    rule = tiling.rule
    if rule.dimension == 1:
        return _disjointness_1d(tiling)
    from .geometry import intersection_area

    polys = [placed_polygon(rule, t) for t in tiling.tiles]
    root = rule.tile_types[tiling.root_type].shape
    expected = root.area()
    if tiling.mode == "inflate":
        expected *= rule.multiplier_value() ** (rule.dimension * tiling.depth)
    total = sum(p.area() for p in polys)
    boxes = [p.bounding_box() for p in polys]
    cell = max(max(b[2] - b[0], b[3] - b[1]) for b in boxes) + 1e-12
    grid = {}
    for i, b in enumerate(boxes):
        x0, y0, x1, y1 = b
        for gx in range(int(x0 // cell), int(x1 // cell) + 1):
            for gy in range(int(y0 // cell), int(y1 // cell) + 1):
                grid.setdefault((gx, gy), []).append(i)
    max_overlap = 0.0
    seen = set()
    for bucket in grid.values():
        for ai in range(len(bucket)):
            for bi in range(ai + 1, len(bucket)):
                i, j = bucket[ai], bucket[bi]
                if (i, j) in seen:
                    continue
                seen.add((i, j))
                b1, b2 = boxes[i], boxes[j]
                if b1[2] <= b2[0] or b2[2] <= b1[0] or b1[3] <= b2[1] or b2[3] <= b1[1]:
                    continue
                ov = intersection_area(polys[i], polys[j])
                if ov > max_overlap:
                    max_overlap = ov
    return DisjointnessReport(
        tile_count=len(polys),
        expected_area=expected,
        total_area=total,
        area_deficit=abs(total - expected),
        max_overlap=max_overlap,
        largest_tile_area=max(p.area() for p in polys),
    )


def _disjointness_1d(tiling: Tiling) -> DisjointnessReport:
    rule = tiling.rule
    iv = sorted(placed_interval(rule, t) for t in tiling.tiles)
    total = sum(b - a for a, b in iv)
    expected = float(rule.tile_types[tiling.root_type].length)
    if tiling.mode == "inflate":
        expected *= rule.multiplier_value() ** tiling.depth
    max_overlap = 0.0
    for (a0, b0), (a1, b1) in zip(iv, iv[1:]):
        max_overlap = max(max_overlap, min(b0, b1) - max(a1, a0))
    max_overlap = max(0.0, max_overlap)
    return DisjointnessReport(
        tile_count=len(iv),
        expected_area=expected,
        total_area=total,
        area_deficit=abs(total - expected),
        max_overlap=max_overlap,
        largest_tile_area=max(b - a for a, b in iv),
    )
