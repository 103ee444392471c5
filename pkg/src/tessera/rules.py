"""Substitution rule systems: declarative inflation rules, the built-in
catalog, partition matrices, measure validation, and rule-file I/O.

A rule system says how each tile type, magnified by the multiplier rho,
is re-tiled by translated/rotated/conjugated copies of the types:

    rho R_i = union_p ( delta_p + u_p(R_j_p) )

The translations delta (the digits) are kept exact where possible, as
sums of terms s * u^k with s in Q(rho) and u = exp(i pi / m).
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .geometry import Polygon, Polyline, unit_root
from .numberfield import (
    DEFAULT_PRECISION_BITS,
    AlgebraicNumber,
    FieldElement,
    IntPolynomial,
    NumberField,
    SilverIndex,
    field_for,
    silver_root,
)


class RuleError(ValueError):
    pass


class RuleFileError(RuleError):
    pass


# ---------------------------------------------------------------------------
# digits


class Digit:
    """Translation value of a piece.  Exact form: a sum of terms
    (scalar, power) meaning scalar * u^power with scalar in Q(rho).
    Rules produced by numeric constructions (derotation) fall back to a
    plain complex value."""

    __slots__ = ("terms", "float_value")

    def __init__(self, terms=None, float_value=None):
        if terms is not None:
            self.terms = tuple(terms)
            self.float_value = None
        else:
            self.terms = None
            self.float_value = complex(float_value)

    @classmethod
    def zero(cls, field):
        return cls(terms=())

    @classmethod
    def scalar(cls, s: FieldElement):
        if s.is_zero():
            return cls(terms=())
        return cls(terms=((s, 0),))

    @classmethod
    def rational(cls, field, q):
        return cls.scalar(field.from_rational(q))

    @classmethod
    def from_float(cls, z):
        return cls(float_value=z)

    @property
    def exact(self):
        return self.terms is not None

    def normalized(self, m):
        if not self.exact:
            return self
        order = 2 * m
        merged = {}
        for s, p in self.terms:
            p = p % order
            if p in merged:
                merged[p] = merged[p] + s
            else:
                merged[p] = s
        out = tuple(
            (s, p) for p, s in sorted(merged.items()) if not s.is_zero()
        )
        return Digit(terms=out)

    def value(self, rho_float, m) -> complex:
        if not self.exact:
            return self.float_value
        acc = 0j
        for s, p in self.terms:
            acc += float(s) * unit_root(m, p)
        return acc

    def rotated(self, k, conj, m):
        """Apply the orientation u^k (after optional conjugation) to the
        digit.  Scalars are real, so conjugation just negates powers."""
        if not self.exact:
            z = self.float_value.conjugate() if conj else self.float_value
            return Digit(float_value=z * unit_root(m, k))
        out = []
        for s, p in self.terms:
            p2 = (-p if conj else p) + k
            out.append((s, p2))
        return Digit(terms=out).normalized(m)

    def scaled(self, s: FieldElement, m):
        if not self.exact:
            raise RuleError("cannot exactly scale a float digit")
        return Digit(terms=tuple((s * t, p) for t, p in self.terms)).normalized(m)

    def plus(self, other: "Digit", m):
        if not (self.exact and other.exact):
            raise RuleError("cannot exactly add float digits")
        return Digit(terms=self.terms + other.terms).normalized(m)

    def key(self, m):
        if self.exact:
            d = self.normalized(m)
            return ("exact", tuple((s.coeffs, p) for s, p in d.terms))
        z = self.float_value
        return ("float", round(z.real, 9), round(z.imag, 9))

    def __repr__(self):
        if self.exact:
            return f"Digit({self.terms!r})"
        return f"Digit(float {self.float_value!r})"


# ---------------------------------------------------------------------------
# rule structure


@dataclass(frozen=True)
class TileType:
    id: int
    name: str
    shape: Polygon | None = None
    length: FieldElement | None = None
    measure: FieldElement | None = None
    measure_float: float = 0.0
    decorations: tuple = ()

    def __post_init__(self):
        if self.measure is not None and float(self.measure) <= 0:
            raise RuleError(f"type {self.name}: measure must be positive")
        if self.measure_float <= 0:
            raise RuleError(f"type {self.name}: float measure must be positive")


@dataclass(frozen=True)
class Piece:
    child: int
    digit: Digit
    rotation_power: int = 0
    conjugate: bool = False


@dataclass(frozen=True)
class ComplexRadix:
    """Closed-form imaginary-quadratic radix: value, minimal polynomial,
    and norm |rho|^2 (an integer)."""

    form: str
    value: complex
    min_poly: IntPolynomial
    norm: int


class PartitionMatrix:
    """Square non-negative integer matrix: entry [i][j] counts child tiles
    of type j in the decomposition of inflated type i."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise RuleError("partition matrix must be square and non-empty")
        if any(x < 0 for r in rows for x in r):
            raise RuleError("partition matrix entries must be non-negative")
        if any(sum(r) == 0 for r in rows):
            raise RuleError("partition matrix rows must have positive sums")
        self.entries = rows

    @property
    def size(self):
        return len(self.entries)

    def __eq__(self, other):
        return isinstance(other, PartitionMatrix) and self.entries == other.entries

    def __getitem__(self, i):
        return self.entries[i]

    def mul(self, other: "PartitionMatrix") -> "PartitionMatrix":
        n = self.size
        a, b = self.entries, other.entries
        return PartitionMatrix(
            tuple(
                tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
                for i in range(n)
            )
        )

    def power(self, k: int) -> "PartitionMatrix":
        if k < 0:
            raise ValueError("negative matrix power")
        n = self.size
        result = PartitionMatrix(
            tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        )
        base = self
        while k:
            if k & 1:
                result = result.mul(base)
            base = base.mul(base)
            k >>= 1
        return result

    def row_sum(self, i):
        return sum(self.entries[i])

    def apply(self, vec):
        return tuple(sum(r[j] * vec[j] for j in range(self.size)) for r in self.entries)

    def __repr__(self):
        return f"PartitionMatrix({[list(r) for r in self.entries]})"


EQUIVALENCES = ("isometry", "rotation-only", "translation-only", "measure-only")


class RuleSystem:
    """A complete substitution/positional system."""

    def __init__(
        self,
        name,
        dimension,
        field,
        multiplier,
        rotation_order_m,
        tile_types,
        pieces,
        equivalence,
        complex_radix=None,
        measure_scale=1.0,
    ):
        if dimension not in (1, 2):
            raise RuleError("dimension must be 1 or 2")
        if equivalence not in EQUIVALENCES:
            raise RuleError(f"unknown equivalence mode {equivalence!r}")
        if rotation_order_m < 1:
            raise RuleError("rotation_order_m must be >= 1")
        self.name = name
        self.dimension = dimension
        self.field: NumberField = field
        self.multiplier: FieldElement | None = multiplier
        self.rotation_order_m = rotation_order_m
        self.tile_types = tuple(tile_types)
        self.equivalence = equivalence
        self.complex_radix = complex_radix
        self.measure_scale = float(measure_scale)
        ids = [t.id for t in self.tile_types]
        if ids != list(range(len(ids))):
            raise RuleError("tile type ids must be 0..N-1 in order")
        norm_pieces = {}
        order = 2 * rotation_order_m
        for tid, plist in pieces.items():
            plist = tuple(plist)
            if not plist:
                raise RuleError(f"type {tid} has no pieces")
            fixed = []
            for p in plist:
                if p.child not in range(len(ids)):
                    raise RuleError(f"unknown child type id {p.child}")
                fixed.append(
                    Piece(p.child, p.digit.normalized(rotation_order_m) if p.digit.exact else p.digit,
                          p.rotation_power % order, p.conjugate)
                )
            norm_pieces[int(tid)] = tuple(fixed)
        if sorted(norm_pieces) != list(range(len(ids))):
            raise RuleError("every tile type needs a piece list")
        self.pieces = norm_pieces

    # -- derived quantities ------------------------------------------------

    @property
    def radix(self):
        """Reporting handle for the radix: the field generator for real
        rules, the closed-form descriptor for complex ones."""
        if self.complex_radix is not None:
            return self.complex_radix
        return self.field.generator

    def multiplier_value(self) -> float:
        if self.multiplier is not None:
            return float(self.multiplier)
        return abs(self.complex_radix.value)

    def measure_factor(self) -> FieldElement:
        """The exact factor rho^d scaling measures under one inflation."""
        if self.multiplier is not None:
            return self.multiplier ** self.dimension
        return self.field.from_rational(self.complex_radix.norm)

    def digit_set(self):
        """Distinct digits, sorted by evaluated value for determinism."""
        seen = {}
        r = self.multiplier_value()
        for plist in self.pieces.values():
            for p in plist:
                k = p.digit.key(self.rotation_order_m)
                if k not in seen:
                    seen[k] = p.digit
        digits = list(seen.values())
        digits.sort(key=lambda d: _zkey(d.value(r, self.rotation_order_m)))
        return digits

    def partition_matrix(self) -> PartitionMatrix:
        n = len(self.tile_types)
        rows = []
        for i in range(n):
            row = [0] * n
            for p in self.pieces[i]:
                row[p.child] += 1
            rows.append(tuple(row))
        return PartitionMatrix(tuple(rows))

    def type_by_name(self, name):
        for t in self.tile_types:
            if t.name == name:
                return t
        raise RuleError(f"no tile type named {name!r}")

    def __eq__(self, other):
        if not isinstance(other, RuleSystem):
            return NotImplemented
        return _structural(self) == _structural(other)

    def __repr__(self):
        return f"RuleSystem({self.name!r}, dim={self.dimension}, types={len(self.tile_types)})"


def _zkey(z: complex):
    return (round(z.real, 9), round(z.imag, 9))


def _structural(rule: RuleSystem):
    m = rule.rotation_order_m
    types = []
    for t in rule.tile_types:
        types.append(
            (
                t.id,
                t.name,
                t.shape.vertices if t.shape else None,
                t.length.coeffs if t.length is not None else None,
                t.measure.coeffs if t.measure is not None else None,
                t.measure_float,
                tuple(tuple(d.vertices) for d in t.decorations),
            )
        )
    pieces = {}
    for tid, plist in rule.pieces.items():
        pieces[tid] = tuple(
            (p.child, p.digit.key(m), p.rotation_power, p.conjugate) for p in plist
        )
    return (
        rule.name,
        rule.dimension,
        tuple(rule.field.min_poly.coeffs),
        rule.multiplier.coeffs if rule.multiplier is not None else None,
        rule.complex_radix.form if rule.complex_radix else None,
        m,
        rule.equivalence,
        tuple(types),
        pieces,
    )


# ---------------------------------------------------------------------------
# measure validation


@dataclass
class MeasureReport:
    ok: bool
    exact: bool
    rows: list
    digit_bound_required: int
    digit_bound_actual: int
    failures: list = dc_field(default_factory=list)


def validate_measure(rule: RuleSystem, tol=1e-9) -> MeasureReport:
    """Check the eigen-relation sum_j U[i][j] m(R_j) = rho^d m(R_i) for
    every row, exactly when exact measures exist, within tol otherwise.
    Also reports the digit-count bound ceil(|rho|^d) vs |digit set|."""
    u = rule.partition_matrix()
    exact = rule.multiplier is not None or rule.complex_radix is not None
    exact = exact and all(t.measure is not None for t in rule.tile_types)
    rows = []
    failures = []
    if exact:
        factor = rule.measure_factor()
        measures = [t.measure for t in rule.tile_types]
        for i, t in enumerate(rule.tile_types):
            lhs = rule.field.zero()
            for j, mj in enumerate(measures):
                lhs = lhs + mj * u[i][j]
            rhs = factor * measures[i]
            ok = lhs.coeffs == rhs.coeffs
            rows.append({"type": t.name, "lhs": float(lhs), "rhs": float(rhs), "ok": ok})
            if not ok:
                failures.append(f"row {t.name}: sum U m != rho^d m (exact)")
    else:
        factor = rule.multiplier_value() ** rule.dimension
        if rule.complex_radix is not None:
            factor = float(rule.complex_radix.norm)
        measures = [t.measure_float for t in rule.tile_types]
        for i, t in enumerate(rule.tile_types):
            lhs = sum(u[i][j] * measures[j] for j in range(len(measures)))
            rhs = factor * measures[i]
            ok = abs(lhs - rhs) <= tol * max(1.0, abs(rhs))
            rows.append({"type": t.name, "lhs": lhs, "rhs": rhs, "ok": ok})
            if not ok:
                failures.append(f"row {t.name}: |{lhs} - {rhs}| > {tol}")
    if rule.complex_radix is not None:
        mag_d = float(rule.complex_radix.norm)
    else:
        mag_d = rule.multiplier_value() ** rule.dimension
    required = math.ceil(mag_d - 1e-12)
    actual = len(rule.digit_set())
    return MeasureReport(
        ok=not failures,
        exact=exact,
        rows=rows,
        digit_bound_required=required,
        digit_bound_actual=actual,
        failures=failures,
    )


def partition_matrix(rule: RuleSystem) -> PartitionMatrix:
    return rule.partition_matrix()


# ---------------------------------------------------------------------------
# 1-D silver rules


def build_1d_silver_rule(b: SilverIndex, precision_bits=DEFAULT_PRECISION_BITS) -> RuleSystem:
    """The 1-D rule for silver index b: types R_k = [0, rho^(1-k)] in
    decreasing-length order, type 1 split into the essential pieces at the
    exact offsets c_k = sum_{j<k} b_j rho^(1-j) (so the golden digits are
    {0, 1}), and each type k > 1 mapping to the single child R_{k-1} with
    digit 0.  The scale is chosen so the largest tile is the unit interval;
    any global rescaling gives the same tiling."""
    nf = field_for(b, precision_bits)
    rho = nf.rho()
    n = b.degree
    scale = rho
    rho_inv = rho.inverse()
    lengths = []
    p = nf.one()
    for _ in range(n):
        p = p * rho_inv
        lengths.append(scale * p)
    types = [
        TileType(
            id=k,
            name=f"R{k + 1}",
            length=lengths[k],
            measure=lengths[k],
            measure_float=float(lengths[k]),
        )
        for k in range(n)
    ]
    pieces = {}
    row1 = []
    offset = nf.zero()
    partial = nf.one()
    for k in range(1, n + 1):
        if b.bits[k - 1]:
            row1.append(Piece(child=k - 1, digit=Digit.scalar(scale * offset)))
        partial = partial * rho_inv
        offset = offset + b.bits[k - 1] * partial
    pieces[0] = tuple(row1)
    for k in range(1, n):
        pieces[k] = (Piece(child=k - 1, digit=Digit.zero(nf)),)
    return RuleSystem(
        name=f"silver-1d:{b}",
        dimension=1,
        field=nf,
        multiplier=rho,
        rotation_order_m=1,
        tile_types=types,
        pieces=pieces,
        equivalence="translation-only",
    )


def _bits_from_1d_rule(rule1d: RuleSystem) -> SilverIndex:
    if rule1d.dimension != 1:
        raise RuleError("expected a 1-D silver rule")
    n = len(rule1d.tile_types)
    present = {p.child + 1 for p in rule1d.pieces[0]}
    return SilverIndex(tuple(1 if k in present else 0 for k in range(1, n + 1)))


# ---------------------------------------------------------------------------
# cartesian product rules


def cartesian_square(rule1d: RuleSystem, equivalence="translation-only") -> RuleSystem:
    """2-D rule on rectangles R_ij = [0, rho^(1-i)] x [0, rho^(1-j)] built
    as the cartesian square of a 1-D silver rule.  Translation-only mode
    keeps all N^2 rectangle types; isometry mode identifies R_ij with the
    90-degree rotation of R_ji, leaving N(N+1)/2 types."""
    if equivalence not in ("translation-only", "isometry"):
        raise RuleError(f"unsupported equivalence mode {equivalence!r} for cartesian_square")
    b = _bits_from_1d_rule(rule1d)
    nf = rule1d.field
    rho = nf.rho()
    rho_inv = rho.inverse()
    n = b.degree
    # side lengths rho^(1-i) and digit offsets c'_k = sum_{j<k} b_j rho^(1-j)
    side = [None] * (n + 1)
    p = rho
    for i in range(1, n + 1):
        p = p * rho_inv
        side[i] = p  # rho^(1-i)
    offs = [None] * (n + 1)
    acc = nf.zero()
    p = rho
    for k in range(1, n + 1):
        offs[k] = acc
        p = p * rho_inv
        acc = acc + b.bits[k - 1] * p
    essential = [k for k in range(1, n + 1) if b.bits[k - 1]]

    if equivalence == "translation-only":
        index = {(i, j): t for t, (i, j) in enumerate((i, j) for i in range(1, n + 1) for j in range(1, n + 1))}
    else:
        index = {(i, j): t for t, (i, j) in enumerate((i, j) for i in range(1, n + 1) for j in range(i, n + 1))}

    def rect(i, j):
        w = float(side[i])
        h = float(side[j])
        return Polygon([0, w, complex(w, h), complex(0, h)])

    types = []
    for (i, j), tid in index.items():
        mexact = side[i] * side[j]
        types.append(
            TileType(
                id=tid,
                name=f"R{i}{j}",
                shape=rect(i, j),
                measure=mexact,
                measure_float=float(mexact),
            )
        )

    def make_piece(x0: FieldElement, y0: FieldElement, k, l):
        if equivalence == "translation-only" or k <= l:
            digit = Digit(terms=((x0, 0), (y0, 1)))
            return Piece(child=index[(k, l)], digit=digit, rotation_power=0)
        # swap to the representative (l, k) rotated a quarter turn; the
        # rotated copy occupies [-h, 0] x [0, w], so shift right by its
        # height h = rho^(1-k)
        digit = Digit(terms=((x0 + side[k], 0), (y0, 1)))
        return Piece(child=index[(l, k)], digit=digit, rotation_power=1)

    pieces = {}
    for (i, j), tid in index.items():
        plist = []
        if i == 1 and j == 1:
            for k in essential:
                for l in essential:
                    plist.append(make_piece(offs[k], offs[l], k, l))
        elif i == 1:
            for k in essential:
                plist.append(make_piece(offs[k], nf.zero(), k, j - 1))
        elif j == 1:
            for l in essential:
                plist.append(make_piece(nf.zero(), offs[l], i - 1, l))
        else:
            plist.append(make_piece(nf.zero(), nf.zero(), i - 1, j - 1))
        pieces[tid] = tuple(plist)

    return RuleSystem(
        name=f"cartesian:{b}:{'translation' if equivalence == 'translation-only' else 'isometry'}",
        dimension=2,
        field=nf,
        multiplier=rho,
        rotation_order_m=2,
        tile_types=types,
        pieces=pieces,
        equivalence=equivalence,
    )


# ---------------------------------------------------------------------------
# derotation


def derotate(rule: RuleSystem) -> RuleSystem:
    """Quotient out rotations/conjugations by introducing one type per
    orientation class actually reachable from the identity orientation.
    The result is translation-only; digits become plain complex values."""
    if rule.dimension != 2 or any(t.shape is None for t in rule.tile_types):
        raise RuleError("derotate needs a 2-D rule with polygons")
    m = rule.rotation_order_m
    order = 2 * m
    trivial = all(
        p.rotation_power % order == 0 and not p.conjugate
        for plist in rule.pieces.values()
        for p in plist
    )
    if trivial:
        return rule
    r = rule.multiplier_value()
    centroids = [t.shape.centroid() for t in rule.tile_types]
    centered = [
        tuple(v - centroids[t.id] for v in t.shape.vertices) for t in rule.tile_types
    ]
    centered_dec = [
        tuple(tuple(v - centroids[t.id] for v in d.vertices) for d in t.decorations)
        for t in rule.tile_types
    ]

    def orient(z, g):
        p, c = g
        if c:
            z = z.conjugate()
        return z * unit_root(m, p)

    def sig(tid, g):
        # identify orientations with the same point set; conjugation makes
        # the vertex list run clockwise, so compare both directions
        vs = [orient(v, g) for v in centered[tid]]
        keyed = [(round(v.real, 6), round(v.imag, 6)) for v in vs]
        cycles = [tuple(keyed[i:] + keyed[:i]) for i in range(len(keyed))]
        rev = list(reversed(keyed))
        cycles += [tuple(rev[i:] + rev[:i]) for i in range(len(rev))]
        return (tid, min(cycles))

    # recentred float digits: delta' = delta + u_p(centroid_child) - rho*centroid_parent
    adj = {}
    for tid, plist in rule.pieces.items():
        out = []
        for p in plist:
            d = p.digit.value(r, m)
            d = d + orient(centroids[p.child], (p.rotation_power, p.conjugate))
            d = d - r * centroids[tid]
            out.append((p.child, d, p.rotation_power, p.conjugate))
        adj[tid] = out

    # canonical group element per orientation class: enumerate the whole
    # group, preferring plain rotations over conjugated elements, so every
    # class expands through the same (unmirrored) representative
    canon = {}
    for t in rule.tile_types:
        for c in (False, True):
            for p in range(order):
                s = sig(t.id, (p, c))
                canon.setdefault(s, (t.id, (p, c)))

    classes = {}  # signature -> new id
    queue = []
    for t in rule.tile_types:
        s = sig(t.id, (0, False))
        if s not in classes:
            classes[s] = len(classes)
            queue.append(s)
    edges = {}
    while queue:
        s0 = queue.pop(0)
        cid = classes[s0]
        if cid in edges:
            continue
        tid, g = canon[s0]
        plist = []
        for child, dval, pq, cq in adj[tid]:
            p, c = g
            h = ((p + (-pq if c else pq)) % order, c != cq)
            s = sig(child, h)
            if s not in classes:
                classes[s] = len(classes)
                queue.append(s)
            plist.append((classes[s], orient(dval, g)))
        edges[cid] = plist

    by_id = sorted((cid, *canon[s]) for s, cid in classes.items())
    types = []
    for cid, tid, g in by_id:
        src = rule.tile_types[tid]
        p, c = g
        verts = [orient(v, g) for v in centered[tid]]
        decs = tuple(
            Polyline(tuple(orient(v, g) for v in d)) for d in centered_dec[tid]
        )
        types.append(
            TileType(
                id=cid,
                name=f"{src.name}@{p}{'c' if c else ''}",
                shape=Polygon(verts),
                measure=src.measure,
                measure_float=src.measure_float,
                decorations=decs,
            )
        )
    pieces = {
        cid: tuple(Piece(child=ch, digit=Digit.from_float(d)) for ch, d in plist)
        for cid, plist in edges.items()
    }
    return RuleSystem(
        name=f"{rule.name}:derotated",
        dimension=2,
        field=rule.field,
        multiplier=rule.multiplier,
        rotation_order_m=m,
        tile_types=types,
        pieces=pieces,
        equivalence="translation-only",
        measure_scale=rule.measure_scale,
    )


# ---------------------------------------------------------------------------
# composition (used for the phi-inflation chair variant)


def compose_rule(rule: RuleSystem) -> RuleSystem:
    """Substitute the rule into itself once: the result inflates by rho^2
    in one step.  Piece of the composition: delta = rho*delta_p + u_p(delta_q),
    orientation u_p u_q."""
    if rule.multiplier is None:
        raise RuleError("compose_rule needs a real multiplier")
    m = rule.rotation_order_m
    order = 2 * m
    pieces = {}
    for tid, plist in rule.pieces.items():
        out = []
        for p in plist:
            for q in rule.pieces[p.child]:
                dq = q.digit.rotated(p.rotation_power, p.conjugate, m)
                digit = p.digit.scaled(rule.multiplier, m).plus(dq, m)
                rot = (p.rotation_power + (-q.rotation_power if p.conjugate else q.rotation_power)) % order
                out.append(Piece(child=q.child, digit=digit,
                                 rotation_power=rot, conjugate=p.conjugate != q.conjugate))
        pieces[tid] = tuple(out)
    return RuleSystem(
        name=f"{rule.name}:squared",
        dimension=rule.dimension,
        field=rule.field,
        multiplier=rule.multiplier * rule.multiplier,
        rotation_order_m=m,
        tile_types=rule.tile_types,
        pieces=pieces,
        equivalence=rule.equivalence,
        measure_scale=rule.measure_scale,
    )


# ---------------------------------------------------------------------------
# built-in catalog


def _golden_field():
    return field_for(SilverIndex((1, 1)))


def _penrose_types(nf):
    phi = float(nf.rho())
    u = cmath.exp(1j * math.pi / 5)
    tri_113 = Polygon([0, u / phi ** 2, 1 / phi])
    tri_122 = Polygon([0, u / phi, 1 / phi])
    rho = nf.rho()
    m113 = 2 - rho          # 1/rho^2
    m122 = rho - 1          # 1/rho
    # measures live in normalized units; measure_scale maps them to areas
    scale = tri_113.area() / float(m113)
    dec113 = _isosceles_midline(tri_113)
    dec122 = _base_to_apex(tri_122)
    t0 = TileType(0, "R113", shape=tri_113, measure=m113,
                  measure_float=float(m113), decorations=(dec113,))
    t1 = TileType(1, "R122", shape=tri_122, measure=m122,
                  measure_float=float(m122), decorations=(dec122,))
    return (t0, t1), scale


def _isosceles_midline(tri: Polygon) -> Polyline:
    """Join the midpoints of the two equal-length edges."""
    vs = tri.vertices
    edges = [(vs[i], vs[(i + 1) % 3]) for i in range(3)]
    lens = [abs(b - a) for a, b in edges]
    pair = min(
        ((i, j) for i in range(3) for j in range(i + 1, 3)),
        key=lambda ij: abs(lens[ij[0]] - lens[ij[1]]),
    )
    mids = [(a + b) / 2 for a, b in edges]
    return Polyline((mids[pair[0]], mids[pair[1]]))


def _base_to_apex(tri: Polygon) -> Polyline:
    """Join the midpoint of the base (the odd-length edge) to the opposite
    vertex (the acute one in the (pi/5, 2pi/5, 2pi/5) triangle)."""
    vs = tri.vertices
    edges = [(vs[i], vs[(i + 1) % 3]) for i in range(3)]
    lens = [abs(b - a) for a, b in edges]
    # the base is the edge whose length differs from both others
    diffs = [
        abs(lens[i] - lens[(i + 1) % 3]) + abs(lens[i] - lens[(i + 2) % 3])
        for i in range(3)
    ]
    base_i = max(range(3), key=lambda i: diffs[i])
    mid = (edges[base_i][0] + edges[base_i][1]) / 2
    apex = vs[(base_i + 2) % 3]
    return Polyline((mid, apex))


def _catalog_square2():
    nf = NumberField(AlgebraicNumber(IntPolynomial((-2, 1)), Fraction(2), Fraction(2), DEFAULT_PRECISION_BITS))
    one = nf.one()
    sq = Polygon([0, 1, 1 + 1j, 1j])
    dec = Polyline((0j, 1 + 1j))
    t = TileType(0, "R", shape=sq, measure=one, measure_float=1.0, decorations=(dec,))
    d = lambda x0, y0: Digit(terms=((nf.from_rational(x0), 0), (nf.from_rational(y0), 1)))
    pieces = {0: (
        Piece(0, Digit.zero(nf)),
        Piece(0, d(1, 0)),
        Piece(0, d(1, 1)),
        Piece(0, d(0, 1)),
    )}
    return RuleSystem("square2", 2, nf, nf.rho(), 2, (t,), pieces, "translation-only")


def _catalog_checkerboard():
    nf = NumberField(AlgebraicNumber(IntPolynomial((-2, 1)), Fraction(2), Fraction(2), DEFAULT_PRECISION_BITS))
    one = nf.one()
    sq = Polygon([0, 1, 1 + 1j, 1j])
    tb = TileType(0, "B", shape=sq, measure=one, measure_float=1.0)
    tw = TileType(1, "W", shape=sq, measure=one, measure_float=1.0)
    d = lambda x0, y0: Digit(terms=((nf.from_rational(x0), 0), (nf.from_rational(y0), 1)))
    row = lambda same, other: (
        Piece(same, Digit.zero(nf)),
        Piece(same, d(1, 1)),
        Piece(other, d(1, 0)),
        Piece(other, d(0, 1)),
    )
    pieces = {0: row(0, 1), 1: row(1, 0)}
    return RuleSystem("checkerboard", 2, nf, nf.rho(), 2, (tb, tw), pieces, "translation-only")


def _catalog_penrose():
    nf = _golden_field()
    types, scale = _penrose_types(nf)
    one = nf.one()
    pieces = {
        # phi R113 = (1 + u^4 R113) u R122
        0: (
            Piece(0, Digit.scalar(one), rotation_power=4),
            Piece(1, Digit.zero(nf)),
        ),
        # phi R122 = (1 + u^3 R122) u (u conj R113) u (1 + u^5 conj R122)
        1: (
            Piece(1, Digit.scalar(one), rotation_power=3),
            Piece(0, Digit.zero(nf), rotation_power=1, conjugate=True),
            Piece(1, Digit.scalar(one), rotation_power=5, conjugate=True),
        ),
    }
    return RuleSystem("penrose", 2, nf, nf.rho(), 5, types, pieces, "isometry",
                      measure_scale=scale)


def _catalog_penrose_rotation():
    nf = _golden_field()
    types, scale = _penrose_types(nf)
    one = nf.one()
    rho = nf.rho()
    u_over_rho = Digit(terms=((rho - 1, 1),))  # (1/rho) e^{i pi/5}
    pieces = {
        0: (
            Piece(0, Digit.scalar(one), rotation_power=4),
            Piece(1, Digit.zero(nf)),
        ),
        # phi R122 = (u/rho + u^6 R113) u (1 + u^3 R122) u (1 + u^4 R122)
        1: (
            Piece(0, u_over_rho, rotation_power=6),
            Piece(1, Digit.scalar(one), rotation_power=3),
            Piece(1, Digit.scalar(one), rotation_power=4),
        ),
    }
    return RuleSystem("penrose-rotation", 2, nf, nf.rho(), 5, types, pieces,
                      "rotation-only", measure_scale=scale)


def _catalog_ammann_chair():
    b = SilverIndex((0, 1, 0, 1))
    nf = field_for(b)
    lam = nf.rho()              # sqrt(phi), root of x^4 - x^2 - 1
    lam_inv = lam.inverse()
    phi = lam * lam
    lv = float(lam)
    big = Polygon([
        0,
        1,
        complex(1, 1 / lv),
        complex(1 / lv ** 2, 1 / lv),
        complex(1 / lv ** 2, lv),
        complex(0, lv),
    ])
    small = Polygon([v / lv for v in big.vertices])
    m_l = 2 * lam_inv - lam_inv ** 3  # the hexagon area, exactly
    m_s = m_l * lam_inv * lam_inv
    tl = TileType(0, "L", shape=big, measure=m_l, measure_float=float(m_l))
    ts = TileType(1, "S", shape=small, measure=m_s, measure_float=float(m_s))
    pieces = {
        # lam L = (lam + i L) u (i phi + conj S)
        0: (
            Piece(0, Digit.scalar(lam), rotation_power=1),
            Piece(1, Digit(terms=((phi, 1),)), conjugate=True),
        ),
        # lam S = L
        1: (Piece(0, Digit.zero(nf)),),
    }
    return RuleSystem("ammann-chair", 2, nf, lam, 2, (tl, ts), pieces, "isometry")


def _catalog_ammann_phi():
    rule = compose_rule(_catalog_ammann_chair())
    return RuleSystem(
        "ammann-phi", 2, rule.field, rule.multiplier, rule.rotation_order_m,
        rule.tile_types, rule.pieces, rule.equivalence,
    )


def _catalog_taylor():
    nf = NumberField(AlgebraicNumber(IntPolynomial((-2, 1)), Fraction(2), Fraction(2), DEFAULT_PRECISION_BITS))
    one = nf.one()
    s = 1 / math.sqrt(3.0)
    trap = Polygon([
        complex(0, -s),
        complex(0.5, -s / 2),
        complex(0.5, s / 2),
        complex(0, s),
    ])
    dec = Polyline((complex(0.5, s / 2), complex(0, s / 2)))
    t = TileType(0, "T", shape=trap, measure=one, measure_float=1.0, decorations=(dec,))
    omega = lambda k: Digit(terms=((one, k),))
    pieces = {0: (
        # 2 R = R u (w + wbar^2 R) u (wbar + w^2 conj R) u (1 + w^3 conj R)
        Piece(0, Digit.zero(nf)),
        Piece(0, omega(1), rotation_power=4),
        Piece(0, omega(5), rotation_power=2, conjugate=True),
        Piece(0, Digit.scalar(one), rotation_power=3, conjugate=True),
    )}
    return RuleSystem("taylor-trapezoid", 2, nf, nf.rho(), 3, (t,), pieces,
                      "isometry", measure_scale=trap.area())


def _catalog_complex(name, form, value, min_poly, norm):
    nf = NumberField(AlgebraicNumber(IntPolynomial((-2, 1)), Fraction(2), Fraction(2), DEFAULT_PRECISION_BITS))
    one = nf.one()
    t = TileType(0, "R", measure=one, measure_float=1.0)
    pieces = {0: (
        Piece(0, Digit.zero(nf)),
        Piece(0, Digit.scalar(one)),
    )}
    cr = ComplexRadix(form=form, value=value, min_poly=IntPolynomial(min_poly), norm=norm)
    return RuleSystem(name, 2, nf, None, 1, (t,), pieces, "measure-only",
                      complex_radix=cr)


_CATALOG_BUILDERS = {
    "square2": _catalog_square2,
    "checkerboard": _catalog_checkerboard,
    "penrose": _catalog_penrose,
    "penrose-rotation": _catalog_penrose_rotation,
    "ammann-chair": _catalog_ammann_chair,
    "ammann-phi": _catalog_ammann_phi,
    "taylor-trapezoid": _catalog_taylor,
    "complex-i-sqrt2": lambda: _catalog_complex(
        "complex-i-sqrt2", "i*sqrt(2)", complex(0, math.sqrt(2)), (2, 0, 1), 2),
    "complex-half-1-i-sqrt7": lambda: _catalog_complex(
        "complex-half-1-i-sqrt7", "(1+i*sqrt(7))/2",
        complex(0.5, math.sqrt(7) / 2), (2, -1, 1), 2),
    "complex-1-plus-i": lambda: _catalog_complex(
        "complex-1-plus-i", "1+i", complex(1, 1), (2, -2, 1), 2),
}

CATALOG_NAMES = tuple(sorted(_CATALOG_BUILDERS))


def catalog(name: str) -> RuleSystem:
    """Built-in rules by name.  Parametric families: 'silver-1d:<bits>'
    and 'cartesian:<bits>:<translation|isometry>'."""
    if name in _CATALOG_BUILDERS:
        return _CATALOG_BUILDERS[name]()
    if name.startswith("silver-1d:"):
        return build_1d_silver_rule(SilverIndex.parse(name.split(":", 1)[1]))
    if name.startswith("cartesian:"):
        parts = name.split(":")
        if len(parts) != 3 or parts[2] not in ("translation", "isometry"):
            raise RuleError(
                "cartesian rules are named cartesian:<bits>:<translation|isometry>")
        mode = "translation-only" if parts[2] == "translation" else "isometry"
        return cartesian_square(build_1d_silver_rule(SilverIndex.parse(parts[1])), mode)
    raise RuleError(
        f"unknown rule {name!r}; available: {', '.join(CATALOG_NAMES)}, "
        "silver-1d:<bits>, cartesian:<bits>:<translation|isometry>"
    )


# ---------------------------------------------------------------------------
# rule files

_SCHEMA = "tessera-rule-v1"


def _frac_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def _parse_frac(s, where):
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError):
        raise RuleFileError(f"{where}: bad fraction {s!r}")


def _fe_out(e: FieldElement):
    return [_frac_str(c) for c in e.coeffs]


def _fe_in(nf, lst, where):
    if not isinstance(lst, list) or len(lst) != nf.degree:
        raise RuleFileError(f"{where}: expected {nf.degree} coefficients")
    return nf.element([_parse_frac(c, where) for c in lst])


def _digit_out(d: Digit, m):
    if d.exact:
        nd = d.normalized(m)
        return {"terms": [[_fe_out(s), p] for s, p in nd.terms]}
    return {"re": d.float_value.real, "im": d.float_value.imag}


def _digit_in(nf, obj, where):
    if not isinstance(obj, dict):
        raise RuleFileError(f"{where}: digit must be an object")
    if "terms" in obj:
        _reject_unknown(obj, {"terms"}, where)
        terms = []
        for k, t in enumerate(obj["terms"]):
            if not (isinstance(t, list) and len(t) == 2):
                raise RuleFileError(f"{where}.terms[{k}]: expected [coeffs, power]")
            terms.append((_fe_in(nf, t[0], f"{where}.terms[{k}]"), int(t[1])))
        return Digit(terms=tuple(terms))
    if set(obj) == {"re", "im"}:
        return Digit(float_value=complex(float(obj["re"]), float(obj["im"])))
    raise RuleFileError(f"{where}: digit needs either 'terms' or 're'/'im'")


def _reject_unknown(obj, allowed, where):
    extra = set(obj) - set(allowed)
    if extra:
        raise RuleFileError(f"{where}: unknown field(s) {sorted(extra)}")


def rule_to_dict(rule: RuleSystem) -> dict:
    m = rule.rotation_order_m
    if rule.complex_radix is not None:
        radix = {
            "complex_form": rule.complex_radix.form,
            "min_poly": list(rule.complex_radix.min_poly.coeffs),
            "norm": rule.complex_radix.norm,
        }
    else:
        g = rule.field.generator
        radix = {
            "min_poly": list(g.min_poly.coeffs),
            "isolating": [_frac_str(g.lo), _frac_str(g.hi)],
        }
    types = []
    for t in rule.tile_types:
        types.append({
            "id": t.id,
            "name": t.name,
            "shape": [[v.real, v.imag] for v in t.shape.vertices] if t.shape else None,
            "length": _fe_out(t.length) if t.length is not None else None,
            "measure": _fe_out(t.measure) if t.measure is not None else None,
            "measure_float": t.measure_float,
            "decorations": [[[v.real, v.imag] for v in d.vertices] for d in t.decorations],
        })
    pieces = {}
    for tid, plist in rule.pieces.items():
        pieces[str(tid)] = [
            {
                "child": p.child,
                "digit": _digit_out(p.digit, m),
                "rot": p.rotation_power,
                "conj": p.conjugate,
            }
            for p in plist
        ]
    out = {
        "schema": _SCHEMA,
        "name": rule.name,
        "dimension": rule.dimension,
        "radix": radix,
        "rotation_order_m": m,
        "equivalence": rule.equivalence,
        "measure_scale": rule.measure_scale,
        "types": types,
        "pieces": pieces,
    }
    if rule.multiplier is not None:
        out["multiplier"] = _fe_out(rule.multiplier)
    return out


def rule_from_dict(obj: dict, precision_bits=DEFAULT_PRECISION_BITS) -> RuleSystem:
    if not isinstance(obj, dict):
        raise RuleFileError("rule file must contain a JSON object")
    allowed = {"schema", "name", "dimension", "radix", "multiplier",
               "rotation_order_m", "equivalence", "measure_scale", "types", "pieces"}
    _reject_unknown(obj, allowed, "$")
    if obj.get("schema") != _SCHEMA:
        raise RuleFileError(f"$.schema: expected {_SCHEMA!r}")
    for key in ("name", "dimension", "radix", "rotation_order_m", "equivalence", "types", "pieces"):
        if key not in obj:
            raise RuleFileError(f"$.{key}: missing required field")
    radix = obj["radix"]
    if not isinstance(radix, dict):
        raise RuleFileError("$.radix: must be an object")
    mp = radix.get("min_poly")
    if not isinstance(mp, list) or len(mp) < 2:
        raise RuleFileError("$.radix.min_poly: need at least two integer coefficients")
    if mp[-1] != 1:
        raise RuleFileError("$.radix: radix polynomial must be monic")
    complex_radix = None
    if "complex_form" in radix:
        _reject_unknown(radix, {"complex_form", "min_poly", "norm"}, "$.radix")
        value = _eval_complex_form(radix["complex_form"])
        complex_radix = ComplexRadix(radix["complex_form"], value,
                                     IntPolynomial(mp), int(radix["norm"]))
        nf = NumberField(AlgebraicNumber(IntPolynomial((-2, 1)), Fraction(2),
                                         Fraction(2), precision_bits))
    else:
        _reject_unknown(radix, {"min_poly", "isolating"}, "$.radix")
        iso = radix.get("isolating")
        if not (isinstance(iso, list) and len(iso) == 2):
            raise RuleFileError("$.radix.isolating: expected [lo, hi]")
        lo = _parse_frac(iso[0], "$.radix.isolating")
        hi = _parse_frac(iso[1], "$.radix.isolating")
        gen = AlgebraicNumber(IntPolynomial(mp), lo, hi, precision_bits)
        if hi > lo:
            gen = gen.refined(precision_bits)
        nf = NumberField(gen)
    multiplier = None
    if complex_radix is None:
        if "multiplier" in obj:
            multiplier = _fe_in(nf, obj["multiplier"], "$.multiplier")
        else:
            multiplier = nf.rho()
    types = []
    for k, t in enumerate(obj["types"]):
        where = f"$.types[{k}]"
        _reject_unknown(t, {"id", "name", "shape", "length", "measure",
                            "measure_float", "decorations"}, where)
        shape = None
        if t.get("shape") is not None:
            shape = Polygon([complex(x, y) for x, y in t["shape"]])
        length = _fe_in(nf, t["length"], f"{where}.length") if t.get("length") is not None else None
        measure = _fe_in(nf, t["measure"], f"{where}.measure") if t.get("measure") is not None else None
        decs = tuple(
            Polyline(tuple(complex(x, y) for x, y in d)) for d in t.get("decorations", [])
        )
        types.append(TileType(
            id=int(t["id"]), name=str(t["name"]), shape=shape, length=length,
            measure=measure, measure_float=float(t.get("measure_float", 0.0)),
            decorations=decs,
        ))
    pieces = {}
    known_ids = {t.id for t in types}
    for tid_s, plist in obj["pieces"].items():
        tid = int(tid_s)
        out = []
        for k, p in enumerate(plist):
            where = f"$.pieces[{tid_s}][{k}]"
            _reject_unknown(p, {"child", "digit", "rot", "conj"}, where)
            child = int(p["child"])
            if child not in known_ids:
                raise RuleFileError(f"{where}: unknown child type id {child}")
            out.append(Piece(
                child=child,
                digit=_digit_in(nf, p["digit"], f"{where}.digit"),
                rotation_power=int(p.get("rot", 0)),
                conjugate=bool(p.get("conj", False)),
            ))
        pieces[tid] = tuple(out)
    return RuleSystem(
        name=str(obj["name"]),
        dimension=int(obj["dimension"]),
        field=nf,
        multiplier=multiplier,
        rotation_order_m=int(obj["rotation_order_m"]),
        tile_types=types,
        pieces=pieces,
        equivalence=str(obj["equivalence"]),
        complex_radix=complex_radix,
        measure_scale=float(obj.get("measure_scale", 1.0)),
    )


def _eval_complex_form(form: str) -> complex:
    """Evaluate a closed-form radix expression like 'i*sqrt(2)' or '1+i'."""
    try:
        return complex(eval(form, {"__builtins__": {}},
                            {"sqrt": math.sqrt, "i": 1j}))
    except Exception:
        raise RuleFileError(f"$.radix.complex_form: cannot evaluate {form!r}")


def save_rule(rule: RuleSystem, path):
    with open(path, "w") as fh:
        json.dump(rule_to_dict(rule), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_rule(path, precision_bits=DEFAULT_PRECISION_BITS) -> RuleSystem:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as e:
        raise RuleFileError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}")
    return rule_from_dict(obj, precision_bits)
