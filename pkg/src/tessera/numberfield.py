"""Exact arithmetic for silver numbers and the fields they generate.

A silver number is the largest real root of x^N - sum b_j x^(N-j) with
bits b_j in {0,1} and b_N = 1.  Everything here is exact: polynomials have
integer coefficients, roots are isolated by rational bisection, and field
elements are rational coefficient vectors reduced modulo the minimal
polynomial.  No floats enter until a caller asks for an evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

DEFAULT_PRECISION_BITS = 80


class SilverIndexError(ValueError):
    pass


@dataclass(frozen=True)
class SilverIndex:
    """Bit vector b_1..b_N selecting a silver polynomial."""

    bits: tuple

    def __post_init__(self):
        bits = tuple(int(x) for x in self.bits)
        object.__setattr__(self, "bits", bits)
        if len(bits) < 2:
            raise SilverIndexError("need at least two bits (N >= 2)")
        if any(x not in (0, 1) for x in bits):
            raise SilverIndexError("bits must be 0 or 1")
        if bits[-1] != 1:
            raise SilverIndexError("last bit must be 1")
        if sum(bits) < 2:
            raise SilverIndexError("need at least two set bits")

    @property
    def degree(self):
        return len(self.bits)

    def __str__(self):
        return "".join(str(x) for x in self.bits)

    @classmethod
    def parse(cls, text):
        return cls(tuple(int(c) for c in text.strip()))


@dataclass(frozen=True)
class IntPolynomial:
    """Monic polynomial with integer coefficients, stored low degree first."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 2:
            raise ValueError("polynomial degree must be at least 1")
        if coeffs[-1] != 1:
            raise ValueError("polynomial must be monic")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative_at(self, x):
        acc = 0
        for k in range(self.degree, 0, -1):
            acc = acc * x + k * self.coeffs[k]
        return acc

    def __str__(self):
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                parts.append(f"{c:+d}")
            else:
                xs = "x" if k == 1 else f"x^{k}"
                if c == 1:
                    parts.append(f"+{xs}")
                elif c == -1:
                    parts.append(f"-{xs}")
                else:
                    parts.append(f"{c:+d}{xs}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def silver_polynomial(b: SilverIndex) -> IntPolynomial:
    """P_b(x) = x^N - sum_{j=1..N} b_j x^(N-j)."""
    n = b.degree
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    for j, bit in enumerate(b.bits, start=1):
        coeffs[n - j] = -bit
    return IntPolynomial(tuple(coeffs))


@dataclass(frozen=True)
class AlgebraicNumber:
    """Real algebraic number: minimal polynomial plus rational isolating
    interval.  The interval brackets exactly one root and the cached value
    is the interval midpoint at the stated precision."""

    min_poly: IntPolynomial
    lo: Fraction
    hi: Fraction
    precision_bits: int

    def refined(self, precision_bits):
        """Shrink the isolating interval by bisection until its width is
        below 2^-precision_bits.  Returns a new number."""
        lo, hi = self.lo, self.hi
        target = Fraction(1, 2 ** precision_bits)
        sign_lo = _sign(self.min_poly(lo))
        while hi - lo > target:
            mid = (lo + hi) / 2
            s = _sign(self.min_poly(mid))
            if s == 0:
                eps = (hi - lo) / 4
                lo, hi = mid - min(eps, target / 2), mid + min(eps, target / 2)
                break
            if s == sign_lo:
                lo = mid
            else:
                hi = mid
        return AlgebraicNumber(self.min_poly, lo, hi, precision_bits)

    def approx(self, precision_bits=None) -> Fraction:
        if precision_bits is None:
            precision_bits = self.precision_bits
        a = self
        if a.hi - a.lo > Fraction(1, 2 ** precision_bits):
            a = a.refined(precision_bits)
        return (a.lo + a.hi) / 2

    @property
    def value(self) -> float:
        return float(self.approx())

    def __float__(self):
        return self.value


def _sign(x):
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def silver_root(b: SilverIndex, precision_bits=DEFAULT_PRECISION_BITS) -> AlgebraicNumber:
    """Largest real root of the silver polynomial, isolated inside (1, 2)."""
    if precision_bits < 16:
        raise ValueError("precision_bits must be at least 16")
    p = silver_polynomial(b)
    # P_b(1) = 1 - sum(b) <= -1 < 0 and P_b(2) = 2^N - sum b_j 2^(N-j) > 0,
    # and P_b is increasing past its last critical point, so [1, 2] brackets
    # the unique largest real root.
    lo, hi = Fraction(1), Fraction(2)
    root = AlgebraicNumber(p, lo, hi, precision_bits)
    return root.refined(precision_bits)


def has_rational_root(p: IntPolynomial) -> bool:
    """Rational-root test for a monic integer polynomial: any rational root
    is an integer dividing the constant term."""
    c0 = p.coeffs[0]
    if c0 == 0:
        return True
    candidates = set()
    d = 1
    while d * d <= abs(c0):
        if c0 % d == 0:
            candidates.update({d, -d, abs(c0) // d, -(abs(c0) // d)})
        d += 1
    return any(p(c) == 0 for c in candidates)


class FieldMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class NumberField:
    """Q(rho) for a fixed algebraic rho; carries the reduction rule
    rho^N = -(c_0 + c_1 rho + ... + c_{N-1} rho^{N-1})."""

    generator: AlgebraicNumber

    @property
    def min_poly(self):
        return self.generator.min_poly

    @property
    def degree(self):
        return self.generator.min_poly.degree

    def element(self, coeffs) -> "FieldElement":
        return FieldElement(self, tuple(Fraction(c) for c in coeffs))

    def zero(self):
        return self.element([0] * self.degree)

    def one(self):
        return self.from_rational(1)

    def from_rational(self, q) -> "FieldElement":
        coeffs = [Fraction(q)] + [Fraction(0)] * (self.degree - 1)
        return self.element(coeffs)

    def rho(self) -> "FieldElement":
        if self.degree == 1:
            # degenerate field Q: rho is the rational root itself
            return self.from_rational(-self.min_poly.coeffs[0])
        coeffs = [Fraction(0)] * self.degree
        coeffs[1] = Fraction(1)
        return self.element(coeffs)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)


def field_for(b: SilverIndex, precision_bits=DEFAULT_PRECISION_BITS) -> NumberField:
    return NumberField(silver_root(b, precision_bits))


@dataclass(frozen=True)
class FieldElement:
    """Element of Q(rho) in canonical reduced form: a rational coefficient
    vector of length deg(min_poly).  Equality is coefficient-wise."""

    field: NumberField
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.field.degree:
            raise ValueError("coefficient vector length must equal field degree")

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError("elements belong to different fields")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        self._check(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * Fraction(other) for a in self.coeffs))
        self._check(other)
        n = self.field.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b != 0:
                    prod[i + j] += a * b
        return FieldElement(self.field, _reduce(prod, self.field.min_poly))

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "FieldElement":
        """1/self via the extended Euclidean algorithm in Q[x]."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        a = list(self.field.min_poly.coeffs)
        a = [Fraction(c) for c in a]
        b = list(self.coeffs)
        # maintain s*minpoly + t*b = r; at the end r is a nonzero constant
        t0, t1 = [Fraction(0)], [Fraction(1)]
        r0, r1 = a, _trim(b)
        while _poly_degree(r1) > 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
            if not r1:
                raise ZeroDivisionError("element is a zero divisor (reducible modulus?)")
        c = r1[0]
        inv = [t / c for t in t1]
        return FieldElement(self.field, _reduce(inv, self.field.min_poly))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        self._check(other)
        return self * other.inverse()

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is irrational")
        return self.coeffs[0]

    def evaluate(self, precision_bits=53) -> Fraction:
        """Rational approximation within 2^-precision_bits of the true value."""
        n = self.field.degree
        height = sum(abs(c) for c in self.coeffs)
        # crude derivative bound on [1, 2]: |d/dx sum c_k x^k| <= sum k |c_k| 2^k
        slope = sum(k * abs(c) * 2 ** k for k, c in enumerate(self.coeffs)) + 1
        extra = max(0, math.ceil(math.log2(float(slope * max(1, height)) + 2)))
        x = self.field.generator.approx(precision_bits + extra)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __float__(self):
        return float(self.evaluate(60))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coeffs) + ")"


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_degree(p):
    return len(_trim(p)) - 1


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and r:
        coef = r[-1] / b[-1]
        deg = len(r) - len(b)
        q[deg] = coef
        for i, bc in enumerate(b):
            r[deg + i] -= coef * bc
        r = _trim(r)
    return _trim(q), r


def _reduce(coeffs, min_poly: IntPolynomial):
    """Reduce a coefficient list modulo the monic min_poly, returning a
    tuple of exactly deg(min_poly) rationals."""
    n = min_poly.degree
    work = [Fraction(c) for c in coeffs]
    for k in range(len(work) - 1, n - 1, -1):
        c = work[k]
        if c != 0:
            work[k] = Fraction(0)
            for j in range(n):
                work[k - n + j] -= c * min_poly.coeffs[j]
    work = work[:n] + [Fraction(0)] * (n - len(work))
    return tuple(work[:n])


def minimal_polynomial_degree(elem: FieldElement) -> int:
    """Degree of the minimal polynomial of elem over Q, found as the first
    linear dependency among its powers in the field basis."""
    n = elem.field.degree
    powers = [elem.field.one()]
    for _ in range(n):
        powers.append(powers[-1] * elem)
    for d in range(1, n + 1):
        vec = list(powers[d].coeffs)
        # reduce the new power against the span of lower powers
        basis = [list(p.coeffs) for p in powers[:d]]
        if _in_span(vec, basis):
            return d
    return n


def _in_span(vec, basis):
    rows = [list(b) for b in basis]
    m = len(vec)
    v = list(vec)
    pivots = []
    for row in rows:
        for prow, pcol in pivots:
            if row[pcol] != 0:
                f = row[pcol] / prow[pcol]
                for i in range(m):
                    row[i] -= f * prow[i]
        for col in range(m):
            if row[col] != 0:
                pivots.append((row, col))
                break
    for prow, pcol in pivots:
        if v[pcol] != 0:
            f = v[pcol] / prow[pcol]
            for i in range(m):
                v[i] -= f * prow[i]
    return all(c == 0 for c in v)


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_equals(a: FieldElement, b: FieldElement) -> bool:
    if a.field != b.field:
        raise FieldMismatchError("elements belong to different fields")
    return a.coeffs == b.coeffs


def evaluate(a: FieldElement, precision_bits=53):
    return a.evaluate(precision_bits)
