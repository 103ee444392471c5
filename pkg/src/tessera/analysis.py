"""Spectral and number-theoretic analysis: dominant eigenvalues,
aperiodicity certificates, silver identities, Z[rho] membership, and the
lattice-multiplier test for complex radices."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .numberfield import (
    FieldElement,
    SilverIndex,
    field_for,
    minimal_polynomial_degree,
)
from .rules import PartitionMatrix, RuleSystem

MAX_POWER_ITERATIONS = 10 ** 5
EIGEN_TOL = 1e-12


@dataclass
class EigenResult:
    eigenvalue: float
    eigenvector: tuple  # normalized so the entries sum to 1
    iterations: int
    residual: float
    converged: bool


def dominant_eigen(u: PartitionMatrix) -> EigenResult:
    """Power iteration from the all-ones vector; catalog matrices are
    primitive so this converges geometrically."""
    a = np.array(u.entries, dtype=float)
    if not a.any():
        raise ValueError("zero matrix")
    v = np.ones(a.shape[0])
    v /= v.sum()
    lam = 0.0
    for it in range(1, MAX_POWER_ITERATIONS + 1):
        w = a @ v
        lam = w.sum() / v.sum() if v.sum() else w.sum()
        nw = w / w.sum()
        residual = float(np.max(np.abs(a @ nw - lam * nw)))
        v = nw
        if residual < EIGEN_TOL:
            return EigenResult(float(lam), tuple(float(x) for x in v), it, residual, True)
    return EigenResult(float(lam), tuple(float(x) for x in v), MAX_POWER_ITERATIONS,
                       residual, False)


def ratio_trace(u: PartitionMatrix, i: int, j: int, n_max: int):
    """(U^n)[i][j] / sigma_i^n for n = 1..n_max, where sigma_i^n is the
    total tile count of type i after n inflations.  Exact big-integer
    powers, returned as floats of exact rationals."""
    out = []
    power = u
    for n in range(1, n_max + 1):
        sigma = sum(power[i][k] for k in range(u.size))
        out.append(float(Fraction(power[i][j], sigma)))
        if n < n_max:
            power = power.mul(u)
    return out


@dataclass
class AperiodicityVerdict:
    method: str   # irrationality | integer-gap | inapplicable
    verdict: str  # aperiodic | inconclusive
    evidence: dict = dc_field(default_factory=dict)


def aperiodicity_by_irrationality(rule: RuleSystem) -> AperiodicityVerdict:
    """Frequency certificate: the limiting frequency of each tile type
    is a ratio of eigenvector entries for the dominant eigenvalue rho^d;
    if rho^d is irrational the tiling cannot be periodic.  Irrationality
    is read off the exact minimal polynomial of rho^d, with the numeric
    ratio trace as corroboration only."""
    u = rule.partition_matrix()
    n = u.size
    if n < 2:
        return AperiodicityVerdict(
            method="inapplicable",
            verdict="inconclusive",
            evidence={"reason": "irrationality route needs at least two tile types"},
        )
    # imprimitive matrices (silver bits supported on an arithmetic
    # progression) oscillate with period p; pass to U^p, which describes
    # the p-fold composed inflation of the same tiling
    ueff = u
    period = 1
    eig = dominant_eigen(ueff)
    while not eig.converged and period < 16:
        ueff = ueff.mul(ueff)
        period *= 2
        eig = dominant_eigen(ueff)
    factor = rule.measure_factor() ** period
    degree = minimal_polynomial_degree(factor)
    irrational = degree > 1
    # corroborate: the exact count ratio should approach the left-eigenvector
    # limit; compare the tail against the Perron frequency.  When the
    # dominant eigenspace of U^p is degenerate the power iteration can land
    # on a different eigenspace vector than the trace limit, so also accept
    # a Cauchy-stable trace whose growth rate matches rho^d
    ut = PartitionMatrix(tuple(tuple(ueff[j][i] for j in range(n)) for i in range(n)))
    left = dominant_eigen(ut)
    trace = ratio_trace(ueff, 0, 0, 200)
    perron_match = abs(trace[-1] - left.eigenvector[0]) < 1e-6
    trace_stable = (abs(trace[-1] - trace[-2]) < 1e-9
                    and abs(trace[-1] - trace[-5]) < 1e-8)
    rate_match = abs(eig.eigenvalue - float(factor)) < 1e-6
    consistent = perron_match or (trace_stable and rate_match)
    evidence = {
        "eigenvalue": eig.eigenvalue,
        "period": period,
        "min_poly_degree_of_rho_d": degree,
        "ratio_trace_tail": trace[-1],
        "perron_frequency": left.eigenvector[0],
        "trace_consistent": consistent,
    }
    if irrational and consistent and eig.converged:
        return AperiodicityVerdict("irrationality", "aperiodic", evidence)
    return AperiodicityVerdict("irrationality", "inconclusive", evidence)


def z_rho_member(x: FieldElement, max_degree=20):
    """Search for digits z_k in {0,1} with sum z_k rho^k = x or -x, exactly
    in Q(rho).  Returns the witness digit string (highest power first) or
    None if there is no witness up to the degree bound."""
    if max_degree > 64:
        raise ValueError("max_degree must be <= 64")
    nf = x.field
    rho = nf.rho()
    rho_f = float(rho)
    powers = [nf.one()]
    for _ in range(max_degree):
        powers.append(powers[-1] * rho)
    powers_f = [float(p) for p in powers]
    # geometric tail bound: sum_{j<=k} rho^j < rho^{k+1}/(rho-1)
    tails = [0.0] * (max_degree + 2)
    for k in range(max_degree, -1, -1):
        tails[k] = tails[k + 1] + powers_f[k]

    def search(target: FieldElement, target_f: float):
        slack = 1e-9
        bits = []

        def rec(k, acc: FieldElement, acc_f: float):
            if k < 0:
                return acc.coeffs == target.coeffs
            if acc_f - target_f > slack:
                return False
            if target_f - acc_f > tails[0] - tails[k + 1] + slack:
                return False
            for z in (1, 0):
                bits.append(z)
                nxt = acc + powers[k] if z else acc
                if rec(k - 1, nxt, acc_f + z * powers_f[k]):
                    return True
                bits.pop()
            return False

        if rec(max_degree, nf.zero(), 0.0):
            s = "".join(str(b) for b in bits)
            return s.lstrip("0") or "0"
        return None

    w = search(x, float(x))
    if w is not None:
        return w
    neg = -x
    w = search(neg, float(neg))
    if w is not None:
        return "-" + w
    return None


def evaluate_witness(nf, witness: str) -> FieldElement:
    """Re-evaluate a witness digit string back into Q(rho)."""
    sign = -1 if witness.startswith("-") else 1
    digits = witness.lstrip("-")
    rho = nf.rho()
    acc = nf.zero()
    for ch in digits:
        acc = acc * rho + nf.from_rational(int(ch))
    return acc * sign


def silver_identity_check(b: SilverIndex, rounds=3) -> bool:
    """Verify 1 = (0 . b_1 .. b_N)_rho exactly, plus the chain obtained by
    substituting the identity into its own last set digit."""
    nf = field_for(b)
    rho_inv = nf.rho().inverse()

    def eval_digits(digits):
        acc = nf.zero()
        p = nf.one()
        for d in digits:
            p = p * rho_inv
            acc = acc + d * p
        return acc

    one = nf.one()
    digits = list(b.bits)
    if eval_digits(digits).coeffs != one.coeffs:
        return False
    for _ in range(rounds):
        # replace the trailing 1 at position k by the identity shifted to
        # positions k+1 .. k+N
        k = len(digits)
        digits = digits[:-1] + [0] + [0] * (k - len(digits))
        digits = digits + [0] * (k + b.degree - len(digits))
        for j, bit in enumerate(b.bits, start=1):
            digits[k - 1 + j] += bit
        if any(d not in (0, 1) for d in digits):
            return False
        if eval_digits(digits).coeffs != one.coeffs:
            return False
    return True


def lattice_multiplier(tau: complex, rho: complex, bound=1000):
    """Find the integer matrix A with rho*1 = c*tau + d and
    rho*tau = a*tau + b, if one exists with entries within the bound.
    Returns [[a, b], [c, d]] or None."""
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    # rho = c tau + d  and  rho tau = a tau + b are two real 2x2 systems
    def solve(z):
        # z = p*tau + q  =>  p = Im z / Im tau, q = Re z - p Re tau
        p = z.imag / tau.imag
        q = z.real - p * tau.real
        return p, q

    c, d = solve(rho)
    a, bq = solve(rho * tau)
    entries = [a, bq, c, d]
    ints = [round(v) for v in entries]
    if any(abs(v - iv) > 1e-9 for v, iv in zip(entries, ints)):
        return None
    if any(abs(iv) > bound for iv in ints):
        return None
    a, bq, c, d = ints
    det = a * d - bq * c
    trace = a + d
    if abs(rho * rho - trace * rho + det) > 1e-9:
        return None
    return [[a, bq], [c, d]]


def recurrence_sequence(b: SilverIndex, n: int):
    """a_k = sum_j b_j a_{k-j}, seeded by the tile counts of U's powers
    applied to the all-ones vector (the last component, the count for the
    smallest type, gives the classical sequence)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    from .rules import build_1d_silver_rule

    rule = build_1d_silver_rule(b)
    u = rule.partition_matrix()
    vec = tuple([1] * u.size)
    out = []
    for _ in range(n):
        out.append(vec[-1])
        vec = u.apply(vec)
    return out
