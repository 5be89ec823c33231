"""Invariants of an irreducible plane curve singularity from its Newton pairs.

The characteristic polynomial of the monodromy is carried in two forms: as a
product of binomial factors prod (1 - t^m)^e (never expanded until needed),
and as a dense integer polynomial.  The first form feeds the suspension
computations, the second the coefficient-level checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InternalInconsistency, InvalidNewtonPairs, PreconditionViolated
from .exact_core import Fr, IntLaurentPolynomial, second_derivative_at_1


@dataclass(frozen=True)
class NewtonPairs:
    """Nonempty list of coprime pairs (p_k, q_k) with p_k >= 2 and q_k >= 2."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.pairs:
            raise InvalidNewtonPairs("at least one Newton pair is required")
        for k, (p, q) in enumerate(self.pairs, start=1):
            if p < 2:
                raise InvalidNewtonPairs(f"pair {k}: p must be >= 2, got {p}")
            if q < 2:
                raise InvalidNewtonPairs(
                    f"pair {k}: q must be >= 2, got {q} (q = 1 is not supported)")
            if math.gcd(p, q) != 1:
                raise InvalidNewtonPairs(f"pair {k}: gcd({p}, {q}) != 1")

    @staticmethod
    def parse(text: str) -> "NewtonPairs":
        """Parse the CLI syntax "p1:q1,p2:q2,...". """
        pairs = []
        for chunk in text.split(","):
            piece = chunk.strip().split(":")
            if len(piece) != 2:
                raise InvalidNewtonPairs(f"cannot parse Newton pair {chunk!r}")
            try:
                pairs.append((int(piece[0]), int(piece[1])))
            except ValueError:
                raise InvalidNewtonPairs(f"cannot parse Newton pair {chunk!r}") from None
        return NewtonPairs(tuple(pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def __str__(self) -> str:
        return ",".join(f"{p}:{q}" for p, q in self.pairs)


def a_sequence(np: NewtonPairs) -> tuple[int, ...]:
    """The integers a_k: a_1 = q_1 and a_{k+1} = q_{k+1} + p_{k+1} p_k a_k."""
    out = []
    for k, (p, q) in enumerate(np.pairs):
        if k == 0:
            out.append(q)
        else:
            out.append(q + p * np.pairs[k - 1][0] * out[-1])
    return tuple(out)


@dataclass(frozen=True)
class CurveInvariants:
    a_sequence: tuple[int, ...]
    weights: dict[str, int]
    semigroup_generators: tuple[int, ...]


def derive_curve_invariants(np: NewtonPairs) -> CurveInvariants:
    """Splice weights and semigroup generators of the knot of the curve.

    Weight keys are "v<k>" for the node vertices and "vbar<k>" (k = 0..s)
    for the leaf vertices; the semigroup generators are the leaf weights.
    """
    a = a_sequence(np)
    s = len(np)
    for k, (p, _) in enumerate(np.pairs):
        if math.gcd(p, a[k]) != 1:
            raise InternalInconsistency(f"gcd(p_{k+1}, a_{k+1}) != 1")
    prods = [1] * (s + 1)  # prods[k] = p_{k+1} * ... * p_s
    for k in range(s - 1, -1, -1):
        prods[k] = np.pairs[k][0] * prods[k + 1]
    weights: dict[str, int] = {"vbar0": prods[0]}
    for k in range(1, s + 1):
        weights[f"v{k}"] = a[k - 1] * np.pairs[k - 1][0] * prods[k]
        weights[f"vbar{k}"] = a[k - 1] * prods[k]
    degrees = _alexander_degrees(np)
    for l in range(2, s + 1):
        if not a[l - 1] > np.pairs[l - 1][0] * degrees[l - 2]:
            raise InternalInconsistency(f"gap inequality fails at level {l}")
    gens = tuple(weights[f"vbar{k}"] for k in range(s + 1))
    return CurveInvariants(a, weights, gens)


def _alexander_degrees(np: NewtonPairs) -> tuple[int, ...]:
    """deg Delta(f_(l)) for l = 1..s, via the recursion on Newton pairs."""
    a = a_sequence(np)
    out = []
    deg = 0
    for k, (p, _) in enumerate(np.pairs):
        deg = (p - 1) * (a[k] - 1) + p * deg
        out.append(deg)
    return tuple(out)


def alexander_degree(np: NewtonPairs) -> int:
    """deg Delta(f) without expanding anything."""
    return _alexander_degrees(np)[-1]


# --- the characteristic polynomial, in factored and expanded form ---------

def alexander_factors(np: NewtonPairs, level: int | None = None) -> tuple[tuple[int, int], ...]:
    """Delta(f_(level)) as a list of factors (m, e) meaning prod (1-t^m)^e."""
    s = len(np)
    if level is None:
        level = s
    if not 1 <= level <= s:
        raise PreconditionViolated(f"level must be in 1..{s}")
    a = a_sequence(np)
    factors: list[tuple[int, int]] = []
    for l in range(1, level + 1):
        p = np.pairs[l - 1][0]
        al = a[l - 1]
        factors = [(m * p, e) for m, e in factors]
        factors += [(p * al, 1), (1, 1), (p, -1), (al, -1)]
    return tuple(factors)


def expand_factor_product(factors: Sequence[tuple[int, int]]) -> IntLaurentPolynomial:
    """Expand prod (1 - t^m)^e into a dense integer polynomial.

    All the negative powers must divide exactly; a failed division signals a
    broken factor list.
    """
    num = [1]
    for m, e in factors:
        for _ in range(max(e, 0)):
            # multiply by (1 - t^m)
            out = num + [0] * m
            for i, c in enumerate(num):
                if c:
                    out[i + m] -= c
            num = out
    for m, e in factors:
        for _ in range(max(-e, 0)):
            # divide by (1 - t^m): q_i = p_i + q_{i-m}, top m coefficients
            # of p must then cancel exactly
            if len(num) <= m:
                if any(num):
                    raise InternalInconsistency("inexact division in factor product")
                num = []
                continue
            q = [0] * (len(num) - m)
            for i in range(len(q)):
                q[i] = num[i] + (q[i - m] if i >= m else 0)
            for i in range(len(num) - m, len(num)):
                if num[i] + (q[i - m] if i - m >= 0 else 0) != 0:
                    raise InternalInconsistency("inexact division in factor product")
            num = q
    return IntLaurentPolynomial.from_coeffs(0, num)


def factor_product_value_at_1(factors: Sequence[tuple[int, int]]) -> Fraction:
    """lim_{t->1} prod (1-t^m)^e when the vanishing orders cancel."""
    if sum(e for _, e in factors) != 0:
        raise InternalInconsistency("factor product vanishes or blows up at t = 1")
    num = 1
    den = 1
    for m, e in factors:
        if e > 0:
            num *= m ** e
        elif e < 0:
            den *= m ** (-e)
    return Fr(num, den)


def factor_product_log_derivatives(factors: Sequence[tuple[int, int]]) -> tuple[Fraction, Fraction]:
    """(L'(1), L''(1)) for L = log prod (1-t^m)^e, orders cancelling.

    Uses (1-t^m) = -(t-1) * (m + m(m-1)/2 (t-1) + m(m-1)(m-2)/6 (t-1)^2 + ...)
    so the log expands in u = t-1 with the singular parts cancelling.
    """
    if sum(e for _, e in factors) != 0:
        raise InternalInconsistency("factor product vanishes or blows up at t = 1")
    c1_doubled = 0       # 2 c1, an integer
    c2_doubled_x12 = 0   # 24 c2 = 12 L''(1)
    for m, e in factors:
        # log(m + m(m-1)/2 u + m(m-1)(m-2)/6 u^2) to order u^2:
        # b1 = (m-1)/2, coefficient of u^2 is b2 - b1^2/2 with
        # b2 = (m-1)(m-2)/6, so 24 (b2 - b1^2/2) = 4(m-1)(m-2) - 3(m-1)^2
        c1_doubled += e * (m - 1)
        c2_doubled_x12 += e * ((m - 1) * (4 * (m - 2) - 3 * (m - 1)))
    return Fr(c1_doubled, 2), Fr(c2_doubled_x12, 12)


@dataclass(frozen=True)
class AlexanderData:
    """Delta as an honest polynomial (Delta(0) = 1), with its symmetric data.

    half_degree r satisfies deg Delta = 2r, and the c-coefficients describe
    t^(-r) Delta = 1 + sum c_i (t^i + t^(-i) - 2).
    """

    delta: IntLaurentPolynomial
    half_degree: int
    c_coefficients: tuple[int, ...]

    @staticmethod
    def from_polynomial(delta: IntLaurentPolynomial) -> "AlexanderData":
        if delta.is_zero or delta.low != 0:
            raise PreconditionViolated("Delta must be an ordinary polynomial")
        if delta(1) != 1:
            raise PreconditionViolated("Delta(1) must be 1")
        deg = delta.degree_high
        if deg % 2:
            raise PreconditionViolated("deg Delta must be even")
        r = deg // 2
        sym = delta.shifted(-r)
        if not sym.is_symmetric():
            raise PreconditionViolated("Delta must be symmetric")
        c = tuple(sym.coefficient(i) for i in range(1, r + 1))
        if sym.coefficient(0) != 1 - 2 * sum(c):
            raise InternalInconsistency("c-coefficients do not reconstruct Delta")
        return AlexanderData(delta, r, c)

    @property
    def symmetric_form(self) -> IntLaurentPolynomial:
        return self.delta.shifted(-self.half_degree)


def alexander_polynomial(np: NewtonPairs) -> AlexanderData:
    """The characteristic polynomial of the curve monodromy, expanded.

    Checks Delta(0) = Delta(1) = 1, even degree, and the gap inequality at
    every level; any failure is an internal bug, not a user error.
    """
    derive_curve_invariants(np)  # validates the gap inequality
    factors = alexander_factors(np)
    delta = expand_factor_product(factors)
    if delta.coefficient(0) != 1:
        raise InternalInconsistency("Delta(0) != 1")
    if delta(1) != 1:
        raise InternalInconsistency("Delta(1) != 1")
    return AlexanderData.from_polynomial(delta)


def is_alternating(coeffs: Sequence[int]) -> bool:
    """True iff values lie in {-1, 0, 1} and each nonzero c_i is (-1)^(number
    of nonzero entries strictly after i)."""
    if any(c not in (-1, 0, 1) for c in coeffs):
        return False
    nonzero_after = 0
    for c in reversed(coeffs):
        if c != 0:
            if c != (1 if nonzero_after % 2 == 0 else -1):
                return False
            nonzero_after += 1
    return True


def d_invariant(c: Sequence[int]) -> int:
    """sum_{i,j} c_i c_j min(i,j) - sum_i i c_i (1-based indices).

    The double sum collapses through min(i,j) = #{k : k <= i and k <= j}
    into a sum of squared suffix sums, so the evaluation is linear.
    """
    total = 0
    suffix = 0
    for i in range(len(c) - 1, -1, -1):
        ci = c[i]
        suffix += ci
        total += suffix * suffix - (i + 1) * ci
    return total


def semigroup_series_check(np: NewtonPairs, degree_bound: int,
                           data: "AlexanderData | None" = None) -> bool:
    """Does the series of Delta/(1-t) match the numerical semigroup?

    The coefficient of t^j in Delta/(1-t) must be exactly 1 when j is in the
    semigroup generated by the leaf weights and 0 otherwise, for all
    j <= degree_bound.
    """
    if data is None:
        data = alexander_polynomial(np)
    if degree_bound < 3 * data.half_degree:
        raise PreconditionViolated(
            f"degree_bound must be at least 3r = {3 * data.half_degree}")
    gens = derive_curve_invariants(np).semigroup_generators
    member = [False] * (degree_bound + 1)
    member[0] = True
    for g in gens:
        for j in range(g, degree_bound + 1):
            if member[j - g]:
                member[j] = True
    prefix = 0
    for j in range(degree_bound + 1):
        prefix += data.delta.coefficient(j)
        if prefix != (1 if member[j] else 0):
            return False
    return True


def curve_second_derivative(np: NewtonPairs, level: int) -> Fraction:
    """(t^(-r) Delta(f_(level)))'' at t = 1 via the level recursion."""
    s = len(np)
    if not 1 <= level <= s:
        raise PreconditionViolated(f"level must be in 1..{s}")
    a = a_sequence(np)
    val = Fr(0)
    for l in range(1, level + 1):
        p = np.pairs[l - 1][0]
        val = Fr((a[l - 1] ** 2 - 1) * (p ** 2 - 1), 12) + p * p * val
    return val


def curve_second_derivative_direct(np: NewtonPairs, level: int) -> Fraction:
    """Same value from the expanded polynomial; the independent route."""
    factors = alexander_factors(np, level)
    delta = expand_factor_product(factors)
    r = delta.degree_high // 2
    return Fr(second_derivative_at_1(delta.shifted(-r)))
