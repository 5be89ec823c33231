"""Splicing and surgery formulas for Casson-Walker, torsion, and the modified
invariant.

This module is a calculator over supplied piece-invariants: it never builds
the spliced manifold.  Side 1 of a splice always carries a homologically
trivial knot with the longitude as parallel; side 2 carries the pair
(order, longitude defect) = (o2, k2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    CasePreconditionViolated,
    ModePreconditionViolated,
    PreconditionViolated,
    ZeroSurgeryCoefficient,
)
from .exact_core import (
    CyclotomicNumber,
    Fr,
    IntLaurentPolynomial,
    dedekind_sum,
    eval_at_root_of_unity,
    rationalize,
    second_derivative_at_1,
)
from .plane_curve import AlexanderData, d_invariant


@dataclass(frozen=True)
class SpliceSide:
    """Invariants of one splice side.

    ``alexander_scaled`` is |H1| times the symmetric normalized Alexander
    polynomial (i.e. the Lescop normalization), so it stays integral; it is
    only needed on side 1.
    """

    lambda_w: Fraction
    torsion_at_1: Fraction
    h1_order: int = 1
    o2: int = 1
    k2: int = 0
    alexander_scaled: IntLaurentPolynomial | None = None

    def alexander_natural_second_derivative(self) -> Fraction:
        if self.alexander_scaled is None:
            return Fr(0)
        return Fr(second_derivative_at_1(self.alexander_scaled), self.h1_order)


def splice_casson_walker(side1: SpliceSide, side2: SpliceSide) -> Fraction:
    """lambda_W of the splice: additivity plus (k2/o2) * (Delta_1^nat)''(1)."""
    if side2.o2 < 1:
        raise PreconditionViolated("o2 must be >= 1")
    return (side1.lambda_w + side2.lambda_w
            + Fr(side2.k2, side2.o2) * side1.alexander_natural_second_derivative())


def surgery_correction(p: int, q: int, delta_l_second: Fraction,
                       h1: int) -> Fraction:
    """Casson-Walker correction of a p/q surgery along a null-homologous knot.

    delta_l_second is the second derivative at 1 of the Lescop-normalized
    Alexander polynomial; h1 the order of H1 of the ambient manifold.  The
    Dedekind sum with a negative second argument is read as s(p, |q|).
    """
    if p <= 0:
        raise PreconditionViolated("p must be positive")
    if q == 0:
        raise ZeroSurgeryCoefficient("q must be nonzero")
    sign = 1 if q > 0 else -1
    return (Fr(q, p) * delta_l_second / h1
            - Fr(p * p + 1 + q * q, 12 * p * q)
            + sign * (Fr(1, 4) + dedekind_sum(p, abs(q))))


def casson_walker_via_fujita(side1: SpliceSide, side2: SpliceSide) -> Fraction:
    """Same splice invariant through the closure surgery and the Dedekind sum:
    lambda_W(M2) + lambda_W(M1(K1, o2/k2)) + s(k2, o2)."""
    o2, k2 = side2.o2, side2.k2
    if k2 == 0:
        return side1.lambda_w + side2.lambda_w
    delta = math.gcd(o2, abs(k2))
    cor = surgery_correction(o2 // delta, k2 // delta,
                             Fr(second_derivative_at_1(side1.alexander_scaled))
                             if side1.alexander_scaled is not None else Fr(0),
                             side1.h1_order)
    return side2.lambda_w + (side1.lambda_w + cor) + dedekind_sum(k2, o2)


def torsion_splice(side1: SpliceSide, side2: SpliceSide, mode: str,
                   character_values: Sequence[tuple[Fraction, CyclotomicNumber]] = ()) -> Fraction:
    """Torsion at the identity of the splice.

    Mode "A" (both knots homologically trivial, both defects zero) is plain
    additivity.  Mode "B" (side 1 an integral homology sphere) sums, over the
    nontrivial characters of side 2, the supplied transform values times the
    side-1 Alexander polynomial evaluated at chi(K2); character_values lists
    (angle of chi(K2), transform value) pairs.
    """
    if mode == "A":
        if side1.o2 != 1 or side1.k2 != 0 or side2.o2 != 1 or side2.k2 != 0:
            raise ModePreconditionViolated("mode A needs o = 1 and k = 0 on both sides")
        return side1.torsion_at_1 + side2.torsion_at_1
    if mode != "B":
        raise ModePreconditionViolated(f"unknown mode {mode!r}")
    if side1.h1_order != 1:
        raise ModePreconditionViolated("mode B needs side 1 with trivial H1")
    if side1.alexander_scaled is None:
        raise ModePreconditionViolated("mode B needs the side-1 Alexander polynomial")
    r = side1.alexander_scaled.degree_high  # symmetric: ordinary delta is t^r * it
    delta1 = side1.alexander_scaled.shifted(r)
    total = CyclotomicNumber.from_rational(0)
    for angle, transform in character_values:
        total = total + transform * eval_at_root_of_unity(delta1, angle)
    return rationalize(total) / side2.h1_order


@dataclass(frozen=True)
class ObstructionReport:
    o_lambda: Fraction
    o_torsion: Fraction
    o_sw: Fraction
    d_a: Fraction


def obstruction_and_da(n: int, p: int, a: int, d: int,
                       delta1: AlexanderData) -> ObstructionReport:
    """Non-additivity obstructions when d identical integral-homology-sphere
    pieces are spliced onto the special fibers of a Brieskorn piece.

    D_a is computed both as the character sum over the a-th roots of unity
    and, when a >= 2r, as 2a * D(c); the two must agree.
    """
    if a < 1 or d < 1:
        raise PreconditionViolated("need a >= 1, d >= 1")
    ddot = Fr(second_derivative_at_1(delta1.symmetric_form))
    o_lambda = Fr(n * p * (d - 1), a * d * d) * d * ddot
    # Character sum: sum over nontrivial a-th roots of
    # (Delta(xi) Delta(conj xi) - 1) / ((xi - 1)(conj xi - 1)).
    total = CyclotomicNumber.from_rational(0)
    for c in range(1, a):
        xi = CyclotomicNumber.root_of_unity(Fr(c, a))
        dv = eval_at_root_of_unity(delta1.delta, Fr(c, a))
        dvc = eval_at_root_of_unity(delta1.delta, Fr(a - c, a))
        total = total + (dv * dvc - 1) / ((xi - 1) * (xi.conjugate() - 1))
    xi_sum = rationalize(total)
    o_torsion = Fr(n * p * (d - 1), 2 * a * d) * xi_sum
    d_a = xi_sum - ddot
    o_sw = Fr(n * p * (d - 1), 2 * a * d) * d_a
    if a >= 2 * delta1.half_degree:
        reduced = 2 * a * d_invariant(delta1.c_coefficients)
        if d_a != reduced:
            raise PreconditionViolated(
                f"D_a = {d_a} but 2a D(c) = {reduced}; the a >= 2r reduction failed")
    return ObstructionReport(o_lambda, o_torsion, o_sw, d_a)


def cyclic_cover_sw(n: int, p: int, a: int, sw0_m1: Fraction,
                    sw0_sigma: Fraction, delta1: AlexanderData | None = None,
                    h1_m1: int = 1) -> Fraction:
    """Modified invariant of the branched cyclic cover built from a piece
    with invariant sw0_m1 and the Brieskorn piece with invariant sw0_sigma.

    With d = gcd(n, p): d = 1 gives the plain sum; otherwise gcd(n, a) = 1,
    a at least deg Delta and a trivial H1 on the piece are required and the
    correction n p (d-1)/d * D(c) is added.
    """
    d = math.gcd(n, p)
    if (d - 1) * (math.gcd(n, a) - 1) != 0:
        raise CasePreconditionViolated(
            "(gcd(n,p)-1)(gcd(n,a)-1) != 0: the cover is not a rational homology sphere")
    if d == 1:
        return sw0_m1 + sw0_sigma
    if h1_m1 != 1:
        raise CasePreconditionViolated("the piece must be an integral homology sphere")
    if delta1 is None:
        raise CasePreconditionViolated("the piece Alexander polynomial is required")
    if a < delta1.delta.degree_high:
        raise CasePreconditionViolated("need a >= deg Delta")
    correction = Fr(n * p * (d - 1), d) * d_invariant(delta1.c_coefficients)
    return d * sw0_m1 + sw0_sigma + correction
