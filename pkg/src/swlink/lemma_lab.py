"""Exact verifiers for the root-of-unity summation identities.

Identities of rational functions are certified by exact evaluation at
integer points beyond the cross-multiplied degree bounds; the sums over
roots of unity are performed in exact cyclotomic arithmetic, carried as
integer vectors over the group ring Z[Z_a].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvalidInput,
    PoleAtSamplePoint,
    PreconditionViolated,
    WorkBoundExceeded,
)
from .exact_core import (
    CyclotomicNumber,
    Fr,
    IntLaurentPolynomial,
    eval_at_root_of_unity,
    first_derivative_at_1,
    rationalize,
    second_derivative_at_1,
)


@dataclass(frozen=True)
class LemmaInstance:
    """One identity instance: a polynomial, the root order a, and the mode.

    Mode "A" verifies the two-variable identity (the second variable is the
    free scaling of the conjugate slot); mode "B" the d-fold constrained sum
    with twist exponent k.
    """

    delta: IntLaurentPolynomial
    a: int
    mode: str
    d: int = 2
    k: int = 1


def _group_conv(u: list[int], v: list[int], a: int) -> list[int]:
    out = [0] * a
    for i, x in enumerate(u):
        if x:
            for j, y in enumerate(v):
                if y:
                    out[(i + j) % a] += x * y
    return out


def _delta_vector(delta: IntLaurentPolynomial, t0: int, a: int,
                  conj: bool) -> list[int]:
    """Group-ring vector representing xi -> Delta(xi t0) (or Delta(conj(xi) t0))."""
    out = [0] * a
    for i, c in enumerate(delta.coeffs):
        if c:
            e = delta.low + i
            if e < 0:
                raise InvalidInput("ordinary polynomial required")
            idx = (-e if conj else e) % a
            out[idx] += c * t0 ** e
    return out


def _geom_vector(t0: int, a: int, conj: bool) -> list[int]:
    """xi -> (1 - t0^a) / (1 - xi t0) = sum_u xi^u t0^u (conjugated variant)."""
    out = [0] * a
    for u in range(a):
        idx = (-u if conj else u) % a
        out[idx] += t0 ** u
    return out


def check_lemma_a(inst: LemmaInstance) -> bool:
    """Verify the averaging identity

        (1/a) sum_{xi^a=1} Delta(xi t)/(1 - xi t) * Delta(conj(xi) A t)/(1 - conj(xi) A t)
          = (1 - A^a t^{2a}) Delta(A t^2) / ((1 - t^a)(1 - A^a t^a)(1 - A t^2))

    as a bivariate rational-function identity, by exact evaluation on an
    integer grid exceeding the cross-multiplied degree bounds.
    """
    if inst.mode != "A":
        raise PreconditionViolated("instance mode must be A")
    delta, a = inst.delta, inst.a
    if a < 1:
        raise PreconditionViolated("a must be positive")
    deg = 0 if delta.is_zero else delta.degree_high
    dt = 2 * deg + 2 * a + 1
    da = deg + a + 1
    for t0, a0 in _grid_points(dt + 1, da + 1):
        # sum over xi of Delta(xi t) Delta(conj xi A t) G(xi) Gbar(xi)
        # equals a * (coefficient of the identity element) of the group-ring
        # product of the four factor vectors.
        u1 = _delta_vector(delta, t0, a, conj=False)
        u2 = _delta_vector(delta, a0 * t0, a, conj=True)
        g1 = _geom_vector(t0, a, conj=False)
        g2 = _geom_vector(a0 * t0, a, conj=True)
        prod = _group_conv(_group_conv(u1, u2, a), _group_conv(g1, g2, a), a)
        lhs_cleared = a * prod[0]  # the xi-sum, denominators cleared
        lhs = lhs_cleared * (1 - a0 * t0 * t0)
        rhs = a * (1 - a0 ** a * t0 ** (2 * a)) * int(delta(a0 * t0 * t0))
        if lhs != rhs:
            return False
    return True


def check_lemma_b(inst: LemmaInstance, work_bound: int = 100_000) -> bool:
    """Verify the constrained multi-slot identity

        (1/a^{d-1}) sum_{xi_1 ... xi_d = 1} prod_{i<d} Delta(xi_i t)/(1 - xi_i t)
                                            * Delta(xi_d t^k)/(1 - xi_d t^k)
          = (1 - t^{a(d+k-1)}) Delta(t^{d+k-1})
            / ((1 - t^a)^{d-1} (1 - t^{ak})(1 - t^{d+k-1}))

    by brute-force tuple enumeration at integer points past the degree bound.
    """
    if inst.mode != "B":
        raise PreconditionViolated("instance mode must be B")
    delta, a, d, k = inst.delta, inst.a, inst.d, inst.k
    if d < 2 or k < 1 or a < 1:
        raise PreconditionViolated("need d >= 2, k >= 1, a >= 1")
    if a ** (d - 1) > work_bound:
        raise WorkBoundExceeded(f"{a ** (d - 1)} tuples exceed the bound {work_bound}")
    deg = 0 if delta.is_zero else delta.degree_high
    bound = (d + k - 1) * (deg + a) + d + k
    for (t0,) in _grid_points(bound + 1):
        tk = t0 ** k
        plain = _group_conv(_delta_vector(delta, t0, a, False),
                            _geom_vector(t0, a, False), a)
        twist = _group_conv(_delta_vector(delta, tk, a, False),
                            _geom_vector(tk, a, False), a)
        # slot value at xi = zeta^c is the group-ring element evaluated at
        # zeta^c; tabulate per c, then enumerate the constrained tuples.
        plain_val = [_eval_group_vector(plain, c, a) for c in range(a)]
        twist_val = [_eval_group_vector(twist, c, a) for c in range(a)]
        total = CyclotomicNumber.zero(a)
        for combo in _constrained_tuples(a, d):
            term = twist_val[combo[-1]]
            for c in combo[:-1]:
                term = term * plain_val[c]
            total = total + term
        lhs = rationalize(total) * (1 - t0 ** (d + k - 1))
        rhs = (a ** (d - 1) * (1 - t0 ** (a * (d + k - 1)))
               * delta(t0 ** (d + k - 1)))
        if lhs != rhs:
            return False
    return True


def _constrained_tuples(a: int, d: int):
    from itertools import product as iter_product
    for free in iter_product(range(a), repeat=d - 1):
        yield free + ((-sum(free)) % a,)


def _eval_group_vector(vec: list[int], c: int, a: int) -> CyclotomicNumber:
    total = CyclotomicNumber.zero(a)
    for m, x in enumerate(vec):
        if x:
            total = total + x * CyclotomicNumber.root_of_unity(Fr(m * c, a))
    return total


def _grid_points(*counts: int):
    """Deterministic integer grid starting at 2 on every axis.

    Every identity here is checked in cross-multiplied polynomial form, and
    every pole of the original rational form lies on |t| = 1 or at binomial
    roots, none of which contain integers >= 2, so no resampling is ever
    needed; PoleAtSamplePoint guards the impossible fallthrough.
    """
    from itertools import product as iter_product
    axes = [range(2, 2 + c) for c in counts]
    if any(c < 1 for c in counts):
        raise PoleAtSamplePoint("sample space exhausted")
    yield from iter_product(*axes)


@dataclass(frozen=True)
class SumIdentityReport:
    basic_sum_holds: bool          # sum 1/((xi-1)(conj xi-1)) = (a^2-1)/12
    derivative_form_holds: bool | None
    symmetric_form_holds: bool | None
    xi_sum: Fraction


def check_sum_identities(a: int, delta: IntLaurentPolynomial | None = None) -> SumIdentityReport:
    """Evaluate the closed forms of the quadratic character sums exactly.

    The basic sum runs over the nontrivial a-th roots of unity.  With a
    polynomial supplied (alternating, Delta(1) = 1, a >= deg) the first
    derivative form is checked, and additionally the symmetric second
    derivative form when the polynomial is symmetric under t -> 1/t about
    its half degree.
    """
    if a < 1:
        raise PreconditionViolated("a must be positive")
    basic = CyclotomicNumber.zero(a if a > 1 else 1)
    for c in range(1, a):
        xi = CyclotomicNumber.root_of_unity(Fr(c, a))
        basic = basic + ((xi - 1) * (xi.conjugate() - 1)).inverse()
    basic_val = rationalize(basic) if a > 1 else Fr(0)
    basic_ok = basic_val == Fr(a * a - 1, 12)
    if delta is None:
        return SumIdentityReport(basic_ok, None, None, basic_val)

    if delta(1) != 1:
        raise PreconditionViolated("Delta(1) must be 1")
    deg = 0 if delta.is_zero else delta.degree_high - delta.degree_low
    if a < deg:
        raise PreconditionViolated("need a >= deg Delta")
    total = CyclotomicNumber.zero(a if a > 1 else 1)
    for c in range(1, a):
        xi = CyclotomicNumber.root_of_unity(Fr(c, a))
        dv = eval_at_root_of_unity(delta, Fr(c, a))
        dvc = eval_at_root_of_unity(delta, Fr(a - c, a))
        total = total + dv * dvc * ((1 - xi) * (1 - xi.conjugate())).inverse()
    xi_sum = rationalize(total) if a > 1 else Fr(0)
    d1 = Fr(first_derivative_at_1(delta))
    d2 = Fr(second_derivative_at_1(delta))
    deriv_ok = xi_sum / a == Fr(a * a - 1, 12 * a) + (d1 - d1 * d1 + d2) / a
    symmetric_ok = None
    if delta.low == 0 and delta.degree_high % 2 == 0:
        r = delta.degree_high // 2
        sym = delta.shifted(-r)
        if sym.is_symmetric():
            symmetric_ok = xi_sum == Fr(a * a - 1, 12) + second_derivative_at_1(sym)
    return SumIdentityReport(basic_ok, deriv_ok, symmetric_ok, xi_sum)
