"""The Brieskorn building block: Seifert data and closed-form invariants.

The signature comes from an independent lattice-point count and everything
else (torsion at the identity, the modified invariant, Casson-Walker) from
closed forms, so the two computation routes in the tower modules never share
a formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import InternalInconsistency, InvalidInput, NotRationalHomologySphere
from .exact_core import Fr


@dataclass(frozen=True)
class BrieskornData:
    """Validated record for the link of x^p + y^a + z^m."""

    p: int
    a: int
    m: int
    d: int                    # gcd(m, p)
    d_tilde: int              # gcd(m, a)
    orbifold_e: Fraction
    h1_order: int
    sigma: int
    torsion_at_1: Fraction
    sw0: Fraction
    lambda_w: Fraction


@lru_cache(maxsize=None)
def brieskorn_data(p: int, a: int, m: int) -> BrieskornData:
    if p < 1 or a < 1 or m < 1:
        raise InvalidInput("exponents must be positive")
    if math.gcd(p, a) != 1:
        raise InvalidInput(f"gcd(p, a) = gcd({p}, {a}) != 1")
    d = math.gcd(m, p)
    dt = math.gcd(m, a)
    if (d - 1) * (dt - 1) != 0:
        raise NotRationalHomologySphere(
            f"(gcd(m,p)-1)(gcd(m,a)-1) = {(d - 1) * (dt - 1)} != 0")
    h1 = a ** (d - 1) if dt == 1 else p ** (dt - 1)
    sigma = brieskorn_signature(p, a, m)
    torsion = torsion_closed_form(p, a, m)
    sw0 = Fr(-sigma, 8)
    lam = 2 * (torsion - sw0)
    return BrieskornData(p, a, m, d, dt, Fr(-d * d, m * p * a), h1,
                         sigma, torsion, sw0, lam)


def torsion_closed_form(p: int, a: int, m: int) -> Fraction:
    """Torsion at the identity: m p (d-1)(a^2-1) / (24 d a) when gcd(m,a)=1,
    and the p <-> a mirrored form when gcd(m,p)=1."""
    d = math.gcd(m, p)
    dt = math.gcd(m, a)
    if (d - 1) * (dt - 1) != 0:
        raise NotRationalHomologySphere("not a rational homology sphere")
    if dt == 1:
        return Fr(m * p * (d - 1) * (a * a - 1), 24 * d * a)
    return Fr(m * a * (dt - 1) * (p * p - 1), 24 * dt * p)


def brieskorn_signature(p: int, a: int, m: int) -> int:
    """Signature of the Milnor fiber of x^p + y^a + z^m.

    Equals the sum over the open lattice box 0<i<p, 0<j<a, 0<k<m of +1 when
    i/p + j/a + k/m mod 2 lies in (0,1) and -1 when it lies in (1,2).  The
    count over the largest axis is done per cell of the two smaller axes by
    interval arithmetic, which is the same sum reorganized;
    ``brieskorn_signature_bruteforce`` keeps the literal loop.
    """
    if p < 1 or a < 1 or m < 1:
        raise InvalidInput("exponents must be positive")
    return _signature_sorted(tuple(sorted((p, a, m))))


@lru_cache(maxsize=None)
def _signature_sorted(triple: tuple[int, int, int]) -> int:
    p, m, a = triple  # a is the largest axis, counted by intervals
    if p == 1:
        return 0
    total = 0
    pm = p * m
    for i in range(1, p):
        for k in range(1, m):
            # c = i/p + k/m = x / pm; floor(c + j/a) takes two values on
            # 0 < j < a, split at T = a (f0 + 1 - c)
            x = i * m + k * p
            f0 = (x * a + pm) // (pm * a)
            t_num = a * (f0 + 1) * pm - a * x  # T = t_num / pm
            if t_num % pm == 0 and 1 <= t_num // pm <= a - 1:
                raise InternalInconsistency("integer lattice value in signature count")
            ceil_t = -((-t_num) // pm)
            n_low = max(0, min(a - 1, ceil_t - 1))
            n_high = (a - 1) - n_low
            total += n_low if f0 % 2 == 0 else -n_low
            total += n_high if (f0 + 1) % 2 == 0 else -n_high
    return total


def brieskorn_signature_bruteforce(p: int, a: int, m: int) -> int:
    """The defining triple sum, kept as the test oracle."""
    total = 0
    for i in range(1, p):
        for j in range(1, a):
            for k in range(1, m):
                x = Fr(i, p) + Fr(j, a) + Fr(k, m)
                frac2 = x % 2
                if frac2 == 0 or frac2 == 1:
                    raise InternalInconsistency("integer lattice value")
                total += 1 if frac2 < 1 else -1
    return total


def milnor_number(p: int, a: int, m: int) -> int:
    """(p-1)(a-1)(m-1), the rank of the middle homology of the Milnor fiber."""
    return (p - 1) * (a - 1) * (m - 1)


def sw0_and_casson_walker(data: BrieskornData) -> tuple[Fraction, Fraction]:
    """(sw0, lambda_W) with sw0 = -sigma/8 and lambda_W = 2 (T(1) - sw0)."""
    return data.sw0, data.lambda_w
