"""Exact arithmetic foundation.

Big rationals (``fractions.Fraction``), integer Laurent polynomials, reduced
rational functions, Smith normal form over the integers, Dedekind sums, and
exact cyclotomic field arithmetic.  Everything here is a pure function on
immutable values; there is no floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    DivisionByZeroPolynomial,
    InternalInconsistency,
    InvalidInput,
    NotRational,
)

Fr = Fraction


# ---------------------------------------------------------------------------
# Integer Laurent polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntLaurentPolynomial:
    """Integer-coefficient Laurent polynomial, stored densely.

    ``coeffs[i]`` is the coefficient of ``t**(low + i)``.  The first and last
    entries are nonzero unless the polynomial is zero (empty ``coeffs``).
    """

    low: int
    coeffs: tuple[int, ...]

    @staticmethod
    def from_coeffs(low: int, coeffs: Iterable[int]) -> "IntLaurentPolynomial":
        cs = list(coeffs)
        lo = low
        while cs and cs[0] == 0:
            cs.pop(0)
            lo += 1
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            lo = 0
        return IntLaurentPolynomial(lo, tuple(cs))

    @staticmethod
    def zero() -> "IntLaurentPolynomial":
        return IntLaurentPolynomial(0, ())

    @staticmethod
    def one() -> "IntLaurentPolynomial":
        return IntLaurentPolynomial(0, (1,))

    @staticmethod
    def monomial(exponent: int, coefficient: int = 1) -> "IntLaurentPolynomial":
        if coefficient == 0:
            return IntLaurentPolynomial.zero()
        return IntLaurentPolynomial(exponent, (coefficient,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree_high(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no degree")
        return self.low + len(self.coeffs) - 1

    @property
    def degree_low(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no degree")
        return self.low

    def coefficient(self, exponent: int) -> int:
        i = exponent - self.low
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __add__(self, other):
        other = _as_laurent(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self.low, other.low)
        hi = max(self.low + len(self.coeffs), other.low + len(other.coeffs))
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.low - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.low - lo + i] += c
        return IntLaurentPolynomial.from_coeffs(lo, out)

    def __sub__(self, other):
        return self + (-_as_laurent(other))

    def __neg__(self):
        return IntLaurentPolynomial(self.low, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return IntLaurentPolynomial.zero()
            return IntLaurentPolynomial(self.low, tuple(c * other for c in self.coeffs))
        other = _as_laurent(other)
        if self.is_zero or other.is_zero:
            return IntLaurentPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return IntLaurentPolynomial.from_coeffs(self.low + other.low, out)

    __rmul__ = __mul__
    __radd__ = __add__

    def shifted(self, k: int) -> "IntLaurentPolynomial":
        """Multiply by t**k."""
        if self.is_zero:
            return self
        return IntLaurentPolynomial(self.low + k, self.coeffs)

    def substitute_power(self, k: int) -> "IntLaurentPolynomial":
        """The substitution t -> t**k, k >= 1."""
        if k < 1:
            raise InvalidInput("substitution exponent must be >= 1")
        if self.is_zero or k == 1:
            return self
        out = [0] * ((len(self.coeffs) - 1) * k + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return IntLaurentPolynomial.from_coeffs(self.low * k, out)

    def mirror(self) -> "IntLaurentPolynomial":
        """The substitution t -> 1/t."""
        if self.is_zero:
            return self
        return IntLaurentPolynomial(-(self.low + len(self.coeffs) - 1),
                                    tuple(reversed(self.coeffs)))

    def is_symmetric(self) -> bool:
        return self == self.mirror()

    def __call__(self, x):
        """Exact evaluation at a rational point (nonzero if low < 0)."""
        if self.is_zero:
            return Fr(0)
        x = Fr(x)
        if x == 0:
            if self.low < 0:
                raise ZeroDivisionError("evaluation at 0 with negative exponents")
            return Fr(self.coefficient(0))
        acc = Fr(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc * x ** self.low

    def divide_exact(self, den: "IntLaurentPolynomial") -> "IntLaurentPolynomial":
        """Exact division; raises if the division leaves a remainder or a
        non-integer coefficient."""
        if den.is_zero:
            raise DivisionByZeroPolynomial("division by the zero polynomial")
        if self.is_zero:
            return self
        q, r = _poly_divmod_q([Fr(c) for c in self.coeffs], [Fr(c) for c in den.coeffs])
        if any(r):
            raise InternalInconsistency("inexact polynomial division (nonzero remainder)")
        if any(c.denominator != 1 for c in q):
            raise InternalInconsistency("inexact polynomial division (non-integer quotient)")
        return IntLaurentPolynomial.from_coeffs(self.low - den.low,
                                                [int(c) for c in q])

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            e = self.low + i
            term = "1" if e == 0 else ("t" if e == 1 else f"t^{e}")
            if e != 0 and abs(c) != 1:
                term = f"{abs(c)}*{term}"
            elif e == 0:
                term = str(abs(c))
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append((" + " if c > 0 else " - ") + term)
        return "".join(parts)


def _as_laurent(x) -> IntLaurentPolynomial:
    if isinstance(x, IntLaurentPolynomial):
        return x
    if isinstance(x, int):
        return IntLaurentPolynomial.monomial(0, x)
    raise TypeError(f"cannot coerce {x!r} to IntLaurentPolynomial")


def _poly_divmod_q(num: list[Fraction], den: list[Fraction]):
    """Euclidean division of dense little-endian Fraction polynomials."""
    num = list(num)
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise DivisionByZeroPolynomial("division by zero polynomial")
    dn = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dn:
        return [Fr(0)], num
    q = [Fr(0)] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        f = c / lead
        q[i - dn] = f
        for j in range(dn + 1):
            num[i - dn + j] -= f * den[j]
    while num and num[-1] == 0:
        num.pop()
    return q, num


def _poly_gcd_q(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Monic gcd of dense little-endian Fraction polynomials."""
    a = [Fr(c) for c in a]
    b = [Fr(c) for c in b]
    while b and any(b):
        _, r = _poly_divmod_q(a, b)
        a, b = b, r
    while a and a[-1] == 0:
        a.pop()
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def second_derivative_at_1(p: IntLaurentPolynomial) -> int:
    """d^2 P / dt^2 at t = 1, exact.  For t**e the value is e*(e-1)."""
    total = 0
    for i, c in enumerate(p.coeffs):
        e = p.low + i
        total += c * e * (e - 1)
    return total


def first_derivative_at_1(p: IntLaurentPolynomial) -> int:
    total = 0
    for i, c in enumerate(p.coeffs):
        total += c * (p.low + i)
    return total


# ---------------------------------------------------------------------------
# Rational functions over Q, stored with integer polynomials
# ---------------------------------------------------------------------------

def _content(coeffs: Sequence[int]) -> int:
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
    return g if g else 1


@dataclass(frozen=True)
class RationalFunction:
    """Reduced quotient of two integer Laurent polynomials.

    Normal form: the denominator is an ordinary polynomial (low exponent 0)
    with nonzero constant term, primitive content and positive leading
    coefficient, and gcd(numerator, denominator) is a unit over Q.
    """

    num: IntLaurentPolynomial
    den: IntLaurentPolynomial

    @staticmethod
    def of(num: IntLaurentPolynomial, den: IntLaurentPolynomial) -> "RationalFunction":
        if den.is_zero:
            raise DivisionByZeroPolynomial("rational function with zero denominator")
        if num.is_zero:
            return RationalFunction(IntLaurentPolynomial.zero(), IntLaurentPolynomial.one())
        # Pull the t-power out of the denominator.
        shift = den.low
        den = den.shifted(-shift)
        num = num.shifted(-shift)
        g = _poly_gcd_q([Fr(c) for c in num.coeffs], [Fr(c) for c in den.coeffs])
        if len(g) > 1:
            qn, _ = _poly_divmod_q([Fr(c) for c in num.coeffs], g)
            qd, _ = _poly_divmod_q([Fr(c) for c in den.coeffs], g)
        else:
            qn = [Fr(c) for c in num.coeffs]
            qd = [Fr(c) for c in den.coeffs]
        m = math.lcm(*(c.denominator for c in qn), *(c.denominator for c in qd))
        ncs = [int(c * m) for c in qn]
        dcs = [int(c * m) for c in qd]
        shared = math.gcd(_content(ncs), _content(dcs))
        if dcs[-1] < 0:
            shared = -shared
        ncs = [c // shared for c in ncs]
        dcs = [c // shared for c in dcs]
        return RationalFunction(
            IntLaurentPolynomial.from_coeffs(num.low, ncs),
            IntLaurentPolynomial.from_coeffs(0, dcs),
        )

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction.of(self.num * other.num, self.den * other.den)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction.of(self.num * other.den + other.num * self.den,
                                   self.den * other.den)

    def __call__(self, x) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def is_polynomial(self) -> bool:
        return self.den == IntLaurentPolynomial.one() or (
            len(self.den.coeffs) == 1 and self.den.low == 0)

    def __str__(self) -> str:
        return f"({self.num}) / ({self.den})"


def normalize_rational_function(num: IntLaurentPolynomial,
                                den: IntLaurentPolynomial) -> RationalFunction:
    """Reduced form of num/den; equality of reduced forms is componentwise."""
    return RationalFunction.of(num, den)


# ---------------------------------------------------------------------------
# Dedekind sums
# ---------------------------------------------------------------------------

def dedekind_sum(q: int, p: int) -> Fraction:
    """Classical Dedekind sum s(q, p) = sum_i ((i/p)) ((qi/p)), p >= 1.

    ((x)) = x - floor(x) - 1/2 for x not an integer, and 0 otherwise.  The
    sum is accumulated in scaled integer arithmetic and divided once.
    """
    if p < 1:
        raise InvalidInput("dedekind_sum requires p >= 1")
    q %= p
    total = 0
    for i in range(1, p):
        r = (q * i) % p
        if r:
            total += (2 * i - p) * (2 * r - p)
    return Fr(total, 4 * p * p)


# ---------------------------------------------------------------------------
# Integer matrices and Smith normal form
# ---------------------------------------------------------------------------

def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            c = ai[k]
            if c:
                bk = b[k]
                for j in range(cols):
                    oi[j] += c * bk[j]
    return out


def bareiss_determinant(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ..."""

    u: tuple[tuple[int, ...], ...]
    d: tuple[tuple[int, ...], ...]
    v: tuple[tuple[int, ...], ...]

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d[i][i] for i in range(min(len(self.d), len(self.d[0]) if self.d else 0)))


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form over Z with both transformation matrices.

    Diagonal entries are nonnegative and satisfy the divisibility chain.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    a = [list(r) for r in matrix]
    u = _identity(rows)
    v = _identity(cols)

    def row_op(i, j, f):  # row_i -= f * row_j
        for k in range(cols):
            a[i][k] -= f * a[j][k]
        for k in range(rows):
            u[i][k] -= f * u[j][k]

    def col_op(i, j, f):  # col_i -= f * col_j
        for k in range(rows):
            a[k][i] -= f * a[k][j]
        for k in range(cols):
            v[k][i] -= f * v[k][j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for k in range(rows):
            a[k][i], a[k][j] = a[k][j], a[k][i]
        for k in range(cols):
            v[k][i], v[k][j] = v[k][j], v[k][i]

    t = 0
    while t < min(rows, cols):
        # Find the nonzero entry of least magnitude in the working block.
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = False
        for i in range(t + 1, rows):
            if a[i][t]:
                f = a[i][t] // a[t][t]
                row_op(i, t, f)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if a[t][j]:
                f = a[t][j] // a[t][t]
                col_op(j, t, f)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # Enforce divisibility of every remaining entry by the pivot.
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if a[i][j] % a[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_op(t, bad, -1)
            continue
        t += 1

    for i in range(min(rows, cols)):
        if a[i][i] < 0:
            for k in range(cols):
                a[i][k] = -a[i][k]
            for k in range(rows):
                u[i][k] = -u[i][k]

    snf = SmithDecomposition(tuple(map(tuple, u)), tuple(map(tuple, a)),
                             tuple(map(tuple, v)))
    check = mat_mul(mat_mul([list(r) for r in snf.u], [list(r) for r in matrix]),
                    [list(r) for r in snf.v])
    if [list(r) for r in snf.d] != check:
        raise InternalInconsistency("Smith normal form verification failed")
    return snf


# ---------------------------------------------------------------------------
# Cyclotomic fields Q(zeta_N)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (little-endian) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise InvalidInput("conductor must be positive")
    # x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    num = [Fr(-1)] + [Fr(0)] * (n - 1) + [Fr(1)]
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod_q(num, [Fr(c) for c in cyclotomic_polynomial(d)])
            if any(r):
                raise InternalInconsistency("cyclotomic polynomial division failed")
            num = q
    if any(c.denominator != 1 for c in num):
        raise InternalInconsistency("cyclotomic polynomial has non-integer coefficients")
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def zeta_power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Coordinates of zeta_n**k mod Phi_n for k = 0..n-1 (integer vectors)."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [0] * deg
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        nxt = [0] + cur[:-1]
        top = cur[-1]
        if top:
            for j in range(deg):
                nxt[j] -= top * phi[j]
        cur = nxt
    return tuple(rows)


def euler_phi_degree(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _solve_int_system(aug: list[list[int]], n: int) -> list[Fraction]:
    """Solve the n x n integer system given as an augmented matrix, by
    fraction-free (Bareiss) elimination and exact back-substitution."""
    a = aug
    prev = 1
    perm_sign = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    perm_sign = -perm_sign
                    break
            else:
                raise ZeroDivisionError("singular multiplication matrix")
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    if a[n - 1][n - 1] == 0:
        raise ZeroDivisionError("singular multiplication matrix")
    x = [Fr(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fr(a[i][n])
        for j in range(i + 1, n):
            acc -= a[i][j] * x[j]
        x[i] = acc / a[i][i]
    return x


@dataclass(frozen=True)
class CyclotomicNumber:
    """Exact element of Q(zeta_n), as coordinates in the power basis mod Phi_n."""

    n: int
    coeffs: tuple[Fraction, ...]

    @staticmethod
    def from_rational(x, n: int = 1) -> "CyclotomicNumber":
        deg = euler_phi_degree(n)
        cs = [Fr(0)] * deg
        cs[0] = Fr(x)
        return CyclotomicNumber(n, tuple(cs))

    @staticmethod
    def zero(n: int = 1) -> "CyclotomicNumber":
        return CyclotomicNumber.from_rational(0, n)

    @staticmethod
    def root_of_unity(angle) -> "CyclotomicNumber":
        """exp(2*pi*i*angle) for a rational angle, reduced mod 1."""
        angle = Fr(angle) % 1
        n = angle.denominator
        c = angle.numerator
        table = zeta_power_table(n)
        return CyclotomicNumber(n, tuple(Fr(x) for x in table[c % n]))

    def lift(self, m: int) -> "CyclotomicNumber":
        """Embed into Q(zeta_m) for n | m via zeta_n = zeta_m**(m/n)."""
        if m == self.n:
            return self
        if m % self.n:
            raise InvalidInput("can only lift to a multiple conductor")
        step = m // self.n
        table = zeta_power_table(m)
        deg = euler_phi_degree(m)
        out = [Fr(0)] * deg
        for i, c in enumerate(self.coeffs):
            if c:
                row = table[(i * step) % m]
                for j in range(deg):
                    if row[j]:
                        out[j] += c * row[j]
        return CyclotomicNumber(m, tuple(out))

    def _common(self, other: "CyclotomicNumber"):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(other, self.n)
        if self.n == other.n:
            return self, other
        m = math.lcm(self.n, other.n)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        a, b = self._common(other)
        return CyclotomicNumber(a.n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._common(other)
        return CyclotomicNumber(a.n, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        a, b = self._common(other)
        return CyclotomicNumber(a.n, tuple(y - x for x, y in zip(a.coeffs, b.coeffs)))

    def __neg__(self):
        return CyclotomicNumber(self.n, tuple(-x for x in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fr(other)
            return CyclotomicNumber(self.n, tuple(f * x for x in self.coeffs))
        a, b = self._common(other)
        deg = len(a.coeffs)
        conv = [Fr(0)] * (2 * deg - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        conv[i + j] += x * y
        table = zeta_power_table(a.n)
        out = list(conv[:deg])
        for k in range(deg, len(conv)):
            c = conv[k]
            if c:
                row = table[k % a.n]
                for j in range(deg):
                    if row[j]:
                        out[j] += c * row[j]
        return CyclotomicNumber(a.n, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Field inverse by solving the multiplication-matrix system.

        Clearing denominators and running a fraction-free elimination keeps
        the intermediate integers polynomially bounded, unlike the rational
        Euclid remainder sequence which blows up around degree forty.
        """
        if all(c == 0 for c in self.coeffs):
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        deg = len(self.coeffs)
        scale = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * scale) for c in self.coeffs]
        table = zeta_power_table(self.n)
        # Column j of M is (self * scale) * zeta^j in the power basis.
        m = [[0] * (deg + 1) for _ in range(deg)]
        for j in range(deg):
            for i, c in enumerate(ints):
                if c:
                    row = table[(i + j) % self.n]
                    for k in range(deg):
                        if row[k]:
                            m[k][j] += c * row[k]
        m[0][deg] = 1  # solve M y = e_0
        y = _solve_int_system(m, deg)
        return CyclotomicNumber(self.n, tuple(v * scale for v in y))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fr(other)
            return CyclotomicNumber(self.n, tuple(x / f for x in self.coeffs))
        a, b = self._common(other)
        return a * b.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber.from_rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugation zeta -> zeta**(-1)."""
        table = zeta_power_table(self.n)
        deg = len(self.coeffs)
        out = [Fr(0)] * deg
        for i, c in enumerate(self.coeffs):
            if c:
                row = table[(-i) % self.n]
                for j in range(deg):
                    if row[j]:
                        out[j] += c * row[j]
        return CyclotomicNumber(self.n, tuple(out))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(other, self.n)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __repr__(self):
        return f"CyclotomicNumber(n={self.n}, coeffs={self.coeffs})"


def rationalize(x: CyclotomicNumber) -> Fraction:
    """The rational value of a Galois-invariant cyclotomic number.

    Raises NotRational when any nonconstant coordinate survives; that always
    signals a bookkeeping bug in a character sum.
    """
    if not x.is_rational:
        raise NotRational(f"cyclotomic number is not rational: {x!r}")
    return x.coeffs[0]


def eval_at_root_of_unity(p: IntLaurentPolynomial, angle) -> CyclotomicNumber:
    """Exact value P(zeta) for zeta = exp(2*pi*i*angle), angle rational."""
    angle = Fr(angle) % 1
    n = angle.denominator
    c = angle.numerator
    table = zeta_power_table(n)
    deg = len(table[0])
    out = [Fr(0)] * deg
    for i, a in enumerate(p.coeffs):
        if a:
            e = (p.low + i) * c % n
            row = table[e]
            for j in range(deg):
                if row[j]:
                    out[j] += a * row[j]
    return CyclotomicNumber(n, tuple(out))
