"""Tests for the exact arithmetic foundation."""

import math
import random
from fractions import Fraction as Fr

import pytest

from swlink.errors import NotRational
from swlink.exact_core import (
    CyclotomicNumber,
    IntLaurentPolynomial,
    RationalFunction,
    bareiss_determinant,
    cyclotomic_polynomial,
    dedekind_sum,
    eval_at_root_of_unity,
    first_derivative_at_1,
    mat_mul,
    normalize_rational_function,
    rationalize,
    second_derivative_at_1,
    smith_normal_form,
)

P = IntLaurentPolynomial.from_coeffs


def brute_dedekind(q, p):
    """The defining sum with Fraction arithmetic, term by term."""
    def saw(x):
        x = Fr(x)
        if x.denominator == 1:
            return Fr(0)
        return x - math.floor(x) - Fr(1, 2)
    return sum((saw(Fr(i, p)) * saw(Fr(q * i, p)) for i in range(1, p)), Fr(0))


class TestDedekindSum:
    def test_empty_sum(self):
        assert dedekind_sum(1, 1) == 0

    def test_p3(self):
        assert dedekind_sum(1, 3) == Fr(1, 18)

    def test_matches_defining_sum(self):
        rng = random.Random(5)
        for _ in range(25):
            p = rng.randint(1, 40)
            q = rng.randint(0, 3 * p)
            assert dedekind_sum(q, p) == brute_dedekind(q, p)

    def test_reciprocity_random_coprime(self):
        rng = random.Random(11)
        for _ in range(50):
            p = rng.randint(2, 200)
            q = rng.choice([x for x in range(1, p) if math.gcd(x, p) == 1])
            lhs = dedekind_sum(q, p) + dedekind_sum(p, q)
            rhs = Fr(-1, 4) + (Fr(p, q) + Fr(q, p) + Fr(1, p * q)) / 12
            assert lhs == rhs

    def test_scaling_invariance(self):
        # s(cq, cp) = s(q, p), needed for the splice-surgery consistency
        assert dedekind_sum(2, 6) == dedekind_sum(1, 3)
        assert dedekind_sum(6, 15) == dedekind_sum(2, 5)


class TestLaurentPolynomial:
    def test_normalization(self):
        p = P(0, [0, 1, 0])
        assert p.low == 1 and p.coeffs == (1,)
        assert P(3, []).is_zero

    def test_arithmetic(self):
        p = P(-1, [1, -1, 1])  # t^-1 - 1 + t
        q = p * p
        assert q == P(-2, [1, -2, 3, -2, 1])
        assert p + (-p) == IntLaurentPolynomial.zero()
        assert (p - 1) == P(-1, [1, -2, 1])

    def test_evaluation(self):
        p = P(-1, [1, -1, 1])
        assert p(2) == Fr(3, 2)
        assert p(Fr(1, 2)) == Fr(3, 2)

    def test_substitute_power(self):
        p = P(0, [1, -1, 1])
        assert p.substitute_power(2) == P(0, [1, 0, -1, 0, 1])
        assert p.substitute_power(3)(2) == p(8)

    def test_mirror_and_symmetry(self):
        p = P(-1, [1, -1, 1])
        assert p.is_symmetric()
        assert not P(0, [1, 2]).is_symmetric()

    def test_divide_exact(self):
        num = P(0, [-1, 0, 0, 0, 0, 0, 1])  # t^6 - 1
        den = P(0, [-1, 0, 1])              # t^2 - 1
        assert num.divide_exact(den) == P(0, [1, 0, 1, 0, 1])

    def test_second_derivative_examples(self):
        assert second_derivative_at_1(P(-1, [1, -1, 1])) == 2
        assert second_derivative_at_1(P(0, [7])) == 0

    def test_symmetric_normalization_identity(self):
        """For symmetric P with P(1) = 1, the second derivative of P equals
        (r - r^2) + Q''(1)/Q(1) with Q = t^r P the ordinary form."""
        rng = random.Random(3)
        for _ in range(100):
            r = rng.randint(0, 5)
            c = [rng.randint(-3, 3) for _ in range(r)]
            coeffs = [0] * (2 * r + 1)
            coeffs[r] = 1 - 2 * sum(c)
            for i, ci in enumerate(c, start=1):
                coeffs[r + i] = ci
                coeffs[r - i] = ci
            q = P(0, coeffs)
            sym = q.shifted(-r)
            assert sym(1) == 1
            lhs = Fr(second_derivative_at_1(sym))
            rhs = Fr(r - r * r) + Fr(second_derivative_at_1(q), 1) / q(1)
            assert lhs == rhs
            assert first_derivative_at_1(sym) == 0


class TestRationalFunction:
    def test_exact_cancellation(self):
        f = normalize_rational_function(P(0, [-1, 0, 1]), P(0, [-1, 1]))
        assert f.num == P(0, [1, 1])
        assert f.den == IntLaurentPolynomial.one()

    def test_torus_knot_polynomial(self):
        # (t^6-1)(t-1) / ((t^2-1)(t^3-1)) = t^2 - t + 1
        num = P(0, [-1, 0, 0, 0, 0, 0, 1]) * P(0, [-1, 1])
        den = P(0, [-1, 0, 1]) * P(0, [-1, 0, 0, 1])
        f = normalize_rational_function(num, den)
        assert f.num == P(0, [1, -1, 1])
        assert f.den == IntLaurentPolynomial.one()

    def test_zero(self):
        f = normalize_rational_function(IntLaurentPolynomial.zero(), P(0, [-1, 1]))
        assert f.num.is_zero

    def test_equality_after_scaling(self):
        a = normalize_rational_function(P(0, [2, 4]), P(0, [2]))
        b = normalize_rational_function(P(0, [1, 2]), P(0, [1]))
        assert a == b


class TestSmithNormalForm:
    def test_diag_2_3(self):
        snf = smith_normal_form([[2, 0], [0, 3]])
        assert snf.diagonal == (1, 6)

    def test_identity(self):
        snf = smith_normal_form([[1, 0], [0, 1]])
        assert snf.diagonal == (1, 1)

    def test_e8_unimodular(self):
        m = [[0] * 8 for _ in range(8)]
        for i in range(8):
            m[i][i] = -2
        for a, b in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]:
            m[a][b] = 1
            m[b][a] = 1
        snf = smith_normal_form(m)
        assert snf.diagonal == (1,) * 8
        assert abs(bareiss_determinant(m)) == 1

    def test_random_reconstruction(self):
        rng = random.Random(7)
        for _ in range(30):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 4)
            m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
            snf = smith_normal_form(m)
            assert mat_mul(mat_mul(snf.u, m), snf.v) == [list(r) for r in snf.d]
            diag = [snf.d[i][i] for i in range(min(rows, cols))]
            for x, y in zip(diag, diag[1:]):
                if y:
                    assert x and y % x == 0
            if rows == cols:
                assert abs(bareiss_determinant(m)) == abs(math.prod(diag))
            assert abs(bareiss_determinant(snf.u)) == 1
            assert abs(bareiss_determinant(snf.v)) == 1


class TestCyclotomic:
    def test_cyclotomic_polynomials(self):
        assert cyclotomic_polynomial(1) == (-1, 1)
        assert cyclotomic_polynomial(6) == (1, -1, 1)
        assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)

    def test_sixth_root_kills_its_polynomial(self):
        p = P(0, [1, -1, 1])
        assert eval_at_root_of_unity(p, Fr(1, 6)) == 0

    def test_angle_zero_is_value_at_1(self):
        rng = random.Random(1)
        for _ in range(20):
            coeffs = [rng.randint(-5, 5) for _ in range(rng.randint(1, 6))]
            p = P(rng.randint(-3, 3), coeffs)
            assert rationalize(eval_at_root_of_unity(p, Fr(0))) == p(1)

    def test_minus_one(self):
        assert rationalize(eval_at_root_of_unity(P(0, [-1, 1]), Fr(1, 2))) == -2

    def test_multiplicativity(self):
        rng = random.Random(2)
        for _ in range(100):
            n = rng.randint(1, 12)
            c = rng.randint(0, n - 1)
            angle = Fr(c, n)
            p = P(0, [rng.randint(-4, 4) for _ in range(rng.randint(1, 5))])
            q = P(0, [rng.randint(-4, 4) for _ in range(rng.randint(1, 5))])
            lhs = eval_at_root_of_unity(p * q, angle)
            rhs = eval_at_root_of_unity(p, angle) * eval_at_root_of_unity(q, angle)
            assert lhs == rhs

    def test_quadratic_sum_z3(self):
        total = CyclotomicNumber.zero(3)
        for c in (1, 2):
            xi = CyclotomicNumber.root_of_unity(Fr(c, 3))
            total = total + ((xi - 1) * (xi.conjugate() - 1)).inverse()
        assert rationalize(total) == Fr(2, 3)

    def test_conjugate_pair_is_rational(self):
        z = CyclotomicNumber.root_of_unity(Fr(1, 4))
        assert rationalize(z + z.conjugate()) == 0

    def test_primitive_root_not_rational(self):
        with pytest.raises(NotRational):
            rationalize(CyclotomicNumber.root_of_unity(Fr(1, 5)))

    def test_inverse_roundtrip(self):
        rng = random.Random(9)
        for _ in range(40):
            n = rng.randint(2, 15)
            coeffs = [Fr(rng.randint(-3, 3), rng.randint(1, 4))
                      for _ in range(len(cyclotomic_polynomial(n)) - 1)]
            x = CyclotomicNumber(n, tuple(coeffs))
            if x == 0:
                continue
            assert x * x.inverse() == 1

    def test_mixed_conductor_arithmetic(self):
        z2 = CyclotomicNumber.root_of_unity(Fr(1, 2))
        z3 = CyclotomicNumber.root_of_unity(Fr(1, 3))
        z6 = CyclotomicNumber.root_of_unity(Fr(5, 6))
        assert z2 * z3 == z6  # exp(pi i) exp(2 pi i/3) = exp(5 pi i/3)

    def test_power_order(self):
        z = CyclotomicNumber.root_of_unity(Fr(3, 7))
        assert z ** 7 == 1
        assert z ** -1 == z.conjugate()
