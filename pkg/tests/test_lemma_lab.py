"""Tests for the root-of-unity identity verifiers."""

import random
from fractions import Fraction as Fr

import pytest

from swlink.errors import PreconditionViolated, WorkBoundExceeded
from swlink.exact_core import IntLaurentPolynomial
from swlink.lemma_lab import (
    LemmaInstance,
    check_lemma_a,
    check_lemma_b,
    check_sum_identities,
)
from swlink.plane_curve import NewtonPairs, alexander_polynomial
from swlink.verify import random_alternating_data

P = IntLaurentPolynomial.from_coeffs
ONE = IntLaurentPolynomial.one()
COUNTEREXAMPLE = P(0, [1, -1, 1, -1, 1])


class TestLemmaA:
    def test_trivial_polynomial(self):
        assert check_lemma_a(LemmaInstance(ONE, 2, "A"))

    def test_hand_checked_slice(self):
        """Delta = 1, a = 2, A = 1: both sides equal (1 + t^2)/(1 - t^2)^2.

        Evaluated directly at t = 2: the two-term sum over xi = +-1 is
        1/(1-t)^2 + 1/(1+t)^2 halved."""
        t = Fr(2)
        lhs = (1 / (1 - t) ** 2 + 1 / (1 + t) ** 2) / 2
        rhs = (1 + t * t) / (1 - t * t) ** 2
        assert lhs == rhs
        assert check_lemma_a(LemmaInstance(ONE, 2, "A"))

    def test_curve_polynomials(self):
        for pairs, a in [("2:3", 2), ("2:3", 3), ("2:3", 7), ("2:5", 4)]:
            delta = alexander_polynomial(NewtonPairs.parse(pairs)).delta
            assert check_lemma_a(LemmaInstance(delta, a, "A"))

    def test_published_failure(self):
        assert not check_lemma_a(LemmaInstance(COUNTEREXAMPLE, 3, "A"))

    def test_failure_is_about_small_a(self):
        # the same polynomial passes once a reaches its degree
        assert check_lemma_a(LemmaInstance(COUNTEREXAMPLE, 4, "A"))

    def test_failure_visible_on_the_diagonal_slice(self):
        """At A = 1 the two sides already differ for the failing instance."""
        from swlink.exact_core import CyclotomicNumber, eval_at_root_of_unity, rationalize
        a, t = 3, Fr(2)
        total = CyclotomicNumber.zero(a)
        for c in range(a):
            xi = CyclotomicNumber.root_of_unity(Fr(c, a))
            dv = eval_at_root_of_unity(COUNTEREXAMPLE, Fr(c, a))
            dvc = eval_at_root_of_unity(COUNTEREXAMPLE, Fr(a - c, a))
            term = dv * dvc * ((1 - xi * t) * (1 - xi.conjugate() * t)).inverse()
            total = total + term
        lhs = rationalize(total) / a
        rhs = ((1 - t ** (2 * a)) * COUNTEREXAMPLE(t * t)
               / ((1 - t ** a) ** 2 * (1 - t * t)))
        assert lhs != rhs

    def test_random_alternating_instances(self):
        rng = random.Random(7)
        for _ in range(20):
            data = random_alternating_data(rng)
            deg = max(1, 0 if data.delta.is_zero else data.delta.degree_high)
            a = rng.randint(deg, deg + 5)
            assert check_lemma_a(LemmaInstance(data.delta, a, "A"))

    def test_mode_validation(self):
        with pytest.raises(PreconditionViolated):
            check_lemma_a(LemmaInstance(ONE, 2, "B"))


class TestLemmaB:
    def test_reduces_to_mode_a_case(self):
        assert check_lemma_b(LemmaInstance(ONE, 3, "B", 2, 1))

    def test_curve_polynomial(self):
        delta = alexander_polynomial(NewtonPairs.parse("2:3")).delta
        assert check_lemma_b(LemmaInstance(delta, 2, "B", 2, 2))
        assert check_lemma_b(LemmaInstance(delta, 3, "B", 2, 2))

    def test_three_slots(self):
        delta = alexander_polynomial(NewtonPairs.parse("2:3")).delta
        assert check_lemma_b(LemmaInstance(delta, 4, "B", 3, 2))

    def test_collapse_of_the_worked_character_average(self):
        """The d = 2, k = 1 right side with the trivial polynomial repeats
        the two-step collapse of the worked character average: multiplied
        through, it turns into the (2,3) curve polynomial."""
        a = 3
        # RHS = (1 - t^{2a}) / ((1 - t^a)(1 - t^a)(1 - t^2)); then
        # (t-1)(t^3-1) * RHS must equal t^2 - t + 1 at any sample point.
        for t in (Fr(2), Fr(3), Fr(5), Fr(7, 2)):
            rhs = (1 - t ** (2 * a)) / ((1 - t ** a) ** 2 * (1 - t * t))
            collapsed = (t - 1) * (t ** 3 - 1) * rhs
            assert collapsed == t * t - t + 1

    def test_published_failure(self):
        assert not check_lemma_b(LemmaInstance(COUNTEREXAMPLE, 3, "B", 2, 1))

    def test_work_bound(self):
        with pytest.raises(WorkBoundExceeded):
            check_lemma_b(LemmaInstance(ONE, 101, "B", 3, 1), work_bound=10000)


class TestSumIdentities:
    def test_basic_sum_small(self):
        assert check_sum_identities(2).xi_sum == 0  # no delta: xi_sum unused
        assert check_sum_identities(2).basic_sum_holds

    def test_basic_sum_sweep(self):
        for a in range(1, 25):
            assert check_sum_identities(a).basic_sum_holds

    def test_symmetric_form_example(self):
        rep = check_sum_identities(3, P(0, [1, -1, 1]))
        assert rep.symmetric_form_holds
        assert rep.xi_sum == Fr(8, 12) + 2

    def test_derivative_form_on_curves(self):
        delta = alexander_polynomial(NewtonPairs.parse("2:3")).delta
        for a in (2, 3, 5, 8):
            rep = check_sum_identities(a, delta)
            assert rep.derivative_form_holds
            assert rep.symmetric_form_holds

    def test_degree_guard(self):
        with pytest.raises(PreconditionViolated):
            check_sum_identities(2, COUNTEREXAMPLE)
