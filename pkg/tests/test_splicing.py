"""Tests for the splicing and surgery formula calculators."""

import random
from fractions import Fraction as Fr

import pytest

from swlink.errors import (
    CasePreconditionViolated,
    ModePreconditionViolated,
    ZeroSurgeryCoefficient,
)
from swlink.exact_core import IntLaurentPolynomial
from swlink.plane_curve import AlexanderData
from swlink.plumbing import character_torsion_table, homology, seifert_star
from swlink.seifert import brieskorn_data, torsion_closed_form
from swlink.splicing import (
    ObstructionReport,
    SpliceSide,
    casson_walker_via_fujita,
    cyclic_cover_sw,
    obstruction_and_da,
    splice_casson_walker,
    surgery_correction,
    torsion_splice,
)
from swlink.verify import random_alternating_data

P = IntLaurentPolynomial.from_coeffs

TORUS23 = AlexanderData.from_polynomial(P(0, [1, -1, 1]))
SQUARED = AlexanderData.from_polynomial(P(0, [1, -1, 1]) * P(0, [1, -1, 1]))


class TestCassonWalkerSplice:
    def test_zero_defect_is_additive(self):
        s1 = SpliceSide(Fr(-2), Fr(0), alexander_scaled=TORUS23.symmetric_form)
        s2 = SpliceSide(Fr(5, 3), Fr(0), o2=1, k2=0)
        assert splice_casson_walker(s1, s2) == Fr(-2) + Fr(5, 3)

    def test_unknot_side_is_additive_regardless_of_defect(self):
        s1 = SpliceSide(Fr(0), Fr(0))  # no Alexander data: Delta = 1
        s2 = SpliceSide(Fr(1, 4), Fr(0), o2=3, k2=7)
        assert splice_casson_walker(s1, s2) == Fr(1, 4)

    def test_brieskorn_defect_parameters(self):
        """Identical pieces spliced onto the special fibers: o2 = a and
        k2 = m p (d-1) / d^2 with d = gcd(m, p)."""
        n, p, a, d = 4, 2, 3, 2
        k2 = n * p * (d - 1) // (d * d)
        s1 = SpliceSide(Fr(-2), Fr(0), alexander_scaled=TORUS23.symmetric_form)
        s2 = SpliceSide(Fr(0), Fr(0), o2=a, k2=k2)
        assert splice_casson_walker(s1, s2) == Fr(-2) + Fr(k2, a) * 2


class TestSurgeryCorrection:
    def test_unit_surgery_on_trivial_knot(self):
        # +1 and -1 surgery on an unknot both return the sphere: zero correction
        assert surgery_correction(1, 1, Fr(0), 1) == 0
        assert surgery_correction(1, -1, Fr(0), 1) == 0

    def test_rejects_zero_q(self):
        with pytest.raises(ZeroSurgeryCoefficient):
            surgery_correction(2, 0, Fr(0), 1)

    def test_sign_flip_changes_only_trailing_terms(self):
        plus = surgery_correction(3, 2, Fr(0), 1)
        minus = surgery_correction(3, -2, Fr(0), 1)
        # the Alexander term vanishes here, so plus + minus collapses to the
        # odd part of the formula
        assert plus != minus

    def test_fujita_route_consistency(self):
        """Fujita's sum plus the surgery correction reproduces the direct
        splice formula on random rational inputs, exactly."""
        rng = random.Random(19)
        for _ in range(50):
            data = random_alternating_data(rng)
            h1 = rng.randint(1, 4)
            s1 = SpliceSide(Fr(rng.randint(-30, 30), rng.randint(1, 9)), Fr(0),
                            h1_order=h1,
                            alexander_scaled=data.symmetric_form * h1)
            s2 = SpliceSide(Fr(rng.randint(-30, 30), rng.randint(1, 9)), Fr(0),
                            o2=rng.randint(1, 10),
                            k2=rng.choice([k for k in range(-10, 11) if k]))
            assert splice_casson_walker(s1, s2) == casson_walker_via_fujita(s1, s2)


class TestTorsionSplice:
    def test_mode_a(self):
        s1 = SpliceSide(Fr(0), Fr(1, 8))
        s2 = SpliceSide(Fr(0), Fr(4, 9))
        assert torsion_splice(s1, s2, "A") == Fr(1, 8) + Fr(4, 9)

    def test_mode_a_precondition(self):
        s1 = SpliceSide(Fr(0), Fr(0), o2=2)
        with pytest.raises(ModePreconditionViolated):
            torsion_splice(s1, s1, "A")

    def test_mode_b_trivial_values_reduce_to_side2(self):
        """With chi(K2) = 1 for every character the sum collapses to the
        side-2 torsion because Delta_1(1) = |H_1| = 1."""
        star = seifert_star(2, 3, 4)
        hom = homology(star.graph)
        table = character_torsion_table(star.graph)
        # pretend K2 is homologically trivial: all angles zero
        values = [(Fr(0), limit) for _, limit in table]
        s1 = SpliceSide(Fr(0), Fr(0), alexander_scaled=TORUS23.symmetric_form)
        s2 = SpliceSide(Fr(0), torsion_closed_form(2, 3, 4), h1_order=hom.order)
        assert torsion_splice(s1, s2, "B", values) == torsion_closed_form(2, 3, 4)

    def test_mode_b_matches_quadratic_sum(self):
        """Splicing the trefoil piece onto one special fiber of the d = 2
        Brieskorn piece reproduces the explicit character-sum expression
        (n p / (a d^2)) sum_xi Delta(xi) / ((xi - 1)(conj xi - 1))."""
        from swlink.exact_core import CyclotomicNumber, eval_at_root_of_unity, rationalize
        n, p, a, d = 4, 2, 3, 2
        star = seifert_star(p, a, n)
        hom = homology(star.graph)
        table = character_torsion_table(star.graph)
        values = [(angles[star.a_ends[0]], limit) for angles, limit in table]
        s1 = SpliceSide(Fr(0), Fr(0), alexander_scaled=TORUS23.symmetric_form)
        s2 = SpliceSide(Fr(0), torsion_closed_form(p, a, n), h1_order=hom.order)
        spliced = torsion_splice(s1, s2, "B", values)
        total = CyclotomicNumber.zero(a)
        for c in range(1, a):
            xi = CyclotomicNumber.root_of_unity(Fr(c, a))
            dv = eval_at_root_of_unity(TORUS23.delta, Fr(c, a))
            total = total + dv / ((xi - 1) * (xi.conjugate() - 1))
        expected = Fr(n * p, a * d * d) * rationalize(total)
        assert spliced == expected
        assert spliced == Fr(4, 9)


class TestObstructions:
    def test_alternating_gives_zero(self):
        rep = obstruction_and_da(4, 2, 3, 2, TORUS23)
        assert rep.d_a == 0
        assert rep.o_sw == 0
        assert rep.o_lambda / 2 == rep.o_torsion

    def test_squared_knot_counterexample(self):
        rep = obstruction_and_da(4, 2, 5, 2, SQUARED)
        assert rep.d_a == 2 * 5 * 2  # 2 a D(c) with D = 2

    def test_trivial_delta(self):
        one = AlexanderData.from_polynomial(IntLaurentPolynomial.one())
        rep = obstruction_and_da(6, 3, 4, 3, one)
        assert rep.d_a == 0 and rep.o_sw == 0


class TestCyclicCover:
    def test_coprime_case_is_plain_sum(self):
        assert cyclic_cover_sw(5, 2, 3, Fr(1), Fr(1)) == 2

    def test_alternating_correction_vanishes(self):
        value = cyclic_cover_sw(4, 2, 3, Fr(1), Fr(7, 4), delta1=TORUS23)
        assert value == 2 * 1 + Fr(7, 4)  # d = 2, correction 0

    def test_nonalternating_correction(self):
        value = cyclic_cover_sw(4, 2, 5, Fr(0), Fr(0), delta1=SQUARED)
        d = 2
        assert value == Fr(4 * 2 * (d - 1), d) * 2

    def test_validity_check(self):
        with pytest.raises(CasePreconditionViolated):
            cyclic_cover_sw(6, 2, 3, Fr(0), Fr(0), delta1=TORUS23)

    def test_degree_bound_enforced(self):
        with pytest.raises(CasePreconditionViolated):
            cyclic_cover_sw(4, 2, 3, Fr(0), Fr(0), delta1=SQUARED)  # a=3 < deg=4
