"""Tests for the plumbing graph engine."""

import math
import random
from fractions import Fraction as Fr

import pytest

from swlink.errors import (
    ArrowMissing,
    DegenerateGraph,
    GraphParseError,
    InvalidInput,
    NotRationalHomologySphere,
)
from swlink.exact_core import IntLaurentPolynomial, bareiss_determinant
from swlink.plumbing import (
    PlumbingGraph,
    acampo_alexander,
    canonical_class_invariant,
    character_limit,
    homology,
    intersection_matrix,
    linking_column,
    negative_continued_fraction,
    parse_graph,
    seifert_star,
    seifert_star_graph,
    serialize_graph,
    torsion_sigma_can,
    weights_and_linking,
)
from swlink.seifert import torsion_closed_form

P = IntLaurentPolynomial.from_coeffs


def single(euler, arrow=False):
    return PlumbingGraph(((0, euler),), (), ((0, "k"),) if arrow else ())


class TestIntersectionMatrix:
    def test_e8(self, e8_graph):
        m, negdef, det = intersection_matrix(e8_graph)
        assert det == 1 and negdef
        assert bareiss_determinant(m) == 1

    def test_single_vertex(self):
        _, negdef, det = intersection_matrix(single(-2))
        assert det == -2 and negdef

    def test_chain(self):
        g = PlumbingGraph(((0, -2), (1, -2)), ((0, 1),))
        assert intersection_matrix(g)[2] == 3

    def test_degenerate(self):
        with pytest.raises(DegenerateGraph):
            intersection_matrix(single(0))

    def test_zero_pivot_falls_back_to_dense(self):
        # leaf Euler number 0 stalls the leaf peeling but the form is regular
        g = PlumbingGraph(((0, -2), (1, 0)), ((0, 1),))
        assert intersection_matrix(g)[2] == -1

    def test_not_definite_detected(self):
        _, negdef, _ = intersection_matrix(single(2))
        assert not negdef

    def test_tree_validation(self):
        with pytest.raises(InvalidInput):
            PlumbingGraph(((0, -2), (1, -2)), ())  # disconnected

    def test_matches_dense_determinant_on_random_trees(self):
        rng = random.Random(13)
        for _ in range(30):
            n = rng.randint(1, 9)
            vs = tuple((i, -rng.randint(1, 5)) for i in range(n))
            es = tuple((rng.randint(0, i - 1), i) for i in range(1, n))
            g = PlumbingGraph(vs, es)
            dense = [[0] * n for _ in range(n)]
            for v, e in vs:
                dense[v][v] = e
            for a, b in es:
                dense[a][b] = dense[b][a] = 1
            det = bareiss_determinant(dense)
            if det == 0:
                with pytest.raises(DegenerateGraph):
                    intersection_matrix(g)
            else:
                assert intersection_matrix(g)[2] == det


class TestHomology:
    def test_e8_trivial(self, e8_graph):
        hom = homology(e8_graph)
        assert hom.order == 1 and hom.invariant_factors == ()

    def test_single_minus_2(self):
        hom = homology(single(-2))
        assert hom.invariant_factors == (2,)
        angles = hom.character_angles((1,))
        assert angles[0] == Fr(1, 2)  # chi(g) = -1

    def test_chain_z3(self):
        g = PlumbingGraph(((0, -2), (1, -2)), ((0, 1),))
        assert homology(g).invariant_factors == (3,)


class TestWeights:
    def test_cusp_weights(self, cusp_graph):
        wv = weights_and_linking(cusp_graph, 0)
        assert wv.order == 1
        assert wv.weights == {0: 6, 1: 3, 2: 2}

    def test_e8_all_positive(self, e8_graph):
        for u in e8_graph.ids:
            wv = weights_and_linking(e8_graph, u)
            assert all(w > 0 for w in wv.weights.values())

    def test_single_minus_2_order(self):
        wv = weights_and_linking(single(-2), 0)
        assert wv.order == 2 and wv.weights == {0: 1}


class TestAcampo:
    def test_cusp_equals_curve_route(self, cusp_graph):
        res = acampo_alexander(cusp_graph)
        assert res.delta == P(0, [1, -1, 1])
        assert res.h_order == 1

    def test_unknot(self):
        res = acampo_alexander(single(-1, arrow=True))
        assert res.delta == IntLaurentPolynomial.one()

    def test_nontrivial_knot_limit(self):
        res = acampo_alexander(single(-2, arrow=True))
        assert res.delta is None
        assert res.knot_order == 2
        assert res.limit_at_1 == 1  # |H| / o(u) = 2/2

    def test_requires_arrow(self, e8_graph):
        with pytest.raises(ArrowMissing):
            acampo_alexander(e8_graph)


class TestTorsion:
    def test_e8_zero(self, e8_graph):
        assert torsion_sigma_can(e8_graph) == 0

    def test_single_minus_2(self):
        assert torsion_sigma_can(single(-2)) == Fr(1, 8)

    def test_seifert_234(self):
        g = seifert_star_graph(2, 3, 4)
        assert torsion_sigma_can(g) == Fr(4, 9)
        assert torsion_sigma_can(g) == torsion_closed_form(2, 3, 4)

    def test_base_vertex_independence(self):
        for args in [(2, 3, 4), (2, 5, 4), (3, 2, 4), (2, 3, 9)]:
            g = seifert_star_graph(*args)
            assert torsion_sigma_can(g, check_base_independence=True) \
                == torsion_closed_form(*args)

    def test_rejects_indefinite(self):
        with pytest.raises(InvalidInput):
            torsion_sigma_can(single(1))


class TestCanonicalClass:
    def test_e8(self, e8_graph):
        assert canonical_class_invariant(e8_graph) == 8

    def test_single_minus_1(self):
        assert canonical_class_invariant(single(-1)) == 0

    def test_single_minus_2(self):
        assert canonical_class_invariant(single(-2)) == 1


class TestSeifertStar:
    def test_235_is_e8(self):
        star = seifert_star(2, 3, 5)
        assert all(e == -2 for _, e in star.graph.vertices)
        assert len(star.graph.vertices) == 8
        assert intersection_matrix(star.graph)[2] == 1

    def test_234_order(self):
        g = seifert_star_graph(2, 3, 4)
        assert abs(intersection_matrix(g)[2]) == 3  # a^(d-1) with a=3, d=2

    def test_sphere(self):
        g = seifert_star_graph(2, 3, 1)
        assert abs(intersection_matrix(g)[2]) == 1
        assert torsion_sigma_can(g) == 0

    def test_non_qhs_rejected(self):
        with pytest.raises(NotRationalHomologySphere):
            seifert_star(3, 5, 15)

    def test_linking_table(self):
        star = seifert_star(2, 3, 4)
        p, a, m, d = star.p, star.a, star.m, star.d
        col = linking_column(star.graph, star.central)
        assert col[star.central] == Fr(m * p * a, d * d)
        for k in star.a_ends:
            assert col[k] == Fr(m * p, d * d)
        col_k = linking_column(star.graph, star.a_ends[0])
        assert col_k[star.a_ends[1]] == Fr(m * p, d * d * a)

    def test_continued_fraction(self):
        assert negative_continued_fraction(3, 2) == [2, 2]
        assert negative_continued_fraction(5, 4) == [2, 2, 2, 2]
        assert negative_continued_fraction(7, 2) == [4, 2]


class TestCharacterLimit:
    def test_zero_when_orders_remain(self):
        # chain of Z/3 with the character supported on one end: the other
        # end vertex has degree 1, contributing a simple zero
        g = PlumbingGraph(((0, -2), (1, -2)), ((0, 1),))
        hom = homology(g)
        for chi in hom.characters():
            if all(k == 0 for k in chi):
                continue
            angles = hom.character_angles(chi)
            value = character_limit(g, angles)
            assert value == value  # exact object, no crash


class TestTextFormat:
    def test_round_trip_bit_exact(self, e8_graph):
        text = serialize_graph(e8_graph)
        parsed = parse_graph(text)
        assert parsed == e8_graph
        assert serialize_graph(parsed) == text

    def test_comments_and_blanks(self):
        g = parse_graph("# header\n\nv 0 -2\n  # indented comment\n")
        assert g.vertices == ((0, -2),)

    def test_parse_error_names_line(self):
        with pytest.raises(GraphParseError) as info:
            parse_graph("v 0 -2\nnonsense\n")
        assert info.value.line_number == 2

    def test_arrows_round_trip(self, cusp_graph):
        text = serialize_graph(cusp_graph)
        assert parse_graph(text) == cusp_graph
