"""Tests for the sparse polynomial core.

Derived expected values were computed by hand expansion first and are
frozen here; each one is additionally cross-checked against an independent
oracle (evaluation at random rational points, exponent scans, or an exact
finite-difference quotient built from the t parameter).
"""

import random
from fractions import Fraction

import pytest

from polyauto import NEG_INF, Poly
from polyauto.errors import DimensionError, UndefinedValuation


def x(nvars, i):
    return Poly.variable(nvars, i)


def random_poly(rng, nvars, max_degree, max_terms, with_t=False):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        key = [0] * (nvars + 1)
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            key[rng.randrange(nvars)] += 1
        if with_t:
            key[-1] = rng.randint(0, 2)
        terms[tuple(key)] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return Poly(nvars, terms)


def random_point(rng, nvars):
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(nvars)]


def nagata_first_component():
    # x1 - 2*x2*D - x3*D^2 with D = x2^2 + x1*x3
    x1, x2, x3 = Poly.variables(3)
    delta = x2**2 + x1 * x3
    return x1 - 2 * x2 * delta - x3 * delta**2


def nagata_second_component():
    x1, x2, x3 = Poly.variables(3)
    delta = x2**2 + x1 * x3
    return x2 + x3 * delta


class TestRingOperations:
    def test_additive_inverse_cancels(self):
        p = x(2, 1)
        assert (p + (-p)).is_zero
        assert (p + (-p)).terms() == {}

    def test_product_of_sum_and_difference(self):
        # hand expansion: (x2 + x3)(x2 - x3) = x2^2 - x3^2
        p = x(3, 2) + x(3, 3)
        q = x(3, 2) - x(3, 3)
        expected = x(3, 2) ** 2 - x(3, 3) ** 2
        product = p * q
        assert product == expected
        rng = random.Random(101)
        for _ in range(20):
            a = random_point(rng, 3)
            assert product.evaluate(a) == p.evaluate(a) * q.evaluate(a)

    def test_multiplicative_identity(self):
        rng = random.Random(7)
        p = random_poly(rng, 3, 5, 6)
        assert p * Poly.const(3, 1) == p
        assert p * 1 == p

    def test_scalar_coercion(self):
        p = x(2, 1) + 3
        assert p.constant_term() == 3
        assert (2 * p).coefficient((1, 0)) == 2
        assert (p / 2).constant_term() == Fraction(3, 2)

    def test_mismatched_nvars_rejected(self):
        with pytest.raises(DimensionError):
            x(2, 1) + x(3, 1)
        with pytest.raises(DimensionError):
            x(2, 1) * x(3, 1)

    def test_ring_axioms_on_random_triples(self):
        rng = random.Random(2024)
        for _ in range(50):
            p = random_poly(rng, 3, 4, 4)
            q = random_poly(rng, 3, 4, 4)
            r = random_poly(rng, 3, 4, 4)
            assert (p + q) + r == p + (q + r)
            assert p + q == q + p
            assert (p * q) * r == p * (q * r)
            assert p * q == q * p
            assert p * (q + r) == p * q + p * r

    def test_power_matches_repeated_multiplication(self):
        rng = random.Random(5)
        p = random_poly(rng, 2, 3, 4)
        assert p**0 == Poly.const(2, 1)
        assert p**3 == p * p * p


class TestDegrees:
    def test_zero_degree_marker(self):
        assert Poly.zero(2).total_degree() == NEG_INF
        assert Poly.zero(2).total_degree() != -1

    def test_total_degree(self):
        assert (x(2, 1) + x(2, 2) ** 3).total_degree() == 3
        assert (x(3, 3) * x(3, 2) ** 4).total_degree() == 5
        assert Poly.const(2, 5).total_degree() == 0

    def test_degree_excludes_t(self):
        p = x(2, 1) * Poly.t(2) ** 4
        assert p.total_degree() == 1
        assert p.t_degree() == 4

    def test_degree_in_variable(self):
        assert (x(2, 1) ** 2 * x(2, 2) + x(2, 1)).degree_in(1) == 2
        assert (x(2, 2) ** 3).degree_in(1) == 0
        assert Poly.zero(2).degree_in(1) == NEG_INF

    def test_degree_in_variable_nagata(self):
        # the D^2 term contributes x1^2*x3^3
        f1 = nagata_first_component()
        assert f1.degree_in(1) == 2
        assert f1.coefficient((2, 0, 3)) == -1

    def test_degree_is_additive_under_multiplication(self):
        rng = random.Random(99)
        for _ in range(30):
            p = random_poly(rng, 2, 4, 3)
            q = random_poly(rng, 2, 4, 3)
            assert (p * q).total_degree() == p.total_degree() + q.total_degree()


class TestValuationsAndComponents:
    def test_valuation_simple(self):
        p = x(3, 2) ** 2 + x(3, 2) ** 3
        assert p.valuation_in({2, 3}) == 2

    def test_valuation_nagata_slice(self):
        # g0 for the Nagata map: -2*x2^3 - x3*x2^4
        x2, x3 = x(3, 2), x(3, 3)
        g0 = -2 * x2**3 - x3 * x2**4
        assert g0.valuation_in({2, 3}) == 3
        # oracle: the homogeneous pieces below the valuation vanish
        assert g0.homogeneous_component({2, 3}, 0).is_zero
        assert g0.homogeneous_component({2, 3}, 1).is_zero
        assert g0.homogeneous_component({2, 3}, 2).is_zero
        assert not g0.homogeneous_component({2, 3}, 3).is_zero

    def test_valuation_nonzero_constant(self):
        assert Poly.const(3, 5).valuation_in({2, 3}) == 0

    def test_valuation_of_zero_is_undefined(self):
        with pytest.raises(UndefinedValuation):
            Poly.zero(3).valuation_in({2, 3})

    def test_homogeneous_component(self):
        p = x(3, 2) ** 2 + x(3, 2) ** 3
        assert p.homogeneous_component({2, 3}, 2) == x(3, 2) ** 2
        g0 = -2 * x(3, 2) ** 3 - x(3, 3) * x(3, 2) ** 4
        assert g0.homogeneous_component({2, 3}, 3) == -2 * x(3, 2) ** 3
        assert (x(3, 2) ** 2).homogeneous_component({2, 3}, 3).is_zero

    def test_components_sum_back_and_valuation_is_min_weight(self):
        rng = random.Random(314)
        for _ in range(40):
            p = random_poly(rng, 3, 6, 5)
            if p.is_zero:
                continue
            indices = {1, 2} if rng.random() < 0.5 else {2, 3}
            top = p.total_degree()
            pieces = [p.homogeneous_component(indices, w) for w in range(0, top + 1)]
            total = Poly.zero(3)
            for piece in pieces:
                total = total + piece
            assert total == p
            weights = [w for w, piece in enumerate(pieces) if not piece.is_zero]
            assert p.valuation_in(indices) == min(weights)


class TestCalculus:
    def test_simple_partials(self):
        p = x(2, 1) ** 2 * x(2, 2)
        assert p.partial_derivative(1) == 2 * x(2, 1) * x(2, 2)
        assert (x(2, 2) ** 3).partial_derivative(1).is_zero

    def test_nagata_second_component_partial(self):
        # d/dx3 of x2 + x3*(x2^2 + x1*x3) = x2^2 + 2*x1*x3
        f2 = nagata_second_component()
        expected = x(3, 2) ** 2 + 2 * x(3, 1) * x(3, 3)
        assert f2.partial_derivative(3) == expected

    def test_partial_matches_exact_difference_quotient(self):
        # (p(x3+t) - p(x3))/t at t=0 equals the x3-partial, computed exactly
        rng = random.Random(2718)
        for _ in range(15):
            p = random_poly(rng, 3, 5, 5)
            shifted = p.substitute(
                [x(3, 1), x(3, 2), x(3, 3) + Poly.t(3)]
            )
            quotient = (shifted - p).divide_t(1) if shifted != p else Poly.zero(3)
            assert quotient.with_t_set(0) == p.partial_derivative(3)


class TestSubstitution:
    def test_kills_variable(self):
        p = x(2, 1) ** 2 + x(2, 2)
        assert p.substitute([x(2, 2), Poly.zero(2)]) == x(2, 2) ** 2

    def test_hand_expansion(self):
        # x1*x2 + x2^2 at (x1+x2, x1) = (x1+x2)*x1 + x1^2 = 2*x1^2 + x1*x2
        p = x(2, 1) * x(2, 2) + x(2, 2) ** 2
        images = [x(2, 1) + x(2, 2), x(2, 1)]
        result = p.substitute(images)
        assert result == 2 * x(2, 1) ** 2 + x(2, 1) * x(2, 2)
        rng = random.Random(11)
        for _ in range(20):
            a = random_point(rng, 2)
            assert result.evaluate(a) == p.evaluate([g.evaluate(a) for g in images])

    def test_identity_substitution(self):
        rng = random.Random(13)
        p = random_poly(rng, 3, 5, 6)
        assert p.substitute(Poly.variables(3)) == p

    def test_t_is_left_fixed(self):
        p = x(2, 1) * Poly.t(2)
        out = p.substitute([x(2, 2), x(2, 1)])
        assert out == x(2, 2) * Poly.t(2)

    def test_wrong_image_count(self):
        with pytest.raises(DimensionError):
            x(2, 1).substitute([x(2, 1)])

    def test_substitute_then_evaluate_commutes(self):
        rng = random.Random(404)
        for _ in range(25):
            p = random_poly(rng, 2, 4, 4)
            g = [random_poly(rng, 2, 3, 3) for _ in range(2)]
            a = random_point(rng, 2)
            assert p.substitute(g).evaluate(a) == p.evaluate([gi.evaluate(a) for gi in g])


class TestEvaluation:
    def test_trivial(self):
        p = x(2, 1) + x(2, 2) ** 2
        assert p.evaluate([1, 2]) == 5
        assert Poly.zero(2).evaluate([3, 4]) == 0

    def test_rational_point(self):
        p = x(2, 1) * x(2, 2) - Fraction(1, 2)
        assert p.evaluate([Fraction(1, 3), 3]) == Fraction(1, 2)

    def test_missing_t_value(self):
        p = Poly.t(1) * x(1, 1)
        with pytest.raises(DimensionError):
            p.evaluate([1])
        assert p.evaluate([2], t_value=3) == 6

    def test_evaluation_is_ring_homomorphism(self):
        rng = random.Random(55)
        for _ in range(25):
            p = random_poly(rng, 3, 4, 4)
            q = random_poly(rng, 3, 4, 4)
            r = random_poly(rng, 3, 4, 4)
            a = random_point(rng, 3)
            lhs = (p * q + r).evaluate(a)
            assert lhs == p.evaluate(a) * q.evaluate(a) + r.evaluate(a)


class TestTParameter:
    def test_with_t_set(self):
        p = x(1, 1) + Poly.t(1) * x(1, 1) ** 2
        assert p.with_t_set(0) == x(1, 1)
        assert p.with_t_set(1) == x(1, 1) + x(1, 1) ** 2
        assert p.with_t_set(Fraction(1, 2)) == x(1, 1) + x(1, 1) ** 2 / 2

    def test_divide_t_exact(self):
        p = Poly.t(1) ** 2 * x(1, 1) + Poly.t(1) ** 3
        q = p.divide_t(2)
        assert q == x(1, 1) + Poly.t(1)

    def test_divide_t_rejects_low_valuation(self):
        p = Poly.t(1) + Poly.const(1, 1)
        with pytest.raises(ValueError):
            p.divide_t(1)

    def test_t_valuation(self):
        p = Poly.t(1) ** 2 * x(1, 1) + Poly.t(1) ** 5
        assert p.t_valuation() == 2
        with pytest.raises(UndefinedValuation):
            Poly.zero(1).t_valuation()


class TestCanonicalForm:
    def test_structural_equality_and_hash(self):
        p = x(2, 1) + x(2, 2)
        q = x(2, 2) + x(2, 1)
        assert p == q
        assert hash(p) == hash(q)

    def test_no_zero_coefficients_stored(self):
        p = x(2, 1) - x(2, 1) + x(2, 2)
        assert len(p.terms()) == 1

    def test_constructor_merges_and_drops_zeros(self):
        p = Poly(2, {(1, 0): 1, (0, 1, 0): 0})
        assert p == x(2, 1)

    def test_rendering_is_deterministic_graded_lex(self):
        f1 = nagata_first_component()
        assert str(f1) == "-x1^2*x3^3 - 2*x1*x2^2*x3^2 - x2^4*x3 - 2*x1*x2*x3 - 2*x2^3 + x1"
        assert str(Poly.zero(3)) == "0"
        assert str(Poly.const(2, Fraction(-1, 2))) == "-1/2"
