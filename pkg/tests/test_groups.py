"""Tests for affine/triangular generators, words, samplers, and the gallery."""

import random
from fractions import Fraction

import pytest

from polyauto import Poly
from polyauto.endo import Endo
from polyauto.errors import ConsistencyError, DimensionError, MissingInverse
from polyauto.groups import (
    AffineMap,
    OpaqueGenerator,
    TriangularMap,
    Word,
    format_word,
    nagata,
    nagata_delta,
    nagata_generator,
    random_affine,
    random_tame_word,
    random_triangular,
)


def x(nvars, i):
    return Poly.variable(nvars, i)


class TestAffineMap:
    def test_construction_rejects_singular(self):
        with pytest.raises(DimensionError):
            AffineMap([[1, 2], [2, 4]], [0, 0])

    def test_to_endo(self):
        alpha = AffineMap([[2, 0], [0, 1]], [0, 0])
        assert alpha.to_endo() == Endo([2 * x(2, 1), x(2, 2)])

    def test_inverse_of_scaling(self):
        alpha = AffineMap([[2, 0], [0, 1]], [0, 0])
        assert alpha.inverse().to_endo() == Endo([x(2, 1) / 2, x(2, 2)])

    def test_inverse_of_translation(self):
        alpha = AffineMap([[1, 0], [0, 1]], [3, -2])
        inv = alpha.inverse()
        assert inv.translation == (Fraction(-3), Fraction(2))

    def test_random_inverse_composes_to_identity(self):
        for seed in range(25):
            alpha = random_affine(3, seed)
            assert alpha.to_endo().compose(alpha.inverse().to_endo()) == Endo.identity(3)
            assert alpha.compose(alpha.inverse()) == AffineMap.identity(3)

    def test_transposition(self):
        swap = AffineMap.transposition(2, 1, 2)
        assert swap.to_endo() == Endo([x(2, 2), x(2, 1)])
        assert swap.compose(swap) == AffineMap.identity(2)

    def test_transposition_conjugation(self):
        # conjugating (x1, x2 + x1^2) by the swap gives (x1 + x2^2, x2)
        swap = AffineMap.transposition(2, 1, 2).to_endo()
        phi = Endo([x(2, 1), x(2, 2) + x(2, 1) ** 2])
        conj = swap.compose(phi).compose(swap)
        assert conj == Endo([x(2, 1) + x(2, 2) ** 2, x(2, 2)])

    def test_bad_indices(self):
        with pytest.raises(DimensionError):
            AffineMap.transposition(2, 0, 1)

    def test_from_endo_round_trip(self):
        alpha = random_affine(3, 99)
        assert AffineMap.from_endo(alpha.to_endo()) == alpha


class TestTriangularMap:
    def test_to_endo(self):
        beta = TriangularMap([1, 1], [x(2, 2) ** 2, Poly.zero(2)])
        assert beta.to_endo() == Endo([x(2, 1) + x(2, 2) ** 2, x(2, 2)])

    def test_shift_variable_restriction(self):
        with pytest.raises(DimensionError):
            TriangularMap([1, 1], [x(2, 1), Poly.zero(2)])
        with pytest.raises(DimensionError):
            TriangularMap([1, 1], [Poly.zero(2), x(2, 2)])

    def test_zero_scaling_rejected(self):
        with pytest.raises(DimensionError):
            TriangularMap([0, 1], [Poly.zero(2), Poly.zero(2)])

    def test_inverse_simple_shear(self):
        beta = TriangularMap([1, 1], [x(2, 2) ** 2, Poly.zero(2)])
        assert beta.inverse().to_endo() == Endo([x(2, 1) - x(2, 2) ** 2, x(2, 2)])

    def test_inverse_with_scaling(self):
        beta = TriangularMap([2, 1], [x(2, 2) ** 2, Poly.zero(2)])
        expected = Endo([x(2, 1) / 2 - x(2, 2) ** 2 / 2, x(2, 2)])
        assert beta.inverse().to_endo() == expected

    def test_inverse_three_variables_by_composition(self):
        beta = TriangularMap(
            [1, 1, 1],
            [x(3, 2) ** 2 + x(3, 3), x(3, 3) ** 2, Poly.const(3, 1)],
        )
        composed = beta.to_endo().compose(beta.inverse().to_endo())
        assert composed == Endo.identity(3)

    def test_random_inverse_composes_to_identity(self):
        for seed in range(25):
            beta = random_triangular(3, seed, 3)
            assert beta.to_endo().compose(beta.inverse().to_endo()) == Endo.identity(3)

    def test_generators_satisfy_their_predicates(self):
        for seed in range(20):
            assert random_triangular(3, seed, 3).to_endo().is_triangular()
            assert random_affine(3, seed).to_endo().is_affine()


class TestWord:
    def test_pinned_orientation(self):
        swap = AffineMap.transposition(2, 1, 2)
        shear = TriangularMap([1, 1], [x(2, 2) ** 2, Poly.zero(2)])
        word = Word([(swap, 1), (shear, 1)])
        assert word.to_endo() == Endo([x(2, 2), x(2, 1) + x(2, 2) ** 2])

    def test_letter_and_its_inverse_cancel(self):
        beta = random_triangular(2, 5, 3)
        word = Word([(beta, 1), (beta, -1)])
        assert word.to_endo() == Endo.identity(2)

    def test_word_inverse_literal_formula_small(self):
        for seed in range(10):
            word = random_tame_word(2, seed, 2, 2)
            lhs = word.to_endo().compose(word.inverse().to_endo())
            assert lhs == Endo.identity(2)

    def test_word_inverse_via_concatenation(self):
        for seed in range(30):
            n = 2 + seed % 3
            word = random_tame_word(n, seed, 1 + seed % 4, 2)
            assert word.concat(word.inverse()).to_endo() == Endo.identity(n)

    def test_opaque_generator_requires_registered_inverse(self):
        sigma = Endo([x(2, 1) + x(2, 2) ** 2, x(2, 2)])
        bare = OpaqueGenerator("phi", sigma)
        with pytest.raises(MissingInverse):
            Word([(bare, -1)])
        inv = Endo([x(2, 1) - x(2, 2) ** 2, x(2, 2)])
        rich = OpaqueGenerator("phi", sigma, inv)
        word = Word([(rich, 1), (rich, -1)])
        assert word.to_endo() == Endo.identity(2)

    def test_opaque_inverse_is_validated(self):
        sigma = Endo([x(2, 1) + x(2, 2) ** 2, x(2, 2)])
        with pytest.raises(ConsistencyError):
            OpaqueGenerator("phi", sigma, sigma)

    def test_nagata_opaque_letter(self):
        gen = nagata_generator()
        word = Word([(gen, 1), (gen, -1)])
        assert word.to_endo() == Endo.identity(3)


class TestSamplers:
    def test_determinism(self):
        a = random_tame_word(3, 42, 4, 3)
        b = random_tame_word(3, 42, 4, 3)
        assert a == b
        assert format_word(a) == format_word(b)

    def test_different_seeds_differ(self):
        words = {format_word(random_tame_word(3, seed, 4, 3)) for seed in range(8)}
        assert len(words) > 1

    def test_degree_bound(self):
        for seed in range(20):
            length, dmax = 1 + seed % 4, 3
            word = random_tame_word(2, seed, length, dmax)
            assert word.to_endo().degree() <= dmax**length

    def test_sampled_words_have_constant_nonzero_jacobian(self):
        for seed in range(100):
            n = 2 + seed % 3
            word = random_tame_word(n, seed, 1 + seed % 4, 3)
            jac = word.to_endo().jacobian_det()
            assert jac.is_constant()
            assert not jac.is_zero


class TestNagata:
    def test_constructor_validates(self):
        forward, backward = nagata()
        assert forward.compose(backward) == Endo.identity(3)
        assert backward.compose(forward) == Endo.identity(3)

    def test_jacobian_is_one(self):
        forward, _ = nagata()
        assert forward.jacobian_det() == Poly.const(3, 1)

    def test_affine_part_is_identity(self):
        forward, _ = nagata()
        assert forward.affine_part() == Endo.identity(3)

    def test_delta_invariance(self):
        forward, backward = nagata()
        delta = nagata_delta()
        assert delta.substitute(list(forward.components)) == delta
        assert delta.substitute(list(backward.components)) == delta


class TestWordFormat:
    def test_format_shapes(self):
        swap = AffineMap.transposition(2, 1, 2)
        shear = TriangularMap([1, 1], [x(2, 2) ** 2, Poly.zero(2)])
        word = Word([(swap, 1), (shear, -1)])
        text = format_word(word)
        assert text == "A(0 1,1 0;0 0); B(1 1;x2^2,0)^-1"
