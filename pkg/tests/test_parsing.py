"""Tests for the polynomial/endomorphism text formats."""

from fractions import Fraction

import pytest

from polyauto import Poly
from polyauto.endo import Endo
from polyauto.errors import ParseError
from polyauto.groups import nagata, random_tame_word
from polyauto.parsing import (
    parse_endo,
    parse_poly,
    parse_rational,
    parse_rational_list,
)


def x(nvars, i):
    return Poly.variable(nvars, i)


class TestParsePoly:
    def test_simple(self):
        assert parse_poly("x1 + x2^2", nvars=2) == x(2, 1) + x(2, 2) ** 2

    def test_implicit_multiplication(self):
        assert parse_poly("2x1(x1+1)", nvars=1) == 2 * x(1, 1) ** 2 + 2 * x(1, 1)

    def test_fraction_coefficient(self):
        assert parse_poly("1/2*x1 - 3", nvars=1) == x(1, 1) / 2 - 3

    def test_leading_minus(self):
        assert parse_poly("-x1^2 + 1", nvars=1) == -(x(1, 1) ** 2) + 1

    def test_power_chains_left(self):
        assert parse_poly("x1^2^3", nvars=1) == x(1, 1) ** 6

    def test_integer_powers(self):
        assert parse_poly("2^3", nvars=1) == Poly.const(1, 8)

    def test_t_parameter(self):
        assert parse_poly("t^2*x1", nvars=1) == Poly.t(1) ** 2 * x(1, 1)

    def test_t_rejectable(self):
        with pytest.raises(ParseError):
            parse_poly("t*x1", nvars=1, allow_t=False)

    def test_aliases(self):
        assert parse_poly("x*y*z", nvars=3) == x(3, 1) * x(3, 2) * x(3, 3)

    def test_alias_limit(self):
        with pytest.raises(ParseError):
            parse_poly("y + x4", nvars=4)

    def test_zero_denominator(self):
        with pytest.raises(ParseError):
            parse_poly("1/0", nvars=1)

    def test_error_position(self):
        with pytest.raises(ParseError) as info:
            parse_poly("x1 + @", nvars=1)
        assert info.value.position == 5

    def test_unbalanced_parens(self):
        with pytest.raises(ParseError):
            parse_poly("(x1 + 1", nvars=1)

    def test_variable_slash_rejected(self):
        with pytest.raises(ParseError):
            parse_poly("x1/2", nvars=1)


class TestParseEndo:
    def test_simple(self):
        assert parse_endo("[x1 + x2^2, x2]") == Endo([x(2, 1) + x(2, 2) ** 2, x(2, 2)])

    def test_nagata_aliases(self):
        text = "[x - 2*y*(y^2+x*z) - z*(y^2+x*z)^2, y + z*(y^2+x*z), z]"
        forward, _ = nagata()
        assert parse_endo(text) == forward

    def test_non_automorphism_is_still_parsable(self):
        assert parse_endo("[x1, x1]") == Endo([x(2, 1), x(2, 1)])

    def test_index_exceeding_component_count(self):
        with pytest.raises(ParseError):
            parse_endo("[x1 + x3, x2]")

    def test_alias_with_too_many_components(self):
        with pytest.raises(ParseError):
            parse_endo("[y, x2, x3, x4]")

    def test_t_rejected(self):
        with pytest.raises(ParseError):
            parse_endo("[x1 + t, x2]")

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_endo("[x1, x2] extra")

    def test_trailing_whitespace_accepted(self):
        # piped input usually ends with a newline
        assert parse_endo("[x1, x2]\n") == Endo.identity(2)
        assert parse_endo("  [x1, x2]  \n\t") == Endo.identity(2)

    def test_round_trip_on_corpus(self):
        corpus = [
            Endo.identity(2),
            Endo([x(2, 1) + x(2, 2) ** 2, x(2, 2)]),
            nagata()[0],
            nagata()[1],
            Endo([2 * x(2, 1) + x(2, 2) ** 3 / 4 - 1, x(2, 2) / 3 + 5]),
        ]
        for seed in range(10):
            n = 2 + seed % 3
            corpus.append(random_tame_word(n, seed, 1 + seed % 4, 3).to_endo())
        for sigma in corpus:
            assert parse_endo(str(sigma)) == sigma


class TestParseRational:
    def test_integers(self):
        assert parse_rational("42") == 42
        assert parse_rational("-7") == -7

    def test_fractions(self):
        assert parse_rational("1/2") == Fraction(1, 2)
        assert parse_rational("-3/4") == Fraction(-3, 4)

    def test_rejects_garbage(self):
        with pytest.raises(ParseError):
            parse_rational("1.5")
        with pytest.raises(ParseError):
            parse_rational("1/0")

    def test_list(self):
        assert parse_rational_list("1,-1,1/2") == [1, -1, Fraction(1, 2)]
        with pytest.raises(ParseError):
            parse_rational_list(",")
