"""Constructive generators of the automorphism group and words over them.

Two generator families are materialized: invertible affine maps (matrix
plus translation) and triangular maps (per-variable scalings plus shifts
that only use later variables).  Arbitrary automorphisms that should enter
words without a known generator decomposition are wrapped as opaque
generators, optionally carrying a registered inverse.

A word is a sequence of (generator, +1/-1) letters.  Converting a word to
an endomorphism folds the composition from the right, so the substitution
work always plugs a large inner map into a small outer letter; this keeps
exact arithmetic tractable for long words.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import _linalg
from .endo import Endo
from .errors import ConsistencyError, DimensionError, MissingInverse
from .poly import Poly, Scalar, _as_fraction


class AffineMap:
    """An invertible map x -> Mx + v; singular matrices are rejected at construction."""

    __slots__ = ("n", "matrix", "translation", "det")

    def __init__(self, matrix: Sequence[Sequence[Scalar]], translation: Sequence[Scalar]):
        rows = tuple(tuple(_as_fraction(e) for e in row) for row in matrix)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise DimensionError("affine map needs a square matrix")
        vec = tuple(_as_fraction(v) for v in translation)
        if len(vec) != n:
            raise DimensionError("translation length must match the matrix size")
        d = _linalg.det(rows)
        if d == 0:
            raise DimensionError("affine map needs an invertible linear part")
        self.n = n
        self.matrix = rows
        self.translation = vec
        self.det = d

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], [0] * n)

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "AffineMap":
        """The permutation swapping x_i and x_j (self-inverse)."""
        if not (1 <= i <= n and 1 <= j <= n):
            raise DimensionError(f"transposition indices must lie in 1..{n}")
        perm = list(range(n))
        perm[i - 1], perm[j - 1] = perm[j - 1], perm[i - 1]
        return cls([[int(perm[r] == c) for c in range(n)] for r in range(n)], [0] * n)

    @classmethod
    def diagonal(cls, scalings: Sequence[Scalar]) -> "AffineMap":
        n = len(scalings)
        return cls(
            [[scalings[i] if i == j else 0 for j in range(n)] for i in range(n)],
            [0] * n,
        )

    @classmethod
    def from_endo(cls, sigma: Endo) -> "AffineMap":
        if not sigma.is_affine():
            raise DimensionError("endomorphism is not an invertible affine map")
        return cls(sigma.linear_matrix(), sigma.translation())

    def to_endo(self) -> Endo:
        comps = []
        for i in range(self.n):
            f = Poly.const(self.n, self.translation[i])
            for j in range(self.n):
                c = self.matrix[i][j]
                if c:
                    f = f + c * Poly.variable(self.n, j + 1)
            comps.append(f)
        return Endo(comps)

    def inverse(self) -> "AffineMap":
        inv = _linalg.invert(self.matrix)
        shift = _linalg.mat_vec(inv, self.translation)
        return AffineMap(inv, [-v for v in shift])

    def compose(self, other: "AffineMap") -> "AffineMap":
        """self after other, matching the endomorphism composition law."""
        if self.n != other.n:
            raise DimensionError("affine maps on different variable counts")
        matrix = _linalg.mat_mul(self.matrix, other.matrix)
        shift = _linalg.mat_vec(self.matrix, other.translation)
        return AffineMap(matrix, [a + b for a, b in zip(shift, self.translation)])

    def __eq__(self, other):
        if not isinstance(other, AffineMap):
            return NotImplemented
        return self.matrix == other.matrix and self.translation == other.translation

    def __hash__(self):
        return hash((self.matrix, self.translation))

    def __repr__(self):
        return f"AffineMap(matrix={self.matrix}, translation={self.translation})"


class TriangularMap:
    """Component i is a_i*x_i + p_i with a_i != 0 and p_i using only later variables."""

    __slots__ = ("n", "scalings", "shifts")

    def __init__(self, scalings: Sequence[Scalar], shifts: Sequence[Poly]):
        scal = tuple(_as_fraction(a) for a in scalings)
        n = len(scal)
        if n == 0:
            raise DimensionError("triangular map needs at least one variable")
        if any(a == 0 for a in scal):
            raise DimensionError("triangular scalings must be nonzero")
        shifts = tuple(shifts)
        if len(shifts) != n:
            raise DimensionError("one shift per variable is required")
        for i, p in enumerate(shifts, start=1):
            if not isinstance(p, Poly) or p.nvars != n:
                raise DimensionError("shifts must be polynomials in the same variables")
            if p.mentions_t():
                raise DimensionError("shifts must not involve t")
            if any(j <= i for j in p.support_variables()):
                raise DimensionError(
                    f"shift {i} may only use variables of index greater than {i}"
                )
        self.n = n
        self.scalings = scal
        self.shifts = shifts

    @classmethod
    def elementary(cls, n: int, shift: Poly) -> "TriangularMap":
        """x1 -> x1 + shift(x2..xn), all other variables fixed."""
        shifts = [shift] + [Poly.zero(n) for _ in range(n - 1)]
        return cls([1] * n, shifts)

    @classmethod
    def from_endo(cls, sigma: Endo) -> "TriangularMap":
        if not sigma.is_triangular():
            raise DimensionError("endomorphism is not triangular")
        scalings = []
        shifts = []
        for i, f in enumerate(sigma.components, start=1):
            key = tuple(1 if k == i else 0 for k in range(1, sigma.n + 1))
            a = f.coefficient(key)
            scalings.append(a)
            shifts.append(f - a * Poly.variable(sigma.n, i))
        return cls(scalings, shifts)

    def to_endo(self) -> Endo:
        return Endo(
            [
                self.scalings[i] * Poly.variable(self.n, i + 1) + self.shifts[i]
                for i in range(self.n)
            ]
        )

    def inverse(self) -> "TriangularMap":
        """Back-substitution from the last variable upward."""
        n = self.n
        inv_comps: list[Poly] = [Poly.zero(n)] * n
        for i in range(n - 1, -1, -1):
            # invert x_{i+1} = a*y + p(y_{i+2}..y_n): y = (x_{i+1} - p(inv...)) / a
            images = [
                inv_comps[j] if j > i else Poly.variable(n, j + 1) for j in range(n)
            ]
            p_eval = self.shifts[i].substitute(images)
            inv_comps[i] = (Poly.variable(n, i + 1) - p_eval) / self.scalings[i]
        return TriangularMap.from_endo(Endo(inv_comps))

    def compose(self, other: "TriangularMap") -> "TriangularMap":
        return TriangularMap.from_endo(self.to_endo().compose(other.to_endo()))

    def __eq__(self, other):
        if not isinstance(other, TriangularMap):
            return NotImplemented
        return self.scalings == other.scalings and self.shifts == other.shifts

    def __hash__(self):
        return hash((self.scalings, self.shifts))

    def __repr__(self):
        return f"TriangularMap(scalings={self.scalings}, shifts={self.shifts})"


class OpaqueGenerator:
    """A named automorphism adjoined to words without a generator decomposition.

    An inverse may be registered at construction; only then may word
    letters carry exponent -1 on this generator.
    """

    __slots__ = ("name", "endo", "inverse_endo")

    def __init__(self, name: str, endo: Endo, inverse_endo: Endo | None = None):
        if inverse_endo is not None:
            if endo.compose(inverse_endo) != Endo.identity(endo.n):
                raise ConsistencyError(
                    f"registered inverse of {name!r} does not compose to the identity"
                )
        self.name = name
        self.endo = endo
        self.inverse_endo = inverse_endo

    @property
    def n(self) -> int:
        return self.endo.n

    def __eq__(self, other):
        if not isinstance(other, OpaqueGenerator):
            return NotImplemented
        return (self.name, self.endo, self.inverse_endo) == (
            other.name,
            other.endo,
            other.inverse_endo,
        )

    def __hash__(self):
        return hash((self.name, self.endo))

    def __repr__(self):
        return f"OpaqueGenerator({self.name!r})"


Generator = Union[AffineMap, TriangularMap, OpaqueGenerator]


def generator_to_endo(gen: Generator, exponent: int = 1) -> Endo:
    if exponent not in (1, -1):
        raise DimensionError("letter exponents must be +1 or -1")
    if isinstance(gen, OpaqueGenerator):
        if exponent == 1:
            return gen.endo
        if gen.inverse_endo is None:
            raise MissingInverse(f"no inverse registered for {gen.name!r}")
        return gen.inverse_endo
    mapped = gen if exponent == 1 else gen.inverse()
    return mapped.to_endo()


class Word:
    """A sequence of signed generator letters with exact inversion."""

    __slots__ = ("n", "letters")

    def __init__(self, letters: Iterable[tuple[Generator, int]]):
        letters = tuple((gen, int(exp)) for gen, exp in letters)
        if not letters:
            raise DimensionError("a word needs at least one letter")
        n = letters[0][0].n
        for gen, exp in letters:
            if gen.n != n:
                raise DimensionError("all letters must act on the same variables")
            if exp not in (1, -1):
                raise DimensionError("letter exponents must be +1 or -1")
            if (
                exp == -1
                and isinstance(gen, OpaqueGenerator)
                and gen.inverse_endo is None
            ):
                raise MissingInverse(
                    f"letter {gen.name!r}^-1 needs an inverse registered at construction"
                )
        self.n = n
        self.letters = letters

    def to_endo(self) -> Endo:
        # Fold from the right: each step substitutes the accumulated (large)
        # map into one small letter, which bounds intermediate degrees by the
        # true degree of the result.
        result: Endo | None = None
        for gen, exp in reversed(self.letters):
            layer = generator_to_endo(gen, exp)
            result = layer if result is None else layer.compose(result)
        return result

    def inverse(self) -> "Word":
        return Word([(gen, -exp) for gen, exp in reversed(self.letters)])

    def concat(self, other: "Word") -> "Word":
        if self.n != other.n:
            raise DimensionError("words on different variable counts")
        return Word(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


def format_word(word: Word) -> str:
    """Render a word in the CLI text format.

    Letters are semicolon-separated.  Affine letters print as
    ``A(row,row,...;translation)`` with space-separated entries, triangular
    letters as ``B(scalings;shift,shift,...)``, opaque letters by name; an
    inverted letter carries the suffix ``^-1``.
    """
    chunks = []
    for gen, exp in word.letters:
        if isinstance(gen, AffineMap):
            rows = ",".join(" ".join(str(e) for e in row) for row in gen.matrix)
            vec = " ".join(str(v) for v in gen.translation)
            body = f"A({rows};{vec})"
        elif isinstance(gen, TriangularMap):
            scal = " ".join(str(a) for a in gen.scalings)
            shifts = ",".join(str(p) for p in gen.shifts)
            body = f"B({scal};{shifts})"
        else:
            body = gen.name
        chunks.append(body + ("^-1" if exp == -1 else ""))
    return "; ".join(chunks)


# -- seeded samplers ----------------------------------------------------------
#
# Distributions are frozen so suites are reproducible.  Affine letters draw,
# with equal probability, either a dense matrix with integer entries in
# [-3, 3] (resampling until invertible) or a scaled permutation matrix with
# scalings in {-2, -1, 1, 2}; translations are integers in [-3, 3].  The
# permutation shape keeps long compositions sparse, so exact suites stay
# desk-scale.  Triangular scalings draw from {-2, -1, 1, 2} and each shift
# is a sparse polynomial with at most 4 terms, integer coefficients of
# magnitude at most 10, and degree at most dmax in the allowed later
# variables.


def _rng(seed: int | random.Random) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_affine(n: int, seed: int | random.Random) -> AffineMap:
    rng = _rng(seed)
    if rng.random() < 0.5:
        while True:
            matrix = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
            if _linalg.det(tuple(tuple(Fraction(e) for e in row) for row in matrix)) != 0:
                break
    else:
        perm = list(range(n))
        rng.shuffle(perm)
        matrix = [
            [rng.choice([-2, -1, 1, 2]) if perm[r] == c else 0 for c in range(n)]
            for r in range(n)
        ]
    translation = [rng.randint(-3, 3) for _ in range(n)]
    return AffineMap(matrix, translation)


def _random_shift(rng: random.Random, n: int, lowest: int, dmax: int) -> Poly:
    """Sparse polynomial in x_lowest..x_n with degree <= dmax."""
    allowed = list(range(lowest, n + 1))
    terms: dict[tuple, Fraction] = {}
    for _ in range(rng.randint(0, 4)):
        key = [0] * (n + 1)
        if allowed:
            for _ in range(rng.randint(0, dmax)):
                key[rng.choice(allowed) - 1] += 1
        coeff = rng.randint(1, 10) * rng.choice([-1, 1])
        terms[tuple(key)] = terms.get(tuple(key), Fraction(0)) + coeff
    return Poly(n, terms)


def random_triangular(n: int, seed: int | random.Random, dmax: int) -> TriangularMap:
    if dmax < 1:
        raise DimensionError("dmax must be at least 1")
    rng = _rng(seed)
    scalings = [Fraction(rng.choice([-2, -1, 1, 2])) for _ in range(n)]
    shifts = [_random_shift(rng, n, i + 1, dmax) for i in range(1, n + 1)]
    return TriangularMap(scalings, shifts)


def random_tame_word(
    n: int, seed: int | random.Random, length: int, dmax: int
) -> Word:
    """A word of alternating affine and triangular letters.

    All letters carry exponent +1, which keeps the degree of the composed
    word at most dmax**length; inverses are exercised through
    :meth:`Word.inverse`, whose triangular letters may have higher degree
    than the originals.
    """
    if length < 1:
        raise DimensionError("word length must be at least 1")
    rng = _rng(seed)
    start_affine = rng.random() < 0.5
    letters: list[tuple[Generator, int]] = []
    for k in range(length):
        affine_turn = (k % 2 == 0) == start_affine
        gen: Generator = (
            random_affine(n, rng) if affine_turn else random_triangular(n, rng, dmax)
        )
        letters.append((gen, 1))
    return Word(letters)


# -- gallery -------------------------------------------------------------------


def nagata_delta() -> Poly:
    """The quadric x2^2 + x1*x3 preserved by the Nagata map."""
    x1, x2, x3 = Poly.variables(3)
    return x2**2 + x1 * x3


def nagata() -> tuple[Endo, Endo]:
    """The Nagata automorphism of 3-space and its inverse.

    Both transcriptions are validated at construction by composing to the
    identity in both orders; a failure raises rather than returning a
    corrupt pair.
    """
    x1, x2, x3 = Poly.variables(3)
    delta = nagata_delta()
    forward = Endo([x1 - 2 * x2 * delta - x3 * delta**2, x2 + x3 * delta, x3])
    backward = Endo([x1 + 2 * x2 * delta - x3 * delta**2, x2 - x3 * delta, x3])
    ident = Endo.identity(3)
    if forward.compose(backward) != ident or backward.compose(forward) != ident:
        raise ConsistencyError("Nagata transcription failed its inversion check")
    return forward, backward


def nagata_generator() -> OpaqueGenerator:
    forward, backward = nagata()
    return OpaqueGenerator("nagata", forward, backward)
