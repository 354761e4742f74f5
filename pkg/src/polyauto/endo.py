"""The monoid of polynomial endomorphisms under substitution composition.

An endomorphism is an n-tuple of t-free polynomials (f1, ..., fn) in
x1..xn.  The product ``compose(s, u)`` substitutes the components of u
into those of s, so that as a map on points it acts as "s after u":

    compose(s, u)(a) == s(u(a))

All modules in this package rely on that orientation; the evaluation
homomorphism tests pin it.  Degree-bounded endomorphisms also embed
linearly into coefficient vectors: an n-tuple of polynomials of degree at
most d carries n * C(n+d, d) coefficients (C(n+d, d) monomials per
component), listed in a frozen graded-lexicographic order.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd
from typing import Sequence

from . import _linalg
from .errors import DegenerateInput, DimensionError, FiltrationError
from .poly import NEG_INF, Poly, Scalar, _as_fraction


def monomials_upto(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All x-exponent tuples of total degree <= degree, in the frozen order.

    Monomials are listed by increasing total degree; ties are broken by
    increasing lexicographic comparison of the exponent tuple (e1, ..., en),
    which makes later variables come first within each degree block:
    for n = 2, d = 2 the order is 1, x2, x1, x2^2, x1*x2, x1^2.
    """

    def gen(prefix, remaining, slots):
        if slots == 0:
            yield prefix
            return
        for e in range(remaining + 1):
            yield from gen(prefix + (e,), remaining - e, slots - 1)

    found = list(gen((), degree, nvars))
    found.sort(key=lambda key: (sum(key), key))
    return found


class CoeffVector:
    """Coefficient embedding of a degree-bounded endomorphism.

    Entries are the coefficients of the components, concatenated in
    component order 1..n, each listed over ``monomials_upto(n, d)``.  The
    length is always n * C(n+d, d).
    """

    __slots__ = ("n", "d", "entries")

    def __init__(self, n: int, d: int, entries: Sequence[Fraction]):
        expected = n * comb(n + d, d)
        entries = tuple(_as_fraction(e) for e in entries)
        if len(entries) != expected:
            raise FiltrationError(
                f"coefficient vector for n={n}, d={d} needs {expected} entries, got {len(entries)}"
            )
        self.n = n
        self.d = d
        self.entries = entries

    def __eq__(self, other):
        if not isinstance(other, CoeffVector):
            return NotImplemented
        return (self.n, self.d, self.entries) == (other.n, other.d, other.entries)

    def __hash__(self):
        return hash((self.n, self.d, self.entries))

    def __repr__(self):
        return f"CoeffVector(n={self.n}, d={self.d}, len={len(self.entries)})"


class Endo:
    """An n-tuple of t-free polynomials under substitution composition."""

    __slots__ = ("n", "components", "_hash")

    def __init__(self, components: Sequence[Poly]):
        components = tuple(components)
        if not components:
            raise DimensionError("an endomorphism needs at least one component")
        n = len(components)
        for f in components:
            if not isinstance(f, Poly):
                raise DimensionError("components must be Poly values")
            if f.nvars != n:
                raise DimensionError(
                    f"component has {f.nvars} variables, expected {n} (one per component)"
                )
            if f.mentions_t():
                raise DimensionError("endomorphism components must not involve t")
        self.n = n
        self.components = components
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "Endo":
        return cls(Poly.variables(n))

    # -- monoid structure ----------------------------------------------------

    def compose(self, other: "Endo") -> "Endo":
        """Substitution product; acts on points as self after other."""
        if not isinstance(other, Endo):
            raise DimensionError("can only compose with another endomorphism")
        if self.n != other.n:
            raise DimensionError(f"cannot compose maps on {self.n} and {other.n} variables")
        images = list(other.components)
        return Endo([f.substitute(images) for f in self.components])

    def __mul__(self, other):
        if isinstance(other, Endo):
            return self.compose(other)
        return NotImplemented

    def is_identity(self) -> bool:
        return self == Endo.identity(self.n)

    # -- degree and structure --------------------------------------------------

    def degree(self) -> int:
        """Maximum component degree; rejects the all-zero endomorphism."""
        d = max(f.total_degree() for f in self.components)
        if d == NEG_INF:
            raise DegenerateInput("the all-zero endomorphism has no degree")
        return d

    def affine_part(self) -> "Endo":
        """Truncation of each component to its constant and linear terms."""
        out = []
        for f in self.components:
            kept = {k: c for k, c in f.terms().items() if sum(k[:-1]) <= 1}
            out.append(Poly(self.n, kept))
        return Endo(out)

    def has_identity_affine_part(self) -> bool:
        return self.affine_part() == Endo.identity(self.n)

    def linear_matrix(self) -> _linalg.Matrix:
        """The n x n matrix of linear coefficients (row i: component i)."""
        rows = []
        for f in self.components:
            row = []
            for j in range(1, self.n + 1):
                key = tuple(1 if k == j else 0 for k in range(1, self.n + 1))
                row.append(f.coefficient(key))
            rows.append(tuple(row))
        return tuple(rows)

    def translation(self) -> tuple[Fraction, ...]:
        return tuple(f.constant_term() for f in self.components)

    def is_affine(self) -> bool:
        """Degree one with invertible linear part."""
        try:
            if self.degree() != 1:
                return False
        except DegenerateInput:
            return False
        return _linalg.det(self.linear_matrix()) != 0

    def is_triangular(self) -> bool:
        """Component i must be a_i*x_i + p_i with a_i != 0 and p_i in later variables."""
        for i, f in enumerate(self.components, start=1):
            key = tuple(1 if k == i else 0 for k in range(1, self.n + 1))
            scale = f.coefficient(key)
            if scale == 0:
                return False
            shift = f - scale * Poly.variable(self.n, i)
            if any(j <= i for j in shift.support_variables()):
                return False
        return True

    # -- calculus ---------------------------------------------------------------

    def jacobian_matrix(self) -> tuple[tuple[Poly, ...], ...]:
        return tuple(
            tuple(f.partial_derivative(j) for j in range(1, self.n + 1))
            for f in self.components
        )

    def jacobian_det(self) -> Poly:
        # Clear denominators one row at a time: integer coefficients keep the
        # determinant arithmetic on the fast path, and the collected factor
        # divides out exactly at the end.
        rows = []
        divisor = 1
        for row in self.jacobian_matrix():
            multiplier = 1
            for entry in row:
                for c in entry.terms().values():
                    if isinstance(c, Fraction):
                        multiplier = multiplier * c.denominator // gcd(
                            multiplier, c.denominator
                        )
            if multiplier != 1:
                row = tuple(_scale_to_integer(entry, multiplier) for entry in row)
                divisor *= multiplier
            rows.append(row)
        determinant = poly_det(rows)
        return determinant / divisor if divisor != 1 else determinant

    # -- evaluation ---------------------------------------------------------------

    def evaluate(self, point: Sequence[Scalar]) -> tuple[Fraction, ...]:
        if len(point) != self.n:
            raise DimensionError(f"expected a point of length {self.n}")
        coords = [_as_fraction(v) for v in point]
        return tuple(f.evaluate(coords) for f in self.components)

    __call__ = evaluate

    # -- coefficient embedding ------------------------------------------------------

    def coeff_vector(self, d: int) -> CoeffVector:
        """Linear encoding of an endomorphism of degree <= d."""
        if self.degree() > d:
            raise FiltrationError(
                f"degree {self.degree()} endomorphism does not lie in the degree-{d} filtration"
            )
        order = monomials_upto(self.n, d)
        entries: list[Fraction] = []
        for f in self.components:
            entries.extend(f.coefficient(key) for key in order)
        return CoeffVector(self.n, d, entries)

    @classmethod
    def from_coeff_vector(cls, vector: CoeffVector) -> "Endo":
        order = monomials_upto(vector.n, vector.d)
        per = len(order)
        components = []
        for i in range(vector.n):
            chunk = vector.entries[i * per : (i + 1) * per]
            components.append(
                Poly(vector.n, {key: c for key, c in zip(order, chunk) if c})
            )
        return cls(components)

    # -- equality and rendering --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Endo):
            return NotImplemented
        return self.n == other.n and self.components == other.components

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.n, self.components))
            self._hash = h
        return h

    def __str__(self):
        return "[" + ", ".join(str(f) for f in self.components) + "]"

    def __repr__(self):
        return f"Endo({str(self)!r})"


def poly_det(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Exact determinant of a square matrix of polynomials.

    Dynamic programming over column subsets (Laplace expansion with shared
    minors): n * 2^(n-1) polynomial multiplications instead of the n! of a
    naive permanent-style expansion.  Rows are processed sparsest first so
    the dense rows only multiply the final minors, which keeps the largest
    intermediate products few.
    """
    n = len(rows)
    if n == 0:
        raise DimensionError("empty matrix")
    nvars = rows[0][0].nvars
    for row in rows:
        if len(row) != n:
            raise DimensionError("determinant needs a square matrix")
    order = sorted(range(n), key=lambda i: sum(len(e.terms()) for e in rows[i]))
    parity = _permutation_parity(order)
    rows = [rows[i] for i in order]
    # minors[S] = det of the submatrix on rows 0..k-1 and column set S
    minors: dict[frozenset, Poly] = {frozenset(): Poly.const(nvars, 1)}
    for k in range(n):
        new: dict[frozenset, Poly] = {}
        for cols, minor in minors.items():
            if minor.is_zero:
                continue
            for j in range(n):
                if j in cols:
                    continue
                entry = rows[k][j]
                if entry.is_zero:
                    continue
                term = entry * minor
                # cofactor sign: row parity k plus position of j in the enlarged set
                pos = sum(1 for c in cols if c < j)
                signed = term if (k + pos) % 2 == 0 else -term
                key = frozenset(cols | {j})
                acc = new.get(key)
                new[key] = signed if acc is None else acc + signed
        if not new:
            return Poly.zero(nvars)
        minors = new
    determinant = minors.get(frozenset(range(n)), Poly.zero(nvars))
    return -determinant if parity else determinant


def _scale_to_integer(entry: Poly, multiplier: int) -> Poly:
    """entry * multiplier with genuinely integer coefficients.

    The multiplier must be a common multiple of all denominators; plain
    scalar multiplication would leave denominator-1 Fractions behind, which
    miss the integer fast path.
    """
    out = {}
    for key, c in entry.terms().items():
        if isinstance(c, Fraction):
            out[key] = c.numerator * (multiplier // c.denominator)
        else:
            out[key] = c * multiplier
    return Poly(entry.nvars, out)


def _permutation_parity(order: Sequence[int]) -> int:
    seen = [False] * len(order)
    parity = 0
    for start in range(len(order)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity
