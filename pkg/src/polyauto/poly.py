"""Sparse multivariate polynomials over exact rationals.

A polynomial in x1..xn, optionally involving one distinguished parameter
named t, is stored as a dictionary mapping exponent tuples to nonzero
:class:`fractions.Fraction` coefficients.  Keys have length ``nvars + 1``;
the last slot holds the exponent of t.  The zero polynomial has an empty
term map, zero coefficients are never stored, and equality is structural,
so canonical forms are unique.

All values are immutable after construction and every operation is a pure
function; polynomials can be shared freely between threads.

    >>> x1, x2 = Poly.variable(2, 1), Poly.variable(2, 2)
    >>> str((x2 + x1) * (x2 - x1))
    '-x1^2 + x2^2'
    >>> (x1 + x2 ** 2).total_degree()
    2

Degrees always refer to the x-variables only: t never counts toward the
total degree, and substitution leaves t fixed unless an explicit image for
it is supplied.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import DimensionError, UndefinedValuation

#: Degree of the zero polynomial.  A genuine minus infinity (never -1), so
#: degree arithmetic like deg(p*q) == deg(p) + deg(q) stays exceptionless.
NEG_INF = float("-inf")

Scalar = Union[int, Fraction]

_ZERO = Fraction(0)

# Packed-exponent multiplication: each exponent occupies a 16-bit field, so
# operands must keep every exponent below 2**15 for the field sums not to
# carry.  Inputs beyond that fall back to tuple arithmetic.
_PACK_BITS = 16
_PACK_MASK = (1 << _PACK_BITS) - 1
_PACK_LIMIT = 1 << (_PACK_BITS - 1)


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def _norm_coeff(value):
    # ints are much cheaper than Fractions; demote exact integers
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def _pack_items(terms, shifts):
    out = []
    append = out.append
    for key, c in terms.items():
        packed = 0
        for e, s in zip(key, shifts):
            if e:
                if e >= _PACK_LIMIT:
                    return None
                packed |= e << s
        append((packed, c))
    return out


class Poly:
    """Immutable sparse polynomial in x1..xn and the parameter t."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, Scalar] | None = None):
        if nvars < 0:
            raise DimensionError("nvars must be non-negative")
        clean: dict[tuple, Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                key = tuple(key)
                if len(key) == nvars:
                    key = key + (0,)  # t-free input: pad the t slot
                elif len(key) != nvars + 1:
                    raise DimensionError(
                        f"exponent tuple {key} does not fit {nvars} variables"
                    )
                if any(e < 0 or not isinstance(e, int) for e in key):
                    raise DimensionError(f"exponents must be non-negative integers: {key}")
                c = _norm_coeff(_as_fraction(coeff))
                if c:
                    acc = clean.get(key)
                    c = c if acc is None else acc + c
                    if c:
                        clean[key] = c
                    else:
                        del clean[key]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _make(cls, nvars: int, terms: dict) -> "Poly":
        # Trusted fast path: terms already canonical (Fraction values, no zeros,
        # full-length keys).
        self = object.__new__(cls)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", terms)
        object.__setattr__(self, "_hash", None)
        return self

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._make(nvars, {})

    @classmethod
    def const(cls, nvars: int, value: Scalar) -> "Poly":
        c = _norm_coeff(_as_fraction(value))
        if not c:
            return cls.zero(nvars)
        return cls._make(nvars, {(0,) * (nvars + 1): c})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Poly":
        """The polynomial x_index, with 1-based index."""
        if not 1 <= index <= nvars:
            raise DimensionError(f"variable index {index} out of range 1..{nvars}")
        key = [0] * (nvars + 1)
        key[index - 1] = 1
        return cls._make(nvars, {tuple(key): 1})

    @classmethod
    def t(cls, nvars: int) -> "Poly":
        """The parameter t as a polynomial."""
        key = (0,) * nvars + (1,)
        return cls._make(nvars, {key: 1})

    @classmethod
    def variables(cls, nvars: int) -> list["Poly"]:
        return [cls.variable(nvars, i) for i in range(1, nvars + 1)]

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> dict[tuple, Fraction]:
        """A copy of the term map (exponent tuple, t slot last -> coefficient)."""
        return dict(self._terms)

    def __iter__(self) -> Iterator[tuple[tuple, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def mentions_t(self) -> bool:
        return any(key[-1] for key in self._terms)

    def is_constant(self) -> bool:
        return all(not any(key) for key in self._terms)

    def constant_term(self) -> Fraction:
        return _as_fraction(self._terms.get((0,) * (self.nvars + 1), 0))

    def coefficient(self, xexps: Sequence[int], t_exp: int = 0) -> Fraction:
        """Coefficient of the monomial with the given x-exponents and t-exponent."""
        if len(xexps) != self.nvars:
            raise DimensionError("exponent tuple length must equal nvars")
        return _as_fraction(self._terms.get(tuple(xexps) + (t_exp,), 0))

    def support_variables(self) -> set[int]:
        """1-based indices of the x-variables that actually occur."""
        found: set[int] = set()
        for key in self._terms:
            for i in range(self.nvars):
                if key[i]:
                    found.add(i + 1)
        return found

    # -- degrees and valuations -------------------------------------------

    def total_degree(self):
        """Maximum total degree in the x-variables; NEG_INF for zero. t is ignored."""
        if not self._terms:
            return NEG_INF
        return max(sum(key[:-1]) for key in self._terms)

    def degree_in(self, index: int):
        """Maximum exponent of x_index; NEG_INF for the zero polynomial."""
        if not 1 <= index <= self.nvars:
            raise DimensionError(f"variable index {index} out of range 1..{self.nvars}")
        if not self._terms:
            return NEG_INF
        return max(key[index - 1] for key in self._terms)

    def t_degree(self):
        if not self._terms:
            return NEG_INF
        return max(key[-1] for key in self._terms)

    def t_valuation(self) -> int:
        """Minimum exponent of t over all terms.  Undefined for zero."""
        if not self._terms:
            raise UndefinedValuation("the zero polynomial has no t-valuation")
        return min(key[-1] for key in self._terms)

    def valuation_in(self, indices: Iterable[int]) -> int:
        """Minimum, over terms, of the summed exponents of the given x-variables.

        This is the (x_i)_{i in indices}-adic valuation.  Raises
        UndefinedValuation for the zero polynomial (the valuation would be
        infinite).
        """
        idx = self._check_indices(indices)
        if not self._terms:
            raise UndefinedValuation("the zero polynomial has no valuation")
        return min(sum(key[i] for i in idx) for key in self._terms)

    def homogeneous_component(self, indices: Iterable[int], weight: int) -> "Poly":
        """Sum of the terms whose summed exponent over the given variables is weight."""
        idx = self._check_indices(indices)
        picked = {
            key: c for key, c in self._terms.items() if sum(key[i] for i in idx) == weight
        }
        return Poly._make(self.nvars, picked)

    def _check_indices(self, indices: Iterable[int]) -> tuple[int, ...]:
        idx = tuple(sorted(set(indices)))
        for i in idx:
            if not 1 <= i <= self.nvars:
                raise DimensionError(f"variable index {i} out of range 1..{self.nvars}")
        return tuple(i - 1 for i in idx)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionError(
                    f"variable counts differ: {self.nvars} vs {other.nvars}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.nvars, other)
        return None

    def __add__(self, other) -> "Poly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        out = dict(self._terms)
        for key, c in q._terms.items():
            acc = out.get(key)
            s = c if acc is None else acc + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Poly._make(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._make(self.nvars, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other) -> "Poly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return q + (-self)

    def __mul__(self, other) -> "Poly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        a, b = self._terms, q._terms
        if not a or not b:
            return Poly.zero(self.nvars)
        if len(a) > len(b):
            a, b = b, a
        shifts = tuple(i * _PACK_BITS for i in range(self.nvars + 1))
        pa = _pack_items(a, shifts)
        pb = _pack_items(b, shifts)
        if pa is None or pb is None:
            return self._mul_tuple_keys(a, b)
        acc: dict[int, Fraction] = {}
        get = acc.get
        for ka, ca in pa:
            for kb, cb in pb:
                key = ka + kb
                c = ca * cb
                old = get(key)
                if old is None:
                    acc[key] = c
                else:
                    s = old + c
                    if s:
                        acc[key] = s
                    else:
                        del acc[key]
        out = {
            tuple((p >> s) & _PACK_MASK for s in shifts): _norm_coeff(c)
            for p, c in acc.items()
        }
        return Poly._make(self.nvars, out)

    def _mul_tuple_keys(self, a, b) -> "Poly":
        # fallback for exponents too large to pack (never hit by this package)
        out: dict[tuple, Fraction] = {}
        get = out.get
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                key = tuple(map(int.__add__, k1, k2))
                c = c1 * c2
                acc = get(key)
                if acc is None:
                    out[key] = c
                else:
                    s = acc + c
                    if s:
                        out[key] = s
                    else:
                        del out[key]
        return Poly._make(self.nvars, out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                raise ZeroDivisionError("division of a polynomial by zero")
            inv = 1 / c
            return Poly._make(
                self.nvars, {k: _norm_coeff(v * inv) for k, v in self._terms.items()}
            )
        return NotImplemented

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = Poly.const(self.nvars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- calculus and substitution ------------------------------------------

    def partial_derivative(self, index: int) -> "Poly":
        """Formal partial derivative with respect to x_index (1-based)."""
        if not 1 <= index <= self.nvars:
            raise DimensionError(f"variable index {index} out of range 1..{self.nvars}")
        i = index - 1
        out: dict[tuple, Fraction] = {}
        for key, c in self._terms.items():
            e = key[i]
            if e:
                nk = key[:i] + (e - 1,) + key[i + 1 :]
                out[nk] = _norm_coeff(c * e)
        return Poly._make(self.nvars, out)

    def substitute(self, images: Sequence["Poly"], t_image: "Poly | None" = None) -> "Poly":
        """Replace x_i by images[i-1]; t is left fixed unless t_image is given.

        Images must all share this polynomial's variable count; they may
        mention t.
        """
        if len(images) != self.nvars:
            raise DimensionError(
                f"expected {self.nvars} substitution images, got {len(images)}"
            )
        for g in images:
            if not isinstance(g, Poly) or g.nvars != self.nvars:
                raise DimensionError("every substitution image must share nvars")
        if t_image is not None and t_image.nvars != self.nvars:
            raise DimensionError("t image must share nvars")
        n = self.nvars
        caches: list[dict[int, Poly]] = [dict() for _ in range(n + 1)]
        bases = list(images) + [t_image if t_image is not None else Poly.t(n)]

        def power(slot: int, e: int) -> Poly:
            cache = caches[slot]
            hit = cache.get(e)
            if hit is not None:
                return hit
            if e == 1:
                p = bases[slot]
            elif e % 2:
                p = power(slot, e - 1) * bases[slot]
            else:
                half = power(slot, e // 2)
                p = half * half
            cache[e] = p
            return p

        total = Poly.zero(n)
        for key, c in self._terms.items():
            prod = Poly.const(n, c)
            for slot in range(n + 1):
                e = key[slot]
                if e:
                    prod = prod * power(slot, e)
            total = total + prod
        return total

    def with_t_set(self, value: Scalar) -> "Poly":
        """Specialize t to an exact rational value."""
        v = _as_fraction(value)
        out: dict[tuple, Fraction] = {}
        zero_t = (0,)
        for key, c in self._terms.items():
            e = key[-1]
            nk = key[:-1] + zero_t
            nc = _norm_coeff(c * v**e) if e else c
            if not nc:
                continue
            acc = out.get(nk)
            s = nc if acc is None else acc + nc
            if s:
                out[nk] = s
            else:
                out.pop(nk, None)
        return Poly._make(self.nvars, out)

    def divide_t(self, power: int) -> "Poly":
        """Exact division by t**power; every term must carry at least that power."""
        if power == 0 or not self._terms:
            return self
        out: dict[tuple, Fraction] = {}
        for key, c in self._terms.items():
            if key[-1] < power:
                raise ValueError(f"term with t-exponent {key[-1]} is not divisible by t^{power}")
            out[key[:-1] + (key[-1] - power,)] = c
        return Poly._make(self.nvars, out)

    def evaluate(self, point: Sequence[Scalar], t_value: Scalar | None = None) -> Fraction:
        """Exact value at a rational point; t_value is required iff t occurs."""
        if len(point) != self.nvars:
            raise DimensionError(f"expected a point of length {self.nvars}")
        coords = [_as_fraction(v) for v in point]
        tv: Fraction | None = None if t_value is None else _as_fraction(t_value)
        total = _ZERO
        for key, c in self._terms.items():
            term = c
            for i in range(self.nvars):
                e = key[i]
                if e:
                    term *= coords[i] ** e
            et = key[-1]
            if et:
                if tv is None:
                    raise DimensionError("polynomial mentions t but no t value was given")
                term *= tv**et
            total += term
        return total

    # -- equality, hashing, rendering ---------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.nvars, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def sorted_terms(self) -> list[tuple[tuple, Fraction]]:
        """Terms in descending graded-lexicographic order, x1 > ... > xn > t."""
        return sorted(self._terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        chunks: list[str] = []
        for key, coeff in self.sorted_terms():
            factors = []
            for i in range(self.nvars):
                e = key[i]
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e:
                    factors.append(f"x{i + 1}^{e}")
            et = key[-1]
            if et == 1:
                factors.append("t")
            elif et:
                factors.append(f"t^{et}")
            mono = "*".join(factors)
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not chunks:
                chunks.append(body if coeff > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, nvars={self.nvars})"
