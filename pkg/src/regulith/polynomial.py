"""Counting and indicator polynomials of two-level fractions.

A polynomial over m factors is stored as integer numerators over the fixed
denominator 2^m, keyed by exponent mask.  All coefficients of a counting
polynomial are dyadic with denominator dividing 2^m, so every operation here
is exact and nothing ever touches floating point.
"""
from __future__ import annotations

import fractions
from collections import Counter
from typing import Iterable, Iterator, Mapping, Sequence

from .gf2core import (
    MultiIndex,
    Point,
    check_m,
    check_mask,
    factor_label,
    levels_of,
    parse_factors,
    sign,
    xor_transform,
)


class Fraction:
    """A multiset of runs of the full design {-1,+1}^m.

    ``counts`` maps point masks to positive multiplicities.  Most callers
    want :meth:`from_rows` or :meth:`from_points`.
    """

    __slots__ = ("m", "_counts", "_hash")

    def __init__(self, m: int, counts: Mapping[int, int] | Iterable[int]):
        check_m(m)
        if not isinstance(counts, Mapping):
            counts = Counter(counts)
        clean = {}
        for p, c in counts.items():
            if isinstance(p, Point):
                if p.m != m:
                    raise ValueError("dimension mismatch")
                p = p.bits
            check_mask(p, m)
            if c < 0:
                raise ValueError("multiplicities must be nonnegative")
            if c:
                clean[p] = clean.get(p, 0) + c
        self.m = m
        self._counts = clean
        self._hash = None

    @classmethod
    def from_points(cls, m: int, points: Iterable[int | Point]) -> Fraction:
        return cls(m, Counter(p.bits if isinstance(p, Point) else p for p in points))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> Fraction:
        """Build from rows of -1/+1 levels; repeated rows add multiplicity."""
        pts = [Point.from_levels(r) for r in rows]
        if not pts:
            raise ValueError("no rows given; use Fraction(m, {}) for an empty fraction")
        m = pts[0].m
        if any(p.m != m for p in pts):
            raise ValueError("rows have different lengths")
        return cls.from_points(m, pts)

    @classmethod
    def full(cls, m: int) -> Fraction:
        return cls(m, dict.fromkeys(range(1 << m), 1))

    @property
    def counts(self) -> Mapping[int, int]:
        return dict(self._counts)

    def count(self, p: int | Point) -> int:
        if isinstance(p, Point):
            p = p.bits
        return self._counts.get(p, 0)

    @property
    def run_count(self) -> int:
        return sum(self._counts.values())

    @property
    def distinct_count(self) -> int:
        return len(self._counts)

    def is_set(self) -> bool:
        return all(c == 1 for c in self._counts.values())

    def support(self) -> frozenset[int]:
        return frozenset(self._counts)

    def masks(self) -> list[int]:
        return sorted(self._counts)

    def points(self) -> list[Point]:
        return [Point(p, self.m) for p in sorted(self._counts)]

    def rows(self) -> list[tuple[int, ...]]:
        """Levels of every run, replicates repeated, ordered by mask."""
        return [levels_of(p, self.m) for p in sorted(self._counts) for _ in range(self._counts[p])]

    def __len__(self):
        return self.run_count

    def __eq__(self, other):
        if not isinstance(other, Fraction):
            return NotImplemented
        return self.m == other.m and self._counts == other._counts

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, frozenset(self._counts.items())))
        return self._hash

    def __and__(self, other: Fraction) -> Fraction:
        if self.m != other.m:
            raise ValueError("dimension mismatch")
        return Fraction(self.m, {p: min(c, other.count(p)) for p, c in self._counts.items()})

    def __repr__(self):
        return f"Fraction(m={self.m}, runs={self.run_count}, distinct={self.distinct_count})"


def term_order(a: int) -> tuple[int, int]:
    return (a.bit_count(), a)


class CountingPolynomial:
    """Square-free polynomial sum_a b_a X^a with b_a = num[a] / 2^m.

    Instances are immutable; arithmetic returns new objects.  ``*`` reduces
    exponents with X_j^2 = 1, so the product of two polynomials is an XOR
    convolution of their coefficient tables.
    """

    __slots__ = ("m", "_num", "_hash", "_values")

    def __init__(self, m: int, num: Mapping[int, int]):
        check_m(m)
        clean = {}
        for a, v in num.items():
            check_mask(a, m)
            if not isinstance(v, int):
                raise TypeError("numerators must be integers")
            if v:
                clean[a] = v
        self.m = m
        self._num = clean
        self._hash = None
        self._values = None

    @classmethod
    def from_coefficients(cls, m: int, coefs: Mapping[int | str, fractions.Fraction | int | str]) -> CountingPolynomial:
        """Build from exact coefficients keyed by mask or factor label ('135')."""
        den = 1 << m
        num = {}
        for a, c in coefs.items():
            mask = parse_factors(a) if isinstance(a, str) else a
            q = fractions.Fraction(c) * den
            if q.denominator != 1:
                raise ValueError(f"coefficient {c} of X{factor_label(mask)} is not a multiple of 1/{den}")
            num[mask] = num.get(mask, 0) + int(q)
        return cls(m, num)

    @classmethod
    def constant(cls, m: int, value: fractions.Fraction | int = 1) -> CountingPolynomial:
        return cls.from_coefficients(m, {0: value})

    @property
    def denominator(self) -> int:
        return 1 << self.m

    @property
    def numerators(self) -> Mapping[int, int]:
        return dict(self._num)

    def numerator(self, a: int) -> int:
        return self._num.get(a, 0)

    def coefficient(self, a: int | MultiIndex | str) -> fractions.Fraction:
        if isinstance(a, MultiIndex):
            if a.m != self.m:
                raise ValueError("dimension mismatch")
            a = a.bits
        elif isinstance(a, str):
            a = parse_factors(a)
        return fractions.Fraction(self._num.get(a, 0), 1 << self.m)

    def terms(self) -> list[tuple[int, fractions.Fraction]]:
        """Nonzero (mask, coefficient) pairs ordered by (weight, mask)."""
        den = 1 << self.m
        return [(a, fractions.Fraction(self._num[a], den)) for a in sorted(self._num, key=term_order)]

    def support(self) -> list[int]:
        return sorted(self._num, key=term_order)

    def is_zero(self) -> bool:
        return not self._num

    @property
    def run_count(self) -> int:
        """Sum of the values over the full design, i.e. 2^m * b_0."""
        return self._num.get(0, 0)

    def scaled_values(self) -> list[int]:
        """2^m * F(t) for every point mask t (cached)."""
        if self._values is None:
            dense = [0] * (1 << self.m)
            for a, v in self._num.items():
                dense[a] = v
            self._values = tuple(xor_transform(dense))
        return list(self._values)

    def values(self) -> list[fractions.Fraction]:
        den = 1 << self.m
        return [fractions.Fraction(v, den) for v in self.scaled_values()]

    def evaluate(self, p: Point | int) -> fractions.Fraction:
        if isinstance(p, Point):
            if p.m != self.m:
                raise ValueError(f"dimension mismatch: point has m={p.m}, polynomial has m={self.m}")
            p = p.bits
        else:
            check_mask(p, self.m)
        total = sum(v * sign(p, a) for a, v in self._num.items())
        return fractions.Fraction(total, 1 << self.m)

    __call__ = evaluate

    def is_indicator(self) -> bool:
        den = 1 << self.m
        return all(v == 0 or v == den for v in self.scaled_values())

    def is_counting(self) -> bool:
        """True when every value is a nonnegative integer."""
        den = 1 << self.m
        return all(v >= 0 and v % den == 0 for v in self.scaled_values())

    def to_fraction(self) -> Fraction:
        if not self.is_counting():
            raise ValueError("polynomial does not take nonnegative integer values")
        den = 1 << self.m
        return Fraction(self.m, {t: v // den for t, v in enumerate(self.scaled_values()) if v})

    def _check(self, other: CountingPolynomial):
        if not isinstance(other, CountingPolynomial):
            raise TypeError(f"expected CountingPolynomial, got {type(other).__name__}")
        if other.m != self.m:
            raise ValueError(f"dimension mismatch: m={self.m} vs m={other.m}")

    def __add__(self, other):
        if isinstance(other, int):
            other = CountingPolynomial(self.m, {0: other << self.m})
        self._check(other)
        num = dict(self._num)
        for a, v in other._num.items():
            num[a] = num.get(a, 0) + v
        return CountingPolynomial(self.m, num)

    __radd__ = __add__

    def __neg__(self):
        return CountingPolynomial(self.m, {a: -v for a, v in self._num.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CountingPolynomial(self.m, {a: v * other for a, v in self._num.items()})
        self._check(other)
        # 2^m * b_a(FG) = sum_t F(t) G(t) X^a(t); in scaled values this picks up 4^m.
        den2 = 1 << (2 * self.m)
        pv = [x * y for x, y in zip(self.scaled_values(), other.scaled_values())]
        out = {}
        for a, v in enumerate(xor_transform(pv)):
            if v:
                if v % den2:
                    raise ValueError("product has a coefficient finer than 1/2^m")
                out[a] = v // den2
        return CountingPolynomial(self.m, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CountingPolynomial):
            return NotImplemented
        return self.m == other.m and self._num == other._num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, frozenset(self._num.items())))
        return self._hash

    def __iter__(self) -> Iterator[tuple[int, fractions.Fraction]]:
        return iter(self.terms())

    def __repr__(self):
        return f"CountingPolynomial(m={self.m}, {format_polynomial(self)!r})"

    def __str__(self):
        return format_polynomial(self)


def format_polynomial(F: CountingPolynomial) -> str:
    """Render as e.g. '3/4 - 1/4 X1 - 1/4 X2 - 1/4 X12'."""
    out = []
    for a, c in F.terms():
        mag = abs(c)
        if a == 0:
            body = str(mag)
        elif mag == 1:
            body = f"X{factor_label(a)}"
        else:
            body = f"{mag} X{factor_label(a)}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out) if out else "0"


def from_fraction_naive(f: Fraction) -> CountingPolynomial:
    """Direct O(4^m) transform; kept as the oracle for the fast path."""
    num = {}
    for a in range(1 << f.m):
        s = sum(c * sign(t, a) for t, c in f._counts.items())
        if s:
            num[a] = s
    return CountingPolynomial(f.m, num)


def from_fraction(f: Fraction, method: str = "fast") -> CountingPolynomial:
    """Counting polynomial with b_a = 2^-m sum_t count(t) X^a(t)."""
    if method == "naive":
        return from_fraction_naive(f)
    if method != "fast":
        raise ValueError(f"unknown method {method!r}")
    dense = [0] * (1 << f.m)
    for t, c in f._counts.items():
        dense[t] = c
    return CountingPolynomial(f.m, dict(enumerate(xor_transform(dense))))


def evaluate(F: CountingPolynomial, p: Point) -> fractions.Fraction:
    return F.evaluate(p)


def add(F: CountingPolynomial, G: CountingPolynomial) -> CountingPolynomial:
    return F + G


def subtract(F: CountingPolynomial, G: CountingPolynomial) -> CountingPolynomial:
    return F - G


def multiply(F: CountingPolynomial, G: CountingPolynomial) -> CountingPolynomial:
    return F * G


def is_indicator(F: CountingPolynomial) -> bool:
    return F.is_indicator()


def orthogonal_strength(F: CountingPolynomial, counting: bool = False) -> int:
    """Largest s with b_a = 0 whenever 1 <= |a| <= s (m if F is constant).

    With ``counting=True`` the same rule is applied to counting polynomials
    of fractions with replicated runs.
    """
    ok = F.is_counting() if counting else F.is_indicator()
    if not ok:
        raise ValueError("orthogonal strength needs an indicator (or counting) polynomial")
    low = [a.bit_count() for a in F.support() if a]
    return min(low) - 1 if low else F.m
