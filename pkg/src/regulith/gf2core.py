"""Bit-level arithmetic for design points and multi-indices over Z_2^m.

Points of the full design {-1,+1}^m and exponent vectors alpha in {0,1}^m are
both stored as m-bit integer masks.  For a point, bit j is set when coordinate
j+1 equals -1, so the all-plus run is mask 0 and the componentwise product of
two runs is the XOR of their masks.  For a multi-index, bit j is set when
factor j+1 appears in the monomial.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

MAX_FACTORS = 16


def check_m(m: int) -> int:
    if not isinstance(m, int) or isinstance(m, bool):
        raise TypeError(f"factor count must be an int, got {type(m).__name__}")
    if not 1 <= m <= MAX_FACTORS:
        raise ValueError(f"factor count must lie in 1..{MAX_FACTORS}, got {m}")
    return m


def check_mask(bits: int, m: int) -> int:
    if bits < 0 or bits >> m:
        raise ValueError(f"mask {bits:#x} has bits outside the low {m}")
    return bits


def parity(x: int) -> int:
    return x.bit_count() & 1


def sign(p: int, a: int) -> int:
    """Value of the monomial with exponent mask ``a`` at point mask ``p``."""
    return -1 if (p & a).bit_count() & 1 else 1


def factor_label(a: int) -> str:
    """Factor indices of a mask, e.g. 0b10101 -> '135' (comma-joined above 9)."""
    idx = [j + 1 for j in range(a.bit_length()) if a >> j & 1]
    if any(i > 9 for i in idx):
        return ",".join(map(str, idx))
    return "".join(map(str, idx))


def parse_factors(text: str) -> int:
    """Inverse of :func:`factor_label`; '' and '0' give the empty mask."""
    text = text.strip()
    if text in ("", "0"):
        return 0
    parts = text.split(",") if "," in text else list(text)
    mask = 0
    for part in parts:
        j = int(part)
        if j < 1:
            raise ValueError(f"factor indices are 1-based, got {j}")
        mask |= 1 << (j - 1)
    return mask


@dataclass(frozen=True, slots=True)
class Point:
    """A run of the full design; bit j set means coordinate j+1 is -1."""

    bits: int
    m: int

    def __post_init__(self):
        check_m(self.m)
        check_mask(self.bits, self.m)

    @classmethod
    def from_levels(cls, levels: Sequence[int]) -> Point:
        bits = 0
        for j, v in enumerate(levels):
            if v == -1:
                bits |= 1 << j
            elif v != 1:
                raise ValueError(f"levels must be -1 or +1, got {v!r}")
        return cls(bits, len(levels))

    @property
    def levels(self) -> tuple[int, ...]:
        return levels_of(self.bits, self.m)

    def __mul__(self, other: Point) -> Point:
        if self.m != other.m:
            raise ValueError("dimension mismatch")
        return Point(self.bits ^ other.bits, self.m)

    def __str__(self):
        return "(" + ",".join("+1" if v > 0 else "-1" for v in self.levels) + ")"


@dataclass(frozen=True, slots=True)
class MultiIndex:
    """Exponent vector alpha; group addition is XOR of the masks."""

    bits: int
    m: int

    def __post_init__(self):
        check_m(self.m)
        check_mask(self.bits, self.m)

    @classmethod
    def from_factors(cls, factors: Iterable[int] | str, m: int) -> MultiIndex:
        if isinstance(factors, str):
            return cls(parse_factors(factors), m)
        bits = 0
        for j in factors:
            if not 1 <= j <= m:
                raise ValueError(f"factor {j} out of range 1..{m}")
            bits |= 1 << (j - 1)
        return cls(bits, m)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def __add__(self, other: MultiIndex) -> MultiIndex:
        if self.m != other.m:
            raise ValueError("dimension mismatch")
        return MultiIndex(self.bits ^ other.bits, self.m)

    def __str__(self):
        return factor_label(self.bits) or "0"


def levels_of(bits: int, m: int) -> tuple[int, ...]:
    return tuple(-1 if bits >> j & 1 else 1 for j in range(m))


def monomial_eval(p: Point, a: MultiIndex) -> int:
    """X^a evaluated at p, i.e. (-1)**popcount(p & a)."""
    if p.m != a.m:
        raise ValueError(f"dimension mismatch: point has m={p.m}, index has m={a.m}")
    return sign(p.bits, a.bits)


def span_masks(generators: Iterable[int]) -> list[int]:
    """All XOR combinations of the generators, sorted ascending."""
    elems = {0}
    for g in generators:
        elems |= {e ^ g for e in elems}
    return sorted(elems)


def rref(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced row echelon basis of the span of ``vectors`` over GF(2).

    The pivot of a row is its highest set bit; no other row has that bit set.
    Rows come back sorted by pivot, ascending.
    """
    rows: dict[int, int] = {}  # pivot bit -> row
    for v in vectors:
        for piv in sorted(rows, reverse=True):
            if v >> piv & 1:
                v ^= rows[piv]
        if not v:
            continue
        piv = v.bit_length() - 1
        for q in rows:
            if rows[q] >> piv & 1:
                rows[q] ^= v
        rows[piv] = v
    return tuple(rows[p] for p in sorted(rows))


def rank(vectors: Iterable[int]) -> int:
    return len(rref(vectors))


def is_independent(vectors: Sequence[int]) -> bool:
    return rank(vectors) == len(vectors)


def coordinates(x: int, basis: Sequence[int]) -> int | None:
    """Express x in an rref basis: bit i of the result selects basis[i].

    Returns None when x is outside the span.
    """
    c = 0
    for i in range(len(basis) - 1, -1, -1):
        piv = basis[i].bit_length() - 1
        if x >> piv & 1:
            x ^= basis[i]
            c |= 1 << i
    return c if x == 0 else None


def annihilator(generators: Sequence[int], m: int) -> tuple[int, ...]:
    """Rref basis of {p : popcount(p & a) even for every generator a}."""
    basis = rref(generators)
    pivots = {g.bit_length() - 1 for g in basis}
    out = []
    for j in range(m):
        if j in pivots:
            continue
        v = 1 << j
        for g in basis:
            if g >> j & 1:
                v |= 1 << (g.bit_length() - 1)
        out.append(v)
    return rref(out)


@dataclass(frozen=True, slots=True)
class Subgroup:
    """A subgroup of Z_2^m kept as its canonical rref generator tuple."""

    m: int
    generators: tuple[int, ...]

    def __post_init__(self):
        check_m(self.m)
        for g in self.generators:
            check_mask(g, self.m)
        if rref(self.generators) != tuple(self.generators):
            raise ValueError("generators are not in canonical reduced echelon form")

    @classmethod
    def from_generators(cls, m: int, generators: Iterable[int | MultiIndex]) -> Subgroup:
        """Subgroup spanned by any generating set (dependent entries allowed)."""
        masks = [g.bits if isinstance(g, MultiIndex) else g for g in generators]
        return cls(m, rref(masks))

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def order(self) -> int:
        return 1 << len(self.generators)

    def elements(self) -> list[int]:
        return span_masks(self.generators)

    def __contains__(self, a: int) -> bool:
        return coordinates(a, self.generators) is not None

    def __str__(self):
        return "<" + ", ".join(factor_label(g) for g in self.generators) + ">"


def span(s: Subgroup) -> list[MultiIndex]:
    return [MultiIndex(e, s.m) for e in s.elements()]


def gaussian_binomial(m: int, k: int, q: int = 2) -> int:
    """Number of k-dimensional subspaces of GF(q)^m."""
    if k < 0 or k > m:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def enumerate_subgroups(m: int, k: int) -> list[Subgroup]:
    """Every subgroup of Z_2^m of order 2^k, each exactly once.

    Canonical forms are generated directly: pick k pivot bits, then fill each
    row with any subset of the non-pivot bits below its pivot.  The result is
    sorted lexicographically on the generator tuple.
    """
    check_m(m)
    if not 0 <= k <= m:
        raise ValueError(f"need 0 <= k <= m, got k={k}, m={m}")
    out = []
    for pivots in combinations(range(m), k):
        pivot_set = set(pivots)
        free = [[j for j in range(p) if j not in pivot_set] for p in pivots]
        choices = []
        for p, fr in zip(pivots, free):
            row_opts = []
            for r in range(1 << len(fr)):
                v = 1 << p
                for i, j in enumerate(fr):
                    if r >> i & 1:
                        v |= 1 << j
                row_opts.append(v)
            choices.append(row_opts)
        for gens in product(*choices):
            out.append(gens)
    out.sort()
    return [Subgroup(m, g) for g in out]


def xor_transform(values: Sequence[int]) -> list[int]:
    """Unnormalised Walsh-Hadamard transform: out[a] = sum_t values[t] * (-1)^|a&t|.

    Length must be a power of two.  Applying it twice multiplies by the length.
    """
    out = list(values)
    n = len(out)
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < n:
        for i in range(0, n, 2 * h):
            for j in range(i, i + h):
                x, y = out[j], out[j + h]
                out[j], out[j + h] = x + y, x - y
        h *= 2
    return out
