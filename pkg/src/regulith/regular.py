"""Regular fractions and the coefficient test for their inclusion in a fraction.

A regular fraction is given by independent exponent masks a_1..a_k and signs
e_1..e_k; its points are the runs with X^{a_j} = e_j for every j, and its
indicator is 2^-k (1 + e_1 X^{a_1}) ... (1 + e_k X^{a_k}).  Such a fraction
lies inside a fraction with indicator F = sum b_a X^a exactly when

    sum over a in span(a_1..a_k) of e(a) * b_a == 1,

where e extends the generator signs multiplicatively to the whole span.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .gf2core import (
    MultiIndex,
    Point,
    Subgroup,
    annihilator,
    check_m,
    check_mask,
    enumerate_subgroups,
    factor_label,
    is_independent,
    parse_factors,
    rref,
    span_masks,
    xor_transform,
)
from .polynomial import CountingPolynomial, Fraction


@dataclass(frozen=True)
class RegularSpec:
    m: int
    generators: tuple[int, ...]
    signs: tuple[int, ...]

    def __init__(self, m: int, generators: Iterable[int | MultiIndex] = (), signs: Iterable[int] = ()):
        gens = tuple(g.bits if isinstance(g, MultiIndex) else g for g in generators)
        signs = tuple(signs)
        check_m(m)
        if len(gens) != len(signs):
            raise ValueError(f"{len(gens)} generators but {len(signs)} signs")
        for g in gens:
            check_mask(g, m)
        if any(e not in (1, -1) for e in signs):
            raise ValueError(f"signs must be +1 or -1, got {signs}")
        if not is_independent(gens):
            raise ValueError("generators are linearly dependent over GF(2)")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "signs", signs)

    @classmethod
    def full(cls, m: int) -> RegularSpec:
        return cls(m)

    @classmethod
    def from_point(cls, p: Point | int, m: int | None = None) -> RegularSpec:
        """The 1-point fraction {p}: X_j = p_j for every factor."""
        if isinstance(p, Point):
            m, p = p.m, p.bits
        return cls(m, [1 << j for j in range(m)], [-1 if p >> j & 1 else 1 for j in range(m)])

    @classmethod
    def parse(cls, m: int, text: str) -> RegularSpec:
        """Parse '-4 +12 -135' style generator lists."""
        gens, signs = [], []
        for tok in text.replace(",", " ").split():
            if tok[0] not in "+-":
                raise ValueError(f"generator {tok!r} needs a leading + or -")
            signs.append(1 if tok[0] == "+" else -1)
            gens.append(parse_factors(tok[1:]))
        return cls(m, gens, signs)

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def size(self) -> int:
        return 1 << (self.m - len(self.generators))

    def subgroup(self) -> Subgroup:
        return Subgroup.from_generators(self.m, self.generators)

    def sign_map(self) -> dict[int, int]:
        """The homomorphism e on the span, keyed by mask."""
        e = {0: 1}
        for g, s in zip(self.generators, self.signs):
            e.update({a ^ g: v * s for a, v in e.items()})
        return e

    def canonical(self) -> RegularSpec:
        """Same fraction, generators replaced by the canonical rref basis."""
        e = self.sign_map()
        basis = rref(self.generators)
        return RegularSpec(self.m, basis, [e[g] for g in basis])

    def __str__(self):
        return format_spec(self)


def format_spec(r: RegularSpec) -> str:
    """Product form, e.g. '1/8 (1 - X4)(1 + X12)(1 - X135)'."""
    if not r.k:
        return "1"
    factors = "".join(f"(1 {'+' if e > 0 else '-'} X{factor_label(g)})" for g, e in zip(r.generators, r.signs))
    return f"1/{1 << r.k} {factors}"


def indicator_of(r: RegularSpec) -> CountingPolynomial:
    scale = 1 << (r.m - r.k)
    return CountingPolynomial(r.m, {a: e * scale for a, e in r.sign_map().items()})


def points_of(r: RegularSpec) -> Fraction:
    """The coset of runs solving X^{a_j} = e_j."""
    c = r.canonical()
    # Each canonical row owns its pivot bit, so setting only pivot bits fixes every parity.
    base = 0
    for g, e in zip(c.generators, c.signs):
        if e < 0:
            base |= 1 << (g.bit_length() - 1)
    return Fraction(r.m, dict.fromkeys((base ^ d for d in span_masks(annihilator(c.generators, r.m))), 1))


def _require_indicator(F: CountingPolynomial):
    if not F.is_indicator():
        raise ValueError("expected a 0/1 indicator polynomial")


def inclusion_test(F: CountingPolynomial, r: RegularSpec) -> bool:
    """True iff the regular fraction r lies inside the fraction with indicator F."""
    _require_indicator(F)
    if F.m != r.m:
        raise ValueError(f"dimension mismatch: m={F.m} vs m={r.m}")
    total = sum(e * F.numerator(a) for a, e in r.sign_map().items())
    return total == F.denominator


def necessary_test(F: CountingPolynomial, L: Subgroup) -> bool:
    """b_0 + sum of |b_a| over the rest of L is at least 1.

    When this fails no sign choice on L gives a regular fraction inside F.
    """
    if F.m != L.m:
        raise ValueError(f"dimension mismatch: m={F.m} vs m={L.m}")
    total = F.numerator(0) + sum(abs(F.numerator(a)) for a in L.elements() if a)
    return total >= F.denominator


def _signed_sums(F: CountingPolynomial, gens: Sequence[int]) -> list[int]:
    """2^m times the left side of the inclusion condition for every sign vector.

    Entry s corresponds to e_j = -1 exactly where bit j of s is set.  The sums
    over all 2^k sign vectors form a Walsh-Hadamard transform of the
    coefficients restricted to the span.
    """
    k = len(gens)
    coords = [0] * (1 << k)
    for c in range(1, 1 << k):
        low = (c & -c).bit_length() - 1
        coords[c] = coords[c & (c - 1)] ^ gens[low]
    return xor_transform([F.numerator(a) for a in coords])


def _search(F: CountingPolynomial, subgroups: Sequence[Subgroup]) -> list[RegularSpec]:
    den = F.denominator
    out = []
    for L in subgroups:
        if not necessary_test(F, L):
            continue
        for s, total in enumerate(_signed_sums(F, L.generators)):
            if total == den:
                out.append(RegularSpec(F.m, L.generators, [-1 if s >> j & 1 else 1 for j in range(L.k)]))
    return out


def iter_regular_subfractions(F: CountingPolynomial, k: int) -> Iterator[RegularSpec]:
    """Lazy version of :func:`find_regular_subfractions` (same order)."""
    _require_indicator(F)
    for L in enumerate_subgroups(F.m, k):
        yield from _search(F, [L])


def find_regular_subfractions(F: CountingPolynomial, k: int, workers: int = 1) -> list[RegularSpec]:
    """Every regular fraction with k generators (2^(m-k) runs) inside F.

    Subgroups are visited in :func:`enumerate_subgroups` order and sign
    vectors in binary order, so the output is deterministic; each regular
    fraction appears once, with canonical generators.  ``workers > 1`` splits
    the subgroup sweep over processes without changing the result.
    """
    _require_indicator(F)
    subgroups = enumerate_subgroups(F.m, k)
    if workers <= 1 or len(subgroups) < 64:
        return _search(F, subgroups)
    step = math.ceil(len(subgroups) / workers)
    chunks = [subgroups[i:i + step] for i in range(0, len(subgroups), step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_search, [F] * len(chunks), chunks)
        return [r for part in parts for r in part]


def regularity_of(F: CountingPolynomial) -> RegularSpec | None:
    """Regular spec reproducing F, or None when F is not a regular fraction.

    F must be the indicator of a non-empty fraction.  Its support has to be a
    subgroup L of order l, every coefficient must be +-1/l, and the signs must
    be multiplicative on L.
    """
    _require_indicator(F)
    if F.is_zero():
        raise ValueError("the empty fraction has no regular description")
    supp = F.support()
    n = len(supp)
    if n & (n - 1):
        return None
    if any(abs(v) * n != F.denominator for v in F.numerators.values()):
        return None
    basis = rref(supp)
    if 1 << len(basis) != n:
        return None
    r = RegularSpec(F.m, basis, [1 if F.numerator(g) > 0 else -1 for g in basis])
    return r if indicator_of(r) == F else None
