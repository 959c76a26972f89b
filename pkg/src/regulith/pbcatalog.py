"""The 12-run Plackett-Burman design, its 5-column projections, and the
catalog of 12-run strength-2 orthogonal arrays on five factors built from
three disjoint 4-run regular fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, NamedTuple, Sequence

from .gf2core import factor_label, levels_of, span_masks
from .polynomial import CountingPolynomial, Fraction
from .regular import RegularSpec, indicator_of

PB12_KEY = "++-+++---+-"
COLUMN_LABELS = "ABCDEFGHIJK"
PROJECTION_FACTORS = 5


@dataclass(frozen=True)
class PBDesign:
    """Runs as point masks over m = 11 factors, in construction order."""

    rows: tuple[int, ...]
    m: int = 11

    def levels(self) -> list[tuple[int, ...]]:
        return [levels_of(r, self.m) for r in self.rows]

    def column(self, j: int) -> list[int]:
        """Levels in column j (1-based)."""
        return [-1 if r >> (j - 1) & 1 else 1 for r in self.rows]

    def table(self) -> str:
        lines = ["N  " + " ".join(COLUMN_LABELS[: self.m])]
        for i, lv in enumerate(self.levels(), 1):
            lines.append(f"{i:<2} " + " ".join("+" if v > 0 else "-" for v in lv))
        return "\n".join(lines)


def _mask(signs: str) -> int:
    return sum(1 << j for j, c in enumerate(signs) if c == "-")


def build_pb12() -> PBDesign:
    """Key row, its ten successive right cyclic shifts, then the all-minus run."""
    rows = [PB12_KEY[-i:] + PB12_KEY[:-i] if i else PB12_KEY for i in range(11)]
    rows.append("-" * 11)
    return PBDesign(tuple(_mask(r) for r in rows))


def column_index(col: int | str) -> int:
    if isinstance(col, str):
        c = col.strip().upper()
        if c.isdigit():
            col = int(c)
        elif len(c) == 1 and c in COLUMN_LABELS:
            return COLUMN_LABELS.index(c) + 1
        else:
            raise ValueError(f"unknown column label {col!r}")
    if not 1 <= col <= 11:
        raise ValueError(f"column index {col} outside 1..11")
    return col


def project(d: PBDesign, cols: Sequence[int | str]) -> Fraction:
    """Restrict the design to the given columns (labels A..K or 1..11).

    Factor j of the result is the j-th listed column.  Runs that coincide
    after projection are kept as multiplicity.
    """
    idx = [column_index(c) for c in cols]
    if len(idx) != PROJECTION_FACTORS:
        raise ValueError(f"need {PROJECTION_FACTORS} columns, got {len(idx)}")
    if len(set(idx)) != len(idx):
        raise ValueError(f"repeated column in {cols}")
    pts = []
    for r in d.rows:
        pts.append(sum(1 << j for j, c in enumerate(idx) if r >> (c - 1) & 1))
    return Fraction.from_points(len(idx), pts)


class ProjectionClass(NamedTuple):
    class_id: int
    member_count: int
    distinct_run_count: int
    members: tuple[tuple[int, ...], ...]


def classify_projections(d: PBDesign) -> list[ProjectionClass]:
    """Group all 5-column projections by equality of their run multisets.

    Column sets are visited in lexicographic order and numbered from 1; a
    class takes the number of its first member, so ids are not contiguous.
    """
    groups: dict[Fraction, list[tuple[int, tuple[int, ...]]]] = {}
    for n, cols in enumerate(combinations(range(1, d.m + 1), PROJECTION_FACTORS), 1):
        groups.setdefault(project(d, cols), []).append((n, cols))
    out = []
    for frac, members in groups.items():
        out.append(ProjectionClass(members[0][0], len(members), frac.distinct_count, tuple(c for _, c in members)))
    out.sort()
    return out


@dataclass(frozen=True)
class AlphaPattern:
    """Six exponent masks over five factors.

    The three 4-run pieces of a catalog member have generator sets
    (a1, a2, a4), (a1, a3, a5) and (a2, a3, a6).
    """

    alphas: tuple[int, int, int, int, int, int]

    def __str__(self):
        return " ".join(factor_label(a) for a in self.alphas)

    def spans(self) -> tuple[tuple[int, ...], ...]:
        a = self.alphas
        return ((a[0], a[1], a[3]), (a[0], a[2], a[4]), (a[1], a[2], a[5]))

    def is_admissible(self) -> bool:
        """Weight rule: a1, a2, a3 have weight 1 or 2; every other combination
        appearing in the three pieces has weight at least 3."""
        if any(not 0 < a.bit_count() < 3 for a in self.alphas[:3]):
            return False
        return all(_heavy_combinations(*gens) for gens in self.spans())


def _heavy_combinations(x: int, y: int, z: int) -> bool:
    # x + y, z, x + z, y + z, x + y + z
    return all(w.bit_count() >= 3 for w in (x ^ y, z, x ^ z, y ^ z, x ^ y ^ z))


def _factor_key(a: int) -> tuple[int, list[int]]:
    return a.bit_count(), [j for j in range(a.bit_length()) if a >> j & 1]


def _coset_min(a: int, gens: Iterable[int]) -> int:
    return min(a ^ s for s in span_masks(gens))


def alpha_patterns(m: int = PROJECTION_FACTORS) -> list[AlphaPattern]:
    """All admissible patterns, one per equivalence class.

    Reordering a1, a2, a3 or moving a4 (a5, a6) within its coset of
    <a1, a2> (<a1, a3>, <a2, a3>) gives the same family of catalog members.
    The canonical pattern sorts the three shared masks by (weight, factors)
    and takes the smallest mask of each coset.
    """
    words = range(1, 1 << m)
    low = [a for a in words if a.bit_count() < 3]

    def reps(x, y):
        return sorted({_coset_min(z, (x, y)) for z in words if _heavy_combinations(x, y, z)})

    found = []
    for triple in combinations(sorted(low, key=_factor_key), 3):
        a1, a2, a3 = triple
        for a4, a5, a6 in product(reps(a1, a2), reps(a1, a3), reps(a2, a3)):
            pat = AlphaPattern((a1, a2, a3, a4, a5, a6))
            if pat.is_admissible():
                found.append(pat)
    return found


def pattern_parts(pattern: AlphaPattern, signs: Sequence[int]) -> tuple[RegularSpec, RegularSpec, RegularSpec]:
    """The three 4-run regular pieces for sign vector (e1..e6).

    Each shared mask carries opposite signs in the two pieces that use it,
    which makes the pieces pairwise disjoint.
    """
    a1, a2, a3, a4, a5, a6 = pattern.alphas
    e1, e2, e3, e4, e5, e6 = signs
    m = PROJECTION_FACTORS
    return (
        RegularSpec(m, (a1, a2, a4), (e1, e2, e4)),
        RegularSpec(m, (a1, a3, a5), (-e1, e3, e5)),
        RegularSpec(m, (a2, a3, a6), (-e2, -e3, e6)),
    )


class CatalogEntry(NamedTuple):
    polynomial: CountingPolynomial
    pattern: int  # 1-based row of alpha_patterns()
    signs: tuple[int, ...]
    parts: tuple[RegularSpec, RegularSpec, RegularSpec]


def strength2_catalog_entries() -> list[CatalogEntry]:
    """Distinct members of the pattern x sign sweep, first occurrence kept."""
    seen = {}
    for n, pat in enumerate(alpha_patterns(), 1):
        for signs in product((1, -1), repeat=6):
            parts = pattern_parts(pat, signs)
            F = sum((indicator_of(r) for r in parts), CountingPolynomial(PROJECTION_FACTORS, {}))
            if not F.is_indicator() or F.run_count != 12:
                continue
            if F not in seen:
                seen[F] = CatalogEntry(F, n, signs, parts)
    return list(seen.values())


def generate_strength2_catalog() -> list[CountingPolynomial]:
    return [e.polynomial for e in strength2_catalog_entries()]
