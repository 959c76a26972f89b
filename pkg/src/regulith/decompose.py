"""Partitions of a fraction into pairwise disjoint regular fractions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .gf2core import Subgroup
from .polynomial import CountingPolynomial, Fraction, from_fraction
from .regular import (
    RegularSpec,
    _search,
    find_regular_subfractions,
    inclusion_test,
    indicator_of,
    iter_regular_subfractions,
    points_of,
)


@dataclass(frozen=True)
class Decomposition:
    parts: tuple[RegularSpec, ...]
    target: Fraction

    @property
    def sizes(self) -> list[int]:
        return [r.size for r in self.parts]

    def point_sets(self) -> list[list[int]]:
        return [points_of(r).masks() for r in self.parts]

    def is_valid(self) -> bool:
        """Parts are disjoint, each lies in the target, and they cover it."""
        F = from_fraction(self.target)
        if not F.is_indicator():
            return False
        inds = [indicator_of(r) for r in self.parts]
        if not all(inclusion_test(F, r) for r in self.parts):
            return False
        for i in range(len(inds)):
            for j in range(i + 1, len(inds)):
                if not (inds[i] * inds[j]).is_zero():
                    return False
        return sum(inds, CountingPolynomial(F.m, {})) == F

    def __len__(self):
        return len(self.parts)


def disjoint(r1: RegularSpec, r2: RegularSpec) -> bool:
    if r1.m != r2.m:
        raise ValueError(f"dimension mismatch: m={r1.m} vs m={r2.m}")
    return (indicator_of(r1) * indicator_of(r2)).is_zero()


def _check_target(F: CountingPolynomial) -> Fraction:
    if not F.is_indicator():
        raise ValueError("decomposition needs a 0/1 indicator polynomial")
    if F.is_zero():
        raise ValueError("cannot decompose the empty fraction")
    return F.to_fraction()


def decompose_greedy(F: CountingPolynomial, prefer: Sequence[Subgroup] = ()) -> Decomposition:
    """Peel off the largest regular subfraction until nothing is left.

    At each step the first regular fraction of the largest feasible size is
    removed.  Subgroups listed in ``prefer`` are tried first (in the given
    order) among those of the right order, then the rest in enumeration
    order.  Single runs are always regular, so the loop terminates.
    """
    target = _check_target(F)
    parts = []
    rest = F
    while not rest.is_zero():
        k0 = rest.m - (rest.run_count.bit_length() - 1)
        r = None
        for k in range(k0, rest.m + 1):
            for L in prefer:
                if L.k == k and L.m == rest.m:
                    r = next(iter(_search(rest, [L])), None)
                    if r is not None:
                        break
            if r is None:
                r = next(iter_regular_subfractions(rest, k), None)
            if r is not None:
                break
        parts.append(r)
        rest = rest - indicator_of(r)
    return Decomposition(tuple(parts), target)


def exact_covers(universe: list[int], subsets: list[frozenset[int]]) -> Iterator[list[int]]:
    """Yield index lists of ``subsets`` that partition ``universe``.

    Plain Algorithm X on dicts: always branch on the uncovered element with the
    fewest candidates (smallest element on ties), so every cover is produced
    once and in a reproducible order.
    """
    cols: dict[int, set[int]] = {u: set() for u in universe}
    for i, s in enumerate(subsets):
        if not s <= cols.keys():
            continue
        for u in s:
            cols[u].add(i)
    rows = {i: s for i, s in enumerate(subsets) if s <= cols.keys()}

    def select(i):
        removed = []
        for u in sorted(rows[i]):
            for j in cols[u]:
                for v in rows[j]:
                    if v != u:
                        cols[v].discard(j)
            removed.append(cols.pop(u))
        return removed

    def deselect(i, removed):
        for u in reversed(sorted(rows[i])):
            cols[u] = removed.pop()
            for j in cols[u]:
                for v in rows[j]:
                    if v != u:
                        cols[v].add(j)

    def search(chosen):
        if not cols:
            yield list(chosen)
            return
        u = min(cols, key=lambda c: (len(cols[c]), c))
        for i in sorted(cols[u]):
            chosen.append(i)
            removed = select(i)
            yield from search(chosen)
            deselect(i, removed)
            chosen.pop()

    yield from search([])


def decompose_all(F: CountingPolynomial, part_size: int, workers: int = 1) -> list[Decomposition]:
    """All partitions of F into regular fractions of exactly ``part_size`` runs."""
    target = _check_target(F)
    n = target.run_count
    if part_size < 1 or part_size & (part_size - 1):
        raise ValueError(f"part size must be a power of two, got {part_size}")
    if part_size > 1 << F.m or n % part_size:
        raise ValueError(f"part size {part_size} does not divide the run count {n}")
    k = F.m - (part_size.bit_length() - 1)
    candidates = find_regular_subfractions(F, k, workers=workers)
    masks = [points_of(r).masks() for r in candidates]
    # parts are disjoint, so ordering them by point list is ordering by smallest point
    sets = [frozenset(x) for x in masks]
    covers = {tuple(sorted(c, key=masks.__getitem__)) for c in exact_covers(target.masks(), sets)}
    ordered = sorted(covers, key=lambda c: [masks[i] for i in c])
    return [Decomposition(tuple(candidates[i] for i in c), target) for c in ordered]
