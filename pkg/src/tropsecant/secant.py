"""Tropical secant membership, decompositions and Barvinok rank."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .config import PointConfig, heights_from_matrix, product_simplices_config
from .envelope import Subdivision, as_heights, upper_envelope
from .errors import NotMemberError
from .kernel import LinearSystem, RatMatrix, feasible

INF = math.inf


@dataclass(frozen=True)
class CoverResult:
    cover_number: float  # an int, or math.inf
    witness_cells: Optional[tuple[int, ...]] = None

    @property
    def finite(self) -> bool:
        return self.cover_number != INF


@dataclass(frozen=True)
class Decomposition:
    summands: tuple[tuple[Fraction, ...], ...]

    def tropical_sum(self) -> tuple[Fraction, ...]:
        return tuple(min(col) for col in zip(*self.summands))


def min_set_cover(sets: Sequence[Iterable[int]], universe: int) -> Optional[tuple[int, ...]]:
    """Exact minimum cover of ``range(universe)``; ``None`` if impossible.

    Branch and bound: a greedy cover gives the initial bound, the branching
    element is the uncovered one with the fewest covering sets, and a
    partial solution is cut when ``ceil(uncovered / largest set)`` more sets
    cannot beat the incumbent.
    """
    masks = [sum(1 << i for i in s) for s in sets]
    full = (1 << universe) - 1
    if universe == 0:
        return ()
    union = 0
    for m in masks:
        union |= m
    if union != full:
        return None
    # drop sets contained in another (keeps the lowest index of equal sets)
    keep = []
    for i, m in enumerate(masks):
        if not any((m | o) == o and (m != o or j < i) for j, o in enumerate(masks) if j != i):
            keep.append(i)
    cover_of = {e: [i for i in keep if masks[i] >> e & 1] for e in range(universe)}
    largest = max(bin(masks[i]).count("1") for i in keep)

    best = _greedy(masks, keep, full)

    def search(covered: int, chosen: list[int]):
        nonlocal best
        if covered == full:
            if len(chosen) < len(best):
                best = tuple(chosen)
            return
        left = universe - bin(covered).count("1")
        if len(chosen) + -(-left // largest) >= len(best):
            return
        e = min((e for e in range(universe) if not covered >> e & 1),
                key=lambda e: len(cover_of[e]))
        for i in cover_of[e]:
            chosen.append(i)
            search(covered | masks[i], chosen)
            chosen.pop()

    search(0, [])
    return tuple(sorted(best))


def _greedy(masks, keep, full):
    covered, chosen = 0, []
    while covered != full:
        i = max(keep, key=lambda i: (bin(masks[i] & ~covered).count("1"), -i))
        chosen.append(i)
        covered |= masks[i]
    return tuple(chosen)


def min_facet_cover(s: Subdivision) -> CoverResult:
    """Fewest cells of ``s`` whose members include every point."""
    if not all(s.on_envelope):
        return CoverResult(INF)
    best = min_set_cover([c.members for c in s.cells], len(s.on_envelope))
    return CoverResult(len(best), best)


def secant_membership(c: PointConfig, x: Sequence, k: int) -> bool:
    if k < 0:
        raise ValueError("k must be non-negative")
    return min_facet_cover(upper_envelope(c, x)).cover_number <= k + 1


def secant_decompose(c: PointConfig, basis: RatMatrix, x: Sequence, k: int) -> Decomposition:
    """Write ``x`` as the coordinatewise minimum of ``k + 1`` elements of L + R(1,...,1).

    Each summand comes from a covering cell's functional ``a + sum c_r z_r``
    as ``a * (1,...,1) + sum c_r * basis_row_r``.
    """
    x = as_heights(x)
    env = upper_envelope(c, x)
    cover = min_facet_cover(env)
    if cover.cover_number > k + 1:
        raise NotMemberError(f"cover number {cover.cover_number} exceeds {k + 1}")
    if basis.rows != c.d or basis.cols != c.n:
        raise ValueError("basis shape does not match the configuration")
    summands = []
    for idx in cover.witness_cells:
        f = env.cells[idx].functional
        summands.append(tuple(
            f.const + sum((f.coeffs[r] * basis[r, i] for r in range(basis.rows)), Fraction(0))
            for i in range(basis.cols)))
    while len(summands) < k + 1:
        summands.append(summands[-1])
    dec = Decomposition(tuple(summands))
    if dec.tropical_sum() != x:
        raise AssertionError("decomposition does not reproduce the input")
    return dec


def barvinok_envelope(m: RatMatrix) -> tuple[PointConfig, Subdivision]:
    config = product_simplices_config(m.rows, m.cols)
    return config, upper_envelope(config, heights_from_matrix(m))


def barvinok_rank(m: RatMatrix) -> int:
    """Fewest upper facets of the lifted product of simplices covering every vertex."""
    _, env = barvinok_envelope(m)
    return int(min_facet_cover(env).cover_number)


def rank_one_pages(m: RatMatrix) -> list[list[list[Fraction]]]:
    """Tropical rank-one matrices whose entrywise minimum is ``m``."""
    config, env = barvinok_envelope(m)
    pages = []
    for idx in min_facet_cover(env).witness_cells:
        f = env.cells[idx].functional
        vals = [f(p) for p in config.points]
        pages.append([vals[i * m.cols:(i + 1) * m.cols] for i in range(m.rows)])
    return pages


def _page_feasible(m: RatMatrix, entries: frozenset, cache: dict) -> bool:
    """Is there ``x_i + y_j >= M_ij`` everywhere, with equality on ``entries``?"""
    hit = cache.get(entries)
    if hit is not None:
        return hit
    d, n = m.rows, m.cols

    def row(i, j):
        r = [0] * (d + n)
        r[i] = 1
        r[d + j] = 1
        return r

    eqs, weak = [], []
    for i in range(d):
        for j in range(n):
            (eqs if (i, j) in entries else weak).append((row(i, j), m[i, j]))
    ok = feasible(LinearSystem(d + n, eqs, weak)).feasible
    cache[entries] = ok
    return ok


def barvinok_rank_oracle(m: RatMatrix, kmax: int) -> int:
    """Smallest ``k <= kmax`` such that ``m`` is a min of ``k`` rank-one matrices.

    Brute force over assignments of entries to ``k`` pages, each page being
    checked for a rank-one matrix above ``m`` that is tight on its entries.
    Pages are opened in order of first use, so relabelled assignments are
    visited once; a page that is already infeasible prunes every completion
    of the assignment.  Returns ``kmax + 1`` if no ``k`` works.
    """
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    cells = list(itertools.product(range(m.rows), range(m.cols)))
    cache: dict = {}

    def assign(pos: int, pages: list[frozenset], k: int) -> bool:
        if pos == len(cells):
            return True
        e = cells[pos]
        for p in range(len(pages)):
            grown = pages[p] | {e}
            if _page_feasible(m, grown, cache):
                saved = pages[p]
                pages[p] = grown
                if assign(pos + 1, pages, k):
                    return True
                pages[p] = saved
        if len(pages) < k:
            fresh = frozenset([e])
            if _page_feasible(m, fresh, cache):
                pages.append(fresh)
                if assign(pos + 1, pages, k):
                    return True
                pages.pop()
        return False

    for k in range(1, kmax + 1):
        if assign(0, [], k):
            return k
    return kmax + 1
