"""Configurations on a line: bar patterns and Gale evenness.

With ``m`` distinct values there are ``m - 1`` slopes and ``m - 2`` bar
positions; bar ``i`` sits between slope ``i`` and slope ``i + 1``, i.e. at
the ``i``-th value counting from zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .kernel import rational_vector

BarPattern = frozenset  # of bar positions in 1..m-2


@dataclass(frozen=True)
class LineConfig:
    values: tuple[Fraction, ...]
    # original indices that share each distinct value
    index_map: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.values) < 2:
            raise ValueError("need at least two distinct values")
        if any(a >= b for a, b in zip(self.values, self.values[1:])):
            raise ValueError("values must be strictly increasing")

    @property
    def m(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class LineReduction:
    config: LineConfig
    heights: tuple[Fraction, ...]
    uncovered: tuple[int, ...] = ()

    @property
    def covered(self) -> bool:
        return not self.uncovered


def reduce_line_config(values: Sequence, heights: Sequence) -> LineReduction:
    """Merge repeated values.

    A repeated value whose copies carry different heights leaves the lower
    copies strictly below the envelope; they are reported in ``uncovered``
    and the merged height is the maximum.
    """
    values = rational_vector(values)
    heights = rational_vector(heights)
    if len(values) != len(heights):
        raise ValueError("values and heights differ in length")
    groups: dict[Fraction, list[int]] = {}
    for i, v in enumerate(values):
        groups.setdefault(v, []).append(i)
    distinct = sorted(groups)
    merged, uncovered = [], []
    for v in distinct:
        idx = groups[v]
        top = max(heights[i] for i in idx)
        merged.append(top)
        uncovered.extend(i for i in idx if heights[i] < top)
    config = LineConfig(tuple(distinct), tuple(tuple(groups[v]) for v in distinct))
    return LineReduction(config, tuple(merged), tuple(sorted(uncovered)))


def slopes(lc: LineConfig, x: Sequence[Fraction]) -> list[Fraction]:
    r = lc.values
    return [(x[i + 1] - x[i]) / (r[i + 1] - r[i]) for i in range(lc.m - 1)]


def bars_from_heights(lc: LineConfig, x: Sequence) -> BarPattern:
    """Bar at position ``i`` iff slope ``i`` strictly exceeds slope ``i + 1``."""
    x = rational_vector(x)
    if len(x) != lc.m:
        raise ValueError(f"{len(x)} heights for {lc.m} values")
    s = slopes(lc, x)
    bars = set()
    for i in range(1, lc.m - 1):
        if s[i] > s[i - 1]:
            raise ValueError(f"slope increases at position {i}: point {i} is below the envelope")
        if s[i - 1] > s[i]:
            bars.add(i)
    return frozenset(bars)


def _runs(positions: Sequence[int]) -> list[int]:
    runs, prev = [], None
    for p in positions:
        if prev is not None and p == prev + 1:
            runs[-1] += 1
        else:
            runs.append(1)
        prev = p
    return runs


def gale_lower_facets(k: int, p: int) -> list[BarPattern]:
    """``2k``-subsets of ``1..p`` whose maximal runs all have even length.

    When ``p < 2k`` the polytope has too few vertices to be anything but a
    simplex and the single facet is all of ``1..p`` (empty for ``p = 0``).
    """
    if k < 1 or p < 1:
        return []
    if p < 2 * k:
        return [frozenset(range(1, p + 1))]
    out = []
    for sub in itertools.combinations(range(1, p + 1), 2 * k):
        if all(r % 2 == 0 for r in _runs(sub)):
            out.append(frozenset(sub))
    return out


def onedim_secant_complex(m: int, k: int) -> list[BarPattern]:
    """Facets of the ``k``-th secant complex of ``m`` distinct collinear points."""
    if m < 2:
        raise ValueError("need at least two distinct values")
    return gale_lower_facets(k, m - 2)


def onedim_faces(m: int, k: int) -> set[BarPattern]:
    """Every nonempty bar pattern lying below some facet."""
    faces = set()
    for facet in onedim_secant_complex(m, k):
        items = sorted(facet)
        for r in range(1, len(items) + 1):
            faces.update(frozenset(c) for c in itertools.combinations(items, r))
    return faces


def bars_of_subdivision(cells) -> BarPattern:
    """Bar pattern of a subdivision of ``0..m-1`` into intervals.

    ``cells`` are member sets over the sorted distinct values; the bars are
    the interior breakpoints.
    """
    cells = [sorted(c) for c in cells]
    last = max(c[-1] for c in cells)
    return frozenset(c[0] for c in cells if c[0] != 0) | frozenset(c[-1] for c in cells if c[-1] != last)
