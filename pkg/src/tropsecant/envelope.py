"""Regular subdivisions from the upper envelope of lifted points."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .config import PointConfig
from .kernel import dot, inverse, rational_vector

HeightVector = tuple[Fraction, ...]


def as_heights(values: Sequence) -> HeightVector:
    return rational_vector(values)


@dataclass(frozen=True)
class Functional:
    """The affine function ``z -> coeffs . z + const``."""

    coeffs: tuple[Fraction, ...]
    const: Fraction

    def __call__(self, point: Sequence[Fraction]) -> Fraction:
        return dot(self.coeffs, point) + self.const


@dataclass(frozen=True)
class Cell:
    members: tuple[int, ...]
    functional: Functional


@dataclass(frozen=True)
class Subdivision:
    cells: tuple[Cell, ...]
    on_envelope: tuple[bool, ...]

    def member_sets(self) -> list[frozenset[int]]:
        return [frozenset(c.members) for c in self.cells]

    @property
    def is_trivial(self) -> bool:
        return len(self.cells) == 1


@lru_cache(maxsize=64)
def _frames(c: PointConfig):
    """Affinely independent ``(d+1)``-subsets with their coordinate data.

    For each subset ``B`` returns ``(B, inv, lam)`` where ``inv`` inverts the
    matrix with columns ``(v_b, 1)`` and ``lam[j]`` are the affine
    coordinates of point ``j`` with respect to ``B``.
    """
    frames = []
    for sub in itertools.combinations(range(c.n), c.d + 1):
        q = [[c.points[b][k] for b in sub] for k in range(c.d)]
        q.append([Fraction(1)] * len(sub))
        inv = inverse(q)
        if inv is None:
            continue
        lam = []
        for p in c.points:
            col = list(p) + [Fraction(1)]
            lam.append(tuple(dot(inv[r], col) for r in range(c.d + 1)))
        frames.append((sub, inv, tuple(lam)))
    return tuple(frames)


def upper_envelope(c: PointConfig, x: Sequence) -> Subdivision:
    """Upper facets of the convex hull of the points lifted to heights ``x``.

    A cell's ``members`` are all points lying on its supporting hyperplane;
    every point sits weakly below every cell's functional.
    """
    x = as_heights(x)
    if len(x) != c.n:
        raise ValueError(f"{len(x)} heights for {c.n} points")
    found: dict[tuple, tuple[int, ...]] = {}
    covered: list[frozenset[int]] = []
    for sub, inv, lam in _frames(c):
        if any(covered_set.issuperset(sub) for covered_set in covered):
            continue
        xb = [x[b] for b in sub]
        members = []
        ok = True
        for j, coords in enumerate(lam):
            val = dot(coords, xb)
            if val < x[j]:
                ok = False
                break
            if val == x[j]:
                members.append(j)
        if not ok:
            continue
        # functional coefficients: (c, a) = x_B . inv
        row = [sum((xb[i] * inv[i][r] for i in range(len(sub))), Fraction(0))
               for r in range(c.d + 1)]
        key = tuple(row)
        if key not in found:
            found[key] = tuple(members)
            covered.append(frozenset(members))
    cells = tuple(sorted((Cell(m, Functional(k[:-1], k[-1])) for k, m in found.items()),
                         key=lambda cell: cell.members))
    on = [False] * c.n
    for cell in cells:
        for i in cell.members:
            on[i] = True
    return Subdivision(cells, tuple(on))


def is_refinement(fine, coarse) -> bool:
    """Every cell of ``fine`` lies inside some cell of ``coarse``.

    Accepts :class:`Subdivision` objects or plain collections of member sets.
    """
    fine_sets = fine.member_sets() if isinstance(fine, Subdivision) else [frozenset(s) for s in fine]
    coarse_sets = coarse.member_sets() if isinstance(coarse, Subdivision) else [frozenset(s) for s in coarse]
    return all(any(f <= g for g in coarse_sets) for f in fine_sets)
