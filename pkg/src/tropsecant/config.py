"""Point configurations built from linear-space bases and products of simplices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DegenerateConfigError
from .kernel import LinearSystem, RatMatrix, affine_rank, feasible, mat_rank, rational_vector

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class PointConfig:
    """``n`` labelled rational points spanning ``d``-space affinely.

    Duplicate points are allowed.  Every other module refers to points by
    their index in ``points``.
    """

    d: int
    points: tuple[Point, ...]
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        pts = tuple(rational_vector(p) for p in self.points)
        if not pts:
            raise ValueError("a configuration needs at least one point")
        for p in pts:
            if len(p) != self.d:
                raise ValueError(f"point {p} does not have dimension {self.d}")
        if affine_rank(pts) != self.d:
            raise DegenerateConfigError(
                f"points span an affine space of dimension {affine_rank(pts)}, not {self.d}")
        labels = tuple(self.labels) or tuple(str(i) for i in range(len(pts)))
        if len(labels) != len(pts):
            raise ValueError("one label per point is required")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_points(cls, points: Sequence[Sequence], labels: Sequence[str] = ()) -> "PointConfig":
        points = [list(p) for p in points]
        d = len(points[0]) if points else 0
        return cls(d, tuple(tuple(p) for p in points), tuple(labels))

    @property
    def n(self) -> int:
        return len(self.points)

    def basis_matrix(self) -> RatMatrix:
        """The ``d x n`` matrix whose columns are the points."""
        return RatMatrix(self.d, self.n, tuple(tuple(p[k] for p in self.points) for k in range(self.d)))


def config_from_basis(basis: RatMatrix, labels: Sequence[str] = ()) -> PointConfig:
    """Columns of a basis matrix as a point configuration.

    Raises :class:`DegenerateConfigError` when the rows together with the
    all-ones row are linearly dependent.
    """
    with_ones = list(basis.entries) + [tuple(Fraction(1) for _ in range(basis.cols))]
    if mat_rank(with_ones) != basis.rows + 1:
        raise DegenerateConfigError("basis rows plus the all-ones row are dependent")
    return PointConfig(basis.rows, tuple(basis.column(j) for j in range(basis.cols)), tuple(labels))


def is_general_position(c: PointConfig) -> bool:
    """No ``d + 1`` of the points lie in a common affine hyperplane."""
    if c.n <= c.d:
        return affine_rank(c.points) == c.n - 1
    return all(affine_rank([c.points[i] for i in sub]) == c.d
               for sub in itertools.combinations(range(c.n), c.d + 1))


def convex_combination(c: PointConfig, i: int, others: Optional[Sequence[int]] = None):
    """Weights expressing point ``i`` as a convex combination of ``others``.

    Returns a dict index -> weight, or ``None`` when ``i`` is a vertex of
    the hull of ``others`` (by default all other indices).
    """
    if others is None:
        others = [j for j in range(c.n) if j != i]
    others = list(others)
    if not others:
        return None
    m = len(others)
    eqs = [([c.points[j][k] for j in others], c.points[i][k]) for k in range(c.d)]
    eqs.append(([1] * m, 1))
    nonneg = [([int(a == b) for b in range(m)], 0) for a in range(m)]
    res = feasible(LinearSystem(m, eqs, nonneg))
    if not res:
        return None
    return {j: w for j, w in zip(others, res.witness)}


def is_convex_position(c: PointConfig) -> bool:
    """Every point is a vertex of the convex hull."""
    return all(convex_combination(c, i) is None for i in range(c.n))


def product_simplices_config(d: int, n: int) -> PointConfig:
    """Vertices of the product of a ``(d-1)``- and an ``(n-1)``-simplex.

    Vertex ``(i, j)`` has coordinates ``(e_i, e_j)`` with the last basis
    vector of each factor dropped, listed row-major.
    """
    if d < 1 or n < 1:
        raise ValueError("both factors need at least one vertex")
    pts, labels = [], []
    for i in range(d):
        for j in range(n):
            row = [int(i == a) for a in range(d - 1)]
            col = [int(j == b) for b in range(n - 1)]
            pts.append(tuple(row + col))
            labels.append(f"{i},{j}")
    return PointConfig(d + n - 2, tuple(pts), tuple(labels))


def heights_from_matrix(m: RatMatrix) -> tuple[Fraction, ...]:
    """Row-major entries of ``m``, aligned with :func:`product_simplices_config`."""
    return tuple(v for row in m.entries for v in row)
