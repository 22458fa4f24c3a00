"""Configurations from the literature and random generators shared by tests."""

import itertools
import random
from fractions import Fraction

from tropsecant.config import PointConfig, config_from_basis, is_general_position
from tropsecant.kernel import RatMatrix

SQUARE_PLUS_2 = [[0, 0, 1, 1, 2, 2], [0, 3, 1, 2, 0, 3]]
HEXAGON = [[0, 0, 1, 1, 2, 2], [0, 1, 0, 2, 1, 2]]
DIAMOND_RING = [[0, 0, 0, 1, 2, 2], [0, 1, 2, 0, 0, 2]]
FIVE_ON_A_LINE = [[0, 0, 0, 0, 0, 2], [0, 1, 2, 3, 4, 0]]

# any convex nonagon has the same subdivisions; points on a parabola are convex
NONAGON_POINTS = [(i, i * i) for i in range(9)]
UNIT_SQUARE = [(0, 0), (0, 1), (1, 0), (1, 1)]
# outer and inner triangles, homothetic about the same centroid
MOTHER = [(0, 0), (4, 0), (0, 4), (1, 1), (2, 1), (1, 2)]


def from_basis(rows):
    return config_from_basis(RatMatrix.from_rows(rows))


def orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def in_triangle(p, a, b, c):
    """Closed triangle membership by orientation signs (2-D, exact)."""
    s = [orient(a, b, p), orient(b, c, p), orient(c, a, p)]
    return all(v >= 0 for v in s) or all(v <= 0 for v in s)


def in_hull_2d(p, pts):
    """Closed-hull membership: p lies in some triangle of pts (Caratheodory)."""
    return any(orient(*t) != 0 and in_triangle(p, *t) for t in itertools.combinations(pts, 3))


def random_general_points(rng: random.Random, n: int, d: int = 2, span: int = 20):
    while True:
        pts = [tuple(rng.randint(0, span) for _ in range(d)) for _ in range(n)]
        if len(set(pts)) < n:
            continue
        try:
            c = PointConfig.from_points(pts)
        except ValueError:
            continue
        if is_general_position(c):
            return c


def random_convex_polygon(rng: random.Random, n: int):
    """Distinct points on a parabola, shuffled and sheared by a random map."""
    xs = rng.sample(range(-15, 16), n)
    a, b = rng.randint(1, 3), rng.randint(-2, 2)
    pts = [(x + b * x * x, a * x * x) for x in xs]
    return PointConfig.from_points(pts)


def random_nonconvex(rng: random.Random, n: int):
    """A convex polygon plus one point strictly inside it."""
    hull = random_convex_polygon(rng, n - 1)
    k = len(hull.points)
    weights = [Fraction(rng.randint(1, 5)) for _ in range(k)]
    total = sum(weights)
    inner = tuple(sum(w * p[i] for w, p in zip(weights, hull.points)) / total for i in range(2))
    pts = list(hull.points)
    pts.insert(rng.randrange(n), inner)
    return PointConfig.from_points(pts)


def random_heights(rng: random.Random, n: int, span: int = 10):
    return tuple(Fraction(rng.randint(-span, span), rng.randint(1, 3)) for _ in range(n))
