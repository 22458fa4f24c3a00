import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropsecant.config import PointConfig, convex_combination
from tropsecant.envelope import upper_envelope
from tropsecant.errors import NotMemberError
from tropsecant.kernel import RatMatrix, mat_rank
from tropsecant.secant import (INF, barvinok_rank, barvinok_rank_oracle, min_facet_cover,
                               min_set_cover, rank_one_pages, secant_decompose, secant_membership)

from helpers import HEXAGON, UNIT_SQUARE, from_basis, random_general_points


def _brute_cover(sets, universe):
    for r in range(len(sets) + 1):
        for combo in itertools.combinations(range(len(sets)), r):
            if set().union(*(sets[i] for i in combo)) >= set(range(universe)):
                return r
    return None


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 7).flatmap(lambda u: st.tuples(
    st.just(u), st.lists(st.sets(st.integers(0, u - 1), min_size=1), min_size=1, max_size=7))))
def test_min_set_cover_matches_brute_force(case):
    universe, sets = case
    got = min_set_cover(sets, universe)
    want = _brute_cover(sets, universe)
    if want is None:
        assert got is None
    else:
        assert len(got) == want
        assert set().union(*(sets[i] for i in got)) >= set(range(universe))


def test_min_set_cover_edge_cases():
    assert min_set_cover([], 0) == ()
    assert min_set_cover([{0}], 2) is None
    assert min_set_cover([{0, 1}, {0, 1}], 2) == (0,)


def test_cover_infinite_when_point_below():
    c = PointConfig.from_points([(0, 0), (2, 0), (0, 2), (Fraction(1, 2), Fraction(1, 2))])
    res = min_facet_cover(upper_envelope(c, [0, 0, 0, -1]))
    assert res.cover_number == INF and not res.finite and res.witness_cells is None


def test_square_membership():
    c = PointConfig.from_points(UNIT_SQUARE)
    assert secant_membership(c, [0, 0, 0, 0], 0)
    assert not secant_membership(c, [1, 0, 0, 1], 0)
    assert secant_membership(c, [1, 0, 0, 1], 1)
    with pytest.raises(ValueError):
        secant_membership(c, [0, 0, 0, 0], -1)


def test_decomposition_of_square_split():
    c = PointConfig.from_points(UNIT_SQUARE)
    dec = secant_decompose(c, c.basis_matrix(), [1, 0, 0, 1], 2)
    assert len(dec.summands) == 3
    assert dec.summands[2] == dec.summands[1]
    assert dec.tropical_sum() == (1, 0, 0, 1)
    with pytest.raises(NotMemberError):
        secant_decompose(c, c.basis_matrix(), [1, 0, 0, 1], 0)


def _in_span(c, v):
    rows = [list(r) for r in c.basis_matrix().entries] + [[1] * c.n]
    return mat_rank(rows + [list(v)]) == mat_rank(rows)


def test_membership_properties_hexagon():
    c = from_basis(HEXAGON)
    basis = c.basis_matrix()
    rng = random.Random(2)
    for _ in range(25):
        x = [Fraction(rng.randint(-6, 6)) for _ in range(c.n)]
        cover = min_facet_cover(upper_envelope(c, x)).cover_number
        member = [secant_membership(c, x, k) for k in range(c.n)]
        assert member == [cover <= k + 1 for k in range(c.n)]
        a, b, t = rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3)
        y = [xi + a * basis[0, i] + b * basis[1, i] + t for i, xi in enumerate(x)]
        assert [secant_membership(c, y, k) for k in range(c.n)] == member
        k = int(cover) - 1
        dec = secant_decompose(c, basis, x, k)
        assert dec.tropical_sum() == tuple(x)
        assert all(_in_span(c, s) for s in dec.summands)


def test_convex_position_always_member_at_n_minus_1():
    c = from_basis(HEXAGON)
    rng = random.Random(4)
    for _ in range(20):
        x = [Fraction(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(c.n)]
        assert secant_membership(c, x, c.n - 1)


def test_violating_vector_from_affine_dependence():
    rng = random.Random(6)
    for _ in range(5):
        c = random_general_points(rng, 6, span=10)
        for i in range(c.n):
            w = convex_combination(c, i)
            if w is None:
                continue
            x = [Fraction(rng.randint(-5, 5)) for _ in range(c.n)]
            x[i] = sum(wj * x[j] for j, wj in w.items()) - 1
            assert not any(secant_membership(c, x, k) for k in range(c.n + 1))


def test_barvinok_examples():
    assert barvinok_rank(RatMatrix.from_rows([[0, 0], [0, 0]])) == 1
    assert barvinok_rank(RatMatrix.from_rows([[0, 1], [2, 3]])) == 1
    assert barvinok_rank(RatMatrix.from_rows([[0, 1], [1, 0]])) == 2
    ident = RatMatrix.from_rows([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert barvinok_rank(ident) == 3
    assert barvinok_rank_oracle(ident, 3) == 3
    assert barvinok_rank_oracle(ident, 2) == 3
    with pytest.raises(ValueError):
        barvinok_rank_oracle(ident, 0)


def test_rank_one_pages_reproduce_matrix():
    m = RatMatrix.from_rows([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    pages = rank_one_pages(m)
    assert len(pages) == 3
    for i in range(3):
        for j in range(3):
            assert min(p[i][j] for p in pages) == m[i, j]
    for p in pages:
        # tropical rank one: p[i][j] = a_i + b_j
        assert all(p[i][j] - p[0][j] == p[i][0] - p[0][0] for i in range(3) for j in range(3))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=2, max_size=3))
def test_barvinok_symmetric_and_bounded(rows):
    m = RatMatrix.from_rows(rows)
    r = barvinok_rank(m)
    assert r == barvinok_rank(m.transpose())
    assert 1 <= r <= min(m.rows, m.cols)
    assert r == barvinok_rank_oracle(m, min(m.rows, m.cols))
