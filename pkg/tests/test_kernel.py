from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from tropsecant.complex import AbstractSubdivision, regularity_system
from tropsecant.envelope import upper_envelope
from tropsecant.errors import InfeasibleError
from tropsecant.kernel import (LinearSystem, RatMatrix, feasible, inverse, mat_rank, nullspace,
                               relint_point, solution_dim, to_rational)

from helpers import HEXAGON, SQUARE_PLUS_2, from_basis


def test_mat_rank_examples():
    assert mat_rank(RatMatrix.from_rows([[1, 0], [0, 1]])) == 2
    assert mat_rank(RatMatrix.from_rows([[0] * 4] * 3)) == 0
    assert mat_rank([[1, 2, 3], [2, 4, 6]]) == 1


def test_to_rational_formats():
    assert to_rational("3/6") == Fraction(1, 2)
    assert to_rational("0.25") == Fraction(1, 4)
    assert to_rational(0.1) == Fraction(1, 10)
    assert to_rational(7) == 7
    with pytest.raises(TypeError):
        to_rational(True)


small_matrix = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(small_matrix)
def test_rank_of_transpose(rows):
    m = RatMatrix.from_rows(rows)
    assert mat_rank(m) == mat_rank(m.transpose())


def test_inverse_and_nullspace():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert inverse(a) == [[1, -1], [-1, 2]]
    assert inverse([[1, 2], [2, 4]]) is None
    (v,) = nullspace([[1, 2, 3], [0, 1, 1]], 3)
    assert v[0] + 2 * v[1] + 3 * v[2] == 0 and v[1] + v[2] == 0


def test_open_interval_is_feasible():
    res = feasible(LinearSystem(1, strict=[([1], 0), ([-1], -1)]))
    assert res.feasible
    assert 0 < res.witness[0] < 1


def test_contradiction_is_infeasible():
    res = feasible(LinearSystem(1, weak=[([1], 0), ([-1], 0)], strict=[([1], 0)]))
    assert not res.feasible
    assert res.witness is None


def test_inconsistent_equalities():
    assert not feasible(LinearSystem(2, equalities=[([1, 1], 1), ([2, 2], 3)]))


def test_unbounded_weak_system_is_feasible():
    res = feasible(LinearSystem(2, weak=[([1, 0], 5), ([1, 1], -3)]))
    assert res.feasible and res.witness[0] >= 5


def test_square_plus_2_four_cells_feasible_and_reinduces():
    c = from_basis(SQUARE_PLUS_2)
    split = AbstractSubdivision(tuple(frozenset(s) for s in ({0, 1, 2, 3}, {2, 3, 4, 5}, {0, 2, 4}, {1, 3, 5})))
    res = feasible(regularity_system(c, split))
    assert res.feasible
    env = upper_envelope(c, res.witness[:c.n])
    assert {frozenset(cell.members) for cell in env.cells} == set(split.cells)


def test_solution_dim_examples():
    assert solution_dim(LinearSystem(3)) == 3
    assert solution_dim(LinearSystem(2, equalities=[([1, 1], 0)])) == 1
    assert solution_dim(LinearSystem(1, weak=[([1], 0), ([-1], 0)])) == 0
    with pytest.raises(InfeasibleError):
        solution_dim(LinearSystem(1, strict=[([1], 0), ([-1], 0)]))


def test_solution_dim_with_hidden_equality_among_many():
    # x + y <= 1, x >= 0, y >= 0, x + y >= 1 : a segment
    sys = LinearSystem(2, weak=[([-1, -1], -1), ([1, 0], 0), ([0, 1], 0), ([1, 1], 1)])
    assert solution_dim(sys) == 1


def test_relint_point_examples():
    (x,) = relint_point(LinearSystem(1, weak=[([1], 0), ([-1], -2)]))
    assert 0 < x < 2
    assert relint_point(LinearSystem(1, equalities=[([1], 1)])) == (1,)
    with pytest.raises(InfeasibleError):
        relint_point(LinearSystem(1, strict=[([1], 1), ([-1], -1)]))


def test_relint_of_hexagon_triangulation_cone_reinduces_it():
    c = from_basis(HEXAGON)
    tri = AbstractSubdivision(tuple(frozenset(s) for s in ({0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {3, 4, 5})))
    sys = regularity_system(c, tri)
    # the closed cone: strict rows relaxed to weak ones
    closed = LinearSystem(sys.variables, sys.equalities, sys.strict)
    point = relint_point(closed)
    env = upper_envelope(c, point[:c.n])
    assert {frozenset(cell.members) for cell in env.cells} == set(tri.cells)


def test_relint_point_survives_small_perturbation():
    sys = LinearSystem(3, equalities=[([1, 1, 1], 3)],
                       weak=[([1, 0, 0], 0), ([0, 1, 0], 0), ([0, 0, 1], 0), ([-1, 0, 0], -2)])
    p = relint_point(sys)
    assert sys.satisfied_by(p)
    # null space of the forced equalities: directions summing to zero
    step = Fraction(1, 10 ** 6)
    for direction in ((1, -1, 0), (0, 1, -1)):
        q = tuple(a + step * b for a, b in zip(p, direction))
        assert all(sum(ai * qi for ai, qi in zip(a, q)) > b for a, b in sys.weak)


def _scipy_strict_feasible(eqs, weak, strict, n):
    """Float oracle: maximize t with strict rows relaxed by t <= 1."""
    c = np.zeros(n + 1)
    c[-1] = -1
    a_ub, b_ub = [], []
    for a, b in weak:
        a_ub.append([-float(v) for v in a] + [0.0])
        b_ub.append(-float(b))
    for a, b in strict:
        a_ub.append([-float(v) for v in a] + [1.0])
        b_ub.append(-float(b))
    a_eq = [[float(v) for v in a] + [0.0] for a, _ in eqs] or None
    b_eq = [float(b) for _, b in eqs] or None
    bounds = [(None, None)] * n + [(0, 1)]
    res = linprog(c, A_ub=a_ub or None, b_ub=b_ub or None, A_eq=a_eq, b_eq=b_eq,
                  bounds=bounds, method="highs")
    if res.status == 2:
        return False
    assert res.status == 0
    return (not strict) or -res.fun > 1e-7


row = st.tuples(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.integers(-4, 4))


@settings(max_examples=150, deadline=None)
@given(st.lists(row, max_size=1), st.lists(row, max_size=4), st.lists(row, max_size=3))
def test_feasible_agrees_with_float_lp(eqs, weak, strict):
    sys = LinearSystem(2, eqs, weak, strict)
    res = feasible(sys)
    if res.feasible:
        assert sys.satisfied_by(res.witness)
    assert res.feasible == _scipy_strict_feasible(eqs, weak, strict, 2)


@settings(max_examples=80, deadline=None)
@given(st.lists(row, max_size=4), st.lists(row, max_size=3), row)
def test_feasible_is_monotone(weak, strict, extra):
    sys = LinearSystem(2, (), weak, strict)
    if not feasible(sys):
        assert not feasible(sys.add(weak=[extra]))
        assert not feasible(sys.add(strict=[extra]))
