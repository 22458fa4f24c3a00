"""Exact rational linear algebra and linear feasibility.

Everything here works over :class:`fractions.Fraction`; nothing is ever
rounded.  The feasibility routine accepts equalities, weak inequalities and
strict inequalities and decides them with a dense two-phase simplex using
Bland's rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import InfeasibleError

try:  # C-level rationals for the inner loops; results are always Fractions
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

Rational = Fraction

Row = tuple[Fraction, ...]
Constraint = tuple[Row, Fraction]


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions, ``"p/q"`` / decimal strings and floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # decimal text, not the binary expansion
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rational_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(to_rational(v) for v in values)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _frac(q) -> Fraction:
    return q if isinstance(q, Fraction) else Fraction(int(q.numerator), int(q.denominator))


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        entries = tuple(rational_vector(r) for r in self.entries)
        if len(entries) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(entries)}")
        for r in entries:
            if len(r) != self.cols:
                raise ValueError("matrix is not rectangular")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         tuple(self.column(j) for j in range(self.cols)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def _rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over the first ``ncols`` columns.

    Extra trailing columns (an augmented right-hand side) are carried along
    but never chosen as pivots.  Entries come back as internal rationals.
    """
    m = [[_Q(v) for v in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        prow = m[r]
        inv = 1 / prow[col]
        if inv != 1:
            prow[:] = [v * inv for v in prow]
        nz = [(j, v) for j, v in enumerate(prow) if v != 0]
        for i in range(len(m)):
            if i != r:
                f = m[i][col]
                if f != 0:
                    row = m[i]
                    for j, v in nz:
                        row[j] -= f * v
        pivots.append(col)
        r += 1
    return m, pivots


def mat_rank(m) -> int:
    """Exact rank of a :class:`RatMatrix` or a list of rows."""
    if isinstance(m, RatMatrix):
        rows, ncols = m.entries, m.cols
    else:
        rows = [rational_vector(r) for r in m]
        ncols = len(rows[0]) if rows else 0
    if not rows or ncols == 0:
        return 0
    return len(_rref(rows, ncols)[1])


def solve_square(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Optional[list[Fraction]]:
    """Unique solution of ``a x = b`` or ``None`` when ``a`` is singular."""
    n = len(a)
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, piv = _rref(aug, n)
    if len(piv) < n:
        return None
    return [_frac(red[i][n]) for i in range(n)]


def inverse(a: Sequence[Sequence[Fraction]]) -> Optional[list[list[Fraction]]]:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    red, piv = _rref(aug, n)
    if len(piv) < n:
        return None
    return [[_frac(v) for v in row[n:]] for row in red]


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right null space (one vector per free column)."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, piv = _rref(rows, ncols)
    free = [j for j in range(ncols) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(piv):
            v[p] = -_frac(red[r][f])
        basis.append(v)
    return basis


def affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the affine hull (``-1`` for no points)."""
    if not points:
        return -1
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    return mat_rank(diffs) if diffs and len(base) else 0


# --------------------------------------------------------------------------
# Linear systems


def _normalize(constraints) -> tuple[Constraint, ...]:
    return tuple((rational_vector(c), to_rational(b)) for c, b in constraints)


@dataclass(frozen=True)
class LinearSystem:
    """Equalities ``a.v = b``, weak rows ``a.v >= b`` and strict rows ``a.v > b``."""

    variables: int
    equalities: tuple[Constraint, ...] = ()
    weak: tuple[Constraint, ...] = ()
    strict: tuple[Constraint, ...] = ()

    def __post_init__(self):
        for name in ("equalities", "weak", "strict"):
            rows = _normalize(getattr(self, name))
            for coeffs, _ in rows:
                if len(coeffs) != self.variables:
                    raise ValueError(
                        f"{name} row has {len(coeffs)} coefficients, expected {self.variables}")
            object.__setattr__(self, name, rows)

    def add(self, equalities=(), weak=(), strict=()) -> "LinearSystem":
        return LinearSystem(self.variables,
                            self.equalities + _normalize(equalities),
                            self.weak + _normalize(weak),
                            self.strict + _normalize(strict))

    def satisfied_by(self, v: Sequence[Fraction]) -> bool:
        return (all(dot(a, v) == b for a, b in self.equalities)
                and all(dot(a, v) >= b for a, b in self.weak)
                and all(dot(a, v) > b for a, b in self.strict))


@dataclass(frozen=True)
class FeasibilityResult:
    status: str
    witness: Optional[tuple[Fraction, ...]] = None
    solution_dim: Optional[int] = field(default=None, compare=False)

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"

    def __bool__(self) -> bool:
        return self.feasible


INFEASIBLE = FeasibilityResult("infeasible")


def _pivot(tab: list[list[Fraction]], obj: list[Fraction], basis: list[int], r: int, c: int) -> None:
    row = tab[r]
    inv = 1 / row[c]
    if inv != 1:
        row[:] = [v * inv for v in row]
    nz = [(j, v) for j, v in enumerate(row) if v != 0]
    for i, other in enumerate(tab):
        if i != r:
            f = other[c]
            if f != 0:
                for j, v in nz:
                    other[j] -= f * v
    f = obj[c]
    if f != 0:
        for j, v in nz:
            obj[j] -= f * v
    basis[r] = c


def _run_simplex(tab, obj, basis, allowed: int) -> bool:
    """Maximize using Bland's rule; ``obj`` holds reduced costs and ``-value``.

    Only columns below ``allowed`` may enter.  Returns ``False`` if unbounded.
    """
    while True:
        enter = next((j for j in range(allowed) if obj[j] > 0), None)
        if enter is None:
            return True
        best = None
        for i, row in enumerate(tab):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return False
        _pivot(tab, obj, basis, best[1], enter)


def _lp_max(a: list[list], b: list, c: list):
    """Maximize ``c.z`` s.t. ``a z <= b``, ``z >= 0``.

    Returns ``(status, value, z)`` with status one of ``optimal``,
    ``infeasible`` and ``unbounded``.  Phase one uses a single auxiliary
    column that is pivoted in on the most violated row.
    """
    m, n = len(a), len(c)
    zero, one = _Q(0), _Q(1)
    # columns: structural (n) | slacks (m) | auxiliary x0 | rhs
    aux = n + m
    tab = []
    for i in range(m):
        row = [_Q(v) for v in a[i]] + [zero] * m + [-one, _Q(b[i])]
        row[n + i] = one
        tab.append(row)
    basis = [n + i for i in range(m)]
    width = n + m + 2

    if any(bi < 0 for bi in b):
        obj = [zero] * width
        obj[aux] = -one
        r = min(range(m), key=lambda i: (b[i], i))
        _pivot(tab, obj, basis, r, aux)
        _run_simplex(tab, obj, basis, aux + 1)
        if obj[-1] != 0:
            # obj[-1] holds minus the optimum of -x0
            return "infeasible", None, None
        if aux in basis:
            r = basis.index(aux)
            col = next((j for j in range(aux) if tab[r][j] != 0), None)
            if col is None:
                tab.pop(r)
                basis.pop(r)
            else:
                _pivot(tab, obj, basis, r, col)
    for row in tab:
        row[aux] = zero

    obj = [_Q(v) for v in c] + [zero] * (width - n)
    for i, bv in enumerate(basis):
        f = obj[bv]
        if f != 0:
            obj = [o - f * v for o, v in zip(obj, tab[i])]
    if not _run_simplex(tab, obj, basis, aux):
        return "unbounded", None, None
    z = [zero] * n
    for i, bv in enumerate(basis):
        if bv < n:
            z[bv] = tab[i][-1]
    return "optimal", -obj[-1], z


def _eliminate_equalities(sys: LinearSystem):
    """Parametrize the equality solution set as ``p0 + B u``.

    ``B`` is returned column-sparse: ``basis[i]`` maps free-parameter index
    to coefficient.  Returns ``None`` when the equalities are inconsistent.
    """
    n = sys.variables
    if not sys.equalities:
        return [_Q(0)] * n, [{i: _Q(1)} for i in range(n)], n
    aug = [list(a) + [b] for a, b in sys.equalities]
    red, piv = _rref(aug, n)
    for row in red[len(piv):]:
        if row[n] != 0:
            return None
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    fidx = {f: k for k, f in enumerate(free)}
    p0 = [_Q(0)] * n
    basis: list[dict] = [dict() for _ in range(n)]
    for f, k in fidx.items():
        basis[f][k] = _Q(1)
    for r, p in enumerate(piv):
        row = red[r]
        p0[p] = row[n]
        basis[p] = {fidx[j]: -row[j] for j in free if row[j] != 0}
    return p0, basis, len(free)


def feasible(sys: LinearSystem) -> FeasibilityResult:
    """Decide whether some point satisfies every row of ``sys``.

    Strict rows are relaxed to ``a.v >= b + t`` and the slack ``t`` is
    maximized subject to ``t <= 1``; the system is feasible iff the optimum
    is positive.  On success the returned witness satisfies all rows
    exactly, strict ones strictly.  When there are no weak rows the result
    also carries the dimension of the solution set.
    """
    param = _eliminate_equalities(sys)
    if param is None:
        return INFEASIBLE
    p0, basis, nfree = param

    def reduce(a, b):
        coeff = [_Q(0)] * nfree
        rhs = _Q(b)
        for i, ai in enumerate(a):
            if ai:
                q = _Q(ai)
                rhs -= q * p0[i]
                for k, v in basis[i].items():
                    coeff[k] += q * v
        return coeff, rhs

    weak, strict = [], []
    for rows, target, is_strict in ((sys.weak, weak, False), (sys.strict, strict, True)):
        for a, b in rows:
            coeff, rhs = reduce(a, b)
            if any(coeff):
                target.append((coeff, rhs))
            elif (0 <= rhs) if is_strict else (0 < rhs):
                return INFEASIBLE

    if not weak and not strict:
        u = [_Q(0)] * nfree
    else:
        # z = (u+, u-, t); every row written as "<=".
        use_t = bool(strict)
        zero, one = _Q(0), _Q(1)
        tail = [zero] if use_t else []
        a_ub, b_ub = [], []
        for coeff, rhs in weak:
            a_ub.append([-x for x in coeff] + coeff + tail)
            b_ub.append(-rhs)
        for coeff, rhs in strict:
            a_ub.append([-x for x in coeff] + coeff + [one])
            b_ub.append(-rhs)
        if use_t:
            a_ub.append([zero] * (2 * nfree) + [one])
            b_ub.append(one)
        c = [zero] * (2 * nfree) + ([one] if use_t else [])
        status, value, z = _lp_max(a_ub, b_ub, c)
        if status != "optimal" or (use_t and value <= 0):
            return INFEASIBLE
        u = [z[k] - z[nfree + k] for k in range(nfree)]

    witness = tuple(_frac(p0[i] + sum((v * u[k] for k, v in basis[i].items()), _Q(0)))
                    for i in range(sys.variables))
    assert sys.satisfied_by(witness), "simplex returned a non-witness"
    return FeasibilityResult("feasible", witness, None if sys.weak else nfree)


def _forced_rows(sys: LinearSystem) -> list[int]:
    """Indices of weak rows that hold with equality on the whole solution set."""
    forced = []
    for i, row in enumerate(sys.weak):
        probe = LinearSystem(sys.variables, sys.equalities,
                             sys.weak[:i] + sys.weak[i + 1:], sys.strict + (row,))
        if not feasible(probe):
            forced.append(i)
    return forced


def solution_dim(sys: LinearSystem) -> int:
    """Dimension of the affine hull of the solution set of ``sys``."""
    res = feasible(sys)
    if not res:
        raise InfeasibleError("solution_dim of an infeasible system")
    if res.solution_dim is not None:
        return res.solution_dim
    forced = _forced_rows(sys)
    rows = [a for a, _ in sys.equalities] + [sys.weak[i][0] for i in forced]
    return sys.variables - mat_rank(rows)


def relint_point(sys: LinearSystem) -> tuple[Fraction, ...]:
    """A point satisfying every weak row that is not implicitly tight strictly."""
    if not feasible(sys):
        raise InfeasibleError("relint_point of an infeasible system")
    forced = set(_forced_rows(sys))
    eqs = sys.equalities + tuple(sys.weak[i] for i in sorted(forced))
    loose = tuple(r for i, r in enumerate(sys.weak) if i not in forced)
    res = feasible(LinearSystem(sys.variables, eqs, (), sys.strict + loose))
    if not res:
        # cannot happen: each loose row is strictly satisfiable on its own and
        # the solution set is convex
        raise InfeasibleError("relative interior is empty")
    return res.witness
