"""Regular subdivisions of small configurations and tropical secant complexes.

Subdivisions are assembled exhaustively from tight, full-dimensional
candidate cells by a depth-first search that glues cells facet to facet,
then filtered by an exact regularity LP.  A subdivision is represented by
the member sets of its cells; cells are tight, so a point lying in a cell's
hull is always one of its members.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional

from .config import PointConfig, is_general_position
from .errors import SizeGuardError
from .kernel import FeasibilityResult, LinearSystem, affine_rank, dot, feasible, nullspace
from .secant import min_set_cover

DEFAULT_MAX_POINTS = 12

Cell = frozenset  # a tight set of point indices


@dataclass(frozen=True)
class AbstractSubdivision:
    cells: tuple[frozenset[int], ...]

    def __post_init__(self):
        cells = tuple(sorted((frozenset(c) for c in self.cells), key=lambda s: sorted(s)))
        object.__setattr__(self, "cells", cells)

    @property
    def is_trivial(self) -> bool:
        return len(self.cells) == 1

    def refines(self, other: "AbstractSubdivision") -> bool:
        return all(any(f <= g for g in other.cells) for f in self.cells)

    def as_lists(self) -> list[list[int]]:
        return [sorted(c) for c in self.cells]


class RegularSubdivision(NamedTuple):
    subdivision: AbstractSubdivision
    cone_dim: int
    heights: tuple[Fraction, ...]


# --------------------------------------------------------------------------
# candidate cells


def _hyperplane(points) -> Optional[tuple[tuple[Fraction, ...], Fraction]]:
    """Normal and offset of the affine hyperplane through ``d`` points."""
    base = points[0]
    d = len(base)
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    ns = nullspace(diffs, d)
    if len(ns) != 1:
        return None
    normal = tuple(ns[0])
    return normal, dot(normal, base)


def _facets(c: PointConfig, members: frozenset) -> list[tuple[frozenset, tuple, Fraction]]:
    """Facets of ``conv(members)`` as ``(points on it, inward normal, offset)``."""
    idx = sorted(members)
    out: list[tuple[frozenset, tuple, Fraction]] = []
    seen: list[frozenset] = []
    for sub in itertools.combinations(idx, c.d):
        if any(s.issuperset(sub) for s in seen):
            continue
        hp = _hyperplane([c.points[i] for i in sub])
        if hp is None:
            continue
        normal, off = hp
        vals = {i: dot(normal, c.points[i]) - off for i in idx}
        if all(v >= 0 for v in vals.values()):
            sign = 1
        elif all(v <= 0 for v in vals.values()):
            sign = -1
        else:
            continue
        on = frozenset(i for i, v in vals.items() if v == 0)
        seen.append(on)
        out.append((on, tuple(sign * a for a in normal), sign * off))
    return out


@lru_cache(maxsize=16)
def _candidates(c: PointConfig) -> tuple[tuple[frozenset, tuple], ...]:
    """Tight full-dimensional subsets with their facets."""
    out = []
    for size in range(c.d + 1, c.n + 1):
        for sub in itertools.combinations(range(c.n), size):
            pts = [c.points[i] for i in sub]
            if affine_rank(pts) != c.d:
                continue
            members = frozenset(sub)
            facets = _facets(c, members)
            inside = [j for j in range(c.n) if j not in members
                      and all(dot(nv, c.points[j]) >= off for _, nv, off in facets)]
            if not inside:
                out.append((members, tuple(facets)))
    return tuple(out)


def enumerate_candidate_cells(c: PointConfig) -> list[frozenset[int]]:
    """All tight subsets of points whose hull is full-dimensional."""
    return [m for m, _ in _candidates(c)]


# --------------------------------------------------------------------------
# assembly


def _proper_lp(c: PointConfig, a: frozenset, b: frozenset) -> bool:
    """Is there a hyperplane with ``a`` weakly on one side, ``b`` on the other,
    and exactly ``a & b`` on it?"""
    shared = a & b
    row = lambda i: list(c.points[i]) + [Fraction(-1)]
    eqs = [(row(i), 0) for i in shared]
    strict = [(row(i), 0) for i in a - shared]
    strict += [([-v for v in row(i)], 0) for i in b - shared]
    return feasible(LinearSystem(c.d + 1, eqs, (), strict)).feasible


class _Assembler:
    def __init__(self, c: PointConfig):
        self.c = c
        self.cands = _candidates(c)
        self.facets = {m: {f: (nv, off) for f, nv, off in fs} for m, fs in self.cands}
        canon: dict[frozenset, tuple] = {}
        self.interior: dict[frozenset, list[tuple[frozenset, int]]] = {}
        self.across: dict[tuple[frozenset, int], list[frozenset]] = defaultdict(list)
        for m, fs in self.cands:
            walls = []
            for f, nv, off in fs:
                vals = [dot(nv, p) - off for p in c.points]
                if all(v >= 0 for v in vals):
                    continue  # on the boundary of the whole configuration
                if f not in canon:
                    canon[f] = (nv, off)
                cn, co = canon[f]
                probe = next(i for i in m if i not in f)
                side = 1 if dot(cn, c.points[probe]) - co > 0 else -1
                walls.append((f, side))
                self.across[(f, side)].append(m)
            self.interior[m] = walls
        self._proper: dict[frozenset, bool] = {}

    def proper(self, a: frozenset, b: frozenset) -> bool:
        key = frozenset((a, b))
        hit = self._proper.get(key)
        if hit is not None:
            return hit
        shared = a & b
        if a <= b or b <= a:
            ok = False
        elif shared and not (any(shared <= f for f in self.facets[a])
                             and any(shared <= f for f in self.facets[b])):
            ok = False
        elif shared in self.facets[a] and shared in self.facets[b] and self._opposite(a, b, shared):
            ok = True
        else:
            ok = _proper_lp(self.c, a, b)
        self._proper[key] = ok
        return ok

    def _opposite(self, a, b, f) -> bool:
        sa = dict(self.interior[a]).get(f)
        sb = dict(self.interior[b]).get(f)
        return sa is not None and sb is not None and sa == -sb

    def run(self) -> list[AbstractSubdivision]:
        c = self.c
        seed = min(range(c.n), key=lambda i: (c.points[i], i))
        found: set[frozenset] = set()
        visited: set[frozenset] = set()

        def dfs(cells: frozenset, open_walls: dict):
            if cells in visited:
                return
            visited.add(cells)
            if not open_walls:
                found.add(cells)
                return
            wall = min(open_walls, key=lambda f: (len(self.across[(f, open_walls[f])]), sorted(f)))
            for cand in self.across[(wall, open_walls[wall])]:
                if cand in cells or not all(self.proper(cand, o) for o in cells):
                    continue
                nxt = dict(open_walls)
                clash = False
                for f, side in self.interior[cand]:
                    if f in nxt:
                        if nxt[f] != side:
                            clash = True
                            break
                        del nxt[f]
                    else:
                        nxt[f] = -side
                if not clash:
                    dfs(cells | {cand}, nxt)

        for m, _ in self.cands:
            if seed in m:
                dfs(frozenset([m]), {f: -side for f, side in self.interior[m]})
        return sorted((AbstractSubdivision(tuple(s)) for s in found), key=_sort_key)


def _sort_key(s: AbstractSubdivision):
    return (len(s.cells), [sorted(x) for x in s.cells])


def _guard(c: PointConfig, max_points: int) -> None:
    if c.n > max_points:
        raise SizeGuardError(f"{c.n} points exceeds the enumeration bound of {max_points}")


def assemble_subdivisions(c: PointConfig, max_points: int = DEFAULT_MAX_POINTS) -> list[AbstractSubdivision]:
    """Every polyhedral subdivision into tight cells, regular or not."""
    _guard(c, max_points)
    return _Assembler(c).run()


# --------------------------------------------------------------------------
# regularity


def regularity_system(c: PointConfig, s: AbstractSubdivision) -> LinearSystem:
    """Heights ``h`` and one affine functional per cell, each functional
    agreeing with ``h`` on its members and lying strictly above elsewhere.

    Variables: ``h_1..h_n`` then ``(coeffs, const)`` for each cell in order.
    """
    n, d = c.n, c.d
    nvars = n + len(s.cells) * (d + 1)
    eqs, strict = [], []
    for ci, cell in enumerate(s.cells):
        off = n + ci * (d + 1)
        for i in range(n):
            row = [0] * nvars
            row[i] = -1
            for k in range(d):
                row[off + k] = c.points[i][k]
            row[off + d] = 1
            (eqs if i in cell else strict).append((row, 0))
    return LinearSystem(nvars, eqs, (), strict)


def _check_cells(c: PointConfig, s: AbstractSubdivision) -> None:
    covered = set()
    for cell in s.cells:
        if affine_rank([c.points[i] for i in cell]) != c.d:
            raise ValueError(f"cell {sorted(cell)} is not full-dimensional")
        covered |= cell
    if covered != set(range(c.n)):
        raise ValueError("some point lies in no cell")


def is_regular(c: PointConfig, s: AbstractSubdivision) -> FeasibilityResult:
    """Feasibility of the regularity system; the witness is the height vector
    and ``solution_dim`` the dimension of the cone of inducing heights."""
    _check_cells(c, s)
    res = feasible(regularity_system(c, s))
    if not res:
        return res
    # no weak rows, so feasible() reports the dimension; the functionals are
    # determined by the heights, so it is also the dimension of the cone
    return FeasibilityResult("feasible", res.witness[:c.n], res.solution_dim)


def cone_dim(c: PointConfig, s: AbstractSubdivision) -> int:
    res = is_regular(c, s)
    if not res:
        raise ValueError("subdivision is not regular")
    return res.solution_dim


def enumerate_regular_subdivisions(c: PointConfig, max_points: int = DEFAULT_MAX_POINTS) -> list[RegularSubdivision]:
    """All regular subdivisions using every point, trivial one included."""
    return list(_regular(c, max_points))


@lru_cache(maxsize=16)
def _regular(c: PointConfig, max_points: int) -> tuple[RegularSubdivision, ...]:
    out = []
    for s in assemble_subdivisions(c, max_points):
        res = is_regular(c, s)
        if res:
            out.append(RegularSubdivision(s, res.solution_dim, res.witness))
    return tuple(out)


# --------------------------------------------------------------------------
# secant complexes


class ComplexMember(NamedTuple):
    subdivision: AbstractSubdivision
    cone_dim: int
    complex_dim: int
    cover_number: int
    heights: tuple[Fraction, ...]


@dataclass
class SecantComplex:
    config: PointConfig
    k: int
    members: list[ComplexMember]
    edges: list[tuple[int, int]]  # (finer index, coarser index), covering pairs
    trivial: Optional[RegularSubdivision] = None

    def maximal(self) -> list[int]:
        """Indices of members that no other member refines (facets of the complex)."""
        has_finer = {coarse for _, coarse in self.edges}
        return [i for i in range(len(self.members)) if i not in has_finer]


def _masks(s: AbstractSubdivision) -> list[int]:
    return [sum(1 << i for i in cell) for cell in s.cells]


def _refines_masks(fine: list[int], coarse: list[int]) -> bool:
    return all(any(f & ~g == 0 for g in coarse) for f in fine)


def build_secant_complex(c: PointConfig, k: int, max_points: int = DEFAULT_MAX_POINTS) -> SecantComplex:
    """Nontrivial regular subdivisions having ``k + 1`` cells that cover all points."""
    regular = enumerate_regular_subdivisions(c, max_points)
    members, trivial = [], None
    for r in regular:
        if r.subdivision.is_trivial:
            trivial = r
            continue
        cover = min_set_cover(r.subdivision.cells, c.n)
        if cover is not None and len(cover) <= k + 1:
            members.append(ComplexMember(r.subdivision, r.cone_dim, r.cone_dim - (c.d + 2),
                                         len(cover), r.heights))
    members.sort(key=lambda m: (m.cone_dim, _sort_key(m.subdivision)))
    # the complex is closed under coarsening, so its face poset is graded by
    # cone dimension and covering pairs differ by exactly one
    by_dim = defaultdict(list)
    for i, m in enumerate(members):
        by_dim[m.cone_dim].append(i)
    masks = [_masks(m.subdivision) for m in members]
    edges = []
    for i, m in enumerate(members):
        for j in by_dim.get(m.cone_dim - 1, ()):
            if _refines_masks(masks[i], masks[j]):
                edges.append((i, j))
    return SecantComplex(c, k, members, edges, trivial)


@dataclass(frozen=True)
class ComplexStats:
    facet_count: int
    dims: tuple[int, ...]
    pure: bool
    variety_dim: int
    euler_char: int
    components: int
    vertex_count: int = field(default=0)


def complex_stats(sc: SecantComplex) -> ComplexStats:
    finest = sc.maximal()
    dims = tuple(sorted(sc.members[i].complex_dim for i in finest))
    cone_dims = [m.cone_dim for m in sc.members]
    if sc.trivial is not None:
        cone_dims.append(sc.trivial.cone_dim)
    variety_dim = (max(cone_dims) if cone_dims else sc.config.d + 1) - 1
    euler = sum((-1) ** m.complex_dim for m in sc.members)
    parent = list(range(len(sc.members)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in sc.edges:
        parent[find(a)] = find(b)
    components = len({find(i) for i in range(len(sc.members))})
    return ComplexStats(
        facet_count=len(finest),
        dims=dims,
        pure=len(set(dims)) <= 1,
        variety_dim=variety_dim,
        euler_char=euler,
        components=components,
        vertex_count=sum(1 for m in sc.members if m.complex_dim == 0),
    )


def to_dot(sc: SecantComplex) -> str:
    """Face-incidence graph in Graphviz DOT."""
    lines = ["graph secant_complex {"]
    for i, m in enumerate(sc.members):
        cells = " ".join("{" + ",".join(map(str, sorted(cell))) + "}" for cell in m.subdivision.cells)
        lines.append(f'  m{i} [label="{i}: dim {m.complex_dim}\\n{cells}"];')
    for a, b in sc.edges:
        lines.append(f"  m{a} -- m{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# generic witnesses


def _generic_order(c: PointConfig) -> list[int]:
    """Sort points by ``z . (1, t, t^2, ...)`` for a ``t`` with no ties."""
    t = Fraction(1000)
    while True:
        w = [t ** k for k in range(c.d)]
        vals = [dot(w, p) for p in c.points]
        if len(set(vals)) == c.n:
            return sorted(range(c.n), key=lambda i: vals[i])
        t = t * 10 + 7


def _batch_groups(order: list[int], k: int, d: int) -> list[list[frozenset]]:
    """Candidate groupings of the ordered points into at most ``k + 1`` cells."""
    n = len(order)
    size = d + 1
    full = min(n // size, k + 1)
    if full == k + 1:
        groups = [order[i * size:(i + 1) * size] for i in range(k)]
        groups.append(order[k * size:])
        return [[frozenset(g) for g in groups]]
    groups = [order[i * size:(i + 1) * size] for i in range(full)]
    rest = order[full * size:]
    if not rest:
        return [[frozenset(g) for g in groups]]
    # leftover points form a simplex with points borrowed from earlier groups,
    # trying the latest points first
    need = size - len(rest)
    pool = order[:full * size][::-1]
    options = []
    for borrow in itertools.combinations(pool, need):
        options.append([frozenset(g) for g in groups] + [frozenset(rest) | frozenset(borrow)])
    return options


def batch_witness(c: PointConfig, k: int, max_points: int = DEFAULT_MAX_POINTS) -> AbstractSubdivision:
    """A finest regular subdivision containing ``k + 1`` cells of consecutive
    points in a generic linear order."""
    if not is_general_position(c):
        raise ValueError("batch_witness needs a configuration in general position")
    order = _generic_order(c)
    regular = enumerate_regular_subdivisions(c, max_points)
    for groups in _batch_groups(order, k, c.d):
        hits = [r for r in regular if all(g in r.subdivision.cells for g in groups)]
        if hits:
            best = max(hits, key=lambda r: (r.cone_dim, [[-i for i in sorted(x)] for x in r.subdivision.cells]))
            return best.subdivision
    raise ValueError("no regular subdivision contains the batched cells")
