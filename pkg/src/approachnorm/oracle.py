"""Brute-force authorities for small instances.

Everything here enumerates grid-valued functions and tests membership in the
function classes straight from the point-to-set definitions (all subsets,
sup/inf of images), so it shares no formula with the closed forms it checks:
no ``d*``, no hull products, no pairwise criteria beyond pruning.  Pruning
uses only necessary conditions (a singleton ``A``), so no candidate that
passes the full check is ever cut.

Grids are the closure of a few seed values under adding and truncated
subtracting the finite entries of ``q``, at most ``|X|`` times, clipped to
``[0, bound]``.  The extremal functions of the theory are all of that form.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .errors import InstanceTooLarge
from .functions import FnOverSpace
from .maps import SpaceMap, image_function
from .space import FiniteSpace
from .values import INF, ExtValue, ext, tsub

SIZE_LIMIT = 4


def _key(v):
    return (1, 0) if v is INF else (0, v)


@dataclass(frozen=True)
class GridSpec:
    values: tuple  # ascending

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(sorted(set(self.values), key=_key)))


def make_grid(s: FiniteSpace, seeds: Iterable = (), bound: ExtValue = INF, depth: Optional[int] = None) -> GridSpec:
    bound = ext(bound)
    steps = sorted({v for row in s.q for v in row if v is not INF and v > 0})
    vals = {0} | {ext(v) for v in seeds if ext(v) is not INF}
    if bound is not INF:
        vals.add(bound)
    frontier = set(vals)
    for _ in range(len(s.points) if depth is None else depth):
        new = set()
        for v in frontier:
            for e in steps:
                for w in (v + e, tsub(v, e)):
                    if w <= bound and w not in vals:
                        new.add(w)
        vals |= new
        frontier = new
        if not frontier:
            break
    vals = {v for v in vals if v <= bound}
    if bound is INF or any(ext(v) is INF for v in seeds):
        vals.add(INF)
    return GridSpec(tuple(vals))


def _check_size(s: FiniteSpace, limit: int):
    if len(s.points) > limit:
        raise InstanceTooLarge(f"oracle refuses {len(s.points)} points (limit {limit})")


# -- class membership from the definitions ------------------------------------


def _subsets(n: int):
    return [[i for i in range(n) if m >> i & 1] for m in range(1 << n)]


def _delta(s: FiniteSpace, i: int, A) -> ExtValue:
    return min((s.q[i][a] for a in A), default=INF)


def lower_regular_full(s: FiniteSpace, v) -> bool:
    """``v(x) - sup v(A) <= delta(x, A)`` for every point and every nonempty subset."""
    n = len(v)
    for A in _subsets(n)[1:]:
        top = max(v[a] for a in A)
        for i in range(n):
            if tsub(v[i], top) > _delta(s, i, A):
                return False
    return True


def upper_regular_full(s: FiniteSpace, v) -> bool:
    """Bounded, and ``inf v(A) - v(x) <= delta(x, A)`` for all points and nonempty subsets."""
    if any(x is INF for x in v):
        return False
    n = len(v)
    for A in _subsets(n)[1:]:
        low = min(v[a] for a in A)
        for i in range(n):
            if tsub(low, v[i]) > _delta(s, i, A):
                return False
    return True


def euclid_contractive_full(s: FiniteSpace, v) -> bool:
    """Bounded, and ``inf_{a in A} |v(x) - v(a)| <= delta(x, A)`` for all points and subsets."""
    if any(x is INF for x in v):
        return False
    n = len(v)
    for A in _subsets(n)[1:]:
        for i in range(n):
            if min(abs(v[i] - v[a]) for a in A) > _delta(s, i, A):
                return False
    return True


_FULL = {"lower": lower_regular_full, "upper": upper_regular_full, "euclid": euclid_contractive_full}


def _pair_ok(kind: str, vi, vj, qij, qji) -> bool:
    # necessary conditions from singleton sets, both orientations
    if kind == "lower":
        return tsub(vi, vj) <= qij and tsub(vj, vi) <= qji
    if kind == "upper":
        return tsub(vj, vi) <= qij and tsub(vi, vj) <= qji
    if vi is INF or vj is INF:
        return False
    d = abs(vi - vj)
    return d <= qij and d <= qji


def enumerate_functions(
    s: FiniteSpace,
    grid: GridSpec,
    kind: str,
    lo: Optional[tuple] = None,
    hi: Optional[tuple] = None,
) -> Iterator[tuple]:
    """All grid-valued ``v`` with ``lo <= v <= hi`` in the class *kind*.

    *kind* is ``"lower"``, ``"upper"`` or ``"euclid"``.
    """
    n = len(s.points)
    q = s.q
    choices = []
    for i in range(n):
        opts = [
            v
            for v in grid.values
            if (lo is None or lo[i] <= v) and (hi is None or v <= hi[i])
        ]
        choices.append(opts)
    full = _FULL[kind]
    cur = [None] * n

    def rec(i):
        if i == n:
            if full(s, cur):
                yield tuple(cur)
            return
        for v in choices[i]:
            if all(_pair_ok(kind, v, cur[j], q[i][j], q[j][i]) for j in range(i)):
                cur[i] = v
                yield from rec(i + 1)
        cur[i] = None

    yield from rec(0)


# -- oracles --------------------------------------------------------------------


def oracle_urysohn_exists(s: FiniteSpace, A, B, gamma, limit: int = SIZE_LIMIT) -> bool:
    """Is there a Euclidean contraction into ``[0, gamma]``, ``gamma`` on ``cl A``, ``0`` on ``cl B``?"""
    _check_size(s, limit)
    gamma = ext(gamma)
    ia, ib = set(s.idx(A)), set(s.idx(B))
    n = len(s.points)
    # closure from the definition: delta(x, A) = 0
    ca = {i for i in range(n) if _delta(s, i, ia) == 0}
    cb = {i for i in range(n) if _delta(s, i, ib) == 0}
    if ca & cb:
        return False
    grid = make_grid(s, (gamma,), gamma)
    lo = tuple(gamma if i in ca else 0 for i in range(n))
    hi = tuple(0 if i in cb else gamma for i in range(n))
    return next(enumerate_functions(s, grid, "euclid", lo, hi), None) is not None


def oracle_hull(s: FiniteSpace, mu: FnOverSpace, side: str, limit: int = SIZE_LIMIT) -> FnOverSpace:
    """Largest lower regular grid function below *mu*, or smallest upper regular one above it."""
    _check_size(s, limit)
    n = len(s.points)
    if side == "lower":
        grid = make_grid(s, mu.values, INF)
        best = [0] * n
        for v in enumerate_functions(s, grid, "lower", hi=mu.values):
            best = [max(a, b) for a, b in zip(best, v)]
        return FnOverSpace(s, tuple(best))
    if side == "upper":
        if any(v is INF for v in mu.values):
            raise ValueError("upper hull oracle needs a bounded function")
        top = max(mu.values)
        grid = make_grid(s, mu.values, top)
        best = [top] * n
        for v in enumerate_functions(s, grid, "upper", lo=mu.values):
            best = [min(a, b) for a, b in zip(best, v)]
        return FnOverSpace(s, tuple(best))
    raise ValueError("side must be 'lower' or 'upper'")


def oracle_kt_exists(s: FiniteSpace, g: FnOverSpace, h: FnOverSpace, limit: int = SIZE_LIMIT) -> bool:
    _check_size(s, limit)
    top = max(h.values)
    grid = make_grid(s, tuple(g.values) + tuple(h.values), top)
    return next(enumerate_functions(s, grid, "euclid", g.values, h.values), None) is not None


@lru_cache(maxsize=256)
def _family(s: FiniteSpace, grid: GridSpec, kind: str) -> tuple:
    # map sweeps test many maps out of one domain; enumerate its class once
    return tuple(enumerate_functions(s, grid, kind))


def _map_grid(m: SpaceMap):
    finite = [v for sp in (m.domain, m.codomain) for row in sp.q for v in row if v is not INF]
    big = max(finite) + 1
    return big


def oracle_closed_expansive(m: SpaceMap, limit: int = SIZE_LIMIT) -> bool:
    """Does the push-forward of every grid lower regular function stay lower regular?"""
    _check_size(m.domain, limit)
    for v in _family(m.domain, make_grid(m.domain, (), INF), "lower"):
        img = image_function(m, FnOverSpace(m.domain, v))
        if not lower_regular_full(m.codomain, img.values):
            return False
    return True


def oracle_open_expansive(m: SpaceMap, limit: int = SIZE_LIMIT) -> bool:
    """Does the push-forward of every bounded grid upper regular function stay upper regular?"""
    _check_size(m.domain, limit)
    big = _map_grid(m)
    for v in _family(m.domain, make_grid(m.domain, (big,), big), "upper"):
        img = image_function(m, FnOverSpace(m.domain, v))
        if not upper_regular_full(m.codomain, img.values):
            return False
    return True


def witness_closed_violation(m: SpaceMap, limit: int = SIZE_LIMIT) -> Optional[FnOverSpace]:
    """A lower regular grid function whose push-forward is not lower regular, if any."""
    _check_size(m.domain, limit)
    for v in _family(m.domain, make_grid(m.domain, (), INF), "lower"):
        mu = FnOverSpace(m.domain, v)
        if not lower_regular_full(m.codomain, image_function(m, mu).values):
            return mu
    return None
