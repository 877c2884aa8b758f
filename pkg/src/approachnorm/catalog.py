"""Named instances: the finite counterexamples, grid samples, random generators.

Infinite examples only appear as finite grids.  Urysohn constructions carry
over to the grids, but the cardinality argument behind the non-normality of
the anti-diagonal spaces does not, so ``Xn-grid`` comes with no verdict.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from .errors import BadParams, UnknownEntry
from .space import FiniteSpace, _min_plus_closure
from .values import INF, ext


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: dict
    space: FiniteSpace
    note: str
    designated: dict = field(default_factory=dict)  # named subsets, e.g. {"A": [...], "B": [...]}


def _e3(transpose=False) -> FiniteSpace:
    return FiniteSpace.from_pairs(
        "xyz", {("x", "z"): 1, ("y", "z"): 2, ("x", "y"): 4}, transpose=transpose
    )


def _e4(transpose=False) -> FiniteSpace:
    pairs = {("x", "z"): 1, ("y", "z"): 1, ("w", "z"): 1, ("w", "x"): 2, ("w", "y"): 2}
    return FiniteSpace.from_pairs("xyzw", pairs, transpose=transpose)


def _num(v) -> str:
    return str(ext(v))


def _int_param(params, key, default, lo=1, hi=None):
    v = params.get(key, default)
    try:
        v = int(v)
    except (TypeError, ValueError):
        raise BadParams(f"{key} must be an integer") from None
    if v < lo or (hi is not None and v > hi):
        raise BadParams(f"{key} must lie in [{lo}, {hi if hi is not None else 'inf'}]")
    return v


def _step_param(params, default=1):
    try:
        step = ext(params.get("step", default))
    except (TypeError, ValueError):
        raise BadParams("step must be a positive rational") from None
    if step is INF or step <= 0:
        raise BadParams("step must be a positive rational")
    return step


def exinorm(params) -> CatalogEntry:
    t = bool(params.get("transpose", False))
    return CatalogEntry(
        "exInorm",
        {"transpose": t} if t else {},
        _e3(t),
        "3-point quasi-metric with d(x,z)=1, d(y,z)=2, d(x,y)=4; not normal, has the splitting property",
        {"A": ["x"], "B": ["y"]},
    )


def exvo(params) -> CatalogEntry:
    t = bool(params.get("transpose", False))
    return CatalogEntry(
        "exVO",
        {"transpose": t} if t else {},
        _e4(t),
        "4-point quasi-metric d(x,z)=d(y,z)=d(w,z)=1, d(w,x)=d(w,y)=2 as listed; "
        "the listed pair ({x},{y,z,w}) has separation degree 1, not 4",
        {"A": ["x"], "B": ["y", "z", "w"]},
    )


def exvo_repaired(params) -> CatalogEntry:
    t = bool(params.get("transpose", False))
    return CatalogEntry(
        "exVO-repaired",
        {"transpose": t} if t else {},
        _e4(t),
        "same space as exVO with the designated pair ({x},{y}), separation degree 4 via w",
        {"A": ["x"], "B": ["y"]},
    )


def pplus_grid(params) -> CatalogEntry:
    n = _int_param(params, "n", 5, 1, 12)
    pts = tuple(str(i) for i in range(n + 1))
    q = tuple(tuple(max(i - j, 0) for j in range(n + 1)) for i in range(n + 1))
    return CatalogEntry(
        "pplus-grid", {"n": n}, FiniteSpace(pts, q),
        "q(x, y) = x - y truncated at 0 on {0..n}; every two nonempty sets have 0 in both closures",
    )


def _sorgenfrey(n, step):
    xs = [step * i for i in range(n)]
    pts = tuple(_num(x) for x in xs)
    q = tuple(tuple(ext(b - a) if a <= b else INF for b in xs) for a in xs)
    return FiniteSpace(pts, q)


def sorgenfrey_grid(params) -> CatalogEntry:
    n = _int_param(params, "n", 6, 1, 12)
    step = _step_param(params)
    return CatalogEntry(
        "sorgenfrey-grid", {"n": n, "step": str(step)}, _sorgenfrey(n, step),
        "q(x, y) = y - x if x <= y else inf on {0, step, ..., (n-1) step}",
    )


def qs_grid(params) -> CatalogEntry:
    n = _int_param(params, "n", 3, 1, 3)
    step = _step_param(params)
    xs = [step * i for i in range(n)]
    pts = list(itertools.product(xs, xs))

    def q1(a, b):
        return ext(b - a) if a <= b else INF

    labels = tuple(f"({_num(a)},{_num(b)})" for a, b in pts)
    q = tuple(tuple(q1(a[0], b[0]) + q1(a[1], b[1]) for b in pts) for a in pts)
    return CatalogEntry(
        "qS-grid", {"n": n, "step": str(step)}, FiniteSpace(labels, q),
        "product sum of two Sorgenfrey grids on an n x n square",
    )


def xn_grid(params) -> CatalogEntry:
    n = _int_param(params, "n", 2, 0, 6)
    m = _int_param(params, "m", 2, 0, 6)
    pts = [(i, j) for i in range(m + 1) for j in range(m + 1) if i + j >= n]
    if not pts:
        raise BadParams("no grid point satisfies i + j >= n")
    if len(pts) > 10:
        raise BadParams("at most 10 points; lower m or raise n")

    def q1(a, b):
        return b - a if a <= b else INF

    labels = tuple(f"({i},{j})" for i, j in pts)
    q = tuple(tuple(q1(a[0], b[0]) + q1(a[1], b[1]) for b in pts) for a in pts)
    return CatalogEntry(
        "Xn-grid", {"n": n, "m": m}, FiniteSpace(labels, q),
        "integer points (i, j) in [0, m]^2 with i + j >= n under the product-sum quasi-metric; "
        "no normality verdict is claimed for these samples",
    )


def _random_matrix(rng, n, symmetric, values):
    raw = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if symmetric and j < i:
                raw[i][j] = raw[j][i]
            else:
                raw[i][j] = rng.choice(values)
    return _min_plus_closure(raw)


def random_metric(n: int, seed: int, values=None) -> FiniteSpace:
    """Random finite symmetric metric (triangle-completed), points ``p0..``."""
    rng = random.Random(seed)
    vals = values or list(range(1, 10))
    return FiniteSpace(tuple(f"p{i}" for i in range(n)), _random_matrix(rng, n, True, vals))


def random_quasimetric(n: int, seed: int, values=None) -> FiniteSpace:
    rng = random.Random(seed)
    vals = values or [0, 1, 2, 3, 5, INF, INF]
    return FiniteSpace(tuple(f"p{i}" for i in range(n)), _random_matrix(rng, n, False, vals))


def _random_metric_entry(params):
    n = _int_param(params, "n", 5, 1, 10)
    seed = _int_param(params, "seed", 0, 0)
    return CatalogEntry("random-metric", {"n": n, "seed": seed}, random_metric(n, seed),
                        "random symmetric integer metric, closed under shortest paths")


def _random_quasimetric_entry(params):
    n = _int_param(params, "n", 5, 1, 10)
    seed = _int_param(params, "seed", 0, 0)
    return CatalogEntry("random-quasimetric", {"n": n, "seed": seed}, random_quasimetric(n, seed),
                        "random quasi-metric with zeros and infinities, closed under shortest paths")


ENTRIES: dict[str, Callable[[dict], CatalogEntry]] = {
    "exInorm": exinorm,
    "exVO": exvo,
    "exVO-repaired": exvo_repaired,
    "pplus-grid": pplus_grid,
    "sorgenfrey-grid": sorgenfrey_grid,
    "qS-grid": qs_grid,
    "Xn-grid": xn_grid,
    "random-metric": _random_metric_entry,
    "random-quasimetric": _random_quasimetric_entry,
}


def names() -> list:
    return list(ENTRIES)


def get(name: str, params: dict | None = None) -> CatalogEntry:
    try:
        builder = ENTRIES[name]
    except KeyError:
        raise UnknownEntry(f"unknown catalog entry {name!r}; known: {', '.join(ENTRIES)}") from None
    return builder(dict(params or {}))


# -- enumeration for sweeps -------------------------------------------------------


def enumerate_spaces(n: int, values=(0, 1, 2, INF), up_to_iso: bool = True):
    """Every valid space on ``n`` points with off-diagonal entries from *values*.

    With *up_to_iso* only the lexicographically least matrix of each
    relabelling class is produced.
    """
    cells = [(i, j) for i in range(n) for j in range(n) if i != j]
    perms = list(itertools.permutations(range(n)))
    keyed = {v: k for k, v in enumerate(sorted(set(values), key=lambda v: (v is INF, 0 if v is INF else v)))}
    pts = tuple(f"p{i}" for i in range(n))
    for combo in itertools.product(values, repeat=len(cells)):
        q = [[0] * n for _ in range(n)]
        for (i, j), v in zip(cells, combo):
            q[i][j] = v
        if not _triangle_ok(q):
            continue
        if up_to_iso:
            code = tuple(keyed[q[i][j]] for i, j in cells)
            if any(
                tuple(keyed[q[p[i]][p[j]]] for i, j in cells) < code for p in perms[1:]
            ):
                continue
        yield FiniteSpace(pts, tuple(tuple(r) for r in q))


def _triangle_ok(q) -> bool:
    n = len(q)
    for i in range(n):
        for j in range(n):
            if q[i][j] is INF:
                continue
            for k in range(n):
                if q[i][k] > q[i][j] + q[j][k]:
                    return False
    return True
