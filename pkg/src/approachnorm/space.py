"""Finite approach spaces.

A distance on a finite set is determined by its values on singletons, and the
enlargement axiom forces the triangle inequality on them, so a finite approach
space is exactly a finite extended quasi-pseudometric ``q``.  The distance
from a point to a set is ``delta(x, A) = min_{a in A} q(x, a)`` (``INF`` for
the empty set).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    EmptySubspace,
    NonzeroDiagonal,
    NotAPreorder,
    TriangleViolation,
    UnknownPoint,
)
from .values import INF, ExtValue, ext

PointSet = frozenset


@dataclass(frozen=True)
class FiniteSpace:
    """Points plus an extended quasi-pseudometric matrix, validated on construction.

    ``q[i][j]`` is ``q(points[i], points[j])``.  Entries may be given as
    anything :func:`~approachnorm.values.ext` understands.
    """

    points: tuple
    q: tuple
    index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        points = tuple(str(p) for p in self.points)
        n = len(points)
        if n == 0:
            raise EmptySubspace("a space needs at least one point")
        if len(set(points)) != n:
            raise ValueError("point identifiers must be unique")
        if len(self.q) != n or any(len(row) != n for row in self.q):
            raise ValueError(f"q must be a {n}x{n} matrix")
        q = tuple(tuple(ext(v) for v in row) for row in self.q)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "index", {p: i for i, p in enumerate(points)})
        for i in range(n):
            if q[i][i] != 0:
                raise NonzeroDiagonal(points[i])
        for i in range(n):
            qi = q[i]
            for j in range(n):
                qij = qi[j]
                if qij is INF:
                    continue
                qj = q[j]
                for k in range(n):
                    if qi[k] > qij + qj[k]:
                        raise TriangleViolation(points[i], points[j], points[k], qi[k], qij + qj[k])

    def __len__(self):
        return len(self.points)

    def __hash__(self):
        return hash((self.points, self.q))

    @classmethod
    def from_pairs(cls, points: Sequence, pairs: Mapping, default=INF, transpose=False):
        """Build a space from listed distances ``{(a, b): v}``; unlisted pairs get *default*.

        By default a listed ``d(a, b) = v`` means ``q(a, b) = v``; ``transpose=True``
        reads it as ``q(b, a) = v`` instead.
        """
        pts = [str(p) for p in points]
        pos = {p: i for i, p in enumerate(pts)}
        n = len(pts)
        q = [[0 if i == j else default for j in range(n)] for i in range(n)]
        for (a, b), v in pairs.items():
            i, j = pos[str(a)], pos[str(b)]
            if transpose:
                i, j = j, i
            q[i][j] = v
        return cls(tuple(pts), tuple(tuple(r) for r in q))

    # -- index helpers -------------------------------------------------------

    def pos(self, x) -> int:
        try:
            return self.index[str(x)]
        except KeyError:
            raise UnknownPoint(f"unknown point {x!r}") from None

    def idx(self, A: Iterable) -> tuple:
        """Indices of the labels in *A*, ascending."""
        if isinstance(A, str):
            raise TypeError("pass a collection of point labels, not a single string")
        return tuple(sorted({self.pos(a) for a in A}))

    def mask(self, A: Iterable) -> int:
        m = 0
        for i in self.idx(A):
            m |= 1 << i
        return m

    def labels(self, idxs: Iterable[int]) -> PointSet:
        return frozenset(self.points[i] for i in idxs)

    def labels_of_mask(self, mask: int) -> PointSet:
        return frozenset(p for i, p in enumerate(self.points) if mask >> i & 1)

    def ordered(self, A: Iterable) -> list:
        """Labels of *A* in declaration order (for stable output)."""
        return [self.points[i] for i in self.idx(A)]

    # -- distance primitives on indices -------------------------------------

    def dist_idx(self, i: int, idxs: Iterable[int]) -> ExtValue:
        qi = self.q[i]
        best = INF
        for a in idxs:
            v = qi[a]
            if v < best:
                best = v
        return best

    def dist_vector(self, idxs: Sequence[int]) -> tuple:
        """``(delta(x, A) for x in X)`` for the index set *idxs*."""
        return tuple(self.dist_idx(i, idxs) for i in range(len(self.points)))

    def closure_mask(self, mask: int) -> int:
        idxs = [i for i in range(len(self.points)) if mask >> i & 1]
        out = 0
        for i in range(len(self.points)):
            if self.dist_idx(i, idxs) == 0:
                out |= 1 << i
        return out

    @cached_property
    def realized_values(self) -> tuple:
        """Distinct entries of ``q`` (equivalently, all values ``delta`` takes), ascending."""
        return tuple(sorted(set(v for row in self.q for v in row), key=_sort_key))

    @cached_property
    def dstar(self) -> tuple:
        return _min_plus_closure(symmetrization(self))


def _sort_key(v):
    return (1, 0) if v is INF else (0, v)


def validate(points: Sequence, q: Sequence[Sequence]) -> FiniteSpace:
    """Parse and validate a point list and distance matrix.

    Raises :class:`NonzeroDiagonal` or :class:`TriangleViolation` (with the
    first violating triple in index order).
    """
    return FiniteSpace(tuple(points), tuple(tuple(row) for row in q))


def distance(s: FiniteSpace, x, A: Iterable) -> ExtValue:
    return s.dist_idx(s.pos(x), s.idx(A))


def enlargement(s: FiniteSpace, A: Iterable, eps) -> PointSet:
    """``A^(eps) = {x : delta(x, A) <= eps}``; ``eps = 0`` gives the closure."""
    eps = ext(eps)
    idxs = s.idx(A)
    return frozenset(p for i, p in enumerate(s.points) if s.dist_idx(i, idxs) <= eps)


def closure(s: FiniteSpace, A: Iterable) -> PointSet:
    return enlargement(s, A, 0)


def symmetrization(s: FiniteSpace) -> tuple:
    """``min(q(x, y), q(y, x))`` entrywise.  Symmetric, but not necessarily a metric."""
    n = len(s.points)
    q = s.q
    return tuple(tuple(min(q[i][j], q[j][i]) for j in range(n)) for i in range(n))


def _min_plus_closure(m) -> tuple:
    n = len(m)
    d = [list(row) for row in m]
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik is INF:
                continue
            di = d[i]
            for j in range(n):
                v = dik + dk[j]
                if v < di[j]:
                    di[j] = v
    return tuple(tuple(row) for row in d)


def path_closure(s: FiniteSpace) -> tuple:
    """All-pairs min-plus closure ``d*`` of the symmetrization.

    ``d*`` is the largest metric below the symmetrization, and every contraction
    into the Euclidean half-line is 1-Lipschitz for it.
    """
    return s.dstar


def subspace(s: FiniteSpace, Y: Iterable) -> FiniteSpace:
    """Restriction to *Y*, keeping declaration order."""
    idxs = s.idx(Y)
    if not idxs:
        raise EmptySubspace("subspace needs at least one point")
    return FiniteSpace(
        tuple(s.points[i] for i in idxs),
        tuple(tuple(s.q[i][j] for j in idxs) for i in idxs),
    )


@dataclass(frozen=True)
class ClosureRelation:
    """``rel[i][j]`` holds iff ``points[i]`` lies in the closure of ``{points[j]}``."""

    points: tuple
    rel: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(str(p) for p in self.points))
        object.__setattr__(self, "rel", tuple(tuple(bool(b) for b in row) for row in self.rel))
        n = len(self.points)
        if len(self.rel) != n or any(len(r) != n for r in self.rel):
            raise ValueError(f"closure relation must be {n}x{n}")

    @classmethod
    def from_closures(cls, points: Sequence, closures: Mapping):
        """Build from ``{point: closure of {point}}``; reflexivity is added."""
        pts = [str(p) for p in points]
        rel = [[i == j for j in range(len(pts))] for i in range(len(pts))]
        pos = {p: i for i, p in enumerate(pts)}
        for y, cl in closures.items():
            for x in cl:
                rel[pos[str(x)]][pos[str(y)]] = True
        return cls(tuple(pts), tuple(tuple(r) for r in rel))


def from_topology(c: ClosureRelation) -> FiniteSpace:
    """The topological approach space: ``q(x, y) = 0`` if ``x in cl{y}``, else ``INF``."""
    n = len(c.points)
    r = c.rel
    for i in range(n):
        if not r[i][i]:
            raise NotAPreorder(f"not reflexive at {c.points[i]}")
    for i in range(n):
        for j in range(n):
            if r[i][j]:
                for k in range(n):
                    if r[j][k] and not r[i][k]:
                        raise NotAPreorder(
                            f"not transitive: {c.points[i]}, {c.points[j]}, {c.points[k]}"
                        )
    q = tuple(tuple(0 if r[i][j] else INF for j in range(n)) for i in range(n))
    return FiniteSpace(c.points, q)


def coreflection(s: FiniteSpace) -> ClosureRelation:
    """Underlying topology: ``x in cl{y}`` iff ``q(x, y) = 0``."""
    return ClosureRelation(s.points, tuple(tuple(v == 0 for v in row) for row in s.q))
