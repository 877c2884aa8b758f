"""``[0, inf]``-valued functions on a finite space.

On a finite space the lower hull is one min-plus product and the upper hull
one max-plus product with ``q``; the triangle inequality makes a single
product idempotent, so no fixpoint iteration is needed.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterable, Mapping, Optional

from .errors import CarrierMismatch, UnboundedInput
from .space import FiniteSpace
from .values import INF, ExtValue, _norm, ext, tsub


class CodomainTag(enum.Enum):
    """Structure on the codomain ``[0, inf]``."""

    EUCLID = "euclid"  # d_E = d_P v d_P^-
    LOWER = "lower"  # d_P(a, b) = a - b, truncated
    UPPER = "upper"  # the dual of d_P


@dataclass(frozen=True)
class FnOverSpace:
    space: FiniteSpace
    values: tuple
    bound: Optional[ExtValue] = None

    def __post_init__(self):
        vals = tuple(ext(v) for v in self.values)
        if len(vals) != len(self.space.points):
            raise CarrierMismatch(
                f"{len(vals)} values for a space of {len(self.space.points)} points"
            )
        object.__setattr__(self, "values", vals)
        if self.bound is not None:
            b = ext(self.bound)
            object.__setattr__(self, "bound", b)
            if any(v > b for v in vals):
                raise ValueError(f"values exceed the declared bound {b}")

    @classmethod
    def from_mapping(cls, space: FiniteSpace, values: Mapping, bound=None):
        missing = set(space.points) - {str(k) for k in values}
        if missing:
            raise CarrierMismatch(f"no value for {sorted(missing)}")
        extra = {str(k) for k in values} - set(space.points)
        if extra:
            raise CarrierMismatch(f"values given for unknown points {sorted(extra)}")
        vals = {str(k): v for k, v in values.items()}
        return cls(space, tuple(vals[p] for p in space.points), bound)

    def __getitem__(self, x) -> ExtValue:
        return self.values[self.space.pos(x)]

    def as_dict(self) -> dict:
        return dict(zip(self.space.points, self.values))

    @property
    def is_bounded(self) -> bool:
        return all(v is not INF for v in self.values)

    def sup(self) -> ExtValue:
        return max(self.values)

    def with_values(self, values, bound=None) -> "FnOverSpace":
        return FnOverSpace(self.space, tuple(values), bound)


def pointwise_le(f: FnOverSpace, g: FnOverSpace) -> bool:
    return all(a <= b for a, b in zip(f.values, g.values))


def pointwise_min(*fs: FnOverSpace) -> FnOverSpace:
    return fs[0].with_values(min(col) for col in zip(*(f.values for f in fs)))


def pointwise_max(*fs: FnOverSpace) -> FnOverSpace:
    return fs[0].with_values(max(col) for col in zip(*(f.values for f in fs)))


def constant(s: FiniteSpace, c) -> FnOverSpace:
    c = ext(c)
    return FnOverSpace(s, (c,) * len(s.points))


def theta(s: FiniteSpace, A: Iterable, omega=None) -> FnOverSpace:
    """Indicator ``0`` on *A*, ``INF`` off *A*; truncated at *omega* when given."""
    top = INF if omega is None else ext(omega)
    idxs = set(s.idx(A))
    return FnOverSpace(
        s, tuple(0 if i in idxs else top for i in range(len(s.points))), omega
    )


def classify(f: FnOverSpace, tag: CodomainTag) -> bool:
    """Is *f* contractive into ``[0, inf]`` with the structure named by *tag*?

    Singleton pairs suffice on a finite space because the infimum over a set
    is attained.  ``UPPER`` and ``EUCLID`` also require *f* bounded.
    """
    q = f.space.q
    v = f.values
    n = len(v)
    if tag is CodomainTag.LOWER:
        return all(tsub(v[i], v[j]) <= q[i][j] for i in range(n) for j in range(n))
    if not f.is_bounded:
        return False
    if tag is CodomainTag.UPPER:
        return all(tsub(v[j], v[i]) <= q[i][j] for i in range(n) for j in range(n))
    return all(abs(v[i] - v[j]) <= q[i][j] for i in range(n) for j in range(n))


def is_lower_regular(f: FnOverSpace) -> bool:
    return classify(f, CodomainTag.LOWER)


def is_upper_regular(f: FnOverSpace) -> bool:
    return classify(f, CodomainTag.UPPER)


def is_contraction(f: FnOverSpace) -> bool:
    """Bounded contraction into the Euclidean half-line."""
    return classify(f, CodomainTag.EUCLID)


def lower_hull(mu: FnOverSpace) -> FnOverSpace:
    """Largest lower-regular function below *mu*: ``min_y mu(y) + q(x, y)``."""
    q = mu.space.q
    v = mu.values
    n = len(v)
    out = []
    for i in range(n):
        qi = q[i]
        best = INF
        for j in range(n):
            c = v[j] + qi[j]
            if c < best:
                best = c
        out.append(best)
    return FnOverSpace(mu.space, tuple(out), mu.bound)


def upper_hull(mu: FnOverSpace) -> FnOverSpace:
    """Smallest upper-regular function above bounded *mu*: ``max_y mu(y) - q(x, y)``."""
    if not mu.is_bounded:
        raise UnboundedInput("the upper hull is only defined for bounded functions")
    q = mu.space.q
    v = mu.values
    n = len(v)
    out = tuple(max(tsub(v[j], q[i][j]) for j in range(n)) for i in range(n))
    return FnOverSpace(mu.space, out, mu.bound)


def delta_fn(s: FiniteSpace, A: Iterable, omega=None) -> FnOverSpace:
    """``x -> delta(x, A)``, truncated at *omega* when given."""
    vec = s.dist_vector(s.idx(A))
    if omega is not None:
        w = ext(omega)
        vec = tuple(min(v, w) for v in vec)
    return FnOverSpace(s, vec, omega)


def core(s: FiniteSpace, A: Iterable, omega) -> FnOverSpace:
    """``x -> omega - delta(x, X \\ A)`` (truncated subtraction); *omega* finite."""
    w = ext(omega)
    if w is INF:
        raise UnboundedInput("the core needs a finite omega")
    inside = set(s.idx(A))
    rest = [i for i in range(len(s.points)) if i not in inside]
    vec = tuple(tsub(w, s.dist_idx(i, rest)) for i in range(len(s.points)))
    return FnOverSpace(s, vec, w)


# -- developments ------------------------------------------------------------


@dataclass(frozen=True)
class Development:
    """Finite approximation from below: levels ``m_i`` on the blocks ``M_i``.

    ``blocks`` is a tuple of ``(frozenset of labels, level)``; the blocks are
    pairwise disjoint and nonempty.
    """

    epsilon: ExtValue
    blocks: tuple

    def __post_init__(self):
        eps = ext(self.epsilon)
        if eps is INF or eps <= 0:
            raise ValueError("a development needs a finite epsilon > 0")
        blocks = []
        seen = set()
        for M, m in self.blocks:
            M = frozenset(str(p) for p in M)
            if not M:
                continue
            if M & seen:
                raise ValueError("development blocks must be disjoint")
            seen |= M
            level = ext(m)
            if level is INF:
                raise ValueError("development levels must be finite")
            blocks.append((M, level))
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "blocks", tuple(blocks))

    @property
    def carrier(self) -> frozenset:
        out = frozenset()
        for M, _ in self.blocks:
            out |= M
        return out

    def level_of(self, x) -> ExtValue:
        for M, m in self.blocks:
            if x in M:
                return m
        raise KeyError(x)


def canonical_development(f: FnOverSpace, eps) -> Development:
    """Blocks ``f^-1([i eps, (i+1) eps))`` at levels ``i eps``; empty blocks dropped."""
    e = ext(eps)
    if e is INF or e <= 0:
        raise ValueError("epsilon must be finite and positive")
    if not f.is_bounded:
        raise UnboundedInput("only bounded functions have developments")
    groups: dict[int, list] = {}
    for p, v in zip(f.space.points, f.values):
        groups.setdefault(floor(Fraction(v) / Fraction(e)), []).append(p)
    blocks = tuple((frozenset(groups[i]), _norm(Fraction(e) * i)) for i in sorted(groups))
    return Development(e, blocks)


def level_development(f: FnOverSpace, eps=1) -> Development:
    """Blocks are the level sets of *f* at their exact values.

    This one development is valid for every epsilon, so it stands for the whole
    epsilon-indexed family on finite data.
    """
    if not f.is_bounded:
        raise UnboundedInput("only bounded functions have developments")
    groups: dict = {}
    for p, v in zip(f.space.points, f.values):
        groups.setdefault(v, []).append(p)
    return Development(eps, tuple((frozenset(groups[v]), v) for v in sorted(groups)))


def development_valid(dev: Development, f: FnOverSpace) -> bool:
    """Check ``mu_eps <= f <= mu_eps + eps`` pointwise, exactly."""
    if dev.carrier != frozenset(f.space.points):
        raise CarrierMismatch("development blocks do not partition the function's carrier")
    for M, m in dev.blocks:
        for x in M:
            v = f[x]
            if not (m <= v <= m + dev.epsilon):
                return False
    return True


def development_function(dev: Development, s: FiniteSpace) -> FnOverSpace:
    """``mu_eps = min_i (m_i + theta_{M_i})`` as a function on *s*."""
    out = []
    for p in s.points:
        out.append(min((m for M, m in dev.blocks if p in M), default=INF))
    return FnOverSpace(s, tuple(out))
