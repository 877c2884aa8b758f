"""Contractive extension from a subspace.

The extension is the interpolant between ``u(mu_check)`` and ``l(mu_hat)``,
where ``mu_hat`` and ``mu_check`` extend ``f`` by ``gamma`` and by ``0`` off
the subspace.  Which functions may be extended is gated by the development
condition ``m_l - m_k <= delta(x, M_k) + delta(x, M_l)`` for points outside
the subspace.

The condition is stated for a family of developments, one per epsilon in
``]0, 1[``.  On finite data such a family satisfying it exists iff the exact
level-set development satisfies it (let epsilon go to 0 in the condition for
two points of the subspace), so that development is what decides.  A single
user supplied development is checked as given as well.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import CarrierMismatch, NotSeparated, OutOfBound, PreconditionFailed
from .functions import (
    CodomainTag,
    Development,
    FnOverSpace,
    classify,
    development_valid,
    level_development,
    lower_hull,
    pointwise_le,
    upper_hull,
)
from .interpolation import kt_direct
from .separation import separation_degree
from .space import FiniteSpace, closure
from .values import ExtValue, INF, ext, tsub


@dataclass(frozen=True)
class ConditionFailed:
    """The development condition fails at outside point *x* for blocks ``l``, ``k``."""

    x: str
    l: int
    k: int
    epsilon: ExtValue
    block_l: tuple = ()  # (labels, level)
    block_k: tuple = ()


@dataclass(frozen=True)
class NoExtension:
    point: str
    gap: ExtValue


@dataclass(frozen=True)
class ExtensionResult:
    status: str  # "extended" | "condition_failed" | "no_extension"
    extension: Optional[FnOverSpace] = None
    failure: object = None
    mu_hat: Optional[FnOverSpace] = None
    mu_check: Optional[FnOverSpace] = None
    lower_hat: Optional[FnOverSpace] = None
    upper_check: Optional[FnOverSpace] = None

    @property
    def extended(self) -> bool:
        return self.status == "extended"


def _subspace_points(s: FiniteSpace, f: FnOverSpace) -> list:
    Y = list(f.space.points)
    if not set(Y) <= set(s.points):
        raise CarrierMismatch("f lives on points outside the ambient space")
    pos = [s.pos(y) for y in Y]
    for a, i in zip(Y, pos):
        for b, j in zip(Y, pos):
            if f.space.q[f.space.pos(a)][f.space.pos(b)] != s.q[i][j]:
                raise CarrierMismatch("f does not live on a subspace of s")
    return Y


def tietze_condition(s: FiniteSpace, Y, dev: Development):
    """``True``, or the first :class:`ConditionFailed` (outside point, then ``l``, then ``k``)."""
    Yset = frozenset(str(y) for y in Y)
    if dev.carrier != Yset:
        raise CarrierMismatch("the development blocks must partition the subspace")
    blocks = list(dev.blocks)
    for i, x in enumerate(s.points):
        if x in Yset:
            continue
        d = [s.dist_idx(i, s.idx(M)) for M, _ in blocks]
        for l, (Ml, ml) in enumerate(blocks):
            for k, (Mk, mk) in enumerate(blocks):
                if tsub(ml, mk) > d[k] + d[l]:
                    return ConditionFailed(
                        x, l, k, dev.epsilon, (s.ordered(Ml), ml), (s.ordered(Mk), mk)
                    )
    return True


def build_hats(s: FiniteSpace, Y, f: FnOverSpace, gamma):
    """``(mu_hat, mu_check)``: *f* on *Y*, and ``gamma`` resp. ``0`` elsewhere."""
    gamma = ext(gamma)
    if any(v > gamma for v in f.values):
        raise OutOfBound(f"f exceeds gamma = {gamma}")
    Yset = set(str(y) for y in Y)
    hat, check = [], []
    for p in s.points:
        if p in Yset:
            v = f[p]
            hat.append(v)
            check.append(v)
        else:
            hat.append(gamma)
            check.append(0)
    return FnOverSpace(s, tuple(hat), gamma), FnOverSpace(s, tuple(check), gamma)


def tietze_extend(s: FiniteSpace, f: FnOverSpace, gamma, dev: Optional[Development] = None) -> ExtensionResult:
    """Extend the contraction *f* (living on a subspace of *s*) to all of *s*.

    With *dev* omitted the level-set development is used.  Returns status
    ``condition_failed`` when the gate rejects *f*, ``no_extension`` when the
    interpolation step finds no contraction (the ambient space is then not
    normal), and ``extended`` otherwise; the extension equals *f* on the
    subspace exactly.
    """
    gamma = ext(gamma)
    if gamma is INF:
        raise PreconditionFailed("gamma must be finite")
    Y = _subspace_points(s, f)
    if not classify(f, CodomainTag.EUCLID):
        raise PreconditionFailed("f is not a contraction on the subspace")
    if any(v > gamma for v in f.values):
        raise PreconditionFailed(f"f exceeds gamma = {gamma}")
    exact = level_development(f)
    if dev is None:
        dev = exact
    if not development_valid(dev, f):
        raise PreconditionFailed("the development does not approximate f within epsilon")
    for d in (dev, exact):
        verdict = tietze_condition(s, Y, d)
        if verdict is not True:
            return ExtensionResult("condition_failed", failure=verdict)
    mu_hat, mu_check = build_hats(s, Y, f, gamma)
    lo = lower_hull(mu_hat)
    up = upper_hull(mu_check)
    assert pointwise_le(up, lo), "hull sandwich violated although the condition holds"
    res = kt_direct(s, up, lo)
    common = dict(mu_hat=mu_hat, mu_check=mu_check, lower_hat=lo, upper_check=up)
    if not res.found:
        return ExtensionResult("no_extension", failure=NoExtension(res.point, res.gap), **common)
    g = res.interpolant
    assert all(g[y] == f[y] for y in Y), "extension must restrict to f"
    return ExtensionResult("extended", extension=FnOverSpace(s, g.values, gamma), **common)


def urysohn_via_tietze(s: FiniteSpace, A, B, gamma):
    """Urysohn function obtained by extending ``gamma`` on ``cl A``, ``0`` on ``cl B``.

    Returns the extension, or :class:`NoExtension`.  The two-block development
    puts level ``gamma`` on ``cl A`` and ``0`` on ``cl B``, matching the
    function it develops.
    """
    from .space import subspace

    gamma = ext(gamma)
    if gamma is INF or gamma == 0:
        raise ValueError("gamma must be finite and positive")
    if gamma > separation_degree(s, A, B):
        raise NotSeparated(f"the sets are not {gamma}-separated")
    ca, cb = closure(s, A), closure(s, B)
    Y = [p for p in s.points if p in ca or p in cb]
    sub = subspace(s, Y)
    f = FnOverSpace(sub, tuple(gamma if p in ca else 0 for p in sub.points), gamma)
    dev = Development(Fraction(1, 2), ((ca, gamma), (cb, 0)))
    res = tietze_extend(s, f, gamma, dev)
    if res.status == "condition_failed":
        # cannot happen for separated sets; surfaced rather than hidden
        raise PreconditionFailed(f"development condition failed: {res.failure}")
    if res.status == "no_extension":
        return res.failure
    return res.extension
