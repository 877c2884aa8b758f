"""Interpolating a contraction between an upper and a lower regular function.

The direct route: every Euclidean contraction below ``h`` is below
``f*(x) = min_y h(y) + d*(x, y)``, which is itself such a contraction, so an
interpolant exists iff ``g <= f*``.

The staged route follows the Urysohn-based construction level by level
(``f^k_{m,n}``, ``f_{m,n}``, ``f_n``) and records its two quantitative bounds
exactly.  The countable infimum at the end is truncated to the stages built
plus the guard ``f*`` (see :func:`kt_staged`).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    NotContractive,
    NotLowerRegular,
    NotOrdered,
    NotUpperRegular,
    SandwichViolated,
    SpaceIsNormal,
    StageSeparationFailure,
)
from .functions import (
    CodomainTag,
    FnOverSpace,
    classify,
    core,
    delta_fn,
    pointwise_le,
    pointwise_max,
    pointwise_min,
)
from .separation import NoWitness, is_normal, separation_degree, urysohn
from .space import FiniteSpace
from .values import INF, ExtValue, _norm, ext, tsub


@dataclass(frozen=True)
class StageRecord:
    n: int
    f_n: FnOverSpace
    lower_ok: bool  # phi <= f_n
    upper_ok: bool  # f_n - psi <= 2 omega / n
    bound: ExtValue  # 2 omega / n


@dataclass(frozen=True)
class InterpolationResult:
    status: str  # "found" | "no_interpolant"
    interpolant: Optional[FnOverSpace] = None
    point: Optional[str] = None
    gap: Optional[ExtValue] = None
    stages: tuple = ()
    dual_stages: tuple = ()

    @property
    def found(self) -> bool:
        return self.status == "found"


def _check_pair(g: FnOverSpace, h: FnOverSpace):
    if g.space is not h.space and g.space != h.space:
        raise ValueError("g and h live on different spaces")
    if not classify(g, CodomainTag.UPPER):
        raise NotUpperRegular("g must be bounded and upper regular")
    if not h.is_bounded or not classify(h, CodomainTag.LOWER):
        raise NotLowerRegular("h must be bounded and lower regular")
    if not pointwise_le(g, h):
        x = next(p for p, a, b in zip(g.space.points, g.values, h.values) if a > b)
        raise NotOrdered(f"g exceeds h at {x}")


def largest_contraction_below(h: FnOverSpace) -> FnOverSpace:
    """``x -> min_y h(y) + d*(x, y)``."""
    s = h.space
    d = s.dstar
    n = len(s.points)
    vals = []
    for i in range(n):
        di = d[i]
        vals.append(min(h.values[j] + di[j] for j in range(n)))
    return FnOverSpace(s, tuple(vals))


def kt_direct(s: FiniteSpace, g: FnOverSpace, h: FnOverSpace) -> InterpolationResult:
    """Decide and construct an interpolating contraction ``g <= f <= h``.

    On success the interpolant is the largest one.  Otherwise the result names
    the first point where ``g - f*`` is largest, and that gap.
    """
    _check_pair(g, h)
    fstar = largest_contraction_below(h)
    worst, point = 0, None
    for p, a, b in zip(s.points, g.values, fstar.values):
        gap = tsub(a, b)
        if gap > worst:
            worst, point = gap, p
    if point is None:
        return InterpolationResult("found", fstar)
    return InterpolationResult("no_interpolant", None, point, worst)


# -- staged construction --------------------------------------------------------


def _stage_function(s, phi, psi, omega, m, k, n) -> FnOverSpace:
    """``f^k_{m,n}``: lo on ``{psi <= omega m/n}``, hi on ``{phi >= omega (2k+1)/(2n)}``."""
    w = Fraction(omega)
    A = [p for p, v in zip(s.points, psi.values) if v <= w * m / n]
    B = [p for p, v in zip(s.points, phi.values) if v >= w * (2 * k + 1) / (2 * n)]
    gamma = _norm(w * (2 * k - 2 * m + 1) / (2 * n))
    lo = _norm(w * (m + 1) / n)
    hi = _norm(min(w * (2 * k + 3) / (2 * n), w))
    if not A:
        return FnOverSpace(s, (hi,) * len(s.points))
    if not B:
        return FnOverSpace(s, (lo,) * len(s.points))
    sep = separation_degree(s, A, B)
    if sep < gamma:
        raise StageSeparationFailure(m, k, n, f"stage sets only {sep}-separated, need {gamma}")
    u = urysohn(s, B, A, gamma)  # gamma on B, 0 on A
    if isinstance(u, NoWitness):
        raise StageSeparationFailure(
            m, k, n, f"no Urysohn function at gamma={gamma}, closure gap {u.shortfall}"
        )
    slope = (Fraction(hi) - Fraction(lo)) / Fraction(gamma)
    assert 0 <= slope <= 1, "rescaling slope must not exceed 1"
    return FnOverSpace(s, tuple(_norm(Fraction(lo) + slope * Fraction(v)) for v in u.values))


def staged_approximants(
    s: FiniteSpace, phi: FnOverSpace, psi: FnOverSpace, omega, N: int, m_start: int = 1
) -> list:
    """``[StageRecord(n, f_n, ...)]`` for ``n = 3..N``.

    ``m`` runs over ``m_start..n-1``.  Starting at 2 leaves points with
    ``psi < omega/n`` outside every ``A_{m,n}`` that is small enough: there all
    ``f_{m,n} >= 3 omega/n`` and the ``2 omega/n`` bound fails.  Starting at 1
    keeps the lower bound argument intact and makes the upper bound hold.
    """
    out = []
    w = ext(omega)
    for n in range(3, N + 1):
        f_mn = []
        for m in range(m_start, n):
            parts = [_stage_function(s, phi, psi, w, m, k, n) for k in range(m, n)]
            f_mn.append(pointwise_max(*parts))
        f_n = pointwise_min(*f_mn)
        bound = _norm(Fraction(w) * 2 / n)
        lower_ok = pointwise_le(phi, f_n)
        upper_ok = all(tsub(a, b) <= bound for a, b in zip(f_n.values, psi.values))
        out.append(StageRecord(n, f_n, lower_ok, upper_ok, bound))
    return out


def tong_combine(fs: list, gs: list, omega) -> FnOverSpace:
    """Finite form of Tong's lemma: ``u = min fs`` with ``min fs <= u <= max(omega - gs)``.

    Finite minima of Euclidean contractions are Euclidean contractions, so the
    infimum itself is the interpolant.
    """
    w = ext(omega)
    for f in list(fs) + list(gs):
        if not classify(f, CodomainTag.EUCLID):
            raise NotContractive("tong_combine takes Euclidean contractions only")
    u = pointwise_min(*fs)
    top = pointwise_max(*(g.with_values(tsub(w, v) for v in g.values) for g in gs))
    if not pointwise_le(u, top):
        raise SandwichViolated("min fs is not below max (omega - gs)")
    return u


def kt_staged(
    s: FiniteSpace, g: FnOverSpace, h: FnOverSpace, N: int = 6, omega=None, m_start: int = 1
) -> InterpolationResult:
    """Staged interpolation with exact bound checks for ``n = 3..N``.

    The countable infimum ``inf_n f_n`` is truncated at ``N`` and closed off with
    the largest contraction below ``h``; the dual pass on ``(omega - h,
    omega - min fs)`` supplies the ``g_n``, and :func:`tong_combine` returns
    ``min fs``.  If the staged functions are built but the guard lies below
    ``g`` somewhere, the result is ``no_interpolant`` just as in
    :func:`kt_direct`.  Raises :class:`StageSeparationFailure` when some stage
    pair has no Urysohn function.
    """
    if N < 3:
        raise ValueError("N must be at least 3")
    _check_pair(g, h)
    if omega is None:
        omega = h.bound if h.bound is not None else max(h.values)
    w = ext(omega)
    if any(v > w for v in h.values):
        raise ValueError("omega must bound h")
    if w == 0:
        zero = FnOverSpace(s, (0,) * len(s.points))
        return InterpolationResult("found", zero)
    stages = staged_approximants(s, g, h, w, N, m_start)
    direct = kt_direct(s, g, h)
    if not direct.found:
        return InterpolationResult("no_interpolant", None, direct.point, direct.gap, tuple(stages))
    fs = [r.f_n for r in stages] + [direct.interpolant]
    meet = pointwise_min(*fs)
    phi2 = h.with_values(tsub(w, v) for v in h.values)
    psi2 = meet.with_values(tsub(w, v) for v in meet.values)
    dual = staged_approximants(s, phi2, psi2, w, N, m_start)
    gs = [r.f_n for r in dual] + [psi2]
    u = tong_combine(fs, gs, w)
    return InterpolationResult("found", u, stages=tuple(stages), dual_stages=tuple(dual))


def kt_witness_from_nonnormal(s: FiniteSpace):
    """``(g, h, gamma)`` with ``g <= h`` regular and no interpolant between them.

    Built from the normality witness ``(A, B, gamma)`` as ``g = core(X - A, gamma)``
    and ``h = delta_B ^ gamma``.  A witness of infinite degree is used at
    ``gamma = shortfall + 1``.
    """
    v = is_normal(s)
    if v.normal:
        raise SpaceIsNormal("no witness: the space is normal")
    wit = v.witness
    gamma = wit.gamma if wit.gamma is not INF else wit.shortfall + 1
    rest = [p for p in s.points if p not in wit.A]
    return core(s, rest, gamma), delta_fn(s, wit.B, gamma), gamma
