"""Separation degrees, Urysohn contractions, contractive scales and normality.

Two sets are gamma-separated iff ``gamma <= sep(A, B)`` where
``sep(A, B) = min_x delta(x, A) + delta(x, B)``.  A Urysohn contraction for
``(A, B, gamma)`` into ``[0, gamma]`` exists iff ``w >= gamma`` with
``w = min d*(a, b)`` over ``a in cl A``, ``b in cl B``: every Euclidean
contraction is 1-Lipschitz for ``d*`` and takes constant values on closures,
and conversely ``min(gamma, d*(., cl B))`` is such a contraction.
"""
from __future__ import annotations

import random
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import EmptySet, InvalidScale, NotContractive, NotSeparated
from .functions import (
    CodomainTag,
    FnOverSpace,
    classify,
    core,
    delta_fn,
)
from .space import FiniteSpace
from .values import INF, ExtValue, _norm, ext, half, tsub

EXHAUSTIVE_LIMIT = 10


@dataclass(frozen=True)
class NoWitness:
    """No Urysohn contraction exists; ``shortfall`` is the largest achievable gap."""

    shortfall: ExtValue


def _nonempty(s: FiniteSpace, A, name="set") -> tuple:
    idxs = s.idx(A)
    if not idxs:
        raise EmptySet(f"{name} must be nonempty")
    return idxs


def _sep_vectors(da, db) -> ExtValue:
    best = INF
    for a, b in zip(da, db):
        v = a + b
        if v < best:
            best = v
    return best


def separation_degree(s: FiniteSpace, A, B) -> ExtValue:
    """Largest gamma for which *A* and *B* are gamma-separated."""
    ia = _nonempty(s, A, "A")
    ib = _nonempty(s, B, "B")
    return _sep_vectors(s.dist_vector(ia), s.dist_vector(ib))


def gamma_separated_direct(s: FiniteSpace, A, B, gamma) -> bool:
    """Quantify the definition directly: ``A^(a) & B^(b)`` empty whenever ``a + b < gamma``.

    Enlargements only change at values ``delta`` actually takes, so it is
    enough to let ``a`` and ``b`` range over the realized values of
    ``delta(., A)`` and ``delta(., B)``.
    """
    gamma = ext(gamma)
    da = s.dist_vector(_nonempty(s, A, "A"))
    db = s.dist_vector(_nonempty(s, B, "B"))
    for alpha in sorted(set(da), key=_key):
        for beta in sorted(set(db), key=_key):
            if not alpha + beta < gamma:
                continue
            if any(x <= alpha and y <= beta for x, y in zip(da, db)):
                return False
    return True


def _key(v):
    return (1, 0) if v is INF else (0, v)


def is_gamma_separated(s: FiniteSpace, A, B, gamma) -> bool:
    gamma = ext(gamma)
    if gamma == 0:
        raise ValueError("gamma must be positive")
    return gamma <= separation_degree(s, A, B)


def prop_inequal_check(s: FiniteSpace, A, B, gamma) -> tuple:
    """The three equivalent forms of gamma-separation, each evaluated independently.

    ``(sep >= gamma, core(X-B) <= delta_A ^ gamma, core(X-A) <= delta_B ^ gamma)``.
    """
    gamma = ext(gamma)
    if gamma is INF or gamma == 0:
        raise ValueError("gamma must be finite and positive")
    _nonempty(s, A, "A")
    _nonempty(s, B, "B")
    everything = set(s.points)
    not_a = everything - set(A)
    not_b = everything - set(B)
    b1 = gamma_separated_direct(s, A, B, gamma)
    lhs = core(s, not_b, gamma)
    rhs = delta_fn(s, A, gamma)
    b2 = all(u <= v for u, v in zip(lhs.values, rhs.values))
    lhs = core(s, not_a, gamma)
    rhs = delta_fn(s, B, gamma)
    b3 = all(u <= v for u, v in zip(lhs.values, rhs.values))
    return (b1, b2, b3)


def closure_gap(s: FiniteSpace, A, B) -> ExtValue:
    """``min d*(a, b)`` over the two closures; the largest feasible Urysohn height."""
    ca = s.closure_mask(s.mask(A))
    cb = s.closure_mask(s.mask(B))
    return _gap(s.dstar, ca, cb, len(s.points))


def _gap(d, ca: int, cb: int, n: int) -> ExtValue:
    best = INF
    for i in range(n):
        if ca >> i & 1:
            di = d[i]
            for j in range(n):
                if cb >> j & 1 and di[j] < best:
                    best = di[j]
    return best


def urysohn(s: FiniteSpace, A, B, gamma):
    """Urysohn contraction into ``[0, gamma]``, ``gamma`` on *A* and ``0`` on *B*.

    Returns the function ``min(gamma, d*(., cl B))`` or :class:`NoWitness`.
    """
    gamma = ext(gamma)
    if gamma is INF or gamma == 0:
        raise ValueError("gamma must be finite and positive")
    sep = separation_degree(s, A, B)
    if gamma > sep:
        raise NotSeparated(f"the sets are only {sep}-separated, not {gamma}-separated")
    w = closure_gap(s, A, B)
    if w < gamma:
        return NoWitness(w)
    n = len(s.points)
    cb = s.closure_mask(s.mask(B))
    d = s.dstar
    vals = []
    for i in range(n):
        v = min((d[i][j] for j in range(n) if cb >> j & 1), default=INF)
        vals.append(min(v, gamma))
    return FnOverSpace(s, tuple(vals), gamma)


# -- contractive scales -------------------------------------------------------


@dataclass(frozen=True)
class Scale:
    """Step function from the rationals to subsets.

    ``breakpoints`` is an ascending tuple of ``(threshold, frozenset)``.  Below
    the first threshold the value is the empty set; ``F(r)`` is the set at the
    largest threshold ``<= r``.
    """

    breakpoints: tuple

    def __post_init__(self):
        bps = []
        for t, S in self.breakpoints:
            t = ext(t)  # rejects negative thresholds
            if t is INF:
                raise InvalidScale("scale thresholds must be finite")
            bps.append((t, frozenset(str(p) for p in S)))
        for (t0, S0), (t1, S1) in zip(bps, bps[1:]):
            if not t0 < t1:
                raise InvalidScale("thresholds must be strictly ascending")
            if not S0 <= S1:
                raise InvalidScale(f"sets must grow: F({t0}) is not inside F({t1})", (t0, t1))
        if not bps:
            raise InvalidScale("a scale needs at least one breakpoint")
        object.__setattr__(self, "breakpoints", tuple(bps))

    def __call__(self, r) -> frozenset:
        r = ext(r)
        out = frozenset()
        for t, S in self.breakpoints:
            if t <= r:
                out = S
            else:
                break
        return out

    def below(self, r) -> frozenset:
        """Union of ``F(t)`` over ``t < r``."""
        r = ext(r)
        out = frozenset()
        for t, S in self.breakpoints:
            if t < r:
                out = S
        return out

    @property
    def thresholds(self) -> tuple:
        return tuple(t for t, _ in self.breakpoints)


def _sep_or_inf(s: FiniteSpace, A, B) -> ExtValue:
    if not A or not B:
        return INF
    return separation_degree(s, A, B)


def scale_violation(s: FiniteSpace, F: Scale) -> Optional[tuple]:
    """First ``(r, t)`` with ``F(r)`` and ``X - F(t)`` not ``(t - r)``-separated.

    Within a step the worst pair has ``r`` at the step's threshold and ``t``
    just below the next one, so it suffices to check ``sep(S_i, X - S_j)`` against
    ``t_{j+1} - t_i`` for ``i <= j``; past the last step the complement is empty.
    """
    X = frozenset(s.points)
    for _, S in F.breakpoints:
        s.idx(S)  # unknown labels raise here
    bps = F.breakpoints
    for i in range(len(bps)):
        ti, Si = bps[i]
        for j in range(i, len(bps) - 1):
            Sj = bps[j][1]
            tnext = bps[j + 1][0]
            if _sep_or_inf(s, Si, X - Sj) < tnext - ti:
                return (ti, tnext)
    return None


def is_contractive_scale(s: FiniteSpace, F: Scale) -> bool:
    return F.breakpoints[-1][1] == frozenset(s.points) and scale_violation(s, F) is None


def scale_to_contraction(s: FiniteSpace, F: Scale) -> FnOverSpace:
    """``x -> min {t : x in F(t)}``."""
    if F.breakpoints[-1][1] != frozenset(s.points):
        raise InvalidScale("the last breakpoint set must be the whole space")
    bad = scale_violation(s, F)
    if bad is not None:
        raise InvalidScale(f"scale property fails between {bad[0]} and {bad[1]}", bad)
    vals = []
    for p in s.points:
        vals.append(next(t for t, S in F.breakpoints if p in S))
    return FnOverSpace(s, tuple(vals))


def contraction_to_scale(s: FiniteSpace, f: FnOverSpace) -> Scale:
    """Sublevel sets ``r -> {f <= r}`` with breakpoints at the values of *f*."""
    if not classify(f, CodomainTag.EUCLID):
        raise NotContractive("the function is not a bounded Euclidean contraction")
    bps = []
    for v in sorted(set(f.values)):
        bps.append((v, frozenset(p for p, u in zip(s.points, f.values) if u <= v)))
    return Scale(tuple(bps))


def verify_normal_scale(s: FiniteSpace, F: Scale, A, B, gamma) -> bool:
    """Check that *F* is a contractive scale separating *A* (at 0) from *B* (at gamma).

    Conditions: nothing below 0, ``A <= F(0)``, and *B* misses ``F(r)`` for
    ``0 < r < gamma``.  The last condition uses the open interval because the
    sublevel scale of a contraction with value ``gamma`` on *B* contains *B*
    at ``r = gamma`` itself.
    """
    gamma = ext(gamma)
    if F.breakpoints[-1][1] != frozenset(s.points):
        return False
    if any(t < 0 and S for t, S in F.breakpoints):
        return False
    if not set(A) <= F(0):
        return False
    if set(B) & F.below(gamma):
        return False
    return scale_violation(s, F) is None


# -- normality ----------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """A separated pair with no Urysohn contraction at its separation degree."""

    A: frozenset
    B: frozenset
    gamma: ExtValue
    shortfall: ExtValue


@dataclass(frozen=True)
class Certificate:
    A: frozenset
    B: frozenset
    gamma: ExtValue
    function: FnOverSpace  # gamma on A, 0 on B
    scale: Scale  # sublevel scale of gamma - function: 0 on A, gamma on B


@dataclass(frozen=True)
class NormalityVerdict:
    normal: bool
    witness: Optional[Witness] = None
    certificates: tuple = ()
    sampled: bool = False  # True when only a random sample of pairs was checked

    def __bool__(self):
        return self.normal


class _Tables:
    """Per-mask distance vectors and closures, shared by the pair loops."""

    def __init__(self, s: FiniteSpace):
        n = len(s.points)
        self.n = n
        size = 1 << n
        self.dist = [None] * size
        self.cl = [0] * size
        self.dstar_to = [None] * size  # x -> min d*(x, cl A)
        d = s.dstar
        for m in range(1, size):
            idxs = [i for i in range(n) if m >> i & 1]
            vec = s.dist_vector(idxs)
            self.dist[m] = vec
            c = 0
            for i, v in enumerate(vec):
                if v == 0:
                    c |= 1 << i
            self.cl[m] = c
        cache = {}
        for m in range(1, size):
            c = self.cl[m]
            if c not in cache:
                cache[c] = tuple(
                    min((d[i][j] for j in range(n) if c >> j & 1), default=INF) for i in range(n)
                )
            self.dstar_to[m] = cache[c]

    def sep(self, a: int, b: int) -> ExtValue:
        return _sep_vectors(self.dist[a], self.dist[b])

    def gap(self, a: int, b: int) -> ExtValue:
        vec = self.dstar_to[a]
        cb = self.cl[b]
        best = INF
        for j in range(self.n):
            if cb >> j & 1 and vec[j] < best:
                best = vec[j]
        return best


def _pair_failure(t: _Tables, a: int, b: int):
    if t.cl[a] & t.cl[b]:
        return None
    sep = t.sep(a, b)
    if sep == 0:
        return None
    w = t.gap(a, b)
    if w < sep:
        return (a, b, sep, w)
    return None


def _scan(s: FiniteSpace, lo: int, hi: int):
    """First failing pair with ``lo <= A < hi`` and ``A < B``, in (A, B) order."""
    t = _Tables(s)
    size = 1 << t.n
    for a in range(max(lo, 1), hi):
        for b in range(a + 1, size):
            hit = _pair_failure(t, a, b)
            if hit is not None:
                return hit
    return None


def _chunks(size: int, parts: int):
    # pair counts shrink with A, so cut the A-range by cumulative work
    total = size * (size - 1) // 2
    bounds = [1]
    acc = 0
    target = total / parts
    for a in range(1, size):
        acc += size - 1 - a
        if acc >= target * len(bounds) and len(bounds) < parts:
            bounds.append(a + 1)
    bounds.append(size)
    return [(bounds[i], bounds[i + 1]) for i in range(len(bounds) - 1) if bounds[i] < bounds[i + 1]]


def is_normal(
    s: FiniteSpace,
    *,
    jobs: int = 1,
    exhaustive: Optional[bool] = None,
    samples: int = 20000,
    seed: int = 0,
    certify: Iterable = (),
    certify_gamma=1,
) -> NormalityVerdict:
    """Decide normality by checking every separated pair at its separation degree.

    By monotone truncation only ``gamma = sep(A, B)`` matters, and a pair fails
    iff the closure gap ``w`` is below it (``INF`` degree needs ``INF`` gap).
    The witness is the first failing pair in (A-mask, B-mask) order; since the
    failure set is symmetric it always has ``A < B``.  Above
    ``EXHAUSTIVE_LIMIT`` points pairs are sampled unless *exhaustive* is set.

    *certify* lists ``(A, B)`` pairs for which a Urysohn function and scale are
    attached on success; pairs with infinite degree use *certify_gamma*.
    """
    n = len(s.points)
    if exhaustive is None:
        exhaustive = n <= EXHAUSTIVE_LIMIT
    if not exhaustive:
        return _sampled_normality(s, samples, seed)
    size = 1 << n
    if jobs <= 1 or n < 6:
        hit = _scan(s, 1, size)
    else:
        parts = _chunks(size, jobs * 4)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            hits = list(pool.map(_scan, [s] * len(parts), [p[0] for p in parts], [p[1] for p in parts]))
        hits = [h for h in hits if h is not None]
        hit = min(hits, key=lambda h: (h[0], h[1])) if hits else None
    if hit is not None:
        a, b, sep, w = hit
        return NormalityVerdict(False, Witness(s.labels_of_mask(a), s.labels_of_mask(b), sep, w))
    certs = tuple(certificate(s, A, B, certify_gamma) for A, B in certify)
    return NormalityVerdict(True, None, certs)


def _sampled_normality(s: FiniteSpace, samples: int, seed: int) -> NormalityVerdict:
    rng = random.Random(seed)
    n = len(s.points)
    d = s.dstar
    best = None
    for _ in range(samples):
        a = rng.randrange(1, 1 << n)
        b = rng.randrange(1, 1 << n)
        if a == b:
            continue
        a, b = min(a, b), max(a, b)
        ca = s.closure_mask(a)
        cb = s.closure_mask(b)
        if ca & cb:
            continue
        ia = [i for i in range(n) if a >> i & 1]
        ib = [i for i in range(n) if b >> i & 1]
        sep = _sep_vectors(s.dist_vector(ia), s.dist_vector(ib))
        if sep == 0:
            continue
        w = _gap(d, ca, cb, n)
        if w < sep and (best is None or (a, b) < best[:2]):
            best = (a, b, sep, w)
    if best is not None:
        a, b, sep, w = best
        return NormalityVerdict(False, Witness(s.labels_of_mask(a), s.labels_of_mask(b), sep, w), sampled=True)
    return NormalityVerdict(True, sampled=True)


def certificate(s: FiniteSpace, A, B, gamma=1) -> Certificate:
    """Urysohn function and contractive scale for a separated pair.

    Uses the separation degree when finite, otherwise *gamma*.
    """
    sep = separation_degree(s, A, B)
    if sep == 0:
        raise NotSeparated("the pair is not gamma-separated for any gamma > 0")
    g = sep if sep is not INF else ext(gamma)
    f = urysohn(s, A, B, g)
    if isinstance(f, NoWitness):
        raise NotSeparated(f"no Urysohn function at gamma={g}; shortfall {f.shortfall}")
    flipped = f.with_values(tsub(g, v) for v in f.values)
    return Certificate(frozenset(A), frozenset(B), g, f, contraction_to_scale(s, flipped))


# -- frame conditions -----------------------------------------------------------


@dataclass(frozen=True)
class FrameVerdict:
    holds: bool
    witness: Optional[tuple] = None  # (A, B, gamma) for (2), (A, B, eps) for (3)

    def __bool__(self):
        return self.holds


def _singleton_seps(t: _Tables, m: int) -> list:
    """``sep(M, {c})`` for each point ``c``."""
    return [t.sep(m, 1 << c) for c in range(t.n)]


def frame_condition2(s: FiniteSpace) -> FrameVerdict:
    """Every separated pair splits through some C at half the degree.

    ``sep(A, C) = min_{c in C} sep(A, {c})``, so the admissible C are exactly
    the subsets of ``P = {c : sep(A, {c}) >= h}`` whose complement lies in
    ``Q = {c : sep({c}, B) >= h}``; one exists iff ``P | Q = X``.
    """
    t = _Tables(s)
    n = t.n
    size = 1 << n
    full = size - 1
    single = [None] + [_singleton_seps(t, m) for m in range(1, size)]
    for a in range(1, size):
        for b in range(1, size):
            sep = t.sep(a, b)
            if sep == 0:
                continue
            h = half(sep)
            P = sum(1 << c for c in range(n) if single[a][c] >= h)
            Q = sum(1 << c for c in range(n) if single[b][c] >= h)
            if P | Q != full:
                return FrameVerdict(False, (s.labels_of_mask(a), s.labels_of_mask(b), sep))
    return FrameVerdict(True)


def frame_condition2_search(s: FiniteSpace) -> FrameVerdict:
    """Same as :func:`frame_condition2` but tries every C literally."""
    t = _Tables(s)
    n = t.n
    size = 1 << n
    full = size - 1

    def sep0(m1, m2):
        if m1 == 0 or m2 == 0:
            return INF
        return t.sep(m1, m2)

    for a in range(1, size):
        for b in range(1, size):
            sep = t.sep(a, b)
            if sep == 0:
                continue
            h = half(sep)
            if not any(sep0(a, c) >= h and sep0(full ^ c, b) >= h for c in range(size)):
                return FrameVerdict(False, (s.labels_of_mask(a), s.labels_of_mask(b), sep))
    return FrameVerdict(True)


def epsilon_candidates(s: FiniteSpace) -> list:
    """Representative epsilons: every positive finite realized value, plus half the smallest.

    Enlargements are constant between consecutive realized values, so these
    cover every ``eps > 0`` up to the behaviour of the hypothesis.
    """
    pos = [v for v in s.realized_values if v is not INF and v > 0]
    small = half(pos[0]) if pos else 1
    return sorted(set(pos) | {small})


def _enlarge_mask(t: _Tables, m: int, r) -> int:
    if m == 0:
        return 0
    out = 0
    for i, v in enumerate(t.dist[m]):
        if v <= r:
            out |= 1 << i
    return out


def frame_condition3(s: FiniteSpace, brute: bool = False) -> FrameVerdict:
    """Approach frame normality of the lower regular function frame.

    For ``A^(eps) & B^(eps)`` empty, look for ``rho`` and ``C`` with
    ``A^(rho) & C^(rho)`` and ``(X-C)^(rho) & B^(rho)`` both empty.  The C search
    reduces like frame_condition2: ``C^(rho)`` is the union of the point
    enlargements.  ``brute=True`` tries every C instead.
    """
    t = _Tables(s)
    n = t.n
    size = 1 << n
    full = size - 1
    eps_list = epsilon_candidates(s)
    rho_cache = {e: rho_candidates(s, e) for e in eps_list}
    enl = {}

    def E(m, r):
        key = (m, r)
        if key not in enl:
            enl[key] = _enlarge_mask(t, m, r)
        return enl[key]

    for a in range(1, size):
        for b in range(1, size):
            for e in eps_list:
                if E(a, e) & E(b, e):
                    continue
                ok = False
                for r in rho_cache[e]:
                    ea, eb = E(a, r), E(b, r)
                    if brute:
                        ok = any(
                            not (ea & E(c, r)) and not (E(full ^ c, r) & eb) for c in range(size)
                        )
                    else:
                        P = sum(1 << c for c in range(n) if not (E(1 << c, r) & ea))
                        Q = sum(1 << c for c in range(n) if not (E(1 << c, r) & eb))
                        ok = P | Q == full
                    if ok:
                        break
                if not ok:
                    return FrameVerdict(False, (s.labels_of_mask(a), s.labels_of_mask(b), e))
    return FrameVerdict(True)


def rho_candidates(s: FiniteSpace, eps) -> list:
    """Half of each positive realized value, plus ``eps / 5``."""
    pos = [v for v in s.realized_values if v is not INF and v > 0]
    return sorted({half(v) for v in pos} | {_norm(Fraction(eps) / 5)})
