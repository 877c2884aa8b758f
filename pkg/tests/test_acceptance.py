"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the terminal
summary (see conftest.py) and by running this file directly.
"""
import functools
import itertools
import json
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from approachnorm import (
    INF,
    ClosureRelation,
    CodomainTag,
    FnOverSpace,
    NoWitness,
    SpaceMap,
    canonical_development,
    classify,
    closure,
    contraction_to_scale,
    core,
    delta_fn,
    frame_condition2,
    frame_condition3,
    from_topology,
    is_closed_expansive,
    is_normal,
    is_open_expansive,
    kt_direct,
    kt_staged,
    lower_hull,
    prop_inequal_check,
    scale_to_contraction,
    separation_degree,
    subspace,
    theta,
    tietze_extend,
    upper_hull,
    urysohn,
    urysohn_via_tietze,
    verify_normal_scale,
)
from approachnorm import io
from approachnorm.catalog import enumerate_spaces, get, names, random_metric, random_quasimetric
from approachnorm.extension import NoExtension
from approachnorm.functions import pointwise_le, pointwise_max, pointwise_min
from approachnorm.maps import _quotient
from approachnorm.oracle import (
    enumerate_functions,
    make_grid,
    oracle_closed_expansive,
    oracle_hull,
    oracle_kt_exists,
    oracle_open_expansive,
    oracle_urysohn_exists,
)
from approachnorm.separation import closure_gap, frame_condition2_search

RESULTS = {}


def criterion(num, title):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*a, **kw):
            t0 = time.perf_counter()
            try:
                detail = fn(*a, **kw)
            except BaseException as e:
                RESULTS[num] = (False, title, f"{type(e).__name__}: {e}"[:200], time.perf_counter() - t0)
                raise
            RESULTS[num] = (True, title, detail or "", time.perf_counter() - t0)

        return wrapper

    return deco


def report_lines():
    out = []
    for num in sorted(RESULTS):
        ok, title, detail, secs = RESULTS[num]
        out.append(f"criterion {num:>2} {'PASS' if ok else 'FAIL'}  {title} ({secs:.1f}s) {detail}".rstrip())
    return out


def subsets(s):
    n = len(s.points)
    return [[p for i, p in enumerate(s.points) if m >> i & 1] for m in range(1, 1 << n)]


# Bounded entry grid for the exhaustive sweeps: every space up to relabelling
# on at most 3 points with entries in {0,1,2,inf}, and on 4 points with
# entries in {0,1,inf}.
SWEEP = [(1, (0,)), (2, (0, 1, 2, INF)), (3, (0, 1, 2, INF)), (4, (0, 1, INF))]


@functools.lru_cache(maxsize=None)
def sweep_spaces(extra=False):
    plan = SWEEP + ([(4, (1, 2, INF))] if extra else [])
    out = []
    seen = set()
    for n, vals in plan:
        for s in enumerate_spaces(n, vals):
            if s not in seen:
                seen.add(s)
                out.append(s)
    return tuple(out)


# -- 1 -------------------------------------------------------------------------------------------


@criterion(1, "3-point counterexample not normal, exact witness and shortfall")
def test_criterion_01_counterexample():
    t0 = time.perf_counter()
    e3 = get("exInorm").space
    v = is_normal(e3)
    assert not v.normal
    w = v.witness
    assert (w.A, w.B, w.gamma) == ({"x"}, {"y"}, 4)
    assert w.shortfall == e3.dstar[0][1] == 3
    assert urysohn(e3, ["x"], ["y"], 4) == NoWitness(3)
    f = urysohn(e3, ["x"], ["y"], 3)
    assert f.values == (3, 0, 2)
    assert classify(f, CodomainTag.EUCLID)
    assert all(f[p] == 3 for p in closure(e3, ["x"])) and all(f[p] == 0 for p in closure(e3, ["y"]))
    secs = time.perf_counter() - t0
    assert secs < 1
    return f"witness ({{x}},{{y}},4) shortfall 3, f=(3,0,2) in {secs * 1000:.0f} ms"


# -- 2 -------------------------------------------------------------------------------------------


@criterion(2, "4-point frame example: frame_condition3 holds, frame_condition2 fails, degrees 1 and 4 pinned")
def test_criterion_02_frame_example():
    t0 = time.perf_counter()
    lit, rep = get("exVO"), get("exVO-repaired")
    s = lit.space
    assert frame_condition3(s).holds
    v2 = frame_condition2(s)
    assert not v2.holds
    # the failing pair is re-derived by a second route and matches
    assert frame_condition2_search(s) == v2
    A, B, g = v2.witness
    assert separation_degree(s, A, B) == g
    # documented regression: the listed pair has degree 1, the repaired pair 4
    listed = separation_degree(s, lit.designated["A"], lit.designated["B"])
    repaired = separation_degree(s, rep.designated["A"], rep.designated["B"])
    assert (listed, repaired) == (1, 4)
    assert "not 4" in lit.note
    secs = time.perf_counter() - t0
    assert secs < 1
    return f"cond2 witness ({sorted(A)},{sorted(B)},{g}); listed pair 1, repaired 4; {secs * 1000:.0f} ms"


# -- 3 -------------------------------------------------------------------------------------------


@criterion(3, "random finite metrics are normal with explicit distance witnesses")
def test_criterion_03_metrics():
    checked = 0
    for seed in range(200):
        n = 2 + seed % 7
        s = random_metric(n, seed)
        assert is_normal(s).normal, seed
        rng = random.Random(seed)
        pts = list(s.points)
        got = 0
        while got < 50:
            A = rng.sample(pts, rng.randint(1, n - 1))
            B = rng.sample([p for p in pts if p not in A], rng.randint(1, n - len(A)))
            sep = separation_degree(s, A, B)
            gamma = rng.choice([sep, Fraction(sep, 2), Fraction(sep, 3)])
            f = delta_fn(s, B, gamma)  # distance to B, capped at gamma
            assert classify(f, CodomainTag.EUCLID)
            assert all(f[a] == gamma for a in A) and all(f[b] == 0 for b in B)
            got += 1
        checked += got
    return f"200 spaces normal, {checked} witnesses verified"


# -- 4 -------------------------------------------------------------------------------------------


@criterion(4, "hull identities and lattice laws, exact")
def test_criterion_04_hulls():
    for seed in range(500):
        rng = random.Random(seed)
        n = rng.randint(1, 8)
        s = random_metric(n, seed) if seed % 3 == 0 else random_quasimetric(n, seed)
        pts = list(s.points)
        A = rng.sample(pts, rng.randint(1, n))
        w = rng.choice([1, 2, Fraction(5, 2), 7])
        assert lower_hull(theta(s, A)).values == delta_fn(s, A).values
        assert upper_hull(theta(s, A, w)).values == core(s, A, w).values
        vals = [0, Fraction(1, 2), 1, 2, 3, 6]
        f = FnOverSpace(s, tuple(rng.choice(vals + [INF]) for _ in pts))
        g = FnOverSpace(s, tuple(rng.choice(vals + [INF]) for _ in pts))
        lf, lg = lower_hull(f), lower_hull(g)
        assert lower_hull(lf) == lf
        assert lower_hull(pointwise_min(f, g)).values == pointwise_min(lf, lg).values
        assert pointwise_le(lower_hull(pointwise_min(f, g)), lf)  # monotone
        c = rng.choice([Fraction(1, 3), 2])
        assert lower_hull(f.with_values(v + c for v in f.values)).values == tuple(v + c for v in lf.values)
        fb = FnOverSpace(s, tuple(rng.choice(vals) for _ in pts))
        gb = FnOverSpace(s, tuple(rng.choice(vals) for _ in pts))
        uf, ug = upper_hull(fb), upper_hull(gb)
        assert upper_hull(uf) == uf
        assert upper_hull(pointwise_max(fb, gb)).values == pointwise_max(uf, ug).values
        assert pointwise_le(uf, upper_hull(pointwise_max(fb, gb)))
        assert upper_hull(fb.with_values(v + c for v in fb.values)).values == tuple(v + c for v in uf.values)
    return "500 spaces"


# -- 5 -------------------------------------------------------------------------------------------


@criterion(5, "three forms of gamma-separation agree on every space with at most 3 points")
def test_criterion_05_prop_inequal():
    cases = agree = 0
    for n in (1, 2, 3):
        for s in enumerate_spaces(n, (0, 1, 2, INF), up_to_iso=False):
            finite = [v for v in s.realized_values if v is not INF]
            grid = sorted({a + b for a in finite for b in finite} - {0})
            subs = subsets(s)
            for A in subs:
                for B in subs:
                    for g in grid:
                        forms = prop_inequal_check(s, A, B, g)
                        cases += 1
                        agree += len(set(forms)) == 1
    assert agree == cases
    return f"{cases} cases, 100% agreement"


# -- 6 -------------------------------------------------------------------------------------------


def _oracle_spaces_and_maps():
    small = [s for n, vals in [(1, (0,)), (2, (0, 1, INF)), (3, (0, 1, INF))] for s in enumerate_spaces(n, vals)]
    for X in small:
        for Y in small:
            for a in itertools.product(range(len(Y.points)), repeat=len(X.points)):
                yield SpaceMap(X, Y, a)
    two = [s for s in small if len(s.points) == 2]
    rng = random.Random(6)
    for X in sweep_spaces():
        if len(X.points) != 4:
            continue
        for Y in two:
            for a in itertools.product(range(2), repeat=4):
                yield SpaceMap(X, Y, a)
        for k in (2, 3):
            yield _quotient(rng, X, k)
        for Y in subsets(X)[:-1]:
            yield SpaceMap(subspace(X, Y), X, X.idx(Y))


@criterion(6, "closed forms match brute-force oracles on exhaustive sweeps")
def test_criterion_06_oracles():
    t0 = time.perf_counter()
    counts = dict(urysohn=0, hull=0, kt=0, maps=0)
    bad = []
    for si, s in enumerate(sweep_spaces(extra=True)):
        subs = subsets(s)
        seen = set()
        kt_pairs = []
        for A in subs:
            for B in subs:
                sep = separation_degree(s, A, B)
                if sep == 0:
                    continue
                if sep is INF:
                    w = closure_gap(s, A, B)
                    gammas = [1] if w is INF else [g for g in (w, w + 1) if g > 0]
                else:
                    gammas = [sep]
                    rest = [p for p in s.points if p not in A]
                    kt_pairs.append((core(s, rest, sep), delta_fn(s, B, sep)))
                for g in gammas:
                    key = (frozenset(closure(s, A)), frozenset(closure(s, B)), g)
                    if key in seen:
                        continue
                    seen.add(key)
                    counts["urysohn"] += 1
                    if (not isinstance(urysohn(s, A, B, g), NoWitness)) != oracle_urysohn_exists(s, A, B, g):
                        bad.append(("urysohn", s.q, A, B, g))
        for A in subs:
            mu = theta(s, A)
            counts["hull"] += 2
            if oracle_hull(s, mu, "lower") != lower_hull(mu):
                bad.append(("lower hull", s.q, A))
            mu = theta(s, A, 2)
            if oracle_hull(s, mu, "upper").values != upper_hull(mu).values:
                bad.append(("upper hull", s.q, A))
        rng = random.Random(si)
        for _ in range(4):
            mu = FnOverSpace(s, tuple(rng.choice([0, 1, 2, INF]) for _ in s.points))
            nu = FnOverSpace(s, tuple(rng.choice([0, 1, 2]) for _ in s.points))
            counts["hull"] += 2
            if oracle_hull(s, mu, "lower") != lower_hull(mu):
                bad.append(("lower hull", s.q, mu.values))
            if oracle_hull(s, nu, "upper").values != upper_hull(nu).values:
                bad.append(("upper hull", s.q, nu.values))
        for _ in range(10):
            top = rng.choice([1, 2, 3])
            g = upper_hull(FnOverSpace(s, tuple(rng.randint(0, top) for _ in s.points)))
            h = lower_hull(FnOverSpace(s, tuple(max(a, rng.randint(0, top)) for a in g.values)))
            if pointwise_le(g, h):
                kt_pairs.append((g, h))
        done = set()
        for g, h in kt_pairs:
            if (g.values, h.values) in done:
                continue
            done.add((g.values, h.values))
            counts["kt"] += 1
            if kt_direct(s, g, h).found != oracle_kt_exists(s, g, h):
                bad.append(("kt", s.q, g.values, h.values))
    for m in _oracle_spaces_and_maps():
        counts["maps"] += 1
        if is_closed_expansive(m) != oracle_closed_expansive(m):
            bad.append(("closed", m))
        if is_open_expansive(m) != oracle_open_expansive(m):
            bad.append(("open", m))
    secs = time.perf_counter() - t0
    assert not bad, bad[:5]
    assert secs < 600
    return ", ".join(f"{k} {v}" for k, v in counts.items()) + f", 0 discrepancies, {secs:.0f}s"


# -- 7 -------------------------------------------------------------------------------------------


@criterion(7, "staged interpolation bounds and finite Tong combination")
def test_criterion_07_staged():
    instances = 0
    seed = 0
    while instances < 100:
        rng = random.Random(seed)
        seed += 1
        n = rng.randint(2, 6)
        s = random_metric(n, seed) if rng.random() < 0.4 else random_quasimetric(n, seed)
        if not is_normal(s).normal:
            continue
        top = rng.choice([2, 3, 5, Fraction(7, 2)])
        mu = FnOverSpace(s, tuple(min(top, Fraction(rng.randint(0, int(2 * top)), 2)) for _ in s.points))
        g = upper_hull(mu)
        h = lower_hull(g.with_values(max(a, min(top, Fraction(rng.randint(0, int(2 * top)), 2))) for a in g.values))
        if not pointwise_le(g, h) or max(h.values) == 0:
            continue
        instances += 1
        r = kt_staged(s, g, h, 12)
        assert [st.n for st in r.stages] == list(range(3, 13))
        for st in r.stages:
            assert st.lower_ok and st.upper_ok, (seed, st.n)
            # recheck the two inequalities here rather than trusting the flags
            omega = max(h.values)
            assert pointwise_le(g, st.f_n)
            assert all(a - b <= Fraction(2 * omega, st.n) for a, b in zip(st.f_n.values, h.values))
        assert r.found
        u = r.interpolant
        assert pointwise_le(g, u) and pointwise_le(u, h)
        assert classify(u, CodomainTag.EUCLID)
    return f"100 normal instances (seeds 0..{seed - 1}), n = 3..12"


# -- 8 -------------------------------------------------------------------------------------------


@criterion(8, "normal iff every admissible extension problem is solved")
def test_criterion_08_tietze():
    stats = dict(spaces=0, extended=0, gated=0, failed=0, urysohn_pairs=0)
    for s in sweep_spaces():
        stats["spaces"] += 1
        normal = is_normal(s).normal
        top = max(v for row in s.dstar for v in row if v is not INF) + 1
        every_ok = True
        for Y in subsets(s):
            sub = subspace(s, Y)
            for gamma in range(1, top + 1):
                for vals in enumerate_functions(sub, make_grid(sub, (gamma,), gamma), "euclid"):
                    f = FnOverSpace(sub, vals)
                    for dev in (None, canonical_development(f, Fraction(1, 2)), canonical_development(f, 1)):
                        r = tietze_extend(s, f, gamma, dev)
                        if r.status == "condition_failed":
                            stats["gated"] += 1
                        elif r.extended:
                            stats["extended"] += 1
                            g = r.extension
                            assert all(g[y] == f[y] for y in Y)
                            assert classify(g, CodomainTag.EUCLID) and max(g.values) <= gamma
                        else:
                            stats["failed"] += 1
                            every_ok = False
                if not normal and not every_ok:
                    break
            if not normal and not every_ok:
                break
        assert every_ok == normal, s.q
        for A in subsets(s):
            for B in subsets(s):
                sep = separation_degree(s, A, B)
                if sep == 0:
                    continue
                g = 1 if sep is INF else sep
                stats["urysohn_pairs"] += 1
                direct = urysohn(s, A, B, g)
                via = urysohn_via_tietze(s, A, B, g)
                assert isinstance(direct, NoWitness) == isinstance(via, NoExtension)
    return ", ".join(f"{k} {v}" for k, v in stats.items())


# -- 9 -------------------------------------------------------------------------------------------


def _random_contraction(rng, s):
    def cone():
        S = rng.sample(range(len(s.points)), rng.randint(1, len(s.points)))
        cap = rng.choice([1, 2, Fraction(5, 2), 4, 9])
        shift = rng.choice([0, 0, Fraction(1, 2), 1])
        return FnOverSpace(s, tuple(min(min(s.dstar[i][j] for j in S) + shift, cap) for i in range(len(s.points))))

    f = cone()
    for _ in range(rng.randint(0, 2)):
        f = (pointwise_min if rng.random() < 0.5 else pointwise_max)(f, cone())
    return f


@criterion(9, "scale round trip is exact and scales verify")
def test_criterion_09_scales():
    verified = 0
    for k in range(1000):
        rng = random.Random(k)
        n = rng.randint(1, 6)
        s = random_metric(n, k) if k % 2 else random_quasimetric(n, k)
        f = _random_contraction(rng, s)
        assert classify(f, CodomainTag.EUCLID)
        F = contraction_to_scale(s, f)
        assert scale_to_contraction(s, F).values == f.values
        top = max(f.values)
        if top > 0:
            A = [p for p in s.points if f[p] == 0]
            B = [p for p in s.points if f[p] == top]
            assert verify_normal_scale(s, F, A, B, top)
            verified += 1
    return f"1000 round trips, {verified} scales verified"


# -- 10 ------------------------------------------------------------------------------------------


def _random_preorder(rng, n):
    p = rng.choice([0.1, 0.2, 0.3, 0.5])
    r = [[i == j or rng.random() < p for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            if r[i][k]:
                for j in range(n):
                    if r[k][j]:
                        r[i][j] = True
    return r


def classical_normal(n, rel):
    """Disjoint closed sets have disjoint smallest open neighbourhoods."""

    def cl(S):
        return frozenset(i for i in range(n) if any(rel[i][j] for j in S))

    def up(S):
        return frozenset(j for j in range(n) if any(rel[i][j] for i in S))

    sets = [frozenset(i for i in range(n) if m >> i & 1) for m in range(1, 1 << n)]
    closed = [S for S in sets if cl(S) == S]
    return not any(not (C & D) and up(C) & up(D) for C in closed for D in closed)


@criterion(10, "topological spaces: agrees with classical normality")
def test_criterion_10_topology():
    verdicts = [0, 0]
    for t in range(100):
        rng = random.Random(t)
        n = rng.randint(1, 7)
        rel = _random_preorder(rng, n)
        s = from_topology(ClosureRelation(tuple(f"p{i}" for i in range(n)), rel))
        expected = classical_normal(n, rel)
        assert is_normal(s).normal == expected, t
        verdicts[expected] += 1
    return f"{verdicts[1]} normal, {verdicts[0]} not normal"


# -- 11 ------------------------------------------------------------------------------------------


@criterion(11, "CLI output byte-identical across runs and worker counts")
def test_criterion_11_determinism(tmp_path):
    runs = 0
    for name in names():
        path = tmp_path / f"{name}.json"
        path.write_text(io.dumps(io.space_to_json(get(name).space)))
        outs = set()
        for jobs in ("1", "8", "1", "8"):
            p = subprocess.run(
                [sys.executable, "-m", "approachnorm", "normality", str(path), "--jobs", jobs],
                capture_output=True,
            )
            assert p.returncode in (0, 1), p.stderr
            outs.add(p.stdout)
            runs += 1
        assert len(outs) == 1, name
        json.loads(outs.pop())
    return f"{len(names())} entries, {runs} runs"


if __name__ == "__main__":
    code = pytest.main([__file__, "-q"])
    mod = sys.modules.get("test_acceptance", sys.modules[__name__])
    print("\n".join(mod.report_lines()))
    sys.exit(code)
