"""Maps between finite spaces and the expansive-map predicates.

For ``f: X -> X'`` write ``P_y`` for the preimage of ``y``.  The push-forward
of ``mu`` is ``f(mu)(y) = min_{x in P_y} mu(x)``, ``INF`` off the image.

Closed expansive (``f(mu)`` lower regular for every lower regular ``mu``)
holds iff for all ``y, y'`` in the image every ``x' in P_{y'}`` has some
``x in P_y`` with ``q(x, x') <= q'(y, y')``, and ``q'(y, y') = INF`` whenever
``y`` is outside the image and ``y'`` inside.  Sufficiency is the triangle
inequality; necessity comes from testing ``mu = q(., x')``.

Open expansive (``f(nu)`` bounded upper regular for every bounded upper
regular ``nu``) needs ``f`` surjective, since ``f(nu)`` is ``INF`` off the
image, and then holds iff every ``x in P_y`` has some ``x' in P_{y'}`` with
``q(x, x') <= q'(y, y')``; necessity comes from ``nu = min(c, q(x, .))``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from .errors import UnknownPoint
from .functions import FnOverSpace
from .separation import is_normal
from .space import FiniteSpace, _min_plus_closure, subspace
from .values import INF


@dataclass(frozen=True)
class SpaceMap:
    domain: FiniteSpace
    codomain: FiniteSpace
    assignment: tuple  # codomain index for each domain index

    @classmethod
    def from_mapping(cls, domain: FiniteSpace, codomain: FiniteSpace, assignment: Mapping):
        missing = [p for p in domain.points if p not in {str(k) for k in assignment}]
        if missing:
            raise UnknownPoint(f"assignment is missing {missing}")
        amap = {str(k): str(v) for k, v in assignment.items()}
        for k in amap:
            domain.pos(k)
        return cls(domain, codomain, tuple(codomain.pos(amap[p]) for p in domain.points))

    def __call__(self, x) -> str:
        return self.codomain.points[self.assignment[self.domain.pos(x)]]

    def preimages(self) -> list:
        """Domain indices mapped to each codomain index."""
        out = [[] for _ in self.codomain.points]
        for i, j in enumerate(self.assignment):
            out[j].append(i)
        return out

    @property
    def is_surjective(self) -> bool:
        return all(self.preimages())

    @property
    def is_injective(self) -> bool:
        return len(set(self.assignment)) == len(self.assignment)


def is_contraction_map(m: SpaceMap) -> bool:
    q, q2, a = m.domain.q, m.codomain.q, m.assignment
    n = len(a)
    return all(q2[a[i]][a[j]] <= q[i][j] for i in range(n) for j in range(n))


def image_function(m: SpaceMap, mu: FnOverSpace) -> FnOverSpace:
    vals = [min((mu.values[i] for i in pre), default=INF) for pre in m.preimages()]
    return FnOverSpace(m.codomain, tuple(vals))


def is_closed_expansive(m: SpaceMap) -> bool:
    q, q2 = m.domain.q, m.codomain.q
    pre = m.preimages()
    k = len(pre)
    for y in range(k):
        for y2 in range(k):
            if not pre[y2]:
                continue
            if not pre[y]:
                if q2[y][y2] is not INF:
                    return False
                continue
            for x2 in pre[y2]:
                if min(q[x][x2] for x in pre[y]) > q2[y][y2]:
                    return False
    return True


def is_open_expansive(m: SpaceMap) -> bool:
    q, q2 = m.domain.q, m.codomain.q
    pre = m.preimages()
    if not all(pre):
        return False
    k = len(pre)
    for y in range(k):
        for y2 in range(k):
            for x in pre[y]:
                if min(q[x][x2] for x2 in pre[y2]) > q2[y][y2]:
                    return False
    return True


# -- randomized preservation checks --------------------------------------------


def _random_quasimetric(rng: random.Random, n: int, values=(1, 2, 3, INF)) -> FiniteSpace:
    raw = [[0 if i == j else rng.choice(values) for j in range(n)] for i in range(n)]
    return FiniteSpace(tuple(f"p{i}" for i in range(n)), _min_plus_closure(raw))


def _quotient(rng: random.Random, s: FiniteSpace, k: int) -> SpaceMap:
    """Random surjection onto ``k`` points with the largest quotient distance making it a contraction."""
    n = len(s.points)
    assign = list(range(k)) + [rng.randrange(k) for _ in range(n - k)]
    rng.shuffle(assign)
    raw = [[0 if a == b else INF for b in range(k)] for a in range(k)]
    for i in range(n):
        for j in range(n):
            a, b = assign[i], assign[j]
            if a != b and s.q[i][j] < raw[a][b]:
                raw[a][b] = s.q[i][j]
    cod = FiniteSpace(tuple(f"c{a}" for a in range(k)), _min_plus_closure(raw))
    return SpaceMap(s, cod, tuple(assign))


def _detached_embedding(rng: random.Random, big: FiniteSpace) -> SpaceMap:
    """Inclusion of a subspace Y after cutting every distance from outside into Y."""
    n = len(big.points)
    size = rng.randrange(1, n + 1)
    Y = sorted(rng.sample(range(n), size))
    q = [list(r) for r in big.q]
    for i in range(n):
        for j in Y:
            if i not in Y:
                q[i][j] = INF
    cod = FiniteSpace(big.points, tuple(tuple(r) for r in q))
    dom = subspace(cod, [cod.points[i] for i in Y])
    return SpaceMap(dom, cod, tuple(Y))


def run_preservation_suite(seed: int = 0, trials: int = 200) -> dict:
    """Random checks of the two preservation results.

    * a contractive surjection that is open and closed expansive maps normal
      spaces onto normal spaces;
    * if an injective closed expansive contraction lands in a normal space,
      its domain is normal.

    Returns counts of instances meeting each hypothesis and any violations.
    """
    rng = random.Random(seed)
    report = {"trials": trials, "quotient_hyp": 0, "embedding_hyp": 0, "violations": []}
    for t in range(trials):
        n = rng.randrange(2, 6)
        s = _random_quasimetric(rng, n)
        m = _quotient(rng, s, rng.randrange(1, n + 1))
        if is_contraction_map(m) and is_open_expansive(m) and is_closed_expansive(m):
            report["quotient_hyp"] += 1
            if is_normal(s).normal and not is_normal(m.codomain).normal:
                report["violations"].append(("quotient", t))
        e = _detached_embedding(rng, _random_quasimetric(rng, n))
        if e.is_injective and is_contraction_map(e) and is_closed_expansive(e):
            report["embedding_hyp"] += 1
            if is_normal(e.codomain).normal and not is_normal(e.domain).normal:
                report["violations"].append(("embedding", t))
    return report
