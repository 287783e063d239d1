"""Baker-Norine rank on a finite model of a metric chain, by chip-firing.

The chain is scaled so every length and every chip position becomes an
integer, each unit segment becomes an edge, and zero-length bridges are
contracted. Ranks are then computed from q-reduced divisors (Dhar's
burning algorithm) with

    r(D) = -1                      if the reduced form is negative at q
    r(D) = 1 + min_v r(D - v)      otherwise,

memoized on reduced forms. Nothing here uses tableaux or displacement, so
it serves as an independent check of :func:`bnchain.divisors.rank`.
"""
from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .chain import AbstractChain, Chain, CyclePoint, MetricChain
from .divisors import BridgePoint, ChainDivisor, rank, standard_form, weierstrass_partition


@dataclass
class FiniteGraph:
    adj: np.ndarray
    base: int
    cycle_vertices: list[list[int]] = field(default_factory=list)
    scale: int = 1
    _dist: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.adj = np.ascontiguousarray(self.adj, dtype=np.int64)
        self.lap = np.diag(self.adj.sum(axis=1)) - self.adj

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @property
    def edge_count(self) -> int:
        return int(self.adj.sum()) // 2

    @property
    def genus(self) -> int:
        return self.edge_count - self.n + 1

    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    def distances(self, q: int) -> np.ndarray:
        if q not in self._dist:
            dist = np.full(self.n, -1, dtype=np.int64)
            dist[q] = 0
            queue = deque([q])
            while queue:
                u = queue.popleft()
                for w in np.flatnonzero(self.adj[u]):
                    if dist[w] < 0:
                        dist[w] = dist[u] + 1
                        queue.append(w)
            if (dist < 0).any():
                raise ValueError("graph is not connected")
            self._dist[q] = dist
        return self._dist[q]

    def reduce(self, chips: np.ndarray, q: int | None = None) -> np.ndarray:
        q = self.base if q is None else q
        chips = np.ascontiguousarray(chips, dtype=np.int64)
        return _kernels.reduce_kernel(self.adj, self.lap, self.distances(q), chips, q)

    def fire(self, chips: np.ndarray, vertices: Iterable[int]) -> np.ndarray:
        """Fire each listed vertex once (with repetition)."""
        out = np.array(chips, dtype=np.int64)
        for v in vertices:
            out -= self.lap[v]
        return out

    def canonical(self) -> np.ndarray:
        return self.degrees() - 2


def _arc_int(value: Fraction, scale: int) -> int:
    x = value * scale
    assert x.denominator == 1
    return int(x)


def _positions(D: ChainDivisor, chain: MetricChain) -> list[Fraction]:
    out = []
    for loc, _ in D.terms:
        if isinstance(loc, CyclePoint):
            out.append(chain.cycle(loc.cycle).arc(loc.xi))
    return out


def build_graph(chain: Chain, divisors: Sequence[ChainDivisor] = (), subdivide: int = 1) -> FiniteGraph:
    """Uniform subdivision of a metric chain fine enough to hold the chips of ``divisors``."""
    if isinstance(chain, AbstractChain):
        raise TypeError("the oracle needs a metric chain with explicit edge lengths")
    values: list[Fraction] = []
    for c in chain.cycles:
        values += [c.cw, c.total]
    if chain.bridges is not None:
        values += list(chain.bridges)
    for D in divisors:
        values += _positions(D, chain)
    scale = lcm(*(v.denominator for v in values)) * int(subdivide)
    # at least three vertices per cycle keeps the model loopless and simple
    while min(c.total * scale for c in chain.cycles) < 3:
        scale *= 2

    edges: list[tuple[int, int]] = []
    cycle_vertices: list[list[int]] = []
    n = 0
    prev_w = None
    for i, c in enumerate(chain.cycles, 1):
        L = _arc_int(c.total, scale)
        v_pos = _arc_int(c.total - c.cw, scale)
        ids = [-1] * L
        if prev_w is not None:
            blen = _arc_int(chain.bridge_length(i - 1), scale)
            if blen == 0:
                ids[v_pos] = prev_w
            else:
                path = [prev_w] + list(range(n, n + blen - 1))
                n += blen - 1
                ids[v_pos] = n
                n += 1
                path.append(ids[v_pos])
                edges += list(zip(path, path[1:]))
        for p in range(L):
            if ids[p] < 0:
                ids[p] = n
                n += 1
        edges += [(ids[p], ids[(p + 1) % L]) for p in range(L)]
        cycle_vertices.append(ids)
        prev_w = ids[0]

    adj = np.zeros((n, n), dtype=np.int64)
    for a, b in edges:
        adj[a, b] += 1
        adj[b, a] += 1
    return FiniteGraph(adj, base=cycle_vertices[-1][0], cycle_vertices=cycle_vertices, scale=scale)


def chips_for(G: FiniteGraph, chain: MetricChain, D: ChainDivisor) -> np.ndarray:
    chips = np.zeros(G.n, dtype=np.int64)
    for loc, k in D.terms:
        if isinstance(loc, BridgePoint):
            chips[G.cycle_vertices[loc.bridge - 1][0]] += k
        else:
            arc = chain.cycle(loc.cycle).arc(loc.xi) * G.scale
            if arc.denominator != 1:
                raise ValueError(f"chip at {loc} is not a vertex of the model; rebuild with this divisor")
            chips[G.cycle_vertices[loc.cycle - 1][int(arc)]] += k
    chips[G.base] += D.wg
    return chips


def to_finite_graph(chain: Chain, D: ChainDivisor, subdivide: int = 1) -> tuple[FiniteGraph, np.ndarray]:
    G = build_graph(chain, [D], subdivide)
    return G, chips_for(G, chain, D)


def dhar_reduce(G: FiniteGraph, chips: np.ndarray, q: int | None = None) -> np.ndarray:
    return G.reduce(chips, q)


def is_reduced(G: FiniteGraph, chips: np.ndarray, q: int | None = None) -> bool:
    """Effective away from ``q`` and the fire started at ``q`` burns the whole graph."""
    q = G.base if q is None else q
    chips = np.asarray(chips)
    if any(chips[v] < 0 for v in range(G.n) if v != q):
        return False
    burnt = {q}
    changed = True
    while changed:
        changed = False
        for v in range(G.n):
            if v not in burnt and sum(int(G.adj[v, u]) for u in burnt) > chips[v]:
                burnt.add(v)
                changed = True
    return len(burnt) == G.n


def bn_rank(G: FiniteGraph, chips: np.ndarray, support: Sequence[int] | None = None) -> int:
    """Baker-Norine rank of ``chips`` on ``G``."""
    verts = list(range(G.n)) if support is None else list(support)
    g = G.genus
    q = G.base
    memo: dict[bytes, int] = {}

    def rank_of(red: np.ndarray) -> int:
        key = red.tobytes()
        hit = memo.get(key)
        if hit is not None:
            return hit
        if red[q] < 0:
            r = -1
        else:
            # Riemann's inequality r >= deg - g bounds the answer from below
            floor = max(0, int(red.sum()) - g)
            best = None
            for v in verts:
                child = red.copy()
                child[v] -= 1
                rc = rank_of(G.reduce(child))
                if best is None or rc < best:
                    best = rc
                    if best + 1 <= floor:
                        break
            r = best + 1
        memo[key] = r
        return r

    return rank_of(G.reduce(chips))


# --- cross-validation -------------------------------------------------------

@dataclass
class CrossCheckReport:
    divisor: ChainDivisor
    rank_wp: int
    rank_oracle: int
    seed: int | None = None
    trial: int | None = None
    detail: dict | None = None

    @property
    def match(self) -> bool:
        return self.rank_wp == self.rank_oracle

    def to_json(self) -> dict:
        obj = {
            "seed": self.seed,
            "trial": self.trial,
            "divisor": self.divisor.to_json(),
            "rank_wp": self.rank_wp,
            "rank_oracle": self.rank_oracle,
            "match": self.match,
        }
        if self.detail is not None:
            obj["detail"] = self.detail
        return obj


def cross_check(chain: Chain, D: ChainDivisor, seed: int | None = None, trial: int | None = None,
                subdivide: int = 1) -> CrossCheckReport:
    r_wp = rank(D, chain)
    G, chips = to_finite_graph(chain, D, subdivide)
    r_or = bn_rank(G, chips)
    report = CrossCheckReport(D, r_wp, r_or, seed, trial)
    if not report.match:
        report.detail = {
            "standard_form": standard_form(D, chain).to_json(),
            "weierstrass_partition": weierstrass_partition(D, chain).to_json(),
            "graph_vertices": G.n,
            "graph_scale": G.scale,
            "chips": chips.tolist(),
            "reduced": G.reduce(chips).tolist(),
        }
    return report


def random_divisor(chain: Chain, rng: np.random.Generator, degree: int, max_terms: int | None = None,
                   half_prob: float = 0.2) -> ChainDivisor:
    """Random divisor of the given degree with chips mostly on lattice points ``<z>_i``."""
    g = chain.genus
    max_terms = 2 * g if max_terms is None else max_terms
    terms = []
    for _ in range(int(rng.integers(1, max_terms + 1))):
        mult = int(rng.choice([1, 1, 1, 2, -1]))
        if g > 1 and rng.random() < 0.1:
            terms.append((BridgePoint(int(rng.integers(1, g))), mult))
            continue
        i = int(rng.integers(1, g + 1))
        if rng.random() < half_prob:
            xi = Fraction(2 * int(rng.integers(-g, g)) + 1, 2)
        else:
            xi = Fraction(int(rng.integers(-g, g + 1)))
        terms.append((CyclePoint(i, xi), mult))
    return ChainDivisor(tuple(terms), degree - sum(k for _, k in terms))


def _threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get("BNCHAIN_THREADS", "1") or 1)
    return max(1, threads)


def verify(chain: Chain, trials: int, seed: int, min_degree: int = -1, max_degree: int | None = None,
           threads: int | None = None) -> list[CrossCheckReport]:
    """Seeded random cross-checks; trial ``k`` draws from ``default_rng([seed, k])``."""
    g = chain.genus
    max_degree = 2 * g - 2 if max_degree is None else max_degree

    def one(k: int) -> CrossCheckReport:
        rng = np.random.default_rng([seed, k])
        d = int(rng.integers(min_degree, max_degree + 1))
        return cross_check(chain, random_divisor(chain, rng, d), seed=seed, trial=k)

    workers = _threads(threads)
    if workers == 1:
        return [one(k) for k in range(trials)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, range(trials)))
