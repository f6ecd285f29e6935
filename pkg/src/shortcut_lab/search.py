"""Cycle search engines.

Exhaustive search enumerates closed walks rooted at the minimum vertex of
the cycle (or at a caller-declared base point for vertex-transitive hosts)
and prunes partial paths with necessary conditions derived from the
predicate under test.  Pruning never excludes a valid completion: for each
mode the pruning inequality is implied, on every vertex pair, by the
predicate holding on the finished cycle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cycles import (
    CycleInGraph,
    canonical_cycle,
    is_almost_isometric_cycle,
    is_bilipschitz_cycle,
    is_isometric_cycle,
)
from .errors import ShortcutLabError
from .graphs import Graph
from .metrics import DistanceOracle, distances


@dataclass
class SearchBudget:
    """Bound on node expansions for one search invocation."""

    max_expansions: int = 50_000_000

    def __post_init__(self):
        if self.max_expansions <= 0:
            raise ShortcutLabError("budget must be positive")


@dataclass
class SearchResult:
    cycles: list = field(default_factory=list)
    complete: bool = True
    expansions: int = 0


def _mode_check(mode, xi, k):
    if mode == "isometric":
        return None
    if mode == "almost_isometric":
        xi = Fraction(xi)
        if not 0 < xi < 1:
            raise ShortcutLabError("almost_isometric mode needs xi in (0, 1)")
        return xi
    if mode == "bilipschitz":
        k = Fraction(k)
        if k < 1:
            raise ShortcutLabError("bilipschitz mode needs K >= 1")
        return k
    raise ShortcutLabError(f"unknown search mode {mode!r}")


def _make_pair_prune(mode, param, n):
    """Necessary condition on a vertex pair at cycle positions i < j whose
    images are at doubled distance dg2.  Returns True when the pair is
    still admissible."""
    if mode == "isometric":
        def ok(i, j, dg2):
            return dg2 == 2 * min(j - i, n - (j - i))
    elif mode == "almost_isometric":
        p, q = param.numerator, param.denominator
        slack = (q - p) * n
        def ok(i, j, dg2):
            return q * dg2 >= q * 2 * min(j - i, n - (j - i)) - slack
    else:
        kp, kq = param.numerator, param.denominator
        def ok(i, j, dg2):
            return kp * dg2 >= kq * 2 * min(j - i, n - (j - i))
    return ok


def _final_predicate(mode, param):
    if mode == "isometric":
        return lambda g, c, oracle: is_isometric_cycle(g, c, oracle)
    if mode == "almost_isometric":
        return lambda g, c, oracle: is_almost_isometric_cycle(g, c, param, oracle)
    return lambda g, c, oracle: is_bilipschitz_cycle(g, c, param, oracle)


def search_cycles(
    g: Graph,
    length: int,
    mode: str = "isometric",
    xi=None,
    k=None,
    budget: SearchBudget | None = None,
    base_vertex: int | None = None,
    heuristic: bool = False,
    seed: int = 0,
    oracle: DistanceOracle | None = None,
) -> SearchResult:
    """All predicate-satisfying cycles of the given length, up to rotation
    and reflection.

    With ``base_vertex`` (declared by the caller, e.g. for Cayley balls)
    only cycles through that vertex are enumerated.  Heuristic mode samples
    seeded random closed walks instead and may miss cycles.
    """
    param = _mode_check(mode, xi, k)
    if length < 3:
        raise ShortcutLabError("cycle length must be at least 3")
    result = SearchResult()
    if g.vertex_count < 3 or g.edge_count < 3:
        return result
    if oracle is None:
        oracle = distances(g)
    if budget is None:
        budget = SearchBudget()
    final = _final_predicate(mode, param)
    if heuristic:
        return _heuristic_search(g, length, final, budget, seed, oracle, result)

    n = length
    pair_ok = _make_pair_prune(mode, param, n)
    seen = set()
    max_exp = budget.max_expansions
    starts = [base_vertex] if base_vertex is not None else range(g.vertex_count)
    floor_v = -1 if base_vertex is not None else None

    rows = oracle.row
    path = [0] * n

    def extend(depth, start, row_start):
        # depth = number of vertices placed so far
        if result.expansions >= max_exp:
            result.complete = False
            return
        if depth == n:
            last = path[n - 1]
            if g.has_edge(last, start):
                c = CycleInGraph(tuple(path))
                key = canonical_cycle(path)
                if key not in seen and final(g, c, oracle):
                    seen.add(key)
                    result.cycles.append(CycleInGraph(key))
            return
        lo = start if floor_v is None else 0
        prev_rows = [rows(path[i]) for i in range(depth)]
        for w in g.neighbors(path[depth - 1]):
            if w < lo:
                continue
            # closing feasibility: remaining edges must reach the start
            if row_start[w] > 2 * (n - depth):
                continue
            admissible = True
            for i in range(depth):
                if not pair_ok(i, depth, prev_rows[i][w]):
                    admissible = False
                    break
            if admissible:
                result.expansions += 1
                path[depth] = w
                extend(depth + 1, start, row_start)
                if not result.complete:
                    return

    for v in starts:
        path[0] = v
        result.expansions += 1
        extend(1, v, rows(v))
        if not result.complete:
            break
    result.cycles.sort(key=lambda c: c.vertices)
    return result


def _heuristic_search(g, length, final, budget, seed, oracle, result):
    rng = random.Random(seed)
    seen = set()
    n = length
    verts = [v for v in range(g.vertex_count) if g.degree(v) > 0]
    while result.expansions < budget.max_expansions:
        result.expansions += n
        v = rng.choice(verts)
        path = [v]
        ok = True
        for _ in range(n - 1):
            nbrs = g.neighbors(path[-1])
            cands = [w for w in nbrs if len(path) < 2 or w != path[-2]] or list(nbrs)
            if not cands:
                ok = False
                break
            path.append(rng.choice(cands))
        if not ok or not g.has_edge(path[-1], path[0]):
            continue
        key = canonical_cycle(path)
        if key in seen:
            continue
        c = CycleInGraph(tuple(path))
        if final(g, c, oracle):
            seen.add(key)
            result.cycles.append(CycleInGraph(key))
    result.complete = False
    result.cycles.sort(key=lambda c: c.vertices)
    return result


def brute_force_cycles(g: Graph, length: int, predicate) -> list:
    """Unpruned enumeration of all cycles of the given length satisfying
    ``predicate(cycle)``, up to rotation and reflection.  Reference oracle
    for search soundness tests; only usable on small graphs."""
    n = length
    found = {}
    path = []

    def extend(start):
        depth = len(path)
        if depth == n:
            if g.has_edge(path[-1], start):
                key = canonical_cycle(path)
                if key not in found:
                    c = CycleInGraph(key)
                    if predicate(c):
                        found[key] = c
            return
        for w in g.neighbors(path[-1]):
            path.append(w)
            extend(start)
            path.pop()

    for v in range(g.vertex_count):
        path.append(v)
        extend(v)
        path.pop()
    return sorted(found.values(), key=lambda c: c.vertices)


def random_cycles(
    g: Graph,
    max_length: int,
    count: int,
    seed: int = 0,
    min_length: int = 3,
    lengths=None,
) -> list:
    """Seeded sample of random cycles (closed nondegenerate walks).

    Rejection-samples random walks until ``count`` cycles are collected or
    the attempt cap is hit, so bipartite hosts simply never yield odd
    lengths.
    """
    rng = random.Random(seed)
    if lengths is None:
        lengths = [n for n in range(max(3, min_length), max_length + 1)]
    out = []
    attempts = 0
    cap = 2000 * count
    verts = [v for v in range(g.vertex_count) if g.degree(v) > 0]
    if not verts or not lengths:
        return out
    while len(out) < count and attempts < cap:
        attempts += 1
        n = rng.choice(lengths)
        v = rng.choice(verts)
        path = [v]
        dead = False
        for _ in range(n - 1):
            nbrs = g.neighbors(path[-1])
            cands = [w for w in nbrs if len(path) < 2 or w != path[-2]] or list(nbrs)
            if not cands:
                dead = True
                break
            path.append(rng.choice(cands))
        if dead or len(path) < 3 or not g.has_edge(path[-1], path[0]):
            continue
        out.append(CycleInGraph(tuple(path)))
    return out
