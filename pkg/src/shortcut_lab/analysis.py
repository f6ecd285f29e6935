"""Shortcut certificates, strong-shortcut profiles, graph products and
hyperbolicity bound checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import random

from .cycles import CycleInGraph, canonical_cycle, cycle_xi_value
from .errors import DisconnectedGraph, ShortcutLabError, TooLarge
from .graphs import Graph
from .metrics import DistanceOracle, distances
from .search import SearchBudget, search_cycles


@dataclass
class ShortcutReport:
    """theta = largest isometric-cycle length found within range_checked."""

    theta: int
    range_checked: int
    exhaustive: bool
    witnesses: list = field(default_factory=list)

    def to_json_obj(self):
        return {
            "theta": self.theta,
            "range_checked": self.range_checked,
            "exhaustive": self.exhaustive,
            "witnesses": [list(c.vertices) for c in self.witnesses],
        }


def shortcut_certificate(
    g: Graph,
    max_len: int,
    budget: SearchBudget | None = None,
    base_vertex: int | None = None,
) -> ShortcutReport:
    """Search all lengths 3..max_len for isometric cycles.

    theta is the largest length admitting one (0 when the graph has no
    cycles at all); exhaustive is set only if every length was fully
    searched within budget.
    """
    if not g.is_connected():
        raise DisconnectedGraph("shortcut certificate requires a connected graph")
    if budget is None:
        budget = SearchBudget()
    oracle = distances(g)
    theta = 0
    witnesses = []
    exhaustive = True
    for n in range(3, max_len + 1):
        res = search_cycles(
            g, n, mode="isometric", budget=budget, base_vertex=base_vertex, oracle=oracle
        )
        exhaustive = exhaustive and res.complete
        if res.cycles:
            theta = n
            witnesses = list(res.cycles)
    return ShortcutReport(theta, max_len, exhaustive, witnesses)


@dataclass
class ProfileEntry:
    n: int
    xi_max: Fraction | None
    witness: CycleInGraph | None
    exhaustive: bool

    def to_json_obj(self):
        return {
            "n": self.n,
            "xi_max": None if self.xi_max is None else f"{self.xi_max.numerator}/{self.xi_max.denominator}",
            "witness": None if self.witness is None else list(self.witness.vertices),
            "exhaustive": self.exhaustive,
        }


@dataclass
class StrongShortcutProfile:
    entries: list

    def xi_max(self, n):
        for e in self.entries:
            if e.n == n:
                return e.xi_max
        return None

    def to_json_obj(self):
        return [e.to_json_obj() for e in self.entries]


def _xi_max_exhaustive(g, n, budget, base_vertex, oracle):
    """Branch-and-bound maximin: the largest cycle_xi_value over cycles of
    length n.  The admissible bound on a partial path comes from the
    all-pairs relaxation: any finished cycle containing vertices at cycle
    distance dC and graph distance dg has value at most 1 - 2(dC - dg)/n.
    """
    best = Fraction(-1)
    witness = None
    expansions = 0
    max_exp = budget.max_expansions
    complete = True
    rows = oracle.row
    path = [0] * n

    def extend(depth, start, row_start):
        nonlocal best, witness, expansions, complete
        if expansions >= max_exp:
            complete = False
            return
        if depth == n:
            last = path[n - 1]
            if g.has_edge(last, start):
                c = CycleInGraph(tuple(path))
                val = cycle_xi_value(g, c, oracle)
                if val > best:
                    best = val
                    witness = CycleInGraph(canonical_cycle(path))
            return
        lo = start if base_vertex is None else 0
        prev_rows = [rows(path[i]) for i in range(depth)]
        bn, bd = best.numerator, best.denominator
        for w in g.neighbors(path[depth - 1]):
            if w < lo:
                continue
            if row_start[w] > 2 * (n - depth):
                continue
            # vertex-pair upper bound on the achievable value, over n
            ub_num = n
            ok = True
            for i in range(depth):
                dc2 = 2 * min(depth - i, n - (depth - i))
                cand = n - dc2 + prev_rows[i][w]
                if cand < ub_num:
                    ub_num = cand
                    if ub_num * bd <= bn * n:
                        ok = False
                        break
            if ok:
                expansions += 1
                path[depth] = w
                extend(depth + 1, start, row_start)
                if not complete:
                    return

    starts = [base_vertex] if base_vertex is not None else range(g.vertex_count)
    for v in starts:
        path[0] = v
        expansions += 1
        extend(1, v, rows(v))
        if not complete:
            break
    if witness is None:
        return None, None, complete
    return best, witness, complete


def _xi_max_heuristic(g, n, budget, seed, oracle):
    rng = random.Random(seed)
    best = None
    witness = None
    steps = 0
    verts = [v for v in range(g.vertex_count) if g.degree(v) > 0]
    while steps < budget.max_expansions:
        steps += n
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
        if dead or not g.has_edge(path[-1], path[0]):
            continue
        c = CycleInGraph(tuple(path))
        val = cycle_xi_value(g, c, oracle)
        improved = True
        while improved:
            improved = False
            # local improvement: re-route one intermediate vertex at a time
            vs = list(c.vertices)
            for i in range(n):
                a, x, b = vs[i - 1], vs[i], vs[(i + 1) % n]
                for y in g.neighbors(a):
                    if y != x and g.has_edge(y, b):
                        steps += 1
                        trial = vs[:]
                        trial[i] = y
                        tc = CycleInGraph(tuple(trial))
                        tval = cycle_xi_value(g, tc, oracle)
                        if tval > val:
                            val, c, vs = tval, tc, trial
                            improved = True
                            break
                if improved:
                    break
        if best is None or val > best:
            best, witness = val, c.canonical()
    return best, witness


def strong_shortcut_profile(
    g: Graph,
    lengths,
    budget: SearchBudget | None = None,
    base_vertex: int | None = None,
    heuristic: bool = False,
    seed: int = 0,
) -> StrongShortcutProfile:
    """Per length n, the exact (exhaustive) or lower-bound (heuristic)
    xi_max(n) with a witness attaining it; None when no cycle of that
    length exists."""
    if not g.is_connected():
        raise DisconnectedGraph("profile requires a connected graph")
    if budget is None:
        budget = SearchBudget()
    oracle = distances(g)
    entries = []
    for n in lengths:
        if n < 3:
            raise ShortcutLabError("profile lengths must be at least 3")
        if heuristic:
            xi, wit = _xi_max_heuristic(g, n, budget, seed + n, oracle)
            entries.append(ProfileEntry(n, xi, wit, False))
        else:
            xi, wit, complete = _xi_max_exhaustive(g, n, budget, base_vertex, oracle)
            entries.append(ProfileEntry(n, xi, wit, complete))
    return StrongShortcutProfile(entries)


class ProductGraph:
    """Product of two simplicial graphs with factor-projection metadata.

    Vertex (i, j) gets id i * right.vertex_count + j.  Edges moving in the
    left factor are horizontal, edges moving in the right factor vertical.
    """

    def __init__(self, left: Graph, right: Graph):
        self.left = left
        self.right = right
        nr = right.vertex_count
        edges = []
        for i in range(left.vertex_count):
            for j1, j2 in right.edges:
                edges.append((i * nr + j1, i * nr + j2))
        for i1, i2 in left.edges:
            for j in range(nr):
                edges.append((i1 * nr + j, i2 * nr + j))
        labels = {}
        for i in range(left.vertex_count):
            for j in range(nr):
                labels[i * nr + j] = f"({i},{j})"
        self.graph = Graph(left.vertex_count * nr, edges, labels)

    def vertex_id(self, i, j):
        return i * self.right.vertex_count + j

    def vertex_pair(self, v):
        nr = self.right.vertex_count
        return divmod(v, nr)

    def edge_kind(self, u, v):
        """'h' when the edge projects nondegenerately onto the left factor,
        'v' otherwise."""
        (i1, j1), (i2, j2) = self.vertex_pair(u), self.vertex_pair(v)
        if j1 == j2 and i1 != i2:
            return "h"
        if i1 == i2 and j1 != j2:
            return "v"
        raise ShortcutLabError(f"({u},{v}) is not a product edge")

    def edge_projection(self, u, v):
        """The factor edge this product edge projects to."""
        (i1, j1), (i2, j2) = self.vertex_pair(u), self.vertex_pair(v)
        if j1 == j2 and i1 != i2:
            return ("h", (i1, i2) if i1 < i2 else (i2, i1))
        if i1 == i2 and j1 != j2:
            return ("v", (j1, j2) if j1 < j2 else (j2, j1))
        raise ShortcutLabError(f"({u},{v}) is not a product edge")

    def contract_vertical(self, c: CycleInGraph):
        """Project a product cycle to the left factor, contracting vertical
        edges: returns (projected vertex sequence, horizontal count,
        vertical count).  The projection is a cycle with degeneracies
        removed (consecutive duplicates contracted)."""
        seq = [self.vertex_pair(v)[0] for v in c.vertices]
        n = len(seq)
        h = sum(1 for i in range(n) if seq[i] != seq[(i + 1) % n])
        contracted = [seq[i] for i in range(n) if seq[i] != seq[i - 1]]
        if len(contracted) > 1 and contracted[0] == contracted[-1]:
            contracted.pop()
        return contracted, h, n - h


def product(g1: Graph, g2: Graph) -> ProductGraph:
    """The product graph with horizontal/vertical edge metadata."""
    return ProductGraph(g1, g2)


@dataclass
class HyperbolicityEstimate:
    """Four-point condition delta, stored doubled (half-integers exactly)."""

    delta_doubled: int
    method: str = "four-point"

    @property
    def delta(self) -> Fraction:
        return Fraction(self.delta_doubled, 2)


def delta_hyperbolicity(g: Graph, max_vertices: int = 64) -> HyperbolicityEstimate:
    """Exact four-point hyperbolicity constant by full quadruple scan."""
    n = g.vertex_count
    if n > max_vertices:
        raise TooLarge(f"{n} vertices exceeds the four-point scan limit {max_vertices}")
    oracle = distances(g)
    rows = [oracle.row(v) for v in range(n)]
    worst = 0
    for x, y, z, w in combinations(range(n), 4):
        s1 = rows[x][y] + rows[z][w]
        s2 = rows[x][z] + rows[y][w]
        s3 = rows[x][w] + rows[y][z]
        if s1 < s2:
            s1, s2 = s2, s1
        if s1 < s3:
            s1, s3 = s3, s1
        big2 = s2 if s2 >= s3 else s3
        diff = s1 - big2
        if diff > worst:
            worst = diff
    # entries are doubled, so diff = 4 * delta; keep 2 * delta
    return HyperbolicityEstimate(worst // 2)


@dataclass
class HyperbolicBoundReport:
    delta_doubled: int
    checked_lengths: list
    satisfying: dict
    violations: list
    complete: bool
    convention: str = "four-point"

    def to_json_obj(self):
        return {
            "delta": f"{Fraction(self.delta_doubled, 2)}",
            "convention": self.convention,
            "checked_lengths": self.checked_lengths,
            "satisfying_counts": {str(k): v for k, v in self.satisfying.items()},
            "violations": [
                {"length": n, "cycle": list(c.vertices)} for n, c in self.violations
            ],
            "complete": self.complete,
        }


def _exceeds_hyperbolic_bound(length: int, delta_doubled: int) -> bool:
    """Exact test of length > 16 (delta log2(length / 2) + 1)."""
    # length <= 16 delta log2(length/2) + 16  <=>  2^(length-16) <= (length/2)^(8 dd)
    lhs = Fraction(2) ** (length - 16)
    rhs = Fraction(length, 2) ** (8 * delta_doubled)
    return lhs > rhs


def check_hyperbolic_bound(
    g: Graph,
    delta,
    max_len: int,
    budget: SearchBudget | None = None,
) -> HyperbolicBoundReport:
    """Search 3/4-almost isometric cycles and report any whose length
    violates |C| <= 16 (delta log2(|C|/2) + 1).

    Advisory: the theorem's delta convention differs from the four-point
    constant by bounded factors, so a violation is a flag, not a refutation.
    """
    if isinstance(delta, HyperbolicityEstimate):
        dd = delta.delta_doubled
    else:
        dd = int(2 * Fraction(delta))
    if budget is None:
        budget = SearchBudget()
    oracle = distances(g)
    satisfying = {}
    violations = []
    complete = True
    lengths = list(range(3, max_len + 1))
    for n in lengths:
        res = search_cycles(
            g, n, mode="almost_isometric", xi=Fraction(3, 4), budget=budget, oracle=oracle
        )
        complete = complete and res.complete
        if res.cycles:
            satisfying[n] = len(res.cycles)
            if _exceeds_hyperbolic_bound(n, dd):
                violations.extend((n, c) for c in res.cycles)
    return HyperbolicBoundReport(dd, lengths, satisfying, violations, complete)


@dataclass
class ProductBoundReport:
    theta: int
    xi: Fraction
    product_xi: Fraction
    checked_lengths: list
    offending: list
    complete: bool

    @property
    def holds(self):
        return not self.offending


def verify_product_bound(
    p: ProductGraph,
    theta: int,
    xi,
    max_len: int,
    budget: SearchBudget | None = None,
) -> ProductBoundReport:
    """Check that a product of factors whose xi-almost isometric cycles are
    bounded by theta has no (1+xi)/2-almost isometric cycle of length in
    [2 theta, max_len]."""
    xi = Fraction(xi)
    pxi = (1 + xi) / 2
    if budget is None:
        budget = SearchBudget()
    oracle = distances(p.graph)
    offending = []
    complete = True
    lengths = list(range(2 * theta, max_len + 1))
    for n in lengths:
        res = search_cycles(
            p.graph, n, mode="almost_isometric", xi=pxi, budget=budget, oracle=oracle
        )
        complete = complete and res.complete
        offending.extend((n, c) for c in res.cycles)
    return ProductBoundReport(theta, xi, pxi, lengths, offending, complete)
