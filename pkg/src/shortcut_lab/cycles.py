"""Cycles in graphs and the metric predicates on them.

A cycle is a closed nondegenerate combinatorial walk; vertices may repeat.
All point-level conditions (antipodes of odd cycles live on edge midpoints)
are evaluated at the resolution of the once-subdivided cycle and graph,
where every antipode is a vertex and every distance is an integer.  The
subdivided metric is computed directly from the host oracle rather than by
materializing the subdivision: distances double on vertices, and a midpoint
sits at doubled-distance 1 from either endpoint of its edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CycleNotInGraph, InvalidK, InvalidXi
from .graphs import Graph
from .metrics import DistanceOracle, distances


@dataclass(frozen=True)
class CycleInGraph:
    """Closed walk v_0 .. v_{n-1} (edge i joins v_i and v_{i+1 mod n})."""

    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def length(self):
        return len(self.vertices)

    def validate(self, g: Graph):
        vs = self.vertices
        n = len(vs)
        if n < 3:
            raise CycleNotInGraph(f"cycle of length {n} is degenerate (need >= 3)")
        for i, v in enumerate(vs):
            if not 0 <= v < g.vertex_count:
                raise CycleNotInGraph(f"vertex {v} out of range")
            w = vs[(i + 1) % n]
            if not g.has_edge(v, w):
                raise CycleNotInGraph(f"consecutive vertices {v},{w} not adjacent")
        return self

    def canonical(self) -> "CycleInGraph":
        """Minimal rotation of the lexicographically smaller orientation."""
        return CycleInGraph(canonical_cycle(self.vertices))

    def to_json_obj(self):
        return list(self.vertices)


def canonical_cycle(vertices):
    """Canonical representative of a cyclic sequence up to rotation and
    reflection: the least rotation of the lesser of the two orientations."""
    vs = tuple(vertices)
    n = len(vs)
    best = None
    for seq in (vs, tuple(reversed(vs))):
        for r in range(n):
            rot = seq[r:] + seq[:r]
            if best is None or rot < best:
                best = rot
    return best


def _check_xi(xi):
    xi = Fraction(xi)
    if not 0 < xi < 1:
        raise InvalidXi(f"xi must lie in (0, 1), got {xi}")
    return xi


def _check_k(k):
    k = Fraction(k)
    if k < 1:
        raise InvalidK(f"K must be at least 1, got {k}")
    return k


class _SubdividedCycleMetric:
    """Doubled distances of the subdivided host graph, restricted to the
    2n points of a subdivided cycle.

    Position 2i is vertex v_i of the cycle; position 2i+1 is the midpoint
    of the cycle edge from v_i to v_{i+1}.
    """

    __slots__ = ("oracle", "verts", "edge_images", "n")

    def __init__(self, oracle: DistanceOracle, cycle: CycleInGraph):
        self.oracle = oracle
        self.verts = cycle.vertices
        n = len(self.verts)
        self.n = n
        self.edge_images = [
            tuple(sorted((self.verts[i], self.verts[(i + 1) % n]))) for i in range(n)
        ]

    def doubled(self, pos_a, pos_b):
        """Doubled distance in the subdivided host between two cycle points."""
        if pos_a == pos_b:
            return 0
        ora = self.oracle
        if pos_a % 2 == 0 and pos_b % 2 == 0:
            return ora.doubled(self.verts[pos_a // 2], self.verts[pos_b // 2])
        if pos_a % 2 == 1 and pos_b % 2 == 1:
            e1 = self.edge_images[pos_a // 2]
            e2 = self.edge_images[pos_b // 2]
            if e1 == e2:
                return 0
            row_p = ora.row(e1[0])
            row_q = ora.row(e1[1])
            return 2 + min(row_p[e2[0]], row_p[e2[1]], row_q[e2[0]], row_q[e2[1]])
        if pos_a % 2 == 1:
            pos_a, pos_b = pos_b, pos_a
        x = self.verts[pos_a // 2]
        p, q = self.edge_images[pos_b // 2]
        row = ora.row(x)
        return 1 + min(row[p], row[q])


def _prepare(g, c, oracle):
    c.validate(g)
    if oracle is None:
        oracle = distances(g)
    return _SubdividedCycleMetric(oracle, c)


def is_isometric_cycle(g: Graph, c: CycleInGraph, oracle: DistanceOracle | None = None) -> bool:
    """True iff every antipodal pair of points maps at distance >= |C|/2."""
    sub = _prepare(g, c, oracle)
    n = sub.n
    return all(sub.doubled(i, i + n) >= n for i in range(n))


def is_almost_isometric_cycle(
    g: Graph, c: CycleInGraph, xi, oracle: DistanceOracle | None = None
) -> bool:
    """True iff every antipodal pair of points maps at distance >= xi |C| / 2."""
    xi = _check_xi(xi)
    sub = _prepare(g, c, oracle)
    n = sub.n
    p, q = xi.numerator, xi.denominator
    return all(q * sub.doubled(i, i + n) >= p * n for i in range(n))


def is_bilipschitz_cycle(
    g: Graph, c: CycleInGraph, k, oracle: DistanceOracle | None = None
) -> bool:
    """True iff d(f(p), f(q)) >= d_C(p, q) / K for all pairs of points,
    checked at the vertex resolution of the subdivision.  K = 1 coincides
    with the isometric predicate."""
    k = _check_k(k)
    sub = _prepare(g, c, oracle)
    m = 2 * sub.n
    kp, kq = k.numerator, k.denominator
    for i in range(m):
        for j in range(i + 1, m):
            dc2 = min(j - i, m - (j - i))
            if kp * sub.doubled(i, j) < kq * dc2:
                return False
    return True


def is_isometric_cycle_by_vertex_pairs(
    g: Graph, c: CycleInGraph, oracle: DistanceOracle | None = None
) -> bool:
    """Direct definition: d(f(u), f(v)) = d_C(u, v) on every vertex pair.

    Equivalent to is_isometric_cycle; kept as an independent implementation
    for cross-validation.
    """
    c.validate(g)
    if oracle is None:
        oracle = distances(g)
    vs = c.vertices
    n = len(vs)
    for i in range(n):
        row = oracle.row(vs[i])
        for j in range(i + 1, n):
            if row[vs[j]] != 2 * min(j - i, n - (j - i)):
                return False
    return True


def almost_isometric_violation(
    g: Graph, c: CycleInGraph, xi, oracle: DistanceOracle | None = None
):
    """A vertex pair witnessing failure of the xi-almost isometric condition.

    Returns cycle positions (i, j) with d(f(u), f(v)) < xi d_C(u, v),
    maximizing d_C and breaking ties lexicographically, or None when the
    cycle is xi-almost isometric.  xi = 1 witnesses non-isometry.  Whenever
    a pair is returned, d_C(u, v) >= floor(|C| / 2) - 1.
    """
    xi = Fraction(xi)
    if not 0 < xi <= 1:
        raise InvalidXi(f"xi must lie in (0, 1], got {xi}")
    c.validate(g)
    if oracle is None:
        oracle = distances(g)
    vs = c.vertices
    n = len(vs)
    p, q = xi.numerator, xi.denominator
    best = None
    best_dc = -1
    for i in range(n):
        row = oracle.row(vs[i])
        for j in range(i + 1, n):
            dc = min(j - i, n - (j - i))
            if dc <= best_dc:
                continue
            if q * row[vs[j]] < p * 2 * dc:
                best = (i, j)
                best_dc = dc
    return best


def cycle_xi_value(g: Graph, c: CycleInGraph, oracle: DistanceOracle | None = None) -> Fraction:
    """min over antipodal point pairs of 2 d(f(p), f(q)) / |C|, capped at 1.

    The cycle is xi-almost isometric exactly for xi <= this value; value 1
    means isometric.
    """
    sub = _prepare(g, c, oracle)
    n = sub.n
    worst = min(sub.doubled(i, i + n) for i in range(n))
    return Fraction(min(worst, n), n)
