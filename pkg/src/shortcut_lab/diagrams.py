"""Recursive disk diagrams and their area / diameter growth.

A diagram is built by repeatedly splitting a too-long boundary cycle along
a geodesic chord between a violating vertex pair, until every piece closes
up as a single cell.  Cells are glued along the chords; the skeleton is
realized as one graph at the end.  Planarity is neither enforced nor used:
only area (cell count) and diameter matter.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .cycles import CycleInGraph, almost_isometric_violation
from .errors import CycleTooLong, PropertyAViolated, ShortcutLabError
from .graphs import Graph
from .metrics import DistanceOracle, distances, lex_least_geodesic


@dataclass(frozen=True)
class FillingParams:
    """Cell bound theta, split parameter xi, and boundary range n_max."""

    theta: int
    xi: Fraction
    n_max: int

    def __post_init__(self):
        object.__setattr__(self, "xi", Fraction(self.xi))
        if not 3 <= self.theta <= self.n_max:
            raise ShortcutLabError("need 3 <= theta <= n_max")
        if not 0 < self.xi < 1:
            raise ShortcutLabError("xi must lie in (0, 1)")


@dataclass
class DiagramNode:
    """One recursion node: a boundary walk and what it was filled with."""

    length: int
    area: int
    cell: tuple | None = None
    split: tuple | None = None  # (i, j) positions of the violating pair
    chord_length: int = 0
    children: list = field(default_factory=list)
    diameter: int | None = None
    _edges: set | None = None


@dataclass
class DiskDiagram:
    skeleton: Graph
    cells: list
    boundary: tuple
    labels: tuple
    root: DiagramNode | None = None

    @property
    def area(self):
        return len(self.cells)

    def diameter(self) -> int:
        """Max metric distance in the skeleton."""
        return _graph_diameter(self.skeleton)

    def boundary_labels(self):
        return tuple(self.labels[v] for v in self.boundary)

    def validate(self, host: Graph, boundary_cycle: CycleInGraph, theta: int):
        """Check every structural invariant; raises on failure."""
        for walk in self.cells:
            if not 2 <= len(walk) <= theta:
                raise ShortcutLabError(f"cell of length {len(walk)} out of range")
            for i, v in enumerate(walk):
                w = walk[(i + 1) % len(walk)]
                if not self.skeleton.has_edge(v, w):
                    raise ShortcutLabError("cell walk not in skeleton")
                if not host.has_edge(self.labels[v], self.labels[w]):
                    raise ShortcutLabError("cell image not a closed walk in host")
        n = len(self.boundary)
        if n != boundary_cycle.length:
            raise ShortcutLabError("boundary length mismatch")
        for i, v in enumerate(self.boundary):
            w = self.boundary[(i + 1) % n]
            if not self.skeleton.has_edge(v, w):
                raise ShortcutLabError("boundary not a walk in skeleton")
            if self.labels[v] != boundary_cycle.vertices[i]:
                raise ShortcutLabError("boundary image differs from input cycle")
        if not self.skeleton.is_connected():
            raise ShortcutLabError("skeleton is disconnected")
        return True

    def to_json_obj(self):
        return {
            "skeleton": {
                "vertex_count": self.skeleton.vertex_count,
                "edges": [list(e) for e in self.skeleton.edges],
            },
            "cells": [list(c) for c in self.cells],
            "boundary": list(self.boundary),
            "labels": list(self.labels),
            "area": self.area,
            "diameter": self.diameter(),
        }


def _graph_diameter(g: Graph) -> int:
    best = 0
    for s in range(g.vertex_count):
        dist = [-1] * g.vertex_count
        dist[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            for y in g.neighbors(x):
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    q.append(y)
        best = max(best, max(dist))
    return best


class _Builder:
    def __init__(self, g, oracle, params):
        self.g = g
        self.oracle = oracle
        self.params = params
        self.labels = []
        self.parent = []  # union-find over skeleton ids
        self.cells = []

    def new_id(self, label):
        self.labels.append(label)
        self.parent.append(len(self.parent) - 0)
        self.parent[-1] = len(self.parent) - 1
        return len(self.parent) - 1

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, keep, drop):
        self.parent[self.find(drop)] = self.find(keep)

    def fill(self, bids, depth):
        params = self.params
        n = len(bids)
        if depth > params.n_max:
            raise ShortcutLabError("recursion deeper than the boundary length")
        node = DiagramNode(length=n, area=0)
        if n <= params.theta:
            self.cells.append(tuple(bids))
            node.cell = tuple(bids)
            node.area = 1
            return node
        walk = CycleInGraph(tuple(self.labels[b] for b in bids))
        pair = almost_isometric_violation(self.g, walk, params.xi, self.oracle)
        if pair is None:
            raise PropertyAViolated(
                f"cycle of length {n} in the filling range is {params.xi}-almost isometric",
                witness=walk,
            )
        i, j = pair
        fu, fv = walk.vertices[i], walk.vertices[j]
        geo = lex_least_geodesic(self.oracle, fu, fv)
        node.split = (i, j)
        node.chord_length = len(geo) - 1
        if len(geo) == 1:
            # zero-length chord: the two split vertices get identified
            self.union(bids[i], bids[j])
            keep = self.find(bids[i])
            child1 = [keep] + bids[i + 1 : j]
            child2 = [keep] + bids[j + 1 :] + bids[:i]
        else:
            interior = [self.new_id(x) for x in geo[1:-1]]
            child1 = bids[i : j + 1] + list(reversed(interior))
            child2 = [bids[j]] + bids[j + 1 :] + bids[:i] + [bids[i]] + interior
        a = self.fill(child1, depth + 1)
        b = self.fill(child2, depth + 1)
        node.children = [a, b]
        node.area = a.area + b.area
        return node


def build_disk_diagram(
    g: Graph,
    c: CycleInGraph,
    params: FillingParams,
    oracle: DistanceOracle | None = None,
    collect_tree: bool = True,
) -> DiskDiagram:
    """Fill a boundary cycle with cells of length at most theta.

    Raises CycleTooLong when |C| > n_max and PropertyAViolated when some
    intermediate cycle in the filling range turns out xi-almost isometric
    (the parameters do not fit the graph; the witness cycle is attached).
    """
    c.validate(g)
    if c.length > params.n_max:
        raise CycleTooLong(f"boundary of length {c.length} exceeds range {params.n_max}")
    if oracle is None:
        oracle = distances(g)
    b = _Builder(g, oracle, params)
    boundary = [b.new_id(v) for v in c.vertices]
    root = b.fill(boundary, 1)

    # resolve identifications and compact ids
    used = []
    remap = {}

    def resolve(x):
        r = b.find(x)
        if r not in remap:
            remap[r] = len(used)
            used.append(r)
        return remap[r]

    cells = [tuple(resolve(x) for x in walk) for walk in b.cells]
    boundary_ids = tuple(resolve(x) for x in boundary)
    labels = tuple(b.labels[r] for r in used)
    edges = set()
    for walk in cells:
        m = len(walk)
        for idx in range(m):
            u, v = walk[idx], walk[(idx + 1) % m]
            edges.add((u, v) if u < v else (v, u))
    skeleton = Graph(len(used), sorted(edges))
    diagram = DiskDiagram(skeleton, cells, boundary_ids, labels, root if collect_tree else None)
    if collect_tree:
        _annotate_tree(root, cells_iter=iter(cells), skeleton=skeleton)
    return diagram


def _annotate_tree(root, cells_iter, skeleton):
    """Attach to every node the diameter of its sub-diagram (the subgraph
    spanned by the cells below it)."""

    def visit(node):
        if node.cell is not None:
            walk = next(cells_iter)
            node.cell = walk
            m = len(walk)
            node._edges = {
                (walk[i], walk[(i + 1) % m]) if walk[i] < walk[(i + 1) % m]
                else (walk[(i + 1) % m], walk[i])
                for i in range(m)
            }
        else:
            es = set()
            for ch in node.children:
                visit(ch)
                es |= ch._edges
            node._edges = es
        node.diameter = _subgraph_diameter(node._edges)

    visit(root)


def _subgraph_diameter(edges):
    adj = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    best = 0
    for s in adj:
        dist = {s: 0}
        q = deque([s])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    q.append(y)
        best = max(best, max(dist.values()))
    return best


def iter_tree(root):
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(node.children)


@dataclass
class FillingProfileEntry:
    length: int
    count: int
    max_area: int
    max_diameter: int
    exp_bound_ok: bool
    poly_bound_ok: bool | None

    def to_json_obj(self):
        return {
            "length": self.length,
            "count": self.count,
            "max_area": self.max_area,
            "max_diameter": self.max_diameter,
            "area_le_2_pow_n": self.exp_bound_ok,
            "area_le_poly": self.poly_bound_ok,
        }


@dataclass
class FillingProfile:
    entries: list
    params: FillingParams
    poly_base: Fraction | None

    def to_json_obj(self):
        return {
            "theta": self.params.theta,
            "xi": f"{self.params.xi}",
            "poly_base": None if self.poly_base is None else f"{self.poly_base}",
            "entries": [e.to_json_obj() for e in self.entries],
        }


def poly_isoperimetric_base(xi: Fraction, big_l: int) -> Fraction:
    """b = 2L / ((L - 3) xi + L + 3); the strong-regime area bound is
    n ** log_b(2)."""
    xi = Fraction(xi)
    if big_l <= 3:
        raise ShortcutLabError("L must exceed 3")
    return Fraction(2 * big_l, 1) / ((big_l - 3) * xi + big_l + 3)


def area_within_poly_bound(area: int, n: int, base: Fraction) -> bool:
    """area <= n ** log_base(2), evaluated in floating point (report-level
    check; the margin at sane scales dwarfs float error)."""
    if area <= 1:
        return True
    if n <= 1:
        return False
    exponent = math.log(2) / math.log(float(base))
    return math.log(area) <= exponent * math.log(n) + 1e-9


def filling_profile(
    g: Graph,
    params: FillingParams,
    cycles,
    big_l: int | None = None,
) -> FillingProfile:
    """Fill each sampled cycle, recording max area and diameter per length
    and comparing areas against 2**n and (when L is supplied and
    theta >= L / (1 - xi)) against the polynomial bound."""
    base = None
    if big_l is not None:
        if Fraction(params.theta) < Fraction(big_l, 1) / (1 - params.xi):
            raise ShortcutLabError("need theta >= L / (1 - xi) for the polynomial regime")
        base = poly_isoperimetric_base(params.xi, big_l)
    oracle = distances(g)
    stats = {}
    for c in cycles:
        d = build_disk_diagram(g, c, params, oracle=oracle)
        n = c.length
        area = d.area
        diam = d.diameter()
        cur = stats.get(n)
        if cur is None:
            stats[n] = [1, area, diam]
        else:
            cur[0] += 1
            cur[1] = max(cur[1], area)
            cur[2] = max(cur[2], diam)
    entries = []
    for n in sorted(stats):
        count, max_area, max_diam = stats[n]
        exp_ok = max_area <= 2**n
        poly_ok = None if base is None else area_within_poly_bound(max_area, n, base)
        entries.append(FillingProfileEntry(n, count, max_area, max_diam, exp_ok, poly_ok))
    return FillingProfile(entries, params, base)
