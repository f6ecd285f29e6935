"""Exact shortest-path distances, stored doubled.

Every stored distance is twice the metric distance, so that quantities
living on edge midpoints (antipodes of odd cycles, subdivision points)
stay integral.  Predicates compare these doubled values with integer
cross-multiplication; no floats anywhere.
"""

from __future__ import annotations

from collections import deque

from .errors import DisconnectedGraph
from .graphs import Graph

_UNREACHED = -1


class DistanceOracle:
    """Doubled all-pairs distances over a connected graph, one lazy BFS row
    per source vertex."""

    __slots__ = ("graph", "_rows")

    def __init__(self, graph: Graph):
        self.graph = graph
        self._rows = {}
        if graph.vertex_count > 0 and not graph.is_connected():
            raise DisconnectedGraph("distance oracle requires a connected graph")

    def row(self, source):
        """Doubled distances from ``source`` to every vertex."""
        cached = self._rows.get(source)
        if cached is not None:
            return cached
        g = self.graph
        dist = [_UNREACHED] * g.vertex_count
        dist[source] = 0
        q = deque([source])
        while q:
            x = q.popleft()
            d = dist[x] + 2
            for y in g.neighbors(x):
                if dist[y] < 0:
                    dist[y] = d
                    q.append(y)
        self._rows[source] = dist
        return dist

    def doubled(self, u, v):
        """2 * d(u, v)."""
        return self.row(u)[v]

    def distance_pairs_table(self):
        """Force the full table; returns list of rows (doubled values)."""
        return [self.row(v) for v in range(self.graph.vertex_count)]

    def eccentricity_doubled(self, v):
        return max(self.row(v))

    def diameter_doubled(self):
        return max(self.eccentricity_doubled(v) for v in range(self.graph.vertex_count))


def distances(g: Graph) -> DistanceOracle:
    """Exact metric for a connected graph; raises DisconnectedGraph otherwise."""
    return DistanceOracle(g)


def bfs_doubled(g: Graph, source) -> list[int]:
    """Plain BFS reference used by cross-check tests; -1 for unreachable."""
    dist = [_UNREACHED] * g.vertex_count
    dist[source] = 0
    q = deque([source])
    while q:
        x = q.popleft()
        for y in g.neighbors(x):
            if dist[y] < 0:
                dist[y] = dist[x] + 2
                q.append(y)
    return dist


def lex_least_geodesic(oracle: DistanceOracle, start, goal) -> list[int]:
    """The lexicographically least geodesic from start to goal.

    Walks from ``start`` always taking the smallest-id neighbor that still
    decreases the distance to ``goal``; deterministic by construction.
    """
    to_goal = oracle.row(goal)
    path = [start]
    x = start
    while x != goal:
        d = to_goal[x]
        for y in oracle.graph.neighbors(x):
            if to_goal[y] == d - 2:
                path.append(y)
                x = y
                break
        else:
            raise AssertionError("BFS row inconsistent with adjacency")
    return path
