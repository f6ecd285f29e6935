"""Finite simple undirected graphs with dense vertex ids.

Vertices are the integers ``0 .. vertex_count - 1``.  Edges are unordered
pairs.  All metric computation in the library runs over this type.
"""

from __future__ import annotations

import json

from .errors import ShortcutLabError


class Graph:
    """Immutable simple graph.

    Edges are stored sorted, so edge indices (used e.g. to number
    subdivision midpoints) are deterministic.
    """

    __slots__ = ("vertex_count", "edges", "labels", "_adj", "_edge_index")

    def __init__(self, vertex_count, edges, labels=None):
        if vertex_count < 0:
            raise ShortcutLabError("vertex_count must be nonnegative")
        seen = set()
        norm = []
        for u, v in edges:
            if u == v:
                raise ShortcutLabError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ShortcutLabError(f"edge ({u},{v}) out of range")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ShortcutLabError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        norm.sort()
        self.vertex_count = vertex_count
        self.edges = tuple(norm)
        self.labels = dict(labels) if labels else {}
        adj = [[] for _ in range(vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(ns)) for ns in adj)
        self._edge_index = {e: i for i, e in enumerate(self.edges)}

    @property
    def edge_count(self):
        return len(self.edges)

    def neighbors(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    def has_edge(self, u, v):
        return ((u, v) if u < v else (v, u)) in self._edge_index

    def edge_id(self, u, v):
        """Index of the edge {u, v} in the sorted edge list."""
        return self._edge_index[(u, v) if u < v else (v, u)]

    def is_connected(self):
        if self.vertex_count == 0:
            return True
        seen = bytearray(self.vertex_count)
        seen[0] = 1
        stack = [0]
        count = 1
        while stack:
            x = stack.pop()
            for y in self._adj[x]:
                if not seen[y]:
                    seen[y] = 1
                    count += 1
                    stack.append(y)
        return count == self.vertex_count

    def relabeled(self, perm):
        """Graph with vertex i renamed perm[i] (perm a permutation list)."""
        edges = [(perm[u], perm[v]) for u, v in self.edges]
        labels = {perm[v]: s for v, s in self.labels.items()}
        return Graph(self.vertex_count, edges, labels)

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.vertex_count == other.vertex_count
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertex_count, self.edges))

    def __repr__(self):
        return f"Graph(vertex_count={self.vertex_count}, edges={len(self.edges)})"

    def to_json(self):
        obj = {"vertex_count": self.vertex_count, "edges": [list(e) for e in self.edges]}
        if self.labels:
            obj["labels"] = {str(v): s for v, s in self.labels.items()}
        return json.dumps(obj)

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text)
        labels = {int(k): v for k, v in obj.get("labels", {}).items()}
        return cls(obj["vertex_count"], [tuple(e) for e in obj["edges"]], labels)

    def to_dot(self, name="G"):
        lines = [f"graph {name} {{"]
        for v in range(self.vertex_count):
            label = self.labels.get(v)
            if label is not None:
                lines.append(f'  {v} [label="{label}"];')
            else:
                lines.append(f"  {v};")
        for u, v in self.edges:
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines)


def subdivide(g: Graph) -> Graph:
    """Insert one midpoint vertex on every edge.

    The midpoint of edge i (in sorted edge order) becomes vertex
    ``g.vertex_count + i``, so the numbering is deterministic.  Distances
    between original vertices exactly double.
    """
    n = g.vertex_count
    edges = []
    for i, (u, v) in enumerate(g.edges):
        m = n + i
        edges.append((u, m))
        edges.append((m, v))
    return Graph(n + len(g.edges), edges, g.labels)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ShortcutLabError("cycle graph needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n_edges: int) -> Graph:
    """Path with n_edges edges (n_edges + 1 vertices)."""
    if n_edges < 0:
        raise ShortcutLabError("path length must be nonnegative")
    return Graph(n_edges + 1, [(i, i + 1) for i in range(n_edges)])


def grid_graph(rows: int, cols: int) -> Graph:
    """rows x cols vertex grid (the product of two paths)."""
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def hypercube_graph(dim: int) -> Graph:
    n = 1 << dim
    edges = []
    for v in range(n):
        for b in range(dim):
            w = v ^ (1 << b)
            if w > v:
                edges.append((v, w))
    return Graph(n, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
