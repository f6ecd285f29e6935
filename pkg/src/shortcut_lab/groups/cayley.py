"""Cayley-ball generation with exact arithmetic and exact word metrics.

Balls are grown by breadth-first search from the identity, so the recorded
depth of an element is its true word length.  Distance queries reduce to a
depth lookup of x^-1 y and refuse (rather than approximate) when that
element lies outside the generated ball.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import BudgetExhausted, RadiusInsufficient, ShortcutLabError
from ..graphs import Graph
from . import bs12 as _bs


@dataclass(frozen=True)
class GroupSpec:
    """A marked group: free abelian with integer generating vectors, or
    BS(1,2) with generators given as words in {a, t}."""

    kind: str
    generators: tuple  # of (label, element payload)

    @classmethod
    def free_abelian(cls, vectors, labels=None):
        vecs = [tuple(int(c) for c in v) for v in vectors]
        if not vecs:
            raise ShortcutLabError("need at least one generator")
        rank = len(vecs[0])
        if any(len(v) != rank for v in vecs) or rank < 1:
            raise ShortcutLabError("generator vectors must share a positive rank")
        if labels is None:
            labels = [f"g{i}" for i in range(len(vecs))]
        return cls("zn", tuple(zip(labels, vecs)))

    @classmethod
    def bs12(cls, gen_words=("a", "t")):
        gens = []
        for w in gen_words:
            word = _bs.parse_word(w) if isinstance(w, str) else tuple(w)
            label = w if isinstance(w, str) else " ".join(word)
            el = _bs.evaluate_word(word)
            if el == _bs.IDENTITY:
                raise ShortcutLabError(f"generator {label!r} is trivial")
            gens.append((label, el))
        return cls("bs12", tuple(gens))

    @property
    def rank(self):
        if self.kind != "zn":
            raise ShortcutLabError("rank only applies to free abelian specs")
        return len(self.generators[0][1])

    def identity(self):
        return (0,) * self.rank if self.kind == "zn" else _bs.IDENTITY

    def multiply(self, x, y):
        if self.kind == "zn":
            return tuple(a + b for a, b in zip(x, y))
        return _bs.bs12_multiply(x, y)

    def inverse(self, x):
        if self.kind == "zn":
            return tuple(-a for a in x)
        return _bs.bs12_inverse(x)

    def sort_key(self, x):
        return x if self.kind == "zn" else x.key()

    def moves(self):
        """Generator actions closed under formal inverse, deduplicated."""
        out = []
        seen = set()
        for label, g in self.generators:
            for lbl, el in ((label, g), (label + "-", self.inverse(g))):
                k = self.sort_key(el)
                if k not in seen:
                    seen.add(k)
                    out.append((lbl, el))
        return out

    def coords(self, x):
        if self.kind == "zn":
            return list(x)
        return [x.num, x.exp, x.z]


@dataclass
class CayleyBall:
    spec: GroupSpec
    radius: int
    elements: tuple
    index: dict
    depth: tuple
    graph: Graph | None = None
    edge_labels: dict = field(default_factory=dict)

    def depth_of(self, x):
        i = self.index.get(self.spec.sort_key(x))
        return None if i is None else self.depth[i]

    def element_id(self, x):
        return self.index[self.spec.sort_key(x)]

    def to_json_obj(self):
        obj = {
            "group": self.spec.kind,
            "generators": [label for label, _ in self.spec.generators],
            "radius": self.radius,
            "elements": [self.spec.coords(x) for x in self.elements],
            "depths": list(self.depth),
        }
        if self.graph is not None:
            obj["graph"] = json.loads(self.graph.to_json())
            obj["edge_labels"] = {f"{u},{v}": lbl for (u, v), lbl in self.edge_labels.items()}
        return obj


def cayley_ball(
    spec: GroupSpec,
    radius: int,
    max_elements: int | None = None,
    build_graph: bool = True,
) -> CayleyBall:
    """BFS ball of the given radius; depths are exact word lengths.

    Levels are sorted by canonical coordinates before indexing, so element
    ids are deterministic.  Exceeding ``max_elements`` raises
    BudgetExhausted carrying the last completed radius.
    """
    if radius < 0:
        raise ShortcutLabError("radius must be nonnegative")
    moves = spec.moves()
    ident = spec.identity()
    elements = [ident]
    index = {spec.sort_key(ident): 0}
    depth = [0]
    frontier = [ident]
    for r in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for _, g in moves:
                y = spec.multiply(x, g)
                k = spec.sort_key(y)
                if k not in index:
                    index[k] = -1  # reserved; renumbered after sorting
                    nxt.append(y)
        nxt.sort(key=spec.sort_key)
        for y in nxt:
            index[spec.sort_key(y)] = len(elements)
            elements.append(y)
            depth.append(r)
        if max_elements is not None and len(elements) > max_elements:
            raise BudgetExhausted(
                f"ball exceeded {max_elements} elements at radius {r}",
                partial={"completed_radius": r - 1},
            )
        frontier = nxt
    graph = None
    edge_labels = {}
    if build_graph:
        edges = set()
        for i, x in enumerate(elements):
            for lbl, g in moves:
                k = spec.sort_key(spec.multiply(x, g))
                j = index.get(k)
                if j is not None and j != i:
                    e = (i, j) if i < j else (j, i)
                    if e not in edges:
                        edges.add(e)
                        edge_labels[e] = lbl
        graph = Graph(len(elements), sorted(edges))
    return CayleyBall(spec, radius, tuple(elements), index, tuple(depth), graph, edge_labels)


def group_distance(ball: CayleyBall, x, y) -> int:
    """Word metric d(x, y) = |x^-1 y|, exact by left invariance.

    Raises RadiusInsufficient when x^-1 y falls outside the ball; the
    caller must regenerate with a larger radius rather than accept an
    overestimate.
    """
    delta = ball.spec.multiply(ball.spec.inverse(x), y)
    d = ball.depth_of(delta)
    if d is None:
        raise RadiusInsufficient(
            f"element at distance > {ball.radius} from the identity", required=delta
        )
    return d
