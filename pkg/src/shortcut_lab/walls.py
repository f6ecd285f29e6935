"""Wall cycles: edge colorings with even color multiplicities.

These abstract the hyperplane-crossing pattern of a cycle in a cube
complex.  The dimension of a wall cycle is the largest set of pairwise
crossing walls, and the wall-crossing distance counts walls appearing an
odd number of times along a segment.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .analysis import ProductGraph
from .cycles import CycleInGraph
from .errors import NotCubical, ShortcutLabError, UnknownWall
from .graphs import Graph
from .metrics import distances


@dataclass(frozen=True)
class WallCycle:
    """Cycle of length n with edge i = {i, i+1 mod n} colored coloring[i].

    Every wall id must appear an even number of times; consequently the
    length is always even.
    """

    coloring: tuple

    def __post_init__(self):
        object.__setattr__(self, "coloring", tuple(self.coloring))
        counts = {}
        for w in self.coloring:
            counts[w] = counts.get(w, 0) + 1
        for w, k in counts.items():
            if k % 2:
                raise ShortcutLabError(f"wall {w!r} has odd multiplicity {k}")

    @property
    def length(self):
        return len(self.coloring)

    @property
    def walls(self):
        return sorted(set(self.coloring))

    def positions(self, w):
        return [i for i, x in enumerate(self.coloring) if x == w]

    def multiplicity(self, w):
        return sum(1 for x in self.coloring if x == w)

    def to_json_obj(self):
        return {"length": self.length, "coloring": list(self.coloring)}


def _segment_count(prefix, n, p, q):
    """Occurrences inside the inclusive forward edge segment p..q."""
    if p <= q:
        return prefix[q + 1] - prefix[p]
    return (prefix[n] - prefix[p]) + prefix[q + 1]


def walls_cross(wc: WallCycle, w1, w2) -> bool:
    """True iff some segment begins and ends with one of the walls and
    contains an odd number of edges of the other."""
    if w1 == w2:
        raise UnknownWall("crossing is defined for distinct walls")
    cols = wc.coloring
    n = len(cols)
    present = set(cols)
    if w1 not in present or w2 not in present:
        raise UnknownWall(f"wall not present in coloring")
    for ends, inner in ((w1, w2), (w2, w1)):
        pos = [i for i, x in enumerate(cols) if x == ends]
        prefix = [0] * (n + 1)
        for i, x in enumerate(cols):
            prefix[i + 1] = prefix[i] + (1 if x == inner else 0)
        for p in pos:
            for q in pos:
                if p != q and _segment_count(prefix, n, p, q) % 2:
                    return True
    return False


@dataclass
class CrossingGraph:
    walls: tuple
    edges: set

    def degree(self, w):
        return sum(1 for e in self.edges if w in e)

    @property
    def edge_count(self):
        return len(self.edges)


def crossing_graph(wc: WallCycle) -> CrossingGraph:
    ws = wc.walls
    edges = set()
    for i, w1 in enumerate(ws):
        for w2 in ws[i + 1 :]:
            if walls_cross(wc, w1, w2):
                edges.add((w1, w2))
    return CrossingGraph(tuple(ws), edges)


def _max_clique_size(n_verts, adj_masks):
    best = 0

    def extend(size, cand):
        nonlocal best
        if size > best:
            best = size
        while cand:
            if size + cand.bit_count() <= best:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            extend(size + 1, cand & adj_masks[v])

    extend(0, (1 << n_verts) - 1)
    return best


def dimension(wc: WallCycle) -> int:
    """max(1, size of the largest set of pairwise crossing walls)."""
    cg = crossing_graph(wc)
    idx = {w: i for i, w in enumerate(cg.walls)}
    masks = [0] * len(cg.walls)
    for w1, w2 in cg.edges:
        masks[idx[w1]] |= 1 << idx[w2]
        masks[idx[w2]] |= 1 << idx[w1]
    return max(1, _max_clique_size(len(cg.walls), masks))


def wall_crossing_distance(wc: WallCycle, u: int, v: int) -> int:
    """Number of walls crossed by a segment from vertex u to vertex v (the
    choice of segment does not matter)."""
    n = wc.length
    if not (0 <= u < n and 0 <= v < n):
        raise ShortcutLabError("vertex out of range")
    if u == v:
        return 0
    if u > v:
        u, v = v, u
    parity = {}
    for i in range(u, v):
        w = wc.coloring[i]
        parity[w] = parity.get(w, 0) ^ 1
    return sum(parity.values())


def wall_cycle_from_product_cycle(
    p: ProductGraph, c: CycleInGraph, hyperplanes=None
) -> WallCycle:
    """Color each edge of a product-graph cycle by its hyperplane.

    For a product of two trees the hyperplane of an edge is the factor
    edge it projects to.  For other hosts a ``hyperplanes`` map from
    (kind, factor edge) to wall id must be supplied; otherwise NotCubical.
    """
    c.validate(p.graph)
    if hyperplanes is None:
        if not (_is_tree(p.left) and _is_tree(p.right)):
            raise NotCubical(
                "factors are not trees and no hyperplane map was supplied"
            )
        hyperplanes = lambda kind, e: (kind, e)
    elif isinstance(hyperplanes, dict):
        table = hyperplanes
        hyperplanes = lambda kind, e: table[(kind, e)]
    names = []
    for i, v in enumerate(c.vertices):
        w = c.vertices[(i + 1) % c.length]
        kind, fe = p.edge_projection(v, w)
        names.append(hyperplanes(kind, fe))
    ids = {}
    for nm in sorted(set(names)):
        ids[nm] = len(ids)
    return WallCycle(tuple(ids[nm] for nm in names))


def _is_tree(g: Graph) -> bool:
    return g.edge_count == g.vertex_count - 1 and g.is_connected()


def wallcycle_premise_xi(dim: int) -> Fraction:
    return Fraction(5 * dim - 1, 5 * dim)


def wallcycle_length_bound(dim: int) -> Fraction:
    return Fraction(50 * dim * dim, 5 * dim - 1)


def _premise_holds(cols, n, dim):
    """Every antipodal vertex pair has d_alpha >= ((5d-1)/5d)(n/2), via a
    sliding parity window over the n/2 antipodal pairs."""
    h = n // 2
    need_num = (5 * dim - 1) * h  # compare 5d * d_alpha >= (5d-1) * h
    five_d = 5 * dim
    parity = {}
    odd = 0
    for i in range(h):
        w = cols[i]
        if parity.get(w, 0):
            parity[w] = 0
            odd -= 1
        else:
            parity[w] = 1
            odd += 1
    for u in range(h):
        if five_d * odd < need_num:
            return False
        out_w = cols[u]
        in_w = cols[u + h]
        if out_w != in_w:
            if parity.get(out_w, 0):
                parity[out_w] = 0
                odd -= 1
            else:
                parity[out_w] = 1
                odd += 1
            if parity.get(in_w, 0):
                parity[in_w] = 0
                odd -= 1
            else:
                parity[in_w] = 1
                odd += 1
    return True


def _canonical_coloring(cols):
    """Least relabeled rotation/reflection; wall ids renamed in order of
    first appearance so the form is independent of the original names."""
    n = len(cols)
    best = None
    for seq in (cols, tuple(reversed(cols))):
        for r in range(n):
            rot = seq[r:] + seq[:r]
            names = {}
            renamed = []
            for x in rot:
                if x not in names:
                    names[x] = len(names)
                renamed.append(names[x])
            renamed = tuple(renamed)
            if best is None or renamed < best:
                best = renamed
    return best


def check_lemma_consequences(wc: WallCycle, xi: Fraction):
    """Structural facts that must hold when the antipodal premise holds
    with the given xi; returns a list of human-readable failures."""
    failures = []
    n = wc.length
    h = n // 2
    cols = wc.coloring
    walls = wc.walls
    cg = crossing_graph(wc)
    mult2 = [w for w in walls if wc.multiplicity(w) == 2]
    # walls of multiplicity > 2 are rare under the premise
    excess = len(walls) - len(mult2)
    if Fraction(excess) > (1 - xi) / xi * len(walls):
        failures.append(f"too many walls of multiplicity > 2: {excess} of {len(walls)}")
    # contribution count of a multiplicity-2 wall equals diam X_w
    for w in mult2:
        p1, p2 = wc.positions(w)
        diam_xw = min(p2 - p1, n - (p2 - p1))
        contrib = 0
        for u in range(h):
            cnt = _segment_count_window(cols, u, h, w)
            if cnt % 2:
                contrib += 1
        if contrib != diam_xw:
            failures.append(f"wall {w}: contributes to {contrib} pairs, diam is {diam_xw}")
    # every wall crosses at least diam X_w - 1 - (1-xi) n/2 others
    for w in walls:
        pos = wc.positions(w)
        diam_xw = max(
            min(q - p, n - (q - p)) for p in pos for q in pos if q > p
        )
        lower = Fraction(diam_xw - 1) - (1 - xi) * Fraction(n, 2)
        if Fraction(cg.degree(w)) < lower:
            failures.append(f"wall {w}: degree {cg.degree(w)} below {lower}")
    return failures


def _segment_count_window(cols, start, length, w):
    n = len(cols)
    return sum(1 for i in range(start, start + length) if cols[i % n] == w)


def turan_inequality_holds(cg: CrossingGraph, d: int) -> bool:
    """edge count <= ((d-1)/d) |W|^2 / 2 for crossing graphs with clique
    number at most d."""
    w = len(cg.walls)
    return 2 * d * cg.edge_count <= (d - 1) * w * w


@dataclass
class WallTheoremReport:
    dim: int
    xi: Fraction
    length_bound: Fraction
    strategy: str
    max_len: int
    examined: int
    premise_satisfying: int
    max_satisfying_length: int
    witnesses: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    lemma_failures: list = field(default_factory=list)
    turan_failures: int = 0
    complete: bool = True

    @property
    def passed(self):
        return not self.violations and not self.lemma_failures and self.turan_failures == 0

    def to_json_obj(self):
        return {
            "dim": self.dim,
            "xi": f"{self.xi}",
            "length_bound": f"{self.length_bound}",
            "strategy": self.strategy,
            "max_len": self.max_len,
            "examined": self.examined,
            "premise_satisfying": self.premise_satisfying,
            "max_satisfying_length": self.max_satisfying_length,
            "witnesses": [list(w) for w in self.witnesses],
            "violations": [list(w) for w in self.violations],
            "lemma_failures": self.lemma_failures,
            "turan_failures": self.turan_failures,
            "complete": self.complete,
        }


def _iter_perfect_matchings(n):
    """All perfect matchings of positions 0..n-1, as tuples of pairs."""
    positions = list(range(n))
    matching = []

    def rec(free):
        if not free:
            yield tuple(matching)
            return
        a = free[0]
        for idx in range(1, len(free)):
            b = free[idx]
            matching.append((a, b))
            yield from rec(free[1:idx] + free[idx + 1 :])
            matching.pop()

    yield from rec(positions)


def _coloring_from_matching(n, matching):
    cols = [0] * n
    for wall, (a, b) in enumerate(matching):
        cols[a] = wall
        cols[b] = wall
    return tuple(cols)


def _process_candidate(cols, dim, report, seen_witnesses, check_lemmas=True):
    n = len(cols)
    report.examined += 1
    if not _premise_holds(cols, n, dim):
        return
    wc = WallCycle(cols)
    if dimension(wc) > dim:
        return
    report.premise_satisfying += 1
    if n > report.max_satisfying_length:
        report.max_satisfying_length = n
    canon = _canonical_coloring(cols)
    if canon not in seen_witnesses:
        seen_witnesses.add(canon)
        if len(report.witnesses) < 20:
            report.witnesses.append(canon)
    if Fraction(n) > report.length_bound:
        report.violations.append(canon)
    if check_lemmas:
        report.lemma_failures.extend(check_lemma_consequences(wc, report.xi))
        cg = crossing_graph(wc)
        if not turan_inequality_holds(cg, dim):
            report.turan_failures += 1


def verify_wallcycle_theorem(
    dim: int,
    max_len: int,
    strategy: str = "exhaustive_pairs",
    seed: int = 0,
    samples: int = 1_000_000,
    lengths=None,
) -> WallTheoremReport:
    """Search for wall cycles of dimension <= dim satisfying the antipodal
    premise and report the lengths observed.

    A premise-satisfying wall cycle longer than 50 d^2 / (5d - 1) would be
    a counterexample; none must ever be found.  The exhaustive strategy
    enumerates all perfect pairings of edge positions (walls of
    multiplicity exactly 2); the random strategy samples colorings with
    general even multiplicities.
    """
    if dim < 1:
        raise ShortcutLabError("dimension must be at least 1")
    xi = wallcycle_premise_xi(dim)
    report = WallTheoremReport(
        dim=dim,
        xi=xi,
        length_bound=wallcycle_length_bound(dim),
        strategy=strategy,
        max_len=max_len,
        examined=0,
        premise_satisfying=0,
        max_satisfying_length=0,
    )
    seen = set()
    if lengths is None:
        lengths = [n for n in range(4, max_len + 1) if n % 2 == 0]
    if strategy == "exhaustive_pairs":
        for n in lengths:
            for matching in _iter_perfect_matchings(n):
                cols = _coloring_from_matching(n, matching)
                _process_candidate(cols, dim, report, seen)
    elif strategy == "random":
        rng = random.Random(seed)
        for _ in range(samples):
            n = rng.choice(lengths)
            cols = _random_even_coloring(rng, n)
            _process_candidate(cols, dim, report, seen)
        report.complete = False
    else:
        raise ShortcutLabError(f"unknown strategy {strategy!r}")
    return report


def _random_even_coloring(rng, n):
    """Random wall cycle coloring: a uniform random perfect matching with a
    few random class merges, so multiplicities 2, 4, ... all occur."""
    positions = list(range(n))
    rng.shuffle(positions)
    cols = [0] * n
    classes = n // 2
    for wall in range(classes):
        cols[positions[2 * wall]] = wall
        cols[positions[2 * wall + 1]] = wall
    while classes > 1 and rng.random() < 0.3:
        a = rng.randrange(classes)
        b = rng.randrange(classes)
        if a == b:
            continue
        lo, hi = min(a, b), max(a, b)
        last = classes - 1
        for i in range(n):
            if cols[i] == hi:
                cols[i] = lo
        if hi != last:
            for i in range(n):
                if cols[i] == last:
                    cols[i] = hi
        classes -= 1
    return tuple(cols)


def verify_homcoloring_identity(p: ProductGraph, c: CycleInGraph) -> bool:
    """d_alpha(u, v) equals the host distance d(f(u), f(v)) for every
    vertex pair, when the host is a product of trees."""
    wc = wall_cycle_from_product_cycle(p, c)
    oracle = distances(p.graph)
    n = c.length
    masks = _wall_parity_masks(wc)
    for i in range(n):
        row = oracle.row(c.vertices[i])
        for j in range(i + 1, n):
            if (masks[i] ^ masks[j]).bit_count() * 2 != row[c.vertices[j]]:
                return False
    return True


def _wall_parity_masks(wc: WallCycle):
    """Bitmask per vertex: wall parities of the prefix segment from vertex
    0, so d_alpha(u, v) = popcount(mask[u] xor mask[v])."""
    ids = {w: i for i, w in enumerate(wc.walls)}
    masks = [0] * (wc.length + 1)
    m = 0
    for i, w in enumerate(wc.coloring):
        m ^= 1 << ids[w]
        masks[i + 1] = m
    return masks[: wc.length + 1]
