"""Ball-based verifiers for the geodesic and isometric-cycle structure of
BS(1,2) Cayley graphs.

All distance facts come from exact BFS depth tables; nothing is ever
approximated.  Cycle searches are based at the identity, which loses no
generality on a Cayley graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ..errors import RadiusInsufficient, ShortcutLabError
from .bs12 import (
    IDENTITY,
    bs12_inverse,
    bs12_multiply,
    evaluate_word,
    token_element,
)
from .cayley import GroupSpec


@dataclass
class DepthTable:
    """Word-length table: sort key of every element within radius."""

    spec: GroupSpec
    radius: int
    depths: dict

    def depth_of(self, x):
        return self.depths.get(self.spec.sort_key(x))


def depth_table(spec: GroupSpec, radius: int) -> DepthTable:
    """Lean BFS ball: only the depth map, no element objects or graph."""
    moves = [g for _, g in spec.moves()]
    ident = spec.identity()
    depths = {spec.sort_key(ident): 0}
    frontier = [ident]
    for r in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for g in moves:
                y = spec.multiply(x, g)
                key = spec.sort_key(y)
                if key not in depths:
                    depths[key] = r
                    nxt.append(y)
        frontier = nxt
    return DepthTable(spec, radius, depths)


_STANDARD = ("a", "t")
_AUGMENTED = ("a", "t", "tau")


# ---------------------------------------------------------------------------
# isometric cycles in Cay(BS(1,2), {a, t})


@dataclass
class BssReport:
    max_cycle_len: int
    radius: int
    counts: dict = field(default_factory=dict)  # length -> number of isometric cycles
    short_witnesses: list = field(default_factory=list)  # words, lengths <= 5
    violations: list = field(default_factory=list)  # words, lengths > 5
    structure_ok: bool = True
    complete: bool = True

    @property
    def passed(self):
        return self.complete and not self.violations

    def to_json_obj(self):
        return {
            "max_cycle_len": self.max_cycle_len,
            "radius": self.radius,
            "counts": {str(k): v for k, v in self.counts.items()},
            "short_witnesses": [list(w) for w in self.short_witnesses],
            "violations": [list(w) for w in self.violations],
            "structure_ok": self.structure_ok,
            "complete": self.complete,
        }


def _canonical_key_cycle(keys):
    n = len(keys)
    best = None
    for seq in (tuple(keys), tuple(reversed(keys))):
        for r in range(n):
            rot = seq[r:] + seq[:r]
            if best is None or rot < best:
                best = rot
    return best


def verify_bss(max_cycle_len: int, radius: int | None = None) -> BssReport:
    """Exhaustively search isometric cycles through the identity in the
    {a, t} Cayley graph, lengths 3..max_cycle_len.

    Isometric cycles preserve all vertex-pair distances, so a partial path
    survives only while every new vertex sits at exactly the right word
    distance from every earlier one.  Lengths above 5 are counterexample
    reports and must stay empty; any found are also checked against the
    two-arch structural decomposition.
    """
    if radius is None:
        radius = max_cycle_len
    if radius < max_cycle_len:
        raise ShortcutLabError("need radius >= max_cycle_len for exact pair distances")
    spec = GroupSpec.bs12(_STANDARD)
    table = depth_table(spec, radius)
    depths = table.depths
    moves = spec.moves()
    report = BssReport(max_cycle_len, radius)
    for n in range(3, max_cycle_len + 1):
        found = {}
        elems = [IDENTITY]
        invs = [IDENTITY]
        letters = []

        def extend(i):
            # place v_i; elems holds v_0..v_{i-1}
            for lbl, g in moves:
                y = bs12_multiply(elems[i - 1], g)
                ok = True
                for j in range(i):
                    want = min(i - j, n - (i - j))
                    d = depths.get(bs12_multiply(invs[j], y).key())
                    if d != want:
                        ok = False
                        break
                if not ok:
                    continue
                if i == n - 1:
                    # closure edge v_{n-1} -> v_0 = identity has length 1,
                    # already enforced by the pair (0, n-1) check
                    word = tuple(letters) + (lbl, _closing_letter(y, moves))
                    key = _canonical_key_cycle([e.key() for e in elems] + [y.key()])
                    if key not in found:
                        found[key] = word
                else:
                    elems.append(y)
                    invs.append(bs12_inverse(y))
                    letters.append(lbl)
                    extend(i + 1)
                    elems.pop()
                    invs.pop()
                    letters.pop()

        extend(1)
        if found:
            report.counts[n] = len(found)
            for word in found.values():
                if n <= 5:
                    if len(report.short_witnesses) < 20:
                        report.short_witnesses.append(word)
                else:
                    report.violations.append(word)
                    if not _isomcycles_structure(word, depths):
                        report.structure_ok = False
    return report


def _closing_letter(last, moves):
    for lbl, g in moves:
        if bs12_multiply(last, g) == IDENTITY:
            return lbl
    raise AssertionError("cycle does not close by a generator")


def _isomcycles_structure(word, depths):
    """Whether some rotation splits as a^e1 w1 a^e2 w2 with each w_i a
    geodesic from t to t^-1 evaluating to an even power of a, and
    |k_1 + k_2| <= 1."""
    n = len(word)
    a_positions = [i for i, tok in enumerate(word) if tok in ("a", "a-")]
    for i in a_positions:
        for j in a_positions:
            if i == j:
                continue
            w1 = [word[(i + 1 + s) % n] for s in range((j - i - 1) % n)]
            w2 = [word[(j + 1 + s) % n] for s in range((i - j - 1) % n)]
            if _arch_ok(w1, depths) and _arch_ok(w2, depths):
                k1 = _even_a_power(w1)
                k2 = _even_a_power(w2)
                if k1 is not None and k2 is not None and abs(k1 + k2) <= 1:
                    return True
    return False


def _arch_ok(word, depths):
    if not word or word[0] != "t" or word[-1] != "t-":
        return False
    el = evaluate_word(tuple(word))
    d = depths.get(el.key())
    return d is not None and d == len(word)


def _even_a_power(word):
    el = evaluate_word(tuple(word))
    if el.z != 0 or el.exp > 0:
        return None
    val = el.num * (1 << -el.exp)
    return val // 2 if val % 2 == 0 else None


# ---------------------------------------------------------------------------
# the unbounded isometric cycles of the {a, t, tau} Cayley graph


@dataclass
class AttaugcEntry:
    k: int
    length: int
    isometric: bool
    theta_lower_bound: int


@dataclass
class AttaugcReport:
    entries: list = field(default_factory=list)
    radius: int = 0

    @property
    def passed(self):
        return all(e.isometric for e in self.entries)

    def to_json_obj(self):
        return {
            "radius": self.radius,
            "entries": [
                {
                    "k": e.k,
                    "length": e.length,
                    "isometric": e.isometric,
                    "theta_lower_bound": e.theta_lower_bound,
                }
                for e in self.entries
            ],
        }


def attaugc_word(k: int) -> tuple:
    """a tau^k a tau^-k a^-1 tau^k a^-1 tau^-k, of length 4k + 4."""
    if k < 1:
        raise ShortcutLabError("k must be at least 1")
    return (
        ("a",)
        + ("tau",) * k
        + ("a",)
        + ("tau-",) * k
        + ("a-",)
        + ("tau",) * k
        + ("a-",)
        + ("tau-",) * k
    )


def verify_attaugc(k_values=(1, 2), table: DepthTable | None = None) -> AttaugcReport:
    """Trace the standard unbounded isometric cycles in the {a, t, tau}
    graph and confirm isometricity by exact pair distances."""
    k_values = sorted(k_values)
    need = 2 * (2 * max(k_values) + 2)
    if table is None:
        table = depth_table(GroupSpec.bs12(_AUGMENTED), need)
    if table.radius < need:
        raise ShortcutLabError(f"depth table radius {table.radius} below required {need}")
    report = AttaugcReport(radius=table.radius)
    for k in k_values:
        word = attaugc_word(k)
        n = len(word)
        verts = [IDENTITY]
        for tok in word[:-1]:
            verts.append(bs12_multiply(verts[-1], token_element(tok)))
        closes = bs12_multiply(verts[-1], token_element(word[-1])) == IDENTITY
        iso = closes and _cycle_is_isometric(verts, table)
        report.entries.append(AttaugcEntry(k, n, iso, n))
    return report


def _cycle_is_isometric(verts, table):
    n = len(verts)
    invs = [bs12_inverse(v) for v in verts]
    for i in range(n):
        for j in range(i + 1, n):
            want = min(j - i, n - (j - i))
            if group_distance_table(table, invs[i], verts[j]) != want:
                return False
    return True


def group_distance_table(table: DepthTable, x_inv, y) -> int:
    d = table.depth_of(bs12_multiply(x_inv, y))
    if d is None:
        raise RadiusInsufficient("pair distance exceeds table radius")
    return d


@dataclass
class AttaugeosEntry:
    k: int
    ell: int
    sign: int
    length: int
    distance: int

    @property
    def geodesic(self):
        return self.distance == self.length


@dataclass
class AttaugeosReport:
    entries: list = field(default_factory=list)
    radius: int = 0

    @property
    def passed(self):
        return all(e.geodesic for e in self.entries)

    def to_json_obj(self):
        return {
            "radius": self.radius,
            "entries": [
                {
                    "k": e.k,
                    "ell": e.ell,
                    "sign": e.sign,
                    "length": e.length,
                    "distance": e.distance,
                    "geodesic": e.geodesic,
                }
                for e in self.entries
            ],
        }


def attaugeos_word(k: int, ell: int, sign: int) -> tuple:
    """tau^ell a tau^-k a^(+-1) tau^(k-ell), of length 2k + 2."""
    if k < 2 or not 0 <= ell <= k or sign not in (1, -1):
        raise ShortcutLabError("need k >= 2, 0 <= ell <= k, sign +-1")
    return (
        ("tau",) * ell
        + ("a",)
        + ("tau-",) * k
        + ("a" if sign == 1 else "a-",)
        + ("tau",) * (k - ell)
    )


def verify_attaugeos(k_values=(2, 3, 4, 5), table: DepthTable | None = None) -> AttaugeosReport:
    """Confirm by depth lookup that each spelled word realizes the word
    metric exactly (distance equals word length)."""
    k_values = sorted(k_values)
    need = 2 * max(k_values) + 2
    if table is None:
        table = depth_table(GroupSpec.bs12(_AUGMENTED), need)
    if table.radius < need:
        raise ShortcutLabError(f"depth table radius {table.radius} below required {need}")
    report = AttaugeosReport(radius=table.radius)
    for k in k_values:
        for ell in range(k + 1):
            for sign in (1, -1):
                word = attaugeos_word(k, ell, sign)
                end = evaluate_word(word)
                d = table.depth_of(end)
                if d is None:
                    raise RadiusInsufficient("endpoint outside depth table")
                report.entries.append(AttaugeosEntry(k, ell, sign, len(word), d))
    return report


# ---------------------------------------------------------------------------
# geodesic-word structure in Cay(BS(1,2), {a, t})

_A, _AI, _T, _TI = 1, -1, 2, -2

_FORBIDDEN = (
    (_T, _A, _TI),
    (_T, _AI, _TI),
    (_TI, _A, _A),
    (_TI, _AI, _AI),
    (_A, _A, _T),
    (_AI, _AI, _T),
    (_A, _TI, _AI),
    (_AI, _TI, _A),
)


@dataclass
class GeodesicLemmasReport:
    radius: int
    elements: int = 0
    geodesic_words: int = 0
    drift_cases: dict = field(default_factory=lambda: {"low": 0, "mid": 0, "high": 0})
    failures: list = field(default_factory=list)
    complete: bool = True

    @property
    def passed(self):
        return self.complete and not self.failures

    def to_json_obj(self):
        return {
            "radius": self.radius,
            "elements": self.elements,
            "geodesic_words": self.geodesic_words,
            "drift_cases": dict(self.drift_cases),
            "failures": self.failures[:50],
            "complete": self.complete,
        }


def _letter_height(letter):
    return 1 if letter == _T else (-1 if letter == _TI else 0)


def verify_geodesic_lemmas(radius: int = 8, word_cap: int = 10_000_000) -> GeodesicLemmasReport:
    """Enumerate every geodesic word to every element of the {a, t} ball
    via the BFS parent DAG and check:

    (i)   no geodesic contains t a^(+-1) t^-1, t^-1 a^(+-2), a^(+-2) t, or
          a^e t^-1 a^-e;
    (ii)  geodesics to t^-h a^k split as ascending then descending and
          never dip below height -h;
    (iii) the first-letter trichotomy at thresholds (2/3) 2^h, (5/6) 2^h;
    (iv)  geodesics to a^k split as x a^l y with matching sign and
          -(2/3) 2^h < |k| - 2^h |l| < (5/3) 2^h.
    """
    spec = GroupSpec.bs12(_STANDARD)
    moves = [
        (_A, token_element("a")),
        (_AI, token_element("a-")),
        (_T, token_element("t")),
        (_TI, token_element("t-")),
    ]
    ident = IDENTITY
    index = {ident.key(): 0}
    elements = [ident]
    depth = [0]
    frontier = [ident]
    for r in range(1, radius + 1):
        nxt = []
        for x in frontier:
            for _, g in moves:
                y = bs12_multiply(x, g)
                if y.key() not in index:
                    index[y.key()] = len(elements)
                    elements.append(y)
                    depth.append(r)
                    nxt.append(y)
        frontier = nxt
    parents = [[] for _ in elements]
    for i, x in enumerate(elements):
        if depth[i] == 0:
            continue
        for letter, g in moves:
            p = bs12_multiply(x, bs12_inverse(g))
            j = index.get(p.key())
            if j is not None and depth[j] == depth[i] - 1:
                parents[i].append((j, letter))

    report = GeodesicLemmasReport(radius=radius, elements=len(elements))
    budget = [word_cap]

    def geodesics(i):
        if depth[i] == 0:
            yield ()
            return
        for j, letter in parents[i]:
            for w in geodesics(j):
                yield w + (letter,)

    for i, x in enumerate(elements):
        if i == 0:
            continue
        num, exp, z = x.key()
        h = -z
        is_tha = z <= 0 and exp <= h  # x = t^-h a^k
        k_abs = abs(num) << (h - exp) if is_tha and num != 0 else 0
        eps = 1 if num > 0 else (-1 if num < 0 else 0)
        drift = is_tha and h >= 1 and k_abs <= (1 << h)
        is_ak = z == 0 and exp <= 0 and num != 0
        first_letters = set()
        for w in geodesics(i):
            report.geodesic_words += 1
            budget[0] -= 1
            if budget[0] < 0:
                report.complete = False
                report.failures.append("word cap exhausted")
                return report
            _check_forbidden(w, x, report)
            if is_tha:
                _check_descent(w, h, x, report)
            if drift:
                first_letters.add(w[0])
            if is_ak:
                _check_akgeos(w, num * (1 << -exp), report)
        if drift:
            _check_drift(first_letters, h, k_abs, eps, x, report)
    return report


def _check_forbidden(w, x, report):
    for i in range(len(w) - 2):
        tri = w[i : i + 3]
        if tri in _FORBIDDEN:
            report.failures.append(f"forbidden pattern {tri} in geodesic for {x.key()}")
            return


def _check_descent(w, h, x, report):
    height = 0
    seen_ti = False
    for letter in w:
        if letter == _T and seen_ti:
            report.failures.append(f"not ascending-descending for {x.key()}: {w}")
            return
        if letter == _TI:
            seen_ti = True
        height += _letter_height(letter)
        if height < -h:
            report.failures.append(f"prefix below -{h} for {x.key()}: {w}")
            return


def _check_drift(first_letters, h, k, eps, x, report):
    pow_h = 1 << h
    a_eps = _A if eps >= 0 else _AI
    if 3 * k < 2 * pow_h:
        report.drift_cases["low"] += 1
        if first_letters != {_TI}:
            report.failures.append(f"drift low case fails for {x.key()}: {first_letters}")
    elif 6 * k > 5 * pow_h:
        report.drift_cases["high"] += 1
        if first_letters != {a_eps}:
            report.failures.append(f"drift high case fails for {x.key()}: {first_letters}")
    elif 3 * k > 2 * pow_h and 6 * k < 5 * pow_h:
        report.drift_cases["mid"] += 1
        if first_letters != {_TI, a_eps}:
            report.failures.append(f"drift mid case fails for {x.key()}: {first_letters}")
    else:
        report.failures.append(f"drift threshold hit exactly for {x.key()} (h={h}, k={k})")


def _check_akgeos(w, k, report):
    ups = sum(1 for l in w if l == _T)
    downs = sum(1 for l in w if l == _TI)
    if ups != downs:
        report.failures.append(f"a^{k} geodesic with unbalanced heights: {w}")
        return
    h = ups
    if h == 0:
        if any(l in (_T, _TI) for l in w) or len(set(w)) != 1:
            report.failures.append(f"a^{k} geodesic not a power of a: {w}")
        return
    last_t = max(i for i, l in enumerate(w) if l == _T)
    first_ti = min(i for i, l in enumerate(w) if l == _TI)
    if first_ti < last_t:
        report.failures.append(f"a^{k} geodesic not ascending-descending: {w}")
        return
    mid = w[last_t + 1 : first_ti]
    if not mid or any(l not in (_A, _AI) for l in mid) or len(set(mid)) != 1:
        report.failures.append(f"a^{k} geodesic without clean middle run: {w}")
        return
    ell = len(mid) if mid[0] == _A else -len(mid)
    if (ell > 0) != (k > 0):
        report.failures.append(f"a^{k} geodesic middle run of wrong sign: {w}")
        return
    pow_h = 1 << h
    val = 3 * (abs(k) - pow_h * abs(ell))
    if not (-2 * pow_h < val < 5 * pow_h):
        report.failures.append(f"a^{k} geodesic violates the arch bound: {w}")


# ---------------------------------------------------------------------------
# minimum signed power-of-two representations


@dataclass
class PowtsumReport:
    k_max: int
    m_max: int
    entries: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def to_json_obj(self):
        return {
            "k_max": self.k_max,
            "m_max": self.m_max,
            "entries": self.entries,
            "failures": self.failures,
        }


@lru_cache(maxsize=None)
def min_signed_power_terms(n: int, max_exp: int) -> int:
    """Minimum number of signed powers of two with exponents 0..max_exp
    summing to n (coefficients may repeat; cost is the coefficient l1
    norm)."""
    if n < 0:
        n = -n
    if n == 0:
        return 0
    if max_exp == 0:
        return n
    if n % 2 == 0:
        return min_signed_power_terms(n // 2, max_exp - 1)
    return 1 + min(
        min_signed_power_terms((n - 1) // 2, max_exp - 1),
        min_signed_power_terms((n + 1) // 2, max_exp - 1),
    )


def powtsum_lower_bound(k: int, z_max: int) -> int:
    if z_max == 0:
        return (1 << k) - 1
    if z_max == 1:
        return 1 << (k - 1)
    return (1 << (k - z_max)) + 1


def verify_powtsum(k_max: int = 6, m_max: int = 4) -> PowtsumReport:
    """For every k <= k_max, 0 <= z_max <= k, m <= m_max and both signs,
    compute the minimum coefficient mass of a power-of-two combination
    with exponents in [-m, z_max] hitting 2^k +- 1 and check the stated
    lower bounds."""
    report = PowtsumReport(k_max, m_max)
    for k in range(1, k_max + 1):
        for z_max in range(0, k + 1):
            for m in range(0, m_max + 1):
                for sign in (1, -1):
                    target = (1 << k) + sign
                    minimum = min_signed_power_terms(target << m, z_max + m)
                    bound = powtsum_lower_bound(k, z_max)
                    report.entries.append(
                        {
                            "k": k,
                            "z_max": z_max,
                            "m": m,
                            "sign": sign,
                            "minimum": minimum,
                            "bound": bound,
                        }
                    )
                    if minimum < bound:
                        report.failures.append(
                            f"min {minimum} below bound {bound} at k={k} z_max={z_max} m={m} sign={sign}"
                        )
    return report
