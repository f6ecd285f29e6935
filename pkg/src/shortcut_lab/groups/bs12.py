"""Exact arithmetic for BS(1,2) = <a, t | t a t^-1 = a^2>.

Elements are coordinatized as pairs (r, z) with r a dyadic rational and z
the height; the product is (r, z) (r', z') = (r + 2^z r', z + z').  r is
stored as num / 2^exp with num odd (or num = exp = 0), so equality, hashing
and multiplication are exact at any size.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ShortcutLabError


@dataclass(frozen=True)
class BS12Element:
    """r = num / 2**exp in canonical form (num odd, or num = 0 = exp)."""

    num: int
    exp: int
    z: int

    @property
    def r(self) -> Fraction:
        if self.exp >= 0:
            return Fraction(self.num, 1 << self.exp)
        return Fraction(self.num * (1 << -self.exp))

    @property
    def height(self) -> int:
        return self.z

    def key(self):
        return (self.num, self.exp, self.z)

    def __repr__(self):
        return f"BS12Element(r={self.num}/2^{self.exp}, z={self.z})"


def _canon(num, exp):
    if num == 0:
        return 0, 0
    while num % 2 == 0:
        num //= 2
        exp -= 1
    return num, exp


def make_element(num: int, exp: int, z: int) -> BS12Element:
    num, exp = _canon(num, exp)
    return BS12Element(num, exp, z)


IDENTITY = BS12Element(0, 0, 0)


def bs12_multiply(x: BS12Element, y: BS12Element) -> BS12Element:
    """(r, z) (r', z') = (r + 2^z r', z + z')."""
    f2 = y.exp - x.z
    e = x.exp if x.exp > f2 else f2
    num = x.num * (1 << (e - x.exp)) + y.num * (1 << (e - f2))
    num, e = _canon(num, e)
    return BS12Element(num, e, x.z + y.z)


def bs12_inverse(x: BS12Element) -> BS12Element:
    """(r, z)^-1 = (-2^-z r, -z)."""
    num, exp = _canon(-x.num, x.exp + x.z)
    return BS12Element(num, exp, -x.z)


# generator images under the coordinatization
GEN_A = BS12Element(1, 0, 0)
GEN_T = BS12Element(0, 0, 1)
GEN_TAU = BS12Element(0, 0, 2)

_TOKEN_ELEMENTS = {
    "a": GEN_A,
    "a-": bs12_inverse(GEN_A),
    "t": GEN_T,
    "t-": bs12_inverse(GEN_T),
    "tau": GEN_TAU,
    "tau-": bs12_inverse(GEN_TAU),
}

_TOKEN_ALIASES = {
    "a^-1": "a-",
    "a⁻¹": "a-",
    "A": "a-",
    "t^-1": "t-",
    "t⁻¹": "t-",
    "T": "t-",
    "τ": "tau",
    "τ⁻¹": "tau-",
    "tau^-1": "tau-",
    "y": "tau",
    "Y": "tau-",
}


def parse_word(text: str) -> tuple:
    """Split a word over {a, t, tau} and inverses into canonical tokens.

    Tokens are separated by spaces, commas or dots; inverses are written
    with a trailing '-', '^-1' or a unicode superscript.
    """
    tokens = []
    for raw in text.replace(",", " ").replace(".", " ").split():
        tok = _TOKEN_ALIASES.get(raw, raw)
        if tok not in _TOKEN_ELEMENTS:
            raise ShortcutLabError(f"unknown generator token {raw!r}")
        tokens.append(tok)
    return tuple(tokens)


def token_inverse(tok: str) -> str:
    return tok[:-1] if tok.endswith("-") else tok + "-"


def evaluate_word(word) -> BS12Element:
    """Image of a word (token tuple or parseable string) in BS(1,2)."""
    if isinstance(word, str):
        word = parse_word(word)
    x = IDENTITY
    for tok in word:
        x = bs12_multiply(x, _TOKEN_ELEMENTS[tok])
    return x


def token_element(tok: str) -> BS12Element:
    return _TOKEN_ELEMENTS[tok]


@dataclass(frozen=True)
class NormalForm:
    """The unique word t^m a^k t^n with k even only if k = m = 0."""

    m: int
    k: int
    n: int

    def word(self) -> tuple:
        out = []
        out.extend(["t"] * self.m if self.m >= 0 else ["t-"] * -self.m)
        out.extend(["a"] * self.k if self.k >= 0 else ["a-"] * -self.k)
        out.extend(["t"] * self.n if self.n >= 0 else ["t-"] * -self.n)
        return tuple(out)


def normal_form_of(x: BS12Element) -> NormalForm:
    """Invert the coordinatization: m = nu(r), k = r / 2^m, n = z - m."""
    if x.num == 0:
        return NormalForm(0, 0, x.z)
    m = -x.exp
    return NormalForm(m, x.num, x.z - m)


def bs12_normal_form(word) -> NormalForm:
    return normal_form_of(evaluate_word(word))


def element_of_normal_form(nf: NormalForm) -> BS12Element:
    # t^m a^k t^n has coordinates (2^m k, m + n)
    return make_element(nf.k, -nf.m, nf.m + nf.n)
