"""Finitary Boolean functions as bit-packed truth tables.

Encoding: entry ``i`` of the table is ``f`` applied to the binary expansion
of ``i`` with the least significant bit as the *first* argument.  So the
table of ``and`` is ``0b1000`` (only index 3 = (1, 1) is true) and its
literal form is ``"2:8"``.

Constants are unary (``top`` has table ``0b11``); there are no nullary
functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .config import ARITY_CAP
from .errors import (
    ArityMismatch,
    ArityOutOfRange,
    BadThresholdParams,
    TableLengthMismatch,
    UnknownName,
)

INF = math.inf


def full_mask(arity: int) -> int:
    return (1 << (1 << arity)) - 1


@dataclass(frozen=True, order=True)
class BoolFn:
    arity: int
    table: int

    def __post_init__(self):
        if not 1 <= self.arity <= ARITY_CAP:
            raise ArityOutOfRange(f"arity {self.arity} outside 1..{ARITY_CAP}")
        if not 0 <= self.table <= full_mask(self.arity):
            raise TableLengthMismatch(f"table {self.table:#x} too wide for arity {self.arity}")

    # -- evaluation --------------------------------------------------------
    def __call__(self, *args: int) -> int:
        if len(args) != self.arity:
            raise ArityMismatch(f"expected {self.arity} arguments, got {len(args)}")
        idx = 0
        for k, a in enumerate(args):
            if a:
                idx |= 1 << k
        return (self.table >> idx) & 1

    def at(self, index: int) -> int:
        return (self.table >> index) & 1

    @property
    def size(self) -> int:
        return 1 << self.arity

    @property
    def mask(self) -> int:
        return full_mask(self.arity)

    def bits(self) -> list[int]:
        return [self.at(i) for i in range(self.size)]

    def preimage(self, a: int) -> list[int]:
        return [i for i in range(self.size) if self.at(i) == a]

    def apply_bits(self, args: Sequence[int], width_mask: int) -> int:
        """Evaluate on bit-parallel arguments.

        Each argument is an integer whose bit ``j`` is the argument's value in
        "row" ``j``; the result has bit ``j`` equal to ``f`` on row ``j``.
        Used for truth tables, closures and world sets alike.
        """
        if len(args) != self.arity:
            raise ArityMismatch(f"expected {self.arity} arguments, got {len(args)}")
        ones = self.table.bit_count()
        # Sum over whichever of the on-set / off-set is smaller.
        use_on = ones * 2 <= self.size
        acc = 0
        for idx in range(self.size):
            if self.at(idx) != use_on:
                continue
            term = width_mask
            for k, a in enumerate(args):
                term &= a if (idx >> k) & 1 else ~a
                if not term:
                    break
            acc |= term
        return acc & width_mask if use_on else ~acc & width_mask

    # -- derived functions -------------------------------------------------
    def dual(self) -> BoolFn:
        """``x -> not f(not x)``."""
        m = self.size - 1
        t = 0
        for i in range(self.size):
            if not self.at(m ^ i):
                t |= 1 << i
        return BoolFn(self.arity, t)

    def negate(self) -> BoolFn:
        return BoolFn(self.arity, self.table ^ self.mask)

    def is_constant(self) -> bool:
        return self.table in (0, self.mask)

    def essential(self) -> list[int]:
        """Indices of the arguments the function actually depends on."""
        out = []
        for k in range(self.arity):
            bit = 1 << k
            if any(self.at(i) != self.at(i | bit) for i in range(self.size) if not i & bit):
                out.append(k)
        return out

    # -- text --------------------------------------------------------------
    @property
    def literal(self) -> str:
        return f"{self.arity}:{self.table:x}"

    def __repr__(self) -> str:
        return f"BoolFn({self.literal})"


def make(arity: int, table: Sequence[int] | int) -> BoolFn:
    """Build a function from a bit list (index order) or a packed integer."""
    if not isinstance(arity, int) or not 1 <= arity <= ARITY_CAP:
        raise ArityOutOfRange(f"arity {arity} outside 1..{ARITY_CAP}")
    if isinstance(table, int):
        if not 0 <= table <= full_mask(arity):
            raise TableLengthMismatch(f"table {table:#x} too wide for arity {arity}")
        return BoolFn(arity, table)
    bits = list(table)
    if len(bits) != 1 << arity:
        raise TableLengthMismatch(f"expected {1 << arity} entries, got {len(bits)}")
    t = 0
    for i, b in enumerate(bits):
        if b not in (0, 1, True, False):
            raise TableLengthMismatch(f"entry {i} is not a bit: {b!r}")
        if b:
            t |= 1 << i
    return BoolFn(arity, t)


def from_callable(arity: int, fn: Callable[..., int]) -> BoolFn:
    t = 0
    for i in range(1 << arity):
        if fn(*[(i >> k) & 1 for k in range(arity)]):
            t |= 1 << i
    return make(arity, t)


def projection(arity: int, k: int) -> BoolFn:
    """The ``k``-th (0-based) projection of the given arity."""
    return from_callable(arity, lambda *xs: xs[k])


def parse_literal(text: str) -> BoolFn:
    try:
        a, h = text.split(":")
        arity = int(a)
        table = int(h, 16)
    except ValueError as exc:
        raise UnknownName(f"not a function literal: {text!r}") from exc
    return make(arity, table)


def evaluate(f: BoolFn, args: Sequence[int]) -> int:
    return f(*args)


# -- catalog ---------------------------------------------------------------

def threshold(n: int, m: int) -> BoolFn:
    if not (isinstance(n, int) and isinstance(m, int) and n >= m >= 1):
        raise BadThresholdParams(f"threshold needs n >= m >= 1, got n={n}, m={m}")
    return from_callable(n, lambda *xs: int(sum(xs) >= m))


_CATALOG: dict[str, tuple[int, Callable[..., int]]] = {
    "and": (2, lambda x, y: x & y),
    "or": (2, lambda x, y: x | y),
    "not": (1, lambda x: 1 - x),
    "top": (1, lambda x: 1),
    "bot": (1, lambda x: 0),
    "xor": (2, lambda x, y: x ^ y),
    "eq": (2, lambda x, y: 1 - (x ^ y)),
    "imp": (2, lambda x, y: (1 - x) | y),
    "nimp": (2, lambda x, y: x & (1 - y)),
    "xor3": (3, lambda x, y, z: x ^ y ^ z),
    "maj": (3, lambda x, y, z: (x & y) | (y & z) | (x & z)),
    "aimp": (3, lambda x, y, z: x & ((1 - y) | z)),
    "oxor": (3, lambda x, y, z: x | (y ^ z)),
}

CATALOG_NAMES = tuple(_CATALOG) + ("threshold",)


@lru_cache(maxsize=None)
def named(name: str, *params: int) -> BoolFn:
    """Catalog lookup: ``named("maj")``, ``named("threshold", 3, 2)``."""
    if name == "threshold":
        if len(params) != 2:
            raise BadThresholdParams("threshold takes exactly (n, m)")
        return threshold(*params)
    if name not in _CATALOG or params:
        raise UnknownName(f"unknown catalog function {name!r}")
    arity, fn = _CATALOG[name]
    return from_callable(arity, fn)


# -- Post properties -------------------------------------------------------

@dataclass(frozen=True)
class PostProperty:
    tag: str
    degree: int | None = None

    TAGS = (
        "BotReproducing", "TopReproducing", "Monotone", "SelfDual", "Linear",
        "BotSeparatingDeg", "TopSeparatingDeg", "BotSeparating", "TopSeparating",
        "DisjunctionOrConstant", "ConjunctionOrConstant", "AtMostOneVariable",
        "ProjectionOrConstant",
    )

    def __post_init__(self):
        if self.tag not in self.TAGS:
            raise UnknownName(f"unknown property {self.tag!r}")
        wants_degree = self.tag.endswith("Deg")
        if wants_degree != (self.degree is not None):
            raise UnknownName(f"{self.tag} degree parameter misuse")
        if wants_degree and self.degree < 2:
            raise BadThresholdParams("separation degree must be at least 2")


BOT_REPRODUCING = PostProperty("BotReproducing")
TOP_REPRODUCING = PostProperty("TopReproducing")
MONOTONE = PostProperty("Monotone")
SELF_DUAL = PostProperty("SelfDual")
LINEAR = PostProperty("Linear")
BOT_SEPARATING = PostProperty("BotSeparating")
TOP_SEPARATING = PostProperty("TopSeparating")
DISJUNCTION_OR_CONSTANT = PostProperty("DisjunctionOrConstant")
CONJUNCTION_OR_CONSTANT = PostProperty("ConjunctionOrConstant")
AT_MOST_ONE_VARIABLE = PostProperty("AtMostOneVariable")
PROJECTION_OR_CONSTANT = PostProperty("ProjectionOrConstant")


def bot_separating(n: int) -> PostProperty:
    return PostProperty("BotSeparatingDeg", n)


def top_separating(n: int) -> PostProperty:
    return PostProperty("TopSeparatingDeg", n)


def is_monotone(f: BoolFn) -> bool:
    for i in range(f.size):
        if f.at(i):
            for k in range(f.arity):
                if not f.at(i | (1 << k)):
                    return False
    return True


def is_self_dual(f: BoolFn) -> bool:
    m = f.size - 1
    return all(f.at(i) != f.at(m ^ i) for i in range(f.size))


def affine_form(f: BoolFn) -> tuple[int, int] | None:
    """``(c0, coeff_mask)`` if ``f = c0 xor XOR_{k in mask} x_k``, else None."""
    c0 = f.at(0)
    coeffs = 0
    for k in range(f.arity):
        if f.at(1 << k) != c0:
            coeffs |= 1 << k
    for i in range(f.size):
        if f.at(i) != c0 ^ ((i & coeffs).bit_count() & 1):
            return None
    return c0, coeffs


def _min_violating(f: BoolFn, a: int) -> float:
    """Size of the smallest subset of ``f^-1(a)`` without a shared coordinate fixed at ``a``.

    Returns ``inf`` when the whole preimage shares one.  A subset fails
    exactly when, for every coordinate, some member differs from ``a`` there,
    so this is a minimum set cover over at most ``arity`` coordinates; a
    breadth-first search over covered-coordinate masks solves it exactly.
    """
    full = (1 << f.arity) - 1
    covers = set()
    for i in f.preimage(a):
        covers.add(full & ~i if a == 1 else i)
    covered_by_all = 0
    for c in covers:
        covered_by_all |= c
    if covered_by_all != full:
        return INF
    dist = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for state in frontier:
            for c in covers:
                s = state | c
                if s not in dist:
                    dist[s] = dist[state] + 1
                    if s == full:
                        return dist[s]
                    nxt.append(s)
        frontier = nxt
    raise AssertionError("unreachable: union of covers is full")


def separation_degree(f: BoolFn, a: int) -> float | None:
    """``inf`` for full ``a``-separation, else the largest degree >= 2, else None.

    Degree ``k`` means every subset of the preimage with at most ``k``
    elements shares a coordinate fixed at ``a``.
    """
    m = _min_violating(f, a)
    if m == INF:
        return INF
    return m - 1 if m - 1 >= 2 else None


def is_disjunction_or_constant(f: BoolFn) -> bool:
    if f.is_constant():
        return True
    s = 0
    for k in range(f.arity):
        if f.at(1 << k):
            s |= 1 << k
    return s != 0 and all(f.at(i) == int(bool(i & s)) for i in range(f.size))


def is_conjunction_or_constant(f: BoolFn) -> bool:
    return is_disjunction_or_constant(f.dual())


def depends_on_at_most_one(f: BoolFn) -> bool:
    return len(f.essential()) <= 1


def is_projection_or_constant(f: BoolFn) -> bool:
    if f.is_constant():
        return True
    ess = f.essential()
    return len(ess) == 1 and f.at(1 << ess[0]) == 1 and f.at(0) == 0


def has_property(f: BoolFn, p: PostProperty) -> bool:
    tag = p.tag
    if tag == "BotReproducing":
        return f.at(0) == 0
    if tag == "TopReproducing":
        return f.at(f.size - 1) == 1
    if tag == "Monotone":
        return is_monotone(f)
    if tag == "SelfDual":
        return is_self_dual(f)
    if tag == "Linear":
        return affine_form(f) is not None
    if tag in ("BotSeparating", "TopSeparating"):
        return separation_degree(f, 0 if tag.startswith("Bot") else 1) == INF
    if tag in ("BotSeparatingDeg", "TopSeparatingDeg"):
        d = separation_degree(f, 0 if tag.startswith("Bot") else 1)
        return d is not None and d >= p.degree
    if tag == "DisjunctionOrConstant":
        return is_disjunction_or_constant(f)
    if tag == "ConjunctionOrConstant":
        return is_conjunction_or_constant(f)
    if tag == "AtMostOneVariable":
        return depends_on_at_most_one(f)
    if tag == "ProjectionOrConstant":
        return is_projection_or_constant(f)
    raise UnknownName(tag)


def all_functions(arity: int) -> Iterable[BoolFn]:
    for t in range(1 << (1 << arity)):
        yield BoolFn(arity, t)
