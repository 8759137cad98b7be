"""Post's lattice: named clones, their bases, and the clone operations.

Two independent routes to clone membership live here:

* the *closure route* (``close_at_arity``, ``member``, ``leq``) saturates a
  basis and is exact whenever it fits in the budget;
* the *definition route* (``in_clone``) checks the defining property of a
  named clone directly on a truth table.

``identify`` proposes a candidate with the definition route and confirms it
with the closure route.  ``contains`` and everything built on it (meet,
covering edges) evaluate ``leq(base_of(c2), base_of(c1))`` through the
definition route, because the closure route cannot saturate the large
clones at the arity of the threshold bases (``T^{n+1}_m`` has arity up to 6).
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import boolfn as bf
from .boolfn import INF, BoolFn, from_callable, named, threshold
from .closure import closure_tables, reaches
from .config import ARITY_CAP, CLOSURE_BUDGET, DEGREE_CAP
from .errors import BudgetExceeded, DegreeCapExceeded, InternalInconsistency, UnknownName

log = logging.getLogger(__name__)

# -- extra named functions used in the Table of bases -------------------------

EXTRA: dict[str, BoolFn] = {
    "and_eq": from_callable(3, lambda x, y, z: x & (1 - (y ^ z))),
    "or_and": from_callable(3, lambda x, y, z: x | (y & z)),
    "or_nimp": from_callable(3, lambda x, y, z: x | (y & (1 - z))),
    "and_or": from_callable(3, lambda x, y, z: x & (y | z)),
    "maj_nn": from_callable(3, lambda x, y, z: int(x + (1 - y) + (1 - z) >= 2)),
    "maj_n": from_callable(3, lambda x, y, z: int(x + y + (1 - z) >= 2)),
    "xor3n": from_callable(3, lambda x, y, z: 1 ^ x ^ y ^ z),
    "and_or_or": from_callable(3, lambda x, y, z: (x & y) | z),
    "or_and_and": from_callable(3, lambda x, y, z: (x | y) & z),
}

SYMBOLS = {
    "∧": "and", "&": "and", "∨": "or", "|": "or", "¬": "not", "~": "not", "!": "not",
    "⊤": "top", "⊥": "bot", "⊕": "xor", "^": "xor", "↔": "eq", "<->": "eq",
    "→": "imp", "->": "imp", "↛": "nimp", "-/>": "nimp", "⊕3": "xor3",
}

_THRESHOLD = re.compile(r"^T(\d+)_(\d+)$")


def lookup(name: str) -> BoolFn:
    """Resolve a catalog name, table-of-bases helper, ``Tn_m`` threshold or literal."""
    name = SYMBOLS.get(name, name)
    if name in bf.CATALOG_NAMES and name != "threshold":
        return named(name)
    if name in EXTRA:
        return EXTRA[name]
    m = _THRESHOLD.match(name)
    if m:
        return threshold(int(m.group(1)), int(m.group(2)))
    if ":" in name:
        return bf.parse_literal(name)
    raise UnknownName(f"unknown function name {name!r}")


def display_name(f: BoolFn) -> str:
    for n in bf.CATALOG_NAMES:
        if n != "threshold" and named(n) == f:
            return n
    for n, g in EXTRA.items():
        if g == f:
            return n
    for n in range(2, ARITY_CAP + 1):
        for m in range(1, n + 1):
            if threshold(n, m) == f:
                return f"T{n}_{m}"
    return f.literal


# -- bases -----------------------------------------------------------------

@dataclass(frozen=True)
class Basis:
    """A finite set of connectives, each with a display name."""

    items: tuple[tuple[str, BoolFn], ...] = ()

    @classmethod
    def of(cls, *entries: str | BoolFn | tuple[str, BoolFn]) -> Basis:
        out: dict[str, BoolFn] = {}
        for e in entries:
            if isinstance(e, BoolFn):
                out.setdefault(display_name(e), e)
            elif isinstance(e, tuple):
                out[e[0]] = e[1]
            else:
                name = SYMBOLS.get(e, e)
                out[name] = lookup(name)
        return cls(tuple(out.items()))

    @cached_property
    def functions(self) -> tuple[BoolFn, ...]:
        return tuple(sorted({f for _, f in self.items}))

    @property
    def names(self) -> dict[str, BoolFn]:
        return dict(self.items)

    def __iter__(self):
        return iter(self.functions)

    def __len__(self) -> int:
        return len(self.functions)

    def union(self, other: Basis) -> Basis:
        merged = dict(self.items)
        merged.update(other.items)
        return Basis(tuple(merged.items()))

    def __str__(self) -> str:
        return "{" + ", ".join(n for n, _ in self.items) + "}"


def parse_basis(text: str) -> Basis:
    """Comma separated list: catalog names, symbols, ``T4_2``, ``2:8`` or ``name=2:8``."""
    entries: list = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if "=" in tok:
            name, lit = tok.split("=", 1)
            entries.append((name.strip(), bf.parse_literal(lit.strip())))
        else:
            entries.append(tok)
    return Basis.of(*entries)


def as_basis(b: Basis | Iterable[BoolFn | str]) -> Basis:
    return b if isinstance(b, Basis) else Basis.of(*b)


# -- named clones ----------------------------------------------------------

FIXED_FAMILIES = (
    "BF", "R0", "R1", "R2", "M", "M0", "M1", "M2", "S0", "S1",
    "S00", "S01", "S02", "S10", "S11", "S12", "D", "D1", "D2",
    "L", "L0", "L1", "L2", "L3", "V", "V0", "V1", "V2",
    "E", "E0", "E1", "E2", "N", "N2", "I", "I0", "I1", "I2",
)
DEGREE_FAMILIES = ("S0n", "S1n", "S00n", "S01n", "S02n", "S10n", "S11n", "S12n")
FAMILIES = FIXED_FAMILIES + DEGREE_FAMILIES
# Largest finite separation degree a function of arity <= 6 can have.
MAX_DEGREE = ARITY_CAP - 1


@dataclass(frozen=True, order=True)
class NamedClone:
    family: str
    degree: int | None = field(default=None)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnknownName(f"unknown clone family {self.family!r}")
        if (self.family in DEGREE_FAMILIES) != (self.degree is not None):
            raise UnknownName(f"{self.family}: degree given iff the family is parameterized")
        if self.degree is not None and self.degree < 2:
            raise UnknownName("clone degree must be at least 2")

    def __str__(self) -> str:
        if self.degree is None:
            return self.family
        return f"{self.family[:-1]}^{self.degree}"

    def to_json(self) -> dict:
        out: dict = {"family": self.family}
        if self.degree is not None:
            out["degree"] = self.degree
        return out


def clone(text: str) -> NamedClone:
    """Parse ``"V2"``, ``"S00n:3"``, ``"S00^3"`` or ``"S00n(3)"``."""
    text = text.strip()
    m = re.match(r"^([A-Z0-9]+?)(?:n?[:^(](\d+)\)?)$", text)
    if m and m.group(2):
        fam = m.group(1)
        fam = fam if fam.endswith("n") else fam + "n"
        return NamedClone(fam, int(m.group(2)))
    return NamedClone(text)


def all_named(degree_cap: int = DEGREE_CAP) -> list[NamedClone]:
    out = [NamedClone(f) for f in FIXED_FAMILIES]
    for fam in DEGREE_FAMILIES:
        out.extend(NamedClone(fam, n) for n in range(2, degree_cap + 1))
    return out


def _check_cap(c: NamedClone, degree_cap: int):
    if c.degree is not None and c.degree > degree_cap:
        raise DegreeCapExceeded(f"{c} above degree cap {degree_cap}", degree=c.degree)


def base_of(c: NamedClone, degree_cap: int = DEGREE_CAP) -> Basis:
    _check_cap(c, degree_cap)
    n = c.degree
    fam = c.family
    fixed = {
        "BF": ("and", "not"), "R0": ("and", "xor"), "R1": ("or", "eq"), "R2": ("or", "and_eq"),
        "M": ("or", "and", "bot", "top"), "M0": ("or", "and", "bot"), "M1": ("or", "and", "top"),
        "M2": ("or", "and"), "S0": ("imp",), "S1": ("nimp",), "S00": ("or_and",),
        "S01": ("or_and", "top"), "S02": ("or_nimp",), "S10": ("and_or",),
        "S11": ("and_or", "bot"), "S12": ("aimp",), "D": ("maj_nn",), "D1": ("maj_n",),
        "D2": ("maj",), "L": ("xor", "top"), "L0": ("xor",), "L1": ("eq",), "L2": ("xor3",),
        "L3": ("xor3n",), "V": ("or", "bot", "top"), "V0": ("or", "bot"), "V1": ("or", "top"),
        "V2": ("or",), "E": ("and", "bot", "top"), "E0": ("and", "bot"), "E1": ("and", "top"),
        "E2": ("and",), "N": ("not", "bot", "top"), "N2": ("not",), "I": ("bot", "top"),
        "I0": ("bot",), "I1": ("top",), "I2": (),
    }
    if fam in fixed:
        return Basis.of(*fixed[fam])
    lo, hi = f"T{n + 1}_2", f"T{n + 1}_{n}"
    by_degree = {
        "S0n": ("imp", lo), "S1n": ("nimp", hi),
        "S00n": ("or_and", "T3_2") if n == 2 else (lo,),
        "S01n": (lo, "top"), "S02n": ("or_nimp", lo),
        "S10n": ("and_or", "T3_2") if n == 2 else (hi,),
        "S11n": (hi, "bot"), "S12n": ("aimp", hi),
    }
    return Basis.of(*by_degree[fam])


# -- definition route ------------------------------------------------------

@dataclass(frozen=True)
class Profile:
    r0: bool
    r1: bool
    mono: bool
    sd: bool
    lin: bool
    sep0: float | None
    sep1: float | None
    disj: bool
    conj: bool
    one_var: bool
    proj: bool


@lru_cache(maxsize=1 << 16)
def profile(f: BoolFn) -> Profile:
    return Profile(
        r0=f.at(0) == 0,
        r1=f.at(f.size - 1) == 1,
        mono=bf.is_monotone(f),
        sd=bf.is_self_dual(f),
        lin=bf.affine_form(f) is not None,
        sep0=bf.separation_degree(f, 0),
        sep1=bf.separation_degree(f, 1),
        disj=bf.is_disjunction_or_constant(f),
        conj=bf.is_conjunction_or_constant(f),
        one_var=bf.depends_on_at_most_one(f),
        proj=bf.is_projection_or_constant(f),
    )


def _sep(d: float | None, k: float) -> bool:
    return d is not None and d >= k


def in_clone(f: BoolFn, c: NamedClone) -> bool:
    """Definition route: does ``f`` have the defining property of ``c``?"""
    p = profile(f)
    fam = c.family
    r2 = p.r0 and p.r1
    k = INF if c.degree is None else c.degree
    if fam.startswith("S"):
        base = fam.rstrip("n")
        sep = _sep(p.sep0, k) if base[1] == "0" else _sep(p.sep1, k)
        if not sep:
            return False
        sub = base[2:]
        return {"": True, "0": r2 and p.mono, "1": p.mono, "2": r2}[sub]
    table = {
        "BF": True, "R0": p.r0, "R1": p.r1, "R2": r2,
        "M": p.mono, "M0": p.mono and p.r0, "M1": p.mono and p.r1, "M2": p.mono and r2,
        "D": p.sd, "D1": p.sd and r2, "D2": p.sd and p.mono,
        "L": p.lin, "L0": p.lin and p.r0, "L1": p.lin and p.r1, "L2": p.lin and r2,
        "L3": p.lin and p.sd,
        "V": p.disj, "V0": p.disj and p.r0, "V1": p.disj and p.r1, "V2": p.disj and r2,
        "E": p.conj, "E0": p.conj and p.r0, "E1": p.conj and p.r1, "E2": p.conj and r2,
        "N": p.one_var, "N2": p.one_var and p.lin and p.sd,
        "I": p.proj, "I0": p.proj and p.r0, "I1": p.proj and p.r1, "I2": p.proj and r2,
    }
    return table[fam]


@lru_cache(maxsize=None)
def _contains_def(c1: NamedClone, c2: NamedClone) -> bool:
    return all(in_clone(g, c1) for g in base_of(c2, MAX_DEGREE))


def contains(c1: NamedClone, c2: NamedClone, degree_cap: int = DEGREE_CAP) -> bool:
    """``c2`` is a subclone of ``c1``: ``leq(base_of(c2), base_of(c1))`` by definition route."""
    _check_cap(c1, degree_cap)
    _check_cap(c2, degree_cap)
    return _contains_def(c1, c2)


# -- closure route ---------------------------------------------------------

def close_at_arity(B: Basis | Iterable[BoolFn], n: int, budget: int = CLOSURE_BUDGET) -> frozenset[BoolFn]:
    """All ``n``-ary members of the clone generated by ``B``."""
    fns = as_basis(B).functions
    return frozenset(BoolFn(n, int(t)) for t in closure_tables(fns, n, budget))


def _reduce(f: BoolFn) -> BoolFn:
    """The minor of ``f`` on its essential variables (a unary constant if none)."""
    ess = f.essential()
    if len(ess) == f.arity:
        return f
    if not ess:
        return BoolFn(1, 0b11 if f.at(0) else 0)

    def g(*ys):
        idx = 0
        for y, k in zip(ys, ess):
            if y:
                idx |= 1 << k
        return f.at(idx)

    return from_callable(len(ess), g)


def member(f: BoolFn, B: Basis | Iterable[BoolFn], budget: int = CLOSURE_BUDGET) -> bool:
    fns = as_basis(B).functions
    if f in fns or bf.is_projection_or_constant(f) and not f.is_constant():
        return True
    g = _reduce(f)
    if g in fns or (g.arity == 1 and g.table == 0b10):
        return True
    return reaches(fns, g, budget)


def leq(O: Basis | Iterable[BoolFn], O2: Basis | Iterable[BoolFn], budget: int = CLOSURE_BUDGET) -> bool:
    target = as_basis(O2)
    return all(member(f, target, budget) for f in as_basis(O).functions)


# -- identification --------------------------------------------------------

@dataclass(frozen=True)
class Identification:
    clone: NamedClone
    closure_confirmed: bool  # False when a confirmation step exceeded the budget


@lru_cache(maxsize=4096)
def _candidate(fns: tuple[BoolFn, ...]) -> NamedClone:
    cands = [c for c in all_named(MAX_DEGREE) if all(in_clone(f, c) for f in fns)]
    least = [c for c in cands if all(_contains_def(d, c) for d in cands)]
    if len(least) != 1:
        raise InternalInconsistency(f"no least candidate clone among {len(cands)}")
    return least[0]


def identify_report(B: Basis | Iterable[BoolFn], degree_cap: int = DEGREE_CAP,
                    budget: int = CLOSURE_BUDGET) -> Identification:
    return _identify(as_basis(B).functions, degree_cap, budget)


@lru_cache(maxsize=1024)
def _identify(fns: tuple[BoolFn, ...], degree_cap: int, budget: int) -> Identification:
    c = _candidate(fns)
    _check_cap(c, degree_cap)
    base = base_of(c, MAX_DEGREE).functions
    confirmed = True
    for f, target, other in [(f, base, "base") for f in fns] + [(g, fns, "basis") for g in base]:
        try:
            ok = member(f, target, budget)
        except BudgetExceeded:
            log.debug("confirmation of %s in %s for %s exceeded the budget", f, other, c)
            confirmed = False
            continue
        if not ok:
            raise InternalInconsistency(f"candidate {c} failed confirmation on {f!r}")
    return Identification(c, confirmed)


def identify(B: Basis | Iterable[BoolFn], degree_cap: int = DEGREE_CAP,
             budget: int = CLOSURE_BUDGET) -> NamedClone:
    return identify_report(B, degree_cap, budget).clone


def join(c1: NamedClone, c2: NamedClone, degree_cap: int = DEGREE_CAP) -> NamedClone:
    return identify(base_of(c1, degree_cap).union(base_of(c2, degree_cap)), degree_cap)


def meet(c1: NamedClone, c2: NamedClone, degree_cap: int = DEGREE_CAP) -> NamedClone:
    lower = [c for c in all_named(degree_cap)
             if contains(c1, c, degree_cap) and contains(c2, c, degree_cap)]
    top = [c for c in lower if all(_contains_def(c, d) for d in lower)]
    if len(top) != 1:
        raise InternalInconsistency(f"meet of {c1} and {c2} not unique within the cap")
    return top[0]


def in_downward_closed(maximal: Iterable[NamedClone], B: Basis | Iterable[BoolFn],
                       degree_cap: int = DEGREE_CAP) -> bool:
    c = identify(B, degree_cap)
    return any(contains(m, c, degree_cap) for m in maximal)


def subclone_of(B: Basis | Iterable[BoolFn], c: NamedClone, degree_cap: int = DEGREE_CAP) -> bool:
    """``[B]`` is contained in the named clone ``c``."""
    return contains(c, identify(B, degree_cap), degree_cap)


# -- lattice rendering -----------------------------------------------------

def covering_edges(degree_cap: int = DEGREE_CAP) -> list[tuple[NamedClone, NamedClone]]:
    nodes = all_named(degree_cap)
    below = {a: [b for b in nodes if b != a and _contains_def(a, b)] for a in nodes}
    edges = []
    for a in nodes:
        for b in below[a]:
            if not any(_contains_def(c, b) for c in below[a] if c != b):
                edges.append((a, b))
    return edges


def lattice_dot(degree_cap: int = DEGREE_CAP) -> str:
    nodes = all_named(degree_cap)
    lines = ["digraph post_lattice {", "  rankdir=TB;  // larger clones on top", "  node [shape=plaintext];"]
    ident = {c: f'"{c}"' for c in nodes}
    for c in nodes:
        lines.append(f"  {ident[c]};")
    for upper, lower in covering_edges(degree_cap):
        lines.append(f"  {ident[upper]} -> {ident[lower]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def clone_size(B: Basis | Iterable[BoolFn], n: int, budget: int = CLOSURE_BUDGET) -> int:
    return int(np.asarray(closure_tables(as_basis(B).functions, n, budget)).size)


def tables(fns: Sequence[BoolFn]) -> list[str]:
    return [f.literal for f in fns]
