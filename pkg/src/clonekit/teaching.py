"""Labeled examples, teaching sets and exact learning for propositional fragments.

Everything here is relative to an explicit, ordered set of variables
``prop``; an assignment outside that set is never consulted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import gf2
from .boolfn import BoolFn, named
from .clones import Basis, NamedClone, as_basis, contains, identify, in_clone
from .closure import closure_tables
from .config import CLOSURE_BUDGET, DEGREE_CAP
from .errors import (FragmentNotTeachable, Inconsistent, KindMismatch, NotInFragment,
                     NotLearnable, OracleInconsistent, PropCapExceeded, UnboundVariable)
from .proplogic import Formula, truth_table
from .syntax import Apply, Node, Var, is_modal, variables

VERIFY_PROP_CAP = 4

_E, _V, _L, _M, _N = (NamedClone(f) for f in ("E", "V", "L", "M", "N"))


# -- examples ----------------------------------------------------------------

def assignment(prop: Sequence[str], ones: Iterable[str] = ()) -> dict[str, int]:
    """``V_S``: the variables in ``ones`` true, every other variable of ``prop`` false."""
    on = set(ones)
    return {p: int(p in on) for p in prop}


def _index(prop: Sequence[str], V: Mapping[str, int]) -> int:
    return sum(1 << k for k, p in enumerate(prop) if V.get(p, 0))


@dataclass(frozen=True)
class LabeledExample:
    payload: object          # a Mapping assignment or a modal PointedModel
    label: int

    def __post_init__(self):
        if isinstance(self.payload, Mapping):
            object.__setattr__(self, "payload", dict(sorted((k, int(bool(v))) for k, v in self.payload.items())))
        object.__setattr__(self, "label", int(bool(self.label)))

    @property
    def is_modal(self) -> bool:
        return not isinstance(self.payload, Mapping)

    def __hash__(self):
        key = tuple(self.payload.items()) if not self.is_modal else self.payload
        return hash((key, self.label))

    def to_json(self) -> dict:
        if self.is_modal:
            return {"model": self.payload.to_json(), "label": self.label}
        return {"assignment": dict(self.payload), "label": self.label}

    @classmethod
    def from_json(cls, data: Mapping) -> LabeledExample:
        if "model" in data:
            from .modal import PointedModel
            return cls(PointedModel.from_json(data["model"]), data["label"])
        return cls(dict(data["assignment"]), data["label"])


def value(phi: Node, payload) -> int:
    if isinstance(payload, Mapping):
        if is_modal(phi):
            raise KindMismatch("modal formula against a propositional example")
        from .proplogic import evaluate
        V = {p: payload.get(p, 0) for p in variables(phi)}
        return evaluate(phi, V)
    from .modal import mc
    return mc(payload, None, phi)


def fits(phi: Node, ex: LabeledExample) -> bool:
    return value(phi, ex.payload) == ex.label


@dataclass(frozen=True)
class TeachingSet:
    examples: tuple[LabeledExample, ...]
    fragment: object
    prop: tuple[str, ...]
    method: str = ""

    def __len__(self) -> int:
        return len(self.examples)

    def __iter__(self):
        return iter(self.examples)

    @property
    def positives(self) -> list[LabeledExample]:
        return [e for e in self.examples if e.label]

    @property
    def negatives(self) -> list[LabeledExample]:
        return [e for e in self.examples if not e.label]

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.examples]


# -- teaching ----------------------------------------------------------------

def _points(f: BoolFn) -> tuple[list[int], list[int]]:
    """Minimal true points and maximal false points of a monotone function."""
    n = f.arity
    ones = [i for i in range(f.size) if f.at(i)]
    zeros = [i for i in range(f.size) if not f.at(i)]
    minimal = [i for i in ones if not any(f.at(i & ~(1 << k)) for k in range(n) if i >> k & 1)]
    maximal = [i for i in zeros if not any(not f.at(i | 1 << k) for k in range(n) if not i >> k & 1)]
    return minimal, maximal


def prime_counts(f: BoolFn) -> tuple[int, int]:
    """(#prime implicants, #prime clauses) of a monotone function."""
    lo, hi = _points(f)
    return len(lo), len(hi)


def _ex(prop: Sequence[str], idx: int, label: int) -> LabeledExample:
    return LabeledExample(assignment(prop, [p for k, p in enumerate(prop) if idx >> k & 1]), label)


def teach_prop(phi: Formula, fragment: Basis | Iterable, prop: Sequence[str],
               degree_cap: int = DEGREE_CAP) -> TeachingSet:
    prop = tuple(prop)
    missing = variables(phi) - set(prop)
    if missing:
        raise UnboundVariable(f"variables {sorted(missing)} not in prop")
    basis = as_basis(fragment)
    c = identify(basis, degree_cap)
    f = truth_table(phi, prop)
    if not in_clone(f, c):
        raise NotInFragment(f"formula is not expressible over {basis}")
    n = len(prop)
    full = (1 << n) - 1

    def label(idx: int) -> LabeledExample:
        return _ex(prop, idx, f.at(idx))

    if contains(_N, c):
        # a single variable, its negation, or a constant
        ess = f.essential()
        if not ess:
            exs = [label(full), label(0)]
        else:
            exs = [label(1 << ess[0]), label(0)]
        method = "negation"
    elif contains(_E, c):
        exs = [label(full)] + [label(full & ~(1 << k)) for k in range(n)]
        method = "conjunction"
    elif contains(_V, c):
        exs = [label(0)] + [label(1 << k) for k in range(n)]
        method = "disjunction"
    elif contains(_L, c):
        exs = [label(0)] + [label(1 << k) for k in range(n)]
        method = "affine"
    elif contains(_M, c):
        lo, hi = _points(f)
        exs = [_ex(prop, i, 1) for i in lo] + [_ex(prop, i, 0) for i in hi]
        method = "monotone"
    else:
        raise FragmentNotTeachable(f"no teaching construction for the clone {c}", clone=str(c))
    seen, out = set(), []
    for e in exs:
        if e not in seen:
            seen.add(e)
            out.append(e)
    return TeachingSet(tuple(out), basis, prop, method)


# -- verification ------------------------------------------------------------

@dataclass(frozen=True)
class Verification:
    status: str                          # Unique | Ambiguous | NotFitting
    witness: tuple[BoolFn, BoolFn] | None = None
    fitting: int = 0

    def to_json(self) -> dict:
        out: dict = {"status": self.status, "fitting": self.fitting}
        if self.witness:
            out["witness"] = [w.literal for w in self.witness]
        return out


def verify_unique(phi: Formula, examples: Iterable[LabeledExample], fragment: Basis | Iterable,
                  prop: Sequence[str], budget: int = CLOSURE_BUDGET) -> Verification:
    """Brute-force oracle: which members of the fragment's clone at arity ``|prop|`` fit?"""
    prop = tuple(prop)
    if not 1 <= len(prop) <= VERIFY_PROP_CAP:
        raise PropCapExceeded(f"verification enumerates functions of at most {VERIFY_PROP_CAP} variables",
                              size=len(prop), cap=VERIFY_PROP_CAP)
    examples = list(examples)
    f = truth_table(phi, prop)
    if not all(fits(phi, e) for e in examples):
        return Verification("NotFitting")
    tables = np.asarray(closure_tables(as_basis(fragment).functions, len(prop), budget))
    keep = np.ones(tables.size, dtype=bool)
    for e in examples:
        if e.is_modal:
            raise KindMismatch("modal example in a propositional teaching set")
        idx = _index(prop, e.payload)
        keep &= ((tables >> np.uint64(idx)) & np.uint64(1)) == np.uint64(e.label)
    fitting = tables[keep]
    others = [int(t) for t in fitting if int(t) != f.table]
    if not others:
        return Verification("Unique", fitting=int(fitting.size))
    return Verification("Ambiguous", (f, BoolFn(len(prop), others[0])), int(fitting.size))


# -- exact learning with membership queries ----------------------------------

@dataclass(frozen=True)
class LearnResult:
    formula: Formula
    queries: int
    family: str
    hidden: dict

    def to_json(self) -> dict:
        from .syntax import show
        return {"formula": show(self.formula), "queries": self.queries, "family": self.family,
                **self.hidden}


def _const(value: int, prop: Sequence[str]) -> Formula:
    name = "top" if value else "bot"
    return Apply(name, named(name), (Var(prop[0]),))


def _chain(name: str, xs: Sequence[Formula]) -> Formula:
    fn = named(name)
    out = xs[0]
    for x in xs[1:]:
        out = Apply(name, fn, (out, x))
    return out


def learn_mq_detail(fragment: Basis | Iterable, prop: Sequence[str],
                    oracle: Callable[[dict[str, int]], int], degree_cap: int = DEGREE_CAP) -> LearnResult:
    prop = tuple(prop)
    if not prop:
        raise UnboundVariable("learning needs at least one variable")
    c = identify(as_basis(fragment), degree_cap)
    count = 0

    def ask(ones: Iterable[str]) -> int:
        nonlocal count
        count += 1
        return int(bool(oracle(assignment(prop, ones))))

    if contains(_E, c):
        top = ask(prop)
        drop = [ask([q for q in prop if q != p]) for p in prop]
        if not top:
            if any(drop):
                raise OracleInconsistent("false on the all-true point but true below it")
            return LearnResult(_const(0, prop), count, "conjunction", {"constant": 0})
        S = [p for p, d in zip(prop, drop) if not d]
        if not S:
            return LearnResult(_const(1, prop), count, "conjunction", {"constant": 1})
        return LearnResult(_chain("and", [Var(p) for p in sorted(S)]), count, "conjunction",
                           {"variables": sorted(S)})
    if contains(_V, c):
        bottom = ask(())
        units = [ask((p,)) for p in prop]
        if bottom:
            if not all(units):
                raise OracleInconsistent("true on the all-false point but false above it")
            return LearnResult(_const(1, prop), count, "disjunction", {"constant": 1})
        S = [p for p, u in zip(prop, units) if u]
        if not S:
            return LearnResult(_const(0, prop), count, "disjunction", {"constant": 0})
        return LearnResult(_chain("or", [Var(p) for p in sorted(S)]), count, "disjunction",
                           {"variables": sorted(S)})
    if contains(_L, c):
        c0 = ask(())
        S = [p for p in prop if ask((p,)) != c0]
        terms: list[Formula] = [_const(1, prop)] if c0 else []
        terms += [Var(p) for p in sorted(S)]
        formula = _chain("xor", terms) if terms else _const(0, prop)
        return LearnResult(formula, count, "affine", {"c0": c0, "coefficients": sorted(S)})
    raise NotLearnable(f"the clone {c} is outside the membership-query learnable families", clone=str(c))


def learn_mq(fragment: Basis | Iterable, prop: Sequence[str],
             oracle: Callable[[dict[str, int]], int], degree_cap: int = DEGREE_CAP) -> Formula:
    return learn_mq_detail(fragment, prop, oracle, degree_cap).formula


def table_oracle(f: BoolFn, prop: Sequence[str]) -> Callable[[dict[str, int]], int]:
    """Membership oracle answering from a truth table over ``prop``."""
    prop = tuple(prop)
    return lambda V: f.at(_index(prop, V))


# -- the parity lower bound --------------------------------------------------

@dataclass(frozen=True)
class ParityOutcome:
    status: str                                   # WitnessPair | Saturated
    rank: int
    witnesses: tuple[tuple[str, ...], ...] = ()   # odd subsets of prop

    def formulas(self) -> list[Formula]:
        return [parity_formula(s) for s in self.witnesses]

    def to_json(self) -> dict:
        out: dict = {"status": self.status, "rank": self.rank}
        if self.witnesses:
            out["witnesses"] = [list(s) for s in self.witnesses]
        return out


def parity_formula(subset: Sequence[str]) -> Formula:
    """An odd parity written with the ternary parity connective only."""
    xs: list[Formula] = [Var(p) for p in subset]
    if not xs or len(xs) % 2 == 0:
        raise ValueError("odd parities only")
    fn = named("xor3")
    out = xs[0]
    for k in range(1, len(xs), 2):
        out = Apply("xor3", fn, (out, xs[k], xs[k + 1]))
    return out


def parity_value(subset: Iterable[str], V: Mapping[str, int]) -> int:
    return sum(V.get(p, 0) for p in subset) & 1


def parity_lower_bound(prop: Sequence[str], examples: Iterable[LabeledExample]) -> ParityOutcome:
    """Two distinct odd parities fitting the examples, whenever they exist.

    The examples are augmented with the all-true assignment labeled 1, which
    holds for exactly the odd parities; the fitting parities are then the
    solutions of a linear system over GF(2).
    """
    prop = tuple(prop)
    n = len(prop)
    rows, rhs = [(1 << n) - 1], [1]
    for e in examples:
        rows.append(_index(prop, e.payload))
        rhs.append(e.label)
    sol = gf2.solve(rows, rhs, n)
    if sol is None:
        raise Inconsistent("no odd parity function fits the examples")
    if sol.rank == n:
        return ParityOutcome("Saturated", sol.rank, (tuple(p for k, p in enumerate(prop) if sol.particular >> k & 1),))
    other = sol.particular
    for v in sol.nullspace:
        other ^= v
    pick = lambda a: tuple(p for k, p in enumerate(prop) if a >> k & 1)  # noqa: E731
    return ParityOutcome("WitnessPair", sol.rank, (pick(sol.particular), pick(other)))
