"""Concept-class reductions that carry teaching lower bounds between fragments.

A reduction is a pair ``(f, h)``: ``f`` maps source formulas to target
formulas and ``h`` maps source examples to target examples.  Two conditions
must hold:

1. ``h(e)`` fits ``f(c)`` exactly when ``e`` fits ``c``;
2. every target example ``e2`` is useless for telling the images apart: the
   set of source concepts whose images ``e2`` satisfies is either everything,
   nothing, or the set cut out by some source example.

:func:`verify_pc` checks both by brute force.  Concept sets are packed into
bit rows (one bit per source concept) so that condition 2 is a set lookup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Mapping, Sequence

import numpy as np

from .boolfn import BoolFn, affine_form, all_functions, named
from .errors import NotInSourceFragment
from .modal import KripkeModel, PointedModel, chain, expand, mc
from .proplogic import evaluate, truth_table
from .syntax import Apply, Box, Dia, Node, Use, Var, show, variables
from .teaching import parity_formula

KINDS = ("oxor", "aimp", "modal_diamond", "modal_box")
_AND, _IMP, _OR, _NOT = named("and"), named("imp"), named("or"), named("not")
_AIMP, _OXOR = named("aimp"), named("oxor")

Assignment = Mapping[str, int]


def _check_kind(kind: str) -> str:
    if kind not in KINDS:
        raise NotInSourceFragment(f"unknown reduction kind {kind!r}", supported=list(KINDS))
    return kind


def fresh_name(prop: Sequence[str], base: str = "w") -> str:
    name = base
    while name in prop:
        name += "_"
    return name


# -- the concept maps -------------------------------------------------------

def _oxor_image(subset: Sequence[str], w: str) -> Node:
    W = Var(w)
    out: Node = Apply("oxor", _OXOR, (W, W, Var(subset[0])))
    for q in subset[1:]:
        out = Apply("oxor", _OXOR, (W, Var(q), out))
    return out


def _aimp_inner(phi: Node, W: Var) -> Node:
    if isinstance(phi, Var):
        return phi
    if isinstance(phi, Apply) and phi.fn == _AND:
        return Apply("aimp", _AIMP, (_aimp_inner(phi.args[0], W), W, _aimp_inner(phi.args[1], W)))
    if isinstance(phi, Apply) and phi.fn == _IMP:
        return Apply("aimp", _AIMP, (W, _aimp_inner(phi.args[0], W), _aimp_inner(phi.args[1], W)))
    raise NotInSourceFragment("the aimp reduction takes formulas over ∧ and → only", formula=show(phi))


def _modal_power(k: int, op: type, p: str) -> Node:
    node: Node = Var(p)
    for _ in range(k):
        node = op(node)
    return node


@dataclass(frozen=True)
class PCImage:
    kind: str
    source: Node
    image: Node
    prop: tuple[str, ...]
    example_map: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"kind": self.kind, "image": show(self.image), "prop": list(self.prop),
                "example_map": self.example_map}


def pc_reduce(kind: str, phi: Node, prop: Sequence[str] | None = None) -> PCImage:
    """Image of ``phi`` under the concept map of ``kind``, with a description of ``h``."""
    _check_kind(kind)
    prop = tuple(prop) if prop else tuple(sorted(variables(phi)))
    extra = variables(phi) - set(prop)
    if extra:
        raise NotInSourceFragment(f"variables {sorted(extra)} are outside prop")
    if kind == "oxor":
        w = fresh_name(prop)
        form = affine_form(truth_table(phi, prop))
        if form is None or form[0] != 0 or bin(form[1]).count("1") % 2 == 0:
            raise NotInSourceFragment("the oxor reduction takes odd parities only", formula=show(phi))
        subset = [p for k, p in enumerate(prop) if form[1] >> k & 1]
        return PCImage(kind, phi, _oxor_image(subset, w), prop, {"extend": {w: 0}})
    if kind == "aimp":
        w = fresh_name(prop)
        W = Var(w)
        image = Apply("aimp", _AIMP, (W, W, _aimp_inner(phi, W)))
        return PCImage(kind, phi, image, prop, {"extend": {w: 1}})
    if is_modal_source(phi):
        raise NotInSourceFragment("the source of a modal reduction is propositional")
    op = Dia if kind == "modal_diamond" else Box
    target = "p"
    sigma = {q: _modal_power(i, op, target) for i, q in enumerate(prop)}
    from .modal import substitute
    image = substitute(phi, sigma)
    return PCImage(kind, phi, image, prop, {
        "chain": len(prop), "point": "0", "variable": target,
        "valuation": {str(i): q for i, q in enumerate(prop)},
    })


def is_modal_source(phi: Node) -> bool:
    from .syntax import is_modal
    return is_modal(phi)


# -- the example maps -------------------------------------------------------

def extend_map(extra: Mapping[str, int]) -> Callable[[Assignment], dict[str, int]]:
    return lambda V: {**V, **extra}


def chain_map(prop: Sequence[str], target: str = "p", shift: int = 0) -> Callable[[Assignment], PointedModel]:
    """``V`` ↦ the chain ``0 → … → n-1`` pointed at 0, with ``target`` at world ``i`` iff ``V(p_i)``.

    A nonzero ``shift`` moves the valuation along the chain and lengthens it;
    it exists to build deliberately broken maps for mutation tests.
    """
    prop = tuple(prop)

    def h(V: Assignment) -> PointedModel:
        n = len(prop)
        M = chain(n - 1 + shift, {i + shift: [target] for i, q in enumerate(prop) if V.get(q, 0)})
        return PointedModel(M, "0")

    return h


def default_example_map(kind: str, prop: Sequence[str]):
    if kind == "oxor":
        return extend_map({fresh_name(prop): 0})
    if kind == "aimp":
        return extend_map({fresh_name(prop): 1})
    return chain_map(prop)


# -- source concept classes --------------------------------------------------

def _assignments(prop: Sequence[str]) -> list[dict[str, int]]:
    return [{q: (i >> k) & 1 for k, q in enumerate(prop)} for i in range(1 << len(prop))]


def _synthesize(prop: Sequence[str], connectives: Sequence[tuple[str, BoolFn]]) -> dict[BoolFn, Node]:
    """One shortest-found formula per function generated by binary ``connectives`` over ``prop``."""
    n = len(prop)
    found: dict[BoolFn, Node] = {}
    for k, q in enumerate(prop):
        found.setdefault(truth_table(Var(q), prop), Var(q))
    while True:
        items = list(found.items())
        new: dict[BoolFn, Node] = {}
        for (f, a), (g, b) in product(items, repeat=2):
            for name, fn in connectives:
                t = BoolFn(n, _combine(fn, f.table, g.table, n))
                if t not in found and t not in new:
                    new[t] = Apply(name, fn, (a, b))
        if not new:
            return found
        found.update(new)


def _combine(fn: BoolFn, x: int, y: int, n: int) -> int:
    mask = (1 << (1 << n)) - 1
    return fn.apply_bits((x, y), mask)


def _dnf(f: BoolFn, prop: Sequence[str]) -> Node:
    p0 = Var(prop[0])
    if f.table == 0:
        return Apply("bot", named("bot"), (p0,))
    if f.table == f.mask:
        return Apply("top", named("top"), (p0,))
    terms = []
    for i in range(f.size):
        if f.at(i):
            lits = [Var(q) if i >> k & 1 else Apply("not", _NOT, (Var(q),)) for k, q in enumerate(prop)]
            t = lits[0]
            for lit in lits[1:]:
                t = Apply("and", _AND, (t, lit))
            terms.append(t)
    out = terms[0]
    for t in terms[1:]:
        out = Apply("or", _OR, (out, t))
    return out


def source_concepts(kind: str, prop: Sequence[str]) -> list[Node]:
    """Representative formulas, one per source concept over ``prop``."""
    _check_kind(kind)
    prop = tuple(prop)
    if kind == "oxor":
        n = len(prop)
        return [parity_formula([q for k, q in enumerate(prop) if s >> k & 1])
                for s in range(1, 1 << n) if bin(s).count("1") % 2]
    if kind == "aimp":
        found = _synthesize(prop, [("and", _AND), ("imp", _IMP)])
        return [found[f] for f in sorted(found, key=lambda f: f.table)]
    return [_dnf(f, prop) for f in all_functions(len(prop))]


# -- verification -------------------------------------------------------------

@dataclass(frozen=True)
class PCReport:
    kind: str
    n: int
    status: str                 # pass | pass-at-bound | fail
    concepts: int
    condition1: bool
    condition2: bool | None     # None when condition 1 already failed
    targets_checked: int
    model_bound: int | None = None
    counterexample: dict | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "n": self.n, "status": self.status, "concepts": self.concepts,
               "condition1": self.condition1, "condition2": self.condition2,
               "targets_checked": self.targets_checked}
        if self.model_bound is not None:
            out["model_bound"] = self.model_bound
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def _row_bytes(bits: np.ndarray) -> np.ndarray:
    """Pack boolean rows (shape ``(rows, concepts)``) into comparable byte rows."""
    return np.packbits(bits.astype(bool), axis=1)


def verify_pc(kind: str, n: int, k: int = 4, h: Callable | None = None) -> PCReport:
    """Brute-force check of both reduction conditions for sources over ``n`` variables.

    Propositional kinds are checked over every target assignment; modal kinds
    over every pointed model with at most ``k`` worlds and the one variable
    ``p``, which can only confirm condition 2 up to that bound.
    """
    _check_kind(kind)
    if not 1 <= n <= 3:
        raise NotInSourceFragment("reductions are verified for 1 ≤ n ≤ 3 source variables", n=n)
    prop = tuple(f"p{i}" for i in range(n))
    concepts = source_concepts(kind, prop)
    images = [pc_reduce(kind, c, prop).image for c in concepts]
    h = h or default_example_map(kind, prop)
    modal = kind.startswith("modal")
    V_all = _assignments(prop)

    # condition 1, and the source rows {c : V ⊨ c} for condition 2
    source_rows = np.zeros((len(V_all), len(concepts)), dtype=bool)
    for j, (c, img) in enumerate(zip(concepts, images)):
        for i, V in enumerate(V_all):
            want = evaluate(c, V)
            source_rows[i, j] = want
            e2 = h(V)
            got = mc(e2, None, img) if modal else evaluate(img, _total(e2, img))
            if got != want:
                cex = {"concept": show(c), "image": show(img), "assignment": V,
                       "mapped": e2.to_json() if modal else e2, "expected": want, "got": got}
                return PCReport(kind, n, "fail", len(concepts), False, None, 0,
                                k if modal else None, cex)

    allowed = {bytes(r) for r in _row_bytes(source_rows)}
    allowed.add(bytes(_row_bytes(np.zeros((1, len(concepts)), bool))[0]))
    allowed.add(bytes(_row_bytes(np.ones((1, len(concepts)), bool))[0]))

    if modal:
        checked, bad = _modal_condition2(images, k, allowed)
    else:
        checked, bad = _prop_condition2(images, prop, allowed)
    if bad is not None:
        return PCReport(kind, n, "fail", len(concepts), True, False, checked, k if modal else None, bad)
    status = "pass-at-bound" if modal else "pass"
    return PCReport(kind, n, status, len(concepts), True, True, checked, k if modal else None)


def _total(V: Mapping[str, int], phi: Node) -> dict[str, int]:
    return {q: int(V.get(q, 0)) for q in variables(phi)}


def _prop_condition2(images: list[Node], prop: Sequence[str], allowed: set[bytes]):
    names = sorted(set(prop).union(*(variables(i) for i in images)))
    rows = np.zeros((1 << len(names), len(images)), dtype=bool)
    targets = _assignments(names)
    for j, img in enumerate(images):
        for i, V in enumerate(targets):
            rows[i, j] = evaluate(img, _total(V, img))
    for i, r in enumerate(_row_bytes(rows)):
        if bytes(r) not in allowed:
            return len(targets), {"target": targets[i],
                                  "satisfied_by": [j for j in range(len(images)) if rows[i, j]]}
    return len(targets), None


# -- vectorized model checking over all small models --------------------------

def _batch_eval(phi: Node, R: np.ndarray, P: np.ndarray, memo: dict) -> np.ndarray:
    """Extension of ``phi`` in a batch of models: ``R`` is (B, k, k), ``P`` is (B, k)."""
    hit = memo.get(phi)
    if hit is not None:
        return hit
    if isinstance(phi, Var):
        out = P if phi.name == "p" else np.zeros_like(P)
    elif isinstance(phi, Apply):
        args = [_batch_eval(a, R, P, memo) for a in phi.args]
        idx = np.zeros(P.shape, dtype=np.uint64)
        for pos, a in enumerate(args):
            idx |= a.astype(np.uint64) << np.uint64(pos)
        out = ((np.uint64(phi.fn.table) >> idx) & np.uint64(1)).astype(bool)
    elif isinstance(phi, Dia):
        a = _batch_eval(phi.arg, R, P, memo)
        out = (R & a[:, None, :]).any(axis=2)
    elif isinstance(phi, Box):
        a = _batch_eval(phi.arg, R, P, memo)
        out = (~R | a[:, None, :]).all(axis=2)
    elif isinstance(phi, Use):
        out = _batch_eval(expand(phi), R, P, memo)
    else:  # pragma: no cover
        raise TypeError(phi)
    memo[phi] = out
    return out


def _modal_condition2(images: list[Node], k: int, allowed: set[bytes], chunk: int = 1 << 12):
    checked = 0
    for size in range(1, k + 1):
        edges = size * size
        vals = np.array([[(v >> i) & 1 for i in range(size)] for v in range(1 << size)], dtype=bool)
        for start in range(0, 1 << edges, chunk):
            codes = np.arange(start, min(start + chunk, 1 << edges), dtype=np.int64)
            rel = ((codes[:, None] >> np.arange(edges)) & 1).astype(bool).reshape(-1, size, size)
            R = np.repeat(rel, len(vals), axis=0)
            P = np.tile(vals, (len(rel), 1))
            memo: dict = {}
            cols = np.stack([_batch_eval(img, R, P, memo) for img in images], axis=-1)
            rows = _row_bytes(cols.reshape(-1, len(images)))
            checked += rows.shape[0]
            uniq = np.unique(rows, axis=0)
            for r in uniq:
                if bytes(r) not in allowed:
                    pos = int(np.flatnonzero((rows == r).all(axis=1))[0])
                    b, w = divmod(pos, size)
                    M = KripkeModel(tuple(str(i) for i in range(size)),
                                    frozenset((str(u), str(v)) for u in range(size) for v in range(size)
                                              if R[b, u, v]),
                                    {str(i): frozenset({"p"}) for i in range(size) if P[b, i]})
                    return checked, {"model": M.to_json(str(w)),
                                     "satisfied_by": [j for j in range(len(images)) if cols[b, w, j]]}
    return checked, None
