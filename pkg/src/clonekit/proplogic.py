"""Propositional fragments: parse, evaluate, measure, tabulate, expressibility."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .boolfn import BoolFn
from .clones import Basis, as_basis, member
from .config import ARITY_CAP, CLOSURE_BUDGET
from .errors import ArityOutOfRange, KindMismatch, UnboundVariable
from .syntax import Apply, Node, Parser, Var, subformulas, variables

Formula = Node
Assignment = Mapping[str, int]


def parse(text: str, B: Basis | Iterable) -> Formula:
    return Parser(text, as_basis(B).names).parse()


def evaluate(phi: Formula, V: Assignment) -> int:
    memo: dict[Node, int] = {}

    def go(n: Node) -> int:
        hit = memo.get(n)
        if hit is not None:
            return hit
        if isinstance(n, Var):
            if n.name not in V:
                raise UnboundVariable(f"no value for {n.name!r}", name=n.name)
            v = 1 if V[n.name] else 0
        elif isinstance(n, Apply):
            v = n.fn(*(go(a) for a in n.args))
        else:
            raise KindMismatch(f"modal node {type(n).__name__} in a propositional formula")
        memo[n] = v
        return v

    return go(phi)


@dataclass(frozen=True)
class Size:
    tree: int
    dag: int

    def to_json(self) -> dict:
        return {"tree": self.tree, "dag": self.dag}


def tree_size(phi: Node) -> int:
    memo: dict[Node, int] = {}

    def go(n: Node) -> int:
        if n not in memo:
            memo[n] = 1 + sum(go(c) for c in n.children())
        return memo[n]

    return go(phi)


def measure(phi: Formula) -> Size:
    return Size(tree=tree_size(phi), dag=len(subformulas(phi)))


def bitsliced(phi: Formula, props: Sequence[str]) -> int:
    """Truth table of ``phi`` over ``props`` as a ``2**len(props)``-bit integer.

    Works for any number of variables; each variable is the periodic
    projection pattern and each connective is applied bit-parallel.
    """
    n = len(props)
    width = 1 << n
    mask = (1 << width) - 1
    pos = {p: k for k, p in enumerate(props)}
    memo: dict[Node, int] = {}

    def pattern(k: int) -> int:
        block = ((1 << (1 << k)) - 1) << (1 << k)  # ones on the upper half of each period
        period = 1 << (k + 1)
        reps = width // period
        out = 0
        for r in range(reps):
            out |= block << (r * period)
        return out

    def go(node: Node) -> int:
        hit = memo.get(node)
        if hit is not None:
            return hit
        if isinstance(node, Var):
            if node.name not in pos:
                raise UnboundVariable(f"{node.name!r} not among the declared props", name=node.name)
            v = pattern(pos[node.name])
        elif isinstance(node, Apply):
            v = node.fn.apply_bits([go(a) for a in node.args], mask)
        else:
            raise KindMismatch(f"modal node {type(node).__name__} in a propositional formula")
        memo[node] = v
        return v

    return go(phi)


def truth_table(phi: Formula, props: Sequence[str]) -> BoolFn:
    if not 1 <= len(props) <= ARITY_CAP:
        raise ArityOutOfRange(f"{len(props)} props outside 1..{ARITY_CAP}")
    return BoolFn(len(props), bitsliced(phi, props))


def sorted_vars(phi: Formula) -> list[str]:
    return sorted(variables(phi))


def expressible(phi: Formula, O: Basis | Iterable, budget: int = CLOSURE_BUDGET) -> bool:
    props = sorted_vars(phi)
    return member(truth_table(phi, props), as_basis(O), budget)
