"""Modal fragments: substitution, expansion, Kripke semantics and simple fragments.

Model checking works on world sets packed into ints: bit ``i`` stands for
the ``i``-th world, so every subformula is evaluated once for all worlds
and each Boolean connective is a single bit-parallel application.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping

from .clones import (Basis, NamedClone, all_named, as_basis, clone, contains, identify, join)
from .classifier import BOX, DIA, modal_set
from .config import DEGREE_CAP
from .errors import (BadModel, ModalSetMismatch, TypeCUnsupported, UnknownWorld,
                     UnsupportedLogic)
from .proplogic import Size, measure
from .syntax import Apply, Box, DefinedOp, Dia, Node, Parser, Use, Var

ModalFormula = Node


# -- syntax ------------------------------------------------------------------

def parse_modal(text: str, B: Basis | Iterable = (), defined: Mapping[str, DefinedOp] | None = None) -> Node:
    return Parser(text, as_basis(B).names, modal=True, defined=defined).parse()


def define(name: str, body: str, B: Basis | Iterable = (),
           defined: Mapping[str, DefinedOp] | None = None) -> DefinedOp:
    """``define("gamma", "dia x & dia ~x", ["and", "not"])``; placeholders are the sorted variables."""
    return DefinedOp(name, parse_modal(body, B, defined))


def substitute(phi: Node, sigma: Mapping[str, Node]) -> Node:
    if not sigma:
        return phi
    memo: dict[Node, Node] = {}

    def go(n: Node) -> Node:
        hit = memo.get(n)
        if hit is not None:
            return hit
        if isinstance(n, Var):
            out = sigma.get(n.name, n)
        elif isinstance(n, Apply):
            out = Apply(n.name, n.fn, [go(a) for a in n.args])
        elif isinstance(n, Dia):
            out = Dia(go(n.arg))
        elif isinstance(n, Box):
            out = Box(go(n.arg))
        elif isinstance(n, Use):
            out = Use(n.op, [go(a) for a in n.args])
        else:  # pragma: no cover
            raise TypeError(n)
        memo[n] = out
        return out

    return go(phi)


def expand(phi: Node) -> Node:
    """Replace every defined-operator application by its (expanded) body."""
    memo: dict[Node, Node] = {}

    def go(n: Node) -> Node:
        hit = memo.get(n)
        if hit is not None:
            return hit
        if isinstance(n, Var):
            out = n
        elif isinstance(n, Apply):
            out = Apply(n.name, n.fn, [go(a) for a in n.args])
        elif isinstance(n, Dia):
            out = Dia(go(n.arg))
        elif isinstance(n, Box):
            out = Box(go(n.arg))
        elif isinstance(n, Use):
            body = expand(n.op.body)
            out = substitute(body, dict(zip(n.op.params, (go(a) for a in n.args))))
        else:  # pragma: no cover
            raise TypeError(n)
        memo[n] = out
        return out

    return go(phi)


def depth(phi: Node) -> int:
    """Modal depth of the expanded formula."""
    memo: dict[Node, int] = {}

    def go(n: Node) -> int:
        if n in memo:
            return memo[n]
        if isinstance(n, Var):
            d = 0
        elif isinstance(n, (Dia, Box)):
            d = 1 + go(n.arg)
        elif isinstance(n, Use):
            inner = {p: go(a) for p, a in zip(n.op.params, n.args)}
            d = _depth_with(n.op.body, inner)
        else:
            d = max((go(a) for a in n.children()), default=0)
        memo[n] = d
        return d

    return go(phi)


def _depth_with(body: Node, env: Mapping[str, int]) -> int:
    if isinstance(body, Var):
        return env.get(body.name, 0)
    if isinstance(body, (Dia, Box)):
        return 1 + _depth_with(body.arg, env)
    if isinstance(body, Use):
        inner = {p: _depth_with(a, env) for p, a in zip(body.op.params, body.args)}
        return _depth_with(body.op.body, inner)
    return max((_depth_with(a, env) for a in body.children()), default=0)


def measure_modal(phi: Node) -> Size:
    """Tree and DAG size; a defined operator counts as one node."""
    return measure(phi)


# -- Kripke models -----------------------------------------------------------

@dataclass(frozen=True)
class KripkeModel:
    worlds: tuple[str, ...]
    rel: frozenset[tuple[str, str]]
    val: Mapping[str, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self):
        ws = tuple(str(w) for w in self.worlds)
        if len(set(ws)) != len(ws):
            raise BadModel("duplicate world names")
        rel = frozenset((str(u), str(v)) for u, v in self.rel)
        known = set(ws)
        bad = [(u, v) for u, v in rel if u not in known or v not in known]
        if bad:
            raise BadModel(f"relation mentions unknown worlds: {sorted(bad)[:3]}")
        val = {str(w): frozenset(ps) for w, ps in dict(self.val).items()}
        if set(val) - known:
            raise BadModel(f"valuation mentions unknown worlds: {sorted(set(val) - known)}")
        object.__setattr__(self, "worlds", ws)
        object.__setattr__(self, "rel", rel)
        object.__setattr__(self, "val", val)
        index = {w: i for i, w in enumerate(ws)}
        succ = [0] * len(ws)
        for u, v in rel:
            succ[index[u]] |= 1 << index[v]
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_succ", tuple(succ))

    def __hash__(self):
        return hash((self.worlds, self.rel, tuple(sorted((w, tuple(sorted(p))) for w, p in self.val.items()))))

    def __eq__(self, other):
        return (isinstance(other, KripkeModel) and self.worlds == other.worlds and self.rel == other.rel
                and {w: p for w, p in self.val.items() if p} == {w: p for w, p in other.val.items() if p})

    @property
    def size(self) -> int:
        return len(self.worlds)

    @property
    def full(self) -> int:
        return (1 << len(self.worlds)) - 1

    def index(self, w: str) -> int:
        try:
            return self._index[str(w)]
        except KeyError:
            raise UnknownWorld(f"no world {w!r} in the model", world=str(w)) from None

    def successors(self, w: str) -> list[str]:
        s = self._succ[self.index(w)]
        return [x for i, x in enumerate(self.worlds) if s >> i & 1]

    def extension(self, p: str) -> int:
        return sum(1 << i for i, w in enumerate(self.worlds) if p in self.val.get(w, ()))

    def dia(self, s: int) -> int:
        return sum(1 << i for i, m in enumerate(self._succ) if m & s)

    def box(self, s: int) -> int:
        return sum(1 << i for i, m in enumerate(self._succ) if not m & ~s)

    def to_json(self, point: str | None = None) -> dict:
        out = {"worlds": list(self.worlds), "rel": [list(e) for e in sorted(self.rel)],
               "val": {w: sorted(self.val.get(w, ())) for w in self.worlds if self.val.get(w)}}
        if point is not None:
            out["point"] = str(point)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> KripkeModel:
        try:
            return cls(tuple(data["worlds"]), frozenset(tuple(e) for e in data.get("rel", [])),
                       {str(k): frozenset(v) for k, v in data.get("val", {}).items()})
        except (KeyError, TypeError, ValueError) as e:
            raise BadModel(f"malformed model: {e}") from None


@dataclass(frozen=True)
class PointedModel:
    model: KripkeModel
    world: str

    def __post_init__(self):
        object.__setattr__(self, "world", str(self.world))
        self.model.index(self.world)

    def to_json(self) -> dict:
        return self.model.to_json(self.world)

    @classmethod
    def from_json(cls, data: Mapping) -> PointedModel:
        if "point" not in data:
            raise BadModel("pointed model needs a 'point' field")
        return cls(KripkeModel.from_json(data), str(data["point"]))


def load_model(path: str | Path) -> PointedModel | KripkeModel:
    data = json.loads(Path(path).read_text())
    return PointedModel.from_json(data) if "point" in data else KripkeModel.from_json(data)


def chain(n: int, val: Mapping[int, Iterable[str]] | None = None, loop_last: bool = False) -> KripkeModel:
    """Worlds ``0 -> 1 -> ... -> n`` (non-transitive), optionally with a loop at ``n``."""
    rel = {(str(i), str(i + 1)) for i in range(n)}
    if loop_last:
        rel.add((str(n), str(n)))
    return KripkeModel(tuple(str(i) for i in range(n + 1)), frozenset(rel),
                       {str(k): frozenset(v) for k, v in (val or {}).items()})


def extension(M: KripkeModel, phi: Node) -> int:
    """Set of worlds (as a bitmask) where ``phi`` holds.

    Defined operators are evaluated directly: the body is evaluated with its
    placeholders bound to the argument extensions.
    """
    full = M.full

    def ev(n: Node, env: Mapping[str, int] | None, memo: dict) -> int:
        hit = memo.get(n)
        if hit is not None:
            return hit
        if isinstance(n, Var):
            v = env[n.name] if env is not None and n.name in env else (M.extension(n.name) if env is None else 0)
        elif isinstance(n, Apply):
            v = n.fn.apply_bits([ev(a, env, memo) for a in n.args], full)
        elif isinstance(n, Dia):
            v = M.dia(ev(n.arg, env, memo))
        elif isinstance(n, Box):
            v = M.box(ev(n.arg, env, memo))
        elif isinstance(n, Use):
            args = {p: ev(a, env, memo) for p, a in zip(n.op.params, n.args)}
            v = ev(n.op.body, args, {})
        else:  # pragma: no cover
            raise TypeError(n)
        memo[n] = v
        return v

    return ev(phi, None, {})


def mc(M: KripkeModel | PointedModel, w: str | None, phi: Node) -> int:
    if isinstance(M, PointedModel):
        M, w = M.model, (w if w is not None else M.world)
    i = M.index(w)
    return extension(M, phi) >> i & 1


# -- logics and frame conditions --------------------------------------------

def _reflexive(M: KripkeModel) -> bool:
    return all((w, w) in M.rel for w in M.worlds)


def _serial(M: KripkeModel) -> bool:
    return all(M._succ[i] for i in range(M.size))


def _transitive(M: KripkeModel) -> bool:
    return all((u, x) in M.rel for u, v in M.rel for y, x in M.rel if y == v)


def _symmetric(M: KripkeModel) -> bool:
    return all((v, u) in M.rel for u, v in M.rel)


def _irreflexive(M: KripkeModel) -> bool:
    return all(u != v for u, v in M.rel)


@dataclass(frozen=True)
class Override:
    """A logic-specific definability fact: ``constant`` becomes definable."""

    M: frozenset[str]
    requires: NamedClone   # the fact applies when the clone contains this one
    adds: str              # "top" or "bot"
    note: str


@dataclass(frozen=True)
class LogicEntry:
    name: str
    makinson_type: str
    frame_checker: Callable[[KripkeModel], bool]
    fact_overrides: tuple[Override, ...] = ()


LOGICS: dict[str, LogicEntry] = {e.name: e for e in (
    LogicEntry("K", "A", lambda M: True),
    LogicEntry("KD", "A", _serial),
    LogicEntry("T", "A", _reflexive),
    LogicEntry("K4", "A", _transitive),
    LogicEntry("S4", "A", lambda M: _reflexive(M) and _transitive(M)),
    LogicEntry("S5", "A", lambda M: _reflexive(M) and _transitive(M) and _symmetric(M)),
    LogicEntry("Triv", "A", lambda M: M.rel == frozenset((w, w) for w in M.worlds)),
    LogicEntry("Verum", "B", lambda M: not M.rel),
    # on finite frames, transitive and irreflexive means conversely well-founded
    LogicEntry("GL", "C", lambda M: _transitive(M) and _irreflexive(M), (
        Override(frozenset({DIA, BOX}), NamedClone("V2"), "top",
                 "⊤ attainable: □φ ∨ ◇□φ is a GL theorem"),
    )),
)}


def logic(name: str) -> LogicEntry:
    try:
        return LOGICS[name]
    except KeyError:
        raise UnsupportedLogic(f"unknown logic {name!r}", supported=sorted(LOGICS)) from None


def makinson_type(name: str) -> str:
    return logic(name).makinson_type


# -- Clos for simple fragments ----------------------------------------------

@dataclass(frozen=True)
class ClosResult:
    lower: NamedClone
    upper: NamedClone
    notes: tuple[str, ...] = ()

    @property
    def exact(self) -> NamedClone | None:
        return self.lower if self.lower == self.upper else None

    def to_json(self) -> dict:
        if self.exact is not None:
            out: dict = {"exact": self.exact.to_json()}
        else:
            out = {"interval": [self.lower.to_json(), self.upper.to_json()]}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


_CONST = {"top": NamedClone("I1"), "bot": NamedClone("I0")}


def _with_constants(C: NamedClone, M: frozenset[str], degree_cap: int) -> NamedClone:
    out = C
    if DIA in M:
        out = join(out, _CONST["bot"], degree_cap)
    if BOX in M:
        out = join(out, _CONST["top"], degree_cap)
    return out


def clos(logic_name: str, M: Iterable[str] | str, C: NamedClone | str,
         degree_cap: int = DEGREE_CAP) -> ClosResult:
    entry = logic(logic_name)
    ops = modal_set(M)
    C = clone(C) if isinstance(C, str) else C
    if entry.makinson_type == "A":
        return ClosResult(C, C)
    upper = _with_constants(C, ops, degree_cap)
    if entry.makinson_type == "B":
        return ClosResult(upper, upper)
    lower, notes = C, []
    for o in entry.fact_overrides:
        if o.M == ops and contains(C, o.requires, degree_cap):
            lower = join(lower, _CONST[o.adds], degree_cap)
            notes.append(o.note)
    assert contains(upper, lower, degree_cap)
    return ClosResult(lower, upper, tuple(notes))


@dataclass(frozen=True)
class SimpleFragment:
    M: frozenset[str]
    O: Basis

    @classmethod
    def of(cls, M: Iterable[str] | str, O: Basis | Iterable) -> SimpleFragment:
        return cls(modal_set(M), as_basis(O))

    def clone(self, degree_cap: int = DEGREE_CAP) -> NamedClone:
        return identify(self.O, degree_cap)


def simple_leq(F1: SimpleFragment, F2: SimpleFragment, logic_name: str,
               degree_cap: int = DEGREE_CAP) -> bool:
    entry = logic(logic_name)
    if F1.M != F2.M:
        raise ModalSetMismatch("both fragments must use the same modal operators",
                               left=sorted(F1.M), right=sorted(F2.M))
    if entry.makinson_type == "C":
        raise TypeCUnsupported(f"{logic_name} is of type C; containment is not decided there")
    c1 = clos(logic_name, F1.M, F1.clone(degree_cap), degree_cap).exact
    c2 = clos(logic_name, F2.M, F2.clone(degree_cap), degree_cap).exact
    return contains(c2, c1, degree_cap)


def simple_complete(F: SimpleFragment, logic_name: str, degree_cap: int = DEGREE_CAP) -> str:
    """``"Yes"``, ``"No"`` or ``"Unknown"`` (only inside a type-C gap)."""
    logic(logic_name)
    if not F.M:
        return "No"
    r = clos(logic_name, F.M, F.clone(degree_cap), degree_cap)
    bf = NamedClone("BF")
    if r.lower == bf:
        return "Yes"
    if r.upper != bf:
        return "No"
    return "Unknown"


def named_clones(degree_cap: int = DEGREE_CAP) -> list[NamedClone]:
    return all_named(degree_cap)
