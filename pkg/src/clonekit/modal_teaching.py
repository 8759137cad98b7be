"""Teaching sets for the modal fragment built from ◇, □, ¬ and ⊤ over K.

Every formula of this fragment is K-equivalent to a *prefix form*: a string
of modal operators in front of a literal or a constant.  Negations are pushed
inward through the dualities, and trailing operators that cannot matter are
dropped (``□⊤ ≡ ⊤`` and ``◇⊥ ≡ ⊥``).  Distinct prefix forms are inequivalent,
which is what makes the bounded enumeration in :func:`verify_unique_modal` a
meaningful check.

Chain models do most of the work.  On a chain every non-final world has a
single successor, so ◇ and □ agree there and only the final dead end tells
them apart.  Branching at a chosen depth separates ◇ from □ at that position,
and a world carrying a loop plus an edge to a dead end refutes every formula
of the form ``□χ`` with ``χ`` a nontrivial ⊤-form.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .boolfn import named
from .errors import BoundTooSmall, NotInFragment, UnsupportedLogic
from .modal import KripkeModel, PointedModel, chain, expand, logic
from .syntax import Apply, Box, Dia, Node, Use, Var, variables
from .teaching import LabeledExample, TeachingSet

DIA, BOX = "dia", "box"
FULL_FRAGMENT = frozenset({DIA, BOX, "not", "top"})
_DUAL = {DIA: BOX, BOX: DIA}
_FLIP = {"var": "neg", "neg": "var", "top": "bot", "bot": "top"}
_NOT, _TOP, _BOT = named("not"), named("top"), named("bot")


@dataclass(frozen=True, order=True)
class PrefixForm:
    ops: tuple[str, ...]
    base: str                 # var | neg | top | bot
    var: str | None = None

    def __post_init__(self):
        ops = list(self.ops)
        if self.base == "top":
            while ops and ops[-1] == BOX:
                ops.pop()
        elif self.base == "bot":
            while ops and ops[-1] == DIA:
                ops.pop()
        object.__setattr__(self, "ops", tuple(ops))
        if self.base in ("top", "bot"):
            object.__setattr__(self, "var", None)

    @property
    def depth(self) -> int:
        return len(self.ops)

    def negate(self) -> PrefixForm:
        return PrefixForm(tuple(_DUAL[o] for o in self.ops), _FLIP[self.base], self.var)

    def formula(self, anchor: str = "p") -> Node:
        """The form as a formula; constants are unary and take ``anchor`` as a dummy argument."""
        if self.base == "var":
            node: Node = Var(self.var)
        elif self.base == "neg":
            node = Apply("not", _NOT, (Var(self.var),))
        elif self.base == "top":
            node = Apply("top", _TOP, (Var(anchor),))
        else:
            node = Apply("bot", _BOT, (Var(anchor),))
        for o in reversed(self.ops):
            node = Dia(node) if o == DIA else Box(node)
        return node

    def extension(self, M: KripkeModel) -> int:
        if self.base in ("var", "neg"):
            s = M.extension(self.var)
            if self.base == "neg":
                s = M.full & ~s
        else:
            s = M.full if self.base == "top" else 0
        for o in reversed(self.ops):
            s = M.dia(s) if o == DIA else M.box(s)
        return s

    def holds(self, pm: PointedModel) -> int:
        return self.extension(pm.model) >> pm.model.index(pm.world) & 1

    def __str__(self) -> str:
        head = "".join("◇" if o == DIA else "□" for o in self.ops)
        tail = {"var": self.var, "neg": f"¬{self.var}", "top": "⊤", "bot": "⊥"}[self.base]
        return head + tail


def prefix_form(phi: Node) -> PrefixForm:
    """The prefix form of a formula in the fragment, or ``NotInFragment``."""
    ops: list[str] = []
    neg = False
    node = expand(phi) if any(isinstance(n, Use) for n in _walk(phi)) else phi
    while True:
        if isinstance(node, (Dia, Box)):
            o = DIA if isinstance(node, Dia) else BOX
            ops.append(_DUAL[o] if neg else o)
            node = node.arg
        elif isinstance(node, Apply) and node.fn == _NOT:
            neg = not neg
            node = node.args[0]
        elif isinstance(node, Apply) and node.fn.is_constant():
            value = node.fn.table & 1
            return PrefixForm(tuple(ops), "top" if value ^ neg else "bot")
        elif isinstance(node, Var):
            return PrefixForm(tuple(ops), "neg" if neg else "var", node.name)
        else:
            raise NotInFragment("only ◇, □, ¬ and ⊤/⊥ are allowed in this fragment",
                                formula=repr(node))


def _walk(phi: Node):
    stack = [phi]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(n.children())


def fragment_ops(fragment: Iterable[str] | None) -> frozenset[str]:
    if fragment is None:
        return FULL_FRAGMENT
    alias = {"◇": DIA, "<>": DIA, "diamond": DIA, "□": BOX, "[]": BOX, "¬": "not", "~": "not",
             "⊤": "top", "⊥": "bot"}
    ops = frozenset(alias.get(o, o) for o in fragment)
    unknown = ops - FULL_FRAGMENT - {"bot"}
    if unknown:
        raise NotInFragment(f"unsupported operators {sorted(unknown)}; use a subset of ◇, □, ¬, ⊤")
    return ops


def enumerate_forms(prop: Sequence[str], bound: int, fragment: Iterable[str] | None = None) -> list[PrefixForm]:
    """All prefix forms of modal depth ≤ ``bound`` expressible in the fragment."""
    frag = fragment_ops(fragment)
    mods = sorted({m for m in (DIA, BOX) if m in frag})
    negation = "not" in frag
    if negation and mods:
        mods = [BOX, DIA]
    bases: list[tuple[str, str | None]] = [("var", p) for p in prop]
    if negation:
        bases += [("neg", p) for p in prop]
    if "top" in frag:
        bases.append(("top", None))
        if negation:
            bases.append(("bot", None))
    if "bot" in frag:
        bases.append(("bot", None))
        if negation:
            bases.append(("top", None))
    out: set[PrefixForm] = set()
    for d in range(bound + 1):
        for ops in product(mods, repeat=d):
            for base, v in bases:
                out.add(PrefixForm(ops, base, v))
    return sorted(out, key=lambda f: (f.depth, f.base, f.var or "", f.ops))


# -- teaching -----------------------------------------------------------------

def _branching(n: int, i: int, good: Iterable[str], bad: Iterable[str]) -> PointedModel:
    """A chain to depth ``i-1`` that then splits into two chains reaching depth ``n``."""
    worlds = [str(k) for k in range(i)]
    rel = {(str(k), str(k + 1)) for k in range(i - 1)}
    val: dict[str, frozenset[str]] = {}
    for tag, props in (("g", frozenset(good)), ("b", frozenset(bad))):
        prev = str(i - 1)
        for k in range(i, n + 1):
            w = f"{tag}{k}"
            worlds.append(w)
            rel.add((prev, w))
            prev = w
        val[prev] = props
    return PointedModel(KripkeModel(tuple(worlds), frozenset(rel), val), "0")


def _loop_then_dead_end(n: int) -> PointedModel:
    """Chain ``0..n`` whose last world has a loop and an edge to a dead end."""
    M = chain(n + 1)
    rel = set(M.rel) | {(str(n), str(n))}
    return PointedModel(KripkeModel(M.worlds, frozenset(rel), {}), "0")


def _reflexive_point(props: Iterable[str]) -> PointedModel:
    return PointedModel(KripkeModel(("0",), frozenset({("0", "0")}), {"0": frozenset(props)}), "0")


def teach_modal(phi: Node, prop: Sequence[str] | None = None, logic_name: str = "K") -> TeachingSet:
    """A set of labeled pointed models that singles out ``phi`` in its fragment over K."""
    if logic_name != "K":
        logic(logic_name)
        raise UnsupportedLogic("modal teaching sets are constructed over K only", logic=logic_name)
    form = prefix_form(phi)
    prop = tuple(prop) if prop else tuple(sorted(variables(phi))) or ("p",)
    if form.var is not None and form.var not in prop:
        raise NotInFragment(f"variable {form.var!r} is not in prop")
    n = form.depth
    models: list[PointedModel] = []
    if form.base in ("var", "neg"):
        p = form.var
        models.append(PointedModel(chain(n, {n: [p]}), "0"))
        models.append(PointedModel(chain(n), "0"))
        # the base literal holds at the end of the good branch only
        good, bad = ([p], []) if form.base == "var" else ([], [p])
        for i in range(1, n + 1):
            models.append(_branching(n, i, good, bad))
        method = "literal"
    else:
        models.append(_reflexive_point(()))
        models.append(_reflexive_point(prop))
        models.extend(PointedModel(chain(m), "0") for m in range(n + 1))
        models.append(_loop_then_dead_end(n))
        method = "constant"
    examples = tuple(LabeledExample(pm, form.holds(pm)) for pm in models)
    return TeachingSet(examples, FULL_FRAGMENT, prop, method)


# -- bounded verification ---------------------------------------------------

@dataclass(frozen=True)
class ModalVerification:
    status: str                     # UniqueUpToBound | Ambiguous | NotFitting
    bound: int
    witness: PrefixForm | None = None
    candidates: int = 0

    def to_json(self) -> dict:
        out: dict = {"status": self.status, "bound": self.bound, "candidates": self.candidates}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        return out


def verify_unique_modal(phi: Node, examples: Iterable[LabeledExample], fragment: Iterable[str] | None = None,
                        prop: Sequence[str] | None = None, bound: int | None = None) -> ModalVerification:
    """Search every prefix form of depth ≤ ``bound`` for a second formula fitting the examples.

    An ``Ambiguous`` answer is a genuine refutation.  ``UniqueUpToBound`` only
    says that nothing up to the bound fits.
    """
    form = prefix_form(phi)
    prop = tuple(prop) if prop else tuple(sorted(variables(phi))) or ("p",)
    if bound is None:
        bound = form.depth + 1
    if bound < form.depth + 1:
        raise BoundTooSmall(f"bound {bound} is below depth + 1 = {form.depth + 1}",
                            bound=bound, needed=form.depth + 1)
    examples = [e for e in examples]
    for e in examples:
        if not isinstance(e.payload, PointedModel):
            raise NotInFragment("modal verification needs pointed-model examples")
    if any(form.holds(e.payload) != e.label for e in examples):
        return ModalVerification("NotFitting", bound)
    forms = enumerate_forms(prop, bound, fragment)
    # same-depth rivals first: they make the most instructive witnesses
    forms.sort(key=lambda f: (abs(f.depth - form.depth), f.depth, f.base != form.base, f.ops))
    for cand in forms:
        if cand == form:
            continue
        if all(cand.holds(e.payload) == e.label for e in examples):
            return ModalVerification("Ambiguous", bound, cand, len(forms))
    return ModalVerification("UniqueUpToBound", bound, None, len(forms))
