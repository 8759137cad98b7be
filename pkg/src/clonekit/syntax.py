"""Formula trees and the text grammar shared by the propositional and modal layers.

Grammar (lowest precedence first, all binary operators left-associative)::

    expr   := level1
    level1 := level2 (("->" | "→" | "<->" | "↔") level2)*
    level2 := level3 (("^" | "⊕" | "-/>" | "↛") level3)*
    level3 := level4 (("|" | "∨") level4)*
    level4 := unary (("&" | "∧") unary)*
    unary  := ("~" | "!" | "¬") unary
            | ("<>" | "◇" | "[]" | "□" | "dia" | "box") unary   (modal grammar only)
            | name "(" expr ("," expr)* ")"           (prefix application)
            | name                                    (variable)
            | "(" expr ")"

Every connective, infix or prefix, must be declared in the basis passed to
the parser.  Infix symbols resolve to the catalog names ``and``, ``or``,
``xor``, ``imp``, ``eq``, ``nimp`` and ``not``; a basis entry with the same
truth table under another name is accepted too.
"""

from __future__ import annotations

import re
from typing import Iterator, Mapping

from .boolfn import BoolFn
from .errors import ArityMismatch, FormulaSyntaxError, UndeclaredConnective


class Node:
    """Base class: immutable, structurally compared, hash cached."""

    __slots__ = ("_hash",)

    def children(self) -> tuple[Node, ...]:
        return ()

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return show(self)


class Var(Node):
    __slots__ = ("name",)

    def __init__(self, name: str):
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_hash", hash(("var", name)))

    def __eq__(self, other):
        return self is other or (isinstance(other, Var) and other.name == self.name)

    __hash__ = Node.__hash__

    def __setattr__(self, *_):
        raise AttributeError("immutable")


class Apply(Node):
    __slots__ = ("name", "fn", "args")

    def __init__(self, name: str, fn: BoolFn, args):
        args = tuple(args)
        if len(args) != fn.arity:
            raise ArityMismatch(f"{name} takes {fn.arity} arguments, got {len(args)}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "fn", fn)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "_hash", hash(("app", name, fn, args)))

    def children(self):
        return self.args

    def __eq__(self, other):
        return self is other or (
            isinstance(other, Apply) and self._hash == other._hash and self.name == other.name
            and self.fn == other.fn and self.args == other.args
        )

    __hash__ = Node.__hash__

    def __setattr__(self, *_):
        raise AttributeError("immutable")


class _Modal(Node):
    __slots__ = ("arg",)
    tag = ""

    def __init__(self, arg: Node):
        object.__setattr__(self, "arg", arg)
        object.__setattr__(self, "_hash", hash((self.tag, arg)))

    def children(self):
        return (self.arg,)

    def __eq__(self, other):
        return self is other or (type(other) is type(self) and self._hash == other._hash
                                 and self.arg == other.arg)

    __hash__ = Node.__hash__

    def __setattr__(self, *_):
        raise AttributeError("immutable")


class Dia(_Modal):
    __slots__ = ()
    tag = "dia"


class Box(_Modal):
    __slots__ = ()
    tag = "box"


class DefinedOp:
    """A named operator ``name(x1..xk) := body`` with ordered placeholders."""

    __slots__ = ("name", "body", "params", "_hash")

    def __init__(self, name: str, body: Node, params: tuple[str, ...] | None = None):
        if params is None:
            params = tuple(sorted(variables(body)))
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "body", body)
        object.__setattr__(self, "params", tuple(params))
        object.__setattr__(self, "_hash", hash(("def", name, body, self.params)))

    @property
    def arity(self) -> int:
        return len(self.params)

    def __call__(self, *args: Node) -> Use:
        return Use(self, args)

    def __eq__(self, other):
        return self is other or (isinstance(other, DefinedOp) and self.name == other.name
                                 and self.body == other.body and self.params == other.params)

    def __hash__(self):
        return self._hash

    def __setattr__(self, *_):
        raise AttributeError("immutable")

    def __repr__(self):
        return f"DefinedOp({self.name}({', '.join(self.params)}) := {show(self.body)})"


class Use(Node):
    """Application of a defined operator; counts as a single node in size measures."""

    __slots__ = ("op", "args")

    def __init__(self, op: DefinedOp, args):
        args = tuple(args)
        if len(args) != op.arity:
            raise ArityMismatch(f"{op.name} takes {op.arity} arguments, got {len(args)}")
        object.__setattr__(self, "op", op)
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "_hash", hash(("use", op, args)))

    def children(self):
        return self.args

    def __eq__(self, other):
        return self is other or (isinstance(other, Use) and self._hash == other._hash
                                 and self.op == other.op and self.args == other.args)

    __hash__ = Node.__hash__

    def __setattr__(self, *_):
        raise AttributeError("immutable")


# -- traversal -------------------------------------------------------------

def subformulas(phi: Node) -> set[Node]:
    """Distinct subformulas (structural equality), visiting shared nodes once."""
    seen: set[Node] = set()
    stack = [phi]
    while stack:
        n = stack.pop()
        if n in seen:
            continue
        seen.add(n)
        stack.extend(n.children())
    return seen


def variables(phi: Node) -> set[str]:
    out = set()
    for n in subformulas(phi):
        if isinstance(n, Var):
            out.add(n.name)
        elif isinstance(n, Use):
            pass  # placeholders of the definition are bound
    return out


def is_modal(phi: Node) -> bool:
    return any(isinstance(n, (Dia, Box, Use)) for n in subformulas(phi))


# -- printing --------------------------------------------------------------

def show(phi: Node) -> str:
    """Prefix form that the parser reads back (modal nodes as ``dia``/``box``)."""
    memo: dict[Node, str] = {}

    def go(n: Node) -> str:
        if n in memo:
            return memo[n]
        if isinstance(n, Var):
            s = n.name
        elif isinstance(n, Apply):
            s = f"{n.name}({','.join(go(a) for a in n.args)})"
        elif isinstance(n, Dia):
            s = f"dia({go(n.arg)})"
        elif isinstance(n, Box):
            s = f"box({go(n.arg)})"
        elif isinstance(n, Use):
            s = f"{n.op.name}({','.join(go(a) for a in n.args)})"
        else:  # pragma: no cover
            raise TypeError(n)
        memo[n] = s
        return s

    return go(phi)


_INFIX_SHOW = {"and": "∧", "or": "∨", "xor": "⊕", "imp": "→", "eq": "↔", "nimp": "↛"}


def pretty(phi: Node) -> str:
    """Human-oriented infix rendering (fully parenthesized binary nodes)."""
    if isinstance(phi, Var):
        return phi.name
    if isinstance(phi, Apply):
        if phi.name in _INFIX_SHOW and phi.fn.arity == 2:
            a, b = phi.args
            return f"({pretty(a)} {_INFIX_SHOW[phi.name]} {pretty(b)})"
        if phi.name == "not":
            return "¬" + pretty(phi.args[0])
        if phi.name in ("top", "bot"):
            return "⊤" if phi.name == "top" else "⊥"
        return f"{phi.name}({', '.join(pretty(a) for a in phi.args)})"
    if isinstance(phi, Dia):
        return "◇" + pretty(phi.arg)
    if isinstance(phi, Box):
        return "□" + pretty(phi.arg)
    if isinstance(phi, Use):
        return f"{phi.op.name}({', '.join(pretty(a) for a in phi.args)})"
    raise TypeError(phi)


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym><->|-/>|->|<>|\[\]|[()&|^~!,¬∧∨⊕→↔↛◇□]))"
)
_INFIX = {
    "&": ("and", 4), "∧": ("and", 4),
    "|": ("or", 3), "∨": ("or", 3),
    "^": ("xor", 2), "⊕": ("xor", 2), "-/>": ("nimp", 2), "↛": ("nimp", 2),
    "->": ("imp", 1), "→": ("imp", 1), "<->": ("eq", 1), "↔": ("eq", 1),
}
_NOT = {"~", "!", "¬"}
_DIA = {"<>", "◇"}
_BOX = {"[]", "□"}
MODAL_WORDS = {"dia", "box"}


def _tokens(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaSyntaxError(f"unexpected character at {pos}: {text[pos]!r}", position=pos)
        kind = "name" if m.group("name") else "sym"
        start = m.start(kind)
        yield kind, m.group(kind), start
        pos = m.end()


class Parser:
    def __init__(self, text: str, names: Mapping[str, BoolFn], modal: bool = False,
                 defined: Mapping[str, DefinedOp] | None = None):
        self.text = text
        self.toks = list(_tokens(text))
        self.i = 0
        self.names = dict(names)
        self.modal = modal
        self.defined = dict(defined or {})

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", len(self.text))

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, sym: str):
        kind, val, pos = self.take()
        if val != sym:
            raise FormulaSyntaxError(f"expected {sym!r} at {pos}, found {val or 'end of input'!r}",
                                     position=pos)

    def connective(self, name: str, pos: int) -> tuple[str, BoolFn]:
        from .clones import lookup  # local import: clones imports nothing from here

        if name in self.names:
            return name, self.names[name]
        try:
            fn = lookup(name)
        except Exception:
            fn = None
        if fn is not None:
            for declared, g in self.names.items():
                if g == fn:
                    return declared, g
        raise UndeclaredConnective(f"connective {name!r} at {pos} is not in the basis",
                                   name=name, position=pos)

    def parse(self) -> Node:
        if not self.toks:
            raise FormulaSyntaxError("empty formula", position=0)
        node = self.binary(1)
        kind, val, pos = self.peek()
        if kind != "eof":
            raise FormulaSyntaxError(f"unexpected {val!r} at {pos}", position=pos)
        return node

    def binary(self, level: int) -> Node:
        if level > 4:
            return self.unary()
        left = self.binary(level + 1)
        while True:
            kind, val, pos = self.peek()
            if kind == "sym" and val in _INFIX and _INFIX[val][1] == level:
                self.take()
                name, fn = self.connective(_INFIX[val][0], pos)
                right = self.binary(level + 1)
                left = Apply(name, fn, (left, right))
            else:
                return left

    def unary(self) -> Node:
        kind, val, pos = self.take()
        if kind == "sym" and val in _NOT:
            name, fn = self.connective("not", pos)
            return Apply(name, fn, (self.unary(),))
        if kind == "sym" and (val in _DIA or val in _BOX):
            if not self.modal:
                raise FormulaSyntaxError(f"modal operator at {pos} in a propositional formula",
                                         position=pos)
            arg = self.unary()
            return Dia(arg) if val in _DIA else Box(arg)
        if kind == "sym" and val == "(":
            node = self.binary(1)
            self.expect(")")
            return node
        if kind == "name":
            if self.modal and val in MODAL_WORDS and self.peek()[1] != "(":
                arg = self.unary()
                return Dia(arg) if val == "dia" else Box(arg)
            if self.peek()[1] == "(":
                self.take()
                args = [self.binary(1)]
                while self.peek()[1] == ",":
                    self.take()
                    args.append(self.binary(1))
                self.expect(")")
                if self.modal and val in MODAL_WORDS:
                    if len(args) != 1:
                        raise ArityMismatch(f"{val} takes one argument")
                    return Dia(args[0]) if val == "dia" else Box(args[0])
                if val in self.defined:
                    return Use(self.defined[val], args)
                name, fn = self.connective(val, pos)
                return Apply(name, fn, args)
            return Var(val)
        raise FormulaSyntaxError(f"unexpected {val or 'end of input'!r} at {pos}", position=pos)
