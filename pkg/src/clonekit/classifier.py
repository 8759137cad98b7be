"""Complexity verdicts for reasoning problems over a restricted basis.

Every classification is an ordered list of rules.  A rule is a predicate
on the clone generated by the basis (only ``identify`` and ``contains`` are
consulted, so two bases generating the same clone always get the same
verdict) together with the verdict it yields; the first rule that fires
wins.  Rules mirror the case order of the published results.

The citation attached to a verdict is a key into ``CITATIONS``: the name of
the result and the condition that fired, written as ⪯ tests.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

from .clones import Basis, NamedClone, as_basis, contains, identify
from .config import DEGREE_CAP
from .errors import BadModalSet, BadProblem, UnsupportedLogic


class Problem(str, enum.Enum):
    SAT = "SAT"
    SAT_FINE = "SAT_FINE"
    TAUT = "TAUT"
    COUNT = "COUNT"
    IMPLICATION = "IMPLICATION"
    EQUIVALENCE = "EQUIVALENCE"
    ISOMORPHISM = "ISOMORPHISM"
    EVALUATION_TREE = "EVALUATION_TREE"
    MINIMIZATION = "MINIMIZATION"
    EXPRESSIBILITY = "EXPRESSIBILITY"
    UNIQUE_CHAR_FINITE = "UNIQUE_CHAR_FINITE"
    UNIQUE_CHAR_POLY = "UNIQUE_CHAR_POLY"
    LEARN_MQ = "LEARN_MQ"
    MODAL_CONSISTENCY = "MODAL_CONSISTENCY"
    TBOX_SAT = "TBOX_SAT"
    MODAL_TEACHABILITY = "MODAL_TEACHABILITY"

    @classmethod
    def parse(cls, text: str | Problem) -> Problem:
        if isinstance(text, Problem):
            return text
        try:
            return cls(text.strip().upper())
        except ValueError:
            raise BadProblem(f"unknown problem {text!r}", choices=[p.value for p in cls]) from None


MODAL_PROBLEMS = frozenset({Problem.MODAL_CONSISTENCY, Problem.TBOX_SAT, Problem.MODAL_TEACHABILITY})

CLASSES = ("Trivial", "ConstantTime", "AC0", "AC0_2", "NLOGTIME", "coNLOGTIME", "NC1",
           "MOD2_equiv", "L", "NL", "ParityL", "P", "NP", "coNP", "Theta2P", "PSPACE",
           "EXPTIME", "SharpP", "Yes", "No", "Open")
COMPLETENESS = ("complete", "hard_only", "membership_only", "exact")

SUITABLE = " (under suitable reductions)"

# Pinned citation table.  Keys are stable identifiers; values name the result
# and the case that fired.
CITATIONS: dict[str, str] = {
    "sat.np": "Lewis satisfiability dichotomy: {↛} ⪯ O",
    "sat.p": "Lewis satisfiability dichotomy: {↛} not ⪯ O",
    "satfine.l": "Reith satisfiability refinement: O ⪯ {∨,↔} or O ⪯ {maj,¬} or O ⪯ {¬,⊤,⊥}",
    "satfine.nl": "Reith satisfiability refinement: O ⪯ {∧,⊤,⊥} or O ⪯ {∨,⊤,⊥}",
    "satfine.parity": "Reith satisfiability refinement: O ⪯ {⊕,⊤,⊥}",
    "satfine.p": "Reith satisfiability refinement: O ⪯ {∧,∨,⊤,⊥}",
    "satfine.np": "Reith satisfiability refinement: remaining cases",
    "taut.conp": "Reith tautology dichotomy: {→} ⪯ O",
    "taut.p": "Reith tautology dichotomy: {→} not ⪯ O",
    "count.p": "Reith counting dichotomy: O ⪯ {∧,⊤,⊥} or O ⪯ {∨,⊤,⊥} or O ⪯ {⊕,⊥} or O ⪯ {maj,¬}",
    "count.sharp": "Reith counting dichotomy: remaining cases",
    "imp.conp": "Beyersdorff et al. implication: {(x∧y)∨z} ⪯ O or {(x∨y)∧z} ⪯ O or {maj} ⪯ O",
    "imp.parity": "Beyersdorff et al. implication: {⊕} ⪯ O ⪯ {↔,⊥}",
    "imp.ac02": "Beyersdorff et al. implication: {¬} ⪯ O ⪯ {¬,⊥}; MOD2-hard" + SUITABLE,
    "imp.ac0": "Beyersdorff et al. implication: remaining cases",
    "eq.conp": "Beyersdorff et al. equivalence: {(x∧y)∨z} ⪯ O or {(x∨y)∧z} ⪯ O or {maj} ⪯ O",
    "eq.ac02": "Beyersdorff et al. equivalence: {¬} ⪯ O ⪯ {¬,⊥}" + SUITABLE,
    "eq.ac0": "Beyersdorff et al. equivalence: remaining cases",
    "iso.l": "isomorphism classification: O ⪯ {∨,⊤,⊥} or O ⪯ {∧,⊤,⊥} or O ⪯ {⊕,⊤}",
    "iso.conp": "isomorphism classification: remaining cases",
    "eval.const": "Schnoor evaluation: O ≡ {⊤,⊥}",
    "eval.nlogtime": "Schnoor evaluation: O ≡ {∨,⊤,⊥}" + SUITABLE,
    "eval.conlogtime": "Schnoor evaluation: O ≡ {∧,⊤,⊥}" + SUITABLE,
    "eval.mod2": "Schnoor evaluation: {¬,⊤,⊥} ⪯ O ⪯ {⊕,⊤,⊥}" + SUITABLE,
    "eval.nc1": "Schnoor evaluation: remaining cases" + SUITABLE,
    "min.p": "Hemaspaandra et al. minimization: O ⪯ {∨,⊤,⊥} or O ⪯ {∧,⊤,⊥} or O ⪯ {⊕,⊤,⊥}",
    "min.conp": "Hemaspaandra et al. minimization: remaining cases",
    "expr.p": "Böhler–Schnoor expressibility: {∧,⊕} ⪯ O or {∨,↔} ⪯ O",
    "expr.np": "Böhler–Schnoor expressibility: remaining cases",
    "ucf.yes": "finite unique characterization: O ⪯ {∧,∨,⊤,⊥} or O ⪯ {¬,⊥}",
    "ucf.no": "finite unique characterization: remaining cases",
    "ucp.yes": "polynomial unique characterization: O ⪯ {∧,⊤,⊥} or O ⪯ {∨,⊤,⊥} or O ⪯ {¬,⊥}",
    "ucp.no": "polynomial unique characterization: remaining cases",
    "mq.yes": "Dalmau membership-query learning: O ⪯ {∧,⊤,⊥} or O ⪯ {∨,⊤,⊥} or O ⪯ {⊕,⊤,⊥}",
    "mq.no": "Dalmau membership-query learning: remaining cases",
    "kcons.pspace": "generalized modal satisfiability, K-consistency: {x∧¬y} ⪯ Φ or {x∧(y∨z),⊥,◇,□} ⪯ Φ",
    "kcons.conp": "generalized modal satisfiability, K-consistency: {∧,◇,□} ⪯ Φ ⪯ {∧,⊤,⊥,◇,□}",
    "kcons.p": "generalized modal satisfiability, K-consistency: remaining cases",
    "cons.affine_gap": "generalized modal satisfiability, T, K4, S4, S5: {⊕} ⪯ Φ ⪯ {⊕,⊥,◇,□} left open",
    "cons.unprinted": "generalized modal satisfiability beyond K: classification referenced but not stated",
    "tbox.exptime": "generalized ALC TBox satisfiability over K_ω: EXPTIME row for this operator shape",
    "tbox.np": "generalized ALC TBox satisfiability over K_ω: {∧,∨,⊤,⊥} ⪯ O or {x⊕y⊕z⊕⊤} ⪯ O",
    "tbox.p": "generalized ALC TBox satisfiability over K_ω: P row for this operator shape",
    "tbox.nl": "generalized ALC TBox satisfiability over K_ω: {¬} ⪯ O ⪯ {¬,⊤,⊥} or O ≡ {⊤,⊥}",
    "tbox.trivial": "generalized ALC TBox satisfiability over K_ω: remaining cases",
    "mteach.yes": "modal teachability dichotomy over K: Φ below one of the six maximal fragments",
    "mteach.no": "modal teachability dichotomy over K: Φ below none of the six maximal fragments",
}

NOTES = {
    "satfine": "representation per the published statement (tree representation), although the "
               "refinement is introduced as the DAG-representation result",
    "eval": "classified on O ∪ {⊤,⊥}; the result presupposes both constants in the basis",
    "imp.ac02": "MOD2-hard" + SUITABLE,
}


@dataclass(frozen=True)
class Verdict:
    klass: str
    completeness: str
    citation: str
    note: str | None = None

    def __post_init__(self):
        assert self.klass in CLASSES, self.klass
        assert self.completeness in COMPLETENESS, self.completeness
        assert self.citation in CITATIONS.values(), self.citation

    def to_json(self) -> dict:
        out = {"class": self.klass, "completeness": self.completeness, "citation": self.citation}
        if self.note:
            out["note"] = self.note
        return out


def _v(klass: str, completeness: str, key: str, note: str | None = None) -> Verdict:
    return Verdict(klass, completeness, CITATIONS[key], note)


# -- threshold clones --------------------------------------------------------

@lru_cache(maxsize=None)
def _named(*names: str) -> NamedClone:
    return identify(Basis.of(*names))


class _Ctx:
    """The clone ``c`` under test with ⪯ comparisons against threshold bases."""

    def __init__(self, c: NamedClone):
        self.c = c

    def le(self, *names: str) -> bool:
        """``O ⪯ names``."""
        return contains(_named(*names), self.c)

    def ge(self, *names: str) -> bool:
        """``names ⪯ O``."""
        return contains(self.c, _named(*names))

    def eq(self, *names: str) -> bool:
        return self.c == _named(*names)


Rule = tuple[Callable[[_Ctx], bool], Verdict]
_ALWAYS = lambda ctx: True  # noqa: E731

RULES: dict[Problem, list[Rule]] = {
    Problem.SAT: [
        (lambda x: x.ge("nimp"), _v("NP", "complete", "sat.np")),
        (_ALWAYS, _v("P", "exact", "sat.p")),
    ],
    Problem.SAT_FINE: [
        (lambda x: x.le("or", "eq") or x.le("maj", "not") or x.le("not", "top", "bot"),
         _v("L", "membership_only", "satfine.l", NOTES["satfine"])),
        (lambda x: x.le("and", "top", "bot") or x.le("or", "top", "bot"),
         _v("NL", "complete", "satfine.nl", NOTES["satfine"])),
        (lambda x: x.le("xor", "top", "bot"), _v("ParityL", "complete", "satfine.parity", NOTES["satfine"])),
        (lambda x: x.le("and", "or", "top", "bot"), _v("P", "complete", "satfine.p", NOTES["satfine"])),
        (_ALWAYS, _v("NP", "complete", "satfine.np", NOTES["satfine"])),
    ],
    Problem.TAUT: [
        (lambda x: x.ge("imp"), _v("coNP", "complete", "taut.conp")),
        (_ALWAYS, _v("P", "exact", "taut.p")),
    ],
    Problem.COUNT: [
        (lambda x: x.le("and", "top", "bot") or x.le("or", "top", "bot") or x.le("xor", "bot")
         or x.le("maj", "not"), _v("P", "exact", "count.p")),
        (_ALWAYS, _v("SharpP", "complete", "count.sharp")),
    ],
    Problem.IMPLICATION: [
        (lambda x: x.ge("and_or_or") or x.ge("or_and_and") or x.ge("maj"),
         _v("coNP", "complete", "imp.conp")),
        (lambda x: x.ge("xor") and x.le("eq", "bot"), _v("ParityL", "complete", "imp.parity")),
        (lambda x: x.ge("not") and x.le("not", "bot"),
         _v("AC0_2", "membership_only", "imp.ac02", NOTES["imp.ac02"])),
        (_ALWAYS, _v("AC0", "membership_only", "imp.ac0")),
    ],
    Problem.EQUIVALENCE: [
        (lambda x: x.ge("and_or_or") or x.ge("or_and_and") or x.ge("maj"),
         _v("coNP", "complete", "eq.conp")),
        (lambda x: x.ge("not") and x.le("not", "bot"), _v("AC0_2", "complete", "eq.ac02")),
        (_ALWAYS, _v("AC0", "membership_only", "eq.ac0")),
    ],
    Problem.ISOMORPHISM: [
        (lambda x: x.le("or", "top", "bot") or x.le("and", "top", "bot") or x.le("xor", "top"),
         _v("L", "membership_only", "iso.l")),
        (_ALWAYS, _v("coNP", "hard_only", "iso.conp")),
    ],
    Problem.EVALUATION_TREE: [
        (lambda x: x.eq("top", "bot"), _v("ConstantTime", "exact", "eval.const", NOTES["eval"])),
        (lambda x: x.eq("or", "top", "bot"), _v("NLOGTIME", "complete", "eval.nlogtime", NOTES["eval"])),
        (lambda x: x.eq("and", "top", "bot"), _v("coNLOGTIME", "complete", "eval.conlogtime", NOTES["eval"])),
        (lambda x: x.ge("not", "top", "bot") and x.le("xor", "top", "bot"),
         _v("MOD2_equiv", "complete", "eval.mod2", NOTES["eval"])),
        (_ALWAYS, _v("NC1", "complete", "eval.nc1", NOTES["eval"])),
    ],
    Problem.MINIMIZATION: [
        (lambda x: x.le("or", "top", "bot") or x.le("and", "top", "bot") or x.le("xor", "top", "bot"),
         _v("P", "exact", "min.p")),
        (_ALWAYS, _v("coNP", "hard_only", "min.conp")),
    ],
    Problem.EXPRESSIBILITY: [
        (lambda x: x.ge("and", "xor") or x.ge("or", "eq"), _v("P", "exact", "expr.p")),
        (_ALWAYS, _v("NP", "complete", "expr.np")),
    ],
    Problem.UNIQUE_CHAR_FINITE: [
        (lambda x: x.le("and", "or", "top", "bot") or x.le("not", "bot"), _v("Yes", "exact", "ucf.yes")),
        (_ALWAYS, _v("No", "exact", "ucf.no")),
    ],
    Problem.UNIQUE_CHAR_POLY: [
        (lambda x: x.le("and", "top", "bot") or x.le("or", "top", "bot") or x.le("not", "bot"),
         _v("Yes", "exact", "ucp.yes")),
        (_ALWAYS, _v("No", "exact", "ucp.no")),
    ],
    Problem.LEARN_MQ: [
        (lambda x: x.le("and", "top", "bot") or x.le("or", "top", "bot") or x.le("xor", "top", "bot"),
         _v("Yes", "exact", "mq.yes")),
        (_ALWAYS, _v("No", "exact", "mq.no")),
    ],
}


def _first(rules: list[Rule], ctx) -> Verdict:
    for test, verdict in rules:
        if test(ctx):
            return verdict
    raise AssertionError("decision list without a default rule")  # pragma: no cover


def classify_prop(problem: Problem | str, O: Basis | Iterable, degree_cap: int = DEGREE_CAP) -> Verdict:
    problem = Problem.parse(problem)
    if problem in MODAL_PROBLEMS:
        raise BadProblem(f"{problem.value} needs modal operators; use classify_modal")
    basis = as_basis(O)
    if problem is Problem.EVALUATION_TREE:
        basis = basis.union(Basis.of("top", "bot"))
    return _first(RULES[problem], _Ctx(identify(basis, degree_cap)))


# -- modal problems ----------------------------------------------------------

DIA, BOX = "dia", "box"
_MODAL_ALIASES = {"dia": DIA, "diamond": DIA, "◇": DIA, "<>": DIA,
                  "box": BOX, "□": BOX, "[]": BOX}
_DUAL = {DIA: BOX, BOX: DIA}

CONSISTENCY_LOGICS = ("K", "KD", "T", "K4", "S4", "S5")
_AFFINE_GAP_LOGICS = ("T", "K4", "S4", "S5")
TBOX_LOGICS = ("K_omega", "Kω", "K_ω")


def modal_set(ops: Iterable[str] | str) -> frozenset[str]:
    if isinstance(ops, str):
        ops = [t for t in ops.replace(" ", "").split(",") if t]
    out = set()
    for t in ops:
        key = t.strip().lower() if t.strip().isascii() else t.strip()
        if key not in _MODAL_ALIASES:
            raise BadModalSet(f"unknown modal operator {t!r}", allowed=["dia", "box"])
        out.add(_MODAL_ALIASES[key])
    return frozenset(out)


@dataclass(frozen=True)
class _ModalCtx:
    """A simple fragment ``M ∪ O`` under K, where clone closure is the identity.

    ``Φ ⪯ Ψ`` holds when ``[O_Φ] ⊆ [O_Ψ]`` and every operator of ``M_Φ`` is
    available in ``Ψ``: either present, or its dual is present and ``¬`` is in
    ``[O_Ψ]``.
    """

    M: frozenset[str]
    c: NamedClone

    @staticmethod
    def _covered(op: str, M: frozenset[str], c: NamedClone) -> bool:
        return op in M or (_DUAL[op] in M and contains(c, _named("not")))

    def le(self, M2: set[str], *names: str) -> bool:
        d = _named(*names)
        return contains(d, self.c) and all(self._covered(m, frozenset(M2), d) for m in self.M)

    def ge(self, M2: set[str], *names: str) -> bool:
        return contains(self.c, _named(*names)) and all(self._covered(m, self.M, self.c) for m in M2)


_BOTH = {DIA, BOX}

KCONS_RULES: list[Rule] = [
    (lambda x: x.ge(set(), "nimp") or x.ge(_BOTH, "and_or", "bot"), _v("PSPACE", "complete", "kcons.pspace")),
    (lambda x: x.ge(_BOTH, "and") and x.le(_BOTH, "and", "top", "bot"), _v("coNP", "complete", "kcons.conp")),
    (_ALWAYS, _v("P", "exact", "kcons.p")),
]

TEACH_RULES: list[Rule] = [
    (lambda x: x.le({DIA}, "and", "or", "top", "bot") or x.le({BOX}, "and", "or", "top", "bot")
     or x.le(_BOTH, "and", "or") or x.le(_BOTH, "not", "bot") or x.le(_BOTH, "and", "top")
     or x.le(_BOTH, "or", "bot"), _v("Yes", "exact", "mteach.yes")),
    (_ALWAYS, _v("No", "exact", "mteach.no")),
]


def _tbox(M: frozenset[str], x: _Ctx) -> Verdict:
    if not M:
        if x.ge("and", "or", "top", "bot") or x.ge("xor3n"):
            return _v("NP", "complete", "tbox.np")
        if x.eq("and", "top", "bot") or x.eq("or", "top", "bot"):
            return _v("P", "complete", "tbox.p")
        if (x.ge("not") and x.le("not", "top", "bot")) or x.eq("top", "bot"):
            return _v("NL", "complete", "tbox.nl")
        return _v("Trivial", "exact", "tbox.trivial")
    if M == {DIA}:
        if x.ge("or", "top", "bot") or x.ge("not"):
            return _v("EXPTIME", "complete", "tbox.exptime")
        if x.ge("top", "bot") and x.le("and", "top", "bot"):
            return _v("P", "complete", "tbox.p")
    elif M == {BOX}:
        if x.ge("and", "top", "bot") or x.ge("not"):
            return _v("EXPTIME", "complete", "tbox.exptime")
        if x.ge("top", "bot") and x.le("or", "top", "bot"):
            return _v("P", "complete", "tbox.p")
    else:
        if x.ge("top", "bot") or x.ge("not"):
            return _v("EXPTIME", "complete", "tbox.exptime")
    return _v("Trivial", "exact", "tbox.trivial")


def classify_modal(problem: Problem | str, M: Iterable[str] | str, O: Basis | Iterable,
                   logic: str = "K", degree_cap: int = DEGREE_CAP) -> Verdict:
    problem = Problem.parse(problem)
    if problem not in MODAL_PROBLEMS:
        raise BadProblem(f"{problem.value} is propositional; use classify_prop")
    ops = modal_set(M)
    c = identify(as_basis(O), degree_cap)

    if problem is Problem.TBOX_SAT:
        if logic not in TBOX_LOGICS:
            raise UnsupportedLogic(f"TBox satisfiability is classified for K_omega only, not {logic!r}")
        return _tbox(ops, _Ctx(c))

    if not ops:
        raise BadModalSet(f"{problem.value} needs at least one of dia, box")
    ctx = _ModalCtx(ops, c)
    if problem is Problem.MODAL_TEACHABILITY:
        if logic != "K":
            raise UnsupportedLogic(f"modal teachability is classified for K only, not {logic!r}")
        return _first(TEACH_RULES, ctx)

    if logic not in CONSISTENCY_LOGICS:
        raise UnsupportedLogic(f"consistency is classified for {', '.join(CONSISTENCY_LOGICS)}, "
                               f"not {logic!r}")
    if logic == "K":
        return _first(KCONS_RULES, ctx)
    if logic in _AFFINE_GAP_LOGICS and ctx.ge(set(), "xor") and ctx.le(_BOTH, "xor", "bot"):
        return _v("Open", "exact", "cons.affine_gap")
    return _v("Open", "exact", "cons.unprinted")
