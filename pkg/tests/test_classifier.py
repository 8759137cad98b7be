from __future__ import annotations

import random

import pytest

from clonekit.boolfn import BoolFn
from clonekit.classifier import (CITATIONS, Problem, classify_modal, classify_prop)
from clonekit.closure import closure_tables
from clonekit.clones import Basis, all_named, base_of, identify
from clonekit.errors import BadModalSet, BadProblem, UnsupportedLogic

PROP = [
    # (problem, basis, class, completeness)
    ("SAT", ["nimp"], "NP", "complete"),
    ("SAT", ["and", "or", "top", "bot"], "P", "exact"),
    ("SAT", ["and", "not"], "NP", "complete"),
    ("SAT", ["imp"], "P", "exact"),
    ("SAT_FINE", ["and", "or", "top", "bot"], "P", "complete"),
    ("SAT_FINE", ["maj", "not"], "L", "membership_only"),
    ("SAT_FINE", ["and", "top", "bot"], "NL", "complete"),
    ("SAT_FINE", ["xor", "top"], "ParityL", "complete"),
    ("SAT_FINE", ["nimp"], "NP", "complete"),
    ("TAUT", ["imp"], "coNP", "complete"),
    ("TAUT", ["nimp"], "P", "exact"),
    ("COUNT", ["maj", "not"], "P", "exact"),
    ("COUNT", ["xor"], "P", "exact"),
    ("COUNT", ["xor", "top"], "SharpP", "complete"),
    ("COUNT", ["and", "or"], "SharpP", "complete"),
    ("IMPLICATION", ["xor"], "ParityL", "complete"),
    ("IMPLICATION", ["maj"], "coNP", "complete"),
    ("IMPLICATION", ["not"], "AC0_2", "membership_only"),
    ("IMPLICATION", ["and"], "AC0", "membership_only"),
    ("EQUIVALENCE", ["not", "bot"], "AC0_2", "complete"),
    ("EQUIVALENCE", ["and", "or"], "coNP", "complete"),
    ("ISOMORPHISM", ["xor", "top"], "L", "membership_only"),
    ("ISOMORPHISM", ["and", "or"], "coNP", "hard_only"),
    ("EVALUATION_TREE", [], "ConstantTime", "exact"),
    ("EVALUATION_TREE", ["or"], "NLOGTIME", "complete"),
    ("EVALUATION_TREE", ["and"], "coNLOGTIME", "complete"),
    ("EVALUATION_TREE", ["xor"], "MOD2_equiv", "complete"),
    ("EVALUATION_TREE", ["and", "or"], "NC1", "complete"),
    ("MINIMIZATION", ["xor"], "P", "exact"),
    ("MINIMIZATION", ["and", "or"], "coNP", "hard_only"),
    ("EXPRESSIBILITY", ["and", "xor"], "P", "exact"),
    ("EXPRESSIBILITY", ["and", "or"], "NP", "complete"),
    ("UNIQUE_CHAR_FINITE", ["and", "or"], "Yes", "exact"),
    ("UNIQUE_CHAR_FINITE", ["xor"], "No", "exact"),
    ("UNIQUE_CHAR_POLY", ["and", "or"], "No", "exact"),
    ("UNIQUE_CHAR_POLY", ["or", "top"], "Yes", "exact"),
    ("LEARN_MQ", ["xor", "top"], "Yes", "exact"),
    ("LEARN_MQ", ["and", "or"], "No", "exact"),
]

MODAL = [
    # (problem, M, basis, logic, class, completeness)
    ("MODAL_CONSISTENCY", "dia,box", ["and"], "K", "coNP", "complete"),
    ("MODAL_CONSISTENCY", "dia,box", ["and", "top", "bot"], "K", "coNP", "complete"),
    ("MODAL_CONSISTENCY", "dia", ["nimp"], "K", "PSPACE", "complete"),
    ("MODAL_CONSISTENCY", "dia,box", ["and_or", "bot"], "K", "PSPACE", "complete"),
    ("MODAL_CONSISTENCY", "dia", ["and"], "K", "P", "exact"),
    ("MODAL_CONSISTENCY", "dia,box", ["or"], "K", "P", "exact"),
    ("MODAL_CONSISTENCY", "dia,box", ["xor"], "S4", "Open", "exact"),
    ("MODAL_CONSISTENCY", "box", ["xor", "bot"], "T", "Open", "exact"),
    ("MODAL_CONSISTENCY", "dia", ["and"], "KD", "Open", "exact"),
    ("TBOX_SAT", "dia", ["or", "top", "bot"], "K_omega", "EXPTIME", "complete"),
    ("TBOX_SAT", "dia", ["and", "top", "bot"], "K_omega", "P", "complete"),
    ("TBOX_SAT", "box", ["and", "top", "bot"], "K_omega", "EXPTIME", "complete"),
    ("TBOX_SAT", "", ["and", "or", "top", "bot"], "K_omega", "NP", "complete"),
    ("TBOX_SAT", "", ["not"], "K_omega", "NL", "complete"),
    ("TBOX_SAT", "", ["and"], "K_omega", "Trivial", "exact"),
    ("MODAL_TEACHABILITY", "dia,box", ["and", "or"], "K", "Yes", "exact"),
    ("MODAL_TEACHABILITY", "dia,box", ["not"], "K", "Yes", "exact"),
    ("MODAL_TEACHABILITY", "dia", ["not"], "K", "Yes", "exact"),
    ("MODAL_TEACHABILITY", "dia,box", ["and", "or", "top"], "K", "No", "exact"),
    ("MODAL_TEACHABILITY", "dia", ["xor"], "K", "No", "exact"),
]


@pytest.mark.parametrize("problem,basis,klass,comp", PROP)
def test_prop_verdicts(problem, basis, klass, comp):
    v = classify_prop(problem, basis)
    assert (v.klass, v.completeness) == (klass, comp)
    assert v.citation in CITATIONS.values()


@pytest.mark.parametrize("problem,M,basis,logic,klass,comp", MODAL)
def test_modal_verdicts(problem, M, basis, logic, klass, comp):
    v = classify_modal(problem, M, basis, logic)
    assert (v.klass, v.completeness) == (klass, comp)


def test_open_verdicts_name_the_gap():
    v = classify_modal("MODAL_CONSISTENCY", "dia,box", ["xor"], "S5")
    assert v.citation == CITATIONS["cons.affine_gap"]
    v = classify_modal("MODAL_CONSISTENCY", "dia", ["and"], "K4")
    assert v.citation == CITATIONS["cons.unprinted"]


def test_sat_fine_carries_note():
    assert classify_prop("SAT_FINE", ["nimp"]).note
    assert classify_prop("SAT", ["nimp"]).note is None


def test_errors():
    with pytest.raises(BadProblem):
        classify_prop("MODAL_CONSISTENCY", ["and"])
    with pytest.raises(BadProblem):
        classify_modal("SAT", "dia", ["and"])
    with pytest.raises(BadProblem):
        classify_prop("FOO", ["and"])
    with pytest.raises(BadModalSet):
        classify_modal("MODAL_CONSISTENCY", "", ["and"])
    with pytest.raises(BadModalSet):
        classify_modal("MODAL_CONSISTENCY", "next", ["and"])
    with pytest.raises(UnsupportedLogic):
        classify_modal("MODAL_CONSISTENCY", "dia", ["and"], "GL")
    with pytest.raises(UnsupportedLogic):
        classify_modal("TBOX_SAT", "dia", ["and"], "K")


PROP_PROBLEMS = [p for p in Problem if p.value not in ("MODAL_CONSISTENCY", "TBOX_SAT", "MODAL_TEACHABILITY")]


def test_total_and_basis_invariant():
    # a clone's standard base and the base plus a redundant member of the clone agree
    for c in all_named(3):
        B = base_of(c)
        extra = Basis(B.items + (("extra", _some_member(c)),))
        assert identify(extra) == c
        for p in PROP_PROBLEMS:
            assert classify_prop(p, B) == classify_prop(p, extra)


def _some_member(c):
    tabs = closure_tables(base_of(c).functions, 2)
    return BoolFn(2, int(max(tabs)))


def test_sat_hardness_upward_closed():
    rng = random.Random(11)
    pool = ["and", "or", "not", "xor", "imp", "nimp", "eq", "maj", "top", "bot", "and_or"]
    for _ in range(150):
        O = rng.sample(pool, rng.randint(1, 3))
        if classify_prop("SAT", O).klass == "NP":
            bigger = O + rng.sample(pool, 2)
            assert classify_prop("SAT", bigger).klass == "NP"
