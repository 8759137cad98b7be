from __future__ import annotations

import random

import pytest

from clonekit.errors import BoundTooSmall, NotInFragment, UnsupportedLogic
from clonekit.modal import PointedModel, chain, mc, parse_modal
from clonekit.modal_teaching import (PrefixForm, enumerate_forms, prefix_form, teach_modal,
                                     verify_unique_modal)
from clonekit.syntax import Var
from clonekit.teaching import LabeledExample
from modal_gen import random_model

B = ["not", "top", "bot", "and"]


def P(text):
    return parse_modal(text, B)


def test_prefix_forms():
    assert str(prefix_form(P("~dia ~p"))) == "□p"
    assert str(prefix_form(P("box dia box top(p)"))) == "□◇⊤"
    assert str(prefix_form(P("dia box dia bot(p)"))) == "◇□⊥"
    assert str(prefix_form(P("~box top(p)"))) == "⊥"
    with pytest.raises(NotInFragment):
        prefix_form(P("p & q"))


def test_prefix_form_semantics_match_mc():
    rng = random.Random(8)
    forms = enumerate_forms(["p"], 3)
    for _ in range(40):
        M = random_model(rng, 5, ("p",))
        for f in forms:
            phi = f.formula()
            for w in M.worlds:
                assert f.holds(PointedModel(M, w)) == mc(M, w, phi)


def test_distinct_forms_are_inequivalent_on_small_models():
    # every pair of distinct forms up to depth 2 is separated by some teaching model
    forms = enumerate_forms(["p"], 2)
    models = [e.payload for f in forms for e in teach_modal(f.formula())]
    for i, f in enumerate(forms):
        for g in forms[i + 1:]:
            assert any(f.holds(m) != g.holds(m) for m in models), (f, g)


def test_teach_dia_p():
    ts = teach_modal(P("dia p"))
    first, second = ts.examples[:2]
    assert first == LabeledExample(PointedModel(chain(1, {1: ["p"]}), "0"), 1)
    assert second == LabeledExample(PointedModel(chain(1), "0"), 0)
    assert verify_unique_modal(P("dia p"), ts, bound=3).status == "UniqueUpToBound"


def test_teach_dia_top_labels():
    ts = teach_modal(P("dia top(p)"))
    assert [e.label for e in ts] == [1, 1, 0, 1, 1]
    loop = ts.examples[0].payload
    assert loop.model.rel == frozenset({("0", "0")})
    assert verify_unique_modal(P("dia top(p)"), ts).status == "UniqueUpToBound"


def test_teach_depth_zero():
    ts = teach_modal(Var("p"))
    assert [e.payload.model.size for e in ts] == [1, 1]
    assert [e.label for e in ts] == [1, 0]


def test_box_bot():
    ts = teach_modal(P("box bot(p)"))
    assert verify_unique_modal(P("box bot(p)"), ts, bound=2).status == "UniqueUpToBound"


def test_single_positive_is_ambiguous():
    only = [LabeledExample(PointedModel(chain(1, {1: ["p"]}), "0"), 1)]
    r = verify_unique_modal(P("dia p"), only, bound=2)
    assert r.status == "Ambiguous"
    assert r.witness is not None and r.witness != prefix_form(P("dia p"))
    assert all(r.witness.holds(e.payload) == e.label for e in only)


def test_errors():
    with pytest.raises(BoundTooSmall):
        verify_unique_modal(P("dia dia p"), [], bound=2)
    with pytest.raises(UnsupportedLogic):
        teach_modal(P("dia p"), logic_name="S4")
    with pytest.raises(NotInFragment):
        teach_modal(P("dia p"), prop=["q"])
    bad = [LabeledExample(PointedModel(chain(1), "0"), 1)]
    assert verify_unique_modal(P("dia p"), bad).status == "NotFitting"


ALL_DEPTH4 = enumerate_forms(["p"], 4)


@pytest.mark.parametrize("form", ALL_DEPTH4, ids=str)
def test_every_form_of_depth_four_is_taught(form: PrefixForm):
    phi = form.formula()
    ts = teach_modal(phi)
    assert all(e.label == form.holds(e.payload) for e in ts)
    r = verify_unique_modal(phi, ts, bound=form.depth + 1)
    assert r.status == "UniqueUpToBound", r.witness
