from __future__ import annotations

from itertools import product

import pytest

from clonekit.boolfn import named
from clonekit.errors import NotInSourceFragment
from clonekit.modal import mc
from clonekit.proplogic import evaluate, parse
from clonekit.reductions import (chain_map, extend_map, fresh_name, pc_reduce, source_concepts,
                                 verify_pc)
from clonekit.syntax import Apply, Var, show
from oracles import naive_closure

AI = ["and", "imp"]


def _assignments(prop):
    return [dict(zip(prop, bits)) for bits in product((0, 1), repeat=len(prop))]


def test_reduce_examples():
    img = pc_reduce("aimp", parse("p -> q", AI))
    assert show(img.image) == "aimp(w,w,aimp(w,p,q))"
    assert img.example_map == {"extend": {"w": 1}}

    img = pc_reduce("modal_diamond", parse("p0 & p1", AI), ["p0", "p1"])
    assert show(img.image) == "and(p,dia(p))"

    img = pc_reduce("oxor", Var("p0"), ["p0"])
    assert show(img.image) == "oxor(w,w,p0)"
    oxor = img.image.fn
    for x, y, z in product((0, 1), repeat=3):
        assert oxor.at(x | y << 1 | z << 2) == (x | (y ^ z))


def test_reduce_errors():
    with pytest.raises(NotInSourceFragment):
        pc_reduce("aimp", parse("p | q", ["or"]))
    with pytest.raises(NotInSourceFragment):
        pc_reduce("oxor", parse("p ^ q", ["xor"]))
    with pytest.raises(NotInSourceFragment):
        pc_reduce("mystery", Var("p"))
    with pytest.raises(NotInSourceFragment):
        pc_reduce("aimp", Var("p"), ["q"])
    with pytest.raises(NotInSourceFragment):
        verify_pc("aimp", 4)


def test_fresh_name_avoids_prop():
    assert fresh_name(["p", "w"]) == "w_"


def test_aimp_source_is_the_and_imp_clone():
    # an independent closure of {∧, →} at arity 2 and 3 gives the same count
    basis = [(2, named("and").table), (2, named("imp").table)]
    for n in (2, 3):
        prop = [f"p{i}" for i in range(n)]
        assert len(source_concepts("aimp", prop)) == len(naive_closure(basis, n))
    assert len(source_concepts("aimp", ["p0", "p1"])) == 8


def test_aimp_contract_all_concepts():
    for n in (1, 2, 3):
        prop = [f"p{i}" for i in range(n)]
        for phi in source_concepts("aimp", prop):
            img = pc_reduce("aimp", phi, prop).image
            for V in _assignments(prop):
                assert evaluate(img, {**V, "w": 1}) == evaluate(phi, V)
                assert evaluate(img, {**V, "w": 0}) == 0


def test_oxor_contract_all_concepts():
    for n in (1, 2, 3):
        prop = [f"p{i}" for i in range(n)]
        for phi in source_concepts("oxor", prop):
            img = pc_reduce("oxor", phi, prop).image
            for V in _assignments(prop):
                assert evaluate(img, {**V, "w": 0}) == evaluate(phi, V)
                assert evaluate(img, {**V, "w": 1}) == 1


@pytest.mark.parametrize("kind", ["modal_diamond", "modal_box"])
def test_modal_image_on_chains(kind):
    for n in (1, 2, 3):
        prop = [f"p{i}" for i in range(n)]
        h = chain_map(prop)
        for phi in source_concepts(kind, prop):
            img = pc_reduce(kind, phi, prop).image
            for V in _assignments(prop):
                assert mc(h(V), None, img) == evaluate(phi, V)


@pytest.mark.parametrize("kind,n,count", [("aimp", 2, 8), ("aimp", 3, 128), ("oxor", 2, 2), ("oxor", 3, 4)])
def test_verify_propositional(kind, n, count):
    r = verify_pc(kind, n)
    assert r.status == "pass" and r.concepts == count
    assert r.condition1 and r.condition2


@pytest.mark.parametrize("kind", ["modal_diamond", "modal_box"])
def test_verify_modal_small_bound(kind):
    r = verify_pc(kind, 2, k=3)
    assert r.status == "pass-at-bound" and r.model_bound == 3


def test_mutations_fail():
    r = verify_pc("modal_diamond", 2, k=2, h=chain_map(["p0", "p1"], shift=1))
    assert r.status == "fail" and not r.condition1 and r.counterexample
    r = verify_pc("aimp", 2, h=extend_map({"w": 0}))
    assert r.status == "fail" and "concept" in r.counterexample
    r = verify_pc("oxor", 2, h=extend_map({"w": 1}))
    assert r.status == "fail"


def test_report_json():
    data = verify_pc("oxor", 1).to_json()
    assert data["status"] == "pass" and "model_bound" not in data
    img = Apply("and", named("and"), (Var("p"), Var("q")))
    data = pc_reduce("modal_box", img).to_json()
    assert data["image"] == "and(p,box(p))"
    assert data["example_map"]["valuation"] == {"0": "p", "1": "q"}
