from __future__ import annotations

import random

import pytest

from clonekit.boolfn import BoolFn, named
from clonekit.closure import closure_tables
from clonekit.clones import Basis
from clonekit.errors import (FragmentNotTeachable, Inconsistent, KindMismatch, NotInFragment,
                             NotLearnable, OracleInconsistent, PropCapExceeded, UnboundVariable)
from clonekit.modal import PointedModel, chain
from clonekit.proplogic import evaluate, parse, truth_table
from clonekit.syntax import Apply, Dia, Var, show
from clonekit.teaching import (LabeledExample, assignment, fits, learn_mq, learn_mq_detail,
                               parity_lower_bound, parity_value, table_oracle, teach_prop,
                               verify_unique)
from oracles import monotone_tables, prime_implicants_and_clauses

MON = ["and", "or", "top", "bot"]


def V(prop, *ones):
    return assignment(prop, ones)


def ex(prop, ones, label):
    return LabeledExample(assignment(prop, ones), label)


def test_fits_examples():
    phi = parse("p & q", ["and"])
    assert fits(phi, ex("pq", "pq", 1))
    assert fits(phi, ex("pq", "p", 0))
    assert not fits(Var("p"), ex("p", "", 1))
    with pytest.raises(KindMismatch):
        fits(Dia(Var("p")), ex("p", "p", 1))


def test_teach_examples():
    ts = teach_prop(parse("p & q", ["and"]), ["and"], "pq")
    assert set(ts) == {ex("pq", "pq", 1), ex("pq", "q", 0), ex("pq", "p", 0)}

    ts = teach_prop(parse("~p", ["not"]), ["not", "top"], "p")
    assert set(ts) == {ex("p", "p", 0), ex("p", "", 1)}

    ts = teach_prop(parse("(p & q) | r", ["and", "or"]), MON, "pqr")
    assert {tuple(sorted(k for k, v in e.payload.items() if v)) for e in ts.positives} == {("p", "q"), ("r",)}
    assert {tuple(sorted(k for k, v in e.payload.items() if v)) for e in ts.negatives} == {("p",), ("q",)}
    for phi, frag, prop in [("p & q", ["and"], "pq"), ("~p", ["not", "top"], "p"),
                            ("(p & q) | r", MON, "pqr")]:
        f = parse(phi, ["and", "or", "not"])
        assert verify_unique(f, teach_prop(f, frag, prop), frag, prop).status == "Unique"


def test_teach_errors():
    with pytest.raises(UnboundVariable):
        teach_prop(parse("p & q", ["and"]), ["and"], "p")
    with pytest.raises(NotInFragment):
        teach_prop(parse("p | q", ["or"]), ["and"], "pq")
    with pytest.raises(FragmentNotTeachable):
        teach_prop(parse("p -> q", ["imp"]), ["imp"], "pq")


def test_verify_examples():
    phi = parse("p & q", ["and"])
    r = verify_unique(phi, [ex("pq", "pq", 1)], ["and", "or"], "pq")
    assert r.status == "Ambiguous"
    f, g = r.witness
    assert f == named("and") and g != f
    assert evaluate_table(g, "pq", {"p": 1, "q": 1}) == 1
    # and, or, and both projections all fit the single positive
    assert r.fitting == 4
    assert verify_unique(Var("p"), [ex("p", "", 1)], ["and"], "p").status == "NotFitting"
    with pytest.raises(PropCapExceeded):
        verify_unique(Var("p"), [], ["and"], "pqrst")


def evaluate_table(f: BoolFn, prop, V) -> int:
    return f.at(sum(1 << k for k, p in enumerate(prop) if V[p]))


def _dnf(n, table, prop):
    """A monotone DNF for a monotone table, with ⊤/⊥ for the constants."""
    if table == 0:
        return Apply("bot", named("bot"), (Var(prop[0]),))
    terms = [S for S in range(1 << n) if table >> S & 1
             and not any(table >> (S & ~(1 << k)) & 1 for k in range(n) if S >> k & 1)]
    out = None
    for S in terms:
        vs = [Var(prop[k]) for k in range(n) if S >> k & 1]
        if not vs:
            return Apply("top", named("top"), (Var(prop[0]),))
        t = vs[0]
        for v in vs[1:]:
            t = Apply("and", named("and"), (t, v))
        out = t if out is None else Apply("or", named("or"), (out, t))
    return out


@pytest.mark.parametrize("n", [1, 2, 3])
def test_monotone_teaching_sizes(n):
    prop = "pqrs"[:n]
    for table in monotone_tables(n):
        phi = _dnf(n, table, prop)
        assert truth_table(phi, prop).table == table
        ts = teach_prop(phi, MON, prop)
        assert (len(ts.positives), len(ts.negatives)) == prime_implicants_and_clauses(n, table)
        assert verify_unique(phi, ts, MON, prop).status == "Unique"


@pytest.mark.parametrize("frag,probe", [(["and", "top", "bot"], "E"), (["or", "top", "bot"], "V"),
                                        (["xor", "top"], "L")])
def test_small_families_teach_with_n_plus_one(frag, probe):
    rng = random.Random(5)
    prop = "pqr"
    tables = [int(t) for t in closure_tables(Basis.of(*frag).functions, 3)]
    for t in rng.sample(tables, min(10, len(tables))):
        f = BoolFn(3, t)
        phi = learn_mq(frag, prop, table_oracle(f, prop))
        ts = teach_prop(phi, frag, prop)
        assert len(ts) <= len(prop) + 1
        assert verify_unique(phi, ts, frag, prop).status == "Unique"


# -- learning ---------------------------------------------------------------

def test_learn_examples():
    r = learn_mq_detail(["and"], "pqr", table_oracle(truth_table(parse("p & q", ["and"]), "pqr"), "pqr"))
    assert show(r.formula) == "and(p,q)" and r.queries == 4
    hidden = truth_table(parse("p ^ q ^ top(p)", ["xor", "top"]), "pq")
    r = learn_mq_detail(["xor", "top"], "pq", table_oracle(hidden, "pq"))
    assert r.hidden == {"c0": 1, "coefficients": ["p", "q"]} and r.queries == 3
    r = learn_mq_detail(["or", "top"], "p", lambda V: 1)
    assert r.hidden == {"constant": 1} and r.queries == 2


def test_learn_errors():
    with pytest.raises(NotLearnable):
        learn_mq(["and", "or"], "pq", lambda V: V["p"])
    with pytest.raises(OracleInconsistent):
        # false everywhere except {q}: the all-true probe says ⊥, the drop-p probe disagrees
        learn_mq(["and"], "pq", lambda V: int(V["q"] and not V["p"]))


@pytest.mark.parametrize("frag", [["and", "top", "bot"], ["or", "top", "bot"], ["xor", "top"]])
def test_learner_exhaustive_small(frag):
    for n in (1, 2, 3):
        prop = "pqrs"[:n]
        for t in closure_tables(Basis.of(*frag).functions, n):
            f = BoolFn(n, int(t))
            calls = []
            oracle = table_oracle(f, prop)
            r = learn_mq_detail(frag, prop, lambda V: calls.append(V) or oracle(V))
            assert r.queries == len(calls) == n + 1
            assert truth_table(r.formula, prop) == f


# -- parity lower bound ---------------------------------------------------------

def test_parity_examples():
    out = parity_lower_bound("pqr", [])
    assert out.status == "WitnessPair" and out.rank == 1
    assert set(out.witnesses) == {("p",), ("p", "q", "r")}
    out = parity_lower_bound("pq", [ex("pq", "pq", 1), ex("pq", "p", 1)])
    assert out.status == "Saturated" and out.rank == 2
    with pytest.raises(Inconsistent):
        parity_lower_bound("pq", [ex("pq", "pq", 0)])


def test_parity_small_sets_always_ambiguous():
    rng = random.Random(17)
    for n in range(3, 7):
        prop = "pqrstu"[:n]
        for _ in range(30):
            hidden = tuple(sorted(rng.sample(prop, rng.choice(range(1, n + 1, 2)))))
            pts = [tuple(p for p in prop if rng.random() < 0.5) for _ in range(n - 2)]
            exs = [ex(prop, pt, parity_value(hidden, V(prop, *pt))) for pt in pts]
            out = parity_lower_bound(prop, exs)
            assert out.status == "WitnessPair"
            a, b = out.witnesses
            assert a != b and len(a) % 2 == 1 and len(b) % 2 == 1
            for e in exs:
                assert parity_value(a, e.payload) == e.label == parity_value(b, e.payload)
            for phi in out.formulas():
                for e in exs:
                    assert evaluate(phi, {p: e.payload.get(p, 0) for p in prop}) == e.label


def test_parity_full_rank_examples_saturate():
    prop = "pqr"
    # the unit vectors together with the augmentation pin the parity down
    exs = [ex(prop, (p,), int(p == "r")) for p in prop]
    out = parity_lower_bound(prop, exs)
    assert out.status == "Saturated" and out.witnesses == (("r",),)


def test_example_json_round_trip():
    e = ex("pq", "p", 1)
    assert LabeledExample.from_json(e.to_json()) == e
    m = LabeledExample(PointedModel(chain(1, {1: ["p"]}), "0"), 1)
    assert LabeledExample.from_json(m.to_json()) == m


def test_prime_oracle_sanity():
    # majority of three has three prime implicants and three prime clauses
    assert prime_implicants_and_clauses(3, named("maj").table) == (3, 3)
