from __future__ import annotations

import random

import pytest

from clonekit.boolfn import BoolFn, named, projection, threshold
from clonekit.clones import (Basis, NamedClone, all_named, base_of, clone, close_at_arity, contains,
                             covering_edges, identify, in_downward_closed, join, lattice_dot, leq,
                             meet, member)
from clonekit.errors import BudgetExceeded, DegreeCapExceeded, UnknownName

from oracles import naive_closure, post_properties, to_table

B = Basis.of


def test_close_at_arity_examples():
    assert close_at_arity(B(), 2) == {projection(2, 0), projection(2, 1)}
    assert close_at_arity(B("nimp"), 1) == {projection(1, 0), named("bot")}
    assert len(close_at_arity(B("and", "not"), 2)) == 16


def test_member_examples():
    assert member(named("and"), B("nimp"))
    assert not member(named("not"), B("and", "or", "top", "bot"))
    for basis in (B(), B("xor"), B("and", "not")):
        assert member(projection(2, 1), basis)


def test_leq_examples():
    assert leq(B("maj"), B("and", "or"))
    assert not leq(B("xor"), B("and", "or", "top", "bot"))
    assert leq(B("aimp"), B("aimp"))


@pytest.mark.parametrize("basis,expected", [
    (("nimp",), "S1"), (("and", "not"), "BF"), ((), "I2"), (("and", "or"), "M2"),
    (("or", "eq"), "R1"), (("maj", "not"), "D"), (("not", "top", "bot"), "N"),
    (("and", "top", "bot"), "E"), (("xor", "bot"), "L0"), (("xor", "top"), "L"),
    (("and", "xor"), "R0"), (("xor3n",), "L3"), (("and_or", "bot"), "S11"), (("eq", "bot"), "L"),
    (("not", "bot"), "N"), (("imp",), "S0"), (("xor3",), "L2"), (("maj",), "D2"),
])
def test_identify_examples(basis, expected):
    assert identify(B(*basis)) == NamedClone(expected)


def test_base_of_examples():
    assert base_of(NamedClone("D2")).functions == (named("maj"),)
    assert base_of(NamedClone("S00n", 3)).functions[-1] == threshold(4, 2)
    assert named("xor3") in base_of(NamedClone("L2")).functions


def test_contains_examples():
    assert contains(NamedClone("BF"), NamedClone("L"))
    assert not contains(NamedClone("M"), NamedClone("D"))
    assert not contains(NamedClone("S0"), NamedClone("R1"))
    assert contains(NamedClone("R1"), NamedClone("S0"))


def test_join_meet_examples():
    assert join(NamedClone("E2"), NamedClone("V2")) == NamedClone("M2")
    for c in all_named(3):
        assert join(c, c) == c
        assert meet(c, c) == c


def test_meet_of_monotone_and_linear_matches_brute_force():
    # monotone and affine at the same time, found by brute force over arity ≤ 3
    both = [BoolFn(n, t) for n in (1, 2, 3) for t in range(1 << (1 << n))
            if post_properties(n, tuple(BoolFn(n, t).bits()))["M"]
            and post_properties(n, tuple(BoolFn(n, t).bits()))["L"]]
    assert meet(NamedClone("M"), NamedClone("L")) == identify(Basis.of(*both))


def test_in_downward_closed_examples():
    assert in_downward_closed([NamedClone("M"), NamedClone("L")], B("xor"))
    assert not in_downward_closed([NamedClone("M")], B("not"))
    assert in_downward_closed([NamedClone("BF")], B("maj", "xor", "not"))


def test_round_trip_small_cap():
    for c in all_named(3):
        assert identify(base_of(c, 3), 3) == c


def test_contains_is_a_partial_order():
    nodes = all_named(3)
    for a in nodes:
        assert contains(a, a)
        for b in nodes:
            if a != b and contains(a, b):
                assert not contains(b, a)
    rng = random.Random(5)
    for _ in range(400):
        a, b, c = rng.sample(nodes, 3)
        if contains(a, b) and contains(b, c):
            assert contains(a, c)


def test_absorption_on_sampled_pairs():
    nodes = all_named(3)
    rng = random.Random(11)
    for _ in range(30):
        a, b = rng.sample(nodes, 2)
        assert join(a, meet(a, b, 3), 3) == a
        assert meet(a, join(a, b, 3), 3) == a


def test_closure_idempotent_and_monotone():
    base = B("or", "bot")
    once = close_at_arity(base, 2)
    assert close_at_arity(Basis.of(*once), 2) == once
    assert once <= close_at_arity(B("or", "bot", "and"), 2)


def test_member_agrees_with_naive_closure():
    rng = random.Random(3)
    for _ in range(25):
        basis = [BoolFn(a, rng.randrange(1 << (1 << a))) for a in rng.choices((2, 3), k=rng.randint(1, 2))]
        n = rng.randint(1, 2)
        f = BoolFn(n, rng.randrange(1 << (1 << n)))
        naive = naive_closure([(g.arity, g.table) for g in basis], n)
        assert member(f, basis) == (tuple(f.bits()) in naive)


def test_closure_tables_match_naive_closure():
    for names in (("and", "or"), ("maj", "not"), ("xor3",), ("aimp",)):
        fns = [named(x) for x in names]
        ours = {f.table for f in close_at_arity(fns, 3)}
        theirs = {to_table(v) for v in naive_closure([(f.arity, f.table) for f in fns], 3)}
        assert ours == theirs


def test_lattice_dot_deterministic_with_expected_edges():
    a, b = lattice_dot(2), lattice_dot(2)
    assert a == b and a.startswith("digraph")
    assert '"BF" -> "R0";' in a
    assert (NamedClone("BF"), NamedClone("R1")) in covering_edges(2)


def test_clone_text_forms():
    assert clone("V2") == NamedClone("V2")
    assert clone("S00n:3") == clone("S00^3") == NamedClone("S00n", 3)
    with pytest.raises(UnknownName):
        clone("Q7")


def test_degree_cap_enforced():
    with pytest.raises(DegreeCapExceeded):
        base_of(NamedClone("S0n", 4), degree_cap=3)


def test_budget_is_reported():
    with pytest.raises(BudgetExceeded):
        close_at_arity(B("and", "not"), 4, budget=100)
