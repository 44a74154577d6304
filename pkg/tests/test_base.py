from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from epispec import base
from epispec.bench.oracles import naive_models
from epispec.bench.random_programs import random_lk_program
from epispec.core import CLASSICAL, SEMANTICS, STABLE, SUPPORTED, Literal, Program, Rule, lit
from epispec.textio import load_program

from helpers import rng_from, seeds


def modal_free(seed, max_atoms=5, max_rules=6):
    return random_lk_program(rng_from(seed), max_atoms=max_atoms, max_rules=max_rules, max_modal=0)


def test_inclusions_on_500_programs():
    for seed in range(500):
        p = modal_free(seed)
        stable = base.stable_models(p)
        assert stable <= base.classical_models(p), seed
        assert stable <= base.supported_models(p), seed


@given(seeds)
def test_models_match_truth_tables(seed):
    p = modal_free(seed)
    for sem in SEMANTICS:
        assert base.models(p, sem) == naive_models(p.rules, p.vocabulary, sem)


def least_model(rules):
    m = set()
    while True:
        new = {r.head[0].atom for r in rules if all(l.atom in m for l in r.pos)} - m
        if not new:
            return frozenset(m)
        m |= new


@given(seeds)
def test_definite_programs_have_their_least_model_as_only_stable_model(seed):
    rng = rng_from(seed)
    atoms = list("abcde")
    rules = tuple(Rule(head=(Literal(rng.choice(atoms)),),
                       pos=tuple(Literal(a) for a in rng.sample(atoms, rng.randint(0, 2))))
                  for _ in range(rng.randint(1, 7)))
    p = Program(rules, vocabulary=tuple(atoms))
    assert base.stable_models(p) == {least_model(rules)}


@given(seeds)
def test_tight_programs_stable_equals_supported(seed):
    rng = rng_from(seed)
    atoms = list("abcd")
    rules = []
    for _ in range(rng.randint(1, 6)):
        head = tuple(sorted(Literal(a) for a in rng.sample(atoms, rng.randint(0, 2))))
        lowest = min((atoms.index(l.atom) for l in head), default=len(atoms))
        # positive body atoms strictly below every head atom keeps dependencies acyclic
        pos = tuple(Literal(a) for a in atoms[:lowest] if rng.random() < 0.3)
        neg = tuple(Literal(a) for a in atoms if rng.random() < 0.2)
        rules.append(Rule(head, pos, neg))
    p = Program(tuple(rules), vocabulary=tuple(atoms))
    assert base.stable_models(p) == base.supported_models(p)


def brute_min_closed(h):
    h = [frozenset(d) for d in h]
    universe = sorted(set().union(*h), key=str) if h else []
    hits = [frozenset(c) for k in range(len(universe) + 1) for c in combinations(universe, k)
            if all(frozenset(c) & d for d in h)]
    return {s for s in hits if not any(t < s for t in hits)}


families = st.lists(st.frozensets(st.sampled_from("abcde"), min_size=1, max_size=3), max_size=5)


@given(families)
def test_min_closed_sets_are_minimal_hitting_sets(h):
    out = base.min_closed_sets(h)
    assert len(out) == len(set(out))
    assert set(out) == brute_min_closed(h)
    for s in out:
        assert not any(t < s for t in out)
        assert base.is_min_closed(s, h)


def test_min_closed_sets_respect_consistency():
    h = [{lit("a"), lit("-a")}, {lit("-a")}]
    assert base.min_closed_sets(h) == [frozenset({lit("-a")})]
    assert not base.is_min_closed({lit("a"), lit("-a")}, h)


def test_empty_disjunction_has_no_hitting_set():
    assert base.min_closed_sets([frozenset()]) == []
    assert base.min_closed_sets([]) == [frozenset()]


def test_stable_and_supported_differ_on_self_support():
    p = load_program("a :- a.")
    assert base.stable_models(p) == {frozenset()}
    assert base.supported_models(p) == {frozenset(), frozenset({"a"})}
    assert base.classical_models(p) == {frozenset(), frozenset({"a"})}


def test_even_loop_and_disjunction():
    p = load_program("a :- not b. b :- not a.")
    assert base.stable_models(p) == {frozenset({"a"}), frozenset({"b"})}
    q = load_program("a | b. a :- b.")
    assert base.stable_models(q) == {frozenset({"a"})}
    assert base.supported_models(q) == {frozenset({"a"})}


def test_cardinality_guard_is_counted():
    p = load_program("a | b. b | c. :- 2 {a : a; b : b; c : c}.")
    assert base.stable_models(p) == {frozenset({"b"})}


def test_reducts():
    p = load_program("a :- not b. c :- a.")
    assert base.gl_reduct(p, {"b"}).rules == (Rule(head=(Literal("c"),), pos=(Literal("a"),)),)
    assert base.supp_reduct(p, frozenset({"a"})) == [frozenset({"a"}), frozenset({"c"})]


def test_modal_programs_rejected():
    with pytest.raises(Exception):
        base.stable_models(load_program("a :- K b."))


def test_unknown_semantics():
    with pytest.raises(ValueError):
        base.models(load_program("a."), "wellfounded")


@pytest.mark.parametrize("sem", [CLASSICAL, STABLE, SUPPORTED])
def test_constraint_kills_everything(sem):
    assert base.models(load_program("a. :- a."), sem) == frozenset()
