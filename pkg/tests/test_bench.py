import json
from itertools import product

import pytest
from hypothesis import given

from epispec.bench import graphs, qbf, unique
from epispec.bench.oracles import (
    BRUTE_MAX_ATOMS, brute_world_view_oracle, naive_models, verdict, verdict_json,
)
from epispec.bench.random_programs import random_gelfond_program, random_lk_program
from epispec.bench.verify import verify_program
from epispec.core import CLASSICAL, STABLE, ResourceLimitError
from epispec.engine import enumerate_world_views
from epispec.textio import ground_program, load_program

from conftest import CORPUS
from helpers import rng_from, seeds

E, A = qbf.EXISTS, qbf.FORALL


# -- QBF ---------------------------------------------------------------------------

def test_qbf_eval_small_cases():
    # exists y forall z: (y & z) | (y & -z) is true with y = 1
    q = qbf.QbfInstance(((E, ("y",)), (A, ("z",))), ((("y", True), ("z", True)), (("y", True), ("z", False))))
    assert qbf.qbf_eval(q)
    # exists y forall z: (y & z) is false
    q = qbf.QbfInstance(((E, ("y",)), (A, ("z",))), ((("y", True), ("z", True)),))
    assert not qbf.qbf_eval(q)
    # exists x forall y exists z: (x | y | z) & (-z | y | x) & (-x | z | z) holds with x=1, z=1
    q = qbf.QbfInstance(((E, ("x",)), (A, ("y",)), (E, ("z",))),
                        ((("x", True), ("y", True), ("z", True)),
                         (("x", True), ("y", True), ("z", False)),
                         (("x", False), ("z", True))), qbf.CNF)
    assert qbf.qbf_eval(q)


def test_qbf_validation():
    with pytest.raises(ValueError):
        qbf.QbfInstance(((E, ("y",)),), ())
    with pytest.raises(ValueError):
        qbf.QbfInstance(((E, ("y",)), (A, ("y",))), ())
    with pytest.raises(ValueError):
        qbf.QbfInstance(((E, ("y",)), (A, ("z",))), ((("q", True),),))


def all_dnf_1_1():
    literals = [("y", True), ("y", False), ("z", True), ("z", False)]
    terms = [t for t in product(literals, repeat=2) if t[0][0] != t[1][0]] + [(l,) for l in literals]
    for t1, t2 in product(terms, repeat=2):
        yield qbf.QbfInstance(((E, ("y",)), (A, ("z",))), (t1, t2))


def test_sigma2_reduction_on_every_two_term_instance():
    for q in all_dnf_1_1():
        views = enumerate_world_views(qbf.gen_sigma2_program(q), STABLE)
        assert bool(views) == qbf.qbf_eval(q), q.to_json()


@given(seeds)
def test_sigma3_reduction_small(seed):
    q = qbf.random_sigma3_instance(rng_from(seed), n=1, n_clauses=3)
    views = enumerate_world_views(qbf.gen_sigma3_program(q), STABLE)
    assert bool(views) == qbf.qbf_eval(q)
    for v in views:
        (w,) = v.worlds
        assert "g" in w and "f" not in w


def test_sigma_generators_reject_reserved_names():
    q = qbf.QbfInstance(((E, ("w",)), (A, ("z",))), ((("w", True),),))
    with pytest.raises(ValueError):
        qbf.gen_sigma2_program(q)


def test_random_instances_are_reproducible():
    a = qbf.random_sigma2_instance(rng_from(5))
    b = qbf.random_sigma2_instance(rng_from(5))
    assert a == b
    assert json.loads(json.dumps(a.to_json())) == a.to_json()
    c = qbf.random_sigma3_instance(rng_from(5))
    assert all(len(clause) == 3 for clause in c.matrix)


# -- graphs ---------------------------------------------------------------------------

def digraph(n, edges):
    vs = tuple(f"v{i}" for i in range(n))
    return graphs.Digraph(vs, frozenset((f"v{u}", f"v{v}") for u, v in edges))


def critical_atoms(view):
    # critical atoms come from K, so every world carries the same ones
    per_world = {frozenset(a for a in w if a.startswith("critical(")) for w in view.worlds}
    (atoms,) = per_world
    return set(atoms)


def test_hamiltonian_oracle():
    tri = digraph(3, [(0, 1), (1, 2), (2, 0), (0, 2)])
    cycles, critical = graphs.hamiltonian_oracle(tri)
    assert len(cycles) == 1
    assert critical == {("v0", "v1"), ("v1", "v2"), ("v2", "v0")}
    _, none = graphs.hamiltonian_oracle(digraph(3, [(0, 1), (1, 2)]))
    assert none == {("v0", "v1"), ("v1", "v2")}


def test_digraph_validation():
    with pytest.raises(ValueError):
        digraph(2, [(0, 0)])
    with pytest.raises(ValueError):
        graphs.Digraph(("a", "a"), frozenset())


def test_hc_encoding_on_two_cycles():
    g = digraph(3, [(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)])
    (v,) = enumerate_world_views(ground_program(graphs.gen_hc_critical(g)), STABLE)
    assert critical_atoms(v) == set()


def test_hc_encoding_on_unique_cycle():
    g = digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    (v,) = enumerate_world_views(ground_program(graphs.gen_hc_critical(g)), STABLE)
    assert critical_atoms(v) == {graphs.edge_atom("critical", e) for e in [("v0", "v1"), ("v1", "v2"),
                                                                            ("v2", "v3"), ("v3", "v0")]}


def test_hc_encoding_without_cycle():
    g = digraph(3, [(0, 1), (1, 2)])
    assert enumerate_world_views(ground_program(graphs.gen_hc_critical(g)), STABLE) == []


def all_three_vertex_graphs():
    pairs = [(u, v) for u in range(3) for v in range(3) if u != v]
    for bits in product((False, True), repeat=len(pairs)):
        yield digraph(3, [e for e, b in zip(pairs, bits) if b])


def encoded_extension(g, p, k):
    views = enumerate_world_views(ground_program(graphs.gen_extension(g, p, k)), STABLE)
    if not views:
        return None
    (v,) = views
    return frozenset(tuple(a[len("critical("):-1].split(",")) for a in critical_atoms(v))


@pytest.mark.parametrize("p", [0, 1, 2])
def test_extension_encoding_matches_pooled_oracle(p):
    for g in all_three_vertex_graphs():
        for k in range(3):
            assert encoded_extension(g, p, k) == graphs.pooled_extension_oracle(g, p, k), (g, p, k)


def test_extension_literal_reading_differs():
    # with no edges and no budget nothing has a cycle, so every (zero) edge is critical
    empty = digraph(3, [])
    assert graphs.extension_oracle(empty, 0, 0) == frozenset()
    assert encoded_extension(empty, 0, 0) is None
    # two disjoint extensions each have one cycle; pooling leaves no common edge
    g = digraph(3, [(0, 1), (1, 0)])
    assert graphs.extension_oracle(g, 2, 0) is None
    assert encoded_extension(g, 2, 0) == frozenset()


def test_extension_oracle_limits():
    with pytest.raises(ValueError):
        graphs.extension_oracle(digraph(4, []), 1, 1)


def test_random_digraph():
    g = graphs.random_digraph(rng_from(3), 4, 0.5)
    assert g == graphs.random_digraph(rng_from(3), 4, 0.5)
    assert g.vertices == ("v0", "v1", "v2", "v3")


# -- unique models ----------------------------------------------------------------------

def test_least_model_oracle():
    f = unique.ConstraintTheory(("a", "b"), ((("a", False),),))
    assert unique.least_model_oracle(f) == {"a"}
    g = unique.ConstraintTheory(("a", "b"), ((("a", False), ("b", False)),))
    assert unique.least_model_oracle(g) is None
    h = unique.ConstraintTheory(("a",), ((("a", True),), (("a", False),)))
    assert unique.least_model_oracle(h) is None
    with pytest.raises(ValueError):
        unique.ConstraintTheory(("a",), ((("b", True),),))


def test_unique_encodings():
    f = unique.ConstraintTheory(("a", "b"), ((("a", False),), (("a", True), ("b", True))))
    (v,) = enumerate_world_views(unique.gen_unique_model_program(f), CLASSICAL)
    assert v.structure == {frozenset({"a"})}
    (s,) = enumerate_world_views(unique.gen_unique_model_program(f, unique.STABLE_VARIANT), STABLE)
    assert s.structure == {frozenset({"a", "b'"})}
    with pytest.raises(ValueError):
        unique.gen_unique_model_program(f, "supported")


# -- brute oracle and records ---------------------------------------------------------------

def test_brute_oracle_examples():
    assert brute_world_view_oracle(load_program("a :- not K a."), STABLE) == []
    assert brute_world_view_oracle(load_program("a | b."), STABLE) == [{frozenset({"a"}), frozenset({"b"})}]
    with pytest.raises(ResourceLimitError):
        brute_world_view_oracle(load_program("a. b. c. d."), STABLE)
    with pytest.raises(ValueError):
        brute_world_view_oracle(load_program("#dialect gelfond.\na."), STABLE)
    assert BRUTE_MAX_ATOMS == 3


def test_naive_models_stable():
    p = load_program("a :- not b. b :- not a. c :- a, b.")
    assert naive_models(p.rules, p.vocabulary, STABLE) == {frozenset({"a"}), frozenset({"b"})}


def test_verdict_records():
    rec = verdict({"seed": 1}, {frozenset({"a"})}, {frozenset({"a"})})
    assert rec["match"]
    doc = json.loads(verdict_json(rec))
    assert doc == {"instance": {"seed": 1}, "oracle": [["a"]], "solver": [["a"]], "match": True}
    assert not verdict({}, 1, 2)["match"]


@pytest.mark.parametrize("path", sorted(CORPUS.glob("*.elp")), ids=lambda p: p.stem)
def test_verify_corpus_program(path):
    records = verify_program(load_program(path.read_text()))
    assert records and all(r["match"] for r in records)


@given(seeds)
def test_random_generators_are_seeded(seed):
    assert random_lk_program(rng_from(seed)) == random_lk_program(rng_from(seed))
    assert random_gelfond_program(rng_from(seed)) == random_gelfond_program(rng_from(seed))
    p = random_lk_program(rng_from(seed), max_modal=3)
    assert len(p.modal_atoms()) <= 3
