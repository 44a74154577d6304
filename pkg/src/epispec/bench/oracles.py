"""Brute-force reference implementations used to certify the solver.

Nothing here shares code with the solver beyond the data types and formula
evaluation: models are found by truth tables and world views by testing
every nonempty family of interpretations against the fixpoint definition.
"""

from __future__ import annotations

import json
from itertools import combinations, product
from typing import Dict, FrozenSet, List, Tuple

from ..core import CLASSICAL, STABLE, SUPPORTED, Program, ResourceLimitError, Rule, eval2

BRUTE_MAX_ATOMS = 3
NAIVE_MAX_ATOMS = 10


def _all_interpretations(vocab) -> List[FrozenSet[str]]:
    vocab = sorted(vocab)
    return [frozenset(a for a, b in zip(vocab, bits) if b)
            for bits in product((False, True), repeat=len(vocab))]


def _body(r: Rule, m) -> bool:
    if not all(eval2(c, frozenset()) for c in r.consts):
        return False
    if any(l.atom not in m for l in r.pos) or any(l.atom in m for l in r.neg):
        return False
    if r.guard is not None:
        hits = sum(1 for member in r.guard.members if all(l.atom in m for l in member))
        return hits >= r.guard.bound
    return True


def _satisfies(rules, m) -> bool:
    return all(not _body(r, m) or any(l.atom in m for l in r.head) for r in rules)


def _subsets(m) -> List[FrozenSet[str]]:
    items = sorted(m)
    return [frozenset(c) for k in range(len(items) + 1) for c in combinations(items, k)]


def naive_models(rules: Tuple[Rule, ...], vocab, sem: str) -> FrozenSet[FrozenSet[str]]:
    """Models of premise-free two-valued rules, straight from the definitions."""
    if len(vocab) > NAIVE_MAX_ATOMS:
        raise ResourceLimitError("naive model enumeration is capped at %d atoms" % NAIVE_MAX_ATOMS)
    out = set()
    for m in _all_interpretations(vocab):
        if not _satisfies(rules, m):
            continue
        if sem == CLASSICAL:
            out.add(m)
        elif sem == STABLE:
            reduct = [Rule(r.head, r.pos, (), (), r.guard, r.consts)
                      for r in rules if not any(l.atom in m for l in r.neg)]
            if not any(_satisfies(reduct, n) for n in _subsets(m) if n != m):
                out.add(m)
        elif sem == SUPPORTED:
            heads = [frozenset(l.atom for l in r.head) for r in rules if _body(r, m)]
            # m must meet every head, and no proper subset of m may
            if all(h & m for h in heads) and not any(
                    all(h & n for h in heads) for n in _subsets(m) if n != m):
                out.add(m)
        else:
            raise ValueError(f"unknown semantics {sem!r}")
    return frozenset(out)


def _premise_holds(r: Rule, family) -> bool:
    for ml in r.premise:
        known = all(eval2(ml.body, w) for w in family)
        if known == ml.default_neg:
            return False
    return True


def brute_world_view_oracle(p: Program, sem: str) -> List[FrozenSet[FrozenSet[str]]]:
    """Every nonempty family A of interpretations with ``A = Sem(P^A)``, canonically sorted."""
    if p.dialect != "lk":
        raise ValueError("brute oracle handles two-valued programs; use the Gelfond direct method")
    if len(p.vocabulary) > BRUTE_MAX_ATOMS:
        raise ResourceLimitError(f"brute oracle is capped at {BRUTE_MAX_ATOMS} atoms")
    worlds = _all_interpretations(p.vocabulary)
    memo: Dict[Tuple[int, ...], FrozenSet] = {}
    views = []
    for k in range(1, len(worlds) + 1):
        for family in combinations(worlds, k):
            kept = tuple(i for i, r in enumerate(p.rules) if _premise_holds(r, family))
            if kept not in memo:
                rules = tuple(Rule(p.rules[i].head, p.rules[i].pos, p.rules[i].neg, (),
                                   p.rules[i].guard, p.rules[i].consts) for i in kept)
                memo[kept] = naive_models(rules, p.vocabulary, sem)
            if memo[kept] == frozenset(family):
                views.append(frozenset(family))
    return sorted(views, key=lambda a: sorted(tuple(sorted(w)) for w in a))


def verdict(instance, oracle, solver) -> dict:
    """Agreement record ``{"instance", "oracle", "solver", "match"}``."""
    return {"instance": instance, "oracle": oracle, "solver": solver, "match": oracle == solver}


def verdict_json(record: dict) -> str:
    return json.dumps(record, sort_keys=True, default=_jsonable)


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(y) if isinstance(y, (set, frozenset)) else y for y in x)
    if hasattr(x, "to_json"):
        return x.to_json()
    raise TypeError(f"cannot serialize {type(x).__name__}")
