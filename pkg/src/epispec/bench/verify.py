"""Solver-versus-oracle agreement for a single ground program."""

from __future__ import annotations

from typing import List

from ..core import GELFOND, SEMANTICS, ResourceLimitError, Rule, structure_key
from ..engine import enumerate_world_views, epistemic_reduct
from ..gelfond import (
    DIRECT, DIRECT_MAX_ATOMS, GUESS, GUESS_MAX_ATOMS, consistent_worlds, gelfond_world_views,
    is_gelfond_world_view,
)
from .oracles import BRUTE_MAX_ATOMS, NAIVE_MAX_ATOMS, brute_world_view_oracle, naive_models, verdict


WORLD_CHECK_MAX_ATOMS = 9


def _keys(views) -> List[list]:
    return [[list(w) for w in v.key()] for v in views]


def verify_program(p, max_modal: int = 20) -> List[dict]:
    """One verdict per semantics, using the strongest oracle the program size allows.

    Two-valued programs: the brute-force family search up to
    ``BRUTE_MAX_ATOMS`` atoms; then a truth-table fixpoint check of every
    reported view (which cannot detect missing views); beyond that, agreement
    between the split and the plain partition search.
    Gelfond programs: the exhaustive family test or the modal-valuation guess,
    then a literal world-view check of every reported view.
    """
    out = []
    n = len(p.vocabulary)
    if p.dialect == GELFOND:
        solver = _keys(gelfond_world_views(p, max_modal=max_modal))
        if n <= GUESS_MAX_ATOMS:
            method = DIRECT if n <= DIRECT_MAX_ATOMS else GUESS
            oracle = _keys(gelfond_world_views(p, method))
        elif n <= WORLD_CHECK_MAX_ATOMS:
            method = "world-view check"
            worlds = consistent_worlds(p.vocabulary)
            views = gelfond_world_views(p, max_modal=max_modal)
            oracle = _keys(v for v in views if is_gelfond_world_view(p, v.worlds, worlds))
        else:
            raise ResourceLimitError(f"no Gelfond oracle for {n} atoms")
        return [verdict({"semantics": "gelfond", "oracle": method}, oracle, solver)]
    for sem in SEMANTICS:
        views = enumerate_world_views(p, sem, max_modal)
        solver = _keys(views)
        if n <= BRUTE_MAX_ATOMS:
            oracle = [[list(w) for w in structure_key(a)] for a in brute_world_view_oracle(p, sem)]
            kind = "brute-force"
        elif n <= NAIVE_MAX_ATOMS:
            oracle = []
            for v in views:
                reduct = epistemic_reduct(p, v.worlds)
                rules = tuple(Rule(r.head, r.pos, r.neg, (), r.guard, r.consts) for r in reduct.rules)
                if naive_models(rules, p.vocabulary, sem) == v.structure:
                    oracle.append([list(w) for w in v.key()])
            kind = "truth-table fixpoint"
        else:
            oracle = _keys(enumerate_world_views(p, sem, max_modal, split=False))
            kind = "plain partition search"
        out.append(verdict({"semantics": sem, "oracle": kind}, oracle, solver))
    return out
