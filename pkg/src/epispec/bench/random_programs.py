"""Seeded random epistemic programs for differential testing."""

from __future__ import annotations

import random
from typing import List

from ..core import (
    GELFOND, TWO_VALUED, And, Atom, Formula, Guard, Implies, Literal, ModalLiteral, Neg, Or,
    Program, Rule,
)

ATOM_NAMES = ("a", "b", "c", "d", "e", "f")


def random_formula(rng: random.Random, atoms, depth: int, negation: bool = True) -> Formula:
    if depth == 0 or rng.random() < 0.4:
        return Atom(rng.choice(atoms))
    choices = [And, Or, Implies] + ([Neg] if negation else [])
    op = rng.choice(choices)
    if op is Neg:
        return Neg(random_formula(rng, atoms, depth - 1, negation))
    return op(random_formula(rng, atoms, depth - 1, negation),
              random_formula(rng, atoms, depth - 1, negation))


def _sample_literals(rng, atoms, k, strong: bool) -> tuple:
    chosen = rng.sample(atoms, min(k, len(atoms)))
    return tuple(sorted(Literal(a, strong and rng.random() < 0.4) for a in chosen))


def random_lk_program(rng: random.Random, max_atoms: int = 3, max_rules: int = 5,
                      max_modal: int = 3, guards: bool = True) -> Program:
    """A two-valued epistemic program with at most *max_modal* distinct modal atoms."""
    atoms = list(ATOM_NAMES[:rng.randint(1, max_atoms)])
    pool = []
    for _ in range(rng.randint(0, max_modal)):
        pool.append(random_formula(rng, atoms, rng.choice((0, 0, 1, 2))))
    rules: List[Rule] = []
    for _ in range(rng.randint(1, max_rules)):
        head = _sample_literals(rng, atoms, rng.choice((0, 1, 1, 1, 2)), False)
        pos = _sample_literals(rng, atoms, rng.choice((0, 0, 1, 2)), False)
        neg = _sample_literals(rng, atoms, rng.choice((0, 0, 1)), False)
        premise = ()
        if pool and rng.random() < 0.6:
            k = rng.randint(1, min(2, len(pool)))
            premise = tuple(ModalLiteral(f, default_neg=rng.random() < 0.5) for f in rng.sample(pool, k))
        guard = None
        if guards and not head and len(atoms) >= 2 and rng.random() < 0.15:
            members = tuple((Literal(a),) for a in atoms)
            guard = Guard(rng.randint(1, len(atoms)), members)
        rules.append(Rule(head, pos, neg, premise, guard))
    return Program(tuple(rules), TWO_VALUED, tuple(atoms))


def random_gelfond_program(rng: random.Random, max_atoms: int = 4, max_rules: int = 5,
                           max_modal: int = 3) -> Program:
    """A Gelfond-dialect program with at most *max_modal* modal literals in total."""
    atoms = list(ATOM_NAMES[:rng.randint(1, max_atoms)])
    budget = rng.randint(0, max_modal)
    rules: List[Rule] = []
    for _ in range(rng.randint(1, max_rules)):
        head = _sample_literals(rng, atoms, rng.choice((0, 1, 1, 1, 2)), True)
        pos = _sample_literals(rng, atoms, rng.choice((0, 0, 1, 2)), True)
        neg = _sample_literals(rng, atoms, rng.choice((0, 0, 1)), True)
        premise = []
        while budget and rng.random() < 0.5:
            budget -= 1
            body = random_formula(rng, atoms, rng.choice((0, 0, 1, 2)))
            premise.append(ModalLiteral(body, default_neg=rng.random() < 0.5,
                                        strong_neg=rng.random() < 0.4))
        rules.append(Rule(head, pos, neg, tuple(premise)))
    return Program(tuple(rules), GELFOND, tuple(atoms))
