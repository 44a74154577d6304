"""Least models of constraint theories, and their epistemic encodings."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import FrozenSet, List, Optional, Tuple

from ..core import TWO_VALUED, Atom, Literal, ModalLiteral, Program, Rule
from ..gelfond import prime

CLASSICAL_VARIANT = "classical"
STABLE_VARIANT = "stable"

LEAST_MODEL_MAX_ATOMS = 12

Term = Tuple[str, bool]  # (atom, positive)


@dataclass(frozen=True)
class ConstraintTheory:
    """Constraints ``L1 & ... & Lk -> #false`` over a fixed set of atoms."""

    atoms: Tuple[str, ...]
    constraints: Tuple[Tuple[Term, ...], ...]

    def __post_init__(self):
        for c in self.constraints:
            for a, _ in c:
                if a not in self.atoms:
                    raise ValueError(f"atom {a} not declared")

    def satisfied_by(self, m: FrozenSet[str]) -> bool:
        return all(not all((a in m) == pos for a, pos in c) for c in self.constraints)

    def to_json(self) -> dict:
        return {"atoms": list(self.atoms),
                "constraints": [[("" if pos else "-") + a for a, pos in c] for c in self.constraints]}


def least_model_oracle(f: ConstraintTheory) -> Optional[FrozenSet[str]]:
    """The inclusion-least model of *f*, or ``None`` when there is none."""
    if len(f.atoms) > LEAST_MODEL_MAX_ATOMS:
        raise ValueError(f"least-model oracle is capped at {LEAST_MODEL_MAX_ATOMS} atoms")
    models = []
    for bits in product((False, True), repeat=len(f.atoms)):
        m = frozenset(a for a, b in zip(f.atoms, bits) if b)
        if f.satisfied_by(m):
            models.append(m)
    if not models:
        return None
    smallest = min(models, key=len)
    if all(smallest <= m for m in models):
        return smallest
    return None


def gen_unique_model_program(f: ConstraintTheory, variant: str = CLASSICAL_VARIANT) -> Program:
    """The theory, its copy with every atom under ``K``, and for *stable* a guess per atom."""
    if variant not in (CLASSICAL_VARIANT, STABLE_VARIANT):
        raise ValueError(f"unknown variant {variant!r}")
    rules: List[Rule] = []
    for c in f.constraints:
        pos = tuple(Literal(a) for a, p in c if p)
        neg = tuple(Literal(a) for a, p in c if not p)
        rules.append(Rule(pos=pos, neg=neg))
    for c in f.constraints:
        premise = tuple(ModalLiteral(Atom(a), default_neg=not p) for a, p in c)
        rules.append(Rule(premise=premise))
    vocab = list(f.atoms)
    if variant == STABLE_VARIANT:
        for a in f.atoms:
            rules.append(Rule(head=(Literal(prime(a)),), neg=(Literal(a),)))
            rules.append(Rule(head=(Literal(a),), neg=(Literal(prime(a)),)))
            vocab.append(prime(a))
    return Program(tuple(rules), TWO_VALUED, tuple(vocab))


def random_constraint_theory(rng: random.Random, max_atoms: int = 4, max_constraints: int = 5) -> ConstraintTheory:
    n = rng.randint(1, max_atoms)
    atoms = tuple("abcdefgh"[:n])
    constraints = []
    for _ in range(rng.randint(0, max_constraints)):
        size = rng.randint(1, min(3, n))
        chosen = sorted(rng.sample(atoms, size))
        constraints.append(tuple((a, rng.random() < 0.5) for a in chosen))
    return ConstraintTheory(atoms, tuple(constraints))
