"""Shared builders for tests: formula enumeration and hypothesis strategies."""

import random
from itertools import product

from hypothesis import strategies as st

from epispec.core import And, Atom, Bot, Implies, Literal, Neg, Or, Top

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def rng_from(seed):
    return random.Random(seed)


def formulas_up_to(height, leaves):
    """Every formula whose syntax tree has at most *height* levels (a leaf is one level)."""
    level = list(leaves)
    for _ in range(height - 1):
        nxt = list(leaves)
        nxt += [Neg(f) for f in level]
        for op in (And, Or, Implies):
            nxt += [op(l, r) for l, r in product(level, repeat=2)]
        level = nxt
    return level


LEAVES_2 = (Atom("a"), Atom("b"), Top(), Bot())


def formula_strategy(atoms=("a", "b", "c"), max_leaves=8):
    leaf = st.sampled_from([Atom(a) for a in atoms] + [Top(), Bot()])
    return st.recursive(
        leaf,
        lambda sub: st.one_of(
            sub.map(Neg),
            st.tuples(sub, sub).map(lambda t: And(*t)),
            st.tuples(sub, sub).map(lambda t: Or(*t)),
            st.tuples(sub, sub).map(lambda t: Implies(*t)),
        ),
        max_leaves=max_leaves,
    )


def consistent_world_strategy(atoms=("a", "b", "c")):
    return st.tuples(*[st.sampled_from([None, False, True]) for _ in atoms]).map(
        lambda choice: frozenset(Literal(a, n) for a, n in zip(atoms, choice) if n is not None))


def interpretation_strategy(atoms=("a", "b", "c")):
    return st.frozensets(st.sampled_from(atoms))
