"""Gelfond's three-valued world views and their translation to the two-valued setting.

Strong negation is eliminated by a fresh primed atom per atom (``x'`` stands
for ``-x``).  Kleene formulas become pairs of classical formulas: ``plus``
is true exactly when the original is true, ``minus`` is false exactly when
the original is false.  World views of a Gelfond program are then the
epistemic supported models of the translated program, mapped back.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import FrozenSet, Iterable, List, Optional, Tuple

from . import base
from .core import (
    GELFOND, PRIME, SUPPORTED, TWO_VALUED, And, Atom, Bot, EpispecError, Formula, Guard,
    Implies, Literal, ModalLiteral, Neg, Or, Program, ResourceLimitError, Rule, Top, Truth,
    eval3, intern_atom, is_consistent, sat_modal,
)
from .engine import DEFAULT_MAX_MODAL, SearchStats, WorldView, enumerate_world_views

VIA_SIGMA = "via_sigma"
DIRECT = "direct"
GUESS = "guess"

DIRECT_MAX_ATOMS = 2
GUESS_MAX_ATOMS = 6


# -- primed vocabulary --------------------------------------------------------------

def prime(atom: str) -> str:
    """``p(a)`` -> ``p'(a)``; ``q`` -> ``q'``."""
    i = atom.find("(")
    if i < 0:
        return intern_atom(atom + PRIME)
    return intern_atom(atom[:i] + PRIME + atom[i:])


def is_primed(atom: str) -> bool:
    i = atom.find("(")
    pred = atom if i < 0 else atom[:i]
    return pred.endswith(PRIME)


def unprime(atom: str) -> str:
    i = atom.find("(")
    if i < 0:
        return intern_atom(atom[:-1])
    return intern_atom(atom[:i - 1] + atom[i:])


def prime_encode(w: Iterable[Literal]) -> FrozenSet[str]:
    """Consistent literal set -> atom set, ``-x`` becoming ``x'``."""
    w = frozenset(w)
    if not is_consistent(w):
        raise ValueError("cannot encode an inconsistent literal set")
    return frozenset(prime(l.atom) if l.neg else l.atom for l in w)


def prime_decode(m: Iterable[str]) -> FrozenSet[Literal]:
    """Inverse of :func:`prime_encode`; a set holding both ``x`` and ``x'`` is rejected."""
    out = set()
    for a in m:
        out.add(Literal(unprime(a), True) if is_primed(a) else Literal(a))
    if not is_consistent(out):
        clash = sorted(l.atom for l in out if l.neg and Literal(l.atom) in out)
        raise ValueError("atom set contains both x and x' for " + ", ".join(clash))
    return frozenset(out)


# -- Kleene formulas as classical pairs -------------------------------------------------

def plus_minus(phi: Formula) -> Tuple[Formula, Formula]:
    """``(plus, minus)`` over the primed vocabulary.

    Under the encoding of a world, ``phi`` is t iff ``plus`` holds, and ``phi``
    is f iff ``minus`` fails.
    """
    if isinstance(phi, Atom):
        return phi, Neg(Atom(prime(phi.name)))
    if isinstance(phi, (Bot, Top)):
        return phi, phi
    if isinstance(phi, Neg):
        p, m = plus_minus(phi.arg)
        return Neg(m), Neg(p)
    if isinstance(phi, (And, Or)):
        lp, lm = plus_minus(phi.left)
        rp, rm = plus_minus(phi.right)
        return type(phi)(lp, rp), type(phi)(lm, rm)
    if isinstance(phi, Implies):
        lp, lm = plus_minus(phi.left)
        rp, rm = plus_minus(phi.right)
        return Implies(lm, rp), Implies(lp, rm)
    raise TypeError(f"not a formula: {phi!r}")


def _sigma_literal(l: Literal) -> Literal:
    return Literal(prime(l.atom)) if l.neg else Literal(l.atom)


def _sigma_modal(m: ModalLiteral) -> ModalLiteral:
    p, n = plus_minus(m.body)
    if m.strong_neg:
        # -K f is "K minus fails"; not -K f is "K minus"
        return ModalLiteral(n, default_neg=not m.default_neg)
    return ModalLiteral(p, default_neg=m.default_neg)


def sigma_rule(r: Rule) -> Rule:
    guard = None
    if r.guard is not None:
        guard = Guard(r.guard.bound, tuple(tuple(map(_sigma_literal, mem)) for mem in r.guard.members))
    return Rule(
        head=tuple(map(_sigma_literal, r.head)),
        pos=tuple(map(_sigma_literal, r.pos)),
        neg=tuple(map(_sigma_literal, r.neg)),
        premise=tuple(map(_sigma_modal, r.premise)),
        guard=guard,
        consts=r.consts,
    )


def sigma_translate(p: Program) -> Program:
    """Two-valued program whose epistemic supported models encode the Gelfond world views of *p*."""
    if p.dialect != GELFOND:
        raise EpispecError("sigma translation expects a Gelfond-dialect program")
    rules = [sigma_rule(r) for r in p.rules]
    vocab = []
    for a in p.vocabulary:
        if is_primed(a):
            raise EpispecError(f"atom {a} clashes with the primed vocabulary")
        vocab += [a, prime(a)]
        rules.append(Rule(pos=(Literal(a), Literal(prime(a)))))
    return Program(tuple(rules), TWO_VALUED, tuple(vocab))


# -- Gelfond's reduct and world views ------------------------------------------------

def _body_holds(r: Rule, a, w) -> bool:
    if not all(sat_modal(a, m, GELFOND) for m in r.premise):
        return False
    return base.body_holds(r, w, GELFOND)


def g_reduct(p: Program, a: Iterable, w: Iterable[Literal]) -> List[FrozenSet[Literal]]:
    """Head disjunctions of the rules whose whole body holds in the pair (structure, world)."""
    a = list(a)
    w = frozenset(w)
    return [frozenset(r.head) for r in p.rules if _body_holds(r, a, w)]


def consistent_worlds(vocabulary: Iterable[str]) -> List[FrozenSet[Literal]]:
    """All consistent literal sets over *vocabulary* (3^n of them)."""
    vocab = sorted(vocabulary)
    out = []
    for choice in product((None, False, True), repeat=len(vocab)):
        out.append(frozenset(Literal(a, neg) for a, neg in zip(vocab, choice) if neg is not None))
    return out


def is_gelfond_world_view(p: Program, a: Iterable, worlds: Optional[List] = None) -> bool:
    """Literal check of ``A = {W | W in Min(P^<A,W>)}`` over consistent worlds."""
    a = frozenset(a)
    if not a:
        return False
    worlds = worlds if worlds is not None else consistent_worlds(p.vocabulary)
    expected = {w for w in worlds if base.is_min_closed(w, g_reduct(p, a, w))}
    return expected == a


def _view(worlds, partition=None) -> WorldView:
    return WorldView(tuple(worlds), SUPPORTED, partition, verified=True, dialect=GELFOND)


def _direct(p: Program) -> List[WorldView]:
    n = len(p.vocabulary)
    if n > DIRECT_MAX_ATOMS:
        raise ResourceLimitError(f"direct Gelfond oracle is capped at {DIRECT_MAX_ATOMS} atoms, got {n}")
    worlds = consistent_worlds(p.vocabulary)
    views = []
    for size in range(1, len(worlds) + 1):
        for family in combinations(worlds, size):
            if is_gelfond_world_view(p, family, worlds):
                views.append(_view(family))
    return sorted(views, key=WorldView.key)


def _guess(p: Program) -> List[WorldView]:
    """Guess, per modal atom, whether it is known, refuted somewhere, or neither; then verify."""
    n = len(p.vocabulary)
    if n > GUESS_MAX_ATOMS:
        raise ResourceLimitError(f"guessing Gelfond oracle is capped at {GUESS_MAX_ATOMS} atoms, got {n}")
    worlds = consistent_worlds(p.vocabulary)
    bodies = sorted({m.body for r in p.rules for m in r.premise}, key=str)
    found = {}
    # per body: "known" (t everywhere), "refuted" (f somewhere), "open" (neither)
    for status in product(("known", "refuted", "open"), repeat=len(bodies)):
        guess = dict(zip(bodies, status))

        def premise_ok(r: Rule) -> bool:
            for m in r.premise:
                s = guess[m.body]
                holds = (s == "refuted") if m.strong_neg else (s == "known")
                if holds == m.default_neg:
                    return False
            return True

        live = [r for r in p.rules if premise_ok(r)]
        a = [w for w in worlds
             if base.is_min_closed(w, [frozenset(r.head) for r in live if base.body_holds(r, w, GELFOND)])]
        if not a:
            continue
        actual = {}
        for f in bodies:
            values = [eval3(f, w) for w in a]
            if all(v is Truth.T for v in values):
                actual[f] = "known"
            elif any(v is Truth.F for v in values):
                actual[f] = "refuted"
            else:
                actual[f] = "open"
        if actual == guess:
            v = _view(a)
            found[v.key()] = v
    return [found[k] for k in sorted(found)]


def gelfond_world_views(p: Program, method: str = VIA_SIGMA, max_modal: int = DEFAULT_MAX_MODAL,
                        first: bool = False, stats: Optional[SearchStats] = None) -> List[WorldView]:
    """World views of a ground Gelfond-dialect program, in canonical order.

    ``via_sigma`` is the solver path.  ``direct`` tests every family of
    consistent worlds (tiny vocabularies only) and ``guess`` enumerates modal
    valuations; both exist to cross-check the translation.
    """
    if p.dialect != GELFOND:
        raise EpispecError("expected a Gelfond-dialect program")
    if method == VIA_SIGMA:
        views = enumerate_world_views(sigma_translate(p), SUPPORTED, max_modal, first, stats)
        return [_view((prime_decode(w) for w in v.worlds), v.partition) for v in views]
    if method == DIRECT:
        return _direct(p)
    if method == GUESS:
        return _guess(p)
    raise ValueError(f"unknown method {method!r}")
