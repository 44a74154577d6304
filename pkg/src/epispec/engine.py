"""World views of two-valued epistemic programs.

The search guesses which modal atoms are known (a partition of the modal
atoms into known/unknown), solves the program with premises resolved by the
guess, and keeps the guess when the resulting model set confirms it.  Every
candidate is re-verified directly as a fixpoint ``A = Sem(P^A)`` before it
is reported.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from . import base
from .core import (
    GELFOND, SEMANTICS, TWO_VALUED, Bot, EpispecError, Formula, ModalLiteral, Neg, Program,
    ResourceLimitError, Rule, Top, Truth, eval2, eval3, format_formula, sat_modal, sort_worlds,
    structure_key,
)

log = logging.getLogger(__name__)

RULEWISE = "rulewise"
SUBSTITUTION = "substitution"
CAUTIOUS = "cautious"
BRAVE = "brave"

DEFAULT_MAX_MODAL = 20


@dataclass(frozen=True)
class Partition:
    """Modal atoms guessed known (``phi``) and not known (``psi``)."""

    phi: FrozenSet[Formula]
    psi: FrozenSet[Formula]

    def __post_init__(self):
        if self.phi & self.psi:
            raise ValueError("partition blocks overlap")


@dataclass(frozen=True)
class WorldView:
    worlds: Tuple
    semantics: str
    partition: Optional[Partition] = None
    verified: bool = False
    dialect: str = TWO_VALUED

    def __post_init__(self):
        if not self.worlds:
            raise ValueError("a world view has at least one world")
        object.__setattr__(self, "worlds", tuple(sort_worlds(set(self.worlds))))

    @property
    def structure(self) -> FrozenSet:
        return frozenset(self.worlds)

    def key(self) -> tuple:
        return structure_key(self.worlds)


@dataclass
class SearchStats:
    partitions_checked: int = 0
    base_calls: int = 0
    ms: int = 0
    # partitions that met the three partition conditions but failed the fixpoint check
    fixpoint_rejections: int = 0
    split: bool = False

    def as_dict(self) -> Dict[str, int]:
        return {"partitions_checked": self.partitions_checked, "base_calls": self.base_calls,
                "ms": self.ms}


def _check_semantics(sem: str):
    if sem not in SEMANTICS:
        raise ValueError(f"unknown semantics {sem!r}")


# -- reducts ------------------------------------------------------------------------

def epistemic_reduct(p: Program, a: Iterable, mode: str = RULEWISE) -> Program:
    """Remove the modal premises of *p* according to the structure *a*.

    ``rulewise`` drops rules whose premise fails in *a* and strips the premise
    from the rest.  ``substitution`` keeps every rule and replaces each modal
    literal by the constant it evaluates to.
    """
    worlds = list(a)
    if not worlds:
        raise ValueError("possible-world structure must be nonempty")
    rules = []
    if mode == RULEWISE:
        for r in p.rules:
            if all(sat_modal(worlds, m, p.dialect) for m in r.premise):
                rules.append(r.without_premise())
    elif mode == SUBSTITUTION:
        for r in p.rules:
            consts = list(r.consts)
            for m in r.premise:
                known = sat_modal(worlds, ModalLiteral(m.body, False, m.strong_neg), p.dialect)
                value = Top() if known else Bot()
                consts.append(Neg(value) if m.default_neg else value)
            rules.append(Rule(r.head, r.pos, r.neg, (), r.guard, tuple(consts)))
    else:
        raise ValueError(f"unknown reduct mode {mode!r}")
    return p.with_rules(rules)


def _blocked(r: Rule, phi: FrozenSet, psi: FrozenSet) -> bool:
    for m in r.premise:
        if m.strong_neg:
            raise ValueError("strong negation of K belongs to the Gelfond dialect")
        if m.default_neg and m.body in phi:
            return True
        if not m.default_neg and m.body in psi:
            return True
    return False


def blocked_program(p: Program, part: Partition) -> Program:
    """Drop rules blocked by the guess, strip the premises of the others."""
    return p.with_rules(r.without_premise() for r in p.rules if not _blocked(r, part.phi, part.psi))


# -- the partition search ---------------------------------------------------------------

class _ModelCache:
    """Base-semantics results keyed by the rule set actually solved."""

    def __init__(self, p: Program, sem: str, stats: SearchStats):
        self.p = p
        self.sem = sem
        self.stats = stats
        self.memo: Dict[tuple, FrozenSet] = {}

    def models(self, q: Program) -> FrozenSet:
        k = (frozenset(q.rules), q.vocabulary)
        hit = self.memo.get(k)
        if hit is None:
            self.stats.base_calls += 1
            hit = base.models(q, self.sem)
            self.memo[k] = hit
        return hit


def _conditions_hold(s: FrozenSet, part: Partition) -> bool:
    if not s:
        return False
    if not all(eval2(f, w) for f in part.phi for w in s):
        return False
    return all(any(not eval2(f, w) for w in s) for f in part.psi)


def _check(p: Program, part: Partition, sem: str, cache: _ModelCache) -> Optional[WorldView]:
    s = cache.models(blocked_program(p, part))
    if not _conditions_hold(s, part):
        return None
    if cache.models(epistemic_reduct(p, s, RULEWISE)) != s:
        cache.stats.fixpoint_rejections += 1
        log.warning("partition %s passes the partition conditions but is not a fixpoint",
                    _describe(part, p.dialect))
        return None
    return WorldView(tuple(s), sem, part, verified=True)


def check_partition(p: Program, part: Partition, sem: str) -> Optional[WorldView]:
    """The verified world view generated by *part*, if there is one."""
    _check_semantics(sem)
    return _check(p, part, sem, _ModelCache(p, sem, SearchStats()))


def _describe(part: Partition, dialect: str) -> str:
    known = sorted(format_formula(f, dialect) for f in part.phi)
    unknown = sorted(format_formula(f, dialect) for f in part.psi)
    return "known={%s} unknown={%s}" % (", ".join(known), ", ".join(unknown))


def _partitions(atoms: Sequence[Formula], forced_known: FrozenSet) -> Iterable[Partition]:
    free = [f for f in atoms if f not in forced_known]
    # lexicographic over the canonical atom order, "known" before "unknown"
    for bits in product((True, False), repeat=len(free)):
        phi = set(forced_known)
        psi = set()
        for f, known in zip(free, bits):
            (phi if known else psi).add(f)
        yield Partition(frozenset(phi), frozenset(psi))


def _split(p: Program):
    """Split off the premise-free part the modal atoms depend on.

    Atoms defined by premise rules, and everything depending on them, form
    the top; the rest is a splitting set.  Returns ``(bottom, robust)`` or
    ``None`` when a modal atom mentions a top atom.  ``robust`` tells whether
    the top rules keep a model under any guess and any bottom model, which
    pins the guess down completely.
    """
    top = set()
    for r in p.rules:
        if r.premise:
            top.update(l.atom for l in r.head)
    changed = True
    while changed:
        changed = False
        for r in p.rules:
            heads = {l.atom for l in r.head}
            if heads <= top:
                continue
            if heads & top or r.atoms() & top:
                top |= heads
                changed = True
    for f in p.modal_atoms():
        if f.atoms() & top:
            return None
    bottom, rest = [], []
    for r in p.rules:
        if r.premise or r.atoms() & top:
            rest.append(r)
        else:
            bottom.append(r)
    inside = tuple(a for a in p.vocabulary if a not in top)
    robust = all(r.head and r.guard is None and not any(l.atom in top for l in r.neg)
                 for r in rest)
    return Program(tuple(bottom), p.dialect, inside), robust


def enumerate_world_views(p: Program, sem: str, max_modal: int = DEFAULT_MAX_MODAL,
                          first: bool = False, stats: Optional[SearchStats] = None,
                          split: bool = True) -> List[WorldView]:
    """All verified world views of *p* under *sem*, in canonical order.

    With ``first`` the search stops at the first view found.  ``split``
    enables the bottom-part shortcut: models of the premise-free part the
    modal atoms depend on bound which guesses can possibly succeed.
    """
    _check_semantics(sem)
    if p.dialect != TWO_VALUED:
        raise EpispecError("world-view enumeration expects a two-valued program; "
                           "translate Gelfond programs first")
    stats = stats if stats is not None else SearchStats()
    started = time.perf_counter()
    atoms = p.modal_atoms()
    cache = _ModelCache(p, sem, stats)
    candidates: Optional[Iterable[Partition]] = None
    forced: FrozenSet = frozenset()

    if split and atoms:
        parts = _split(p)
        if parts is not None:
            bottom, robust = parts
            stats.split = True
            bottom_models = cache.models(bottom)
            if not bottom_models:
                candidates = []
            else:
                forced = frozenset(f for f in atoms if all(eval2(f, w) for w in bottom_models))
                if robust:
                    candidates = [Partition(forced, frozenset(atoms) - forced)]

    if candidates is None:
        free = len(atoms) - len(forced)
        if free > max_modal:
            raise ResourceLimitError(
                f"{free} modal atoms to guess exceeds the cap of {max_modal} (2^{free} partitions)")
        candidates = _partitions(atoms, forced)

    found: Dict[tuple, WorldView] = {}
    for part in candidates:
        stats.partitions_checked += 1
        view = _check(p, part, sem, cache)
        if view is not None and view.key() not in found:
            found[view.key()] = view
            if first:
                break
    stats.ms = int((time.perf_counter() - started) * 1000)
    return [found[k] for k in sorted(found)]


def is_world_view(p: Program, a: Iterable, sem: str) -> bool:
    """Direct fixpoint test ``A = Sem(P^A)`` for a candidate structure."""
    _check_semantics(sem)
    a = frozenset(frozenset(w) for w in a)
    return bool(a) and base.models(epistemic_reduct(p, a, RULEWISE), sem) == a


# -- queries --------------------------------------------------------------------

def _true_in(f: Formula, w, dialect: str) -> bool:
    if dialect == GELFOND:
        return eval3(f, w) is Truth.T
    return eval2(f, w)


def holds_in_view(view: WorldView, query: Union[ModalLiteral, Formula], mode: str = CAUTIOUS) -> bool:
    """Cautious (every world) or brave (some world) truth of a formula; modal queries use K."""
    if isinstance(query, ModalLiteral):
        return sat_modal(view.worlds, query, view.dialect)
    if mode == CAUTIOUS:
        return all(_true_in(query, w, view.dialect) for w in view.worlds)
    if mode == BRAVE:
        return any(_true_in(query, w, view.dialect) for w in view.worlds)
    raise ValueError(f"unknown query mode {mode!r}")


def modal_profile(p: Program, view: WorldView) -> Tuple[List[str], List[str]]:
    """Texts of the program's modal atoms that are known / not known in *view*."""
    known, unknown = [], []
    for f in p.modal_atoms():
        text = format_formula(f, p.dialect)
        if sat_modal(view.worlds, ModalLiteral(f), view.dialect):
            known.append(text)
        else:
            unknown.append(text)
    return known, unknown
