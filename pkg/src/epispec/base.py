"""Classical, stable and supported models of modal-free programs.

All three semantics share one enumerator: chronological backtracking over the
program's propositional variables with unit propagation from rule clauses,
early cardinality pruning and, for stable/supported models, support
propagation.  Complete assignments are then checked against the exact
definition of the requested semantics.

Gelfond-dialect programs are handled by treating each literal as a separate
variable and adding the constraints ``:- x, -x``.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

from .core import (
    CLASSICAL, GELFOND, SEMANTICS, STABLE, SUPPORTED, TWO_VALUED,
    Literal, Program, Rule, eval2, world_key,
)

__all__ = [
    "min_closed_sets", "is_min_closed", "supp_reduct", "gl_reduct",
    "classical_models", "stable_models", "supported_models", "models",
]


def _complement(x):
    return x.complement() if isinstance(x, Literal) else None


def min_closed_sets(h: Iterable[Iterable[Hashable]]) -> List[FrozenSet]:
    """Inclusion-minimal consistent sets meeting every disjunction of *h*.

    Elements are :class:`Literal` objects (consistency means no ``a`` together
    with ``-a``) or plain atom names.  An empty disjunction cannot be met, so
    its presence makes the result empty.
    """
    disjunctions = sorted({frozenset(d) for d in h}, key=lambda d: (len(d), sorted(map(str, d))))
    if any(not d for d in disjunctions):
        return []
    found = set()

    def extend(chosen: frozenset):
        for d in disjunctions:
            if not (d & chosen):
                break
        else:
            found.add(chosen)
            return
        for x in sorted(d, key=str):
            if _complement(x) not in chosen:
                extend(chosen | {x})

    extend(frozenset())
    return sorted((w for w in found if is_min_closed(w, disjunctions)), key=world_key)


def is_min_closed(world: Iterable[Hashable], h: Iterable[Iterable[Hashable]]) -> bool:
    """``world`` in Min(h): consistent, meets every disjunction, and no element is redundant.

    Being closed is upward-monotone, so minimality reduces to every element
    being the sole witness for some disjunction.
    """
    world = frozenset(world)
    if any(_complement(x) in world for x in world):
        return False
    needed = set()
    for d in h:
        hit = world.intersection(d)
        if not hit:
            return False
        if len(hit) == 1:
            needed |= hit
    return needed == world


def _holds(l: Literal, world, dialect: str) -> bool:
    return (l in world) if dialect == GELFOND else (l.atom in world)


def _require_modal_free(p: Program):
    if not p.is_modal_free:
        raise ValueError("program has epistemic premises; take an epistemic reduct first")


def _consts_hold(rule: Rule) -> bool:
    return all(eval2(c, frozenset()) for c in rule.consts)


def body_holds(rule: Rule, world, dialect: str) -> bool:
    """Truth of the non-modal part of a rule body."""
    if not _consts_hold(rule):
        return False
    if not all(_holds(l, world, dialect) for l in rule.pos):
        return False
    if any(_holds(l, world, dialect) for l in rule.neg):
        return False
    if rule.guard is not None:
        count = sum(all(_holds(l, world, dialect) for l in m) for m in rule.guard.members)
        return count >= rule.guard.bound
    return True


def supp_reduct(p: Program, world) -> List[FrozenSet]:
    """Heads of all rules whose bodies *world* satisfies (empty set for a firing constraint)."""
    _require_modal_free(p)
    out = []
    for r in p.rules:
        if body_holds(r, world, p.dialect):
            if p.dialect == GELFOND:
                out.append(frozenset(r.head))
            else:
                out.append(frozenset(l.atom for l in r.head))
    return out


def gl_reduct(p: Program, m) -> Program:
    """Gelfond-Lifschitz reduct: drop rules with a default-negated literal true in *m*, strip the rest."""
    _require_modal_free(p)
    kept = []
    for r in p.rules:
        if any(_holds(l, m, p.dialect) for l in r.neg):
            continue
        kept.append(Rule(r.head, r.pos, (), (), r.guard, r.consts))
    return p.with_rules(kept)


# -- the enumerator ----------------------------------------------------------------

class _Solver:
    def __init__(self, program: Program, semantics: str):
        if semantics not in SEMANTICS:
            raise ValueError(f"unknown semantics {semantics!r}")
        _require_modal_free(program)
        self.semantics = semantics
        self.dialect = program.dialect
        self.keys: List[Literal] = []
        index: Dict[Literal, int] = {}
        for a in program.vocabulary:
            index[Literal(a)] = len(self.keys)
            self.keys.append(Literal(a))
            if self.dialect == GELFOND:
                index[Literal(a, True)] = len(self.keys)
                self.keys.append(Literal(a, True))
        n = len(self.keys)

        def ids(lits):
            out = []
            for l in lits:
                if l.neg and self.dialect == TWO_VALUED:
                    raise ValueError("strong negation in a two-valued program")
                out.append(index[l])
            return tuple(out)

        rules: List[Tuple[tuple, tuple, tuple]] = []
        guards = []
        for r in program.rules:
            if not _consts_hold(r):
                continue
            if r.guard is not None:
                members = tuple(ids(m) for m in r.guard.members)
                guards.append((ids(r.pos), ids(r.neg), r.guard.bound, members))
            else:
                rules.append((ids(r.head), ids(r.pos), ids(r.neg)))
        if self.dialect == GELFOND:
            for a in program.vocabulary:
                rules.append(((), (index[Literal(a)], index[Literal(a, True)]), ()))
        self.n = n
        self.rules = rules
        self.guards = guards
        self.occ: List[List[int]] = [[] for _ in range(n)]
        self.supports: List[List[int]] = [[] for _ in range(n)]
        self.gocc: List[List[int]] = [[] for _ in range(n)]
        for ri, (head, pos, neg) in enumerate(rules):
            for v in set(head + pos + neg):
                self.occ[v].append(ri)
            for h in set(head):
                self.supports[h].append(ri)
        for gi, (pos, neg, _bound, members) in enumerate(guards):
            vs = set(pos + neg)
            for m in members:
                vs.update(m)
            for v in vs:
                self.gocc[v].append(gi)
        self.use_support = semantics in (STABLE, SUPPORTED)
        weight = [len(self.occ[v]) + len(self.gocc[v]) for v in range(n)]
        self.order = sorted(range(n), key=lambda v: (-weight[v], v))
        self.val: List[Optional[bool]] = [None] * n
        self.trail: List[int] = []
        self.qhead = 0
        self.found: List[FrozenSet] = []
        self.leaves = 0

    # assignment and propagation

    def _assign(self, v: int, value: bool) -> bool:
        cur = self.val[v]
        if cur is None:
            self.val[v] = value
            self.trail.append(v)
            return True
        return cur == value

    def _undo(self, mark: int):
        val, trail = self.val, self.trail
        while len(trail) > mark:
            val[trail.pop()] = None
        self.qhead = mark

    def _check_rule(self, ri: int) -> bool:
        head, pos, neg = self.rules[ri]
        val = self.val
        free = None
        count = 0
        for b in pos:
            x = val[b]
            if x is False:
                return True
            if x is None:
                count += 1
                free = (b, False)
        for c in neg:
            x = val[c]
            if x is True:
                return True
            if x is None:
                count += 1
                free = (c, True)
        for h in head:
            x = val[h]
            if x is True:
                return True
            if x is None:
                count += 1
                free = (h, True)
        if count == 0:
            return False
        if count == 1:
            return self._assign(*free)
        return True

    def _check_support(self, a: int) -> bool:
        val = self.val
        state = val[a]
        if state is False:
            return True
        viable = []
        for ri in self.supports[a]:
            head, pos, neg = self.rules[ri]
            if any(val[b] is False for b in pos) or any(val[c] is True for c in neg):
                continue
            if any(h != a and val[h] is True for h in head):
                continue
            viable.append(ri)
            if len(viable) > 1:
                return True
        if not viable:
            return self._assign(a, False)
        if state is True:
            head, pos, neg = self.rules[viable[0]]
            for b in pos:
                if not self._assign(b, True):
                    return False
            for c in neg:
                if not self._assign(c, False):
                    return False
            for h in head:
                if h != a and not self._assign(h, False):
                    return False
        return True

    def _check_guard(self, gi: int) -> bool:
        pos, neg, bound, members = self.guards[gi]
        val = self.val
        body_free = []
        for b in pos:
            if val[b] is False:
                return True
            if val[b] is None:
                body_free.append((b, False))
        for c in neg:
            if val[c] is True:
                return True
            if val[c] is None:
                body_free.append((c, True))
        true_count = 0
        open_members = []
        for m in members:
            states = [val[v] for v in m]
            if False in states:
                continue
            if None in states:
                open_members.append(m)
            else:
                true_count += 1
        if true_count >= bound:
            if not body_free:
                return False
            if len(body_free) == 1:
                v, value = body_free[0]
                return self._assign(v, value)
            return True
        if not body_free and true_count == bound - 1:
            for m in open_members:
                unknown = [v for v in m if val[v] is None]
                if len(unknown) == 1:
                    if not self._assign(unknown[0], False):
                        return False
        return True

    def _propagate(self) -> bool:
        trail = self.trail
        while self.qhead < len(trail):
            v = trail[self.qhead]
            self.qhead += 1
            for ri in self.occ[v]:
                if not self._check_rule(ri):
                    return False
            for gi in self.gocc[v]:
                if not self._check_guard(gi):
                    return False
            if self.use_support:
                for ri in self.occ[v]:
                    for h in self.rules[ri][0]:
                        if not self._check_support(h):
                            return False
                if self.val[v] is True and not self._check_support(v):
                    return False
        return True

    def _initial(self) -> bool:
        for ri in range(len(self.rules)):
            if not self._check_rule(ri):
                return False
        for gi in range(len(self.guards)):
            if not self._check_guard(gi):
                return False
        if self.use_support:
            for v in range(self.n):
                if not self._check_support(v):
                    return False
        return self._propagate()

    # exact checks on complete assignments

    def _body_true(self, pos, neg, m) -> bool:
        return all(b in m for b in pos) and not any(c in m for c in neg)

    def _is_model(self, m) -> bool:
        for head, pos, neg in self.rules:
            if self._body_true(pos, neg, m) and not any(h in m for h in head):
                return False
        for pos, neg, bound, members in self.guards:
            if self._body_true(pos, neg, m):
                if sum(all(v in m for v in mem) for mem in members) >= bound:
                    return False
        return True

    def _is_supported(self, m) -> bool:
        needed = set()
        for head, pos, neg in self.rules:
            if self._body_true(pos, neg, m):
                hit = [h for h in head if h in m]
                if len(hit) == 1:
                    needed.add(hit[0])
        return needed == m

    def _is_minimal(self, m) -> bool:
        """No proper subset of *m* is a model of the Gelfond-Lifschitz reduct wrt *m*."""
        horn = []
        disjunctive = []
        for head, pos, neg in self.rules:
            if not head or any(c in m for c in neg) or not all(b in m for b in pos):
                continue
            hm = tuple(h for h in head if h in m)
            if len(hm) == 1:
                horn.append((hm[0], pos))
            else:
                disjunctive.append((hm, pos))
        if not disjunctive:
            return _least_model(horn) == m
        clauses = [tuple(-(b + 1) for b in pos) + ((h + 1),) for h, pos in horn]
        clauses += [tuple(-(b + 1) for b in pos) + tuple(h + 1 for h in hm) for hm, pos in disjunctive]
        clauses.append(tuple(-(a + 1) for a in m))
        # atoms outside m stay false in any candidate subset
        return not _satisfiable(clauses)

    def _leaf(self):
        self.leaves += 1
        m = frozenset(v for v in range(self.n) if self.val[v])
        if not self._is_model(m):
            return
        if self.semantics == SUPPORTED and not self._is_supported(m):
            return
        if self.semantics == STABLE and not self._is_minimal(m):
            return
        if self.dialect == GELFOND:
            self.found.append(frozenset(self.keys[v] for v in m))
        else:
            self.found.append(frozenset(self.keys[v].atom for v in m))

    def _search(self):
        if not self._propagate():
            return
        for v in self.order:
            if self.val[v] is None:
                break
        else:
            self._leaf()
            return
        mark = len(self.trail)
        for value in (True, False):
            self._assign(v, value)
            self._search()
            self._undo(mark)

    def run(self) -> FrozenSet[FrozenSet]:
        if self._initial():
            self._search()
        return frozenset(self.found)


def _least_model(horn: Sequence[Tuple[int, Tuple[int, ...]]]) -> FrozenSet[int]:
    model = set()
    changed = True
    while changed:
        changed = False
        for h, pos in horn:
            if h not in model and all(b in model for b in pos):
                model.add(h)
                changed = True
    return frozenset(model)


def _satisfiable(clauses: List[Tuple[int, ...]]) -> bool:
    """Tiny DPLL over nonzero-int literals; variables absent from all clauses are irrelevant."""

    def solve(clauses, assignment):
        while True:
            unit = None
            remaining = []
            for c in clauses:
                if any(l in assignment for l in c):
                    continue
                rest = [l for l in c if -l not in assignment]
                if not rest:
                    return False
                if len(rest) == 1:
                    unit = rest[0]
                remaining.append(rest)
            if unit is None:
                break
            assignment = assignment | {unit}
            clauses = remaining
        if not remaining:
            return True
        x = remaining[0][0]
        return solve(remaining, assignment | {x}) or solve(remaining, assignment | {-x})

    return solve(clauses, frozenset())


def models(p: Program, semantics: str) -> FrozenSet[FrozenSet]:
    """All models of *p* under ``classical``, ``stable`` or ``supported`` semantics."""
    return _Solver(p, semantics).run()


def classical_models(p: Program) -> FrozenSet[FrozenSet]:
    return models(p, CLASSICAL)


def stable_models(p: Program) -> FrozenSet[FrozenSet]:
    return models(p, STABLE)


def supported_models(p: Program) -> FrozenSet[FrozenSet]:
    return models(p, SUPPORTED)
