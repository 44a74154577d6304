"""Instantiate variable rules over the constants the program can derive.

Grounding is join-based: a fixpoint over positive rule bodies collects every
atom that could possibly be derived (negation and modal premises ignored),
then each rule is instantiated for every way its positive body matches that
set.  Variables not bound by a positive literal must be covered by a
``#domain p(X)`` directive; the domain atom is then added to the rule body.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Dict, Iterator, List, Sequence, Set, Tuple

from ..core import Atom, Formula, Guard, Literal, ModalLiteral, Neg, Program, Rule, intern_atom
from .syntax import (
    Comparison, SAtom, SLiteral, SourceProgram, SourceRule, UnsafeVariableError,
    check_safety, is_variable,
)

Key = Tuple[bool, str, Tuple[str, ...]]  # (strong negation, predicate, args)
Subst = Dict[str, str]


def _key(l: SLiteral, s: Subst) -> Key:
    return (l.neg, l.atom.pred, tuple(s.get(t, t) for t in l.atom.args))


def _ground_atom(a: SAtom, s: Subst) -> str:
    args = tuple(s.get(t, t) for t in a.args)
    return intern_atom(str(SAtom(a.pred, args)))


def _ground_literal(l: SLiteral, s: Subst) -> Literal:
    return Literal(_ground_atom(l.atom, s), l.neg)


def _ground_formula(f: Formula, s: Subst) -> Formula:
    if isinstance(f, Atom):
        return Atom(_ground_atom(f.name, s))
    if isinstance(f, Neg):
        return Neg(_ground_formula(f.arg, s))
    if hasattr(f, "left"):
        return type(f)(_ground_formula(f.left, s), _ground_formula(f.right, s))
    return f


class _Index:
    def __init__(self):
        self.by_sig: Dict[Tuple[bool, str, int], Set[Tuple[str, ...]]] = defaultdict(set)

    def add(self, key: Key) -> bool:
        neg, pred, args = key
        bucket = self.by_sig[(neg, pred, len(args))]
        if args in bucket:
            return False
        bucket.add(args)
        return True

    def match(self, l: SLiteral, s: Subst) -> Iterator[Subst]:
        pattern = [s.get(t, t) for t in l.atom.args]
        for args in sorted(self.by_sig.get((l.neg, l.atom.pred, len(pattern)), ())):
            new = dict(s)
            ok = True
            for p, a in zip(pattern, args):
                if is_variable(p):
                    bound = new.get(p)
                    if bound is None:
                        new[p] = a
                    elif bound != a:
                        ok = False
                        break
                elif p != a:
                    ok = False
                    break
            if ok:
                yield new


def _join(index: _Index, lits: Sequence[SLiteral], s: Subst) -> Iterator[Subst]:
    if not lits:
        yield s
        return
    if not lits[0].atom.variables():
        # literals that are ground in the source never restrict instantiation
        yield from _join(index, lits[1:], s)
        return
    for s2 in index.match(lits[0], s):
        yield from _join(index, lits[1:], s2)


def _compare_ok(cmps: Sequence[Comparison], s: Subst) -> bool:
    for c in cmps:
        left, right = s.get(c.left, c.left), s.get(c.right, c.right)
        if (left == right) != (c.op == "="):
            return False
    return True


class _Prepared:
    """A source rule with constants substituted and domain atoms made explicit."""

    def __init__(self, rule: SourceRule, domains: Dict[str, SAtom], consts: Dict[str, str]):
        c = lambda l: SLiteral(SAtom(l.atom.pred, tuple(consts.get(t, t) for t in l.atom.args)), l.neg)
        self.rule = rule
        self.head = tuple(map(c, rule.head))
        self.neg = tuple(map(c, rule.neg))
        pos = list(map(c, rule.pos))
        bound = set()
        for l in pos:
            bound |= l.atom.variables()
        for v in sorted(rule.global_variables() - bound):
            pos.append(SLiteral(domains[v]))
            bound |= domains[v].variables()
        self.pos = tuple(pos)
        self.compare = tuple(Comparison(consts.get(x.left, x.left), x.op, consts.get(x.right, x.right))
                             for x in rule.compare)
        self.premise = tuple(ModalLiteral(_subst_consts(m.body, consts), m.default_neg, m.strong_neg)
                             for m in rule.premise)
        self.guard = None
        if rule.guard is not None:
            g = rule.guard
            b = consts.get(g.bound, g.bound) if isinstance(g.bound, str) else g.bound
            try:
                bound_value = int(b)
            except ValueError:
                raise UnsafeVariableError(f"cardinality bound {g.bound!r} is not an integer constant")
            elements = []
            outer = bound | rule.global_variables()
            for elem, conds in g.elements:
                conds = list(map(c, conds))
                local = set()
                for x in conds:
                    local |= x.atom.variables()
                for v in sorted(c(elem).atom.variables() - outer - local):
                    conds.append(SLiteral(domains[v]))
                    local |= domains[v].variables()
                elements.append((c(elem), tuple(conds)))
            self.guard = (bound_value, tuple(elements))


def _subst_consts(f: Formula, consts: Dict[str, str]) -> Formula:
    if isinstance(f, Atom):
        a = f.name
        return Atom(SAtom(a.pred, tuple(consts.get(t, t) for t in a.args)))
    if isinstance(f, Neg):
        return Neg(_subst_consts(f.arg, consts))
    if hasattr(f, "left"):
        return type(f)(_subst_consts(f.left, consts), _subst_consts(f.right, consts))
    return f


def ground_program(src: SourceProgram) -> Program:
    """Ground *src*: one rule per substitution matching the positive body, duplicates dropped."""
    check_safety(src)
    consts = dict(src.consts)
    domains = src.domain_map()
    prepared = [_Prepared(r, domains, consts) for r in src.statements]

    index = _Index()
    changed = True
    while changed:
        changed = False
        for pr in prepared:
            if not pr.head:
                continue
            for s in _join(index, pr.pos, {}):
                if not _compare_ok(pr.compare, s):
                    continue
                for h in pr.head:
                    if index.add(_key(h, s)):
                        changed = True

    rules: List[Rule] = []
    seen = set()
    for pr in prepared:
        for s in _join(index, pr.pos, {}):
            if not _compare_ok(pr.compare, s):
                continue
            guard = None
            if pr.guard is not None:
                bound, elements = pr.guard
                members = []
                for elem, conds in elements:
                    for s2 in _join(index, conds, s):
                        member = (_ground_literal(elem, s2),) + tuple(_ground_literal(x, s2) for x in conds)
                        if member not in members:
                            members.append(member)
                guard = Guard(bound, tuple(members))
            rule = Rule(
                head=tuple(_ground_literal(l, s) for l in pr.head),
                pos=tuple(_ground_literal(l, s) for l in pr.pos),
                neg=tuple(_ground_literal(l, s) for l in pr.neg),
                premise=tuple(ModalLiteral(_ground_formula(m.body, s), m.default_neg, m.strong_neg)
                              for m in pr.premise),
                guard=guard,
                consts=pr.rule.consts,
            )
            if rule not in seen:
                seen.add(rule)
                rules.append(rule)

    vocab = [_ground_atom(_subst_consts(Atom(a), consts).name, {}) for a in src.vocab]
    return Program(tuple(rules), src.dialect, tuple(vocab))
