"""Quantified Boolean formulas and the two hardness reductions built from them."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from ..core import TWO_VALUED, Atom, EpispecError, Literal, ModalLiteral, Neg, Program, Rule
from ..gelfond import prime

EXISTS = "exists"
FORALL = "forall"
DNF = "dnf"
CNF = "cnf"

MAX_QBF_VARS = 12

Term = Tuple[str, bool]  # (variable, positive)


@dataclass(frozen=True)
class QbfInstance:
    prefix: Tuple[Tuple[str, Tuple[str, ...]], ...]
    matrix: Tuple[Tuple[Term, ...], ...]
    form: str = DNF

    def __post_init__(self):
        if len(self.prefix) not in (2, 3):
            raise ValueError("expected two or three quantifier blocks")
        if self.form not in (DNF, CNF):
            raise ValueError(f"unknown matrix form {self.form!r}")
        declared = set()
        for q, block in self.prefix:
            if q not in (EXISTS, FORALL):
                raise ValueError(f"unknown quantifier {q!r}")
            if declared & set(block):
                raise ValueError("variable bound twice")
            declared |= set(block)
        for part in self.matrix:
            for v, _ in part:
                if v not in declared:
                    raise ValueError(f"free variable {v} in matrix")

    @property
    def variables(self) -> List[str]:
        return [v for _, block in self.prefix for v in block]

    def quantifiers(self) -> Tuple[str, ...]:
        return tuple(q for q, _ in self.prefix)

    def to_json(self) -> dict:
        return {
            "prefix": [[q, list(b)] for q, b in self.prefix],
            "form": self.form,
            "matrix": [[("" if pos else "-") + v for v, pos in part] for part in self.matrix],
        }


def _matrix_value(q: QbfInstance, values: Dict[str, bool]) -> bool:
    if q.form == DNF:
        return any(all(values[v] == pos for v, pos in term) for term in q.matrix)
    return all(any(values[v] == pos for v, pos in clause) for clause in q.matrix)


def qbf_eval(q: QbfInstance) -> bool:
    """Truth value by expanding every quantifier."""
    if len(q.variables) > MAX_QBF_VARS:
        raise EpispecError(f"QBF evaluation is capped at {MAX_QBF_VARS} variables")
    order = [(quant, v) for quant, block in q.prefix for v in block]

    def expand(i: int, values: Dict[str, bool]) -> bool:
        if i == len(order):
            return _matrix_value(q, values)
        quant, v = order[i]
        branches = (expand(i + 1, {**values, v: b}) for b in (False, True))
        return any(branches) if quant == EXISTS else all(branches)

    return expand(0, {})


# -- generators ------------------------------------------------------------------

_RESERVED = {"w", "f", "g"}


def _check_names(q: QbfInstance):
    for v in q.variables:
        if v in _RESERVED or "'" in v or not v[:1].islower():
            raise ValueError(f"QBF variable name {v!r} is reserved or not a plain atom")


def _known(atom: str) -> ModalLiteral:
    return ModalLiteral(Atom(atom))


def _guessed_block(block: Sequence[str]) -> List[Rule]:
    """``v :- K v``, ``v' :- K v'`` and exactly one of each pair."""
    rules = []
    for v in block:
        rules.append(Rule(head=(Literal(v),), premise=(_known(v),)))
        rules.append(Rule(head=(Literal(prime(v)),), premise=(_known(prime(v)),)))
    for v in block:
        rules.append(Rule(pos=(Literal(v), Literal(prime(v)))))
        rules.append(Rule(neg=(Literal(v), Literal(prime(v)))))
    return rules


def gen_sigma2_program(q: QbfInstance) -> Program:
    """Non-disjunctive program with a world view iff the exists-forall DNF instance is true."""
    if q.quantifiers() != (EXISTS, FORALL) or q.form != DNF:
        raise ValueError("expected an exists-forall prefix with a DNF matrix")
    _check_names(q)
    ys, zs = q.prefix[0][1], q.prefix[1][1]
    rules = _guessed_block(ys)
    for z in zs:
        rules.append(Rule(head=(Literal(z),), neg=(Literal(prime(z)),)))
        rules.append(Rule(head=(Literal(prime(z)),), neg=(Literal(z),)))
    for term in q.matrix:
        body = tuple(Literal(v) if pos else Literal(prime(v)) for v, pos in term)
        rules.append(Rule(head=(Literal("w"),), pos=body))
    rules.append(Rule(premise=(ModalLiteral(Atom("w"), default_neg=True),)))
    vocab = [a for v in ys + zs for a in (v, prime(v))] + ["w"]
    return Program(tuple(rules), TWO_VALUED, tuple(vocab))


def gen_sigma3_program(q: QbfInstance) -> Program:
    """Disjunctive program with a world view iff the exists-forall-exists 3-CNF instance is true."""
    if q.quantifiers() != (EXISTS, FORALL, EXISTS) or q.form != CNF:
        raise ValueError("expected an exists-forall-exists prefix with a CNF matrix")
    if any(len(c) != 3 for c in q.matrix):
        raise ValueError("matrix must be 3-CNF")
    _check_names(q)
    xs, ys, zs = (block for _, block in q.prefix)
    w, f, g = Literal("w"), Literal("f"), Literal("g")
    rules = _guessed_block(xs)
    rules.append(Rule(head=(f,), neg=(g,)))
    rules.append(Rule(head=(g,), neg=(f,)))
    for v in ys + zs:
        rules.append(Rule(head=(Literal(v), Literal(prime(v))), pos=(f,)))
    for z in zs:
        rules.append(Rule(head=(Literal(z),), pos=(f, w)))
        rules.append(Rule(head=(Literal(prime(z)),), pos=(f, w)))
    for clause in q.matrix:
        # the body holds exactly when the clause is falsified
        body = tuple(Literal(prime(v)) if pos else Literal(v) for v, pos in clause)
        rules.append(Rule(head=(w,), pos=(f,) + body))
    rules.append(Rule(head=(w,), pos=(f,), neg=(w,)))
    rules.append(Rule(premise=(ModalLiteral(Neg(Atom("w")), default_neg=True),)))
    vocab = [a for v in xs + ys + zs for a in (v, prime(v))] + ["f", "g", "w"]
    return Program(tuple(rules), TWO_VALUED, tuple(vocab))


# -- random instances ---------------------------------------------------------------

def random_sigma2_instance(rng: random.Random, n_exists: int = 3, n_forall: int = 3,
                           n_terms: int = None, term_size: int = 3) -> QbfInstance:
    ys = tuple(f"y{i}" for i in range(1, n_exists + 1))
    zs = tuple(f"z{i}" for i in range(1, n_forall + 1))
    variables = ys + zs
    # exactly term_size literals per term and 3..9 terms keep true and false instances near even
    n_terms = n_terms if n_terms is not None else rng.randint(3, 9)
    terms = []
    for _ in range(n_terms):
        chosen = rng.sample(variables, min(term_size, len(variables)))
        terms.append(tuple(sorted((v, rng.random() < 0.5) for v in chosen)))
    return QbfInstance(((EXISTS, ys), (FORALL, zs)), tuple(terms), DNF)


def random_sigma3_instance(rng: random.Random, n: int = 2, n_clauses: int = None) -> QbfInstance:
    xs = tuple(f"x{i}" for i in range(1, n + 1))
    ys = tuple(f"y{i}" for i in range(1, n + 1))
    zs = tuple(f"z{i}" for i in range(1, n + 1))
    variables = xs + ys + zs
    n_clauses = n_clauses if n_clauses is not None else rng.randint(7, 13)
    clauses = []
    for _ in range(n_clauses):
        chosen = rng.sample(variables, 3)
        clauses.append(tuple(sorted((v, rng.random() < 0.5) for v in chosen)))
    return QbfInstance(((EXISTS, xs), (FORALL, ys), (EXISTS, zs)), tuple(clauses), CNF)
