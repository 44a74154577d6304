"""Domain types shared by every module, and formula/modal evaluation.

Ground atoms are plain interned strings such as ``hc(a,b)``.  A two-valued
interpretation is a ``frozenset`` of atom names; a three-valued world is a
``frozenset`` of :class:`Literal` objects.  Possible-world structures are
``frozenset``s of worlds.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from enum import IntEnum
from typing import FrozenSet, Iterable, Optional, Tuple, Union

TWO_VALUED = "lk"
GELFOND = "gelfond"
DIALECTS = (TWO_VALUED, GELFOND)

CLASSICAL = "classical"
STABLE = "stable"
SUPPORTED = "supported"
SEMANTICS = (CLASSICAL, STABLE, SUPPORTED)

PRIME = "'"


class EpispecError(Exception):
    """Base class for all errors raised by this package."""


class ResourceLimitError(EpispecError):
    """A configured size cap was exceeded."""


def intern_atom(name: str) -> str:
    if not name:
        raise ValueError("atom name must be nonempty")
    return sys.intern(name)


# -- formulas ---------------------------------------------------------------

class Formula:
    """Modal-free propositional formula (immutable tree)."""

    __slots__ = ()

    def atoms(self) -> FrozenSet:
        out = set()
        stack = [self]
        while stack:
            f = stack.pop()
            if isinstance(f, Atom):
                out.add(f.name)
            elif isinstance(f, Neg):
                stack.append(f.arg)
            elif isinstance(f, _Binary):
                stack.append(f.left)
                stack.append(f.right)
        return frozenset(out)

    def depth(self) -> int:
        if isinstance(self, Neg):
            return 1 + self.arg.depth()
        if isinstance(self, _Binary):
            return 1 + max(self.left.depth(), self.right.depth())
        return 0


@dataclass(frozen=True)
class Bot(Formula):
    def __str__(self):
        return "#false"


@dataclass(frozen=True)
class Top(Formula):
    """Constant truth; evaluates exactly like the negation of :class:`Bot`."""

    def __str__(self):
        return "#true"


@dataclass(frozen=True)
class Atom(Formula):
    # a ground atom name, or a source-level atom before grounding
    name: object

    def __str__(self):
        return str(self.name)


@dataclass(frozen=True)
class Neg(Formula):
    """Negation.  Two-valued: shorthand for ``arg -> #false``.  Gelfond: Kleene negation."""

    arg: Formula

    def __str__(self):
        return f"-{self.arg}"


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula
    op = "?"

    def __str__(self):
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class And(_Binary):
    op = "&"


@dataclass(frozen=True)
class Or(_Binary):
    op = "|"


@dataclass(frozen=True)
class Implies(_Binary):
    op = "->"


def conj(parts: Iterable[Formula]) -> Formula:
    parts = list(parts)
    if not parts:
        return Top()
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def format_formula(f: Formula, dialect: str = GELFOND) -> str:
    """Canonical, fully parenthesized text of *f* in the given dialect."""
    if isinstance(f, Neg):
        sign = "-" if dialect == GELFOND else "~"
        return sign + format_formula(f.arg, dialect)
    if isinstance(f, _Binary):
        return "({} {} {})".format(format_formula(f.left, dialect), f.op,
                                   format_formula(f.right, dialect))
    return str(f)


# -- literals, modal literals, rules ------------------------------------------

@dataclass(frozen=True, order=True)
class Literal:
    atom: str
    neg: bool = False  # strong negation; only meaningful in the Gelfond dialect

    def __str__(self):
        return ("-" if self.neg else "") + self.atom

    def complement(self) -> "Literal":
        return Literal(self.atom, not self.neg)


def lit(text: str) -> Literal:
    """``lit("-a")`` -> strong negation of ``a``; convenience for tests and generators."""
    if text.startswith("-"):
        return Literal(intern_atom(text[1:]), True)
    return Literal(intern_atom(text))


@dataclass(frozen=True)
class ModalLiteral:
    body: Formula
    default_neg: bool = False
    strong_neg: bool = False  # Gelfond dialect only

    def modal_atom(self) -> Formula:
        """The formula under ``K``; modal atoms are identified by it."""
        return self.body

    def format(self, dialect: str = GELFOND) -> str:
        inner = format_formula(self.body, dialect)
        if not isinstance(self.body, (Atom, Top, Bot)) and not inner.startswith("("):
            inner = f"({inner})"
        text = ("-" if self.strong_neg else "") + "K " + inner
        return ("not " if self.default_neg else "") + text

    def __str__(self):
        return self.format()


@dataclass(frozen=True)
class Guard:
    """Cardinality guard ``bound { elem : conds }``; true when at least *bound* members hold.

    Each member is a tuple of literals that must all be true for it to count.
    """

    bound: int
    members: Tuple[Tuple[Literal, ...], ...]


@dataclass(frozen=True)
class Rule:
    head: Tuple[Literal, ...] = ()
    pos: Tuple[Literal, ...] = ()
    neg: Tuple[Literal, ...] = ()
    premise: Tuple[ModalLiteral, ...] = ()
    guard: Optional[Guard] = None
    # closed body formulas (#true, #false, possibly negated), left by substitution reducts
    consts: Tuple[Formula, ...] = ()

    def __post_init__(self):
        if self.guard is not None and self.head:
            raise ValueError("cardinality guards are only allowed in constraints")

    @property
    def is_constraint(self) -> bool:
        return not self.head

    def atoms(self) -> FrozenSet[str]:
        out = {l.atom for l in self.head + self.pos + self.neg}
        for m in self.premise:
            out |= m.body.atoms()
        if self.guard is not None:
            for member in self.guard.members:
                out.update(l.atom for l in member)
        return frozenset(out)

    def without_premise(self) -> "Rule":
        return Rule(self.head, self.pos, self.neg, (), self.guard, self.consts)


@dataclass(frozen=True)
class Program:
    rules: Tuple[Rule, ...]
    dialect: str = TWO_VALUED
    vocabulary: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.dialect not in DIALECTS:
            raise ValueError(f"unknown dialect {self.dialect!r}")
        vocab = set(self.vocabulary)
        for r in self.rules:
            vocab |= r.atoms()
        object.__setattr__(self, "vocabulary", tuple(sorted(intern_atom(a) for a in vocab)))
        object.__setattr__(self, "rules", tuple(self.rules))

    def modal_atoms(self) -> Tuple[Formula, ...]:
        """Distinct modal atoms, in canonical (text) order."""
        seen = {}
        for r in self.rules:
            for m in r.premise:
                seen.setdefault(m.body, None)
        return tuple(sorted(seen, key=lambda f: format_formula(f, self.dialect)))

    @property
    def is_modal_free(self) -> bool:
        return not any(r.premise for r in self.rules)

    def with_rules(self, rules: Iterable[Rule]) -> "Program":
        return Program(tuple(rules), self.dialect, self.vocabulary)


Interpretation = FrozenSet[str]
ThreeValuedWorld = FrozenSet[Literal]
World = Union[Interpretation, ThreeValuedWorld]
Structure = FrozenSet[World]


def is_consistent(world: Iterable[Literal]) -> bool:
    seen = set(world)
    return not any(l.neg and Literal(l.atom) in seen for l in seen)


def world_key(world: World) -> tuple:
    return tuple(sorted(str(x) for x in world))


def sort_worlds(worlds: Iterable[World]) -> list:
    return sorted(worlds, key=world_key)


def structure_key(structure: Iterable[World]) -> tuple:
    return tuple(sorted(world_key(w) for w in structure))


# -- evaluation -------------------------------------------------------------------

class Truth(IntEnum):
    """Kleene truth values, ordered f < u < t."""

    F = 0
    U = 1
    T = 2

    def __str__(self):
        return "fut"[self.value]


def eval2(formula: Formula, world: Interpretation) -> bool:
    """Classical truth of a modal-free formula under a set of true atoms."""
    f = formula
    if isinstance(f, Atom):
        return f.name in world
    if isinstance(f, Bot):
        return False
    if isinstance(f, Top):
        return True
    if isinstance(f, Neg):
        # shorthand for arg -> #false
        return not eval2(f.arg, world)
    if isinstance(f, And):
        return eval2(f.left, world) and eval2(f.right, world)
    if isinstance(f, Or):
        return eval2(f.left, world) or eval2(f.right, world)
    if isinstance(f, Implies):
        return (not eval2(f.left, world)) or eval2(f.right, world)
    raise TypeError(f"not a formula: {formula!r}")


def eval3(formula: Formula, world: ThreeValuedWorld) -> Truth:
    """Kleene three-valued value of *formula* under a consistent literal set."""
    f = formula
    if isinstance(f, Atom):
        if Literal(f.name) in world:
            return Truth.T
        if Literal(f.name, True) in world:
            return Truth.F
        return Truth.U
    if isinstance(f, Bot):
        return Truth.F
    if isinstance(f, Top):
        return Truth.T
    if isinstance(f, Neg):
        return Truth(2 - eval3(f.arg, world))
    if isinstance(f, And):
        return min(eval3(f.left, world), eval3(f.right, world))
    if isinstance(f, Or):
        return max(eval3(f.left, world), eval3(f.right, world))
    if isinstance(f, Implies):
        return max(Truth(2 - eval3(f.left, world)), eval3(f.right, world))
    raise TypeError(f"not a formula: {formula!r}")


def sat_modal(structure: Iterable[World], ml: ModalLiteral, dialect: str = TWO_VALUED) -> bool:
    """Whether a possible-world structure satisfies a simple modal literal."""
    worlds = list(structure)
    if dialect == TWO_VALUED:
        if ml.strong_neg:
            raise ValueError("strong negation of K is not part of the two-valued dialect")
        holds = all(eval2(ml.body, w) for w in worlds)
    elif ml.strong_neg:
        holds = any(eval3(ml.body, w) is Truth.F for w in worlds)
    else:
        holds = all(eval3(ml.body, w) is Truth.T for w in worlds)
    return holds != ml.default_neg
