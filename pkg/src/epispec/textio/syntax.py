"""Surface syntax of both dialects: tokenizer, recursive-descent parser, printer.

Grammar sketch (whitespace-insensitive, ``%`` starts a comment)::

    statement := directive | [head] [":-" body] "."
    head      := literal ("|" literal)*
    body      := element ("," element)*
    element   := ["not"] ["-"] "K" unary      % modal literal
               | ["not"] literal
               | bound "{" elem (";" elem)* "}"    % elem := literal [":" literal ("," literal)*]
               | term ("=" | "!=") term
               | ["not"] ("#true" | "#false")
    formula   := disj ["->" formula]
    disj      := conj ("|" conj)*
    conj      := unary ("&" unary)*
    unary     := ("-" | "~") unary | "(" formula ")" | "#true" | "#false" | atom

Directives: ``#dialect lk|gelfond.``, ``#vocab a, b.``, ``#domain p(X).``,
``#const n = 3.``.  The Gelfond dialect writes strong and Kleene negation as
``-``; the two-valued dialect has a single negation, spelled ``not`` in rule
bodies and ``~`` inside formulas (``~`` is also accepted for ``not``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from ..core import (
    DIALECTS, GELFOND, TWO_VALUED, And, Atom, Bot, EpispecError, Formula,
    Implies, ModalLiteral, Neg, Or, Program, Rule, Top, format_formula,
)


class ParseError(EpispecError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line else ""
        super().__init__(where + message)


class DialectError(ParseError):
    """Construct not allowed in the selected dialect (or dialects mixed)."""


class NestedModalError(ParseError):
    """``K`` inside ``K``; only modal depth 1 is supported."""


class UnsafeVariableError(EpispecError):
    pass


# -- source-level AST ---------------------------------------------------------------

def is_variable(term: str) -> bool:
    return term[:1].isupper() or term[:1] == "_"


@dataclass(frozen=True)
class SAtom:
    pred: str
    args: Tuple[str, ...] = ()

    def __str__(self):
        if not self.args:
            return self.pred
        return "{}({})".format(self.pred, ",".join(self.args))

    def variables(self) -> set:
        return {t for t in self.args if is_variable(t)}


@dataclass(frozen=True)
class SLiteral:
    atom: SAtom
    neg: bool = False

    def __str__(self):
        return ("-" if self.neg else "") + str(self.atom)


@dataclass(frozen=True)
class Comparison:
    left: str
    op: str  # "=" or "!="
    right: str

    def __str__(self):
        return f"{self.left} {self.op} {self.right}"


@dataclass(frozen=True)
class SGuard:
    """``bound { elem : cond, ...; elem : cond, ... }`` before grounding."""

    bound: Union[int, str]
    elements: Tuple[Tuple[SLiteral, Tuple[SLiteral, ...]], ...]

    def __str__(self):
        return "{} {{ {} }}".format(self.bound, "; ".join(_format_element(e, c) for e, c in self.elements))


def _format_element(elem, conds) -> str:
    text = str(elem)
    if conds:
        text += " : " + ", ".join(map(str, conds))
    return text


@dataclass(frozen=True)
class SourceRule:
    head: Tuple[SLiteral, ...] = ()
    pos: Tuple[SLiteral, ...] = ()
    neg: Tuple[SLiteral, ...] = ()
    premise: Tuple[ModalLiteral, ...] = ()
    guard: Optional[SGuard] = None
    compare: Tuple[Comparison, ...] = ()
    consts: Tuple[Formula, ...] = ()

    def global_variables(self) -> set:
        out = set()
        for l in self.head + self.pos + self.neg:
            out |= l.atom.variables()
        for m in self.premise:
            for a in m.body.atoms():
                out |= a.variables()
        for c in self.compare:
            out |= {t for t in (c.left, c.right) if is_variable(t)}
        return out

    def positive_variables(self) -> set:
        out = set()
        for l in self.pos:
            out |= l.atom.variables()
        return out


@dataclass(frozen=True)
class SourceProgram:
    statements: Tuple[SourceRule, ...]
    dialect: str = TWO_VALUED
    vocab: Tuple[SAtom, ...] = ()
    domains: Tuple[SAtom, ...] = ()
    consts: Tuple[Tuple[str, str], ...] = ()

    def domain_map(self) -> Dict[str, SAtom]:
        out = {}
        for d in self.domains:
            for v in d.variables():
                out.setdefault(v, d)
        return out


# -- tokenizer --------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+|%[^\n]*)
  | (?P<nl>\n)
  | (?P<directive>\#[a-z]+)
  | (?P<int>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)
  | (?P<punct>:-|->|!=|[.,;|(){}:&=~-])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str  # ident, int, directive, punct, eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind != "ws":
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def _scan_dialect(tokens: List[Token]) -> Optional[str]:
    found = None
    for i, t in enumerate(tokens):
        if t.kind == "directive" and t.text == "#dialect":
            nxt = tokens[i + 1]
            if nxt.text not in DIALECTS:
                raise ParseError(f"unknown dialect {nxt.text!r}", nxt.line, nxt.col)
            if found is not None and found != nxt.text:
                raise DialectError("file mixes dialects", nxt.line, nxt.col)
            found = nxt.text
    return found


# -- parser -----------------------------------------------------------------------

class _Parser:
    def __init__(self, tokens: List[Token], dialect: str):
        self.tokens = tokens
        self.i = 0
        self.dialect = dialect
        self.rules: List[SourceRule] = []
        self.vocab: List[SAtom] = []
        self.domains: List[SAtom] = []
        self.consts: Dict[str, str] = {}

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, message: str, tok: Optional[Token] = None, cls=ParseError):
        tok = tok or self.tok
        return cls(message, tok.line, tok.col)

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind != "eof":
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if self.tok.text != text:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def gelfond_only(self, what: str):
        if self.dialect != GELFOND:
            raise self.error(f"{what} is not allowed in the two-valued dialect", cls=DialectError)

    # statements

    def parse(self) -> SourceProgram:
        while self.tok.kind != "eof":
            if self.tok.kind == "directive" and self.tok.text not in ("#true", "#false"):
                self.directive()
            else:
                self.rules.append(self.rule())
        return SourceProgram(tuple(self.rules), self.dialect, tuple(self.vocab),
                             tuple(self.domains), tuple(self.consts.items()))

    def directive(self):
        t = self.advance()
        if t.text == "#dialect":
            self.advance()
        elif t.text == "#vocab":
            self.vocab.append(self.atom())
            while self.accept(","):
                self.vocab.append(self.atom())
            for a in self.vocab:
                if a.variables():
                    raise self.error(f"#vocab atom {a} is not ground", t)
        elif t.text == "#domain":
            d = self.atom()
            if not d.variables():
                raise self.error("#domain needs a variable argument", t)
            self.domains.append(d)
        elif t.text == "#const":
            name = self.advance()
            if name.kind != "ident" or is_variable(name.text):
                raise self.error("#const expects a lowercase name", name)
            self.expect("=")
            value = self.advance()
            if value.kind not in ("ident", "int"):
                raise self.error("#const value must be a constant", value)
            self.consts[name.text] = value.text
        else:
            raise self.error(f"unknown directive {t.text}", t)
        self.expect(".")

    def rule(self) -> SourceRule:
        start = self.tok
        head: List[SLiteral] = []
        if self.tok.text != ":-":
            head.append(self.literal())
            while self.accept("|"):
                head.append(self.literal())
        pos, neg, premise, compare, consts = [], [], [], [], []
        guard = None
        if self.accept(":-"):
            while True:
                item = self.body_element()
                kind, value = item
                if kind == "pos":
                    pos.append(value)
                elif kind == "neg":
                    neg.append(value)
                elif kind == "modal":
                    premise.append(value)
                elif kind == "cmp":
                    compare.append(value)
                elif kind == "const":
                    consts.append(value)
                else:
                    if guard is not None:
                        raise self.error("at most one cardinality guard per rule")
                    guard = value
                if not self.accept(","):
                    break
            if not (pos or neg or premise or compare or consts or guard):
                raise self.error("empty rule body")
        elif not head:
            raise self.error("empty rule", start)
        self.expect(".")
        if guard is not None and head:
            raise self.error("cardinality guards are only allowed in constraints", start)
        return SourceRule(tuple(head), tuple(pos), tuple(neg), tuple(premise), guard,
                          tuple(compare), tuple(consts))

    def body_element(self):
        negated = False
        if self.tok.text == "not" or (self.tok.text == "~" and self.dialect == TWO_VALUED):
            self.advance()
            negated = True
        if self.tok.text in ("#true", "#false"):
            f = Top() if self.advance().text == "#true" else Bot()
            return "const", Neg(f) if negated else f
        strong = False
        if self.tok.text == "-" and self.peek().text == "K":
            self.gelfond_only("strong negation of K")
            self.advance()
            strong = True
        if self.tok.text == "K":
            self.advance()
            body = self.unary()
            return "modal", ModalLiteral(body, default_neg=negated, strong_neg=strong)
        if not negated and self.tok.kind in ("int", "ident") and self.peek().text == "{":
            return "guard", self.guard()
        if not negated and self.tok.kind in ("int", "ident") and self.peek().text in ("=", "!="):
            left = self.term()
            op = self.advance().text
            return "cmp", Comparison(left, op, self.term())
        l = self.literal()
        return ("neg" if negated else "pos"), l

    def guard(self) -> SGuard:
        b = self.advance()
        bound: Union[int, str] = int(b.text) if b.kind == "int" else b.text
        self.expect("{")
        elements = [self.guard_element()]
        while self.accept(";"):
            elements.append(self.guard_element())
        self.expect("}")
        return SGuard(bound, tuple(elements))

    def guard_element(self):
        elem = self.literal()
        conds = []
        if self.accept(":"):
            conds.append(self.literal())
            while self.accept(","):
                conds.append(self.literal())
        return elem, tuple(conds)

    def literal(self) -> SLiteral:
        if self.tok.text == "-":
            t = self.advance()
            if self.dialect != GELFOND:
                raise self.error("strong negation is not allowed in the two-valued dialect", t,
                                 cls=DialectError)
            return SLiteral(self.atom(), True)
        return SLiteral(self.atom())

    def term(self) -> str:
        t = self.advance()
        if t.kind not in ("ident", "int") or t.text in ("K", "not"):
            raise self.error(f"expected a term, found {t.text!r}", t)
        return t.text

    def atom(self) -> SAtom:
        t = self.tok
        if t.text == "K":
            raise self.error("nested modal operator: K may not occur inside K", cls=NestedModalError)
        if t.kind != "ident" or is_variable(t.text) or t.text == "not":
            raise self.error(f"expected an atom, found {t.text or 'end of input'!r}")
        self.advance()
        if "'" in t.text and self.dialect == GELFOND:
            raise self.error("primed names are reserved in the Gelfond dialect", t, cls=DialectError)
        args: List[str] = []
        if self.accept("("):
            args.append(self.term())
            while self.accept(","):
                args.append(self.term())
            self.expect(")")
        return SAtom(t.text, tuple(args))

    # formulas under K

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.accept("->"):
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.accept("|"):
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.accept("&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        t = self.tok
        if t.text == "-":
            self.gelfond_only("'-' negation")
            self.advance()
            return Neg(self.unary())
        if t.text == "~":
            if self.dialect == GELFOND:
                raise self.error("use '-' for negation in the Gelfond dialect", cls=DialectError)
            self.advance()
            return Neg(self.unary())
        if t.text == "(":
            self.advance()
            f = self.formula()
            self.expect(")")
            return f
        if t.text == "#true":
            self.advance()
            return Top()
        if t.text == "#false":
            self.advance()
            return Bot()
        return Atom(self.atom())


def parse_program(text: str, dialect: Optional[str] = None) -> SourceProgram:
    """Parse a program in either dialect.

    *dialect* may come from the caller (CLI flag) or from a ``#dialect``
    directive; when both are present they must agree.
    """
    tokens = tokenize(text)
    declared = _scan_dialect(tokens)
    if dialect is not None and dialect not in DIALECTS:
        raise ParseError(f"unknown dialect {dialect!r}")
    if dialect and declared and dialect != declared:
        raise DialectError(f"file declares #dialect {declared} but {dialect} was requested")
    src = _Parser(tokens, dialect or declared or TWO_VALUED).parse()
    check_safety(src)
    return src


def check_safety(src: SourceProgram):
    """Every variable must occur in a positive body literal or be covered by ``#domain``."""
    domains = src.domain_map()
    for n, r in enumerate(src.statements, 1):
        bound = r.positive_variables() | set(domains)
        unsafe = r.global_variables() - bound
        if r.guard is not None:
            for elem, conds in r.guard.elements:
                local_bound = set(bound) | r.global_variables()
                for c in conds:
                    local_bound |= c.atom.variables()
                unsafe |= elem.atom.variables() - local_bound
            if isinstance(r.guard.bound, str) and is_variable(r.guard.bound):
                unsafe.add(r.guard.bound)
        if unsafe:
            raise UnsafeVariableError(
                "unsafe variable(s) {} in rule {}: {}".format(
                    ", ".join(sorted(unsafe)), n, format_rule(r, src.dialect)))


# -- printing --------------------------------------------------------------------

def _format_modal(m: ModalLiteral, dialect: str) -> str:
    return m.format(dialect)


def _format_const(f: Formula) -> str:
    if isinstance(f, Neg):
        return "not " + str(f.arg)
    return str(f)


def format_rule(r: Union[Rule, SourceRule], dialect: str = TWO_VALUED) -> str:
    head = " | ".join(str(l) for l in r.head)
    body = [str(l) for l in r.pos]
    body += ["not " + str(l) for l in r.neg]
    body += [_format_modal(m, dialect) for m in r.premise]
    body += [str(c) for c in getattr(r, "compare", ())]
    body += [_format_const(c) for c in r.consts]
    if r.guard is not None:
        if isinstance(r.guard, SGuard):
            body.append(str(r.guard))
        else:
            body.append(_format_ground_guard(r.guard))
    if not body:
        return head + "."
    return (head + " " if head else "") + ":- " + ", ".join(body) + "."


def _format_ground_guard(g) -> str:
    elements = "; ".join(_format_element(m[0], m[1:]) for m in g.members)
    return f"{g.bound} {{ {elements} }}"


def format_source(src: SourceProgram) -> str:
    lines = [f"#dialect {src.dialect}."]
    for name, value in src.consts:
        lines.append(f"#const {name} = {value}.")
    for d in src.domains:
        lines.append(f"#domain {d}.")
    if src.vocab:
        lines.append("#vocab {}.".format(", ".join(map(str, src.vocab))))
    lines += [format_rule(r, src.dialect) for r in src.statements]
    return "\n".join(lines) + "\n"


def format_program(p: Program) -> str:
    """Text of a ground program; reparses (and regrounds) to an equal program."""
    lines = [f"#dialect {p.dialect}."]
    used = set()
    for r in p.rules:
        used |= r.atoms()
    extra = [a for a in p.vocabulary if a not in used]
    if extra:
        lines.append("#vocab {}.".format(", ".join(extra)))
    lines += [format_rule(r, p.dialect) for r in p.rules]
    return "\n".join(lines) + "\n"


__all__ = [
    "ParseError", "DialectError", "NestedModalError", "UnsafeVariableError",
    "SAtom", "SLiteral", "SGuard", "Comparison", "SourceRule", "SourceProgram",
    "tokenize", "parse_program", "check_safety", "format_rule", "format_source",
    "format_program", "is_variable", "format_formula",
]
