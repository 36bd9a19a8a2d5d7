"""A small first-order language over finite structures with exact arithmetic.

Terms are built from natural-number literals, variables, ``+ - * /``,
integer powers ``t^k`` and unary function application ``f(t)``.  Formulas
use comparisons, set membership ``t in S``, the connectives ``~ & | ->``
(binding tightest to loosest, ``->`` to the right) and quantifiers
``forall x in S (...)`` / ``exists x in S (...)`` that range over a named
finite set.

    >>> phi = parse_formula("forall u in D ((f(u) < c & c < f(u)*(1 + u^-2)) -> (u^7 < x | u >= x))")
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .errors import EvaluationError, ParseError
from .numeric import load_function, load_set


# -- AST --------------------------------------------------------------------

class Node:
    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Num(Node):
    value: int


@dataclass(frozen=True)
class Var(Node):
    name: str


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class BinOp(Node):
    op: str  # + - * /
    left: Node
    right: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int


@dataclass(frozen=True)
class App(Node):
    fn: str
    arg: Node


@dataclass(frozen=True)
class Const(Node):
    value: bool


@dataclass(frozen=True)
class Cmp(Node):
    op: str  # < <= = != > >=
    left: Node
    right: Node


@dataclass(frozen=True)
class Member(Node):
    term: Node
    set_name: str


@dataclass(frozen=True)
class Not(Node):
    operand: Node


@dataclass(frozen=True)
class And(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Or(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Implies(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Quant(Node):
    kind: str  # forall | exists
    var: str
    set_name: str
    body: Node


Formula = Node

# -- lexer ------------------------------------------------------------------

_UNICODE = {"∀": "forall", "∃": "exists", "∈": "in", "¬": "~", "∧": "&", "∨": "|",
            "→": "->", "≤": "<=", "≥": ">=", "≠": "!="}
_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9']*)
  | (?P<op>->|<=|>=|!=|[-+*/^()<>=~!&|,]|[∀∃∈¬∧∨→≤≥≠])
""", re.VERBOSE)
_KEYWORDS = {"forall", "exists", "in", "not", "and", "or", "true", "false"}
_WORD_OPS = {"not": "~", "and": "&", "or": "|"}
_CMP_OPS = {"<", "<=", "=", "!=", ">", ">="}
_TERM_CONT = {"+", "-", "*", "/", "^"}


@dataclass(frozen=True)
class Token:
    kind: str  # num name op kw end
    text: str
    line: int
    column: int


def tokenize(text: str) -> list:
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", token=text[pos], line=line, column=col)
        kind, lexeme = m.lastgroup, m.group()
        if kind != "ws":
            value = _UNICODE.get(lexeme, lexeme)
            if kind == "name" and value in _KEYWORDS:
                kind, value = ("op", _WORD_OPS[value]) if value in _WORD_OPS else ("kw", value)
            elif kind == "op" and value in _KEYWORDS:
                kind = "kw"
            elif value == "!":
                value = "~"
            tokens.append(Token(kind, value, line, col))
        for ch in lexeme:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos = m.end()
    tokens.append(Token("end", "", line, col))
    return tokens


# -- parser -----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.deepest = None  # (position, error) of the furthest failure seen

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str):
        t = self.tok
        where = "end of input" if t.kind == "end" else repr(t.text)
        err = ParseError(f"{msg}, found {where}", token=t.text, line=t.line, column=t.column)
        if self.deepest is None or self.i > self.deepest[0]:
            self.deepest = (self.i, err)
        # backtracking can abandon a deeper failure; report that one instead
        raise self.deepest[1] if self.deepest[0] > self.i else err

    def at(self, *texts) -> bool:
        return self.tok.kind in ("op", "kw") and self.tok.text in texts

    def expect(self, text: str):
        if not self.at(text):
            self.error(f"expected {text!r}")
        self.i += 1

    def name(self) -> str:
        if self.tok.kind != "name":
            self.error("expected a name")
        t = self.tok.text
        self.i += 1
        return t

    # formulas
    def formula(self) -> Node:
        left = self.disjunction()
        if self.at("->"):
            self.i += 1
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Node:
        node = self.conjunction()
        while self.at("|"):
            self.i += 1
            node = Or(node, self.conjunction())
        return node

    def conjunction(self) -> Node:
        node = self.unary()
        while self.at("&"):
            self.i += 1
            node = And(node, self.unary())
        return node

    def unary(self) -> Node:
        if self.at("~"):
            self.i += 1
            return Not(self.unary())
        if self.at("forall", "exists"):
            kind = self.tok.text
            self.i += 1
            var = self.name()
            self.expect("in")
            set_name = self.name()
            return Quant(kind, var, set_name, self.unary())
        if self.at("true", "false"):
            value = self.tok.text == "true"
            self.i += 1
            return Const(value)
        if self.at("("):
            save = self.i
            try:
                self.i += 1
                inner = self.formula()
                self.expect(")")
                if not (self.at(*_CMP_OPS, *_TERM_CONT) or self.at("in")):
                    return inner
            except ParseError:
                pass
            self.i = save
        return self.atom()

    def atom(self) -> Node:
        left = self.term()
        if self.at(*_CMP_OPS):
            op = self.tok.text
            self.i += 1
            return Cmp(op, left, self.term())
        if self.at("in"):
            self.i += 1
            return Member(left, self.name())
        self.error("expected a comparison or 'in'")

    # terms
    def term(self) -> Node:
        node = self.addend()
        while self.at("+", "-"):
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.addend())
        return node

    def addend(self) -> Node:
        node = self.factor()
        while self.at("*", "/"):
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        if self.at("-"):
            self.i += 1
            return Neg(self.factor())
        return self.power()

    def power(self) -> Node:
        base = self.primary()
        if self.at("^"):
            self.i += 1
            paren = self.at("(")
            if paren:
                self.i += 1
            sign = 1
            if self.at("-"):
                sign = -1
                self.i += 1
            if self.tok.kind != "num":
                self.error("exponent must be an integer literal")
            exp = sign * int(self.tok.text)
            self.i += 1
            if paren:
                if not self.at(")"):
                    self.error("exponent must be an integer literal")
                self.i += 1
            return Pow(base, exp)
        return base

    def primary(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Num(int(t.text))
        if t.kind == "name":
            self.i += 1
            if self.at("("):
                self.i += 1
                arg = self.term()
                self.expect(")")
                return App(t.text, arg)
            return Var(t.text)
        if self.at("("):
            self.i += 1
            inner = self.term()
            self.expect(")")
            return inner
        self.error("expected a term")


def _check_scoping(node: Node, bound: frozenset = frozenset()):
    if isinstance(node, Quant):
        if node.var in bound:
            raise ParseError(f"variable {node.var!r} is bound twice on one path", token=node.var)
        _check_scoping(node.body, bound | {node.var})
    elif isinstance(node, (And, Or, Implies)):
        _check_scoping(node.left, bound)
        _check_scoping(node.right, bound)
    elif isinstance(node, Not):
        _check_scoping(node.operand, bound)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    node = p.formula()
    if p.tok.kind != "end":
        p.error("unexpected trailing input")
    _check_scoping(node)
    return node


def parse_term(text: str) -> Node:
    p = _Parser(text)
    node = p.term()
    if p.tok.kind != "end":
        p.error("unexpected trailing input")
    return node


# -- printer ----------------------------------------------------------------

def to_text(node: Node) -> str:
    """Render with full parenthesisation; re-parsing yields an equal AST."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"-{_primary_text(node.operand)}"
    if isinstance(node, BinOp):
        return f"({to_text(node.left)} {node.op} {to_text(node.right)})"
    if isinstance(node, Pow):
        return f"{_primary_text(node.base)}^{node.exponent}"
    if isinstance(node, App):
        return f"{node.fn}({to_text(node.arg)})"
    if isinstance(node, Const):
        return "true" if node.value else "false"
    if isinstance(node, Cmp):
        return f"{to_text(node.left)} {node.op} {to_text(node.right)}"
    if isinstance(node, Member):
        return f"{to_text(node.term)} in {node.set_name}"
    if isinstance(node, Not):
        return f"~({to_text(node.operand)})"
    if isinstance(node, And):
        return f"({to_text(node.left)} & {to_text(node.right)})"
    if isinstance(node, Or):
        return f"({to_text(node.left)} | {to_text(node.right)})"
    if isinstance(node, Implies):
        return f"({to_text(node.left)} -> {to_text(node.right)})"
    if isinstance(node, Quant):
        return f"{node.kind} {node.var} in {node.set_name} ({to_text(node.body)})"
    raise TypeError(f"not a formula node: {node!r}")


def _primary_text(node: Node) -> str:
    text = to_text(node)
    if isinstance(node, (Num, Var, App, BinOp)):
        return text
    return f"({text})"


# -- evaluation -------------------------------------------------------------

@dataclass
class Structure:
    """Named finite sets and unary functions over the rationals."""

    sets: Mapping = None
    functions: Mapping = None

    def __post_init__(self):
        self.sets = dict(self.sets or {})
        self.functions = dict(self.functions or {})

    def set(self, name: str):
        try:
            return self.sets[name]
        except KeyError:
            raise EvaluationError("unknown set", name) from None

    def function(self, name: str):
        try:
            return self.functions[name]
        except KeyError:
            raise EvaluationError("unknown function", name) from None


def eval_term(node: Node, env: Mapping, structure: Structure) -> Fraction:
    if isinstance(node, Num):
        return Fraction(node.value)
    if isinstance(node, Var):
        try:
            return Fraction(env[node.name])
        except KeyError:
            raise EvaluationError("unbound variable", node.name) from None
    if isinstance(node, Neg):
        return -eval_term(node.operand, env, structure)
    if isinstance(node, BinOp):
        a = eval_term(node.left, env, structure)
        b = eval_term(node.right, env, structure)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if b == 0:
            raise EvaluationError("division by zero", to_text(node))
        return a / b
    if isinstance(node, Pow):
        a = eval_term(node.base, env, structure)
        if a == 0 and node.exponent < 0:
            raise EvaluationError("division by zero", to_text(node))
        return a ** node.exponent
    if isinstance(node, App):
        fn = structure.function(node.fn)
        x = eval_term(node.arg, env, structure)
        try:
            return Fraction(fn(x))
        except (KeyError, ValueError) as exc:
            raise EvaluationError(f"{node.fn} undefined here ({exc})", to_text(node)) from None
    raise EvaluationError("not a term", to_text(node))


_CMP = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def eval_formula(phi: Formula, env: Mapping, structure: Structure) -> bool:
    """Tarskian truth with quantifiers ranging over the named finite sets."""
    if isinstance(phi, Const):
        return phi.value
    if isinstance(phi, Cmp):
        return _CMP[phi.op](eval_term(phi.left, env, structure), eval_term(phi.right, env, structure))
    if isinstance(phi, Member):
        return eval_term(phi.term, env, structure) in structure.set(phi.set_name)
    if isinstance(phi, Not):
        return not eval_formula(phi.operand, env, structure)
    if isinstance(phi, And):
        return eval_formula(phi.left, env, structure) and eval_formula(phi.right, env, structure)
    if isinstance(phi, Or):
        return eval_formula(phi.left, env, structure) or eval_formula(phi.right, env, structure)
    if isinstance(phi, Implies):
        return (not eval_formula(phi.left, env, structure)) or eval_formula(phi.right, env, structure)
    if isinstance(phi, Quant):
        domain = structure.set(phi.set_name)
        inner = dict(env)
        test = all if phi.kind == "forall" else any
        def holds(x):
            inner[phi.var] = x
            return eval_formula(phi.body, inner, structure)
        return test(holds(x) for x in domain)
    raise EvaluationError("not a formula", repr(phi))


# -- formula files ----------------------------------------------------------

_HEADER_RE = re.compile(r"^\s*(set|fn)\s+([A-Za-z_][A-Za-z_0-9']*)\s*=\s*(\S+)\s*$")


def load_formula_file(path) -> tuple:
    """Read a formula file: ``set``/``fn`` header lines, then the formula.

    Relative data paths resolve against the formula file's directory.
    Returns ``(formula, structure)``.
    """
    path = Path(path)
    sets, fns, body = {}, {}, []
    for raw in path.read_text(encoding="utf-8").splitlines():
        m = _HEADER_RE.match(raw)
        if m and not body:
            kind, name, target = m.groups()
            data = (path.parent / target).read_text(encoding="utf-8").splitlines()
            if kind == "set":
                sets[name] = load_set(data)
            else:
                fns[name] = load_function(data)
        elif raw.strip().startswith("#") and not body:
            continue
        else:
            body.append(raw)
    return parse_formula("\n".join(body)), Structure(sets, fns)


PHI_TEXT = "forall u in D ((f(u) < c & c < f(u)*(1 + u^-2)) -> (u^7 < x | u >= x))"
PHI_LITERAL_TEXT = "forall u in D ((f(u) < c & c < f(u)*(1 + u^-2)) -> (u^7 < x | u > x))"
RULER_TEXT = (
    "forall a1 in S forall a2 in S ("
    "(a1 = a2 | a1 - a2 >= 1 - e | a2 - a1 >= 1 - e) & "
    "((a1 < a2 & ~(exists a3 in S (a1 < a3 & a3 < a2))) -> a2 - a1 <= 1 + e))"
)
