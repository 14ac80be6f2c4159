"""Terms over the signature {·, ⁻¹, +} and their concrete syntax.

Grammar::

    identity := term '=' term
    term     := sum
    sum      := prod ( '+' prod )*
    prod     := factor ( '*' factor )*
    factor   := atom ( "'" )*
    atom     := IDENT | '(' term ')'
    IDENT    := [A-Za-z][A-Za-z0-9_]*

``+`` and ``*`` associate to the left; a postfix apostrophe is inversion and
binds tightest.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .algebra import FiniteAlgebra
from .errors import MissingVariable, ParseError, SignatureMismatch
from .kernels import OP_ADD, OP_INV, OP_MUL, OP_VAR


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Inv:
    child: "Term"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Mul:
    left: "Term"
    right: "Term"

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Add:
    left: "Term"
    right: "Term"

    def __str__(self):
        return to_text(self)


Term = Union[Var, Inv, Mul, Add]


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(variables(self.lhs) + variables(self.rhs)))

    def __str__(self):
        return f"{to_text(self.lhs)} = {to_text(self.rhs)}"


def variables(t: Term) -> tuple[str, ...]:
    """Variable names in order of first occurrence."""
    seen: dict[str, None] = {}
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            seen.setdefault(node.name)
        elif isinstance(node, Inv):
            stack.append(node.child)
        else:
            stack.append(node.right)
            stack.append(node.left)
    return tuple(seen)


def size(t: Term) -> int:
    """Variable occurrences plus inversions; binary nodes are free."""
    if isinstance(t, Var):
        return 1
    if isinstance(t, Inv):
        return 1 + size(t.child)
    return size(t.left) + size(t.right)


def node_count(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    if isinstance(t, Inv):
        return 1 + node_count(t.child)
    return 1 + node_count(t.left) + node_count(t.right)


def operations(t: Term) -> set[str]:
    """Subset of {"mul", "inv", "add"} used by ``t``."""
    ops = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Inv):
            ops.add("inv")
            stack.append(node.child)
        elif isinstance(node, Mul):
            ops.add("mul")
            stack += (node.left, node.right)
        elif isinstance(node, Add):
            ops.add("add")
            stack += (node.left, node.right)
    return ops


# ---------------------------------------------------------------- printing

def to_text(t: Term | Identity) -> str:
    """Fully parenthesised text; ``parse(to_text(t)) == t``."""
    if isinstance(t, Identity):
        return str(t)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Inv):
        return f"({to_text(t.child)}')"
    op = "*" if isinstance(t, Mul) else "+"
    return f"({to_text(t.left)}{op}{to_text(t.right)})"


# ----------------------------------------------------------------- parsing

_TOKEN = re.compile(r"([A-Za-z][A-Za-z0-9_]*)|(\S)")
_SPACE = re.compile(r"\s*")
_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []  # (kind, value, char offset)
        pos = 0
        while True:
            pos = _SPACE.match(text, pos).end()
            if pos == len(text):
                break
            m = _TOKEN.match(text, pos)
            if m.group(1) is not None:
                self.tokens.append(("IDENT", m.group(1), m.start(1)))
            else:
                self.tokens.append((m.group(2), m.group(2), m.start(2)))
            pos = m.end()
        self.tokens.append(("EOF", "", len(text)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def fail(self, expected):
        kind, value, off = self.peek()
        found = "end of input" if kind == "EOF" else repr(value)
        byte_off = len(self.text[:off].encode("utf-8"))
        raise ParseError(self.text, byte_off, frozenset(expected), found)

    def expect(self, kind):
        if self.peek()[0] != kind:
            self.fail({kind})
        self.i += 1

    def term(self):
        left = self.prod()
        while self.peek()[0] == "+":
            self.i += 1
            left = Add(left, self.prod())
        return left

    def prod(self):
        left = self.factor()
        while self.peek()[0] == "*":
            self.i += 1
            left = Mul(left, self.factor())
        return left

    def factor(self):
        t = self.atom()
        while self.peek()[0] == "'":
            self.i += 1
            t = Inv(t)
        return t

    def atom(self):
        kind, value, _ = self.peek()
        if kind == "IDENT":
            self.i += 1
            return Var(value)
        if kind == "(":
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        self.fail({"IDENT", "("})


def parse(text: str) -> Term | Identity:
    """Parse a term, or an identity when a top-level ``=`` is present."""
    p = _Parser(text)
    lhs = p.term()
    if p.peek()[0] == "=":
        p.i += 1
        rhs = p.term()
        if p.peek()[0] != "EOF":
            p.fail({"EOF", "+", "*", "'"})
        return Identity(lhs, rhs)
    if p.peek()[0] != "EOF":
        p.fail({"EOF", "=", "+", "*", "'"})
    return lhs


def parse_term(text: str) -> Term:
    t = parse(text)
    if isinstance(t, Identity):
        raise ParseError(text, len(text[: text.index("=")].encode("utf-8")),
                         frozenset({"EOF", "+", "*", "'"}), "'='")
    return t


def parse_identity(text: str) -> Identity:
    t = parse(text)
    if not isinstance(t, Identity):
        raise ParseError(text, len(text.encode("utf-8")), frozenset({"="}), "end of input")
    return t


def read_identities(text: str) -> list[Identity]:
    """One identity per line; blank lines and ``#`` comments are skipped."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        if line.strip():
            out.append(parse_identity(line))
    return out


# ------------------------------------------------------------- rewriting

def eliminate_addition(t: Term, n: int) -> Term:
    """Replace every a + b by (a b')^n a, bottom-up.

    The n-fold product is associated to the left, so for n = 2 the result
    is ((a*b')*(a*b'))*a.  Shared subterms stay shared.
    """
    if n < 1:
        raise ValueError("exponent must be at least 1")
    memo: dict[int, Term] = {}

    def go(node):
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Var):
            out = node
        elif isinstance(node, Inv):
            c = go(node.child)
            out = node if c is node.child else Inv(c)
        elif isinstance(node, Mul):
            a, b = go(node.left), go(node.right)
            out = node if (a is node.left and b is node.right) else Mul(a, b)
        else:
            a, b = go(node.left), go(node.right)
            step = Mul(a, Inv(b))
            prod = step
            for _ in range(n - 1):
                prod = Mul(prod, step)
            out = Mul(prod, a)
        memo[key] = out
        return out

    return go(t)


# ------------------------------------------------------------ evaluation

@dataclass(frozen=True)
class Evaluation:
    algebra: FiniteAlgebra
    assignment: dict  # variable name -> element index


def _require(algebra: FiniteAlgebra, ops) -> None:
    if "inv" in ops and algebra.inv is None:
        raise SignatureMismatch(f"{algebra.name} has no inverse map but the term uses '")
    if "add" in ops and algebra.add is None:
        raise SignatureMismatch(f"{algebra.name} has no addition table but the term uses +")


def evaluate(t: Term, ev: Evaluation) -> int:
    """Value of ``t`` under ``ev`` (a structural fold through the tables)."""
    alg, env = ev.algebra, ev.assignment
    _require(alg, operations(t))
    for v in variables(t):
        if v not in env:
            raise MissingVariable(f"variable {v} is not assigned")
    memo: dict[int, int] = {}

    def go(node):
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Var):
            out = int(env[node.name])
        elif isinstance(node, Inv):
            out = int(alg.inv[go(node.child)])
        elif isinstance(node, Mul):
            out = int(alg.mul[go(node.left), go(node.right)])
        else:
            out = int(alg.add[go(node.left), go(node.right)])
        memo[key] = out
        return out

    return go(t)


def compile_term(t: Term, varlist) -> np.ndarray:
    """Straight-line program for the kernels' ``eval_program``.

    Rows are (op, x, y); structurally equal subterms share a register.
    """
    slot = {v: i for i, v in enumerate(varlist)}
    rows: list[tuple[int, int, int]] = []
    by_id: dict[int, int] = {}
    by_row: dict[tuple[int, int, int], int] = {}

    def emit(row):
        reg = by_row.get(row)
        if reg is None:
            reg = by_row[row] = len(rows)
            rows.append(row)
        return reg

    def go(node):
        key = id(node)
        if key in by_id:
            return by_id[key]
        if isinstance(node, Var):
            if node.name not in slot:
                raise MissingVariable(f"variable {node.name} is not in the variable list")
            reg = emit((OP_VAR, slot[node.name], 0))
        elif isinstance(node, Inv):
            reg = emit((OP_INV, go(node.child), 0))
        elif isinstance(node, Mul):
            reg = emit((OP_MUL, go(node.left), go(node.right)))
        else:
            reg = emit((OP_ADD, go(node.left), go(node.right)))
        by_id[key] = reg
        return reg

    # the root cannot coincide with a proper subterm, so it is the last row
    go(t)
    return np.array(rows, dtype=np.int32).reshape(-1, 3)


def is_identifier(name: str) -> bool:
    return bool(_IDENT_RE.match(name))
