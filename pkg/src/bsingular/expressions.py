"""Tiny expression language for test functions of one variable t.

Supported: numeric literals, ``t``, ``+ - * ^``, parentheses, absolute
values written ``|expr|``, and ``log(expr)``.  Enough to spell the whole
corpus (``t^0.5``, ``|t-0.5|^1.5``, ``t^0.5*(1-t)^0.5`` ...) without a
general interpreter.  Exponents must fold to constants.

Endpoint limits are derived analytically from the syntax tree, so
``t^0.5`` gets an exact 0.0 limit at the left endpoint and ``t^-0.25``
correctly gets none.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .functions import SampledFunction

__all__ = ["parse_function"]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]+)"
    r"|(?P<op>[-+*^()|]))"
)


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise DomainError(f"cannot tokenize expression at: {text[pos:]!r}")
        out.append(match.group(match.lastgroup))
        pos = match.end()
    out.append("<end>")
    return out


@dataclass(frozen=True)
class _Node:
    kind: str  # const var add sub mul neg pow abs log
    args: tuple = ()
    value: float = 0.0

    def eval(self, t):
        ts = np.asarray(t, dtype=float)
        if self.kind == "const":
            return np.full_like(ts, self.value)
        if self.kind == "var":
            return ts
        if self.kind == "add":
            return self.args[0].eval(ts) + self.args[1].eval(ts)
        if self.kind == "sub":
            return self.args[0].eval(ts) - self.args[1].eval(ts)
        if self.kind == "mul":
            return self.args[0].eval(ts) * self.args[1].eval(ts)
        if self.kind == "neg":
            return -self.args[0].eval(ts)
        if self.kind == "pow":
            return self.args[0].eval(ts) ** self.value
        if self.kind == "abs":
            return np.abs(self.args[0].eval(ts))
        if self.kind == "log":
            return np.log(self.args[0].eval(ts))
        raise AssertionError(self.kind)

    def limit(self, side: int) -> float | None:
        """Limit at endpoint 0 or 1; None when unbounded or unknown."""
        if self.kind == "const":
            return self.value
        if self.kind == "var":
            return float(side)
        if self.kind in ("add", "sub", "mul"):
            a = self.args[0].limit(side)
            b = self.args[1].limit(side)
            if a is None or b is None:
                return None
            return {"add": a + b, "sub": a - b, "mul": a * b}[self.kind]
        if self.kind == "neg":
            a = self.args[0].limit(side)
            return None if a is None else -a
        if self.kind == "abs":
            a = self.args[0].limit(side)
            return None if a is None else abs(a)
        if self.kind == "pow":
            a = self.args[0].limit(side)
            if a is None:
                return None
            if a == 0.0:
                if self.value > 0.0:
                    return 0.0
                return 1.0 if self.value == 0.0 else None
            if a < 0.0 and self.value != round(self.value):
                return None
            return float(a**self.value)
        if self.kind == "log":
            a = self.args[0].limit(side)
            if a is None or a <= 0.0:
                return None
            return float(np.log(a))
        raise AssertionError(self.kind)

    def const_value(self) -> float | None:
        if self.kind == "const":
            return self.value
        if self.kind == "neg":
            inner = self.args[0].const_value()
            return None if inner is None else -inner
        return None


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str:
        return self.tokens[self.pos]

    def take(self) -> str:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.take()
        if got != tok:
            raise DomainError(f"expected {tok!r}, got {got!r}")

    def parse(self) -> _Node:
        node = self.expr()
        if self.peek() != "<end>":
            raise DomainError(f"trailing input at {self.peek()!r}")
        return node

    def expr(self) -> _Node:
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            node = _Node("add" if op == "+" else "sub", (node, rhs))
        return node

    def term(self) -> _Node:
        node = self.unary()
        while self.peek() == "*":
            self.take()
            node = _Node("mul", (node, self.unary()))
        return node

    def unary(self) -> _Node:
        if self.peek() == "-":
            self.take()
            return _Node("neg", (self.unary(),))
        return self.power()

    def power(self) -> _Node:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exponent = self.unary().const_value()
            if exponent is None:
                raise DomainError("exponents must be numeric constants")
            return _Node("pow", (base,), value=exponent)
        return base

    def atom(self) -> _Node:
        tok = self.take()
        if tok == "(":
            node = self.expr()
            self.expect(")")
            return node
        if tok == "|":
            node = self.expr()
            self.expect("|")
            return _Node("abs", (node,))
        if tok == "t":
            return _Node("var")
        if tok == "log":
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return _Node("log", (node,))
        try:
            return _Node("const", value=float(tok))
        except ValueError:
            raise DomainError(f"unknown token {tok!r} in expression") from None


def parse_function(text: str) -> SampledFunction:
    """Compile an expression into a sampleable function.

    Expression functions carry no derivative evaluators; sweeps that
    need derivatives must use corpus functions.
    """
    tree = _Parser(_tokenize(text)).parse()
    return SampledFunction(
        evaluator=tree.eval,
        name=text.strip(),
        left_limit=tree.limit(0),
        right_limit=tree.limit(1),
    )
