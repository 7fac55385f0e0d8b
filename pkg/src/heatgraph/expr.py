"""Parameter expressions in ``r`` for the model generators.

Grammar (``^`` binds tightest and is right-associative)::

    expr  := term ('+' term)*
    term  := power ('*' power)*
    power := atom ('^' power)?
    atom  := NUMBER | 'r' | '(' expr ')' | 'ceil' '(' expr ')'

NUMBER is an unsigned integer or decimal literal. Nothing else is accepted.
"""
import re

import numpy as np

from .errors import PreconditionError

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|(ceil)|(r)|([-+*^()/]))")


class ExpressionError(PreconditionError):
    pass


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise ExpressionError(f"unexpected character at {pos} in {text!r}")
        num, ceil, var, op = match.groups()
        if num is not None:
            out.append(("num", float(num)))
        elif ceil:
            out.append(("ceil", None))
        elif var:
            out.append(("r", None))
        else:
            if op in "-/":
                raise ExpressionError(f"operator {op!r} is not part of the grammar")
            out.append((op, None))
        pos = match.end()
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0]

    def take(self, kind):
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            raise ExpressionError(f"expected {kind!r}, found {tok[0]!r}")
        self.pos += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() == "+":
            self.take("+")
            node = ("+", node, self.term())
        return node

    def term(self):
        node = self.power()
        while self.peek() == "*":
            self.take("*")
            node = ("*", node, self.power())
        return node

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take("^")
            return ("^", base, self.power())
        return base

    def atom(self):
        kind = self.peek()
        if kind == "num":
            return ("num", self.take("num")[1])
        if kind == "r":
            self.take("r")
            return ("r",)
        if kind == "ceil":
            self.take("ceil")
            self.take("(")
            inner = self.expr()
            self.take(")")
            return ("ceil", inner)
        if kind == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        raise ExpressionError(f"unexpected token {kind!r}")


def _eval(node, r):
    tag = node[0]
    if tag == "num":
        return node[1]
    if tag == "r":
        return r
    if tag == "ceil":
        return np.ceil(_eval(node[1], r))
    a, b = _eval(node[1], r), _eval(node[2], r)
    if tag == "+":
        return a + b
    if tag == "*":
        return a * b
    return np.power(a, b)


def _log_eval(node, r):
    """Natural log of the value, without forming values that overflow."""
    tag = node[0]
    if tag == "num":
        return np.log(node[1])
    if tag == "r":
        return np.log(r)
    if tag == "ceil":
        # exact evaluation wherever the value is representable, so that
        # ceil of an integer is not pushed up by rounding in exp(log(.))
        inner = _log_eval(node[1], r)
        exact = np.ceil(_eval(node[1], r))
        ok = np.isfinite(exact) & (exact > 0)
        return np.where(ok, np.log(np.where(ok, exact, 1.0)), inner)
    a, b = _log_eval(node[1], r), _log_eval(node[2], r)
    if tag == "+":
        return np.logaddexp(a, b)
    if tag == "*":
        return a + b
    return np.exp(b) * a


class Expression:
    """A compiled parameter expression; call it with ``r`` (scalar or array)."""

    def __init__(self, text: str):
        parser = _Parser(_tokenize(text))
        self.tree = parser.expr()
        parser.take("end")
        self.text = text

    def __call__(self, r):
        with np.errstate(over="ignore"):
            value = _eval(self.tree, np.asarray(r, dtype=np.float64))
        if np.ndim(r) == 0:
            return float(value)
        return np.broadcast_to(value, np.shape(r)).astype(np.float64)

    def log(self, r):
        """``log`` of the value at ``r``, finite even where the value overflows."""
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            value = _log_eval(self.tree, np.asarray(r, dtype=np.float64))
        if np.ndim(r) == 0:
            return float(value)
        return np.broadcast_to(value, np.shape(r)).astype(np.float64)

    def __repr__(self):
        return f"Expression({self.text!r})"


def parse_expr(text: str) -> Expression:
    return Expression(text)


def is_integral(values) -> bool:
    v = np.asarray(values, dtype=np.float64)
    return bool(np.all(np.isfinite(v)) and np.all(v == np.floor(v)))


__all__ = ["Expression", "ExpressionError", "parse_expr", "is_integral"]
