"""Text syntax for guest expressions.

Grammar (``*`` binds tighter than ``+``)::

    expr := mul ('+' mul)*
    mul  := atom ('*' atom)*
    atom := base ('[' IDENT '/' IDENT ']')*
    base := '(' expr ')' | '(' ')' | node | node '-' LABEL '->' node
    node := IDENT ('{' [flag (',' flag)*] '}')?
    flag := 'must' | 'uniq' | 'excl' | 'nil'

IDENT is ``[A-Za-z0-9_]+`` and LABEL a single ``[A-Za-z0-9_]`` character.
``()`` is the empty guest and ``g[p/q]`` renames ``p`` to ``q``.

Example: ``q{must,nil} + (p{must} -a-> p * p -b-> q)``.
"""

from __future__ import annotations

import re

from .algebra import FLAGS, Add, Arrow, Empty, GuestExpr, Mul, Rename, Unary

_IDENT = re.compile(r"[A-Za-z0-9_]+")
_LABEL = re.compile(r"[A-Za-z0-9_]")


class DslSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str):
        raise DslSyntaxError(message, self.text, self.pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, token: str) -> bool:
        self.skip()
        return self.text.startswith(token, self.pos)

    def accept(self, token: str) -> bool:
        if self.peek(token):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.accept(token):
            self.fail(f"expected {token!r}")

    def match(self, pattern: re.Pattern, what: str) -> str:
        self.skip()
        m = pattern.match(self.text, self.pos)
        if not m:
            self.fail(f"expected {what}")
        self.pos = m.end()
        return m.group()

    def parse(self) -> GuestExpr:
        e = self.expr()
        self.skip()
        if self.pos != len(self.text):
            self.fail(f"unexpected {self.text[self.pos]!r}")
        return e

    def expr(self) -> GuestExpr:
        e = self.mul()
        while self.accept("+"):
            e = Add(e, self.mul())
        return e

    def mul(self) -> GuestExpr:
        e = self.atom()
        while self.accept("*"):
            e = Mul(e, self.atom())
        return e

    def atom(self) -> GuestExpr:
        e = self.base()
        while self.accept("["):
            old = self.match(_IDENT, "node name")
            self.expect("/")
            new = self.match(_IDENT, "node name")
            self.expect("]")
            e = Rename(e, old, new)
        return e

    def base(self) -> GuestExpr:
        if self.accept("("):
            if self.accept(")"):
                return Empty()
            e = self.expr()
            self.expect(")")
            return e
        src = self.node()
        # '->' cannot start a label, so '-' followed by '>' is a syntax error here
        if self.peek("-") and not self.peek("->"):
            self.pos += 1
            self.skip()
            label = self.match(_LABEL, "edge label")
            self.expect("->")
            return Arrow(src, label, self.node())
        return src

    def node(self) -> Unary:
        name = self.match(_IDENT, "node name")
        flags: set[str] = set()
        if self.accept("{"):
            if not self.accept("}"):
                while True:
                    start = self.pos
                    flag = self.match(re.compile(r"[A-Za-z]+"), "flag")
                    if flag not in FLAGS:
                        self.pos = start
                        self.fail(f"unknown flag {flag!r} (expected one of {', '.join(FLAGS)})")
                    flags.add(flag)
                    if self.accept("}"):
                        break
                    self.expect(",")
        return Unary(name, frozenset(flags))


def parse_guest_dsl(text: str) -> GuestExpr:
    return _Parser(text).parse()


def _node(u: Unary) -> str:
    if not u.flags:
        return u.name
    return f"{u.name}{{{','.join(f for f in FLAGS if f in u.flags)}}}"


def format_guest_expr(e: GuestExpr) -> str:
    """Print ``e`` so that :func:`parse_guest_dsl` gives it back."""

    def go(e: GuestExpr, prec: int) -> str:
        # 0 = sum, 1 = left of '*', 2 = right of '*', 3 = renamed
        if isinstance(e, Empty):
            return "()"
        if isinstance(e, Unary):
            return _node(e)
        if isinstance(e, Arrow):
            s = f"{_node(e.src)} -{e.label}-> {_node(e.dst)}"
            return s if prec < 3 else f"({s})"
        if isinstance(e, Add):
            s = f"{go(e.left, 0)} + {go(e.right, 1)}"
            return s if prec == 0 else f"({s})"
        if isinstance(e, Mul):
            s = f"{go(e.left, 1)} * {go(e.right, 2)}"
            return s if prec <= 1 else f"({s})"
        if isinstance(e, Rename):
            return f"{go(e.inner, 3)}[{e.old}/{e.new}]"
        raise TypeError(e)

    return go(e, 0)
