"""Recursive-descent parser for the expression grammar of spec files.

Grammar: integer literals, parameter names, ``+ - * / ^`` and parentheses.
``^`` takes a nonnegative integer exponent; ``/`` is only legal with a
nonzero constant divisor (rational literals like ``-3/2`` fall out of that
rule).  Canonical printing of any parsed value reparses to the same value.
"""

from __future__ import annotations

from .scalars import Scalar


class ParseError(ValueError):
    """Raised for malformed expressions; carries the character position."""

    def __init__(self, message: str, position: int):
        super().__init__("%s at position %d" % (message, position + 1))
        self.position = position


_OPS = set("+-*/^()")


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise ParseError("unexpected character '%s'" % ch, i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, params: tuple):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.params = params

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError("expected '%s'" % kind, tok[2])
        return self.advance()

    def parse(self) -> Scalar:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("unexpected trailing input", tok[2])
        return value

    def expr(self) -> Scalar:
        value = self.term()
        while self.peek()[0] in "+-":
            op = self.advance()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Scalar:
        value = self.unary()
        while self.peek()[0] in "*/":
            op, _, at = self.advance()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_constant:
                    raise ParseError("division by a non-constant expression", at)
                if rhs.is_zero:
                    raise ParseError("division by zero", at)
                value = value / rhs
        return value

    def unary(self) -> Scalar:
        signs = 0
        while self.peek()[0] in "+-":
            if self.advance()[0] == "-":
                signs ^= 1
        value = self.power()
        return -value if signs else value

    def power(self) -> Scalar:
        value = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.peek()
            if tok[0] != "int":
                raise ParseError("exponent must be a nonnegative integer", tok[2])
            self.advance()
            value = value ** int(tok[1])
        return value

    def atom(self) -> Scalar:
        kind, text, at = self.advance()
        if kind == "int":
            return Scalar.constant(self.params, int(text))
        if kind == "name":
            if text not in self.params:
                raise ParseError("unknown parameter '%s'" % text, at)
            return Scalar.parameter(self.params, text)
        if kind == "(":
            value = self.expr()
            tok = self.peek()
            if tok[0] != ")":
                raise ParseError("expected ')'", tok[2])
            self.advance()
            return value
        raise ParseError("expected a literal, parameter or '('", at)


def parse_expression(text: str, params) -> Scalar:
    """Parse ``text`` into a canonical Scalar over the given parameter names."""
    return _Parser(text, tuple(params)).parse()
