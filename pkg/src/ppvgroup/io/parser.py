"""Recursive-descent parser for rational expressions in x and the parameters.

Grammar, lowest precedence first::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | pow
    pow   := atom ('^' int)?
    atom  := number | ident | '(' expr ')'

``int`` may carry a sign and may be parenthesised, so ``x^-1`` and
``x^(-1)`` both work.  Numbers are integers; ``3/4`` is a division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from ..algebra.field import FunctionField, RatFunc


MAX_EXPONENT = 10000


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}")
        self.message = message
        self.pos = pos
        self.text = text

    def pointer(self) -> str:
        """The input with a caret under the offending position."""
        return f"{self.text}\n{' ' * self.pos}^"


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class Number:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


Expr = Union[Number, Var, Neg, Add, Sub, Mul, Div, Pow]

_BINARY = {"+": Add, "-": Sub, "*": Mul, "/": Div}


@dataclass
class _Tok:
    kind: str  # num | ident | op | end
    text: str
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    toks: List[_Tok] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                raise ParseError("decimal literals are not supported; write a fraction", j, text)
            toks.append(_Tok("num", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("ident", text[i:j], i))
            i = j
        elif ch in "+-*/^()":
            toks.append(_Tok("op", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i, text)
    toks.append(_Tok("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.names = set(names)
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: Optional[_Tok] = None) -> ParseError:
        return ParseError(msg, (tok or self.tok).pos, self.text)

    def eat(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def parse(self) -> Expr:
        if self.tok.kind == "end":
            raise self.error("empty expression")
        e = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            e = _BINARY[op](e, self.term())
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            e = _BINARY[op](e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.eat("-"):
            return Neg(self.unary())
        return self.pow()

    def pow(self) -> Expr:
        base = self.atom()
        if self.eat("^"):
            return Pow(base, self.intlit())
        return base

    def intlit(self) -> int:
        start = self.tok
        if self.eat("("):
            v = self.intlit()
            if not self.eat(")"):
                raise self.error("expected ')'")
            return v
        sign = -1 if self.eat("-") else 1
        if self.tok.kind != "num":
            raise self.error("non-integer exponent", start)
        v = int(self.tok.text)
        self.i += 1
        if self.tok.kind == "op" and self.tok.text == "^":
            raise self.error("chained exponents need parentheses")
        return sign * v

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return Number(Fraction(int(t.text)))
        if t.kind == "ident":
            if t.text not in self.names:
                raise self.error(f"unknown identifier {t.text!r}")
            self.i += 1
            return Var(t.text)
        if self.eat("("):
            e = self.expr()
            if not self.eat(")"):
                raise self.error("expected ')'")
            return e
        if t.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {t.text!r}")


def parse_expr(text: str, params: Sequence[str] = ()) -> Expr:
    return _Parser(text, ["x", *params]).parse()


def eval_expr(ast: Expr, field: FunctionField) -> RatFunc:
    if isinstance(ast, Number):
        return field.const(ast.value)
    if isinstance(ast, Var):
        if ast.name == "x":
            return field.x
        try:
            return field.t(field.params.index(ast.name) + 1)
        except ValueError:
            raise EvalError(f"unknown identifier {ast.name!r}") from None
    if isinstance(ast, Neg):
        return -eval_expr(ast.arg, field)
    if isinstance(ast, Pow):
        if abs(ast.exp) > MAX_EXPONENT:
            raise EvalError(f"exponent {ast.exp} exceeds {MAX_EXPONENT}")
        b = eval_expr(ast.base, field)
        if ast.exp < 0 and b.is_zero:
            raise EvalError("division by zero")
        return b ** ast.exp
    left = eval_expr(ast.left, field)
    right = eval_expr(ast.right, field)
    if isinstance(ast, Add):
        return left + right
    if isinstance(ast, Sub):
        return left - right
    if isinstance(ast, Mul):
        return left * right
    if right.is_zero:
        raise EvalError("division by zero")
    return left / right


def parse_ratfunc(text: str, field: FunctionField) -> RatFunc:
    return eval_expr(parse_expr(text, field.params), field)
