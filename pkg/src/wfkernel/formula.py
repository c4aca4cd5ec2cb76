"""Propositional formulas over atoms, bot, &, | and ->.

The biconditional is surface syntax only: ``A <-> B`` parses to
``(A -> B) & (B -> A)`` and never appears as a tree node. Formulas are
immutable and compare structurally, so they can be used as dict keys and
set members throughout the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

__all__ = [
    "Formula",
    "Atom",
    "Bottom",
    "And",
    "Or",
    "Imp",
    "BOT",
    "iff",
    "parse_formula",
    "format_formula",
    "depth",
    "rank",
    "FormulaSyntaxError",
]


@dataclass(frozen=True, slots=True)
class Atom:
    name: str


@dataclass(frozen=True, slots=True)
class Bottom:
    pass


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Imp:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, Bottom, And, Or, Imp]

BOT = Bottom()


def iff(a: Formula, b: Formula) -> Formula:
    """The defined biconditional: (a -> b) & (b -> a)."""
    return And(Imp(a, b), Imp(b, a))


def depth(f: Formula) -> int:
    """Logical depth: 0 for atoms and bot, 1 + max of the parts otherwise."""
    match f:
        case Atom() | Bottom():
            return 0
        case And(left, right) | Or(left, right) | Imp(left, right):
            return max(depth(left), depth(right)) + 1
    raise TypeError(f"not a formula: {f!r}")


def rank(f: Formula) -> int:
    """Rank is depth + 1; the unit of the normalization measure."""
    return depth(f) + 1


class FormulaSyntaxError(ValueError):
    """Malformed formula text; carries the offending position."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


_KEYWORD_BOT = "bot"


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "(":
            tokens.append(("lparen", c, i))
            i += 1
        elif c == ")":
            tokens.append(("rparen", c, i))
            i += 1
        elif c == "&":
            tokens.append(("and", c, i))
            i += 1
        elif c == "|":
            tokens.append(("or", c, i))
            i += 1
        elif text.startswith("<->", i):
            tokens.append(("iff", "<->", i))
            i += 3
        elif text.startswith("->", i):
            tokens.append(("imp", "->", i))
            i += 2
        elif c.isascii() and c.isalpha():
            j = i + 1
            while j < n and (text[j].isascii() and (text[j].isalnum() or text[j] == "_")):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
        else:
            raise FormulaSyntaxError(f"unexpected character {c!r}", i)
    tokens.append(("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> tuple[str, str, int]:
        tok = self.take()
        if tok[0] != kind:
            raise FormulaSyntaxError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    # Precedence, loosest to tightest: <->, ->, |, &. The two implication
    # operators associate to the right, the lattice operators to the left.

    def parse_iff(self) -> Formula:
        left = self.parse_imp()
        if self.peek()[0] == "iff":
            self.take()
            right = self.parse_iff()
            return iff(left, right)
        return left

    def parse_imp(self) -> Formula:
        left = self.parse_or()
        if self.peek()[0] == "imp":
            self.take()
            return Imp(left, self.parse_imp())
        return left

    def parse_or(self) -> Formula:
        f = self.parse_and()
        while self.peek()[0] == "or":
            self.take()
            f = Or(f, self.parse_and())
        return f

    def parse_and(self) -> Formula:
        f = self.parse_unit()
        while self.peek()[0] == "and":
            self.take()
            f = And(f, self.parse_unit())
        return f

    def parse_unit(self) -> Formula:
        kind, value, pos = self.take()
        if kind == "lparen":
            f = self.parse_iff()
            self.expect("rparen")
            return f
        if kind == "ident":
            if value == _KEYWORD_BOT:
                return BOT
            return Atom(value)
        raise FormulaSyntaxError(f"expected a formula, found {value or 'end of input'!r}", pos)


def parse_formula(text: str) -> Formula:
    """Parse formula text; raises FormulaSyntaxError on malformed input."""
    p = _Parser(text)
    f = p.parse_iff()
    kind, value, pos = p.peek()
    if kind != "eof":
        raise FormulaSyntaxError(f"trailing input {value!r}", pos)
    return f


# Printer precedence levels; parentheses appear exactly where reparsing
# would otherwise regroup.
_PREC_IMP = 1
_PREC_OR = 2
_PREC_AND = 3
_PREC_UNIT = 4


def _render(f: Formula, min_prec: int) -> str:
    match f:
        case Atom(name):
            return name
        case Bottom():
            return _KEYWORD_BOT
        case And(left, right):
            s = f"{_render(left, _PREC_AND)} & {_render(right, _PREC_AND + 1)}"
            return f"({s})" if _PREC_AND < min_prec else s
        case Or(left, right):
            s = f"{_render(left, _PREC_OR)} | {_render(right, _PREC_OR + 1)}"
            return f"({s})" if _PREC_OR < min_prec else s
        case Imp(left, right):
            s = f"{_render(left, _PREC_IMP + 1)} -> {_render(right, _PREC_IMP)}"
            return f"({s})" if _PREC_IMP < min_prec else s
    raise TypeError(f"not a formula: {f!r}")


def format_formula(f: Formula) -> str:
    """Render with minimal parentheses; parse_formula inverts this exactly."""
    return _render(f, _PREC_IMP)
