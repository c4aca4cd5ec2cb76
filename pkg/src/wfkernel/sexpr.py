"""S-expression file format for proofs and proof documents.

A document wraps one proof together with its checking context::

    (document
      (logic WFN)
      (kind nd)
      (assumptions "p & q")
      (expect accept)
      (proof (AndE1 (assume "p & q"))))

Derivation trees use one form per rule, always laid out as rule name,
labels, quoted formula parameters, children.  Leaves are written
``(assume "F")`` or ``(assume 3 "F")`` when labelled.  Linear proofs
are sequences of ``(line N "F" <justification>)`` forms with 1-based
line numbers and premise references.

All parse failures raise DocumentError; the caller decides how to
surface them (the command line maps them to exit status 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .formula import Formula, FormulaSyntaxError, format_formula, parse_formula
from .hilbert import (
    Assumption,
    AxiomUse,
    HilbertProof,
    Line,
    RuleApp,
    RuleId,
    SchemaId,
)
from .logic import LogicSpec, parse_logic
from .natded import Leaf, NDNode, NDRuleId, RuleNode, rule_arity

__all__ = [
    "DocumentError",
    "Document",
    "parse_document",
    "parse_nd_proof",
    "parse_hilbert_proof",
    "render_document",
    "render_nd_proof",
    "render_hilbert_proof",
]


class DocumentError(ValueError):
    """The input is not a well-formed proof document."""


# --- generic S-expression reader -------------------------------------------


class _Quoted(str):
    """A string literal, as opposed to a bare symbol."""


SExpr = Union[str, int, _Quoted, list]


def _tokens(text: str) -> Iterator[tuple[str, object, int]]:
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            yield ch, ch, i
            i += 1
        elif ch == '"':
            j = i + 1
            parts: list[str] = []
            while j < n and text[j] != '"':
                if text[j] == "\\" and j + 1 < n:
                    parts.append(text[j + 1])
                    j += 2
                else:
                    parts.append(text[j])
                    j += 1
            if j >= n:
                raise DocumentError(f"unterminated string at position {i}")
            yield "str", _Quoted("".join(parts)), i
            i = j + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in '();"':
                j += 1
            word = text[i:j]
            if word.lstrip("-").isdigit():
                yield "int", int(word), i
            else:
                yield "sym", word, i
            i = j


def _read_sexpr(text: str) -> SExpr:
    stream = list(_tokens(text))
    pos = 0

    def read() -> SExpr:
        nonlocal pos
        if pos >= len(stream):
            raise DocumentError("unexpected end of input")
        kind, value, at = stream[pos]
        pos += 1
        if kind == "(":
            items: list = []
            while True:
                if pos >= len(stream):
                    raise DocumentError(f"unclosed parenthesis opened at position {at}")
                if stream[pos][0] == ")":
                    pos += 1
                    return items
                items.append(read())
        if kind == ")":
            raise DocumentError(f"unmatched ')' at position {at}")
        return value  # sym, int or str

    expr = read()
    if pos != len(stream):
        raise DocumentError(f"trailing input at position {stream[pos][2]}")
    return expr


def _formula(item: SExpr, what: str) -> Formula:
    if not isinstance(item, _Quoted):
        raise DocumentError(f'{what} must be a quoted formula, got {item!r}')
    try:
        return parse_formula(str(item))
    except FormulaSyntaxError as err:
        raise DocumentError(f"{what}: {err}") from None


def _label(item: SExpr, what: str) -> int:
    if not isinstance(item, int) or isinstance(item, bool):
        raise DocumentError(f"{what} must be an integer label, got {item!r}")
    return item


# --- derivation trees -------------------------------------------------------

_ND_BY_NAME = {rule.value: rule for rule in NDRuleId}


def parse_nd_proof(expr: SExpr) -> NDNode:
    """Turn a parsed S-expression into a derivation tree."""
    if not isinstance(expr, list) or not expr or not isinstance(expr[0], str):
        raise DocumentError(f"expected a rule form, got {expr!r}")
    head = str(expr[0])
    args = expr[1:]
    if head == "assume":
        if len(args) == 1:
            return Leaf(_formula(args[0], "assumption"))
        if len(args) == 2:
            return Leaf(_formula(args[1], "assumption"), _label(args[0], "assume label"))
        raise DocumentError("assume takes a formula and an optional leading label")
    rule = _ND_BY_NAME.get(head)
    if rule is None:
        raise DocumentError(f"unknown derivation rule {head!r}")
    nlab, nfor, nch = rule_arity(rule)
    if len(args) != nlab + nfor + nch:
        raise DocumentError(
            f"{head} takes {nlab} labels, {nfor} formulas and {nch} children; "
            f"got {len(args)} arguments"
        )
    labels = tuple(_label(x, f"{head} label") for x in args[:nlab])
    formulas = tuple(
        _formula(x, f"{head} parameter") for x in args[nlab : nlab + nfor]
    )
    children = tuple(parse_nd_proof(x) for x in args[nlab + nfor :])
    return RuleNode(rule, labels, formulas, children)


def render_nd_proof(node: NDNode, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(node, Leaf):
        inner = f'"{format_formula(node.formula)}"'
        if node.label is not None:
            inner = f"{node.label} {inner}"
        return f"{pad}(assume {inner})"
    parts = [node.rule.value]
    parts.extend(str(lab) for lab in node.labels)
    parts.extend(f'"{format_formula(f)}"' for f in node.formulas)
    if not node.children:
        return f"{pad}({' '.join(parts)})"
    child_text = "\n".join(render_nd_proof(c, indent + 1) for c in node.children)
    return f"{pad}({' '.join(parts)}\n{child_text})"


# --- linear proofs -----------------------------------------------------------

_SCHEMA_BY_NAME = {schema.value: schema for schema in SchemaId}
_RULE_BY_NAME = {rule.value: rule for rule in RuleId}


def _parse_justification(expr: SExpr, lineno: int, count: int) -> Union[Assumption, AxiomUse, RuleApp]:
    if not isinstance(expr, list) or not expr or not isinstance(expr[0], str):
        raise DocumentError(f"line {lineno}: expected a justification form")
    head, *args = expr
    if head == "assume":
        if args:
            raise DocumentError(f"line {lineno}: (assume) takes no arguments here")
        return Assumption()
    if head == "axiom":
        if len(args) != 1 or not isinstance(args[0], str):
            raise DocumentError(f"line {lineno}: (axiom NAME) takes one schema name")
        schema = _SCHEMA_BY_NAME.get(str(args[0]))
        if schema is None:
            raise DocumentError(f"line {lineno}: unknown axiom schema {args[0]!r}")
        return AxiomUse(schema)
    if head == "rule":
        if not args or not isinstance(args[0], str):
            raise DocumentError(f"line {lineno}: (rule NAME refs..) needs a rule name")
        rule = _RULE_BY_NAME.get(str(args[0]))
        if rule is None:
            raise DocumentError(f"line {lineno}: unknown rule {args[0]!r}")
        refs = []
        for item in args[1:]:
            ref = _label(item, f"line {lineno}: premise reference")
            if not 1 <= ref <= count:
                raise DocumentError(
                    f"line {lineno}: premise reference {ref} is out of range"
                )
            refs.append(ref - 1)
        return RuleApp(rule, tuple(refs))
    raise DocumentError(f"line {lineno}: unknown justification {head!r}")


def parse_hilbert_proof(exprs: Sequence[SExpr]) -> HilbertProof:
    """Turn a sequence of (line ...) forms into a linear proof."""
    proof_lines: list[Line] = []
    for i, expr in enumerate(exprs):
        expected = i + 1
        if not (
            isinstance(expr, list)
            and len(expr) == 4
            and expr[0] == "line"
        ):
            raise DocumentError(
                f"line {expected}: expected (line N \"formula\" justification)"
            )
        _, num, formula_item, just_item = expr
        if num != expected:
            raise DocumentError(
                f"line numbers must count up from 1; expected {expected}, got {num!r}"
            )
        formula = _formula(formula_item, f"line {expected}: formula")
        just = _parse_justification(just_item, expected, i)
        proof_lines.append(Line(formula, just))
    if not proof_lines:
        raise DocumentError("a linear proof needs at least one line")
    return HilbertProof.of(proof_lines)


def render_hilbert_proof(proof: HilbertProof, indent: int = 0) -> str:
    pad = "  " * indent
    rendered = []
    for i, line in enumerate(proof.lines):
        match line.just:
            case Assumption():
                just = "(assume)"
            case AxiomUse(schema, _):
                just = f"(axiom {schema.value})"
            case RuleApp(rule, premises):
                refs = " ".join(str(p + 1) for p in premises)
                just = f"(rule {rule.value} {refs})" if refs else f"(rule {rule.value})"
        rendered.append(
            f'{pad}(line {i + 1} "{format_formula(line.formula)}" {just})'
        )
    return "\n".join(rendered)


# --- documents ---------------------------------------------------------------


@dataclass(frozen=True)
class Document:
    """A proof plus its checking context.

    ``logic`` and ``assumptions`` are None when the file omits them;
    the command line fills in defaults or overrides.  Exactly one of
    ``nd``/``hilbert`` is set, matching ``kind``.
    """

    kind: str  # "nd" | "hilbert"
    logic: LogicSpec | None
    assumptions: tuple[Formula, ...] | None
    expect: str | None  # "accept" | "reject" | None
    nd: NDNode | None = None
    hilbert: HilbertProof | None = None


def parse_document(text: str) -> Document:
    expr = _read_sexpr(text)
    if not (isinstance(expr, list) and expr and expr[0] == "document"):
        raise DocumentError("input must be a (document ...) form")
    logic: LogicSpec | None = None
    kind: str | None = None
    assumptions: tuple[Formula, ...] | None = None
    expect: str | None = None
    proof: SExpr | None = None
    seen: set[str] = set()
    for clause in expr[1:]:
        if not (isinstance(clause, list) and clause and isinstance(clause[0], str)):
            raise DocumentError(f"bad document clause: {clause!r}")
        head = str(clause[0])
        if head in seen:
            raise DocumentError(f"duplicate ({head} ...) clause")
        seen.add(head)
        args = clause[1:]
        if head == "logic":
            if len(args) != 1 or not isinstance(args[0], str):
                raise DocumentError("(logic NAME) takes one name")
            try:
                logic = parse_logic(str(args[0]))
            except ValueError as err:
                raise DocumentError(str(err)) from None
        elif head == "kind":
            if len(args) != 1 or args[0] not in ("nd", "hilbert"):
                raise DocumentError("(kind ...) must be nd or hilbert")
            kind = str(args[0])
        elif head == "assumptions":
            assumptions = tuple(_formula(x, "assumption") for x in args)
        elif head == "expect":
            if len(args) != 1 or args[0] not in ("accept", "reject"):
                raise DocumentError("(expect ...) must be accept or reject")
            expect = str(args[0])
        elif head == "proof":
            proof = list(args)
        else:
            raise DocumentError(f"unknown document clause {head!r}")
    if kind is None:
        raise DocumentError("document is missing its (kind ...) clause")
    if proof is None:
        raise DocumentError("document is missing its (proof ...) clause")
    if kind == "nd":
        if len(proof) != 1:
            raise DocumentError("an nd proof clause holds exactly one derivation")
        return Document(kind, logic, assumptions, expect, nd=parse_nd_proof(proof[0]))
    return Document(
        kind, logic, assumptions, expect, hilbert=parse_hilbert_proof(proof)
    )


def render_document(doc: Document) -> str:
    out = ["(document"]
    if doc.logic is not None:
        out.append(f"  (logic {doc.logic.name})")
    out.append(f"  (kind {doc.kind})")
    if doc.assumptions is not None:
        inner = " ".join(f'"{format_formula(f)}"' for f in doc.assumptions)
        out.append(f"  (assumptions {inner})" if inner else "  (assumptions)")
    if doc.expect is not None:
        out.append(f"  (expect {doc.expect})")
    if doc.kind == "nd":
        assert doc.nd is not None
        out.append("  (proof")
        out.append(render_nd_proof(doc.nd, indent=2) + "))")
    else:
        assert doc.hilbert is not None
        out.append("  (proof")
        out.append(render_hilbert_proof(doc.hilbert, indent=2) + "))")
    return "\n".join(out) + "\n"
