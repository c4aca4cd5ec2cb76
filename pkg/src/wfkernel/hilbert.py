"""Hilbert-style proofs over the weak implication base, with a restricted
rule regime.

A proof is a sequence of lines.  Each line is an axiom instance, an
assumption, or a rule application referring back to earlier lines.  The
distinguishing feature of the system is that most rules only apply to
premises that were derived without touching any assumption: such lines
are called *independent* here (their ``depends`` flag is False).  Only
conjunction introduction works on arbitrary lines, and modus ponens
tolerates a dependent minor premise as long as the implication itself
is independent.

``weak_deduction_export`` turns an accepted proof from assumptions
A1..An into an assumption-free proof of A1 & (A2 & ... & An) -> B, and
``weak_deduction_import`` goes the other way.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .diagnostics import Diagnostic
from .formula import And, Atom, Bottom, Formula, Imp, Or, format_formula, iff
from .logic import (
    EXT_C,
    EXT_CHAT,
    EXT_D,
    EXT_DHAT,
    EXT_I,
    EXT_N,
    EXT_N2,
    LogicSpec,
)

__all__ = [
    "SchemaId",
    "RuleId",
    "Assumption",
    "AxiomUse",
    "RuleApp",
    "Justification",
    "Line",
    "HilbertProof",
    "HilbertReport",
    "available_schemas",
    "available_rules",
    "schema_template",
    "match_schema",
    "instantiate_schema",
    "check_hilbert",
    "ExportError",
    "fold_assumptions",
    "weak_deduction_export",
    "weak_deduction_import",
]


class SchemaId(str, enum.Enum):
    """Axiom schema identifiers."""

    AX1 = "Ax1"
    AX2 = "Ax2"
    AX3 = "Ax3"
    AX4 = "Ax4"
    AX7 = "Ax7"
    AX8 = "Ax8"
    AX14 = "Ax14"
    AX_I = "AxI"
    AX_C = "AxC"
    AX_D = "AxD"
    AX_CHAT = "AxChat"
    AX_DHAT = "AxDhat"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


class RuleId(str, enum.Enum):
    """Inference rule identifiers."""

    MP = "MP"
    AF = "AF"
    TRANS = "Trans"
    CONJ_IMP = "ConjImp"
    DISJ_IMP = "DisjImp"
    CONJ = "Conj"
    CONGR = "Congr"
    RULE_N = "RuleN"
    RULE_N2 = "RuleN2"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


_A = Atom("A")
_B = Atom("B")
_C = Atom("C")

# Schema templates.  Every atom occurring in a template is a metavariable.
_TEMPLATES: dict[SchemaId, Formula] = {
    SchemaId.AX1: Imp(_A, Or(_A, _B)),
    SchemaId.AX2: Imp(_B, Or(_A, _B)),
    SchemaId.AX3: Imp(And(_A, _B), _A),
    SchemaId.AX4: Imp(And(_A, _B), _B),
    SchemaId.AX7: Imp(And(_A, Or(_B, _C)), Or(And(_A, _B), And(_A, _C))),
    SchemaId.AX8: Imp(_A, _A),
    SchemaId.AX14: Imp(Bottom(), _A),
    SchemaId.AX_I: Imp(And(Imp(_A, _B), Imp(_B, _C)), Imp(_A, _C)),
    SchemaId.AX_C: Imp(And(Imp(_A, _B), Imp(_A, _C)), Imp(_A, And(_B, _C))),
    SchemaId.AX_D: Imp(And(Imp(_A, _C), Imp(_B, _C)), Imp(Or(_A, _B), _C)),
    SchemaId.AX_CHAT: Imp(Imp(_A, And(_B, _C)), And(Imp(_A, _B), Imp(_A, _C))),
    SchemaId.AX_DHAT: Imp(Imp(Or(_A, _B), _C), And(Imp(_A, _C), Imp(_B, _C))),
}

_SCHEMA_NEEDS: dict[SchemaId, str] = {
    SchemaId.AX_I: EXT_I,
    SchemaId.AX_C: EXT_C,
    SchemaId.AX_D: EXT_D,
    SchemaId.AX_CHAT: EXT_CHAT,
    SchemaId.AX_DHAT: EXT_DHAT,
}

_RULE_NEEDS: dict[RuleId, str] = {
    RuleId.RULE_N: EXT_N,
    RuleId.RULE_N2: EXT_N2,
}

RULE_ARITY: dict[RuleId, int] = {
    RuleId.MP: 2,
    RuleId.AF: 1,
    RuleId.TRANS: 2,
    RuleId.CONJ_IMP: 2,
    RuleId.DISJ_IMP: 2,
    RuleId.CONJ: 2,
    RuleId.CONGR: 2,
    RuleId.RULE_N: 4,
    RuleId.RULE_N2: 2,
}


def available_schemas(logic: LogicSpec) -> frozenset[SchemaId]:
    """Axiom schemas usable in the given logic."""
    out = {s for s in SchemaId if s not in _SCHEMA_NEEDS}
    for schema, ext in _SCHEMA_NEEDS.items():
        if logic.has(ext):
            out.add(schema)
    return frozenset(out)


def available_rules(logic: LogicSpec) -> frozenset[RuleId]:
    """Inference rules usable in the given logic."""
    out = {r for r in RuleId if r not in _RULE_NEEDS}
    for rule, ext in _RULE_NEEDS.items():
        if logic.has(ext):
            out.add(rule)
    return frozenset(out)


def schema_template(schema: SchemaId) -> Formula:
    return _TEMPLATES[schema]


def match_schema(schema: SchemaId, formula: Formula) -> dict[str, Formula] | None:
    """Match ``formula`` against a schema template.

    Returns the metavariable assignment on success, None otherwise.
    """
    binding: dict[str, Formula] = {}

    def walk(tpl: Formula, f: Formula) -> bool:
        match tpl:
            case Atom(name):
                seen = binding.get(name)
                if seen is None:
                    binding[name] = f
                    return True
                return seen == f
            case Bottom():
                return isinstance(f, Bottom)
            case And(l, r):
                return isinstance(f, And) and walk(l, f.left) and walk(r, f.right)
            case Or(l, r):
                return isinstance(f, Or) and walk(l, f.left) and walk(r, f.right)
            case Imp(l, r):
                return isinstance(f, Imp) and walk(l, f.left) and walk(r, f.right)
        raise AssertionError(f"unreachable template node: {tpl!r}")

    if walk(_TEMPLATES[schema], formula):
        return binding
    return None


def instantiate_schema(schema: SchemaId, binding: Mapping[str, Formula]) -> Formula:
    """Substitute metavariables into a schema template."""

    def subst(tpl: Formula) -> Formula:
        match tpl:
            case Atom(name):
                try:
                    return binding[name]
                except KeyError:
                    raise ValueError(f"schema {schema.value} needs metavariable {name}") from None
            case Bottom():
                return tpl
            case And(l, r):
                return And(subst(l), subst(r))
            case Or(l, r):
                return Or(subst(l), subst(r))
            case Imp(l, r):
                return Imp(subst(l), subst(r))
        raise AssertionError(f"unreachable template node: {tpl!r}")

    return subst(_TEMPLATES[schema])


@dataclass(frozen=True, slots=True)
class Assumption:
    """The line restates one of the ambient assumptions."""


@dataclass(frozen=True, slots=True)
class AxiomUse:
    """The line is an instance of an axiom schema.

    ``binding`` optionally pins the intended instantiation; when absent
    the checker infers one by matching.
    """

    schema: SchemaId
    binding: tuple[tuple[str, Formula], ...] | None = None


@dataclass(frozen=True, slots=True)
class RuleApp:
    """The line follows from earlier lines by a rule.

    Premise indices are zero-based positions in the line sequence and
    must point strictly backwards.
    """

    rule: RuleId
    premises: tuple[int, ...]


Justification = Union[Assumption, AxiomUse, RuleApp]


@dataclass(frozen=True, slots=True)
class Line:
    formula: Formula
    just: Justification


@dataclass(frozen=True)
class HilbertProof:
    lines: tuple[Line, ...]

    @staticmethod
    def of(lines: Iterable[Line]) -> "HilbertProof":
        return HilbertProof(tuple(lines))

    @property
    def conclusion(self) -> Formula:
        if not self.lines:
            raise ValueError("empty proof has no conclusion")
        return self.lines[-1].formula

    def depends_flags(self) -> tuple[bool, ...]:
        """Per-line dependence on assumptions.

        A line depends iff it is an assumption or any of its premises
        depends.  Out-of-range premise references are ignored here; the
        checker reports them separately.
        """
        flags: list[bool] = []
        for i, line in enumerate(self.lines):
            match line.just:
                case Assumption():
                    flags.append(True)
                case AxiomUse():
                    flags.append(False)
                case RuleApp(_, premises):
                    flags.append(any(flags[p] for p in premises if 0 <= p < i))
        return tuple(flags)


@dataclass(frozen=True)
class HilbertReport:
    accepted: bool
    conclusion: Formula | None
    depends: bool
    depends_flags: tuple[bool, ...]
    diagnostics: tuple[Diagnostic, ...]


def _fmt(f: Formula) -> str:
    return format_formula(f)


def _check_rule_shape(
    rule: RuleId, premises: Sequence[Formula], concl: Formula
) -> str | None:
    """Validate a rule application; return an error message or None.

    Premise order is fixed per rule (minor before major for MP).
    """
    match rule:
        case RuleId.MP:
            minor, major = premises
            if major != Imp(minor, concl):
                return (
                    f"major premise must be {_fmt(Imp(minor, concl))}, "
                    f"got {_fmt(major)}"
                )
        case RuleId.AF:
            (prem,) = premises
            if not (isinstance(concl, Imp) and concl.right == prem):
                return f"conclusion must be an implication ending in {_fmt(prem)}"
        case RuleId.TRANS:
            p1, p2 = premises
            if not (isinstance(p1, Imp) and isinstance(p2, Imp)):
                return "both premises must be implications"
            if p1.right != p2.left:
                return (
                    f"premises do not chain: {_fmt(p1)} then {_fmt(p2)}"
                )
            if concl != Imp(p1.left, p2.right):
                return f"conclusion must be {_fmt(Imp(p1.left, p2.right))}"
        case RuleId.CONJ_IMP:
            p1, p2 = premises
            if not (isinstance(p1, Imp) and isinstance(p2, Imp)):
                return "both premises must be implications"
            if p1.left != p2.left:
                return "premises must share their antecedent"
            if concl != Imp(p1.left, And(p1.right, p2.right)):
                return (
                    "conclusion must be "
                    f"{_fmt(Imp(p1.left, And(p1.right, p2.right)))}"
                )
        case RuleId.DISJ_IMP:
            p1, p2 = premises
            if not (isinstance(p1, Imp) and isinstance(p2, Imp)):
                return "both premises must be implications"
            if p1.right != p2.right:
                return "premises must share their consequent"
            if concl != Imp(Or(p1.left, p2.left), p1.right):
                return (
                    "conclusion must be "
                    f"{_fmt(Imp(Or(p1.left, p2.left), p1.right))}"
                )
        case RuleId.CONJ:
            p1, p2 = premises
            if concl != And(p1, p2):
                return f"conclusion must be {_fmt(And(p1, p2))}"
        case RuleId.CONGR:
            pair1 = _split_iff(premises[0])
            pair2 = _split_iff(premises[1])
            if pair1 is None or pair2 is None:
                return "both premises must be biconditionals (A -> B) & (B -> A)"
            a, b = pair1
            c, d = pair2
            if concl != iff(Imp(a, c), Imp(b, d)):
                return f"conclusion must be {_fmt(iff(Imp(a, c), Imp(b, d)))}"
        case RuleId.RULE_N:
            p1, p2, p3, p4 = premises
            if not (isinstance(p1, Imp) and isinstance(p1.right, Or)):
                return "first premise must have shape A -> B | C"
            a, b, c = p1.left, p1.right.left, p1.right.right
            if not (isinstance(p2, Imp) and isinstance(p2.right, Or)):
                return "second premise must have shape C -> A | D"
            if p2.left != c or p2.right.left != a:
                return "second premise must be C -> A | D for the C and A above"
            d = p2.right.right
            if p3 != Imp(And(a, d), b):
                return f"third premise must be {_fmt(Imp(And(a, d), b))}"
            if p4 != Imp(And(c, b), d):
                return f"fourth premise must be {_fmt(Imp(And(c, b), d))}"
            if concl != iff(Imp(a, b), Imp(c, d)):
                return f"conclusion must be {_fmt(iff(Imp(a, b), Imp(c, d)))}"
        case RuleId.RULE_N2:
            p1, p2 = premises
            if not (isinstance(p1, Imp) and isinstance(p1.right, Or)):
                return "first premise must have shape C -> A | D"
            c, a, d = p1.left, p1.right.left, p1.right.right
            if not (
                isinstance(p2, Imp)
                and isinstance(p2.left, And)
                and p2.left.left == c
                and p2.right == d
            ):
                return "second premise must have shape (C & B) -> D for the C and D above"
            b = p2.left.right
            if concl != Imp(Imp(a, b), Imp(c, d)):
                return f"conclusion must be {_fmt(Imp(Imp(a, b), Imp(c, d)))}"
    return None


def _split_iff(f: Formula) -> tuple[Formula, Formula] | None:
    """Recognize the conjunction form a biconditional expands to."""
    if (
        isinstance(f, And)
        and isinstance(f.left, Imp)
        and isinstance(f.right, Imp)
        and f.left.left == f.right.right
        and f.left.right == f.right.left
    ):
        return f.left.left, f.left.right
    return None


def check_hilbert(
    proof: HilbertProof,
    logic: LogicSpec | None = None,
    assumptions: Iterable[Formula] = (),
) -> HilbertReport:
    """Check a Hilbert-style proof under the restricted rule regime.

    Every diagnostic is collected rather than stopping at the first
    failure.  The rule restrictions are:

    * Conj applies to any lines.
    * MP requires its major (implication) premise to be independent.
    * Every other rule requires all premises to be independent.
    """
    logic = logic if logic is not None else LogicSpec()
    allowed = frozenset(assumptions)
    schemas = available_schemas(logic)
    rules = available_rules(logic)
    diags: list[Diagnostic] = []
    flags = proof.depends_flags()

    if not proof.lines:
        diags.append(Diagnostic("proof", "empty-proof", "proof has no lines"))
        return HilbertReport(False, None, False, (), tuple(diags))

    for i, line in enumerate(proof.lines):
        where = f"line {i + 1}"

        def bad(code: str, message: str) -> None:
            diags.append(Diagnostic(where, code, message))

        match line.just:
            case Assumption():
                if line.formula not in allowed:
                    bad(
                        "unknown-assumption",
                        f"{_fmt(line.formula)} is not among the stated assumptions",
                    )
            case AxiomUse(schema, binding):
                if schema not in schemas:
                    bad(
                        "schema-unavailable",
                        f"{schema.value} is not part of logic {logic.name}",
                    )
                elif binding is not None:
                    expect = instantiate_schema(schema, dict(binding))
                    if expect != line.formula:
                        bad(
                            "axiom-mismatch",
                            f"binding instantiates {schema.value} to "
                            f"{_fmt(expect)}, not {_fmt(line.formula)}",
                        )
                elif match_schema(schema, line.formula) is None:
                    bad(
                        "axiom-mismatch",
                        f"{_fmt(line.formula)} is not an instance of {schema.value}",
                    )
            case RuleApp(rule, premises):
                if rule not in rules:
                    bad(
                        "rule-unavailable",
                        f"{rule.value} is not part of logic {logic.name}",
                    )
                    continue
                if len(premises) != RULE_ARITY[rule]:
                    bad(
                        "bad-arity",
                        f"{rule.value} takes {RULE_ARITY[rule]} premises, "
                        f"got {len(premises)}",
                    )
                    continue
                if any(not (0 <= p < i) for p in premises):
                    bad(
                        "bad-premise-index",
                        f"premises of line {i + 1} must point to earlier lines",
                    )
                    continue
                err = _check_rule_shape(
                    rule, [proof.lines[p].formula for p in premises], line.formula
                )
                if err is not None:
                    bad("rule-shape", f"{rule.value}: {err}")
                if rule is RuleId.CONJ:
                    pass  # no independence restriction
                elif rule is RuleId.MP:
                    if flags[premises[1]]:
                        bad(
                            "mp-major-depends",
                            "major premise of MP must not depend on assumptions",
                        )
                else:
                    for p in premises:
                        if flags[p]:
                            bad(
                                "premise-depends",
                                f"{rule.value} requires independent premises, "
                                f"but line {p + 1} depends on assumptions",
                            )

    accepted = not diags
    return HilbertReport(
        accepted=accepted,
        conclusion=proof.conclusion if accepted else None,
        depends=flags[-1] if accepted else False,
        depends_flags=flags,
        diagnostics=tuple(diags),
    )


class ExportError(Exception):
    """The deduction transform was applied to an unsuitable proof."""


class _Builder:
    """Accumulates lines, returning each new line's index."""

    def __init__(self) -> None:
        self.lines: list[Line] = []

    def axiom(self, schema: SchemaId, formula: Formula) -> int:
        self.lines.append(Line(formula, AxiomUse(schema)))
        return len(self.lines) - 1

    def rule(self, rule: RuleId, premises: Sequence[int], formula: Formula) -> int:
        self.lines.append(Line(formula, RuleApp(rule, tuple(premises))))
        return len(self.lines) - 1

    def assume(self, formula: Formula) -> int:
        self.lines.append(Line(formula, Assumption()))
        return len(self.lines) - 1

    def copy(self, line: Line, remap: Mapping[int, int]) -> int:
        just = line.just
        if isinstance(just, RuleApp):
            just = RuleApp(just.rule, tuple(remap[p] for p in just.premises))
        self.lines.append(Line(line.formula, just))
        return len(self.lines) - 1


def fold_assumptions(assumptions: Sequence[Formula]) -> Formula:
    """A1, .., An  to  A1 & (A2 & (.. & An)).

    The deduction transform packages assumption lists as one formula in
    exactly this right-nested shape.
    """
    if not assumptions:
        raise ValueError("cannot fold an empty assumption list")
    acc = assumptions[-1]
    for a in reversed(assumptions[:-1]):
        acc = And(a, acc)
    return acc


def weak_deduction_export(
    proof: HilbertProof,
    assumptions: Sequence[Formula],
    logic: LogicSpec | None = None,
) -> HilbertProof:
    """Rebuild a proof from assumptions as an assumption-free proof.

    Given an accepted proof of B from A1..An, produces an accepted
    proof, from no assumptions, of A1 & (A2 & (.. & An)) -> B.  The
    assumption order given here fixes the shape of the conjunction.
    Duplicate assumptions collapse to their first occurrence.  The
    output is not minimized; unused assumptions are fine.
    """
    logic = logic if logic is not None else LogicSpec()
    seen: list[Formula] = []
    for a in assumptions:
        if a not in seen:
            seen.append(a)
    if not seen:
        raise ExportError("need at least one assumption to export")
    report = check_hilbert(proof, logic, seen)
    if not report.accepted:
        raise ExportError(
            "refusing to export a proof that does not check: "
            + "; ".join(str(d) for d in report.diagnostics)
        )

    n = len(seen)
    # tails[i] = A_{i+1} & (.. & A_n); tails[0] is the full conjunction K.
    tails: list[Formula] = [seen[-1]]
    for a in reversed(seen[:-1]):
        tails.append(And(a, tails[-1]))
    tails.reverse()
    key = tails[0]

    out = _Builder()
    flags = proof.depends_flags()

    # Pass 1: replay every independent line verbatim.  Premises of an
    # independent line are independent themselves (assumption lines are
    # dependent, and both Conj and MP propagate dependence), so the
    # copied prefix is self-contained.
    copy_at: dict[int, int] = {}
    for i, line in enumerate(proof.lines):
        if not flags[i]:
            copy_at[i] = out.copy(line, copy_at)

    # K -> tails[i] chains, shared by the projections.
    chain_at: dict[int, int] = {0: -1}  # index 0 never consulted

    def chain(i: int) -> int:
        # theorem K -> tails[i] for i >= 1
        if i not in chain_at:
            step = out.axiom(SchemaId.AX4, Imp(tails[i - 1], tails[i]))
            if i == 1:
                chain_at[i] = step
            else:
                chain_at[i] = out.rule(
                    RuleId.TRANS, (chain(i - 1), step), Imp(key, tails[i])
                )
        return chain_at[i]

    proj_at: dict[int, int] = {}

    def projection(i: int) -> int:
        # theorem K -> A_{i+1}
        if i not in proj_at:
            if n == 1:
                proj_at[i] = out.axiom(SchemaId.AX8, Imp(key, key))
            elif i == n - 1:
                proj_at[i] = chain(i)
            else:
                head = out.axiom(SchemaId.AX3, Imp(tails[i], seen[i]))
                if i == 0:
                    proj_at[i] = head
                else:
                    proj_at[i] = out.rule(
                        RuleId.TRANS, (chain(i), head), Imp(key, seen[i])
                    )
        return proj_at[i]

    img_at: dict[int, int] = {}

    def image(i: int) -> int:
        # theorem K -> formula(line i)
        if i in img_at:
            return img_at[i]
        line = proof.lines[i]
        target = Imp(key, line.formula)
        if not flags[i]:
            idx = out.rule(RuleId.AF, (copy_at[i],), target)
        else:
            match line.just:
                case Assumption():
                    idx = projection(seen.index(line.formula))
                case RuleApp(RuleId.CONJ, (p1, p2)):
                    idx = out.rule(RuleId.CONJ_IMP, (image(p1), image(p2)), target)
                case RuleApp(RuleId.MP, (minor, major)):
                    idx = out.rule(RuleId.TRANS, (image(minor), copy_at[major]), target)
                case _:
                    raise ExportError(
                        f"line {i + 1} depends on assumptions but was not built "
                        "by Conj or MP; the checker should have rejected this"
                    )
        img_at[i] = idx
        return idx

    last = image(len(proof.lines) - 1)
    if last != len(out.lines) - 1:
        # The conclusion's image can be an already-emitted line (e.g. a
        # pure projection); restate it so it is the final line.
        prem = out.lines[last].formula
        assert isinstance(prem, Imp)
        out.rule(
            RuleId.TRANS,
            (out.axiom(SchemaId.AX8, Imp(prem.left, prem.left)), last),
            prem,
        )
    result = HilbertProof.of(out.lines)
    final = check_hilbert(result, logic)
    if not final.accepted:  # pragma: no cover - internal consistency net
        raise ExportError(
            "export produced a proof that does not check: "
            + "; ".join(str(d) for d in final.diagnostics)
        )
    return result


def weak_deduction_import(
    proof: HilbertProof, logic: LogicSpec | None = None
) -> HilbertProof:
    """Use an implication theorem as a proof from its antecedent.

    Given an accepted assumption-free proof of A -> B, returns an
    accepted proof of B from the single assumption A.
    """
    logic = logic if logic is not None else LogicSpec()
    report = check_hilbert(proof, logic)
    if not report.accepted:
        raise ExportError(
            "refusing to import a proof that does not check: "
            + "; ".join(str(d) for d in report.diagnostics)
        )
    concl = proof.conclusion
    if not isinstance(concl, Imp):
        raise ExportError(f"conclusion {_fmt(concl)} is not an implication")
    lines = list(proof.lines)
    major = len(lines) - 1
    lines.append(Line(concl.left, Assumption()))
    lines.append(Line(concl.right, RuleApp(RuleId.MP, (major + 1, major))))
    return HilbertProof.of(lines)
