"""Natural deduction trees with labelled discharge.

A derivation is a tree whose leaves are assumptions (optionally
labelled for discharge) and whose inner nodes apply rules.  Conclusions
are not stored; the checker recomputes them bottom-up.  The system is
weaker than intuitionistic natural deduction in three ways:

* implication introduction may only discharge; the subderivation must
  have no other open assumptions,
* the major premise of implication elimination must be a closed
  subderivation, so a bare hypothesis A -> B can never feed ImpE,
* the remaining implication-building rules each demand closed
  subderivations apart from their designated dischargeable hypotheses.

Labels are plain ints.  Each label may be declared by at most one node
in a tree, and a labelled leaf must sit inside the declaring node's
binding region with the declared formula.  Checking never stops at the
first failure; diagnostics accumulate with tree paths.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Union

from .diagnostics import Diagnostic
from .formula import Bottom, Formula, Imp, And, Or, format_formula
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
    "NDRuleId",
    "Leaf",
    "RuleNode",
    "NDNode",
    "Path",
    "NDReport",
    "rule_arity",
    "available_nd_rules",
    "check_nd",
    "open_assumptions",
    "node_at",
    "subnodes",
    "labels_in",
    "max_label",
    "freshen",
    "graft",
    "graft_labeled",
    "ELIMS",
    "INTROS",
    "MAJOR_CHILD",
    "imp_i",
    "imp_e",
    "and_i",
    "and_e1",
    "and_e2",
    "or_i1",
    "or_i2",
    "or_e",
    "bot_e",
    "imp_i1",
    "imp_i2",
    "imp_in",
    "imp_in2",
    "imp_i_chat",
    "imp_i_dhat",
    "imp_i_conj",
    "imp_i_disj",
    "imp_i_trans",
]


class NDRuleId(str, enum.Enum):
    IMP_I = "ImpI"
    IMP_E = "ImpE"
    AND_I = "AndI"
    AND_E1 = "AndE1"
    AND_E2 = "AndE2"
    OR_I1 = "OrI1"
    OR_I2 = "OrI2"
    OR_E = "OrE"
    BOT_E = "BotE"
    IMP_I1 = "ImpI1"
    IMP_I2 = "ImpI2"
    IMP_IN = "ImpIN"
    IMP_IN2 = "ImpIN2"
    IMP_I_CHAT = "ImpIHatC"
    IMP_I_DHAT = "ImpIHatD"
    IMP_I_CONJ = "ImpIConj"
    IMP_I_DISJ = "ImpIDisj"
    IMP_I_TRANS = "ImpITrans"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


@dataclass(frozen=True, slots=True)
class Leaf:
    """An assumption occurrence.  ``label`` is None for a plain open
    assumption, or an int tying the leaf to a discharging node."""

    formula: Formula
    label: int | None = None


@dataclass(frozen=True, slots=True)
class RuleNode:
    """A rule application.

    ``labels`` and ``formulas`` carry the rule's parameters in a fixed
    per-rule order; see the builder functions at the bottom of the
    module for the exact layout.
    """

    rule: NDRuleId
    labels: tuple[int, ...]
    formulas: tuple[Formula, ...]
    children: tuple["NDNode", ...]


NDNode = Union[Leaf, RuleNode]
Path = tuple[int, ...]

# (label count, formula-parameter count, child count) per rule.
_ARITY: dict[NDRuleId, tuple[int, int, int]] = {
    NDRuleId.IMP_I: (1, 1, 1),
    NDRuleId.IMP_E: (0, 0, 2),
    NDRuleId.AND_I: (0, 0, 2),
    NDRuleId.AND_E1: (0, 0, 1),
    NDRuleId.AND_E2: (0, 0, 1),
    NDRuleId.OR_I1: (0, 1, 1),
    NDRuleId.OR_I2: (0, 1, 1),
    NDRuleId.OR_E: (2, 0, 3),
    NDRuleId.BOT_E: (0, 1, 1),
    NDRuleId.IMP_I1: (2, 1, 2),
    NDRuleId.IMP_I2: (2, 1, 2),
    NDRuleId.IMP_IN: (4, 0, 4),
    NDRuleId.IMP_IN2: (2, 2, 2),
    NDRuleId.IMP_I_CHAT: (1, 2, 1),
    NDRuleId.IMP_I_DHAT: (1, 2, 1),
    NDRuleId.IMP_I_CONJ: (0, 0, 2),
    NDRuleId.IMP_I_DISJ: (0, 0, 2),
    NDRuleId.IMP_I_TRANS: (0, 0, 2),
}

_RULE_NEEDS: dict[NDRuleId, str] = {
    NDRuleId.IMP_IN: EXT_N,
    NDRuleId.IMP_IN2: EXT_N2,
    NDRuleId.IMP_I_TRANS: EXT_I,
    NDRuleId.IMP_I_CHAT: EXT_CHAT,
    NDRuleId.IMP_I_DHAT: EXT_DHAT,
    NDRuleId.IMP_I_CONJ: EXT_C,
    NDRuleId.IMP_I_DISJ: EXT_D,
}

# ImpI1/ImpI2 are only primitive in logics where nothing stronger
# subsumes them; any of I, N, N2 replaces the pair.
_SUBSUMES_I12 = frozenset({EXT_I, EXT_N, EXT_N2})

# Elimination rules and the child position of their major premise.
MAJOR_CHILD: dict[NDRuleId, int] = {
    NDRuleId.IMP_E: 1,
    NDRuleId.AND_E1: 0,
    NDRuleId.AND_E2: 0,
    NDRuleId.OR_E: 0,
    NDRuleId.BOT_E: 0,
}

ELIMS = frozenset(MAJOR_CHILD)
INTROS = frozenset(NDRuleId) - ELIMS


def rule_arity(rule: NDRuleId) -> tuple[int, int, int]:
    """(label count, formula-parameter count, child count) for a rule."""
    return _ARITY[rule]


def available_nd_rules(logic: LogicSpec) -> frozenset[NDRuleId]:
    """Rules usable in the given logic."""
    out = {r for r in NDRuleId if r not in _RULE_NEEDS and r not in (NDRuleId.IMP_I1, NDRuleId.IMP_I2)}
    if not (logic.extensions & _SUBSUMES_I12):
        out.add(NDRuleId.IMP_I1)
        out.add(NDRuleId.IMP_I2)
    for rule, ext in _RULE_NEEDS.items():
        if logic.has(ext):
            out.add(rule)
    return frozenset(out)


# An open assumption occurrence: (formula, label, path of the leaf).
_OpenLeaf = tuple[Formula, Union[int, None], Path]


@dataclass(frozen=True)
class NDReport:
    accepted: bool
    conclusion: Formula | None
    opens: frozenset[Formula]
    open_leaves: tuple[_OpenLeaf, ...]
    diagnostics: tuple[Diagnostic, ...]
    conclusions: Mapping[Path, Formula | None]


def _fmt(f: Formula) -> str:
    return format_formula(f)


def _where(path: Path) -> str:
    return "node " + (".".join(str(i) for i in path) if path else "root")


class _Checker:
    def __init__(self, logic: LogicSpec, strict_star: bool) -> None:
        self.logic = logic
        self.strict_star = strict_star
        self.allowed = available_nd_rules(logic)
        self.diags: list[Diagnostic] = []
        self.concls: dict[Path, Formula | None] = {}

    def bad(self, path: Path, code: str, message: str) -> None:
        self.diags.append(Diagnostic(_where(path), code, message))

    def declare_labels(self, node: NDNode, path: Path, seen: dict[int, Path]) -> None:
        if isinstance(node, RuleNode):
            for lab in node.labels:
                if lab in seen:
                    self.bad(
                        path,
                        "duplicate-label",
                        f"label {lab} already declared at {_where(seen[lab])}",
                    )
                else:
                    seen[lab] = path
            for i, child in enumerate(node.children):
                self.declare_labels(child, path + (i,), seen)

    def strip(
        self,
        opens: tuple[_OpenLeaf, ...],
        formula: Formula,
        label: int,
        path: Path,
    ) -> tuple[tuple[_OpenLeaf, ...], bool]:
        """Discharge (formula, label) occurrences; flag wrong formulas."""
        kept: list[_OpenLeaf] = []
        hit = False
        for item in opens:
            f, lab, leaf_path = item
            if lab != label:
                kept.append(item)
            elif f == formula:
                hit = True
            else:
                self.bad(
                    leaf_path,
                    "label-formula-mismatch",
                    f"leaf carries label {label} but formula {_fmt(f)}; "
                    f"the label discharges {_fmt(formula)}",
                )
        return tuple(kept), hit

    def require_closed(
        self, opens: tuple[_OpenLeaf, ...], path: Path, rule: NDRuleId, role: str
    ) -> None:
        if opens:
            listing = ", ".join(sorted({_fmt(f) for f, _, _ in opens}))
            self.bad(
                path,
                "closed-subproof-required",
                f"{rule.value} needs its {role} closed, but it leaves open: {listing}",
            )

    def visit(self, node: NDNode, path: Path) -> tuple[Formula | None, tuple[_OpenLeaf, ...]]:
        concl, opens = self._visit(node, path)
        self.concls[path] = concl
        return concl, opens

    def _visit(self, node: NDNode, path: Path) -> tuple[Formula | None, tuple[_OpenLeaf, ...]]:
        if isinstance(node, Leaf):
            return node.formula, ((node.formula, node.label, path),)

        rule = node.rule
        nlab, nfor, nch = _ARITY[rule]
        if (len(node.labels), len(node.formulas), len(node.children)) != (nlab, nfor, nch):
            self.bad(
                path,
                "bad-arity",
                f"{rule.value} takes {nlab} labels, {nfor} formula parameters "
                f"and {nch} children; got {len(node.labels)}/{len(node.formulas)}"
                f"/{len(node.children)}",
            )
            opens_acc: tuple[_OpenLeaf, ...] = ()
            for i, child in enumerate(node.children):
                _, o = self.visit(child, path + (i,))
                opens_acc += o
            return None, opens_acc

        if rule not in self.allowed:
            self.bad(
                path,
                "rule-unavailable",
                f"{rule.value} is not part of logic {self.logic.name}",
            )

        results = [self.visit(child, path + (i,)) for i, child in enumerate(node.children)]
        concls = [c for c, _ in results]
        opens = [o for _, o in results]

        def shape(msg: str) -> tuple[None, tuple[_OpenLeaf, ...]]:
            self.bad(path, "rule-shape", f"{rule.value}: {msg}")
            merged: tuple[_OpenLeaf, ...] = ()
            for o in opens:
                merged += o
            return None, merged

        # A child that already failed yields None; skip shape checks on
        # this node then, but keep propagating opens for label checks.
        if any(c is None for c in concls):
            merged = ()
            for o in opens:
                merged += o
            return None, merged

        match rule:
            case NDRuleId.IMP_I:
                (hyp,) = node.formulas
                (lab,) = node.labels
                remaining, hit = self.strip(opens[0], hyp, lab, path)
                if remaining:
                    listing = ", ".join(sorted({_fmt(f) for f, _, _ in remaining}))
                    self.bad(
                        path,
                        "imp-i-open-assumptions",
                        f"ImpI may only discharge [{_fmt(hyp)}]; still open: {listing}",
                    )
                if self.strict_star and not hit:
                    self.bad(
                        path,
                        "vacuous-discharge",
                        f"strict mode: ImpI discharges no occurrence of {_fmt(hyp)}",
                    )
                return Imp(hyp, concls[0]), remaining

            case NDRuleId.IMP_E:
                minor, major = concls
                if opens[1]:
                    listing = ", ".join(sorted({_fmt(f) for f, _, _ in opens[1]}))
                    self.bad(
                        path,
                        "imp-e-open-major",
                        "the implication feeding ImpE must be derived with "
                        f"no open assumptions; open: {listing}",
                    )
                if not (isinstance(major, Imp) and major.left == minor):
                    return shape(
                        f"major premise {_fmt(major)} does not start from "
                        f"minor premise {_fmt(minor)}"
                    )
                return major.right, opens[0] + opens[1]

            case NDRuleId.AND_I:
                return And(concls[0], concls[1]), opens[0] + opens[1]

            case NDRuleId.AND_E1:
                if not isinstance(concls[0], And):
                    return shape(f"premise {_fmt(concls[0])} is not a conjunction")
                return concls[0].left, opens[0]

            case NDRuleId.AND_E2:
                if not isinstance(concls[0], And):
                    return shape(f"premise {_fmt(concls[0])} is not a conjunction")
                return concls[0].right, opens[0]

            case NDRuleId.OR_I1:
                (other,) = node.formulas
                return Or(concls[0], other), opens[0]

            case NDRuleId.OR_I2:
                (other,) = node.formulas
                return Or(other, concls[0]), opens[0]

            case NDRuleId.OR_E:
                lab_a, lab_b = node.labels
                major, m1, m2 = concls
                if not isinstance(major, Or):
                    return shape(f"major premise {_fmt(major)} is not a disjunction")
                left1, _ = self.strip(opens[1], major.left, lab_a, path)
                left2, _ = self.strip(opens[2], major.right, lab_b, path)
                if m1 != m2:
                    return shape(
                        f"minor premises conclude {_fmt(m1)} and {_fmt(m2)}; "
                        "they must agree"
                    )
                return m1, opens[0] + left1 + left2

            case NDRuleId.BOT_E:
                (target,) = node.formulas
                if not isinstance(concls[0], Bottom):
                    return shape(f"premise {_fmt(concls[0])} is not absurdity")
                return target, opens[0]

            case NDRuleId.IMP_I1 | NDRuleId.IMP_I2:
                lab_b, lab_d = node.labels
                (a,) = node.formulas
                d, b = concls
                left1, _ = self.strip(opens[0], b, lab_b, path)
                left2, _ = self.strip(opens[1], d, lab_d, path)
                self.require_closed(left1, path, rule, "first subderivation")
                self.require_closed(left2, path, rule, "second subderivation")
                if rule is NDRuleId.IMP_I1:
                    return Imp(Imp(a, b), Imp(a, d)), left1 + left2
                return Imp(Imp(b, a), Imp(d, a)), left1 + left2

            case NDRuleId.IMP_IN:
                lab_a, lab_d, lab_c, lab_b = node.labels
                b = concls[1]
                d = concls[3]
                if not (isinstance(concls[0], Or) and concls[0].right == b):
                    return shape(
                        f"first child must conclude C | B with B = {_fmt(b)}, "
                        f"got {_fmt(concls[0])}"
                    )
                c = concls[0].left
                if not (isinstance(concls[2], Or) and concls[2].right == d):
                    return shape(
                        f"third child must conclude A | D with D = {_fmt(d)}, "
                        f"got {_fmt(concls[2])}"
                    )
                a = concls[2].left
                left1, _ = self.strip(opens[0], a, lab_a, path)
                rest2, _ = self.strip(opens[1], a, lab_a, path)
                left2, _ = self.strip(rest2, d, lab_d, path)
                left3, _ = self.strip(opens[2], c, lab_c, path)
                rest4, _ = self.strip(opens[3], c, lab_c, path)
                left4, _ = self.strip(rest4, b, lab_b, path)
                self.require_closed(left1, path, rule, "first subderivation")
                self.require_closed(left2, path, rule, "second subderivation")
                self.require_closed(left3, path, rule, "third subderivation")
                self.require_closed(left4, path, rule, "fourth subderivation")
                return Imp(Imp(a, b), Imp(c, d)), left1 + left2 + left3 + left4

            case NDRuleId.IMP_IN2:
                lab_c, lab_b = node.labels
                b, c = node.formulas
                if not isinstance(concls[0], Or):
                    return shape(
                        f"first child must conclude A | D, got {_fmt(concls[0])}"
                    )
                a, d = concls[0].left, concls[0].right
                if concls[1] != d:
                    return shape(
                        f"second child must conclude {_fmt(d)}, got {_fmt(concls[1])}"
                    )
                left1, _ = self.strip(opens[0], c, lab_c, path)
                rest2, _ = self.strip(opens[1], c, lab_c, path)
                left2, _ = self.strip(rest2, b, lab_b, path)
                self.require_closed(left1, path, rule, "first subderivation")
                self.require_closed(left2, path, rule, "second subderivation")
                return Imp(Imp(a, b), Imp(c, d)), left1 + left2

            case NDRuleId.IMP_I_CHAT:
                (lab,) = node.labels
                hyp, ctx = node.formulas
                left, _ = self.strip(opens[0], hyp, lab, path)
                self.require_closed(left, path, rule, "subderivation")
                return Imp(Imp(ctx, hyp), Imp(ctx, concls[0])), left

            case NDRuleId.IMP_I_DHAT:
                (lab,) = node.labels
                hyp, ctx = node.formulas
                left, _ = self.strip(opens[0], hyp, lab, path)
                self.require_closed(left, path, rule, "subderivation")
                return Imp(Imp(concls[0], ctx), Imp(hyp, ctx)), left

            case NDRuleId.IMP_I_CONJ:
                p1, p2 = concls
                if not (isinstance(p1, Imp) and isinstance(p2, Imp) and p1.left == p2.left):
                    return shape(
                        "premises must be implications sharing an antecedent, "
                        f"got {_fmt(p1)} and {_fmt(p2)}"
                    )
                return Imp(p1.left, And(p1.right, p2.right)), opens[0] + opens[1]

            case NDRuleId.IMP_I_DISJ:
                p1, p2 = concls
                if not (isinstance(p1, Imp) and isinstance(p2, Imp) and p1.right == p2.right):
                    return shape(
                        "premises must be implications sharing a consequent, "
                        f"got {_fmt(p1)} and {_fmt(p2)}"
                    )
                return Imp(Or(p1.left, p2.left), p1.right), opens[0] + opens[1]

            case NDRuleId.IMP_I_TRANS:
                p1, p2 = concls
                if not (isinstance(p1, Imp) and isinstance(p2, Imp) and p1.right == p2.left):
                    return shape(
                        f"premises do not chain: {_fmt(p1)} then {_fmt(p2)}"
                    )
                return Imp(p1.left, p2.right), opens[0] + opens[1]

        raise AssertionError(f"unhandled rule {rule!r}")  # pragma: no cover


def check_nd(
    root: NDNode,
    logic: LogicSpec | None = None,
    strict_star: bool = False,
) -> NDReport:
    """Check a derivation tree.

    Accepted derivations have only unlabelled open leaves; a labelled
    leaf that survives to the root (its label undeclared, declared
    elsewhere in the tree, or carrying the wrong formula) is an error.
    """
    logic = logic if logic is not None else LogicSpec()
    checker = _Checker(logic, strict_star)
    checker.declare_labels(root, (), {})
    concl, opens = checker.visit(root, ())
    for f, lab, leaf_path in opens:
        if lab is not None:
            checker.bad(
                leaf_path,
                "dangling-label",
                f"leaf [{_fmt(f)}] carries label {lab} but no rule on its "
                "branch discharges it",
            )
    accepted = not checker.diags
    return NDReport(
        accepted=accepted,
        conclusion=concl if accepted else None,
        opens=frozenset(f for f, _, _ in opens),
        open_leaves=opens,
        diagnostics=tuple(checker.diags),
        conclusions=checker.concls,
    )


def open_assumptions(root: NDNode) -> frozenset[Formula]:
    """Formulas of the open leaves, ignoring acceptance."""
    return check_nd(root).opens


def node_at(root: NDNode, path: Path) -> NDNode:
    node = root
    for i in path:
        if not isinstance(node, RuleNode):
            raise ValueError(f"path {path} walks through a leaf")
        node = node.children[i]
    return node


def subnodes(root: NDNode) -> Iterator[tuple[Path, NDNode]]:
    """All (path, node) pairs, parents before children."""

    def walk(node: NDNode, path: Path) -> Iterator[tuple[Path, NDNode]]:
        yield path, node
        if isinstance(node, RuleNode):
            for i, child in enumerate(node.children):
                yield from walk(child, path + (i,))

    return walk(root, ())


def labels_in(root: NDNode) -> frozenset[int]:
    """Every label in the tree, declared or carried by a leaf."""
    out: set[int] = set()
    for _, node in subnodes(root):
        if isinstance(node, Leaf):
            if node.label is not None:
                out.add(node.label)
        else:
            out.update(node.labels)
    return frozenset(out)


def max_label(root: NDNode) -> int:
    """Largest label in the tree, or -1 when there is none."""
    labs = labels_in(root)
    return max(labs) if labs else -1


class _Alloc:
    __slots__ = ("next_label",)

    def __init__(self, start: int) -> None:
        self.next_label = start

    def take(self) -> int:
        v = self.next_label
        self.next_label += 1
        return v


def _relabel(node: NDNode, mapping: dict[int, int], alloc: _Alloc) -> NDNode:
    def rename(lab: int) -> int:
        if lab not in mapping:
            mapping[lab] = alloc.take()
        return mapping[lab]

    if isinstance(node, Leaf):
        if node.label is None:
            return node
        return Leaf(node.formula, rename(node.label))
    return RuleNode(
        node.rule,
        tuple(rename(lab) for lab in node.labels),
        node.formulas,
        tuple(_relabel(c, mapping, alloc) for c in node.children),
    )


def freshen(
    root: NDNode,
    pinned: Mapping[int, int] | None = None,
    start: int | None = None,
) -> NDNode:
    """Copy of ``root`` with every label renamed.

    Labels in ``pinned`` map as given; all others get fresh values from
    ``start`` upward (default: past every label in the tree and in the
    pinned targets).
    """
    pinned = dict(pinned) if pinned else {}
    if start is None:
        start = max([max_label(root), *pinned.values(), -1]) + 1
    return _relabel(root, pinned, _Alloc(start))


def _replace_leaves(
    host: NDNode,
    want: Callable[[Leaf], bool],
    replacement: NDNode,
    pinned: Mapping[int, int],
    alloc: _Alloc,
) -> NDNode:
    if isinstance(host, Leaf):
        if want(host):
            return _relabel(replacement, dict(pinned), alloc)
        return host
    return RuleNode(
        host.rule,
        host.labels,
        host.formulas,
        tuple(_replace_leaves(c, want, replacement, pinned, alloc) for c in host.children),
    )


def graft(host: NDNode, target: Formula, replacement: NDNode) -> NDNode:
    """Substitute a derivation for assumptions.

    Every unlabelled leaf carrying ``target`` becomes a copy of
    ``replacement``; each copy gets fresh labels so the result keeps
    labels globally unique.
    """
    start = max(max_label(host), max_label(replacement)) + 1
    alloc = _Alloc(start)
    return _replace_leaves(
        host,
        lambda leaf: leaf.label is None and leaf.formula == target,
        replacement,
        {},
        alloc,
    )


def graft_labeled(
    host: NDNode,
    label: int,
    replacement: NDNode,
    pinned: Mapping[int, int] | None = None,
) -> NDNode:
    """Substitute a derivation for the leaves carrying ``label``.

    Labels inside each inserted copy are freshened, except those in
    ``pinned``, which map to the given targets in every copy.  Used by
    the reduction steps, where a discharged hypothesis is replaced by
    the derivation of its formula.
    """
    pinned = dict(pinned) if pinned else {}
    start = max([max_label(host), max_label(replacement), *pinned.values(), -1]) + 1
    alloc = _Alloc(start)
    return _replace_leaves(
        host,
        lambda leaf: leaf.label == label,
        replacement,
        pinned,
        alloc,
    )


# --- node builders -------------------------------------------------------
#
# Thin constructors fixing the parameter layout of RuleNode per rule.


def imp_i(label: int, hyp: Formula, child: NDNode) -> RuleNode:
    """Discharge [hyp]@label, concluding hyp -> (child's conclusion)."""
    return RuleNode(NDRuleId.IMP_I, (label,), (hyp,), (child,))


def imp_e(minor: NDNode, major: NDNode) -> RuleNode:
    """From A and (closed) A -> B conclude B.  Children: minor, major."""
    return RuleNode(NDRuleId.IMP_E, (), (), (minor, major))


def and_i(left: NDNode, right: NDNode) -> RuleNode:
    return RuleNode(NDRuleId.AND_I, (), (), (left, right))


def and_e1(child: NDNode) -> RuleNode:
    return RuleNode(NDRuleId.AND_E1, (), (), (child,))


def and_e2(child: NDNode) -> RuleNode:
    return RuleNode(NDRuleId.AND_E2, (), (), (child,))


def or_i1(child: NDNode, right: Formula) -> RuleNode:
    """Conclude (child's conclusion) | right."""
    return RuleNode(NDRuleId.OR_I1, (), (right,), (child,))


def or_i2(left: Formula, child: NDNode) -> RuleNode:
    """Conclude left | (child's conclusion)."""
    return RuleNode(NDRuleId.OR_I2, (), (left,), (child,))


def or_e(
    label_left: int,
    label_right: int,
    major: NDNode,
    minor1: NDNode,
    minor2: NDNode,
) -> RuleNode:
    """Case split on a disjunction A | B.

    label_left discharges [A] in minor1, label_right discharges [B] in
    minor2; both minors must reach the same conclusion.
    """
    return RuleNode(NDRuleId.OR_E, (label_left, label_right), (), (major, minor1, minor2))


def bot_e(target: Formula, child: NDNode) -> RuleNode:
    return RuleNode(NDRuleId.BOT_E, (), (target,), (child,))


def imp_i1(label_b: int, label_d: int, a: Formula, c1: NDNode, c2: NDNode) -> RuleNode:
    """From closed [B]..D and [D]..B conclude (a -> B) -> (a -> D)."""
    return RuleNode(NDRuleId.IMP_I1, (label_b, label_d), (a,), (c1, c2))


def imp_i2(label_b: int, label_d: int, a: Formula, c1: NDNode, c2: NDNode) -> RuleNode:
    """From closed [B]..D and [D]..B conclude (B -> a) -> (D -> a)."""
    return RuleNode(NDRuleId.IMP_I2, (label_b, label_d), (a,), (c1, c2))


def imp_in(
    label_a: int,
    label_d: int,
    label_c: int,
    label_b: int,
    c1: NDNode,
    c2: NDNode,
    c3: NDNode,
    c4: NDNode,
) -> RuleNode:
    """Four-premise implication transfer, concluding (A -> B) -> (C -> D).

    c1: [A] .. C | B;  c2: [A, D] .. B;  c3: [C] .. A | D;  c4: [C, B] .. D.
    label_a discharges A in c1 and c2, label_d discharges D in c2,
    label_c discharges C in c3 and c4, label_b discharges B in c4.
    """
    return RuleNode(
        NDRuleId.IMP_IN, (label_a, label_d, label_c, label_b), (), (c1, c2, c3, c4)
    )


def imp_in2(
    label_c: int,
    label_b: int,
    b: Formula,
    c: Formula,
    c1: NDNode,
    c2: NDNode,
) -> RuleNode:
    """Two-premise implication transfer, concluding (A -> b) -> (c -> D).

    c1: [c] .. A | D;  c2: [c, b] .. D.  label_c discharges c in both
    children, label_b discharges b in c2.
    """
    return RuleNode(NDRuleId.IMP_IN2, (label_c, label_b), (b, c), (c1, c2))


def imp_i_chat(label: int, hyp: Formula, ctx: Formula, child: NDNode) -> RuleNode:
    """From closed [hyp]..B conclude (ctx -> hyp) -> (ctx -> B)."""
    return RuleNode(NDRuleId.IMP_I_CHAT, (label,), (hyp, ctx), (child,))


def imp_i_dhat(label: int, hyp: Formula, ctx: Formula, child: NDNode) -> RuleNode:
    """From closed [hyp]..B conclude (B -> ctx) -> (hyp -> ctx)."""
    return RuleNode(NDRuleId.IMP_I_DHAT, (label,), (hyp, ctx), (child,))


def imp_i_conj(c1: NDNode, c2: NDNode) -> RuleNode:
    """From A -> B and A -> C conclude A -> B & C."""
    return RuleNode(NDRuleId.IMP_I_CONJ, (), (), (c1, c2))


def imp_i_disj(c1: NDNode, c2: NDNode) -> RuleNode:
    """From A -> C and B -> C conclude A | B -> C."""
    return RuleNode(NDRuleId.IMP_I_DISJ, (), (), (c1, c2))


def imp_i_trans(c1: NDNode, c2: NDNode) -> RuleNode:
    """From A -> B and B -> C conclude A -> C."""
    return RuleNode(NDRuleId.IMP_I_TRANS, (), (), (c1, c2))
