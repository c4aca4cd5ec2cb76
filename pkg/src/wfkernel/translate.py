"""Translations between the two proof systems.

Both directions work the same way: every axiom, rule application or
tree node has a fixed image template, and the deduction transform
bridges hypothetical reasoning (discharged assumptions on the tree
side, dependent lines on the linear side).  Neither direction tries to
minimize its output; a translated proof can be much larger than its
source.  Both directions re-check what they build and refuse to return
anything that does not pass the corresponding checker.
"""

from __future__ import annotations

from typing import Callable, Mapping, Sequence

from .formula import BOT, And, Formula, Imp, Or, iff
from .hilbert import (
    Assumption,
    AxiomUse,
    ExportError,
    HilbertProof,
    Line,
    RuleApp,
    RuleId,
    SchemaId,
    check_hilbert,
    fold_assumptions,
    instantiate_schema,
    match_schema,
    weak_deduction_export,
)
from .logic import EXT_I, EXT_N, EXT_N2, LogicSpec
from .natded import (
    Leaf,
    NDNode,
    NDRuleId,
    RuleNode,
    and_e1,
    and_e2,
    and_i,
    bot_e,
    check_nd,
    freshen,
    imp_e,
    imp_i,
    imp_i1,
    imp_i2,
    imp_i_chat,
    imp_i_conj,
    imp_i_dhat,
    imp_i_disj,
    imp_i_trans,
    imp_in,
    imp_in2,
    max_label,
    or_e,
    or_i1,
    or_i2,
)

__all__ = ["TranslationError", "hilbert_to_nd", "nd_to_hilbert"]


class TranslationError(Exception):
    """The input proof cannot be translated (usually: it does not check)."""


# --- linear to tree ---------------------------------------------------------


class _Labels:
    """Fresh discharge labels for one translation run."""

    __slots__ = ("_next",)

    def __init__(self) -> None:
        self._next = 1

    def take(self) -> int:
        lab = self._next
        self._next += 1
        return lab

    def fresh_copy(self, tree: NDNode) -> NDNode:
        """Copy ``tree`` with labels nobody else holds."""
        copy = freshen(tree, start=self._next)
        self._next = max(self._next, max_label(copy) + 1)
        return copy


def _axiom_tree(schema: SchemaId, binding: Mapping[str, Formula], labs: _Labels) -> NDNode:
    """A closed derivation of one axiom instance."""
    a = binding.get("A")
    b = binding.get("B")
    c = binding.get("C")
    match schema:
        case SchemaId.AX1:
            lab = labs.take()
            return imp_i(lab, a, or_i1(Leaf(a, lab), b))
        case SchemaId.AX2:
            lab = labs.take()
            return imp_i(lab, b, or_i2(a, Leaf(b, lab)))
        case SchemaId.AX3:
            lab = labs.take()
            return imp_i(lab, And(a, b), and_e1(Leaf(And(a, b), lab)))
        case SchemaId.AX4:
            lab = labs.take()
            return imp_i(lab, And(a, b), and_e2(Leaf(And(a, b), lab)))
        case SchemaId.AX7:
            hyp = And(a, Or(b, c))
            l1, l2, l3 = labs.take(), labs.take(), labs.take()
            split = or_e(
                l2,
                l3,
                and_e2(Leaf(hyp, l1)),
                or_i1(and_i(and_e1(Leaf(hyp, l1)), Leaf(b, l2)), And(a, c)),
                or_i2(And(a, b), and_i(and_e1(Leaf(hyp, l1)), Leaf(c, l3))),
            )
            return imp_i(l1, hyp, split)
        case SchemaId.AX8:
            lab = labs.take()
            return imp_i(lab, a, Leaf(a, lab))
        case SchemaId.AX14:
            lab = labs.take()
            return imp_i(lab, BOT, bot_e(a, Leaf(BOT, lab)))
        case SchemaId.AX_I:
            hyp = And(Imp(a, b), Imp(b, c))
            lab = labs.take()
            return imp_i(
                lab, hyp, imp_i_trans(and_e1(Leaf(hyp, lab)), and_e2(Leaf(hyp, lab)))
            )
        case SchemaId.AX_C:
            hyp = And(Imp(a, b), Imp(a, c))
            lab = labs.take()
            return imp_i(
                lab, hyp, imp_i_conj(and_e1(Leaf(hyp, lab)), and_e2(Leaf(hyp, lab)))
            )
        case SchemaId.AX_D:
            hyp = And(Imp(a, c), Imp(b, c))
            lab = labs.take()
            return imp_i(
                lab, hyp, imp_i_disj(and_e1(Leaf(hyp, lab)), and_e2(Leaf(hyp, lab)))
            )
        case SchemaId.AX_CHAT:
            hyp = Imp(a, And(b, c))
            l1, l2, l3 = labs.take(), labs.take(), labs.take()
            left = imp_e(
                Leaf(hyp, l1), imp_i_chat(l2, And(b, c), a, and_e1(Leaf(And(b, c), l2)))
            )
            right = imp_e(
                Leaf(hyp, l1), imp_i_chat(l3, And(b, c), a, and_e2(Leaf(And(b, c), l3)))
            )
            return imp_i(l1, hyp, and_i(left, right))
        case SchemaId.AX_DHAT:
            hyp = Imp(Or(a, b), c)
            l1, l2, l3 = labs.take(), labs.take(), labs.take()
            left = imp_e(Leaf(hyp, l1), imp_i_dhat(l2, a, c, or_i1(Leaf(a, l2), b)))
            right = imp_e(Leaf(hyp, l1), imp_i_dhat(l3, b, c, or_i2(a, Leaf(b, l3))))
            return imp_i(l1, hyp, and_i(left, right))
    raise AssertionError(f"unhandled schema {schema!r}")  # pragma: no cover


def _commuted_case_split(
    hyp: Formula, hyp_label: int, theorem: NDNode, left: Formula, right: Formula, labs: _Labels
) -> NDNode:
    """From [hyp] and a closed theorem hyp -> left | right, derive
    right | left by splitting on the disjunction."""
    m1, m2 = labs.take(), labs.take()
    return or_e(
        m1,
        m2,
        imp_e(Leaf(hyp, hyp_label), theorem),
        or_i2(right, Leaf(left, m1)),
        or_i1(Leaf(right, m2), left),
    )


_Dir = Callable[[], NDNode]


def _congr_tree(
    a: Formula,
    b: Formula,
    c: Formula,
    d: Formula,
    a_to_b: _Dir,
    b_to_a: _Dir,
    c_to_d: _Dir,
    d_to_c: _Dir,
    logic: LogicSpec,
    labs: _Labels,
) -> NDNode:
    """A closed derivation of (A->C) <-> (B->D) from the four closed
    direction theorems of A <-> B and C <-> D.

    The direction arguments are factories producing a freshly labelled
    copy per call, since most shapes use each direction twice.  The
    shape depends on which implication-building rule the logic offers;
    every logic has at least one.
    """
    if logic.has(EXT_I):
        l1 = labs.take()
        fwd = imp_i(
            l1,
            Imp(a, c),
            imp_i_trans(imp_i_trans(b_to_a(), Leaf(Imp(a, c), l1)), c_to_d()),
        )
        l2 = labs.take()
        bwd = imp_i(
            l2,
            Imp(b, d),
            imp_i_trans(imp_i_trans(a_to_b(), Leaf(Imp(b, d), l2)), d_to_c()),
        )
        return and_i(fwd, bwd)
    if logic.has(EXT_N):
        la, ld, lc, lb = (labs.take() for _ in range(4))
        fwd = imp_in(
            la,
            ld,
            lc,
            lb,
            or_i1(imp_e(Leaf(a, la), a_to_b()), c),
            imp_e(Leaf(d, ld), d_to_c()),
            or_i1(imp_e(Leaf(b, lc), b_to_a()), d),
            imp_e(Leaf(c, lb), c_to_d()),
        )
        la, ld, lc, lb = (labs.take() for _ in range(4))
        bwd = imp_in(
            la,
            ld,
            lc,
            lb,
            or_i1(imp_e(Leaf(b, la), b_to_a()), d),
            imp_e(Leaf(c, ld), c_to_d()),
            or_i1(imp_e(Leaf(a, lc), a_to_b()), c),
            imp_e(Leaf(d, lb), d_to_c()),
        )
        return and_i(fwd, bwd)
    if logic.has(EXT_N2):
        lc1, lb1 = labs.take(), labs.take()
        fwd = imp_in2(
            lc1,
            lb1,
            c,
            b,
            or_i1(imp_e(Leaf(b, lc1), b_to_a()), d),
            imp_e(Leaf(c, lb1), c_to_d()),
        )
        lc2, lb2 = labs.take(), labs.take()
        bwd = imp_in2(
            lc2,
            lb2,
            d,
            a,
            or_i1(imp_e(Leaf(a, lc2), a_to_b()), c),
            imp_e(Leaf(d, lb2), d_to_c()),
        )
        return and_i(fwd, bwd)
    # base system: the paired closed-subderivation rules
    l1, l2 = labs.take(), labs.take()
    step1 = imp_i2(
        l1, l2, c, imp_e(Leaf(a, l1), a_to_b()), imp_e(Leaf(b, l2), b_to_a())
    )  # (a -> c) -> (b -> c)
    l3, l4 = labs.take(), labs.take()
    step2 = imp_i1(
        l3, l4, b, imp_e(Leaf(c, l3), c_to_d()), imp_e(Leaf(d, l4), d_to_c())
    )  # (b -> c) -> (b -> d)
    l5 = labs.take()
    fwd = imp_i(
        l5, Imp(a, c), imp_e(imp_e(Leaf(Imp(a, c), l5), step1), step2)
    )
    l1, l2 = labs.take(), labs.take()
    step1 = imp_i2(
        l1, l2, d, imp_e(Leaf(b, l1), b_to_a()), imp_e(Leaf(a, l2), a_to_b())
    )  # (b -> d) -> (a -> d)
    l3, l4 = labs.take(), labs.take()
    step2 = imp_i1(
        l3, l4, a, imp_e(Leaf(d, l3), d_to_c()), imp_e(Leaf(c, l4), c_to_d())
    )  # (a -> d) -> (a -> c)
    l5 = labs.take()
    bwd = imp_i(
        l5, Imp(b, d), imp_e(imp_e(Leaf(Imp(b, d), l5), step1), step2)
    )
    return and_i(fwd, bwd)


def hilbert_to_nd(
    proof: HilbertProof,
    logic: LogicSpec | None = None,
    assumptions: Sequence[Formula] = (),
) -> NDNode:
    """Rebuild an accepted linear proof as a derivation tree.

    Open assumptions of the result are exactly the assumption formulas
    the proof actually uses.  Raises TranslationError if the input does
    not check, or if the rebuilt tree does not (which would be a bug).
    """
    logic = logic if logic is not None else LogicSpec()
    report = check_hilbert(proof, logic, assumptions)
    if not report.accepted:
        raise TranslationError(
            "refusing to translate a proof that does not check: "
            + "; ".join(str(d) for d in report.diagnostics)
        )
    labs = _Labels()
    images: list[NDNode] = []

    def use(i: int) -> NDNode:
        # One line can be cited by several rule applications (or twice
        # by one), and labels must stay globally unique in the result.
        return labs.fresh_copy(images[i])

    for line in proof.lines:
        match line.just:
            case Assumption():
                tree: NDNode = Leaf(line.formula)
            case AxiomUse(schema, fixed):
                binding = (
                    dict(fixed)
                    if fixed is not None
                    else match_schema(schema, line.formula)
                )
                assert binding is not None  # the checker matched it already
                tree = _axiom_tree(schema, binding, labs)
            case RuleApp(rule, premises):
                tree = _rule_tree(rule, premises, line.formula, use, proof, logic, labs)
        images.append(tree)

    root = images[-1]
    final = check_nd(root, logic)
    if not final.accepted or final.conclusion != proof.conclusion:
        raise TranslationError(  # pragma: no cover - internal consistency net
            "translation produced a derivation that does not check: "
            + "; ".join(str(d) for d in final.diagnostics)
        )
    return root


def _rule_tree(
    rule: RuleId,
    premises: tuple[int, ...],
    conclusion: Formula,
    use: Callable[[int], NDNode],
    proof: HilbertProof,
    logic: LogicSpec,
    labs: _Labels,
) -> NDNode:
    forms = [proof.lines[i].formula for i in premises]
    match rule:
        case RuleId.MP:
            return imp_e(use(premises[0]), use(premises[1]))
        case RuleId.CONJ:
            return and_i(use(premises[0]), use(premises[1]))
        case RuleId.AF:
            # the premise was derived without assumptions; weaken it
            # under the new antecedent by a discharge that binds nothing
            assert isinstance(conclusion, Imp)
            lab = labs.take()
            return imp_i(lab, conclusion.left, use(premises[0]))
        case RuleId.TRANS:
            p1 = forms[0]
            assert isinstance(p1, Imp)
            lab = labs.take()
            body = imp_e(imp_e(Leaf(p1.left, lab), use(premises[0])), use(premises[1]))
            return imp_i(lab, p1.left, body)
        case RuleId.CONJ_IMP:
            p1 = forms[0]
            assert isinstance(p1, Imp)
            lab = labs.take()
            return imp_i(
                lab,
                p1.left,
                and_i(
                    imp_e(Leaf(p1.left, lab), use(premises[0])),
                    imp_e(Leaf(p1.left, lab), use(premises[1])),
                ),
            )
        case RuleId.DISJ_IMP:
            p1, p2 = forms
            assert isinstance(p1, Imp) and isinstance(p2, Imp)
            hyp = Or(p1.left, p2.left)
            l1, l2, l3 = labs.take(), labs.take(), labs.take()
            return imp_i(
                l3,
                hyp,
                or_e(
                    l1,
                    l2,
                    Leaf(hyp, l3),
                    imp_e(Leaf(p1.left, l1), use(premises[0])),
                    imp_e(Leaf(p2.left, l2), use(premises[1])),
                ),
            )
        case RuleId.CONGR:
            ab, cd = forms
            assert isinstance(ab, And) and isinstance(cd, And)
            a, b = ab.left.left, ab.left.right
            c, d = cd.left.left, cd.left.right
            return _congr_tree(
                a,
                b,
                c,
                d,
                lambda: and_e1(use(premises[0])),
                lambda: and_e2(use(premises[0])),
                lambda: and_e1(use(premises[1])),
                lambda: and_e2(use(premises[1])),
                logic,
                labs,
            )
        case RuleId.RULE_N:
            p1 = forms[0]
            p2 = forms[1]
            assert isinstance(p1, Imp) and isinstance(p1.right, Or)
            assert isinstance(p2, Imp) and isinstance(p2.right, Or)
            a, b, c = p1.left, p1.right.left, p1.right.right
            d = p2.right.right
            i1, i2, i3, i4 = premises
            la, ld, lc, lb = (labs.take() for _ in range(4))
            fwd = imp_in(
                la,
                ld,
                lc,
                lb,
                _commuted_case_split(a, la, use(i1), b, c, labs),
                imp_e(and_i(Leaf(a, la), Leaf(d, ld)), use(i3)),
                imp_e(Leaf(c, lc), use(i2)),
                imp_e(and_i(Leaf(c, lc), Leaf(b, lb)), use(i4)),
            )
            la, ld, lc, lb = (labs.take() for _ in range(4))
            bwd = imp_in(
                la,
                ld,
                lc,
                lb,
                imp_e(Leaf(c, la), use(i2)),
                imp_e(and_i(Leaf(c, la), Leaf(b, ld)), use(i4)),
                _commuted_case_split(a, lc, use(i1), b, c, labs),
                imp_e(and_i(Leaf(a, lc), Leaf(d, lb)), use(i3)),
            )
            return and_i(fwd, bwd)
        case RuleId.RULE_N2:
            p1, p2 = forms
            assert isinstance(p1, Imp) and isinstance(p1.right, Or)
            assert isinstance(p2, Imp) and isinstance(p2.left, And)
            c = p1.left
            b = p2.left.right
            lc, lb = labs.take(), labs.take()
            return imp_in2(
                lc,
                lb,
                b,
                c,
                imp_e(Leaf(c, lc), use(premises[0])),
                imp_e(and_i(Leaf(c, lc), Leaf(b, lb)), use(premises[1])),
            )
    raise AssertionError(f"unhandled rule {rule!r}")  # pragma: no cover


# --- tree to linear ---------------------------------------------------------


class _HBuilder:
    """Accumulates lines of the output proof."""

    def __init__(self) -> None:
        self.lines: list[Line] = []

    def emit(self, formula: Formula, just) -> int:
        self.lines.append(Line(formula, just))
        return len(self.lines) - 1

    def assume(self, formula: Formula) -> int:
        return self.emit(formula, Assumption())

    def axiom(self, schema: SchemaId, **binding: Formula) -> int:
        formula = instantiate_schema(schema, binding)
        return self.emit(formula, AxiomUse(schema))

    def rule(self, rule: RuleId, premises: Sequence[int], formula: Formula) -> int:
        return self.emit(formula, RuleApp(rule, tuple(premises)))

    def splice(self, proof: HilbertProof) -> int:
        """Append a whole proof, remapping its internal references."""
        remap: dict[int, int] = {}
        for k, line in enumerate(proof.lines):
            just = line.just
            if isinstance(just, RuleApp):
                just = RuleApp(just.rule, tuple(remap[p] for p in just.premises))
            remap[k] = self.emit(line.formula, just)
        return remap[len(proof.lines) - 1]

    def mp(self, minor: int, major: int) -> int:
        major_formula = self.lines[major].formula
        assert isinstance(major_formula, Imp)
        return self.rule(RuleId.MP, (minor, major), major_formula.right)

    def trans(self, first: int, second: int) -> int:
        f1 = self.lines[first].formula
        f2 = self.lines[second].formula
        assert isinstance(f1, Imp) and isinstance(f2, Imp)
        return self.rule(RuleId.TRANS, (first, second), Imp(f1.left, f2.right))

    def conj(self, left: int, right: int) -> int:
        return self.rule(
            RuleId.CONJ,
            (left, right),
            And(self.lines[left].formula, self.lines[right].formula),
        )

    def first_of(self, conjunction: int) -> int:
        """Project the left conjunct of an independent conjunction line."""
        formula = self.lines[conjunction].formula
        assert isinstance(formula, And)
        ax = self.axiom(SchemaId.AX3, A=formula.left, B=formula.right)
        return self.mp(conjunction, ax)

    def proof(self) -> HilbertProof:
        return HilbertProof.of(self.lines)


def _export(tree: NDNode, hypotheses: Sequence[Formula], logic: LogicSpec) -> HilbertProof:
    """Translate a subtree and package its hypotheses into one implication."""
    sub = _tree_proof(tree, logic)
    return weak_deduction_export(sub, list(hypotheses), logic)


def _concl(tree: NDNode, logic: LogicSpec) -> Formula:
    """Structural conclusion of a subtree.

    A subtree of an accepted derivation can fail checking on its own
    (its labels dangle once cut off from their binders), but its
    conclusion is still well defined; the conclusions table carries it.
    """
    c = check_nd(tree, logic).conclusions[()]
    assert c is not None
    return c


def _biconditional_self(out: _HBuilder, formula: Formula) -> int:
    """Emit X <-> X."""
    ax = out.axiom(SchemaId.AX8, A=formula)
    return out.conj(ax, ax)


def nd_to_hilbert(
    root: NDNode, logic: LogicSpec | None = None
) -> tuple[HilbertProof, tuple[Formula, ...]]:
    """Rebuild an accepted derivation tree as a linear proof.

    Returns the proof together with its assumption formulas (the
    tree's open assumptions, first-use order).  Raises TranslationError
    if the tree does not check, or if the rebuilt proof does not.
    """
    logic = logic if logic is not None else LogicSpec()
    report = check_nd(root, logic)
    if not report.accepted:
        raise TranslationError(
            "refusing to translate a derivation that does not check: "
            + "; ".join(str(d) for d in report.diagnostics)
        )
    assumptions: list[Formula] = []
    for formula, _, _ in report.open_leaves:
        if formula not in assumptions:
            assumptions.append(formula)
    try:
        result = _tree_proof(root, logic)
    except ExportError as exc:  # pragma: no cover - internal consistency net
        raise TranslationError(f"translation broke down: {exc}") from exc
    final = check_hilbert(result, logic, assumptions)
    if not final.accepted or final.conclusion != report.conclusion:
        raise TranslationError(  # pragma: no cover - internal consistency net
            "translation produced a proof that does not check: "
            + "; ".join(str(d) for d in final.diagnostics)
        )
    return result, tuple(assumptions)


def _tree_proof(node: NDNode, logic: LogicSpec) -> HilbertProof:
    """A linear proof of the node's conclusion from its open formulas."""
    out = _HBuilder()
    _emit(node, out, logic)
    return out.proof()


def _emit(node: NDNode, out: _HBuilder, logic: LogicSpec) -> int:
    """Append lines deriving the node's conclusion; return their last index."""
    if isinstance(node, Leaf):
        return out.assume(node.formula)

    kids = node.children
    match node.rule:
        case NDRuleId.AND_I:
            return out.conj(_emit(kids[0], out, logic), _emit(kids[1], out, logic))

        case NDRuleId.AND_E1 | NDRuleId.AND_E2:
            child = _emit(kids[0], out, logic)
            conjunction = out.lines[child].formula
            assert isinstance(conjunction, And)
            schema = (
                SchemaId.AX3 if node.rule is NDRuleId.AND_E1 else SchemaId.AX4
            )
            ax = out.axiom(schema, A=conjunction.left, B=conjunction.right)
            return out.mp(child, ax)

        case NDRuleId.OR_I1:
            child = _emit(kids[0], out, logic)
            left = out.lines[child].formula
            ax = out.axiom(SchemaId.AX1, A=left, B=node.formulas[0])
            return out.mp(child, ax)

        case NDRuleId.OR_I2:
            child = _emit(kids[0], out, logic)
            right = out.lines[child].formula
            ax = out.axiom(SchemaId.AX2, A=node.formulas[0], B=right)
            return out.mp(child, ax)

        case NDRuleId.BOT_E:
            child = _emit(kids[0], out, logic)
            ax = out.axiom(SchemaId.AX14, A=node.formulas[0])
            return out.mp(child, ax)

        case NDRuleId.IMP_E:
            minor = _emit(kids[0], out, logic)
            major = _emit(kids[1], out, logic)
            return out.mp(minor, major)

        case NDRuleId.IMP_I:
            return out.splice(_export(kids[0], [node.formulas[0]], logic))

        case NDRuleId.OR_E:
            return _emit_case_split(node, out, logic)

        case NDRuleId.IMP_I1 | NDRuleId.IMP_I2:
            return _emit_paired_intro(node, out, logic)

        case NDRuleId.IMP_IN:
            return _emit_four_premise_intro(node, out, logic)

        case NDRuleId.IMP_IN2:
            b, c = node.formulas
            disj = _concl(kids[0], logic)
            assert isinstance(disj, Or)
            a, d = disj.left, disj.right
            p1 = out.splice(_export(kids[0], [c], logic))
            p2 = _pair_export(out, kids[1], c, b, logic)
            return out.rule(
                RuleId.RULE_N2, (p1, p2), Imp(Imp(a, b), Imp(c, d))
            )

        case NDRuleId.IMP_I_CHAT:
            return _emit_context_intro(node, out, logic, conj_side=True)

        case NDRuleId.IMP_I_DHAT:
            return _emit_context_intro(node, out, logic, conj_side=False)

        case NDRuleId.IMP_I_CONJ | NDRuleId.IMP_I_DISJ | NDRuleId.IMP_I_TRANS:
            left = _emit(kids[0], out, logic)
            right = _emit(kids[1], out, logic)
            pair = out.conj(left, right)
            f1 = out.lines[left].formula
            f2 = out.lines[right].formula
            assert isinstance(f1, Imp) and isinstance(f2, Imp)
            if node.rule is NDRuleId.IMP_I_CONJ:
                ax = out.axiom(SchemaId.AX_C, A=f1.left, B=f1.right, C=f2.right)
            elif node.rule is NDRuleId.IMP_I_DISJ:
                ax = out.axiom(SchemaId.AX_D, A=f1.left, B=f2.left, C=f1.right)
            else:
                ax = out.axiom(SchemaId.AX_I, A=f1.left, B=f1.right, C=f2.right)
            return out.mp(pair, ax)

    raise AssertionError(f"unhandled rule {node.rule!r}")  # pragma: no cover


def _emit_paired_intro(node: RuleNode, out: _HBuilder, logic: LogicSpec) -> int:
    """ImpI1/ImpI2 become the congruence rule over B <-> D and A <-> A."""
    (a,) = node.formulas
    d = _concl(node.children[0], logic)
    b = _concl(node.children[1], logic)
    b_to_d = out.splice(_export(node.children[0], [b], logic))
    d_to_b = out.splice(_export(node.children[1], [d], logic))
    b_iff_d = out.conj(b_to_d, d_to_b)
    a_iff_a = _biconditional_self(out, a)
    if node.rule is NDRuleId.IMP_I1:
        target = iff(Imp(a, b), Imp(a, d))
        both = out.rule(RuleId.CONGR, (a_iff_a, b_iff_d), target)
    else:
        target = iff(Imp(b, a), Imp(d, a))
        both = out.rule(RuleId.CONGR, (b_iff_d, a_iff_a), target)
    return out.first_of(both)


def _commute_disjunction(out: _HBuilder, x: Formula, y: Formula) -> int:
    """Emit (x | y) -> (y | x)."""
    to_left = out.axiom(SchemaId.AX2, A=y, B=x)  # x -> y | x
    to_right = out.axiom(SchemaId.AX1, A=y, B=x)  # y -> y | x
    return out.rule(
        RuleId.DISJ_IMP, (to_left, to_right), Imp(Or(x, y), Or(y, x))
    )


def _pair_export(
    out: _HBuilder, tree: NDNode, x: Formula, y: Formula, logic: LogicSpec
) -> int:
    """Emit (x & y) -> conclusion-of-tree.

    The export helper collapses duplicate assumptions, so when x == y the
    conjunction has to be restored by chaining through x & x -> x.
    """
    if x == y:
        theorem = out.splice(_export(tree, [x], logic))
        squash = out.axiom(SchemaId.AX3, A=x, B=x)
        return out.trans(squash, theorem)
    return out.splice(_export(tree, [x, y], logic))


def _emit_four_premise_intro(node: RuleNode, out: _HBuilder, logic: LogicSpec) -> int:
    c1, c2, c3, c4 = node.children
    b = _concl(c2, logic)
    d = _concl(c4, logic)
    cb = _concl(c1, logic)
    ad = _concl(c3, logic)
    assert isinstance(cb, Or) and isinstance(ad, Or)
    c = cb.left
    a = ad.left
    raw1 = out.splice(_export(c1, [a], logic))  # a -> (c | b)
    flip = _commute_disjunction(out, c, b)
    p1 = out.trans(raw1, flip)  # a -> (b | c)
    p2 = out.splice(_export(c3, [c], logic))  # c -> (a | d)
    p3 = _pair_export(out, c2, a, d, logic)  # (a & d) -> b
    p4 = _pair_export(out, c4, c, b, logic)  # (c & b) -> d
    both = out.rule(
        RuleId.RULE_N, (p1, p2, p3, p4), iff(Imp(a, b), Imp(c, d))
    )
    return out.first_of(both)


def _emit_context_intro(
    node: RuleNode, out: _HBuilder, logic: LogicSpec, conj_side: bool
) -> int:
    """The two context rules share one skeleton: turn the subderivation
    into E -> B, massage it into a biconditional, apply the congruence
    rule against ctx <-> ctx, then chain through the matching axiom."""
    hyp, ctx = node.formulas
    concl = _concl(node.children[0], logic)
    theorem = out.splice(_export(node.children[0], [hyp], logic))  # hyp -> concl
    if conj_side:
        # hyp <-> hyp & concl
        expand = out.rule(
            RuleId.CONJ_IMP,
            (out.axiom(SchemaId.AX8, A=hyp), theorem),
            Imp(hyp, And(hyp, concl)),
        )
        collapse = out.axiom(SchemaId.AX3, A=hyp, B=concl)
        bicon = out.conj(expand, collapse)
        ctx_self = _biconditional_self(out, ctx)
        target = iff(Imp(ctx, hyp), Imp(ctx, And(hyp, concl)))
        both = out.rule(RuleId.CONGR, (ctx_self, bicon), target)
        head = out.first_of(both)  # (ctx -> hyp) -> (ctx -> hyp & concl)
        ax = out.axiom(SchemaId.AX_CHAT, A=ctx, B=hyp, C=concl)
        chained = out.trans(head, ax)
        drop = out.axiom(SchemaId.AX4, A=Imp(ctx, hyp), B=Imp(ctx, concl))
        return out.trans(chained, drop)
    # concl <-> hyp | concl
    expand = out.axiom(SchemaId.AX2, A=hyp, B=concl)
    collapse = out.rule(
        RuleId.DISJ_IMP,
        (theorem, out.axiom(SchemaId.AX8, A=concl)),
        Imp(Or(hyp, concl), concl),
    )
    bicon = out.conj(expand, collapse)
    ctx_self = _biconditional_self(out, ctx)
    target = iff(Imp(concl, ctx), Imp(Or(hyp, concl), ctx))
    both = out.rule(RuleId.CONGR, (bicon, ctx_self), target)
    head = out.first_of(both)  # (concl -> ctx) -> (hyp | concl -> ctx)
    ax = out.axiom(SchemaId.AX_DHAT, A=hyp, B=concl, C=ctx)
    chained = out.trans(head, ax)
    drop = out.axiom(SchemaId.AX3, A=Imp(hyp, ctx), B=Imp(concl, ctx))
    return out.trans(chained, drop)


def _emit_case_split(node: RuleNode, out: _HBuilder, logic: LogicSpec) -> int:
    """Linear image of a disjunction case split.

    The two branch derivations are packaged into implications from
    their full hypothesis lists; a distribution-axiom chain then turns
    the pair into one implication out of W & (A | B), where W collects
    the residual open assumptions of both branches.
    """
    major, minor1, minor2 = node.children
    lab_a, lab_b = node.labels
    disj = _concl(major, logic)
    assert isinstance(disj, Or)
    a, b = disj.left, disj.right
    target = _concl(minor1, logic)

    def residual_opens(minor: NDNode, lab: int) -> list[Formula]:
        forms: list[Formula] = []
        for formula, label, _ in check_nd(minor, logic).open_leaves:
            if label != lab and formula not in forms:
                forms.append(formula)
        return forms

    residue: list[Formula] = []
    for formula in residual_opens(minor1, lab_a) + residual_opens(minor2, lab_b):
        if formula not in residue:
            residue.append(formula)

    major_idx = _emit(major, out, logic)

    if not residue:
        t1 = out.splice(_export(minor1, [a], logic))  # a -> target
        t2 = out.splice(_export(minor2, [b], logic))  # b -> target
        bridge = out.rule(
            RuleId.DISJ_IMP, (t1, t2), Imp(Or(a, b), target)
        )
        return out.mp(major_idx, bridge)

    w = fold_assumptions(residue)

    def branch(minor: NDNode, hyp: Formula) -> int:
        """(w & hyp) -> target, from the branch's packaged export."""
        hyps = [hyp] + [f for f in residue if f != hyp]
        packaged = out.splice(_export(minor, hyps, logic))
        source = And(w, hyp)
        projections: dict[int, int] = {}

        def project(element: Formula, position: int) -> int:
            # source -> element, where element sits at `position` in hyps
            if position in projections:
                return projections[position]
            if element == hyp and position == 0:
                idx = out.axiom(SchemaId.AX4, A=w, B=hyp)
            else:
                to_w = out.axiom(SchemaId.AX3, A=w, B=hyp)
                idx = out.trans(to_w, _w_projection(out, residue, element))
            projections[position] = idx
            return idx

        def rebuild(suffix: list[Formula], offset: int) -> int:
            # source -> fold(suffix)
            head = project(suffix[0], offset)
            if len(suffix) == 1:
                return head
            rest = rebuild(suffix[1:], offset + 1)
            folded = fold_assumptions(suffix)
            return out.rule(
                RuleId.CONJ_IMP, (head, rest), Imp(source, folded)
            )

        adapter = rebuild(hyps, 0)  # (w & hyp) -> fold(hyps)
        return out.trans(adapter, packaged)

    left = branch(minor1, a)  # (w & a) -> target
    right = branch(minor2, b)  # (w & b) -> target
    split = out.rule(
        RuleId.DISJ_IMP,
        (left, right),
        Imp(Or(And(w, a), And(w, b)), target),
    )
    distribute = out.axiom(SchemaId.AX7, A=w, B=a, C=b)
    bridge = out.trans(distribute, split)  # (w & (a | b)) -> target

    residue_idx = [out.assume(f) for f in residue]

    def conj_fold(indices: list[int]) -> int:
        if len(indices) == 1:
            return indices[0]
        return out.conj(indices[0], conj_fold(indices[1:]))

    w_idx = conj_fold(residue_idx)
    packed = out.conj(w_idx, major_idx)  # w & (a | b)
    return out.mp(packed, bridge)


def _w_projection(out: _HBuilder, residue: list[Formula], element: Formula) -> int:
    """Emit fold(residue) -> element for the first occurrence of element."""
    position = residue.index(element)
    tails = [fold_assumptions(residue[i:]) for i in range(len(residue))]
    if len(residue) == 1:
        return out.axiom(SchemaId.AX8, A=tails[0])
    # walk down the right spine to the tail that starts with `element`
    current: int | None = None
    for i in range(position):
        step = out.axiom(SchemaId.AX4, A=residue[i], B=tails[i + 1])
        current = step if current is None else out.trans(current, step)
    if position == len(residue) - 1:
        assert current is not None
        return current
    head = out.axiom(SchemaId.AX3, A=element, B=tails[position + 1])
    return head if current is None else out.trans(current, head)
