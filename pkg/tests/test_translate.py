"""Tests for the proof translations.

Each direction gets per-rule shape tests against hand-checked targets,
then round trips that must preserve conclusion and open assumptions.
"""

import pytest
from hypothesis import given

from wfkernel.formula import BOT, And, Imp, Or, iff, parse_formula
from wfkernel.hilbert import (
    Assumption,
    AxiomUse,
    HilbertProof,
    Line,
    RuleApp,
    RuleId,
    SchemaId,
    check_hilbert,
    weak_deduction_export,
    weak_deduction_import,
)
from wfkernel.logic import PRESETS, LogicSpec, parse_logic
from wfkernel.natded import (
    Leaf,
    and_e1,
    and_e2,
    and_i,
    bot_e,
    check_nd,
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
    or_e,
    or_i1,
    or_i2,
)
from wfkernel.translate import TranslationError, hilbert_to_nd, nd_to_hilbert

from .strategies import formulas

p = parse_formula("p")
q = parse_formula("q")
r = parse_formula("r")
s = parse_formula("s")

WF = LogicSpec()


def accepted_nd(tree, logic=WF):
    report = check_nd(tree, logic)
    assert report.accepted, report.diagnostics
    return report


def accepted_hilbert(proof, logic, assumptions):
    report = check_hilbert(proof, logic, assumptions)
    assert report.accepted, report.diagnostics
    return report


# --- linear to tree ---------------------------------------------------------

AXIOM_CASES = [
    ("WF", SchemaId.AX1, "p -> p | q"),
    ("WF", SchemaId.AX2, "q -> p | q"),
    ("WF", SchemaId.AX3, "p & q -> p"),
    ("WF", SchemaId.AX4, "p & q -> q"),
    ("WF", SchemaId.AX7, "p & (q | r) -> p & q | p & r"),
    ("WF", SchemaId.AX8, "p -> p"),
    ("WF", SchemaId.AX14, "bot -> p"),
    ("WFI", SchemaId.AX_I, "(p -> q) & (q -> r) -> (p -> r)"),
    ("WFC", SchemaId.AX_C, "(p -> q) & (p -> r) -> (p -> q & r)"),
    ("WFD", SchemaId.AX_D, "(p -> r) & (q -> r) -> (p | q -> r)"),
    ("WFCHAT", SchemaId.AX_CHAT, "(p -> q & r) -> (p -> q) & (p -> r)"),
    ("WFDHAT", SchemaId.AX_DHAT, "(p | q -> r) -> (p -> r) & (q -> r)"),
]


@pytest.mark.parametrize("logic_name,schema,text", AXIOM_CASES)
def test_axiom_images_are_closed_derivations(logic_name, schema, text):
    logic = parse_logic(logic_name)
    formula = parse_formula(text)
    proof = HilbertProof.of([Line(formula, AxiomUse(schema))])
    tree = hilbert_to_nd(proof, logic)
    report = accepted_nd(tree, logic)
    assert report.conclusion == formula
    assert not report.opens


def test_assumption_becomes_open_leaf():
    proof = HilbertProof.of([
        Line(p, Assumption()),
        Line(Imp(p, Or(p, q)), AxiomUse(SchemaId.AX1)),
        Line(Or(p, q), RuleApp(RuleId.MP, (0, 1))),
    ])
    tree = hilbert_to_nd(proof, WF, [p])
    report = accepted_nd(tree)
    assert report.conclusion == Or(p, q)
    assert report.opens == frozenset({p})


def test_unused_assumption_stays_out_of_the_tree():
    proof = HilbertProof.of([Line(Imp(p, p), AxiomUse(SchemaId.AX8))])
    tree = hilbert_to_nd(proof, WF, [q])
    assert accepted_nd(tree).opens == frozenset()


def test_weakening_image_discharges_vacuously():
    proof = HilbertProof.of([
        Line(Imp(p, p), AxiomUse(SchemaId.AX8)),
        Line(Imp(q, Imp(p, p)), RuleApp(RuleId.AF, (0,))),
    ])
    report = accepted_nd(hilbert_to_nd(proof, WF))
    assert report.conclusion == Imp(q, Imp(p, p))


def test_chaining_image():
    proof = HilbertProof.of([
        Line(Imp(And(p, q), p), AxiomUse(SchemaId.AX3)),
        Line(Imp(p, Or(p, r)), AxiomUse(SchemaId.AX1)),
        Line(Imp(And(p, q), Or(p, r)), RuleApp(RuleId.TRANS, (0, 1))),
    ])
    report = accepted_nd(hilbert_to_nd(proof, WF))
    assert report.conclusion == Imp(And(p, q), Or(p, r))
    assert not report.opens


def test_shared_antecedent_image():
    proof = HilbertProof.of([
        Line(Imp(And(p, q), p), AxiomUse(SchemaId.AX3)),
        Line(Imp(And(p, q), q), AxiomUse(SchemaId.AX4)),
        Line(Imp(And(p, q), And(p, q)), RuleApp(RuleId.CONJ_IMP, (0, 1))),
    ])
    assert accepted_nd(hilbert_to_nd(proof, WF)).conclusion == Imp(
        And(p, q), And(p, q)
    )


def test_shared_consequent_image():
    proof = HilbertProof.of([
        Line(Imp(p, Or(p, q)), AxiomUse(SchemaId.AX1)),
        Line(Imp(q, Or(p, q)), AxiomUse(SchemaId.AX2)),
        Line(Imp(Or(p, q), Or(p, q)), RuleApp(RuleId.DISJ_IMP, (0, 1))),
    ])
    assert accepted_nd(hilbert_to_nd(proof, WF)).conclusion == Imp(
        Or(p, q), Or(p, q)
    )


def test_conjunction_image_keeps_both_assumptions_open():
    proof = HilbertProof.of([
        Line(p, Assumption()),
        Line(q, Assumption()),
        Line(And(p, q), RuleApp(RuleId.CONJ, (0, 1))),
    ])
    report = accepted_nd(hilbert_to_nd(proof, WF, [p, q]))
    assert report.opens == frozenset({p, q})


def congruence_proof():
    """p <-> p and q <-> q, combined into (p -> q) <-> (p -> q)."""
    return HilbertProof.of([
        Line(Imp(p, p), AxiomUse(SchemaId.AX8)),
        Line(iff(p, p), RuleApp(RuleId.CONJ, (0, 0))),
        Line(Imp(q, q), AxiomUse(SchemaId.AX8)),
        Line(iff(q, q), RuleApp(RuleId.CONJ, (2, 2))),
        Line(iff(Imp(p, q), Imp(p, q)), RuleApp(RuleId.CONGR, (1, 3))),
    ])


@pytest.mark.parametrize("logic_name", ["WF", "WFI", "WFN", "WFN2", "WFC", "WFDHAT", "F"])
def test_congruence_image_per_logic(logic_name):
    # each logic picks a different tree shape for the same rule
    logic = parse_logic(logic_name)
    tree = hilbert_to_nd(congruence_proof(), logic)
    report = accepted_nd(tree, logic)
    assert report.conclusion == iff(Imp(p, q), Imp(p, q))
    assert not report.opens


def test_four_premise_rule_image():
    logic = parse_logic("WFN")
    proof = HilbertProof.of([
        Line(Imp(p, Or(q, p)), AxiomUse(SchemaId.AX2)),
        Line(Imp(p, Or(p, q)), AxiomUse(SchemaId.AX1)),
        Line(Imp(And(p, q), q), AxiomUse(SchemaId.AX4)),
        Line(iff(Imp(p, q), Imp(p, q)), RuleApp(RuleId.RULE_N, (0, 1, 2, 2))),
    ])
    report = accepted_nd(hilbert_to_nd(proof, logic), logic)
    assert report.conclusion == iff(Imp(p, q), Imp(p, q))
    assert not report.opens


def test_two_premise_rule_image():
    logic = parse_logic("WFN2")
    proof = HilbertProof.of([
        Line(Imp(p, Or(p, q)), AxiomUse(SchemaId.AX1)),
        Line(Imp(And(p, q), q), AxiomUse(SchemaId.AX4)),
        Line(Imp(Imp(p, q), Imp(p, q)), RuleApp(RuleId.RULE_N2, (0, 1))),
    ])
    report = accepted_nd(hilbert_to_nd(proof, logic), logic)
    assert report.conclusion == Imp(Imp(p, q), Imp(p, q))


def test_rejected_proof_is_not_translated():
    proof = HilbertProof.of([Line(Imp(p, q), AxiomUse(SchemaId.AX8))])
    with pytest.raises(TranslationError):
        hilbert_to_nd(proof, WF)


# --- tree to linear ---------------------------------------------------------


def both_ways(tree, logic=WF):
    """Check the tree, translate it, check the result, compare reports."""
    nd_report = accepted_nd(tree, logic)
    proof, assumptions = nd_to_hilbert(tree, logic)
    h_report = accepted_hilbert(proof, logic, assumptions)
    assert h_report.conclusion == nd_report.conclusion
    assert set(assumptions) == set(nd_report.opens)
    return proof, assumptions


def test_leaf_and_structural_rules():
    both_ways(Leaf(p))
    both_ways(and_i(Leaf(p), Leaf(q)))
    both_ways(and_e1(Leaf(And(p, q))))
    both_ways(and_e2(Leaf(And(p, q))))
    both_ways(or_i1(Leaf(p), q))
    both_ways(or_i2(p, Leaf(q)))
    both_ways(bot_e(p, Leaf(BOT)))
    both_ways(imp_e(Leaf(p), imp_i(1, p, Leaf(p, 1))))


def test_discharge_becomes_packaged_implication():
    proof, assumptions = both_ways(imp_i(1, p, Leaf(p, 1)))
    assert proof.conclusion == Imp(p, p)
    assert assumptions == ()


def test_vacuous_discharge_over_closed_subtree():
    proof, _ = both_ways(imp_i(1, p, imp_i(2, q, Leaf(q, 2))))
    assert proof.conclusion == Imp(p, Imp(q, q))


def test_case_split_without_residue():
    tree = or_e(1, 2, Leaf(Or(p, q)), or_i2(q, Leaf(p, 1)), or_i1(Leaf(q, 2), p))
    proof, assumptions = both_ways(tree)
    assert proof.conclusion == Or(q, p)
    assert assumptions == (Or(p, q),)


def test_case_split_with_residue():
    tree = or_e(
        1,
        2,
        Leaf(Or(p, q)),
        and_e1(and_i(Leaf(r), Leaf(p, 1))),
        and_e1(and_i(Leaf(r), Leaf(q, 2))),
    )
    proof, assumptions = both_ways(tree)
    assert proof.conclusion == r
    assert set(assumptions) == {Or(p, q), r}


def test_case_split_partial_discharge():
    # p occurs both labelled (discharged) and bare (left open)
    tree = or_e(
        1,
        2,
        Leaf(Or(p, q)),
        and_e1(and_i(Leaf(p), Leaf(p, 1))),
        and_e2(and_i(Leaf(q, 2), Leaf(p))),
    )
    _, assumptions = both_ways(tree)
    assert set(assumptions) == {Or(p, q), p}


def test_case_split_vacuous_minors():
    tree = or_e(1, 2, Leaf(Or(p, q)), Leaf(r), Leaf(r))
    _, assumptions = both_ways(tree)
    assert set(assumptions) == {Or(p, q), r}


def test_case_split_asymmetric_residue():
    tree = or_e(
        1,
        2,
        Leaf(Or(p, q)),
        and_e2(and_i(Leaf(r), Leaf(s))),
        and_e1(and_i(Leaf(s), Leaf(q, 2))),
    )
    _, assumptions = both_ways(tree)
    assert set(assumptions) == {Or(p, q), r, s}


def test_case_split_with_derived_major():
    tree = or_e(
        1,
        2,
        imp_e(Leaf(s), imp_i(9, s, or_i1(Leaf(s, 9), q))),
        or_i2(q, Leaf(s, 1)),
        or_i1(Leaf(q, 2), s),
    )
    _, assumptions = both_ways(tree)
    assert assumptions == (s,)


def test_paired_closed_rules():
    both_ways(imp_i1(1, 2, r, Leaf(p, 1), Leaf(p, 2)))
    both_ways(imp_i2(1, 2, r, Leaf(p, 1), Leaf(p, 2)))
    c1 = and_i(and_e2(Leaf(And(p, q), 1)), and_e1(Leaf(And(p, q), 1)))
    c2 = and_i(and_e2(Leaf(And(q, p), 2)), and_e1(Leaf(And(q, p), 2)))
    proof, _ = both_ways(imp_i1(1, 2, r, c1, c2))
    assert proof.conclusion == Imp(Imp(r, And(p, q)), Imp(r, And(q, p)))


def test_four_child_binder():
    logic = parse_logic("WFN")
    tree = imp_in(
        11,
        12,
        13,
        14,
        or_i1(Leaf(p, 11), q),
        Leaf(q, 12),
        or_i1(Leaf(p, 13), q),
        Leaf(q, 14),
    )
    proof, _ = both_ways(tree, logic)
    assert proof.conclusion == Imp(Imp(p, q), Imp(p, q))


def test_two_child_binder():
    logic = parse_logic("WFN2")
    tree = imp_in2(21, 22, q, p, or_i1(Leaf(p, 21), q), Leaf(q, 22))
    proof, _ = both_ways(tree, logic)
    assert proof.conclusion == Imp(Imp(p, q), Imp(p, q))


def test_binders_with_coinciding_discharge_formulas():
    # With A = B = C = D the exported premises fold a repeated assumption,
    # and the rebuilt lines still need the two-sided shape (x & x) -> x.
    logic = parse_logic("WFN")
    tree = imp_in(
        11,
        12,
        13,
        14,
        or_i1(Leaf(p, 11), p),
        Leaf(p, 12),
        or_i1(Leaf(p, 13), p),
        Leaf(p, 14),
    )
    proof, _ = both_ways(tree, logic)
    assert proof.conclusion == Imp(Imp(p, p), Imp(p, p))

    logic = parse_logic("WFN2")
    tree = imp_in2(21, 22, p, p, or_i1(Leaf(p, 21), p), Leaf(p, 22))
    proof, _ = both_ways(tree, logic)
    assert proof.conclusion == Imp(Imp(p, p), Imp(p, p))


def test_context_rules():
    logic = parse_logic("WFCHAT")
    tree = imp_i_chat(5, And(p, q), r, and_e1(Leaf(And(p, q), 5)))
    proof, _ = both_ways(tree, logic)
    assert proof.conclusion == Imp(Imp(r, And(p, q)), Imp(r, p))

    logic = parse_logic("WFDHAT")
    tree = imp_i_dhat(6, p, r, or_i1(Leaf(p, 6), q))
    proof, _ = both_ways(tree, logic)
    assert proof.conclusion == Imp(Imp(Or(p, q), r), Imp(p, r))


def test_unrestricted_pair_rules_keep_opens():
    proof, assumptions = both_ways(
        imp_i_conj(Leaf(Imp(p, q)), Leaf(Imp(p, r))), parse_logic("WFC")
    )
    assert set(assumptions) == {Imp(p, q), Imp(p, r)}
    both_ways(imp_i_disj(Leaf(Imp(p, r)), Leaf(Imp(q, r))), parse_logic("WFD"))
    both_ways(imp_i_trans(Leaf(Imp(p, q)), Leaf(Imp(q, r))), parse_logic("WFI"))


def test_nested_binders():
    inner = or_e(
        3,
        4,
        Leaf(Or(p, p), 5),
        imp_e(Leaf(p, 3), imp_i(6, p, and_i(Leaf(p, 6), Leaf(p, 6)))),
        imp_e(Leaf(p, 4), imp_i(7, p, and_i(Leaf(p, 7), Leaf(p, 7)))),
    )
    proof, _ = both_ways(imp_i(5, Or(p, p), inner), parse_logic("F"))
    assert proof.conclusion == Imp(Or(p, p), And(p, p))


def test_rejected_tree_is_not_translated():
    with pytest.raises(TranslationError):
        nd_to_hilbert(imp_e(Leaf(p), Leaf(Imp(p, q))), WF)


# --- round trips ------------------------------------------------------------


def test_round_trip_through_the_tree_system():
    proof = HilbertProof.of([
        Line(p, Assumption()),
        Line(q, Assumption()),
        Line(And(p, q), RuleApp(RuleId.CONJ, (0, 1))),
        Line(Imp(And(p, q), p), AxiomUse(SchemaId.AX3)),
        Line(p, RuleApp(RuleId.MP, (2, 3))),
    ])
    tree = hilbert_to_nd(proof, WF, [p, q])
    back, assumptions = nd_to_hilbert(tree, WF)
    report = accepted_hilbert(back, WF, assumptions)
    assert report.conclusion == p
    assert set(assumptions) <= {p, q}


def test_round_trip_through_the_linear_system():
    tree = or_e(
        1,
        2,
        Leaf(Or(p, q)),
        and_e1(and_i(Leaf(r), Leaf(p, 1))),
        and_e1(and_i(Leaf(r), Leaf(q, 2))),
    )
    first = check_nd(tree, WF)
    proof, assumptions = nd_to_hilbert(tree, WF)
    tree2 = hilbert_to_nd(proof, WF, assumptions)
    second = check_nd(tree2, WF)
    assert second.accepted
    assert second.conclusion == first.conclusion
    assert second.opens == first.opens


@pytest.mark.parametrize("logic_name", sorted(PRESETS))
def test_distribution_axiom_round_trips_everywhere(logic_name):
    logic = PRESETS[logic_name]
    formula = parse_formula("p & (q | r) -> p & q | p & r")
    proof = HilbertProof.of([Line(formula, AxiomUse(SchemaId.AX7))])
    tree = hilbert_to_nd(proof, logic)
    back, assumptions = nd_to_hilbert(tree, logic)
    assert back.conclusion == formula
    assert assumptions == ()


def test_translation_composes_with_deduction_transforms():
    dependent = HilbertProof.of([
        Line(p, Assumption()),
        Line(Imp(p, Or(p, q)), AxiomUse(SchemaId.AX1)),
        Line(Or(p, q), RuleApp(RuleId.MP, (0, 1))),
    ])
    exported = weak_deduction_export(dependent, [p], WF)
    reimported = weak_deduction_import(exported, WF)
    assert check_nd(hilbert_to_nd(exported, WF), WF).opens == frozenset()
    assert check_nd(hilbert_to_nd(reimported, WF, [p]), WF).opens == frozenset({p})


@given(formulas)
def test_identity_derivation_round_trips(f):
    tree = imp_i(1, f, Leaf(f, 1))
    proof, assumptions = nd_to_hilbert(tree, WF)
    assert proof.conclusion == Imp(f, f)
    assert assumptions == ()
    tree2 = hilbert_to_nd(proof, WF)
    report = check_nd(tree2, WF)
    assert report.accepted
    assert report.conclusion == Imp(f, f)
