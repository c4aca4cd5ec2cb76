from hypothesis import given

from wfkernel.formula import And, Atom, BOT, Imp, Or
from wfkernel.logic import PRESETS
from wfkernel.natded import (
    Leaf,
    NDRuleId,
    RuleNode,
    and_e1,
    and_e2,
    and_i,
    available_nd_rules,
    bot_e,
    check_nd,
    freshen,
    graft,
    graft_labeled,
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
    labels_in,
    max_label,
    node_at,
    open_assumptions,
    or_e,
    or_i1,
    or_i2,
    subnodes,
)

from .strategies import formulas

a, b, c, d = Atom("a"), Atom("b"), Atom("c"), Atom("d")
p, q = Atom("p"), Atom("q")
WF = PRESETS["WF"]


def codes(report):
    return [diag.code for diag in report.diagnostics]


# --- conclusions per rule -------------------------------------------------


def test_identity_derivation():
    report = check_nd(imp_i(1, a, Leaf(a, 1)))
    assert report.accepted
    assert report.conclusion == Imp(a, a)
    assert report.opens == frozenset()


def test_and_rules():
    tree = and_i(and_e2(Leaf(And(a, b))), and_e1(Leaf(And(a, b))))
    report = check_nd(tree)
    assert report.accepted
    assert report.conclusion == And(b, a)
    assert report.opens == {And(a, b)}


def test_or_introductions():
    assert check_nd(or_i1(Leaf(a), b)).conclusion == Or(a, b)
    assert check_nd(or_i2(a, Leaf(b))).conclusion == Or(a, b)


def test_bot_elimination():
    report = check_nd(bot_e(a, Leaf(BOT)))
    assert report.accepted
    assert report.conclusion == a
    report = check_nd(bot_e(a, Leaf(b)))
    assert codes(report) == ["rule-shape"]


def test_or_elimination_discharges_each_side():
    tree = or_e(
        1,
        2,
        Leaf(Or(a, b)),
        or_i1(Leaf(a, 1), b),
        or_i2(a, Leaf(b, 2)),
    )
    report = check_nd(tree)
    assert report.accepted
    assert report.conclusion == Or(a, b)
    assert report.opens == {Or(a, b)}


def test_or_elimination_minors_must_agree():
    tree = or_e(1, 2, Leaf(Or(a, b)), Leaf(c), Leaf(d))
    assert codes(check_nd(tree)) == ["rule-shape"]


def test_or_elimination_allows_partial_and_vacuous_discharge():
    partial = or_e(
        1,
        2,
        Leaf(Or(a, b)),
        and_e1(and_i(Leaf(a, 1), Leaf(a))),
        Leaf(a),
    )
    report = check_nd(partial)
    assert report.accepted
    assert report.opens == {Or(a, b), a}


def test_imp_e_computes_the_consequent():
    major = imp_i(1, a, Leaf(a, 1))
    report = check_nd(imp_e(Leaf(a), major))
    assert report.accepted
    assert report.conclusion == a
    assert report.opens == {a}


# --- the three closure side conditions ------------------------------------


def test_imp_i_blocks_extra_open_assumptions():
    tree = imp_i(1, a, and_i(Leaf(a, 1), Leaf(b)))
    report = check_nd(tree)
    assert not report.accepted
    assert codes(report) == ["imp-i-open-assumptions"]


def test_imp_i_allows_vacuous_discharge_by_default():
    tree = imp_i(1, a, imp_i(2, b, Leaf(b, 2)))
    report = check_nd(tree)
    assert report.accepted
    assert report.conclusion == Imp(a, Imp(b, b))


def test_strict_star_rejects_vacuous_discharge():
    tree = imp_i(1, a, imp_i(2, b, Leaf(b, 2)))
    report = check_nd(tree, strict_star=True)
    assert not report.accepted
    assert "vacuous-discharge" in codes(report)
    assert check_nd(imp_i(1, a, Leaf(a, 1)), strict_star=True).accepted


def test_imp_e_rejects_hypothetical_major():
    tree = imp_e(Leaf(a), Leaf(Imp(a, b)))
    report = check_nd(tree)
    assert not report.accepted
    assert codes(report) == ["imp-e-open-major"]


def test_imp_e_rejects_major_with_any_open_leaf():
    major = and_e1(Leaf(And(Imp(a, b), c)))
    report = check_nd(imp_e(Leaf(a), major))
    assert codes(report) == ["imp-e-open-major"]


def test_imp_i1_needs_closed_subderivations():
    tree = imp_i1(1, 2, c, Leaf(b, 1), Leaf(b, 2))
    report = check_nd(tree)
    assert report.accepted
    assert report.conclusion == Imp(Imp(c, b), Imp(c, b))
    leaky = imp_i1(1, 2, c, and_e1(and_i(Leaf(b, 1), Leaf(d))), Leaf(b, 2))
    assert codes(check_nd(leaky)) == ["closed-subproof-required"]


def test_imp_i2_swaps_the_conclusion():
    tree = imp_i2(1, 2, c, Leaf(b, 1), Leaf(b, 2))
    report = check_nd(tree)
    assert report.accepted
    assert report.conclusion == Imp(Imp(b, c), Imp(b, c))


# --- extension rules and availability --------------------------------------


def test_imp_i1_disabled_once_something_stronger_is_present():
    tree = imp_i1(1, 2, c, Leaf(b, 1), Leaf(b, 2))
    assert check_nd(tree, WF).accepted
    assert check_nd(tree, PRESETS["WFC"]).accepted
    for name in ("WFI", "WFN", "WFN2", "F"):
        assert "rule-unavailable" in codes(check_nd(tree, PRESETS[name]))


def test_imp_in_binds_across_both_designated_children():
    tree = imp_in(
        1,
        2,
        3,
        4,
        or_i1(Leaf(p, 1), q),
        and_e2(and_i(Leaf(p, 1), Leaf(q, 2))),
        or_i1(Leaf(p, 3), q),
        and_e2(and_i(Leaf(p, 3), Leaf(q, 4))),
    )
    report = check_nd(tree, PRESETS["WFN"])
    assert report.accepted
    assert report.conclusion == Imp(Imp(p, q), Imp(p, q))
    assert "rule-unavailable" in codes(check_nd(tree, WF))


def test_imp_in_requires_closed_children():
    tree = imp_in(
        1,
        2,
        3,
        4,
        or_i1(Leaf(p, 1), q),
        Leaf(q, 2),
        or_i1(Leaf(p, 3), q),
        and_e2(and_i(Leaf(c), Leaf(q, 4))),
    )
    report = check_nd(tree, PRESETS["WFN"])
    assert codes(report) == ["closed-subproof-required"]


def test_imp_in2_accepts_seeded_instance():
    tree = imp_in2(
        1,
        2,
        q,
        p,
        or_i1(Leaf(p, 1), q),
        and_e2(and_i(Leaf(p, 1), Leaf(q, 2))),
    )
    report = check_nd(tree, PRESETS["WFN2"])
    assert report.accepted
    assert report.conclusion == Imp(Imp(p, q), Imp(p, q))
    assert "rule-unavailable" in codes(check_nd(tree, PRESETS["WFN"]))


def test_imp_i_chat_wraps_a_context():
    tree = imp_i_chat(1, a, c, Leaf(a, 1))
    report = check_nd(tree, PRESETS["WFCHAT"])
    assert report.accepted
    assert report.conclusion == Imp(Imp(c, a), Imp(c, a))
    assert "rule-unavailable" in codes(check_nd(tree, WF))


def test_imp_i_dhat_contraposes_the_context():
    tree = imp_i_dhat(1, a, c, or_i1(Leaf(a, 1), b))
    report = check_nd(tree, PRESETS["WFDHAT"])
    assert report.accepted
    assert report.conclusion == Imp(Imp(Or(a, b), c), Imp(a, c))


def test_rule_style_implication_builders_are_unrestricted():
    conj = imp_i_conj(Leaf(Imp(a, b)), Leaf(Imp(a, c)))
    report = check_nd(conj, PRESETS["WFC"])
    assert report.accepted
    assert report.conclusion == Imp(a, And(b, c))
    assert report.opens == {Imp(a, b), Imp(a, c)}

    disj = imp_i_disj(Leaf(Imp(a, c)), Leaf(Imp(b, c)))
    report = check_nd(disj, PRESETS["WFD"])
    assert report.accepted
    assert report.conclusion == Imp(Or(a, b), c)

    trans = imp_i_trans(Leaf(Imp(a, b)), Leaf(Imp(b, c)))
    report = check_nd(trans, PRESETS["WFI"])
    assert report.accepted
    assert report.conclusion == Imp(a, c)
    assert "rule-unavailable" in codes(check_nd(trans, WF))


def test_f_offers_all_three_rule_style_builders():
    avail = available_nd_rules(PRESETS["F"])
    assert NDRuleId.IMP_I_CONJ in avail
    assert NDRuleId.IMP_I_DISJ in avail
    assert NDRuleId.IMP_I_TRANS in avail
    assert NDRuleId.IMP_I1 not in avail


# --- label discipline ------------------------------------------------------


def test_duplicate_labels_are_rejected():
    tree = imp_i(1, a, imp_i(1, b, Leaf(b, 1)))
    report = check_nd(tree)
    assert "duplicate-label" in codes(report)


def test_label_formula_mismatch_is_pinned_to_the_leaf():
    tree = imp_i(1, a, Leaf(b, 1))
    report = check_nd(tree)
    assert "label-formula-mismatch" in codes(report)
    mismatch = [d for d in report.diagnostics if d.code == "label-formula-mismatch"]
    assert mismatch[0].where == "node 0"


def test_label_outside_its_region_dangles():
    tree = and_i(imp_i(1, a, Leaf(a, 1)), Leaf(a, 1))
    report = check_nd(tree)
    assert "dangling-label" in codes(report)


def test_undeclared_label_dangles():
    report = check_nd(Leaf(a, 9))
    assert codes(report) == ["dangling-label"]


def test_bad_arity_via_raw_node():
    tree = RuleNode(NDRuleId.AND_I, (), (), (Leaf(a),))
    assert codes(check_nd(tree)) == ["bad-arity"]


# --- reports, traversal, surgery -------------------------------------------


def test_open_assumptions_ignores_acceptance():
    tree = imp_e(Leaf(a), Leaf(Imp(a, b)))
    assert open_assumptions(tree) == {a, Imp(a, b)}


def test_conclusions_table_covers_every_path():
    tree = and_i(Leaf(a), or_i1(Leaf(b), c))
    report = check_nd(tree)
    assert report.conclusions[()] == And(a, Or(b, c))
    assert report.conclusions[(1,)] == Or(b, c)
    assert report.conclusions[(1, 0)] == b
    assert {path for path, _ in subnodes(tree)} == set(report.conclusions)


def test_node_at_walks_paths():
    tree = and_i(Leaf(a), or_i1(Leaf(b), c))
    assert node_at(tree, ()) is tree
    assert node_at(tree, (1, 0)) == Leaf(b)


def test_graft_replaces_unlabeled_leaves():
    host = and_i(Leaf(a), Leaf(a, 1))
    out = graft(host, a, and_e1(Leaf(And(a, b))))
    assert node_at(out, (0,)) == and_e1(Leaf(And(a, b)))
    assert node_at(out, (1,)) == Leaf(a, 1)


def test_graft_labeled_pins_shared_targets():
    host = and_i(Leaf(a, 7), Leaf(a, 7))
    replacement = imp_i(3, c, Leaf(c, 3))
    out = graft_labeled(host, 7, replacement)
    report = check_nd(and_i(out, out))  # duplicate labels would collide
    assert not report.accepted  # the two copies of `out` share labels
    single = check_nd(out)
    assert single.accepted
    assert len(labels_in(out)) == 2  # one fresh label per inserted copy


def test_graft_labeled_with_pinned_mapping_rebinds():
    host = Leaf(a, 7)
    replacement = Leaf(a, 3)
    out = graft_labeled(host, 7, replacement, pinned={3: 11})
    assert out == Leaf(a, 11)


def test_freshen_keeps_structure_and_renames_labels():
    tree = imp_i(1, a, and_i(Leaf(a, 1), Leaf(a, 1)))
    fresh = freshen(tree, start=40)
    assert max_label(tree) == 1
    assert labels_in(fresh) == {40}
    assert check_nd(fresh).accepted


@given(formulas)
def test_identity_holds_for_every_formula(f):
    report = check_nd(imp_i(1, f, Leaf(f, 1)))
    assert report.accepted
    assert report.conclusion == Imp(f, f)


@given(formulas)
def test_accepted_reports_have_no_diagnostics(f):
    tree = imp_e(Leaf(f), imp_i(1, f, Leaf(f, 1)))
    report = check_nd(tree)
    assert report.accepted == (not report.diagnostics)
    assert report.opens == {f}
