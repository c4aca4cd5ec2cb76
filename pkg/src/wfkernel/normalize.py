"""Cut detection and normalization by stepwise conversion.

A checked derivation is normal when every major premise of an
elimination is an assumption or the conclusion of an elimination other
than OrE.  A violation is a cut.  Each cut shape has one conversion,
and the driver applies conversions at the rightmost cut of maximal
rank until none remains.

Rightmost means greatest position in post-order with major premises
visited first.  Stored child order already puts the major first in
every elimination except ImpE, so the selection traversal swaps only
ImpE's visit order; see order_major_left.

Conversions that substitute a derivation for discharged leaves insert
one copy per occurrence.  Labels bound inside a copy are renamed past
every label of the whole tree, labels bound outside stay put.  The
driver re-checks after each step and never returns a tree the checker
rejects.

Normalization runs the checker in its default, non-strict mode: a
conversion may discard the last occurrence of a discharged hypothesis,
which is exactly the vacuous discharge the strict flag forbids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .formula import Formula, rank
from .logic import LogicSpec
from .natded import (
    ELIMS,
    INTROS,
    MAJOR_CHILD,
    Leaf,
    NDNode,
    NDRuleId,
    Path,
    RuleNode,
    and_i,
    check_nd,
    freshen,
    graft_labeled,
    imp_e,
    imp_i,
    max_label,
    node_at,
    or_e,
    subnodes,
)

__all__ = [
    "CutOccurrence",
    "CutMeasure",
    "TraceStep",
    "ReductionError",
    "KernelDefect",
    "order_major_left",
    "is_normal",
    "find_cuts",
    "cut_measure",
    "reduce_once",
    "normalize",
    "normalize_trace",
]


class ReductionError(Exception):
    """No conversion applies where one was requested."""


class KernelDefect(RuntimeError):
    """A reduction step misbehaved; the result cannot be trusted."""


@dataclass(frozen=True)
class CutOccurrence:
    """A formula occurrence that feeds an elimination as its major
    premise while being the conclusion of OrE or of an introduction."""

    position: Path
    formula: Formula
    rank: int


@dataclass(frozen=True, order=True)
class CutMeasure:
    """Lexicographic termination measure.

    d is the greatest rank among cut formulas, 0 without cuts.  l sums,
    over the cuts of rank d, the weight of the segment bundle ending at
    that occurrence: the number of its occurrences that conclude an
    introduction or an OrE, the cut itself included.
    """

    d: int
    l: int


@dataclass(frozen=True)
class TraceStep:
    position: Path
    conversion: str
    before: CutMeasure
    after: CutMeasure


def order_major_left(d: NDNode) -> NDNode:
    """Presentation order used by redex selection.

    Every stored elimination already lists its major premise first
    except ImpE, whose (minor, major) layout the checker fixes.  The
    selection traversal therefore visits ImpE's major side before its
    minor side rather than reordering children, and as a tree map this
    transform is the identity, so the checker's verdict is untouched.
    """
    return d


def _visit_first(node: RuleNode) -> tuple[int, ...]:
    if node.rule is NDRuleId.IMP_E:
        return (1, 0)
    return tuple(range(len(node.children)))


def _postorder(root: NDNode) -> dict[Path, int]:
    """Position of every node in major-first post-order."""
    order: dict[Path, int] = {}

    def walk(node: NDNode, path: Path) -> None:
        if isinstance(node, RuleNode):
            for i in _visit_first(node):
                walk(node.children[i], path + (i,))
        order[path] = len(order)

    walk(root, ())
    return order


def is_normal(d: NDNode) -> bool:
    """True when no elimination consumes an introduction or a case
    split through its major premise."""
    for _, node in subnodes(d):
        if not (isinstance(node, RuleNode) and node.rule in MAJOR_CHILD):
            continue
        spot = MAJOR_CHILD[node.rule]
        if len(node.children) <= spot:
            continue
        major = node.children[spot]
        if isinstance(major, Leaf):
            continue
        if major.rule in ELIMS and major.rule is not NDRuleId.OR_E:
            continue
        return False
    return True


def _cuts_from(
    root: NDNode, concls: Mapping[Path, Formula | None]
) -> list[CutOccurrence]:
    out: list[CutOccurrence] = []
    for path, node in subnodes(root):
        if not (isinstance(node, RuleNode) and node.rule in MAJOR_CHILD):
            continue
        spot = MAJOR_CHILD[node.rule]
        if len(node.children) <= spot:
            continue
        major = node.children[spot]
        if isinstance(major, Leaf):
            continue
        if major.rule in INTROS or major.rule is NDRuleId.OR_E:
            where = path + (spot,)
            formula = concls.get(where)
            if formula is None:
                raise ValueError(
                    f"cannot rank the cut at {where}: the derivation does not check"
                )
            out.append(CutOccurrence(where, formula, rank(formula)))
    order = _postorder(root)
    out.sort(key=lambda cut: order[cut.position])
    return out


def find_cuts(d: NDNode) -> list[CutOccurrence]:
    """All cut occurrences, leftmost first in presentation order."""
    return _cuts_from(d, check_nd(d).conclusions)


def _weight(node: NDNode) -> int:
    """Weight of the segment bundle ending at this occurrence.

    Counts the occurrences in the bundle that conclude an introduction
    or an OrE; leaves and other eliminations carry nothing.  A cut
    always weighs at least one (its occurrence qualifies by definition).
    Pushing an elimination over OrE hands the bundle's branches to new
    cuts one level up, so a weight of one plus branches becomes just
    branches, and every other conversion removes a weight of exactly
    one; both strictly shrink the sum.
    """
    if isinstance(node, RuleNode) and node.rule is NDRuleId.OR_E:
        return 1 + _weight(node.children[1]) + _weight(node.children[2])
    if isinstance(node, RuleNode) and node.rule in INTROS:
        return 1
    return 0


def _measure_from(root: NDNode, cuts: list[CutOccurrence]) -> CutMeasure:
    if not cuts:
        return CutMeasure(0, 0)
    top = max(cut.rank for cut in cuts)
    total = sum(
        _weight(node_at(root, cut.position)) for cut in cuts if cut.rank == top
    )
    return CutMeasure(top, total)


def cut_measure(d: NDNode) -> CutMeasure:
    return _measure_from(d, find_cuts(d))


# --- label discipline for copied material ---------------------------------


def _bound_inside(tree: NDNode) -> set[int]:
    out: set[int] = set()
    for _, node in subnodes(tree):
        if isinstance(node, RuleNode):
            out.update(node.labels)
    return out


def _free_labels(tree: NDNode) -> set[int]:
    """Labels on leaves whose discharging node sits outside the tree."""
    bound = _bound_inside(tree)
    return {
        node.label
        for _, node in subnodes(tree)
        if isinstance(node, Leaf) and node.label is not None and node.label not in bound
    }


def _has_local_opens(tree: NDNode) -> bool:
    bound = _bound_inside(tree)
    return any(
        isinstance(node, Leaf) and (node.label is None or node.label not in bound)
        for _, node in subnodes(tree)
    )


class _Copier:
    """Fresh labels for material a conversion duplicates.

    Copies keep labels whose binders sit outside the copied subtree and
    rename the rest starting past every label of the original tree, so
    grafting never has to touch the host's labels.
    """

    def __init__(self, start: int) -> None:
        self._next = start

    def take(self) -> int:
        lab = self._next
        self._next += 1
        return lab

    def _absorb(self, tree: NDNode) -> NDNode:
        self._next = max(self._next, max_label(tree) + 1)
        return tree

    def copy(self, tree: NDNode, remap: Mapping[int, int] | None = None) -> NDNode:
        pinned = {lab: lab for lab in _free_labels(tree)}
        if remap:
            pinned.update(remap)
        return self._absorb(freshen(tree, pinned=pinned, start=self._next))

    def graft(self, host: NDNode, label: int, replacement: NDNode) -> NDNode:
        """Replace the host's leaves carrying ``label`` by copies of the
        replacement, one fresh relabeling per copy, shared externally
        bound labels."""
        rep = self.copy(replacement)
        keep = {lab: lab for lab in _free_labels(rep)}
        return self._absorb(graft_labeled(host, label, rep, pinned=keep))


# --- one conversion per cut shape ------------------------------------------


def _unsupported(why: str) -> ReductionError:
    return ReductionError(f"unsupported redex shape: {why}")


def _needs_imp_minor(minor: NDNode, major: RuleNode) -> RuleNode:
    if isinstance(minor, RuleNode) and minor.rule is NDRuleId.IMP_I:
        return minor
    kind = minor.rule.value if isinstance(minor, RuleNode) else "an assumption"
    raise _unsupported(
        f"eliminating a {major.rule.value} conclusion needs the minor premise "
        f"built by ImpI, got {kind}"
    )


def _contract(
    root: NDNode,
    concls: Mapping[Path, Formula | None],
    cut: CutOccurrence,
    fresh: _Copier,
) -> tuple[str, NDNode]:
    """The replacement for the elimination above the cut.

    Returns the conversion name and the subtree that takes the
    elimination node's place.
    """
    elim_path = cut.position[:-1]
    elim = node_at(root, elim_path)
    major = node_at(root, cut.position)
    assert isinstance(elim, RuleNode) and isinstance(major, RuleNode)
    name = f"{elim.rule.value}-over-{major.rule.value}"
    grown = concls[cut.position]

    match elim.rule:
        case NDRuleId.AND_E1 | NDRuleId.AND_E2 | NDRuleId.BOT_E:
            if major.rule is NDRuleId.OR_E:
                push = lambda branch: RuleNode(
                    elim.rule, elim.labels, elim.formulas, (branch,)
                )
                return name, or_e(
                    major.labels[0],
                    major.labels[1],
                    major.children[0],
                    push(major.children[1]),
                    push(major.children[2]),
                )
            if elim.rule is not NDRuleId.BOT_E and major.rule is NDRuleId.AND_I:
                picked = 0 if elim.rule is NDRuleId.AND_E1 else 1
                return name, major.children[picked]

        case NDRuleId.OR_E:
            la, lb = elim.labels
            _, keep_left, keep_right = elim.children
            if major.rule is NDRuleId.OR_I1:
                return name, fresh.graft(keep_left, la, major.children[0])
            if major.rule is NDRuleId.OR_I2:
                return name, fresh.graft(keep_right, lb, major.children[0])
            if major.rule is NDRuleId.OR_E:
                la2, lb2 = fresh.take(), fresh.take()
                left = or_e(la, lb, major.children[1], keep_left, keep_right)
                right = or_e(
                    la2,
                    lb2,
                    major.children[2],
                    fresh.copy(keep_left, {la: la2}),
                    fresh.copy(keep_right, {lb: lb2}),
                )
                return name, or_e(
                    major.labels[0], major.labels[1], major.children[0], left, right
                )

        case NDRuleId.IMP_E:
            minor = elim.children[0]
            match major.rule:
                case NDRuleId.IMP_I:
                    return name, fresh.graft(
                        major.children[0], major.labels[0], minor
                    )

                case NDRuleId.OR_E:
                    for branch in (major.children[1], major.children[2]):
                        if _has_local_opens(branch):
                            raise _unsupported(
                                "the case split feeding ImpE discharges an "
                                "assumption; pushing the elimination into its "
                                "branches would leave that assumption open "
                                "under an ImpE major premise"
                            )
                    return name, or_e(
                        major.labels[0],
                        major.labels[1],
                        major.children[0],
                        imp_e(minor, major.children[1]),
                        imp_e(fresh.copy(minor), major.children[2]),
                    )

                case NDRuleId.IMP_I1:
                    # (a -> B) -> (a -> D): pipe the minor's body into the
                    # major's first child at its [B] leaves.
                    body = _needs_imp_minor(minor, major)
                    hyp_label = body.labels[0]
                    return name, imp_i(
                        hyp_label,
                        major.formulas[0],
                        fresh.graft(
                            major.children[0], major.labels[0], body.children[0]
                        ),
                    )

                case NDRuleId.IMP_I2:
                    # (B -> a) -> (D -> a): the mirror image, piping the
                    # major's second child into the minor's body.
                    body = _needs_imp_minor(minor, major)
                    assert grown is not None
                    d_formula = grown.right.left  # type: ignore[union-attr]
                    return name, imp_i(
                        major.labels[1],
                        d_formula,
                        fresh.graft(
                            body.children[0], body.labels[0], major.children[1]
                        ),
                    )

                case NDRuleId.IMP_IN:
                    body = _needs_imp_minor(minor, major)
                    assert grown is not None
                    c_formula = grown.right.left  # type: ignore[union-attr]
                    d_formula = grown.right.right  # type: ignore[union-attr]
                    lab_c, lab_b = major.labels[2], major.labels[3]
                    spare = fresh.take()
                    return name, imp_i(
                        lab_c,
                        c_formula,
                        or_e(
                            body.labels[0],
                            spare,
                            major.children[2],
                            fresh.graft(
                                major.children[3], lab_b, body.children[0]
                            ),
                            Leaf(d_formula, spare),
                        ),
                    )

                case NDRuleId.IMP_IN2:
                    body = _needs_imp_minor(minor, major)
                    assert grown is not None
                    c_formula = grown.right.left  # type: ignore[union-attr]
                    d_formula = grown.right.right  # type: ignore[union-attr]
                    lab_c, lab_b = major.labels
                    spare = fresh.take()
                    return name, imp_i(
                        lab_c,
                        c_formula,
                        or_e(
                            body.labels[0],
                            spare,
                            major.children[0],
                            fresh.graft(
                                major.children[1], lab_b, body.children[0]
                            ),
                            Leaf(d_formula, spare),
                        ),
                    )

                case NDRuleId.IMP_I_CHAT:
                    body = _needs_imp_minor(minor, major)
                    ctx = major.formulas[1]
                    return name, imp_i(
                        body.labels[0],
                        ctx,
                        fresh.graft(
                            major.children[0], major.labels[0], body.children[0]
                        ),
                    )

                case NDRuleId.IMP_I_DHAT:
                    body = _needs_imp_minor(minor, major)
                    hyp = major.formulas[0]
                    return name, imp_i(
                        major.labels[0],
                        hyp,
                        fresh.graft(
                            body.children[0], body.labels[0], major.children[0]
                        ),
                    )

                case NDRuleId.IMP_I_CONJ:
                    return name, and_i(
                        imp_e(minor, major.children[0]),
                        imp_e(fresh.copy(minor), major.children[1]),
                    )

                case NDRuleId.IMP_I_DISJ:
                    if isinstance(minor, RuleNode) and minor.rule is NDRuleId.OR_I1:
                        return name, imp_e(minor.children[0], major.children[0])
                    if isinstance(minor, RuleNode) and minor.rule is NDRuleId.OR_I2:
                        return name, imp_e(minor.children[0], major.children[1])
                    kind = (
                        minor.rule.value
                        if isinstance(minor, RuleNode)
                        else "an assumption"
                    )
                    raise _unsupported(
                        "eliminating an ImpIDisj conclusion needs the minor "
                        f"premise built by OrI1 or OrI2, got {kind}"
                    )

                case NDRuleId.IMP_I_TRANS:
                    return name, imp_e(
                        imp_e(minor, major.children[0]), major.children[1]
                    )

    raise _unsupported(f"no conversion eliminates {major.rule.value} here")


# --- selection and the driver ----------------------------------------------

# Conversions that insert copies of material from inside the selected
# cut's own subtree.  Duplicating a maximal-rank cut there would break
# descent, so selection re-descends first.
_DUPLICATES_MAJOR_SIDE = {
    (NDRuleId.OR_E, NDRuleId.OR_I1),
    (NDRuleId.OR_E, NDRuleId.OR_I2),
    (NDRuleId.IMP_E, NDRuleId.IMP_I2),
    (NDRuleId.IMP_E, NDRuleId.IMP_I_DHAT),
}


def _select(root: NDNode, cuts: list[CutOccurrence]) -> CutOccurrence:
    order = _postorder(root)
    top = max(cut.rank for cut in cuts)
    pool = [cut for cut in cuts if cut.rank == top]
    chosen = max(pool, key=lambda cut: order[cut.position])

    def shape(cut: CutOccurrence) -> tuple[NDRuleId, NDRuleId]:
        parent = node_at(root, cut.position[:-1])
        node = node_at(root, cut.position)
        assert isinstance(parent, RuleNode) and isinstance(node, RuleNode)
        return parent.rule, node.rule

    while shape(chosen) in _DUPLICATES_MAJOR_SIDE:
        inside = [
            cut
            for cut in pool
            if len(cut.position) > len(chosen.position)
            and cut.position[: len(chosen.position)] == chosen.position
        ]
        if not inside:
            break
        chosen = max(inside, key=lambda cut: order[cut.position])
    return chosen


def _replace_at(root: NDNode, path: Path, new: NDNode) -> NDNode:
    if not path:
        return new
    assert isinstance(root, RuleNode)
    children = list(root.children)
    children[path[0]] = _replace_at(children[path[0]], path[1:], new)
    return RuleNode(root.rule, root.labels, root.formulas, tuple(children))


def _apply(
    root: NDNode,
    concls: Mapping[Path, Formula | None],
    cuts: list[CutOccurrence],
    logic: LogicSpec,
) -> tuple[NDNode, Mapping[Path, Formula | None], TraceStep]:
    chosen = _select(root, cuts)
    fresh = _Copier(max_label(root) + 1)
    name, replacement = _contract(root, concls, chosen, fresh)
    out = _replace_at(root, chosen.position[:-1], replacement)
    report = check_nd(out, logic)
    if not report.accepted:
        first = report.diagnostics[0]
        raise KernelDefect(
            f"conversion {name} at {chosen.position} produced a derivation "
            f"the checker rejects: {first}"
        )
    step = TraceStep(
        position=chosen.position,
        conversion=name,
        before=_measure_from(root, cuts),
        after=_measure_from(out, _cuts_from(out, report.conclusions)),
    )
    return out, report.conclusions, step


def reduce_once(d: NDNode, logic: LogicSpec | None = None) -> NDNode:
    """Apply one conversion at the rightmost cut of maximal rank."""
    logic = logic if logic is not None else LogicSpec()
    report = check_nd(d, logic)
    if not report.accepted:
        raise ValueError(
            "reduce_once needs a derivation the checker accepts; "
            + "; ".join(str(diag) for diag in report.diagnostics)
        )
    cuts = _cuts_from(d, report.conclusions)
    if not cuts:
        raise ReductionError("no reducible cut")
    out, _, _ = _apply(d, report.conclusions, cuts, logic)
    return out


def normalize_trace(
    d: NDNode, logic: LogicSpec | None = None
) -> tuple[NDNode, tuple[TraceStep, ...]]:
    """Like normalize, also returning one record per reduction step."""
    logic = logic if logic is not None else LogicSpec()
    report = check_nd(d, logic)
    if not report.accepted:
        raise ValueError(
            "normalize needs a derivation the checker accepts; "
            + "; ".join(str(diag) for diag in report.diagnostics)
        )

    concls = report.conclusions
    nodes = sum(1 for _ in subnodes(d))
    widest = max(
        (rank(f) for f in concls.values() if f is not None), default=1
    )
    budget = 10 * nodes * widest

    steps: list[TraceStep] = []
    current = d
    while True:
        cuts = _cuts_from(current, concls)
        if not cuts:
            break
        if len(steps) >= budget:
            raise KernelDefect(
                f"no normal form within {budget} steps; the descent argument "
                "admits no such run, so a conversion must be wrong"
            )
        current, concls, step = _apply(current, concls, cuts, logic)
        steps.append(step)
    return current, tuple(steps)


def normalize(d: NDNode, logic: LogicSpec | None = None) -> NDNode:
    """Reduce to a derivation with no cuts, preserving the conclusion.

    Open assumptions can only shrink; conversions may discard branches
    whose hypotheses were never used.
    """
    return normalize_trace(d, logic)[0]
