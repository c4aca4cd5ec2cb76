"""Batch front end for proof documents.

Four commands, all reading the S-expression document format:

* ``check``      parse one document and run the matching checker
* ``normalize``  rewrite an accepted derivation to normal form
* ``translate``  move a proof between the linear and the tree style
* ``corpus``     check every document under a directory against its
                 ``(expect ...)`` clause

Exit status is 0 when the input is accepted (or the whole corpus
matches), 1 when it is rejected (or some corpus file disagrees with its
expectation), and 2 when the input is malformed: unreadable, not a
well-formed document, the wrong proof kind for the command, or an
unknown logic name.

Reports go to standard output as text, or as one JSON object behind
``--format json``.  Malformed-input errors always go to standard error
as plain text.  ``-`` names standard input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .formula import Formula, format_formula
from .hilbert import Assumption, HilbertReport, check_hilbert
from .logic import LogicSpec, parse_logic
from .natded import NDReport, check_nd
from .normalize import TraceStep, normalize_trace
from .sexpr import Document, DocumentError, parse_document, render_document
from .translate import TranslationError, hilbert_to_nd, nd_to_hilbert

__all__ = ["main"]

OK = 0
REJECTED = 1
MALFORMED = 2


class _Malformed(Exception):
    """Input that never reaches a checker; maps to exit status 2."""


def _read_source(name: str) -> str:
    if name == "-":
        return sys.stdin.read()
    try:
        return Path(name).read_text()
    except OSError as err:
        raise _Malformed(f"cannot read {name}: {err.strerror or err}") from None


def _load_document(name: str) -> Document:
    try:
        return parse_document(_read_source(name))
    except DocumentError as err:
        raise _Malformed(f"{name}: {err}") from None


def _resolve_logic(doc: Document, flag: str | None) -> LogicSpec:
    """Pick the checking logic: flag beats document beats the WF default."""
    if flag is not None:
        try:
            return parse_logic(flag)
        except ValueError as err:
            raise _Malformed(str(err)) from None
    return doc.logic if doc.logic is not None else LogicSpec()


def _check_document(
    doc: Document, logic: LogicSpec, strict_star: bool
) -> NDReport | HilbertReport:
    if doc.kind == "nd":
        assert doc.nd is not None
        return check_nd(doc.nd, logic, strict_star=strict_star)
    assert doc.hilbert is not None
    return check_hilbert(doc.hilbert, logic, doc.assumptions or ())


def _assumption_strings(doc: Document, report: NDReport | HilbertReport) -> list[str]:
    """The assumptions the proof actually rests on, rendered and sorted."""
    if isinstance(report, NDReport):
        opens = report.opens
    else:
        assert doc.hilbert is not None
        opens = {
            line.formula
            for line in doc.hilbert.lines
            if isinstance(line.just, Assumption)
        }
    return sorted(format_formula(f) for f in opens)


def _diagnostic_payload(report: NDReport | HilbertReport) -> list[dict[str, str]]:
    return [
        {"where": d.where, "code": d.code, "message": d.message}
        for d in report.diagnostics
    ]


def _print_check_text(
    doc: Document, logic: LogicSpec, report: NDReport | HilbertReport
) -> None:
    verdict = "accepted" if report.accepted else "rejected"
    print(f"{verdict} (logic {logic.name}, kind {doc.kind})")
    if report.conclusion is not None:
        print(f"conclusion: {format_formula(report.conclusion)}")
    opens = _assumption_strings(doc, report)
    print("assumptions: " + ("; ".join(opens) if opens else "none"))
    for diag in report.diagnostics:
        print(str(diag))


def _print_check_json(
    doc: Document, logic: LogicSpec, report: NDReport | HilbertReport
) -> None:
    payload = {
        "command": "check",
        "kind": doc.kind,
        "logic": logic.name,
        "accepted": report.accepted,
        "conclusion": (
            format_formula(report.conclusion)
            if report.conclusion is not None
            else None
        ),
        "assumptions": _assumption_strings(doc, report),
        "diagnostics": _diagnostic_payload(report),
    }
    print(json.dumps(payload, indent=2))


def _cmd_check(args: argparse.Namespace) -> int:
    doc = _load_document(args.file)
    logic = _resolve_logic(doc, args.logic)
    report = _check_document(doc, logic, args.strict_star)
    if args.format == "json":
        _print_check_json(doc, logic, report)
    else:
        _print_check_text(doc, logic, report)
    return OK if report.accepted else REJECTED


def _step_where(step: TraceStep) -> str:
    path = ".".join(str(i) for i in step.position)
    return f"node {path}" if path else "root"


def _cmd_normalize(args: argparse.Namespace) -> int:
    doc = _load_document(args.file)
    if doc.kind != "nd":
        raise _Malformed("normalization applies to natural deduction only")
    logic = _resolve_logic(doc, args.logic)
    assert doc.nd is not None
    report = check_nd(doc.nd, logic, strict_star=args.strict_star)
    if not report.accepted:
        for diag in report.diagnostics:
            print(str(diag), file=sys.stderr)
        return REJECTED
    out, steps = normalize_trace(doc.nd, logic)
    result = Document(
        kind="nd",
        logic=logic,
        assumptions=doc.assumptions,
        expect=doc.expect,
        nd=out,
    )
    rendered = render_document(result)
    if args.format == "json":
        payload = {
            "command": "normalize",
            "logic": logic.name,
            "steps": [
                {
                    "position": list(step.position),
                    "conversion": step.conversion,
                    "before": [step.before.d, step.before.l],
                    "after": [step.after.d, step.after.l],
                }
                for step in steps
            ],
            "document": rendered,
        }
        print(json.dumps(payload, indent=2))
        return OK
    if args.trace:
        # comment lines keep the output parseable as a document
        for i, step in enumerate(steps, start=1):
            print(
                f"; step {i}: {step.conversion} at {_step_where(step)}: "
                f"({step.before.d}, {step.before.l}) -> "
                f"({step.after.d}, {step.after.l})"
            )
        if not steps:
            print("; already normal")
    print(rendered, end="")
    return OK


def _cmd_translate(args: argparse.Namespace) -> int:
    doc = _load_document(args.file)
    logic = _resolve_logic(doc, args.logic)
    target = args.to if args.to is not None else ("nd" if doc.kind == "hilbert" else "hilbert")
    if doc.kind == target:
        raise _Malformed(f"document is already of kind {doc.kind}")
    report = _check_document(doc, logic, args.strict_star)
    if not report.accepted:
        for diag in report.diagnostics:
            print(str(diag), file=sys.stderr)
        return REJECTED
    try:
        if target == "nd":
            assert doc.hilbert is not None
            result = Document(
                kind="nd",
                logic=logic,
                assumptions=None,
                expect=doc.expect,
                nd=hilbert_to_nd(doc.hilbert, logic, doc.assumptions or ()),
            )
        else:
            assert doc.nd is not None
            proof, used = nd_to_hilbert(doc.nd, logic)
            result = Document(
                kind="hilbert",
                logic=logic,
                assumptions=used,
                expect=doc.expect,
                hilbert=proof,
            )
    except TranslationError as err:
        print(str(err), file=sys.stderr)
        return REJECTED
    rendered = render_document(result)
    if args.format == "json":
        payload = {
            "command": "translate",
            "to": target,
            "logic": logic.name,
            "document": rendered,
        }
        print(json.dumps(payload, indent=2))
    else:
        print(rendered, end="")
    return OK


def _corpus_files(root: Path) -> list[Path]:
    if root.is_file():
        return [root]
    if not root.is_dir():
        raise _Malformed(f"no such file or corpus directory: {root}")
    files = sorted(
        path
        for path in root.rglob("*")
        if path.suffix in (".nd", ".hilbert") and path.is_file()
    )
    if not files:
        raise _Malformed(f"no .nd or .hilbert documents under {root}")
    return files


def _cmd_corpus(args: argparse.Namespace) -> int:
    files = _corpus_files(Path(args.directory))
    results: list[dict[str, object]] = []
    mismatches = 0
    errors = 0
    for path in files:
        entry: dict[str, object] = {"file": str(path)}
        try:
            doc = _load_document(str(path))
            logic = _resolve_logic(doc, args.logic)
            report = _check_document(doc, logic, args.strict_star)
        except _Malformed as err:
            errors += 1
            entry["status"] = "error"
            entry["detail"] = str(err)
            results.append(entry)
            continue
        expected = doc.expect or "accept"
        outcome = "accept" if report.accepted else "reject"
        entry["expected"] = expected
        entry["outcome"] = outcome
        if outcome == expected:
            entry["status"] = "ok"
        else:
            mismatches += 1
            entry["status"] = "mismatch"
            entry["detail"] = "; ".join(str(d) for d in report.diagnostics)
        results.append(entry)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "command": "corpus",
                    "results": results,
                    "mismatches": mismatches,
                    "errors": errors,
                },
                indent=2,
            )
        )
    else:
        for entry in results:
            line = f"{entry['status']:<8} {entry['file']}"
            if entry["status"] == "ok":
                line += f" ({entry['outcome']})"
            elif entry["status"] == "mismatch":
                line += f" (expected {entry['expected']}, got {entry['outcome']})"
            else:
                line += f" ({entry['detail']})"
            print(line)
        print(
            f"{len(results)} documents, {mismatches} mismatches, {errors} errors"
        )
    if errors:
        return MALFORMED
    return REJECTED if mismatches else OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wfkernel",
        description="Check, normalize and translate subintuitionistic proofs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--logic",
            metavar="NAME",
            help="override the document's logic (preset like WF, WFN, F, "
            "or an extension list like I,C)",
        )
        p.add_argument(
            "--strict-star",
            action="store_true",
            help="require every ImpI to use its own hypothesis",
        )
        p.add_argument(
            "--format",
            choices=("text", "json"),
            default="text",
            help="report format (default text)",
        )

    p_check = sub.add_parser("check", help="check one proof document")
    common(p_check)
    p_check.add_argument("file", help="document path, or - for stdin")
    p_check.set_defaults(func=_cmd_check)

    p_norm = sub.add_parser("normalize", help="normalize an nd document")
    common(p_norm)
    p_norm.add_argument(
        "--trace",
        action="store_true",
        help="prefix the output with one comment line per reduction step",
    )
    p_norm.add_argument("file", help="document path, or - for stdin")
    p_norm.set_defaults(func=_cmd_normalize)

    p_trans = sub.add_parser(
        "translate", help="translate between hilbert and nd documents"
    )
    common(p_trans)
    p_trans.add_argument(
        "--to",
        choices=("nd", "hilbert"),
        help="target kind (default: the other kind)",
    )
    p_trans.add_argument("file", help="document path, or - for stdin")
    p_trans.set_defaults(func=_cmd_translate)

    p_corpus = sub.add_parser(
        "corpus", help="check every document under a directory"
    )
    common(p_corpus)
    p_corpus.add_argument("directory", help="corpus directory (or one file)")
    p_corpus.set_defaults(func=_cmd_corpus)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return int(args.func(args))
    except _Malformed as err:
        print(f"error: {err}", file=sys.stderr)
        return MALFORMED


if __name__ == "__main__":
    sys.exit(main())
