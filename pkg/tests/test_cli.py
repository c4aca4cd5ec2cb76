import io
import json

import pytest

from wfkernel.cli import main
from wfkernel.natded import check_nd
from wfkernel.normalize import is_normal
from wfkernel.sexpr import parse_document

IDENTITY = '(document (kind nd) (proof (ImpI 1 "p" (assume 1 "p"))))\n'

REDEX = (
    "(document (kind nd) (proof\n"
    '  (ImpE (assume "p")\n'
    '        (ImpI 1 "p" (AndE1 (AndI (assume 1 "p") (assume 1 "p")))))))\n'
)

BAD_PROJECTION = '(document (kind nd) (proof (AndE1 (assume "p"))))\n'

SPLIT_PAIR = (
    "(document (kind nd) (proof\n"
    '  (ImpIConj (ImpI 1 "p" (assume 1 "p")) (ImpI 2 "p" (assume 2 "p")))))\n'
)

VACUOUS = '(document (kind nd) (proof (ImpI 1 "p" (ImpI 2 "q" (assume 2 "q")))))\n'

CONJ_PROOF = (
    '(document (kind hilbert) (assumptions "p" "q") (proof\n'
    '  (line 1 "p" (assume))\n'
    '  (line 2 "q" (assume))\n'
    '  (line 3 "p & q" (rule Conj 1 2))))\n'
)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


# --- check -------------------------------------------------------------------


def test_check_accepts_a_derivation(tmp_path, capsys):
    rc = main(["check", write(tmp_path, "id.nd", IDENTITY)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "accepted (logic WF, kind nd)" in out
    assert "conclusion: p -> p" in out
    assert "assumptions: none" in out


def test_check_rejects_with_diagnostics(tmp_path, capsys):
    rc = main(["check", write(tmp_path, "bad.nd", BAD_PROJECTION)])
    out = capsys.readouterr().out
    assert rc == 1
    assert "rejected" in out
    assert "rule-shape" in out


def test_check_emits_json(tmp_path, capsys):
    rc = main(["check", "--format", "json", write(tmp_path, "id.nd", IDENTITY)])
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert payload["accepted"] is True
    assert payload["conclusion"] == "p -> p"
    assert payload["logic"] == "WF"
    assert payload["diagnostics"] == []


def test_check_reads_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(IDENTITY))
    rc = main(["check", "-"])
    assert rc == 0
    assert "accepted" in capsys.readouterr().out


def test_logic_flag_overrides_the_document(tmp_path, capsys):
    path = write(tmp_path, "pair.nd", SPLIT_PAIR)
    assert main(["check", path]) == 1
    capsys.readouterr()
    assert main(["check", "--logic", "WFC", path]) == 0


def test_strict_star_rejects_vacuous_discharge(tmp_path, capsys):
    path = write(tmp_path, "vac.nd", VACUOUS)
    assert main(["check", path]) == 0
    capsys.readouterr()
    rc = main(["check", "--strict-star", path])
    assert rc == 1
    assert "vacuous" in capsys.readouterr().out


def test_garbage_input_exits_2(tmp_path, capsys):
    rc = main(["check", write(tmp_path, "junk.nd", "(not a document")])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_missing_file_exits_2(tmp_path, capsys):
    rc = main(["check", str(tmp_path / "absent.nd")])
    assert rc == 2
    assert "cannot read" in capsys.readouterr().err


def test_unknown_logic_exits_2(tmp_path, capsys):
    rc = main(["check", "--logic", "NOPE", write(tmp_path, "id.nd", IDENTITY)])
    assert rc == 2
    assert "unknown logic" in capsys.readouterr().err


# --- normalize ----------------------------------------------------------------


def test_normalize_emits_a_normal_document(tmp_path, capsys):
    rc = main(["normalize", write(tmp_path, "redex.nd", REDEX)])
    out = capsys.readouterr().out
    assert rc == 0
    doc = parse_document(out)
    assert doc.kind == "nd"
    report = check_nd(doc.nd)
    assert report.accepted
    assert is_normal(doc.nd)
    assert report.conclusion.name == "p"


def test_normalize_trace_stays_parseable(tmp_path, capsys):
    rc = main(["normalize", "--trace", write(tmp_path, "redex.nd", REDEX)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "; step 1: ImpE-over-ImpI" in out
    assert "; step 2: AndE1-over-AndI" in out
    # comment lines are part of the format, so the trace does not break
    # round-tripping
    assert parse_document(out).kind == "nd"


def test_normalize_already_normal_notes_it(tmp_path, capsys):
    rc = main(["normalize", "--trace", write(tmp_path, "id.nd", IDENTITY)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "; already normal" in out


def test_normalize_refuses_hilbert_documents(tmp_path, capsys):
    rc = main(["normalize", write(tmp_path, "conj.hilbert", CONJ_PROOF)])
    assert rc == 2
    assert "natural deduction only" in capsys.readouterr().err


def test_normalize_rejected_input_exits_1(tmp_path, capsys):
    rc = main(["normalize", write(tmp_path, "bad.nd", BAD_PROJECTION)])
    assert rc == 1
    assert "rule-shape" in capsys.readouterr().err


def test_normalize_json_lists_steps(tmp_path, capsys):
    rc = main(
        ["normalize", "--format", "json", write(tmp_path, "redex.nd", REDEX)]
    )
    payload = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert [s["conversion"] for s in payload["steps"]] == [
        "ImpE-over-ImpI",
        "AndE1-over-AndI",
    ]
    assert payload["steps"][0]["before"] == [2, 2]
    assert payload["steps"][-1]["after"] == [0, 0]
    assert parse_document(payload["document"]).kind == "nd"


# --- translate ------------------------------------------------------------------


def test_translate_hilbert_to_nd(tmp_path, capsys):
    rc = main(["translate", write(tmp_path, "conj.hilbert", CONJ_PROOF)])
    out = capsys.readouterr().out
    assert rc == 0
    doc = parse_document(out)
    assert doc.kind == "nd"
    report = check_nd(doc.nd)
    assert report.accepted
    assert len(report.opens) == 2


def test_translate_nd_to_hilbert_declares_assumptions(tmp_path, capsys):
    source = '(document (kind nd) (proof (AndE1 (assume "p & q"))))\n'
    rc = main(["translate", write(tmp_path, "proj.nd", source)])
    out = capsys.readouterr().out
    assert rc == 0
    doc = parse_document(out)
    assert doc.kind == "hilbert"
    assert doc.assumptions is not None
    assert [str(f) for f in doc.assumptions] or doc.assumptions
    # the emitted document re-checks on its own
    capsys.readouterr()
    path = tmp_path / "out.hilbert"
    path.write_text(out)
    assert main(["check", str(path)]) == 0


def test_translate_same_kind_exits_2(tmp_path, capsys):
    rc = main(
        ["translate", "--to", "hilbert", write(tmp_path, "c.hilbert", CONJ_PROOF)]
    )
    assert rc == 2
    assert "already of kind" in capsys.readouterr().err


def test_translate_rejected_input_exits_1(tmp_path, capsys):
    rc = main(["translate", write(tmp_path, "bad.nd", BAD_PROJECTION)])
    assert rc == 1


# --- corpus ---------------------------------------------------------------------


def test_corpus_matches_expectations(tmp_path, capsys):
    write(tmp_path, "id.nd", IDENTITY.replace("(kind nd)", "(kind nd) (expect accept)"))
    write(
        tmp_path,
        "bad.nd",
        BAD_PROJECTION.replace("(kind nd)", "(kind nd) (expect reject)"),
    )
    rc = main(["corpus", str(tmp_path)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "2 documents, 0 mismatches, 0 errors" in out


def test_corpus_reports_mismatches(tmp_path, capsys):
    write(
        tmp_path,
        "liar.nd",
        BAD_PROJECTION.replace("(kind nd)", "(kind nd) (expect accept)"),
    )
    rc = main(["corpus", str(tmp_path)])
    out = capsys.readouterr().out
    assert rc == 1
    assert "mismatch" in out
    assert "expected accept, got reject" in out


def test_corpus_reports_malformed_files(tmp_path, capsys):
    write(tmp_path, "junk.nd", "(document (kind nd)")
    write(tmp_path, "id.nd", IDENTITY)
    rc = main(["corpus", str(tmp_path)])
    out = capsys.readouterr().out
    assert rc == 2
    assert "error" in out
    assert "1 errors" in out


def test_corpus_logic_override_applies_to_every_file(tmp_path, capsys):
    write(tmp_path, "pair.nd", SPLIT_PAIR)
    assert main(["corpus", str(tmp_path)]) == 1
    capsys.readouterr()
    assert main(["corpus", "--logic", "WFC", str(tmp_path)]) == 0


def test_corpus_needs_documents(tmp_path, capsys):
    rc = main(["corpus", str(tmp_path)])
    assert rc == 2
    assert "no .nd or .hilbert documents" in capsys.readouterr().err


def test_corpus_accepts_a_single_file(tmp_path, capsys):
    rc = main(["corpus", write(tmp_path, "id.nd", IDENTITY)])
    assert rc == 0
    assert "1 documents" in capsys.readouterr().out
