import io
import json

import pytest

from cdsalign import (
    Alignment,
    AsymmetricMatrix,
    EmptyInput,
    InputError,
    LengthNotMultipleOfThree,
    MissingStopRow,
    ParseError,
    align,
    bundled_blosum62,
    load_matrix,
    read_fasta,
    score_alignment,
)
from cdsalign.cli import run_cli
from cdsalign.io_cli import (
    EXTENSION_FREE_LABEL,
    AlignmentReport,
    frameshift_segments,
    parse_fasta,
    render_alignment,
    report_to_dict,
    write_fasta,
)
from cdsalign.model import CodingSequence, GeneticCode

from _data import DATA, gapped, record

AAS = "ARNDCQEGHILKMFPSTWYV*"


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def report_for(A, B):
    result = align(A, B)
    return AlignmentReport(A, B, result.alignment, result.breakdown, result.score)


# FASTA


def test_read_two_record_file():
    a, b = read_fasta(DATA / "seq1_seq2.fa")
    assert (a.id, a.n, b.id, b.n) == ("Seq1", 45, "Seq2", 60)


def test_empty_file(tmp_path):
    path = tmp_path / "empty.fa"
    path.write_text("")
    with pytest.raises(EmptyInput):
        read_fasta(path)


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        read_fasta(tmp_path / "nope.fa")


def test_bad_length_names_record(tmp_path):
    path = tmp_path / "bad.fa"
    path.write_text(">ok\nATG\n>broken\n" + "A" * 46 + "\n")
    with pytest.raises(LengthNotMultipleOfThree) as exc:
        read_fasta(path)
    assert "broken" in str(exc.value) and "line 3" in str(exc.value)


def test_data_before_header():
    with pytest.raises(ParseError):
        parse_fasta("ATG\n>x\nATG\n")


def test_write_then_read(tmp_path):
    path = tmp_path / "rt.fa"
    with path.open("w") as fh:
        write_fasta([("x", "ATG" * 30)], fh, width=20)
    assert read_fasta(path)[0].residues == "ATG" * 30


# matrices


def test_bundled_blosum62_landmarks():
    m = bundled_blosum62()
    assert m("W", "W") == 11 and m("*", "*") == 1 and m("*", "A") == -4
    assert m("C", "C") == 9 and m("A", "R") == -1 and m("E", "Q") == 2


def _identity_text(alphabet, drop=None):
    rows = [" ".join(alphabet)]
    for x in alphabet:
        if x == drop:
            continue
        rows.append(x + " " + " ".join("2" if x == y else "0" for y in alphabet))
    return "\n".join(rows) + "\n"


def test_identity_matrix_accepted(tmp_path):
    path = tmp_path / "id.txt"
    path.write_text("# comment\n" + _identity_text(AAS))
    m = load_matrix(path)
    assert {m(x, x) for x in AAS} == {2.0}


def test_matrix_without_stop(tmp_path):
    path = tmp_path / "nostop.txt"
    path.write_text(_identity_text(AAS[:-1]))
    with pytest.raises(MissingStopRow):
        load_matrix(path)


def test_asymmetric_matrix(tmp_path):
    text = _identity_text(AAS).replace("A 2 0", "A 2 5", 1)
    path = tmp_path / "asym.txt"
    path.write_text(text)
    with pytest.raises(AsymmetricMatrix):
        load_matrix(path)


def test_matrix_row_too_short(tmp_path):
    path = tmp_path / "short.txt"
    path.write_text(" ".join(AAS) + "\nA 1 2\n")
    with pytest.raises(ParseError) as exc:
        load_matrix(path)
    assert exc.value.line == 2


# reports


def test_render_round_trip_seq1_seq2():
    report = report_for(record("seq1.fa"), record("seq2.fa"))
    lines = render_alignment(report, width=25).split("\n")
    blocks = [lines[k:k + 4] for k in range(0, len(lines) - 1, 5)]
    row_a = "".join(b[1] for b in blocks)
    row_b = "".join(b[2] for b in blocks)
    assert row_a.replace("-", "") == record("seq1.fa").residues
    assert row_b.replace("-", "") == record("seq2.fa").residues


def test_render_one_codon():
    A = CodingSequence("ATG")
    text = render_alignment(report_for(A, A))
    assert text == " M\nATG\nATG\n M\n"


def test_render_wraps_fam86_in_60_column_blocks():
    alignment, ia, ib = gapped("fam86_present_method_rows.fa")
    a, b = alignment.stripped()
    report = report_for(CodingSequence(a, ia), CodingSequence(b, ib))
    blocks = render_alignment(report).rstrip("\n").split("\n\n")
    assert len(blocks) == -(-len(report.alignment) // 60)
    assert all(len(block.split("\n")[1]) == 60 for block in blocks[:-1])


def test_segments_group_consecutive_codons():
    A = B = CodingSequence("AAAGGGCCC")
    aln = Alignment("AAAGGGCCC-", "-AAAGGGCCC")
    cls = score_alignment(aln, A, B).classification
    segs = frameshift_segments(aln, cls.a_to_b, cls.b_to_a)
    by_dir = {s.direction: s for s in segs}
    assert cls.a_to_b.unmatching == (6, 9)
    assert (by_dir["A_to_B"].start_column, by_dir["A_to_B"].end_column,
            by_dir["A_to_B"].extension_nt) == (4, 9, 6)
    assert by_dir["B_to_A"].extension_nt == 6


def test_report_dict_is_consistent():
    report = report_for(record("seq1.fa"), record("seq2.fa"))
    d = report_to_dict(report)
    assert d["score"] == d["breakdown"]["total"] == 68.5
    assert d["classification"]["A_to_B"]["counts"]["M"] == len(d["classification"]["A_to_B"]["M"])
    json.dumps(d)


# command line


def test_cli_align_prints_score():
    code, out, _ = cli("align", DATA / "seq1.fa", DATA / "seq2.fa")
    assert code == 0 and "score: 68.5" in out


def test_cli_align_single_file_json(tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = cli("align", DATA / "seq1_seq2.fa", "--format", "json", "--report", report)
    assert code == 0
    assert json.loads(out)["score"] == 68.5 == json.loads(report.read_text())["score"]


def test_cli_self_alignment_has_no_segments():
    code, out, _ = cli("align", DATA / "seq3.fa", DATA / "seq3.fa", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["frameshift_segments"] == []
    assert "-" not in d["alignment"]["row_a"]


def test_cli_rescore_worked_example():
    code, out, _ = cli("rescore", DATA / "worked_example_alignment.fa", DATA / "worked_example.fa",
                       "--format", "json")
    cls = json.loads(out)["classification"]
    assert code == 0
    assert cls["A_to_B"]["M"] == [3, 9, 12, 15, 26, 48]
    assert cls["B_to_A"]["Indel"] == [33]


def test_cli_rescore_rejects_foreign_sequences():
    code, _, err = cli("rescore", DATA / "worked_example_alignment.fa", DATA / "seq1_seq2.fa")
    assert code == 1 and "error" in err


def test_cli_no_extension_label():
    code, out, _ = cli("align", DATA / "seq1.fa", DATA / "seq3.fa", "--no-extension")
    assert code == 0 and EXTENSION_FREE_LABEL in out and "fs_extension_cost=0.0" in out


def test_cli_custom_costs_change_score():
    code, out, _ = cli("align", DATA / "seq1.fa", DATA / "seq2.fa", "--gap-cost", "-5",
                       "--format", "json")
    assert code == 0 and json.loads(out)["parameters"]["gap_cost"] == -5.0


def test_cli_pairs_manifest(tmp_path):
    manifest = tmp_path / "pairs.txt"
    manifest.write_text(f"# two jobs\n{DATA / 'seq1.fa'} {DATA / 'seq2.fa'}\n"
                        f"{DATA / 'seq1.fa'} {DATA / 'seq3.fa'}\n")
    code, out, _ = cli("align", "--pairs", manifest, "--jobs", "2", "--format", "json")
    assert code == 0 and [r["score"] for r in json.loads(out)] == [68.5, 58.0]


def test_cli_validation_error(tmp_path):
    bad = tmp_path / "bad.fa"
    bad.write_text(">x\nATGA\n")
    code, _, err = cli("align", bad, DATA / "seq1.fa")
    assert code == 1 and "multiple of 3" in err


def test_cli_usage_errors():
    assert cli()[0] == 2
    assert cli("align", DATA / "seq1.fa", DATA / "seq2.fa", "--wrap", "0")[0] == 2
    assert cli("align", DATA / "seq1.fa", DATA / "seq2.fa", "--format", "xml")[0] == 2


def test_cli_selftest():
    code, out, _ = cli("selftest", "--pairs", "5", "--schemes", "2")
    assert code == 0 and "0 mismatches" in out


def test_genetic_code_is_standard_in_reports():
    report = report_for(CodingSequence("ATG"), CodingSequence("ATG"))
    assert report.code == GeneticCode.standard()
