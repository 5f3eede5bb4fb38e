"""FASTA and matrix files, alignment reports and their text rendering."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, TextIO

from .errors import (
    EmptyInput,
    InputError,
    MissingStopRow,
    ParseError,
    ValidationError,
)
from .model import (
    GAP,
    Alignment,
    CodingSequence,
    GeneticCode,
    ScoringScheme,
    SubstitutionMatrix,
    parse_coding_sequence,
)
from .scorer import ScoreBreakdown, DirectionClassification

SCHEMA_VERSION = 1
EXTENSION_FREE_LABEL = "extension-free mode; not a Ranwez-method reimplementation"


# FASTA ---------------------------------------------------------------------

@dataclass(frozen=True)
class FastaRecord:
    id: str
    sequence: str
    line: int


def _read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(path, exc.strerror or str(exc)) from exc


def parse_fasta(text: str) -> list[FastaRecord]:
    """Raw records with the line number of each header. No validation."""
    records = []
    header, line_no, chunks = None, 0, []
    for n, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if line.startswith(">"):
            if header is not None:
                records.append(FastaRecord(header, "".join(chunks), line_no))
            parts = line[1:].split(maxsplit=1)
            header, line_no, chunks = (parts[0] if parts else ""), n, []
        elif line and not line.startswith(";"):
            if header is None:
                raise ParseError(n, "sequence data before the first '>' header")
            chunks.append(line)
    if header is not None:
        records.append(FastaRecord(header, "".join(chunks), line_no))
    return records


def _annotate(exc: ValidationError, record: FastaRecord, path) -> ValidationError:
    exc.args = (f"{path}: record {record.id!r} (line {record.line}): {exc}",)
    return exc


def read_fasta(path) -> list[CodingSequence]:
    records = parse_fasta(_read_text(path))
    if not records:
        raise EmptyInput(path)
    out = []
    for rec in records:
        try:
            out.append(parse_coding_sequence(rec.sequence, rec.id))
        except ValidationError as exc:
            raise _annotate(exc, rec, path) from None
    return out


def write_fasta(records: Iterable[tuple[str, str]], handle: TextIO, width: int = 60):
    for name, seq in records:
        handle.write(f">{name}\n")
        for k in range(0, len(seq), width):
            handle.write(seq[k:k + width] + "\n")


def read_alignment(path) -> tuple[Alignment, str, str]:
    """Two-record gapped FASTA. Returns the alignment and both record ids."""
    records = parse_fasta(_read_text(path))
    if not records:
        raise EmptyInput(path)
    if len(records) != 2:
        raise ValidationError(f"{path}: expected 2 alignment rows, found {len(records)}")
    a, b = records
    return Alignment.from_rows(a.sequence, b.sequence), a.id, b.id


# Substitution matrices -----------------------------------------------------

def parse_matrix(text: str) -> SubstitutionMatrix:
    """Parse NCBI-style matrix text: a header of symbols, then one row each."""
    header = None
    rows: dict[str, list[float]] = {}
    for n, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        if header is None:
            header = fields
            if any(len(s) != 1 for s in header):
                raise ParseError(n, "header symbols must be single characters")
            if len(set(header)) != len(header):
                raise ParseError(n, "duplicate symbol in header")
            continue
        sym, values = fields[0], fields[1:]
        if sym not in header:
            raise ParseError(n, f"row symbol {sym!r} is not in the header")
        if sym in rows:
            raise ParseError(n, f"duplicate row {sym!r}")
        if len(values) != len(header):
            raise ParseError(n, f"row {sym!r} has {len(values)} scores, expected {len(header)}")
        try:
            rows[sym] = [float(v) for v in values]
        except ValueError:
            raise ParseError(n, f"non-numeric score in row {sym!r}") from None
    if header is None:
        raise ParseError(0, "no matrix header found")
    if "*" not in header:
        raise MissingStopRow()
    missing = [s for s in header if s not in rows]
    if missing:
        if "*" in missing:
            raise MissingStopRow()
        raise ParseError(0, f"missing rows for {''.join(missing)}")
    return SubstitutionMatrix("".join(header), [rows[s] for s in header])


def load_matrix(path) -> SubstitutionMatrix:
    return parse_matrix(_read_text(path))


@lru_cache(maxsize=1)
def bundled_blosum62() -> SubstitutionMatrix:
    text = resources.files("cdsalign").joinpath("data/BLOSUM62").read_text()
    return parse_matrix(text)


# Reports -------------------------------------------------------------------

@dataclass(frozen=True)
class FrameshiftSegment:
    """A run of consecutive unmatching codons of one sequence."""

    direction: str
    start_column: int
    end_column: int
    extension_nt: int


def frameshift_segments(alignment: Alignment, a_to_b: DirectionClassification,
                        b_to_a: DirectionClassification) -> list[FrameshiftSegment]:
    out = []
    for direction, row, cls in (("A_to_B", alignment.row_a, a_to_b),
                                ("B_to_A", alignment.row_b, b_to_a)):
        letters_before = []
        count = 0
        for ch in row:
            if ch != GAP:
                count += 1
            letters_before.append(count)
        run: list[tuple[int, int]] = []
        for end in cls.unmatching:
            codon = letters_before[end - 1] // 3
            if run and codon != run[-1][1] + 1:
                out.append(_segment(direction, run))
                run = []
            run.append((end, codon))
        if run:
            out.append(_segment(direction, run))
    return out


def _segment(direction, run):
    return FrameshiftSegment(direction, run[0][0] - 2, run[-1][0], 3 * len(run))


@dataclass
class AlignmentReport:
    A: CodingSequence
    B: CodingSequence
    alignment: Alignment
    breakdown: ScoreBreakdown
    score: float
    parameters: dict = field(default_factory=dict)
    code: GeneticCode = field(default_factory=GeneticCode.standard)
    mode_label: str = ""

    @property
    def segments(self) -> list[FrameshiftSegment]:
        cls = self.breakdown.classification
        return frameshift_segments(self.alignment, cls.a_to_b, cls.b_to_a)


def scheme_parameters(scheme: ScoringScheme, matrix_name: str, **extra) -> dict:
    nuc = scheme.nuc_matrix
    params = {
        "matrix": matrix_name,
        "gap_cost": scheme.gap_cost,
        "fs_open_cost": scheme.fs_open_cost,
        "fs_extension_cost": scheme.fs_extension_cost,
        "nuc_match": nuc("A", "A"),
        "nuc_mismatch": nuc("A", "C"),
    }
    params.update(extra)
    return params


def _direction_dict(score) -> dict:
    return {
        "matching_total": score.matching_total,
        "unmatching_total": score.unmatching_total,
        "indel_total": score.indel_total,
        "fs_open_total": score.fs_open_total,
        "mfs_total": score.mfs_total,
        "total": score.total,
    }


def _classification_dict(cls: DirectionClassification) -> dict:
    return {
        "M": sorted(cls.matching),
        "U": sorted(cls.unmatching),
        "Indel": sorted(cls.indel),
        "MFS": sorted(cls.mfs),
        "FS_minus": sorted(cls.fs_minus),
        "FS_plus": sorted(cls.fs_plus),
        "fs_codon_count": cls.fs_codon_count,
        "counts": cls.counts(),
    }


def report_to_dict(report: AlignmentReport) -> dict:
    bd = report.breakdown
    cls = bd.classification
    out = {
        "schema": SCHEMA_VERSION,
        "sequences": {
            "A": {"id": report.A.id, "length": report.A.n},
            "B": {"id": report.B.id, "length": report.B.n},
        },
        "parameters": dict(report.parameters),
        "score": report.score,
        "breakdown": {
            "A_to_B": _direction_dict(bd.a_to_b),
            "B_to_A": _direction_dict(bd.b_to_a),
            "score_A": bd.score_a,
            "score_B": bd.score_b,
            "total": bd.total,
        },
        "classification": {
            "A_to_B": _classification_dict(cls.a_to_b),
            "B_to_A": _classification_dict(cls.b_to_a),
        },
        "frameshift_segments": [
            {"direction": s.direction, "start_column": s.start_column,
             "end_column": s.end_column, "extension_nt": s.extension_nt}
            for s in report.segments
        ],
        "alignment": {"row_a": report.alignment.row_a, "row_b": report.alignment.row_b},
    }
    if report.mode_label:
        out["mode"] = report.mode_label
    return out


def report_to_json(report: AlignmentReport, indent: int | None = 2) -> str:
    return json.dumps(report_to_dict(report), indent=indent)


def _fmt(x: float) -> str:
    """One decimal place, more only when needed to stay exact."""
    text = f"{x:.1f}"
    return text if float(text) == x else repr(float(x))


def _annotation_row(row: str, cls: DirectionClassification, code: GeneticCode) -> list[str]:
    ann = [" "] * len(row)
    cols = [k for k, ch in enumerate(row) if ch != GAP]
    grouped_ok = set(cls.matching) | set(cls.unmatching) | set(cls.indel)
    for c in range(len(cols) // 3):
        first, middle, last = cols[3 * c:3 * c + 3]
        codon = "".join(row[k] for k in (first, middle, last))
        ann[middle] = code[codon] if last + 1 in grouped_ok else "!"
    return ann


_RED, _BLUE, _RESET = "\x1b[31m", "\x1b[34m", "\x1b[0m"


def _colorize(chars: list[str], unmatching_middles: set[int], lo: int) -> str:
    out = []
    for k, ch in enumerate(chars):
        if ch == "!":
            out.append(f"{_RED}!{_RESET}")
        elif lo + k in unmatching_middles and ch != " ":
            out.append(f"{_BLUE}{ch}{_RESET}")
        else:
            out.append(ch)
    return "".join(out)


def render_alignment(report: AlignmentReport, width: int = 60, color: bool = False) -> str:
    """Translation row, both nucleotide rows, translation row; wrapped at ``width``.

    Amino-acid letters sit under the middle nucleotide of grouped codons of
    class M, U or Indel. Frameshift codons are marked with '!'.
    """
    if width < 1:
        raise ValueError("width must be positive")
    cls = report.breakdown.classification
    aln = report.alignment
    top = _annotation_row(aln.row_a, cls.a_to_b, report.code)
    bottom = _annotation_row(aln.row_b, cls.b_to_a, report.code)
    u_top = {k - 2 for k in cls.a_to_b.unmatching}
    u_bottom = {k - 2 for k in cls.b_to_a.unmatching}
    blocks = []
    for lo in range(0, len(aln), width):
        hi = lo + width
        if color:
            t = _colorize(top[lo:hi], u_top, lo)
            u = _colorize(bottom[lo:hi], u_bottom, lo)
        else:
            t, u = "".join(top[lo:hi]), "".join(bottom[lo:hi])
        blocks.append("\n".join((t.rstrip(), aln.row_a[lo:hi], aln.row_b[lo:hi], u.rstrip())))
    return "\n\n".join(blocks) + "\n"


def render_report(report: AlignmentReport, width: int = 60, color: bool = False) -> str:
    """Plain-text report carrying the same numbers and sets as the JSON form."""
    d = report_to_dict(report)
    lines = [
        f"A: {report.A.id or 'A'} ({report.A.n} nt)",
        f"B: {report.B.id or 'B'} ({report.B.n} nt)",
    ]
    if report.mode_label:
        lines.append(f"mode: {report.mode_label}")
    params = d["parameters"]
    lines.append("parameters: " + ", ".join(
        f"{k}={_fmt(v) if isinstance(v, float) else v}" for k, v in params.items()))
    lines.append(f"score: {_fmt(report.score)}")
    bd = d["breakdown"]
    lines.append(f"score_A: {_fmt(bd['score_A'])}  score_B: {_fmt(bd['score_B'])}  "
                 f"total: {_fmt(bd['total'])}")
    for direction in ("A_to_B", "B_to_A"):
        comp = bd[direction]
        lines.append(f"{direction}: " + "  ".join(
            f"{k}={_fmt(v)}" for k, v in comp.items()))
    for direction in ("A_to_B", "B_to_A"):
        c = d["classification"][direction]
        lines.append(f"{direction} fs_codon_count={c['fs_codon_count']}")
        for key in ("M", "U", "Indel", "MFS", "FS_minus", "FS_plus"):
            lines.append(f"  {key}: {' '.join(map(str, c[key])) or '-'}")
    segs = d["frameshift_segments"]
    lines.append(f"frameshift segments: {len(segs)}")
    for s in segs:
        lines.append(f"  {s['direction']} columns {s['start_column']}-{s['end_column']}"
                     f" extension {s['extension_nt']} nt")
    lines.append("")
    lines.append(render_alignment(report, width=width, color=color))
    return "\n".join(lines)
