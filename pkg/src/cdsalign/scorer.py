"""Codon classification and the alignment score.

Each direction is scored on its own. For ``A -> B`` every codon of A is put in
exactly one class:

* M: its three nucleotides sit in three consecutive columns that hold a codon
  of B in the same three columns;
* U: grouped the same way but facing three nucleotides of B that are not one
  of B's codons;
* Indel: grouped and facing three gaps;
* FS: anything else. Grouped FS codons (facing one or two nucleotides) are
  reported as FS-minus, codons spread over more than three columns as FS-plus.

Columns where a nucleotide of an FS codon faces a nucleotide are MFS columns
and score half of ``s_an``. The total is the sum of both directions.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import RowMismatch
from .model import GAP, Alignment, CodingSequence, GeneticCode, ScoringScheme


@dataclass(frozen=True)
class DirectionClassification:
    """Classification of one sequence's codons against the other row.

    Column sets hold 1-based end columns (for codon classes) or columns (MFS).
    ``fs_minus`` and ``fs_plus`` hold 1-based codon indices.
    """

    matching: tuple[int, ...]
    unmatching: tuple[int, ...]
    indel: tuple[int, ...]
    mfs: tuple[int, ...]
    fs_minus: tuple[int, ...]
    fs_plus: tuple[int, ...]
    n_codons: int

    @property
    def fs_codon_count(self) -> int:
        return self.n_codons - len(self.matching) - len(self.unmatching) - len(self.indel)

    def counts(self) -> dict[str, int]:
        return {
            "M": len(self.matching),
            "U": len(self.unmatching),
            "Indel": len(self.indel),
            "FS": self.fs_codon_count,
            "FS_minus": len(self.fs_minus),
            "FS_plus": len(self.fs_plus),
            "MFS": len(self.mfs),
        }


@dataclass(frozen=True)
class CodonClassification:
    a_to_b: DirectionClassification
    b_to_a: DirectionClassification


@dataclass(frozen=True)
class DirectionScore:
    matching_total: float
    unmatching_total: float
    indel_total: float
    fs_open_total: float
    mfs_total: float

    @property
    def total(self) -> float:
        return (self.matching_total + self.unmatching_total + self.indel_total
                + self.fs_open_total + self.mfs_total)


@dataclass(frozen=True)
class ScoreBreakdown:
    a_to_b: DirectionScore
    b_to_a: DirectionScore
    classification: CodonClassification

    @property
    def score_a(self) -> float:
        return self.a_to_b.total

    @property
    def score_b(self) -> float:
        return self.b_to_a.total

    @property
    def total(self) -> float:
        return self.score_a + self.score_b


def _letter_columns(row: str) -> list[int]:
    return [k for k, ch in enumerate(row) if ch != GAP]


def _classify_direction(row_x: str, row_y: str) -> DirectionClassification:
    # 0-based internally; converted to 1-based columns on the way out
    x_cols = _letter_columns(row_x)
    y_cols = _letter_columns(row_y)
    y_codon_ends = {
        c[2] for c in (y_cols[t:t + 3] for t in range(0, len(y_cols), 3)) if c[2] - c[0] == 2
    }
    matching, unmatching, indel, fs_minus, fs_plus = [], [], [], [], []
    covered = set()
    for codon in range(len(x_cols) // 3):
        first, _, last = x_cols[3 * codon:3 * codon + 3]
        if last - first != 2:
            fs_plus.append(codon + 1)
            continue
        facing = sum(ch != GAP for ch in row_y[first:last + 1])
        if last in y_codon_ends:
            matching.append(last + 1)
        elif facing == 3:
            unmatching.append(last + 1)
        elif facing == 0:
            indel.append(last + 1)
        else:
            fs_minus.append(codon + 1)
            continue
        covered.update((first, first + 1, last))
    mfs = [k + 1 for k in range(len(row_x))
           if k not in covered and row_x[k] != GAP and row_y[k] != GAP]
    return DirectionClassification(
        tuple(matching), tuple(unmatching), tuple(indel), tuple(mfs),
        tuple(fs_minus), tuple(fs_plus), len(x_cols) // 3)


def _check_rows(alignment: Alignment, A: CodingSequence, B: CodingSequence):
    a, b = alignment.stripped()
    if a != A.residues:
        raise RowMismatch(f"row A does not strip to sequence {A.id or 'A'}")
    if b != B.residues:
        raise RowMismatch(f"row B does not strip to sequence {B.id or 'B'}")


def classify(alignment: Alignment, A: CodingSequence, B: CodingSequence) -> CodonClassification:
    _check_rows(alignment, A, B)
    return CodonClassification(
        _classify_direction(alignment.row_a, alignment.row_b),
        _classify_direction(alignment.row_b, alignment.row_a),
    )


def _score_direction(row_x, row_y, cls: DirectionClassification, scheme, code) -> DirectionScore:
    def codon_pair(k):
        window = row_y[k - 3:k]
        assert GAP not in window, f"codon window ending at column {k} holds a gap"
        return scheme.s_aa(code[row_x[k - 3:k]], code[window]) / 2

    matching = 0.0
    for k in cls.matching:
        matching += codon_pair(k)
    unmatching = 0.0
    for k in cls.unmatching:
        unmatching += codon_pair(k) + scheme.fs_extension_cost / 2
    mfs = 0.0
    for k in cls.mfs:
        mfs += scheme.s_an(row_x[k - 1], row_y[k - 1]) / 2
    return DirectionScore(
        matching_total=matching,
        unmatching_total=unmatching,
        indel_total=0.0 + len(cls.indel) * scheme.gap_cost,
        fs_open_total=0.0 + cls.fs_codon_count * scheme.fs_open_cost,
        mfs_total=mfs,
    )


def score_alignment(alignment: Alignment, A: CodingSequence, B: CodingSequence,
                    scheme: ScoringScheme | None = None,
                    code: GeneticCode | None = None) -> ScoreBreakdown:
    scheme = scheme or ScoringScheme()
    code = code or GeneticCode.standard()
    cls = classify(alignment, A, B)
    return ScoreBreakdown(
        _score_direction(alignment.row_a, alignment.row_b, cls.a_to_b, scheme, code),
        _score_direction(alignment.row_b, alignment.row_a, cls.b_to_a, scheme, code),
        cls,
    )
