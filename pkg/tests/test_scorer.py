import pytest
from hypothesis import given, settings, strategies as st

from cdsalign import Alignment, CodingSequence, RowMismatch, ScoringScheme, classify, score_alignment
from cdsalign.model import GAP, NUCLEOTIDES

from _data import gapped, pair, record

WORKED = {
    "a_to_b": dict(matching=(3, 9, 12, 15, 26, 48), unmatching=(20, 41), indel=(6,),
                   mfs=(21, 28, 29, 30, 34, 35, 42, 43, 45)),
    "b_to_a": dict(matching=(3, 9, 12, 15, 26, 48), unmatching=(21, 30, 42), indel=(33,),
                   mfs=(18, 34, 35, 39, 43, 45)),
}


def _sequences(alignment):
    a, b = alignment.stripped()
    return CodingSequence(a, "A"), CodingSequence(b, "B")


def test_worked_example_sets():
    alignment, _, _ = gapped("worked_example_alignment.fa")
    cls = classify(alignment, *_sequences(alignment))
    for direction, expected in WORKED.items():
        got = getattr(cls, direction)
        for name, values in expected.items():
            assert getattr(got, name) == values, (direction, name)


def test_worked_example_fs_partition():
    alignment, _, _ = gapped("worked_example_alignment.fa")
    cls = classify(alignment, *_sequences(alignment))
    for d in (cls.a_to_b, cls.b_to_a):
        assert len(d.fs_minus) + len(d.fs_plus) == d.fs_codon_count
        assert not set(d.fs_minus) & set(d.fs_plus)


def test_identical_codon():
    A = CodingSequence("ATG")
    br = score_alignment(Alignment("ATG", "ATG"), A, A)
    assert br.classification.a_to_b.matching == (3,)
    assert br.classification.b_to_a.matching == (3,)
    assert br.classification.a_to_b.mfs == ()
    assert br.total == ScoringScheme().s_aa("M", "M") == 5


def test_deleted_codon_is_indel():
    A, B = CodingSequence("ATGTGA"), CodingSequence("ATG")
    br = score_alignment(Alignment("ATGTGA", "ATG---"), A, B)
    cls = br.classification
    assert cls.a_to_b.matching == (3,) and cls.b_to_a.matching == (3,)
    assert cls.a_to_b.indel == (6,)
    assert cls.b_to_a.indel == ()
    # 5/2 + 5/2 - 1
    assert br.total == 4.0


def test_single_column_shift_hand_value():
    A = B = CodingSequence("ATGAAA")
    br = score_alignment(Alignment("ATGAAA-", "ATG-AAA"), A, B)
    cls = br.classification
    assert cls.a_to_b.matching == (3,)
    assert cls.a_to_b.fs_codon_count == 1 and cls.b_to_a.fs_codon_count == 1
    # ATG matches (5); each AAA faces two nucleotides (2 * -2); MFS columns 5, 6 on both sides (+2)
    assert br.total == 3.0


def test_unmatching_codons_pay_half_extension_each_side():
    A = B = CodingSequence("AAAGGG")
    br = score_alignment(Alignment("AAAGGG-", "-AAAGGG"), A, B)
    cls = br.classification
    assert cls.a_to_b.unmatching == (6,)
    assert cls.b_to_a.unmatching == (4,)
    # A->B: codon AAA faces -AA (FS, -2) + MFS 2,3 (A/A, A/A: +1); GGG faces AGG (U: s(G,R)/2 - 1/2)
    assert br.a_to_b.total == -2.5
    # B->A: AAA faces AAG (U: s(K,K)/2 - 1/2 = 2); GGG faces GG- (FS, -2) + MFS 5,6 (+1)
    assert br.b_to_a.total == 1.0
    assert br.total == -1.5


def test_row_mismatch():
    A, B = CodingSequence("ATG"), CodingSequence("ATG")
    with pytest.raises(RowMismatch):
        classify(Alignment("ATG", "ATC"), A, B)


def test_displayed_seq1_seq2_scores_68_5():
    alignment, _, _ = gapped("seq1_seq2_displayed.fa")
    assert score_alignment(alignment, record("seq1.fa"), record("seq2.fa")).total == 68.5


def test_displayed_seq1_seq3_scores_58():
    alignment, _, _ = gapped("seq1_seq3_displayed.fa")
    assert score_alignment(alignment, record("seq1.fa"), record("seq3.fa")).total == 58.0


def test_no_negative_zero_components():
    A = CodingSequence("ATG")
    br = score_alignment(Alignment("ATG", "ATG"), A, A, ScoringScheme(gap_cost=-0.0))
    assert str(br.a_to_b.indel_total) == "0.0"


@st.composite
def alignments(draw):
    n = draw(st.integers(1, 3)) * 3
    m = draw(st.integers(1, 3)) * 3
    a = draw(st.text(NUCLEOTIDES, min_size=n, max_size=n))
    b = draw(st.text(NUCLEOTIDES, min_size=m, max_size=m))
    moves = draw(st.lists(st.sampled_from("PAB"), min_size=n + m, max_size=n + m))
    ra, rb, i, j = [], [], 0, 0
    for mv in moves:
        if i == n and j == m:
            break
        if mv == "P" and i < n and j < m:
            ra.append(a[i]); rb.append(b[j]); i += 1; j += 1
        elif (mv == "A" or j == m) and i < n:
            ra.append(a[i]); rb.append(GAP); i += 1
        else:
            ra.append(GAP); rb.append(b[j]); j += 1
    ra.extend(a[i:]); rb.extend(GAP * (n - i))
    ra.extend(GAP * (m - j)); rb.extend(b[j:])
    return CodingSequence(a), CodingSequence(b), Alignment("".join(ra), "".join(rb))


@settings(max_examples=200, deadline=None)
@given(alignments())
def test_classes_partition_codons(case):
    A, B, alignment = case
    cls = classify(alignment, A, B)
    for d, seq in ((cls.a_to_b, A), (cls.b_to_a, B)):
        grouped = len(d.matching) + len(d.unmatching) + len(d.indel)
        assert grouped + d.fs_codon_count == seq.n_codons
        assert d.fs_codon_count == len(d.fs_minus) + len(d.fs_plus)
        assert not set(d.matching) & set(d.unmatching)
    assert cls.a_to_b.matching == cls.b_to_a.matching


@settings(max_examples=200, deadline=None)
@given(alignments())
def test_swap_symmetry_of_score(case):
    A, B, alignment = case
    forward = score_alignment(alignment, A, B)
    backward = score_alignment(alignment.swapped(), B, A)
    assert forward.total == backward.total
    assert forward.a_to_b == backward.b_to_a
