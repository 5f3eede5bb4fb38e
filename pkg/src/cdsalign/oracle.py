"""Exhaustive reference optimizer for tiny inputs.

Every alignment of the two sequences is generated and rescored with
:func:`cdsalign.scorer.score_alignment`. Nothing here shares code with the
dynamic program, which is the point: agreement between the two is evidence
that the recurrences are right.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import BudgetExceeded
from .model import (
    AMINO_ACIDS,
    GAP,
    NUCLEOTIDES,
    Alignment,
    CodingSequence,
    GeneticCode,
    ScoringScheme,
    SubstitutionMatrix,
)
from .scorer import score_alignment


@dataclass(frozen=True)
class EnumerationBudget:
    max_total_length: int = 18
    max_alignments: int = 5_000_000


@lru_cache(maxsize=None)
def delannoy(a: int, b: int) -> int:
    """Number of alignments of sequences of lengths ``a`` and ``b``."""
    if a == 0 or b == 0:
        return 1
    return delannoy(a - 1, b) + delannoy(a, b - 1) + delannoy(a - 1, b - 1)


def _check_budget(A: CodingSequence, B: CodingSequence, budget: EnumerationBudget):
    total = A.n + B.n
    if total > budget.max_total_length:
        raise BudgetExceeded(total, budget.max_total_length)
    if delannoy(A.n, B.n) > budget.max_alignments:
        raise BudgetExceeded(total, budget.max_total_length)


def _rows(a: str, b: str) -> Iterator[tuple[str, str]]:
    # Columns are chosen left to right: pair, A-only, B-only.
    if not a:
        yield GAP * len(b), b
        return
    if not b:
        yield a, GAP * len(a)
        return
    for ra, rb in _rows(a[1:], b[1:]):
        yield a[0] + ra, b[0] + rb
    for ra, rb in _rows(a[1:], b):
        yield a[0] + ra, GAP + rb
    for ra, rb in _rows(a, b[1:]):
        yield GAP + ra, b[0] + rb


def enumerate_alignments(A: CodingSequence, B: CodingSequence,
                         budget: EnumerationBudget | None = None) -> Iterator[Alignment]:
    """Yield every alignment of ``A`` and ``B`` exactly once, lazily."""
    budget = budget or EnumerationBudget()
    _check_budget(A, B, budget)
    for ra, rb in _rows(A.residues, B.residues):
        yield Alignment(ra, rb)


def brute_force_optimum(A: CodingSequence, B: CodingSequence,
                        scheme: ScoringScheme | None = None,
                        code: GeneticCode | None = None,
                        budget: EnumerationBudget | None = None) -> tuple[float, Alignment]:
    """Best score over all alignments and the first alignment reaching it."""
    scheme = scheme or ScoringScheme()
    code = code or GeneticCode.standard()
    best, witness = None, None
    for alignment in enumerate_alignments(A, B, budget):
        value = score_alignment(alignment, A, B, scheme, code).total
        if best is None or value > best:
            best, witness = value, alignment
    return best, witness


HALF_GRID = tuple(x / 2 for x in range(-6, 7))


def random_scheme(rng: random.Random, grid=HALF_GRID) -> ScoringScheme:
    """Symmetric scheme with every entry and cost drawn from ``grid``."""
    aa = {(x, y): rng.choice(grid)
          for k, x in enumerate(AMINO_ACIDS) for y in AMINO_ACIDS[k:]}
    nuc = {(x, y): rng.choice(grid)
           for k, x in enumerate(NUCLEOTIDES) for y in NUCLEOTIDES[k:]}
    return ScoringScheme(
        SubstitutionMatrix.from_dict(aa),
        SubstitutionMatrix.from_dict(nuc),
        gap_cost=rng.choice(grid),
        fs_open_cost=rng.choice(grid),
        fs_extension_cost=rng.choice(grid),
    )


def random_coding_sequence(rng: random.Random, n_codons: int, id: str = "") -> CodingSequence:
    return CodingSequence("".join(rng.choice(NUCLEOTIDES) for _ in range(3 * n_codons)), id)


@dataclass(frozen=True)
class CampaignResult:
    pairs: int
    schemes: int
    mismatches: tuple
    unguarded_mismatches: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.mismatches


def oracle_campaign(n_pairs: int = 200, n_schemes: int = 5, seed: int = 0,
                    sizes=(3, 6, 9), max_total_length: int = 15,
                    compare_unguarded: bool = False) -> CampaignResult:
    """Compare the dynamic program with brute force on random small pairs.

    Pairs whose combined length exceeds ``max_total_length`` are redrawn, so
    the default keeps each enumeration below about 76 000 alignments. With
    ``compare_unguarded`` the same pairs are also run without the grouping
    guard and disagreements are collected separately.
    """
    from .dp import align

    rng = random.Random(seed)
    schemes = [random_scheme(rng) for _ in range(n_schemes)]
    code = GeneticCode.standard()
    budget = EnumerationBudget(max_total_length=max(max_total_length, 18))
    mismatches, unguarded = [], []
    for p in range(n_pairs):
        scheme = schemes[p % n_schemes]
        while True:
            n, m = rng.choice(sizes), rng.choice(sizes)
            if n + m <= max_total_length:
                break
        A = random_coding_sequence(rng, n // 3, "A")
        B = random_coding_sequence(rng, m // 3, "B")
        expected, _ = brute_force_optimum(A, B, scheme, code, budget)
        got = align(A, B, scheme, code).score
        if got != expected:
            mismatches.append((A.residues, B.residues, p % n_schemes, got, expected))
        if compare_unguarded:
            loose = align(A, B, scheme, code, guard_grouping=False).score
            if loose != expected:
                unguarded.append((A.residues, B.residues, p % n_schemes, loose, expected))
    return CampaignResult(n_pairs, n_schemes, tuple(mismatches), tuple(unguarded))
