"""Domain types shared by every other module.

Positions in the public API are 1-based: ``seq.codon(1)`` is the first codon and
``alignment.column(1)`` the first column. Residues are stored upper-case.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    AsymmetricMatrix,
    EmptySequence,
    InvalidAlignment,
    InvalidSymbol,
    LengthNotMultipleOfThree,
    MissingStopRow,
    ValidationError,
)

NUCLEOTIDES = "ACGT"
AMINO_ACIDS = "ACDEFGHIKLMNPQRSTVWY*"
GAP = "-"
STOP = "*"

_NCBI_ORDER = "TCAG"
_STANDARD_AAS = "FFLLSSSSYY**CC*WLLLLPPPPHHQQRRRRIIIMTTTTNNKKSSRRVVVVAAAADDEEGGGG"


def codon_index(codon: str) -> int:
    """Index of a codon in ``0..63`` using the ACGT base-4 order."""
    a, b, c = (NUCLEOTIDES.index(x) for x in codon)
    return 16 * a + 4 * b + c


@dataclass(frozen=True)
class GeneticCode:
    """Total map from the 64 codons to amino-acid letters ('*' for stop)."""

    table: Mapping[str, str]
    name: str = ""

    def __post_init__(self):
        table = {k.upper(): v.upper() for k, v in dict(self.table).items()}
        missing = ["".join(c) for c in product(NUCLEOTIDES, repeat=3) if "".join(c) not in table]
        if missing:
            raise ValidationError(f"genetic code is missing codons: {', '.join(missing[:5])}")
        bad = {v for v in table.values() if v not in AMINO_ACIDS}
        if bad:
            raise ValidationError(f"genetic code maps to unknown amino acids: {sorted(bad)}")
        object.__setattr__(self, "table", table)

    @classmethod
    def standard(cls) -> "GeneticCode":
        codons = ("".join(c) for c in product(_NCBI_ORDER, repeat=3))
        return cls(dict(zip(codons, _STANDARD_AAS)), name="Standard")

    def __getitem__(self, codon: str) -> str:
        return self.table[codon.upper()]

    def by_index(self) -> str:
        """Amino acids as a 64-letter string ordered by :func:`codon_index`."""
        return "".join(self.table["".join(c)] for c in product(NUCLEOTIDES, repeat=3))


@dataclass(frozen=True)
class CodingSequence:
    """A validated DNA coding sequence. Length is a positive multiple of 3."""

    residues: str
    id: str = ""

    def __post_init__(self):
        if not self.residues:
            raise EmptySequence(self.id or None)
        for pos, ch in enumerate(self.residues, 1):
            if ch not in NUCLEOTIDES:
                raise InvalidSymbol(pos, ch, self.id or None)
        if len(self.residues) % 3:
            raise LengthNotMultipleOfThree(len(self.residues), self.id or None)

    @property
    def n(self) -> int:
        return len(self.residues)

    @property
    def n_codons(self) -> int:
        return len(self.residues) // 3

    def __len__(self) -> int:
        return len(self.residues)

    def __str__(self) -> str:
        return self.residues

    def __getitem__(self, pos: int) -> str:
        """Nucleotide at 1-based position ``pos``."""
        if not 1 <= pos <= len(self.residues):
            raise IndexError(pos)
        return self.residues[pos - 1]

    def codon(self, i: int) -> str:
        """The ``i``-th codon, i.e. the triple ending at position ``3*i``."""
        if not 1 <= i <= self.n_codons:
            raise IndexError(i)
        return self.residues[3 * i - 3:3 * i]


def parse_coding_sequence(raw: str, id: str = "") -> CodingSequence:
    """Strip whitespace, upper-case and validate ``raw``.

    Ambiguity codes such as ``N`` are rejected with :class:`InvalidSymbol`;
    the reported position counts non-whitespace characters from 1.
    """
    cleaned = "".join(raw.split()).upper()
    return CodingSequence(cleaned, id)


def translate(seq: CodingSequence, code: GeneticCode | None = None) -> str:
    code = code or GeneticCode.standard()
    return "".join(code[seq.codon(i)] for i in range(1, seq.n_codons + 1))


def nongap_count(segment: str) -> int:
    return sum(1 for ch in segment if ch != GAP)


class SubstitutionMatrix:
    """Symmetric real-valued score function over a finite alphabet.

    Parameters
    ----------
    alphabet : str
        One character per row and column.
    scores : array_like
        Square matrix of finite reals. Symmetry is checked on construction.
    """

    __slots__ = ("alphabet", "scores", "_index")

    def __init__(self, alphabet: str, scores):
        arr = np.array(scores, dtype=np.float64)
        if arr.shape != (len(alphabet), len(alphabet)):
            raise ValidationError(
                f"matrix shape {arr.shape} does not match alphabet size {len(alphabet)}")
        if len(set(alphabet)) != len(alphabet):
            raise ValidationError("matrix alphabet has duplicate symbols")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("matrix contains non-finite scores")
        bad = np.argwhere(arr != arr.T)
        if len(bad):
            r, c = bad[0]
            raise AsymmetricMatrix(alphabet[r], alphabet[c])
        arr.setflags(write=False)
        self.alphabet = alphabet
        self.scores = arr
        self._index = {ch: k for k, ch in enumerate(alphabet)}

    @classmethod
    def from_dict(cls, pairs: Mapping[tuple[str, str], float]) -> "SubstitutionMatrix":
        """Build from ``{(x, y): score}``; one orientation per pair suffices."""
        alphabet = "".join(sorted({s for pair in pairs for s in pair}))
        idx = {ch: k for k, ch in enumerate(alphabet)}
        arr = np.full((len(alphabet), len(alphabet)), np.nan)
        for (x, y), v in pairs.items():
            if not np.isnan(arr[idx[x], idx[y]]) and arr[idx[x], idx[y]] != v:
                raise AsymmetricMatrix(x, y)
            arr[idx[x], idx[y]] = v
            if np.isnan(arr[idx[y], idx[x]]):
                arr[idx[y], idx[x]] = v
            elif arr[idx[y], idx[x]] != v:
                raise AsymmetricMatrix(x, y)
        if np.isnan(arr).any():
            r, c = np.argwhere(np.isnan(arr))[0]
            raise ValidationError(f"no score given for ({alphabet[r]}, {alphabet[c]})")
        return cls(alphabet, arr)

    @classmethod
    def uniform(cls, alphabet: str, match: float, mismatch: float) -> "SubstitutionMatrix":
        arr = np.full((len(alphabet), len(alphabet)), float(mismatch))
        np.fill_diagonal(arr, float(match))
        return cls(alphabet, arr)

    def __call__(self, x: str, y: str) -> float:
        return float(self.scores[self._index[x], self._index[y]])

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._index

    def __eq__(self, other):
        if not isinstance(other, SubstitutionMatrix):
            return NotImplemented
        return self.alphabet == other.alphabet and np.array_equal(self.scores, other.scores)

    def __hash__(self):
        return hash((self.alphabet, self.scores.tobytes()))

    def __repr__(self):
        return f"SubstitutionMatrix(alphabet={self.alphabet!r})"

    def subset(self, alphabet: Iterable[str]) -> np.ndarray:
        """Scores restricted to ``alphabet`` in the given order."""
        order = list(alphabet)
        missing = [s for s in order if s not in self._index]
        if missing:
            if STOP in missing:
                raise MissingStopRow()
            raise ValidationError(f"matrix has no scores for {''.join(missing)}")
        idx = [self._index[s] for s in order]
        return self.scores[np.ix_(idx, idx)]


def _default_aa_matrix() -> SubstitutionMatrix:
    from .io_cli import bundled_blosum62

    return bundled_blosum62()


@dataclass(frozen=True)
class ScoringScheme:
    """Parameters of the alignment score.

    ``fs_extension_cost`` is the charge for one unmatching codon pairing. It is
    split evenly between the two directions of the score, the same way an
    amino-acid score is, so each unmatching codon of either sequence pays
    ``fs_extension_cost / 2``.
    """

    aa_matrix: SubstitutionMatrix = field(default_factory=_default_aa_matrix)
    nuc_matrix: SubstitutionMatrix = field(
        default_factory=lambda: SubstitutionMatrix.uniform(NUCLEOTIDES, 1.0, -1.0))
    gap_cost: float = -1.0
    fs_open_cost: float = -2.0
    fs_extension_cost: float = -1.0

    def __post_init__(self):
        for name in ("gap_cost", "fs_open_cost", "fs_extension_cost"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValidationError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        missing = [n for n in NUCLEOTIDES if n not in self.nuc_matrix]
        if missing:
            raise ValidationError(f"nucleotide matrix lacks {''.join(missing)}")

    def s_aa(self, x: str, y: str) -> float:
        return self.aa_matrix(x, y)

    def s_an(self, x: str, y: str) -> float:
        return self.nuc_matrix(x, y)

    def replace(self, **changes) -> "ScoringScheme":
        from dataclasses import replace

        return replace(self, **changes)

    def codon_scores(self, code: GeneticCode) -> np.ndarray:
        """64 x 64 table of ``s_aa`` between translated codons."""
        aas = code.by_index()
        letters = "".join(sorted(set(aas)))
        sub = self.aa_matrix.subset(letters)
        pos = np.array([letters.index(a) for a in aas])
        return np.ascontiguousarray(sub[np.ix_(pos, pos)])

    def nucleotide_scores(self) -> np.ndarray:
        return np.ascontiguousarray(self.nuc_matrix.subset(NUCLEOTIDES))


@dataclass(frozen=True)
class Alignment:
    """Two gapped rows of equal length. No column may be gap in both rows."""

    row_a: str
    row_b: str

    def __post_init__(self):
        if len(self.row_a) != len(self.row_b):
            raise InvalidAlignment(
                f"rows differ in length ({len(self.row_a)} vs {len(self.row_b)})")
        allowed = set(NUCLEOTIDES + GAP)
        for name, row in (("A", self.row_a), ("B", self.row_b)):
            for k, ch in enumerate(row, 1):
                if ch not in allowed:
                    raise InvalidAlignment(f"row {name} has symbol {ch!r} at column {k}")
        for k, (x, y) in enumerate(zip(self.row_a, self.row_b), 1):
            if x == GAP and y == GAP:
                raise InvalidAlignment(f"column {k} is a gap in both rows")

    @classmethod
    def from_rows(cls, row_a: str, row_b: str) -> "Alignment":
        """Build from rows after upper-casing and dropping whitespace."""
        return cls("".join(row_a.split()).upper(), "".join(row_b.split()).upper())

    def __len__(self) -> int:
        return len(self.row_a)

    def column(self, k: int) -> tuple[str, str]:
        if not 1 <= k <= len(self.row_a):
            raise IndexError(k)
        return self.row_a[k - 1], self.row_b[k - 1]

    def stripped(self) -> tuple[str, str]:
        return self.row_a.replace(GAP, ""), self.row_b.replace(GAP, "")

    def swapped(self) -> "Alignment":
        return Alignment(self.row_b, self.row_a)
