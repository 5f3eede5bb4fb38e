"""Two-table dynamic program for frameshift-aware codon alignment.

``D(i, j)`` is the best score of an alignment of ``A[1..i]`` with ``B[1..j]``.
``D_F(i, j)`` exists where ``i`` or ``j`` is a codon boundary. It scores such a
prefix alignment extended on the right by ``alpha`` extra pairs
``A[i+1]/B[j+1] .. A[i+alpha]/B[j+alpha]`` (``alpha = (3 - r) % 3`` for the
non-zero residue ``r``). Only half of the nucleotide score of those pairs is
included, so the codon that completes the window can add its own half later.

Candidates for a cell are grouped by the residues ``(i % 3, j % 3)``. Case
numbers below follow that grouping. For ``D``:

* group 1 (both boundaries) has 18 candidates;
* group 2 (``i`` boundary only) has 11;
* group 3 mirrors group 2 with the sequences exchanged;
* group 4 (neither) has the 3 plain column moves.

For ``D_F``, group 1 copies ``D``, group 2 (``i % 3 == 2``) has 5 candidates,
group 4 (``i % 3 == 1``) has 3, and groups 3 and 5 are their mirrors.

Grouping guard
--------------
A few candidates append a single column to the best prefix and assume that
the codon the column belongs to is not grouped (so it is charged as a
frameshift). That assumption fails when the best prefix already ends with
the codon's other nucleotides in consecutive columns. Such an alignment is
then scored with an opening cost it does not pay, or without the
amino-acid score it does get. The effect is an overestimate of the true
optimum.

With ``guard_grouping=True`` (the default) every ``D`` cell keeps one
value per *tail class*: the type of its last column plus whether the last
two columns both hold a nucleotide of A, and likewise of B. The
single-column candidates then only read prefixes that really leave the
codon ungrouped. The fill stays O(n·m) and the result equals the optimum
of the codon score exactly. With ``guard_grouping=False`` the candidates
read the unrestricted maximum, which reproduces the unguarded recurrences
value for value. Their ``D(n, m)`` is then an upper bound that a traceback
cannot always realise.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numba import njit

from .errors import CorruptProvenance, UndefinedCell
from .model import (
    GAP,
    NUCLEOTIDES,
    Alignment,
    CodingSequence,
    GeneticCode,
    ScoringScheme,
)
from .scorer import ScoreBreakdown, score_alignment

NEG = -np.inf
N_CLASSES = 9

# Column types.
_P, _A, _B = 0, 1, 2
# Tail classes: 0-3 end in a pair (index 2*gA + gB), 4-5 end in an A-only
# column (4 + gA), 6-7 in a B-only column (6 + gB), 8 is the empty prefix.
# gA / gB: the last two columns both hold a nucleotide of A / of B.
_LAST_A = np.array([1, 1, 1, 1, 1, 1, 0, 0, 0], dtype=np.int8)
_LAST_B = np.array([1, 1, 1, 1, 0, 0, 1, 1, 0], dtype=np.int8)
_TWO_A = np.array([0, 0, 1, 1, 0, 1, 0, 0, 0], dtype=np.int8)
_TWO_B = np.array([0, 1, 0, 1, 0, 0, 0, 1, 0], dtype=np.int8)
_EMPTY = 8

# Predicates for single-column candidates.
_ANY, _NOT_A2, _NOT_B2, _NOT_A2B2, _NOT_A1, _NOT_B1 = 0, 1, 2, 3, 4, 5

# Case codes stored in the provenance tables.
D_BOUNDARY = 125
F_COPY = 71


def _d_code(group, case):
    return 20 * (group - 1) + case


def _f_code(group, case):
    return 60 + 10 * group + case


@njit(cache=True, inline="always")
def _has_a(col):
    return col != _B


@njit(cache=True, inline="always")
def _has_b(col):
    return col != _A


@njit(cache=True, inline="always")
def _class_of(last, ga, gb):
    if last == _P:
        return 2 * ga + gb
    if last == _A:
        return 4 + ga
    return 6 + gb


@njit(cache=True, inline="always")
def _class_two(last, prev):
    ga = 1 if (_has_a(last) and _has_a(prev)) else 0
    gb = 1 if (_has_b(last) and _has_b(prev)) else 0
    return _class_of(last, ga, gb)


@njit(cache=True, inline="always")
def _class_append(col, k):
    ga = 1 if (_has_a(col) and _LAST_A[k] == 1) else 0
    gb = 1 if (_has_b(col) and _LAST_B[k] == 1) else 0
    return _class_of(col, ga, gb)


@njit(cache=True, inline="always")
def _allowed(pred, k):
    if pred == _ANY:
        return True
    if pred == _NOT_A2:
        return _TWO_A[k] == 0
    if pred == _NOT_B2:
        return _TWO_B[k] == 0
    if pred == _NOT_A2B2:
        return _TWO_A[k] == 0 and _TWO_B[k] == 0
    if pred == _NOT_A1:
        return _LAST_A[k] == 0
    return _LAST_B[k] == 0


@njit(cache=True)
def _d_cell(i, j, a, b, ca, cb, nuc, cod, gap, op, ext, guard,
            D, F, BD, V, PD, SD):
    """Evaluate ``D(i, j)`` for ``i, j >= 1``. Writes the cell and its classes."""
    n = a.shape[0] - 1
    m = b.shape[0] - 1
    R = V.shape[0]
    row = i % R

    def s(x, y):
        if x < 1 or y < 1 or x > n or y > m:
            return NEG
        return nuc[a[x], b[y]]

    def S(x, y):
        if x < 3 or y < 3 or x > n or y > m:
            return NEG
        return cod[ca[x], cb[y]]

    def d(x, y):
        if x < 0 or y < 0:
            return NEG
        return D[x, y]

    def f(x, y):
        if x < 0 or y < 0:
            return NEG
        return F[x, y]

    for k in range(N_CLASSES):
        V[row, j, k] = NEG
        PD[i, j, k] = 0
        SD[i, j, k] = -1
    D[i, j] = NEG
    BD[i, j] = -1

    def offer(v, k, code, src):
        if v > V[row, j, k]:
            V[row, j, k] = v
            PD[i, j, k] = code
            SD[i, j, k] = src
        if v > D[i, j]:
            D[i, j] = v
            BD[i, j] = k

    def single(col, x, y, base, pred, code):
        if x < 0 or y < 0 or base == NEG:
            return
        r0 = x % R
        for k in range(N_CLASSES):
            v = V[r0, y, k]
            if v == NEG:
                continue
            if guard and not _allowed(pred, k):
                continue
            offer(v + base, _class_append(col, k), code, k)

    # group 2 written once in an oriented frame; tr=True swaps the sequences
    def so(x, y, tr):
        return s(y, x) if tr else s(x, y)

    def So(x, y, tr):
        return S(y, x) if tr else S(x, y)

    def do(x, y, tr):
        return d(y, x) if tr else d(x, y)

    def fo(x, y, tr):
        return f(y, x) if tr else f(x, y)

    def single_o(col, x, y, base, pred, code, tr):
        if tr:
            single(col, y, x, base, pred, code)
        else:
            single(col, x, y, base, pred, code)

    def group2(p, q, tr, base):
        cx = _B if tr else _A
        cy = _A if tr else _B
        not_x2 = _NOT_B2 if tr else _NOT_A2
        q_prev_boundary = (q - 1) % 3 == 0
        h_prev = so(p - 1, q - 1, tr) / 2 if not q_prev_boundary else 0.0
        offer(So(p, q, tr) / 2 + fo(p - 3, q - 3, tr) + ext + so(p, q, tr) / 2 + h_prev,
              _class_two(_P, _P), base + 1, -1)
        offer(so(p, q, tr) + so(p - 1, q - 1, tr) + do(p - 3, q - 2, tr) + op
              + (op if q_prev_boundary else 0.0),
              _class_two(_P, _P), base + 2, -1)
        t = so(p - 2, q - 1, tr)
        w = t / 2 if q_prev_boundary else t
        offer(so(p, q, tr) + w + fo(p - 3, q - 2, tr) + op, _class_two(_P, cx), base + 3, -1)
        offer(so(p, q, tr) + do(p - 3, q - 1, tr) + op, _class_two(_P, cx), base + 4, -1)
        single_o(_P, p - 1, q - 1, so(p, q, tr) + op, not_x2, base + 5, tr)
        offer(so(p - 1, q, tr) + w + fo(p - 3, q - 2, tr) + op, _class_two(cx, _P), base + 6, -1)
        offer(so(p - 1, q, tr) + do(p - 3, q - 1, tr) + op, _class_two(cx, _P), base + 7, -1)
        offer(so(p - 2, q, tr) + do(p - 3, q - 1, tr) + op, _class_two(cx, cx), base + 8, -1)
        offer(gap + do(p - 3, q, tr), _class_two(cx, cx), base + 9, -1)
        single_o(cx, p - 1, q, op, not_x2, base + 10, tr)
        single_o(cy, p, q - 1, 0.0, _ANY, base + 11, tr)

    ri = i % 3
    rj = j % 3
    if ri == 0 and rj == 0:
        offer(S(i, j) + d(i - 3, j - 3), _class_two(_P, _P), 1, -1)
        offer(s(i, j) + s(i - 1, j - 1) + d(i - 3, j - 2) + 2 * op, _class_two(_P, _P), 2, -1)
        offer(s(i, j) + s(i - 2, j - 1) + d(i - 3, j - 2) + 2 * op, _class_two(_P, _A), 3, -1)
        offer(s(i, j) + d(i - 3, j - 1) + 2 * op, _class_two(_P, _A), 4, -1)
        offer(s(i, j) + s(i - 1, j - 1) + d(i - 2, j - 3) + 2 * op, _class_two(_P, _P), 5, -1)
        offer(s(i, j) + s(i - 1, j - 2) + d(i - 2, j - 3) + 2 * op, _class_two(_P, _B), 6, -1)
        offer(s(i, j) + d(i - 1, j - 3) + 2 * op, _class_two(_P, _B), 7, -1)
        single(_P, i - 1, j - 1, s(i, j) + 2 * op, _NOT_A2B2, 8)
        offer(s(i - 1, j) / 2 + s(i - 2, j - 1) / 2 + f(i - 3, j - 2) + op,
              _class_two(_A, _P), 9, -1)
        offer(s(i - 1, j) + d(i - 3, j - 1) + 2 * op, _class_two(_A, _P), 10, -1)
        offer(s(i - 2, j) / 2 + f(i - 3, j - 1) + op, _class_two(_A, _A), 11, -1)
        offer(gap + d(i - 3, j), _class_two(_A, _A), 12, -1)
        single(_A, i - 1, j, op, _NOT_A2, 13)
        offer(s(i, j - 1) / 2 + s(i - 1, j - 2) / 2 + f(i - 2, j - 3) + op,
              _class_two(_B, _P), 14, -1)
        offer(s(i, j - 1) + d(i - 1, j - 3) + 2 * op, _class_two(_B, _P), 15, -1)
        offer(s(i, j - 2) / 2 + f(i - 1, j - 3) + op, _class_two(_B, _B), 16, -1)
        offer(gap + d(i, j - 3), _class_two(_B, _B), 17, -1)
        single(_B, i, j - 1, op, _NOT_B2, 18)
    elif ri == 0:
        group2(i, j, False, 20)
    elif rj == 0:
        group2(j, i, True, 40)
    else:
        single(_P, i - 1, j - 1, s(i, j), _ANY, 61)
        single(_A, i - 1, j, 0.0, _ANY, 62)
        single(_B, i, j - 1, 0.0, _ANY, 63)
    return D[i, j]


@njit(cache=True)
def _f_cell(i, j, a, b, ca, cb, nuc, cod, gap, op, ext, guard,
            D, F, BD, V, PF, SF):
    """Evaluate ``D_F(i, j)``; returns -inf when the lookahead leaves a sequence."""
    n = a.shape[0] - 1
    m = b.shape[0] - 1
    R = V.shape[0]

    def s(x, y):
        if x < 1 or y < 1 or x > n or y > m:
            return NEG
        return nuc[a[x], b[y]]

    def S(x, y):
        if x < 3 or y < 3 or x > n or y > m:
            return NEG
        return cod[ca[x], cb[y]]

    def so(x, y, tr):
        return s(y, x) if tr else s(x, y)

    def So(x, y, tr):
        return S(y, x) if tr else S(x, y)

    def do(x, y, tr):
        if x < 0 or y < 0:
            return NEG
        return D[y, x] if tr else D[x, y]

    def fo(x, y, tr):
        if x < 0 or y < 0:
            return NEG
        return F[y, x] if tr else F[x, y]

    def guarded(x, y, tr, pred):
        # best D(x, y) over the tail classes that satisfy pred; class in SF
        if not guard:
            return D[y, x] if tr else D[x, y]
        xr, yr = (y, x) if tr else (x, y)
        best = NEG
        r0 = xr % R
        for k in range(N_CLASSES):
            v = V[r0, yr, k]
            if v > best and _allowed(pred, k):
                best = v
        return best

    def guarded_class(x, y, tr, pred):
        xr, yr = (y, x) if tr else (x, y)
        if not guard:
            return BD[xr, yr]
        best = NEG
        arg = -1
        r0 = xr % R
        for k in range(N_CLASSES):
            v = V[r0, yr, k]
            if v > best and _allowed(pred, k):
                best = v
                arg = k
        return arg

    PF[i, j] = 0
    SF[i, j] = -1
    ri = i % 3
    rj = j % 3
    if ri == 0 and rj == 0:
        PF[i, j] = F_COPY
        F[i, j] = D[i, j]
        return F[i, j]
    if rj == 0:
        p, q, plen, qlen, tr, r, base = i, j, n, m, False, ri, 80 if ri == 2 else 100
    else:
        p, q, plen, qlen, tr, r, base = j, i, m, n, True, rj, 90 if rj == 2 else 110

    best = NEG
    code = 0
    src = -1
    if r == 2:
        if p + 1 > plen or q + 1 > qlen:
            F[i, j] = NEG
            return NEG
        h = so(p + 1, q + 1, tr) / 2
        if q == 0:
            # boundary initialisation: the frameshifted codon starts after a gap run
            F[i, j] = do(p, q, tr) + h + op
            PF[i, j] = base + 4
            return F[i, j]
        not_x2 = _NOT_B2 if tr else _NOT_A2
        cands = (
            So(p + 1, q + 1, tr) / 2 + fo(p - 2, q - 2, tr) + ext,
            h + so(p, q, tr) + do(p - 2, q - 1, tr) + 2 * op,
            h + so(p - 1, q, tr) / 2 + fo(p - 2, q - 1, tr) + op,
            h + do(p - 2, q, tr) + op,
            h + guarded(p, q, tr, not_x2) + op,
        )
        for c in range(5):
            if cands[c] > best:
                best = cands[c]
                code = base + c + 1
        if code == base + 5:
            src = guarded_class(p, q, tr, not_x2)
    else:
        if p + 2 > plen or q + 2 > qlen:
            F[i, j] = NEG
            return NEG
        h = so(p + 2, q + 2, tr) / 2 + so(p + 1, q + 1, tr) / 2
        if q == 0:
            F[i, j] = do(p, q, tr) + h + op
            PF[i, j] = base + 2
            return F[i, j]
        not_x1 = _NOT_B1 if tr else _NOT_A1
        cands3 = (
            So(p + 2, q + 2, tr) / 2 + fo(p - 1, q - 1, tr) + ext,
            h + do(p - 1, q, tr) + op,
            h + guarded(p, q, tr, not_x1) + op,
        )
        for c in range(3):
            if cands3[c] > best:
                best = cands3[c]
                code = base + c + 1
        if code == base + 3:
            src = guarded_class(p, q, tr, not_x1)
    F[i, j] = best
    PF[i, j] = code
    SF[i, j] = src
    return best


@njit(cache=True, nogil=True)
def _fill(a, b, ca, cb, nuc, cod, gap, op, ext, guard, D, F, BD, V, PD, SD, PF, SF):
    n = a.shape[0] - 1
    m = b.shape[0] - 1
    R = V.shape[0]
    for i in range(n + 1):
        row = i % R
        for j in range(m + 1):
            if i == 0 or j == 0:
                for k in range(N_CLASSES):
                    V[row, j, k] = NEG
                if i == 0 and j == 0:
                    k0 = _EMPTY
                elif j == 0:
                    k0 = _class_of(_A, 1 if i >= 2 else 0, 0)
                else:
                    k0 = _class_of(_B, 0, 1 if j >= 2 else 0)
                D[i, j] = ((i + j) // 3) * gap
                V[row, j, k0] = D[i, j]
                BD[i, j] = k0
                PD[i, j, k0] = D_BOUNDARY
            else:
                _d_cell(i, j, a, b, ca, cb, nuc, cod, gap, op, ext, guard, D, F, BD, V, PD, SD)
            if i % 3 == 0 or j % 3 == 0:
                _f_cell(i, j, a, b, ca, cb, nuc, cod, gap, op, ext, guard, D, F, BD, V, PF, SF)


# ---------------------------------------------------------------------------
# Python surface

_LUT = np.zeros(256, dtype=np.int8)
for _k, _ch in enumerate(NUCLEOTIDES):
    _LUT[ord(_ch)] = _k


def _encode(seq: CodingSequence):
    """1-based nucleotide codes and the codon index of every window ``x-2..x``."""
    idx = np.zeros(seq.n + 1, dtype=np.int8)
    idx[1:] = _LUT[np.frombuffer(seq.residues.encode(), dtype=np.uint8)]
    codons = np.zeros(seq.n + 1, dtype=np.int16)
    if seq.n >= 3:
        x = idx[1:].astype(np.int16)
        codons[3:] = 16 * x[:-2] + 4 * x[1:-1] + x[2:]
    return idx, codons


@dataclass
class DpState:
    """Filled tables and provenance for one pair of sequences.

    ``D`` and ``D_F`` are ``(n+1) x (m+1)`` arrays indexed by prefix lengths.
    Cells of ``D_F`` outside its domain, or whose lookahead runs past a
    sequence end, hold ``-inf``. Provenance arrays store case codes (see
    :func:`case_label`); ``class_values`` holds the per-class values of ``D``
    when the state was built with ``keep_classes=True``.
    """

    A: CodingSequence
    B: CodingSequence
    scheme: ScoringScheme
    code: GeneticCode
    guard_grouping: bool
    D: np.ndarray
    D_F: np.ndarray
    best_class: np.ndarray
    d_case: np.ndarray
    d_source_class: np.ndarray
    f_case: np.ndarray
    f_source_class: np.ndarray
    class_values: np.ndarray | None
    _kernel_args: tuple = ()

    @property
    def score(self) -> float:
        return float(self.D[self.A.n, self.B.n])


def fill(A: CodingSequence, B: CodingSequence, scheme: ScoringScheme | None = None,
         code: GeneticCode | None = None, *, guard_grouping: bool = True,
         keep_classes: bool = False) -> DpState:
    """Fill ``D`` and ``D_F`` row by row, ``D(i, j)`` before ``D_F(i, j)``."""
    scheme = scheme or ScoringScheme()
    code = code or GeneticCode.standard()
    a, ca = _encode(A)
    b, cb = _encode(B)
    n, m = A.n, B.n
    nuc = scheme.nucleotide_scores()
    cod = scheme.codon_scores(code)
    gap = float(scheme.gap_cost)
    op = float(scheme.fs_open_cost)
    ext = float(scheme.fs_extension_cost) / 2
    D = np.full((n + 1, m + 1), NEG)
    F = np.full((n + 1, m + 1), NEG)
    BD = np.full((n + 1, m + 1), -1, dtype=np.int8)
    V = np.full((n + 1 if keep_classes else 4, m + 1, N_CLASSES), NEG)
    PD = np.zeros((n + 1, m + 1, N_CLASSES), dtype=np.int8)
    SD = np.full((n + 1, m + 1, N_CLASSES), -1, dtype=np.int8)
    PF = np.zeros((n + 1, m + 1), dtype=np.int8)
    SF = np.full((n + 1, m + 1), -1, dtype=np.int8)
    _fill(a, b, ca, cb, nuc, cod, gap, op, ext, bool(guard_grouping), D, F, BD, V, PD, SD, PF, SF)
    return DpState(A, B, scheme, code, bool(guard_grouping), D, F, BD, PD, SD, PF, SF,
                   V if keep_classes else None,
                   (a, b, ca, cb, nuc, cod, gap, op, ext, bool(guard_grouping)))


def _require_classes(state: DpState):
    if state.class_values is None:
        raise ValueError("cell evaluation needs a state filled with keep_classes=True")


def compute_D_cell(state: DpState, i: int, j: int) -> float:
    """Re-evaluate ``D(i, j)`` from its candidate list.

    Boundary cells return their initial value. All cells the candidates refer
    to must already be filled, so this is meant for completed states.
    """
    n, m = state.A.n, state.B.n
    if not (0 <= i <= n and 0 <= j <= m):
        raise IndexError((i, j))
    if i == 0 or j == 0:
        return ((i + j) // 3) * state.scheme.gap_cost
    _require_classes(state)
    V = state.class_values.copy()
    D = state.D.copy()
    BD = state.best_class.copy()
    PD = state.d_case.copy()
    SD = state.d_source_class.copy()
    return float(_d_cell(i, j, *state._kernel_args, D, state.D_F, BD, V, PD, SD))


def compute_DF_cell(state: DpState, i: int, j: int) -> float:
    """Re-evaluate ``D_F(i, j)``. Raises :class:`UndefinedCell` past the sequence ends."""
    n, m = state.A.n, state.B.n
    if not (0 <= i <= n and 0 <= j <= m):
        raise IndexError((i, j))
    if i % 3 and j % 3:
        raise ValueError(f"D_F({i},{j}) is outside the table's domain")
    alpha = (3 - i % 3) % 3 if i % 3 else (3 - j % 3) % 3
    if i + alpha > n or j + alpha > m:
        raise UndefinedCell(i, j)
    _require_classes(state)
    F = state.D_F.copy()
    PF = state.f_case.copy()
    SF = state.f_source_class.copy()
    return float(_f_cell(i, j, *state._kernel_args, state.D, F, state.best_class,
                         state.class_values, PF, SF))


# Configurations: columns added left to right as (dx, dy) offsets from the
# cell in its oriented frame (None marks a gap), then the source reference.
# Source kinds: "D" continues at the best class of that D cell, "F" at the
# D_F cell, "S" at the D cell with the recorded source class.
_D_GROUP1 = {
    1: ([(-2, -2), (-1, -1), (0, 0)], ("D", -3, -3)),
    2: ([(-2, None), (-1, -1), (0, 0)], ("D", -3, -2)),
    3: ([(-2, -1), (-1, None), (0, 0)], ("D", -3, -2)),
    4: ([(-2, None), (-1, None), (0, 0)], ("D", -3, -1)),
    5: ([(None, -2), (-1, -1), (0, 0)], ("D", -2, -3)),
    6: ([(-1, -2), (None, -1), (0, 0)], ("D", -2, -3)),
    7: ([(None, -2), (None, -1), (0, 0)], ("D", -1, -3)),
    8: ([(0, 0)], ("S", -1, -1)),
    9: ([(-2, -1), (-1, 0), (0, None)], ("F", -3, -2)),
    10: ([(-2, None), (-1, 0), (0, None)], ("D", -3, -1)),
    11: ([(-2, 0), (-1, None), (0, None)], ("F", -3, -1)),
    12: ([(-2, None), (-1, None), (0, None)], ("D", -3, 0)),
    13: ([(0, None)], ("S", -1, 0)),
    14: ([(-1, -2), (0, -1), (None, 0)], ("F", -2, -3)),
    15: ([(None, -2), (0, -1), (None, 0)], ("D", -1, -3)),
    16: ([(0, -2), (None, -1), (None, 0)], ("F", -1, -3)),
    17: ([(None, -2), (None, -1), (None, 0)], ("D", 0, -3)),
    18: ([(None, 0)], ("S", 0, -1)),
}
_D_GROUP2 = {
    1: ([(-2, -2), (-1, -1), (0, 0)], ("F", -3, -3)),
    2: ([(-2, None), (-1, -1), (0, 0)], ("D", -3, -2)),
    3: ([(-2, -1), (-1, None), (0, 0)], ("F", -3, -2)),
    4: ([(-2, None), (-1, None), (0, 0)], ("D", -3, -1)),
    5: ([(0, 0)], ("S", -1, -1)),
    6: ([(-2, -1), (-1, 0), (0, None)], ("F", -3, -2)),
    7: ([(-2, None), (-1, 0), (0, None)], ("D", -3, -1)),
    8: ([(-2, 0), (-1, None), (0, None)], ("D", -3, -1)),
    9: ([(-2, None), (-1, None), (0, None)], ("D", -3, 0)),
    10: ([(0, None)], ("S", -1, 0)),
    11: ([(None, 0)], ("S", 0, -1)),
}
_D_GROUP4 = {
    1: ([(0, 0)], ("S", -1, -1)),
    2: ([(0, None)], ("S", -1, 0)),
    3: ([(None, 0)], ("S", 0, -1)),
}
_F_TWO = {
    1: ([(-1, -1), (0, 0)], ("F", -2, -2)),
    2: ([(-1, None), (0, 0)], ("D", -2, -1)),
    3: ([(-1, 0), (0, None)], ("F", -2, -1)),
    4: ([(-1, None), (0, None)], ("D", -2, 0)),
    5: ([], ("S", 0, 0)),
}
_F_ONE = {
    1: ([(0, 0)], ("F", -1, -1)),
    2: ([(0, None)], ("D", -1, 0)),
    3: ([], ("S", 0, 0)),
}


def case_label(code: int, table: str = "D") -> tuple[str, int, int]:
    """Decode a provenance code into ``(table, group, case)``."""
    code = int(code)
    if table == "D":
        if code == D_BOUNDARY:
            return ("D", 0, 0)
        group, case = divmod(code, 20)
        if not (0 <= group <= 3 and case >= 1):
            raise ValueError(f"unknown D case code {code}")
        return ("D", group + 1, case)
    if code == F_COPY:
        return ("D_F", 1, 1)
    group, case = divmod(code - 60, 10)
    if not (2 <= group <= 5 and case >= 1):
        raise ValueError(f"unknown D_F case code {code}")
    return ("D_F", group, case)


def _configuration(table, code):
    """Return (columns, source, transposed) for a case code."""
    _, group, case = case_label(code, table)
    if table == "D":
        cfg = {1: _D_GROUP1, 2: _D_GROUP2, 3: _D_GROUP2, 4: _D_GROUP4}[group]
        return cfg[case] + (group == 3,)
    if group == 1:
        return [], ("B", 0, 0), False
    cfg = _F_TWO if group in (2, 3) else _F_ONE
    return cfg[case] + (group in (3, 5),)


def traceback(state: DpState) -> Alignment:
    """Rebuild an alignment scoring ``D(n, m)`` by walking the provenance.

    A candidate that used a ``D_F`` cell adds that cell's lookahead pairs
    itself; the ``D_F`` cell's own case then adds only columns to their left.
    """
    A, B = state.A, state.B
    n, m = A.n, B.n
    columns: list[tuple[int, int]] = []
    table, i, j = "D", n, m
    k = int(state.best_class[n, m])
    seen = set()
    while True:
        key = (table, i, j, k if table == "D" else -1)
        if key in seen:
            raise CorruptProvenance(f"traceback revisited {table}({i},{j})")
        seen.add(key)
        if table == "D" and (i == 0 or j == 0):
            columns.extend((x, 0) for x in range(i, 0, -1))
            columns.extend((0, y) for y in range(j, 0, -1))
            break
        code = int(state.d_case[i, j, k]) if table == "D" else int(state.f_case[i, j])
        if code == 0:
            raise CorruptProvenance(f"no provenance at {table}({i},{j})")
        cols, (kind, dx, dy), tr = _configuration(table, code)
        p, q = (j, i) if tr else (i, j)
        for ox, oy in reversed(cols):
            x = 0 if ox is None else p + ox
            y = 0 if oy is None else q + oy
            columns.append((y, x) if tr else (x, y))
        sp, sq = p + dx, q + dy
        si, sj = (sq, sp) if tr else (sp, sq)
        if si < 0 or sj < 0:
            raise CorruptProvenance(f"{table}({i},{j}) points outside the table")
        if kind == "S":
            k = int(state.d_source_class[i, j, k]) if table == "D" else int(state.f_source_class[i, j])
            table = "D"
        elif kind in ("D", "B"):
            k = int(state.best_class[si, sj])
            table = "D"
        else:
            table = "F"
        i, j = si, sj
        if k < 0 and table == "D":
            raise CorruptProvenance(f"missing source class for D({i},{j})")
    columns.reverse()
    row_a = "".join(A.residues[x - 1] if x else GAP for x, _ in columns)
    row_b = "".join(B.residues[y - 1] if y else GAP for _, y in columns)
    if row_a.replace(GAP, "") != A.residues or row_b.replace(GAP, "") != B.residues:
        raise CorruptProvenance("traceback rows do not reproduce the input sequences")
    return Alignment(row_a, row_b)


class AlignmentResult(NamedTuple):
    score: float
    alignment: Alignment
    breakdown: ScoreBreakdown


def align(A: CodingSequence, B: CodingSequence, scheme: ScoringScheme | None = None,
          code: GeneticCode | None = None, *, guard_grouping: bool = True) -> AlignmentResult:
    """Optimal global alignment of two coding sequences.

    ``score`` is ``D(n, m)``. With the default guard it always equals
    ``breakdown.total``, the rescored value of the returned alignment.
    """
    scheme = scheme or ScoringScheme()
    code = code or GeneticCode.standard()
    state = fill(A, B, scheme, code, guard_grouping=guard_grouping)
    alignment = traceback(state)
    breakdown = score_alignment(alignment, A, B, scheme, code)
    return AlignmentResult(state.score, alignment, breakdown)
