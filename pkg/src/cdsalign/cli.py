"""Command-line interface.

Exit status is 0 on success, 1 when input fails validation and 2 for usage
errors. Diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .dp import align
from .errors import CdsAlignError, ValidationError
from .io_cli import (
    EXTENSION_FREE_LABEL,
    AlignmentReport,
    bundled_blosum62,
    load_matrix,
    read_alignment,
    read_fasta,
    render_report,
    report_to_json,
    scheme_parameters,
)
from .model import NUCLEOTIDES, CodingSequence, GeneticCode, ScoringScheme, SubstitutionMatrix
from .scorer import score_alignment


def _add_scheme_args(p: argparse.ArgumentParser):
    g = p.add_argument_group("scoring")
    g.add_argument("--matrix", metavar="PATH", help="amino-acid matrix file (default: BLOSUM62)")
    g.add_argument("--gap-cost", type=float, default=-1.0, metavar="R")
    g.add_argument("--fs-open-cost", type=float, default=-2.0, metavar="R")
    g.add_argument("--fs-extension-cost", type=float, default=-1.0, metavar="R")
    g.add_argument("--nuc-match", type=float, default=1.0, metavar="R")
    g.add_argument("--nuc-mismatch", type=float, default=-1.0, metavar="R")
    g.add_argument("--no-extension", action="store_true",
                   help="set the extension cost to 0 (" + EXTENSION_FREE_LABEL + ")")


def _add_output_args(p: argparse.ArgumentParser):
    g = p.add_argument_group("output")
    g.add_argument("--format", choices=("text", "json"), default="text")
    g.add_argument("--wrap", type=int, default=60, metavar="N", help="columns per block")
    g.add_argument("--report", metavar="PATH", help="also write the JSON report to PATH")
    g.add_argument("--color", action="store_true", help="ANSI colors in text output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cdsalign",
        description="Frameshift-aware global alignment of protein-coding DNA sequences.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{align,rescore}")

    p = sub.add_parser("align", help="align two coding sequences")
    p.add_argument("fasta", nargs="*", help="one file with two records, or two files")
    p.add_argument("--pairs", metavar="MANIFEST",
                   help="file with two FASTA paths per line; aligns each pair")
    p.add_argument("--jobs", type=int, default=1, help="pairs aligned concurrently")
    p.add_argument("--unguarded", action="store_true",
                   help="use the recurrences without the grouping guard")
    _add_scheme_args(p)
    _add_output_args(p)

    p = sub.add_parser("rescore", help="score a given alignment")
    p.add_argument("alignment", help="two-record gapped FASTA")
    p.add_argument("fasta", nargs="*",
                   help="optional original sequences; rows must strip to them")
    _add_scheme_args(p)
    _add_output_args(p)

    p = sub.add_parser("selftest", help=argparse.SUPPRESS)
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--schemes", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _scheme(args) -> tuple[ScoringScheme, dict, str]:
    if args.matrix:
        aa, name = load_matrix(args.matrix), args.matrix
    else:
        aa, name = bundled_blosum62(), "BLOSUM62"
    ext = 0.0 if args.no_extension else args.fs_extension_cost
    scheme = ScoringScheme(
        aa_matrix=aa,
        nuc_matrix=SubstitutionMatrix.uniform(NUCLEOTIDES, args.nuc_match, args.nuc_mismatch),
        gap_cost=args.gap_cost,
        fs_open_cost=args.fs_open_cost,
        fs_extension_cost=ext,
    )
    label = EXTENSION_FREE_LABEL if args.no_extension else ""
    return scheme, scheme_parameters(scheme, name), label


def _load_pair(paths: list[str]) -> tuple[CodingSequence, CodingSequence]:
    if len(paths) == 1:
        records = read_fasta(paths[0])
        if len(records) != 2:
            raise ValidationError(f"{paths[0]}: expected 2 records, found {len(records)}")
        return records[0], records[1]
    if len(paths) == 2:
        return read_fasta(paths[0])[0], read_fasta(paths[1])[0]
    raise ValidationError("give one FASTA file with two records or two FASTA files")


def _emit(report: AlignmentReport, args, out) -> None:
    if args.format == "json":
        out.write(report_to_json(report) + "\n")
    else:
        out.write(render_report(report, width=args.wrap, color=args.color))
    if args.report:
        Path(args.report).write_text(report_to_json(report) + "\n")


def _align_report(A, B, scheme, params, label, unguarded) -> AlignmentReport:
    code = GeneticCode.standard()
    result = align(A, B, scheme, code, guard_grouping=not unguarded)
    params = dict(params, guard_grouping=not unguarded)
    return AlignmentReport(A, B, result.alignment, result.breakdown, result.score,
                           params, code, label)


def _cmd_align(args, out) -> int:
    if args.wrap < 1:
        raise _Usage("--wrap must be positive")
    scheme, params, label = _scheme(args)
    if args.pairs:
        if args.fasta:
            raise _Usage("--pairs cannot be combined with positional FASTA files")
        base = Path(args.pairs).parent
        jobs = []
        for n, line in enumerate(Path(args.pairs).read_text().splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            paths = [str(base / p) for p in line.split()]
            if len(paths) != 2:
                raise ValidationError(f"{args.pairs}: line {n}: expected two paths")
            jobs.append(_load_pair(paths))
        with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
            reports = list(pool.map(
                lambda ab: _align_report(*ab, scheme, params, label, args.unguarded), jobs))
        if args.format == "json":
            import json
            from .io_cli import report_to_dict
            out.write(json.dumps([report_to_dict(r) for r in reports], indent=2) + "\n")
        else:
            for r in reports:
                out.write(render_report(r, width=args.wrap, color=args.color) + "\n")
        return 0
    A, B = _load_pair(args.fasta)
    _emit(_align_report(A, B, scheme, params, label, args.unguarded), args, out)
    return 0


def _cmd_rescore(args, out) -> int:
    if args.wrap < 1:
        raise _Usage("--wrap must be positive")
    scheme, params, label = _scheme(args)
    alignment, id_a, id_b = read_alignment(args.alignment)
    stripped_a, stripped_b = alignment.stripped()
    A = CodingSequence(stripped_a, id_a)
    B = CodingSequence(stripped_b, id_b)
    if args.fasta:
        A0, B0 = _load_pair(args.fasta)
        A, B = CodingSequence(A0.residues, A0.id), CodingSequence(B0.residues, B0.id)
    code = GeneticCode.standard()
    breakdown = score_alignment(alignment, A, B, scheme, code)
    _emit(AlignmentReport(A, B, alignment, breakdown, breakdown.total, params, code, label),
          args, out)
    return 0


def _cmd_selftest(args, out) -> int:
    from .oracle import oracle_campaign

    result = oracle_campaign(args.pairs, args.schemes, args.seed)
    out.write(f"selftest: {result.pairs} pairs, {result.schemes} schemes, "
              f"{len(result.mismatches)} mismatches\n")
    for a, b, k, got, want in result.mismatches:
        out.write(f"  mismatch scheme={k} A={a} B={b} dp={got} brute={want}\n")
    return 0 if result.ok else 1


class _Usage(Exception):
    pass


def run_cli(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = {"align": _cmd_align, "rescore": _cmd_rescore, "selftest": _cmd_selftest}
    try:
        return handler[args.command](args, out)
    except _Usage as exc:
        err.write(f"cdsalign: usage error: {exc}\n")
        return 2
    except ValidationError as exc:
        err.write(f"cdsalign: error: {exc}\n")
        return 1
    except OSError as exc:
        err.write(f"cdsalign: error: {exc}\n")
        return 1
    except CdsAlignError as exc:
        err.write(f"cdsalign: internal error: {exc}\n")
        return 3


def main():  # pragma: no cover
    sys.exit(run_cli())


if __name__ == "__main__":  # pragma: no cover
    main()
