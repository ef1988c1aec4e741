"""Command-line interface: ``ginv analyze | pinv | core | psum | gen | verify``.

Exit codes: 0 success, 1 usage error, 2 input parse error, 3 predicate or
hypothesis failure, 4 theorem violation found by ``verify``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import campaigns, coreinv, generators, mmio, psum, report
from .errors import BothZero, DimensionMismatch, GinvError, NotGroupMatrix, ParseError, UnknownTheorem
from .geninv import pinv
from .numkit import Tolerance

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_PREDICATE, EXIT_VIOLATION = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _tolerance(args) -> Tolerance:
    try:
        tol = Tolerance.from_env()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if getattr(args, "tol", None) is not None:
        tol = tol.with_eq(args.tol)
    return tol


def _read(path):
    if not Path(path).is_file():
        raise UsageError(f"no such file: {path}")
    try:
        return mmio.read_matrix(path)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    tol = _tolerance(args)
    A, B = _read(args.A), _read(args.B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    _emit(report.dumps(report.analyze(A, B, tol)), args.json)
    return EXIT_OK


def cmd_pinv(args) -> int:
    tol = _tolerance(args)
    _emit(mmio.format_matrix(pinv(_read(args.A), tol)), args.out)
    return EXIT_OK


def cmd_core(args) -> int:
    tol = _tolerance(args)
    A = _read(args.A)
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"core inverse needs a square matrix, got {A.shape}")
    _emit(mmio.format_matrix(coreinv.core_inverse(A, tol, name=args.A)), args.out)
    return EXIT_OK


def cmd_psum(args) -> int:
    tol = _tolerance(args)
    A, B = _read(args.A), _read(args.B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    verdict = psum.is_parallel_summable(A, B, tol)
    deviation = None
    if args.oracle:
        deviation = psum.ginverse_invariance_oracle(A, B, trials=args.oracle, seed=args.seed, tol=tol)
    doc = {
        "summable": verdict.summable,
        "witness": verdict.witness,
        "sum": report.encode_matrix(verdict.sum),
        "max_ginv_deviation": deviation,
    }
    _emit(report.dumps(doc), args.json)
    return EXIT_OK


def _parse_dims(text: str) -> tuple[int, int]:
    try:
        m, n = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise UsageError(f"--dims expects MxN, got {text!r}") from None
    return m, n


def _parse_params(items) -> dict:
    params = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--param expects key=value, got {item!r}")
        try:
            params[key.strip()] = int(value)
        except ValueError:
            raise UsageError(f"--param {key} must be an integer") from None
    return params


def cmd_gen(args) -> int:
    try:
        spec = generators.GenSpec(args.family, _parse_dims(args.dims), _parse_params(args.param), args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = generators.generate(spec)
    mats = out if isinstance(out, tuple) else (out,)
    ext = ".csv" if args.format == "csv" else ".mtx"
    for label, M in zip("AB", mats):
        path = f"{args.out}_{label}{ext}"
        mmio.write_matrix(path, M, "csv" if args.format == "csv" else "matrix_market")
        print(path)
    return EXIT_OK


def _result_doc(res: campaigns.CampaignResult) -> dict:
    pair = res.counterexample
    cx = None
    if pair is not None:
        cx = {"A": report.encode_matrix(pair[0]), "B": report.encode_matrix(pair[1])}
    entry = campaigns.REGISTRY[res.theorem_id]
    return {
        "theorem_id": res.theorem_id,
        "description": entry.description,
        "expected_to_hold": entry.expected_to_hold,
        "trials": res.trials,
        "violations": res.violations,
        "worst_residual": res.worst_residual,
        "counterexample": cx,
    }


def cmd_verify(args) -> int:
    if args.list:
        for tid in campaigns.theorem_ids():
            entry = campaigns.REGISTRY[tid]
            flag = "" if entry.expected_to_hold else "  [refuted statement]"
            print(f"{tid:28s} {entry.description}{flag}")
        return EXIT_OK
    if args.all == bool(args.theorem):
        raise UsageError("give exactly one of --theorem ID, --all or --list")
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    tol = _tolerance(args)
    ids = campaigns.theorem_ids() if args.all else args.theorem
    results = [campaigns.run_campaign(tid, args.trials, args.seed, tol, workers=args.workers) for tid in ids]
    for res in results:
        status = "ok" if res.violations == 0 else "VIOLATED"
        print(f"{status:8s} {res.theorem_id:28s} {res.violations:5d}/{res.trials:<5d} worst_residual={res.worst_residual:.3e}")
    if args.json:
        doc = {"seed": args.seed, "trials": args.trials, "results": [_result_doc(r) for r in results]}
        Path(args.json).write_text(report.dumps(doc))
    return EXIT_VIOLATION if any(r.violations for r in results) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ginv", description="Generalized inverses, orthogonality and additivity checks for complex matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def tol_flag(p):
        p.add_argument("--tol", type=float, default=None, help="equality/zero tolerance (overrides GINV_TOL)")

    p = sub.add_parser("analyze", help="report every predicate and inverse for a pair")
    p.add_argument("A")
    p.add_argument("B")
    p.add_argument("--json", metavar="OUT", help="write the report here instead of stdout")
    tol_flag(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("pinv", help="Moore-Penrose inverse, written as Matrix Market")
    p.add_argument("A")
    p.add_argument("--out")
    tol_flag(p)
    p.set_defaults(func=cmd_pinv)

    p = sub.add_parser("core", help="core inverse of a group matrix")
    p.add_argument("A")
    p.add_argument("--out")
    tol_flag(p)
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("psum", help="parallel summability and A:B")
    p.add_argument("A")
    p.add_argument("B")
    p.add_argument("--oracle", type=int, default=0, metavar="N", help="also sample N g-inverses of A+B")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", metavar="OUT")
    tol_flag(p)
    p.set_defaults(func=cmd_psum)

    p = sub.add_parser("gen", help="generate a structured matrix or pair")
    p.add_argument("--family", required=True, choices=generators.FAMILIES)
    p.add_argument("--dims", required=True, metavar="MxN")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, metavar="PREFIX")
    p.add_argument("--param", action="append", metavar="KEY=VALUE", help="rank parameter, repeatable")
    p.add_argument("--format", choices=("mtx", "csv"), default="mtx")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run randomized theorem campaigns")
    p.add_argument("--theorem", action="append", metavar="ID")
    p.add_argument("--all", action="store_true")
    p.add_argument("--list", action="store_true")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--json", metavar="OUT")
    tol_flag(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ginv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnknownTheorem as exc:
        print(f"ginv: error: unknown theorem id {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"ginv: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NotGroupMatrix, BothZero, DimensionMismatch, GinvError) as exc:
        print(f"ginv: {exc}", file=sys.stderr)
        return EXIT_PREDICATE


if __name__ == "__main__":
    sys.exit(main())
