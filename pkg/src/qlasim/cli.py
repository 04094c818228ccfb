"""Command-line front end: JSON matrix files in, reports out.

Matrix file format: ``{"rows": R, "cols": C, "data": [[re, im], ...]}`` with
``data`` row-major and one [re, im] pair per entry.  Vectors are files with a
single row or a single column.

Exit codes: 0 success; 1 empty labeled branch / failed sampled measurement;
2 malformed input; 3 numerical failure (singular input, residual over the
tolerance).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import pipelines
from .encode import DecodedResult, NonProductSectorError, encode_rc, encode_rcm, decode_rcm
from .gates import mcx_decomposition_count
from .linalg import SingularMatrixError
from .measure import EmptyBranchError
from .pipelines import PreparationError

EXIT_OK = 0
EXIT_NOT_MEASURED = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3

NOT_MEASURED_MESSAGE = "labeled branch empty; state unchanged"


class CliInputError(ValueError):
    """Malformed file or incompatible shapes (exit code 2)."""


# --- serialization ---------------------------------------------------------

def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def dumps(obj) -> str:
    """JSON text with floats at 17 significant digits (lossless round trip)."""
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def matrix_to_filedict(matrix) -> dict:
    m = np.atleast_2d(np.asarray(matrix, dtype=np.complex128))
    return {
        "rows": m.shape[0],
        "cols": m.shape[1],
        "data": [[float(z.real), float(z.imag)] for z in m.reshape(-1)],
    }


def read_matrix(path: str) -> np.ndarray:
    """Load a complex matrix from a JSON matrix file."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise CliInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliInputError(f"malformed JSON in {path}: {exc}") from exc

    if not isinstance(raw, dict) or not {"rows", "cols", "data"} <= set(raw):
        raise CliInputError(f"{path}: expected keys rows, cols, data")
    rows, cols, data = raw["rows"], raw["cols"], raw["data"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows >= 1 and cols >= 1):
        raise CliInputError(f"{path}: rows and cols must be positive integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise CliInputError(
            f"{path}: data must hold rows*cols = {rows * cols} entries, got {len(data)}"
        )
    out = np.empty(rows * cols, dtype=np.complex128)
    for i, pair in enumerate(data):
        if not (isinstance(pair, list) and len(pair) == 2
                and all(isinstance(v, (int, float)) for v in pair)):
            raise CliInputError(f"{path}: entry {i} is not an [re, im] pair")
        out[i] = complex(pair[0], pair[1])
    if not np.all(np.isfinite(out)):
        raise CliInputError(f"{path}: entries must be finite")
    return out.reshape(rows, cols)


def read_vector(path: str) -> np.ndarray:
    m = read_matrix(path)
    if 1 not in m.shape:
        raise CliInputError(f"{path}: expected a vector (one row or one column)")
    return m.reshape(-1)


def write_report(payload: dict, lines: list[str], output: str) -> None:
    if output == "json":
        print(dumps(payload))
    else:
        for line in lines:
            print(line)


# --- report assembly -------------------------------------------------------

def _as_matrix(result: DecodedResult) -> np.ndarray:
    m = np.asarray(result.matrix)
    return m.reshape(-1, 1) if m.ndim == 1 else m


def _result_payload(result) -> object:
    if result is None:
        return None
    if isinstance(result, DecodedResult):
        return matrix_to_filedict(_as_matrix(result))
    z = complex(result)
    return [float(z.real), float(z.imag)]


def _outcome_payload(outcome) -> object:
    return "not-measured" if outcome is None else outcome


def _report_pipeline(command: str, report: pipelines.PipelineReport, args) -> int:
    payload = {
        "command": command,
        "outcome": _outcome_payload(report.outcome),
        "branch_weight": report.branch_weight,
        "recovered_norm": report.recovered_norm,
        "gate_depth": report.gate_depth,
        "result": _result_payload(report.result),
    }
    if isinstance(report.result, DecodedResult):
        payload["residual"] = report.result.residual

    if report.outcome != 1:
        message = (NOT_MEASURED_MESSAGE if report.outcome is None
                   else "sampled measurement failed (outcome 0)")
        payload["message"] = message
        write_report(payload, [message, f"outcome: {_outcome_payload(report.outcome)}"],
                     args.output)
        return EXIT_NOT_MEASURED

    if isinstance(report.result, DecodedResult) and report.result.residual > args.tolerance:
        payload["error"] = (
            f"decode residual {report.result.residual:.3e} over tolerance"
        )
        write_report(payload, [payload["error"]], args.output)
        return EXIT_NUMERICAL

    lines = [f"outcome: {report.outcome}",
             f"branch_weight: {_fmt(report.branch_weight)}",
             f"recovered_norm: {_fmt(report.recovered_norm)}",
             f"gate_depth: {report.gate_depth}"]
    lines.extend(_matrix_lines(report.result))
    write_report(payload, lines, args.output)
    return EXIT_OK


def _matrix_lines(result) -> list[str]:
    if isinstance(result, DecodedResult):
        m = _as_matrix(result)
        lines = [f"result ({m.shape[0]}x{m.shape[1]}):"]
        for row in m:
            lines.append("  " + "  ".join(f"{_fmt(z.real)}{z.imag:+.17g}j" for z in row))
        return lines
    z = complex(result)
    return [f"result: {_fmt(z.real)}{z.imag:+.17g}j"]


# --- subcommands ------------------------------------------------------------

def _cmd_rowsum(args) -> int:
    report = pipelines.row_sum(encode_rc(read_matrix(args.matrix)),
                               mode=args.mode, seed=args.seed)
    return _report_pipeline("rowsum", report, args)


def _cmd_hconj(args) -> int:
    conj = pipelines.hermitian_conjugate(encode_rcm(read_matrix(args.matrix)))
    decoded = decode_rcm(conj)
    payload = {
        "command": "hconj",
        "outcome": 1,
        "result": matrix_to_filedict(decoded.matrix),
        "residual": decoded.residual,
    }
    lines = _matrix_lines(decoded)
    write_report(payload, lines, args.output)
    return EXIT_OK


def _cmd_add(args) -> int:
    report = pipelines.matrix_add(read_matrix(args.matrix_a), read_matrix(args.matrix_b),
                                  mode=args.mode, seed=args.seed)
    return _report_pipeline("add", report, args)


def _cmd_mul(args) -> int:
    report = pipelines.matrix_mul(read_matrix(args.matrix_a), read_matrix(args.matrix_b),
                                  mode=args.mode, seed=args.seed)
    return _report_pipeline("mul", report, args)


def _cmd_det_phase(args) -> int:
    report = pipelines.determinant_phase(read_matrix(args.matrix),
                                         mode=args.mode, seed=args.seed)
    return _report_pipeline("det-phase", report, args)


def _cmd_inverse(args) -> int:
    report = pipelines.matrix_inverse(read_matrix(args.matrix),
                                      mode=args.mode, seed=args.seed)
    return _report_pipeline("inverse", report, args)


def _cmd_solve(args) -> int:
    report = pipelines.linear_stage(read_matrix(args.matrix), read_vector(args.vector),
                                    mode=args.mode, seed=args.seed)
    return _report_pipeline("solve", report, args)


def _cmd_inner(args) -> int:
    report = pipelines.inner_product_phase(read_vector(args.psi1), read_vector(args.psi2),
                                           mode=args.mode, seed=args.seed)
    return _report_pipeline("inner", report, args)


def _cmd_bench_measure(args) -> int:
    rows = pipelines.naive_success_bench(encode_rc(read_matrix(args.matrix)),
                                         trials=args.trials, master_seed=args.seed)
    payload = {
        "command": "bench-measure",
        "trials": args.trials,
        "rows": [
            {"n_r": r.n_r, "analytic_p": r.analytic_p, "empirical_p": r.empirical_p,
             "controlled_success_rate": r.controlled_success_rate}
            for r in rows
        ],
    }
    lines = ["n_r  analytic_p  empirical_p  controlled_success_rate"]
    for r in rows:
        lines.append(f"{r.n_r}  {_fmt(r.analytic_p)}  {_fmt(r.empirical_p)}  "
                     f"{_fmt(r.controlled_success_rate)}")
    write_report(payload, lines, args.output)
    return EXIT_OK


def _cmd_depth(args) -> int:
    if args.max_controls < 1:
        raise CliInputError("--max-controls must be at least 1")
    counts = [mcx_decomposition_count(n) for n in range(1, args.max_controls + 1)]
    payload = {
        "command": "depth",
        "rows": [
            {"n_controls": c.n_controls, "single_qubit_gates": c.single_qubit_gates,
             "toffoli_gates": c.toffoli_gates, "depth": c.depth}
            for c in counts
        ],
    }
    lines = ["n_controls  single_qubit_gates  toffoli_gates  depth"]
    for c in counts:
        lines.append(f"{c.n_controls}  {c.single_qubit_gates}  {c.toffoli_gates}  {c.depth}")
    write_report(payload, lines, args.output)
    return EXIT_OK


# --- argument parsing -------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master random seed")
    common.add_argument("--mode", choices=("ideal", "sampled"), default="ideal",
                        help="ideal: deterministic branch extraction; "
                             "sampled: Born-rule flag measurement")
    common.add_argument("--tolerance", type=float, default=1e-10,
                        help="decode residual treated as numerical failure")
    common.add_argument("--output", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(
        prog="qlasim",
        description="State-vector pipelines for amplitude-encoded matrix algebra",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rowsum", parents=[common], help="sum a matrix over its columns")
    p.add_argument("matrix")
    p.set_defaults(fn=_cmd_rowsum)

    p = sub.add_parser("hconj", parents=[common], help="Hermitian conjugate of a matrix")
    p.add_argument("matrix")
    p.set_defaults(fn=_cmd_hconj)

    p = sub.add_parser("add", parents=[common], help="sum of two matrices")
    p.add_argument("matrix_a")
    p.add_argument("matrix_b")
    p.set_defaults(fn=_cmd_add)

    p = sub.add_parser("mul", parents=[common], help="product of two matrices")
    p.add_argument("matrix_a")
    p.add_argument("matrix_b")
    p.set_defaults(fn=_cmd_mul)

    p = sub.add_parser("det-phase", parents=[common], help="phase of the determinant")
    p.add_argument("matrix")
    p.set_defaults(fn=_cmd_det_phase)

    p = sub.add_parser("inverse", parents=[common], help="matrix inverse (up to scale)")
    p.add_argument("matrix")
    p.set_defaults(fn=_cmd_inverse)

    p = sub.add_parser("solve", parents=[common], help="matrix-vector contraction stage")
    p.add_argument("matrix")
    p.add_argument("vector")
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("inner", parents=[common], help="phase of a bilinear inner product")
    p.add_argument("psi1")
    p.add_argument("psi2")
    p.set_defaults(fn=_cmd_inner)

    p = sub.add_parser("bench-measure", parents=[common],
                       help="naive sampling vs deterministic extraction")
    p.add_argument("matrix")
    p.add_argument("--trials", type=int, default=10000)
    p.set_defaults(fn=_cmd_bench_measure)

    p = sub.add_parser("depth", parents=[common],
                       help="decomposition cost of the zero-controlled flip")
    p.add_argument("--max-controls", type=int, default=10)
    p.set_defaults(fn=_cmd_depth)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CliInputError as exc:
        print(f"input error: {exc}")
        return EXIT_INPUT
    except (ValueError, KeyError) as exc:
        if isinstance(exc, (SingularMatrixError, NonProductSectorError, PreparationError)):
            print(f"numerical failure: {exc}")
            return EXIT_NUMERICAL
        if isinstance(exc, EmptyBranchError):
            print(NOT_MEASURED_MESSAGE)
            return EXIT_NOT_MEASURED
        print(f"input error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
