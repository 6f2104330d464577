"""Batch command-line front end.

Oracle specs (``--oracle`` / ``--gen``)::

    spec     := "constant" | "balanced" | "affine" | "bitdrop:" INT | "table:" PATH
    constant, balanced  seeded random promise instance of shape (n, m)
    affine              seeded random r0 xor R.x of shape (n, m)
    bitdrop:J           f: {0,1}^n -> {0,1}^(n-1) deleting input bit J
    table:PATH          truth-table file ("n m" header, then 2**n output lines)

Exit status: 0 success, 2 usage error, 3 oracle or promise error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

import numpy as np

from . import statevector_sim as sv
from .boolean_oracle import (
    BooleanFunction,
    classical_bv_solver,
    classical_dj_solver,
    load_truth_table,
    random_affine_instance,
    random_promise_instance,
)
from .errors import GpkError
from .f2_algebra import BitString
from .gpk_core import (
    Backend,
    detect_dropped_bit,
    gpk_run,
    solve_generalized_bv,
    solve_generalized_dj,
    solve_modified_bv,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ORACLE = 3

COMMANDS = ("dj", "bv", "gbv", "gpk", "dropbit", "demo")


class UsageError(Exception):
    pass


def build_oracle(spec: str, n: int | None, m: int | None, seed: int) -> BooleanFunction:
    kind, _, arg = spec.partition(":")
    if kind == "table":
        if not arg:
            raise UsageError("table: needs a path")
        f = load_truth_table(arg)
        if (n is not None and n != f.n) or (m is not None and m != f.m):
            raise UsageError(f"table is {f.n} -> {f.m}, flags say {n} -> {m}")
        return f
    if n is None:
        raise UsageError(f"oracle '{spec}' needs --n")
    if kind == "bitdrop":
        try:
            j = int(arg)
        except ValueError:
            raise UsageError(f"bad bit index in '{spec}'") from None
        if m is not None and m != n - 1:
            raise UsageError(f"bitdrop maps {n} bits to {n - 1}, got --m {m}")
        if not 0 <= j < n:
            raise UsageError(f"bit index {j} out of range for n={n}")
        return BooleanFunction.bit_drop(n, j)
    m = 1 if m is None else m
    if kind in ("constant", "balanced"):
        return random_promise_instance(n, m, kind, seed)
    if kind == "affine":
        return random_affine_instance(n, m, seed)
    raise UsageError(f"unknown oracle spec '{spec}'")


def _parse_bits(text: str, flag: str) -> BitString:
    try:
        return BitString.parse(text)
    except ValueError:
        raise UsageError(f"{flag}: '{text}' is not a bit string") from None


def _parse_basis(text: str | None) -> list[BitString] | None:
    if text is None:
        return None
    return [_parse_bits(t, "--basis") for t in text.split(",")]


def run_gpk(f: BooleanFunction, marker: BitString, backend: str, seed: int) -> dict:
    rec = gpk_run(f, marker, backend, seed)
    return {
        "problem": "gpk",
        "n": f.n,
        "m": f.m,
        "result": {"outcome": str(rec.outcome), "probability": rec.probability},
        "lambda": None,
        "values": None,
        "runs": [rec.to_json()],
        "quantum_calls": f.quantum_calls,
        "classical_calls": f.classical_calls,
    }


def run_dj(f: BooleanFunction, basis, backend: str, seed: int) -> dict:
    report = solve_generalized_dj(f, basis, backend, seed).to_json()
    f.reset_counters()
    baseline = classical_dj_solver(f)
    report["classical_baseline"] = {"verdict": baseline.kind, "calls": f.classical_calls}
    return report


def run_bv(f: BooleanFunction, backend: str, seed: int) -> dict:
    r, r0 = solve_modified_bv(f, seed, backend)
    report = {
        "problem": "bv",
        "n": f.n,
        "m": f.m,
        "result": {"r": str(r), "r0": str(r0)},
        "lambda": None,
        "values": None,
        "runs": [],
        "quantum_calls": f.quantum_calls,
        "classical_calls": f.classical_calls,
        "seed": seed,
    }
    f.reset_counters()
    classical_bv_solver(f)
    report["classical_baseline"] = {"calls": f.classical_calls}
    return report


def run_gbv(f: BooleanFunction, basis, backend: str, seed: int) -> dict:
    report = solve_generalized_bv(f, basis, backend, seed).to_json()
    f.reset_counters()
    R, r0 = classical_bv_solver(f)
    report["classical_baseline"] = {
        "R": R.row_strings(),
        "r0": str(r0),
        "calls": f.classical_calls,
    }
    return report


def run_dropbit(f: BooleanFunction, backend: str, seed: int) -> dict:
    j = detect_dropped_bit(f, seed, backend)
    return {
        "problem": "dropbit",
        "n": f.n,
        "m": f.m,
        "result": {"dropped_bit": j},
        "lambda": None,
        "values": None,
        "runs": [],
        "quantum_calls": f.quantum_calls,
        "classical_calls": f.classical_calls,
        "seed": seed,
    }


def _summary(label: str, amps: np.ndarray) -> dict:
    nz = np.flatnonzero(np.abs(amps) > sv.PIPELINE_TOL)
    mags = np.abs(amps[nz])
    return {
        "state": label,
        "nonzero": int(len(nz)),
        "magnitude_min": float(mags.min()),
        "magnitude_max": float(mags.max()),
        "support": [int(k) for k in nz[:8]],
    }


def demo() -> dict:
    """The three-bit example f(xyz) = xy with marker 01, on both backends."""
    f = BooleanFunction.bit_drop(3, 0)
    y = BitString.parse("01")
    phi0 = sv.basis_state(3, 2, BitString.zero(3), BitString.zero(2))
    phi1 = sv.apply_x(phi0, 0)
    phi2 = sv.apply_h_all(phi1, range(5))
    phi3 = sv.apply_oracle(phi2, f)
    phi4 = sv.project_second(phi3, 3, sv.gamma_state(y))
    phi5 = sv.apply_h_all(sv.StateVector(3, phi4), range(3))
    outcome = sv.measure_first_register(phi5, 3, deterministic=True)
    full = gpk_run(f, y, Backend.FULL, seed=0)
    compact = gpk_run(f, y, Backend.COMPACT, seed=0)
    return {
        "problem": "demo",
        "n": 3,
        "m": 2,
        "function": "f(xyz) = xy (BitDrop j=0)",
        "marker": str(y),
        "states": [
            _summary("phi0 = |000>|00>", phi0.amps),
            _summary("phi1 = |000>|01>", phi1.amps),
            _summary("phi2 = H5 phi1", phi2.amps),
            _summary("phi3 = U_f phi2", phi3.amps),
            _summary("phi4 = first register of phi3", phi4),
            _summary("phi5 = H3 phi4", phi5.amps),
        ],
        "result": {"outcome": str(outcome.value), "probability": outcome.probability},
        "runs": [full.to_json(), compact.to_json()],
        "backends_agree": full.outcome == compact.outcome == outcome.value,
    }


def format_text(report: dict) -> str:
    lines = [f"problem: {report['problem']}  n={report['n']} m={report['m']}"]
    if report["problem"] == "demo":
        lines.append(f"function: {report['function']}, marker {report['marker']}")
        for s in report["states"]:
            lines.append(
                f"  {s['state']}: {s['nonzero']} nonzero amplitudes, "
                f"|amp| in [{s['magnitude_min']:.6f}, {s['magnitude_max']:.6f}]"
            )
        for r in report["runs"]:
            lines.append(f"  backend {r['backend']}: outcome {r['outcome']}")
        lines.append(f"outcome: {report['result']['outcome']} (probability {report['result']['probability']:.12f})")
        return "\n".join(lines)
    if "verdict" in report:
        lines.append(f"verdict: {report['verdict']}")
        lines.append(f"lambda: {report['lambda']}")
        lines.append(f"values: {', '.join(report['values'])}")
    else:
        for key, value in report["result"].items():
            if isinstance(value, list):
                value = " ".join(value)
            lines.append(f"{key}: {value}")
    for r in report["runs"]:
        lines.append(
            f"  GPK({r['marker']}) -> {r['outcome']}"
            f"{'' if r['deterministic'] else ' (sampled)'} [{r['backend']}, seed {r['seed']}]"
        )
    lines.append(f"quantum U_f calls: {report['quantum_calls']}, classical calls: {report['classical_calls']}")
    if "classical_baseline" in report:
        lines.append(f"classical deterministic baseline calls: {report['classical_baseline']['calls']}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gpk",
        description="Generalised phase kick-back algorithms on an ideal simulator.",
        epilog=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--n", type=int)
    parser.add_argument("--m", type=int)
    parser.add_argument("--oracle", "--gen", dest="oracle", help="oracle spec, see grammar below")
    parser.add_argument("--marker", help="marker bit string for gpk, e.g. 01")
    parser.add_argument("--basis", help="comma-separated marker basis, e.g. 11,01")
    parser.add_argument("--backend", choices=[b.value for b in Backend], default="auto")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--output", choices=("json", "text"), default="text")
    parser.add_argument("--timestamp", action="store_true", help="add a timestamp field to the report")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = _dispatch(args)
    except UsageError as exc:
        print(f"gpk: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GpkError as exc:
        print(f"gpk: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    if args.timestamp:
        report["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    if args.output == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(format_text(report))
    return EXIT_OK


def _dispatch(args: argparse.Namespace) -> dict:
    if args.command == "demo":
        return demo()
    if args.oracle is None:
        raise UsageError(f"{args.command} needs --oracle/--gen")
    m = args.m
    if args.command == "bv" and m is None:
        m = 1
    f = build_oracle(args.oracle, args.n, m, args.seed)
    basis = _parse_basis(args.basis)
    if args.command == "gpk":
        if args.marker is None:
            raise UsageError("gpk needs --marker")
        return run_gpk(f, _parse_bits(args.marker, "--marker"), args.backend, args.seed)
    if args.command == "dj":
        return run_dj(f, basis, args.backend, args.seed)
    if args.command == "bv":
        return run_bv(f, args.backend, args.seed)
    if args.command == "gbv":
        return run_gbv(f, basis, args.backend, args.seed)
    return run_dropbit(f, args.backend, args.seed)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
