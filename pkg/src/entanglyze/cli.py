"""entanglyze command line.

    entanglyze analyze   --state brs:4 --axis-set
    entanglyze measure   --state ghz:3 --seq "0:x"
    entanglyze optimize  --state brs:4 --mieb 0
    entanglyze blocks    --state s4:0,0,1,0
    entanglyze reproduce-paper
    entanglyze dump-state --state ghz:3 --out ghz3.json

Exit codes: 0 ok, 1 reference deviation too large, 2 bad input, 3 numerical
contract violation.
"""
from __future__ import annotations

import argparse
import math
import sys
import time

import numpy as np

from . import __version__
from .entanglement import MAX_ENT_TOL, ed_all, em_matrix, is_maximally_entangled
from .errors import (
    BadAxis,
    DuplicateQubit,
    EntanglyzeError,
    LengthMismatch,
    NuInTargets,
    QubitOutOfRange,
    QubitOverlap,
    SameQubit,
    StateSpecError,
)
from .measurement import measure_sequence
from .optimize import (
    mieb_matrix,
    optimal_axis_set,
    optimal_breaking_axis,
    optimal_pair_axes,
    pairwise_probe,
    spin_correlation_matrix,
)
from .linalg import sym3_eigen
from .report import SCHEMA_VERSION, dumps17, render_table
from .states import parse_state_spec
from .statevec import Axis, X, Y, Z, bloch_vector, state_to_json
from .structure import QUANT_TOL, persistency_upper_bound, quantize_em

EXIT_OK, EXIT_DEVIATION, EXIT_PARSE, EXIT_NUMERIC = 0, 1, 2, 3

_NAMED = {"x": X, "y": Y, "z": Z, "+x": X, "+y": Y, "+z": Z, "-x": -X, "-y": -Y, "-z": -Z}


class UsageError(Exception):
    pass


# bad user input rather than a numerical failure
INPUT_ERRORS = (StateSpecError, BadAxis, LengthMismatch, QubitOutOfRange, DuplicateQubit, SameQubit, NuInTargets, QubitOverlap)


def parse_axis(text: str) -> Axis:
    """``x|y|z`` (optionally signed) or an ``a,b,c`` triple, normalized."""
    key = text.strip().lower()
    if key in _NAMED:
        return _NAMED[key]
    parts = key.split(",")
    if len(parts) != 3:
        raise UsageError(f"bad axis {text!r}: use x, y, z or a,b,c")
    try:
        return Axis.normalized(float(p) for p in parts)
    except (ValueError, BadAxis) as exc:
        raise UsageError(f"bad axis {text!r}: {exc}") from exc


def parse_axes(items, n_qubits: int):
    tokens = [t for item in items for t in item.split()]
    if len(tokens) == 1 and n_qubits > 1:
        tokens = tokens * n_qubits
    if len(tokens) != n_qubits:
        raise UsageError(f"need {n_qubits} axes, got {len(tokens)}")
    return [parse_axis(t) for t in tokens]


def parse_seq(text: str):
    steps = []
    for tok in text.replace(";", " ").split():
        q, sep, ax = tok.partition(":")
        if not sep:
            raise UsageError(f"bad step {tok!r}: expected QUBIT:AXIS")
        q = q.lower().lstrip("q")
        try:
            steps.append((int(q), parse_axis(ax)))
        except ValueError as exc:
            raise UsageError(f"bad qubit in {tok!r}") from exc
    return steps


def parse_int_list(text: str):
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"bad integer list {text!r}") from exc


def _load_state(args):
    spec = args.state
    if spec.startswith("random:") and spec.count(":") == 1 and args.seed is not None:
        spec = f"{spec}:{args.seed}"
    return parse_state_spec(spec)


def _axes_list(axes):
    return [list(a) for a in axes]


def _base_report(args, s):
    eds = ed_all(s)
    rep = is_maximally_entangled(s, args.tol if args.tol else MAX_ENT_TOL)
    return {
        "schema_version": SCHEMA_VERSION,
        "state": args.state,
        "n_qubits": s.n_qubits,
        "ed": eds.tolist(),
        "total_entanglement": float(np.sum(eds)),
        "bloch": [bloch_vector(s, q).tolist() for q in range(s.n_qubits)],
        "maximally_entangled": list(rep.per_qubit),
        "flags": [],
    }


def _mieb_entry(s, nu, targets=None):
    m = mieb_matrix(s, nu, targets)
    eig = sym3_eigen(m.b)
    sol = optimal_breaking_axis(s, nu, targets, strict=False)
    return {
        "nu": nu,
        "targets": sorted(m.targets),
        "matrix": m.b.tolist(),
        "eigenvalues": eig.values.tolist(),
        "top_axis": list(sol.axis),
        "degeneracy": sol.degeneracy,
        "flags": list(sol.flags),
    }


def _structure_section(s, axes, tol):
    bound = persistency_upper_bound(s, axes, tol)
    part = bound.partition
    quant = quantize_em(bound.em, tol)
    return {
        "axes": _axes_list(bound.axes),
        "em": bound.em.g.tolist(),
        "quantized": part.quantized.tolist(),
        "blocks": [list(b) for b in part.blocks],
        "n_blocks": part.n_blocks,
        "exact": part.exact,
        "transitive": part.transitive,
        "sign_consistent": part.sign_consistent,
        "persistency_bound": bound.bound,
        "persistency_note": bound.note,
        "violations": [
            {"mu": v.mu, "nu": v.nu, "value": v.value, "rounded": v.rounded} for v in quant.violations
        ],
    }


def cmd_analyze(args):
    s = _load_state(args)
    report = _base_report(args, s)
    axes = None
    if args.axis_set:
        sol = optimal_axis_set(s)
        axes = sol.axes
        report["flags"].extend(sol.flags)
        report["mieb"] = [_mieb_entry(s, nu) for nu in range(s.n_qubits)]
    elif args.axes:
        axes = parse_axes(args.axes, s.n_qubits)
    if axes is not None:
        report.update(_structure_section(s, axes, args.tol or QUANT_TOL))
    return report


def cmd_measure(args):
    s = _load_state(args)
    steps = parse_seq(args.seq)
    outcomes = None
    if args.outcome is not None:
        outs = parse_int_list(args.outcome)
        outcomes = outs[0] if len(outs) == 1 else outs
        if len(outs) not in (1, len(steps)):
            raise UsageError("--outcome needs one value or one per step")
    post, records = measure_sequence(s, steps, outcomes)
    report = _base_report(args, post)
    report["records"] = [r.to_dict() for r in records]
    report["bloch_norms"] = [float(np.linalg.norm(b)) for b in report["bloch"]]
    return report


def cmd_optimize(args):
    s = _load_state(args)
    report = _base_report(args, s)
    res = args.res
    if args.pair is not None:
        mu, nu = args.pair
        sol = optimal_pair_axes(s, mu, nu)
        report["pair"] = {
            "mu": mu,
            "nu": nu,
            "correlation_matrix": spin_correlation_matrix(s, mu, nu).c.tolist(),
            "v_mu": list(sol.v_mu),
            "v_nu": list(sol.v_nu),
            "lambda": sol.value,
            "degeneracy": sol.degeneracy,
        }
        if args.verify:
            from .oracle import grid_search_pair

            g = grid_search_pair(s, mu, nu, res)
            report["verify"] = {"resolution_deg": res, "grid_best": g.value, "eigen": sol.value,
                                "ok": g.value <= sol.value + 1e-9}
    elif args.mieb is not None:
        targets = parse_int_list(args.targets) if args.targets else None
        entry = _mieb_entry(s, args.mieb, targets)
        report["mieb"] = [entry]
        if args.verify:
            from .oracle import grid_search_breaking

            g = grid_search_breaking(s, args.mieb, res, targets)
            top = entry["eigenvalues"][0]
            report["verify"] = {"resolution_deg": res, "grid_best": g.value, "eigen": top,
                                "ok": g.value <= top + 1e-9}
    else:
        sol = optimal_axis_set(s)
        report["flags"].extend(sol.flags)
        report["axes"] = _axes_list(sol.axes)
        report["objective"] = sol.objective
        report["mieb"] = [_mieb_entry(s, nu) for nu in range(s.n_qubits)]
        report["em"] = em_matrix(s, sol.axes).g.tolist()
        probe = pairwise_probe(s, sol.axes)
        report["pairwise_probe"] = {
            "max_deficit": probe.max_deficit,
            "consistent": probe.consistent,
            "pairs": [{"mu": a, "nu": b, "optimum": o, "achieved": g} for a, b, o, g in probe.pairs],
        }
        if args.verify:
            from .oracle import grid_search_pair

            worst = max(
                (grid_search_pair(s, a, b, res).value - o for a, b, o, _ in probe.pairs),
                default=0.0,
            )
            report["verify"] = {"resolution_deg": res, "max_grid_excess": worst, "ok": worst <= 1e-9}
    return report


def cmd_blocks(args):
    s = _load_state(args)
    report = _base_report(args, s)
    if args.axes:
        axes = parse_axes(args.axes, s.n_qubits)
    else:
        sol = optimal_axis_set(s)
        axes = sol.axes
        report["flags"].extend(sol.flags)
    report.update(_structure_section(s, axes, args.tol or QUANT_TOL))
    if args.verify:
        from .oracle import dense_em_matrix, run_sequence

        dense_dev = float(np.max(np.abs(dense_em_matrix(s, axes) - np.array(report["em"])))) if s.n_qubits <= 10 else None
        seq = run_sequence(s, [(b[0], axes[b[0]]) for b in report["blocks"]])
        report["verify"] = {
            "dense_em_deviation": dense_dev,
            "one_per_block_residual": seq.residual,
            "ok": (dense_dev is None or dense_dev < 1e-10),
        }
    return report


def cmd_reproduce(args):
    from .reference_cases import all_checks

    t0 = time.perf_counter()
    checks = all_checks()
    elapsed = time.perf_counter() - t0
    return {
        "schema_version": SCHEMA_VERSION,
        "checks": [c.to_dict() for c in checks],
        "max_deviation": max(c.deviation for c in checks),
        "all_ok": all(c.ok for c in checks),
        "elapsed_s": elapsed,
    }


def cmd_dump_state(args):
    s = _load_state(args)
    text = state_to_json(s)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        return None
    sys.stdout.write(text)
    return None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of a text table")
    common.add_argument("--tol", type=float, default=None, help="quantization / max-entanglement tolerance")
    common.add_argument("--verify", action="store_true", help="cross-check with brute-force oracles")
    common.add_argument("--res", type=float, default=1.0, help="oracle grid resolution in degrees")
    common.add_argument("--seed", type=int, default=None, help="seed for random:N states")

    p = argparse.ArgumentParser(prog="entanglyze", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="ED, Bloch vectors, EM and blocks")
    a.add_argument("--state", required=True)
    a.add_argument("--axes", nargs="+")
    a.add_argument("--axis-set", action="store_true", help="use the optimized axis set")
    a.set_defaults(func=cmd_analyze)

    m = sub.add_parser("measure", parents=[common], help="projective measurement sequence")
    m.add_argument("--state", required=True)
    m.add_argument("--seq", required=True, help='steps like "0:x 3:0.5,0.5,0.707"')
    m.add_argument("--outcome", help="+1/-1 for every step, or a comma list per step")
    m.set_defaults(func=cmd_measure)

    o = sub.add_parser("optimize", parents=[common], help="optimal measurement axes")
    o.add_argument("--state", required=True)
    grp = o.add_mutually_exclusive_group()
    grp.add_argument("--pair", nargs=2, type=int, metavar=("MU", "NU"))
    grp.add_argument("--mieb", type=int, metavar="NU")
    grp.add_argument("--axis-set", action="store_true")
    o.add_argument("--targets", help="comma list of target qubits for --mieb")
    o.set_defaults(func=cmd_optimize)

    b = sub.add_parser("blocks", parents=[common], help="EM block structure and persistency bound")
    b.add_argument("--state", required=True)
    b.add_argument("--axes", nargs="+")
    b.set_defaults(func=cmd_blocks)

    r = sub.add_parser("reproduce-paper", parents=[common], help="recompute the reference BRS / supersinglet matrices")
    r.set_defaults(func=cmd_reproduce)

    d = sub.add_parser("dump-state", parents=[common], help="write a state as JSON")
    d.add_argument("--state", required=True)
    d.add_argument("--out")
    d.set_defaults(func=cmd_dump_state)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol is not None and not 0 < args.tol < 0.5:
        print("error: --tol must lie in (0, 0.5)", file=sys.stderr)
        return EXIT_PARSE
    if args.res <= 0 or args.res > 10 or math.isnan(args.res):
        print("error: --res must lie in (0, 10]", file=sys.stderr)
        return EXIT_PARSE
    try:
        report = args.func(args)
    except (UsageError, ValueError, IndexError) as exc:
        if isinstance(exc, EntanglyzeError) and not isinstance(exc, INPUT_ERRORS):
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (EntanglyzeError, ArithmeticError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if report is None:
        return EXIT_OK
    if args.json:
        sys.stdout.write(dumps17(report) + "\n")
    else:
        sys.stdout.write(render_table(report))
    if args.command == "reproduce-paper" and not report["all_ok"]:
        return EXIT_DEVIATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
