"""Report serialization: JSON with 17 significant digits, aligned text tables
with 6, and the JSON schema reports conform to."""
from __future__ import annotations

import json
import math

import numpy as np

SCHEMA_VERSION = 1

_NUM_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "number"}}}
_AXES = {"type": "array", "items": {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3}}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "entanglyze report",
    "type": "object",
    "required": ["schema_version"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "state": {"type": "string"},
        "n_qubits": {"type": "integer", "minimum": 1},
        "ed": {"type": "array", "items": {"type": "number", "minimum": 0, "maximum": 1}},
        "total_entanglement": {"type": "number", "minimum": 0},
        "bloch": _AXES,
        "maximally_entangled": {"type": "array", "items": {"type": "boolean"}},
        "flags": {"type": "array", "items": {"type": "string"}},
        "axes": _AXES,
        "em": _NUM_MATRIX,
        "quantized": {"type": "array", "items": {"type": "array", "items": {"enum": [-1, 0, 1]}}},
        "blocks": {"type": "array", "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
        "n_blocks": {"type": "integer", "minimum": 0},
        "exact": {"type": "boolean"},
        "transitive": {"type": "boolean"},
        "sign_consistent": {"type": "boolean"},
        "persistency_bound": {"type": ["integer", "null"]},
        "persistency_note": {"type": "string"},
        "violations": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["mu", "nu", "value", "rounded"],
                "properties": {
                    "mu": {"type": "integer"},
                    "nu": {"type": "integer"},
                    "value": {"type": "number"},
                    "rounded": {"enum": [-1, 0, 1]},
                },
            },
        },
        "mieb": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["nu", "matrix", "eigenvalues", "top_axis", "degeneracy"],
                "properties": {
                    "nu": {"type": "integer"},
                    "targets": {"type": "array", "items": {"type": "integer"}},
                    "matrix": _NUM_MATRIX,
                    "eigenvalues": {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3},
                    "top_axis": {"type": "array", "items": {"type": "number"}, "minItems": 3, "maxItems": 3},
                    "degeneracy": {"type": "integer", "minimum": 1, "maximum": 3},
                    "flags": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
        "records": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["qubit", "axis", "outcome", "probability"],
                "properties": {
                    "qubit": {"type": "integer"},
                    "axis": {"type": "array", "items": {"type": "number"}},
                    "outcome": {"enum": [-1, 1]},
                    "probability": {"type": "number", "minimum": 0, "maximum": 1},
                },
            },
        },
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "deviation", "ok"],
                "properties": {"name": {"type": "string"}, "deviation": {"type": "number"}, "ok": {"type": "boolean"}},
            },
        },
    },
}


def _encode(obj) -> str:
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return "null"
        text = f"{x:.17g}"
        return text
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist())
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps17(obj) -> str:
    """JSON text with every float written at 17 significant digits."""
    return _encode(obj)


def _f6(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    return "0" if abs(x) < 1e-12 else f"{x:.6g}"


def _matrix_lines(m) -> list[str]:
    cells = [[_f6(v) for v in row] for row in m]
    width = max((len(c) for row in cells for c in row), default=1)
    return ["  " + " ".join(c.rjust(width) for c in row) for row in cells]


def render_table(report: dict) -> str:
    """Human-readable rendering of a report (6 significant digits)."""
    lines = []
    if "checks" in report:
        for c in report["checks"]:
            mark = "ok  " if c["ok"] else "FAIL"
            lines.append(f"{mark} {c['deviation']:.3e}  {c['name']}")
        lines.append(f"max deviation {report['max_deviation']:.3e}  ({report['elapsed_s']:.2f} s)")
        return "\n".join(lines) + "\n"

    lines.append(f"state {report.get('state')}  ({report.get('n_qubits')} qubits)")
    if "ed" in report:
        lines.append(f"{'qubit':>5} {'ED':>10} {'bloch_x':>10} {'bloch_y':>10} {'bloch_z':>10}  max-ent")
        for q, (e, b, m) in enumerate(zip(report["ed"], report["bloch"], report["maximally_entangled"])):
            lines.append(f"{q:>5} {_f6(e):>10} {_f6(b[0]):>10} {_f6(b[1]):>10} {_f6(b[2]):>10}  {m}")
        lines.append(f"total entanglement {_f6(report['total_entanglement'])}")
    for rec in report.get("records", []):
        ax = ",".join(_f6(v) for v in rec["axis"])
        lines.append(f"measured qubit {rec['qubit']} along ({ax}): outcome {rec['outcome']:+d}, p={_f6(rec['probability'])}")
    if "pair" in report:
        p = report["pair"]
        lines.append(f"pair ({p['mu']},{p['nu']}) correlation matrix:")
        lines.extend(_matrix_lines(p["correlation_matrix"]))
        lines.append(f"lambda {_f6(p['lambda'])}  v_mu ({','.join(_f6(v) for v in p['v_mu'])})"
                     f"  v_nu ({','.join(_f6(v) for v in p['v_nu'])})  degeneracy {p['degeneracy']}")
    for entry in report.get("mieb", []):
        lines.append(f"MIEB nu={entry['nu']} eigenvalues {' '.join(_f6(v) for v in entry['eigenvalues'])}"
                     f"  top axis ({','.join(_f6(v) for v in entry['top_axis'])}) degeneracy {entry['degeneracy']}")
        lines.extend(_matrix_lines(entry["matrix"]))
    if "axes" in report:
        lines.append("axes: " + "  ".join("(" + ",".join(_f6(v) for v in a) + ")" for a in report["axes"]))
    if "em" in report:
        lines.append("entanglement metric:")
        lines.extend(_matrix_lines(report["em"]))
    if "blocks" in report:
        lines.append(f"blocks {report['blocks']}  n_blocks {report['n_blocks']}  exact {report['exact']}")
        lines.append(f"persistency bound {_f6(report['persistency_bound'])}  ({report['persistency_note']})")
    if "pairwise_probe" in report:
        pp = report["pairwise_probe"]
        lines.append(f"pairwise optimum deficit {_f6(pp['max_deficit'])}  consistent {pp['consistent']}")
    if "verify" in report:
        lines.append("verify: " + ", ".join(f"{k}={_f6(v) if not isinstance(v, str) else v}" for k, v in report["verify"].items()))
    for flag in report.get("flags", []):
        lines.append(f"flag: {flag}")
    return "\n".join(lines) + "\n"
