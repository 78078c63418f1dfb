"""Command-line front end.

Each subcommand reads a JSON scenario (validated against ``SCHEMAS``), runs
it and writes JSON or CSV. Exit codes: 0 success, 2 configuration error,
3 a numerical check failed (the report is still written).

    stairway synth --config synth.json --out synth.csv --format csv
    stairway universality --config univ.json
    stairway rabi --config rabi.json --out trace.csv
    stairway chain --config chain.json --seed 7
    stairway schema chain
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import math
import os
import sys
import tempfile

import jsonschema
import numpy as np

from . import __version__
from .chain import (
    GatePulse,
    bitstring,
    dephase,
    histogram,
    initialize_minus,
    initialize_zero,
    probabilities,
    run_schedule,
    separate,
)
from .closure import is_universal, lie_closure, predicted_dimension, su_dimension
from .errors import StairwayError
from .pauli import FAMILIES, PauliString, anticommutes, make_generators, to_matrix
from .synth import (
    DEFAULT_DELTAS,
    fit_error_order,
    scan_clifford,
    scan_composite,
    scan_trotter_commutator,
    scan_trotter_sum,
)
from .well import TwoLevelHamiltonian, rabi_trace

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

U64_MAX = 2**64 - 1
SLOPE_FLOOR = 1e-12
# amplitude 1e-14, the same cut as chain.separate
PROB_FLOOR = 1e-28

_number = {"type": "number"}
_positive = {"type": "number", "exclusiveMinimum": 0}
_pauli_label = {"type": "string", "pattern": "^[IXYZ]+$"}

SCHEMAS = {
    "synth": {
        "type": "object",
        "additionalProperties": False,
        "properties": {
            "pair": {"type": "array", "items": _pauli_label, "minItems": 2, "maxItems": 2},
            "deltas": {"type": "array", "items": _positive, "minItems": 4},
            "clifford_tolerance": _positive,
        },
    },
    "universality": {
        "type": "object",
        "additionalProperties": False,
        "properties": {
            "n": {"type": "integer", "minimum": 2, "maximum": 4},
            "families": {"type": "array", "items": {"enum": list(FAMILIES)}, "minItems": 1},
            "generators": {"type": "array", "items": _pauli_label, "minItems": 1},
            "rank_tol": _positive,
        },
    },
    "rabi": {
        "type": "object",
        "additionalProperties": False,
        "required": ["hamiltonian", "times"],
        "properties": {
            "hamiltonian": {
                "oneOf": [
                    {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["H00", "H11", "H01"],
                        "properties": {
                            "H00": _number,
                            "H11": _number,
                            "H01": {
                                "oneOf": [
                                    _number,
                                    {"type": "array", "items": _number, "minItems": 2, "maxItems": 2},
                                ]
                            },
                        },
                    },
                    {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["h1", "h2", "h3"],
                        "properties": {"h0": _number, "h1": _number, "h2": _number, "h3": _number},
                    },
                ]
            },
            "psi0": {"enum": ["0", "1", "+", "-"]},
            "times": {
                "oneOf": [
                    {"type": "array", "items": _number, "minItems": 1},
                    {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["stop", "num"],
                        "properties": {
                            "start": _number,
                            "stop": _number,
                            "num": {"type": "integer", "minimum": 1},
                        },
                    },
                ]
            },
        },
    },
    "chain": {
        "type": "object",
        "additionalProperties": False,
        "required": ["n"],
        "properties": {
            "n": {"type": "integer", "minimum": 1, "maximum": 20},
            "init": {"enum": ["zero", "minus"]},
            "representation": {"enum": ["vector", "density"]},
            "pulses": {
                "type": "array",
                "items": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["kind", "qubit", "tau"],
                    "properties": {
                        "kind": {"type": "string"},
                        "qubit": {"type": "integer"},
                        "tau": _number,
                        "strength": _number,
                        "E1": _number,
                        "E2": _number,
                        "c_e": _number,
                    },
                },
            },
            "dephase": {
                "type": "array",
                "items": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["qubit", "gamma"],
                    "properties": {
                        "qubit": {"type": "integer", "minimum": 1},
                        "gamma": {"type": "number", "minimum": 0, "maximum": 1},
                    },
                },
            },
            "shots": {"type": "integer", "minimum": 0},
            "seed": {"type": "integer", "minimum": 0, "maximum": U64_MAX},
            "separate": {"type": "boolean"},
        },
    },
}


class ConfigError(Exception):
    pass


class Report:
    """Output table plus metadata; rendered as JSON or CSV."""

    def __init__(self, command, columns, rows, summary=None, ok=True):
        self.command = command
        self.columns = columns
        self.rows = rows
        self.summary = summary or {}
        self.ok = ok


def config_hash(config) -> str:
    canon = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def _meta(config):
    return {"tool": "stairway", "version": __version__, "config_sha256": config_hash(config)}


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(report: Report, config, fmt: str) -> str:
    meta = _meta(config)
    if fmt == "json":
        doc = {
            "meta": meta,
            "command": report.command,
            "ok": report.ok,
            "rows": [dict(zip(report.columns, r)) for r in report.rows],
        }
        doc.update(report.summary)
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(f"# tool=stairway version={meta['version']} config_sha256={meta['config_sha256']}\n")
    buf.write(f"# command={report.command} ok={str(report.ok).lower()}\n")
    for key in sorted(report.summary):
        buf.write(f"# {key}={json.dumps(report.summary[key], sort_keys=True)}\n")
    buf.write(",".join(report.columns) + "\n")
    for r in report.rows:
        buf.write(",".join(_csv_cell(v) for v in r) + "\n")
    return buf.getvalue()


def _slope(points):
    if any(e <= SLOPE_FLOOR for _, e in points):
        return None
    return fit_error_order(points).fitted_slope


def cmd_synth(config) -> Report:
    labels = config.get("pair", ["X", "Z"])
    deltas = config.get("deltas", list(DEFAULT_DELTAS))
    tol = config.get("clifford_tolerance", 1e-10)
    p1, p2 = (PauliString.from_label(s) for s in labels)
    if p1.n_qubits != p2.n_qubits:
        raise ConfigError(f"pair labels {labels} have different lengths")
    if sorted(deltas, reverse=True) != deltas and sorted(deltas) != deltas:
        raise ConfigError("deltas must be monotone")
    if len(set(deltas)) != len(deltas):
        raise ConfigError("deltas must be distinct")
    h1, h2 = to_matrix(p1), to_matrix(p2)
    tsum = scan_trotter_sum(h1, h2, deltas)
    tcom = scan_trotter_commutator(h1, h2, deltas)
    comp = scan_composite(h1, h2, deltas)
    cliff = scan_clifford(p1, p2, deltas) if anticommutes(p1, p2) else None
    rows = []
    for i, d in enumerate(deltas):
        rows.append([d, tsum[i][1], tcom[i][1], comp[i][1], cliff[i][1] if cliff else None])
    ok = cliff is None or all(e < tol for _, e in cliff)
    summary = {
        "pair": labels,
        "slopes": {
            "trotter_sum": _slope(tsum),
            "trotter_commutator": _slope(tcom),
            "composite_sqrt": _slope(comp),
        },
        "clifford_max_error": max(e for _, e in cliff) if cliff else None,
    }
    columns = ["delta", "trotter_sum_error", "trotter_commutator_error", "composite_sqrt_error", "clifford_error"]
    return Report("synth", columns, rows, summary, ok)


def cmd_universality(config) -> Report:
    n = config.get("n", 2)
    rank_tol = config.get("rank_tol", 1e-9)
    rows = []
    ok = True
    families = config.get("families", list(FAMILIES) if "generators" not in config else [])
    for label in families:
        computed = lie_closure(make_generators(n, label).matrices(), rank_tol).dimension
        predicted = predicted_dimension(label, n)
        ok &= computed == predicted
        rows.append([label, computed, predicted, computed >= su_dimension(n)])
    if "generators" in config:
        paulis = [PauliString.from_label(s) for s in config["generators"]]
        if any(p.n_qubits != n for p in paulis):
            raise ConfigError(f"every generator label must have {n} characters")
        mats = [to_matrix(p) for p in paulis]
        computed = lie_closure(mats, rank_tol).dimension
        rows.append(["custom", computed, None, is_universal(mats, n, rank_tol)])
    summary = {"n": n, "su_dimension": su_dimension(n)}
    return Report("universality", ["family", "computed", "predicted", "universal"], rows, summary, ok)


_KETS = {
    "0": np.array([1, 0], dtype=complex),
    "1": np.array([0, 1], dtype=complex),
    "+": np.array([1, 1], dtype=complex) / math.sqrt(2),
    "-": np.array([-1, 1], dtype=complex) / math.sqrt(2),
}


def _hamiltonian(params) -> TwoLevelHamiltonian:
    if "H00" in params:
        h01 = params["H01"]
        h01 = complex(*h01) if isinstance(h01, list) else complex(h01)
        return TwoLevelHamiltonian(params["H00"], params["H11"], h01)
    return TwoLevelHamiltonian.from_pauli(params.get("h0", 0.0), params["h1"], params["h2"], params["h3"])


def cmd_rabi(config) -> Report:
    h = _hamiltonian(config["hamiltonian"])
    times = config["times"]
    if isinstance(times, dict):
        grid = np.linspace(times.get("start", 0.0), times["stop"], times["num"])
    else:
        grid = np.asarray(times, dtype=float)
    if grid.size > 1 and np.any(np.diff(grid) <= 0):
        raise ConfigError("times must be strictly increasing")
    trace = rabi_trace(h, _KETS[config.get("psi0", "0")], grid)
    rows = [[float(t), float(p)] for t, p in zip(trace.times, trace.p0_values)]
    summary = {"p0_min": float(trace.p0_values.min()), "p0_max": float(trace.p0_values.max())}
    return Report("rabi", ["t", "p0"], rows, summary)


def cmd_chain(config) -> Report:
    n = config["n"]
    rep = config.get("representation", "vector")
    init = initialize_minus if config.get("init", "zero") == "minus" else initialize_zero
    pulses = [GatePulse(**p) for p in config.get("pulses", [])]
    for i, p in enumerate(pulses):
        try:
            p.validate(n)
        except StairwayError as exc:
            raise ConfigError(f"pulse {i}: {exc}") from exc
    if config.get("dephase") and rep != "density":
        raise ConfigError("dephase requires representation 'density'")
    state = run_schedule(init(n, rep), pulses)
    for d in config.get("dephase", []):
        if d["qubit"] > n:
            raise ConfigError(f"dephase qubit {d['qubit']} out of range 1..{n}")
        state = dephase(state, d["qubit"], d["gamma"])

    probs = probabilities(state)
    norm_drift = abs(float(np.sum(np.abs(state.data) ** 2)) - 1.0) if state.is_vector else abs(
        float(np.trace(state.data).real) - 1.0
    )
    ok = norm_drift <= 1e-10 * max(1, len(pulses))

    shots = config.get("shots", 0)
    counts = histogram(state, shots, config.get("seed", 0)) if shots > 0 else None
    nonzero = np.flatnonzero(probs > PROB_FLOOR)
    rows = []
    for i in nonzero:
        key = bitstring(int(i), n)
        row = [key, float(probs[i])]
        if counts is not None:
            row.append(counts.get(key, 0))
        rows.append(row)
    columns = ["bitstring", "probability"] + (["count"] if counts is not None else [])
    summary = {"n_qubits": n, "norm_drift": norm_drift}
    if counts is not None:
        summary["histogram"] = counts
        summary["shots"] = shots
    if config.get("separate"):
        outcome = separate(state)
        summary["separation"] = [
            {"label_A": a, "label_B": b, "amplitude": [amp.real, amp.imag]} for a, b, amp in outcome.entries
        ]
    return Report("chain", columns, rows, summary, ok)


COMMANDS = {
    "synth": cmd_synth,
    "universality": cmd_universality,
    "rabi": cmd_rabi,
    "chain": cmd_chain,
}


def load_config(path):
    if path is None:
        return {}
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from exc


def validate_config(command, config, source="config"):
    validator = jsonschema.Draft202012Validator(SCHEMAS[command])
    errors = sorted(validator.iter_errors(config), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        where = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise ConfigError(f"{source}: at {where}: {err.message}")
    bad = _non_finite(config)
    if bad:
        raise ConfigError(f"{source}: at {bad}: numbers must be finite")


def _non_finite(obj, path=""):
    if isinstance(obj, float) and not math.isfinite(obj):
        return path or "<root>"
    items = obj.items() if isinstance(obj, dict) else enumerate(obj) if isinstance(obj, list) else ()
    for k, v in items:
        found = _non_finite(v, f"{path}/{k}" if path else str(k))
        if found:
            return found
    return None


def _write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".stairway-")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= value <= U64_MAX:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON scenario file (defaults apply when omitted)")
    common.add_argument("--out", metavar="PATH", help="output file (stdout when omitted)")
    common.add_argument("--format", choices=["json", "csv"], default=None)
    common.add_argument("--seed", type=_seed, default=None, help="RNG seed for chain sampling, overrides the config")

    parser = argparse.ArgumentParser(prog="stairway", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"stairway {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("synth", parents=[common], help="Trotter / Clifford commutator error scan")
    sub.add_parser("universality", parents=[common], help="Lie-closure dimensions of the gate families")
    sub.add_parser("rabi", parents=[common], help="p0(t) trace of a double well")
    sub.add_parser("chain", parents=[common], help="run a pulse schedule on a chain")
    schema = sub.add_parser("schema", help="print the JSON schema of a subcommand's config")
    schema.add_argument("name", choices=sorted(SCHEMAS))
    return parser


DEFAULT_FORMAT = {"synth": "json", "universality": "json", "rabi": "csv", "chain": "json"}


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "schema":
        sys.stdout.write(json.dumps(SCHEMAS[args.name], indent=2, sort_keys=True) + "\n")
        return EXIT_OK

    try:
        config = load_config(args.config)
        if not isinstance(config, dict):
            raise ConfigError(f"{args.config}: top level must be a JSON object")
        if args.seed is not None and args.command == "chain":
            config = dict(config, seed=args.seed)
        validate_config(args.command, config, args.config or "config")
        report = COMMANDS[args.command](config)
    except (ConfigError, StairwayError, ValueError) as exc:
        print(f"stairway {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    text = render(report, config, args.format or DEFAULT_FORMAT[args.command])
    if args.out:
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    if not report.ok:
        print(f"stairway {args.command}: numerical check failed", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
