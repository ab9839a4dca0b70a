"""JSON command-line front end.

Subcommands: basis, verify, forward, inverse, decompose, check-cp, solve,
evolve, rarity, roundtrip. Machine-readable JSON goes to --out (or stdout);
human diagnostics go to stderr. Exit codes: 0 success, 3 Markovian-but-not-CP
(check-cp only), 1 any error.

Complex-typed fields (H, a, rho, basis elements) are encoded entrywise as
[re, im]; real fields (G, c, Q, R, v) as plain numbers.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .basis import coherence_vector, generate_gell_mann, structure_constants, verify_nice_basis
from .cp import DEFAULT_CP_TOL, check_lindblad
from .forward import MasterEqParams, OdePair, forward_map
from .inverse import decompose_g, h_from_g, inverse_map, r_image_check
from .odesolve import evolve_density, solve, solve_general
from .rarity import estimate_p_gue, estimate_p_lindblad_ginoe


class CliError(Exception):
    pass


def _complex_out(m: np.ndarray):
    m = np.asarray(m, dtype=complex)
    if m.ndim == 0:
        return [float(m.real), float(m.imag)]
    return [_complex_out(row) for row in m]


def _real_out(m: np.ndarray):
    m = np.asarray(m, dtype=float)
    if m.ndim == 0:
        return float(m)
    return [_real_out(row) for row in m]


def _parse_number(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, (int, float)) for x in v):
        return complex(v[0], v[1])
    raise CliError(f"expected a number or [re, im] pair, got {v!r}")


def _parse_matrix(rows, name: str) -> np.ndarray:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise CliError(f"{name} must be a non-empty nested array")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise CliError(f"{name} must be rectangular")
    return np.array([[_parse_number(v) for v in r] for r in rows])


def _parse_vector(vals, name: str) -> np.ndarray:
    if not isinstance(vals, list):
        raise CliError(f"{name} must be an array")
    return np.array([_parse_number(v).real for v in vals], dtype=float)


def _load_input(path: str) -> dict:
    if path is None:
        raise CliError("this subcommand requires --in FILE")
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read input {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise CliError("input JSON must be an object")
    return data


def _emit(payload: dict, out_path: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _require_dim(args) -> int:
    if args.dim is None:
        raise CliError("this subcommand requires --dim")
    if args.dim < 1:
        raise CliError("--dim must be a positive integer")
    return args.dim


def _pair_from_input(data: dict, basis) -> OdePair:
    if "G" not in data:
        raise CliError("input must contain G")
    g = _parse_matrix(data["G"], "G")
    if np.max(np.abs(g.imag), initial=0.0) > 0:
        raise CliError("G must be real")
    g = g.real
    if "c" in data and data["c"] is not None:
        c = _parse_vector(data["c"], "c")
    else:
        c = np.zeros(g.shape[0])
    if g.shape[0] != basis.J:
        raise CliError(f"G size {g.shape[0]} does not match --dim {basis.dim} (expected {basis.J})")
    if not (np.all(np.isfinite(g)) and np.all(np.isfinite(c))):
        raise CliError("G and c must be finite")
    return OdePair(G=g, c=c)


def _meq_from_input(data: dict, basis) -> MasterEqParams:
    for key in ("H", "a"):
        if key not in data:
            raise CliError(f"input must contain {key}")
    try:
        return MasterEqParams(
            hamiltonian=_parse_matrix(data["H"], "H"),
            rates=_parse_matrix(data["a"], "a"),
        )
    except ValueError as exc:
        raise CliError(str(exc)) from exc


# --- subcommands -----------------------------------------------------------


def cmd_basis(args) -> int:
    d = _require_dim(args)
    basis = generate_gell_mann(d)
    f = structure_constants(basis).f
    _emit(
        {
            "dim": d,
            "elements": _complex_out(basis.elements),
            "structure_constants": _real_out(f),
        },
        args.out,
    )
    return 0


def cmd_verify(args) -> int:
    d = _require_dim(args)
    if args.input:
        data = _load_input(args.input)
        elements = np.array([_parse_matrix(m, "element") for m in data["elements"]])
        from .basis import NiceBasis

        basis = NiceBasis(dim=d, elements=elements)
    else:
        basis = generate_gell_mann(d)
    report = verify_nice_basis(basis, tol=args.tol)
    _emit(
        {
            "dim": d,
            "passed": bool(report.passed),
            "identity_violation": report.identity_violation,
            "hermiticity_violation": report.hermiticity_violation,
            "trace_violation": report.trace_violation,
            "orthonormality_violation": report.orthonormality_violation,
            "tolerance": report.tolerance,
        },
        args.out,
    )
    return 0 if report.passed else 1


def cmd_forward(args) -> int:
    d = _require_dim(args)
    basis = generate_gell_mann(d)
    params = _meq_from_input(_load_input(args.input), basis)
    if params.dim != d:
        raise CliError(f"H size {params.dim} does not match --dim {d}")
    pair = forward_map(params, basis)
    _emit(
        {
            "G": _real_out(pair.G),
            "c": _real_out(pair.c),
            "Q": _real_out(pair.Q),
            "R": _real_out(pair.R),
        },
        args.out,
    )
    return 0


def cmd_inverse(args) -> int:
    d = _require_dim(args)
    basis = generate_gell_mann(d)
    pair = _pair_from_input(_load_input(args.input), basis)
    params = inverse_map(pair, basis)
    _emit({"H": _complex_out(params.hamiltonian), "a": _complex_out(params.rates)}, args.out)
    return 0


def cmd_decompose(args) -> int:
    d = _require_dim(args)
    basis = generate_gell_mann(d)
    data = _load_input(args.input)
    g = _parse_matrix(data["G"], "G")
    if np.max(np.abs(g.imag), initial=0.0) > 0:
        raise CliError("G must be real")
    q, r = decompose_g(g.real, basis)
    _emit(
        {
            "Q": _real_out(q),
            "R": _real_out(r),
            "H": _complex_out(h_from_g(g.real, basis)),
            "r_image_condition": bool(r_image_check(r, basis)),
        },
        args.out,
    )
    return 0


def cmd_check_cp(args) -> int:
    d = _require_dim(args)
    basis = generate_gell_mann(d)
    pair = _pair_from_input(_load_input(args.input), basis)
    report = check_lindblad(pair, basis, tol=args.tol if args.tol else DEFAULT_CP_TOL)
    payload = {
        "is_lindblad": bool(report.is_lindblad),
        "marginal": bool(report.marginal),
        "a": _complex_out(report.a),
        "eigenvalues": _real_out(report.eigenvalues),
        "min_eigenvalue": report.min_eigenvalue,
        "tolerance_used": report.tolerance_used,
    }
    if report.diagonal_form is not None:
        payload["gamma"] = _real_out(report.diagonal_form.gamma)
    _emit(payload, args.out)
    return 0 if report.is_lindblad else 3


def cmd_solve(args) -> int:
    d = _require_dim(args)
    basis = generate_gell_mann(d)
    data = _load_input(args.input)
    pair = _pair_from_input(data, basis)
    v0 = _parse_vector(data.get("v0", [0.0] * basis.J), "v0")
    times = _parse_vector(data.get("times", [0.0]), "times")
    sol = solve(pair, v0)
    payload = {
        "solver": sol.kind,
        "times": _real_out(times),
        "trajectory": _real_out(sol.trajectory(times)),
        "v_infinity": None if sol.v_infinity is None else _real_out(sol.v_infinity),
    }
    if sol.kind == "general":
        payload["frozen_consistent"] = sol.frozen_consistent
    _emit(payload, args.out)
    return 0


def cmd_evolve(args) -> int:
    d = _require_dim(args)
    basis = generate_gell_mann(d)
    data = _load_input(args.input)
    params = _meq_from_input(data, basis)
    if "rho0" not in data:
        raise CliError("input must contain rho0")
    rho0 = _parse_matrix(data["rho0"], "rho0")
    times = _parse_vector(data.get("times", [0.0]), "times")
    try:
        rhos = evolve_density(params, rho0, times, basis)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _emit(
        {"times": _real_out(times), "states": [_complex_out(r) for r in rhos]},
        args.out,
    )
    return 0


def cmd_rarity(args) -> int:
    if args.samples is None or args.samples < 1:
        raise CliError("--samples must be a positive integer")
    seed = args.seed if args.seed is not None else 0
    if args.ensemble == "gue":
        est = estimate_p_gue(_require_dim(args), args.samples, seed)
    else:
        est = estimate_p_lindblad_ginoe(_require_dim(args), args.samples, seed)
    payload = {
        "ensemble": est.ensemble,
        "dim": est.dim_d,
        "n_samples": est.n_samples,
        "n_positive": est.n_positive,
        "p_hat": est.p_hat,
        "ci_low": est.ci_low,
        "ci_high": est.ci_high,
        "seed": est.seed,
    }
    if est.n_spectrum_stable is not None:
        payload["n_spectrum_stable"] = est.n_spectrum_stable
    _emit(payload, args.out)
    return 0


def cmd_roundtrip(args) -> int:
    d = _require_dim(args)
    basis = generate_gell_mann(d)
    params = _meq_from_input(_load_input(args.input), basis)
    pair = forward_map(params, basis)
    back = inverse_map(pair, basis)
    _emit(
        {
            "G": _real_out(pair.G),
            "c": _real_out(pair.c),
            "H_recovered": _complex_out(back.hamiltonian),
            "a_recovered": _complex_out(back.rates),
            "max_error_H": float(np.max(np.abs(back.hamiltonian - params.hamiltonian), initial=0.0)),
            "max_error_a": float(np.max(np.abs(back.rates - params.rates), initial=0.0)),
        },
        args.out,
    )
    return 0


_COMMANDS = {
    "basis": cmd_basis,
    "verify": cmd_verify,
    "forward": cmd_forward,
    "inverse": cmd_inverse,
    "decompose": cmd_decompose,
    "check-cp": cmd_check_cp,
    "solve": cmd_solve,
    "evolve": cmd_evolve,
    "rarity": cmd_rarity,
    "roundtrip": cmd_roundtrip,
}

_CONFIG_KEYS = {"dim", "tol", "seed", "samples", "ensemble", "in", "out"}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lindblad-ode",
        description="Convert between Markovian master equations and coherence-vector ODEs.",
    )
    parser.add_argument("--config", help="optional JSON config file; explicit flags win")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--dim", type=int, default=None, help="Hilbert space dimension (matrix size for gue)")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--in", dest="input", default=None, help="input JSON file")
        p.add_argument("--out", default=None, help="output JSON file (default: stdout)")
        if name == "rarity":
            p.add_argument("--ensemble", choices=("ginoe", "gue"), default="ginoe")
    return parser


def _apply_config(args, argv) -> None:
    if not args.config:
        return
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read config: {exc}") from exc
    if not isinstance(cfg, dict):
        raise CliError("config must be a JSON object")
    unknown = set(cfg) - _CONFIG_KEYS
    if unknown:
        raise CliError(f"unknown config keys: {sorted(unknown)}")
    explicit = {a.split("=")[0] for a in argv if a.startswith("--")}
    mapping = {"in": "input"}
    for key, value in cfg.items():
        if f"--{key}" in explicit:
            continue
        attr = mapping.get(key, key)
        if getattr(args, attr, None) is None:
            setattr(args, attr, value)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config(args, argv)
        return _COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
