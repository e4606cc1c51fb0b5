"""Command-line front end.

Subcommands: build, check, apply, sample, bloch, dilate, jacobian.  Emitting
commands write their JSON document to stdout (or ``--out FILE``) and any
supplementary report lines to stderr; reporting commands print to stdout.

Exit codes: 0 all requested checks pass, 1 a property check failed,
2 usage or parse error.  The environment variable XCHAN_TOL (a decimal
string) overrides the tolerances used by the check/dilate reports.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from .channels import (
    apply,
    check_extremal,
    check_trace_orthogonal,
    check_trace_preserving,
    check_unital,
    choi,
    choi_min_eigenvalue,
)
from .dilation import evolve_via_dilation, stinespring
from .errors import SchemaError, ValidationError
from .extremal import (
    ExtremalParams,
    build_extremal,
    complete_last_diagonal,
    parameter_jacobian_rank,
    sample_extremal,
    sample_interior,
)
from .linalg import dagger
from .qubit import NuParams, bloch_affine, channel_from_nu, ellipsoid_samples, predicted_translation
from .serialize import (
    channel_from_doc,
    dump_channel,
    dump_state,
    matrix_to_doc,
    parse_state,
)
from .states import random_density
from .tolerances import TOL_ORTH, TOL_PSD, TOL_TP


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else 2
    try:
        return args.func(args)
    except (SchemaError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xchan",
        description="Construct, apply, and verify extremal quantum channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a channel from diagonal params or (nu1, nu2)")
    p.add_argument("--params", help="JSON file {'diagonals': [[...], ...]} with N or N-1 rows")
    p.add_argument("--nu1", type=float, help="x-axis multiplier in (0, 1]")
    p.add_argument("--nu2", type=float, help="y-axis multiplier in (0, 1]")
    p.add_argument("--out", help="write the channel document here instead of stdout")
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("check", help="report channel properties and residuals")
    p.add_argument("channel", help="channel document file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("apply", help="apply a channel to a state")
    p.add_argument("--channel", required=True, help="channel document file")
    p.add_argument("--state", required=True, help="state document file")
    p.add_argument("--out", help="write the output state here instead of stdout")
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("sample", help="draw a random extremal channel")
    p.add_argument("--n", type=int, required=True, help="system dimension, >= 2")
    p.add_argument("--seed", type=int, required=True, help="sampling seed")
    p.add_argument("--out", help="write the channel document here instead of stdout")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("bloch", help="report the Bloch-ellipsoid geometry of a qubit channel")
    p.add_argument("--nu1", type=float, required=True)
    p.add_argument("--nu2", type=float, required=True)
    p.add_argument("--ellipsoid", help="CSV file for sampled sphere/ellipsoid points")
    p.add_argument("--count", type=int, default=100, help="sample count for --ellipsoid")
    p.add_argument("--seed", type=int, default=0, help="sampling seed for --ellipsoid")
    p.set_defaults(func=_cmd_bloch)

    p = sub.add_parser("dilate", help="embed a channel in a system-environment unitary")
    p.add_argument("channel", help="channel document file")
    p.add_argument("--out", help="write the dilation document here instead of stdout")
    p.set_defaults(func=_cmd_dilate)

    p = sub.add_parser("jacobian", help="numerical parameter count at a random interior point")
    p.add_argument("--n", type=int, required=True, help="system dimension, >= 2")
    p.add_argument("--seed", type=int, required=True, help="interior-point seed")
    p.add_argument("--step", type=float, default=1e-5, help="finite-difference step")
    p.set_defaults(func=_cmd_jacobian)

    return parser


def _cmd_build(args) -> int:
    has_nu = args.nu1 is not None or args.nu2 is not None
    if has_nu and args.params is not None:
        raise ValueError("give either --params or --nu1/--nu2, not both")
    if has_nu:
        if args.nu1 is None or args.nu2 is None:
            raise ValueError("--nu1 and --nu2 must be given together")
        p = NuParams(args.nu1, args.nu2)
        ch = channel_from_nu(p)
        meta = {"nu1": p.nu1, "nu2": p.nu2}
    elif args.params is not None:
        params = _params_from_doc(json.loads(Path(args.params).read_text()))
        ch = build_extremal(params)
        meta = {"n": params.n}
    else:
        raise ValueError("give --params or --nu1/--nu2")
    _emit(dump_channel(ch, meta), args.out)
    return 0


def _cmd_check(args) -> int:
    ch = channel_from_doc(
        json.loads(Path(args.channel).read_text()), require_tp=False
    )
    override = _tol_override()
    tol_tp = override if override is not None else TOL_TP
    tol_orth = override if override is not None else TOL_ORTH
    tol_psd = override if override is not None else TOL_PSD

    tp = check_trace_preserving(ch, tol_tp)
    orth = check_trace_orthogonal(ch, tol_orth)
    unital = check_unital(ch, tol_tp)
    low = choi_min_eigenvalue(choi(ch))
    cp_ok = low >= -tol_psd

    print(f"dim={ch.dim} operators={len(ch)}")
    print(_line("trace_preserving", tp.ok, f"residual={tp.residual:.3e}", tol_tp))
    print(_line("completely_positive", cp_ok, f"min_choi_eigenvalue={low:.3e}", tol_psd))
    print(_line("trace_orthogonal", orth.ok, f"residual={orth.residual:.3e}", tol_orth))
    print(_line("unital", unital.ok, f"residual={unital.residual:.3e}", tol_tp))
    if tp.ok:
        ext = check_extremal(ch, tol_tp=tol_tp)
        ext_ok = ext.extremal
        print(
            f"extremal: {'yes' if ext_ok else 'no'} "
            f"gram_rank={ext.gram_rank} expected={ext.expected}"
        )
    else:
        ext_ok = False
        print("extremal: skipped (channel is not trace preserving)")
    ok = tp.ok and cp_ok and ext_ok
    print(f"verdict: {'pass' if ok else 'fail'}")
    return 0 if ok else 1


def _cmd_apply(args) -> int:
    ch = channel_from_doc(json.loads(Path(args.channel).read_text()))
    rho = parse_state(Path(args.state).read_text())
    out = apply(ch, rho)
    _emit(dump_state(out), args.out)
    return 0


def _cmd_sample(args) -> int:
    _, ch = sample_extremal(args.n, args.seed)
    _emit(dump_channel(ch, {"n": args.n, "seed": args.seed}), args.out)
    return 0


def _cmd_bloch(args) -> int:
    p = NuParams(args.nu1, args.nu2)
    affine = bloch_affine(channel_from_nu(p))
    diag = np.diag(affine.t_lin)
    off = affine.t_lin - np.diag(diag)
    print(f"nu1={p.nu1:.17g} nu2={p.nu2:.17g} nu3={p.nu3:.17g}")
    print(f"t_lin diagonal: {diag[0]:.17g} {diag[1]:.17g} {diag[2]:.17g}")
    print(f"t_lin max off-diagonal: {np.max(np.abs(off)):.3e}")
    print(f"t_vec: {affine.t_vec[0]:.17g} {affine.t_vec[1]:.17g} {affine.t_vec[2]:.17g}")
    print(f"t3 predicted: {predicted_translation(p):.17g}")
    if args.ellipsoid:
        w_in, w_out = ellipsoid_samples(p, args.count, args.seed)
        with open(args.ellipsoid, "w") as fh:
            fh.write("x_in,y_in,z_in,x_out,y_out,z_out\n")
            for wi, wo in zip(w_in, w_out):
                fh.write(",".join(f"{v:.17g}" for v in (*wi, *wo)) + "\n")
        print(f"wrote {args.count} samples to {args.ellipsoid}")
    return 0


def _cmd_dilate(args) -> int:
    ch = channel_from_doc(json.loads(Path(args.channel).read_text()))
    model = stinespring(ch)
    total = model.dim_sys * model.dim_env
    unitarity = float(
        np.max(np.abs(dagger(model.u) @ model.u - np.eye(total)))
    )
    roundtrip = 0.0
    for seed in range(5):
        rho = random_density(ch.dim, seed)
        via_u = evolve_via_dilation(model, rho)
        direct = apply(ch, rho)
        roundtrip = max(roundtrip, float(np.max(np.abs(via_u.mat - direct.mat))))
    doc = {
        "dim_sys": model.dim_sys,
        "dim_env": model.dim_env,
        "env_state": model.env_state,
        "unitary": matrix_to_doc(model.u),
    }
    _emit(json.dumps(doc, indent=1), args.out)
    report = sys.stdout if args.out else sys.stderr
    override = _tol_override()
    tol = override if override is not None else 1e-10
    print(f"unitarity residual: {unitarity:.3e}", file=report)
    print(f"roundtrip residual: {roundtrip:.3e}", file=report)
    ok = unitarity <= tol and roundtrip <= tol
    print(f"verdict: {'pass' if ok else 'fail'}", file=report)
    return 0 if ok else 1


def _cmd_jacobian(args) -> int:
    params = sample_interior(args.n, args.seed)
    rank = parameter_jacobian_rank(params, step=args.step)
    expected = args.n**2 - args.n
    print(f"jacobian_rank={rank} expected={expected}")
    return 0 if rank == expected else 1


def _params_from_doc(doc) -> ExtremalParams:
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected a JSON object")
    rows = doc.get("diagonals")
    if not isinstance(rows, list) or not rows:
        raise SchemaError("diagonals", "expected a non-empty list of rows")
    n = None
    for i, row in enumerate(rows):
        if not isinstance(row, list) or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in row
        ):
            raise SchemaError(f"diagonals[{i}]", "expected a list of numbers")
        if n is None:
            n = len(row)
        elif len(row) != n:
            raise SchemaError(f"diagonals[{i}]", f"row length {len(row)} != {n}")
    arr = np.array(rows, dtype=float)
    if len(rows) == n:
        return ExtremalParams(arr)
    if len(rows) == n - 1:
        return complete_last_diagonal(arr)
    raise SchemaError(
        "diagonals", f"expected {n} (full) or {n - 1} (completed) rows of length {n}"
    )


def _tol_override() -> float | None:
    raw = os.environ.get("XCHAN_TOL")
    if raw is None or raw == "":
        return None
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"XCHAN_TOL is not a decimal string: {raw!r}") from None
    if not np.isfinite(value) or value <= 0:
        raise ValueError(f"XCHAN_TOL must be a positive finite number, got {raw!r}")
    return value


def _line(name: str, ok: bool, detail: str, tol: float) -> str:
    return f"{name}: {'ok' if ok else 'FAIL'} {detail} tol={tol:g}"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


if __name__ == "__main__":
    sys.exit(main())
