"""Command-line surface: spectrum queries, sweeps, verification, ABC evaluation.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 numeric-domain error (a singularity at an explicitly requested point).
Outputs are deterministic: identical config and seed give byte-identical
files.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import __version__
from .abc_flow import (
    ABCParams,
    TubeField,
    TubePoint,
    abc_velocity_complex,
    abc_velocity_standard,
    stagnation_classify,
    toroidal_constraint,
    tube_growth_rate,
    tube_velocity,
)
from .config import GridAxis, RunConfig, parse_config
from .errors import ConfigError, DomainError, ValidationError
from .runs import (
    CSV_COLUMNS,
    build_sweep_plan,
    check_grid_cap,
    evaluate_point,
    grid_product,
    grid_values,
    point_from_config,
    row_dict,
    scheme_from_token,
    sweep_rows,
)
from .tabular import open_out, write_csv, write_json
from .verify import SUITE_NAMES, run_suites


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="path to a key = value config file")
    common.add_argument("--out", help="output path ('-' for stdout, the default)")
    common.add_argument("--format", choices=("csv", "json"), dest="out_format",
                        help="output format (default csv)")
    common.add_argument("--seed", type=int, help="seed for randomized suites")
    common.add_argument("--threads", type=int, help="worker pool size")
    common.add_argument("--scheme", choices=("eq13_14", "eq18", "eq24", "exact"),
                        help="coefficient scheme tag (default eq18)")

    parser = argparse.ArgumentParser(
        prog="fildyn",
        description="Growth-rate spectra of filamentary kinematic dynamos and "
                    "ABC flows in twisted flux-tube coordinates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common],
                   help="growth rates at a single parameter point")
    sub.add_parser("sweep", parents=[common],
                   help="tabulate spectra over parameter grids")
    sub.add_parser("verify", parents=[common],
                   help="run the oracle verification suites")
    abc = sub.add_parser("abc", parents=[common], help="ABC flow evaluations")
    abc.add_argument("mode", choices=("eval", "tube", "stagnation", "growth"))
    sub.add_parser("frenet-check", parents=[common],
                   help="finite-difference and Laplacian geometry self-checks")
    return parser


def _effective(cfg: RunConfig, args) -> dict:
    """Merge config values with command-line overrides."""
    return {
        "seed": args.seed if args.seed is not None else cfg.get_int("seed", 0),
        "threads": (
            args.threads
            if args.threads is not None
            else cfg.get_int("threads", os.cpu_count() or 1)
        ),
        "scheme": scheme_from_token(
            args.scheme if args.scheme else cfg.get_str("scheme", "eq18")
        ),
        "format": (
            args.out_format if args.out_format else cfg.get_str("output.format", "csv")
        ),
        "out": args.out if args.out is not None else cfg.get_str("output.path", "-"),
    }


def _meta(cfg: RunConfig, eff: dict) -> dict:
    return {"version": __version__, "seed": eff["seed"], "config": dict(sorted(cfg.raw.items()))}


def _require_config(args) -> RunConfig:
    if not args.config:
        raise ConfigError("this command requires --config <path>")
    return parse_config(args.config)


def _fmt_comment(value: float) -> str:
    return repr(float(value))


def cmd_spectrum(args) -> int:
    cfg = _require_config(args)
    eff = _effective(cfg, args)
    result = evaluate_point(point_from_config(cfg, eff["scheme"]), eff["scheme"])
    row = row_dict(result)

    footers: list[str] = []
    branch_meta: dict = {}
    if result.branch is not None:
        ms = result.matrix_spectrum
        offs = result.branch_offset
        branch_meta = {
            "name": result.branch,
            "matrix_re_gamma_plus": ms.gamma_plus.real,
            "matrix_im_gamma_plus": ms.gamma_plus.imag,
            "matrix_re_gamma_minus": ms.gamma_minus.real,
            "matrix_im_gamma_minus": ms.gamma_minus.imag,
            "branch_offset_plus": abs(offs[0]),
            "branch_offset_minus": abs(offs[1]),
        }
        footers = [f"branch={result.branch}"] + [
            f"{key}={_fmt_comment(val)}"
            for key, val in branch_meta.items()
            if key != "name"
        ]

    with open_out(eff["out"]) as stream:
        if eff["format"] == "json":
            meta = _meta(cfg, eff)
            if branch_meta:
                meta["branch"] = {
                    k: (v if isinstance(v, str) else float(v)) for k, v in branch_meta.items()
                }
            write_json(stream, meta, [row])
        else:
            write_csv(stream, CSV_COLUMNS, [row], footers)
    return 0


def cmd_sweep(args) -> int:
    cfg = _require_config(args)
    eff = _effective(cfg, args)
    plan = build_sweep_plan(cfg, eff["scheme"])
    rows = sweep_rows(plan, threads=eff["threads"])
    with open_out(eff["out"]) as stream:
        if eff["format"] == "json":
            write_json(stream, _meta(cfg, eff), list(rows))
        else:
            write_csv(stream, CSV_COLUMNS, rows)
    return 0


VERIFY_COLUMNS = ("suite", "passed", "max_residual", "threshold", "detail")


def cmd_verify(args) -> int:
    cfg = parse_config(args.config) if args.config else RunConfig.empty()
    eff = _effective(cfg, args)
    suites_text = cfg.get_str("verify.suites", "all")
    names = None if suites_text == "all" else [s.strip() for s in suites_text.split(",") if s.strip()]
    results = run_suites(
        names,
        seed=eff["seed"],
        draws=cfg.get_int("verify.draws", 100),
        dt=cfg.get_float("verify.dt", 1e-3),
        t_end=cfg.get_float("verify.t_end", 100.0),
        inject_fault=cfg.get_str("verify.inject_fault", "none"),
        threads=eff["threads"],
    )
    rows = [
        {
            "suite": r.suite,
            "passed": r.passed,
            "max_residual": r.max_residual,
            "threshold": r.threshold,
            "detail": r.detail,
        }
        for r in results
    ]
    with open_out(eff["out"]) as stream:
        if eff["format"] == "json":
            write_json(stream, _meta(cfg, eff), rows)
        else:
            write_csv(stream, VERIFY_COLUMNS, rows)
    return 0 if all(r.passed for r in results) else 1


ABC_EVAL_COLUMNS = (
    "x", "y", "z",
    "vx_complex", "vy_complex", "vz_complex",
    "vx_standard", "vy_standard", "vz_standard",
    "equivalence_residual",
)

ABC_TUBE_COLUMNS = ("r", "s", "theta0", "tau0", "theta", "v_s", "v_r", "v_r_imag")

ABC_GROWTH_COLUMNS = (
    "r", "tau0", "eta", "b_theta", "b_s",
    "gamma", "classification", "required_b_s", "constraint_residual",
)


def _abc_params(cfg: RunConfig) -> ABCParams:
    for key in ("abc.A", "abc.B", "abc.C"):
        if not cfg.has(key):
            raise ConfigError(f"abc commands require {key}")
    return ABCParams(
        A=cfg.require_float("abc.A"),
        B=cfg.require_float("abc.B"),
        C=cfg.require_float("abc.C"),
    )


def cmd_abc(args) -> int:
    cfg = _require_config(args)
    eff = _effective(cfg, args)
    params = _abc_params(cfg)
    mode = args.mode

    if mode == "eval":
        entries = (
            cfg.get_scalar_or_grid("abc.x", 0.0),
            cfg.get_scalar_or_grid("abc.y", 0.0),
            cfg.get_scalar_or_grid("abc.z", 0.0),
        )
        count = int(np.prod([len(grid_values(e)) for e in entries]))
        check_grid_cap(count, cfg)
        rows = []
        for x, y, z in grid_product(*entries):
            point = np.array([x, y, z])
            complex_form = abc_velocity_complex(params, point)
            standard = abc_velocity_standard(params, point)
            mirrored = 2.0 * abc_velocity_standard(params, -point)
            rows.append({
                "x": x, "y": y, "z": z,
                "vx_complex": complex_form[0], "vy_complex": complex_form[1],
                "vz_complex": complex_form[2],
                "vx_standard": standard[0], "vy_standard": standard[1],
                "vz_standard": standard[2],
                "equivalence_residual": float(np.max(np.abs(complex_form - mirrored))),
            })
        return _emit(eff, cfg, ABC_EVAL_COLUMNS, rows)

    if mode == "tube":
        tau0 = cfg.get_float("abc.tau0", 1.0)
        entries = (
            cfg.get_scalar_or_grid("abc.r", 1.0),
            cfg.get_scalar_or_grid("abc.s", 0.0),
            cfg.get_scalar_or_grid("abc.theta0", math.pi / 2.0),
        )
        count = int(np.prod([len(grid_values(e)) for e in entries]))
        check_grid_cap(count, cfg)
        rows = []
        masked = 0
        for r, s, theta0 in grid_product(*entries):
            tp = TubePoint(r=r, s=s, theta0=theta0, tau0=tau0)
            try:
                sample = tube_velocity(params, tp)
            except DomainError:
                if count == 1:
                    raise
                masked += 1
                continue
            rows.append({
                "r": r, "s": s, "theta0": theta0, "tau0": tau0,
                "theta": tp.twist_angle(),
                "v_s": sample.v_s, "v_r": sample.v_r, "v_r_imag": sample.v_r_imag,
            })
        return _emit(eff, cfg, ABC_TUBE_COLUMNS, rows,
                     footers=[f"masked_points={masked}"],
                     extra_meta={"masked_points": masked})

    if mode == "stagnation":
        classification = stagnation_classify(params)
        note = (
            "no dynamo action"
            if params.is_strong_stagnation
            else "stagnation constraint not met"
        )
        rows = [{
            "A": params.A, "B": params.B, "C": params.C,
            "classification": classification.value, "note": note,
        }]
        return _emit(eff, cfg, ("A", "B", "C", "classification", "note"), rows)

    # mode == "growth"
    tau0 = cfg.get_float("abc.tau0", 1.0)
    eta = cfg.get_float("abc.eta", 0.0)
    b_theta = cfg.get_float("abc.b_theta", 1.0)
    rows = []
    r_values = grid_values(cfg.get_scalar_or_grid("abc.r", 1.0))
    check_grid_cap(len(r_values), cfg)
    for r in r_values:
        r = float(r)
        tp = TubePoint(r=r, s=0.0, theta0=0.0, tau0=tau0)
        b_s = cfg.get_float("abc.b_s")
        if b_s is None and b_theta != 0.0:
            # default the toroidal amplitude to the marginal constraint value
            b_s = toroidal_constraint(b_theta, tau0, r)
        field = TubeField(B_s=0.0 if b_s is None else b_s, B_theta=b_theta)
        result = tube_growth_rate(field, tp, eta)
        rows.append({
            "r": r, "tau0": tau0, "eta": eta, "b_theta": b_theta,
            "b_s": field.B_s,
            "gamma": result.gamma,
            "classification": result.regime.value,
            "required_b_s": result.required_toroidal,
            "constraint_residual": result.constraint_residual,
        })
    return _emit(eff, cfg, ABC_GROWTH_COLUMNS, rows)


def _emit(eff, cfg, columns, rows, footers=(), extra_meta=None) -> int:
    with open_out(eff["out"]) as stream:
        if eff["format"] == "json":
            meta = _meta(cfg, eff)
            if extra_meta:
                meta.update(extra_meta)
            write_json(stream, meta, rows)
        else:
            write_csv(stream, columns, rows, footers)
    return 0


def cmd_frenet_check(args) -> int:
    cfg = parse_config(args.config) if args.config else RunConfig.empty()
    eff = _effective(cfg, args)
    from .verify import suite_frenet_fd, suite_laplacian_audit

    results = [
        suite_frenet_fd(
            eff["seed"] + 1,
            helices=cfg.get_int("frenet.helices", 100),
            samples=cfg.get_int("frenet.samples", 10),
            step=cfg.get_float("frenet.step", 1e-5),
        ),
        suite_laplacian_audit(eff["seed"] + 2),
    ]
    rows = [
        {
            "suite": r.suite,
            "passed": r.passed,
            "max_residual": r.max_residual,
            "threshold": r.threshold,
            "detail": r.detail,
        }
        for r in results
    ]
    with open_out(eff["out"]) as stream:
        if eff["format"] == "json":
            write_json(stream, _meta(cfg, eff), rows)
        else:
            write_csv(stream, VERIFY_COLUMNS, rows)
    return 0 if all(r.passed for r in results) else 1


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "spectrum": cmd_spectrum,
        "sweep": cmd_sweep,
        "verify": cmd_verify,
        "abc": cmd_abc,
        "frenet-check": cmd_frenet_check,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
