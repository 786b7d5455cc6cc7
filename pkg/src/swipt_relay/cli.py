"""Command-line front end: point evaluations, sweeps, gains, verification.

All commands are driven by a JSON config file; a few flags (--seed, --n,
--out) override config values. Powers are given in dBm on this boundary and
converted once, on load. The default seed is a fixed constant so two runs of
the same command produce byte-identical CSV files.

Exit codes: 0 success, 1 config error, 2 verification failure, 3 runtime error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from .channel import FadingParams
from .params import ConfigError, SystemParams, linear_to_dbm, validate
from .policy import Fixed, parse_policy, policy_name
from .sim import SweepSpec, gains_from_sweep, outage_point, run_sweep
from . import verify as verify_mod

DEFAULT_SEED = 12345

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VERIFY = 2
EXIT_RUNTIME = 3

SWEEP_HEADER = "sweep_var,sweep_value,policy,p_out,std_err,mean_rho,harvest_only_fraction,n,seed"
GAINS_HEADER = "sweep_value,eta_full,eta_par,eta_rho06,eta_rho08"


def _fmt(x) -> str:
    return f"{x:.12g}"


def _load_config(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"config {path} is not valid JSON: {e}") from e


def _fading_from(cfg) -> FadingParams:
    for key in ("lambda_h", "lambda_g"):
        if key not in cfg:
            raise ConfigError(f"missing {key}")
    try:
        return FadingParams(lambda_h=float(cfg["lambda_h"]), lambda_g=float(cfg["lambda_g"]))
    except ValueError as e:
        raise ConfigError(str(e)) from e


def _policies_from(cfg):
    names = cfg.get("policies")
    if not names:
        raise ConfigError('missing "policies" list')
    try:
        return tuple(parse_policy(str(n)) for n in names)
    except ValueError as e:
        raise ConfigError(str(e)) from e


def _int_from(cfg, args, key, default=None):
    v = getattr(args, key, None)
    if v is None:
        v = cfg.get(key, default)
    if v is None:
        raise ConfigError(f"missing {key}")
    try:
        v = int(v)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be an integer, got {v!r}") from None
    return v


def _out_path(cfg, args):
    out = args.out or cfg.get("out")
    if not out:
        raise ConfigError('missing output path (use --out or "out" in the config)')
    return out


def _write_csv(path, provenance_lines, header, rows):
    """Write atomically: the file appears only if every row was produced."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            for line in provenance_lines:
                fh.write(f"# {line}\n")
            fh.write(header + "\n")
            for row in rows:
                fh.write(",".join(row) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _provenance(cfg, seed, n):
    echo = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    return [f"seed={seed}", f"n={n}", f"config={echo}"]


def _estimate_row(sweep_var, sweep_value, pol, est, seed):
    return (
        sweep_var,
        _fmt(sweep_value),
        policy_name(pol),
        _fmt(est.p_out),
        _fmt(est.std_err),
        _fmt(est.mean_rho),
        _fmt(est.harvest_only_fraction),
        str(est.n),
        str(seed),
    )


def cmd_point(args) -> int:
    cfg = _load_config(args.config)
    params = validate(cfg)
    fading = _fading_from(cfg)
    policies = _policies_from(cfg)
    n = _int_from(cfg, args, "n")
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    seed = _int_from(cfg, args, "seed", DEFAULT_SEED)
    out = _out_path(cfg, args)
    estimates = outage_point(
        params, fading, policies, params.gamma_0, n, seed, workers=args.workers
    )
    p_s_dbm = linear_to_dbm(params.p_s)
    rows = [
        _estimate_row("p_s_dbm", p_s_dbm, pol, est, seed)
        for pol, est in zip(policies, estimates)
    ]
    _write_csv(out, _provenance(cfg, seed, n), SWEEP_HEADER, rows)
    for row in rows:
        print(f"{row[2]}: p_out={row[3]} (std_err={row[4]})")
    print(f"wrote {out}")
    return EXIT_OK


def _sweep_spec(cfg, args):
    sweep = cfg.get("sweep")
    if not isinstance(sweep, dict):
        raise ConfigError('missing "sweep" section with "variable" and "values"')
    variable = sweep.get("variable")
    values = sweep.get("values")
    if not variable:
        raise ConfigError('missing sweep "variable"')
    if not values:
        raise ConfigError('missing or empty sweep "values"')
    n = _int_from(cfg, args, "n")
    seed = _int_from(cfg, args, "seed", DEFAULT_SEED)
    try:
        return SweepSpec(
            variable=str(variable),
            values=tuple(float(v) for v in values),
            params=validate(cfg),
            fading=_fading_from(cfg),
            policies=_policies_from(cfg),
            n=n,
            seed=seed,
        )
    except ValueError as e:
        raise ConfigError(str(e)) from e


def _gain_rows(result):
    rows = []
    for g in gains_from_sweep(result):
        rows.append((
            _fmt(g.sweep_value),
            _fmt(g.eta_full), _fmt(g.eta_par), _fmt(g.eta_06), _fmt(g.eta_08),
        ))
    return rows


def cmd_sweep(args) -> int:
    cfg = _load_config(args.config)
    spec = _sweep_spec(cfg, args)
    out = _out_path(cfg, args)
    result = run_sweep(spec, workers=args.workers)
    rows = [
        _estimate_row(spec.variable, r.sweep_value, r.policy, r.estimate, spec.seed)
        for r in result.rows
    ]
    _write_csv(out, _provenance(cfg, spec.seed, spec.n), SWEEP_HEADER, rows)
    print(f"wrote {out} ({len(rows)} rows)")
    gains_out = cfg.get("gains_out")
    if gains_out and any(p == Fixed(0.4) for p in spec.policies):
        _write_csv(gains_out, _provenance(cfg, spec.seed, spec.n),
                   GAINS_HEADER, _gain_rows(result))
        print(f"wrote {gains_out}")
    return EXIT_OK


def cmd_gains(args) -> int:
    cfg = _load_config(args.config)
    spec = _sweep_spec(cfg, args)
    out = _out_path(cfg, args)
    result = run_sweep(spec, workers=args.workers)
    _write_csv(out, _provenance(cfg, spec.seed, spec.n), GAINS_HEADER, _gain_rows(result))
    print(f"wrote {out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify_mod.run_all(quick=args.quick, corrupt=args.inject_fault)
    failed = False
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name}: {r.detail}")
        failed = failed or not r.passed
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swipt-relay",
        description="Outage simulation and power-splitting policies for an "
                    "energy-harvesting AF relay link.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_config=True):
        p.add_argument("--config", required=need_config, help="JSON config file")
        p.add_argument("--out", help="output CSV path (overrides config)")
        p.add_argument("--seed", type=int, default=None,
                       help=f"RNG seed (overrides config; default {DEFAULT_SEED})")
        p.add_argument("--n", type=int, default=None,
                       help="realizations per point (overrides config)")
        p.add_argument("--workers", type=int, default=1,
                       help="parallel workers; results do not depend on this")

    p_point = sub.add_parser("point", help="outage at one operating point per policy")
    common(p_point)
    p_point.set_defaults(func=cmd_point)

    p_sweep = sub.add_parser("sweep", help="outage sweep over P_s or a fading mean")
    common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_gains = sub.add_parser("gains", help="log-ratio gains vs the fixed 0.4 baseline")
    common(p_gains)
    p_gains.set_defaults(func=cmd_gains)

    p_verify = sub.add_parser("verify", help="run closed-form vs oracle batteries")
    p_verify.add_argument("--quick", action="store_true",
                          help="reduced instance counts, same batteries")
    p_verify.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as e:  # noqa: BLE001 - boundary: map anything else to exit 3
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
