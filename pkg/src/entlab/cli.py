"""Command-line entry point: ``entlab <subcommand>``.

Exit codes: 0 success, 1 configuration/usage error, 2 numerical failure.
"""

import argparse
import json
import logging
import sys

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import evolution, sweep
from .criteria import evaluate
from .errors import ConfigError, ConvergenceError, DomainError, NumericalError, ParameterError
from .evolution import DEFAULT_VARIANT, EvolutionParams, HamiltonianVariant
from .states import aux_qubit, horodecki_state

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 1, 2

# keys accepted in a sweep config file; they mirror the long flag names
CONFIG_KEYS = {"family", "alpha", "c0", "dt", "variant", "out", "allow_out_of_domain", "workers"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _dump_json(obj, target):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if target == "-":
        sys.stdout.write(text)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)


def _variant(value):
    try:
        return HamiltonianVariant.parse(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def cmd_classify(args):
    rho = horodecki_state(args.family, args.alpha, allow_out_of_domain=args.allow_out_of_domain)
    qubit, _ = aux_qubit(args.c0)
    reduced = evolution.evolve_and_reduce(rho, qubit, EvolutionParams(args.dt, args.variant))
    res = evaluate(reduced)
    out = {
        "family": int(args.family), "alpha": args.alpha, "c0": args.c0, "dt": args.dt,
        "variant": args.variant.value,
        "negativity": res.negativity, "realignment": res.realignment,
        "red_min_a": res.reduction.min_eig_side_a, "red_min_b": res.reduction.min_eig_side_b,
        "distillable": res.reduction.distillable, "label": str(res.label),
    }
    if args.json != "-":
        print(f"family={out['family']} alpha={args.alpha:g} c0={args.c0:g} Dt={args.dt:g} variant={args.variant.value}")
        print(f"negativity   N = {res.negativity:.12g}")
        print(f"realignment  R = {res.realignment:.12g}")
        print(f"reduction min eig: side A = {out['red_min_a']:.12g}, side B = {out['red_min_b']:.12g}")
        print(f"distillable (reduction criterion violated): {'yes' if out['distillable'] else 'no'}")
        print(f"label: {out['label']}")
    if args.json:
        _dump_json(out, args.json)
    return EXIT_OK


def _load_config_file(path):
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid config file {path}: {exc}") from None
    unknown = set(data) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return {k.replace("-", "_"): v for k, v in data.items()}


def build_sweep_config(args):
    settings = _load_config_file(args.config) if args.config else {}
    for key in ("family", "alpha", "c0", "dt", "variant", "out", "workers"):
        value = getattr(args, key)
        if value is not None:
            settings[key] = value
    if args.allow_out_of_domain:
        settings["allow_out_of_domain"] = True
    missing = [k for k in ("family", "alpha", "c0", "dt", "out") if k not in settings]
    if missing:
        raise ConfigError(f"missing sweep settings: {', '.join(missing)}")
    try:
        variant = HamiltonianVariant.parse(settings.get("variant", DEFAULT_VARIANT))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    config = sweep.SweepConfig(
        family=settings["family"],
        alpha_range=sweep.parse_range(settings["alpha"]),
        c0_values=sweep.parse_values(settings["c0"]),
        dt_range=sweep.parse_range(settings["dt"]),
        variant=variant,
        output_path=str(settings["out"]),
        allow_out_of_domain=bool(settings.get("allow_out_of_domain", False)),
    )
    return config, settings.get("workers")


def cmd_sweep(args):
    config, workers = build_sweep_config(args)
    records = sweep.run_sweep(config, workers=workers)
    try:
        sweep.write_csv(records, config.output_path)
        sweep.write_metadata(config, config.output_path + ".meta.json")
        if args.plot_dir:
            sweep.emit_plot_data(records, args.plot_dir, axis=args.plot_axis, stem=args.plot_stem)
    except OSError as exc:
        raise ConfigError(f"cannot write output: {exc}") from None
    print(f"wrote {len(records)} records to {config.output_path} (variant {config.variant.value})")
    return EXIT_OK


def cmd_region(args):
    try:
        records = sweep.read_csv(args.input)
    except OSError as exc:
        raise ConfigError(f"cannot read {args.input}: {exc}") from None
    reports = []
    for (family, c0), recs in sweep.group_records(records).items():
        rep = sweep.find_negative_region(recs)
        entry = {"family": family, "c0": c0, **rep.as_dict()}
        if args.crossings:
            entry["realignment_crossings"] = sweep.realignment_crossings(recs)
        reports.append(entry)
        if args.json != "-":
            print(f"family={family} c0={c0:g}: {len(recs)} records")
            if rep.empty:
                print("  no grid point violates the reduction criterion (region empty)")
            else:
                print(f"  dt_lo = {rep.dt_lo:.6g}  dt_hi = {rep.dt_hi:.6g}")
                print(f"  alpha_lo = {rep.alpha_lo:.6g}  alpha_hi = {rep.alpha_hi:.6g}")
                for w in rep.witness_points:
                    print(f"  witness alpha={w.alpha:.6g} dt={w.dt:.6g} min_eig={w.red_min:.6g}")
            if args.crossings:
                for c in entry["realignment_crossings"]:
                    print(f"  R turns negative at alpha={c['alpha']:.6g} (dt={c['dt']:.6g})")
    if args.json:
        _dump_json(reports, args.json)
    return EXIT_OK


def cmd_verify_closed_form(args):
    grid = evolution.default_grid(args.grid)
    worst = evolution.closed_form_grid_residuals(args.variant, grid)
    checked = [(i, j) for i, j in evolution.CHECKED_ENTRIES]
    if args.json != "-":
        print(f"closed-form comparison for state 1, variant {args.variant.value}, {args.grid}^3 grid")
        print(f"max |numerical - closed form| per entry (tolerance {args.tol:g}):")
        for i in range(9):
            print("  " + " ".join(f"X{i + 1}{j + 1}={worst[i, j]:.2e}" for j in range(9)))
        for i, j in checked:
            verdict = "match" if worst[i, j] <= args.tol else "MISMATCH"
            print(f"  checked X{i + 1}{j + 1}: {worst[i, j]:.3e} {verdict}")
    out = {
        "variant": args.variant.value,
        "grid": args.grid,
        "tolerance": args.tol,
        "residuals": {f"X{i + 1}{j + 1}": float(worst[i, j]) for i in range(9) for j in range(9)},
        "checked_entries_match": all(worst[ij] <= args.tol for ij in checked),
    }
    if args.json:
        _dump_json(out, args.json)
    return EXIT_OK


def cmd_select_variant(args):
    sel = evolution.select_variant(evolution.default_grid(args.grid))
    if args.json != "-":
        for v in HamiltonianVariant:
            print(f"{v.value:>10}: max deviation {sel.max_deviation[v]:.6g}, rms {sel.rms_deviation[v]:.6g}")
        print(f"winner: {sel.winner.value}")
    if args.json:
        _dump_json({
            "winner": sel.winner.value,
            "max_deviation": {v.value: d for v, d in sel.max_deviation.items()},
            "rms_deviation": {v.value: d for v, d in sel.rms_deviation.items()},
        }, args.json)
    return EXIT_OK


def cmd_plot(args):
    try:
        records = sweep.read_csv(args.input)
        paths = sweep.emit_plot_data(records, args.dir, axis=args.axis, stem=args.stem)
    except OSError as exc:
        raise ConfigError(str(exc)) from None
    for p in paths:
        print(p)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="entlab", description="DM-interaction bound-entanglement toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="criteria at a single (alpha, c0, Dt) point")
    p.add_argument("--family", type=int, choices=(1, 2), required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--c0", type=float, default=0.0)
    p.add_argument("--dt", type=float, default=0.0)
    p.add_argument("--variant", type=_variant, default=DEFAULT_VARIANT)
    p.add_argument("--allow-out-of-domain", action="store_true")
    p.add_argument("--json", metavar="FILE", help="write JSON to FILE ('-' for stdout only)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", help="evaluate an (alpha, c0, Dt) grid into CSV")
    p.add_argument("--config", metavar="FILE", help="TOML file with keys mirroring the flags")
    p.add_argument("--family", type=int, choices=(1, 2))
    p.add_argument("--alpha", metavar="MIN:MAX:STEPS")
    p.add_argument("--c0", metavar="LIST|MIN:MAX:STEPS")
    p.add_argument("--dt", metavar="MIN:MAX:STEPS")
    p.add_argument("--variant")
    p.add_argument("--out", metavar="CSV")
    p.add_argument("--workers", type=int)
    p.add_argument("--allow-out-of-domain", action="store_true")
    p.add_argument("--plot-dir", metavar="DIR")
    p.add_argument("--plot-axis", choices=("alpha", "dt", "surface"), default="alpha")
    p.add_argument("--plot-stem", default="sweep")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("region", help="distillable region from a sweep CSV")
    p.add_argument("--in", dest="input", required=True, metavar="CSV")
    p.add_argument("--crossings", action="store_true", help="also list realignment sign changes")
    p.add_argument("--json", metavar="FILE")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("verify-eq16", help="compare numerical evolution with the state-1 closed form")
    p.add_argument("--variant", type=_variant, default=DEFAULT_VARIANT)
    p.add_argument("--grid", type=int, default=10)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--json", metavar="FILE")
    p.set_defaults(func=cmd_verify_closed_form)

    p = sub.add_parser("select-variant", help="run the Hamiltonian variant-selection oracle")
    p.add_argument("--grid", type=int, default=10)
    p.add_argument("--json", metavar="FILE")
    p.set_defaults(func=cmd_select_variant)

    p = sub.add_parser("plot", help="plot data files and a gnuplot script from a sweep CSV")
    p.add_argument("--in", dest="input", required=True, metavar="CSV")
    p.add_argument("--dir", required=True)
    p.add_argument("--axis", choices=("alpha", "dt", "surface"), default="alpha")
    p.add_argument("--stem", default="sweep")
    p.set_defaults(func=cmd_plot)
    return parser


def cli_main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (ConfigError, ParameterError) as exc:
        print(f"entlab: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, ConvergenceError, DomainError, FloatingPointError) as exc:
        print(f"entlab: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
