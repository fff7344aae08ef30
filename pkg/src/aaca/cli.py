"""Command line: ``aaca {interpolate,bench,pheromone,metrics}``.

Exit codes: 0 ok, 1 bad arguments or config, 2 I/O failure, 3 invalid
image data or dimensions.
"""

import argparse
import json
import sys
import time
from pathlib import Path

from . import aco, bench, metrics
from .config import ConfigError, build_config
from .image import COORD_MODES, load_pgm, save_pgm
from .interpolate import METHODS, PHEROMONE_METHODS, upscale
from .validation import ImageValidationError

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_INVALID = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _method_list(text):
    methods = [m.strip() for m in text.split(",") if m.strip()]
    bad = [m for m in methods if m not in METHODS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown method(s) {bad}; choose from {list(METHODS)}")
    return methods


def _add_aco_flags(p):
    g = p.add_argument_group("ant colony parameters")
    g.add_argument("--alpha", type=float)
    g.add_argument("--beta", type=float)
    g.add_argument("--tau-init", type=float, dest="tau_init")
    g.add_argument("--phi", type=float)
    g.add_argument("--rho", type=float)
    g.add_argument("--q0", type=float)
    g.add_argument("--iterations", type=int)
    g.add_argument("--steps-per-ant", type=int, dest="steps_per_ant")
    g.add_argument("--ants", type=int, help="0 selects round(sqrt(width*height))")
    g.add_argument("--memory-size", type=int, dest="memory_size", help="0 selects ceil(pixels/ants)")
    g.add_argument("--vmax-mode", choices=aco.VMAX_MODES, dest="vmax_mode")
    g.add_argument("--seed", type=int)


def _add_interp_flags(p):
    p.add_argument("--scale", type=int)
    p.add_argument("--coord-mode", choices=COORD_MODES, dest="coord_mode")
    p.add_argument("--obaca-normalize", action=argparse.BooleanOptionalAction,
                   dest="obaca_normalize", default=None)
    p.add_argument("--eps", type=float, help="equality tolerance for the weight patterns")
    p.add_argument("--n-jobs", type=int, dest="n_jobs")


def build_parser():
    parser = _Parser(prog="aaca", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("interpolate", help="upscale one PGM image")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--method", choices=METHODS, default="aaca")
    p.add_argument("--pheromone", help="reuse a pheromone CSV instead of building one")
    p.add_argument("--config")
    _add_interp_flags(p)
    _add_aco_flags(p)

    p = sub.add_parser("bench", help="downscale references, re-upscale, score")
    p.add_argument("--input", nargs="+", help="reference PGM images")
    p.add_argument("--method", type=_method_list, action="append",
                   help="comma-separated; may be repeated")
    p.add_argument("--downscale", choices=("decimate", "box"))
    p.add_argument("--compare", action="append", metavar="[IMAGE=]PATH",
                   help="score an external reconstruction against the reference")
    p.add_argument("--report", help="report path stem; writes .csv, .json, .config.json")
    p.add_argument("--config")
    _add_interp_flags(p)
    _add_aco_flags(p)

    p = sub.add_parser("pheromone", help="dump an image's pheromone field as CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--config")
    _add_aco_flags(p)

    p = sub.add_parser("metrics", help="MSE/PSNR of reconstructions against a reference")
    p.add_argument("--input", required=True, help="reference PGM")
    p.add_argument("--compare", action="append", required=True, metavar="PATH")
    p.add_argument("--report", help="report path stem; writes .csv and .json")
    return parser


_OVERRIDE_KEYS = (
    "alpha", "beta", "tau_init", "phi", "rho", "q0", "iterations", "steps_per_ant", "ants",
    "memory_size", "seed", "vmax_mode", "scale", "coord_mode", "obaca_normalize", "eps",
    "n_jobs", "downscale", "report",
)


def _config(args, **extra):
    overrides = {k: getattr(args, k, None) for k in _OVERRIDE_KEYS}
    overrides.update(extra)
    return build_config(getattr(args, "config", None), overrides)


def _echo(cfg, keys):
    d = cfg.as_dict()
    print(json.dumps({k: d[k] for k in keys}, sort_keys=True))


def cmd_interpolate(args):
    cfg = _config(args, output=args.output)
    img = load_pgm(args.input)
    start = time.perf_counter()
    field = None
    if args.method in PHEROMONE_METHODS:
        if args.pheromone:
            field = aco.load_pheromone_csv(args.pheromone)
        else:
            field = aco.construct_pheromone(img, cfg.aco_params())
    out = upscale(img, cfg.scale, args.method, field, obaca_normalize=cfg.obaca_normalize,
                  eps=cfg.eps, mode=cfg.coord_mode, n_jobs=cfg.n_jobs)
    elapsed = (time.perf_counter() - start) * 1000.0
    save_pgm(out, args.output)
    print(f"{args.method}: {img.shape[1]}x{img.shape[0]} -> {out.shape[1]}x{out.shape[0]} "
          f"in {elapsed:.1f} ms")
    _echo(cfg, sorted(set(cfg.as_dict()) - {"inputs", "methods", "report", "compare", "downscale"}))
    return EXIT_OK


def cmd_bench(args):
    methods = None
    if args.method:
        methods = [m for group in args.method for m in group]
    cfg = _config(args, inputs=args.input, methods=methods, compare=args.compare)
    if not cfg.inputs:
        raise UsageError("bench needs at least one --input reference image")
    rows = bench.run_bench(cfg)
    sys.stdout.write(bench.rows_to_csv(rows))
    if cfg.report:
        for path in bench.write_reports(rows, cfg.report, cfg):
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def cmd_pheromone(args):
    cfg = _config(args)
    img = load_pgm(args.input)
    start = time.perf_counter()
    field = aco.construct_pheromone(img, cfg.aco_params())
    aco.save_pheromone_csv(field.tau, args.output)
    print(f"pheromone {img.shape[1]}x{img.shape[0]} (K={field.n_ants}, "
          f"memory={field.memory_size}) in {(time.perf_counter() - start) * 1000.0:.1f} ms")
    return EXIT_OK


def cmd_metrics(args):
    reference = load_pgm(args.input)
    rows = bench.compare_rows(Path(args.input).stem, reference, args.compare, seed=0)
    for row in rows:
        print(f"{row.method[len('external:'):]}: mse={row.mse!r} psnr_db={row.psnr_db!r}")
    if args.report:
        bench.write_reports(rows, args.report)
    return EXIT_OK


COMMANDS = {
    "interpolate": cmd_interpolate,
    "bench": cmd_bench,
    "pheromone": cmd_pheromone,
    "metrics": cmd_metrics,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError) as exc:
        print(f"aaca: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ImageValidationError as exc:
        print(f"aaca: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"aaca: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        # remaining ValueErrors come from data checks (bad CSV, shapes, params)
        print(f"aaca: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
