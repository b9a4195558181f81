"""Command-line interface.

Exit codes: 0 on success, 1 on usage errors (bad flags, malformed inputs),
2 on computation errors (a numeric contract failed while running).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .analytic import MODES, PAPER_MODE, UniformModel, summary_analytic
from .core import AngleGrid, ComputationError, UsageError
from .experiments import run_landscape_comparison, run_sat_alpha, run_success_comparison
from .landscape import LandscapeGrid, approx_curve, approx_grid
from .optimize import optimize_instance, optimize_problem
from .problems import FAMILIES, build_ensemble
from . import storage


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); usage errors are exit 1
        raise UsageError(message)


def _parse_grid(text: str) -> AngleGrid:
    try:
        beta_steps, gamma_steps = (int(part) for part in text.lower().split("x"))
    except ValueError:
        raise UsageError(f"grid must look like '100x100', got {text!r}") from None
    if beta_steps < 1 or gamma_steps < 1:
        raise UsageError("grid must have at least one point per axis")
    return AngleGrid(
        0.0,
        math.pi,
        0.0,
        2.0 * math.pi * (gamma_steps - 1) / gamma_steps,
        beta_steps,
        gamma_steps,
    )


def _opt_config(args) -> "storage.OptConfig":
    spec = {}
    if args.coarse is not None:
        cb, cg = (int(part) for part in args.coarse.lower().split("x"))
        spec["coarse_beta"] = cb
        spec["coarse_gamma"] = cg
    if args.refine_starts is not None:
        spec["refine_starts"] = args.refine_starts
    if args.max_evals is not None:
        spec["max_evals"] = args.max_evals
    return storage.opt_config_from_spec(spec)


def _add_opt_flags(parser) -> None:
    parser.add_argument("--coarse", help="coarse scan resolution, e.g. 32x32")
    parser.add_argument("--refine-starts", type=int, help="simplex starts (default 4)")
    parser.add_argument("--max-evals", type=int, help="total evaluation budget")


def _family_params(args) -> dict:
    params = {}
    for flag, key in (
        ("t_size", "t_size"),
        ("num_seeds", "num_seeds"),
        ("per_seed", "per_seed"),
        ("dedupe", "dedupe"),
        ("clauses", "num_clauses"),
        ("k", "k"),
        ("edge_prob", "edge_prob"),
    ):
        value = getattr(args, flag)
        if value is not None:
            params[key] = value
    return params


def _cmd_gen(args) -> int:
    ensemble = build_ensemble(args.family, args.n, args.count, _family_params(args), args.seed)
    storage.save_ensemble(ensemble, args.out)
    return 0


def _cmd_summarize(args) -> int:
    from .structure import aggregate, instance_stats

    ensemble = storage.load_ensemble(args.ensemble)
    summary = aggregate([instance_stats(inst.target) for inst in ensemble.instances])
    storage.save_summary(summary, args.out)
    return 0


def _cmd_analytic_uniform(args) -> int:
    model = UniformModel(n=args.n, t_size=args.t_size, mode=args.mode)
    storage.save_summary(summary_analytic(model), args.out)
    return 0


def _cmd_landscape(args) -> int:
    grid = _parse_grid(args.grid)
    prefix = Path(args.out_prefix)
    if args.summary is not None:
        summary = storage.load_summary(args.summary)
        values = approx_grid(summary, grid)
        storage.grid_to_csv(LandscapeGrid(grid=grid, values=values), f"{prefix}_approx.csv")
        if args.gamma_c is not None:
            betas = grid.betas()
            curve = approx_curve(summary, betas, args.gamma_c)
            lines = ["beta,value"]
            for b, v in zip(betas, curve):
                lines.append(f"{b:.17g},{v:.17g}")
            Path(f"{prefix}_cross.csv").write_text("\n".join(lines) + "\n")
        return 0
    ensemble = storage.load_ensemble(args.ensemble)
    gamma_c = args.gamma_c if args.gamma_c is not None else 1.2
    result = run_landscape_comparison(ensemble, grid, gamma_c=gamma_c, threads=args.threads)
    storage.grid_to_csv(result.mean, f"{prefix}_mean.csv")
    storage.grid_to_csv(result.approx, f"{prefix}_approx.csv")
    storage.grid_to_csv(result.error, f"{prefix}_error.csv")
    storage.grid_to_csv(result.bound, f"{prefix}_bound.csv")
    storage.cross_section_to_csv(result.cross_section, f"{prefix}_cross.csv")
    return 0


def _cmd_optimize(args) -> int:
    config = _opt_config(args)
    if args.instance is not None:
        if args.ensemble is None:
            raise UsageError("--instance requires --ensemble")
        ensemble = storage.load_ensemble(args.ensemble)
        matches = [inst for inst in ensemble.instances if inst.id == args.instance]
        if not matches:
            raise UsageError(f"no instance with id {args.instance}")
        result = optimize_instance(matches[0].target, config)
    elif args.summary is not None:
        result = optimize_problem(storage.load_summary(args.summary), config)
    else:
        from .structure import aggregate, instance_stats

        ensemble = storage.load_ensemble(args.ensemble)
        summary = aggregate([instance_stats(inst.target) for inst in ensemble.instances])
        result = optimize_problem(summary, config)
    storage.save_optresult(result, args.out)
    return 0


def _cmd_compare(args) -> int:
    ensemble = storage.load_ensemble(args.ensemble)
    report = run_success_comparison(
        ensemble, args.shots, args.seed, _opt_config(args), threads=args.threads
    )
    prefix = Path(args.out_prefix)
    storage.save_report(report, f"{prefix}.csv", f"{prefix}.json")
    config = storage.RunConfig(
        seed=args.seed,
        family=ensemble.family,
        n=ensemble.n,
        count=len(ensemble.instances),
        params=ensemble.params,
        grid={},
        optimizer={"shots": args.shots},
        out_dir=str(prefix.parent),
    )
    Path(f"{prefix}_config.json").write_text(json.dumps(config.to_dict(), indent=1) + "\n")
    return 0


def _cmd_sat_alpha(args) -> int:
    alphas = tuple(float(a) for a in args.alphas.split(","))
    results = run_sat_alpha(
        args.n, alphas, args.count, args.shots, args.seed,
        config=_opt_config(args), threads=args.threads,
    )
    prefix = Path(args.out_prefix)
    combined = []
    for alpha, _ensemble, report in results:
        tag = f"{prefix}_a{alpha:g}"
        storage.save_report(report, f"{tag}.csv", f"{tag}.json")
        combined.append(storage.report_to_dict(report) | {"alpha": alpha})
    Path(f"{prefix}_summary.json").write_text(json.dumps(combined, indent=1) + "\n")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="qaoa-landscape", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a problem ensemble")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--t-size", dest="t_size", type=int)
    p.add_argument("--num-seeds", dest="num_seeds", type=int)
    p.add_argument("--per-seed", dest="per_seed", type=int)
    p.add_argument("--dedupe", choices=("retry", "drop"))
    p.add_argument("--clauses", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--edge-prob", dest="edge_prob", type=float)
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("summarize", help="aggregate ensemble structure statistics")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_summarize)

    p = sub.add_parser("analytic-uniform", help="closed-form summary for uniform sampling")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t-size", dest="t_size", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default=PAPER_MODE)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_analytic_uniform)

    p = sub.add_parser("landscape", help="evaluate landscapes on an angle grid")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--summary")
    group.add_argument("--ensemble")
    p.add_argument("--grid", default="100x100")
    p.add_argument("--gamma-c", dest="gamma_c", type=float)
    p.add_argument("--threads", type=int)
    p.add_argument("--out-prefix", dest="out_prefix", required=True)
    p.set_defaults(handler=_cmd_landscape)

    p = sub.add_parser("optimize", help="search the best angles")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--summary")
    group.add_argument("--ensemble")
    p.add_argument("--instance", type=int)
    _add_opt_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=_cmd_optimize)

    p = sub.add_parser("compare", help="standard vs non-iterative pipelines")
    p.add_argument("--ensemble", required=True)
    p.add_argument("--shots", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int)
    _add_opt_flags(p)
    p.add_argument("--out-prefix", dest="out_prefix", required=True)
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("sat-alpha", help="two-arm study across SAT clause densities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alphas", default="2,4,6")
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--shots", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int)
    _add_opt_flags(p)
    p.add_argument("--out-prefix", dest="out_prefix", required=True)
    p.set_defaults(handler=_cmd_sat_alpha)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ComputationError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
