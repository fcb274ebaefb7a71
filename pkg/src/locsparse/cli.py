"""Command-line surface.

Subcommands: analyze, polynomial, occupancy, certify, iset, color, conditions,
embed, gen, bench.  Exit codes: 0 success, 2 precondition violation, 3 for
fail/UNSAT verdicts (a verdict is an answer, not an error).  All configuration
comes from flags; stochastic subcommands require an explicit --seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import gen as generators
from .acceptance import run_all
from .bounds import (
    BoundParameters,
    asymptotic_bound,
    occupancy_ratio_reference,
    reference_output,
    sparse_independent_set,
)
from .coloring import (
    CorrespondenceCover,
    bknp_condition_check,
    bknp_default_maps,
    cover_from_lists,
    dkps_condition_check,
    dkps_default_ell,
    heuristic_color,
    list_size_threshold,
    min_degree_ok_bknp,
    min_degree_ok_dkps,
    random_cover,
    solve_exact,
)
from .embedding import min_degree_boost
from .errors import PreconditionError
from .graph import Graph, certify_local_sparsity, load_graph
from .hardcore import (
    glauber_sample,
    independence_polynomial,
    occupancy_fraction_exact,
)
from .occupancy import (
    OccupancyCertificate,
    auto_certify,
    certified_occupancy_bound,
    check_certificate,
)

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_VERDICT_FAIL = 3


def _emit(obj, args) -> None:
    text = json.dumps(obj, indent=2, default=str)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _read_graph(args) -> Graph:
    return load_graph(args.graph, args.format)


def _load_params(raw: str | None) -> dict:
    if not raw:
        return {}
    if raw.startswith("@"):
        with open(raw[1:]) as fh:
            return json.load(fh)
    return json.loads(raw)


def _load_cover(path: str) -> CorrespondenceCover:
    with open(path) as fh:
        return CorrespondenceCover.from_dict(json.load(fh))


# -- subcommand handlers ------------------------------------------------------

def cmd_analyze(args) -> int:
    g = _read_graph(args)
    cert = certify_local_sparsity(g, args.k, args.r)
    _emit(cert.to_dict(), args)
    return EXIT_OK if cert.verdict else EXIT_VERDICT_FAIL


def cmd_polynomial(args) -> int:
    g = _read_graph(args)
    poly = independence_polynomial(g)
    _emit(poly.to_dict(), args)
    return EXIT_OK


def cmd_occupancy(args) -> int:
    g = _read_graph(args)
    poly = independence_polynomial(g)
    exact = occupancy_fraction_exact(poly, args.lam)
    out = {
        "lambda": args.lam,
        "occupancy_fraction": float(exact),
        "occupancy_fraction_exact": str(exact),
        "n": g.n,
    }
    if args.glauber_steps:
        if args.seed is None:
            raise PreconditionError("--seed is required with --glauber-steps")
        stats = glauber_sample(g, args.lam, args.glauber_steps, args.seed,
                               trace_path=args.trace,
                               trace_stride=args.trace_stride)
        out["glauber"] = stats.to_dict()
    _emit(out, args)
    return EXIT_OK


def cmd_certify(args) -> int:
    g = _read_graph(args)
    mode = "strong" if args.strong else "induced"
    if args.auto:
        cert, verdict = auto_certify(g, args.lam, sigma=args.sigma, mode=mode)
    else:
        if args.beta is None or args.gamma is None:
            raise PreconditionError("manual certification needs --beta and --gamma "
                                    "(or pass --auto)")
        cert = OccupancyCertificate.uniform(args.lam, args.beta, args.gamma, g.n, mode)
        verdict = check_certificate(g, cert)
    out = {
        "certificate": cert.to_dict(),
        "verdict": verdict.to_dict(),
    }
    if g.n >= 1:
        bound = certified_occupancy_bound(cert, g.max_degree())
        out["certified_bound"] = float(bound)
        if g.n <= 20:
            exact = occupancy_fraction_exact(independence_polynomial(g), args.lam)
            out["exact_occupancy"] = float(exact)
            out["bound_holds"] = bool(exact >= bound) if verdict.passed else None
    _emit(out, args)
    return EXIT_OK if verdict.passed else EXIT_VERDICT_FAIL


def cmd_iset(args) -> int:
    g = _read_graph(args)
    witness = sparse_independent_set(g, args.k, args.r)
    _emit(witness.to_dict(), args)
    return EXIT_OK


def cmd_color(args) -> int:
    g = _read_graph(args)
    cover = _load_cover(args.cover)
    if args.heuristic:
        if args.seed is None:
            raise PreconditionError("--seed is required with --heuristic")
        phi, info = heuristic_color(g, cover, seed=args.seed,
                                    max_iters=args.max_iters)
        if phi is None:
            _emit({"status": "give_up", "info": info}, args)
            return EXIT_VERDICT_FAIL
        _emit({"status": "colored", "phi": {str(v): c for v, c in sorted(phi.items())},
               "info": info}, args)
        return EXIT_OK
    phi = solve_exact(g, cover)
    if phi is None:
        _emit({"status": "unsat"}, args)
        return EXIT_VERDICT_FAIL
    _emit({"status": "colored", "phi": {str(v): c for v, c in sorted(phi.items())}}, args)
    return EXIT_OK


def cmd_conditions(args) -> int:
    g = _read_graph(args)
    cover = _load_cover(args.cover)
    params = _load_params(args.params)
    if args.mode == "dkps":
        lam = float(params.get("lambda", 1.0))
        mode = params.get("mode", "induced")
        if "cert_file" in params:
            with open(params["cert_file"]) as fh:
                cert = OccupancyCertificate.from_dict(json.load(fh))
        elif params.get("auto"):
            sigma = float(params.get("sigma", 0.1))
            cert, _ = auto_certify(g, lam, sigma=sigma, mode=mode)
        else:
            beta = float(params.get("beta", (1 + lam) / lam))
            gamma = float(params.get("gamma", 1.0))
            cert = OccupancyCertificate.uniform(lam, beta, gamma, g.n, mode)
        if "ell" in params:
            ell = float(params["ell"])
        else:
            ell = dkps_default_ell(float(params.get("k_max", 1.0)),
                                   int(params.get("r_max", 3)),
                                   max(g.max_degree(), 2), lam)
        report = dkps_condition_check(g, cover, cert, ell)
    else:
        eps = float(params.get("epsilon", 0.25))
        if "ell" in params and "t" in params:
            ell_map = {int(v): float(x) for v, x in params["ell"].items()} \
                if isinstance(params["ell"], dict) else float(params["ell"])
            t_map = {int(v): float(x) for v, x in params["t"].items()} \
                if isinstance(params["t"], dict) else float(params["t"])
        else:
            ell_map, t_map = bknp_default_maps(g, float(params.get("gamma_exp", 0.01)))
        report = bknp_condition_check(g, cover, eps, ell_map, t_map)
    _emit(report, args)
    return EXIT_OK if report["hypotheses_verified"] else EXIT_VERDICT_FAIL


def cmd_embed(args) -> int:
    g = _read_graph(args)
    result = min_degree_boost(g, args.delta, args.k, args.r)
    if args.out_prefix:
        edge_path = args.out_prefix + ".edges"
        hom_path = args.out_prefix + ".json"
        with open(edge_path, "w") as fh:
            fh.write(result.g_prime.to_edge_list())
        with open(hom_path, "w") as fh:
            json.dump({"j": result.j, "homs": result.homs,
                       "k_tilde": result.k_tilde, "r_tilde": result.r_tilde}, fh)
        print(json.dumps({"written": [edge_path, hom_path],
                          "n_prime": result.g_prime.n, "j": result.j}))
    else:
        _emit(result.to_dict(), args)
    return EXIT_OK


def cmd_gen(args) -> int:
    params = _load_params(args.params)
    if args.seed is not None:
        params["seed"] = args.seed
    stochastic = args.family in ("gnp", "triangle_free", "locally_sparse")
    if stochastic and "seed" not in params:
        raise PreconditionError(f"--seed is required for family {args.family}")
    g = generators.family(args.family, **params)
    text = g.to_edge_list()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_cover(args) -> int:
    g = _read_graph(args)
    if args.identity_fold:
        cover = cover_from_lists(
            g, {v: list(range(args.identity_fold)) for v in range(g.n)})
    else:
        if args.seed is None:
            raise PreconditionError("--seed is required for random covers")
        cover = random_cover(g, args.fold, args.seed,
                             twist="partial" if args.partial is not None else "full",
                             p=args.partial if args.partial is not None else 1.0)
    _emit(cover.to_dict(), args)
    return EXIT_OK


def cmd_refbound(args) -> int:
    if args.kind != "ratio" and args.degree is None:
        raise PreconditionError(f"--degree is required for kind {args.kind}")
    if args.kind in ("iset_max_deg", "iset_avg_deg", "chi_c"):
        params = BoundParameters(args.degree, args.eps, args.r)
        if args.n is None:
            raise PreconditionError(f"--n is required for kind {args.kind}")
        out = reference_output(args.kind, asymptotic_bound(args.kind, params, args.n))
    elif args.kind == "ratio":
        if args.log_z is None:
            raise PreconditionError("--log-z is required for kind ratio")
        out = reference_output("ratio", occupancy_ratio_reference(args.log_z, args.k, args.r))
    elif args.kind in ("list_size_dkps", "list_size_bknp"):
        flavor = args.kind.rsplit("_", 1)[1]
        out = reference_output(
            args.kind, list_size_threshold(flavor, args.degree, args.eps, args.r, args.mu))
        if args.max_degree is not None:
            if flavor == "dkps":
                out["min_degree_ok"] = min_degree_ok_dkps(
                    args.degree, args.max_degree, args.eps, args.r)
            else:
                out["min_degree_ok"] = min_degree_ok_bknp(args.degree, args.max_degree)
    else:
        raise PreconditionError(f"unknown reference kind: {args.kind}")
    _emit(out, args)
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.suite != "acceptance":
        raise PreconditionError(f"unknown suite: {args.suite}")
    results = run_all(quick=args.quick)
    for r in results:
        print(r.line())
    if args.report_dir:
        from .report import render_report
        written = render_report(results, args.report_dir)
        print("report files:")
        for path in written:
            print(f"  {path}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERDICT_FAIL


# -- parser -----------------------------------------------------------------

def _add_graph_arg(sp) -> None:
    sp.add_argument("graph", help="input graph file")
    sp.add_argument("--format", choices=("auto", "edgelist", "dimacs", "json"),
                    default="auto", help="input format (default: by extension)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locsparse",
        description="Local clique-sparsity certificates, hard-core occupancy "
                    "bounds, constructive independent sets, and correspondence-"
                    "coloring condition checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("analyze", help="certify per-neighborhood clique sparsity")
    _add_graph_arg(sp)
    sp.add_argument("--k", type=float, required=True, help="clique budget per neighborhood")
    sp.add_argument("--r", type=int, required=True, help="clique order")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("polynomial", help="exact independence polynomial")
    _add_graph_arg(sp)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_polynomial)

    sp = sub.add_parser("occupancy", help="exact occupancy fraction (optionally sampled)")
    _add_graph_arg(sp)
    sp.add_argument("--lambda", dest="lam", type=float, default=1.0)
    sp.add_argument("--glauber-steps", type=int, default=0)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--trace", help="CSV trace path for the sampler")
    sp.add_argument("--trace-stride", type=int, default=1)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_occupancy)

    sp = sub.add_parser("certify", help="build/check a local occupancy certificate")
    _add_graph_arg(sp)
    sp.add_argument("--lambda", dest="lam", type=float, default=1.0)
    sp.add_argument("--sigma", type=float, default=0.1)
    sp.add_argument("--strong", action="store_true", help="check all edge subsets too")
    sp.add_argument("--auto", action="store_true",
                    help="derive per-vertex parameters from the closed forms")
    sp.add_argument("--beta", type=float)
    sp.add_argument("--gamma", type=float)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("iset", help="constructive independent set with guarantee")
    _add_graph_arg(sp)
    sp.add_argument("--k", type=float, required=True, help="global clique budget")
    sp.add_argument("--r", type=int, required=True, help="clique order")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_iset)

    sp = sub.add_parser("color", help="color a correspondence cover")
    _add_graph_arg(sp)
    sp.add_argument("--cover", required=True, help="cover JSON file")
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true", default=True)
    group.add_argument("--heuristic", action="store_true")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--max-iters", type=int, default=10**5)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("conditions", help="verify coloring-theorem hypotheses")
    _add_graph_arg(sp)
    sp.add_argument("--cover", required=True)
    sp.add_argument("--mode", choices=("dkps", "bknp"), required=True)
    sp.add_argument("--params", help="inline JSON or @file", default="")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_conditions)

    sp = sub.add_parser("embed", help="raise the minimum degree by doubling")
    _add_graph_arg(sp)
    sp.add_argument("--delta", type=int, required=True)
    sp.add_argument("--k", type=float, default=1.0)
    sp.add_argument("--r", type=int, default=3)
    sp.add_argument("-o", dest="out_prefix", help="write <prefix>.edges and <prefix>.json")
    sp.add_argument("--output", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("gen", help="generate an instance")
    sp.add_argument("family", help="path|cycle|complete|edgeless|star|petersen|"
                                   "kneser|complete_multipartite|gnp|"
                                   "triangle_free|locally_sparse")
    sp.add_argument("--params", help="inline JSON or @file", default="")
    sp.add_argument("--seed", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("cover", help="build a cover file for `color`/`conditions`")
    _add_graph_arg(sp)
    sp.add_argument("--fold", type=int, default=3)
    sp.add_argument("--identity-fold", type=int,
                    help="identity lists 0..q-1 instead of random matchings")
    sp.add_argument("--partial", type=float,
                    help="keep each matched pair with this probability")
    sp.add_argument("--seed", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("refbound", help="asymptotic reference values (flagged, "
                                         "never certified at finite size)")
    sp.add_argument("--kind", required=True,
                    choices=("iset_max_deg", "iset_avg_deg", "chi_c", "ratio",
                             "list_size_dkps", "list_size_bknp"))
    sp.add_argument("--degree", type=float)
    sp.add_argument("--eps", type=float, default=0.0)
    sp.add_argument("--r", type=int, default=3)
    sp.add_argument("--n", type=int)
    sp.add_argument("--mu", type=float, default=0.01)
    sp.add_argument("--k", type=float, default=1.0)
    sp.add_argument("--log-z", dest="log_z", type=float)
    sp.add_argument("--max-degree", type=int)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_refbound)

    sp = sub.add_parser("bench", help="run the acceptance suite")
    sp.add_argument("--suite", default="acceptance")
    sp.add_argument("--quick", action="store_true",
                    help="smaller corpora (smoke run, not the acceptance configuration)")
    sp.add_argument("--report-dir", help="write results.csv and figures here")
    sp.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
