"""Command-line surface tying the package together.

Exit codes: 0 success, 2 validation error, 3 numeric-precision failure
(including ambiguous clustering and snapping residual overflows).
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from mpmath import mp

from . import catalog
from .errors import PrecisionError, ValidationError
from .forests import buslov_polynomial, kelmans_coefficients
from .game import (GameConfig, GameSession, LoopbackEndpoint, SocketEndpoint,
                   SolverConfig, serve_game, solve_game)
from .graphs import (build_diffusion_pair, graph_from_text, graph_to_text,
                     laplacian_matrix, sum_distinct_labels)
from .polynomials import (charpoly_division_free, evaluate_y,
                          spectral_polynomial, spectral_poly_from_text,
                          spectral_poly_to_text, tangent_cone)
from .spectra import (ClusterAssignment, cluster_and_assign, exact_decimal,
                      parse_exact_decimal, prediction_error_ratio,
                      recover_spectral_poly, simulate_spectrum,
                      spectrum_from_text, spectrum_to_text)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_window(spec):
    try:
        lo, hi = spec.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise ValidationError(f"window must look like '-3:1', got {spec!r}")


def _load_pair(path, labels_spec, seed):
    dp = graph_from_text(_read(path))
    if labels_spec is None:
        values = dp.label_values()
        if len(set(values)) == len(values):
            return build_diffusion_pair(
                dp.graph.n, [(u, v, a) for (u, v), a in dp.labels])
        return dp
    if labels_spec == "powers-of-two":
        labels = sum_distinct_labels(max(dp.graph.m, 1))[: dp.graph.m]
    elif labels_spec == "shuffled-powers-of-two":
        labels = sum_distinct_labels(max(dp.graph.m, 1))[: dp.graph.m]
        random.Random(seed).shuffle(labels)
    else:
        labels = [int(tok) for tok in labels_spec.split(",")]
    return dp.relabeled(labels)


def _cmd_curve(args):
    dp = _load_pair(args.graph, args.labels, args.seed)
    P = spectral_polynomial(dp)
    _write(args.output, spectral_poly_to_text(P))
    return 0


def _cmd_tangent_cone(args):
    P = spectral_poly_from_text(_read(args.polynomial))
    cone = tangent_cone(P)
    lines = [f"tcone d={cone.degree}"]
    for j, k, c in sorted(cone.terms, key=lambda t: (-t[0], t[1])):
        lines.append(f"{c} {j} {k}")
    _write(args.output, "\n".join(lines) + "\n")
    return 0


def _cmd_evaluate(args):
    P = spectral_poly_from_text(_read(args.polynomial))
    y = Fraction(args.y)
    p = evaluate_y(P, y)
    lines = [f"upoly y={y}"]
    for k in sorted(p.terms, reverse=True):
        lines.append(f"{p.terms[k]} {k}")
    _write(args.output, "\n".join(lines) + "\n")
    return 0


def _cmd_reconstruct(args):
    from .reconstruct import reconstruct_from_polynomial

    P = spectral_poly_from_text(_read(args.polynomial))
    g = reconstruct_from_polynomial(P)
    _write(args.output, graph_to_text(g))
    return 0


def _cmd_simulate(args):
    dp = _load_pair(args.graph, args.labels, args.seed)
    r_min, r_max = _parse_window(args.window)
    sample = simulate_spectrum(dp, args.q, r_min, r_max, args.precision_bits)
    _write(args.output, spectrum_to_text(sample))
    return 0


def _cmd_cluster(args):
    samples = [spectrum_from_text(_read(p)) for p in args.spectra]
    assignments = cluster_and_assign(samples)
    blocks = []
    for a in assignments:
        lines = [f"clusters q={a.q} prec={a.precision_bits}"]
        for r in sorted(a.levels, reverse=True):
            for v in a.levels[r]:
                lines.append(f"{r} {exact_decimal(v)}")
        blocks.append("\n".join(lines))
    _write(args.output, "\n\n".join(blocks) + "\n")
    return 0


def _read_assignment(text):
    rows = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not rows or not rows[0].startswith("clusters "):
        raise ValidationError("missing clusters header")
    fields = dict(tok.split("=") for tok in rows[0].split()[1:])
    q = int(fields["q"])
    prec = int(fields["prec"])
    levels = {}
    for ln in rows[1:]:
        r_tok, v_tok = ln.split(None, 1)
        levels.setdefault(int(r_tok), []).append(parse_exact_decimal(v_tok))
    levels = {r: tuple(sorted(vs)) for r, vs in levels.items()}
    return ClusterAssignment(q, prec, levels, float("inf"), 1.0)


def _cmd_recover(args):
    assignment = _read_assignment(_read(args.clusters))
    result = recover_spectral_poly(
        assignment, assignment.q, args.degree_bound,
        min_levels=args.min_levels)
    _write(args.output, spectral_poly_to_text(result.polynomial))
    print(f"snap residual: {float(result.snap_residual):.3g}", file=sys.stderr)
    return 0


def _cmd_separate(args):
    g1 = graph_from_text(_read(args.graph1)).graph
    g2 = graph_from_text(_read(args.graph2)).graph
    eps = Fraction(args.epsilon)
    full, half, ratio = prediction_error_ratio(
        g1, g2, eps, args.precision_bits)
    report = {
        "epsilon": str(eps),
        "common_edges": [list(e) for e in full.common_edges],
        "extra_edges": [[list(e) for e in s] for s in full.extra_edges],
        "hausdorff_distance": exact_decimal(full.hausdorff_distance),
        "separating_vector": ([exact_decimal(x) for x in full.separating_vector]
                              if full.separating_vector else None),
        "separating_seminorms": ([exact_decimal(s) for s in full.separating_seminorms]
                                 if full.separating_seminorms else None),
        "max_prediction_error": [exact_decimal(e)
                                 for e in full.max_prediction_error],
        "halved_epsilon_error_ratio": float(ratio),
    }
    if args.format == "json":
        _write(args.output, json.dumps(report, indent=2) + "\n")
    else:
        lines = [
            f"epsilon            {eps}",
            f"common edges       {len(full.common_edges)}",
            f"extra edges        {full.extra_edges[0]} vs {full.extra_edges[1]}",
            f"hausdorff distance {mp.nstr(full.hausdorff_distance, 12)}",
            f"separating vector  {'found' if full.separating_vector else 'none'}",
            f"prediction errors  {mp.nstr(full.max_prediction_error[0], 6)} "
            f"{mp.nstr(full.max_prediction_error[1], 6)}",
            f"error ratio eps/(eps/2): {float(ratio):.4f}",
        ]
        _write(args.output, "\n".join(lines) + "\n")
    return 0


def _cmd_oracle_check(args):
    rng = random.Random(args.seed)
    checked = 0
    for n in range(1, args.max_n + 1):
        for g in catalog.connected_graphs(n):
            if g.m == 0:
                continue
            labels = rng.sample(range(1, 17), g.m) if g.m <= 16 else None
            if labels is None:
                continue
            dp = catalog.with_labels(g, labels)
            if buslov_polynomial(dp) != spectral_polynomial(dp):
                print(f"FAIL buslov: n={n} edges={sorted(g.edges)}")
                return 2
            checked += 1
        for g in catalog.all_graphs(n):
            cs = kelmans_coefficients(g)
            cp = charpoly_division_free(laplacian_matrix(g))
            for k in range(1, g.n):
                if cp.coefficient(g.n - k) != (-1) ** k * cs[k - 1]:
                    print(f"FAIL kelmans: n={n} edges={sorted(g.edges)}")
                    return 2
            checked += 1
    print(f"oracle-check: {checked} graphs verified up to n={args.max_n}")
    return 0


def _cmd_game_serve(args):
    dp = graph_from_text(_read(args.graph))
    r_min, r_max = _parse_window(args.window)
    config = GameConfig(r_min=r_min, r_max=r_max,
                        precision_bits=args.precision_bits, seed=args.seed)
    server, (host, port) = serve_game(dp.graph, config,
                                      host=args.host, port=args.port)
    print(f"serving hidden graph on {host}:{port}", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.shutdown()
    return 0


def _cmd_game_solve(args):
    host, port = args.endpoint.rsplit(":", 1)
    endpoint = SocketEndpoint(host, int(port))
    try:
        result = solve_game(endpoint, SolverConfig())
    finally:
        endpoint.close()
    if result.graph is not None:
        _write(args.output, graph_to_text(result.graph))
    print(f"verdict: {result.verdict or 'gave up'} "
          f"(primes used: {list(result.primes_used)})", file=sys.stderr)
    return 0 if result.won else 3


def build_parser():
    top = argparse.ArgumentParser(
        prog="graphspectra",
        description="Spectral polynomials of edge-labeled graphs: build, "
                    "simulate, recover, reconstruct, and play the recovery game.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, output=True):
        if output:
            p.add_argument("-o", "--output", default="-",
                           help="output path ('-' for stdout)")

    p = sub.add_parser("curve", help="spectral polynomial of a graph file")
    p.add_argument("graph")
    p.add_argument("--labels", help="'powers-of-two', "
                   "'shuffled-powers-of-two', or comma list")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("tangent-cone", help="lowest homogeneous part")
    p.add_argument("polynomial")
    common(p)
    p.set_defaults(func=_cmd_tangent_cone)

    p = sub.add_parser("evaluate", help="substitute a rational for Y")
    p.add_argument("polynomial")
    p.add_argument("--y", required=True)
    common(p)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("reconstruct", help="graph from a polynomial file")
    p.add_argument("polynomial")
    common(p)
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("simulate", help="level spectra over a window")
    p.add_argument("graph")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--window", default="0:1", help="'rmin:rmax'")
    p.add_argument("--precision-bits", type=int, default=512)
    p.add_argument("--labels")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("cluster", help="split spectra into level multisets")
    p.add_argument("spectra", nargs="+", help="two or more spectrum files")
    common(p)
    p.set_defaults(func=_cmd_cluster)

    p = sub.add_parser("recover", help="polynomial from a cluster file")
    p.add_argument("clusters")
    p.add_argument("--degree-bound", type=int, required=True)
    p.add_argument("--min-levels", type=int)
    common(p)
    p.set_defaults(func=_cmd_recover)

    p = sub.add_parser("separate", help="perturbation experiment on two graphs")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("--epsilon", default="1/1000")
    p.add_argument("--precision-bits", type=int, default=192)
    p.add_argument("--format", choices=("text", "json"), default="text")
    common(p)
    p.set_defaults(func=_cmd_separate)

    p = sub.add_parser("oracle-check", help="forest/quotient coefficient suites")
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_oracle_check)

    p = sub.add_parser("game-serve", help="serve a hidden graph")
    p.add_argument("graph")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=0)
    p.add_argument("--window", default="0:1")
    p.add_argument("--precision-bits", type=int, default=512)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_game_serve)

    p = sub.add_parser("game-solve", help="play against host:port")
    p.add_argument("endpoint")
    common(p)
    p.set_defaults(func=_cmd_game_solve)

    return top


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PrecisionError as exc:
        print(f"precision failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
