"""Command line interface: ``tensor-perron <command> INPUT [options]``.

Exit codes: 0 success, 1 invalid input (parse error, reducible tensor,
malformed vector), 2 computation failure (no convergence, no circuit).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bounds import contains, full_report
from .digraph import build_digraph, girth, is_weakly_irreducible, mean_cycle
from .exceptions import (
    ConvergenceError,
    NoCircuitError,
    NotWeaklyIrreducibleError,
    TensorFormatError,
)
from .hypergraph import hypergraph_tensor, is_connected, read_hypergraph
from .spectral import IterationConfig, perron_pair
from .tensor_core import check_positive_vector, read_tensor, slice_sums

EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 1, 2


class InputError(Exception):
    pass


def _dump(doc, out) -> None:
    out.write(json.dumps(doc, indent=2) + "\n")


def _floats(values):
    return [float(v) for v in values]


def _load(args):
    """Return ``(tensor, hypergraph_or_None)`` for the input path."""
    try:
        if args.hypergraph:
            h = read_hypergraph(args.input)
            return hypergraph_tensor(h, args.which), h
        return read_tensor(args.input), None
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from None


def _config(args) -> IterationConfig:
    try:
        return IterationConfig(tolerance=args.tolerance, max_iterations=args.max_iter, shift=args.shift)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _read_vector(path, n, name):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        return check_positive_vector(data, n, name)
    except (OSError, ValueError, TypeError) as exc:
        raise InputError(f"{name} vector {path}: {exc}") from None


def cmd_check(args, out):
    t, h = _load(args)
    g = build_digraph(t)
    try:
        g_len = girth(g)
    except NoCircuitError:
        g_len = None
    doc = {}
    if h is not None:
        doc["connected"] = bool(is_connected(h))
        doc["k"] = h.k
        doc["edges"] = len(h.edges)
    doc.update(
        weakly_irreducible=bool(is_weakly_irreducible(g)),
        vertices=g.n_vertices,
        arcs=g.n_arcs,
        girth=g_len,
    )
    _dump(doc, out)
    return EXIT_OK


def cmd_digraph(args, out):
    t, _ = _load(args)
    for line in build_digraph(t).edge_lines():
        out.write(line + "\n")
    return EXIT_OK


def cmd_girth(args, out):
    t, _ = _load(args)
    _dump({"girth": girth(build_digraph(t))}, out)
    return EXIT_OK


def cmd_mean_cycle(args, out):
    t, _ = _load(args)
    g = build_digraph(t)
    w = slice_sums(t) if args.weights is None else _read_vector(args.weights, t.dim, "weights")
    value, witness = mean_cycle(g, w, args.sense)
    _dump({"sense": args.sense, "value": value, "witness": list(witness.vertices)}, out)
    return EXIT_OK


def cmd_rho(args, out):
    t, _ = _load(args)
    pair = perron_pair(t, _config(args))
    _dump(
        {
            "rho": pair.rho,
            "bracket": [pair.bracket_low, pair.bracket_high],
            "iterations": pair.iterations,
            "residual": pair.residual,
            "vector": _floats(pair.vector),
        },
        out,
    )
    return EXIT_OK


def cmd_bounds(args, out):
    t, _ = _load(args)
    cfg = _config(args)
    x = None
    if args.x == "perron":
        x = perron_pair(t, cfg).vector
    elif args.x is not None:
        x = _read_vector(args.x, t.dim, "x")
    report = full_report(t, cfg, x)
    if args.format == "json":
        _dump(report.to_json_dict(), out)
        return EXIT_OK

    def wit(c):
        return "-" if c is None else str(c)

    rows = [("theorem", "low", "high", "low_witness", "high_witness", "contains_rho")]
    for iv in report.intervals:
        rows.append(
            (
                iv.theorem.value,
                f"{iv.low:.17g}",
                f"{iv.high:.17g}",
                wit(iv.low_witness),
                wit(iv.high_witness),
                str(contains(iv, report.rho)).lower(),
            )
        )
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    out.write(f"rho = {report.rho:.17g}\n")
    for r in rows:
        out.write("  ".join(cell.ljust(wd) for cell, wd in zip(r, widths)).rstrip() + "\n")
    return EXIT_OK


def cmd_hypergraph(args, out):
    h = read_hypergraph(args.input)
    _dump(hypergraph_tensor(h, args.which).to_json_dict(), out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="tensor JSON file, or hypergraph text file with --hypergraph")
    common.add_argument("--hypergraph", action="store_true", help="input is a k-uniform hypergraph")
    common.add_argument("--which", choices=("adjacency", "laplacian"), default="adjacency")

    iteration = argparse.ArgumentParser(add_help=False)
    iteration.add_argument("--tolerance", type=float, default=1e-10)
    iteration.add_argument("--max-iter", type=int, default=100_000)
    iteration.add_argument("--shift", type=float, default=1.0)

    parser = argparse.ArgumentParser(
        prog="tensor-perron",
        description="Spectral radius and digraph-circuit bounds for nonnegative tensors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="weak irreducibility and digraph statistics")
    p.set_defaults(func=cmd_check)
    p = sub.add_parser("digraph", parents=[common], help="print the tensor digraph as 'i j' lines")
    p.set_defaults(func=cmd_digraph)
    p = sub.add_parser("girth", parents=[common], help="shortest circuit length")
    p.set_defaults(func=cmd_girth)
    p = sub.add_parser("mean-cycle", parents=[common], help="extremal geometric circuit mean")
    p.add_argument("--sense", choices=("min", "max"), default="min")
    p.add_argument("--weights", help="JSON array of positive vertex weights (default: slice sums)")
    p.set_defaults(func=cmd_mean_cycle)
    p = sub.add_parser("rho", parents=[common, iteration], help="Perron pair by shifted power iteration")
    p.set_defaults(func=cmd_rho)
    p = sub.add_parser("bounds", parents=[common, iteration], help="certified bound report")
    p.add_argument("--x", help="JSON array test vector for the scaled circuit bound, or 'perron'")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_bounds)
    p = sub.add_parser("hypergraph", help="emit the adjacency or signless Laplacian tensor as JSON")
    p.add_argument("input", help="hypergraph text file")
    p.add_argument("--which", choices=("adjacency", "laplacian"), default="adjacency")
    p.set_defaults(func=cmd_hypergraph)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (TensorFormatError, InputError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except NotWeaklyIrreducibleError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except ConvergenceError as exc:
        _dump({"error": str(exc), "bracket": list(exc.bracket), "iterations": exc.iterations}, out)
        return EXIT_FAILED
    except NoCircuitError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
