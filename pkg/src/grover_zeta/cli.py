"""Command-line interface tying the graph, zeta, and trace-formula modules together.

Exit codes follow a CI-friendly discipline: 0 when every asserted check
passed, 1 when a mathematical identity check failed, and 2 for bad input or
infeasible requests, so regressions and misuse are distinguishable.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys

import numpy as np

from . import __version__
from .cycles import EnumerationBudgetError, enumerate_prime_classes
from .experiments import density_experiment, fuzz_identities
from .graphs import (
    GenerationError,
    GraphFormatError,
    MixedGraph,
    generate,
    orient_random,
    parse_mixed_graph,
    stats,
    strip_orientation,
    to_text,
)
from .linalg import IdentityCheckError, eigenvalues
from .operators import build_bundle, ihara_edge_matrix
from .traceformula import (
    TrigPolynomial,
    evaluate_ahumada,
    evaluate_grover_trace_formula,
    evaluate_twisted_trace_formula,
)
from .zeta import (
    ihara_reciprocal,
    poles_regular,
    series_coefficients,
    spectrum_via_mapping,
    zeta_reciprocal,
    zeta_reciprocal_reduced,
)

MATRIX_NAMES = (
    "adjacency",
    "degree",
    "transition",
    "boundary",
    "coin",
    "shift",
    "grover",
    "hermitian",
    "hermitian_normalized",
    "ihara_edge",
)


def jsonable(obj):
    """Recursively convert reports to JSON-safe structures.

    Complex numbers become [re, im] pairs; arrays become nested lists;
    dataclasses become dicts.
    """
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.complexfloating,)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [jsonable(x) for x in obj.tolist()]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    return obj


def _sorted_complex(values) -> list:
    return sorted((complex(v) for v in values), key=lambda z: (z.real, z.imag))


def _format_complex(z: complex) -> str:
    return f"{z.real!r}{z.imag:+}j"


def _load_graph(args) -> MixedGraph:
    if bool(args.graph) == bool(args.generate):
        raise GraphFormatError("exactly one of --graph FILE or --generate SPEC is required")
    if args.graph:
        with open(args.graph, "r", encoding="utf-8") as fh:
            graph = parse_mixed_graph(fh.read())
        theta = args.theta or "file"
    else:
        graph = generate(args.generate, seed=args.seed)
        theta = args.theta or "zero"

    if theta == "file":
        if not args.graph:
            raise GraphFormatError("--theta file requires --graph")
        return graph
    if theta == "zero":
        return strip_orientation(graph)
    if theta.startswith("random:"):
        parts = theta.split(":")
        if len(parts) != 3:
            raise GraphFormatError("--theta random takes the form random:<seed>:<fraction>")
        try:
            seed, fraction = int(parts[1]), float(parts[2])
        except ValueError:
            raise GraphFormatError(f"bad --theta spec {theta!r}") from None
        return orient_random(strip_orientation(graph), fraction, phases="uniform", seed=seed)
    raise GraphFormatError(f"unknown --theta spec {theta!r} (use zero, random:<seed>:<fraction>, or file)")


def _parse_point(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise GraphFormatError(f"bad evaluation point {text!r}; expected 're' or 're,im'")


# ---------------------------------------------------------------------------
# Subcommand handlers.  Each returns (payload dict, rows-for-csv or None,
# failed flag).
# ---------------------------------------------------------------------------

def _cmd_info(args):
    graph = _load_graph(args)
    st = stats(graph)
    payload = {
        "n": st.n,
        "m": st.m,
        "regular_degree": st.regular_degree,
        "min_degree": st.min_degree,
        "connected": st.connected,
        "girth": st.girth,
        "directed_edges": sum(e.kind == "directed" for e in graph.edges),
        "canonical": to_text(graph),
    }
    return payload, None, False


def _cmd_matrices(args):
    graph = _load_graph(args)
    if args.name == "ihara_edge":
        matrix = ihara_edge_matrix(graph)
    else:
        bundle = build_bundle(graph)
        matrix = bundle.degree_matrix if args.name == "degree" else getattr(bundle, args.name)
    matrix = np.asarray(matrix, dtype=complex)
    payload = {
        "name": args.name,
        "rows": matrix.shape[0],
        "cols": matrix.shape[1],
        "entries": [[jsonable(complex(z)) for z in row] for row in matrix],
    }
    rows = [[_format_complex(complex(z)) for z in row] for row in matrix]
    return payload, rows, False


def _cmd_spectrum(args):
    graph = _load_graph(args)
    bundle = build_bundle(graph)
    mapping = spectrum_via_mapping(bundle, tol=args.tolerance or 1e-7)
    payload = {
        "grover": [jsonable(z) for z in _sorted_complex(mapping.direct)],
        "hermitian": [jsonable(complex(v)) for v in eigenvalues(bundle.hermitian, hermitian=True).values],
        "hermitian_normalized": [
            jsonable(complex(v)) for v in eigenvalues(bundle.hermitian_normalized, hermitian=True).values
        ],
        "mapping_distance": mapping.max_distance,
        "mapping_padding": mapping.padding,
    }
    return payload, None, False


def _cmd_zeta(args):
    graph = _load_graph(args)
    bundle = build_bundle(graph)
    payload = {}
    rows = None
    tol = args.tolerance or 1e-9
    if args.at:
        u = _parse_point(args.at)
        direct = zeta_reciprocal(bundle, u)
        reduced = zeta_reciprocal_reduced(bundle, u, tol_direct=tol)
        payload["at"] = {
            "u": jsonable(u),
            "determinant_form": jsonable(direct),
            "reduced_form": jsonable(reduced),
            "gap": abs(direct - reduced),
        }
    if args.series:
        series = series_coefficients(bundle, args.series)
        payload["series"] = {
            "provenance": series.provenance,
            "coefficients": [jsonable(complex(c)) for c in series.coefficients],
        }
        rows = [[k + 1, c.real, c.imag] for k, c in enumerate(series.coefficients)]
    if args.poles:
        poleset = poles_regular(bundle)
        payload["poles"] = [
            {"pole": jsonable(complex(loc)), "multiplicity": mult} for loc, mult in poleset.poles
        ]
        payload["total_multiplicity"] = poleset.total_multiplicity
    if not payload:
        raise GraphFormatError("zeta requires at least one of --at, --series, --poles")
    return payload, rows, False


def _cmd_cycles(args):
    graph = _load_graph(args)
    classes = enumerate_prime_classes(graph, args.max_length, reduced_only=args.reduced)
    payload = {
        "max_length": args.max_length,
        "reduced_only": args.reduced,
        "count": len(classes),
        "classes": [
            {
                "canonical_arcs": list(c.arcs),
                "length": c.length,
                "weight": jsonable(c.weight),
                "reduced": c.reduced,
            }
            for c in classes
        ],
    }
    return payload, None, False


def _cmd_trace_check(args):
    graph = _load_graph(args)
    h = TrigPolynomial.from_string(args.h)
    if args.theorem == "11":
        report = evaluate_twisted_trace_formula(graph, h, max_length=args.max_length,
                                                oracle_tol=args.tolerance or 1e-8)
    elif args.theorem == "7":
        report = evaluate_grover_trace_formula(graph, h, max_length=args.max_length,
                                               oracle_tol=args.tolerance or 1e-8)
    else:
        report = evaluate_ahumada(graph, h, max_length=args.max_length)
    payload = {"theorem": args.theorem, "h": list(h.coefficients), "report": jsonable(report)}
    return payload, None, False


def _cmd_ihara(args):
    graph = _load_graph(args)
    edge_matrix = ihara_edge_matrix(graph)
    payload = {"edge_matrix_identity": "ok", "dimension": edge_matrix.shape[0]}
    points = [_parse_point(args.at)] if args.at else [0.1 + 0j, 0.2 + 0j, 0.3 + 0j]
    values = []
    for u in points:
        value = ihara_reciprocal(graph, u, tol=args.tolerance or 1e-8)
        values.append({"u": jsonable(u), "reciprocal": jsonable(value)})
    payload["values"] = values
    return payload, None, False


def _cmd_density(args):
    sizes = [int(tok) for tok in args.sizes.split(",")]
    report = density_experiment(args.q, sizes, bin_width=args.bins, seed=args.seed)
    payload = jsonable(report)
    centers = 0.5 * (report.bin_edges[:-1] + report.bin_edges[1:])
    rows = [
        [center] + [emp[i] for emp in report.empirical] + [ref]
        for i, (center, ref) in enumerate(zip(centers, report.reference))
    ]
    return payload, rows, False


def _cmd_fuzz(args):
    summary = fuzz_identities(args.count, seed=args.seed)
    payload = jsonable(summary)
    payload["ok"] = summary.ok
    return payload, None, not summary.ok


def _render_text(payload, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for key, value in payload.items():
            if isinstance(value, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.append(_render_text(value, indent + 1))
            else:
                shown = "inf" if key == "girth" and value is None else value
                lines.append(f"{pad}{key}: {shown}")
        return "\n".join(lines)
    if isinstance(payload, list):
        return "\n".join(_render_text(item, indent) if isinstance(item, (dict, list))
                         else f"{pad}- {item}" for item in payload)
    return f"{pad}{payload}"


def _emit(payload, rows, args) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        if rows is None:
            raise GraphFormatError("csv output is not available for this subcommand")
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        writer.writerows(rows)
        text = buffer.getvalue()
    else:
        text = _render_text(payload) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", metavar="FILE", help="graph file to load")
    common.add_argument("--generate", metavar="SPEC",
                        help="generator spec, e.g. complete:4, cycle:5, petersen, "
                             "circulant:8:1,2, random_regular:10:3")
    common.add_argument("--theta", metavar="SPEC",
                        help="phase source: zero, random:<seed>:<fraction>, or file")
    common.add_argument("--seed", type=int, default=None, help="seed for random generation")
    common.add_argument("--tolerance", type=float, default=None, help="identity-check tolerance override")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="grover-zeta",
        description="Twisted Grover walk zeta functions and trace-formula checks on mixed graphs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common],
                       help="graph statistics (order, size, regularity, girth)")
    p.set_defaults(handler=_cmd_info)

    p = sub.add_parser("matrices", parents=[common],
                       help="dump a walk operator matrix (boundary/coin/shift algebra)")
    p.add_argument("--name", choices=MATRIX_NAMES, required=True)
    p.set_defaults(handler=_cmd_matrices)

    p = sub.add_parser("spectrum", parents=[common],
                       help="walk spectrum and its reconstruction from the Hermitian "
                            "adjacency spectrum (spectral mapping identity)")
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("zeta", parents=[common],
                       help="evaluate the twisted zeta function: the 2m-determinant and "
                            "reduced n-determinant forms must agree (determinant identity), "
                            "plus log-series coefficients and the regular-graph pole set")
    p.add_argument("--at", metavar="RE[,IM]", help="evaluation point u")
    p.add_argument("--series", type=int, metavar="L", help="print N_1..N_L closed-walk coefficients")
    p.add_argument("--poles", action="store_true", help="print the pole set (regular graphs)")
    p.set_defaults(handler=_cmd_zeta)

    p = sub.add_parser("cycles", parents=[common],
                       help="enumerate prime cycle classes with their weights (Euler product side)")
    p.add_argument("--max-length", type=int, default=6)
    p.add_argument("--reduced", action="store_true", help="restrict to reduced cycles")
    p.set_defaults(handler=_cmd_cycles)

    p = sub.add_parser("trace-check", parents=[common],
                       help="evaluate a trace formula: 11 = twisted walk (phased edges), "
                            "7 = phase-free Grover walk, 2 = adjacency/Ahumada; reports the "
                            "stated right-hand side, its residual, and the closed-walk oracle")
    p.add_argument("--theorem", choices=("11", "7", "2"), required=True)
    p.add_argument("--h", default="1", metavar="A0,A1,...",
                   help="cosine coefficients of the test polynomial")
    p.add_argument("--max-length", type=int, default=None)
    p.set_defaults(handler=_cmd_trace_check)

    p = sub.add_parser("ihara", parents=[common],
                       help="classical Ihara zeta via the non-backtracking edge matrix; "
                            "checks the positive-support identity and, on regular graphs, "
                            "the Ihara polynomial form")
    p.add_argument("--at", metavar="RE[,IM]", help="evaluation point u")
    p.set_defaults(handler=_cmd_ihara)

    p = sub.add_parser("density", parents=[common],
                       help="eigenvalue histograms of random regular graphs against the "
                            "limiting (McKay) density")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--sizes", default="100,1000", metavar="N1,N2,...")
    p.add_argument("--bins", type=float, default=0.25)
    p.set_defaults(handler=_cmd_density)

    p = sub.add_parser("fuzz", parents=[common],
                       help="random mixed graphs through the whole identity suite "
                            "(determinant identity, operator algebra, spectral mapping, "
                            "closed-walk counts, Euler product, spectral bounds)")
    p.add_argument("--count", type=int, default=50)
    p.set_defaults(handler=_cmd_fuzz)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, rows, failed = args.handler(args)
    except (GraphFormatError, GenerationError, ValueError, OSError, EnumerationBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IdentityCheckError as exc:
        print(f"identity check failed: {exc}", file=sys.stderr)
        return 1
    _emit(payload, rows, args)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
