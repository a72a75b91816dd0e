"""Command-line interface.

Exit status: 0 success, 1 validation error, 2 size cap exceeded,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import engine, io, potts, verify
from .errors import TooLarge, ValidationError, VerificationError
from .polynomial import SparsePolynomial

EXIT_OK, EXIT_VALIDATION, EXIT_SIZE, EXIT_VERIFY = 0, 1, 2, 3


def format_number(z) -> str:
    """15 significant digits; the imaginary part only when nonzero."""
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.15g}"
    return f"{z.real:.15g}{z.imag:+.15g}j"


def _emit_poly(p: SparsePolynomial, fmt: str, out):
    if fmt == "json":
        json.dump(p.to_json(), out)
        out.write("\n")
    else:
        out.write(p.to_text() + "\n")


def _exact_or_none(text: str | None):
    if text is None:
        return None
    return io.parse_number(text, "value")


def _graph(args):
    return io.parse_graph_file(Path(args.graph))


def _spec(args):
    return io.parse_spec(io.load_json(Path(args.spec)))


def cmd_vpoly(args, out) -> int:
    g = _graph(args)
    if args.algorithm == "state-sum":
        p = engine.v_state_sum(g, max_edges=args.max_edges)
    elif args.algorithm == "deletion-contraction":
        p = engine.v_deletion_contraction(g, max_edges=args.max_edges)
    else:
        p = engine.v_state_sum(g, max_edges=args.max_edges)
        if p != engine.v_deletion_contraction(g, max_edges=args.max_edges):
            raise VerificationError("state sum and deletion-contraction disagree")
    _emit_poly(p, args.format, out)
    return EXIT_OK


def _method(algorithm: str) -> str:
    return {"state-sum": "state-sum", "deletion-contraction": "v", "both": "both"}[algorithm]


def cmd_wpoly(args, out) -> int:
    p = engine.w_polynomial(_graph(args), _exact_or_none(args.y), method=_method(args.algorithm),
                            max_edges=args.max_edges)
    _emit_poly(p, args.format, out)
    return EXIT_OK


def cmd_upoly(args, out) -> int:
    p = engine.u_polynomial(_graph(args), _exact_or_none(args.y), method=_method(args.algorithm),
                            max_edges=args.max_edges)
    _emit_poly(p, args.format, out)
    return EXIT_OK


def cmd_tutte(args, out) -> int:
    method = {"state-sum": "rank-nullity", "deletion-contraction": "w", "both": "both"}[args.algorithm]
    _emit_poly(engine.tutte_polynomial(_graph(args), method=method, max_edges=args.max_edges), args.format, out)
    return EXIT_OK


def cmd_zt(args, out) -> int:
    theta = _exact_or_none(args.theta)
    result = engine.multivariate_tutte(_graph(args), theta, method=_method(args.algorithm),
                                       max_edges=args.max_edges)
    if isinstance(result, SparsePolynomial):
        _emit_poly(result, args.format, out)
    else:
        out.write(format_number(result) + "\n")
    return EXIT_OK


def cmd_potts(args, out) -> int:
    spec, g = _spec(args), _graph(args)
    caps = {"max_edges": args.max_edges}
    if args.algorithm == "both":
        result = verify.oracle_triangle(spec, g, args.tolerance, max_states=args.max_states, **caps)
        if args.format == "json":
            json.dump({k: io.complex_to_json(v) for k, v in result.values.items()}, out)
            out.write("\n")
        else:
            out.write(f"Z = {format_number(result.values['bruteforce'])}\n")
            for name, value in result.values.items():
                out.write(f"  {name}: {format_number(value)}\n")
        if not result.ok:
            out.write(f"routes disagree: max relative difference {result.max_rel:.3e}\n")
            return EXIT_VERIFY
        return EXIT_OK
    if spec.family is potts.Family.ISING:
        z = potts.ising_partition(spec, g, method="v", **caps)
    elif args.algorithm == "state-sum":
        z = potts.partition_via_v(spec, g, algorithm="state-sum", **caps)
    else:
        z = potts.partition_deletion_contraction(spec, g, **caps)
    if args.format == "json":
        json.dump({"Z": io.complex_to_json(z)}, out)
        out.write("\n")
    else:
        out.write(format_number(z) + "\n")
    return EXIT_OK


def cmd_fk(args, out) -> int:
    spec, g = _spec(args), _graph(args)
    fk = potts.fk_expansion(spec, g, max_edges=args.max_edges)
    if args.format == "json":
        json.dump(
            {
                "prefactor": io.complex_to_json(fk.prefactor),
                "terms": [
                    {
                        "edges": list(t.edges),
                        "components": [w.encode() for w in t.component_weights],
                        "edge_factor": io.complex_to_json(t.edge_factor),
                        "x_product": io.complex_to_json(t.x_product),
                    }
                    for t in fk.terms
                ],
                "total": io.complex_to_json(fk.total()),
            },
            out,
        )
        out.write("\n")
        return EXIT_OK
    out.write("edges\tcomponents\tedge_factor\tx_product\tvalue\n")
    for t in fk.terms:
        edges = ",".join(t.edges) or "-"
        comps = " ".join(w.encode() for w in t.component_weights)
        out.write(
            f"{edges}\t{comps}\t{format_number(t.edge_factor)}\t{format_number(t.x_product)}\t"
            f"{format_number(t.value)}\n"
        )
    if fk.prefactor != 1:
        out.write(f"prefactor\t{format_number(fk.prefactor)}\n")
    out.write(f"total\t{format_number(fk.total())}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    caps = {"max_edges": args.max_edges, "max_states": args.max_states}
    if args.bundle:
        bundle = io.load_json(Path(args.bundle))
        result = verify.verify_bundle(bundle, args.tolerance, **caps)
        spec, g = io.parse_spec(bundle["spec"]), io.parse_graph(bundle["graph"])
    elif args.spec and args.graph:
        spec, g = _spec(args), _graph(args)
        result = verify.oracle_triangle(spec, g, args.tolerance, **caps)
    elif args.spec or args.graph:
        raise ValidationError("verify needs both a spec and a graph, a --bundle, or neither")
    else:
        report = verify.run_random_suite(args.seed, args.cases, args.tolerance, threads=args.threads)
        if report.ok:
            out.write(f"verify: {report.cases} cases agree (seed {report.seed})\n")
            return EXIT_OK
        out.write(f"verify: {len(report.failures)} of {report.cases} cases disagree; first:\n")
        json.dump(report.failures[0], out, indent=2)
        out.write("\n")
        return EXIT_VERIFY
    if result.ok:
        out.write("verify: all routes agree\n")
        return EXIT_OK
    extra = {}
    if result.reference is not None:
        extra["reference"] = {"Z": io.complex_to_json(result.reference)}
    out.write("verify: disagreement; counterexample bundle:\n")
    json.dump(verify.make_bundle(spec, g, result, **extra), out, indent=2)
    out.write("\n")
    return EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algorithm", choices=("state-sum", "deletion-contraction", "both"),
                        default="deletion-contraction")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-edges", type=int, default=None,
                        help="edge cap (default $VPOLY_MAX_EDGES or 24)")
    common.add_argument("--max-states", type=int, default=None, help="state cap (default 2^22)")
    common.add_argument("--tolerance", type=float, default=verify.DEFAULT_TOLERANCE)
    common.add_argument("--threads", type=int, default=1)

    parser = argparse.ArgumentParser(prog="vpoly", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_, fn in (
        ("vpoly", "print the V-polynomial", cmd_vpoly),
        ("tutte", "print the Tutte polynomial T(x, y)", cmd_tutte),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("graph")
        p.set_defaults(func=fn)
    for name, help_, fn in (("wpoly", "print W (integer weights)", cmd_wpoly),
                            ("upoly", "print U (weights ignored)", cmd_upoly)):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("graph")
        p.add_argument("--y", default=None, help="exact value for y (default symbolic)")
        p.set_defaults(func=fn)
    p = sub.add_parser("zt", parents=[common], help="print the multivariate Tutte polynomial")
    p.add_argument("graph")
    p.add_argument("--theta", default=None, help="value for theta (default symbolic)")
    p.set_defaults(func=cmd_zt)
    for name, help_, fn in (("potts", "partition function Z", cmd_potts),
                            ("fk", "Fortuin-Kasteleyn term table", cmd_fk)):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("spec")
        p.add_argument("graph")
        p.set_defaults(func=fn)
    p = sub.add_parser("verify", parents=[common], help="cross-validate all routes")
    p.add_argument("spec", nargs="?")
    p.add_argument("graph", nargs="?")
    p.add_argument("--bundle", default=None, help="replay a JSON bundle (with optional reference Z)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=50)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
