"""Command-line interface.

Exit codes: 0 on success, 2 on input/validation errors, 3 when an internal
consistency invariant is violated (a bug, never a property of the input).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

import numpy as np

from . import chull, criteria, falsify, polytope, report, symmetric
from .spectra import (
    Bipartite,
    Multiqudit,
    Spectrum,
    SpectrumError,
    SymmetricMultiqudit,
    SystemDims,
    load_spectrum_json,
    load_spectrum_text,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INVARIANT = 3


class CliInputError(Exception):
    pass


def _add_dims_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--bipartite", nargs=2, type=int, metavar=("N", "M"))
    g.add_argument("--multiqudit", nargs=2, type=int, metavar=("D", "N"))
    g.add_argument("--symmetric", nargs=2, type=int, metavar=("D", "N"))


def _dims_from_args(args) -> SystemDims | None:
    if args.bipartite:
        return Bipartite(*args.bipartite)
    if args.multiqudit:
        return Multiqudit(*args.multiqudit)
    if args.symmetric:
        return SymmetricMultiqudit(*args.symmetric)
    return None


def _load_spectrum(path: str, args) -> tuple[Spectrum, SystemDims]:
    flag_dims = _dims_from_args(args)
    if path.endswith(".json"):
        s, file_dims = load_spectrum_json(path)
        dims = flag_dims or file_dims
    else:
        dims = flag_dims
        s = load_spectrum_text(path, dims)
    if dims is None:
        raise CliInputError("no system layout given (flags or JSON 'dims' key)")
    if len(s) != dims.total_dim:
        raise CliInputError(
            f"spectrum length {len(s)} != total dimension {dims.total_dim}"
        )
    return s, dims


def _emit(payload: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for line in text_lines():
            print(line)


# --- subcommands ----------------------------------------------------------


def _cmd_check(args) -> int:
    s, dims = _load_spectrum(args.spectrum, args)
    rep = report.build_report(s, dims, run_hull=not args.no_hull, tol=args.tol)

    def text():
        for v in rep.verdicts:
            yield (
                f"{v.criterion_id:<14} {'PASS' if v.passed else 'fail':<5} "
                f"slack={v.slack:+.6e}  certifies={v.certifies.value}  [{v.provenance.value}]"
            )
        if rep.hull_certificate is not None:
            h = rep.hull_certificate.to_dict()
            yield f"hull           {'feasible' if h['feasible'] else 'infeasible'} residual={h['residual']:.3e}"
        for note in rep.provenance_notes:
            yield f"note: {note}"
        yield f"aggregate: {rep.aggregate.value}"

    _emit(rep.to_dict(), args.format, text)
    return EXIT_OK


def _cmd_bounds(args) -> int:
    dims = _dims_from_args(args)
    if dims is None:
        raise CliInputError("bounds requires a system layout flag")
    d = dims.total_dim
    if isinstance(dims, Bipartite):
        bounds = criteria.BIPARTITE_ALPHA
        payload = {"kind": "bipartite"}
    elif isinstance(dims, Multiqudit):
        bounds = criteria.multipartite_alpha_bounds(dims.d, dims.n)
        ball = criteria.multipartite_ball_param(dims.d, dims.n)
        payload = {"kind": "multiqudit", "ball_A": ball.A, "ball_source": ball.source.value}
    else:
        bounds = criteria.symmetric_alpha_bounds(dims.d, dims.n)
        payload = {"kind": "symmetric"}
    payload.update(
        {
            "total_dim": d,
            "alpha_minus": bounds.alpha_minus,
            "alpha_plus": bounds.alpha_plus,
            "minus_provenance": bounds.minus_provenance.value,
            "plus_provenance": bounds.plus_provenance.value,
            "min_eig_threshold": 1.0 / (d + bounds.alpha_plus),
            "max_eig_threshold": 1.0 / (d - abs(bounds.alpha_minus)),
        }
    )

    def text():
        for k, v in payload.items():
            yield f"{k}: {v}"

    _emit(payload, args.format, text)
    return EXIT_OK


def _cmd_facets(args) -> int:
    dim = args.dim
    a_minus = Fraction(args.alpha_minus) if args.alpha_minus else Fraction(-1)
    a_plus = Fraction(args.alpha_plus) if args.alpha_plus else Fraction(2)
    vertices = polytope.two_simplex_vertices(dim, a_minus, a_plus)
    if args.brute:
        facets = polytope.brute_force_facets(vertices)
    else:
        facets = [polytope.ordered_sector_facet(dim, a_minus, a_plus)]
    payload = {
        "dim": dim,
        "alpha_minus": str(a_minus),
        "alpha_plus": str(a_plus),
        "facets": [polytope.facet_to_dict(f, vertices) for f in facets],
    }

    def text():
        yield f"dim={dim} alpha=[{a_minus}, {a_plus}]  {len(facets)} facet(s)"
        for f in facets:
            coeffs = " + ".join(
                f"{c}*l{i}" for i, c in enumerate(f.normal) if c != 0
            )
            yield f"  {coeffs} >= {f.offset}"

    _emit(payload, args.format, text)
    return EXIT_OK


def _cmd_solve(args) -> int:
    s, dims = _load_spectrum(args.spectrum, args)
    sets = chull.builtin_sets(dims)
    result = chull.hull_membership(s, sets, tol=args.tol, max_iter=args.max_iter)
    payload = result.to_dict()
    if isinstance(result, chull.DecompositionCertificate):
        if not chull.verify_certificate(s, sets, result, tol=args.tol):
            print("internal error: emitted certificate failed re-verification", file=sys.stderr)
            return EXIT_INVARIANT
        payload["verified"] = True

    def text():
        if payload["feasible"]:
            yield f"feasible  residual={payload['residual']:.3e}  (certificate re-verified)"
            for part in payload["parts"]:
                yield f"  {part['set']}: trace={part['trace']:.6f}"
        else:
            yield (
                f"not decided feasible  best residual={payload['residual']:.3e} "
                f"after {payload['iterations']} iterations (advisory only)"
            )

    _emit(payload, args.format, text)
    return EXIT_OK


def _cmd_falsify(args) -> int:
    s, dims = _load_spectrum(args.spectrum, args)
    if isinstance(dims, SymmetricMultiqudit):
        outcome = falsify.falsify_sap(
            s, dims.d, dims.n, args.samples, args.seed, early_stop=not args.no_early_stop
        )
    else:
        outcome = falsify.falsify_ap(
            s, dims, args.samples, args.seed, early_stop=not args.no_early_stop
        )
    payload = {
        "samples_run": outcome.samples_run,
        "best_min_pt_eig": outcome.best_min_pt_eig,
        "witness_found": outcome.witness_found,
        "witness_sample_index": outcome.witness_sample_index,
        "master_seed": outcome.master_seed,
    }
    if outcome.witness_found:
        if isinstance(dims, SymmetricMultiqudit):
            reproduced = falsify.reproduce_witness(outcome, s, symmetric_dn=(dims.d, dims.n))
        else:
            reproduced = falsify.reproduce_witness(outcome, s, dims=dims)
        if abs(reproduced - outcome.best_min_pt_eig) > 1e-12:
            print("internal error: witness failed seed-replay", file=sys.stderr)
            return EXIT_INVARIANT
        payload["witness_reproduced"] = True

    def text():
        if outcome.witness_found:
            yield (
                f"NPT witness found at sample {outcome.witness_sample_index} "
                f"(min PT eigenvalue {outcome.best_min_pt_eig:.3e}); spectrum is not absolutely PPT"
            )
        else:
            yield (
                f"no witness in {outcome.samples_run} samples "
                f"(best min PT eigenvalue {outcome.best_min_pt_eig:.3e}); inconclusive"
            )

    _emit(payload, args.format, text)
    return EXIT_OK


def _cmd_sym_check(args) -> int:
    s, dims = _load_spectrum(args.spectrum, args)
    if not isinstance(dims, SymmetricMultiqudit):
        raise CliInputError("sym-check requires --symmetric D N")
    verdicts = list(criteria.symmetric_min_max(s, dims.d, dims.n))
    try:
        verdicts.append(criteria.symmetric_ch_facet(s, dims.d, dims.n))
    except criteria.UnsupportedDims:
        pass
    embed_report = symmetric.sap_check_via_embedding(np.diag(s.values), dims.d, dims.n)
    min_pt = min(embed_report.values())
    any_sufficient = any(v.passed for v in verdicts)
    if any_sufficient and min_pt < -falsify.EPS_NEG:
        print(
            "internal error: spectrum criterion passed but the embedded diagonal state is NPT",
            file=sys.stderr,
        )
        return EXIT_INVARIANT
    payload = {
        "verdicts": [
            {"criterion": v.criterion_id, "passed": v.passed, "slack": v.slack}
            for v in verdicts
        ],
        "embedded_min_pt_eig_by_k": {str(k): v for k, v in embed_report.items()},
    }

    def text():
        for v in verdicts:
            yield f"{v.criterion_id:<10} {'PASS' if v.passed else 'fail':<5} slack={v.slack:+.6e}"
        for k, val in embed_report.items():
            yield f"embedded diag state: min PT eigenvalue over {k}-qudit cut = {val:+.6e}"

    _emit(payload, args.format, text)
    return EXIT_OK


def _cmd_scan(args) -> int:
    dims = _dims_from_args(args)
    if not isinstance(dims, Bipartite):
        raise CliInputError("scan requires --bipartite N M")
    rows = report.region_scan_rows(dims, args.samples, args.seed)
    writer = csv.writer(sys.stdout if args.out == "-" else open(args.out, "w", newline=""))
    writer.writerow(["purity", "lambda_min", "class"])
    if args.resolution <= 1:
        for purity, lam_min, cls in rows:
            writer.writerow([f"{purity:.8f}", f"{lam_min:.8f}", cls])
    else:
        d = dims.total_dim
        grid: dict[tuple[int, int], dict[str, int]] = {}
        for purity, lam_min, cls in rows:
            i = min(int(purity * args.resolution), args.resolution - 1)
            j = min(int(lam_min * d * args.resolution), args.resolution - 1)
            grid.setdefault((i, j), {}).setdefault(cls, 0)
            grid[(i, j)][cls] += 1
        for (i, j), counts in sorted(grid.items()):
            cls = max(counts, key=counts.get)
            writer.writerow(
                [
                    f"{(i + 0.5) / args.resolution:.8f}",
                    f"{(j + 0.5) / (d * args.resolution):.8f}",
                    cls,
                ]
            )
    return EXIT_OK


def _add_global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    # Registered on the main parser and again on every subparser so the flags
    # are accepted both before and after the subcommand; the subparser copies
    # use SUPPRESS defaults so they do not clobber values given up front.
    def default(v):
        return argparse.SUPPRESS if suppress else v

    p.add_argument("--format", choices=["json", "text"], default=default("text"))
    p.add_argument("--seed", type=int, default=default(0))
    p.add_argument("--tol", type=float, default=default(1e-9))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="absep",
        description="Certify absolute separability / absolute PPT from eigenvalues.",
    )
    _add_global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        p = sub.add_parser(name, **kw)
        _add_global_flags(p, suppress=True)
        return p

    p = add_parser("check", help="run all applicable criteria on a spectrum")
    p.add_argument("spectrum")
    p.add_argument("--no-hull", action="store_true")
    _add_dims_flags(p)
    p.set_defaults(func=_cmd_check)

    p = add_parser("bounds", help="print map-parameter windows and thresholds")
    _add_dims_flags(p)
    p.set_defaults(func=_cmd_bounds)

    p = add_parser("facets", help="exact hull facets of the two-simplex union")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--alpha-minus", default=None, help="rational, e.g. -2/3")
    p.add_argument("--alpha-plus", default=None, help="rational, e.g. 2/3")
    p.add_argument("--brute", action="store_true", help="enumerate all facets exactly")
    p.set_defaults(func=_cmd_facets)

    p = add_parser("solve", help="hull membership with decomposition certificate")
    p.add_argument("spectrum")
    p.add_argument("--max-iter", type=int, default=100_000)
    _add_dims_flags(p)
    p.set_defaults(func=_cmd_solve)

    p = add_parser("falsify", help="search for NPT witnesses under Haar unitaries")
    p.add_argument("spectrum")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--no-early-stop", action="store_true")
    _add_dims_flags(p)
    p.set_defaults(func=_cmd_falsify)

    p = add_parser("sym-check", help="symmetric criteria plus the embedding oracle")
    p.add_argument("spectrum")
    _add_dims_flags(p)
    p.set_defaults(func=_cmd_sym_check)

    p = add_parser("scan", help="classify random spectra by detecting region (CSV)")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--resolution", type=int, default=1)
    p.add_argument("--out", default="-")
    _add_dims_flags(p)
    p.set_defaults(func=_cmd_scan)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliInputError, SpectrumError, chull.SolverError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (report.ReportInvariantError, AssertionError) as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
