"""Command-line interface.

Exit codes: 0 success, 2 unreadable or malformed input, 3 the Barvinok
oracle disagrees with the envelope rank, 4 input above the enumeration
size bound, 5 heights and configuration differ in length.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .complex import DEFAULT_MAX_POINTS, build_secant_complex, complex_stats, to_dot
from .config import PointConfig
from .envelope import upper_envelope
from .errors import DegenerateConfigError, SizeGuardError
from .onedim import bars_from_heights, onedim_faces, onedim_secant_complex, reduce_line_config
from .secant import (barvinok_envelope, barvinok_rank_oracle, min_facet_cover, rank_one_pages,
                     secant_decompose)

EXIT_PARSE = 2
EXIT_DISAGREE = 3
EXIT_GUARD = 4
EXIT_LENGTH = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _matrix(path):
    try:
        return io.load_matrix(path)
    except io.InputError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc


def _config(path, as_basis) -> PointConfig:
    try:
        return io.load_config(path, as_basis=as_basis)
    except (io.InputError, DegenerateConfigError, ValueError, KeyError, TypeError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from exc


def _heights(path, n):
    try:
        x = io.load_heights(path)
    except io.InputError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    if len(x) != n:
        raise CliError(f"{len(x)} heights for {n} points", EXIT_LENGTH)
    return x


def _entry(config, idx):
    return [int(v) for v in config.labels[idx].split(",")]


def cmd_rank(args) -> tuple[dict, int]:
    m = _matrix(args.matrix)
    config, env = barvinok_envelope(m)
    cover = min_facet_cover(env)
    rank = int(cover.cover_number)
    out = {
        "rank": rank,
        "witnessFacets": [[_entry(config, i) for i in env.cells[c].members] for c in cover.witness_cells],
    }
    if args.decompose:
        out["decomposition"] = rank_one_pages(m)
    code = 0
    if args.oracle:
        kmax = args.kmax or min(m.rows, m.cols)
        oracle = barvinok_rank_oracle(m, kmax)
        out["oracleRank"] = oracle
        out["agree"] = oracle == rank
        if oracle != rank:
            code = EXIT_DISAGREE
    return out, code


def cmd_oracle(args) -> tuple[dict, int]:
    m = _matrix(args.matrix)
    kmax = args.kmax or min(m.rows, m.cols)
    return {"oracleRank": barvinok_rank_oracle(m, kmax), "kmax": kmax}, 0


def _membership(args, want_decomposition: bool) -> tuple[dict, int]:
    config = _config(args.config, args.as_basis)
    x = _heights(args.heights, config.n)
    if args.k < 0:
        raise CliError("k must be non-negative", EXIT_PARSE)
    env = upper_envelope(config, x)
    cover = min_facet_cover(env)
    member = cover.cover_number <= args.k + 1
    out = {
        "member": member,
        "coverNumber": cover.cover_number,
        "k": args.k,
        "witnessFacets": ([list(env.cells[i].members) for i in cover.witness_cells]
                          if cover.finite else None),
    }
    if args.envelope:
        out["subdivision"] = io.subdivision_to_json(env)
    if member and want_decomposition:
        dec = secant_decompose(config, config.basis_matrix(), x, args.k)
        out["decomposition"] = [list(s) for s in dec.summands]
    return out, 0


def cmd_member(args):
    return _membership(args, args.decompose)


def cmd_decompose(args):
    out, code = _membership(args, True)
    if not out["member"]:
        raise CliError(f"not in secant variety {args.k}: cover number {out['coverNumber']}", 1)
    return out, code


def _complex(args):
    config = _config(args.config, args.as_basis)
    try:
        sc = build_secant_complex(config, args.k, max_points=args.max_points)
    except SizeGuardError as exc:
        raise CliError(str(exc), EXIT_GUARD) from exc
    return sc, complex_stats(sc)


def _stats_json(st) -> dict:
    return {
        "facetCount": st.facet_count,
        "dims": list(st.dims),
        "pure": st.pure,
        "varietyDim": st.variety_dim,
        "eulerChar": st.euler_char,
        "components": st.components,
    }


def cmd_complex(args) -> tuple[dict, int]:
    sc, st = _complex(args)
    maximal = set(sc.maximal())
    out = {
        "k": sc.k,
        "n": sc.config.n,
        "d": sc.config.d,
        "members": [{
            "index": i,
            "cells": m.subdivision.as_lists(),
            "coneDim": m.cone_dim,
            "complexDim": m.complex_dim,
            "coverNumber": m.cover_number,
            "maximal": i in maximal,
        } for i, m in enumerate(sc.members)],
        "refinementEdges": [list(e) for e in sc.edges],
        "stats": _stats_json(st),
    }
    if sc.trivial is not None:
        out["trivial"] = {"cells": sc.trivial.subdivision.as_lists(), "coneDim": sc.trivial.cone_dim}
    if args.dot:
        Path(args.dot).write_text(to_dot(sc))
    return out, 0


def cmd_stats(args) -> tuple[dict, int]:
    _, st = _complex(args)
    return {"k": args.k, "stats": _stats_json(st)}, 0


def cmd_onedim(args) -> tuple[dict, int]:
    if args.values or args.heights:
        if not (args.values and args.heights):
            raise CliError("--values and --heights go together", EXIT_PARSE)
        try:
            values = io.load_values(args.values)
            heights = io.load_heights(args.heights)
        except io.InputError as exc:
            raise CliError(str(exc), EXIT_PARSE) from exc
        if len(values) != len(heights):
            raise CliError("values and heights differ in length", EXIT_LENGTH)
        try:
            red = reduce_line_config(values, heights)
        except ValueError as exc:
            raise CliError(str(exc), EXIT_PARSE) from exc
        out = {"m": red.config.m, "uncovered": list(red.uncovered)}
        if red.covered:
            try:
                out["bars"] = bars_from_heights(red.config, red.heights)
            except ValueError:
                out["bars"] = None
        return out, 0
    if args.m is None or args.k is None:
        raise CliError("onedim needs --m and --k, or --values and --heights", EXIT_PARSE)
    if args.m < 2:
        raise CliError("m must be at least 2", EXIT_PARSE)
    facets = onedim_secant_complex(args.m, args.k)
    faces = sorted(onedim_faces(args.m, args.k), key=lambda f: (len(f), sorted(f)))
    return {"m": args.m, "k": args.k, "facets": facets, "faces": faces}, 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropsecant", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("rank", help="Barvinok rank of a matrix")
    p.add_argument("matrix")
    p.add_argument("--as-matrix", action="store_true", help="accepted for symmetry; always true here")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--decompose", action="store_true", help="emit the rank-one summands")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("oracle", help="brute-force Barvinok rank")
    p.add_argument("matrix")
    p.add_argument("--kmax", type=int, default=None)
    p.set_defaults(func=cmd_oracle)

    for verb, func, helptext in (("member", cmd_member, "secant variety membership"),
                                 ("decompose", cmd_decompose, "tropical decomposition")):
        p = sub.add_parser(verb, help=helptext)
        p.add_argument("config")
        p.add_argument("heights")
        p.add_argument("-k", "--k", type=int, required=True)
        p.add_argument("--as-basis", action="store_true", help="read CONFIG as a basis matrix")
        p.add_argument("--envelope", action="store_true", help="include the induced subdivision")
        if verb == "member":
            p.add_argument("--decompose", action="store_true")
        p.set_defaults(func=func)

    for verb, func, helptext in (("complex", cmd_complex, "tropical secant complex"),
                                 ("stats", cmd_stats, "statistics of the secant complex")):
        p = sub.add_parser(verb, help=helptext)
        p.add_argument("config")
        p.add_argument("-k", "--k", type=int, required=True)
        p.add_argument("--as-basis", action="store_true", help="read CONFIG as a basis matrix")
        p.add_argument("--max-points", type=int, default=DEFAULT_MAX_POINTS)
        if verb == "complex":
            p.add_argument("--dot", metavar="PATH", help="write the face-incidence graph")
        p.set_defaults(func=func)

    p = sub.add_parser("onedim", help="secant complexes of collinear points")
    p.add_argument("--m", type=int)
    p.add_argument("-k", "--k", type=int)
    p.add_argument("--values")
    p.add_argument("--heights")
    p.set_defaults(func=cmd_onedim)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out, code = args.func(args)
    except CliError as exc:
        print(f"tropsecant: {exc}", file=sys.stderr)
        return exc.code
    sys.stdout.write(io.dumps(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
