"""Command-line driver.

Exit status: 0 success, 1 invalid input, 2 solver did not converge.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import developing, equations, holonomy, report, solver, triangulation, wirtinger
from .developing import DevelopingError
from .shapes import DegenerateShapeError

log = logging.getLogger("hypgluing")

EXIT_OK, EXIT_INVALID, EXIT_NOCONV = 0, 1, 2

TABLE_NOTE = ("table rows are compared as given; a hand propagation that places "
              "the first vertex of the second-developed tetrahedron at -1+i "
              "disagrees with the cross-ratio, which forces -1")


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


def _parse_seed(text: str) -> complex:
    z = developing.parse_point(text)
    if z is developing.INF:
        raise argparse.ArgumentTypeError("seed must be finite")
    return z


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypgluing", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log solver iterations")
    sub = parser.add_subparsers(dest="command", required=True)

    def tri(p):
        p.add_argument("triangulation", help="triangulation file")

    def solving(p):
        p.add_argument("--curves", required=True, help="cusp curve file")
        p.add_argument("--tol", type=float, default=solver.SolverConfig.tol)
        p.add_argument("--max-iters", type=int, default=solver.SolverConfig.max_iters)
        p.add_argument("--seed", type=_parse_seed, default=None,
                       help="uniform initial shape, e.g. 0.5+0.8i (default i)")

    def output(p):
        p.add_argument("--precision", type=int, default=report.DEFAULT_PRECISION)

    p = sub.add_parser("validate", help="check a triangulation and print orbit counts")
    tri(p)
    p.add_argument("--curves", help="also check a cusp curve file")
    output(p)

    p = sub.add_parser("solve", help="solve gluing and completeness equations")
    tri(p), solving(p), output(p)

    p = sub.add_parser("volume", help="solve and print volumes")
    tri(p), solving(p), output(p)

    for name, helptext in (("develop", "solve and develop into the boundary plane"),
                           ("holonomy", "solve, develop and compute face pairings")):
        p = sub.add_parser(name, help=helptext)
        tri(p), solving(p), output(p)
        p.add_argument("--anchor", type=int, default=0)
        p.add_argument("--compare-table", metavar="FILE", help="coordinate table to compare against")
        if name == "holonomy":
            p.add_argument("--words", help="letter/meridian/relation file")

    p = sub.add_parser("wirtinger", help="Wirtinger presentation of a link file")
    p.add_argument("link", help="link crossing file")
    p.add_argument("--eliminate", action="append", default=[], metavar="G=WORD",
                   help="Tietze elimination, e.g. 'd=b a b^-1' (repeatable, in order)")
    output(p)

    p = sub.add_parser("report", help="run the whole pipeline")
    tri(p), solving(p), output(p)
    p.add_argument("--anchor", type=int, default=0)
    p.add_argument("--compare-table", metavar="FILE")
    p.add_argument("--words", help="letter/meridian/relation file")
    p.add_argument("--link", help="link crossing file for the presentation section")
    p.add_argument("--eliminate", action="append", default=[], metavar="G=WORD")
    return parser


def _load(args, need_curves=True):
    text = _read(args.triangulation)
    t = triangulation.parse_triangulation(text, source=args.triangulation)
    curves = None
    if getattr(args, "curves", None):
        curves = triangulation.parse_cusp_curves(_read(args.curves), t, source=args.curves)
    elif need_curves:
        raise InputError("--curves is required")
    return t, curves


def _solve(args, t, curves, rep):
    sys_ = equations.build_system(t, curves)
    cfg = solver.SolverConfig(max_iters=args.max_iters, tol=args.tol,
                              initial=None if args.seed is None else (args.seed,))
    result = solver.solve(sys_, cfg)
    rep.equations = sys_.equations
    rep.solve = result
    rep.residuals = list(equations.residuals(sys_, result.shapes))
    return result


def _summary(t, rep):
    rep.n_tets = t.n_tets
    rep.n_edges = len(triangulation.edge_classes(t))
    rep.n_cusps = len(triangulation.cusp_classes(t))


def _develop(args, t, result, rep):
    dev = developing.develop(t, result.shapes, args.anchor)
    rep.developing = dev
    if args.compare_table:
        table = developing.parse_table(_read(args.compare_table))
        rep.table_deviation = developing.compare_table(dev, table)
        rep.notes.append(TABLE_NOTE)
    return dev


def _holonomy(args, t, dev, rep):
    if args.words:
        wf = holonomy.parse_word_file(_read(args.words))
        rep.holonomy = holonomy.holonomy(t, dev, wf.letters, wf.meridians, wf.relations)
    else:
        rep.holonomy = holonomy.holonomy(t, dev)


def _wirtinger(link_path, eliminations, rep):
    cl = wirtinger.parse_link(_read(link_path))
    pres = wirtinger.wirtinger_presentation(cl)
    rep.wirtinger = pres
    if eliminations:
        reduced = pres
        for item in eliminations:
            g, sep, word = item.partition("=")
            if not sep:
                raise InputError(f"--eliminate expects G=WORD, got {item!r}")
            reduced = wirtinger.eliminate_generator(reduced, g.strip(), wirtinger.parse_word(word))
        reduced, _ = wirtinger.drop_product_relators(reduced)
        rep.presentation = reduced


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    rep = report.PipelineReport()
    cmd = args.command
    try:
        if cmd == "wirtinger":
            _wirtinger(args.link, args.eliminate, rep)
        else:
            t, curves = _load(args, need_curves=cmd != "validate")
            _summary(t, rep)
            if cmd == "validate":
                stdout.write(f"edges = {rep.n_edges}\ncusps = {rep.n_cusps}\n")
                stdout.write(f"tetrahedra = {rep.n_tets}\n")
                if curves is not None:
                    stdout.write(f"curves = {len(curves)}\n")
                return EXIT_OK
            result = _solve(args, t, curves, rep)
            if cmd in ("volume", "report"):
                rep.volume = report.total_volume(result.shapes)
            if cmd in ("develop", "holonomy", "report"):
                dev = _develop(args, t, result, rep)
                if cmd in ("holonomy", "report"):
                    _holonomy(args, t, dev, rep)
            if cmd == "report":
                rep.source = Path(args.triangulation).name
                if args.link:
                    _wirtinger(args.link, args.eliminate, rep)
    except solver.SolverError as exc:
        print(f"hypgluing: solver: {exc}", file=sys.stderr)
        return EXIT_NOCONV
    except (InputError, triangulation.TriangulationError, DevelopingError,
            DegenerateShapeError, ValueError, KeyError, IndexError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"hypgluing: {msg}", file=sys.stderr)
        return EXIT_INVALID
    stdout.write(report.render(rep, args.precision))
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
