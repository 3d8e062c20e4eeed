"""Command line front end.

Exit status: 0 when the command succeeds (or the axioms hold), 1 when a
check fails, 2 when the input cannot be read or the request is invalid.
Reports go to standard output and errors to standard error.
"""

import argparse
import sys
from pathlib import Path

from . import io
from ._bits import fmt_rank, fmt_set
from .constructions import (boolean_polymatroid, builtin, lattice_path_polymatroid,
                            uniform)
from .core import check_polymatroid_axioms, first_violation, is_connected
from .errors import (AxiomsFailed, InvalidRankTable, NotInteger, ParseError,
                     PolymatroidError)
from .natural import build_natural_matroid
from .vectors import (CircuitSystem, bases, check_basis_axioms, check_circuit_axioms,
                      check_independence_axioms, circuits, independent_vectors,
                      polymatroid_from_circuits, polymatroid_from_vectors)
from .zflats import (RankedCyclicFlatFamily, check_Z_axioms, cyclic_flats,
                     polymatroid_from_cyclic_flats, r_set)

REPRESENTATIONS = ("rank", "bases", "circuits", "zflats")
AXIOMS = ("poly", "I", "B", "Bprime", "middle", "C", "Z", "PZ")


class Fail(Exception):
    """A check ran and came out false (exit 1)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(message)


# -- input ------------------------------------------------------------------

def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _load(path, fmt=None):
    """``(format, text)`` for an input file."""
    text = _read(path)
    fmt = fmt or io.detect_format(None if path == "-" else path, text)
    return fmt, text


def _representation(fmt, text):
    if fmt == "poly":
        return "rank"
    if fmt == "zed":
        return "zflats"
    if fmt == "vec":
        kind = io.read_vec(text)[0]
        return {"independents": "bases"}.get(kind, kind)
    raise ParseError(f"a {fmt} file does not hold a polymatroid; use make")


def _polymatroid(fmt, text, rep=None):
    """Read any representation and return a validated rank table."""
    rep = rep or _representation(fmt, text)
    if rep == "rank":
        if fmt != "poly":
            raise ParseError(f"--from rank needs a poly file, got {fmt}")
        rho = io.read_poly(text)
        err = first_violation(rho.n, rho.ranks)
        if err is not None:
            raise Fail(f"not a polymatroid: {err}")
        return rho
    if fmt == "vec":
        kind, vecs, _, n = io.read_vec(text)
        if rep == "circuits":
            if kind != "circuits":
                raise ParseError(f"--from circuits needs kind=circuits, got {kind}")
            return polymatroid_from_circuits(io.read_circuits(text))
        if rep == "bases":
            if kind == "circuits":
                raise ParseError("--from bases got a circuit file")
            if not vecs:
                raise ParseError("empty vector family")
            verdict = (check_basis_axioms(vecs, "B") if kind == "bases"
                       else check_independence_axioms(vecs))
            if not verdict:
                raise AxiomsFailed(verdict)
            return polymatroid_from_vectors(vecs, n)
    if fmt == "zed" and rep == "zflats":
        family = io.read_zed(text)
        if family.singletons is None:
            raise ParseError("zflats input needs singleton ranks to give a rank table")
        return polymatroid_from_cyclic_flats(family)
    raise ParseError(f"cannot read a {fmt} file as --from {rep}")


def _render(rho, rep):
    if rep == "rank":
        return io.write_poly(rho)
    if rep == "bases":
        return io.write_vec("bases", bases(rho), rho.n)
    if rep == "circuits":
        return io.write_circuits(circuits(rho))
    if rep == "zflats":
        return io.write_zed(RankedCyclicFlatFamily.from_polymatroid(rho))
    raise ParseError(f"unknown representation {rep}")


def _emit(text, out):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _parse_set(text, n):
    text = text.strip()
    if not text.startswith("{"):
        text = "{" + text + "}"
    return io._subset(text, 0, n)


# -- verbs ------------------------------------------------------------------

def cmd_validate(args):
    fmt, text = _load(args.input, args.format)
    rho = _polymatroid(fmt, text, args.from_)
    kind = "integer" if rho.is_integral else "rational"
    print(f"valid {kind} polymatroid: n={rho.n} rank={rho.total_rank}")


def cmd_info(args):
    fmt, text = _load(args.input, args.format)
    rho = _polymatroid(fmt, text, args.from_)
    print(f"n: {rho.n}")
    print(f"rank: {fmt_rank(rho.total_rank)}")
    print(f"loops: {fmt_set(rho.loops)}")
    print(f"connected: {'n/a' if rho.n == 0 else ('yes' if is_connected(rho) else 'no')}")
    print(f"cyclic flats: {len(cyclic_flats(rho))}")
    if rho.is_integral:
        print(f"bases: {len(bases(rho))}")
        print(f"circuits: {len(circuits(rho).circuits)}")
    else:
        print("bases: n/a (rational ranks)")
        print("circuits: n/a (rational ranks)")


def cmd_convert(args):
    fmt, text = _load(args.input, args.format)
    rho = _polymatroid(fmt, text, args.from_)
    _emit(_render(rho, args.to), args.output)


def cmd_natural(args):
    fmt, text = _load(args.input, args.format)
    rho = _polymatroid(fmt, text, args.from_)
    _emit(io.write_poly(build_natural_matroid(rho)), args.output)


def _vector_family(fmt, text, rep_needed):
    """Vectors for a vector-side checker: a VEC file directly, or derived from
    a polymatroid in another representation."""
    if fmt == "vec":
        return io.read_vec(text)[:3]
    rho = _polymatroid(fmt, text)
    if rep_needed == "independents":
        return "independents", independent_vectors(rho), None
    if rep_needed == "circuits":
        system = circuits(rho)
        return "circuits", list(system.circuits), system.bounds
    return "bases", bases(rho), None


def cmd_check(args):
    fmt, text = _load(args.input, args.format)
    ax = args.axioms
    if ax == "poly":
        if fmt != "poly":
            raise ParseError("--axioms poly needs a poly file")
        n, ranks, _ = io.parse_poly_table(text)
        verdict = check_polymatroid_axioms(n, ranks)
    elif ax in ("I", "B", "Bprime", "middle"):
        kind, vecs, _ = _vector_family(fmt, text, "independents" if ax == "I" else "bases")
        if kind == "circuits":
            raise ParseError(f"--axioms {ax} needs independents or bases, got circuits")
        if not vecs:
            print(f"axioms {ax}: FAIL")
            print("nonempty: fail the family is empty")
            raise Fail("empty family")
        verdict = (check_independence_axioms(vecs) if ax == "I"
                   else check_basis_axioms(vecs, ax))
    elif ax == "C":
        kind, vecs, bounds = _vector_family(fmt, text, "circuits")
        if kind != "circuits" or bounds is None:
            raise ParseError("--axioms C needs a circuit file with bounds")
        verdict = check_circuit_axioms(CircuitSystem(bounds, vecs))
    else:
        if fmt == "zed":
            family = io.read_zed(text)
        else:
            family = RankedCyclicFlatFamily.from_polymatroid(_polymatroid(fmt, text))
        mode = "matroid" if ax == "Z" else "polymatroid"
        verdict = check_Z_axioms(family, mode)
    for line in verdict.report_lines():
        print(line)
    if not verdict:
        raise Fail(f"axioms {ax} fail: {', '.join(verdict.failed)}")


def cmd_rset(args):
    fmt, text = _load(args.input, args.format)
    rho = _polymatroid(fmt, text, args.from_)
    a = _parse_set(args.set, rho.n)
    report = r_set(rho, a)
    for line in report.lines(rho):
        print(line)
    if not report.ok:
        raise Fail("structure check failed")


def cmd_make(args):
    name, rest = args.name, args.args
    if name == "boolean":
        if len(rest) != 1:
            raise ParseError("make boolean GRAPH_FILE")
        rho = boolean_polymatroid(io.read_graph(_read(rest[0])))
    elif name == "lattice-path":
        if len(rest) != 1:
            raise ParseError("make lattice-path DIAG_FILE")
        diagram, n = io.read_diag(_read(rest[0]))
        rho = lattice_path_polymatroid(diagram, n)
    elif name == "uniform":
        if len(rest) != 2:
            raise ParseError("make uniform R N")
        try:
            r, n = int(rest[0]), int(rest[1])
        except ValueError:
            raise ParseError("make uniform takes two integers") from None
        if r < 0 or n < 0:
            raise ParseError("make uniform takes non-negative integers")
        rho = uniform(r, n)
    else:
        if rest:
            raise ParseError(f"make {name} takes no arguments")
        rho = builtin(name)
    _emit(_render(rho, args.to), args.output)


# -- parser -----------------------------------------------------------------

def build_parser():
    parser = _Parser(prog="polymat", description="Integer polymatroid toolkit.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def add(name, func, help_, input_=True):
        p = sub.add_parser(name, help=help_)
        if input_:
            p.add_argument("input", help="input file, or - for standard input")
            p.add_argument("--format", choices=io.FORMATS,
                           help="input format (default: by extension, then header)")
            p.add_argument("--from", dest="from_", choices=REPRESENTATIONS,
                           help="representation held by the input (default: detected)")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check that the input is a polymatroid")
    add("info", cmd_info, "rank, connectivity, loops and counts")
    p = add("convert", cmd_convert, "convert between representations")
    p.add_argument("--to", required=True, choices=REPRESENTATIONS)
    p.add_argument("-o", "--output")
    p = add("natural", cmd_natural, "natural matroid with its blocks")
    p.add_argument("-o", "--output")
    p = add("check", cmd_check, "run an axiom checker")
    p.add_argument("--axioms", required=True, choices=AXIOMS)
    p = add("rset", cmd_rset, "the set R(A) of minimising cyclic flats")
    p.add_argument("--set", required=True, help="subset A, e.g. {1,3}")
    p = add("make", cmd_make, "build a named or constructed polymatroid", input_=False)
    p.add_argument("name", help="fano, pg22_lines, vamos2poly, fig1poly, fig2poly, "
                                "fig3poly, uniform R N, boolean GRAPH, lattice-path DIAG")
    p.add_argument("args", nargs="*")
    p.add_argument("--to", default="rank", choices=REPRESENTATIONS)
    p.add_argument("-o", "--output")
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except Fail as exc:
        print(f"polymat: {exc}", file=sys.stderr)
        return 1
    except AxiomsFailed as exc:
        for line in exc.verdict.report_lines():
            print(line)
        print(f"polymat: {exc}", file=sys.stderr)
        return 1
    except NotInteger as exc:
        print(f"polymat: {exc}", file=sys.stderr)
        return 2
    except InvalidRankTable as exc:
        print(f"polymat: {exc}", file=sys.stderr)
        return 1
    except (PolymatroidError, ValueError) as exc:
        print(f"polymat: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else 0
    return 0


def run(argv=None):
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
