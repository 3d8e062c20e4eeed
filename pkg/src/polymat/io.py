"""Text formats: POLY, VEC, ZED, GRAPH and DIAG (all version 1).

Every writer produces canonical text: LF line endings, no trailing
whitespace, subsets in increasing mask order and vectors sorted
lexicographically, so equal objects serialize to identical bytes.
"""

import re
from pathlib import Path
from typing import NamedTuple

from ._bits import exact, fmt_rank, fmt_set, to_mask
from .constructions import BipartiteGraph, LatticePathDiagram
from .core import Matroid, Polymatroid, check_capacity
from .errors import ParseError
from .vectors import CircuitSystem
from .zflats import RankedCyclicFlatFamily

FORMATS = ("poly", "vec", "zed", "graph", "diag")
EXTENSIONS = {".poly": "poly", ".vec": "vec", ".zed": "zed",
              ".graph": "graph", ".diag": "diag"}
HEADERS = {"poly": "poly", "vectors": "vec", "zflats": "zed",
           "graph": "graph", "diagram": "diag", "edge": "graph", "row": "diag"}

_SET = re.compile(r"^\{([0-9,\s]*)\}$")
_HEADER_FIELD = re.compile(r"^(\w+)=(\S+)$")


def _lines(text):
    """Non-blank, non-comment lines with their 1-based line numbers."""
    for no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if line and not line.startswith("#"):
            yield no, line


_RANK = re.compile(r"^\d+(/[1-9]\d*)?$")


def _rank(token, no):
    """An integer or ``p/q``; decimals are rejected."""
    if not _RANK.match(token):
        raise ParseError(f"line {no}: bad rank {token!r}")
    return exact(token)


def _int(token, no, what="integer"):
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"line {no}: bad {what} {token!r}") from None
    return value


def _subset(token, no, n):
    m = _SET.match(token.strip())
    if not m:
        raise ParseError(f"line {no}: bad subset {token!r}")
    body = m.group(1).strip()
    elems = [_int(t, no, "element") for t in body.split(",")] if body else []
    for e in elems:
        if not 1 <= e <= n:
            raise ParseError(f"line {no}: element {e} outside 1..{n}")
    if len(set(elems)) != len(elems):
        raise ParseError(f"line {no}: repeated element in {token!r}")
    return to_mask(elems)


def _header(lines, word):
    """Parse ``word key=value ...`` from the first line."""
    if not lines:
        raise ParseError("empty input")
    no, line = lines[0]
    parts = line.split()
    if parts[0] != word:
        raise ParseError(f"line {no}: expected header starting with {word!r}")
    fields = {}
    for part in parts[1:]:
        m = _HEADER_FIELD.match(part)
        if not m:
            raise ParseError(f"line {no}: bad header field {part!r}")
        fields[m.group(1)] = m.group(2)
    return fields


def _header_int(fields, key, no=1):
    if key not in fields:
        raise ParseError(f"line {no}: header lacks {key}=")
    value = _int(fields[key], no, key)
    if value < 0:
        raise ParseError(f"line {no}: {key} must be non-negative")
    return value


def detect_format(path=None, text=None):
    if path is not None:
        fmt = EXTENSIONS.get(Path(path).suffix.lower())
        if fmt:
            return fmt
    if text is not None:
        for _, line in _lines(text):
            fmt = HEADERS.get(line.split()[0])
            if fmt:
                return fmt
            break
    raise ParseError("cannot tell the input format; use --format")


# -- POLY -------------------------------------------------------------------

def parse_poly_table(text):
    """``(n, ranks, blocks)`` without checking the axioms.

    ``blocks`` is ``None`` unless a ``blocks`` section is present.
    """
    lines = list(_lines(text))
    n = _header_int(_header(lines, "poly"), "n", lines[0][0])
    check_capacity(n)
    ranks = [None] * (1 << n)
    blocks, body = None, lines[1:]
    for k, (no, line) in enumerate(body):
        if line == "blocks":
            blocks = _parse_blocks(body[k + 1:], n)
            break
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"line {no}: expected '{{...}}: rank'")
        mask = _subset(key, no, n)
        if ranks[mask] is not None:
            raise ParseError(f"line {no}: duplicate subset {fmt_set(mask)}")
        ranks[mask] = _rank(value.strip(), no)
    missing = [m for m, r in enumerate(ranks) if r is None]
    if missing:
        raise ParseError(f"missing subset {fmt_set(missing[0])}"
                         + (f" and {len(missing) - 1} more" if len(missing) > 1 else ""))
    return n, ranks, blocks


_PAIR = re.compile(r"^\((\d+),(\d+)\)$")


def _parse_blocks(lines, m):
    blocks, pos, expect = [], 0, 1
    for no, line in lines:
        head, sep, rest = line.partition(":")
        parts = head.split()
        if not sep or len(parts) != 2 or parts[0] != "block":
            raise ParseError(f"line {no}: expected 'block i: (i,1) ...'")
        i = _int(parts[1], no, "block index")
        if i != expect:
            raise ParseError(f"line {no}: block {expect} expected, got {i}")
        mask = 0
        for t, token in enumerate(rest.split(), start=1):
            pm = _PAIR.match(token)
            if not pm or (int(pm.group(1)), int(pm.group(2))) != (i, t):
                raise ParseError(f"line {no}: expected ({i},{t}), got {token!r}")
            mask |= 1 << pos
            pos += 1
        blocks.append(mask)
        expect += 1
    if pos != m:
        raise ParseError(f"blocks cover {pos} elements, ground set has {m}")
    return tuple(blocks)


def read_poly(text):
    """Parse POLY text into a Polymatroid (or a Matroid when blocks are given).

    Axioms are not checked here; see :func:`polymat.core.validate`.
    """
    n, ranks, blocks = parse_poly_table(text)
    if blocks is None:
        return Polymatroid(n, ranks)
    labels = tuple((i, t) for i, b in enumerate(blocks, start=1)
                   for t in range(1, bin(b).count("1") + 1))
    return Matroid(n, ranks, labels, blocks)


def write_poly(rho):
    out = [f"poly n={rho.n}"]
    out += [f"{fmt_set(m)}: {fmt_rank(r)}" for m, r in enumerate(rho.ranks)]
    blocks = getattr(rho, "blocks", None)
    if blocks is not None:
        out.append("blocks")
        for i, b in enumerate(blocks, start=1):
            size = bin(b).count("1")
            cells = " ".join(f"({i},{t})" for t in range(1, size + 1))
            out.append(f"block {i}:" + (f" {cells}" if cells else ""))
    return "\n".join(out) + "\n"


# -- VEC --------------------------------------------------------------------

VEC_KINDS = ("bases", "circuits", "independents")


def _vector(token_line, no, n):
    if token_line == "()":
        vec = ()
    else:
        vec = tuple(_int(t, no, "entry") for t in token_line.split())
    if len(vec) != n:
        raise ParseError(f"line {no}: vector of length {len(vec)}, expected {n}")
    if any(v < 0 for v in vec):
        raise ParseError(f"line {no}: negative entry")
    return vec


class VecFile(NamedTuple):
    kind: str
    vectors: list
    bounds: tuple
    n: int


def read_vec(text):
    """A :class:`VecFile`; ``bounds`` is ``None`` when absent."""
    lines = list(_lines(text))
    fields = _header(lines, "vectors")
    n = _header_int(fields, "n", lines[0][0])
    kind = fields.get("kind")
    if kind not in VEC_KINDS:
        raise ParseError(f"line {lines[0][0]}: kind must be one of {', '.join(VEC_KINDS)}")
    bounds, vecs = None, []
    for no, line in lines[1:]:
        if line.startswith("bounds:"):
            if bounds is not None or vecs:
                raise ParseError(f"line {no}: bounds must come once, before the vectors")
            bounds = _vector(line[len("bounds:"):].strip() or "()", no, n)
            continue
        if line.startswith("circuit:"):
            line = line[len("circuit:"):].strip() or "()"
        vecs.append(_vector(line, no, n))
    if len(set(vecs)) != len(vecs):
        raise ParseError("duplicate vector")
    return VecFile(kind, sorted(vecs), bounds, n)


def _fmt_vec(vec):
    return " ".join(map(str, vec)) if vec else "()"


def write_vec(kind, vectors, n, bounds=None):
    out = [f"vectors n={n} kind={kind}"]
    if bounds is not None:
        out.append("bounds: " + _fmt_vec(bounds) if bounds else "bounds: ()")
    out += [_fmt_vec(v) for v in sorted(set(map(tuple, vectors)))]
    return "\n".join(out) + "\n"


def write_circuits(system):
    return write_vec("circuits", system.circuits, system.n, system.bounds)


def read_circuits(text):
    kind, vecs, bounds, _ = read_vec(text)
    if kind != "circuits":
        raise ParseError(f"expected kind=circuits, got kind={kind}")
    if bounds is None:
        raise ParseError("circuit files need a bounds: line")
    return CircuitSystem(bounds, vecs)


# -- ZED --------------------------------------------------------------------

def read_zed(text):
    lines = list(_lines(text))
    n = _header_int(_header(lines, "zflats"), "n", lines[0][0])
    ranks, singles = {}, {}
    for no, line in lines[1:]:
        head, sep, value = line.partition(":")
        if not sep:
            raise ParseError(f"line {no}: expected 'flat {{...}}: r' or 'singleton i: r'")
        word, _, arg = head.strip().partition(" ")
        if word == "flat":
            mask = _subset(arg, no, n)
            if mask in ranks:
                raise ParseError(f"line {no}: duplicate flat {fmt_set(mask)}")
            ranks[mask] = _rank(value.strip(), no)
        elif word == "singleton":
            i = _int(arg.strip(), no, "element")
            if not 1 <= i <= n:
                raise ParseError(f"line {no}: element {i} outside 1..{n}")
            if i in singles:
                raise ParseError(f"line {no}: duplicate singleton {i}")
            singles[i] = _rank(value.strip(), no)
        else:
            raise ParseError(f"line {no}: unknown entry {word!r}")
    singletons = None
    if singles:
        if len(singles) != n:
            absent = min(set(range(1, n + 1)) - set(singles))
            raise ParseError(f"singleton {absent} has no rank")
        singletons = tuple(singles[i] for i in range(1, n + 1))
    return RankedCyclicFlatFamily(n, ranks, singletons)


def write_zed(family):
    out = [f"zflats n={family.n}"]
    out += [f"flat {fmt_set(m)}: {fmt_rank(family.ranks[m])}" for m in sorted(family.ranks)]
    if family.singletons is not None:
        out += [f"singleton {i}: {fmt_rank(r)}"
                for i, r in enumerate(family.singletons, start=1)]
    return "\n".join(out) + "\n"


# -- GRAPH and DIAG ---------------------------------------------------------

def read_graph(text):
    lines = list(_lines(text))
    n = k = None
    if lines and lines[0][1].split()[0] == "graph":
        fields = _header(lines, "graph")
        n, k = _header_int(fields, "n"), _header_int(fields, "k")
        lines = lines[1:]
    edges = set()
    for no, line in lines:
        parts = line.split()
        if len(parts) != 3 or parts[0] != "edge":
            raise ParseError(f"line {no}: expected 'edge e h'")
        edges.add((_int(parts[1], no, "element"), _int(parts[2], no, "vertex")))
    if n is None:
        n = max((e for e, _ in edges), default=0)
        k = max((h for _, h in edges), default=0)
    try:
        return BipartiteGraph(n, k, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def write_graph(graph):
    out = [f"graph n={graph.n} k={graph.k}"]
    out += [f"edge {e} {h}" for e, h in sorted(graph.edges)]
    return "\n".join(out) + "\n"


def read_diag(text):
    """``(diagram, n)``; without a header ``n`` is the largest right end."""
    lines = list(_lines(text))
    n = None
    if lines and lines[0][1].split()[0] == "diagram":
        n = _header_int(_header(lines, "diagram"), "n")
        lines = lines[1:]
    rows = []
    for no, line in lines:
        parts = line.split()
        if len(parts) != 3 or parts[0] != "row":
            raise ParseError(f"line {no}: expected 'row a b'")
        rows.append((_int(parts[1], no, "a"), _int(parts[2], no, "b")))
    if n is None:
        n = max((b for _, b in rows), default=0)
    return LatticePathDiagram(rows), n


def write_diag(diagram, n):
    out = [f"diagram n={n}"] + [f"row {a} {b}" for a, b in diagram.rows]
    return "\n".join(out) + "\n"
