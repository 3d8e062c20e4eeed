"""Builders for polymatroid families and small named examples."""

from dataclasses import dataclass
from itertools import combinations

from ._bits import popcount, spread_masks, to_mask
from .core import Matroid, Polymatroid, check_capacity
from .errors import (MalformedDiagram, NotAMatroid, UnknownMatroidElement,
                     UnknownName)


def gf2_rank(vectors):
    """Rank over GF(2) of integers read as bit vectors."""
    basis = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def binary_matroid(columns, labels=None):
    """Matroid represented over GF(2) by ``columns`` (ints as bit vectors)."""
    n = len(columns)
    check_capacity(n)
    # Rank of X from rank of X minus its lowest element: carry reduced bases.
    bases = [()] * (1 << n)
    ranks = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        basis = bases[m ^ low]
        v = columns[low.bit_length() - 1]
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis = basis + (v,)
        bases[m] = basis
        ranks[m] = len(basis)
    return Matroid(n, ranks, labels)


def uniform(r, n):
    check_capacity(n)
    return Matroid(n, [min(popcount(m), r) for m in range(1 << n)])


def induced_polymatroid(matroid, phi):
    """``rho(A) = r_M(union of phi(e) for e in A)``.

    ``phi`` lists, for each new element in order, a subset of the matroid's
    ground set given as a bitmask or an iterable of 1-based elements.
    """
    if not matroid.is_matroid:
        raise NotAMatroid("induced_polymatroid needs a matroid")
    images = []
    for img in phi:
        if isinstance(img, int):
            if img < 0 or img > matroid.full:
                raise UnknownMatroidElement(f"mask {img} outside the matroid")
            images.append(img)
        else:
            img = tuple(img)
            if any(not 1 <= e <= matroid.n for e in img):
                raise UnknownMatroidElement(f"{img} not inside 1..{matroid.n}")
            images.append(to_mask(img))
    n = len(images)
    check_capacity(n)
    unions = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        unions[m] = unions[m ^ low] | images[low.bit_length() - 1]
    return Polymatroid(n, [matroid.ranks[u] for u in unions])


@dataclass(frozen=True)
class BipartiteGraph:
    """Left vertices ``1..n`` (polymatroid elements), right vertices ``1..k``."""

    n: int
    k: int
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        for e, h in self.edges:
            if not (1 <= e <= self.n and 1 <= h <= self.k):
                raise ValueError(f"edge ({e},{h}) outside {self.n}x{self.k}")

    def neighbours(self, e):
        return frozenset(h for (x, h) in self.edges if x == e)


def boolean_polymatroid(graph):
    """``rho(A) = |N(A)|`` for the neighbourhoods of a bipartite graph."""
    check_capacity(graph.n)
    nb = [to_mask(graph.neighbours(e)) for e in range(1, graph.n + 1)]
    unions = [0] * (1 << graph.n)
    for m in range(1, 1 << graph.n):
        low = m & -m
        unions[m] = unions[m ^ low] | nb[low.bit_length() - 1]
    return Polymatroid(graph.n, [popcount(u) for u in unions])


def rank_one_matroids(graph):
    """The k rank-one matroids whose rank functions sum to the Boolean polymatroid."""
    out = []
    for h in range(1, graph.k + 1):
        live = to_mask(e for (e, x) in graph.edges if x == h)
        out.append(Matroid(graph.n, [1 if m & live else 0 for m in range(1 << graph.n)]))
    return out


@dataclass(frozen=True)
class LatticePathDiagram:
    """Rows ``(a_h, b_h)``: row ``h`` allows a north step at any x in ``[a_h, b_h]``."""

    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))

    def check(self, n):
        prev = (1, 1)
        for h, (a, b) in enumerate(self.rows, start=1):
            if not 1 <= a <= b <= n:
                raise MalformedDiagram(f"row {h}: need 1 <= a <= b <= {n}, got ({a},{b})")
            if a < prev[0] or b < prev[1]:
                raise MalformedDiagram(f"row {h}: interval ends must be non-decreasing")
            prev = (a, b)


def lattice_path_polymatroid(diagram, n):
    diagram.check(n)
    edges = {(e, h) for h, (a, b) in enumerate(diagram.rows, start=1)
             for e in range(a, b + 1)}
    return boolean_polymatroid(BipartiteGraph(n, len(diagram.rows), edges))


def count_lattice_paths(diagram, n):
    """Number of monotone lattice paths through the diagram.

    A path is fixed by the x-coordinates of its north steps, one per row,
    which must be non-decreasing and lie in the row's interval.
    """
    diagram.check(n)
    ways = {1: 1}  # x-position reached -> number of path prefixes
    for a, b in diagram.rows:
        nxt = {}
        running = 0
        for x in range(1, n + 1):
            running += ways.get(x, 0)
            if a <= x <= b and running:
                nxt[x] = running
        ways = nxt
    return sum(ways.values())


# -- named examples --------------------------------------------------------

FANO_LINES = tuple(sorted(
    (a, b, a ^ b) for a, b in combinations(range(1, 8), 2) if a < b < a ^ b))


def fano():
    """The Fano plane; element ``p`` is the nonzero vector of GF(2)^3 with value ``p``."""
    return binary_matroid(list(range(1, 8)))


def pg22_lines():
    """The seven lines of PG(2,2), each a rank-2 element."""
    return induced_polymatroid(fano(), FANO_LINES)


def vamos2poly():
    """Four lines ``a,b,c,d`` in rank 4, pairwise coplanar except ``a,d``."""
    ranks = []
    for m in range(16):
        size = popcount(m)
        if size == 0:
            ranks.append(0)
        elif size == 1:
            ranks.append(2)
        elif size == 2:
            ranks.append(4 if m == 0b1001 else 3)
        else:
            ranks.append(4)
    return Polymatroid(4, ranks, labels="abcd")


FIG2_CIRCUITS = ((2, 0, 2), (2, 1, 1), (0, 1, 2))
FIG2_BOUNDS = (2, 1, 2)


def fig2poly():
    """Two coplanar lines 1 and 3 with a point 2 on line 3."""
    from .vectors import CircuitSystem, polymatroid_from_circuits
    return polymatroid_from_circuits(CircuitSystem(FIG2_BOUNDS, FIG2_CIRCUITS))


FIG1_NEIGHBOURS = ({1}, {1}, {1, 2}, {1, 2}, {2, 3}, {2, 3}, {3})


def fig1_graph():
    edges = {(e, h) for e, nb in enumerate(FIG1_NEIGHBOURS, start=1) for h in nb}
    return BipartiteGraph(7, 3, edges)


def fig1poly():
    rho = boolean_polymatroid(fig1_graph())
    rho.labels = tuple(f"e{i}" for i in range(1, 8))
    return rho


FIG3_DIAGRAM = LatticePathDiagram(((1, 4), (3, 6), (5, 7)))


def fig3poly():
    return lattice_path_polymatroid(FIG3_DIAGRAM, 7)


def builtin(name, *args):
    """Named example: ``uniform`` (takes r, n), ``fano``, ``pg22_lines``,
    ``vamos2poly``, ``fig2poly``, plus ``fig1poly`` and ``fig3poly``."""
    makers = {"uniform": uniform, "fano": fano, "pg22_lines": pg22_lines,
              "vamos2poly": vamos2poly, "fig2poly": fig2poly,
              "fig1poly": fig1poly, "fig3poly": fig3poly}
    if name not in makers:
        raise UnknownName(f"unknown builtin {name!r}; choose from {sorted(makers)}")
    return makers[name](*args)


def parallel_extension(matroid, copies):
    """Replace each element ``i`` by ``copies[i-1]`` parallel copies (loops stay loops).

    Copies of element ``i`` form consecutive positions, in element order.
    """
    owners = [i for i, c in enumerate(copies) for _ in range(c)]
    m = len(owners)
    check_capacity(m)
    support = [0] * (1 << m)
    for y in range(1, 1 << m):
        low = y & -y
        support[y] = support[y ^ low] | (1 << owners[low.bit_length() - 1])
    return Matroid(m, [matroid.ranks[s] for s in support])


__all__ = ["gf2_rank", "binary_matroid", "uniform", "induced_polymatroid",
           "BipartiteGraph", "boolean_polymatroid", "rank_one_matroids",
           "LatticePathDiagram", "lattice_path_polymatroid", "count_lattice_paths",
           "fano", "pg22_lines", "vamos2poly", "fig2poly", "fig1_graph", "fig1poly",
           "fig3poly", "FIG3_DIAGRAM", "FANO_LINES", "builtin", "parallel_extension",
           "spread_masks"]
