import pytest

import oracles as O
from polymat import (BipartiteGraph, LatticePathDiagram, bases, boolean_polymatroid,
                     build_natural_matroid, builtin, circuits, count_lattice_paths,
                     fano, fig1poly, fig2poly, fig3poly, induced_polymatroid,
                     lattice_path_polymatroid, matroid_union, pg22_lines,
                     uniform, vamos2poly, validate)
from polymat.constructions import (FIG3_DIAGRAM, binary_matroid, fig1_graph,
                                   gf2_rank, parallel_extension, rank_one_matroids)
from polymat.errors import MalformedDiagram, UnknownMatroidElement, UnknownName
from polymat.natural import block_masks
from polymat.zflats import cyclic_flats


def test_gf2_rank():
    assert gf2_rank([1, 2, 3]) == 2
    assert gf2_rank([0, 0]) == 0
    assert gf2_rank([1, 2, 4, 7]) == 3


def test_pg22_lines():
    rho = pg22_lines()
    assert rho.n == 7 and rho.singleton_ranks == (2,) * 7 and rho.total_rank == 3
    for a in range(1 << 7):
        count = bin(a).count("1")
        assert rho.ranks[a] == (0 if count == 0 else 2 if count == 1 else 3)


def test_induced_simple_cases():
    m = fano()
    assert induced_polymatroid(m, [{e} for e in range(1, 8)]) == m
    zero = induced_polymatroid(m, [set()] * 4)
    assert zero.ranks == (0,) * 16
    with pytest.raises(UnknownMatroidElement):
        induced_polymatroid(m, [{8}])


def test_fig1_polymatroid():
    rho = fig1poly()
    assert validate(rho)
    assert rho.rank({3}) == 2 and rho.rank({3, 5}) == 3


def test_boolean_edge_cases():
    assert boolean_polymatroid(BipartiteGraph(3, 2, set())).ranks == (0,) * 8
    full = boolean_polymatroid(BipartiteGraph(3, 2, {(e, h) for e in (1, 2, 3) for h in (1, 2)}))
    assert all(r == 2 for r in full.ranks[1:])
    with pytest.raises(ValueError):
        BipartiteGraph(2, 1, {(3, 1)})


def test_boolean_natural_is_union():
    graph = fig1_graph()
    rho = boolean_polymatroid(graph)
    sizes = rho.singleton_ranks
    parts = []
    for m in rank_one_matroids(graph):
        p = parallel_extension(m, sizes)
        parts.append(p)
    union = matroid_union(*parts)
    assert union.ranks == build_natural_matroid(rho).ranks
    assert tuple(block_masks(sizes)) == build_natural_matroid(rho).blocks


def test_fig3_is_fig1():
    assert fig3poly() == fig1poly()


def test_fig3_paths():
    rho = fig3poly()
    b = bases(rho)
    assert (0, 0, 0, 2, 0, 1, 0) in b
    paths = count_lattice_paths(FIG3_DIAGRAM, 7)
    assert paths == O.lattice_paths(FIG3_DIAGRAM.rows, 7) == len(b) == 41


def test_single_row_diagram():
    rho = lattice_path_polymatroid(LatticePathDiagram([(1, 4)]), 4)
    assert bases(rho) == sorted(tuple(int(i == j) for j in range(4)) for i in range(4))


def test_diagram_validation():
    with pytest.raises(MalformedDiagram):
        LatticePathDiagram([(2, 3), (1, 4)]).check(4)
    with pytest.raises(MalformedDiagram):
        LatticePathDiagram([(1, 5)]).check(4)
    with pytest.raises(MalformedDiagram):
        LatticePathDiagram([(3, 2)]).check(4)


def test_random_diagrams_count_paths():
    import random
    rng = random.Random(1)
    for _ in range(30):
        n = rng.randint(1, 6)
        k = rng.randint(1, 4)
        a = sorted(rng.randint(1, n) for _ in range(k))
        b = sorted(rng.randint(1, n) for _ in range(k))
        rows = [(x, max(x, y)) for x, y in zip(a, b)]
        if [y for _, y in rows] != sorted(y for _, y in rows):
            continue
        d = LatticePathDiagram(rows)
        rho = lattice_path_polymatroid(d, n)
        assert count_lattice_paths(d, n) == O.lattice_paths(rows, n) == len(bases(rho))


def test_builtins():
    assert builtin("uniform", 3, 14) == uniform(3, 14)
    assert sum(1 for z in cyclic_flats(fano()) if fano().ranks[z] == 2) == 7
    assert circuits(builtin("fig2poly")).circuits == ((0, 1, 2), (2, 0, 2), (2, 1, 1))
    assert builtin("vamos2poly") == vamos2poly()
    assert builtin("fig2poly") == fig2poly()
    with pytest.raises(UnknownName):
        builtin("petersen")


def test_vamos_table():
    rho = vamos2poly()
    assert validate(rho)
    assert rho.singleton_ranks == (2, 2, 2, 2)
    assert rho.rank({1, 4}) == 4 and rho.rank({1, 2}) == 3 and rho.rank({2, 3, 4}) == 4
    assert rho.label(1) == "a"


def test_binary_matroid_matches_gf2_rank():
    cols = [1, 2, 3, 4, 5, 6, 7, 0]
    m = binary_matroid(cols)
    for a in range(1 << 8):
        assert m.ranks[a] == gf2_rank([c for i, c in enumerate(cols) if a >> i & 1])
