import random
import time
from itertools import product

import numpy as np
import pytest

import oracles as O
from polymat import (Polymatroid, build_natural_matroid, fig1poly, fig2poly,
                     matroid_union, minor, natural_from_decomposition,
                     natural_independent, pg22_lines, type_vector, uniform,
                     verify_natural)
from polymat.constructions import (binary_matroid, fig1_graph, induced_polymatroid,
                                   rank_one_matroids)
from polymat.core import Matroid
from polymat.errors import (BlockSizeMismatch, GroundSetMismatch,
                            NotADecomposition, NotAMatroid, UnknownElement)
from polymat.generate import random_binary_matroid
from polymat.natural import (block_isomorphic, block_masks, is_clone_set,
                             matroid_bases, matroid_circuits, natural_contraction)
from polymat.zflats import cyclic_flats


def small(instances, limit=12):
    return [r for r in instances if sum(r.singleton_ranks) <= limit]


def test_pg22_natural_is_u314():
    start = time.perf_counter()
    m = build_natural_matroid(pg22_lines())
    assert time.perf_counter() - start < 5
    assert m.n == 14 and m == uniform(3, 14)


def test_fig2_natural():
    rho = fig2poly()
    m = build_natural_matroid(rho)
    assert m.n == 5 and m.total_rank == 3
    assert m.labels == ((1, 1), (1, 2), (2, 1), (3, 1), (3, 2))
    bcc = 0b11100  # {(2,1), (3,1), (3,2)}
    assert m.ranks[bcc] == 2
    assert bcc in matroid_circuits(m)


def test_zero_polymatroid_natural():
    m = build_natural_matroid(Polymatroid(3, [0] * 8))
    assert m.n == 0 and m.ranks == (0,)
    assert m.blocks == (0, 0, 0)


def test_natural_matches_oracle(random_instances):
    for rho in small(random_instances):
        m = build_natural_matroid(rho)
        size, ranks, blocks = O.natural_ranks(rho.n, rho.ranks)
        assert m.n == size and list(m.ranks) == ranks
        assert list(m.blocks) == blocks


def test_natural_invariants(random_instances):
    for rho in small(random_instances):
        m = build_natural_matroid(rho)
        xa = [sum(m.blocks[i] for i in range(rho.n) if a >> i & 1) for a in range(1 << rho.n)]
        for a in range(1 << rho.n):
            assert m.ranks[xa[a]] == rho.ranks[a]
        for b in m.blocks:
            assert m.ranks[b] == bin(b).count("1")
            assert is_clone_set(m, b)
        zs = cyclic_flats(m)
        assert set(zs) <= set(xa)
        assert verify_natural(m, rho)


def test_deletion_commutes(random_instances):
    for rho in small(random_instances):
        m = build_natural_matroid(rho)
        for i in range(1, rho.n + 1):
            left = build_natural_matroid(minor(rho, delete={i}))
            right = minor(m, delete=m.blocks[i - 1])
            assert left.ranks == right.ranks


def test_contraction_matches_natural_of_contraction(random_instances):
    rng = random.Random(11)
    for rho in small(random_instances, 10):
        m = build_natural_matroid(rho)
        for i in range(1, rho.n + 1):
            target = build_natural_matroid(minor(rho, contract={i}))
            got = natural_contraction(rho, i, m)
            assert got == target

            def pick(j, size, pos):
                return rng.sample(pos, size)
            other = natural_contraction(rho, i, m, choose=pick)
            assert block_isomorphic(other, target)


def test_block_isomorphic_rejects():
    a = Matroid(2, [0, 1, 0, 1], blocks=[1, 2])
    b = Matroid(2, [0, 0, 1, 1], blocks=[1, 2])
    assert not block_isomorphic(a, b)
    assert block_isomorphic(a, a)


def test_natural_independent():
    rho = fig2poly()
    m = build_natural_matroid(rho)
    assert natural_independent(rho, [(1, 1), (1, 2), (2, 1)], m)
    assert natural_independent(rho, [], m)
    assert natural_independent(rho, [])
    assert not natural_independent(rho, [(2, 1), (3, 1), (3, 2)], m)
    with pytest.raises(UnknownElement):
        natural_independent(rho, [(2, 2)], m)


def test_natural_independent_agrees_with_rank(random_instances):
    for rho in small(random_instances, 9):
        m = build_natural_matroid(rho)
        for y in range(1 << m.n):
            assert natural_independent(rho, y, m) == (m.ranks[y] == bin(y).count("1"))


def test_type_vector():
    rho = fig1poly()
    m = build_natural_matroid(rho)
    assert type_vector(m, [(1, 1), (3, 1), (4, 2)]) == (1, 0, 1, 1, 0, 0, 0)
    assert type_vector(m, m.full) == rho.singleton_ranks
    assert type_vector(m, []) == (0,) * 7
    assert type_vector(m.blocks, m.labels) == rho.singleton_ranks
    with pytest.raises(UnknownElement):
        type_vector(m, [(1, 2)])


def test_verify_natural_u314():
    m = uniform(3, 14)
    m = Matroid(14, m.ranks, blocks=block_masks([2] * 7))
    assert verify_natural(m, pg22_lines())


def test_verify_natural_rejects_swapped_blocks():
    rho = fig2poly()
    m = build_natural_matroid(rho)
    # blocks of elements 1 and 3 exchanged; both have two elements
    swapped = Matroid(m.n, m.ranks, m.labels, (m.blocks[2], m.blocks[1], m.blocks[0]))
    result = verify_natural(swapped, rho)
    assert not result and not result.clones_ok
    assert result.offending == 0b11100  # {b, c1, c2}, now X_{1,2}
    assert rho.rank({1, 2}) == 3 and m.ranks[0b11100] == 2


def test_verify_natural_block_sizes():
    rho = fig2poly()
    m = build_natural_matroid(rho)
    bad = Matroid(m.n, m.ranks, m.labels, (0b00001, 0b00110, 0b11000))
    with pytest.raises(BlockSizeMismatch):
        verify_natural(bad, rho)
    with pytest.raises(BlockSizeMismatch):
        verify_natural(Matroid(m.n, m.ranks), rho)


def test_matroid_union_examples():
    assert matroid_union(uniform(1, 2), uniform(1, 2)) == uniform(2, 2)
    m = binary_matroid([1, 2, 3, 4])
    zero = Matroid(4, [0] * 16)
    assert matroid_union(m, zero) == m
    with pytest.raises(GroundSetMismatch):
        matroid_union(uniform(1, 2), uniform(1, 3))
    with pytest.raises(NotAMatroid):
        matroid_union(uniform(1, 3), fig2poly())


def test_matroid_union_matches_oracle():
    rng = random.Random(2)
    for _ in range(40):
        n = rng.randint(1, 6)
        ms = []
        for _ in range(rng.randint(1, 3)):
            cols = [rng.randrange(8) for _ in range(n)]
            ms.append(binary_matroid(cols))
        assert list(matroid_union(*ms).ranks) == O.union_ranks(n, [m.ranks for m in ms])


def _transversal_ranks(neighbours):
    """Rank = largest matching, by augmenting paths."""
    m = len(neighbours)
    out = []
    for y in range(1 << m):
        match = {}

        def augment(e, seen):
            for h in neighbours[e]:
                if h in seen:
                    continue
                seen.add(h)
                if h not in match or augment(match[h], seen):
                    match[h] = e
                    return True
            return False
        out.append(sum(augment(e, set()) for e in range(m) if y >> e & 1))
    return out


def test_fig1_decomposition_is_transversal():
    rho = fig1poly()
    res = natural_from_decomposition(rank_one_matroids(fig1_graph()), rho)
    assert res.equal and verify_natural(res.union, rho)
    # the transversal matroid of the doubled bipartite graph
    nb = [{1}, {1}, {1, 2}, {1, 2}, {1, 2}, {1, 2}, {2, 3}, {2, 3}, {2, 3}, {2, 3}, {3}]
    assert list(res.natural.ranks) == _transversal_ranks(nb)


def test_single_matroid_decomposition():
    m = binary_matroid([1, 2, 3, 4, 5])
    res = natural_from_decomposition([m], m)
    assert res.natural.ranks == m.ranks


def _all_matroids(n):
    out = []
    for vals in product(range(n + 1), repeat=(1 << n) - 1):
        ranks = (0,) + vals
        if all(ranks[1 << i] <= 1 for i in range(n)) and O.is_polymatroid(n, ranks):
            out.append(Matroid(n, ranks))
    return out


def test_fig2_decomposition_by_search():
    rho = fig2poly()
    mats = [m for m in _all_matroids(3) if m.total_rank <= 2]
    pairs = [(a, b) for a in mats for b in mats
             if all(x + y == z for x, y, z in zip(a.ranks, b.ranks, rho.ranks))]
    assert pairs, "fig2poly splits into two matroids"
    for a, b in pairs:
        res = natural_from_decomposition([a, b], rho)
        assert res.equal


def test_not_a_decomposition():
    rho = fig2poly()
    with pytest.raises(NotADecomposition) as info:
        natural_from_decomposition([uniform(2, 3)], rho)
    assert info.value.subset == 0b001


def test_induced_from_natural_blocks(random_instances):
    for rho in small(random_instances):
        m = build_natural_matroid(rho)
        assert induced_polymatroid(m, m.blocks) == rho


def test_random_binary_matroid_is_matroid():
    rng = random.Random(0)
    for _ in range(10):
        m = random_binary_matroid(rng)
        assert m.is_matroid and O.is_polymatroid(m.n, m.ranks)
        for b in matroid_bases(m):
            assert m.ranks[b] == m.total_rank == bin(b).count("1")


def test_capacity_guard(monkeypatch):
    monkeypatch.setenv("POLYMAT_MAX_SUBSETS", str(1 << 10))
    from polymat.errors import CapacityExceeded
    with pytest.raises(CapacityExceeded):
        build_natural_matroid(pg22_lines())


def test_natural_needs_integers():
    from fractions import Fraction
    from polymat.core import scale
    from polymat.errors import NotInteger
    with pytest.raises(NotInteger):
        build_natural_matroid(scale(fig2poly(), Fraction(1, 2)))


def test_numpy_and_python_natural_agree_on_pg22():
    m = build_natural_matroid(pg22_lines())
    assert np.array_equal(np.asarray(m.ranks), np.minimum(np.bitwise_count(np.arange(1 << 14)), 3))


def test_k_dual_natural_sizes_found_by_search(random_instances):
    from polymat import k_dual
    seen = set()
    for rho in random_instances:
        top = max(rho.singleton_ranks + (1,))
        for k in (top, top + 1):
            before = build_natural_matroid(rho).n
            after = build_natural_matroid(k_dual(rho, k)).n
            seen.add((after > before) - (after < before))
    assert seen == {-1, 0, 1}
    # frozen fixtures: one of each
    rho = fig2poly()
    assert build_natural_matroid(k_dual(rho, 2)).n == 5
    assert build_natural_matroid(k_dual(rho, 3)).n == 8
    assert build_natural_matroid(k_dual(uniform(1, 1), 1)).n == 0
