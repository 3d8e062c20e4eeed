import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

import oracles as O
from polymat import (CircuitSystem, Polymatroid, bases, build_natural_matroid,
                     check_basis_axioms, check_circuit_axioms,
                     check_independence_axioms, circuits, dual_bases,
                     element_rank_and_cyclicity_from_circuits, fig2poly, fig3poly,
                     independent_vectors, k_dual, minor, polymatroid_from_circuits,
                     polymatroid_from_vectors, rank_from_vectors, type_vector,
                     uniform)
from polymat.core import first_violation
from polymat.errors import (AxiomsFailed, BoundsMismatch, CapacityExceeded,
                            ElementNotInGroundSet, ElementNotInSet, EmptyFamily,
                            KTooSmall, NotNonempty)
from polymat.natural import matroid_bases, matroid_circuits
from polymat.vectors import contraction_circuits

FIG2_BASES = [(1, 0, 2), (1, 1, 1), (2, 0, 1), (2, 1, 0)]
FIG2_CIRCUITS = [(0, 1, 2), (2, 0, 2), (2, 1, 1)]
C_STAR = [(2, 1, 0), (0, 2, 2), (1, 1, 2), (1, 2, 1)]


def free(ranks):
    n = len(ranks)
    return Polymatroid(n, [sum(r for i, r in enumerate(ranks) if m >> i & 1)
                           for m in range(1 << n)])


# -- brute-force axiom oracles -------------------------------------------------

def leq(u, v):
    return all(a <= b for a, b in zip(u, v))


def oracle_I(fam):
    fs = set(fam)
    i1 = all(v[:i] + (v[i] - 1,) + v[i + 1:] in fs
             for v in fam for i in range(len(v)) if v[i] > 0)
    i2 = all(any(leq(u, w) and w != u and leq(w, tuple(map(max, u, v))) for w in fam)
             for u in fam for v in fam if sum(u) < sum(v))
    return i1, i2


def _shift(u, i, j):
    w = list(u)
    w[i] -= 1
    w[j] += 1
    return tuple(w)


def oracle_B(fam, symmetric=False):
    fs = set(fam)
    n = len(fam[0])
    for u in fam:
        for v in fam:
            for i in range(n):
                if u[i] <= v[i]:
                    continue
                if not any(u[j] < v[j] and _shift(u, i, j) in fs
                           and (not symmetric or _shift(v, j, i) in fs)
                           for j in range(n)):
                    return False
    return True


def oracle_middle(fam):
    n = len(fam[0])
    if any(u != v and leq(u, v) for u in fam for v in fam):
        return False
    top = max(max(u) for u in fam) + 1
    for x in product(range(top + 1), repeat=n):
        if not any(leq(x, u) for u in fam):
            continue
        for y in product(range(top + 1), repeat=n):
            if leq(x, y) and any(leq(v, y) for v in fam):
                if not any(leq(x, w) and leq(w, y) for w in fam):
                    return False
    return True


# -- independent vectors and bases ------------------------------------------------

def test_fig2_independents():
    ind = independent_vectors(fig2poly())
    assert (2, 1, 0) in ind and (1, 1, 1) in ind and (0, 1, 2) not in ind


def test_zero_and_matroid_independents():
    assert independent_vectors(Polymatroid(2, [0] * 4)) == [(0, 0)]
    u23 = uniform(2, 3)
    expect = sorted(tuple(m >> i & 1 for i in range(3)) for m in range(8)
                    if bin(m).count("1") <= 2)
    assert independent_vectors(u23) == expect


def test_independents_match_oracle(random_instances):
    for rho in random_instances:
        bounds = rho.singleton_ranks
        expect = [u for u in O.box(bounds) if O.independent(rho.n, rho.ranks, u)]
        assert independent_vectors(rho) == expect


def test_fig2_bases():
    assert bases(fig2poly()) == FIG2_BASES


def test_fig3_basis():
    assert (0, 0, 0, 2, 0, 1, 0) in bases(fig3poly())


def test_zero_bases():
    assert bases(Polymatroid(3, [0] * 8)) == [(0, 0, 0)]


def test_bases_match_oracle(random_instances):
    for rho in random_instances:
        b = bases(rho)
        assert b == O.bases(rho.n, rho.ranks)
        assert {sum(u) for u in b} == {rho.total_rank}


def test_bases_are_type_vectors_of_natural_bases(random_instances):
    for rho in random_instances:
        if sum(rho.singleton_ranks) > 12:
            continue
        m = build_natural_matroid(rho)
        assert sorted({type_vector(m, b) for b in matroid_bases(m)}) == bases(rho)
        assert sorted({type_vector(m, c) for c in matroid_circuits(m)}) == \
            list(circuits(rho).circuits)


def test_rank_from_vectors():
    assert rank_from_vectors(FIG2_BASES, {2, 3}) == 2
    assert rank_from_vectors(FIG2_BASES, []) == 0
    assert rank_from_vectors(FIG2_BASES, {1, 2, 3}) == 3
    with pytest.raises(EmptyFamily):
        rank_from_vectors([], {1})


def test_vector_round_trips(random_instances):
    for rho in random_instances:
        assert polymatroid_from_vectors(bases(rho), rho.n) == rho
        assert polymatroid_from_vectors(independent_vectors(rho), rho.n) == rho


def test_capacity(monkeypatch):
    monkeypatch.setenv("POLYMAT_MAX_SUBSETS", "10")
    with pytest.raises(CapacityExceeded):
        bases(fig2poly())


# -- axiom checkers -----------------------------------------------------------------

def test_independence_axioms_examples():
    v = check_independence_axioms([(0, 0), (2, 0)])
    assert v.failed == ("I1",) and v.witness("I1") == {"v": (2, 0), "missing": (1, 0)}
    assert check_independence_axioms([(0, 0), (1, 0), (0, 1)])
    assert oracle_I([(0, 0), (1, 0), (0, 1)]) == (True, True)
    assert not check_independence_axioms([])


def test_independence_axioms_on_instances(random_instances):
    for rho in random_instances:
        assert check_independence_axioms(independent_vectors(rho))


def test_independence_checker_matches_oracle():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 3)
        fam = sorted({tuple(rng.randint(0, 2) for _ in range(n))
                      for _ in range(rng.randint(1, 6))})
        v = check_independence_axioms(fam)
        i1, i2 = oracle_I(fam)
        assert ("I1" not in v.failures) == i1
        assert ("I2" not in v.failures) == i2


def test_basis_axioms_examples():
    v = check_basis_axioms([(2, 0), (0, 1)], "B")
    assert not v
    assert {"u": (2, 0), "v": (0, 1), "i": 1} in v.failures["B"]
    assert check_basis_axioms([(1, 0), (0, 1)], "B")
    assert check_basis_axioms([(1, 0), (0, 1)], "Bprime")
    with pytest.raises(NotNonempty):
        check_basis_axioms([], "B")


def test_basis_axioms_on_instances(random_instances):
    for rho in random_instances:
        b = bases(rho)
        for which in ("B", "Bprime", "middle"):
            assert check_basis_axioms(b, which), which


def test_basis_checkers_match_oracle():
    rng = random.Random(9)
    for _ in range(150):
        n = rng.randint(1, 3)
        fam = sorted({tuple(rng.randint(0, 2) for _ in range(n))
                      for _ in range(rng.randint(1, 5))})
        b = bool(check_basis_axioms(fam, "B"))
        bp = bool(check_basis_axioms(fam, "Bprime"))
        assert b == oracle_B(fam)
        assert bp == oracle_B(fam, symmetric=True)
        assert not bp or b
        assert bool(check_basis_axioms(fam, "middle")) == oracle_middle(fam)


def test_basis_checkers_agree_on_families():
    """Each basis axiom system characterizes the same families."""
    rng = random.Random(4)
    for _ in range(150):
        n = rng.randint(1, 3)
        fam = sorted({tuple(rng.randint(0, 2) for _ in range(n))
                      for _ in range(rng.randint(1, 5))})
        verdicts = {w: bool(check_basis_axioms(fam, w)) for w in ("B", "Bprime", "middle")}
        rho = polymatroid_from_vectors(fam)
        # max |u|_X need not be submodular when fam is not a basis family
        is_bases = first_violation(rho.n, rho.ranks) is None and bases(rho) == fam
        assert verdicts == {"B": is_bases, "Bprime": is_bases, "middle": is_bases}


# -- duality -------------------------------------------------------------------------

def test_dual_bases_fig2():
    d = dual_bases(FIG2_BASES, 2)
    assert d == [(0, 1, 2), (0, 2, 1), (1, 1, 1), (1, 2, 0)]
    assert d == bases(k_dual(fig2poly(), 2))
    assert dual_bases(d, 2) == FIG2_BASES
    with pytest.raises(KTooSmall):
        dual_bases(FIG2_BASES, 1)


def test_dual_bases_matroid():
    b = bases(uniform(2, 4))
    assert dual_bases(b, 1) == sorted(tuple(1 - x for x in u) for u in b)


def test_dual_bases_on_instances(random_instances):
    for rho in random_instances:
        k = max(rho.singleton_ranks + (1,))
        for kk in (k, k + 1):
            b = bases(rho)
            assert dual_bases(b, kk) == bases(k_dual(rho, kk))
            assert dual_bases(dual_bases(b, kk), kk) == b


# -- circuits -------------------------------------------------------------------------

def test_fig2_circuits():
    system = circuits(fig2poly())
    assert list(system.circuits) == FIG2_CIRCUITS and system.bounds == (2, 1, 2)


def test_simple_circuits():
    assert circuits(free((2, 1, 3))).circuits == ()
    assert circuits(uniform(2, 3)).circuits == ((1, 1, 1),)


def test_circuits_match_oracle(random_instances):
    for rho in random_instances:
        system = circuits(rho)
        assert list(system.circuits) == O.circuits(rho.n, rho.ranks)
        assert system.bounds == rho.singleton_ranks


def test_circuit_axioms_fig2():
    assert check_circuit_axioms(CircuitSystem((2, 1, 2), FIG2_CIRCUITS))


def test_circuit_axioms_only_c4():
    v = check_circuit_axioms(CircuitSystem((4, 2), [(4, 1), (2, 2)]))
    assert v.failed == ("C4",)


def test_circuit_axioms_c_star():
    v = check_circuit_axioms(CircuitSystem((2, 2, 2), C_STAR))
    assert v.failed == ("C3", "C4")


def test_circuit_axioms_on_instances(random_instances):
    for rho in random_instances:
        assert check_circuit_axioms(circuits(rho))


def test_bounds_mismatch():
    with pytest.raises(BoundsMismatch):
        check_circuit_axioms(CircuitSystem((3, 1, 2), FIG2_CIRCUITS))


def test_polymatroid_from_circuits():
    rho = polymatroid_from_circuits(CircuitSystem((2, 1, 2), FIG2_CIRCUITS))
    assert (rho.rank({2, 3}), rho.rank({1, 2}), rho.total_rank) == (2, 3, 3)
    assert list(rho.ranks) == O.rank_from_circuits((2, 1, 2), FIG2_CIRCUITS)
    assert polymatroid_from_circuits(CircuitSystem((2, 1), [])) == free((2, 1))
    assert polymatroid_from_circuits(CircuitSystem((1, 1, 1), [(1, 1, 1)])) == uniform(2, 3)
    with pytest.raises(AxiomsFailed) as info:
        polymatroid_from_circuits(CircuitSystem((4, 2), [(4, 1), (2, 2)]))
    assert info.value.verdict.failed == ("C4",)


def test_circuit_round_trips(random_instances):
    for rho in random_instances:
        system = circuits(rho)
        back = polymatroid_from_circuits(system)
        assert back == rho
        assert circuits(back) == system
        assert back.singleton_ranks == system.bounds


def test_circuit_checker_soundness_random():
    """A family the checker accepts rebuilds a polymatroid with those circuits."""
    rng = random.Random(12)
    accepted = 0
    for _ in range(300):
        n = rng.randint(2, 3)
        bounds = tuple(rng.randint(1, 2) for _ in range(n))
        fam = {tuple(rng.randint(0, b) for b in bounds) for _ in range(rng.randint(1, 3))}
        fam = [c for c in fam if sum(x > 0 for x in c) >= 2]
        for i, b in enumerate(bounds):
            if any(c[i] for c in fam) and max(c[i] for c in fam) != b:
                break
        else:
            system = CircuitSystem(bounds, fam)
            if check_circuit_axioms(system):
                accepted += 1
                rho = polymatroid_from_circuits(system)
                assert O.is_polymatroid(n, rho.ranks)
                assert circuits(rho).circuits == system.circuits
    assert accepted > 10


# -- cyclicity diagnosis and contraction ---------------------------------------------

def test_cyclicity_fig2():
    d = element_rank_and_cyclicity_from_circuits(fig2poly(), 1)
    assert d.applicable and d.strict
    assert (2, 1, 1) in d.witnesses
    assert d.block_in_circuit and d.max_circuit_entry == 2


def test_cyclicity_loop_and_free():
    rho = Polymatroid(2, [0, 0, 1, 1])
    assert not element_rank_and_cyclicity_from_circuits(rho, 1).applicable
    d = element_rank_and_cyclicity_from_circuits(free((2, 1)), 2)
    assert not d.strict and d.witness is None
    with pytest.raises(ElementNotInSet):
        element_rank_and_cyclicity_from_circuits(fig2poly(), 1, {2, 3})


def test_cyclicity_on_instances(random_instances):
    for rho in random_instances:
        for i in range(1, rho.n + 1):
            for a in range(1 << rho.n):
                if a >> (i - 1) & 1:
                    element_rank_and_cyclicity_from_circuits(rho, i, a)


def test_contraction_circuits_fig2():
    rho = fig2poly()
    c = contraction_circuits(circuits(rho), rho, 2)
    assert c.bounds == (2, 1) and c.circuits == ((2, 1),)
    assert c == circuits(minor(rho, contract={2}))
    with pytest.raises(ElementNotInGroundSet):
        contraction_circuits(circuits(rho), rho, 4)


def test_contraction_circuits_loop_and_free():
    rho = Polymatroid(3, [0, 1, 0, 1, 1, 1, 1, 1])  # 2 is a loop, 1 and 3 parallel
    c = contraction_circuits(circuits(rho), rho, 2)
    assert c.circuits == ((1, 1),)
    f = free((2, 1, 1))
    assert contraction_circuits(circuits(f), f, 1).circuits == ()


def test_contraction_circuits_on_instances(random_instances):
    for rho in random_instances:
        system = circuits(rho)
        for i in range(1, rho.n + 1):
            assert contraction_circuits(system, rho, i) == circuits(minor(rho, contract={i}))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_generated_polymatroids_round_trip(seed):
    from polymat.generate import random_polymatroid
    rho = random_polymatroid(seed)
    assert polymatroid_from_vectors(bases(rho), rho.n) == rho
    assert polymatroid_from_circuits(circuits(rho)) == rho
