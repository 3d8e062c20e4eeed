"""Flats, cyclic sets and the lattice of cyclic flats.

Everything here works for rational rank tables except the helpers that go
through circuits, which need integer ranks.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._bits import all_masks, elements, exact, fmt_rank, fmt_set, popcount, scaled, unscale
from .core import Polymatroid
from .errors import AxiomsFailed, RankDomainMismatch
from .verdict import Verdict


def _flags(rho):
    """Boolean arrays ``(is_flat, is_cyclic)`` over all masks."""
    if "zflags" in rho._cache:
        return rho._cache["zflags"]
    arr, _ = rho.array()
    masks = all_masks(rho.n)
    flat = np.ones(len(masks), dtype=bool)
    cyc = np.ones(len(masks), dtype=bool)
    for i in range(rho.n):
        bit = 1 << i
        has = (masks & bit) != 0
        flat &= has | (arr[masks | bit] > arr)
        if arr[bit] > 0:
            cyc &= ~has | (arr < arr[masks & ~bit] + arr[bit])
    rho._cache["zflags"] = (flat, cyc)
    return flat, cyc


def is_flat(rho, subset):
    a = rho.mask(subset)
    return all(rho.ranks[a | (1 << i)] > rho.ranks[a] for i in range(rho.n) if not a >> i & 1)


def flats(rho):
    return np.flatnonzero(_flags(rho)[0]).tolist()


def closure(rho, subset):
    """``{i : rho(A + i) = rho(A)}``, the least flat containing ``A``."""
    a = rho.mask(subset)
    r = rho.ranks
    out = a
    for i in range(rho.n):
        if r[a | (1 << i)] == r[a]:
            out |= 1 << i
    return out


def is_cyclic(rho, subset):
    a = rho.mask(subset)
    r = rho.ranks
    return all(r[a] < r[a ^ (1 << i)] + r[1 << i]
               for i in range(rho.n) if a >> i & 1 and r[1 << i] > 0)


def cyclic_sets(rho):
    return np.flatnonzero(_flags(rho)[1]).tolist()


def cy(rho, subset):
    """Largest cyclic subset: drop the non-loops that split off ``A``."""
    a = rho.mask(subset)
    r = rho.ranks
    out = a
    for i in range(rho.n):
        bit = 1 << i
        if a & bit and r[bit] > 0 and r[a] == r[a ^ bit] + r[bit]:
            out ^= bit
    return out


def cyclic_flats(rho):
    flat, cyc = _flags(rho)
    return np.flatnonzero(flat & cyc).tolist()


def closure_via_circuits(rho, subset):
    """``A`` plus loops plus every ``i`` having a circuit with ``u_i = 1``
    supported in ``A + i`` (integer ranks only)."""
    from .vectors import circuits
    a = rho.mask(subset)
    out = a | rho.loops
    for c in circuits(rho).circuits:
        for i in range(rho.n):
            if c[i] == 1 and all(c[j] == 0 for j in range(rho.n)
                                 if j != i and not a >> j & 1):
                out |= 1 << i
    return out


def cy_via_circuits(rho, subset):
    """Union of loops in ``A`` and supports of circuits inside ``A`` (integer ranks)."""
    from .vectors import circuits
    a = rho.mask(subset)
    out = a & rho.loops
    for c in circuits(rho).circuits:
        sup = sum(1 << j for j in range(rho.n) if c[j] > 0)
        if sup & ~a == 0:
            out |= sup
    return out


class CyclicFlatLattice:
    """The cyclic flats of ``rho`` with meet ``cy(A & B)`` and join ``cl(A | B)``."""

    def __init__(self, rho):
        self.rho = rho
        self.members = tuple(cyclic_flats(rho))
        self._set = frozenset(self.members)

    def __contains__(self, mask):
        return mask in self._set

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def rank(self, mask):
        return self.rho.ranks[mask]

    def meet(self, a, b):
        return cy(self.rho, a & b)

    def join(self, a, b):
        return closure(self.rho, a | b)

    @property
    def bottom(self):
        return self.members[0]

    @property
    def top(self):
        return self.members[-1]

    def family(self):
        return RankedCyclicFlatFamily.from_polymatroid(self.rho)


def cyclic_flat_lattice(rho):
    return CyclicFlatLattice(rho)


@dataclass
class RankedCyclicFlatFamily:
    """A family ``Z`` of subsets with ranks, plus singleton ranks.

    ``ranks`` maps masks to values; ``singletons`` holds the ranks of
    elements ``1..n`` and may be ``None`` for the matroid axioms.
    """

    n: int
    ranks: dict
    singletons: tuple = None

    def __post_init__(self):
        self.ranks = {int(k): exact(v) for k, v in sorted(self.ranks.items())}
        if self.singletons is not None:
            self.singletons = tuple(exact(v) for v in self.singletons)
            if len(self.singletons) != self.n:
                raise RankDomainMismatch(
                    f"{len(self.singletons)} singleton ranks for n={self.n}")

    @classmethod
    def from_polymatroid(cls, rho):
        return cls(rho.n, {z: rho.ranks[z] for z in cyclic_flats(rho)}, rho.singleton_ranks)

    @property
    def members(self):
        return tuple(self.ranks)

    def scaled(self, factor):
        factor = Fraction(factor)
        return RankedCyclicFlatFamily(
            self.n, {k: v * factor for k, v in self.ranks.items()},
            None if self.singletons is None else tuple(v * factor for v in self.singletons))


def _lattice_ops(members):
    """Meet and join tables by inclusion, or the first pair lacking one."""
    mset = set(members)
    meet, join, bad = {}, {}, []
    for x, a in enumerate(members):
        for b in members[x:]:
            ups = [c for c in members if c & (a | b) == (a | b)]
            lub = None
            if ups:
                inter = ups[0]
                for c in ups[1:]:
                    inter &= c
                lub = inter if inter in mset else None
            downs = [c for c in members if c & ~(a & b) == 0]
            glb = None
            if downs:
                uni = 0
                for c in downs:
                    uni |= c
                glb = uni if uni in mset else None
            if lub is None:
                bad.append({"A": a, "B": b, "missing": "join"})
            if glb is None:
                bad.append({"A": a, "B": b, "missing": "meet"})
            join[a, b] = join[b, a] = lub
            meet[a, b] = meet[b, a] = glb
    return meet, join, bad


def check_Z_axioms(family, mode="polymatroid"):
    """(Z0)-(Z3) for matroids or (PZ0)-(PZ4) for polymatroids.

    Meets and joins are read off the family ordered by inclusion, so (Z0)
    really tests that the family is a lattice.
    """
    if mode not in ("matroid", "polymatroid"):
        raise ValueError(f"mode must be 'matroid' or 'polymatroid', not {mode!r}")
    poly = mode == "polymatroid"
    if poly and family.singletons is None:
        raise RankDomainMismatch("polymatroid mode needs the singleton ranks")
    r = family.ranks
    members = family.members
    names = ("PZ0", "PZ1", "PZ2", "PZ3", "PZ4") if poly else ("Z0", "Z1", "Z2", "Z3")
    failures = {}
    if not poly:
        for z, v in r.items():
            if not isinstance(v, int):
                raise RankDomainMismatch(f"matroid mode needs integer ranks, got {v} on {fmt_set(z)}")

    def weight(mask):
        if not poly:
            return popcount(mask)
        return sum((family.singletons[i - 1] for i in elements(mask)), 0)

    if not members:
        return Verdict(mode, names, {names[0]: [{"family": "empty"}]}, skipped=names[1:])
    meet, join, bad = _lattice_ops(members)
    if bad:
        failures[names[0]] = bad

    bottom = members[0]
    is_bottom = all(bottom & ~z == 0 for z in members)
    if poly:
        loops = sum(1 << (i - 1) for i in range(1, family.n + 1) if family.singletons[i - 1] == 0)
        if not is_bottom or bottom != loops or r[bottom] != 0:
            failures["PZ1"] = [{"A": bottom, "loops": fmt_set(loops), "rank": r[bottom]}]
    elif not is_bottom or r[bottom] != 0:
        failures["Z1"] = [{"A": bottom, "rank": r[bottom]}]

    z2 = []
    for a in members:
        for b in members:
            if a != b and a & ~b == 0:
                gap = r[b] - r[a]
                if not 0 < gap < weight(b & ~a):
                    z2.append({"A": a, "B": b, "gap": gap})
    if z2:
        failures[names[2]] = z2

    skipped = ()
    if bad:
        skipped = (names[3],)
    else:
        z3 = []
        for x, a in enumerate(members):
            for b in members[x:]:
                j, m = join[a, b], meet[a, b]
                lhs = r[j] + r[m] + weight((a & b) & ~m)
                if lhs > r[a] + r[b]:
                    z3.append({"A": a, "B": b, "join": j, "meet": m})
        if z3:
            failures[names[3]] = z3

    if poly:
        z4 = [{"A": a, "i": i} for a in members for i in elements(a)
              if family.singletons[i - 1] > r[a]]
        if z4:
            failures["PZ4"] = z4
    return Verdict(mode, names, failures, skipped=skipped)


def polymatroid_from_cyclic_flats(family, check=True):
    """``rho(A) = min over Z of rho'(Z) + sum of rho'(i) for i in A - Z``."""
    if family.singletons is None:
        raise RankDomainMismatch("singleton ranks are required")
    if check:
        verdict = check_Z_axioms(family, "polymatroid")
        if not verdict:
            raise AxiomsFailed(verdict)
    n = family.n
    values = list(family.singletons) + list(family.ranks.values())
    ints, d = scaled(values)
    single = ints[:n]
    zr = ints[n:]
    masks = all_masks(n)
    weight = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        weight += np.where((masks >> i) & 1, single[i], 0)
    best = None
    for z, v in zip(family.ranks, zr):
        cand = v + weight[masks & ~z]
        best = cand if best is None else np.minimum(best, cand)
    return Polymatroid(n, unscale(best, d))


# -- R(A) ----------------------------------------------------------------------

def _excess(rho, a, b):
    """``rho(B) + sum of rho(i) for i in A - B``."""
    return rho.ranks[b] + sum((rho.ranks[1 << (i - 1)] for i in elements(a & ~b)), 0)


@dataclass
class RSetReport:
    subset: int
    members: tuple
    lower: int
    upper: int
    checks: dict = field(default_factory=dict)
    is_interval: bool = False

    @property
    def ok(self):
        return all(self.checks.values())

    def lines(self, rho=None):
        def rk(m):
            return f": {fmt_rank(rho.ranks[m])}" if rho is not None else ""
        out = [f"A = {fmt_set(self.subset)}",
               f"R(A) = {len(self.members)} cyclic flats"]
        out += [f"  {fmt_set(m)}{rk(m)}" for m in self.members]
        out.append(f"least cl(cy(A)) = {fmt_set(self.lower)}")
        out.append(f"greatest cy(cl(A)) = {fmt_set(self.upper)}")
        for name, ok in self.checks.items():
            out.append(f"({name}) {'ok' if ok else 'FAIL'}")
        out.append(f"interval of Z: {'yes' if self.is_interval else 'no'}")
        return out


def r_set(rho, subset):
    """Cyclic flats minimising ``rho(B) + sum_{A - B} rho(i)``, with the
    structure checks (I)-(IV) evaluated on the result."""
    a = rho.mask(subset)
    lattice = CyclicFlatLattice(rho)
    values = {z: _excess(rho, a, z) for z in lattice}
    best = min(values.values())
    members = tuple(sorted((z for z, v in values.items() if v == best),
                           key=lambda m: (popcount(m), m)))
    lower = closure(rho, cy(rho, a))
    upper = cy(rho, closure(rho, a))
    mset = set(members)
    r = rho.ranks
    checks = {
        "min": best == r[a],
        "I": lower in mset and upper in mset,
        "II": all(lower & ~b == 0 and b & ~upper == 0 for b in members),
        "III": all(lattice.meet(b, c) in mset and lattice.join(b, c) in mset
                   for b in members for c in members),
        "IV": all(r[b] + r[c] == r[b | c] + r[b & c] for b in members for c in members),
    }
    interval = {z for z in lattice if lower & ~z == 0 and z & ~upper == 0}
    return RSetReport(a, members, lower, upper, checks, interval == mset)


@dataclass
class RecastCheck:
    holds: bool
    coloops_split: bool
    same_rank: bool

    def __bool__(self):
        return self.holds


def recast_R_test(rho, subset_a, subset_b):
    """``rho(A) = rho(B) + sum_{A-B} rho(i)`` iff every ``i`` in ``A - B``
    splits off ``A`` and ``rho(A & B) = rho(B)``; both sides are computed and
    must agree."""
    a, b = rho.mask(subset_a), rho.mask(subset_b)
    r = rho.ranks
    holds = r[a] == _excess(rho, a, b)
    split = all(r[a] == r[a ^ (1 << (i - 1))] + r[1 << (i - 1)] for i in elements(a & ~b))
    same = r[a & b] == r[b]
    if holds != (split and same):
        raise AssertionError(f"recast test disagrees on A={fmt_set(a)}, B={fmt_set(b)}")
    if same != (closure(rho, a & b) == closure(rho, b)):
        raise AssertionError("closure form of the rank condition disagrees")
    return RecastCheck(holds, split, same)


def lifting_report(rho):
    """Compare flats, cyclic sets and cyclic flats of ``rho`` with those of
    its natural matroid; returns the subsets where a correspondence fails."""
    from .natural import build_natural_matroid
    rho.require_integral("lifting_report")
    m = build_natural_matroid(rho)
    mflat, mcyc = _flags(m)
    pflat, pcyc = _flags(rho)
    xa = [0] * (1 << rho.n)
    for s in range(1, 1 << rho.n):
        low = s & -s
        xa[s] = xa[s ^ low] | m.blocks[low.bit_length() - 1]
    loops = rho.loops
    bad = {"flat": [], "cyclic": [], "cyclic_flat": []}
    for s in range(1 << rho.n):
        has_loops = loops & ~s == 0
        if bool(pflat[s]) != (has_loops and bool(mflat[xa[s]])):
            bad["flat"].append(s)
        if bool(pcyc[s]) != bool(mcyc[xa[s]]):
            bad["cyclic"].append(s)
        if bool(pflat[s] and pcyc[s]) != (has_loops and bool(mflat[xa[s]] and mcyc[xa[s]])):
            bad["cyclic_flat"].append(s)
    return bad
