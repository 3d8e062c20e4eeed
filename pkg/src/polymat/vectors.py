"""Independent vectors, bases and circuits of integer polymatroids.

Vectors are tuples of non-negative ints indexed by elements ``1..n``
(entry ``i-1`` belongs to element ``i``).  Families come back as sorted
lists so output is deterministic; witnesses in verdicts are the
lexicographically least ones.
"""

from dataclasses import dataclass
from math import prod

import numpy as np

from ._bits import all_masks, elements, fmt_set, vector_cap
from .core import Polymatroid, minor
from .errors import (AxiomsFailed, BoundsMismatch, CapacityExceeded,
                     ElementNotInGroundSet, ElementNotInSet, EmptyFamily,
                     KTooSmall, NotNonempty)
from .verdict import Verdict


def _indicator(n):
    """``(n, 2^n)`` 0/1 matrix whose column ``X`` is the indicator of ``X``."""
    masks = all_masks(n)
    return ((masks[None, :] >> np.arange(n)[:, None]) & 1).astype(np.int64)


def box(bounds):
    """All vectors ``0 <= u <= bounds`` as an ``(N, n)`` array in lex order."""
    size = prod(b + 1 for b in bounds)
    if size > vector_cap():
        raise CapacityExceeded("vector box", size, vector_cap())
    if not bounds:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*(np.arange(b + 1) for b in bounds), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)


def _independent_rows(rho, vecs):
    """Boolean mask of rows ``u`` with ``|u|_X <= rho(X)`` for every X."""
    arr, _ = rho.array()
    ind = _indicator(rho.n)
    out = np.empty(len(vecs), dtype=bool)
    step = max(1, (1 << 22) // max(1, ind.shape[1]))
    for s in range(0, len(vecs), step):
        out[s:s + step] = (vecs[s:s + step] @ ind <= arr[None, :]).all(axis=1)
    return out


class _Index:
    """Membership lookups for a family of vectors via mixed-radix codes."""

    def __init__(self, family, slack=1):
        fam = np.asarray(family, dtype=np.int64).reshape(len(family), -1)
        self.n = fam.shape[1]
        hi = fam.max(axis=0) if len(fam) else np.zeros(self.n, dtype=np.int64)
        self.radix = hi + 1 + slack
        self.weights = np.ones(self.n, dtype=np.int64)
        for i in range(self.n - 2, -1, -1):
            self.weights[i] = self.weights[i + 1] * self.radix[i + 1]
        self.codes = np.sort(self.encode(fam)) if len(fam) else np.zeros(0, np.int64)

    def encode(self, vecs):
        return vecs @ self.weights if self.n else np.zeros(len(vecs), dtype=np.int64)

    def contains(self, vecs):
        vecs = np.asarray(vecs, dtype=np.int64).reshape(-1, self.n)
        ok = ((vecs >= 0) & (vecs < self.radix[None, :])).all(axis=1)
        codes = self.encode(np.where(ok[:, None], vecs, 0))
        pos = np.searchsorted(self.codes, codes)
        pos = np.minimum(pos, max(len(self.codes) - 1, 0))
        hit = self.codes[pos] == codes if len(self.codes) else np.zeros(len(codes), bool)
        return ok & hit


def _tuples(arr):
    return [tuple(int(x) for x in row) for row in arr]


def _check_family(vectors):
    fam = [tuple(int(x) for x in v) for v in vectors]
    if not fam:
        return fam, None
    n = len(fam[0])
    for v in fam:
        if len(v) != n:
            raise ValueError(f"vector {v} has length {len(v)}, expected {n}")
        if any(x < 0 for x in v):
            raise ValueError(f"vector {v} has a negative entry")
    return sorted(set(fam)), n


def is_independent(rho, u):
    u = np.asarray(u, dtype=np.int64)[None, :]
    return bool(_independent_rows(rho, u)[0])


def independent_vectors(rho):
    rho.require_integral("independent_vectors")
    vecs = box(rho.singleton_ranks)
    return _tuples(vecs[_independent_rows(rho, vecs)])


def bases(rho):
    """Maximal independent vectors, sorted."""
    rho.require_integral("bases")
    vecs = box(rho.singleton_ranks)
    indep = vecs[_independent_rows(rho, vecs)]
    index = _Index(indep)
    maximal = np.ones(len(indep), dtype=bool)
    for i in range(rho.n):
        up = indep.copy()
        up[:, i] += 1
        maximal &= ~index.contains(up)
    return _tuples(indep[maximal])


def rank_from_vectors(vectors, subset):
    """``max |u|_X`` over the family; ``subset`` is a mask or an element iterable."""
    fam = list(vectors)
    if not fam:
        raise EmptyFamily("rank_from_vectors needs a nonempty family")
    x = subset if isinstance(subset, int) else sum(1 << (e - 1) for e in subset)
    idx = elements(x)
    return max(sum(u[i - 1] for i in idx) for u in fam)


def polymatroid_from_vectors(vectors, n=None):
    """Rank table ``rho(X) = max |u|_X`` from bases or independent vectors."""
    fam, m = _check_family(vectors)
    if not fam:
        raise EmptyFamily("polymatroid_from_vectors needs a nonempty family")
    n = m if n is None else n
    arr = np.array(fam, dtype=np.int64).reshape(len(fam), n)
    ranks = (arr @ _indicator(n)).max(axis=0)
    return Polymatroid(n, [int(r) for r in ranks])


# -- independence and basis axioms ------------------------------------------

def check_independence_axioms(vectors):
    """(I1) downward closure and (I2) augmentation for a finite family."""
    fam, n = _check_family(vectors)
    checked = ("nonempty", "I1", "I2")
    if not fam:
        return Verdict("I", checked, {"nonempty": [{"family": "empty"}]},
                       skipped=("I1", "I2"))
    arr = np.array(fam, dtype=np.int64).reshape(len(fam), n)
    index = _Index(arr)
    failures = {}
    i1 = []
    for v in fam:
        for i in range(n):
            if v[i] > 0:
                u = v[:i] + (v[i] - 1,) + v[i + 1:]
                if not index.contains([u])[0]:
                    i1.append({"v": v, "missing": u})
    if i1:
        failures["I1"] = sorted(i1, key=lambda w: (w["v"], w["missing"]))
    norms = arr.sum(axis=1)
    i2 = []
    for u in fam:
        ua = np.array(u, dtype=np.int64)
        size = ua.sum()
        bigger = arr[norms > size]
        if not len(bigger):
            continue
        if i1:
            # Definition: some w in I with u < w <= u v v.
            above = arr[(arr >= ua).all(axis=1) & (norms > size)]
            joins = np.maximum(ua[None, :], bigger)
            ok = (above[None, :, :] <= joins[:, None, :]).all(axis=2).any(axis=1)
        else:
            # Under (I1) such a w exists iff u + e_i is in I for some i with u_i < v_i.
            steps = np.repeat(ua[None, :], n, axis=0) + np.eye(n, dtype=np.int64)
            grow = np.flatnonzero(index.contains(steps))
            ok = (bigger[:, grow] > ua[grow]).any(axis=1)
        i2.extend({"u": u, "v": tuple(int(x) for x in v)} for v in bigger[~ok])
    if i2:
        failures["I2"] = sorted(i2, key=lambda w: (w["u"], w["v"]))
    return Verdict("I", checked, failures)


def _basis_exchange(fam, arr, index, symmetric):
    out = []
    n = arr.shape[1]
    for ui, u in enumerate(fam):
        ua = arr[ui]
        for i in range(n):
            if ua[i] == 0:
                continue
            cand = arr[arr[:, i] < ua[i]]           # v with u_i > v_i
            if not len(cand):
                continue
            ok = np.zeros(len(cand), dtype=bool)
            for j in range(n):
                if j == i:
                    continue
                w = ua.copy()
                w[i] -= 1
                w[j] += 1
                if not index.contains([w])[0]:
                    continue
                good = cand[:, j] > ua[j]
                if symmetric:
                    back = cand.copy()
                    back[:, j] -= 1
                    back[:, i] += 1
                    good &= index.contains(back)
                ok |= good
            for v in cand[~ok]:
                out.append({"u": u, "v": tuple(int(x) for x in v), "i": i + 1})
    return sorted(out, key=lambda w: (w["u"], w["v"], w["i"]))


def _middle(fam, arr, index):
    anti = []
    for a in range(len(fam)):
        le = (arr[a] <= arr).all(axis=1)
        le[a] = False
        for b in np.flatnonzero(le):
            anti.append({"u": fam[a], "v": fam[int(b)]})
    mid = []
    # Only x below some basis and y = x v v (v a basis) need checking:
    # a failure at (x, y) persists for the smaller y' = x v v <= y.
    down = set()
    for u in fam:
        for x in box(u):
            down.add(tuple(int(t) for t in x))
    downs = np.array(sorted(down), dtype=np.int64).reshape(len(down), arr.shape[1])
    for vi, v in enumerate(arr):
        ys = np.maximum(downs, v[None, :])
        step = max(1, (1 << 21) // max(1, len(arr) * arr.shape[1]))
        for s in range(0, len(downs), step):
            xs, yy = downs[s:s + step], ys[s:s + step]
            inside = ((arr[None, :, :] >= xs[:, None, :])
                      & (arr[None, :, :] <= yy[:, None, :])).all(axis=2).any(axis=1)
            for k in np.flatnonzero(~inside):
                mid.append({"x": tuple(int(t) for t in xs[k]),
                            "y": tuple(int(t) for t in yy[k])})
    failures = {}
    if anti:
        failures["antichain"] = sorted(anti, key=lambda w: (w["u"], w["v"]))
    if mid:
        failures["middle"] = sorted({(w["x"], w["y"]): w for w in mid}.values(),
                                    key=lambda w: (w["x"], w["y"]))
    return failures


BASIS_AXIOMS = {"B": "B", "Bprime": "Bprime", "B'": "Bprime", "B′": "Bprime",
                "middle": "middle"}


def check_basis_axioms(vectors, which="B"):
    """Exchange axiom (B), symmetric exchange (B'), or the middle-basis property."""
    which = BASIS_AXIOMS[which]
    fam, n = _check_family(vectors)
    if not fam:
        raise NotNonempty("a basis family must be nonempty")
    arr = np.array(fam, dtype=np.int64).reshape(len(fam), n)
    index = _Index(arr)
    if which == "middle":
        return Verdict("middle", ("antichain", "middle"), _middle(fam, arr, index))
    wits = _basis_exchange(fam, arr, index, symmetric=which == "Bprime")
    verdict = Verdict(which, (which,), {which: wits} if wits else {})
    if which == "Bprime" and verdict.ok:
        assert not _basis_exchange(fam, arr, index, symmetric=False), "(B') passed but (B) failed"
    return verdict


def dual_bases(vectors, k):
    """Complement every vector in ``(k, ..., k)``."""
    out = []
    for u in vectors:
        for i, x in enumerate(u, start=1):
            if x > k:
                raise KTooSmall(i, x, k)
        out.append(tuple(k - x for x in u))
    return sorted(out)


# -- circuits ----------------------------------------------------------------

@dataclass(frozen=True)
class CircuitSystem:
    """Bounds ``m`` (the box ``U = prod [m_i]_0``) and circuit vectors ``C``."""

    bounds: tuple
    circuits: tuple

    def __post_init__(self):
        bounds = tuple(int(b) for b in self.bounds)
        circ = tuple(sorted({tuple(int(x) for x in c) for c in self.circuits}))
        for c in circ:
            if len(c) != len(bounds):
                raise ValueError(f"circuit {c} does not match {len(bounds)} bounds")
        if any(b < 0 for b in bounds):
            raise ValueError("bounds must be non-negative")
        object.__setattr__(self, "bounds", bounds)
        object.__setattr__(self, "circuits", circ)

    @property
    def n(self):
        return len(self.bounds)

    def check_bounds(self):
        """Condition (iii): ``m_i = max c_i`` wherever some circuit uses ``i``."""
        for i in range(self.n):
            used = [c[i] for c in self.circuits]
            if any(x < 0 for x in used):
                raise BoundsMismatch(i + 1, "negative circuit entry")
            top = max(used, default=0)
            if top > 0 and top != self.bounds[i]:
                raise BoundsMismatch(i + 1, f"m_i = {self.bounds[i]} but max c_i = {top}")


def circuits(rho):
    """Minimal dependent vectors in the box of singleton ranks."""
    rho.require_integral("circuits")
    m = rho.singleton_ranks
    vecs = box(m)
    indep = _independent_rows(rho, vecs)
    index = _Index(vecs[indep])
    dep = vecs[~indep]
    minimal = np.ones(len(dep), dtype=bool)
    for i in range(rho.n):
        down = dep.copy()
        down[:, i] -= 1
        has = dep[:, i] > 0
        minimal &= ~has | index.contains(down)
    return CircuitSystem(m, _tuples(dep[minimal]))


def check_circuit_axioms(system):
    """(C1)-(C4) for a circuit system; raises BoundsMismatch if (iii) fails."""
    system.check_bounds()
    fam, m, n = list(system.circuits), system.bounds, system.n
    arr = np.array(fam, dtype=np.int64).reshape(len(fam), n)
    failures = {}

    c1 = [{"u": u} for u in fam if sum(1 for x in u if x > 0) < 2]
    if c1:
        failures["C1"] = c1

    c2 = []
    for a, u in enumerate(fam):
        lt = (arr[a] <= arr).all(axis=1)
        lt[a] = False
        c2.extend({"u": u, "v": fam[int(b)]} for b in np.flatnonzero(lt))
    if c2:
        failures["C2"] = sorted(c2, key=lambda w: (w["u"], w["v"]))

    c3 = []
    for a, u in enumerate(fam):
        for i in range(n):
            if u[i] == 0:
                continue
            others = [b for b in range(len(fam)) if b != a and fam[b][i] > 0]
            if not others:
                continue
            vs = arr[others]
            joins = np.maximum(arr[a][None, :], vs)
            caps = np.maximum(u[i], vs[:, i])
            # z_i < max(u_i, v_i) already makes z differ from u v v.
            ok = ((arr[None, :, :] <= joins[:, None, :]).all(axis=2)
                  & (arr[None, :, i] < caps[:, None])).any(axis=1)
            for k in np.flatnonzero(~ok):
                c3.append({"u": u, "v": fam[others[int(k)]], "i": i + 1})
    if c3:
        failures["C3"] = sorted(c3, key=lambda w: (w["u"], w["v"], w["i"]))

    c4 = []
    for a, u in enumerate(fam):
        ua = arr[a]
        for i in range(n):
            if not 0 < u[i] < m[i]:
                continue
            others = np.delete(np.arange(n), i)
            base = (arr[:, i] == u[i] + 1) & (arr[:, others] <= ua[others]).all(axis=1)
            for j in range(n):
                if j == i or u[j] == 0:
                    continue
                if not (base & (arr[:, j] < u[j])).any():
                    c4.append({"u": u, "i": i + 1, "j": j + 1})
    if c4:
        failures["C4"] = sorted(c4, key=lambda w: (w["u"], w["i"], w["j"]))
    return Verdict("C", ("C1", "C2", "C3", "C4"), failures)


def _independent_from_circuits(system):
    vecs = box(system.bounds)
    if not system.circuits:
        return vecs
    arr = np.array(system.circuits, dtype=np.int64)
    dominated = np.zeros(len(vecs), dtype=bool)
    for c in arr:
        dominated |= (vecs >= c[None, :]).all(axis=1)
    return vecs[~dominated]


def polymatroid_from_circuits(system, check=True):
    """Independent vectors are box vectors above no circuit; rank is max |u|_X."""
    if check:
        verdict = check_circuit_axioms(system)
        if not verdict:
            raise AxiomsFailed(verdict)
    indep = _independent_from_circuits(system)
    ranks = (indep @ _indicator(system.n)).max(axis=0)
    return Polymatroid(system.n, [int(r) for r in ranks])


@dataclass(frozen=True)
class CyclicityDiagnosis:
    element: int
    subset: int
    applicable: bool
    strict: bool = False
    witness: tuple = None
    witnesses: tuple = ()
    element_rank: int = 0
    max_circuit_entry: int = 0
    block_in_circuit: bool = None

    def __str__(self):
        if not self.applicable:
            return f"element {self.element} is a loop: not applicable"
        rel = "<" if self.strict else "="
        wit = f", witness circuit {self.witness}" if self.witness else ""
        return (f"rho({fmt_set(self.subset)}) {rel} rho(A-{self.element}) + "
                f"rho({self.element}){wit}")


def element_rank_and_cyclicity_from_circuits(source, i, subset=None):
    """Does element ``i`` fail to split off ``A``?  Cross-checked two ways.

    Reports whether ``rho(A) < rho(A - i) + rho(i)`` and checks that this
    happens exactly when a circuit with ``u_i > 0`` lives inside ``A``.  For
    ``A = E`` it also checks that the block of ``i`` in the natural matroid
    sits inside a circuit (some circuit has ``u_i = rho(i)``) and that then
    ``rho(i)`` is the largest ``i``-th circuit entry.
    """
    if isinstance(source, CircuitSystem):
        system, rho = source, polymatroid_from_circuits(source)
    else:
        rho, system = source, circuits(source)
    if not 1 <= i <= rho.n:
        raise ElementNotInGroundSet(f"element {i} not in 1..{rho.n}")
    a = rho.full if subset is None else rho.mask(subset)
    bit = 1 << (i - 1)
    if not a & bit:
        raise ElementNotInSet(f"element {i} not in {fmt_set(a)}")
    ri = rho.ranks[bit]
    if ri == 0:
        return CyclicityDiagnosis(i, a, applicable=False)
    strict = rho.ranks[a] < rho.ranks[a ^ bit] + ri
    inside = [c for c in system.circuits
              if c[i - 1] > 0 and all(c[j] == 0 for j in range(rho.n) if not a >> j & 1)]
    witness = inside[0] if inside else None
    if strict != bool(inside):
        raise AssertionError(f"cyclicity criteria disagree at element {i}, A={fmt_set(a)}")
    top = max((c[i - 1] for c in system.circuits), default=0)
    block = None
    if a == rho.full:
        block = any(c[i - 1] == ri for c in system.circuits)
        if block != strict:
            raise AssertionError(f"block-in-circuit criterion disagrees at element {i}")
        if strict and top != ri:
            raise AssertionError(f"rho({i}) = {ri} but max circuit entry is {top}")
    return CyclicityDiagnosis(i, a, True, strict, witness, tuple(inside), ri, top, block)


def contraction_circuits(system, rho, i):
    """Circuits of ``rho / i`` read off the circuits of ``rho``.

    Drop entry ``i`` from every circuit, keep those inside the contracted
    box ``prod [rho({i,j}) - rho(i)]_0`` with at least two positive
    entries, and return the minimal ones.
    """
    if not 1 <= i <= rho.n:
        raise ElementNotInGroundSet(f"element {i} not in 1..{rho.n}")
    bit = 1 << (i - 1)
    bounds = tuple(rho.ranks[bit | (1 << j)] - rho.ranks[bit]
                   for j in range(rho.n) if j != i - 1)
    cut = {c[:i - 1] + c[i:] for c in system.circuits}
    cand = [c for c in cut
            if all(x <= b for x, b in zip(c, bounds)) and sum(1 for x in c if x > 0) >= 2]
    minimal = [c for c in cand
               if not any(d != c and all(x <= y for x, y in zip(d, c)) for d in cand)]
    return CircuitSystem(bounds, minimal)


def is_connected_via_circuits(source):
    """Every pair of elements shares a circuit with both entries positive."""
    system = circuits(source) if isinstance(source, Polymatroid) else source
    n = system.n
    if n == 0:
        raise ValueError("connectivity is undefined on the empty ground set")
    if n == 1:
        return True
    covered = set()
    for c in system.circuits:
        sup = [j for j in range(n) if c[j] > 0]
        covered.update((a, b) for a in sup for b in sup if a < b)
    return len(covered) == n * (n - 1) // 2


def circuits_of_contraction(rho, i):
    """Reference route: contract, then enumerate circuits."""
    return circuits(minor(rho, contract=[i]))


__all__ = ["box", "is_independent", "independent_vectors", "bases", "rank_from_vectors",
           "polymatroid_from_vectors", "check_independence_axioms", "check_basis_axioms",
           "dual_bases", "CircuitSystem", "circuits", "check_circuit_axioms",
           "polymatroid_from_circuits", "CyclicityDiagnosis",
           "element_rank_and_cyclicity_from_circuits", "contraction_circuits",
           "is_connected_via_circuits", "circuits_of_contraction"]
