"""The natural matroid of an integer polymatroid, and matroid union.

Element ``i`` of the polymatroid becomes the block ``X_i`` of ``rho(i)``
matroid elements labelled ``(i, 1) .. (i, rho(i))``; blocks are laid out
consecutively in element order, so the label order is lexicographic.
"""

from dataclasses import dataclass
from itertools import permutations, product

import numpy as np

from ._bits import all_masks, elements, fmt_set, popcount, spread_masks, table_cap
from .core import Matroid, check_capacity
from .errors import (BlockSizeMismatch, CapacityExceeded, GroundSetMismatch,
                     NotADecomposition, NotAMatroid, UnknownElement)
from .zflats import cyclic_flats, flats


def block_masks(sizes):
    masks, start = [], 0
    for s in sizes:
        masks.append(((1 << s) - 1) << start)
        start += s
    return tuple(masks)


def block_labels(sizes):
    return tuple((i, t) for i, s in enumerate(sizes, start=1) for t in range(1, s + 1))


def _block_unions(blocks):
    """``X_A`` for every mask ``A`` over the block indices."""
    out = [0] * (1 << len(blocks))
    for a in range(1, len(out)):
        low = a & -a
        out[a] = out[a ^ low] | blocks[low.bit_length() - 1]
    return out


def _owners(blocks, m):
    owner = [None] * m
    for i, blk in enumerate(blocks):
        for pos in elements(blk):
            owner[pos - 1] = i
    return owner


def _support(blocks, m):
    """For each mask ``Y`` over ``E'``, the set of blocks it meets."""
    owner = _owners(blocks, m)
    out = np.zeros(1 << m, dtype=np.int64)
    for pos in range(m):
        span = 1 << pos
        # masks with bit pos set, in strides of 2*span
        view = out.reshape(-1, 2 * span)
        view[:, span:] = view[:, :span] | (1 << owner[pos])
    return out


def build_natural_matroid(rho):
    """``r(Y) = min over A of rho(A) + |Y - X_A|``.

    Only flats ``A`` of ``rho`` are scanned: adding an element of the
    closure keeps ``rho(A)`` and can only shrink ``|Y - X_A|``.
    """
    rho.require_integral("the natural matroid")
    sizes = rho.singleton_ranks
    m = sum(sizes)
    if (1 << m) > table_cap():
        raise CapacityExceeded(f"natural matroid on {m} elements", 1 << m, table_cap())
    blocks = block_masks(sizes)
    xa = _block_unions(blocks)
    arr, _ = rho.array()
    ys = all_masks(m)
    best = np.bitwise_count(ys).astype(np.int64)      # A = empty set
    for a in flats(rho):
        cand = arr[a] + np.bitwise_count(ys & ~xa[a]).astype(np.int64)
        np.minimum(best, cand, out=best)
    return Matroid(m, best.tolist(), block_labels(sizes), blocks)


def _label_mask(matroid, subset):
    if isinstance(subset, (int, np.integer)):
        return matroid.mask(int(subset))
    labels = matroid.labels or tuple(range(1, matroid.n + 1))
    where = {lab: pos for pos, lab in enumerate(labels)}
    mask = 0
    for item in subset:
        if item not in where:
            raise UnknownElement(f"{item!r} is not an element of the natural matroid")
        mask |= 1 << where[item]
    return mask


def type_vector(source, subset):
    """``T(V)_i = |V & X_i|``; ``source`` is a Matroid with blocks or a block tuple.

    ``subset`` is a mask over ``E'`` or an iterable of ``(i, t)`` labels.
    """
    if isinstance(source, Matroid):
        if source.blocks is None:
            raise BlockSizeMismatch("matroid has no blocks")
        blocks, mask = source.blocks, _label_mask(source, subset)
    else:
        blocks = tuple(source)
        m = sum(popcount(b) for b in blocks)
        if isinstance(subset, (int, np.integer)):
            mask = int(subset)
        else:
            labels = block_labels([popcount(b) for b in blocks])
            where = {lab: pos for pos, lab in enumerate(labels)}
            mask = 0
            for item in subset:
                if item not in where:
                    raise UnknownElement(f"{item!r} is not in any block")
                mask |= 1 << where[item]
        if mask >> m:
            raise UnknownElement(f"mask {mask} outside the {m} block elements")
    return tuple(popcount(mask & b) for b in blocks)


def natural_independent(rho, subset, matroid=None):
    """``|I & X_A| <= rho(A)`` for every ``A``."""
    m = matroid if matroid is not None else _shell(rho)
    u = type_vector(m, subset)
    r = rho.ranks
    for a in range(1 << rho.n):
        if sum(u[i - 1] for i in elements(a)) > r[a]:
            return False
    return True


def _shell(rho):
    """Blocks and labels of the natural matroid without its rank table."""
    sizes = rho.singleton_ranks
    return _Shell(sum(sizes), block_labels(sizes), block_masks(sizes))


class _Shell(Matroid):
    __slots__ = ()

    def __init__(self, m, labels, blocks):
        self.n, self.labels, self.blocks, self._cache = m, labels, blocks, {}
        self.ranks = None


def _check_blocks(matroid, rho):
    if matroid.blocks is None:
        raise BlockSizeMismatch("matroid carries no blocks")
    if len(matroid.blocks) != rho.n:
        raise BlockSizeMismatch(f"{len(matroid.blocks)} blocks for {rho.n} elements")
    seen = 0
    for i, blk in enumerate(matroid.blocks, start=1):
        if popcount(blk) != rho.ranks[1 << (i - 1)]:
            raise BlockSizeMismatch(
                f"block {i} has {popcount(blk)} elements, rank is {rho.ranks[1 << (i - 1)]}")
        if blk & seen:
            raise BlockSizeMismatch(f"block {i} overlaps an earlier block")
        seen |= blk
    if seen != matroid.full:
        raise BlockSizeMismatch("blocks do not cover the ground set")


def _swap_table(m, a, b):
    """Index array sending each mask to its image under the transposition (a b)."""
    ys = all_masks(m)
    ba, bb = (ys >> a) & 1, (ys >> b) & 1
    return ys & ~((1 << a) | (1 << b)) | (ba << b) | (bb << a)


def is_clone_set(matroid, mask):
    """True iff every transposition inside ``mask`` is an automorphism."""
    pos = [p - 1 for p in elements(mask)]
    arr = np.asarray(matroid.ranks, dtype=np.int64)
    for a, b in zip(pos, pos[1:]):
        if not np.array_equal(arr, arr[_swap_table(matroid.n, a, b)]):
            return False
    return True


@dataclass
class NaturalCheck:
    ok: bool
    offending: int = None
    reason: str = ""
    clones_ok: bool = None

    def __bool__(self):
        return self.ok


def verify_natural(matroid, rho):
    """Is ``matroid`` (with blocks) the natural matroid of ``rho``?

    Primary test: every cyclic flat is some ``X_A`` with rank ``rho(A)``.
    Second test: every block is a set of clones and the cyclic flats of the
    form ``X_A`` have rank ``rho(A)``.  The two must agree.
    """
    if not matroid.is_matroid:
        raise NotAMatroid("verify_natural needs a matroid")
    _check_blocks(matroid, rho)
    blocks = matroid.blocks
    xa = _block_unions(blocks)
    where = {x: a for a, x in enumerate(xa)}
    zs = cyclic_flats(matroid)
    offending, reason = None, ""
    for z in zs:
        if z not in where:
            offending, reason = z, "cyclic flat is not a union of blocks"
            break
        a = where[z]
        if matroid.ranks[z] != rho.ranks[a]:
            offending = z
            reason = f"rank {matroid.ranks[z]} on X_{fmt_set(a)} but rho = {rho.ranks[a]}"
            break
    ok = offending is None
    clones = all(is_clone_set(matroid, b) for b in blocks) and all(
        matroid.ranks[z] == rho.ranks[where[z]] for z in zs if z in where)
    if clones != ok:
        raise AssertionError("cyclic-flat and clone criteria disagree")
    return NaturalCheck(ok, offending, reason, clones)


def matroid_union(*matroids):
    """``r'(Y) = min over X <= Y of sum_j r_j(X) + |Y - X|``."""
    if not matroids:
        raise ValueError("matroid_union needs at least one matroid")
    n = matroids[0].n
    for mat in matroids:
        if mat.n != n:
            raise GroundSetMismatch(f"ground sets of size {n} and {mat.n}")
        if not mat.is_matroid:
            raise NotAMatroid("matroid_union takes matroids")
    check_capacity(n)
    pc = np.bitwise_count(all_masks(n)).astype(np.int64)
    low = sum(np.asarray(mat.ranks, dtype=np.int64) for mat in matroids) - pc
    # subset-minimum transform: low[Y] becomes min over X <= Y
    for i in range(n):
        view = low.reshape(-1, 2 << i)
        np.minimum(view[:, 1 << i:], view[:, :1 << i], out=view[:, 1 << i:])
    first = matroids[0]
    return Matroid(n, (low + pc).tolist(), first.labels,
                   getattr(first, "blocks", None))


def replace_by_blocks(matroid, sizes):
    """Replace element ``i`` by ``sizes[i-1]`` copies parallel to it (loops if
    ``i`` is a loop), then delete ``i``."""
    m = sum(sizes)
    check_capacity(m)
    blocks = block_masks(sizes)
    supp = _support(blocks, m)
    arr = np.asarray(matroid.ranks, dtype=np.int64)
    return Matroid(m, arr[supp].tolist(), block_labels(sizes), blocks)


@dataclass
class DecompositionResult:
    union: Matroid
    natural: Matroid
    parts: tuple

    @property
    def equal(self):
        return self.union == self.natural


def natural_from_decomposition(matroids, rho):
    """Natural matroid as the union of the block-expanded ``M_j``.

    ``sum_j r_{M_j}`` must equal ``rho`` (checked, first failing subset
    reported); the union is compared with :func:`build_natural_matroid`.
    """
    matroids = tuple(matroids)
    for mat in matroids:
        if mat.n != rho.n:
            raise GroundSetMismatch(f"matroid on {mat.n} elements, rho on {rho.n}")
        if not mat.is_matroid:
            raise NotAMatroid("decomposition parts must be matroids")
    for a in range(1 << rho.n):
        got = sum(mat.ranks[a] for mat in matroids)
        if got != rho.ranks[a]:
            raise NotADecomposition(a, rho.ranks[a], got)
    sizes = rho.singleton_ranks
    parts = tuple(replace_by_blocks(mat, sizes) for mat in matroids)
    union = matroid_union(*parts)
    union = Matroid(union.n, union.ranks, block_labels(sizes), block_masks(sizes))
    natural = build_natural_matroid(rho)
    if union != natural:
        raise AssertionError("matroid union differs from the natural matroid")
    return DecompositionResult(union, natural, parts)


def natural_contraction(rho, i, natural=None, choose=None):
    """``M_rho / X_i`` restricted to blocks ``Y_j`` of ``rho({i,j}) - rho(i)``
    elements of ``X_j``.

    ``choose(j, size, block_positions)`` picks ``Y_j``; by default the first
    ``size`` positions of ``X_j``.
    """
    m = natural if natural is not None else build_natural_matroid(rho)
    bit = 1 << (i - 1)
    xi = m.blocks[i - 1]
    kept, sizes = [], []
    for j in range(1, rho.n + 1):
        if j == i:
            continue
        size = rho.ranks[bit | (1 << (j - 1))] - rho.ranks[bit]
        pos = [p - 1 for p in elements(m.blocks[j - 1])]
        picked = choose(j, size, pos) if choose else pos[:size]
        kept.extend(sorted(picked))
        sizes.append(size)
    old = spread_masks(kept)
    base = m.ranks[xi]
    ranks = [m.ranks[y | xi] - base for y in old]
    return Matroid(len(kept), ranks, block_labels(sizes), block_masks(sizes))


def block_isomorphic(m1, m2):
    """Search block-preserving bijections for one carrying ``m1`` onto ``m2``."""
    if m1.n != m2.n or m1.blocks is None or m2.blocks is None:
        return False
    if [popcount(b) for b in m1.blocks] != [popcount(b) for b in m2.blocks]:
        return False
    src = [[p - 1 for p in elements(b)] for b in m1.blocks]
    dst = [[p - 1 for p in elements(b)] for b in m2.blocks]
    a1 = np.asarray(m1.ranks, dtype=np.int64)
    a2 = np.asarray(m2.ranks, dtype=np.int64)
    ys = all_masks(m1.n)
    for choice in product(*(permutations(d) for d in dst)):
        image = np.zeros_like(ys)
        for s_blk, d_blk in zip(src, choice):
            for s, d in zip(s_blk, d_blk):
                image |= ((ys >> s) & 1) << d
        if np.array_equal(a1, a2[image]):
            return True
    return False


def matroid_bases(matroid):
    """Bases as masks."""
    arr = np.asarray(matroid.ranks, dtype=np.int64)
    ys = all_masks(matroid.n)
    pc = np.bitwise_count(ys).astype(np.int64)
    return np.flatnonzero((arr == pc) & (pc == arr[-1])).tolist()


def matroid_circuits(matroid):
    """Circuits as masks: dependent sets whose every one-element deletion is independent."""
    arr = np.asarray(matroid.ranks, dtype=np.int64)
    ys = all_masks(matroid.n)
    pc = np.bitwise_count(ys).astype(np.int64)
    indep = arr == pc
    minimal = ~indep
    for i in range(matroid.n):
        has = (ys >> i) & 1 == 1
        minimal &= ~has | indep[ys & ~(1 << i)]
    return np.flatnonzero(minimal).tolist()


def independent_masks(matroid):
    arr = np.asarray(matroid.ranks, dtype=np.int64)
    pc = np.bitwise_count(all_masks(matroid.n)).astype(np.int64)
    return np.flatnonzero(arr == pc).tolist()
