"""Random integer polymatroids induced from random binary matroids."""

import random

from .constructions import binary_matroid, induced_polymatroid


def random_binary_matroid(rng, max_rank=5, max_elements=10):
    rank = rng.randint(1, max_rank)
    size = rng.randint(rank, max(rank, max_elements))
    # mostly nonzero columns; an occasional zero gives loops
    columns = [0 if rng.random() < 0.05 else rng.randrange(1, 1 << rank)
               for _ in range(size)]
    return binary_matroid(columns)


def random_polymatroid(seed=None, max_n=5, max_element_rank=3, max_rank=5,
                       max_elements=10, n=None):
    """A random integer polymatroid with at most ``max_n`` elements.

    Each element is sent to a random set of at most ``max_element_rank``
    points of a random GF(2) matroid, so every singleton rank stays within
    that bound.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    matroid = random_binary_matroid(rng, max_rank, max_elements)
    if n is None:
        n = rng.randint(1, max_n)
    points = list(range(1, matroid.n + 1))
    phi = []
    for _ in range(n):
        size = 0 if rng.random() < 0.08 else rng.randint(1, min(max_element_rank, len(points)))
        phi.append(rng.sample(points, size))
    return induced_polymatroid(matroid, phi)


def instances(count=100, seed=0, **kwargs):
    """``count`` reproducible random polymatroids."""
    rng = random.Random(seed)
    return [random_polymatroid(rng, **kwargs) for _ in range(count)]
