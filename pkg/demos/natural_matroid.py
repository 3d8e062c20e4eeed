# Every integer polymatroid is induced by a matroid where element i becomes
# a block of rho(i) clones. Here we build that matroid and check it.

import time

from polymat import (build_natural_matroid, fig1poly, natural_from_decomposition,
                     pg22_lines, type_vector, uniform, verify_natural)
from polymat.constructions import fig1_graph, rank_one_matroids
from polymat.natural import block_labels

# Seven points, each a line of the projective plane over GF(2): each line
# has rank 2, any two lines span the plane.

start = time.perf_counter()
m = build_natural_matroid(pg22_lines())
print(f"{m.n} elements, rank {m.total_rank}, {time.perf_counter() - start:.3f}s")
print("uniform of rank 3:", m == uniform(3, 14))

# A boolean polymatroid from a bipartite graph. The union of the rank-1
# matroids of its right vertices, each element repeated rho(i) times, gives
# the same matroid as the direct construction.

rho = fig1poly()
res = natural_from_decomposition(rank_one_matroids(fig1_graph()), rho)
print("union equals natural matroid:", res.equal)
print("verified:", bool(verify_natural(res.natural, rho)))

# Labels (i, t) name the t-th clone of element i. The type of a set counts
# clones per element.

print(block_labels(rho.singleton_ranks))
print(type_vector(res.natural, [(1, 1), (3, 1), (4, 2)]))
