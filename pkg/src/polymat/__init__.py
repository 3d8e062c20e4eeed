"""Exact integer polymatroids: rank tables, natural matroids, vector
independence, circuits and cyclic flats."""

from .core import (Matroid, Polymatroid, check_polymatroid_axioms, direct_sum,
                   first_violation, is_connected, is_direct_sum_split, k_dual,
                   minor, restriction, scale, separators, validate)
from .constructions import (BipartiteGraph, LatticePathDiagram, binary_matroid,
                            boolean_polymatroid, builtin, count_lattice_paths,
                            fano, fig1poly, fig2poly, fig3poly, induced_polymatroid,
                            lattice_path_polymatroid, pg22_lines, rank_one_matroids,
                            uniform, vamos2poly)
from .natural import (block_isomorphic, build_natural_matroid, matroid_union,
                      natural_contraction, natural_from_decomposition,
                      natural_independent, type_vector, verify_natural)
from .vectors import (CircuitSystem, bases, check_basis_axioms,
                      check_circuit_axioms, check_independence_axioms, circuits,
                      dual_bases, element_rank_and_cyclicity_from_circuits,
                      independent_vectors, is_independent, polymatroid_from_circuits,
                      polymatroid_from_vectors, rank_from_vectors)
from .verdict import Verdict
from .zflats import (RankedCyclicFlatFamily, check_Z_axioms, closure, cy,
                     cyclic_flat_lattice, cyclic_flats, polymatroid_from_cyclic_flats,
                     r_set, recast_R_test)
from .errors import *  # noqa: F401,F403
