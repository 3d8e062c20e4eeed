# A small integer polymatroid seen four ways: rank table, bases,
# circuits and ranked cyclic flats. Each view rebuilds the same table.

from polymat import (bases, check_basis_axioms, check_circuit_axioms, circuits,
                     cyclic_flats, dual_bases, fig2poly, k_dual, polymatroid_from_circuits,
                     polymatroid_from_cyclic_flats, polymatroid_from_vectors,
                     RankedCyclicFlatFamily, CircuitSystem)
from polymat.io import write_poly

# The rank table, one line per subset.

rho = fig2poly()
print(write_poly(rho))

# Bases are the maximal integer vectors below the rank function.

b = bases(rho)
print("bases:", b)
print("basis exchange:", check_basis_axioms(b, "B").ok)
assert polymatroid_from_vectors(b, rho.n) == rho

# Circuits are the minimal dependent vectors inside the box of singleton ranks.

system = circuits(rho)
print("circuits:", system.circuits, "bounds:", system.bounds)
print(check_circuit_axioms(system).report_lines())
assert polymatroid_from_circuits(system) == rho

# A family that looks like circuits but breaks two of the axioms.

star = CircuitSystem((2, 2, 2), [(2, 1, 0), (0, 2, 2), (1, 1, 2), (1, 2, 1)])
for line in check_circuit_axioms(star).report_lines():
    print(line)

# Cyclic flats with their ranks, plus singleton ranks, are enough.

family = RankedCyclicFlatFamily.from_polymatroid(rho)
print("cyclic flats:", [bin(z) for z in cyclic_flats(rho)])
assert polymatroid_from_cyclic_flats(family) == rho

# The k-dual reflects every basis through (k, ..., k).

dual = k_dual(rho, 2)
print("2-dual bases:", bases(dual))
assert dual_bases(b, 2) == bases(dual)
