# Cyclic sets, cyclic flats and the family of cyclic flats that attain the
# rank of a set through the min formula.

from polymat import closure, cyclic_flats, fano, r_set, vamos2poly
from polymat.io import fmt_set
from polymat.zflats import cyclic_sets, lifting_report

# In this polymatroid on four elements, only the singletons and one
# pair fail to be cyclic.

rho = vamos2poly()
missing = sorted(set(range(1 << rho.n)) - set(cyclic_sets(rho)))
print("not cyclic:", [fmt_set(a) for a in missing])

# For a basis of the Fano plane the minimisers are the empty set, the three
# lines through pairs of basis points, and the whole plane. The other four
# lines lie between the least and greatest members, so this is not an interval.

f = fano()
rep = r_set(f, {1, 2, 4})
for line in rep.lines(f):
    print(line)

# Flats, cyclic sets and cyclic flats match those of the natural matroid.

print(lifting_report(rho))
print(len(cyclic_flats(f)), "cyclic flats in the Fano plane")
