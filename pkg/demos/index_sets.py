"""
Index sets by brute force and in closed form
============================================

Enumerate every subgroup of the split Cartan normalizer mod 5, collect
the indices of those belonging to each standard subgroup, and compare
with the closed forms that hold for every odd prime.
"""

from gl2degrees.catalog import exceptional_groups, exceptional_images
from gl2degrees.indexsets import (ImageKind, div_min, index_set_bruteforce, index_set_formula,
                                  torsion_index_set)
from gl2degrees.matgroup import all_subgroups
from gl2degrees.standard import SIX, build_canonical

Ns = build_canonical(5).Ns
subgroups = all_subgroups(Ns)
print(f"N_s(5) has order {Ns.order} and {len(subgroups)} subgroups")

# Sets are printed as Delta(lower | upper): every n with r | n | s for some
# r in lower and s in upper, minus any listed exclusions.
for M in SIX:
    brute = index_set_bruteforce(Ns, M)
    closed = index_set_formula(ImageKind.Ns, M, 5)
    print(f"  {str(M):4s} brute force {str(brute):22s} closed form {closed}"
          f"{'' if brute.values == closed.values else '  MISMATCH'}")

# The closed forms are cheap at any size.
print("\nN_ns(1009), belonging to Cs:", index_set_formula("Nns", "Cs", 1009))

# Exceptional images come from a catalog of generators.
print("\nexceptional images mod 5:", [r.index_in_gl2 for r in exceptional_groups(5)])
groups = exceptional_images(5)
print("  belonging to Cs:", index_set_bruteforce(groups, "Cs"))
print("  a twist fixes a vector, minimal indices:",
      sorted(div_min(torsion_index_set(groups, "twisted").values)))
