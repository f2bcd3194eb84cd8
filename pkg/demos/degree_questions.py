"""
Three degree questions for curves with rational j-invariant
===========================================================

For a prime ell, which degrees d admit a field over which the mod-ell
image shrinks into a given standard subgroup, the ell-torsion field is
abelian over a degree-d subfield, or a point of order ell appears?
"""

from gl2degrees.catalog import class_number, pq_membership
from gl2degrees.indexsets import render_set
from gl2degrees.standard import FIVE
from gl2degrees.theorems import K_set, S_M, T_set, cm_odd_degree_verdict, thm1, thm2, thm3

for ell in (7, 13, 23):
    print(f"ell = {ell}")
    for M in FIVE:
        print(f"  minimal degrees into {str(M):3s}: {sorted(S_M(ell, M))}")
    print("  abelian subextension degrees:", render_set(K_set(ell)))
    print("  point of order ell, minimal degrees:", sorted(T_set(ell)),
          "(base change from Q:", sorted(T_set(ell, mode="over_Q")), ")")

print("\nthm1(13, 26, Cs):", thm1(13, 26, "Cs"))
print("thm2(7, 26):", thm2(7, 26))
print("thm3(13, 9):", thm3(13, 9), " thm3(13, 9, over_Q):", thm3(13, 9, mode="over_Q"))

# Primes where every CM discriminant behaves the same way.
print("\n3167 (all nonresidues), 15073 (all residues):", pq_membership(3167), pq_membership(15073))
print("CM minimal degrees into Nns at 3167:", sorted(S_M(3167, "Nns", "cm")))

# Odd degrees of CM torsion, for ell = 3 mod 4.
for ell in (19, 23, 43, 47):
    w, verdict = cm_odd_degree_verdict(ell)
    print(f"  ell={ell}: h={class_number(ell)}, odd multiples of {w}: {verdict}")
