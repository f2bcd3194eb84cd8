"""
Where does a subgroup of GL2 sit?
=================================

Build the standard subgroups mod 7, then ask which of them a few small
groups can be conjugated into, which one they *belong* to (the smallest
such), and what Dickson's classification says about them.
"""

from gl2degrees.matgroup import Mat2, closure
from gl2degrees.modarith import make_ctx
from gl2degrees.standard import (FIVE, StandardKind, belongs_to, belongs_to_cr, build_canonical,
                                 conj_into, dickson_class)

ctx = make_ctx(7)
print(f"ell = {ctx.ell}: nonresidue {ctx.epsilon}, primitive root {ctx.alpha}, |GL2| = {ctx.gl2_order}")

# The canonical groups are written down element by element.
canon = build_canonical(ctx)
for name in ("Z", "Cs", "Cns", "Ns", "Nns", "Cr", "Borel", "G", "H1", "H2"):
    print(f"  {name:5s} order {canon.get(name).order}")

# A rotation by a quarter turn has no eigenvector over F_7, so it fits
# inside a nonsplit Cartan but not a split one.
rotation = closure(ctx, [Mat2(0, -1, 1, 0, 7)])
print("\nquarter turn, order", rotation.order)
for M in StandardKind:
    print(f"  conjugate into {M}: {conj_into(rotation, M)}")
print("  belongs to:", [str(M) for M in FIVE if belongs_to(rotation, M)])

# A unipotent element generates a group belonging to the ramified Cartan.
unipotent = closure(ctx, [Mat2(1, 1, 0, 1, 7)])
print("\nunipotent group belongs to Cr:", belongs_to_cr(unipotent))

# Dickson's classification of a few groups.
for label, H in [("Borel", canon.Borel), ("GL2", canon.Full), ("Nns", canon.Nns),
                 ("Cs", canon.Cs), ("quarter turn", rotation)]:
    print(f"  {label:13s} -> {dickson_class(H).name}")
