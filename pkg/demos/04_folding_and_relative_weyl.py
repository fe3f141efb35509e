"""Diagram automorphisms, fixed subspaces of the dual space, folded Coxeter
matrices: the combinatorial layer of Galois descent.

Run: python3 demos/04_folding_and_relative_weyl.py
"""

from twinroot import cone, gcm, weyl
from twinroot.cone import CoFunctional

AFF2 = gcm.AFFINE_A2

print("== the node flip of the affine A2 diagram ==")
flip = cone.diagram_automorphism(AFF2, (0, 2, 1))
print("orbits:", cone.orbits(AFF2, [flip]))
basis = cone.fixed_subspace(AFF2, [flip], ())
print("fixed subspace dimension:", len(basis))
for b in basis:
    print("  basis functional:", tuple(str(x) for x in b.coords))

rc = cone.relative_coxeter(AFF2, [flip])
print("folded Coxeter matrix:", rc.m, " (infinite dihedral: the twin tree)")

print()
print("== restriction of scalars at the diagram level ==")
two = gcm.validate_gcm(
    [[2, -1, 0, 0], [-1, 2, 0, 0], [0, 0, 2, -1], [0, 0, -1, 2]]
)
swap = cone.diagram_automorphism(two, (2, 3, 0, 1))
rc2 = cone.relative_coxeter(two, [swap])
print("two swapped A2 copies fold to:", rc2.m, "= the single-copy matrix")

print()
print("== facets and bounded cone membership ==")
f = CoFunctional.of([0, 1])
print("type of the wall point (0, 1):", cone.facet_type(f))
status, w = cone.cone_membership(gcm.A2, CoFunctional.of([-3, 5]))
print("descending (-3, 5) into the fundamental chamber:", status, "via", w.word)
status, _ = cone.cone_membership(gcm.AFFINE_A1, CoFunctional.of([-1, -1]), cap=50)
print("(-1, -1) against affine A1 (outside the Tits cone):", status)
