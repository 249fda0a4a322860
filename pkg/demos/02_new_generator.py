#!/usr/bin/env python3
"""The degree -4 class Phi_t^{sts} and the relations it satisfies.

Phi is determined by sending the rho_s Koszul generator to 1 (x) 1 (x) 1 (x) 1;
its value on gamma_t is then forced by the cocycle condition.  We solve for
it, lift it to a chain map between Koszul complexes and check a handful of
diagrammatic relations as identities of Ext classes.
"""

from soergel_ext import koszul as K
from soergel_ext.ext import cohomology_dim, is_coboundary, is_cocycle, solve_phi
from soergel_ext.polyring import PolyRing
from soergel_ext.relations import CATALOG, verify_relation
from soergel_ext.scalars import Realm

for m in (None, 3, 5):
    R = PolyRing(Realm(m), 2)
    phi = solve_phi(R, "sts")
    print(f"m={R.realm.label}: dim Ext^(1,-4)(B_t, B_sB_tB_s) = {cohomology_dim(R, 't', 'sts', 1, -4)}, "
          f"Phi cocycle={is_cocycle(phi)}, nonzero={not is_coboundary(phi)}")

R = PolyRing(Realm(None), 2)
phi = solve_phi(R, "sts")
print("gamma-value of Phi in the monomial basis:")
print(" ", phi.value("gamma"))

# As a chain map K_t -> K_s K_t K_s of bidegree (1, -4).
lift = K.phi_lift(phi)
print("lift:", lift, "chain map:", lift.check(kmax=2, mid_units=1))

# A relation report records the bidegree of the two sides and whether they
# agree, agree up to sign, or differ.
for name in ["barbell", "4ext-reduction", "4ext-rotation", "newgen-square", "2m-absorption"]:
    r = verify_relation(name)
    print(f"{name:18s} {r.realm:16s} Ext^{r.bidegree}  {r.status}   ({CATALOG[name].doc})")
