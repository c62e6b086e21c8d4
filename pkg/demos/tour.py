"""Short walk through the library on small built-in categories.

Run with ``python3 demos/tour.py``.
"""

from cychom import catalog, lincat
from cychom.cohomology import cohomology_dims, cyclic_cohomology
from cychom.errors import ClassesDiffer
from cychom.hopf import HopfComplex, conjugation_category, cyclic_group_algebra, hopf_cyclic_cohomology, trivial_sayd
from cychom.morita import morita_certificate
from cychom.nerve import Cochain
from cychom.periodicity import homotopy_family_check, periodicity_S, point, verify_periodicity_theorem
from cychom.schema import parse_document


def show(title, value):
    print(f"{title:<42} {value}")


# cyclic cohomology of a few one- and two-object categories
for name, C in [("point", lincat.point_category()), ("k[x]/x^2", lincat.dual_numbers()),
                ("arrow X -> Y", lincat.arrow_category()), ("idempotent + arrow", lincat.idempotent_arrow_category())]:
    show(f"HC^0..3 of {name}", cohomology_dims(C, 3))

for phi in cyclic_cohomology(lincat.point_category(), 2).representatives[2]:
    show("degree 2 generator on the point", phi.to_dict())

# the periodicity operator on the point generator psi
psi = Cochain.from_values(point(), 2, {"1|1|1": "1"})
show("S(psi)(1,1,1,1,1)", periodicity_S(psi).value("1|1|1|1|1"))

# a Fredholm module: Chern cocycles and the periodicity witness
FM = parse_document(catalog.document("fredholm-idem-arrow")).fredholm
res = verify_periodicity_theorem(FM, 0)
show("ch^0 of the idem-arrow module", res["phi_lo"].to_dict())
show("S ch^0 + ch^2 = b psi", res["checks"]["S + (m+1) phi = b psi"])

# Morita invariance against 2 x 2 matrices
cert = morita_certificate(lincat.idempotent_category(), 2, 2)
show("HC of C and C (x) M_2", (cert["dims_C"], cert["dims_D"]))

# homotopy families: a conjugated family agrees, the adversarial pair does not
fam = parse_document(catalog.document("family-conjugated")).family
show("conjugated family, equal ch^2 classes", homotopy_family_check(fam, 0)["ok"])
try:
    homotopy_family_check(parse_document(catalog.document("family-adversarial")).family, 0)
except ClassesDiffer as exc:
    show("adversarial family", f"differs: {exc}")

# Hopf-cyclic cohomology of k[Z/2] acting on itself by conjugation
H = cyclic_group_algebra(2)
D = conjugation_category(H)
cx = HopfComplex(H, trivial_sayd(H), D)
show("HC_H^0..3, k[Z/2] by conjugation", hopf_cyclic_cohomology(H, trivial_sayd(H), D, 3, cx=cx).dims)
