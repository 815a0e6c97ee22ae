"""Newton polygons: slopes, ramification sizes, and an irreducibility proof.

Slopes of the torsion polynomial phi_l(x)/x at (T) have lowest-terms
denominators bounding the wild local image there: the largest denominator
is exactly q^((r-1) deg l).  At infinity the polygon of phi_(T-c)(x)/x is
one segment whose denominator equals its degree, which certifies the
polynomial irreducible outright.
"""

from drinfeld import (
    DrinfeldModule,
    Place,
    SparsePoly,
    format_poly,
    inertia_order_prediction,
    newton_polygon,
    np_irreducibility,
    parse_poly,
    torsion_slopes,
)

module = DrinfeldModule.default_family(5, 3)
base = module.base
T = SparsePoly.T(base)
at_T = Place.finite(T)

print("phi_T(x) at infinity:", newton_polygon(module.phi_as_x_poly(T), Place.infinity()).segments)
print()

for text in ("T+4", "T^2+2"):
    ell = parse_poly(text, base)
    segs = torsion_slopes(module, ell, at_T)
    print(f"phi_l(x)/x at (T) for l = {format_poly(ell)}:")
    for slope, length in segs:
        print(f"  slope {str(slope):8s} length {length}")
    print("  predicted local image size at (T):", inertia_order_prediction(module, ell))
    print()

prime = parse_poly("T+4", base)
coeffs = [(e - 1, c) for e, c in module.phi_as_x_poly(prime)]
print(f"phi_(T-1)(x)/x at infinity: {np_irreducibility(coeffs, Place.infinity())}")
print("segments:", newton_polygon(coeffs, Place.infinity()).segments)

print()
print("phi_(T^2)(x)/x at (T) shows the mod-(T^2) valuation separation:")
for slope, length in torsion_slopes(module, T * T, at_T):
    print(f"  slope {str(slope):8s} length {length}")
