"""Frobenius characteristic polynomials two ways.

The linear-system route solves the degree-bounded operator identity over
F_q and needs no field extensions; the torsion route builds the l-torsion
inside its splitting field and takes the characteristic polynomial of the
actual Frobenius matrix.  The two must agree after reduction mod l, and
the constant term must be the prime itself times a unit.
"""

from drinfeld import (
    DrinfeldModule,
    charpoly_linear_system,
    charpoly_mod_l,
    det_check,
    epsilon_of,
    format_field_element,
    format_poly,
    parse_poly,
)

module = DrinfeldModule.default_family(5, 3)
base = module.base

print("linear primes give x^3 + x^2 - (T-c):")
for c in (1, 2, 3):
    prime = parse_poly(f"T+{5 - c}", base)
    cp = charpoly_linear_system(module, prime)
    print(f"  p = {format_poly(prime)}: a =",
          [format_poly(a) for a in cp.a], " epsilon =", cp.epsilon.to_int())

prime = parse_poly("T^2+2", base)
cp = charpoly_linear_system(module, prime)
print(f"\ndegree-2 prime {format_poly(prime)}:")
print("  a_1, a_2, a_3 =", [format_poly(a) for a in cp.a])
print("  a_3 == epsilon * p:", cp.a[2] == prime * epsilon_of(module, prime))

for ell_text in ("T+4", "T+2"):
    ell = parse_poly(ell_text, base)
    torsion = charpoly_mod_l(module, prime, ell)
    system = cp.reduce_mod(ell)
    print(f"  mod {format_poly(ell)}: torsion route",
          [format_field_element(x) for x in torsion],
          " system route", [format_field_element(x) for x in system],
          " det law:", det_check(module, prime, ell, charpoly=cp))
