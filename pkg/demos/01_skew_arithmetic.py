"""Skew polynomial arithmetic and the module map a |-> phi_a.

The ring F_q(T){tau} multiplies by the twist rule tau*c = c^q*tau.  The
module is pinned down by the single image
    phi_T = T + tau^(r-1) + T^(q-1)*tau^r,
and every other phi_a follows by ring arithmetic.  This script multiplies
the generator against itself and checks the resulting six-term shape of
phi_(T^2), then tracks how the top coefficient of phi_l grows with deg l.
"""

from drinfeld import DrinfeldModule, SparsePoly, format_poly, primes_of_degree

q, r = 5, 3
module = DrinfeldModule.default_family(q, r)
base = module.base
T = SparsePoly.T(base)

print(f"q = {q}, r = {r}")
print("phi_T          =", module.phi_T.format())
print("phi_T * phi_T  =", (module.phi_T * module.phi_T).format())
print("phi_(T^2)      =", module.phi(T * T).format())
print()

print("top coefficient of phi_l against the degree of l:")
for d in (1, 2, 3):
    ell = next(f for f in primes_of_degree(base, d) if f.coeff(0))
    exp, coeff = module.phi(ell).terms[-1]
    predicted = (q - 1) * sum(q ** (r * (i - 1)) for i in range(1, d + 1))
    print(f"  l = {format_poly(ell):10s} deg_tau = {exp:2d}   "
          f"lead = {format_poly(coeff):14s} predicted T^{predicted}")
