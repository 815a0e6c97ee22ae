"""Reduction types and heights across the primes of F_q[T].

At (T) the top coefficient T^(q-1) dies and the reduction drops to rank
r-1 (stable bad reduction); everywhere else the module stays good.  At
every good linear prime the image of the prime itself starts at tau^(r-1),
so the height is r-1 and the torsion at the characteristic is as thin as
the height allows.
"""

from drinfeld import (
    DrinfeldModule,
    SparsePoly,
    format_poly,
    height,
    primes_of_degree,
    reduce_mod,
    torsion_at_char,
)

module = DrinfeldModule.default_family(5, 3)
base = module.base

print("prime      type           height  dim ker phi_p  dim ker phi_(p^2)")
for d in (1, 2):
    for prime in primes_of_degree(base, d):
        reduced = reduce_mod(module, prime)
        h = height(reduced)
        dims = (torsion_at_char(reduced, 1), torsion_at_char(reduced, 2))
        print(f"{format_poly(prime):10s} {reduced.describe():14s} {h:^6d} "
              f"{dims[0]:^13d} {dims[1]:^17d}")
print()
print("reduced phi_T at (T):", reduce_mod(module, SparsePoly.T(base)).phi_T.format())
