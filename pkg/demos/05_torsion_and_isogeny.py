"""Torsion spaces with explicit Frobenius matrices, and quotient isogenies.

The l-torsion of a good reduction is located inside the smallest extension
of the residue field containing all of it; the Frobenius matrix is written
in a canonical basis so the output is reproducible.  Quotienting by a
Frobenius-stable line produces an explicit isogeny u with u*phi_T = psi_T*u.
"""

from drinfeld import (
    DrinfeldModule,
    Matrix,
    fl_line,
    format_field_element,
    format_poly,
    parse_poly,
    quotient_by_kernel,
    reduce_mod,
    torsion_space,
)

module = DrinfeldModule.default_family(5, 3)
base = module.base
prime = parse_poly("T+4", base)
ell = parse_poly("T+3", base)

reduced = reduce_mod(module, prime)
ts = torsion_space(reduced, ell)
M = ts.frobenius_matrix

print(f"p = {format_poly(prime)}, l = {format_poly(ell)}")
print("splitting degree over the residue field:", ts.m)
print("kernel F_q-dimension:", ts.dimension)
print("Frobenius matrix:")
for i in range(M.rows):
    print("  ", [format_field_element(M[i, j]) for j in range(M.cols)])
print("charpoly (ascending):", [format_field_element(c) for c in M.charpoly()])

# the charpoly has the rational eigenvalue 3: quotient by its eigenline
Fl = M.field
lam = Fl.scalar(3)
shifted = Matrix(Fl, 3, 3, [M[i, j] - (lam if i == j else Fl.zero)
                            for i in range(3) for j in range(3)])
line = fl_line(ts, shifted.kernel_basis()[0])
iso = quotient_by_kernel(ts, line)
print()
print("quotient by the eigenvalue-3 line:")
print("  u     =", iso.u.format())
print("  psi_T =", iso.target_T.format())
print("  u*phi_T == psi_T*u:", iso.verify())

iso_full = quotient_by_kernel(ts, list(ts.basis))
print("quotient by the full torsion: deg_tau u =", iso_full.u.degree,
      "; identity holds:", iso_full.verify())
