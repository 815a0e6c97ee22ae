"""Characteristic polynomials of Frobenius at good primes.

The primary method solves the degree-bounded linear system over F_q coming
from the operator identity

    tau^(r d) + phi_(a_1) tau^((r-1)d) + ... + phi_(a_r)  =  0,   d = deg p,

with unknowns the coefficients of a_1, ..., a_r inside the bounds
deg(a_i) <= i*d/r.  For prime rank the bounded solution is unique: the
constant term is a unit times the prime itself, which rules out the only
degenerate shape (a full r-th power) the minimal polynomial could take.
A defensive disambiguation path (constant-term anchor, then CRT against
torsion-matrix oracles) covers non-prime custom ranks.

The torsion-matrix route (`charpoly_mod_l`) is kept fully independent so
the two can cross-check each other.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .fields import FieldElement
from .polynomials import SparsePoly, primes_of_degree, residue_field
from .reduction import ReducedModule, reduce_mod, torsion_space, DEFAULT_SPLITTING_CAP
from .skew import DrinfeldModule, SkewPoly


class CharPolyError(ValueError):
    pass


class CharPoly:
    """P(x) = x^r + a_1 x^(r-1) + ... + a_r with a_i in A, plus the unit
    epsilon with a_r = epsilon * p."""

    def __init__(self, prime: SparsePoly, r: int, coeffs: tuple[SparsePoly, ...],
                 epsilon: FieldElement):
        if len(coeffs) != r:
            raise CharPolyError("need exactly r coefficients a_1..a_r")
        self.prime = prime
        self.r = r
        self.a = coeffs
        self.epsilon = epsilon

    def coefficient(self, i: int) -> SparsePoly:
        """a_i for 1 <= i <= r."""
        return self.a[i - 1]

    def reduce_mod(self, ell: SparsePoly) -> list[FieldElement]:
        """Monic image in F_l[x], ascending: [a_r mod l, ..., a_1 mod l, 1]."""
        rf = residue_field(ell)
        out = [rf.reduce(a) for a in reversed(self.a)]
        out.append(rf.field.one)
        return out

    def det_of_frobenius_mod(self, ell: SparsePoly) -> FieldElement:
        """(-1)^r a_r mod l: the determinant of the mod-l Frobenius matrix."""
        rf = residue_field(ell)
        val = rf.reduce(self.a[-1])
        return val if self.r % 2 == 0 else -val

    def __eq__(self, other):
        return (
            isinstance(other, CharPoly)
            and self.prime == other.prime
            and self.a == other.a
        )

    def __repr__(self):
        from .polynomials import format_poly

        parts = [f"x^{self.r}"]
        for i, a in enumerate(self.a, start=1):
            if a:
                parts.append(f"({format_poly(a)})*x^{self.r - i}")
        return "CharPoly(" + " + ".join(parts) + ")"


def epsilon_of(module: DrinfeldModule, prime: SparsePoly) -> FieldElement:
    """The unit with a_r = epsilon * p, from the closed form
    (-1)^r (-1)^(d(r+1)) / Nr(g_r) with d = deg p and the norm taken from
    the residue field down to F_q."""
    reduced = reduce_mod(module, prime)
    return _epsilon_from_reduced(reduced)


def _epsilon_from_reduced(reduced: ReducedModule) -> FieldElement:
    if not reduced.is_good:
        raise CharPolyError("epsilon needs good reduction")
    module = reduced.module
    base = module.base
    d = reduced.prime.degree
    r = module.r
    g_r_bar = reduced.coeffs[r]
    nr = reduced.field.norm_to_base(g_r_bar)
    nr_base = _into_base(reduced, nr)
    sign = -1 if (r + d * (r + 1)) % 2 else 1
    return base.scalar(sign) * base.inv(nr_base)


def _into_base(reduced: ReducedModule, x: FieldElement):
    """Pull an element of the F_q-subfield of the residue field back to F_q."""
    base = reduced.module.base
    if base.n == 1:
        if any(x.coords[1:]):
            raise CharPolyError("norm did not land in the base field")
        return base.scalar(x.coords[0])
    # e > 1: invert the embedding on its image
    cols = []
    for j in range(base.n):
        coords = [0] * base.n
        coords[j] = 1
        cols.append(reduced.rf.embed_base(base.elem(coords)).coords)
    mat = np.array(cols, dtype=np.int64).T
    sol = linalg.solve_mod_p(mat, np.array(x.coords, dtype=np.int64), base.p)
    if sol is None:
        raise CharPolyError("norm did not land in the base field")
    return base.elem(int(v) for v in sol[0])


def _degree_bounds(r: int, d: int) -> list[int]:
    return [i * d // r for i in range(1, r + 1)]


def charpoly_linear_system(module: DrinfeldModule, prime: SparsePoly,
                           cap: int = DEFAULT_SPLITTING_CAP) -> CharPoly:
    """Characteristic polynomial of Frobenius at a good prime via the
    degree-bounded linear system; exact, no field extensions."""
    reduced = reduce_mod(module, prime)
    if not reduced.is_good:
        raise CharPolyError("bad reduction at the given prime")
    base = module.base
    r = module.r
    d = prime.degree
    bounds = _degree_bounds(r, d)
    layout = [(i, j) for i in range(1, r + 1) for j in range(bounds[i - 1] + 1)]
    ncols = len(layout)

    # coefficients of phi_(T^j) in the residue field
    phis = [reduced.phi_T_power(j) for j in range(d + 1)]
    coeff = [{e: c for e, c in f.terms} for f in phis]

    nf = reduced.field.n  # F_p-dimension of the residue field
    p = base.p
    if base.n == 1:
        rows = np.zeros(((r * d + 1) * nf, ncols), dtype=np.int64)
        rhs = np.zeros((r * d + 1) * nf, dtype=np.int64)
        for col, (i, j) in enumerate(layout):
            shift = (r - i) * d
            for e, c in coeff[j].items():
                k = e + shift
                rows[k * nf : (k + 1) * nf, col] = c.coords
        rhs[r * d * nf : r * d * nf + nf] = [(-v) % p for v in reduced.field.one.coords]
        sol = linalg.solve_mod_p(rows, rhs, p)
        if sol is None:
            raise CharPolyError("inconsistent Frobenius system (arithmetic bug)")
        vec, nullity = sol
        if nullity:
            vec = _disambiguate(module, prime, reduced, layout, rows, rhs, cap)
        a = _coeffs_from_vector(base, layout, [int(v) for v in vec], r)
    else:
        a = _charpoly_system_general(module, prime, reduced, layout, coeff, cap)

    eps = _epsilon_from_reduced(reduced)
    cp = CharPoly(prime, r, tuple(a), eps)
    _assert_residual(reduced, cp)
    return cp


def _coeffs_from_vector(base, layout, vec, r) -> list[SparsePoly]:
    acc: list[list[tuple[int, object]]] = [[] for _ in range(r)]
    for (i, j), v in zip(layout, vec):
        if v:
            acc[i - 1].append((j, base.scalar(v)))
    return [SparsePoly(base, terms) for terms in acc]


def _assert_residual(reduced: ReducedModule, cp: CharPoly):
    """Substituting Frobenius back must give the zero skew polynomial."""
    r = cp.r
    d = cp.prime.degree
    total = SkewPoly.tau(reduced.ring, r * d)
    for i in range(1, r + 1):
        total = total + reduced.phi(cp.a[i - 1]).shift_tau((r - i) * d)
    if total:
        raise CharPolyError("residual identity failed (arithmetic bug)")


def _charpoly_system_general(module, prime, reduced, layout, coeff, cap):
    """e > 1: the same system assembled over F_q with generic elimination."""
    base = module.base
    r, d = module.r, prime.degree
    rf = reduced.rf
    # express residue-field elements in F_q-coordinates via the embedding of
    # F_q and powers of the field generator
    fld = reduced.field
    dm = fld.m
    cols = []
    wpow = fld.one
    alpha_pows = [fld.one]
    alpha = fld.base_generator()
    for _ in range(base.n - 1):
        alpha_pows.append(alpha_pows[-1] * alpha)
    for i in range(dm):
        for j in range(base.n):
            cols.append((wpow * alpha_pows[j]).coords)
        wpow = wpow * fld.gen
    C = np.array(cols, dtype=np.int64).T
    p = base.p

    def fq_coords(x: FieldElement) -> list[FieldElement]:
        sol = linalg.solve_mod_p(C, np.array(x.coords, dtype=np.int64), p)
        if sol is None:
            raise CharPolyError("coordinate change failed")
        y = sol[0]
        return [base.elem(int(v) for v in y[i * base.n : (i + 1) * base.n]) for i in range(dm)]

    nrows = (r * d + 1) * dm
    rows = [[base.zero] * len(layout) for _ in range(nrows)]
    rhs = [base.zero] * nrows
    for col, (i, j) in enumerate(layout):
        shift = (r - i) * d
        for e, c in coeff[j].items():
            for t, v in enumerate(fq_coords(c)):
                rows[(e + shift) * dm + t][col] = v
    for t, v in enumerate(fq_coords(fld.one)):
        rhs[r * d * dm + t] = -v
    aug = linalg.Matrix.from_rows(base, [row + [b] for row, b in zip(rows, rhs)])
    red, pivots = aug.rref()
    ncols = len(layout)
    if any(c == ncols for c in pivots):
        raise CharPolyError("inconsistent Frobenius system (arithmetic bug)")
    if len(pivots) < ncols:
        raise CharPolyError("ambiguous system over an extension base field")
    solv = [base.zero] * ncols
    for rr, c in enumerate(pivots):
        solv[c] = red[rr][ncols]
    acc: list[list[tuple[int, object]]] = [[] for _ in range(r)]
    for (i, j), v in zip(layout, solv):
        if v:
            acc[i - 1].append((j, v))
    return [SparsePoly(base, terms) for terms in acc]


def _disambiguate(module, prime, reduced, layout, rows, rhs, cap):
    """Anchor a_r = epsilon*p, then pin remaining freedom by CRT against
    torsion oracles at the smallest primes l != p (accumulated until the
    coefficient degrees are determined)."""
    base = module.base
    p = base.p
    r, d = module.r, prime.degree
    eps = _epsilon_from_reduced(reduced)
    target = prime * eps
    extra_rows = []
    extra_rhs = []
    for col, (i, j) in enumerate(layout):
        if i == r:
            row = np.zeros(len(layout), dtype=np.int64)
            row[col] = 1
            extra_rows.append(row)
            extra_rhs.append(target.coeff(j).to_int())
    sys_rows = np.vstack([rows] + [np.array(extra_rows, dtype=np.int64)])
    sys_rhs = np.concatenate([rhs, np.array(extra_rhs, dtype=np.int64)])
    sol = linalg.solve_mod_p(sys_rows, sys_rhs, p)
    if sol is None:
        raise CharPolyError("constant-term anchor inconsistent (arithmetic bug)")
    if sol[1] == 0:
        return [int(v) for v in sol[0]]

    # CRT against torsion oracles
    degree_budget = 0
    ell_pool = _oracle_primes(base, prime)
    for ell in ell_pool:
        ts = torsion_space(reduced, ell, cap)
        cp_l = ts.frobenius_matrix.charpoly()  # ascending, monic, over F_l
        rf = ts.ell_field
        degl = ell.degree
        # a_i mod l = cp_l[r - i]: expand into deg(l) F_q-rows over the T-power basis
        for i in range(1, r + 1):
            known = cp_l[r - i]
            for t in range(degl):
                row = np.zeros(len(layout), dtype=np.int64)
                for col, (ii, j) in enumerate(layout):
                    if ii != i:
                        continue
                    tj = rf.t_image**j
                    row[col] = tj.coords[t] if t < len(tj.coords) else 0
                sys_rows = np.vstack([sys_rows, row])
                sys_rhs = np.append(sys_rhs, known.coords[t] if t < len(known.coords) else 0)
        sol = linalg.solve_mod_p(sys_rows, sys_rhs, p)
        if sol is None:
            raise CharPolyError("torsion oracle contradicts the system (arithmetic bug)")
        if sol[1] == 0:
            return [int(v) for v in sol[0]]
        degree_budget += ell.degree
        if degree_budget > d + 1:
            break
    raise CharPolyError("could not pin the characteristic polynomial")


def _oracle_primes(base, prime):
    out = []
    d = 1
    while len(out) < 6:
        for ell in primes_of_degree(base, d):
            if ell != prime:
                out.append(ell)
        d += 1
    return out


def charpoly_mod_l(module: DrinfeldModule, prime: SparsePoly, ell: SparsePoly,
                   cap: int = DEFAULT_SPLITTING_CAP) -> list[FieldElement]:
    """Characteristic polynomial of the Frobenius matrix on the l-torsion:
    monic ascending coefficients over F_l.  Independent of the linear-system
    method; the two must agree after reduction."""
    if prime == ell:
        raise CharPolyError("l must differ from the prime of reduction")
    reduced = reduce_mod(module, prime)
    if not reduced.is_good:
        raise CharPolyError("bad reduction at the given prime")
    ts = torsion_space(reduced, ell, cap)
    return ts.frobenius_matrix.charpoly()


def det_check(module: DrinfeldModule, prime: SparsePoly, ell: SparsePoly,
              charpoly: CharPoly | None = None,
              torsion: "TorsionSpace | None" = None) -> bool:
    """Determinant law: (-1)^r a_r = p mod l, and when a torsion space is
    supplied its matrix determinant must give the same residue."""
    if charpoly is None:
        charpoly = charpoly_linear_system(module, prime)
    rf = residue_field(ell)
    want = rf.reduce(prime)
    got = charpoly.det_of_frobenius_mod(ell)
    if got != want:
        return False
    if torsion is not None:
        if torsion.frobenius_matrix.det() != want:
            return False
    return True
