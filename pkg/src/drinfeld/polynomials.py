"""The polynomial ring A = F_q[T], its primes, residue fields and valuations.

Polynomials are sparse: a sorted tuple of (exponent, coefficient) pairs with
nonzero field coefficients.  Exponents routinely reach 10^5 and beyond, so
nothing here ever materializes a dense coefficient array.

Places of F_q(T) are either a finite place, carried by a monic irreducible
generator, or the place at infinity with v(f) = deg(den) - deg(num).
"""

from __future__ import annotations

import itertools
import re
from typing import Iterable, Sequence

import numpy as np

from .fields import Field, FieldElement, make_field, field_with_modulus


class SparsePoly:
    """Element of F_q[T] as a sorted sparse term list."""

    __slots__ = ("base", "terms")

    def __init__(self, base: Field, terms: Iterable[tuple[int, FieldElement]]):
        clean = [(e, c) for e, c in terms if c]
        clean.sort(key=lambda t: t[0])
        for (e1, _), (e2, _) in zip(clean, clean[1:]):
            if e1 == e2:
                raise ValueError("duplicate exponents; use from_pairs to merge")
        for _, c in clean:
            if c.field is not base:
                raise ValueError("coefficient field mismatch")
        self.base = base
        self.terms = tuple(clean)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_pairs(cls, base: Field, pairs: Iterable[tuple[int, FieldElement]]) -> "SparsePoly":
        acc: dict[int, FieldElement] = {}
        for e, c in pairs:
            if e in acc:
                acc[e] = acc[e] + c
            else:
                acc[e] = c
        return cls(base, acc.items())

    @classmethod
    def zero(cls, base: Field) -> "SparsePoly":
        return cls(base, [])

    @classmethod
    def one(cls, base: Field) -> "SparsePoly":
        return cls(base, [(0, base.one)])

    @classmethod
    def T(cls, base: Field) -> "SparsePoly":
        return cls(base, [(1, base.one)])

    @classmethod
    def monomial(cls, base: Field, exp: int, coeff: FieldElement | int = 1) -> "SparsePoly":
        if isinstance(coeff, int):
            coeff = base.scalar(coeff)
        return cls(base, [(exp, coeff)])

    @classmethod
    def from_coeffs(cls, base: Field, coeffs: Sequence[int]) -> "SparsePoly":
        return cls(base, [(i, base.scalar(c)) for i, c in enumerate(coeffs) if c % base.p])

    # -- basic structure --------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and self.base is other.base
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.base), self.terms))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self.terms[-1][0] if self.terms else -1

    @property
    def lead(self) -> FieldElement:
        if not self.terms:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.terms[-1][1]

    def coeff(self, e: int) -> FieldElement:
        for exp, c in self.terms:
            if exp == e:
                return c
            if exp > e:
                break
        return self.base.zero

    def constant(self) -> FieldElement:
        return self.coeff(0)

    def is_monic(self) -> bool:
        return bool(self.terms) and self.lead == self.base.one

    def monic(self) -> "SparsePoly":
        if not self.terms:
            return self
        inv = self.base.inv(self.lead)
        return SparsePoly(self.base, [(e, c * inv) for e, c in self.terms])

    # -- arithmetic --------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, SparsePoly) or other.base is not self.base:
            raise ValueError("operands from different polynomial rings")

    def __add__(self, other):
        self._check(other)
        return SparsePoly.from_pairs(self.base, itertools.chain(self.terms, other.terms))

    def __sub__(self, other):
        self._check(other)
        return SparsePoly.from_pairs(
            self.base, itertools.chain(self.terms, ((e, -c) for e, c in other.terms))
        )

    def __neg__(self):
        return SparsePoly(self.base, [(e, -c) for e, c in self.terms])

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.base:
                raise ValueError("scalar from a different field")
            return SparsePoly(self.base, [(e, c * other) for e, c in self.terms])
        if isinstance(other, int):
            return SparsePoly(self.base, [(e, c * other) for e, c in self.terms])
        self._check(other)
        acc: dict[int, FieldElement] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                prod = c1 * c2
                if e in acc:
                    acc[e] = acc[e] + prod
                else:
                    acc[e] = prod
        return SparsePoly(self.base, [(e, c) for e, c in acc.items() if c])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = SparsePoly.one(self.base)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k: int) -> "SparsePoly":
        return SparsePoly(self.base, [(e + k, c) for e, c in self.terms])

    def divmod(self, other: "SparsePoly") -> tuple["SparsePoly", "SparsePoly"]:
        self._check(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        inv_lead = self.base.inv(other.lead)
        rem = self
        q_terms: list[tuple[int, FieldElement]] = []
        dg = other.degree
        while rem and rem.degree >= dg:
            shift = rem.degree - dg
            c = rem.lead * inv_lead
            q_terms.append((shift, c))
            rem = rem - other.shift(shift) * c
        return SparsePoly(self.base, q_terms), rem

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def gcd(self, other: "SparsePoly") -> "SparsePoly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic() if a else a

    def eval_in(self, target: Field, t_image: FieldElement, embed=None) -> FieldElement:
        """Evaluate at T = t_image inside `target`.

        `embed` maps base-field coefficients into `target`; defaults to the
        scalar embedding, valid when e = 1 or base is the prime field.
        """
        if embed is None:
            if self.base.n != 1:
                raise ValueError("need an explicit embedding for non-prime coefficient fields")
            embed = lambda c: target.scalar(c.coords[0])
        acc = target.zero
        prev_e = None
        # Horner over the sparse terms, highest first
        for e, c in reversed(self.terms):
            if prev_e is None:
                acc = embed(c)
            else:
                acc = acc * t_image ** (prev_e - e) + embed(c)
            prev_e = e
        if prev_e is None:
            return target.zero
        return acc * t_image**prev_e

    def qpower_root(self, k: int = 1) -> "SparsePoly":
        """Exact q^k-th root: defined when every exponent is divisible by q^k
        (coefficients are q-power fixed).  Raises ValueError otherwise."""
        step = self.base.q**k
        out = []
        for e, c in self.terms:
            if e % step:
                raise ValueError("polynomial is not a q-power")
            out.append((e // step, c))
        return SparsePoly(self.base, out)

    def dense_coeffs(self) -> list[int]:
        """Ascending coefficient indices; only for small degrees."""
        if self.degree > 10**4:
            raise ValueError("refusing to densify a large sparse polynomial")
        out = [0] * (self.degree + 1)
        for e, c in self.terms:
            out[e] = c.to_int()
        return out

    def __repr__(self):
        return f"SparsePoly({format_poly(self)!r})"


# ---------------------------------------------------------------------------
# places
# ---------------------------------------------------------------------------


class Place:
    """A place of F_q(T): Finite(monic irreducible) or Infinity."""

    __slots__ = ("prime",)

    def __init__(self, prime: SparsePoly | None):
        if prime is not None:
            if not prime.is_monic():
                raise ValueError("finite places carry a monic generator")
            if not is_irreducible(prime):
                raise ValueError("finite places carry an irreducible generator")
        self.prime = prime

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, prime: SparsePoly) -> "Place":
        return cls(prime)

    @property
    def is_infinite(self) -> bool:
        return self.prime is None

    @property
    def degree(self) -> int:
        return 1 if self.prime is None else self.prime.degree

    def __eq__(self, other):
        return isinstance(other, Place) and (
            (self.prime is None and other.prime is None) or self.prime == other.prime
        )

    def __hash__(self):
        return hash(None if self.prime is None else self.prime)

    def __repr__(self):
        return "Place(inf)" if self.is_infinite else f"Place({format_poly(self.prime)})"


class RationalFn:
    """Element of F_q(T) as a reduced numerator / monic denominator pair."""

    __slots__ = ("num", "den")

    def __init__(self, num: SparsePoly, den: SparsePoly):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if num:
            g = num.gcd(den)
            if g.degree > 0:
                num = num // g
                den = den // g
        else:
            den = SparsePoly.one(num.base)
        lead_inv = den.base.inv(den.lead)
        self.num = num * lead_inv
        self.den = den * lead_inv

    @classmethod
    def of(cls, poly: SparsePoly) -> "RationalFn":
        return cls(poly, SparsePoly.one(poly.base))

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        return isinstance(other, RationalFn) and self.num == other.num and self.den == other.den

    def __mul__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.num, self.den * other.den)

    def __add__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.den + other.num * self.den, self.den * other.den)

    def __repr__(self):
        if self.den == SparsePoly.one(self.den.base):
            return f"RationalFn({format_poly(self.num)})"
        return f"RationalFn(({format_poly(self.num)})/({format_poly(self.den)}))"


INF = float("inf")


def poly_valuation(f: SparsePoly, v: Place):
    """Valuation of a polynomial at a place; +inf for f = 0."""
    if not f:
        return INF
    if v.is_infinite:
        return -f.degree
    g = v.prime
    if g.degree == 1 and g.terms[0][0] == 1 and len(g.terms) == 1:
        # fast path at (T): smallest exponent
        return f.terms[0][0]
    count = 0
    while True:
        q, r = f.divmod(g)
        if r:
            return count
        count += 1
        f = q


def valuation(f: SparsePoly | RationalFn, v: Place):
    """Valuation on F_q(T): multiplicative, v_inf = deg(den) - deg(num)."""
    if isinstance(f, SparsePoly):
        return poly_valuation(f, v)
    if not f.num:
        return INF
    return poly_valuation(f.num, v) - poly_valuation(f.den, v)


# ---------------------------------------------------------------------------
# irreducibility and prime enumeration over F_q
# ---------------------------------------------------------------------------


_IRRED_CACHE: dict[SparsePoly, bool] = {}


def is_irreducible(f: SparsePoly) -> bool:
    """Distinct-degree criterion via gcd(T^(q^k) - T, f) for k <= deg/2.
    Results are memoized; the prime sieve pre-fills the cache."""
    cached = _IRRED_CACHE.get(f)
    if cached is None:
        cached = _IRRED_CACHE[f] = _is_irreducible(f)
    return cached


def _is_irreducible(f: SparsePoly) -> bool:
    d = f.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    if not f.coeff(0) and d > 1:
        return False
    q = f.base.q
    # T^(q^k) mod f, iterated k = 1..d
    t = SparsePoly.T(f.base)
    u = _powmod(t, q, f)
    cur = u
    for k in range(1, d // 2 + 1):
        if k > 1:
            cur = _compose_mod(cur, u, f)
        g = f.gcd(cur - t)
        if g.degree > 0:
            return False
    return True


def _powmod(a: SparsePoly, e: int, f: SparsePoly) -> SparsePoly:
    result = SparsePoly.one(a.base)
    base = a % f
    while e:
        if e & 1:
            result = (result * base) % f
        e >>= 1
        if e:
            base = (base * base) % f
    return result


def _compose_mod(g: SparsePoly, h: SparsePoly, f: SparsePoly) -> SparsePoly:
    """g(h) mod f by Horner over g's dense coefficients (small degrees)."""
    base = g.base
    acc = SparsePoly.zero(base)
    for c in reversed(g.dense_coeffs()):
        acc = (acc * h) % f
        if c:
            acc = acc + SparsePoly.monomial(base, 0, c)
    return acc


def necklace_count(q: int, d: int) -> int:
    """Number of monic irreducibles of degree d over F_q (Moebius sum)."""
    total = 0
    for k in _divisors(d):
        total += _moebius(k) * q ** (d // k)
    return total // d


def _divisors(n):
    return [k for k in range(1, n + 1) if n % k == 0]


def _moebius(n):
    m = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            m = -m
        d += 1
    if n > 1:
        m = -m
    return m


_PRIME_CACHE: dict[tuple[int, int], list[SparsePoly]] = {}


def primes_of_degree(base: Field, d: int) -> list[SparsePoly]:
    """All monic irreducibles of degree d over F_q, ordered by ascending
    coefficient index (constant coefficient varies fastest).

    Results are cached per field; treat the returned list as read-only.
    """
    key = (id(base), d)
    if key not in _PRIME_CACHE:
        out = _primes_of_degree(base, d)
        for f in out:
            _IRRED_CACHE[f] = True
        _PRIME_CACHE[key] = out
    return _PRIME_CACHE[key]


def _primes_of_degree(base: Field, d: int) -> list[SparsePoly]:
    if d < 1:
        raise ValueError("degree must be >= 1")
    if d == 1:
        return [
            SparsePoly(base, [(e, c) for e, c in [(0, base.from_int(k)), (1, base.one)] if c])
            for k in range(base.q)
        ]
    if base.n == 1:
        return _primes_of_degree_np(base, d)
    out = []
    for combo in itertools.product(range(base.q), repeat=d):
        # combo[i] is the coefficient index of T^i; last index varies slowest
        terms = [(i, base.from_int(ci)) for i, ci in enumerate(combo) if ci]
        f = SparsePoly(base, terms + [(d, base.one)])
        if is_irreducible(f):
            out.append(f)
    out.sort(key=lambda f: _poly_index(f))
    return out


def _poly_index(f: SparsePoly) -> int:
    q = f.base.q
    idx = 0
    for e, c in f.terms:
        if e < f.degree:
            idx += c.to_int() * q**e
    return idx


def _primes_of_degree_np(base: Field, d: int) -> list[SparsePoly]:
    """Vectorized sieve over F_p: a monic degree-d poly is irreducible iff no
    monic irreducible of degree <= d/2 divides it.  Remainders under a fixed
    divisor are linear in the coefficient vector, so each divisor knocks out
    its multiples with one matrix product over all candidates."""
    p = base.p
    count = p**d
    ks = np.arange(count, dtype=np.int64)
    coeffs = np.empty((count, d + 1), dtype=np.int64)
    t = ks.copy()
    for i in range(d):
        coeffs[:, i] = t % p
        t //= p
    coeffs[:, d] = 1
    alive = np.ones(count, dtype=bool)
    for deg_g in range(1, d // 2 + 1):
        for g in primes_of_degree(base, deg_g):
            gd = g.dense_coeffs()
            red = _reduction_matrix(gd, p, d + 1)
            rem = coeffs @ red.T % p
            alive &= ~(rem == 0).all(axis=1)
    out = []
    for k in np.nonzero(alive)[0]:
        row = coeffs[k]
        out.append(SparsePoly(base, [(i, base.scalar(int(c))) for i, c in enumerate(row) if c]))
    return out


def _reduction_matrix(g: Sequence[int], p: int, ncols: int) -> np.ndarray:
    """rows x ncols matrix R with (f mod g) = R @ coeffs(f) for deg f < ncols."""
    dg = len(g) - 1
    red = np.zeros((dg, ncols), dtype=np.int64)
    # x^i mod g, iteratively
    cur = np.zeros(dg, dtype=np.int64)
    for i in range(ncols):
        if i < dg:
            col = np.zeros(dg, dtype=np.int64)
            col[i] = 1
        else:
            top = cur[-1]
            col = np.concatenate(([0], cur[:-1]))
            if top:
                col = (col - top * np.array(g[:dg], dtype=np.int64)) % p
        red[:, i] = col
        cur = col
    return red


# ---------------------------------------------------------------------------
# residue fields
# ---------------------------------------------------------------------------


class ResidueField:
    """F_l = A/(l) with the reduction map A -> F_l, T |-> fixed root of l."""

    def __init__(self, field: Field, t_image: FieldElement, prime: SparsePoly, embed):
        self.field = field
        self.t_image = t_image
        self.prime = prime
        self._embed = embed

    def reduce(self, f: SparsePoly) -> FieldElement:
        return f.eval_in(self.field, self.t_image, self._embed)

    def reduce_rational(self, f: RationalFn) -> FieldElement:
        den = self.reduce(f.den)
        if not den:
            raise ZeroDivisionError("denominator vanishes at this place")
        return self.reduce(f.num) * self.field.inv(den)

    def embed_base(self, c: FieldElement) -> FieldElement:
        return self._embed(c)


_RESIDUE_CACHE: dict[SparsePoly, ResidueField] = {}


def residue_field(prime: SparsePoly) -> ResidueField:
    """Residue field at a monic irreducible prime of A.

    For prime q (e = 1) the field simply uses the prime itself as modulus, so
    T bar is the power-basis generator.  For e > 1 the canonical field of the
    right degree is built and T bar is the first root of the prime in it.
    Instances are cached per prime.
    """
    if prime in _RESIDUE_CACHE:
        return _RESIDUE_CACHE[prime]
    rf = _residue_field(prime)
    _RESIDUE_CACHE[prime] = rf
    return rf


def _residue_field(prime: SparsePoly) -> ResidueField:
    base = prime.base
    if not prime.is_monic() or not is_irreducible(prime):
        raise ValueError("residue fields require a monic irreducible generator")
    d = prime.degree
    if base.n == 1:
        if d == 1:
            fld = make_field(base.p, 1, 1)
            c = prime.coeff(0)
            t_img = fld.scalar(-c.to_int())
        else:
            fld = field_with_modulus(base.p, 1, d, prime.dense_coeffs(), validate=False)
            t_img = fld.gen
        embed = lambda c: fld.scalar(c.to_int())
        return ResidueField(fld, t_img, prime, embed)
    # e > 1: canonical field plus explicit embedding of F_q
    fld = make_field(base.p, base.e, d)
    alpha = fld.base_generator()
    gen_pows = [fld.one]
    for _ in range(base.e - 1):
        gen_pows.append(gen_pows[-1] * alpha)

    def embed(c: FieldElement) -> FieldElement:
        acc = fld.zero
        for digit, pw in zip(c.coords, gen_pows):
            if digit:
                acc = acc + pw * digit
        return acc

    t_img = None
    for x in fld.elements():
        if not prime.eval_in(fld, x, embed):
            t_img = x
            break
    if t_img is None:
        raise ValueError("prime has no root in its residue field")  # unreachable
    return ResidueField(fld, t_img, prime, embed)


# ---------------------------------------------------------------------------
# textual syntax: `T^3+2*T+1`, ascending or descending, canonical descending
# ---------------------------------------------------------------------------


class PolySyntaxError(ValueError):
    def __init__(self, token: str):
        super().__init__(f"malformed polynomial near {token!r}")
        self.token = token


_TERM_RE = re.compile(
    r"^(?:(?P<coeff>\d+)\s*\*?\s*)?(?P<var>T)(?:\s*\^\s*(?P<exp>\d+))?$|^(?P<const>\d+)$"
)


def parse_poly(text: str, base: Field) -> SparsePoly:
    s = text.strip()
    if not s:
        raise PolySyntaxError(text)
    s = s.replace("-", "+-")
    if s.startswith("+-"):
        s = s[1:]
    pairs = []
    for raw in s.split("+"):
        tok = raw.strip()
        if not tok:
            raise PolySyntaxError(raw)
        sign = 1
        if tok.startswith("-"):
            sign = -1
            tok = tok[1:].strip()
        m = _TERM_RE.match(tok)
        if not m:
            raise PolySyntaxError(tok)
        if m.group("const") is not None:
            pairs.append((0, base.scalar(sign * int(m.group("const")))))
            continue
        coeff = int(m.group("coeff")) if m.group("coeff") else 1
        exp = int(m.group("exp")) if m.group("exp") else 1
        pairs.append((exp, base.scalar(sign * coeff)))
    return SparsePoly.from_pairs(base, pairs)


def format_poly(f: SparsePoly, var: str = "T") -> str:
    """Canonical rendering: descending exponents, integer coefficients."""
    if not f:
        return "0"
    parts = []
    for e, c in reversed(f.terms):
        ci = c.to_int()
        if e == 0:
            parts.append(str(ci))
        elif e == 1:
            parts.append(var if ci == 1 else f"{ci}*{var}")
        else:
            parts.append(f"{var}^{e}" if ci == 1 else f"{ci}*{var}^{e}")
    return "+".join(parts)


def format_field_element(x: FieldElement, var: str = "T") -> str:
    """Residue-field elements rendered as polynomials in the field generator."""
    if not x:
        return "0"
    parts = []
    for i in range(len(x.coords) - 1, -1, -1):
        ci = x.coords[i]
        if not ci:
            continue
        if i == 0:
            parts.append(str(ci))
        elif i == 1:
            parts.append(var if ci == 1 else f"{ci}*{var}")
        else:
            parts.append(f"{var}^{i}" if ci == 1 else f"{ci}*{var}^{i}")
    return "+".join(parts)
