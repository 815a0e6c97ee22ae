import random

import pytest

from drinfeld.fields import FieldError, lex_smallest_irreducible, make_field


def brute_irreducible(coeffs, p):
    """Trial division by every lower-degree monic polynomial (test oracle)."""
    n = len(coeffs) - 1
    if n == 1:
        return True
    for d in range(1, n // 2 + 1):
        for idx in range(p**d):
            g = []
            t = idx
            for _ in range(d):
                g.append(t % p)
                t //= p
            g.append(1)
            if not any(poly_mod(coeffs, g, p)):
                return False
    return True


def poly_mod(f, g, p):
    f = list(f)
    dg = len(g) - 1
    while len(f) - 1 >= dg:
        while f and f[-1] == 0:
            f.pop()
        if len(f) - 1 < dg:
            break
        c = f[-1] * pow(g[-1], p - 2, p) % p
        shift = len(f) - 1 - dg
        for i, gc in enumerate(g):
            f[i + shift] = (f[i + shift] - c * gc) % p
    while f and f[-1] == 0:
        f.pop()
    return f


def brute_lex_smallest(p, n):
    """First monic irreducible in ascending coefficient-index order (oracle)."""
    for idx in range(p**n):
        coeffs = []
        t = idx
        for _ in range(n):
            coeffs.append(t % p)
            t //= p
        coeffs.append(1)
        if brute_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError


class TestMakeField:
    def test_prime_field_modulus(self):
        assert make_field(5, 1, 1).modulus == (0, 1)

    def test_f25_modulus_matches_scan_oracle(self):
        assert brute_lex_smallest(5, 2) == (2, 0, 1)
        assert make_field(5, 1, 2).modulus == (2, 0, 1)

    def test_f343_modulus_matches_scan_oracle(self):
        assert make_field(7, 1, 3).modulus == brute_lex_smallest(7, 3)

    @pytest.mark.parametrize("p,n", [(5, 4), (7, 2), (3, 5), (5, 6)])
    def test_scan_agrees_with_oracle(self, p, n):
        assert lex_smallest_irreducible(p, n) == brute_lex_smallest(p, n)

    def test_large_degree_modulus_has_no_small_factor(self):
        # the full oracle is infeasible at degree 40; check factors up to 3
        f = lex_smallest_irreducible(5, 40)
        for d in range(1, 4):
            for idx in range(5**d):
                g = []
                t = idx
                for _ in range(d):
                    g.append(t % 5)
                    t //= 5
                g.append(1)
                assert any(poly_mod(list(f), g, 5))

    def test_rejects_nonprime(self):
        with pytest.raises(FieldError):
            make_field(6, 1, 1)

    def test_rejects_zero_degree(self):
        with pytest.raises(FieldError):
            make_field(5, 1, 0)

    def test_caching_is_identity(self):
        assert make_field(5, 1, 2) is make_field(5, 1, 2)


class TestFieldAxioms:
    @pytest.mark.parametrize("p,e,m", [(5, 1, 1), (5, 1, 2), (7, 1, 3), (5, 2, 2)])
    def test_axioms_on_random_samples(self, p, e, m):
        fld = make_field(p, e, m)
        rng = random.Random(20260809)
        for _ in range(60):
            a = fld.from_int(rng.randrange(fld.order))
            b = fld.from_int(rng.randrange(fld.order))
            c = fld.from_int(rng.randrange(fld.order))
            assert (a + b) * c == a * c + b * c
            assert (a * b) * c == a * (b * c)
            assert a * b == b * a
            if a:
                assert a * fld.inv(a) == fld.one

    def test_int_round_trip(self):
        fld = make_field(5, 1, 3)
        for k in range(0, 125, 7):
            assert fld.from_int(k).to_int() == k


class TestFrobenius:
    def test_fixed_on_prime_field(self):
        fld = make_field(7, 1, 3)
        for c in range(7):
            x = fld.scalar(c)
            assert fld.frobenius(x, 1) == x

    def test_full_orbit_is_identity(self):
        fld = make_field(5, 1, 4)
        rng = random.Random(3)
        for _ in range(10):
            x = fld.from_int(rng.randrange(fld.order))
            assert fld.frobenius(x, fld.m) == x

    def test_matches_repeated_multiplication_oracle(self):
        fld = make_field(5, 1, 2)
        rng = random.Random(11)
        for _ in range(20):
            x = fld.from_int(rng.randrange(25))
            want = x * x * x * x * x  # x^5 spelled out
            assert fld.frobenius(x, 1) == want

    def test_is_ring_homomorphism(self):
        fld = make_field(5, 1, 3)
        rng = random.Random(5)
        for _ in range(30):
            x = fld.from_int(rng.randrange(fld.order))
            y = fld.from_int(rng.randrange(fld.order))
            assert fld.frobenius(x + y) == fld.frobenius(x) + fld.frobenius(y)
            assert fld.frobenius(x * y) == fld.frobenius(x) * fld.frobenius(y)

    def test_qth_root_inverts(self):
        fld = make_field(5, 1, 4)
        rng = random.Random(7)
        for _ in range(10):
            x = fld.from_int(rng.randrange(fld.order))
            assert fld.frobenius(fld.qth_root(x), 1) == x

    def test_e2_frobenius_fixes_base_subfield(self):
        fld = make_field(5, 2, 2)  # F_625 over F_25
        alpha = fld.base_generator()
        assert fld.frobenius(alpha, 1) == alpha  # q = 25 power fixes F_25
        assert alpha * alpha != fld.zero

    def test_norm_lands_in_base(self):
        fld = make_field(5, 1, 3)
        rng = random.Random(13)
        for _ in range(10):
            x = fld.from_int(rng.randrange(1, fld.order))
            nr = fld.norm_to_base(x)
            assert all(c == 0 for c in nr.coords[1:])
            # norm is x^((q^3-1)/(q-1))
            assert nr == x ** ((5**3 - 1) // (5 - 1))
