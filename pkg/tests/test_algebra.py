from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from elpbank.algebra import LaurentPoly, RadicalRational, is_squarefree, squarefree_part

RADS = [1, 2, 3, 5, 6, 7, 14]

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
radicals = st.dictionaries(st.sampled_from(RADS), fractions, max_size=3).map(RadicalRational)


def to_sympy(a: RadicalRational):
    return sum((sympy.Rational(c.numerator, c.denominator) * sympy.sqrt(n) for n, c in a.items()), sympy.Integer(0))


def laurent(dim, max_terms=4, lo=-3, hi=3):
    exps = st.tuples(*[st.integers(lo, hi)] * dim)
    return st.dictionaries(exps, radicals, max_size=max_terms).map(lambda d: LaurentPoly(dim, d))


class TestSquarefree:
    @pytest.mark.parametrize("n,expected", [(1, (1, 1)), (12, (2, 3)), (18, (3, 2)), (50, (5, 2)), (7, (1, 7)), (72, (6, 2))])
    def test_split(self, n, expected):
        assert squarefree_part(n) == expected

    @given(st.integers(1, 5000))
    def test_split_recombines(self, n):
        g, s = squarefree_part(n)
        assert g * g * s == n and is_squarefree(s)
        assert sympy.sqrt(n) == g * sympy.sqrt(s)


class TestRadicalRational:
    def test_sqrt_normalizes(self):
        assert RadicalRational.sqrt(12) == RadicalRational.sqrt(3, 2)
        assert RadicalRational.sqrt(4) == 2
        assert RadicalRational.sqrt(0) == 0

    def test_products_of_radicals(self):
        s2, s3 = RadicalRational.sqrt(2), RadicalRational.sqrt(3)
        assert s2 * s2 == 2
        assert s2 * s3 == RadicalRational.sqrt(6)
        assert RadicalRational.sqrt(6) * RadicalRational.sqrt(14) == RadicalRational.sqrt(21, 2)

    def test_division_by_rational_only(self):
        s2 = RadicalRational.sqrt(2)
        assert s2 / 4 == RadicalRational.sqrt(2, Fraction(1, 4))
        with pytest.raises(TypeError):
            RadicalRational(1) / s2

    def test_str(self):
        assert str(RadicalRational.sqrt(2) / 32) == "√2/32"
        assert str(RadicalRational.sqrt(3, 2)) == "2*√3"

    def test_rational_hash_matches_fraction(self):
        assert hash(RadicalRational(Fraction(3, 4))) == hash(Fraction(3, 4))
        assert RadicalRational(Fraction(3, 4)) == Fraction(3, 4)

    def test_json_rejects_non_squarefree(self):
        with pytest.raises(ValueError):
            RadicalRational.from_json([{"num": 1, "den": 1, "rad": 12}])
        with pytest.raises(ValueError):
            RadicalRational.from_json([{"num": 0, "den": 1, "rad": 2}])

    @given(radicals)
    def test_json_roundtrip(self, a):
        assert RadicalRational.from_json(a.to_json()) == a

    @settings(max_examples=200)
    @given(radicals, radicals, radicals)
    def test_ring_laws(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == 0 and a * 1 == a and a + 0 == a

    @settings(max_examples=200)
    @given(radicals, radicals)
    def test_matches_sympy(self, a, b):
        assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
        assert sympy.expand(to_sympy(a + b) - to_sympy(a) - to_sympy(b)) == 0
        assert float(a) == pytest.approx(float(to_sympy(a)), abs=1e-12)

    @settings(max_examples=200)
    @given(radicals)
    def test_canonical_form_idempotent(self, a):
        b = RadicalRational(dict(a.items()))
        assert b == a and hash(b) == hash(a)
        assert all(is_squarefree(n) and c != 0 for n, c in a.items())


class TestLaurentPoly:
    def test_monomials_and_str(self):
        (z,) = LaurentPoly.variables(1)
        p = z ** -1 * (RadicalRational.sqrt(2) / 32)
        assert str(p) == "√2/32*z^-1"
        assert (1 - z) * (1 + z) == 1 - z**2

    def test_conjugate_negates_exponents(self):
        p = LaurentPoly(2, {(1, -2): 3, (0, 0): 1})
        assert p.conjugate() == LaurentPoly(2, {(-1, 2): 3, (0, 0): 1})

    def test_substitute(self):
        p = LaurentPoly(2, {(1, 0): 1, (0, 1): 2})
        lam = [[1, 1], [1, -1]]
        assert p.substitute(lam) == LaurentPoly(2, {(1, 1): 1, (1, -1): 2})

    def test_eval_one(self):
        p = LaurentPoly(1, {(0,): RadicalRational.sqrt(2), (3,): -RadicalRational.sqrt(2)})
        assert not p.eval_one()

    def test_inverse_of_non_monomial_rejected(self):
        (z,) = LaurentPoly.variables(1)
        with pytest.raises((ValueError, ZeroDivisionError)):
            (1 + z) ** -1

    @settings(max_examples=200)
    @given(laurent(2), laurent(2), laurent(2))
    def test_ring_laws(self, p, r, s):
        assert p * r == r * p
        assert (p * r) * s == p * (r * s)
        assert p * (r + s) == p * r + p * s
        assert (p * r).conjugate() == p.conjugate() * r.conjugate()

    @settings(max_examples=200)
    @given(laurent(2))
    def test_canonical_form_idempotent(self, p):
        again = LaurentPoly(2, dict(p.items()))
        assert again == p and hash(again) == hash(p)
        assert all(c for c in dict(p.items()).values())
        assert LaurentPoly.from_json(p.to_json(), dim=2) == p

    @settings(max_examples=100)
    @given(st.lists(st.integers(-9, 9), min_size=1, max_size=6), st.lists(st.integers(-9, 9), min_size=1, max_size=6))
    def test_product_matches_numpy_convolution(self, a, b):
        pa = LaurentPoly(1, {(i,): v for i, v in enumerate(a)})
        pb = LaurentPoly(1, {(i,): v for i, v in enumerate(b)})
        conv = np.convolve(a, b)
        prod = pa * pb
        assert all(prod.coeff((i,)) == int(v) for i, v in enumerate(conv))

    def test_eval_grid_matches_pointwise(self, rng):
        p = LaurentPoly(2, {(1, -1): 2, (0, 2): RadicalRational.sqrt(3), (-1, 0): -1})
        omegas = rng.uniform(-np.pi, np.pi, (10, 2))
        grid = p.eval_torus_grid(omegas)
        np.testing.assert_allclose(grid, [p.eval_unit_circle(w) for w in omegas], atol=1e-12)
