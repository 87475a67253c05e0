from fractions import Fraction

import pytest

from elpbank.algebra import LaurentPoly
from elpbank.corpus import NAMES, UnknownExample, builtin
from elpbank.filters import FilterClass, classify_filter
from elpbank.svp import svp_residual


class TestLookup:
    def test_names(self):
        assert set(NAMES) == {"example1", "example2", "example3", "haar"}

    def test_unknown(self):
        with pytest.raises(UnknownExample):
            builtin("nope")

    def test_example1_needs_parameter(self):
        with pytest.raises(ValueError):
            builtin("example1")


class TestEntries:
    def test_dd4_sos_generator(self):
        e = builtin("example3")
        (p,) = e.sos
        assert p * p.conjugate() == e.expected["residual"]
        assert not p.eval_one()

    def test_dd4_generators(self):
        c = builtin("example3").certificate
        assert c.J == 3
        assert c.K[0] == -c.L[0] and c.K[1:] == c.L[1:]

    def test_quincunx_signs(self):
        c = builtin("example2").certificate
        signs = [1 if k == l else -1 for k, l in zip(c.K, c.L)]
        assert signs == [-1] * 4 + [1] * 7

    @pytest.mark.parametrize("a", [-1, 0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1, 2])
    def test_example1_canonical_for_sweep(self, a):
        e = builtin("example1", a)
        assert classify_filter(e.lowpass) is FilterClass.CANONICAL_LOWPASS
        assert e.certificate.J == 6

    def test_example1_at_one_is_coset_sum(self):
        # a = 1 removes the outer taps
        e = builtin("example1", 1)
        assert e.lowpass.nnz() == 7
        assert svp_residual(e.lowpass, e.lowpass) == e.certificate.product_sum(2)
