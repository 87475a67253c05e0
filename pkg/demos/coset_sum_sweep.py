"""Dyadic 2-D coset-sum filters over a range of the free parameter.

Run: python3 demos/coset_sum_sweep.py
"""
from fractions import Fraction

from elpbank import builtin, classify_filter, muep_verify_polyphase, verify_core_identity

print(f"{'a':>5}  {'class':<17} {'core':<6} {'s':>3}  primal taps / dual taps")
for a in [-1, 0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1, 2]:
    e = builtin("example1", a)
    c = e.certificate
    core = verify_core_identity(e.lowpass, e.lowpass, c.K, c.L)
    pair = e.synthesize()
    assert muep_verify_polyphase(pair)
    print(
        f"{str(a):>5}  {classify_filter(e.lowpass).value:<17} {str(bool(core)):<6} {pair.s:>3}  "
        f"{sum(pair.primal.tap_counts())} / {sum(pair.dual.tap_counts())}"
    )
