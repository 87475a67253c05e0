"""Quasi-tight and tight banks from the order-4 interpolatory filter.

Run: python3 demos/dd4_quasi_tight.py
"""
from elpbank import builtin, muep_verify_polyphase, svp_residual

entry = builtin("example3")
h = entry.lowpass
print("lowpass taps:", {m[0]: str(c) for m, c in h.taps.items()})

# the certificate writes 1 - H H* as a signed sum of vanishing products
print("1 - H H* =", svp_residual(h, h))
for k, l in zip(entry.certificate.K, entry.certificate.L):
    print("  +", f"({k}) * conj({l})")

pair = entry.synthesize()
print("\nquasi-tight bank: s =", pair.s)
print("highpass tap counts:", pair.primal.tap_counts())
print("dual = primal up to signs", pair.sign_pattern())
print("MUEP:", muep_verify_polyphase(pair).describe())

# the same residual also factors as |p|^2, giving a tight bank
tight = entry.synthesize_tight()
print("\ntight bank: s =", tight.s, "taps", tight.primal.tap_counts(), "tight:", tight.is_tight())
