"""Two-dimensional quincunx bank with eleven signed generators.

Run: python3 demos/quincunx.py
"""
import numpy as np

from elpbank import builtin, muep_verify_grid, muep_verify_polyphase, polyphase_decompose, sub_qmf_check

entry = builtin("example2")
h = entry.lowpass
print("dilation", entry.scheme.lam, "q =", entry.scheme.q)

for nu, comp in zip(entry.scheme.gamma, polyphase_decompose(h).components):
    print(f"H_{nu} =", comp)

# the filter is sub-QMF, so a numeric minimum of 1 - |H|^2 stays non-negative
print("sub-QMF minimum:", f"{sub_qmf_check(h).min_value:.2e}")

pair = entry.synthesize()
print("highpass filters per side:", pair.s)
print("negated in the dual:", [i + 1 for i, s in enumerate(pair.sign_pattern()) if s < 0])
print("exact MUEP:", muep_verify_polyphase(pair).describe())
print("grid MUEP deviation:", f"{muep_verify_grid(pair, grid=32):.2e}")

sizes = np.array(pair.primal.tap_counts())
print("taps: min", sizes.min(), "max", sizes.max(), "total", sizes.sum())
