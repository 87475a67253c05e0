"""Go from a bank back to generators, then rebuild a new bank.

The q x q minors of the stacked highpass polyphase matrices give a valid
certificate for any pair satisfying MUEP.

Run: python3 demos/extract_and_rebuild.py
"""
from elpbank import builtin, extract_svp, muep_verify_polyphase, svp_verify, synthesize_bank

for name in ("haar", "example3", "example2"):
    pair = builtin(name).synthesize()
    h, g = pair.primal.lowpass, pair.dual.lowpass
    full = extract_svp(pair, prune=False)
    cert = extract_svp(pair)
    rebuilt = synthesize_bank(h, g, cert)
    print(f"{name:<9} s={pair.s:<3} minors={full.J:<4} nonzero={cert.J:<4} "
          f"verify={bool(svp_verify(h, g, cert))} rebuilt s={rebuilt.s} MUEP={bool(muep_verify_polyphase(rebuilt))}")
