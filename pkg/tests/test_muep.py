import pytest

from elpbank.algebra import LaurentPoly
from elpbank.corpus import builtin
from elpbank.muep import extract_svp, muep_verify_grid, muep_verify_polyphase, stack_polyphase
from elpbank.svp import BankPair, FilterBank, svp_verify, synthesize_bank
from elpbank.verdict import MuepPreconditionFailed


class TestVerify:
    def test_corpus_pairs_hold(self, corpus_pairs):
        for name, pair in corpus_pairs.items():
            assert muep_verify_polyphase(pair), name

    def test_grid_agrees(self, corpus_pairs):
        for name, pair in corpus_pairs.items():
            assert muep_verify_grid(pair, grid=16) < 1e-10, name

    def test_swapped_pair_holds(self, corpus_pairs):
        assert muep_verify_polyphase(corpus_pairs["example1"].swapped())

    def test_broken_pair_fails_both_routes(self, corpus_pairs):
        pair = corpus_pairs["example3"]
        dual = FilterBank(pair.scheme, pair.dual.lowpass, (-pair.dual.highpass[0],) + pair.dual.highpass[1:])
        broken = BankPair(pair.primal, dual)
        v = muep_verify_polyphase(broken)
        assert not v and v.location is not None
        assert muep_verify_grid(broken, grid=16) > 1e-3

    def test_stacked_shape(self, corpus_pairs):
        st = stack_polyphase(corpus_pairs["example2"].primal)
        assert st.matrix.shape == (14, 2) and st.highpass.shape == (13, 2)


class TestExtract:
    def test_haar_unpruned(self, corpus_pairs):
        cert = extract_svp(corpus_pairs["haar"], prune=False)
        # one 2x2 minor, and it vanishes since the residual is zero
        assert cert.J == 1 and cert.K[0].is_zero()
        assert extract_svp(corpus_pairs["haar"]).J == 0

    def test_dd4_subset_count(self, corpus_pairs):
        assert extract_svp(corpus_pairs["example3"], prune=False).J == 10
        assert extract_svp(corpus_pairs["example3"]).J <= 10

    @pytest.mark.parametrize("name", ["haar", "example3", "example3-tight", "example2", "example1"])
    def test_roundtrip(self, corpus_pairs, name):
        pair = corpus_pairs[name]
        cert = extract_svp(pair)
        h, g = pair.primal.lowpass, pair.dual.lowpass
        assert svp_verify(h, g, cert)
        again = synthesize_bank(h, g, cert)
        assert muep_verify_polyphase(again)

    def test_parallel_matches_serial(self, corpus_pairs):
        pair = corpus_pairs["example3"]
        assert extract_svp(pair, parallel=True) == extract_svp(pair)

    def test_rejects_non_muep_pair(self, corpus_pairs):
        pair = corpus_pairs["example3"]
        broken = BankPair(pair.primal, FilterBank(pair.scheme, pair.dual.lowpass, pair.dual.highpass[::-1]))
        with pytest.raises(MuepPreconditionFailed):
            extract_svp(broken)
