import numpy as np
import pytest

from absep import falsify
from absep.spectra import Bipartite, Multiqudit, mms, validate_spectrum


class TestHaar:
    def test_unitary(self):
        u = falsify.haar_unitary(6, 0)
        assert np.max(np.abs(u @ u.conj().T - np.eye(6))) <= 1e-12

    def test_deterministic(self):
        assert np.array_equal(falsify.haar_unitary(4, 5), falsify.haar_unitary(4, 5))

    def test_batch_matches_single(self):
        batch = falsify._batched_haar(master_seed=3, start=10, count=4, dim=5)
        for i in range(4):
            single = falsify.haar_unitary(5, falsify._sample_seed(3, 10 + i))
            assert np.max(np.abs(batch[i] - single)) <= 1e-12


class TestPtSubsets:
    def test_bipartite(self):
        assert falsify.pt_subsets(2) == [(0,)]

    def test_three_factors(self):
        assert falsify.pt_subsets(3) == [(0,), (1,), (2,)]

    def test_four_factors_dedups_complements(self):
        subs = falsify.pt_subsets(4)
        assert len(subs) == 7  # 4 singletons + 3 of the 6 pairs
        assert all(0 in sub for sub in subs if len(sub) == 2)


class TestFalsifyAp:
    def test_positive_control(self):
        s = validate_spectrum([1 / 7, 1 / 7, 1 / 7, 4 / 7])
        out = falsify.falsify_ap(s, Bipartite(2, 2), samples=5000, seed=0)
        assert out.witness_found
        assert out.witness_sample_index is not None

    def test_negative_control_mms(self):
        out = falsify.falsify_ap(mms(4), Bipartite(2, 2), samples=500, seed=0)
        assert not out.witness_found
        assert out.best_min_pt_eig >= -falsify.EPS_NEG
        assert out.samples_run == 500

    def test_reproduce_witness(self):
        s = validate_spectrum([1 / 7, 1 / 7, 1 / 7, 4 / 7])
        out = falsify.falsify_ap(s, Bipartite(2, 2), samples=5000, seed=0)
        again = falsify.reproduce_witness(out, s, dims=Bipartite(2, 2))
        assert again == pytest.approx(out.best_min_pt_eig, abs=1e-12)

    def test_reproduce_requires_witness(self):
        out = falsify.falsify_ap(mms(4), Bipartite(2, 2), samples=10, seed=0)
        with pytest.raises(falsify.FalsifyError):
            falsify.reproduce_witness(out, mms(4), dims=Bipartite(2, 2))

    def test_deterministic_given_seed(self):
        s = validate_spectrum([0.05, 0.1, 0.15, 0.7])
        a = falsify.falsify_ap(s, Bipartite(2, 2), samples=300, seed=11)
        b = falsify.falsify_ap(s, Bipartite(2, 2), samples=300, seed=11)
        assert a == b

    def test_multiqudit_layout(self):
        rng = np.random.default_rng(0)
        s = validate_spectrum(np.sort(rng.dirichlet(np.ones(8))))
        out = falsify.falsify_ap(s, Multiqudit(2, 3), samples=200, seed=1)
        assert out.samples_run <= 200

    def test_length_mismatch(self):
        with pytest.raises(falsify.FalsifyError):
            falsify.falsify_ap(mms(4), Bipartite(2, 3), samples=10, seed=0)


class TestFalsifySap:
    def test_negative_control_symmetric_mms(self):
        out = falsify.falsify_sap(mms(4), 2, 3, samples=300, seed=0)
        assert not out.witness_found

    def test_positive_control_spiked(self):
        s = validate_spectrum([0.01, 0.01, 0.01, 0.97])
        out = falsify.falsify_sap(s, 2, 3, samples=2000, seed=0)
        assert out.witness_found
        again = falsify.reproduce_witness(out, s, symmetric_dn=(2, 3))
        assert again == pytest.approx(out.best_min_pt_eig, abs=1e-12)

    def test_length_checked(self):
        with pytest.raises(falsify.FalsifyError):
            falsify.falsify_sap(mms(5), 2, 3, samples=10, seed=0)

    def test_early_stop_off_runs_all(self):
        s = validate_spectrum([0.01, 0.01, 0.01, 0.97])
        out = falsify.falsify_sap(s, 2, 3, samples=1500, seed=0, early_stop=False)
        assert out.samples_run == 1500
