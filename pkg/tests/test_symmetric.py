import math

import numpy as np
import pytest

from absep import maps, symmetric
from absep.spectra import SymmetricMultiqudit, mms


class TestDickeBasis:
    @pytest.mark.parametrize("d,n", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)])
    def test_isometry(self, d, n):
        basis = symmetric.build_dicke_basis(d, n)
        assert basis.subspace_dim == SymmetricMultiqudit(d, n).total_dim
        assert basis.full_dim == d**n
        gram = basis.isometry.T @ basis.isometry
        assert np.max(np.abs(gram - np.eye(basis.subspace_dim))) <= 1e-12

    def test_occupations_order_and_count(self):
        occs = symmetric.occupations(2, 3)
        assert occs == [(3, 0), (2, 1), (1, 2), (0, 3)]

    def test_columns_invariant_under_swap(self):
        basis = symmetric.build_dicke_basis(2, 3)
        # swapping qubits 0 and 1 permutes full-space indices; columns are fixed
        swap = np.zeros((8, 8))
        for i in range(8):
            b = [(i >> 2) & 1, (i >> 1) & 1, i & 1]
            b[0], b[1] = b[1], b[0]
            j = (b[0] << 2) | (b[1] << 1) | b[2]
            swap[j, i] = 1.0
        assert np.max(np.abs(swap @ basis.isometry - basis.isometry)) <= 1e-12

    def test_too_large_rejected(self):
        with pytest.raises(symmetric.DimensionTooLarge):
            symmetric.build_dicke_basis(2, 25)


class TestEmbed:
    def test_embedded_trace_preserved(self):
        basis = symmetric.build_dicke_basis(2, 3)
        rho = symmetric.embed(np.diag([0.1, 0.2, 0.3, 0.4]), basis)
        assert rho.trace == pytest.approx(1.0, abs=1e-12)

    def test_embedded_spectrum_padded_with_zeros(self):
        basis = symmetric.build_dicke_basis(2, 2)
        rho = symmetric.embed(np.diag([0.2, 0.3, 0.5]), basis)
        eigs = np.sort(np.linalg.eigvalsh(rho.matrix))
        assert eigs[0] == pytest.approx(0.0, abs=1e-12)
        assert np.allclose(eigs[1:], [0.2, 0.3, 0.5])

    def test_shape_mismatch(self):
        basis = symmetric.build_dicke_basis(2, 2)
        with pytest.raises(symmetric.DimsMismatch):
            symmetric.embed(np.eye(4), basis)


class TestIdentityPtBound:
    @pytest.mark.parametrize(
        "d,n,k",
        [(2, 2, 1), (2, 3, 1), (2, 4, 1), (2, 4, 2), (3, 2, 1), (4, 2, 1)],
    )
    def test_matches_binomial(self, d, n, k):
        got = symmetric.symmetric_identity_pt_min_eig(d, n, k)
        assert got == pytest.approx(1.0 / math.comb(n, k), abs=1e-10)

    def test_k_range(self):
        with pytest.raises(symmetric.SymmetricError):
            symmetric.symmetric_identity_pt_min_eig(2, 4, 3)


class TestSapEmbeddingOracle:
    def test_symmetric_mms_is_ppt(self):
        report = symmetric.sap_check_via_embedding(np.eye(4) / 4, 2, 3)
        assert set(report) == {1}
        assert report[1] >= -1e-12

    def test_pure_dicke_extreme_is_npt(self):
        rho = np.zeros((4, 4))
        rho[1, 1] = 1.0  # a single Dicke state is symmetric but entangled
        report = symmetric.sap_check_via_embedding(rho, 2, 3)
        assert report[1] < -1e-6

    def test_two_cuts_for_n4(self):
        report = symmetric.sap_check_via_embedding(np.eye(5) / 5, 2, 4)
        assert set(report) == {1, 2}

    def test_threshold_state_is_ppt(self):
        # minimal-eigenvalue threshold spectrum at (d, n) = (2, 3)
        lam = np.array([3 / 14, 3 / 14, 3 / 14, 5 / 14])
        report = symmetric.sap_check_via_embedding(np.diag(lam), 2, 3)
        assert report[1] >= -1e-10
