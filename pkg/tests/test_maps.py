import numpy as np
import pytest

from absep import maps
from absep.falsify import haar_unitary
from absep.spectra import Bipartite, Multiqudit, validate_spectrum


def random_state(dim, dims, seed):
    rng = np.random.default_rng(seed)
    s = validate_spectrum(rng.dirichlet(np.ones(dim)))
    return maps.state_from_spectrum(s, haar_unitary(dim, seed), dims), s


class TestDensityMatrix:
    def test_rejects_non_hermitian(self):
        with pytest.raises(maps.NotHermitian):
            maps.DensityMatrix(np.array([[0.0, 1.0], [0.0, 1.0]]), (2,))

    def test_shape_checked(self):
        with pytest.raises(maps.MapsError):
            maps.DensityMatrix(np.eye(3), (2, 2))

    def test_factor_dims(self):
        assert maps.factor_dims(Bipartite(2, 3)) == (2, 3)
        assert maps.factor_dims(Multiqudit(2, 3)) == (2, 2, 2)

    def test_trace(self):
        rho, _ = random_state(4, Bipartite(2, 2), 0)
        assert rho.trace == pytest.approx(1.0, abs=1e-12)


class TestReductionMap:
    @pytest.mark.parametrize("alpha", [-1.0, -0.5, 0.7, 2.0])
    def test_round_trip(self, alpha):
        rho, _ = random_state(6, Bipartite(2, 3), 1)
        back = maps.inverse_reduction_map(maps.reduction_map(rho, alpha), alpha)
        assert np.max(np.abs(back.matrix - rho.matrix)) <= 1e-12

    def test_alpha_zero_rejected(self):
        rho, _ = random_state(4, Bipartite(2, 2), 2)
        with pytest.raises(maps.AlphaZero):
            maps.inverse_reduction_map(rho, 0.0)

    @pytest.mark.parametrize("alpha", [-1.0, 2.0])
    def test_unitary_equivariance(self, alpha):
        rho, _ = random_state(4, Bipartite(2, 2), 3)
        u = haar_unitary(4, 99)
        lhs = maps.reduction_map(
            maps.DensityMatrix(u @ rho.matrix @ u.conj().T, rho.factors), alpha
        ).matrix
        rhs = u @ maps.reduction_map(rho, alpha).matrix @ u.conj().T
        assert np.max(np.abs(lhs - rhs)) <= 1e-12

    def test_spectrum_level_matches_matrix_level(self):
        rho, s = random_state(6, Bipartite(2, 3), 4)
        alpha = 1.3
        mapped = maps.reduction_map(rho, alpha)
        mat_spec = np.linalg.eigvalsh(mapped.matrix) / np.trace(mapped.matrix).real
        lvl = maps.spectrum_level_map(s, alpha)
        assert np.max(np.abs(mat_spec - lvl.values)) <= 1e-12

    def test_spectrum_level_unnormalized(self):
        s = validate_spectrum([0.25, 0.25, 0.5])
        raw = maps.spectrum_level_map(s, -2.5, normalize=False)
        assert isinstance(raw, np.ndarray)
        assert np.min(raw) < 0  # image leaves the state simplex


class TestPartialTranspose:
    def test_involution(self):
        rho, _ = random_state(6, Bipartite(2, 3), 5)
        twice = maps.partial_transpose(maps.partial_transpose(rho, [0]), [0])
        assert np.array_equal(twice.matrix, rho.matrix)

    def test_full_mask_is_transpose(self):
        rho, _ = random_state(6, Bipartite(2, 3), 6)
        pt = maps.partial_transpose(rho, [0, 1])
        assert np.max(np.abs(pt.matrix - rho.matrix.T)) == 0

    def test_trace_preserved(self):
        rho, _ = random_state(8, Multiqudit(2, 3), 7)
        assert maps.partial_transpose(rho, [1]).trace == pytest.approx(rho.trace, abs=1e-13)

    def test_mask_validated(self):
        rho, _ = random_state(4, Bipartite(2, 2), 8)
        with pytest.raises(maps.MaskInvalid):
            maps.partial_transpose(rho, [2])

    def test_bell_state_npt(self):
        bell = np.zeros((4, 4))
        for i in (0, 3):
            for j in (0, 3):
                bell[i, j] = 0.5
        rho = maps.density_matrix(bell, Bipartite(2, 2))
        eigs = maps.hermitian_eigenvalues(maps.partial_transpose(rho, [0]).matrix)
        assert eigs[0] == pytest.approx(-0.5, abs=1e-12)


class TestPartialTrace:
    def test_product_state(self):
        a = np.diag([0.3, 0.7])
        b = np.diag([0.1, 0.2, 0.7])
        rho = maps.density_matrix(np.kron(a, b), Bipartite(2, 3))
        ra = maps.partial_trace(rho, [1])
        rb = maps.partial_trace(rho, [0])
        assert np.max(np.abs(ra.matrix - a)) <= 1e-14
        assert np.max(np.abs(rb.matrix - b)) <= 1e-14

    def test_three_qubit_double_trace(self):
        rho, _ = random_state(8, Multiqudit(2, 3), 9)
        r = maps.partial_trace(rho, [0, 2])
        assert r.factors == (2,)
        assert r.trace == pytest.approx(1.0, abs=1e-12)

    def test_cannot_trace_everything(self):
        rho, _ = random_state(4, Bipartite(2, 2), 10)
        with pytest.raises(maps.MaskInvalid):
            maps.partial_trace(rho, [0, 1])


class TestSpectrumBridge:
    def test_state_from_spectrum_eigs(self):
        rho, s = random_state(9, Multiqudit(3, 2), 11)
        got = maps.hermitian_spectrum(rho)
        assert np.max(np.abs(got.values - s.values)) <= 1e-12
