"""Matrix-level operators: reduction-like maps, partial transpose and trace.

Dense complex matrices only.  Partial transpose and partial trace operate by
index permutation on a reshaped tensor view, so they are bit-exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .spectra import (
    Bipartite,
    Multiqudit,
    Spectrum,
    SystemDims,
    validate_spectrum,
)

EPS_HERM = 1e-10


class MapsError(ValueError):
    pass


class NotHermitian(MapsError):
    pass


class AlphaZero(MapsError):
    pass


class MaskInvalid(MapsError):
    pass


def factor_dims(dims: SystemDims) -> tuple[int, ...]:
    """Tensor factorization used for partial transpose/trace."""
    if isinstance(dims, Bipartite):
        return (dims.n, dims.m)
    if isinstance(dims, Multiqudit):
        return (dims.d,) * dims.n
    raise MaskInvalid("symmetric-subspace operators must be embedded first")


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian operator with an explicit tensor factorization.

    ``unnormalized`` marks intermediate map outputs whose trace is not one;
    nothing in this module renormalizes silently.
    """

    matrix: np.ndarray
    factors: tuple[int, ...]
    unnormalized: bool = False

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", mat)
        dim = int(np.prod(self.factors))
        if mat.shape != (dim, dim):
            raise MapsError(f"matrix shape {mat.shape} != factors {self.factors}")
        if np.max(np.abs(mat - mat.conj().T)) > EPS_HERM:
            raise NotHermitian("matrix is not Hermitian within tolerance")
        mat.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)


def density_matrix(matrix: np.ndarray, dims: SystemDims | Sequence[int]) -> DensityMatrix:
    factors = factor_dims(dims) if not isinstance(dims, (tuple, list)) else tuple(dims)
    return DensityMatrix(matrix, factors)


def reduction_map(rho: DensityMatrix, alpha: float) -> DensityMatrix:
    """Trace-scaling map rho -> Tr(rho) * I + alpha * rho (unnormalized)."""
    out = rho.trace * np.eye(rho.dim) + alpha * rho.matrix
    return DensityMatrix(out, rho.factors, unnormalized=True)


def inverse_reduction_map(sigma: DensityMatrix, alpha: float) -> DensityMatrix:
    """Inverse of :func:`reduction_map`; linear, defined for alpha != 0."""
    if alpha == 0:
        raise AlphaZero("the reduction-like map is not invertible at alpha = 0")
    d = sigma.dim
    out = (sigma.matrix - sigma.trace * np.eye(d) / (d + alpha)) / alpha
    return DensityMatrix(out, sigma.factors, unnormalized=True)


def spectrum_level_map(s: Spectrum, alpha: float, normalize: bool = True) -> Spectrum | np.ndarray:
    """Eigenvalue action of the reduction-like map.

    With ``normalize`` each eigenvalue maps to (1 + alpha * l) / (D + alpha).
    For alpha < -1 the image may leave the state simplex, in which case
    validation raises; pass ``normalize=False`` to get the raw vector.
    """
    d = len(s)
    mapped = 1.0 + alpha * s.values
    if not normalize:
        return np.sort(mapped)
    return validate_spectrum(mapped / (d + alpha))


def _as_tensor(matrix: np.ndarray, factors: tuple[int, ...]) -> np.ndarray:
    return matrix.reshape(factors + factors)


def _check_mask(mask: Iterable[int], nfactors: int) -> tuple[int, ...]:
    mask = tuple(sorted(set(int(i) for i in mask)))
    if any(i < 0 or i >= nfactors for i in mask):
        raise MaskInvalid(f"factor indices {mask} out of range for {nfactors} factors")
    return mask


def partial_transpose(rho: DensityMatrix, subsystem_mask: Iterable[int]) -> DensityMatrix:
    """Transpose the factors in ``subsystem_mask``; bit-exact index shuffle."""
    factors = rho.factors
    k = len(factors)
    mask = _check_mask(subsystem_mask, k)
    axes = list(range(2 * k))
    for i in mask:
        axes[i], axes[k + i] = axes[k + i], axes[i]
    tensor = _as_tensor(rho.matrix, factors).transpose(axes)
    out = tensor.reshape(rho.dim, rho.dim)
    return DensityMatrix(out, factors, unnormalized=rho.unnormalized)


def partial_trace(rho: DensityMatrix, traced_factors: Iterable[int]) -> DensityMatrix:
    """Trace out the factors in ``traced_factors``."""
    factors = rho.factors
    k = len(factors)
    traced = _check_mask(traced_factors, k)
    if len(traced) == k:
        raise MaskInvalid("cannot trace out every factor")
    tensor = _as_tensor(rho.matrix, factors)
    for offset, i in enumerate(traced):
        ax = i - offset
        tensor = np.trace(tensor, axis1=ax, axis2=ax + tensor.ndim // 2)
    kept = tuple(f for i, f in enumerate(factors) if i not in traced)
    dim = int(np.prod(kept))
    return DensityMatrix(tensor.reshape(dim, dim), kept, unnormalized=rho.unnormalized)


def hermitian_spectrum(rho: DensityMatrix) -> Spectrum:
    """Ascending eigenvalues of a (normalized) Hermitian state."""
    vals = np.linalg.eigvalsh(rho.matrix)
    return validate_spectrum(vals)


def hermitian_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a raw Hermitian matrix, no state validation."""
    matrix = np.asarray(matrix)
    if np.max(np.abs(matrix - matrix.conj().T)) > EPS_HERM:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    return np.linalg.eigvalsh(matrix)


def state_from_spectrum(s: Spectrum, unitary: np.ndarray, dims: SystemDims | Sequence[int]) -> DensityMatrix:
    """Build U diag(s) U^dag with the given tensor factorization."""
    mat = (unitary * s.values) @ unitary.conj().T
    return density_matrix(mat, dims)
