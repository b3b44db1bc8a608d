"""Randomized search for NPT witnesses under Haar-random unitaries.

A witness is a unitary U such that U diag(lambda) U^dag has a negative
partial-transpose eigenvalue, refuting absolute PPT for the spectrum.  A
failed search is only "no witness found at this budget", never a certificate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import maps, symmetric
from .spectra import Bipartite, Multiqudit, Spectrum, SystemDims

EPS_NEG = 1e-10
_BATCH = 1024


class FalsifyError(ValueError):
    pass


@dataclass(frozen=True)
class FalsifyOutcome:
    samples_run: int
    best_min_pt_eig: float
    witness_sample_index: int | None
    master_seed: int

    @property
    def witness_found(self) -> bool:
        return self.best_min_pt_eig < -EPS_NEG


def haar_unitary(dim: int, seed) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix, phase fixed."""
    if dim < 2:
        raise FalsifyError("need dim >= 2")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z / math.sqrt(2.0))
    phases = np.diagonal(r)
    return q * (phases / np.abs(phases))


def _sample_seed(master_seed: int, index: int):
    # Counter-based per-sample seeds: parallel batches stay order-independent.
    return [master_seed, index]


def _batched_haar(master_seed: int, start: int, count: int, dim: int) -> np.ndarray:
    gin = np.empty((count, dim, dim), dtype=complex)
    for i in range(count):
        rng = np.random.default_rng(_sample_seed(master_seed, start + i))
        gin[i] = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(gin / math.sqrt(2.0))
    phases = np.diagonal(r, axis1=1, axis2=2)
    return q * (phases / np.abs(phases))[:, None, :]


def pt_subsets(nfactors: int) -> list[tuple[int, ...]]:
    """Representative transposition subsets: sizes up to floor(n/2), with the
    half-size subsets deduplicated against their complements."""
    subsets = []
    for k in range(1, nfactors // 2 + 1):
        for sub in itertools.combinations(range(nfactors), k):
            if 2 * k == nfactors and 0 not in sub:
                continue
            subsets.append(sub)
    return subsets


def _batched_pt_min_eig(states: np.ndarray, factors: tuple[int, ...], mask: tuple[int, ...]) -> np.ndarray:
    b = states.shape[0]
    k = len(factors)
    tensor = states.reshape((b,) + factors + factors)
    axes = list(range(1, 2 * k + 1))
    for i in mask:
        axes[i], axes[k + i] = axes[k + i], axes[i]
    pt = tensor.transpose([0] + axes).reshape(b, states.shape[1], states.shape[2])
    return np.linalg.eigvalsh(pt)[:, 0]


def _search(spectrum_values, samples, seed, dim, min_eig_of_batch, early_stop):
    best = math.inf
    best_index = None
    run = 0
    for start in range(0, samples, _BATCH):
        count = min(_BATCH, samples - start)
        u = _batched_haar(seed, start, count, dim)
        states = (u * spectrum_values) @ np.conjugate(np.swapaxes(u, 1, 2))
        mins = min_eig_of_batch(states)
        run = start + count
        idx = int(np.argmin(mins))
        if mins[idx] < best:
            best = float(mins[idx])
            best_index = start + idx
        if early_stop and best < -EPS_NEG:
            break
    return FalsifyOutcome(
        samples_run=run,
        best_min_pt_eig=best,
        witness_sample_index=best_index if best < -EPS_NEG else None,
        master_seed=seed,
    )


def falsify_ap(
    s: Spectrum,
    dims: SystemDims,
    samples: int,
    seed: int,
    early_stop: bool = True,
) -> FalsifyOutcome:
    """Hunt for NPT witnesses of a bipartite or multiqudit spectrum.

    Conjugates diag(s) with Haar unitaries and tracks the minimum partial
    transpose eigenvalue over every bipartition of size up to floor(n/2).
    """
    if not isinstance(dims, (Bipartite, Multiqudit)):
        raise FalsifyError("falsify_ap handles bipartite or multiqudit layouts")
    factors = maps.factor_dims(dims)
    if int(np.prod(factors)) != len(s):
        raise FalsifyError("spectrum length does not match the layout")
    masks = pt_subsets(len(factors))

    def min_eig(states):
        return np.min([_batched_pt_min_eig(states, factors, m) for m in masks], axis=0)

    return _search(s.values, samples, seed, len(s), min_eig, early_stop)


def falsify_sap(
    s: Spectrum,
    d: int,
    n: int,
    samples: int,
    seed: int,
    early_stop: bool = True,
) -> FalsifyOutcome:
    """Hunt for NPT witnesses among symmetric-subspace unitary orbits."""
    basis = symmetric.build_dicke_basis(d, n)
    if basis.subspace_dim != len(s):
        raise FalsifyError(f"spectrum length {len(s)} != symmetric dimension {basis.subspace_dim}")
    iso = basis.isometry
    factors = (d,) * n
    masks = [tuple(range(k)) for k in range(1, n // 2 + 1)]

    def min_eig(states):
        full = np.einsum("ij,bjk,lk->bil", iso, states, iso.conj(), optimize=True)
        return np.min([_batched_pt_min_eig(full, factors, m) for m in masks], axis=0)

    return _search(s.values, samples, seed, len(s), min_eig, early_stop)


def reproduce_witness(
    outcome: FalsifyOutcome,
    s: Spectrum,
    dims: SystemDims | None = None,
    symmetric_dn: tuple[int, int] | None = None,
) -> float:
    """Recompute the witness min-PT eigenvalue from its per-sample seed."""
    if outcome.witness_sample_index is None:
        raise FalsifyError("outcome carries no witness")
    u = haar_unitary(len(s), _sample_seed(outcome.master_seed, outcome.witness_sample_index))
    state = (u * s.values) @ u.conj().T
    if symmetric_dn is not None:
        d, n = symmetric_dn
        basis = symmetric.build_dicke_basis(d, n)
        full = basis.isometry @ state @ basis.isometry.conj().T
        dm = maps.DensityMatrix(full, (d,) * n, unnormalized=True)
        masks = [tuple(range(k)) for k in range(1, n // 2 + 1)]
    else:
        dm = maps.density_matrix(state, dims)
        masks = pt_subsets(len(dm.factors))
    return min(
        float(np.linalg.eigvalsh(maps.partial_transpose(dm, m).matrix)[0]) for m in masks
    )
