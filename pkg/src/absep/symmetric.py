"""Dicke basis construction and symmetric-subspace PPT checks.

Symmetric operators are embedded into the full tensor space before partial
transposition; no compressed representation is attempted at desk scale.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import maps

MAX_FULL_DIM = 2**20


class SymmetricError(ValueError):
    pass


class DimensionTooLarge(SymmetricError):
    pass


class DimsMismatch(SymmetricError):
    pass


@dataclass(frozen=True)
class DickeBasis:
    """Isometry from the symmetric subspace into the full N-qudit space.

    Columns are occupation-number states, ordered lexicographically descending
    in occupations, each normalized by the square root of its multinomial
    weight.
    """

    d: int
    n: int
    isometry: np.ndarray

    @property
    def subspace_dim(self) -> int:
        return self.isometry.shape[1]

    @property
    def full_dim(self) -> int:
        return self.isometry.shape[0]


def occupations(d: int, n: int) -> list[tuple[int, ...]]:
    """All occupation vectors of n particles over d levels, lex descending."""
    combos = []
    for c in itertools.combinations_with_replacement(range(d), n):
        occ = [0] * d
        for level in c:
            occ[level] += 1
        combos.append(tuple(occ))
    return sorted(combos, reverse=True)


@lru_cache(maxsize=None)
def build_dicke_basis(d: int, n: int) -> DickeBasis:
    full = d**n
    if full > MAX_FULL_DIM:
        raise DimensionTooLarge(f"full dimension {full} exceeds {MAX_FULL_DIM}")
    occs = occupations(d, n)
    sub = len(occs)
    assert sub == math.comb(n + d - 1, d - 1)
    col_of = {occ: j for j, occ in enumerate(occs)}
    iso = np.zeros((full, sub))
    for idx, levels in enumerate(itertools.product(range(d), repeat=n)):
        occ = [0] * d
        for level in levels:
            occ[level] += 1
        iso[idx, col_of[tuple(occ)]] += 1.0
    iso /= np.sqrt((iso**2).sum(axis=0))
    iso.setflags(write=False)
    return DickeBasis(d=d, n=n, isometry=iso)


def embed(rho_s: np.ndarray, basis: DickeBasis) -> maps.DensityMatrix:
    """Lift a symmetric-subspace operator into the full tensor space."""
    rho_s = np.asarray(rho_s)
    if rho_s.shape != (basis.subspace_dim, basis.subspace_dim):
        raise DimsMismatch(
            f"operator shape {rho_s.shape} != subspace dim {basis.subspace_dim}"
        )
    full = basis.isometry @ rho_s @ basis.isometry.conj().T
    return maps.DensityMatrix(full, (basis.d,) * basis.n, unnormalized=True)


def symmetric_identity_pt_min_eig(d: int, n: int, k: int) -> float:
    """Minimal eigenvalue of the partially transposed symmetric projector.

    The eigenvalue is taken on the span of partially transposed symmetric
    operators, Sym(k) x Sym(n-k); outside that span the projector's partial
    transpose only contributes irrelevant zero modes.  Equals 1/binom(n, k)
    independently of the local dimension.
    """
    if not 1 <= k <= n // 2:
        raise SymmetricError("need 1 <= k <= floor(n/2)")
    basis = build_dicke_basis(d, n)
    projector = embed(np.eye(basis.subspace_dim), basis)
    pt = maps.partial_transpose(projector, range(k))
    span = np.kron(build_dicke_basis(d, k).isometry, build_dicke_basis(d, n - k).isometry)
    restricted = span.T @ pt.matrix @ span
    return float(np.linalg.eigvalsh(restricted)[0])


def sap_check_via_embedding(rho_s: np.ndarray, d: int, n: int) -> dict[int, float]:
    """Min partial-transpose eigenvalue of an embedded symmetric state, per k.

    The embedded operator is permutation invariant, so one representative
    k-qudit partition per size suffices.  This is the matrix-level oracle the
    symmetric spectrum criteria are validated against.
    """
    basis = build_dicke_basis(d, n)
    full = embed(rho_s, basis)
    report = {}
    for k in range(1, n // 2 + 1):
        pt = maps.partial_transpose(full, range(k))
        report[k] = float(np.linalg.eigvalsh(pt.matrix)[0])
    return report
