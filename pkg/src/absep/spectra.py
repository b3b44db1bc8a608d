"""Spectrum and dimension types, majorization, and Schur-convexity probes.

Everything downstream (criteria, solvers, falsifiers) consumes the validated,
internally sorted :class:`Spectrum` produced here.  Eigenvalues are kept in
ascending order throughout, so ``values[0]`` is the minimal eigenvalue.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

EPS_POS = 1e-12
EPS_TRACE = 1e-9
FD_STEP = 1e-6
EPS_FD = 1e-7


class SpectrumError(ValueError):
    """Base class for spectrum validation failures."""


class LengthMismatch(SpectrumError):
    pass


class NegativeEigenvalue(SpectrumError):
    pass


class TraceError(SpectrumError):
    pass


@dataclass(frozen=True)
class Bipartite:
    """N x M bipartite layout; the criteria only ever use D = n * m."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 2 or self.m < 2:
            raise ValueError("bipartite local dimensions must be >= 2")

    @property
    def total_dim(self) -> int:
        return self.n * self.m


@dataclass(frozen=True)
class Multiqudit:
    """N qudits of local dimension d, full tensor space of dimension d**n."""

    d: int
    n: int

    def __post_init__(self):
        if self.d < 2 or self.n < 2:
            raise ValueError("multiqudit layout needs d >= 2 and n >= 2")

    @property
    def total_dim(self) -> int:
        return self.d**self.n


@dataclass(frozen=True)
class SymmetricMultiqudit:
    """Permutation-symmetric subspace of n qudits of local dimension d."""

    d: int
    n: int

    def __post_init__(self):
        if self.d < 2 or self.n < 2:
            raise ValueError("symmetric layout needs d >= 2 and n >= 2")

    @property
    def total_dim(self) -> int:
        return math.comb(self.n + self.d - 1, self.d - 1)


SystemDims = Union[Bipartite, Multiqudit, SymmetricMultiqudit]


@dataclass(frozen=True)
class Spectrum:
    """Validated eigenvalue vector, sorted ascending, trace normalized."""

    values: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def lambda_min(self) -> float:
        return float(self.values[0])

    @property
    def lambda_max(self) -> float:
        return float(self.values[-1])

    @property
    def purity(self) -> float:
        return float(np.dot(self.values, self.values))


def mms(dim: int) -> Spectrum:
    """Spectrum of the maximally mixed state on ``dim`` levels."""
    return Spectrum(np.full(dim, 1.0 / dim))


def validate_spectrum(raw: Sequence[float], dims: SystemDims | None = None) -> Spectrum:
    """Validate and canonicalize a raw eigenvalue vector.

    Entries in [-EPS_POS, 0) are clamped to zero; anything more negative is an
    error.  The trace is renormalized exactly to one when within EPS_TRACE.
    When ``dims`` is given the length must match its total dimension.
    """
    values = np.asarray(raw, dtype=float).copy()
    if values.ndim != 1 or len(values) < 2:
        raise LengthMismatch("spectrum must be a vector of length >= 2")
    if dims is not None and len(values) != dims.total_dim:
        raise LengthMismatch(
            f"spectrum length {len(values)} != total dimension {dims.total_dim}"
        )
    if np.min(values) < -EPS_POS:
        raise NegativeEigenvalue(f"eigenvalue {np.min(values)} < -{EPS_POS}")
    values = np.clip(values, 0.0, None)
    total = values.sum()
    if abs(total - 1.0) > EPS_TRACE:
        raise TraceError(f"eigenvalues sum to {total}, not 1")
    values = np.sort(values / total)
    return Spectrum(values)


class MajorizationRelation(enum.Enum):
    X_MAJORIZED_BY_Y = "x_majorized_by_y"
    Y_MAJORIZED_BY_X = "y_majorized_by_x"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def majorizes(x: Spectrum, y: Spectrum) -> MajorizationRelation:
    """Majorization relation in the ascending-order convention.

    ``x`` is majorized by ``y`` (x is more mixed) iff both have equal sums and
    every ascending prefix sum of ``x`` dominates that of ``y``.
    """
    if len(x) != len(y):
        raise LengthMismatch("majorization requires equal lengths")
    xs, ys = x.values, y.values  # already sorted ascending
    if np.max(np.abs(xs - ys)) <= EPS_TRACE:
        return MajorizationRelation.EQUAL
    px, py = np.cumsum(xs)[:-1], np.cumsum(ys)[:-1]
    x_below_y = bool(np.all(px >= py - EPS_TRACE))
    y_below_x = bool(np.all(py >= px - EPS_TRACE))
    if x_below_y and not y_below_x:
        return MajorizationRelation.X_MAJORIZED_BY_Y
    if y_below_x and not x_below_y:
        return MajorizationRelation.Y_MAJORIZED_BY_X
    if x_below_y and y_below_x:
        return MajorizationRelation.EQUAL
    return MajorizationRelation.INCOMPARABLE


@dataclass(frozen=True)
class SchurProbeReport:
    samples: int
    violations: int
    symmetry_violations: int
    worst_margin: float


def schur_convex_probe(
    f: Callable[[np.ndarray], float],
    dim: int,
    samples: int,
    seed: int,
) -> SchurProbeReport:
    """Numerically probe Schur-convexity of a symmetric scalar function.

    For each random nonnegative vector with well-separated entries, checks
    ``(x_i - x_j) * (df/dx_i - df/dx_j) >= -EPS_FD`` for all pairs, using
    central finite differences with step FD_STEP.  Permutation symmetry of
    ``f`` is checked on every sample as well.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    violations = 0
    symmetry_violations = 0
    worst = np.inf
    for _ in range(samples):
        x = rng.random(dim)
        while np.min(np.diff(np.sort(x))) < 10 * FD_STEP:
            x = rng.random(dim)
        grad = np.empty(dim)
        for i in range(dim):
            xp, xm = x.copy(), x.copy()
            xp[i] += FD_STEP
            xm[i] -= FD_STEP
            grad[i] = (f(xp) - f(xm)) / (2 * FD_STEP)
        margins = np.subtract.outer(x, x) * np.subtract.outer(grad, grad)
        sample_worst = float(np.min(margins))
        worst = min(worst, sample_worst)
        if sample_worst < -EPS_FD:
            violations += 1
        if abs(f(x[rng.permutation(dim)]) - f(x)) > EPS_FD:
            symmetry_violations += 1
    return SchurProbeReport(samples, violations, symmetry_violations, worst)


# --- file ingestion -------------------------------------------------------

_DIMS_BUILDERS = {
    "bipartite": lambda o: Bipartite(int(o["n"]), int(o["m"])),
    "multiqudit": lambda o: Multiqudit(int(o["d"]), int(o["n"])),
    "symmetric": lambda o: SymmetricMultiqudit(int(o["d"]), int(o["n"])),
}


def dims_from_dict(obj: dict) -> SystemDims:
    kind = obj.get("type")
    if kind not in _DIMS_BUILDERS:
        raise SpectrumError(f"unknown dims type {kind!r}")
    return _DIMS_BUILDERS[kind](obj)


def dims_to_dict(dims: SystemDims) -> dict:
    if isinstance(dims, Bipartite):
        return {"type": "bipartite", "n": dims.n, "m": dims.m}
    if isinstance(dims, Multiqudit):
        return {"type": "multiqudit", "d": dims.d, "n": dims.n}
    return {"type": "symmetric", "d": dims.d, "n": dims.n}


def load_spectrum_json(path: str) -> tuple[Spectrum, SystemDims | None]:
    """Read ``{"eigenvalues": [...], "dims": {...}}``; dims is optional."""
    with open(path) as fh:
        obj = json.load(fh)
    if "eigenvalues" not in obj:
        raise SpectrumError("JSON spectrum file needs an 'eigenvalues' key")
    dims = dims_from_dict(obj["dims"]) if "dims" in obj else None
    return validate_spectrum(obj["eigenvalues"], dims), dims


def load_spectrum_text(path: str, dims: SystemDims | None = None) -> Spectrum:
    """Read a plain-text spectrum, one eigenvalue per line."""
    with open(path) as fh:
        raw = [float(line) for line in fh if line.strip()]
    return validate_spectrum(raw, dims)
