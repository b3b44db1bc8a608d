"""Convex feasibility in eigenvalue space: membership in hulls of criteria.

The matrix-level decomposition programs reduce to vector programs in R^D:
their constraints are unitarily invariant and stable under dephasing in the
eigenbasis of the input, so a feasible matrix decomposition can always be
pinched to a diagonal one.  Each built-in set is a convex cone (the trace of
each part is a free variable) with a cheap exact Euclidean projection; the
solver is block-coordinate alternating projection over the parts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .criteria import symmetric_alpha_bounds
from .spectra import Bipartite, Multiqudit, Spectrum, SymmetricMultiqudit, SystemDims

EPS_PROJ = 1e-10


class SolverError(RuntimeError):
    pass


class IterationBudgetExhausted(SolverError):
    def __init__(self, residual: float, iterations: int):
        self.residual = residual
        self.iterations = iterations
        super().__init__(f"residual {residual:.3e} still decreasing after {iterations} iterations")


@dataclass(frozen=True)
class ConvexSetDescriptor:
    """One convex cone of detected (unnormalized) spectra.

    ``membership`` returns a signed slack (>= 0 inside); ``project`` is the
    Euclidean projection onto the fixed-trace slice; ``cone_project`` is the
    projection onto the full cone and is what the solver iterates with.
    """

    id: str
    membership: Callable[[np.ndarray], float]
    project: Callable[[np.ndarray, float], np.ndarray]
    cone_project: Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class DecompositionCertificate:
    parts: tuple[tuple[str, np.ndarray, float], ...]
    residual: float

    def to_dict(self) -> dict:
        return {
            "feasible": True,
            "residual": self.residual,
            "parts": [
                {"set": sid, "trace": weight, "vector": vec.tolist()}
                for sid, vec, weight in self.parts
            ],
        }


@dataclass(frozen=True)
class Infeasible:
    best_residual: float
    iterations: int
    stalled: bool

    def to_dict(self) -> dict:
        return {
            "feasible": False,
            "residual": self.best_residual,
            "iterations": self.iterations,
            "stalled": self.stalled,
        }


# --- exact projections ----------------------------------------------------


def project_simplex(v: np.ndarray, mass: float) -> np.ndarray:
    """Euclidean projection onto {x >= 0, sum x = mass} (sorted-threshold)."""
    if mass <= 0:
        return np.zeros_like(v)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - mass
    j = np.arange(1, len(v) + 1)
    rho = np.nonzero(u - css / j > 0)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


def _floor_cone_project(z: np.ndarray, gamma: float) -> np.ndarray:
    """Projection onto the cone {x : x_i >= gamma * sum(x)}.

    KKT reduces to a scan over the size k of the active set (the k smallest
    entries pinned to the common floor); each k gives a 2x2 linear system for
    the total multiplier t and the output trace sigma.
    """
    d = len(z)
    u = np.sort(z)
    total = z.sum()
    if u[0] >= gamma * total:
        return z.copy()
    prefix = np.concatenate(([0.0], np.cumsum(u)))
    k = np.arange(d + 1)
    denom = 1.0 - 2.0 * k * gamma + k * gamma * gamma * d
    t = (k * gamma * total - prefix) / denom
    sigma = total + t * (1.0 - gamma * d)
    theta = gamma * (sigma + t)
    lo_ok = np.concatenate(([True], u <= theta[1:] + 1e-15))
    hi_ok = np.concatenate((u >= theta[:-1] - 1e-15, [True]))
    valid = lo_ok & hi_ok & (t >= -1e-15)
    kk = int(np.nonzero(valid)[0][0])
    x = np.where(z <= theta[kk], gamma * sigma[kk], z - gamma * t[kk])
    return x


def _min_simplex_cone_project(z: np.ndarray, gamma: float) -> np.ndarray:
    return _floor_cone_project(z, gamma)


def _max_simplex_cone_project(z: np.ndarray, beta: float) -> np.ndarray:
    return -_floor_cone_project(-z, beta)


def _ball_cone_project(z: np.ndarray, ratio: float) -> np.ndarray:
    """Projection onto {x : ||x||^2 <= (sum x)^2 / (D - A), sum x >= 0}.

    ``ratio`` is sqrt(A / (D - A)); in (trace-direction, deviation) coordinates
    the set is the circular second-order cone ||w|| <= ratio * p.
    """
    d = len(z)
    mean = z.sum() / d
    w = z - mean
    p = z.sum() / math.sqrt(d)
    n0 = float(np.linalg.norm(w))
    if n0 <= ratio * p:
        return z.copy()
    if ratio * n0 <= -p:
        return np.zeros_like(z)
    pstar = (p + ratio * n0) / (1.0 + ratio * ratio)
    out = np.full(d, pstar / math.sqrt(d))
    if n0 > 0:
        out += (ratio * pstar) * (w / n0)
    return out


def _min_simplex_slice_project(point: np.ndarray, trace: float, gamma: float) -> np.ndarray:
    floor = gamma * trace
    return project_simplex(point - floor, trace * (1.0 - gamma * len(point))) + floor


def _max_simplex_slice_project(point: np.ndarray, trace: float, beta: float) -> np.ndarray:
    ceil = beta * trace
    y = project_simplex(ceil - point, trace * (beta * len(point) - 1.0))
    return ceil - y


def _ball_slice_project(point: np.ndarray, trace: float, ratio: float) -> np.ndarray:
    d = len(point)
    x = point + (trace - point.sum()) / d
    center = trace / d
    radius = abs(trace) * ratio / math.sqrt(d)
    dev = x - center
    norm = float(np.linalg.norm(dev))
    if norm > radius:
        x = center + dev * (radius / norm if norm > 0 else 0.0)
    return x


def min_simplex_set(set_id: str, gamma: float) -> ConvexSetDescriptor:
    return ConvexSetDescriptor(
        id=set_id,
        membership=lambda x: float(np.min(x) - gamma * np.sum(x)),
        project=lambda p, t: _min_simplex_slice_project(np.asarray(p, float), t, gamma),
        cone_project=lambda z: _min_simplex_cone_project(np.asarray(z, float), gamma),
    )


def max_simplex_set(set_id: str, beta: float) -> ConvexSetDescriptor:
    return ConvexSetDescriptor(
        id=set_id,
        membership=lambda x: float(beta * np.sum(x) - np.max(x)),
        project=lambda p, t: _max_simplex_slice_project(np.asarray(p, float), t, beta),
        cone_project=lambda z: _max_simplex_cone_project(np.asarray(z, float), beta),
    )


def ball_set(set_id: str, dim: int, a: float) -> ConvexSetDescriptor:
    ratio = math.sqrt(a / (dim - a))
    return ConvexSetDescriptor(
        id=set_id,
        membership=lambda x: float(np.sum(x) ** 2 / (dim - a) - np.dot(x, x)),
        project=lambda p, t: _ball_slice_project(np.asarray(p, float), t, ratio),
        cone_project=lambda z: _ball_cone_project(np.asarray(z, float), ratio),
    )


def builtin_sets(dims: SystemDims) -> list[ConvexSetDescriptor]:
    """Built-in detected sets for the given layout.

    Bipartite: min-eigenvalue simplex, max-eigenvalue simplex and the purity
    ball; symmetric layouts get the two simplexes from the symmetric alpha
    window (no purity ball is claimed there).
    """
    d = dims.total_dim
    if isinstance(dims, (Bipartite, Multiqudit)):
        if isinstance(dims, Multiqudit):
            raise SolverError("multiqudit hull sets are not provided; use bipartite or symmetric dims")
        return [
            min_simplex_set("min_simplex", 1.0 / (d + 2)),
            max_simplex_set("max_simplex", 1.0 / (d - 1)),
            ball_set("gb_ball", d, 1.0),
        ]
    bounds = symmetric_alpha_bounds(dims.d, dims.n)
    return [
        min_simplex_set("min_simplex", 1.0 / (d + bounds.alpha_plus)),
        max_simplex_set("max_simplex", 1.0 / (d - abs(bounds.alpha_minus))),
    ]


def two_simplex_sets(dim: int, alpha_minus: float, alpha_plus: float) -> list[ConvexSetDescriptor]:
    return [
        min_simplex_set("min_simplex", 1.0 / (dim + alpha_plus)),
        max_simplex_set("max_simplex", 1.0 / (dim - abs(alpha_minus))),
    ]


def diagonal_reduction(rho) -> Spectrum:
    """Reduce a matrix instance to its spectrum; hull tests run on vectors."""
    from .maps import hermitian_spectrum

    return hermitian_spectrum(rho)


_STALL_WINDOW = 25
_STALL_REL = 1e-3


def hull_membership(
    s: Spectrum,
    sets: Sequence[ConvexSetDescriptor],
    tol: float = 1e-9,
    max_iter: int = 100_000,
) -> DecompositionCertificate | Infeasible:
    """Decide membership of a spectrum in the hull of the given sets.

    Returns a :class:`DecompositionCertificate` on success.  An
    :class:`Infeasible` result is advisory only (the programs are sufficient
    conditions); it carries the best residual reached.  Raises
    :class:`IterationBudgetExhausted` when the budget runs out while the
    residual is still clearly decreasing.
    """
    if tol < 1e-10:
        raise ValueError("tol must be >= 1e-10")
    target = np.asarray(s.values, dtype=float)
    k = len(sets)
    # A single detecting set settles membership outright.
    for i, cs in enumerate(sets):
        if cs.membership(target) >= -EPS_PROJ:
            parts = tuple(
                (c.id, target.copy() if j == i else np.zeros_like(target), 1.0 if j == i else 0.0)
                for j, c in enumerate(sets)
            )
            return DecompositionCertificate(parts=parts, residual=0.0)
    parts = [target / k for _ in range(k)]
    total = target.copy()  # running sum of parts
    best = math.inf
    prev_best = math.inf
    for it in range(1, max_iter + 1):
        for i, cs in enumerate(sets):
            rest = total - parts[i]
            parts[i] = cs.cone_project(target - rest)
            total = rest + parts[i]
        residual = float(np.linalg.norm(target - total))
        best = min(best, residual)
        if residual <= tol:
            cert = tuple((c.id, parts[i].copy(), float(parts[i].sum())) for i, c in enumerate(sets))
            return DecompositionCertificate(parts=cert, residual=residual)
        if it % _STALL_WINDOW == 0:
            if prev_best - best < _STALL_REL * best:
                return Infeasible(best_residual=best, iterations=it, stalled=True)
            prev_best = best
    raise IterationBudgetExhausted(best, max_iter)


def verify_certificate(
    s: Spectrum,
    sets: Sequence[ConvexSetDescriptor],
    cert: DecompositionCertificate,
    tol: float = 1e-9,
) -> bool:
    """Recombine the parts and re-check every membership (soundness gate)."""
    by_id = {c.id: c for c in sets}
    total = np.zeros(len(s))
    for sid, vec, weight in cert.parts:
        if abs(weight - float(np.sum(vec))) > 2 * tol:
            return False
        if weight > EPS_PROJ and by_id[sid].membership(vec) < -EPS_PROJ:
            return False
        total = total + vec
    return bool(np.linalg.norm(total - s.values) <= 2 * tol)
