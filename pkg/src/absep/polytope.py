"""Exact eigenvalue-space geometry for the two extreme-parameter simplexes.

All computations use rational arithmetic (:class:`fractions.Fraction`), so
vertex and facet results carry zero floating error.  Facets are reported in a
normal form: coefficients shifted by a multiple of the all-ones vector so the
smallest is zero (the trace constraint makes this a gauge choice), scaled to
integers with gcd 1, oriented so ``normal . x >= offset`` holds inside.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

RationalVector = tuple[Fraction, ...]


class PolytopeError(ValueError):
    pass


class DegenerateInput(PolytopeError):
    pass


class SectorAmbiguous(PolytopeError):
    def __init__(self, facets):
        self.facets = facets
        super().__init__(f"{len(facets)} distinct facets bind on the sorted sector")


@dataclass(frozen=True)
class Facet:
    """Half-space ``normal . x >= offset`` containing the polytope."""

    normal: tuple[int, ...]
    offset: Fraction

    def slack(self, point: Sequence[Fraction]) -> Fraction:
        return sum(c * x for c, x in zip(self.normal, point)) - self.offset


def simplex_vertices(dim: int, alpha) -> list[RationalVector]:
    """Vertices of the map-image simplex: permutations of the single-spike vector.

    The spike entry is 1 - (D-1)/(D+alpha), the remaining entries 1/(D+alpha).
    Only the D distinct permutations are returned.
    """
    alpha = Fraction(alpha)
    if dim < 3:
        raise PolytopeError("need dim >= 3")
    if dim + alpha <= 0:
        raise PolytopeError("need dim + alpha > 0")
    small = Fraction(1, 1) / (dim + alpha)
    spike = 1 - (dim - 1) * small
    vertices = []
    for pos in range(dim):
        v = [small] * dim
        v[pos] = spike
        vertices.append(tuple(v))
    return vertices


def two_simplex_vertices(dim: int, alpha_minus, alpha_plus) -> list[RationalVector]:
    """Union of the vertex sets of the alpha_plus and alpha_minus simplexes."""
    return simplex_vertices(dim, alpha_plus) + simplex_vertices(dim, alpha_minus)


def _row_reduce(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """In-place Gaussian elimination; returns the nonzero reduced rows."""
    rows = [list(r) for r in rows]
    pivots = []
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [rows[i] for i in range(r)], pivots


def _affine_rank(points: list[RationalVector]) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    diffs = [[x - b for x, b in zip(p, base)] for p in points[1:]]
    reduced, _ = _row_reduce(diffs)
    return len(reduced)


def _nullspace(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    ncols = len(rows[0])
    reduced, pivots = _row_reduce(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in zip(reduced, pivots):
            vec[pc] = -r[fc]
        basis.append(vec)
    return basis


def canonical_facet(normal: Sequence[Fraction], offset) -> Facet:
    """Normal form: min coefficient zero, integer gcd-1 scaling, >= inside."""
    normal = [Fraction(c) for c in normal]
    offset = Fraction(offset)
    shift = min(normal)
    normal = [c - shift for c in normal]
    offset = offset - shift  # points live on the trace-one hyperplane
    if all(c == 0 for c in normal):
        raise DegenerateInput("normal is a multiple of the all-ones vector")
    denom = math.lcm(*(c.denominator for c in normal))
    ints = [int(c * denom) for c in normal]
    g = math.gcd(*ints)
    return Facet(tuple(i // g for i in ints), offset * denom / g)


def brute_force_facets(vertices: list[RationalVector]) -> list[Facet]:
    """Exact facets of the convex hull within the trace-one hyperplane.

    Enumerates every hyperplane through D-1 vertices and keeps the ones with
    all vertices weakly on one side.  Combinatorial in the vertex count; meant
    for desk-scale dimensions.
    """
    dim = len(vertices[0])
    if _affine_rank(vertices) < dim - 1:
        raise DegenerateInput("vertices do not affinely span the trace-one hyperplane")
    ones = [Fraction(1)] * dim
    facets: dict[tuple, Facet] = {}
    for subset in itertools.combinations(range(len(vertices)), dim - 1):
        pts = [vertices[i] for i in subset]
        base = pts[0]
        rows = [[x - b for x, b in zip(p, base)] for p in pts[1:]]
        rows.append(ones)
        null = _nullspace(rows)
        if len(null) != 1:
            continue  # affinely dependent subset
        normal = null[0]
        offset = sum(c * x for c, x in zip(normal, base))
        slacks = [sum(c * x for c, x in zip(normal, v)) - offset for v in vertices]
        if all(sl >= 0 for sl in slacks):
            pass
        elif all(sl <= 0 for sl in slacks):
            normal = [-c for c in normal]
            offset = -offset
        else:
            continue
        facet = canonical_facet(normal, offset)
        facets[(facet.normal, facet.offset)] = facet
    return sorted(facets.values(), key=lambda f: (f.normal, f.offset))


def _sorted_spike_vertex(dim: int, alpha: Fraction) -> RationalVector:
    small = Fraction(1, 1) / (dim + alpha)
    spike = 1 - (dim - 1) * small
    entries = sorted([small] * (dim - 1) + [spike])
    return tuple(entries)


def ordered_sector_facet(dim: int, alpha_minus, alpha_plus) -> Facet:
    """The unique hull facet binding on the sorted sector l_0 <= ... <= l_{D-1}.

    Candidates are the two-level hyperplanes (q, ..., q, r, 0, ..., 0)
    saturated by both sorted vertices; coefficient monotonicity makes each a
    supporting hyperplane of the whole permutation-closed hull (rearrangement
    inequality), and a rank check on the saturating vertices certifies
    facet-hood.  Raises :class:`SectorAmbiguous` if more than one survives.
    """
    alpha_minus, alpha_plus = Fraction(alpha_minus), Fraction(alpha_plus)
    if not (alpha_minus < 0 < alpha_plus):
        raise PolytopeError("alpha window must straddle zero")
    vplus = _sorted_spike_vertex(dim, alpha_plus)
    vminus = _sorted_spike_vertex(dim, alpha_minus)
    vertices = two_simplex_vertices(dim, alpha_minus, alpha_plus)
    found: dict[tuple, Facet] = {}
    for m in range(1, dim):
        p_sum, p_m = sum(vplus[:m]), vplus[m]
        q_sum, q_m = sum(vminus[:m]), vminus[m]
        a1, a2 = p_sum - q_sum, p_m - q_m
        if a1 == 0 and a2 == 0:
            continue
        q, r = -a2, a1
        if q < 0 or (q == 0 and r < 0):
            q, r = -q, -r
        if not (q >= r >= 0) or q == 0:
            continue
        offset = q * p_sum + r * p_m
        if offset <= 0:
            continue
        normal = [q] * m + [r] + [Fraction(0)] * (dim - m - 1)
        try:
            facet = canonical_facet(normal, offset)
        except DegenerateInput:
            continue
        saturating = [v for v in vertices if facet.slack(v) == 0]
        if any(facet.slack(v) < 0 for v in vertices):
            continue  # permutations of the listed vertices are covered by monotone coeffs
        if _affine_rank(saturating) == dim - 2:
            found[(facet.normal, facet.offset)] = facet
    facets = sorted(found.values(), key=lambda f: (f.normal, f.offset))
    if not facets:
        raise PolytopeError("no sorted-sector facet found for this alpha window")
    if len(facets) > 1:
        raise SectorAmbiguous(facets)
    return facets[0]


def facet_to_dict(facet: Facet, vertices: list[RationalVector] | None = None) -> dict:
    out = {
        "normal": list(facet.normal),
        "offset": [facet.offset.numerator, facet.offset.denominator],
    }
    if vertices is not None:
        out["saturating_vertices"] = sum(1 for v in vertices if facet.slack(v) == 0)
    return out
