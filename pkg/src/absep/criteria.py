"""Closed-form eigenvalue criteria for absolute separability and absolute PPT.

Every criterion returns a :class:`CriterionVerdict` carrying a signed slack:
the raw inequality margin, nonnegative exactly when the criterion passes.
Spectra are sorted ascending, so index 0 is the minimal eigenvalue.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .spectra import (
    Bipartite,
    Multiqudit,
    Spectrum,
    SymmetricMultiqudit,
    SystemDims,
)
from . import maps


class CriteriaError(ValueError):
    pass


class SymmetricDimsUnsupported(CriteriaError):
    pass


class KappaOutOfRange(CriteriaError):
    pass


class UnsupportedDims(CriteriaError):
    pass


class PreconditionUnmet(CriteriaError):
    pass


class Certifies(enum.Enum):
    AS = "AS"
    AP = "AP"
    SAS = "SAS"
    SAP = "SAP"
    FULLY_SEPARABLE = "FullySeparable"
    NOT_AP = "NotAP"


class Provenance(enum.Enum):
    ANALYTIC = "Analytic"
    NUMERICAL_EVIDENCE = "NumericalEvidence"
    CONJECTURED = "Conjectured"


_PROVENANCE_RANK = {
    Provenance.CONJECTURED: 0,
    Provenance.NUMERICAL_EVIDENCE: 1,
    Provenance.ANALYTIC: 2,
}


@dataclass(frozen=True)
class CriterionVerdict:
    criterion_id: str
    certifies: Certifies
    passed: bool
    slack: float
    inputs_used: tuple[int, ...]
    provenance: Provenance = Provenance.ANALYTIC

    def __post_init__(self):
        assert self.passed == (self.slack >= 0), "slack sign inconsistent with verdict"


@dataclass(frozen=True)
class AlphaBounds:
    """Admissible map-parameter window [alpha_minus, alpha_plus]."""

    alpha_minus: float
    alpha_plus: float
    provenance: Provenance = Provenance.ANALYTIC
    minus_provenance: Provenance = Provenance.ANALYTIC
    plus_provenance: Provenance = Provenance.ANALYTIC

    def __post_init__(self):
        if not (self.alpha_minus < 0 < self.alpha_plus):
            raise CriteriaError("alpha bounds must straddle zero")


class BallSource(enum.Enum):
    GENERIC_QUDIT = "GenericQudit"
    QUBIT_IMPROVED = "QubitImproved"


@dataclass(frozen=True)
class MultipartiteBallParam:
    A: float
    source: BallSource


BIPARTITE_ALPHA = AlphaBounds(-1.0, 2.0)


def _verdict(criterion_id, certifies, slack, inputs, provenance=Provenance.ANALYTIC):
    # All inequalities are closed; slacks below float resolution are boundary
    # cases, not verdicts, so snap them to zero instead of letting the last
    # bit decide.
    if abs(slack) < 1e-12:
        slack = 0.0
    return CriterionVerdict(
        criterion_id=criterion_id,
        certifies=certifies,
        passed=bool(slack >= 0),
        slack=float(slack),
        inputs_used=tuple(inputs),
        provenance=provenance,
    )


def gurvits_barnum(s: Spectrum, dims: SystemDims) -> CriterionVerdict:
    """Purity-ball criterion: Tr(rho^2) <= 1/(D - A).

    Bipartite uses A = 1 and certifies absolute separability; multiqudit uses
    the multipartite ball parameter and certifies full separability.
    """
    if isinstance(dims, SymmetricMultiqudit):
        raise SymmetricDimsUnsupported("the purity ball is not claimed on the symmetric subspace")
    d = dims.total_dim
    if isinstance(dims, Bipartite):
        a, cid, cert, prov = 1.0, "gb_ball", Certifies.AS, Provenance.ANALYTIC
    else:
        param = multipartite_ball_param(dims.d, dims.n)
        a, cid, cert, prov = param.A, "multi_ball", Certifies.FULLY_SEPARABLE, Provenance.ANALYTIC
    slack = 1.0 / (d - a) - s.purity
    return _verdict(cid, cert, slack, range(d), prov)


def reduction_min_max(s: Spectrum, dims: SystemDims) -> tuple[CriterionVerdict, CriterionVerdict]:
    """Single-eigenvalue conditions l_min >= 1/(D+2) or l_max <= 1/(D-1)."""
    if not isinstance(dims, Bipartite):
        raise UnsupportedDims("reduction_min_max applies to bipartite layouts")
    d = dims.total_dim
    v_min = _verdict("reduction_min", Certifies.AS, s.lambda_min - 1.0 / (d + 2), (0,))
    v_max = _verdict("reduction_max", Certifies.AS, 1.0 / (d - 1) - s.lambda_max, (d - 1,))
    return v_min, v_max


def ap_necessary_2x2(s: Spectrum) -> CriterionVerdict:
    """Necessary condition for absolute PPT from the leading 2x2 block.

    Positivity of [[2 l0, l1 - l_max], [l1 - l_max, 2 l2]]; failure certifies
    the spectrum is not absolutely PPT (hence not absolutely separable).
    """
    if len(s) < 4:
        raise CriteriaError("need at least four eigenvalues")
    lam = s.values
    d = len(s)
    slack = 4.0 * lam[0] * lam[2] - (lam[1] - lam[-1]) ** 2
    if lam[0] < 0:
        slack = min(slack, float(lam[0]))
    return _verdict("ap_2x2", Certifies.NOT_AP, slack, (0, 1, 2, d - 1))


def _facet_level(values, d: int, level: int) -> float:
    # level = floor((D+1)/3) - kappa: index of the last eigenvalue used
    return 3.0 * values[:level].sum() + (d + 2 - 3 * level) * values[level] - 1.0


def ch_facet(s: Spectrum, dims: SystemDims) -> CriterionVerdict:
    """Linear facet of the hull of the two extreme-parameter simplexes."""
    if not isinstance(dims, Bipartite):
        raise UnsupportedDims("ch_facet applies to bipartite layouts")
    d = dims.total_dim
    c = (d + 1) // 3
    slack = _facet_level(s.values, d, c)
    return _verdict("ch_facet", Certifies.AS, slack, range(c + 1))


def hierarchy(s: Spectrum, dims: SystemDims, kappa: int) -> CriterionVerdict:
    """Level-kappa weakening of :func:`ch_facet` using fewer eigenvalues.

    Each level substitutes the next-smaller eigenvalue once more; the top
    level kappa = floor((D+1)/3) reads (D+2) * l_min >= 1.
    """
    if not isinstance(dims, Bipartite):
        raise UnsupportedDims("hierarchy applies to bipartite layouts")
    d = dims.total_dim
    c = (d + 1) // 3
    if not 0 <= kappa <= c:
        raise KappaOutOfRange(f"kappa must lie in [0, {c}]")
    level = c - kappa
    slack = _facet_level(s.values, d, level)
    return _verdict("hierarchy_k", Certifies.AS, slack, range(level + 1))


def two_smallest(s: Spectrum, dims: SystemDims) -> CriterionVerdict:
    """Weaker two-eigenvalue condition (D-1) l1 + 3 l0 >= 1."""
    if not isinstance(dims, Bipartite):
        raise UnsupportedDims("two_smallest applies to bipartite layouts")
    d = dims.total_dim
    slack = (d - 1) * s.values[1] + 3.0 * s.values[0] - 1.0
    return _verdict("two_smallest", Certifies.AS, slack, (0, 1))


_BETA = 54.0 / 17.0


def multipartite_ball_param(d: int, n: int) -> MultipartiteBallParam:
    """Purity-ball parameter A for N qudits.

    Generic qudits: A = 2**(2-N).  Qubits with N >= 3 use the improved
    A = beta * 2**N / (beta + 3**N), beta = 54/17.  The improved value is
    deliberately not used at N = 2 where it would exceed the tight bipartite
    bound A = 1.
    """
    if d < 2 or n < 2:
        raise CriteriaError("need d >= 2 and n >= 2")
    if d == 2 and n >= 3:
        return MultipartiteBallParam(_BETA * 2**n / (_BETA + 3**n), BallSource.QUBIT_IMPROVED)
    return MultipartiteBallParam(2.0 ** (2 - n), BallSource.GENERIC_QUDIT)


def multipartite_alpha_bounds(d: int, n: int) -> AlphaBounds:
    """Roots alpha*_pm = (A pm sqrt(A (D-1) (D-A))) / (D - A - 1)."""
    a = multipartite_ball_param(d, n).A
    dim = d**n
    disc = math.sqrt(a * (dim - 1) * (dim - a))
    denom = dim - a - 1
    return AlphaBounds((a - disc) / denom, (a + disc) / denom)


def multipartite_min_max(s: Spectrum, d: int, n: int) -> tuple[CriterionVerdict, CriterionVerdict]:
    """Single-eigenvalue full-separability conditions for N qudits."""
    dim = d**n
    if len(s) != dim:
        raise CriteriaError(f"spectrum length {len(s)} != {d}**{n}")
    bounds = multipartite_alpha_bounds(d, n)
    v_min = _verdict(
        "multi_min", Certifies.FULLY_SEPARABLE, s.lambda_min - 1.0 / (dim + bounds.alpha_plus), (0,)
    )
    v_max = _verdict(
        "multi_max",
        Certifies.FULLY_SEPARABLE,
        1.0 / (dim - abs(bounds.alpha_minus)) - s.lambda_max,
        (dim - 1,),
    )
    return v_min, v_max


def reduced_state_bound_check(rho: maps.DensityMatrix, d: int, n: int, k: int) -> bool:
    """Check the reduced-state eigenvalue bound after tracing out k qudits.

    Requires the input to satisfy l_min >= 1/(d**n + 2); returns whether the
    (n-k)-qudit reduction satisfies l_min >= d**k / (d**n + 2).
    """
    if not 1 <= k < n:
        raise CriteriaError("need 1 <= k < n")
    if rho.factors != (d,) * n:
        raise CriteriaError("density matrix factors do not match (d,) * n")
    lam_min = float(maps.hermitian_eigenvalues(rho.matrix)[0])
    if lam_min < 1.0 / (d**n + 2) - 1e-12:
        raise PreconditionUnmet("input state fails its own minimal-eigenvalue bound")
    reduced = maps.partial_trace(rho, range(k))
    red_min = float(maps.hermitian_eigenvalues(reduced.matrix)[0])
    return red_min >= d**k / (d**n + 2) - 1e-12


_SYMMETRIC_OVERRIDES: dict[tuple[int, int], AlphaBounds] = {
    (2, 2): AlphaBounds(-3 / 4, 1.0),
    (2, 3): AlphaBounds(
        -2 / 3,
        2 / 3,
        provenance=Provenance.NUMERICAL_EVIDENCE,
        minus_provenance=Provenance.NUMERICAL_EVIDENCE,
    ),
    (3, 2): AlphaBounds(-2 / 3, 1.0),
    (4, 2): AlphaBounds(
        -5 / 8,
        1.0,
        provenance=Provenance.CONJECTURED,
        minus_provenance=Provenance.CONJECTURED,
    ),
}


def symmetric_alpha_bounds(d: int, n: int) -> AlphaBounds:
    """Map-parameter window on the symmetric subspace.

    Generic: alpha in [-1/C, 2/C] with C = binom(N, floor(N/2)).  Tighter
    case-specific windows override (2,2), (2,3), (3,2) and (4,2), with
    provenance labels recording which rest on numerics or conjecture.
    """
    if (d, n) in _SYMMETRIC_OVERRIDES:
        return _SYMMETRIC_OVERRIDES[(d, n)]
    c = math.comb(n, n // 2)
    return AlphaBounds(-1.0 / c, 2.0 / c)


# (d, n) pairs where the symmetric criteria certify SAS rather than just SAP.
_SAS_CASES = {(2, 2), (2, 3)}


def symmetric_min_max(s: Spectrum, d: int, n: int) -> tuple[CriterionVerdict, CriterionVerdict]:
    """Single-eigenvalue conditions on the symmetric subspace.

    Thresholds use the symmetric-subspace dimension D_S; certifies SAS for
    2-qubit and 3-qubit symmetric systems, SAP otherwise.
    """
    dims = SymmetricMultiqudit(d, n)
    ds = dims.total_dim
    if len(s) != ds:
        raise CriteriaError(f"spectrum length {len(s)} != symmetric dimension {ds}")
    bounds = symmetric_alpha_bounds(d, n)
    cert = Certifies.SAS if (d, n) in _SAS_CASES else Certifies.SAP
    v_min = _verdict(
        "sym_min",
        cert,
        s.lambda_min - 1.0 / (ds + bounds.alpha_plus),
        (0,),
        bounds.plus_provenance,
    )
    v_max = _verdict(
        "sym_max",
        cert,
        1.0 / (ds - abs(bounds.alpha_minus)) - s.lambda_max,
        (ds - 1,),
        bounds.minus_provenance,
    )
    return v_min, v_max


def _linear_facet_slack(values, coeffs: dict[int, float], offset: float) -> float:
    return sum(c * values[i] for i, c in coeffs.items()) - offset


# Tight closed-form facets: {(d, n): (coeffs by ascending index, offset)}
_TIGHT_SYM_FACETS = {
    (2, 2): ({0: 7.0, 1: 5.0}, 3.0),
    (2, 3): ({0: 6.0, 1: 6.0, 2: 2.0}, 3.0),
    (3, 2): ({0: 5.0, 1: 5.0, 2: 4.0}, 2.0),
    (4, 2): ({0: 13.0, 1: 13.0, 2: 13.0, 3: 13.0, 4: 3.0}, 5.0),
}


def n_qubit_sap_facet(n: int) -> tuple[dict[int, int], int]:
    """Exact coefficients of the generic N-qubit symmetric facet.

    3C * (l_0 + ... + l_{c-1}) + [C (N+1-3c) + 2] l_c >= C, with
    C = binom(N, floor(N/2)) and c = floor((N+1)/3).
    """
    c_binom = math.comb(n, n // 2)
    c = (n + 1) // 3
    coeffs = {i: 3 * c_binom for i in range(c)}
    coeffs[c] = c_binom * (n + 1 - 3 * c) + 2
    return coeffs, c_binom


def symmetric_ch_facet(s: Spectrum, d: int, n: int, use_tight: bool = True) -> CriterionVerdict:
    """Hull facet on the symmetric subspace.

    ``use_tight`` selects the case-specific tight facets for (2,2), (2,3),
    (3,2), (4,2); otherwise (and for d = 2 generally) the closed-form N-qubit
    facet built from the generic alpha window is evaluated.
    """
    ds = SymmetricMultiqudit(d, n).total_dim
    if len(s) != ds:
        raise CriteriaError(f"spectrum length {len(s)} != symmetric dimension {ds}")
    cert = Certifies.SAS if (d, n) in _SAS_CASES else Certifies.SAP
    if use_tight and (d, n) in _TIGHT_SYM_FACETS:
        coeffs, offset = _TIGHT_SYM_FACETS[(d, n)]
        prov = symmetric_alpha_bounds(d, n).minus_provenance
    elif d == 2:
        coeffs, offset = n_qubit_sap_facet(n)
        prov = Provenance.ANALYTIC
    else:
        raise UnsupportedDims(
            "no closed-form symmetric facet for these dims; use the polytope module"
        )
    slack = _linear_facet_slack(s.values, coeffs, offset)
    return _verdict("sym_facet", cert, slack, sorted(coeffs), prov)
