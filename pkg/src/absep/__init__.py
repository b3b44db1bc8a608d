"""Certify absolute separability and absolute PPT of quantum states from spectra."""

from .spectra import (
    Bipartite,
    Multiqudit,
    SymmetricMultiqudit,
    SystemDims,
    Spectrum,
    SpectrumError,
    mms,
    validate_spectrum,
    majorizes,
    MajorizationRelation,
)
from .criteria import (
    AlphaBounds,
    Certifies,
    CriterionVerdict,
    Provenance,
    gurvits_barnum,
    reduction_min_max,
    ap_necessary_2x2,
    ch_facet,
    hierarchy,
    two_smallest,
    multipartite_ball_param,
    multipartite_alpha_bounds,
    multipartite_min_max,
    symmetric_alpha_bounds,
    symmetric_min_max,
    symmetric_ch_facet,
)
from .maps import (
    DensityMatrix,
    density_matrix,
    reduction_map,
    inverse_reduction_map,
    spectrum_level_map,
    partial_transpose,
    partial_trace,
    hermitian_spectrum,
    state_from_spectrum,
)
from .polytope import (
    Facet,
    simplex_vertices,
    two_simplex_vertices,
    brute_force_facets,
    ordered_sector_facet,
)
from .chull import (
    ConvexSetDescriptor,
    DecompositionCertificate,
    Infeasible,
    builtin_sets,
    hull_membership,
    verify_certificate,
)
from .symmetric import DickeBasis, build_dicke_basis, embed, sap_check_via_embedding
from .falsify import FalsifyOutcome, falsify_ap, falsify_sap, reproduce_witness
from .report import Aggregate, CertificateReport, build_report
from .estimators import NptFalsifier, SpectrumCertifier

__version__ = "0.1.0"

__all__ = [
    "Bipartite",
    "Multiqudit",
    "SymmetricMultiqudit",
    "SystemDims",
    "Spectrum",
    "SpectrumError",
    "mms",
    "validate_spectrum",
    "majorizes",
    "MajorizationRelation",
    "AlphaBounds",
    "Certifies",
    "CriterionVerdict",
    "Provenance",
    "gurvits_barnum",
    "reduction_min_max",
    "ap_necessary_2x2",
    "ch_facet",
    "hierarchy",
    "two_smallest",
    "multipartite_ball_param",
    "multipartite_alpha_bounds",
    "multipartite_min_max",
    "symmetric_alpha_bounds",
    "symmetric_min_max",
    "symmetric_ch_facet",
    "DensityMatrix",
    "density_matrix",
    "reduction_map",
    "inverse_reduction_map",
    "spectrum_level_map",
    "partial_transpose",
    "partial_trace",
    "hermitian_spectrum",
    "state_from_spectrum",
    "Facet",
    "simplex_vertices",
    "two_simplex_vertices",
    "brute_force_facets",
    "ordered_sector_facet",
    "ConvexSetDescriptor",
    "DecompositionCertificate",
    "Infeasible",
    "builtin_sets",
    "hull_membership",
    "verify_certificate",
    "DickeBasis",
    "build_dicke_basis",
    "embed",
    "sap_check_via_embedding",
    "FalsifyOutcome",
    "falsify_ap",
    "falsify_sap",
    "reproduce_witness",
    "Aggregate",
    "CertificateReport",
    "build_report",
    "NptFalsifier",
    "SpectrumCertifier",
]
