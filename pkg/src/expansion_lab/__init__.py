"""Exact expansion constants of integer matrices over Q, Z, and Z/qZ.

The package computes, with no floating point anywhere, the smallest
preimage-to-target norm ratio of a linear map at a target vector and
globally; certifies whether a lattice is integrally spanned (every
coordinate projection of its generators spans the corresponding
integer lattice); builds codifferential matrices for graphs, CW
complexes, and group presentations; and runs verification campaigns
tying those pieces together with machine-checkable witnesses.
"""

from .complexes import (
    NULL_EDGE,
    CochainComplex,
    Graph,
    GroupPresentation,
    braid_presentation,
    check_incidence_rows,
    format_graph,
    graph_complex,
    graph_d0,
    graph_of_incidence,
    h1_is_trivial,
    incidence_kernel_basis,
    parse_graph,
    parse_presentation,
    presentation_complex,
    presentation_d1,
    presentation_text,
    steinberg_presentation,
)
from .errors import (
    AmbientDimensionCapError,
    CochainConditionError,
    DimensionMismatchError,
    EnumerationCapError,
    ExpansionLabError,
    FormatError,
    NotPrimeError,
    NotUnimodularError,
    PresentationSyntaxError,
    RowShapeError,
    TargetNotInImageError,
    TargetNotInIntegerImageError,
    UndefinedExpansionError,
    ZeroTargetError,
)
from .exactla import (
    IntMatrix,
    LatticeBasis,
    Rational,
    det,
    format_matrix,
    format_rational,
    format_vector,
    hnf,
    integer_kernel_basis,
    l1_norm,
    lattice_member,
    mat_vec,
    parse_matrix,
    parse_rational,
    parse_vector,
    primitive_ray,
    rank,
    rational_inverse,
    snf,
    solve_integer,
    solve_rational,
    unimodular_inverse,
)
from .expansion import (
    ExpansionResult,
    FaceDecomposition,
    GlobalExpansion,
    MinimizationFace,
    ModQMatrix,
    hamming_weight,
    iter_image_with_preimage,
    lift_section,
    minimization_faces,
    reduce_mod_q,
    xi_q_at,
    xi_q_at_face_oracle,
    xi_q_global,
    xi_z_at,
    xi_z_global,
    xi_zq_at,
    xi_zq_global,
)
from .harness import (
    CampaignReport,
    campaign_cw,
    campaign_equality,
    campaign_lemma_oracle,
    campaign_modq,
    campaign_presentations,
    default_cw_fixtures,
    random_incidence_matrix,
    sample_image_targets,
)
from .spanning import (
    CoordSubset,
    SpanningVerdict,
    is_integrally_spanned,
    project,
    project_columns,
    subsets_in_order,
)

__version__ = "0.1.0"

__all__ = [
    "AmbientDimensionCapError",
    "CampaignReport",
    "CochainComplex",
    "CochainConditionError",
    "CoordSubset",
    "DimensionMismatchError",
    "EnumerationCapError",
    "ExpansionLabError",
    "ExpansionResult",
    "FaceDecomposition",
    "FormatError",
    "GlobalExpansion",
    "Graph",
    "GroupPresentation",
    "IntMatrix",
    "LatticeBasis",
    "MinimizationFace",
    "ModQMatrix",
    "NULL_EDGE",
    "NotPrimeError",
    "NotUnimodularError",
    "PresentationSyntaxError",
    "Rational",
    "RowShapeError",
    "SpanningVerdict",
    "TargetNotInImageError",
    "TargetNotInIntegerImageError",
    "UndefinedExpansionError",
    "ZeroTargetError",
    "braid_presentation",
    "campaign_cw",
    "campaign_equality",
    "campaign_lemma_oracle",
    "campaign_modq",
    "campaign_presentations",
    "check_incidence_rows",
    "default_cw_fixtures",
    "det",
    "format_graph",
    "format_matrix",
    "format_rational",
    "format_vector",
    "graph_complex",
    "graph_d0",
    "graph_of_incidence",
    "h1_is_trivial",
    "hamming_weight",
    "hnf",
    "incidence_kernel_basis",
    "integer_kernel_basis",
    "is_integrally_spanned",
    "iter_image_with_preimage",
    "l1_norm",
    "lattice_member",
    "lift_section",
    "mat_vec",
    "minimization_faces",
    "parse_graph",
    "parse_matrix",
    "parse_presentation",
    "parse_rational",
    "parse_vector",
    "presentation_complex",
    "presentation_d1",
    "presentation_text",
    "primitive_ray",
    "project",
    "project_columns",
    "random_incidence_matrix",
    "rank",
    "rational_inverse",
    "reduce_mod_q",
    "sample_image_targets",
    "snf",
    "solve_integer",
    "solve_rational",
    "steinberg_presentation",
    "subsets_in_order",
    "unimodular_inverse",
    "xi_q_at",
    "xi_q_at_face_oracle",
    "xi_q_global",
    "xi_z_at",
    "xi_z_global",
    "xi_zq_at",
    "xi_zq_global",
]
