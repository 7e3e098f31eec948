"""Exact mixed volumes, area measures, and Bezout-gap diagnostics on
rational convex polytopes."""

from .bezout import (
    AuditReport,
    BezoutCertificate,
    FacetAuditRecord,
    LemmaCheck,
    MoveSpec,
    af_spot_check,
    bezout_gap,
    bezout_gap_general,
    cap_cut,
    counterexample_search,
    facet_move_linearity_check,
    homothety_check,
    lemma_measure_power_identity,
    measures_proportional,
    move_facet,
    projection_preserved,
    safe_move_range,
    simplex_audit,
    support_drop_set,
)
from .documents import (
    canonical_json,
    document_digest,
    parse_polytope,
    serialize_polytope,
)
from .errors import (
    BadArity,
    BadParams,
    BudgetExhausted,
    DegenerateInput,
    DimensionLimit,
    DimensionMismatch,
    EmptyIntersection,
    EmptyOrFlat,
    InternalCheckError,
    MvlabError,
    ParseError,
    RangeViolation,
    Unbounded,
    ZeroVector,
)
from .generators import (
    ball_approx_3d,
    cross_polytope,
    cube,
    generate,
    prism,
    random_hull,
    regular_polygon,
    simplex,
    truncated_simplex,
)
from .geometry import (
    DIM_CAP,
    FacetData,
    Halfspace,
    Polytope,
    clip_halfspace,
    contains_point,
    convex_hull,
    dilate,
    face_in_direction,
    facet_structure,
    interior_point,
    minkowski_sum,
    project_along,
    support_value,
    translate,
    vertex_enumeration,
    volume,
)
from .mixed import (
    DiscreteMeasure,
    clear_caches,
    mixed_area_measure,
    mixed_volume,
    mixed_volume_via_measure,
    segment_mixed_volume,
    surface_area_measure,
)

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "BadArity",
    "BadParams",
    "BezoutCertificate",
    "BudgetExhausted",
    "DIM_CAP",
    "DegenerateInput",
    "DimensionLimit",
    "DimensionMismatch",
    "DiscreteMeasure",
    "EmptyIntersection",
    "EmptyOrFlat",
    "FacetAuditRecord",
    "FacetData",
    "Halfspace",
    "InternalCheckError",
    "LemmaCheck",
    "MoveSpec",
    "MvlabError",
    "ParseError",
    "Polytope",
    "RangeViolation",
    "Unbounded",
    "ZeroVector",
    "af_spot_check",
    "ball_approx_3d",
    "bezout_gap",
    "bezout_gap_general",
    "canonical_json",
    "cap_cut",
    "clear_caches",
    "clip_halfspace",
    "contains_point",
    "convex_hull",
    "counterexample_search",
    "cross_polytope",
    "cube",
    "dilate",
    "document_digest",
    "face_in_direction",
    "facet_move_linearity_check",
    "facet_structure",
    "generate",
    "homothety_check",
    "interior_point",
    "lemma_measure_power_identity",
    "measures_proportional",
    "minkowski_sum",
    "mixed_area_measure",
    "mixed_volume",
    "mixed_volume_via_measure",
    "move_facet",
    "parse_polytope",
    "prism",
    "project_along",
    "projection_preserved",
    "random_hull",
    "regular_polygon",
    "safe_move_range",
    "segment_mixed_volume",
    "serialize_polytope",
    "simplex",
    "simplex_audit",
    "support_drop_set",
    "support_value",
    "translate",
    "truncated_simplex",
    "vertex_enumeration",
    "volume",
]
