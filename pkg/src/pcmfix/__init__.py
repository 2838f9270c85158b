"""Exact finite partial cone metric spaces and multi-valued fixed-point checks."""

from pcmfix.numerics import (
    ConeVector,
    OrthantCone,
    RationalSyntaxError,
    cone_contains,
    cone_leq,
    cone_lt_interior,
    fmt_rat,
    lattice_inf,
    lattice_sup,
    max_norm,
    rat_parse,
)
from pcmfix.space import (
    AxiomReport,
    FinitePcmSpace,
    InducedConeMetric,
    MetricRecipe,
    Violation,
    build_space,
    check_cm_axioms,
    check_pcm_axioms,
    generate_random_space,
    induce_cone_metric,
    is_bounded,
    is_cbp_member,
    is_closed,
    point_in_closure,
)
from pcmfix.setdist import (
    SelectionResult,
    SetDistanceResult,
    delta,
    hausdorff,
    point_set_dist,
    select,
)
from pcmfix.contraction import (
    ContractionParams,
    ContractionReport,
    MinConstant,
    MultiValuedMap,
    check_condition,
    check_reich_specializations,
    generate_random_map,
    generate_sink_map,
    min_constant,
)
from pcmfix.solver import (
    CauchyDiagnostics,
    IterationTrace,
    StepRecord,
    check_cauchy_transfer,
    decay_ratio,
    default_h,
    enumerate_fixed_points,
    iterate,
)

__version__ = "0.1.0"
