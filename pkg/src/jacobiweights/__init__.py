"""Exact weight systems for Jacobi diagrams over doubled Lie algebras.

The pipeline: diagrams on a circle or interval skeleton (`diagrams`),
legal edge orientations and the directed rewrite calculus
(`orientations`), exact tensor-network weights and enveloping words
(`weights`), structure constants and the doubling construction
(`algebras`), the half-trace observable tower (`observables`), exhaustive
small-degree corpora (`corpus`), and polygonal writhe/linking integrals
(`geometry`).  Hot contraction kernels live in `_core` with a compiled
twin selected at import when available.
"""

from ._core import available_kernels, kernel_name
from .algebras import (
    DoubleAlgebra,
    LieAlgebraData,
    Representation,
    algebra_by_name,
    algebra_from_spec,
    build_gl,
    build_sl2,
    defining_rep,
    double,
    rep_R,
    validate_algebra,
    validate_representation,
)
from .corpus import DiagramCorpus, enumerate_diagrams, primitive_audit
from .diagrams import (
    CIRCLE,
    INTERVAL,
    DiagramSum,
    DirectedJacobiDiagram,
    JacobiDiagram,
    canonical_form,
    canonicalize,
    close_interval,
    cut_circle,
    degree,
    diagram_from_key,
    external_leg_count,
    make_chord_diagram,
    make_theta_power,
    make_tripod,
    make_wheel,
    permute_legs,
)
from .geometry import (
    DegeneratePairError,
    PolygonalCurve,
    hopf_pair,
    linking_gauss,
    load_curve_points,
    sample_circle,
    sample_trefoil,
    writhe_exact,
    writhe_monte_carlo,
)
from .observables import (
    BlockMatrix2n,
    chi,
    delta_m,
    half_trace,
    interpolate_polynomial,
    lambda_C,
    sigma_m,
    sigma_wheel_fast,
)
from .orientations import (
    OrientationSum,
    apply_directed_stu,
    apply_stu,
    commute_adjacent_legs,
    detect_zero_pattern,
    directed_sum,
    directed_wheel,
    leg_bound_report,
    legal_orientations,
    reduce_wheel,
    reduce_wheel_on_circle,
    stu_terms,
    verify_leg_bound,
    zero_patterns,
)
from .weights import (
    EnvelopingTensor,
    contract_l,
    contract_network,
    directed_weight_sum,
    evaluate_sum,
    interval_image,
    pbw_normal_form,
    weight_circle,
)

__version__ = "0.1.0"

__all__ = [
    "available_kernels",
    "kernel_name",
    "DoubleAlgebra",
    "LieAlgebraData",
    "Representation",
    "algebra_by_name",
    "algebra_from_spec",
    "build_gl",
    "build_sl2",
    "defining_rep",
    "double",
    "rep_R",
    "validate_algebra",
    "validate_representation",
    "DiagramCorpus",
    "enumerate_diagrams",
    "primitive_audit",
    "CIRCLE",
    "INTERVAL",
    "DiagramSum",
    "DirectedJacobiDiagram",
    "JacobiDiagram",
    "canonical_form",
    "canonicalize",
    "close_interval",
    "cut_circle",
    "degree",
    "diagram_from_key",
    "external_leg_count",
    "make_chord_diagram",
    "make_theta_power",
    "make_tripod",
    "make_wheel",
    "permute_legs",
    "DegeneratePairError",
    "PolygonalCurve",
    "hopf_pair",
    "linking_gauss",
    "load_curve_points",
    "sample_circle",
    "sample_trefoil",
    "writhe_exact",
    "writhe_monte_carlo",
    "BlockMatrix2n",
    "chi",
    "delta_m",
    "half_trace",
    "interpolate_polynomial",
    "lambda_C",
    "sigma_m",
    "sigma_wheel_fast",
    "OrientationSum",
    "apply_directed_stu",
    "apply_stu",
    "commute_adjacent_legs",
    "detect_zero_pattern",
    "directed_sum",
    "directed_wheel",
    "leg_bound_report",
    "legal_orientations",
    "reduce_wheel",
    "reduce_wheel_on_circle",
    "stu_terms",
    "verify_leg_bound",
    "zero_patterns",
    "EnvelopingTensor",
    "contract_l",
    "contract_network",
    "directed_weight_sum",
    "evaluate_sum",
    "interval_image",
    "pbw_normal_form",
    "weight_circle",
    "__version__",
]
