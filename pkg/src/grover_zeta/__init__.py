"""Twisted Grover walk operators, zeta functions, and trace-formula checks.

The package models mixed graphs (undirected edges plus phased directed
edges), builds the walk operators they induce, and verifies numerically the
identities tying the walk together: the reduced determinant form of the
zeta function, the spectral mapping between the walk and the Hermitian
adjacency matrix, the closed-walk/Euler-product expansion of the log-zeta
series, and the regular-graph trace formulas.
"""

__version__ = "0.1.0"

from .cycles import (
    EnumerationBudgetError,
    PrimeCycleClass,
    closed_walk_weight_sums,
    cycle_weight,
    enumerate_prime_classes,
    euler_log_coefficients,
    n_k_bruteforce,
    step_weight,
)
from .experiments import (
    DensityReport,
    FuzzSummary,
    density_experiment,
    fuzz_identities,
    inject_phase_defect,
    mckay_density,
    reference_bin_masses,
)
from .graphs import (
    DIRECTED,
    UNDIRECTED,
    Arc,
    Edge,
    GenerationError,
    GraphFormatError,
    GraphStats,
    MixedGraph,
    circulant_graph,
    complete_graph,
    cycle_graph,
    generate,
    girth,
    orient_random,
    parse_mixed_graph,
    path_graph,
    petersen_graph,
    random_regular_graph,
    stats,
    strip_orientation,
    to_text,
)
from .linalg import (
    IdentityCheckError,
    SpectrumResult,
    adjoint,
    determinant,
    eigenvalues,
    isclose_scaled,
    spectral_match_distance,
    trace_power,
)
from .operators import (
    OperatorBundle,
    adjacency_matrix,
    build_bundle,
    identity_residuals,
    ihara_edge_matrix,
    positive_support,
)
from .traceformula import (
    AngleSet,
    SampledTestFunction,
    SeriesIdentityReport,
    TraceFormulaReport,
    TrigPolynomial,
    ahumada_kernel_integral,
    evaluate_ahumada,
    evaluate_grover_trace_formula,
    evaluate_twisted_trace_formula,
    fourier_coeff,
    grover_angles,
    ihara_angles,
    log_derivative_series_check,
    oracle_spectral_sum,
)
from .zeta import (
    MappingResult,
    PoleSet,
    ZetaSeries,
    ihara_reciprocal,
    poles_regular,
    regular_product_reciprocal,
    series_coefficients,
    spectrum_via_mapping,
    transition_form_reciprocal,
    zeta_reciprocal,
    zeta_reciprocal_reduced,
)
