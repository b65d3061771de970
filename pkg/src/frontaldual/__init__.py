"""Envelope reconstruction and Legendre duality on frontal data.

The package has three layers: an exact kernel (rational multivariate
polynomials, formal 1-forms, exterior calculus with the support rewrite),
a numeric engine (sphere chart, data extraction from frontals, envelope
reconstruction, genericity probes), and transform/verification tooling on
top (the classical swap and its parameter family, membership tests, and an
exact re-derivation of every identity behind the characterization of the
swap).
"""

from .poly import MultiPoly, PolyError, parse_poly, symbols
from .forms import (
    NotExactError,
    OneForm,
    differential,
    frontal_potential,
    potential,
    theta_b_pairs,
)
from .sphere import (
    AntipodalPointError,
    GeodesicUndefinedError,
    exp_map,
    log_map,
    parallel_transport,
    sphere_point,
    transported_frame,
)
from .frontal import (
    AntipodalBaseError,
    FrontalMap,
    GaussExtensionError,
    GenericityReport,
    GridSpec,
    LegendrianData,
    NotCreativeError,
    SparseRegularSetError,
    check_frontal_identity,
    creative_check,
    data_of_frontal,
    envelope_reconstruct,
    gauss_map_for_curve,
    genericity_probe,
    support_function,
    wavefront_probe,
)
from .involution import (
    DegenerateLambdaError,
    FakeParams,
    MembershipVerdict,
    case_I_counterexample,
    case_II1_demo,
    case_II2_demo,
    fake_transform,
    involution_check,
    legendre,
    membership,
    resolve_transform,
)
from .proofs import (
    QuadSystemPoint,
    SolutionClass,
    classify_quadruple,
    derive_tilde_a,
    run_all_checks,
    verify_case_conclusions,
    verify_lemma32_redundancy,
    verify_p_polynomials,
    verify_solution_set_complete,
)
from .reporting import Report
from . import catalog, dataio

__version__ = "0.1.0"

__all__ = [
    "MultiPoly", "PolyError", "parse_poly", "symbols",
    "NotExactError", "OneForm", "differential", "frontal_potential",
    "potential", "theta_b_pairs",
    "AntipodalPointError", "GeodesicUndefinedError", "exp_map", "log_map",
    "parallel_transport", "sphere_point", "transported_frame",
    "AntipodalBaseError", "FrontalMap", "GaussExtensionError",
    "GenericityReport", "GridSpec", "LegendrianData", "NotCreativeError",
    "SparseRegularSetError", "check_frontal_identity", "creative_check",
    "data_of_frontal", "envelope_reconstruct", "gauss_map_for_curve",
    "genericity_probe", "support_function", "wavefront_probe",
    "DegenerateLambdaError", "FakeParams", "MembershipVerdict",
    "case_I_counterexample", "case_II1_demo", "case_II2_demo",
    "fake_transform", "involution_check", "legendre", "membership",
    "resolve_transform",
    "QuadSystemPoint", "SolutionClass", "classify_quadruple",
    "derive_tilde_a", "run_all_checks", "verify_case_conclusions",
    "verify_lemma32_redundancy", "verify_p_polynomials",
    "verify_solution_set_complete",
    "Report", "catalog", "dataio",
    "__version__",
]
