"""Three-dimensional Lie algebras with an almost contact B-metric structure.

Structure constants in a fixed phi-basis go in; the fundamental tensor F,
its class decomposition, the Levi-Civita connection and the curvature
suite come out, in exact rational arithmetic unless floats are supplied.
"""
from .algebra import (
    ACB, ETA, G, PHI, XI, StructureConstants, associated_metric, ell_projectors, is_lie_algebra, jacobi_close,
    jacobi_defect, kulkarni_nomizu, phi_metric,
)
from .curvature import (
    Connection, CurvatureReport, EinsteinVerdict, TemplateCheck, check_r3_identity, curvature_report,
    curvature_template_check, curvature_tensor, einstein_taxonomy, is_flat, levi_civita, ricci_and_scalars,
    sectional_curvatures,
)
from .errors import (
    AcbError, ExhaustedRetries, InputError, InvalidSpec, MalformedF, NoSolution, NotALieAlgebra, UnsupportedClass,
    ZeroDenominator,
)
from .families import (
    ExampleSpec, FamilySpec, construct_class_family, construct_example, expected_curvature, random_lie_algebra,
)
from .structure import (
    ClassDecomposition, ClassParams, FTensor, LeeForms, check_F_symmetries, classify, compute_F_closed_form,
    compute_F_oracle, decompose, lee_forms, special_structures,
)
from .verify import run_verification

__version__ = "0.1.0"

__all__ = [
    "ACB", "ETA", "G", "PHI", "XI", "StructureConstants", "associated_metric", "ell_projectors", "is_lie_algebra",
    "jacobi_close", "jacobi_defect", "kulkarni_nomizu", "phi_metric",
    "Connection", "CurvatureReport", "EinsteinVerdict", "TemplateCheck", "check_r3_identity", "curvature_report",
    "curvature_template_check", "curvature_tensor", "einstein_taxonomy", "is_flat", "levi_civita",
    "ricci_and_scalars", "sectional_curvatures",
    "AcbError", "ExhaustedRetries", "InputError", "InvalidSpec", "MalformedF", "NoSolution", "NotALieAlgebra",
    "UnsupportedClass", "ZeroDenominator",
    "ExampleSpec", "FamilySpec", "construct_class_family", "construct_example", "expected_curvature",
    "random_lie_algebra",
    "ClassDecomposition", "ClassParams", "FTensor", "LeeForms", "check_F_symmetries", "classify",
    "compute_F_closed_form", "compute_F_oracle", "decompose", "lee_forms", "special_structures",
    "run_verification",
]
