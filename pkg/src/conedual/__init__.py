"""Duality for conic programs over two cones cut by a hyperplane."""

from .conditions import (BoundedCheck, Check, ConditionReport, Tri, check_all,
                         check_bounded_optimal_set, check_sd, check_sp, check_td, check_tp,
                         check_U_bounded)
from .cones import (Cone, DualSum, HRep, Intersection, LinearSubspace, MembershipCertificate,
                    Orthant, Preimage, Product, PsdEmbedded, SecondOrder, Verdict, VRep,
                    full_space)
from .errors import (ConeDualError, DimensionError, InternalInvariantViolation,
                     InvalidInstance, PolicyError)
from .gallery import GalleryEntry, builtin_gallery, verify_gallery
from .geometry import EXACT, FLOAT, ScalarPolicy
from .propcheck import run_property_suite
from .reformulate import (LinearMap, SymmetricInstance, build_shapiro_cones,
                          check_shapiro_conditions, qop_dnn_form, to_hyperplane_dual_form,
                          to_hyperplane_primal_form)
from .report import emit_reports
from .solver import (DualityReport, HyperplaneInstance, SolveOutcome, Status, classify,
                     reduce_by_projection, solve_dual_line, solve_many, solve_pair,
                     solve_primal_hyperplane)

__version__ = "0.1.0"

__all__ = [
    "BoundedCheck",
    "Check",
    "ConditionReport",
    "Tri",
    "check_all",
    "check_bounded_optimal_set",
    "check_sd",
    "check_sp",
    "check_td",
    "check_tp",
    "check_U_bounded",
    "Cone",
    "DualSum",
    "HRep",
    "Intersection",
    "LinearSubspace",
    "MembershipCertificate",
    "Orthant",
    "Preimage",
    "Product",
    "PsdEmbedded",
    "SecondOrder",
    "Verdict",
    "VRep",
    "full_space",
    "ConeDualError",
    "DimensionError",
    "InternalInvariantViolation",
    "InvalidInstance",
    "PolicyError",
    "GalleryEntry",
    "builtin_gallery",
    "verify_gallery",
    "EXACT",
    "FLOAT",
    "ScalarPolicy",
    "run_property_suite",
    "LinearMap",
    "SymmetricInstance",
    "build_shapiro_cones",
    "check_shapiro_conditions",
    "qop_dnn_form",
    "to_hyperplane_dual_form",
    "to_hyperplane_primal_form",
    "emit_reports",
    "DualityReport",
    "HyperplaneInstance",
    "SolveOutcome",
    "Status",
    "classify",
    "reduce_by_projection",
    "solve_dual_line",
    "solve_many",
    "solve_pair",
    "solve_primal_hyperplane",
]
