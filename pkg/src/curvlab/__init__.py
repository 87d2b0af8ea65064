"""Pointwise curvature calculus: tensors, charts, classification and identity checks."""

from __future__ import annotations

from . import identities as _identities  # noqa: F401  (registers the checks)
from . import hypersurface as _hypersurface  # noqa: F401
from .charts import (
    BUILTINS,
    MetricChart,
    builtin_chart,
    constant_curvature,
    evaluate_package,
    rn_desitter,
    sample_points,
    sphere_product,
    warped_1xN,
    warped_2xN,
)
from .checks import REGISTRY, Sample, run_checks, select, summarize
from .classify import ClassificationReport, classify_point, roter_closed_forms, roter_fit
from .fitting import FitResult, linear_combination_fit, proportionality_fit, rank_shift
from .hypersurface import HypersurfaceData, check_hyp_identities, gauss_package, h_cubic_fit, make_hypersurface, weyl_from_H
from .package import CurvaturePackage, package_from_curvature
from .tensors import MetricAtPoint, build_E, build_E_of, curvature_action, kn_product, metric_at, tachibana

__version__ = "0.1.0"

__all__ = [
    "BUILTINS", "MetricChart", "builtin_chart", "evaluate_package", "sample_points",
    "constant_curvature", "rn_desitter", "sphere_product", "warped_1xN", "warped_2xN",
    "REGISTRY", "Sample", "run_checks", "select", "summarize",
    "ClassificationReport", "classify_point", "roter_closed_forms", "roter_fit",
    "FitResult", "linear_combination_fit", "proportionality_fit", "rank_shift",
    "HypersurfaceData", "check_hyp_identities", "gauss_package", "h_cubic_fit", "make_hypersurface", "weyl_from_H",
    "CurvaturePackage", "package_from_curvature",
    "MetricAtPoint", "build_E", "build_E_of", "curvature_action", "kn_product", "metric_at", "tachibana",
]
