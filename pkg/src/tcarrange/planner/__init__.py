"""Collision-free motion planners for ordered particles in the plane."""
from __future__ import annotations

from .motion import (DEFAULT_FRAMES, SampledPath, as_configuration, diameter, min_distance,
                     plan2, plan3, plan_baseline, table2, table3)
from .svg import render_svg
from .tables import (PlannerError, PlannerTable, ProductTable, PuncturedPlane, planner_cstar,
                     planner_mstar, product_combine)
from .verify import VerifyReport, instability_estimate, verify_path

__all__ = [
    "DEFAULT_FRAMES", "PlannerError", "PlannerTable", "ProductTable", "PuncturedPlane",
    "SampledPath", "VerifyReport", "as_configuration", "diameter", "instability_estimate",
    "min_distance", "plan2", "plan3", "plan_baseline", "planner_cstar", "planner_mstar",
    "product_combine", "render_svg", "table2", "table3", "verify_path",
]
