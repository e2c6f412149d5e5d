"""Comparison geometry for length spaces with curvature bounds.

Points are 2- or 3-sequences of floats. Model-space points use the chart of
their curvature: the plane for k = 0, the unit sphere in R^3 for k > 0 and
the hyperboloid for k < 0.
"""

from pathlib import Path

from . import _core
from ._core import (
    Path as SampledPath,
    ScenarioError,
    Space,
    admissibility,
    arc_length_reparam,
    comparison_angle,
    cube_surface,
    curvature_bound_test,
    diameter,
    embed_triangle,
    estimate_angles,
    first_variation_check,
    model_distance,
    model_exp,
    model_space,
    path_length,
    shortest_path,
    taxicab_plane,
    vertex_angle,
)

SCENARIO_DIR = Path(__file__).resolve().parent / "scenarios"


def bundled_scenarios(scenario_dir=SCENARIO_DIR):
    return _core.bundled_scenarios(str(scenario_dir))


def run_scenario(config, seed=None, out=None, scenario_dir=SCENARIO_DIR):
    """Run a scenario file or bundled scenario name; returns the report dict.

    Tables are written under `out` when given.
    """
    return _core.run_scenario(str(config), str(scenario_dir), seed,
                              None if out is None else str(out))


__all__ = [
    "SCENARIO_DIR", "SampledPath", "ScenarioError", "Space", "admissibility",
    "arc_length_reparam", "bundled_scenarios", "comparison_angle", "cube_surface",
    "curvature_bound_test", "diameter", "embed_triangle", "estimate_angles",
    "first_variation_check", "model_distance", "model_exp", "model_space",
    "path_length", "run_scenario", "shortest_path", "taxicab_plane", "vertex_angle",
]
