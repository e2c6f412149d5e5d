import math

import pytest

import alexandrov as ax


def test_comparison_kernels():
    assert ax.comparison_angle(3, 4, 5, 0) == pytest.approx(math.pi / 2, abs=1e-14)
    assert ax.diameter(1.0) == pytest.approx(math.pi)
    assert math.isinf(ax.diameter(-1.0))
    assert ax.admissibility(1.2, 1.2, 1.2, 1.0) == "loose"
    verts = ax.embed_triangle(1.0, 1.2, 0.9, -1.0)
    assert ax.vertex_angle(*verts, -1.0) == pytest.approx(
        ax.comparison_angle(1.0, 1.2, 0.9, -1.0), abs=1e-9)
    with pytest.raises(ValueError):
        ax.comparison_angle(1, 1, 3, 0)


def test_model_distance_on_sphere():
    assert ax.model_distance((0, 0, 1), (1, 0, 0), 1.0) == pytest.approx(math.pi / 2)


def test_taxicab_angles():
    plane = ax.taxicab_plane()
    assert plane.distance((0, 0), (1, 1)) == 2.0
    gamma = ax.SampledPath(plane, [(0.0, (0, 0)), (1.0, (1, 1))])
    eta = ax.SampledPath(plane, [(0.0, (0, 0)), (1.0, (1, 0))])
    est = ax.estimate_angles(gamma, eta, 0.0)
    assert est["lower"] <= 1e-3
    assert est["upper"] == pytest.approx(math.pi / 2, abs=1e-2)


def test_first_variation_on_sphere():
    sphere = ax.model_space(1.0)
    alpha = math.pi / 3
    gamma = ax.shortest_path(sphere, (0, 0, 1), ax.model_exp(alpha, 1.0, 1.0))
    report = ax.first_variation_check(gamma, [ax.model_exp(0.0, 1.0, 1.0)])
    assert report["pass"]
    assert report["limit_estimate"] == pytest.approx(-math.cos(alpha), abs=1e-4)


def test_cube_and_curvature_bound():
    cube = ax.cube_surface(1.0, 4)
    d = cube.distance((0.3, 0, 0.7), (1, 0.6, 0.2))
    assert 0 <= d - math.hypot(1.3, 0.5) <= cube.certified_error()
    r = ax.curvature_bound_test(ax.model_space(1.0), (0, 0, 1), 0.5, 0.0, "below", 500, 3)
    assert r["holds"] and r["violations"] == 0


def test_bundled_scenarios(tmp_path):
    names = ax.bundled_scenarios()
    assert "taxicab_angles" in names
    report = ax.run_scenario("taxicab_angles", out=tmp_path)
    assert report["exit_code"] == 0
    assert (tmp_path / "summary.csv").exists()
    with pytest.raises(ax.ScenarioError):
        ax.run_scenario(tmp_path / "missing.json")
