"""Chart models around an idempotent: derivatives, the displacement
operator, and fixed-point scans."""

import numpy as np
import pytest

from cliffordlab.charts import (
    additive_model,
    affine_model,
    bilinear_parts,
    differentiability_probe,
    discrete_product_model,
    fixed_point_scan,
    min_plus_model,
    polynomial_model,
    rigidity_report,
    _symbolic_parts,
)
from cliffordlab.errors import (
    EvaluationOutsideDomain,
    NotDifferentiable,
    WorkbenchError,
)


def test_additive_model_is_differentiable_with_identity_parts():
    model = additive_model(2)
    assert differentiability_probe(model).differentiable
    L, R = bilinear_parts(model)
    assert np.allclose(L, np.eye(2)) and np.allclose(R, np.eye(2))


def test_min_plus_mismatch_is_one():
    verdict = differentiability_probe(min_plus_model())
    assert not verdict.differentiable
    assert verdict.worst_mismatch >= 1 - 1e-9


def test_min_plus_bilinear_parts_refuse():
    with pytest.raises(NotDifferentiable):
        bilinear_parts(min_plus_model())


def test_affine_polynomial_matches_symbolic_derivative():
    for model in (affine_model(1), affine_model(2)):
        assert differentiability_probe(model).differentiable
        L, R = bilinear_parts(model)
        Ls, Rs = _symbolic_parts(model)
        assert np.linalg.norm(L - Ls) <= 1e-6
        assert np.linalg.norm(R - Rs) <= 1e-6


def test_projection_model_prediction_isolated():
    # mu(u, v) = P u + P v with P = diag(1, 0): a degenerate-looking P whose
    # displacement derivative diag(1, -1) is still invertible
    model = polynomial_model(
        2,
        [
            [(1.0, (1, 0, 0, 0)), (1.0, (0, 0, 1, 0))],
            [],
        ],
        name="projection",
    )
    rep = rigidity_report(model, scan_radius=0.25, grid_step=0.05)
    assert np.allclose(rep.L, np.diag([1.0, 0.0]), atol=1e-6)
    assert np.allclose(rep.DH0, np.diag([1.0, -1.0]), atol=1e-6)
    assert rep.DH0_invertible
    assert rep.prediction == "isolated idempotent"
    assert len(rep.fixed_points_found) == 1


def test_additive_report_has_identity_displacement():
    rep = rigidity_report(additive_model(2), scan_radius=0.25, grid_step=0.05)
    assert np.allclose(rep.DH0, np.eye(2), atol=1e-6)
    assert rep.smallest_singular_value >= 0.9
    assert rep.involution_defect <= 1e-8


def test_min_plus_report_flags_non_differentiability():
    rep = rigidity_report(min_plus_model(), scan_radius=0.25, grid_step=0.05)
    assert not rep.differentiable_at_origin
    assert rep.DH0 is None
    assert rep.worst_mismatch >= 0.5


def test_additive_scan_finds_only_the_origin():
    points, diverged = fixed_point_scan(additive_model(2), 0.5, 0.1)
    assert len(points) == 1
    assert np.linalg.norm(points[0]) <= 1e-8


def test_affine_scan_finds_only_the_origin():
    # u + v + u*v in one dimension: f(u) = 2u + u^2 has roots 0 and -1, and
    # -1 is outside the scan ball
    points, _ = fixed_point_scan(affine_model(1), 0.5, 0.05)
    assert len(points) == 1
    assert abs(points[0][0]) <= 1e-8


def test_min_plus_scan_samples_the_continuum():
    points, _ = fixed_point_scan(min_plus_model(), 0.5, 0.05)
    on_axis = [p for p in points if abs(p[1]) <= 1e-8]
    assert len(on_axis) >= 10


def test_discrete_product_model_displacement():
    rep = rigidity_report(discrete_product_model(2), scan_radius=0.25,
                          grid_step=0.05)
    assert np.allclose(rep.DH0, np.diag([-1.0, 1.0]), atol=1e-6)
    assert rep.DH0_invertible


def test_evaluation_outside_domain_rejected():
    with pytest.raises(EvaluationOutsideDomain):
        additive_model(2, radius=0.5).evaluate(
            np.array([1.0, 0.0]), np.array([0.0, 0.0])
        )


def test_scan_radius_must_fit_the_model():
    with pytest.raises(WorkbenchError):
        fixed_point_scan(additive_model(2, radius=0.2), 0.5, 0.1)
