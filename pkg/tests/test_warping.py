import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exit_moments.utils.errors import InvalidInput, InvalidProfile, OutOfRange, SingularAtZero
from exit_moments.warping import CurvatureProfile, WarpingSolver, runge_kutta4, solve_warping
from exit_moments.warping.warping_function import EUCLIDEAN, HYPERBOLIC


def test_constant_profile_uses_closed_form():
    warping = solve_warping(CurvatureProfile.constant(1.0), 2.0)
    assert warping.closed_form_tag == HYPERBOLIC
    assert warping.eval_h(1.0) == pytest.approx(math.sinh(1.0), rel=1e-14)
    assert warping.eval_h_prime(1.0) == pytest.approx(math.cosh(1.0), rel=1e-14)
    assert warping.log_derivative(1.0) == pytest.approx(1.313035285499331, rel=1e-12)


def test_log_derivative_matches_coth():
    warping = solve_warping(CurvatureProfile.constant(4.0), 1.0)
    assert warping.log_derivative(1.0) == pytest.approx(2.0 / math.tanh(2.0), rel=1e-14)


def test_euclidean_warping(flat_warping):
    assert flat_warping.closed_form_tag == EUCLIDEAN
    t = np.array([0.0, 0.5, 3.0])
    np.testing.assert_array_equal(flat_warping.eval_h(t), t)
    np.testing.assert_array_equal(flat_warping.eval_h_prime(t), np.ones(3))
    assert flat_warping.log_derivative(2.0) == 0.5


def test_runge_kutta_matches_closed_form():
    # 多項式形式的常數剖面走 RK4 路徑
    warping = solve_warping(CurvatureProfile.polynomial([1.0]), 2.0)
    assert warping.closed_form_tag is None
    grid = np.linspace(0.0, 2.0, 9)
    np.testing.assert_allclose(warping.eval_h(grid), np.sinh(grid), rtol=1e-9, atol=1e-12)
    np.testing.assert_allclose(warping.eval_h_prime(grid), np.cosh(grid), rtol=1e-9)
    assert warping.log_derivative(1.0) == pytest.approx(1.0 / math.tanh(1.0), rel=1e-8)


def test_log_derivative_series_near_origin():
    warping = solve_warping(CurvatureProfile.polynomial([1.0]), 1.0)
    t = 0.25 * warping.t_series
    assert warping.log_derivative(t) == pytest.approx(1.0 / math.tanh(t), rel=1e-12)


@pytest.mark.parametrize("profile", [
    CurvatureProfile.polynomial([0.5, 0.0, 1.0]),
    CurvatureProfile.polynomial([1.0]),
    CurvatureProfile.constant(1.0),
])
def test_log_derivative_continuous_at_series_cutoff(profile):
    warping = solve_warping(profile, 1.0)
    cutoff = warping.t_series
    below = warping.log_derivative(cutoff * (1.0 - 1e-12))
    assert below == pytest.approx(warping.log_derivative(cutoff), rel=1e-8)


def test_ode_residual_is_small():
    warping = solve_warping(CurvatureProfile.polynomial([0.5, 0.0, 1.0]), 1.5)
    assert warping.ode_residual() < 1e-5


def test_rk4_single_step_on_exponential():
    state = runge_kutta4(lambda t, y: y, 0.0, 0.1, np.array([1.0]))
    assert state[0] == pytest.approx(math.exp(0.1), abs=1e-7)


def test_singular_at_zero_and_out_of_range(flat_warping):
    with pytest.raises(SingularAtZero):
        flat_warping.log_derivative(0.0)
    with pytest.raises(OutOfRange):
        flat_warping.eval_h(3.5)
    with pytest.raises(OutOfRange):
        flat_warping.eval_h(-0.1)


def test_negative_profile_rejected():
    with pytest.raises(InvalidProfile):
        solve_warping(CurvatureProfile.polynomial([1.0, -2.0]), 1.0)
    with pytest.raises(InvalidProfile):
        CurvatureProfile.constant(-1.0)


def test_tabulated_profile_must_cover_interval():
    profile = CurvatureProfile.tabulated([[0.0, 1.0], [1.0, 1.0]])
    with pytest.raises(InvalidProfile):
        solve_warping(profile, 2.0)
    warping = solve_warping(profile, 1.0)
    assert warping.eval_h(1.0) == pytest.approx(math.sinh(1.0), rel=1e-8)


def test_solver_validates_arguments():
    with pytest.raises(InvalidInput):
        WarpingSolver(grid_steps=4)
    with pytest.raises(InvalidInput):
        solve_warping(CurvatureProfile.euclidean(), 0.0)
    with pytest.raises(InvalidInput):
        solve_warping(CurvatureProfile.euclidean(), 1.0, tol=0.0)


@pytest.mark.parametrize("text, expected", [
    ("constant:1", CurvatureProfile.constant(1.0)),
    ("euclidean", CurvatureProfile.euclidean()),
    ("poly:0,1,0.5", CurvatureProfile.polynomial([0.0, 1.0, 0.5])),
])
def test_profile_parse(text, expected):
    assert CurvatureProfile.parse(text) == expected


def test_profile_parse_file(tmp_path):
    path = tmp_path / "profile.json"
    path.write_text(json.dumps({"variant": "tabulated", "knots": [[0, 0.5], [2, 1.5]]}), encoding="utf-8")
    profile = CurvatureProfile.parse(f"@{path}")
    assert profile.variant == "tabulated"
    assert profile.evaluate(1.0) == 1.0
    assert CurvatureProfile.from_dict(profile.to_dict()) == profile


@pytest.mark.parametrize("text", ["constant:x", "spline:1", "poly:1,a"])
def test_profile_parse_rejects(text):
    with pytest.raises(InvalidInput):
        CurvatureProfile.parse(text)


def test_series_coefficients():
    assert CurvatureProfile.polynomial([2.0, 3.0]).series_coefficients() == (2.0, 3.0, 0.0)
    assert CurvatureProfile.tabulated([[0.0, 1.0], [1.0, 3.0]]).series_coefficients() == (1.0, 2.0, 0.0)


@settings(max_examples=10, deadline=None)
@given(st.lists(st.floats(min_value=0.0, max_value=2.0), min_size=1, max_size=3))
def test_nonnegative_curvature_dominates_flat(coefficients):
    # G ≥ 0 時 h ≥ t 且 h' ≥ 1
    warping = solve_warping(CurvatureProfile.polynomial(coefficients), 1.0, tol=1e-8)
    grid = warping.grid
    assert np.all(warping.h_values >= grid - 1e-12)
    assert np.all(warping.h_prime_values >= 1.0 - 1e-12)
    assert np.all(np.diff(warping.h_values) > 0.0)


def test_grid_is_read_only(flat_warping):
    with pytest.raises(ValueError):
        flat_warping.h_values[0] = 1.0
    frame = flat_warping.to_frame()
    assert list(frame.columns) == ["t", "h", "h_prime"]
