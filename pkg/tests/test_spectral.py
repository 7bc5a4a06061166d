import math

import numpy as np
import pytest

from exit_moments.spectral import (
    BartaBound,
    CapShooting,
    CapSpec,
    CosineTrial,
    EigenEstimate,
    barta_grid,
    barta_lower_bound,
    cap_eigenvalue_shooting,
    compare_cone_criteria,
    cone_finite_met,
    critical_cap_radius,
)
from exit_moments.spectral.cap_spec import LOWER_BOUND, SHOOTING
from exit_moments.utils.errors import DegenerateCap, InvalidInput

CRITICAL_BARTA = {3: 5.85, 4: 7.60, 5: 9.28}


@pytest.fixture(scope="module")
def barta():
    return BartaBound()


@pytest.fixture(scope="module")
def shooting():
    return CapShooting()


@pytest.mark.parametrize("m, r, expected", [
    (2, math.pi / 4.0, 4.0),
    (2, math.pi / 6.0, 9.0),
    (3, math.pi / 2.0, 2.0),
    (4, math.pi / 2.0, 3.0),
])
def test_shooting_known_eigenvalues(shooting, m, r, expected):
    estimate = shooting.eigenvalue(CapSpec(m, r))
    assert estimate.kind == SHOOTING
    assert estimate.value == pytest.approx(expected, abs=1e-6)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_shooting_at_critical_radius_is_two_m(shooting, m):
    assert shooting.eigenvalue(CapSpec(m, critical_cap_radius(m))).value == pytest.approx(2.0 * m, abs=1e-6)


def test_barta_exact_for_eigenfunction_trial(barta):
    # m = 2 與半球（m = 3, r = π/2）時 cos 試驗函數就是特徵函數
    assert barta.lower_bound(CapSpec(2, math.pi / 4.0)).value == pytest.approx(4.0, abs=1e-6)
    assert barta.lower_bound(CapSpec(3, math.pi / 2.0)).value == pytest.approx(2.0, abs=1e-6)


@pytest.mark.parametrize("m, r", [(3, math.pi / 3.0), (4, math.atan(math.sqrt(3.0)))])
def test_barta_invariant_under_trial_scaling(barta, m, r):
    scaled = BartaBound(trial_factory=lambda radius: CosineTrial(radius, amplitude=7.5))
    cap = CapSpec(m, r)
    assert scaled.lower_bound(cap).value == pytest.approx(barta.lower_bound(cap).value, rel=1e-10)


@pytest.mark.parametrize("m, expected", sorted(CRITICAL_BARTA.items()))
def test_barta_at_critical_radius(barta, m, expected):
    estimate = barta.lower_bound(CapSpec(m, critical_cap_radius(m)))
    assert estimate.kind == LOWER_BOUND
    assert estimate.value == pytest.approx(expected, abs=0.02)
    assert not cone_finite_met(estimate.value, m)
    assert 0.0 <= estimate.achieved_at <= critical_cap_radius(m)


@pytest.mark.parametrize("m", [2, 4, 6])
@pytest.mark.parametrize("r", [math.pi / 8.0, math.pi / 3.0])
def test_barta_never_exceeds_shooting(barta, shooting, m, r):
    cap = CapSpec(m, r)
    assert barta.lower_bound(cap).value <= shooting.eigenvalue(cap).value + 1e-6


def test_barta_profile(barta):
    cap = CapSpec(4, math.pi / 3.0)
    t, q = barta.profile(cap)
    assert t[0] == 0.0 and t[-1] == pytest.approx(cap.r)
    assert np.all(np.isfinite(q)) and np.all(q > 0.0)
    assert barta.lower_bound(cap).value <= q.min() + 1e-12


def test_barta_module_function_and_validation():
    assert barta_lower_bound(CapSpec(2, math.pi / 4.0), grid_size=256).value == pytest.approx(4.0, abs=1e-4)
    with pytest.raises(InvalidInput):
        BartaBound(grid_size=32)
    with pytest.raises(InvalidInput):
        BartaBound(refine_tol=0.0)


def test_cap_spec_validation():
    assert CapSpec(3, math.pi / 2.0).sphere_dimension == 2
    with pytest.raises(DegenerateCap):
        CapSpec(3, 1.6)
    with pytest.raises(InvalidInput):
        CapSpec(1, 0.5)
    with pytest.raises(InvalidInput):
        CapSpec(3, 0.0)


def test_cosine_trial():
    trial = CosineTrial(math.pi / 4.0, amplitude=2.0)
    assert trial.value(0.0) == 2.0
    assert trial.value(math.pi / 4.0) == pytest.approx(0.0, abs=1e-15)
    assert trial.derivative(math.pi / 4.0) == pytest.approx(-4.0)


def test_eigen_estimate_validation():
    with pytest.raises(InvalidInput):
        EigenEstimate(-1.0, SHOOTING, 1e-9)
    with pytest.raises(InvalidInput):
        EigenEstimate(1.0, "upper_bound", 1e-9)
    assert EigenEstimate(2.0, SHOOTING, 1e-9).to_dict() == {
        "kind": SHOOTING, "value": 2.0, "achieved_at": None, "tolerance": 1e-9}


def test_shooting_module_function_and_validation():
    assert cap_eigenvalue_shooting(CapSpec(2, math.pi / 2.0)).value == pytest.approx(1.0, abs=1e-6)
    with pytest.raises(InvalidInput):
        CapShooting(growth=1.0)
    with pytest.raises(InvalidInput):
        CapShooting().eigenvalue(CapSpec(2, 1.0), tol=0.0)


def test_cone_finite_met():
    assert cone_finite_met(5.85, 2)
    assert not cone_finite_met(4.0, 2)
    assert not cone_finite_met(7.60, 4)
    with pytest.raises(InvalidInput):
        cone_finite_met(5.0, 1)
    with pytest.raises(InvalidInput):
        cone_finite_met(0.0, 2)


def test_critical_cap_radius():
    assert critical_cap_radius(2) == pytest.approx(math.pi / 4.0)
    assert critical_cap_radius(4) == pytest.approx(math.pi / 3.0)
    with pytest.raises(InvalidInput):
        critical_cap_radius(1)


def test_compare_cone_criteria(barta, shooting):
    record = compare_cone_criteria(3, barta, shooting)
    assert record["r"] == pytest.approx(math.atan(math.sqrt(2.0)))
    assert record["two_m"] == 6
    assert record["barta"] == pytest.approx(5.85, abs=0.02)
    assert record["shooting"] == pytest.approx(6.0, abs=1e-6)
    assert not record["barta_exceeds"]
    assert not record["shooting_exceeds"]


def test_barta_grid_is_ordered_and_thread_independent():
    barta = BartaBound(grid_size=256)
    shooting = CapShooting()
    radii = [math.pi / 3.0, math.pi / 6.0]
    serial = barta_grid([3, 2], radii, barta, shooting, workers=1)
    parallel = barta_grid([3, 2], radii, barta, shooting, workers=4)
    assert [(record["m"], record["r"]) for record in serial] == [
        (2, math.pi / 6.0), (2, math.pi / 3.0), (3, math.pi / 6.0), (3, math.pi / 3.0)]
    assert serial == parallel
    for record in serial:
        assert record["barta"] <= record["shooting"] + 1e-6
