import json
import math

import numpy as np
import pytest

from exit_moments.spectral import WarpedCone, WarpedConeSpec, WarpProfile
from exit_moments.spectral.warped_cone import STOCHASTIC_COMPLETENESS_NOTE
from exit_moments.utils.errors import HorizonTooSmall, InvalidC, InvalidInput


@pytest.fixture(scope="module")
def cone():
    return WarpedCone(grid_size=20001)


def flat_cone(lam, r0=0.1, horizon=1000.0):
    return WarpedConeSpec(2, WarpProfile.linear(0.0, 1.0), lam, r0, horizon)


def test_flat_cone_has_constant_profile(cone):
    t, F = cone.profile(flat_cone(4.5))
    assert t[0] == 0.1 and t[-1] == 1000.0
    np.testing.assert_allclose(F, 0.25, rtol=1e-9)


@pytest.mark.parametrize("alpha", [0.0, 1.0, 5.0])
@pytest.mark.parametrize("lam, expected", [(3.5, False), (4.5, True)])
def test_linear_warp_verdicts(cone, alpha, lam, expected):
    result = cone.condition(WarpedConeSpec(2, WarpProfile.linear(alpha, 1.0), lam, 0.1))
    assert result.satisfiable is expected
    assert result.tail_F == pytest.approx(0.25, abs=0.005)
    assert STOCHASTIC_COMPLETENESS_NOTE in result.notes


def test_witness_constant(cone):
    result = cone.condition(flat_cone(4.5))
    assert result.effective_r0 == 0.1
    assert result.c_witness == pytest.approx(2.0, rel=1e-6)
    assert result.c_witness > 1.0 / 4.5
    assert result.asymptotic_diagnostic == 2.0


def test_effective_radius_moves_outward(cone):
    # w = 1 + t 時 F 由下方遞增趨近 1/4，r₀ = 0.1 處太小
    result = cone.condition(WarpedConeSpec(2, WarpProfile.linear(1.0, 1.0), 4.5, 0.1))
    assert result.inf_F < 1.0 / 4.5
    assert result.satisfiable
    assert result.effective_r0 > 0.1
    assert result.c_witness > 1.0 / 4.5


def test_unsatisfiable_has_no_witness(cone):
    result = cone.condition(flat_cone(3.5))
    assert result.c_witness is None and result.effective_r0 is None
    document = result.to_dict()
    assert document["satisfiable"] is False
    assert json.loads(json.dumps(document))["notes"] == list(result.notes)


def test_tabulated_warp_matches_linear(cone):
    warp = WarpProfile.tabulated([[0.0, 0.0], [1000.0, 1000.0]])
    result = cone.condition(WarpedConeSpec(2, warp, 4.5, 0.1))
    assert result.satisfiable
    assert result.tail_F == pytest.approx(0.25, abs=1e-6)
    assert result.asymptotic_diagnostic == pytest.approx(2.0, rel=1e-6)


def test_horizon_too_small_when_still_decreasing(cone):
    grid = np.linspace(0.0, 10.0, 2001)
    warp = WarpProfile.tabulated(np.column_stack((grid, np.exp(grid))).tolist())
    with pytest.raises(HorizonTooSmall) as info:
        cone.condition(WarpedConeSpec(2, warp, 1e5, 0.5, horizon=10.0))
    assert info.value.partial["threshold"] == pytest.approx(1e-5)
    assert info.value.partial["tail_F"] < info.value.partial["inf_F"] + info.value.partial["tail_drift"]


@pytest.mark.parametrize("alpha, k, lam, c, t, expected", [
    (0.0, 1.0, 5.0, 1.0, 1.0, 1.0),
    (1.0, 0.0, 1.0, 2.0, 2.0, 2.0),
])
def test_supersolution_closed_forms(cone, alpha, k, lam, c, t, expected):
    spec = WarpedConeSpec(2, WarpProfile.linear(alpha, k), lam, 0.5, 10.0)
    assert cone.supersolution(spec, c, t) == pytest.approx(expected, rel=1e-9)
    np.testing.assert_allclose(cone.supersolution(spec, c, np.array([0.0, t])), [0.0, expected], rtol=1e-9)


def test_supersolution_rejects_small_c(cone):
    with pytest.raises(InvalidC):
        cone.supersolution(flat_cone(5.0), 0.2, 1.0)


@pytest.mark.parametrize("arguments", [
    dict(ell=1, warp=WarpProfile.linear(0.0, 1.0), lam=1.0, r0=0.1),
    dict(ell=2, warp=WarpProfile.linear(0.0, 1.0), lam=0.0, r0=0.1),
    dict(ell=2, warp=WarpProfile.linear(0.0, 1.0), lam=1.0, r0=2000.0),
    dict(ell=2, warp=WarpProfile.tabulated([[0.0, 0.0], [10.0, 10.0]]), lam=1.0, r0=0.1),
])
def test_spec_validation(arguments):
    with pytest.raises(InvalidInput):
        WarpedConeSpec(**arguments)


def test_warp_profile_documents(tmp_path):
    with pytest.raises(InvalidInput):
        WarpProfile.linear(0.0, 0.0)
    with pytest.raises(InvalidInput):
        WarpProfile.from_dict({"variant": "spline"})
    path = tmp_path / "warp.json"
    path.write_text(json.dumps({"variant": "tabulated", "knots": [[0, 0], [5, 5]]}), encoding="utf-8")
    warp = WarpProfile.load(str(path))
    assert warp.last_knot == 5.0
    assert WarpProfile.from_dict(warp.to_dict()) == warp
    assert math.isinf(WarpProfile.linear(1.0, 1.0).last_knot)
