import os
import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent.parent))

from exit_moments.moments import MomentSolver
from exit_moments.warping import CurvatureProfile, WarpingSolver


settings.register_profile("default", deadline=None, max_examples=25)
if "CI" in os.environ:
    # CI 機器較慢，但可以跑更多例子
    settings.register_profile("ci", deadline=None, max_examples=100)
    settings.load_profile("ci")
else:
    settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="執行長時間的蒙地卡羅與驗收測試")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: 長時間測試，需加上 --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="需要 --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def warping_solver():
    return WarpingSolver()


@pytest.fixture(scope="session")
def flat_warping(warping_solver):
    return warping_solver.solve(CurvatureProfile.euclidean(), 3.0)


@pytest.fixture(scope="session")
def hyperbolic_warping(warping_solver):
    return warping_solver.solve(CurvatureProfile.constant(1.0), 2.0)


@pytest.fixture
def moment_solver():
    return MomentSolver()
