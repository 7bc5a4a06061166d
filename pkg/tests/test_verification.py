import pandas as pd
import pytest

from exit_moments.core import VerificationSuite, summarize
from exit_moments.utils.errors import InvalidInput

COLUMNS = ["stage", "check", "expected", "observed", "tolerance", "passed"]


@pytest.fixture(scope="module")
def suite():
    return VerificationSuite(quick=True)


@pytest.mark.parametrize("stage", [
    "closed_forms",
    "moment_oracle",
    "tower_bound",
    "hierarchy_residual",
    "predicates",
    "critical_caps",
    "shooting_oracles",
])
def test_quick_stage_passes(suite, stage):
    table = suite.run([stage])
    assert list(table.columns) == COLUMNS
    assert len(table) > 0
    failed = table[~table["passed"]]
    assert failed.empty, failed.to_string()


def test_unknown_stage(suite):
    with pytest.raises(InvalidInput):
        suite.run(["closed_forms", "plots"])


def test_summarize():
    table = pd.DataFrame({"passed": [True, False, True]})
    assert summarize(table) == {"total": 3, "passed": 2, "failed": 1}


@pytest.mark.slow
def test_full_suite_passes():
    table = VerificationSuite().run()
    assert summarize(table)["failed"] == 0, table[~table["passed"]].to_string()
