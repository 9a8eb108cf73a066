import pytest

from roi_forge.appraisal import evaluate
from roi_forge.baseline import load_baseline


@pytest.fixture(scope="session")
def baseline_scenario():
    scenario, diagnostics = load_baseline()
    assert scenario is not None, diagnostics
    return scenario


@pytest.fixture(scope="session")
def baseline_evaluation(baseline_scenario):
    return evaluate(baseline_scenario)
