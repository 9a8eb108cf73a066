"""Access to the bundled baseline scenario."""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from .scenario import Diagnostic, Scenario, parse_scenario

BASELINE_ENV = "ROI_FORGE_BASELINE"


def baseline_path() -> Path | None:
    """Path overriding the bundled baseline, when ROI_FORGE_BASELINE is set."""
    override = os.environ.get(BASELINE_ENV)
    return Path(override) if override else None


def baseline_text() -> str:
    path = baseline_path()
    if path is not None:
        return path.read_text(encoding="utf-8")
    return resources.files("roi_forge").joinpath("data/baseline.json").read_text(encoding="utf-8")


def load_baseline() -> tuple[Scenario | None, list[Diagnostic]]:
    path = baseline_path()
    base_dir = path.parent if path is not None else None
    return parse_scenario(baseline_text(), base_dir=base_dir)
