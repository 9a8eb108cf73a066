"""roi-forge: deterministic investment appraisal with exact money arithmetic."""

__version__ = "0.1.0"
