"""Multi-year cost, saving and productivity series.

Every series is built by an exact geometric recurrence: value[start] = base,
value[t+1] = value[t] * annual_ratio, zeros before the start year. Savings are
always derived from a cost line by fraction, never entered as free amounts.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .money import Money, Rate, RoundingMode, round_rupiah, sum_series

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class YearSeries:
    """Money amounts indexed by project year 1..H."""

    values: tuple[Money, ...]

    def __post_init__(self) -> None:
        if len(self.values) < 1:
            raise ValueError("a year series needs a horizon of at least 1")

    @property
    def horizon(self) -> int:
        return len(self.values)

    def at(self, year: int) -> Money:
        if not 1 <= year <= self.horizon:
            raise IndexError(f"year {year} outside 1..{self.horizon}")
        return self.values[year - 1]

    def __iter__(self) -> Iterator[Money]:
        return iter(self.values)

    def __len__(self) -> int:
        return self.horizon

    def total(self) -> Money:
        return sum_series(self.values)

    def rounded(self, mode: RoundingMode = RoundingMode.HALF_UP) -> tuple[int, ...]:
        """Whole-rupiah presentation values; the exact values stay untouched."""
        return tuple(round_rupiah(v, mode) for v in self.values)

    def scaled(self, factor: Rate) -> "YearSeries":
        return YearSeries(tuple(v * factor for v in self.values))

    @classmethod
    def zeros(cls, horizon: int) -> "YearSeries":
        return cls((Money.zero(),) * horizon)


@dataclass(frozen=True)
class ProjectionRule:
    """Base amount growing (or decaying) by a fixed annual ratio from a start year."""

    base: Money
    start_year: int
    annual_ratio: Rate


class CostCategory(enum.Enum):
    RUNNING = "running"
    OPERATIONAL = "operational"


@dataclass(frozen=True)
class CostLine:
    """A named cost with its projection rule.

    Operational lines carry the fraction of the cost the project eliminates;
    running lines never do.
    """

    name: str
    category: CostCategory
    rule: ProjectionRule
    saving_fraction: Rate | None = None
    benefit_id: int | None = None


@dataclass(frozen=True)
class ProductivityAssumption:
    """Yearly productive-time loss before/after the project, growing with wages."""

    loss_before: Money
    loss_after: Money
    growth: Rate
    roles: tuple[tuple[str, Rate, Rate], ...] = field(default_factory=tuple)
    benefit_id: int | None = None


def geometric_series(rule: ProjectionRule, horizon: int) -> YearSeries:
    """Expand a projection rule over the horizon.

    Years before start_year are zero; a start beyond the horizon yields an
    all-zero series (logged, and surfaced as a scenario diagnostic).
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if rule.start_year < 1:
        raise ValueError("start_year must be at least 1")
    if rule.start_year > horizon:
        logger.warning(
            "start year %d is beyond the %d-year horizon; series is all zero",
            rule.start_year,
            horizon,
        )
        return YearSeries.zeros(horizon)
    values: list[Money] = [Money.zero()] * (rule.start_year - 1)
    current = rule.base
    for _ in range(rule.start_year, horizon + 1):
        values.append(current)
        current = current * rule.annual_ratio
    return YearSeries(tuple(values))


def apply_saving(cost: YearSeries, fraction: Rate) -> YearSeries:
    """Pointwise saving: fraction of each year's cost."""
    if not 0 <= fraction <= 1:
        raise ValueError(f"saving fraction {fraction} outside [0, 1]")
    return cost.scaled(fraction)


def total_by_year(lines: Sequence[YearSeries]) -> YearSeries:
    """Pointwise exact sum of equal-horizon series."""
    if not lines:
        raise ValueError("no series to total")
    horizon = lines[0].horizon
    for line in lines[1:]:
        if line.horizon != horizon:
            raise ValueError(
                f"mismatched horizons: {line.horizon} != {horizon}"
            )
    return YearSeries(
        tuple(sum_series(line.at(year) for line in lines) for year in range(1, horizon + 1))
    )


def productivity_series(p: ProductivityAssumption, horizon: int) -> YearSeries:
    """First-year efficiency gain (loss_before - loss_after) growing with wages."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if p.loss_after > p.loss_before:
        logger.warning(
            "productivity loss grows after the project (%s > %s)",
            p.loss_after,
            p.loss_before,
        )
    first = p.loss_before - p.loss_after
    rule = ProjectionRule(base=first, start_year=1, annual_ratio=Fraction(1) + p.growth)
    return geometric_series(rule, horizon)
