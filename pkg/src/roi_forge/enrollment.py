"""Cohort-based enrollment revenue.

Each project year adds a cohort of incremental students. A cohort pays its
enrollment-year net fee once, then continues paying per the payment schedule:
contribution(age) = semesters(age) * multiplier(age) of that cohort's
enrollment-year fee, with no further escalation on continuing semesters.
Cohort fees themselves grow by the combined (1+growth)*(1+escalation) factor
per enrollment year.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .money import Money, Rate, round_half_up_int, round_to_integer_percent, sum_series
from .projection import YearSeries

logger = logging.getLogger(__name__)

ONE = Fraction(1)


@dataclass(frozen=True)
class EnrollmentHistory:
    """Per-year, per-program intake counts, years strictly increasing."""

    programs: tuple[str, ...]
    intakes: tuple[tuple[int, tuple[int, ...]], ...]  # (year, counts per program)

    @classmethod
    def from_mapping(
        cls,
        data: Mapping[int, Mapping[str, int]],
        programs: Sequence[str] | None = None,
    ) -> "EnrollmentHistory":
        years = sorted(data)
        if programs is None:
            names: set[str] = set()
            for row in data.values():
                names.update(row)
            programs = sorted(names)
        rows = tuple(
            (year, tuple(int(data[year].get(p, 0)) for p in programs)) for year in years
        )
        return cls(programs=tuple(programs), intakes=rows)

    @property
    def years(self) -> tuple[int, ...]:
        return tuple(year for year, _ in self.intakes)

    def totals(self) -> tuple[int, ...]:
        return tuple(sum(counts) for _, counts in self.intakes)

    def latest_intake(self) -> dict[str, int]:
        _, counts = self.intakes[-1]
        return dict(zip(self.programs, counts))


@dataclass(frozen=True)
class YoYChange:
    year: int
    delta: int
    pct: int | None  # None when the prior-year total is zero


def yoy_changes(history: EnrollmentHistory) -> list[YoYChange]:
    """Year-over-year intake deltas and whole-percent changes."""
    totals = history.totals()
    years = history.years
    if len(totals) < 2:
        raise ValueError("need at least two history years")
    changes: list[YoYChange] = []
    for i in range(1, len(totals)):
        delta = totals[i] - totals[i - 1]
        if totals[i - 1] == 0:
            logger.warning("year %d: percentage undefined, prior total is zero", years[i])
            pct = None
        else:
            pct = round_to_integer_percent(Fraction(delta, totals[i - 1]))
        changes.append(YoYChange(year=years[i], delta=delta, pct=pct))
    return changes


class GrowthSelector:
    POSITIVE_ONLY = "positive_only"
    ALL = "all"


def estimate_growth(history: EnrollmentHistory, selector: str = GrowthSelector.POSITIVE_ONLY) -> Rate:
    """Mean of the selected whole-percent year-over-year changes, as an exact rate.

    The adopted scenario growth is an input; this is the supporting estimate.
    """
    changes = yoy_changes(history)
    if selector == GrowthSelector.POSITIVE_ONLY:
        pcts = [c.pct for c in changes if c.pct is not None and c.pct > 0]
    elif selector == GrowthSelector.ALL:
        pcts = [c.pct for c in changes if c.pct is not None]
    else:
        raise ValueError(f"unknown selector {selector!r}")
    if not pcts:
        raise ValueError("selection yields no year-over-year changes")
    return Fraction(sum(pcts), 100 * len(pcts))


@dataclass(frozen=True)
class FeeModel:
    """First-semester fee items, building-donation grades and deductions."""

    first_semester_items: tuple[tuple[str, Money], ...]
    donation_grades: tuple[Money, ...]
    earmarked_items: frozenset[str]
    overhead_fraction: Rate
    escalation: Rate


@dataclass(frozen=True)
class ScheduleEntry:
    age: int
    semesters: int
    multiplier: Rate


@dataclass(frozen=True)
class PaymentSchedule:
    """Per cohort age: semesters paid and the fee multiplier for each.

    Age 0 must be present for revenue computation; scenario validation
    diagnoses this, cohort_revenue raises.
    """

    entries: tuple[ScheduleEntry, ...]

    def check(self) -> None:
        ages = [e.age for e in self.entries]
        if len(set(ages)) != len(ages):
            raise ValueError("duplicate cohort age in payment schedule")
        if 0 not in ages:
            raise ValueError("payment schedule must define cohort age 0")

    def contribution(self, age: int) -> Rate:
        for entry in self.entries:
            if entry.age == age:
                return entry.semesters * entry.multiplier
        return Fraction(0)


@dataclass(frozen=True)
class CohortModel:
    """Inputs for the enrollment revenue waterfall."""

    baseline_intake: tuple[tuple[str, int], ...]
    growth: Rate
    fee: FeeModel
    schedule: PaymentSchedule
    horizon: int
    benefit_id: int | None = None


def per_student_net(fee: FeeModel) -> Money:
    """Net first-year benefit per incremental student.

    First-semester items plus the mean building donation, minus earmarked
    items, scaled down by the operating-overhead fraction.
    """
    names = {name for name, _ in fee.first_semester_items}
    unknown = sorted(set(fee.earmarked_items) - names)
    if unknown:
        raise ValueError(f"earmarked items not in fee schedule: {', '.join(unknown)}")
    first = sum_series(amount for _, amount in fee.first_semester_items)
    earmarked = sum_series(
        amount for name, amount in fee.first_semester_items if name in fee.earmarked_items
    )
    if fee.donation_grades:
        donation = sum_series(fee.donation_grades) * Fraction(1, len(fee.donation_grades))
    else:
        logger.warning("no donation grades; mean donation treated as 0")
        donation = Money.zero()
    return (first - earmarked + donation) * (ONE - fee.overhead_fraction)


def incremental_intake(
    baseline: Mapping[str, int] | Iterable[tuple[str, int]], growth: Rate
) -> tuple[dict[str, int], int]:
    """Per-program incremental students, rounded half-up, and their total."""
    if growth < 0:
        raise ValueError("growth must be non-negative")
    pairs = list(baseline.items()) if isinstance(baseline, Mapping) else list(baseline)
    per_program = {name: round_half_up_int(Fraction(count) * growth) for name, count in pairs}
    return per_program, sum(per_program.values())


def cohort_revenue(model: CohortModel) -> YearSeries:
    """Exact per-year enrollment revenue over the horizon.

    Year-1 revenue is the rounded total incremental intake times the net fee;
    later cohorts grow by the exact combined growth x escalation factor
    (student counts are not re-rounded). Presentation rounding happens at
    export; totals always come from the exact values.
    """
    if model.horizon < 1:
        raise ValueError("horizon must be at least 1")
    model.schedule.check()
    net_fee = per_student_net(model.fee)
    if model.growth >= 0:
        _, total_intake = incremental_intake(dict(model.baseline_intake), model.growth)
    else:
        total_intake = 0
    if total_intake <= 0:
        logger.warning("no incremental intake; enrollment benefit is zero")
        return YearSeries.zeros(model.horizon)
    first_cohort = net_fee * total_intake
    factor = (ONE + model.growth) * (ONE + model.fee.escalation)
    cohort_fees: list[Money] = []
    current = first_cohort
    for _ in range(model.horizon):
        cohort_fees.append(current)
        current = current * factor
    values: list[Money] = []
    for year in range(1, model.horizon + 1):
        revenue = Money.zero()
        for cohort in range(1, year + 1):
            contribution = model.schedule.contribution(year - cohort)
            if contribution:
                revenue = revenue + cohort_fees[cohort - 1] * contribution
        values.append(revenue)
    return YearSeries(tuple(values))


def prorate_programs(
    series: YearSeries, shares: Mapping[str, int] | Iterable[tuple[str, int]]
) -> dict[str, YearSeries]:
    """Split a revenue series across programs by year-1 intake shares, exactly.

    The exact per-program cells sum back to the series; independently rounded
    cells can drift from the rounded total by up to one rupiah per program
    (no largest-remainder correction is applied).
    """
    pairs = list(shares.items()) if isinstance(shares, Mapping) else list(shares)
    total = sum(count for _, count in pairs)
    if total <= 0:
        raise ValueError("program shares must total more than zero")
    return {
        name: series.scaled(Fraction(count, total)) for name, count in pairs
    }


TABLE15_DIVISOR = 3


def table15_compat(series: YearSeries) -> YearSeries:
    """Displayed-table view: each cell divided by three.

    Exists only for golden comparison with the printed per-program revenue
    table, which shows one third of the yearly values the appraisal uses.
    """
    return series.scaled(Fraction(1, TABLE15_DIVISOR))
