"""Investment ledger, cash-flow statement, Simple ROI and supporting analysis.

The statement identities hold by construction on exact values:
net economic benefit = enrollment + productivity, pre-tax income adds the
operational savings, and net cash flow subtracts tax (default zero) and the
running costs. ROI is the undiscounted net cash flow averaged over the
horizon, divided by the project investment.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

from .enrollment import (
    cohort_revenue,
    incremental_intake,
    per_student_net,
    prorate_programs,
)
from .money import Money, Rate, decimal_string, mul_rate, sum_series
from .projection import (
    CostLine,
    YearSeries,
    apply_saving,
    geometric_series,
    productivity_series,
    total_by_year,
)

if TYPE_CHECKING:  # pragma: no cover
    from .scenario import Diagnostic, Scenario

logger = logging.getLogger(__name__)

ZERO_RATE = Fraction(0)


@dataclass(frozen=True)
class StaffLine:
    """A project staffing line paid by the hour."""

    role: str
    headcount: int
    hourly_wage: Money
    hours_per_day: Rate
    working_days: int

    def total_hours(self) -> Rate:
        return self.hours_per_day * self.working_days


@dataclass(frozen=True)
class InvestmentLedger:
    staff: tuple[StaffLine, ...]
    hardware: tuple[tuple[str, Money], ...]
    network: tuple[tuple[str, Money], ...]
    support: tuple[tuple[str, Money], ...]


def staff_cost(line: StaffLine) -> Money:
    """Wage * yearly hours * headcount."""
    if line.headcount < 1:
        raise ValueError("headcount must be at least 1")
    if line.total_hours() <= 0:
        raise ValueError("total hours must be positive")
    return mul_rate(line.hourly_wage, line.total_hours()) * line.headcount


def investment_total(ledger: InvestmentLedger) -> Money:
    """Sum of staff, hardware, network and support spending."""
    return (
        sum_series(staff_cost(line) for line in ledger.staff)
        + sum_series(amount for _, amount in ledger.hardware)
        + sum_series(amount for _, amount in ledger.network)
        + sum_series(amount for _, amount in ledger.support)
    )


@dataclass(frozen=True)
class CashFlowStatement:
    enrollment_benefit: Money
    productivity_benefit: Money
    net_economic_benefit: Money
    operational_savings: Money
    pre_tax_income: Money
    tax: Money
    running_costs: Money
    net_cash_flow: Money

    def scaled(self, factor: Rate) -> "CashFlowStatement":
        return CashFlowStatement(
            **{
                name: getattr(self, name) * factor
                for name in (
                    "enrollment_benefit",
                    "productivity_benefit",
                    "net_economic_benefit",
                    "operational_savings",
                    "pre_tax_income",
                    "tax",
                    "running_costs",
                    "net_cash_flow",
                )
            }
        )


def build_statement(
    enrollment: YearSeries,
    productivity: YearSeries,
    savings: YearSeries,
    running: YearSeries,
    tax_rate: Rate = ZERO_RATE,
) -> CashFlowStatement:
    """Sum each input series into its statement line; identities hold by construction."""
    horizons = {s.horizon for s in (enrollment, productivity, savings, running)}
    if len(horizons) != 1:
        raise ValueError(f"mismatched horizons: {sorted(horizons)}")
    enrollment_benefit = sum_series(enrollment)
    productivity_benefit = sum_series(productivity)
    net_economic = enrollment_benefit + productivity_benefit
    operational_savings = sum_series(savings)
    pre_tax = net_economic + operational_savings
    tax = pre_tax * tax_rate
    running_costs = sum_series(running)
    return CashFlowStatement(
        enrollment_benefit=enrollment_benefit,
        productivity_benefit=productivity_benefit,
        net_economic_benefit=net_economic,
        operational_savings=operational_savings,
        pre_tax_income=pre_tax,
        tax=tax,
        running_costs=running_costs,
        net_cash_flow=pre_tax - tax - running_costs,
    )


def simple_roi(statement: CashFlowStatement, horizon: int, investment: Money) -> Fraction:
    """Exact ROI percentage: 100 * net cash flow / horizon / investment."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if investment.amount < 0:
        raise ValueError("investment must not be negative")
    if investment.is_zero():
        raise ValueError("ROI is undefined for a zero investment")
    return 100 * statement.net_cash_flow.amount / horizon / investment.amount


def format_roi(roi_percent: Fraction) -> str:
    """Display form: two decimals, ties rounded half-up."""
    cents = roi_percent * 100
    n, rem = divmod(abs(cents.numerator), cents.denominator)
    n += 1 if 2 * rem >= cents.denominator else 0
    sign = "-" if cents < 0 else ""
    return f"{sign}{n // 100}.{n % 100:02d}"


def npv(yearly_net: YearSeries, investment: Money, discount: Rate) -> Money:
    """Net present value: -investment + sum of discounted yearly nets."""
    if discount <= -1:
        raise ValueError("discount rate must be greater than -1")
    factor = Fraction(1) + discount
    total = -investment.amount
    for year in range(1, yearly_net.horizon + 1):
        total += yearly_net.at(year).amount / factor**year
    return Money(total)


def payback_year(yearly_net: YearSeries, investment: Money) -> int | None:
    """First year whose cumulative net flow reaches the investment; None if never.

    A zero (or negative) investment pays back in year 1 by convention.
    """
    if investment.amount <= 0:
        return 1
    cumulative = Money.zero()
    for year in range(1, yearly_net.horizon + 1):
        cumulative = cumulative + yearly_net.at(year)
        if cumulative >= investment:
            return year
    return None


@dataclass(frozen=True)
class AppraisalResult:
    statement: CashFlowStatement
    investment: Money
    horizon: int
    roi_percent: Fraction
    npv: Money | None = None
    payback_year: int | None = None


@dataclass(frozen=True)
class Evaluation:
    """Full appraisal of one scenario: every intermediate series plus the result."""

    horizon: int
    staff_costs: tuple[tuple[StaffLine, Money], ...]
    staff_total: Money
    hardware_total: Money
    network_total: Money
    support_total: Money
    investment: Money
    running_lines: tuple[tuple[CostLine, YearSeries], ...]
    running_total: YearSeries
    operational_lines: tuple[tuple[CostLine, YearSeries], ...]
    operational_total: YearSeries
    saving_lines: tuple[tuple[CostLine, YearSeries], ...]
    saving_total: YearSeries
    productivity: YearSeries
    enrollment_revenue: YearSeries
    net_fee: Money | None
    intake: tuple[tuple[str, int], ...]
    intake_total: int
    program_counts: tuple[tuple[str, tuple[int, ...]], ...]
    program_revenue: tuple[tuple[str, YearSeries], ...]
    statement: CashFlowStatement
    yearly_net: YearSeries
    result: AppraisalResult
    diagnostics: tuple["Diagnostic", ...] = field(default_factory=tuple)


def _projected_counts(base: int, growth: Rate, horizon: int) -> tuple[int, ...]:
    """Displayed student counts: a year-1 count grown and re-rounded per year."""
    from .money import round_half_up_int

    factor = Fraction(1) + growth
    value = Fraction(base)
    row = []
    for _ in range(horizon):
        row.append(round_half_up_int(value))
        value *= factor
    return tuple(row)


def evaluate(scenario: "Scenario") -> Evaluation:
    """Appraise a validated scenario; raises on Error-level defects."""
    from .scenario import Diagnostic, Severity, validate

    diagnostics = list(validate(scenario))
    errors = [d for d in diagnostics if d.severity is Severity.ERROR]
    if errors:
        raise ScenarioEvaluationError(errors)

    horizon = scenario.horizon
    staff_costs = tuple((line, staff_cost(line)) for line in scenario.investment.staff)
    staff_total = sum_series(cost for _, cost in staff_costs)
    hardware_total = sum_series(a for _, a in scenario.investment.hardware)
    network_total = sum_series(a for _, a in scenario.investment.network)
    support_total = sum_series(a for _, a in scenario.investment.support)
    investment = staff_total + hardware_total + network_total + support_total

    running_lines = tuple(
        (line, geometric_series(line.rule, horizon)) for line in scenario.running_costs
    )
    running_total = (
        total_by_year([s for _, s in running_lines])
        if running_lines
        else YearSeries.zeros(horizon)
    )
    operational_lines = tuple(
        (line, geometric_series(line.rule, horizon)) for line in scenario.operational_costs
    )
    operational_total = (
        total_by_year([s for _, s in operational_lines])
        if operational_lines
        else YearSeries.zeros(horizon)
    )
    saving_lines = tuple(
        (line, apply_saving(series, line.saving_fraction))
        for line, series in operational_lines
    )
    saving_total = (
        total_by_year([s for _, s in saving_lines])
        if saving_lines
        else YearSeries.zeros(horizon)
    )

    if scenario.productivity is not None:
        productivity = productivity_series(scenario.productivity, horizon)
    else:
        productivity = YearSeries.zeros(horizon)

    net_fee: Money | None = None
    intake: tuple[tuple[str, int], ...] = ()
    intake_total = 0
    program_counts: tuple[tuple[str, tuple[int, ...]], ...] = ()
    program_revenue: tuple[tuple[str, YearSeries], ...] = ()
    if scenario.enrollment is not None:
        model = scenario.enrollment
        net_fee = per_student_net(model.fee)
        if model.growth >= 0:
            per_program, intake_total = incremental_intake(dict(model.baseline_intake), model.growth)
            intake = tuple((name, per_program[name]) for name, _ in model.baseline_intake)
        if intake_total <= 0:
            diagnostics.append(
                Diagnostic(
                    severity=Severity.WARNING,
                    path="enrollment.growth",
                    message="no incremental intake; enrollment benefit is zero",
                )
            )
            revenue = YearSeries.zeros(horizon)
        else:
            revenue = cohort_revenue(model)
            program_counts = tuple(
                (name, _projected_counts(count, model.growth, horizon))
                for name, count in intake
            )
            # the per-program counts are re-rounded per year; flag any year where
            # they stop summing to the re-rounded total intake
            total_counts = _projected_counts(intake_total, model.growth, horizon)
            for year in range(1, horizon + 1):
                by_program = sum(counts[year - 1] for _, counts in program_counts)
                if by_program != total_counts[year - 1]:
                    diagnostics.append(
                        Diagnostic(
                            severity=Severity.WARNING,
                            path="enrollment",
                            message=(
                                f"year {year}: per-program rounded intake sums to {by_program} "
                                f"but the rounded total intake is {total_counts[year - 1]}; "
                                "tables report the per-program sum"
                            ),
                        )
                    )
            shares = [(name, count) for name, count in intake if count > 0]
            if shares:
                split = prorate_programs(revenue, dict(shares))
                program_revenue = tuple((name, split[name]) for name, _ in shares)
    else:
        revenue = YearSeries.zeros(horizon)

    statement = build_statement(
        revenue, productivity, saving_total, running_total, scenario.options.tax_rate
    )
    after_tax = Fraction(1) - scenario.options.tax_rate
    yearly_net = YearSeries(
        tuple(
            (revenue.at(y) + productivity.at(y) + saving_total.at(y)) * after_tax
            - running_total.at(y)
            for y in range(1, horizon + 1)
        )
    )
    roi = simple_roi(statement, horizon, investment)
    discount = scenario.options.discount_rate
    result = AppraisalResult(
        statement=statement,
        investment=investment,
        horizon=horizon,
        roi_percent=roi,
        npv=npv(yearly_net, investment, discount) if discount is not None else None,
        payback_year=payback_year(yearly_net, investment),
    )
    return Evaluation(
        horizon=horizon,
        staff_costs=staff_costs,
        staff_total=staff_total,
        hardware_total=hardware_total,
        network_total=network_total,
        support_total=support_total,
        investment=investment,
        running_lines=running_lines,
        running_total=running_total,
        operational_lines=operational_lines,
        operational_total=operational_total,
        saving_lines=saving_lines,
        saving_total=saving_total,
        productivity=productivity,
        enrollment_revenue=revenue,
        net_fee=net_fee,
        intake=intake,
        intake_total=intake_total,
        program_counts=program_counts,
        program_revenue=program_revenue,
        statement=statement,
        yearly_net=yearly_net,
        result=result,
        diagnostics=tuple(diagnostics),
    )


class ScenarioEvaluationError(ValueError):
    """A scenario failed validation; carries the Error diagnostics."""

    def __init__(self, diagnostics: Sequence["Diagnostic"]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(f"{d.path}: {d.message}" for d in diagnostics))


def _resolve_parent(doc: object, path: str) -> tuple[object, str | int]:
    """Walk a dotted/indexed path ("enrollment.fee.overhead_fraction",
    "operational_costs[2].saving_fraction") to its parent container."""
    steps: list[str | int] = []
    for part in path.split("."):
        name, _, rest = part.partition("[")
        if name:
            steps.append(name)
        while rest:
            idx, _, rest2 = rest.partition("]")
            if not idx.isdigit():
                raise KeyError(path)
            steps.append(int(idx))
            rest = rest2.lstrip("[")
    if not steps:
        raise KeyError(path)
    node = doc
    for step in steps[:-1]:
        if isinstance(step, int):
            if not isinstance(node, list) or step >= len(node):
                raise KeyError(path)
            node = node[step]
        else:
            if not isinstance(node, dict) or step not in node:
                raise KeyError(path)
            node = node[step]
    return node, steps[-1]


def set_scenario_value(doc: dict, path: str, value: Fraction) -> None:
    """Set a numeric scenario field, preserving decimal-string form."""
    parent, last = _resolve_parent(doc, path)
    if isinstance(last, int):
        if not isinstance(parent, list) or last >= len(parent):
            raise KeyError(path)
        current = parent[last]
    else:
        if not isinstance(parent, dict) or last not in parent:
            raise KeyError(path)
        current = parent[last]
    if isinstance(current, bool) or not isinstance(current, (int, str)):
        raise KeyError(path)
    if isinstance(current, str):
        from .money import MoneyError, parse_decimal

        try:
            parse_decimal(current)  # must already hold a numeric field
        except MoneyError:
            raise KeyError(path) from None
    new_value: object
    if isinstance(current, int) and value.denominator == 1:
        new_value = int(value)
    else:
        new_value = decimal_string(value)
    if isinstance(last, int):
        parent[last] = new_value
    else:
        parent[last] = new_value


def sweep(
    scenario: "Scenario", parameter_path: str, values: Sequence[Fraction]
) -> list[tuple[Fraction, AppraisalResult]]:
    """Re-evaluate the scenario once per value of one numeric field.

    The input scenario is never modified; results are ordered by input order.
    """
    from .scenario import Severity, build_scenario, to_canonical_dict

    results: list[tuple[Fraction, AppraisalResult]] = []
    for value in values:
        doc = to_canonical_dict(scenario)
        try:
            set_scenario_value(doc, parameter_path, value)
        except KeyError:
            raise ValueError(
                f"parameter path {parameter_path!r} does not resolve to a numeric scenario field"
            ) from None
        variant, diagnostics = build_scenario(doc)
        if variant is None:
            raise ScenarioEvaluationError(
                [d for d in diagnostics if d.severity is Severity.ERROR]
            )
        results.append((value, evaluate(variant).result))
    return results
