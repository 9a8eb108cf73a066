"""Scenario file schema: parse, validate, canonical emit.

Scenario documents are JSON; every monetary amount and rate is a decimal
string or a JSON number with at most six decimals, read exactly (never as a
binary float). Emission is canonical: sorted keys, two-space indent,
decimal-string numbers. See docs/schema.md for the full schema.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from .appraisal import InvestmentLedger, StaffLine
from .enrollment import (
    CohortModel,
    EnrollmentHistory,
    FeeModel,
    PaymentSchedule,
    ScheduleEntry,
)
from .money import (
    Money,
    Rate,
    RoundingMode,
    decimal_string,
    fraction_digits,
    parse_decimal,
)
from .projection import CostCategory, CostLine, ProductivityAssumption, ProjectionRule
from .taxonomy import (
    BenefitItem,
    DomainClass,
    Measurability,
    Method,
    Tangibility,
    ValueClass,
)

SCHEMA_VERSION = 1
MAX_FRACTION_DIGITS = 6


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity.value}: {self.path}: {self.message}"


@dataclass(frozen=True)
class Meta:
    name: str
    currency: str = "IDR"
    description: str = ""


@dataclass(frozen=True)
class Options:
    rounding: RoundingMode = RoundingMode.HALF_UP
    table15_compat: bool = False
    tax_rate: Rate = Fraction(0)
    discount_rate: Rate | None = None


@dataclass(frozen=True)
class BenefitSection:
    items: tuple[BenefitItem, ...]
    exclusions: frozenset[int]


@dataclass(frozen=True)
class Scenario:
    schema_version: int
    meta: Meta
    horizon: int
    options: Options
    benefits: BenefitSection
    investment: InvestmentLedger
    running_costs: tuple[CostLine, ...]
    operational_costs: tuple[CostLine, ...]
    productivity: ProductivityAssumption | None
    enrollment: CohortModel | None
    history: EnrollmentHistory | None


class _Collector:
    def __init__(self) -> None:
        self.diagnostics: list[Diagnostic] = []

    def error(self, path: str, message: str) -> None:
        self.diagnostics.append(Diagnostic(Severity.ERROR, path, message))

    def warning(self, path: str, message: str) -> None:
        self.diagnostics.append(Diagnostic(Severity.WARNING, path, message))

    @property
    def failed(self) -> bool:
        return any(d.severity is Severity.ERROR for d in self.diagnostics)


def _check_unknown(obj: dict, allowed: set[str], path: str, out: _Collector) -> None:
    for key in obj:
        if key not in allowed:
            out.warning(f"{path}.{key}" if path else key, "unknown key")


def _get_dict(obj: dict, key: str, path: str, out: _Collector, required: bool = True) -> dict | None:
    if key not in obj:
        if required:
            out.error(_join(path, key), "missing required section")
        return None
    value = obj[key]
    if not isinstance(value, dict):
        out.error(_join(path, key), "expected an object")
        return None
    return value


def _get_list(obj: dict, key: str, path: str, out: _Collector, required: bool = True) -> list | None:
    if key not in obj:
        if required:
            out.error(_join(path, key), "missing required section")
        return None
    value = obj[key]
    if not isinstance(value, list):
        out.error(_join(path, key), "expected a list")
        return None
    return value


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _read_number(value: Any, path: str, out: _Collector) -> Fraction | None:
    """Exact numeric field: JSON int, or decimal string (as parse_float=str yields)."""
    if isinstance(value, bool):
        out.error(path, "expected a number, got a boolean")
        return None
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            parsed = parse_decimal(value)
        except ValueError:
            out.error(path, f"not a plain decimal literal: {value!r}")
            return None
        if fraction_digits(value) > MAX_FRACTION_DIGITS:
            out.error(path, f"more than {MAX_FRACTION_DIGITS} fractional digits")
            return None
        return parsed
    if isinstance(value, float):  # unreachable via parse_scenario; direct dicts only
        out.error(path, "binary float values are not accepted; use a decimal string")
        return None
    out.error(path, "expected a number or decimal string")
    return None


def _read_money(value: Any, path: str, out: _Collector) -> Money | None:
    parsed = _read_number(value, path, out)
    return Money(parsed) if parsed is not None else None


def _read_int(value: Any, path: str, out: _Collector) -> int | None:
    if isinstance(value, bool) or not isinstance(value, int):
        out.error(path, "expected an integer")
        return None
    return value


def _read_str(value: Any, path: str, out: _Collector) -> str | None:
    if not isinstance(value, str):
        out.error(path, "expected a string")
        return None
    return value


def _read_enum(value: Any, mapping: dict[str, Any], path: str, out: _Collector) -> Any:
    if not isinstance(value, str) or value not in mapping:
        out.error(path, f"expected one of: {', '.join(sorted(mapping))}")
        return None
    return mapping[value]


def _field(
    obj: dict,
    key: str,
    path: str,
    out: _Collector,
    reader: Callable,
    required: bool = True,
    default: Any = None,
) -> Any:
    if key not in obj:
        if required:
            out.error(_join(path, key), "missing required key")
        return default
    return reader(obj[key], _join(path, key), out)


def parse_scenario(text: str, base_dir: Path | None = None) -> tuple[Scenario | None, list[Diagnostic]]:
    """Parse scenario JSON text into a typed Scenario plus diagnostics.

    Float literals are intercepted as strings so decimals stay exact. Returns
    (None, diagnostics) when any Error-level diagnostic is present.
    """
    try:
        doc = json.loads(text, parse_float=str, parse_constant=str)
    except json.JSONDecodeError as exc:
        return None, [
            Diagnostic(
                Severity.ERROR,
                "$",
                f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            )
        ]
    if not isinstance(doc, dict):
        return None, [Diagnostic(Severity.ERROR, "$", "scenario must be a JSON object")]
    return build_scenario(doc, base_dir)


def build_scenario(doc: dict, base_dir: Path | None = None) -> tuple[Scenario | None, list[Diagnostic]]:
    """Build a typed Scenario from a parsed JSON document."""
    out = _Collector()
    _check_unknown(
        doc,
        {
            "schema_version",
            "meta",
            "horizon",
            "options",
            "benefits",
            "investment",
            "running_costs",
            "operational_costs",
            "productivity",
            "enrollment",
        },
        "",
        out,
    )

    version = _field(doc, "schema_version", "", out, _read_int)
    if version is not None and version != SCHEMA_VERSION:
        out.error("schema_version", f"unsupported schema version {version} (supported: {SCHEMA_VERSION})")

    meta = _read_meta(doc, out)
    horizon = _field(doc, "horizon", "", out, _read_int)
    options = _read_options(doc, out)
    benefits = _read_benefits(doc, out)
    investment = _read_investment(doc, out)
    running = _read_cost_lines(doc, "running_costs", CostCategory.RUNNING, out)
    operational = _read_cost_lines(doc, "operational_costs", CostCategory.OPERATIONAL, out)
    productivity = _read_productivity(doc, out)
    enrollment, history = _read_enrollment(doc, horizon, base_dir, out)

    if out.failed:
        return None, out.diagnostics
    assert meta and horizon is not None and benefits and investment is not None
    return (
        Scenario(
            schema_version=SCHEMA_VERSION,
            meta=meta,
            horizon=horizon,
            options=options,
            benefits=benefits,
            investment=investment,
            running_costs=tuple(running or ()),
            operational_costs=tuple(operational or ()),
            productivity=productivity,
            enrollment=enrollment,
            history=history,
        ),
        out.diagnostics,
    )


def _read_meta(doc: dict, out: _Collector) -> Meta | None:
    section = _get_dict(doc, "meta", "", out)
    if section is None:
        return None
    _check_unknown(section, {"name", "currency", "description"}, "meta", out)
    name = _field(section, "name", "meta", out, _read_str)
    currency = _field(section, "currency", "meta", out, _read_str, required=False, default="IDR")
    description = _field(section, "description", "meta", out, _read_str, required=False, default="")
    if name is None:
        return None
    return Meta(name=name, currency=currency or "IDR", description=description or "")


_ROUNDING_MODES = {"half_up": RoundingMode.HALF_UP, "down": RoundingMode.DOWN}


def _read_options(doc: dict, out: _Collector) -> Options:
    if "options" not in doc:
        return Options()
    section = _get_dict(doc, "options", "", out, required=False)
    if section is None:
        return Options()
    _check_unknown(section, {"rounding", "table15_compat", "tax_rate", "discount_rate"}, "options", out)
    rounding = RoundingMode.HALF_UP
    if "rounding" in section:
        mode = _read_enum(section["rounding"], _ROUNDING_MODES, "options.rounding", out)
        if mode is not None:
            rounding = mode
    compat = section.get("table15_compat", False)
    if not isinstance(compat, bool):
        out.error("options.table15_compat", "expected a boolean")
        compat = False
    tax = _field(section, "tax_rate", "options", out, _read_number, required=False, default=Fraction(0))
    discount = _field(section, "discount_rate", "options", out, _read_number, required=False)
    return Options(
        rounding=rounding,
        table15_compat=compat,
        tax_rate=tax if tax is not None else Fraction(0),
        discount_rate=discount,
    )


_TANGIBILITY = {"tangible": Tangibility.TANGIBLE, "intangible": Tangibility.INTANGIBLE}
_MEASURABILITY = {"measurable": Measurability.MEASURABLE, "immeasurable": Measurability.IMMEASURABLE}
_DOMAIN = {"technology": DomainClass.TECHNOLOGY, "business": DomainClass.BUSINESS}
_VALUE = {"financial": ValueClass.FINANCIAL, "non_financial": ValueClass.NON_FINANCIAL}
_METHOD = {"simple_roi": Method.SIMPLE_ROI, "none": Method.NONE}


def _read_benefits(doc: dict, out: _Collector) -> BenefitSection | None:
    section = _get_dict(doc, "benefits", "", out)
    if section is None:
        return None
    _check_unknown(section, {"items", "exclusions"}, "benefits", out)
    raw_items = _get_list(section, "items", "benefits", out)
    items: list[BenefitItem] = []
    if raw_items is not None:
        for i, raw in enumerate(raw_items):
            path = f"benefits.items[{i}]"
            if not isinstance(raw, dict):
                out.error(path, "expected an object")
                continue
            _check_unknown(
                raw,
                {"id", "name", "tangibility", "measurability", "domain_class", "value_class", "method"},
                path,
                out,
            )
            item_id = _field(raw, "id", path, out, _read_int)
            name = _field(raw, "name", path, out, _read_str)
            tang = _field(raw, "tangibility", path, out, lambda v, p, o: _read_enum(v, _TANGIBILITY, p, o))
            meas = _field(raw, "measurability", path, out, lambda v, p, o: _read_enum(v, _MEASURABILITY, p, o))
            domain = _field(raw, "domain_class", path, out, lambda v, p, o: _read_enum(v, _DOMAIN, p, o))
            value = _field(raw, "value_class", path, out, lambda v, p, o: _read_enum(v, _VALUE, p, o))
            method = _field(raw, "method", path, out, lambda v, p, o: _read_enum(v, _METHOD, p, o))
            if None in (item_id, name, tang, meas, domain, value, method):
                continue
            items.append(
                BenefitItem(
                    id=item_id,
                    name=name,
                    tangibility=tang,
                    measurability=meas,
                    domain_class=domain,
                    value_class=value,
                    method=method,
                )
            )
    exclusions: list[int] = []
    raw_exclusions = section.get("exclusions", [])
    if not isinstance(raw_exclusions, list):
        out.error("benefits.exclusions", "expected a list of benefit ids")
    else:
        for i, raw in enumerate(raw_exclusions):
            parsed = _read_int(raw, f"benefits.exclusions[{i}]", out)
            if parsed is not None:
                exclusions.append(parsed)
    return BenefitSection(items=tuple(items), exclusions=frozenset(exclusions))


def _read_named_amounts(
    section: dict, key: str, path: str, out: _Collector
) -> tuple[tuple[str, Money], ...]:
    raw_list = section.get(key, [])
    if not isinstance(raw_list, list):
        out.error(_join(path, key), "expected a list")
        return ()
    result: list[tuple[str, Money]] = []
    for i, raw in enumerate(raw_list):
        entry_path = f"{_join(path, key)}[{i}]"
        if not isinstance(raw, dict):
            out.error(entry_path, "expected an object")
            continue
        _check_unknown(raw, {"name", "amount"}, entry_path, out)
        name = _field(raw, "name", entry_path, out, _read_str)
        amount = _field(raw, "amount", entry_path, out, _read_money)
        if name is not None and amount is not None:
            result.append((name, amount))
    return tuple(result)


def _read_investment(doc: dict, out: _Collector) -> InvestmentLedger | None:
    section = _get_dict(doc, "investment", "", out)
    if section is None:
        return None
    _check_unknown(section, {"staff", "hardware", "network", "support"}, "investment", out)
    staff: list[StaffLine] = []
    raw_staff = section.get("staff", [])
    if not isinstance(raw_staff, list):
        out.error("investment.staff", "expected a list")
        raw_staff = []
    for i, raw in enumerate(raw_staff):
        path = f"investment.staff[{i}]"
        if not isinstance(raw, dict):
            out.error(path, "expected an object")
            continue
        _check_unknown(raw, {"role", "headcount", "hourly_wage", "hours_per_day", "working_days"}, path, out)
        role = _field(raw, "role", path, out, _read_str)
        headcount = _field(raw, "headcount", path, out, _read_int)
        wage = _field(raw, "hourly_wage", path, out, _read_money)
        hours = _field(raw, "hours_per_day", path, out, _read_number)
        days = _field(raw, "working_days", path, out, _read_int)
        if None in (role, headcount, wage, hours, days):
            continue
        staff.append(
            StaffLine(role=role, headcount=headcount, hourly_wage=wage, hours_per_day=hours, working_days=days)
        )
    return InvestmentLedger(
        staff=tuple(staff),
        hardware=_read_named_amounts(section, "hardware", "investment", out),
        network=_read_named_amounts(section, "network", "investment", out),
        support=_read_named_amounts(section, "support", "investment", out),
    )


def _read_cost_lines(
    doc: dict, key: str, category: CostCategory, out: _Collector
) -> list[CostLine] | None:
    raw_list = _get_list(doc, key, "", out)
    if raw_list is None:
        return None
    operational = category is CostCategory.OPERATIONAL
    allowed = {"name", "base", "start_year", "annual_ratio"}
    if operational:
        allowed |= {"saving_fraction", "benefit_id"}
    lines: list[CostLine] = []
    for i, raw in enumerate(raw_list):
        path = f"{key}[{i}]"
        if not isinstance(raw, dict):
            out.error(path, "expected an object")
            continue
        if not operational and "saving_fraction" in raw:
            out.error(f"{path}.saving_fraction", "running cost lines carry no saving fraction")
        _check_unknown(raw, allowed, path, out)
        name = _field(raw, "name", path, out, _read_str)
        base = _field(raw, "base", path, out, _read_money)
        start = _field(raw, "start_year", path, out, _read_int, required=False, default=1)
        ratio = _field(raw, "annual_ratio", path, out, _read_number)
        fraction = None
        if operational:
            fraction = _field(raw, "saving_fraction", path, out, _read_number)
        benefit_id = _field(raw, "benefit_id", path, out, _read_int, required=False)
        if None in (name, base, ratio) or start is None or (operational and fraction is None):
            continue
        lines.append(
            CostLine(
                name=name,
                category=category,
                rule=ProjectionRule(base=base, start_year=start, annual_ratio=ratio),
                saving_fraction=fraction,
                benefit_id=benefit_id,
            )
        )
    return lines


def _read_productivity(doc: dict, out: _Collector) -> ProductivityAssumption | None:
    if "productivity" not in doc:
        out.error("productivity", "missing required section")
        return None
    if doc["productivity"] is None:
        return None
    section = _get_dict(doc, "productivity", "", out)
    if section is None:
        return None
    _check_unknown(section, {"loss_before", "loss_after", "growth", "roles", "benefit_id"}, "productivity", out)
    before = _field(section, "loss_before", "productivity", out, _read_money)
    after = _field(section, "loss_after", "productivity", out, _read_money)
    growth = _field(section, "growth", "productivity", out, _read_number)
    benefit_id = _field(section, "benefit_id", "productivity", out, _read_int, required=False)
    roles: list[tuple[str, Rate, Rate]] = []
    raw_roles = section.get("roles", [])
    if not isinstance(raw_roles, list):
        out.error("productivity.roles", "expected a list")
        raw_roles = []
    for i, raw in enumerate(raw_roles):
        path = f"productivity.roles[{i}]"
        if not isinstance(raw, dict):
            out.error(path, "expected an object")
            continue
        _check_unknown(raw, {"role", "utilization_before", "utilization_after"}, path, out)
        role = _field(raw, "role", path, out, _read_str)
        u_before = _field(raw, "utilization_before", path, out, _read_number)
        u_after = _field(raw, "utilization_after", path, out, _read_number)
        if None not in (role, u_before, u_after):
            roles.append((role, u_before, u_after))
    if None in (before, after, growth):
        return None
    return ProductivityAssumption(
        loss_before=before, loss_after=after, growth=growth, roles=tuple(roles), benefit_id=benefit_id
    )


def _read_history_csv(path_value: str, base_dir: Path | None, out: _Collector) -> dict[int, dict[str, int]] | None:
    csv_path = Path(path_value)
    if not csv_path.is_absolute() and base_dir is not None:
        csv_path = base_dir / csv_path
    try:
        text = csv_path.read_text(encoding="utf-8")
    except OSError as exc:
        out.error("enrollment.history_csv", f"cannot read {path_value}: {exc}")
        return None
    history: dict[int, dict[str, int]] = {}
    rows = list(csv.reader(io.StringIO(text)))
    for lineno, row in enumerate(rows, start=1):
        if not row or (lineno == 1 and [c.strip().lower() for c in row[:3]] == ["year", "program", "count"]):
            continue
        if len(row) < 3:
            out.error("enrollment.history_csv", f"row {lineno}: expected year,program,count")
            return None
        try:
            year, count = int(row[0]), int(row[2])
        except ValueError:
            out.error("enrollment.history_csv", f"row {lineno}: year and count must be integers")
            return None
        history.setdefault(year, {})[row[1].strip()] = count
    if not history:
        out.error("enrollment.history_csv", "no history rows found")
        return None
    return history


def _read_enrollment(
    doc: dict, horizon: int | None, base_dir: Path | None, out: _Collector
) -> tuple[CohortModel | None, EnrollmentHistory | None]:
    if "enrollment" not in doc:
        out.error("enrollment", "missing required section")
        return None, None
    if doc["enrollment"] is None:
        return None, None
    section = _get_dict(doc, "enrollment", "", out)
    if section is None:
        return None, None
    _check_unknown(
        section,
        {"growth", "benefit_id", "programs", "history", "history_csv", "fee", "schedule"},
        "enrollment",
        out,
    )
    growth = _field(section, "growth", "enrollment", out, _read_number)
    benefit_id = _field(section, "benefit_id", "enrollment", out, _read_int, required=False)

    programs: list[str] | None = None
    if "programs" in section:
        raw_programs = section["programs"]
        if not isinstance(raw_programs, list) or not all(isinstance(p, str) for p in raw_programs):
            out.error("enrollment.programs", "expected a list of program names")
        else:
            programs = list(raw_programs)

    history_data: dict[int, dict[str, int]] | None = None
    if "history" in section and "history_csv" in section:
        out.error("enrollment.history", "provide history or history_csv, not both")
    elif "history_csv" in section:
        path_value = _read_str(section["history_csv"], "enrollment.history_csv", out)
        if path_value is not None:
            history_data = _read_history_csv(path_value, base_dir, out)
    elif "history" in section:
        raw_history = section["history"]
        if not isinstance(raw_history, dict):
            out.error("enrollment.history", "expected an object keyed by year")
        else:
            history_data = {}
            for year_key, row in raw_history.items():
                try:
                    year = int(year_key)
                except ValueError:
                    out.error(f"enrollment.history.{year_key}", "year key must be an integer")
                    continue
                if not isinstance(row, dict):
                    out.error(f"enrollment.history.{year_key}", "expected an object of program counts")
                    continue
                counts: dict[str, int] = {}
                for program, count in row.items():
                    parsed = _read_int(count, f"enrollment.history.{year_key}.{program}", out)
                    if parsed is not None:
                        counts[program] = parsed
                history_data[year] = counts
    else:
        out.error("enrollment.history", "missing required key (history or history_csv)")

    fee = None
    fee_section = _get_dict(section, "fee", "enrollment", out)
    if fee_section is not None:
        _check_unknown(
            fee_section,
            {"first_semester_items", "donation_grades", "earmarked_items", "overhead_fraction", "escalation"},
            "enrollment.fee",
            out,
        )
        items = _read_named_amounts(fee_section, "first_semester_items", "enrollment.fee", out)
        if "first_semester_items" not in fee_section:
            out.error("enrollment.fee.first_semester_items", "missing required key")
        grades: list[Money] = []
        raw_grades = fee_section.get("donation_grades", [])
        if not isinstance(raw_grades, list):
            out.error("enrollment.fee.donation_grades", "expected a list")
        else:
            for i, raw in enumerate(raw_grades):
                parsed = _read_money(raw, f"enrollment.fee.donation_grades[{i}]", out)
                if parsed is not None:
                    grades.append(parsed)
        earmarked: list[str] = []
        raw_earmarked = fee_section.get("earmarked_items", [])
        if not isinstance(raw_earmarked, list):
            out.error("enrollment.fee.earmarked_items", "expected a list of item names")
        else:
            for i, raw in enumerate(raw_earmarked):
                parsed = _read_str(raw, f"enrollment.fee.earmarked_items[{i}]", out)
                if parsed is not None:
                    earmarked.append(parsed)
        overhead = _field(fee_section, "overhead_fraction", "enrollment.fee", out, _read_number)
        escalation = _field(fee_section, "escalation", "enrollment.fee", out, _read_number)
        if None not in (overhead, escalation):
            fee = FeeModel(
                first_semester_items=items,
                donation_grades=tuple(grades),
                earmarked_items=frozenset(earmarked),
                overhead_fraction=overhead,
                escalation=escalation,
            )

    entries: list[ScheduleEntry] = []
    raw_schedule = _get_list(section, "schedule", "enrollment", out)
    if raw_schedule is not None:
        for i, raw in enumerate(raw_schedule):
            path = f"enrollment.schedule[{i}]"
            if not isinstance(raw, dict):
                out.error(path, "expected an object")
                continue
            _check_unknown(raw, {"age", "semesters", "multiplier"}, path, out)
            age = _field(raw, "age", path, out, _read_int)
            semesters = _field(raw, "semesters", path, out, _read_int)
            multiplier = _field(raw, "multiplier", path, out, _read_number)
            if None not in (age, semesters, multiplier):
                entries.append(ScheduleEntry(age=age, semesters=semesters, multiplier=multiplier))

    if growth is None or fee is None or history_data is None or horizon is None:
        return None, None
    if programs is not None:
        in_data: set[str] = set()
        for row in history_data.values():
            in_data.update(row)
        missing = sorted(in_data - set(programs))
        if missing:
            out.error("enrollment.programs", f"history has programs not listed: {', '.join(missing)}")
            return None, None
    history = EnrollmentHistory.from_mapping(history_data, programs)
    latest = history.latest_intake()
    model = CohortModel(
        baseline_intake=tuple((p, latest[p]) for p in history.programs),
        growth=growth,
        fee=fee,
        schedule=PaymentSchedule(entries=tuple(entries)),
        horizon=horizon,
        benefit_id=benefit_id,
    )
    return model, history


def validate(scenario: Scenario) -> list[Diagnostic]:
    """Check every type invariant; Error diagnostics block evaluation."""
    out = _Collector()
    if scenario.horizon < 1:
        out.error("horizon", "horizon must be at least 1")
    if not 0 <= scenario.options.tax_rate <= 1:
        out.error("options.tax_rate", "tax rate must be within [0, 1]")
    if scenario.options.discount_rate is not None and scenario.options.discount_rate <= -1:
        out.error("options.discount_rate", "discount rate must be greater than -1")

    _validate_benefits(scenario, out)
    _validate_investment(scenario, out)
    _validate_cost_lines(scenario, scenario.running_costs, "running_costs", out)
    _validate_cost_lines(scenario, scenario.operational_costs, "operational_costs", out)
    _validate_productivity(scenario, out)
    _validate_enrollment(scenario, out)
    return out.diagnostics


def _validate_benefits(scenario: Scenario, out: _Collector) -> None:
    seen: set[int] = set()
    for i, item in enumerate(scenario.benefits.items):
        if item.id in seen:
            out.error(f"benefits.items[{i}].id", f"duplicate benefit id {item.id}")
        seen.add(item.id)
        violation = item.consistency_violation()
        if violation:
            out.error(f"benefits.items[{i}]", violation)
    for excluded in sorted(scenario.benefits.exclusions - seen):
        out.warning("benefits.exclusions", f"exclusion id {excluded} does not match any benefit")


def _validate_benefit_link(scenario: Scenario, benefit_id: int | None, path: str, out: _Collector) -> None:
    if benefit_id is None:
        return
    by_id = {item.id: item for item in scenario.benefits.items}
    if benefit_id not in by_id:
        out.error(path, f"benefit id {benefit_id} is not defined")
        return
    if by_id[benefit_id].method is not Method.SIMPLE_ROI:
        out.error(path, f"benefit {benefit_id} is not measurable in money and cannot back a cash line")
    if benefit_id in scenario.benefits.exclusions:
        out.error(path, f"benefit {benefit_id} is excluded and must not appear in the statement")


def _validate_investment(scenario: Scenario, out: _Collector) -> None:
    for i, line in enumerate(scenario.investment.staff):
        path = f"investment.staff[{i}]"
        if line.headcount < 1:
            out.error(f"{path}.headcount", "headcount must be at least 1")
        if line.hourly_wage.amount < 0:
            out.error(f"{path}.hourly_wage", "amounts must not be negative")
        if line.hours_per_day <= 0:
            out.error(f"{path}.hours_per_day", "hours per day must be positive")
        if line.working_days < 1:
            out.error(f"{path}.working_days", "working days must be at least 1")
    for key in ("hardware", "network", "support"):
        for i, (_, amount) in enumerate(getattr(scenario.investment, key)):
            if amount.amount < 0:
                out.error(f"investment.{key}[{i}].amount", "amounts must not be negative")


def _validate_cost_lines(
    scenario: Scenario, lines: tuple[CostLine, ...], key: str, out: _Collector
) -> None:
    for i, line in enumerate(lines):
        path = f"{key}[{i}]"
        if line.rule.start_year < 1:
            out.error(f"{path}.start_year", "start year must be at least 1")
        elif line.rule.start_year > scenario.horizon:
            out.warning(
                f"{path}.start_year",
                f"start year {line.rule.start_year} is beyond the {scenario.horizon}-year horizon; line contributes nothing",
            )
        if line.saving_fraction is not None and not 0 <= line.saving_fraction <= 1:
            out.error(f"{path}.saving_fraction", "saving fraction must be within [0, 1]")
        _validate_benefit_link(scenario, line.benefit_id, f"{path}.benefit_id", out)


def _validate_productivity(scenario: Scenario, out: _Collector) -> None:
    p = scenario.productivity
    if p is None:
        return
    if p.loss_after > p.loss_before:
        out.warning(
            "productivity.loss_after",
            "productive-time loss grows after the project; benefit series is negative",
        )
    if p.growth <= -1:
        out.error("productivity.growth", "growth must be greater than -1")
    _validate_benefit_link(scenario, p.benefit_id, "productivity.benefit_id", out)


def _validate_enrollment(scenario: Scenario, out: _Collector) -> None:
    model = scenario.enrollment
    if model is None:
        return
    if model.growth <= -1:
        out.error("enrollment.growth", "growth must be greater than -1")
    elif model.growth < 0:
        out.warning("enrollment.growth", "negative growth yields a zero enrollment benefit")
    if scenario.history is not None:
        for year, counts in scenario.history.intakes:
            for program, count in zip(scenario.history.programs, counts):
                if count < 0:
                    out.error(
                        f"enrollment.history.{year}.{program}",
                        "intake counts must not be negative",
                    )

    fee = model.fee
    if not 0 <= fee.overhead_fraction < 1:
        out.error("enrollment.fee.overhead_fraction", "overhead fraction must be within [0, 1)")
    if fee.escalation <= -1:
        out.error("enrollment.fee.escalation", "escalation must be greater than -1")
    names = {name for name, _ in fee.first_semester_items}
    for missing in sorted(fee.earmarked_items - names):
        out.error("enrollment.fee.earmarked_items", f"earmarked item {missing!r} is not a fee item")
    if not fee.donation_grades:
        out.warning("enrollment.fee.donation_grades", "no donation grades; mean donation treated as 0")

    ages = [e.age for e in model.schedule.entries]
    if 0 not in ages:
        out.error("enrollment.schedule", "payment schedule must define cohort age 0")
    if len(set(ages)) != len(ages):
        out.error("enrollment.schedule", "duplicate cohort age in payment schedule")
    for i, entry in enumerate(model.schedule.entries):
        if entry.age < 0:
            out.error(f"enrollment.schedule[{i}].age", "cohort age must not be negative")
        if entry.semesters < 0:
            out.error(f"enrollment.schedule[{i}].semesters", "semesters must not be negative")
        if entry.multiplier < 0:
            out.error(f"enrollment.schedule[{i}].multiplier", "multiplier must not be negative")
    _validate_benefit_link(scenario, model.benefit_id, "enrollment.benefit_id", out)


def _num(value: Fraction) -> str | int:
    """Canonical scalar: plain int when integral, else decimal string."""
    if value.denominator == 1:
        return int(value)
    return decimal_string(value)


def _money_str(m: Money) -> str:
    return m.to_decimal_string()


def to_canonical_dict(s: Scenario) -> dict:
    """Scenario as a JSON-ready dict with decimal-string amounts."""
    doc: dict[str, Any] = {
        "schema_version": s.schema_version,
        "meta": {"name": s.meta.name, "currency": s.meta.currency, "description": s.meta.description},
        "horizon": s.horizon,
        "options": {
            "rounding": s.options.rounding.value,
            "table15_compat": s.options.table15_compat,
            "tax_rate": _num(s.options.tax_rate),
        },
        "benefits": {
            "items": [
                {
                    "id": item.id,
                    "name": item.name,
                    "tangibility": item.tangibility.value,
                    "measurability": item.measurability.value,
                    "domain_class": item.domain_class.value,
                    "value_class": item.value_class.value,
                    "method": item.method.value,
                }
                for item in s.benefits.items
            ],
            "exclusions": sorted(s.benefits.exclusions),
        },
        "investment": {
            "staff": [
                {
                    "role": line.role,
                    "headcount": line.headcount,
                    "hourly_wage": _money_str(line.hourly_wage),
                    "hours_per_day": _num(line.hours_per_day),
                    "working_days": line.working_days,
                }
                for line in s.investment.staff
            ],
            "hardware": [{"name": n, "amount": _money_str(a)} for n, a in s.investment.hardware],
            "network": [{"name": n, "amount": _money_str(a)} for n, a in s.investment.network],
            "support": [{"name": n, "amount": _money_str(a)} for n, a in s.investment.support],
        },
        "running_costs": [_cost_line_dict(line) for line in s.running_costs],
        "operational_costs": [_cost_line_dict(line) for line in s.operational_costs],
        "productivity": _productivity_dict(s.productivity),
        "enrollment": _enrollment_dict(s),
    }
    if s.options.discount_rate is not None:
        doc["options"]["discount_rate"] = _num(s.options.discount_rate)
    return doc


def _cost_line_dict(line: CostLine) -> dict:
    doc: dict[str, Any] = {
        "name": line.name,
        "base": _money_str(line.rule.base),
        "start_year": line.rule.start_year,
        "annual_ratio": _num(line.rule.annual_ratio),
    }
    if line.saving_fraction is not None:
        doc["saving_fraction"] = _num(line.saving_fraction)
    if line.benefit_id is not None:
        doc["benefit_id"] = line.benefit_id
    return doc


def _productivity_dict(p: ProductivityAssumption | None) -> dict | None:
    if p is None:
        return None
    doc: dict[str, Any] = {
        "loss_before": _money_str(p.loss_before),
        "loss_after": _money_str(p.loss_after),
        "growth": _num(p.growth),
    }
    if p.roles:
        doc["roles"] = [
            {"role": role, "utilization_before": _num(before), "utilization_after": _num(after)}
            for role, before, after in p.roles
        ]
    if p.benefit_id is not None:
        doc["benefit_id"] = p.benefit_id
    return doc


def _enrollment_dict(s: Scenario) -> dict | None:
    model = s.enrollment
    if model is None:
        return None
    history = s.history
    assert history is not None
    doc: dict[str, Any] = {
        "growth": _num(model.growth),
        "programs": list(history.programs),
        "history": {
            str(year): {program: count for program, count in zip(history.programs, counts)}
            for year, counts in history.intakes
        },
        "fee": {
            "first_semester_items": [
                {"name": n, "amount": _money_str(a)} for n, a in model.fee.first_semester_items
            ],
            "donation_grades": [_money_str(a) for a in model.fee.donation_grades],
            "earmarked_items": sorted(model.fee.earmarked_items),
            "overhead_fraction": _num(model.fee.overhead_fraction),
            "escalation": _num(model.fee.escalation),
        },
        "schedule": [
            {"age": e.age, "semesters": e.semesters, "multiplier": _num(e.multiplier)}
            for e in model.schedule.entries
        ],
    }
    if model.benefit_id is not None:
        doc["benefit_id"] = model.benefit_id
    return doc


def emit_scenario(s: Scenario) -> str:
    """Canonical serialization: sorted keys, two-space indent, decimal strings."""
    return json.dumps(to_canonical_dict(s), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_scenario(path: Path) -> tuple[Scenario | None, list[Diagnostic]]:
    """Read and parse a scenario file; sidecar CSV paths resolve next to it."""
    text = path.read_text(encoding="utf-8")
    return parse_scenario(text, base_dir=path.parent)
