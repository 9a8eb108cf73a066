from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roi_forge.appraisal import (
    AppraisalResult,
    InvestmentLedger,
    ScenarioEvaluationError,
    StaffLine,
    build_statement,
    evaluate,
    format_roi,
    investment_total,
    npv,
    payback_year,
    simple_roi,
    staff_cost,
    sweep,
)
from roi_forge.money import Money, parse_rate, round_rupiah
from roi_forge.projection import YearSeries
from roi_forge.scenario import emit_scenario


def M(value):
    return Money.parse(value)


def series_of(*values):
    return YearSeries(tuple(M(v) for v in values))


def staff(role="x", headcount=1, wage="10000", hours=7, days=260):
    return StaffLine(
        role=role,
        headcount=headcount,
        hourly_wage=M(wage),
        hours_per_day=Fraction(hours),
        working_days=days,
    )


class TestStaffCost:
    def test_administrator_pair(self):
        line = staff("Data Warehouse Administrator", 2, "15000")
        assert line.total_hours() == 1820
        assert staff_cost(line) == M("54600000")

    def test_project_lead(self):
        assert staff_cost(staff("Kepala Proyek", 1, "20000")) == M("36400000")

    def test_zero_wage_is_zero_cost(self):
        assert staff_cost(staff(wage="0")) == Money.zero()

    def test_zero_headcount_rejected(self):
        with pytest.raises(ValueError):
            staff_cost(staff(headcount=0))

    def test_zero_hours_rejected(self):
        with pytest.raises(ValueError):
            staff_cost(staff(hours=0))


class TestInvestmentTotal:
    def test_bundled_ledger(self, baseline_scenario):
        ledger = baseline_scenario.investment
        assert investment_total(ledger) == M("238700000")

    def test_hardware_only(self):
        ledger = InvestmentLedger(
            staff=(),
            hardware=(("server", M("12000000")), ("stabilizer", M("30000000")), ("ups", M("40000000"))),
            network=(),
            support=(),
        )
        assert investment_total(ledger) == M("82000000")

    def test_empty_ledger(self):
        assert investment_total(InvestmentLedger((), (), (), ())) == Money.zero()


class TestBuildStatement:
    def test_bundled_series_statement(self, baseline_evaluation):
        st_ = baseline_evaluation.statement
        assert round_rupiah(st_.enrollment_benefit) == 20619593679
        assert round_rupiah(st_.productivity_benefit) == 332605848
        assert round_rupiah(st_.net_economic_benefit) == 20952199527
        assert round_rupiah(st_.operational_savings) == 1341183631
        assert round_rupiah(st_.pre_tax_income) == 22293383158
        assert round_rupiah(st_.running_costs) == 212085850
        assert round_rupiah(st_.net_cash_flow) == 22081297308

    def test_all_zero(self):
        zeros = YearSeries.zeros(3)
        st_ = build_statement(zeros, zeros, zeros, zeros)
        assert st_.net_cash_flow == Money.zero()

    def test_savings_only(self):
        zeros = YearSeries.zeros(5)
        hundreds = YearSeries((M("100"),) * 5)
        st_ = build_statement(zeros, zeros, hundreds, zeros)
        assert st_.pre_tax_income == M("500")
        assert st_.net_cash_flow == M("500")

    def test_horizon_mismatch(self):
        with pytest.raises(ValueError):
            build_statement(
                YearSeries.zeros(3), YearSeries.zeros(3), YearSeries.zeros(3), YearSeries.zeros(4)
            )

    def test_tax_line(self):
        zeros = YearSeries.zeros(2)
        income = series_of("600", "400")
        running = series_of("100", "100")
        st_ = build_statement(income, zeros, zeros, running, tax_rate=parse_rate("0.25"))
        assert st_.tax == M("250")
        assert st_.net_cash_flow == M("550")

    series = st.lists(
        st.fractions(min_value=-10**9, max_value=10**9), min_size=1, max_size=8
    )

    @given(series, series, series, series)
    @settings(max_examples=300)
    def test_identities_hold_under_fuzz(self, a, b, c, d):
        size = min(len(a), len(b), len(c), len(d))
        mk = lambda vals: YearSeries(tuple(Money(v) for v in vals[:size]))
        st_ = build_statement(mk(a), mk(b), mk(c), mk(d))
        assert st_.net_economic_benefit == st_.enrollment_benefit + st_.productivity_benefit
        assert st_.pre_tax_income == st_.net_economic_benefit + st_.operational_savings
        assert st_.net_cash_flow == st_.pre_tax_income - st_.tax - st_.running_costs
        assert st_.tax == Money.zero()


class TestSimpleRoi:
    def test_golden_ratio(self, baseline_evaluation):
        roi = baseline_evaluation.result.roi_percent
        assert format_roi(roi) == "1850.13"
        # the printed arithmetic, on the rounded flow, lands on the same display value
        printed = 100 * Fraction(22081297308) / 5 / Fraction(238700000)
        assert format_roi(printed) == "1850.13"

    def test_zero_flow(self):
        st_ = build_statement(*([YearSeries.zeros(5)] * 4))
        assert simple_roi(st_, 5, M("100")) == 0
        assert format_roi(Fraction(0)) == "0.00"

    def test_definitional_hundred_percent(self):
        flows = YearSeries((M("100"),) * 4)
        st_ = build_statement(flows, *([YearSeries.zeros(4)] * 3))
        assert simple_roi(st_, 4, M("100")) == 100

    @pytest.mark.parametrize("k", [2, 10, 1000])
    def test_positive_homogeneity(self, baseline_evaluation, k):
        st_ = baseline_evaluation.statement
        investment = baseline_evaluation.investment
        assert simple_roi(st_.scaled(Fraction(k)), 5, investment * k) == simple_roi(
            st_, 5, investment
        )

    def test_zero_investment_undefined(self):
        st_ = build_statement(*([YearSeries.zeros(5)] * 4))
        with pytest.raises(ValueError, match="undefined"):
            simple_roi(st_, 5, Money.zero())

    def test_negative_investment_rejected(self):
        st_ = build_statement(*([YearSeries.zeros(5)] * 4))
        with pytest.raises(ValueError):
            simple_roi(st_, 5, M("-1"))

    def test_display_rounding_is_half_up(self):
        assert format_roi(Fraction(18501296445505354, 10**13)) == "1850.13"
        assert format_roi(Fraction(125, 1000)) == "0.13"
        assert format_roi(Fraction(-125, 1000)) == "-0.13"


def discounting_oracle(values, investment, discount):
    """Independent per-year division, no powers: peel the factor year by year."""
    total = -investment
    divisor = Fraction(1)
    for value in values:
        divisor = divisor * (1 + discount)
        total += value / divisor
    return total


class TestNpv:
    def test_zero_discount_is_plain_sum(self):
        flows = series_of("100", "200", "300")
        assert npv(flows, M("450"), parse_rate("0")) == M("150")

    def test_all_zero_series(self):
        assert npv(YearSeries.zeros(4), M("777"), parse_rate("0.1")) == M("-777")

    def test_baseline_against_discounting_oracle(self, baseline_evaluation):
        flows = baseline_evaluation.yearly_net
        investment = baseline_evaluation.investment
        expected = discounting_oracle(
            [v.amount for v in flows], investment.amount, Fraction(1, 10)
        )
        result = npv(flows, investment, parse_rate("0.1"))
        assert result.amount == expected
        # frozen from the oracle run: exact value rounds to whole rupiah below
        assert round_rupiah(result) == 15266517623
        assert baseline_evaluation.result.npv == result

    def test_discount_floor(self):
        with pytest.raises(ValueError):
            npv(YearSeries.zeros(2), M("1"), Fraction(-2))


class TestPaybackYear:
    def test_baseline_pays_back_in_year_one(self, baseline_evaluation):
        # cumulative oracle over the year-1 inflows
        year1 = baseline_evaluation.yearly_net.at(1)
        assert year1 == M("1167106500")
        assert year1 >= baseline_evaluation.investment
        assert payback_year(baseline_evaluation.yearly_net, baseline_evaluation.investment) == 1
        assert baseline_evaluation.result.payback_year == 1

    def test_zero_investment_convention(self):
        assert payback_year(YearSeries.zeros(3), Money.zero()) == 1

    def test_never_reached(self):
        assert payback_year(YearSeries.zeros(3), M("1")) is None

    def test_cumulative_threshold(self):
        flows = series_of("40", "40", "40")
        assert payback_year(flows, M("80")) == 2
        assert payback_year(flows, M("81")) == 3
        assert payback_year(flows, M("121")) is None


class TestSweep:
    def test_growth_sweep_matches_single_evaluations(self, baseline_scenario):
        values = [Fraction(0), Fraction(1, 10), Fraction(1, 5)]
        results = sweep(baseline_scenario, "enrollment.growth", values)
        assert [v for v, _ in results] == values
        baseline_result = evaluate(baseline_scenario).result
        assert results[2][1] == baseline_result
        assert isinstance(results[0][1], AppraisalResult)

    def test_growth_zero_strictly_lowers_roi(self, baseline_scenario):
        results = sweep(baseline_scenario, "enrollment.growth", [Fraction(0), Fraction(1, 5)])
        assert results[0][1].roi_percent < results[1][1].roi_percent

    def test_single_point_equals_direct_evaluation(self, baseline_scenario):
        (result,) = sweep(baseline_scenario, "enrollment.fee.overhead_fraction", [Fraction(2, 5)])
        assert result[1] == evaluate(baseline_scenario).result
        assert format_roi(result[1].roi_percent) == "1850.13"

    def test_unresolvable_path(self, baseline_scenario):
        with pytest.raises(ValueError, match="no.such.path"):
            sweep(baseline_scenario, "no.such.path", [Fraction(1)])

    def test_non_numeric_path(self, baseline_scenario):
        with pytest.raises(ValueError):
            sweep(baseline_scenario, "meta.name", [Fraction(1)])

    def test_input_scenario_unmodified(self, baseline_scenario):
        before = emit_scenario(baseline_scenario)
        sweep(baseline_scenario, "enrollment.growth", [Fraction(0)])
        assert emit_scenario(baseline_scenario) == before

    def test_invalid_value_surfaces_diagnostics(self, baseline_scenario):
        with pytest.raises(ScenarioEvaluationError):
            sweep(baseline_scenario, "operational_costs[0].saving_fraction", [Fraction(3, 2)])

    def test_indexed_path(self, baseline_scenario):
        results = sweep(
            baseline_scenario, "operational_costs[0].saving_fraction", [Fraction(3, 4)]
        )
        assert results[0][1] == evaluate(baseline_scenario).result
