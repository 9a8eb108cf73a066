"""Exact money and rate arithmetic.

Amounts are carried as exact rationals (arbitrary precision, so overflow
cannot occur) and every arithmetic step is exact. Binary floats are rejected
at the boundary. Rounding to whole rupiah is a separate, explicit
presentation step that never feeds back into stored amounts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

# A rate is a dimensionless exact scalar (growth factor, saving fraction,
# overhead share, ...). Plain Fraction keeps Money * Rate exact.
Rate = Fraction

RateLike = Union[Fraction, int]


class RoundingMode(enum.Enum):
    """Presentation rounding modes.

    HALF_UP and DOWN produce whole-rupiah money; NEAREST_INT_PERCENT rounds
    a rate to an integer percentage and is not a money mode.
    """

    HALF_UP = "half_up"
    DOWN = "down"
    NEAREST_INT_PERCENT = "nearest_int_percent"


class MoneyError(ValueError):
    """Raised on invalid monetary construction or arithmetic."""


def _reject_float(value: object) -> None:
    if isinstance(value, float):
        raise MoneyError(
            "binary floats are not allowed in monetary arithmetic; "
            "pass a decimal string, int or Fraction"
        )


def parse_decimal(text: str) -> Fraction:
    """Parse a plain decimal literal ("30150000", "0.10", "-449212.5") exactly.

    Exponent notation and anything json.loads would not have produced from a
    plain decimal is rejected.
    """
    s = text.strip()
    if not s:
        raise MoneyError("empty decimal literal")
    sign = 1
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        s = s[1:]
    if not s or s.count(".") > 1:
        raise MoneyError(f"not a decimal literal: {text!r}")
    whole, _, frac = s.partition(".")
    if not (whole or frac) or not (whole + frac).isdigit():
        raise MoneyError(f"not a decimal literal: {text!r}")
    scale = 10 ** len(frac)
    return Fraction(sign * int((whole or "0") + (frac or "")), scale)


def fraction_digits(text: str) -> int:
    """Number of fractional digits in a decimal literal (0 for integers)."""
    _, _, frac = text.strip().partition(".")
    return len(frac)


def parse_rate(value: Union[str, int, Fraction]) -> Rate:
    """Parse a rate from a decimal string, int or Fraction. Floats rejected."""
    _reject_float(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_decimal(value)
    raise MoneyError(f"cannot build a rate from {type(value).__name__}")


def _pow10_split(den: int) -> tuple[int, int] | None:
    """If den = 2^a * 5^b return (a, b), else None."""
    a = b = 0
    while den % 2 == 0:
        den //= 2
        a += 1
    while den % 5 == 0:
        den //= 5
        b += 1
    return (a, b) if den == 1 else None


def decimal_string(value: Fraction, max_fraction_digits: int = 6) -> str:
    """Render an exact rational as a decimal string.

    Exact whenever the value has a terminating decimal expansion (all
    multiplicative paths do); otherwise quantized half-up to
    ``max_fraction_digits``, the guaranteed carried precision.
    """
    split = _pow10_split(value.denominator)
    if split is None:
        scaled = value * 10**max_fraction_digits
        n = round_half_up_int(scaled)
        value = Fraction(n, 10**max_fraction_digits)
        split = _pow10_split(value.denominator)
        assert split is not None
    digits = max(split)
    scaled_int = value.numerator * 10**digits // value.denominator
    sign = "-" if scaled_int < 0 else ""
    body = str(abs(scaled_int)).rjust(digits + 1, "0")
    if digits == 0:
        return sign + body
    whole, frac = body[:-digits], body[-digits:]
    frac = frac.rstrip("0")
    return sign + whole + ("." + frac if frac else "")


def round_half_up_int(x: Fraction) -> int:
    """Nearest integer, ties away from zero."""
    if x < 0:
        return -round_half_up_int(-x)
    n, rem = divmod(x.numerator, x.denominator)
    return n + (1 if 2 * rem >= x.denominator else 0)


def _round_down_int(x: Fraction) -> int:
    """Truncate toward zero."""
    n = x.numerator // x.denominator
    if x < 0 and x.denominator * n != x.numerator:
        n += 1
    return n


@dataclass(frozen=True)
class Money:
    """An exact rupiah amount.

    ``amount`` is an exact rational; use :func:`round_money` to obtain the
    whole-rupiah presentation value.
    """

    amount: Fraction

    def __post_init__(self) -> None:
        _reject_float(self.amount)
        if not isinstance(self.amount, Fraction):
            object.__setattr__(self, "amount", Fraction(self.amount))

    @classmethod
    def parse(cls, value: Union[str, int, Fraction, "Money"]) -> "Money":
        if isinstance(value, Money):
            return value
        _reject_float(value)
        if isinstance(value, str):
            return cls(parse_decimal(value))
        return cls(Fraction(value))

    @classmethod
    def zero(cls) -> "Money":
        return _ZERO

    def __add__(self, other: "Money") -> "Money":
        if not isinstance(other, Money):
            return NotImplemented
        return Money(self.amount + other.amount)

    def __sub__(self, other: "Money") -> "Money":
        if not isinstance(other, Money):
            return NotImplemented
        return Money(self.amount - other.amount)

    def __neg__(self) -> "Money":
        return Money(-self.amount)

    def __mul__(self, factor: RateLike) -> "Money":
        _reject_float(factor)
        if not isinstance(factor, (int, Fraction)):
            return NotImplemented
        return Money(self.amount * factor)

    __rmul__ = __mul__

    def __lt__(self, other: "Money") -> bool:
        return self.amount < other.amount

    def __le__(self, other: "Money") -> bool:
        return self.amount <= other.amount

    def __gt__(self, other: "Money") -> bool:
        return self.amount > other.amount

    def __ge__(self, other: "Money") -> bool:
        return self.amount >= other.amount

    def is_zero(self) -> bool:
        return self.amount == 0

    def to_decimal_string(self) -> str:
        return decimal_string(self.amount)

    def __str__(self) -> str:
        return self.to_decimal_string()

    def __repr__(self) -> str:
        return f"Money({self.to_decimal_string()!r})"


_ZERO = Money(Fraction(0))


def mul_rate(m: Money, r: RateLike) -> Money:
    """Exact product of a money amount and a rate."""
    return m * r


def round_money(m: Money, mode: RoundingMode = RoundingMode.HALF_UP) -> Money:
    """Round to whole rupiah for presentation.

    HALF_UP rounds ties away from zero; DOWN truncates toward zero.
    Idempotent; the rounded value never replaces the stored exact amount.
    """
    if mode is RoundingMode.HALF_UP:
        return Money(Fraction(round_half_up_int(m.amount)))
    if mode is RoundingMode.DOWN:
        return Money(Fraction(_round_down_int(m.amount)))
    raise MoneyError(f"{mode.value} is not a money rounding mode")


def round_rupiah(m: Money, mode: RoundingMode = RoundingMode.HALF_UP) -> int:
    """Whole-rupiah presentation value as an int."""
    return int(round_money(m, mode).amount)


def round_to_integer_percent(r: RateLike) -> int:
    """NEAREST_INT_PERCENT: a rate as a whole percentage, ties away from zero."""
    _reject_float(r)
    return round_half_up_int(Fraction(r) * 100)


def sum_series(values: Iterable[Money]) -> Money:
    """Exact sum of money amounts; zero for an empty input."""
    total = Fraction(0)
    for v in values:
        total += v.amount
    return Money(total)
