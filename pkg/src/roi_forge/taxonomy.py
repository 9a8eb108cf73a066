"""Benefit classification on the tangible/intangible x measurable/immeasurable matrix.

Only measurable (financial) benefits enter the monetary appraisal; the matrix
itself carries no money, appraisal lines reference benefits by id.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Iterable

logger = logging.getLogger(__name__)


class Tangibility(enum.Enum):
    TANGIBLE = "tangible"
    INTANGIBLE = "intangible"


class Measurability(enum.Enum):
    MEASURABLE = "measurable"
    IMMEASURABLE = "immeasurable"


class DomainClass(enum.Enum):
    TECHNOLOGY = "technology"
    BUSINESS = "business"


class ValueClass(enum.Enum):
    FINANCIAL = "financial"
    NON_FINANCIAL = "non_financial"


class Method(enum.Enum):
    SIMPLE_ROI = "simple_roi"
    NONE = "none"


@dataclass(frozen=True)
class BenefitItem:
    id: int
    name: str
    tangibility: Tangibility
    measurability: Measurability
    domain_class: DomainClass
    value_class: ValueClass
    method: Method

    def consistency_violation(self) -> str | None:
        """Check the classification rule: measurable <=> financial <=> simple_roi."""
        measurable = self.measurability is Measurability.MEASURABLE
        financial = self.value_class is ValueClass.FINANCIAL
        simple_roi = self.method is Method.SIMPLE_ROI
        if measurable != financial or financial != simple_roi:
            return (
                f"benefit {self.id}: measurability={self.measurability.value}, "
                f"value={self.value_class.value}, method={self.method.value} "
                "violate the measurable <=> financial <=> simple_roi rule"
            )
        return None


MatrixCell = tuple[Tangibility, Measurability]

MATRIX_CELL_ORDER: tuple[MatrixCell, ...] = (
    (Tangibility.TANGIBLE, Measurability.MEASURABLE),
    (Tangibility.TANGIBLE, Measurability.IMMEASURABLE),
    (Tangibility.INTANGIBLE, Measurability.MEASURABLE),
    (Tangibility.INTANGIBLE, Measurability.IMMEASURABLE),
)


def classify_matrix(items: Iterable[BenefitItem]) -> dict[MatrixCell, list[BenefitItem]]:
    """Group benefits into the 2x2 matrix; every item lands in exactly one cell."""
    items = list(items)
    seen: set[int] = set()
    for item in items:
        if item.id in seen:
            raise ValueError(f"duplicate benefit id {item.id}")
        seen.add(item.id)
    cells: dict[MatrixCell, list[BenefitItem]] = {cell: [] for cell in MATRIX_CELL_ORDER}
    for item in items:
        cells[(item.tangibility, item.measurability)].append(item)
    return cells


def financial_benefits(
    items: Iterable[BenefitItem], exclusions: set[int] = frozenset()
) -> list[BenefitItem]:
    """Benefits that enter the monetary appraisal, in original order.

    Unknown exclusion ids are ignored with a warning; exclusion is scenario
    data, not a matrix rule.
    """
    items = list(items)
    known = {item.id for item in items}
    for missing in sorted(set(exclusions) - known):
        logger.warning("exclusion id %d does not match any benefit", missing)
    return [
        item
        for item in items
        if item.method is Method.SIMPLE_ROI and item.id not in exclusions
    ]
