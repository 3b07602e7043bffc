"""Weighted social-citation scores and their aggregations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .domain import INDICATORS, Dataset, IndicatorKind, PublicationRecord, WeightTable
from .errors import DataError


@dataclass(frozen=True)
class Totals:
    publication_count: int = 0
    scholarly_citation_sum: int = 0
    social_citation_sum: Fraction = Fraction(0)

    def __add__(self, other: Totals) -> Totals:
        return Totals(
            self.publication_count + other.publication_count,
            self.scholarly_citation_sum + other.scholarly_citation_sum,
            self.social_citation_sum + other.social_citation_sum,
        )


@dataclass(frozen=True)
class IndicatorBreakdown:
    """Percentage of total weighted social citations per indicator."""

    shares: Mapping[IndicatorKind, Fraction]
    weighted_totals: Mapping[IndicatorKind, Fraction]
    empty: bool = False


def social_citation_score(pub: PublicationRecord, w: WeightTable) -> Fraction:
    return sum((w[k] * pub.counts[k] for k in INDICATORS), Fraction(0))


def _totals_for(pubs, w: WeightTable) -> Totals:
    total = Totals()
    for pub in pubs:
        total += Totals(1, pub.scholarly_citations, social_citation_score(pub, w))
    return total


def scholar_totals(ds: Dataset, w: WeightTable) -> dict[str, Totals]:
    return {sid: _totals_for(pubs, w) for sid, pubs in ds.publications_by_scholar().items()}


def grand_totals(ds: Dataset, w: WeightTable) -> Totals:
    return _totals_for(ds.publications, w)


def yearly_trends(ds: Dataset, w: WeightTable) -> dict[int, Totals]:
    by_year = {y: Totals() for y in ds.years}
    for pub in ds.publications:
        # validated datasets never hit the default
        by_year[pub.year] = by_year.get(pub.year, Totals()) + Totals(
            1, pub.scholarly_citations, social_citation_score(pub, w))
    return by_year


def indicator_breakdown(ds: Dataset, w: WeightTable) -> IndicatorBreakdown:
    weighted = {k: w[k] * sum(p.counts[k] for p in ds.publications) for k in INDICATORS}
    total = sum(weighted.values(), Fraction(0))
    if total == 0:
        return IndicatorBreakdown({k: Fraction(0) for k in INDICATORS}, weighted, empty=True)
    shares = {k: 100 * v / total for k, v in weighted.items()}
    return IndicatorBreakdown(shares, weighted)


def parse_weights(text: str, base: WeightTable | None = None, source: str = "<weights>") -> WeightTable:
    """Apply ``name = value`` override lines on top of *base* (defaults if omitted).

    Blank lines and ``#`` comments are skipped. Unknown indicator names and
    malformed values raise :class:`DataError`.
    """
    overrides: dict[IndicatorKind, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise DataError(f"{source}:{lineno}: expected 'name = value'")
        try:
            kind = IndicatorKind.from_name(key)
        except KeyError:
            raise DataError(f"{source}:{lineno}: unknown indicator '{key}'") from None
        if kind in overrides:
            raise DataError(f"{source}:{lineno}: duplicate indicator '{key}'")
        try:
            weight = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise DataError(f"{source}:{lineno}: invalid weight '{value}'") from None
        if weight < 0:
            raise DataError(f"{source}:{lineno}: negative weight for '{key}'")
        overrides[kind] = weight
    return (base or WeightTable.default()).replace(overrides)


def load_weights(path: str | Path, base: WeightTable | None = None) -> WeightTable:
    path = Path(path)
    return parse_weights(path.read_text(encoding="utf-8"), base, source=str(path))


def format_weights(w: WeightTable) -> str:
    return "".join(f"{k.value} = {v}\n" for k, v in w.items())
