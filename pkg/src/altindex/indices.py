"""h-index over scholarly citations and alt-index over social scores."""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Real
from typing import Iterable

from .domain import Dataset, WeightTable
from .scoring import social_citation_score


@dataclass(frozen=True)
class ScholarIndices:
    scholar_id: str
    h_index: int
    alt_index: int
    publication_count: int = 0


def _threshold_index(values: Iterable[Real]) -> int:
    # After a descending sort, the k-th value (1-based) is >= k exactly for k <= index.
    index = 0
    for rank, value in enumerate(sorted(values, reverse=True), 1):
        if value < rank:
            break
        index = rank
    return index


def h_index(citations: Iterable[int]) -> int:
    """Largest k such that at least k of the counts are >= k."""
    return _threshold_index(citations)


def alt_index(scores: Iterable[Real]) -> int:
    """Largest integer k such that at least k social scores are >= k.

    Fractional scores are compared against integer thresholds as-is, so a
    score of 2.5 counts toward k = 2 but not k = 3.
    """
    return _threshold_index(scores)


def scholar_index_table(ds: Dataset, w: WeightTable) -> list[ScholarIndices]:
    rows = []
    for sid, pubs in ds.publications_by_scholar().items():
        rows.append(ScholarIndices(
            scholar_id=sid,
            h_index=h_index(p.scholarly_citations for p in pubs),
            alt_index=alt_index(social_citation_score(p, w) for p in pubs),
            publication_count=len(pubs),
        ))
    return rows
