"""Core data model: indicators, publications, scholars, datasets and weights."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

DEFAULT_WINDOW = (2010, 2014)


class IndicatorKind(enum.Enum):
    """The twelve countable social signals, in canonical order.

    The value is the canonical snake_case name used in files; ``label`` is the
    column header used in the paper-level correlation table.
    """

    TWITTER_MENTION = "twitter_mention"
    TWITTER_RETWEET = "twitter_retweet"
    TWITTER_FAVORITE = "twitter_favorite"
    FACEBOOK_MENTION = "facebook_mention"
    FACEBOOK_LIKE = "facebook_like"
    FACEBOOK_SHARE = "facebook_share"
    GOOGLE_PLUS_MENTION = "google_plus_mention"
    GOOGLE_PLUS_ONE_PLUS = "google_plus_one_plus"
    MENDELEY_READER = "mendeley_reader"
    CITEULIKE_BOOKMARK = "citeulike_bookmark"
    BLOG_MENTION = "blog_mention"
    WIKI_MENTION = "wiki_mention"

    @property
    def label(self) -> str:
        return _LABELS[self]

    @property
    def source(self) -> str:
        return _SOURCES[self]

    @classmethod
    def from_name(cls, name: str) -> IndicatorKind:
        try:
            return cls(name)
        except ValueError:
            raise KeyError(f"unknown indicator: {name}") from None


_LABELS = {
    IndicatorKind.TWITTER_MENTION: "tweets",
    IndicatorKind.TWITTER_RETWEET: "Retweets",
    IndicatorKind.TWITTER_FAVORITE: "Favorites",
    IndicatorKind.FACEBOOK_MENTION: "Facebook",
    IndicatorKind.FACEBOOK_LIKE: "Like",
    IndicatorKind.FACEBOOK_SHARE: "Shares",
    IndicatorKind.GOOGLE_PLUS_MENTION: "Google",
    IndicatorKind.GOOGLE_PLUS_ONE_PLUS: "One_plus",
    IndicatorKind.MENDELEY_READER: "Readers",
    IndicatorKind.CITEULIKE_BOOKMARK: "Bookmarks",
    IndicatorKind.BLOG_MENTION: "Blog",
    IndicatorKind.WIKI_MENTION: "Wiki",
}

_SOURCES = {
    IndicatorKind.TWITTER_MENTION: "Twitter",
    IndicatorKind.TWITTER_RETWEET: "Twitter",
    IndicatorKind.TWITTER_FAVORITE: "Twitter",
    IndicatorKind.FACEBOOK_MENTION: "Facebook",
    IndicatorKind.FACEBOOK_LIKE: "Facebook",
    IndicatorKind.FACEBOOK_SHARE: "Facebook",
    IndicatorKind.GOOGLE_PLUS_MENTION: "Google Plus",
    IndicatorKind.GOOGLE_PLUS_ONE_PLUS: "Google Plus",
    IndicatorKind.MENDELEY_READER: "Mendeley",
    IndicatorKind.CITEULIKE_BOOKMARK: "CiteULike",
    IndicatorKind.BLOG_MENTION: "Blogs",
    IndicatorKind.WIKI_MENTION: "Wiki",
}

INDICATORS: tuple[IndicatorKind, ...] = tuple(IndicatorKind)

# Scholar-level variables that can be flagged missing for listwise deletion.
SCHOLAR_VARIABLES = (
    "scholarly_citations",
    "social_citations",
    "h_index",
    "alt_index",
    "publications",
)


def _frozen_counts(counts: Mapping[IndicatorKind, int] | None) -> Mapping[IndicatorKind, int]:
    counts = counts or {}
    unknown = [k for k in counts if not isinstance(k, IndicatorKind)]
    if unknown:
        raise TypeError(f"count keys must be IndicatorKind, got {unknown!r}")
    return MappingProxyType({k: counts.get(k, 0) for k in INDICATORS})


@dataclass(frozen=True)
class PublicationRecord:
    pub_id: str
    scholar_id: str
    year: int
    scholarly_citations: int
    counts: Mapping[IndicatorKind, int] = field(default_factory=dict)

    def __post_init__(self):
        # Totalize: absent indicators are zero events.
        object.__setattr__(self, "counts", _frozen_counts(self.counts))

    @property
    def total_events(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class ScholarRecord:
    scholar_id: str
    display_name: str = ""
    missing_variables: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "missing_variables", frozenset(self.missing_variables))


@dataclass(frozen=True)
class Dataset:
    scholars: tuple[ScholarRecord, ...] = ()
    publications: tuple[PublicationRecord, ...] = ()
    window: tuple[int, int] = DEFAULT_WINDOW

    def __post_init__(self):
        object.__setattr__(self, "scholars", tuple(self.scholars))
        object.__setattr__(self, "publications", tuple(self.publications))
        object.__setattr__(self, "window", tuple(self.window))

    @property
    def years(self) -> range:
        return range(self.window[0], self.window[1] + 1)

    def publications_by_scholar(self) -> dict[str, list[PublicationRecord]]:
        """Group publications under every scholar id, in dataset order."""
        grouped: dict[str, list[PublicationRecord]] = {s.scholar_id: [] for s in self.scholars}
        for pub in self.publications:
            grouped.setdefault(pub.scholar_id, []).append(pub)
        return grouped

    @property
    def total_events(self) -> int:
        return sum(p.total_events for p in self.publications)


class WeightTable:
    """Total map from every indicator to a non-negative rational weight."""

    __slots__ = ("_weights",)

    def __init__(self, weights: Mapping[IndicatorKind, Fraction | int | str] | None = None):
        weights = dict(weights or {})
        missing = [k.value for k in INDICATORS if k not in weights]
        if missing:
            raise ValueError(f"weight table missing indicators: {', '.join(missing)}")
        table = {}
        for kind in INDICATORS:
            w = Fraction(weights[kind])
            if w < 0:
                raise ValueError(f"negative weight for {kind.value}: {w}")
            table[kind] = w
        self._weights = MappingProxyType(table)

    @classmethod
    def default(cls) -> WeightTable:
        return cls(DEFAULT_WEIGHTS)

    def __getitem__(self, kind: IndicatorKind) -> Fraction:
        return self._weights[kind]

    def items(self):
        return self._weights.items()

    def replace(self, overrides: Mapping[IndicatorKind, Fraction | int | str]) -> WeightTable:
        merged = dict(self._weights)
        merged.update(overrides)
        return WeightTable(merged)

    def scaled(self, factor) -> WeightTable:
        return WeightTable({k: w * Fraction(factor) for k, w in self.items()})

    def __eq__(self, other):
        if not isinstance(other, WeightTable):
            return NotImplemented
        return dict(self._weights) == dict(other._weights)

    def __repr__(self):
        body = ", ".join(f"{k.value}={w}" for k, w in self.items())
        return f"WeightTable({body})"


HALF = Fraction(1, 2)

# Retweets and shares have no published weight; they default to zero.
DEFAULT_WEIGHTS: Mapping[IndicatorKind, Fraction] = MappingProxyType({
    IndicatorKind.TWITTER_MENTION: Fraction(1),
    IndicatorKind.TWITTER_RETWEET: Fraction(0),
    IndicatorKind.TWITTER_FAVORITE: HALF,
    IndicatorKind.FACEBOOK_MENTION: Fraction(1),
    IndicatorKind.FACEBOOK_LIKE: HALF,
    IndicatorKind.FACEBOOK_SHARE: Fraction(0),
    IndicatorKind.GOOGLE_PLUS_MENTION: Fraction(1),
    IndicatorKind.GOOGLE_PLUS_ONE_PLUS: HALF,
    IndicatorKind.MENDELEY_READER: HALF,
    IndicatorKind.CITEULIKE_BOOKMARK: Fraction(1),
    IndicatorKind.BLOG_MENTION: Fraction(1),
    IndicatorKind.WIKI_MENTION: Fraction(1),
})

# Alternative convention: retweets and shares count as "liking" signals.
RETWEET_SHARE_HALF_OVERRIDES = MappingProxyType({
    IndicatorKind.TWITTER_RETWEET: HALF,
    IndicatorKind.FACEBOOK_SHARE: HALF,
})


@dataclass(frozen=True)
class Violation:
    code: str
    record_id: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.record_id}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __iter__(self):
        return iter(self.violations)

    def __len__(self):
        return len(self.violations)


def _duplicates(ids: Iterable[str]) -> list[str]:
    seen, dupes = set(), []
    for i in ids:
        if i in seen and i not in dupes:
            dupes.append(i)
        seen.add(i)
    return dupes


def validate(dataset: Dataset) -> ValidationReport:
    """Check every dataset invariant and return the violations found.

    The dataset is never modified; an empty report means it is valid.
    """
    out: list[Violation] = []
    lo, hi = dataset.window
    if lo > hi:
        out.append(Violation("window", f"{lo}-{hi}", "window start after end"))

    for sid in _duplicates(s.scholar_id for s in dataset.scholars):
        out.append(Violation("duplicate_scholar", sid, "scholar_id appears more than once"))
    for sch in dataset.scholars:
        unknown = sorted(sch.missing_variables - set(SCHOLAR_VARIABLES))
        if unknown:
            out.append(Violation("unknown_variable", sch.scholar_id,
                                 f"unknown missing variable(s): {', '.join(unknown)}"))

    for pid in _duplicates(p.pub_id for p in dataset.publications):
        out.append(Violation("duplicate_publication", pid, "pub_id appears more than once"))

    known = {s.scholar_id for s in dataset.scholars}
    for pub in dataset.publications:
        if pub.scholar_id not in known:
            out.append(Violation("unknown_scholar", pub.pub_id,
                                 f"references unknown scholar {pub.scholar_id}"))
        if not lo <= pub.year <= hi:
            out.append(Violation("year_out_of_window", pub.pub_id,
                                 f"year {pub.year} outside {lo}-{hi}"))
        if pub.scholarly_citations < 0:
            out.append(Violation("negative_count", pub.pub_id,
                                 f"scholarly_citations = {pub.scholarly_citations}"))
        for kind, n in pub.counts.items():
            if n < 0:
                out.append(Violation("negative_count", pub.pub_id, f"{kind.value} = {n}"))
    return ValidationReport(tuple(out))
