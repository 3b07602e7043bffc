"""Social-impact metrics for scholars: social-citation scores, h/alt-index, correlations."""

from .domain import (
    DEFAULT_WEIGHTS,
    INDICATORS,
    RETWEET_SHARE_HALF_OVERRIDES,
    Dataset,
    IndicatorKind,
    PublicationRecord,
    ScholarRecord,
    ValidationReport,
    Violation,
    WeightTable,
    validate,
)
from .errors import DataError
from .indices import ScholarIndices, alt_index, h_index, scholar_index_table
from .ingestion import LoadConfig, import_upstream, load_dataset, read_dataset, write_dataset
from .report import ReportBundle, build_bundle, emit_charts, emit_tables
from .scoring import (
    IndicatorBreakdown,
    Totals,
    indicator_breakdown,
    load_weights,
    parse_weights,
    scholar_totals,
    social_citation_score,
    yearly_trends,
)
from .stats import (
    CorrelationReport,
    StatsError,
    VariableSeries,
    correlation_matrix,
    listwise_complete,
    pearson,
    significance,
)

__version__ = "0.1.0"
