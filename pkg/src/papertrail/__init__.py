"""papertrail: citation-report indicators and papermilling-signal analysis.

Ingests per-researcher citation reports (canonical TSV/CSV), builds the
annual publication/citation time series, computes the indicator block
(correlation, citation lag, h-index, integrity index, per-year statistics,
highly-cited-paper counts), flags suspicious publication behavior, and runs
cohort-level classification and curve fitting with JSON and SVG outputs.
"""

from .cohort import (
    CohortPoint,
    CohortSummary,
    GroupMeans,
    LinearFit,
    PowerLawFit,
    Region,
    RegionClass,
    classify_region,
    cohort_summary,
    fit_linear,
    fit_power_law,
    parse_manifest,
    point_from_indicators,
)
from .errors import (
    AllDegenerateError,
    DegenerateAbscissaError,
    EmptyCohortError,
    EmptyProfileError,
    EmptyWindowError,
    EncodingError,
    HExceedsPublicationsError,
    InvalidSpecError,
    LengthMismatchError,
    MalformedHeaderError,
    MalformedRowError,
    PapertrailError,
    ReportWarning,
    TooFewPointsError,
    TooShortError,
    ZeroPublicationsError,
)
from .indicators import (
    DEFAULT_HCP_THRESHOLDS,
    AnalysisConfig,
    FlagConfig,
    IndicatorSet,
    LagResult,
    Signal,
    SignalKind,
    YearlyStats,
    analyze_profile,
    best_lag,
    flag_profile,
    h_index,
    hcp_count,
    i_index,
    pearson,
    round_half_up,
    yearly_stats,
)
from .ingest import (
    PublicationRecord,
    ReportFormat,
    ResearcherProfile,
    parse_report,
    serialize_report,
)
from .render import AxisTransform, ChartStyle, ScatterAxes, profile_chart, scatter_chart
from .series import AnnualSeries, build_series, slice_window
from .synth import (
    Archetype,
    SynthSpec,
    Xorshift64Star,
    conscientious_spec,
    generate,
    papermill_spec,
)

__version__ = "0.1.0"

__all__ = [
    "AllDegenerateError",
    "AnalysisConfig",
    "AnnualSeries",
    "Archetype",
    "AxisTransform",
    "ChartStyle",
    "CohortPoint",
    "CohortSummary",
    "DEFAULT_HCP_THRESHOLDS",
    "DegenerateAbscissaError",
    "EmptyCohortError",
    "EmptyProfileError",
    "EmptyWindowError",
    "EncodingError",
    "FlagConfig",
    "GroupMeans",
    "HExceedsPublicationsError",
    "IndicatorSet",
    "InvalidSpecError",
    "LagResult",
    "LengthMismatchError",
    "LinearFit",
    "MalformedHeaderError",
    "MalformedRowError",
    "PapertrailError",
    "PowerLawFit",
    "PublicationRecord",
    "Region",
    "RegionClass",
    "ReportFormat",
    "ReportWarning",
    "ResearcherProfile",
    "ScatterAxes",
    "Signal",
    "SignalKind",
    "SynthSpec",
    "TooFewPointsError",
    "TooShortError",
    "Xorshift64Star",
    "YearlyStats",
    "ZeroPublicationsError",
    "analyze_profile",
    "best_lag",
    "build_series",
    "classify_region",
    "cohort_summary",
    "conscientious_spec",
    "fit_linear",
    "fit_power_law",
    "flag_profile",
    "generate",
    "h_index",
    "hcp_count",
    "i_index",
    "papermill_spec",
    "parse_manifest",
    "parse_report",
    "pearson",
    "point_from_indicators",
    "profile_chart",
    "round_half_up",
    "scatter_chart",
    "serialize_report",
    "slice_window",
    "yearly_stats",
]
