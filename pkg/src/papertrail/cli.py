"""Command-line interface and JSON report serialization.

Three subcommands::

    papertrail analyze  REPORT [--json PATH] [--svg PATH] ...
    papertrail cohort   MANIFEST [--json PATH] [--svg-dir DIR] ...
    papertrail synth    --archetype NAME --seed N -o PATH ...

Exit codes: 0 success, 1 data error (unreadable/unparseable input),
2 usage error (bad flags or parameters).

Analysis thresholds may come from a ``key = value`` config file (see
CONFIG_KEYS) given via ``--config`` or the ``PAPERTRAIL_CONFIG``
environment variable; individual flags override file values.

JSON schemas (version "1.0"; every indicator key is always present,
undefined values are null with a reason under ``undefined_reasons``)::

    analyze: {schema_version, generated_at, profile: {name, source_id,
              reported_h, n_records}, indicators: {correlation, lag_years,
              h_index, i_index, total_publications, total_citations,
              max_pubs_in_year, min_pubs_in_year, avg_pubs_per_year,
              avg_cites_per_paper, start_year, hcp_count,
              flags: [{kind, detail}]}, undefined_reasons, warnings}

    cohort:  {schema_version, generated_at, aggregation: "mean",
              region: {r_min, i_max},
              points: [{label, correlation, i_index, total_publications,
                        max_pubs_in_year, avg_pubs_per_year,
                        classification: inside|outside|unclassifiable}],
              summary: {n_points, n_inside, n_outside, n_unclassifiable,
                        inside_fraction, inside: {means...}|null,
                        outside: {means...}|null},
              power_law_fit: {a, b, r_squared, n_points}|null,
              power_law_fit_error, linear_fit: {slope, intercept,
              r_squared, n_points}|null, linear_fit_error,
              diagnostics: [{label, path, error}]}
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from .cohort import (
    CohortPoint,
    LinearFit,
    PowerLawFit,
    Region,
    classify_region,
    cohort_summary,
    fit_linear,
    fit_power_law,
    parse_manifest,
    point_from_indicators,
)
from .errors import DegenerateAbscissaError, PapertrailError, TooFewPointsError
from .indicators import AnalysisConfig, IndicatorSet, analyze_profile
from .ingest import ReportFormat, ResearcherProfile, parse_report, serialize_report
from .render import ChartStyle, ScatterAxes, profile_chart, scatter_chart
from .series import build_series
from .synth import Archetype, conscientious_spec, generate, papermill_spec

SCHEMA_VERSION = "1.0"
CONFIG_ENV_VAR = "PAPERTRAIL_CONFIG"

# documented config-file keys and their parsers
CONFIG_KEYS = {
    "r_min": float,
    "i_max": float,
    "pubs_per_year_limit": int,
    "growth_window": int,
    "max_lag": int,
    "prefer_reported_h": lambda s: s.strip().lower() in ("1", "true", "yes", "on"),
}

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE_ERROR = 2

COHORT_CHARTS = (
    ("i_vs_r.svg", ScatterAxes.I_VS_R),
    ("i_vs_r_bubble.svg", ScatterAxes.I_VS_R_BUBBLE),
    ("i_vs_p_powerfit.svg", ScatterAxes.I_VS_P_POWERFIT),
    ("m_vs_p_linfit.svg", ScatterAxes.M_VS_P_LINFIT),
)


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def load_config_file(path: str) -> dict[str, Any]:
    """Parse a `key = value` config file; '#' starts a comment line."""
    values: dict[str, Any] = {}
    text = Path(path).read_text(encoding="utf-8")
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in CONFIG_KEYS:
            raise ValueError(f"{path}:{line_no}: expected '<key> = <value>' with key in "
                             f"{sorted(CONFIG_KEYS)}, got {line!r}")
        try:
            values[key] = CONFIG_KEYS[key](value.strip())
        except ValueError:
            raise ValueError(f"{path}:{line_no}: bad value for {key}: {value.strip()!r}") from None
    return values


def _resolve_analysis_config(args: argparse.Namespace) -> AnalysisConfig:
    values: dict[str, Any] = {}
    config_path = args.config or os.environ.get(CONFIG_ENV_VAR)
    if config_path:
        values.update(load_config_file(config_path))
    # flags beat the config file
    if args.r_min is not None:
        values["r_min"] = args.r_min
    if args.i_max is not None:
        values["i_max"] = args.i_max
    if args.max_lag is not None:
        values["max_lag"] = args.max_lag
    if args.pubs_limit is not None:
        values["pubs_per_year_limit"] = args.pubs_limit
    if args.growth_window is not None:
        values["growth_window"] = args.growth_window
    if getattr(args, "prefer_reported_h", False):
        values["prefer_reported_h"] = True
    return AnalysisConfig(**values)


def _detect_format(path: str, explicit: str | None) -> ReportFormat:
    if explicit:
        return ReportFormat(explicit)
    return ReportFormat.CSV if path.lower().endswith(".csv") else ReportFormat.TSV


def _signal_json(ind: IndicatorSet) -> list[dict[str, str]]:
    return [{"kind": s.kind.value, "detail": s.detail} for s in ind.flags]


def build_report(profile: ResearcherProfile, ind: IndicatorSet) -> dict[str, Any]:
    """Assemble the analyze-report JSON document (schema 1.0).

    Every indicator key is always present; undefined values are emitted as
    null with an explanation under "undefined_reasons".
    """
    undefined: dict[str, str] = {}
    if ind.r is None:
        undefined["correlation"] = (
            "correlation undefined: series shorter than 2 years or constant"
        )
    if ind.lag is None:
        undefined["lag_years"] = (
            "lag not estimated: correlation undefined, not strong, or series too short"
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "generated_at": _now_iso(),
        "profile": {
            "name": profile.name,
            "source_id": profile.source_id,
            "reported_h": profile.reported_h,
            "n_records": len(profile.records),
        },
        "indicators": {
            "correlation": ind.r,
            "lag_years": ind.lag,
            "h_index": ind.h,
            "i_index": ind.i_index,
            "total_publications": ind.total_pubs,
            "total_citations": ind.total_cites,
            "max_pubs_in_year": ind.max_pubs_year,
            "min_pubs_in_year": ind.min_pubs_year,
            "avg_pubs_per_year": ind.avg_pubs_year,
            "avg_cites_per_paper": ind.avg_cites_per_paper,
            "start_year": ind.start_year,
            "hcp_count": ind.hcp_count,
            "flags": _signal_json(ind),
        },
        "undefined_reasons": undefined,
        "warnings": list(profile.warnings) + list(ind.warnings),
    }


def compute_cohort_fits(
    points: list[CohortPoint],
) -> tuple[PowerLawFit | None, str | None, LinearFit | None, str | None]:
    """Both cohort fits over all points; (fit, error-reason) per curve."""
    power_fit = linear_fit = None
    power_error = linear_error = None
    try:
        power_fit = fit_power_law([(p.total_pubs, p.i_index) for p in points])
    except (TooFewPointsError, DegenerateAbscissaError) as exc:
        power_error = str(exc)
    try:
        linear_fit = fit_linear([(p.total_pubs, p.max_pubs_year) for p in points])
    except (TooFewPointsError, DegenerateAbscissaError) as exc:
        linear_error = str(exc)
    return power_fit, power_error, linear_fit, linear_error


def build_cohort_document(
    points: list[CohortPoint],
    region: Region,
    diagnostics: list[dict[str, str]],
) -> dict[str, Any]:
    """Assemble the cohort JSON document: points, classification, summary, fits."""
    summary = cohort_summary(points, region)
    power_fit, power_error, linear_fit, linear_error = compute_cohort_fits(points)

    def means_json(group):
        if group is None:
            return None
        return {
            "mean_total_publications": group.total_pubs,
            "mean_max_pubs_in_year": group.max_pubs_year,
            "mean_avg_pubs_per_year": group.avg_pubs_year,
        }

    return {
        "schema_version": SCHEMA_VERSION,
        "generated_at": _now_iso(),
        "aggregation": "mean",
        "region": {"r_min": region.r_min, "i_max": region.i_max},
        "points": [
            {
                "label": p.label,
                "correlation": p.r,
                "i_index": p.i_index,
                "total_publications": p.total_pubs,
                "max_pubs_in_year": p.max_pubs_year,
                "avg_pubs_per_year": p.avg_pubs_year,
                "classification": classify_region(p, region).value,
            }
            for p in points
        ],
        "summary": {
            "n_points": summary.n_points,
            "n_inside": summary.n_inside,
            "n_outside": summary.n_outside,
            "n_unclassifiable": summary.n_unclassifiable,
            "inside_fraction": summary.inside_fraction,
            "inside": means_json(summary.inside),
            "outside": means_json(summary.outside),
        },
        "power_law_fit": asdict(power_fit) if power_fit else None,
        "power_law_fit_error": power_error,
        "linear_fit": asdict(linear_fit) if linear_fit else None,
        "linear_fit_error": linear_error,
        "diagnostics": diagnostics,
    }


def _write_json(document: dict[str, Any], path: str | None) -> None:
    text = json.dumps(document, indent=2, ensure_ascii=False) + "\n"
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        config = _resolve_analysis_config(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE_ERROR
    try:
        data = Path(args.report).read_bytes()
    except OSError as exc:
        print(f"error: cannot read {args.report}: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR
    try:
        profile = parse_report(
            data,
            _detect_format(args.report, args.format),
            default_name=Path(args.report).stem,
        )
        ind = analyze_profile(profile, config)
    except PapertrailError as exc:
        print(f"error: {args.report}: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR

    _write_json(build_report(profile, ind), args.json)
    if args.svg:
        series = build_series(profile)
        style = ChartStyle(title=f"Times cited and publications over time: {profile.name}")
        Path(args.svg).write_text(profile_chart(series, ind, style), encoding="utf-8")
    return EXIT_OK


def cmd_cohort(args: argparse.Namespace) -> int:
    try:
        config = _resolve_analysis_config(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE_ERROR
    try:
        manifest_text = Path(args.manifest).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {args.manifest}: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR

    entries, problems = parse_manifest(manifest_text)
    diagnostics = [{"label": "", "path": "", "error": p} for p in problems]
    base_dir = Path(args.manifest).parent

    points: list[CohortPoint] = []
    for label, path in entries:
        resolved = Path(path)
        if not resolved.is_absolute():
            resolved = base_dir / resolved
        try:
            data = resolved.read_bytes()
            profile = parse_report(
                data, _detect_format(str(resolved), args.format), default_name=resolved.stem
            )
            points.append(point_from_indicators(label, analyze_profile(profile, config)))
        except (OSError, PapertrailError) as exc:
            diagnostics.append({"label": label, "path": str(resolved), "error": str(exc)})

    if not points:
        print("error: no profile in the manifest could be processed", file=sys.stderr)
        for d in diagnostics:
            print(f"  {d['label'] or d['path'] or 'manifest'}: {d['error']}", file=sys.stderr)
        return EXIT_DATA_ERROR
    for d in diagnostics:
        print(f"warning: skipped {d['label'] or 'entry'}: {d['error']}", file=sys.stderr)

    try:
        region = Region(r_min=config.r_min, i_max=config.i_max)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE_ERROR
    document = build_cohort_document(points, region, diagnostics)
    _write_json(document, args.json)

    if args.svg_dir:
        out_dir = Path(args.svg_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        power_fit, _, linear_fit, _ = compute_cohort_fits(points)
        fits = {
            ScatterAxes.I_VS_P_POWERFIT: power_fit,
            ScatterAxes.M_VS_P_LINFIT: linear_fit,
        }
        for filename, axes in COHORT_CHARTS:
            style = ChartStyle(title=f"Cohort: {axes.value.replace('_', ' ')}")
            svg = scatter_chart(points, axes, fit=fits.get(axes), region=region, style=style)
            (out_dir / filename).write_text(svg, encoding="utf-8")
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    kwargs: dict[str, Any] = {}
    if args.start_year is not None:
        kwargs["start_year"] = args.start_year
    if args.n_years is not None:
        kwargs["n_years"] = args.n_years
    if args.base_rate is not None:
        kwargs["base_rate"] = args.base_rate
    if args.peak_rate is not None:
        kwargs["peak_rate"] = args.peak_rate
    if args.cites_per_paper is not None:
        kwargs["cites_per_paper"] = args.cites_per_paper
    try:
        if Archetype(args.archetype) is Archetype.PAPERMILL:
            if args.onset_offset is not None:
                kwargs["onset_offset"] = args.onset_offset
            spec = papermill_spec(args.seed, **kwargs)
        else:
            if args.kernel_peak_lag is not None:
                kwargs["kernel_peak_lag"] = args.kernel_peak_lag
            spec = conscientious_spec(args.seed, **kwargs)
        profile = generate(spec)
    except PapertrailError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE_ERROR

    fmt = ReportFormat(args.format) if args.format else ReportFormat.TSV
    Path(args.output).write_bytes(serialize_report(profile, fmt))
    return EXIT_OK


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="key = value config file")
    parser.add_argument("--r-min", dest="r_min", type=float, metavar="F",
                        help="correlation threshold for the flag region")
    parser.add_argument("--i-max", dest="i_max", type=float, metavar="F",
                        help="integrity-index threshold for the flag region")
    parser.add_argument("--max-lag", dest="max_lag", type=int, metavar="N",
                        help="largest citation delay scanned")
    parser.add_argument("--pubs-limit", dest="pubs_limit", type=int, metavar="N",
                        help="papers-per-year threshold for the output flag")
    parser.add_argument("--growth-window", dest="growth_window", type=int, metavar="N",
                        help="trailing years examined for monotone growth")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="papertrail",
        description="Citation-report indicators, papermilling signals and cohort analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="analyze one citation report")
    p_analyze.add_argument("report", help="canonical TSV/CSV citation report")
    p_analyze.add_argument("--json", metavar="PATH", help="write the JSON report here instead of stdout")
    p_analyze.add_argument("--svg", metavar="PATH", help="also write the profile chart")
    p_analyze.add_argument("--format", choices=[f.value for f in ReportFormat],
                           help="input format (default: by file extension)")
    p_analyze.add_argument("--prefer-reported-h", action="store_true",
                           help="use the file's reported h-index when present")
    _add_config_flags(p_analyze)
    p_analyze.set_defaults(func=cmd_analyze)

    p_cohort = sub.add_parser("cohort", help="analyze a cohort manifest")
    p_cohort.add_argument("manifest", help="one '<label><TAB><path>' line per researcher")
    p_cohort.add_argument("--json", metavar="PATH", help="write the cohort JSON here instead of stdout")
    p_cohort.add_argument("--svg-dir", metavar="DIR", help="write the four cohort charts here")
    p_cohort.add_argument("--format", choices=[f.value for f in ReportFormat],
                          help="format of the referenced reports (default: by extension)")
    p_cohort.add_argument("--prefer-reported-h", action="store_true",
                          help="use each file's reported h-index when present")
    _add_config_flags(p_cohort)
    p_cohort.set_defaults(func=cmd_cohort)

    p_synth = sub.add_parser("synth", help="generate a synthetic citation report")
    p_synth.add_argument("--archetype", required=True,
                         choices=[a.value for a in Archetype])
    p_synth.add_argument("--seed", type=int, default=0, metavar="N")
    p_synth.add_argument("-o", "--output", required=True, metavar="PATH")
    p_synth.add_argument("--format", choices=[f.value for f in ReportFormat])
    p_synth.add_argument("--start-year", type=int, metavar="YEAR")
    p_synth.add_argument("--n-years", type=int, metavar="N")
    p_synth.add_argument("--base-rate", type=float, metavar="F")
    p_synth.add_argument("--peak-rate", type=float, metavar="F")
    p_synth.add_argument("--cites-per-paper", type=float, metavar="F")
    p_synth.add_argument("--onset-offset", type=int, metavar="N",
                         help="papermill: years before the growth onset")
    p_synth.add_argument("--kernel-peak-lag", type=int, metavar="N",
                         help="conscientious: years from publication to peak citations")
    p_synth.set_defaults(func=cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
