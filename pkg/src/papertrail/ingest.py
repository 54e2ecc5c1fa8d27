"""Parsing and serialization of canonical citation-report files.

The canonical format is a text table, one row per indexed publication,
preceded by optional ``# key<sep>value`` metadata rows and a mandatory
header row.  Tab-separated is the primary flavor; a comma-separated
variant with RFC-4180 quoting is accepted and produced as well.

Layout (TSV shown; CSV is identical with comma delimiter + quoting)::

    # researcher<TAB><name>            (optional)
    # id<TAB><identifier>              (optional)
    # h-index<TAB><integer>            (optional)
    Title<TAB>Publication Year<TAB>Total Citations<TAB><Y1>...<TAB><Yk>
    <title><TAB><year><TAB><int><TAB><int>...<TAB><int>

Year columns Y1..Yk must be contiguous ascending calendar years.  The
declared total-citations value is kept as authoritative even when it
disagrees with the sum of the year columns (the per-year window of a
real export does not necessarily cover a paper's whole citation
history); such rows are flagged with a warning instead of rejected.
"""

from __future__ import annotations

import csv
import io
import re
import warnings
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    EmptyProfileError,
    EncodingError,
    MalformedHeaderError,
    MalformedRowError,
    ReportWarning,
)

MIN_YEAR = 1900
MAX_YEAR = 2100

META_RESEARCHER = "# researcher"
META_ID = "# id"
META_H_INDEX = "# h-index"

_HEADER_PREFIX = ("Title", "Publication Year", "Total Citations")

# characters that would break the line/field structure of a TSV file
_TSV_UNSAFE = re.compile(r"[\t\r\n]")


class ReportFormat(str, Enum):
    TSV = "tsv"
    CSV = "csv"


@dataclass
class PublicationRecord:
    """One indexed paper: publication year, totals, per-year citations.

    ``citations_by_year`` is stored in canonical form: zero-count years
    are dropped, so two records compare equal regardless of how many
    explicit zeros their source files carried.
    """

    title: str
    pub_year: int
    total_citations: int
    citations_by_year: dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not MIN_YEAR <= self.pub_year <= MAX_YEAR:
            raise ValueError(f"publication year {self.pub_year} outside {MIN_YEAR}..{MAX_YEAR}")
        if self.total_citations < 0:
            raise ValueError("total citations must be non-negative")
        cleaned: dict[int, int] = {}
        for year, count in self.citations_by_year.items():
            if count < 0:
                raise ValueError(f"negative citation count for year {year}")
            if count > 0:
                cleaned[int(year)] = int(count)
        self.citations_by_year = cleaned

    @property
    def window_sum(self) -> int:
        """Sum of the per-year citation columns (may differ from the total)."""
        return sum(self.citations_by_year.values())


@dataclass
class ResearcherProfile:
    """A named collection of publication records plus optional reported numbers."""

    name: str
    source_id: str | None = None
    reported_h: int | None = None
    records: list[PublicationRecord] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def _decode(data: bytes) -> str:
    try:
        # utf-8-sig: tolerate the BOM spreadsheet converters like to prepend
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"input is not valid UTF-8: {exc}") from None


def _rows(text: str, fmt: ReportFormat) -> list[list[str]]:
    if fmt is ReportFormat.TSV:
        # tolerate CRLF endings without letting \r leak into the last cell
        return [line.rstrip("\r").split("\t") for line in text.split("\n")]
    try:
        return list(csv.reader(io.StringIO(text, newline="")))
    except csv.Error as exc:
        raise MalformedRowError(f"CSV structure error: {exc}") from None


def _parse_year_columns(cells: list[str]) -> list[int]:
    years: list[int] = []
    for cell in cells:
        try:
            years.append(int(cell.strip()))
        except ValueError:
            raise MalformedHeaderError(f"year column {cell!r} is not an integer") from None
    for prev, cur in zip(years, years[1:]):
        if cur != prev + 1:
            raise MalformedHeaderError(
                f"year columns must be contiguous ascending; found {prev} followed by {cur}"
            )
    return years


def _parse_count(cell: str, what: str, row_no: int) -> int:
    try:
        value = int(cell.strip())
    except ValueError:
        raise MalformedRowError(f"row {row_no}: {what} {cell!r} is not an integer") from None
    if value < 0:
        raise MalformedRowError(f"row {row_no}: {what} must be non-negative, got {value}")
    return value


def parse_report(
    data: bytes,
    fmt: ReportFormat = ReportFormat.TSV,
    default_name: str = "unknown",
) -> ResearcherProfile:
    """Parse a canonical citation report into a ResearcherProfile.

    ``default_name`` (typically the source file stem) is used when the file
    carries no ``# researcher`` metadata line.  Record order is preserved.

    Raises EncodingError, MalformedHeaderError, MalformedRowError or
    EmptyProfileError; any byte input lands in exactly one of those or in
    a valid profile.
    """
    text = _decode(data)
    name: str | None = None
    source_id: str | None = None
    reported_h: int | None = None
    year_cols: list[int] | None = None
    records: list[PublicationRecord] = []
    parse_warnings: list[str] = []

    for row_no, cells in enumerate(_rows(text, fmt), start=1):
        if not cells or (len(cells) == 1 and cells[0] == ""):
            continue  # blank line

        if year_cols is None:
            key = cells[0]
            if key == _HEADER_PREFIX[0]:
                if tuple(cells[:3]) != _HEADER_PREFIX:
                    raise MalformedHeaderError(
                        f"row {row_no}: header must start with {', '.join(_HEADER_PREFIX)}"
                    )
                year_cols = _parse_year_columns(cells[3:])
                continue
            if key == META_RESEARCHER or key == META_ID or key == META_H_INDEX:
                if len(cells) != 2:
                    raise MalformedHeaderError(
                        f"row {row_no}: metadata line {key!r} must have exactly one value"
                    )
                if key == META_RESEARCHER:
                    name = cells[1]
                elif key == META_ID:
                    source_id = cells[1]
                else:
                    try:
                        reported_h = int(cells[1].strip())
                    except ValueError:
                        raise MalformedHeaderError(
                            f"row {row_no}: h-index {cells[1]!r} is not an integer"
                        ) from None
                    if reported_h < 0:
                        raise MalformedHeaderError(f"row {row_no}: h-index must be non-negative")
                continue
            raise MalformedHeaderError(
                f"row {row_no}: expected metadata or header row, got {key!r}"
            )

        # record row
        expected = 3 + len(year_cols)
        if len(cells) != expected:
            raise MalformedRowError(
                f"row {row_no}: expected {expected} columns, got {len(cells)}"
            )
        title = cells[0]
        try:
            pub_year = int(cells[1].strip())
        except ValueError:
            raise MalformedRowError(
                f"row {row_no}: publication year {cells[1]!r} is not an integer"
            ) from None
        if not MIN_YEAR <= pub_year <= MAX_YEAR:
            raise MalformedRowError(
                f"row {row_no}: publication year {pub_year} outside {MIN_YEAR}..{MAX_YEAR}"
            )
        total = _parse_count(cells[2], "total citations", row_no)
        by_year: dict[int, int] = {}
        for year, cell in zip(year_cols, cells[3:]):
            count = _parse_count(cell, f"citation count for {year}", row_no)
            if count > 0:
                by_year[year] = count
        record = PublicationRecord(
            title=title, pub_year=pub_year, total_citations=total, citations_by_year=by_year
        )
        if record.window_sum != total:
            parse_warnings.append(
                f"record {len(records) + 1} ({title!r}): year columns sum to "
                f"{record.window_sum} but total citations is {total}; "
                "keeping the declared total as authoritative"
            )
        records.append(record)

    if year_cols is None:
        raise MalformedHeaderError("no header row found")
    if not records:
        raise EmptyProfileError("report contains no publication records")

    final_name = name if name else default_name
    if not final_name:
        final_name = "unknown"
    return ResearcherProfile(
        name=final_name,
        source_id=source_id,
        reported_h=reported_h,
        records=records,
        warnings=parse_warnings,
    )


def _sanitize(value: str, fmt: ReportFormat, what: str) -> str:
    if fmt is ReportFormat.CSV:
        # RFC-4180 quoting already round-trips delimiters and newlines
        return value
    cleaned = _TSV_UNSAFE.sub(" ", value)
    if cleaned != value:
        warnings.warn(
            f"{what} contained delimiter/control characters; replaced with spaces",
            ReportWarning,
            stacklevel=3,
        )
    return cleaned


def serialize_report(profile: ResearcherProfile, fmt: ReportFormat = ReportFormat.TSV) -> bytes:
    """Render a profile back into canonical bytes.

    The year-column window is the smallest contiguous range covering every
    cited year across all records (empty when nothing was ever cited).
    ``parse_report(serialize_report(p))`` reproduces ``p`` in every field
    except ``warnings``; titles holding tab or newline characters are
    sanitized for the TSV flavor (a ReportWarning is emitted).
    """
    cited_years = [y for rec in profile.records for y in rec.citations_by_year]
    year_cols: list[int] = []
    if cited_years:
        year_cols = list(range(min(cited_years), max(cited_years) + 1))

    rows: list[list[str]] = []
    rows.append([META_RESEARCHER, _sanitize(profile.name, fmt, "researcher name")])
    if profile.source_id is not None:
        rows.append([META_ID, _sanitize(profile.source_id, fmt, "researcher id")])
    if profile.reported_h is not None:
        rows.append([META_H_INDEX, str(profile.reported_h)])
    rows.append(list(_HEADER_PREFIX) + [str(y) for y in year_cols])
    for rec in profile.records:
        rows.append(
            [_sanitize(rec.title, fmt, "record title"), str(rec.pub_year), str(rec.total_citations)]
            + [str(rec.citations_by_year.get(y, 0)) for y in year_cols]
        )

    if fmt is ReportFormat.TSV:
        text = "\n".join("\t".join(row) for row in rows) + "\n"
    else:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerows(rows)
        text = buffer.getvalue()
    return text.encode("utf-8")
