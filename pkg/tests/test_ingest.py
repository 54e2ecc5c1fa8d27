import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from papertrail.errors import (
    EmptyProfileError,
    EncodingError,
    MalformedHeaderError,
    MalformedRowError,
    PapertrailError,
    ReportWarning,
)
from papertrail.ingest import (
    PublicationRecord,
    ReportFormat,
    ResearcherProfile,
    parse_report,
    serialize_report,
)

from conftest import profiles_equal_modulo_warnings, random_profile, tsv


class TestParse:
    def test_two_records_consistent_totals(self, two_record_tsv):
        profile = parse_report(two_record_tsv)
        assert len(profile.records) == 2
        assert profile.warnings == []
        first = profile.records[0]
        assert (first.title, first.pub_year, first.total_citations) == ("First paper", 2010, 5)
        assert first.citations_by_year == {2010: 2, 2011: 2, 2012: 1}
        assert profile.records[1].citations_by_year == {2011: 1, 2012: 2}

    def test_total_row_sum_mismatch_warns_but_keeps_record(self):
        data = tsv(
            "Title\tPublication Year\tTotal Citations\t2010\t2011\t2012",
            "First paper\t2010\t7\t2\t2\t1",
            "Second paper\t2011\t3\t0\t1\t2",
        )
        profile = parse_report(data)
        assert len(profile.records) == 2
        assert len(profile.warnings) == 1
        assert "7" in profile.warnings[0]
        # the declared total stays authoritative
        assert profile.records[0].total_citations == 7

    def test_header_but_no_records(self):
        data = tsv("Title\tPublication Year\tTotal Citations\t2010\t2011")
        with pytest.raises(EmptyProfileError):
            parse_report(data)

    def test_metadata_lines(self):
        data = tsv(
            "# researcher\tJane Q. Scholar",
            "# id\tWOS-1234",
            "# h-index\t41",
            "Title\tPublication Year\tTotal Citations\t2015",
            "Only paper\t2015\t9\t9",
        )
        profile = parse_report(data)
        assert profile.name == "Jane Q. Scholar"
        assert profile.source_id == "WOS-1234"
        assert profile.reported_h == 41
        assert len(profile.records) == 1

    def test_name_defaults_to_caller_supplied_stem(self, two_record_tsv):
        profile = parse_report(two_record_tsv, default_name="r2_export")
        assert profile.name == "r2_export"

    def test_order_preserved(self):
        lines = ["Title\tPublication Year\tTotal Citations"]
        for k in range(20):
            lines.append(f"p{k}\t{2000 + k % 5}\t0")
        profile = parse_report(tsv(*lines))
        assert [rec.title for rec in profile.records] == [f"p{k}" for k in range(20)]

    def test_csv_variant_with_quoting(self):
        data = (
            '# researcher,"Last, First"\n'
            "Title,Publication Year,Total Citations,2020,2021\n"
            '"A title, with a comma",2020,3,1,2\n'
        ).encode()
        profile = parse_report(data, ReportFormat.CSV)
        assert profile.name == "Last, First"
        assert profile.records[0].title == "A title, with a comma"
        assert profile.records[0].citations_by_year == {2020: 1, 2021: 2}

    def test_zero_year_columns_is_valid(self):
        data = tsv(
            "Title\tPublication Year\tTotal Citations",
            "Uncited but counted\t2019\t12",
        )
        profile = parse_report(data)
        assert profile.records[0].citations_by_year == {}
        assert profile.records[0].total_citations == 12
        assert len(profile.warnings) == 1  # 12 != 0 window sum

    def test_bom_tolerated(self, two_record_tsv):
        assert len(parse_report(b"\xef\xbb\xbf" + two_record_tsv).records) == 2


class TestParseErrors:
    def test_non_contiguous_year_columns(self):
        data = tsv("Title\tPublication Year\tTotal Citations\t2010\t2012", "x\t2010\t0\t0\t0")
        with pytest.raises(MalformedHeaderError):
            parse_report(data)

    def test_descending_year_columns(self):
        data = tsv("Title\tPublication Year\tTotal Citations\t2012\t2011", "x\t2010\t0\t0\t0")
        with pytest.raises(MalformedHeaderError):
            parse_report(data)

    def test_wrong_column_count(self):
        data = tsv("Title\tPublication Year\tTotal Citations\t2010", "x\t2010\t0\t0\t99")
        with pytest.raises(MalformedRowError):
            parse_report(data)

    def test_non_integer_count(self):
        data = tsv("Title\tPublication Year\tTotal Citations\t2010", "x\t2010\tmany\t0")
        with pytest.raises(MalformedRowError):
            parse_report(data)

    def test_negative_count(self):
        data = tsv("Title\tPublication Year\tTotal Citations\t2010", "x\t2010\t-3\t0")
        with pytest.raises(MalformedRowError):
            parse_report(data)

    def test_unparseable_year(self):
        data = tsv("Title\tPublication Year\tTotal Citations\t2010", "x\tMMX\t0\t0")
        with pytest.raises(MalformedRowError):
            parse_report(data)

    def test_year_out_of_range(self):
        data = tsv("Title\tPublication Year\tTotal Citations\t2010", "x\t1850\t0\t0")
        with pytest.raises(MalformedRowError):
            parse_report(data)

    def test_unknown_metadata_key(self):
        data = tsv("# orcid\t0000", "Title\tPublication Year\tTotal Citations")
        with pytest.raises(MalformedHeaderError):
            parse_report(data)

    def test_bad_reported_h(self):
        data = tsv("# h-index\tforty", "Title\tPublication Year\tTotal Citations")
        with pytest.raises(MalformedHeaderError):
            parse_report(data)

    def test_garbage_before_header(self):
        with pytest.raises(MalformedHeaderError):
            parse_report(tsv("just some text"))

    def test_missing_header_entirely(self):
        with pytest.raises(MalformedHeaderError):
            parse_report(b"")

    def test_not_utf8(self):
        with pytest.raises(EncodingError):
            parse_report(b"Title\xff\xfe\t2010")


class TestSerialize:
    def test_round_trip_identity(self, two_record_tsv):
        profile = parse_report(two_record_tsv)
        again = parse_report(serialize_report(profile))
        assert profiles_equal_modulo_warnings(profile, again)

    def test_round_trip_preserves_bytes_of_records(self, two_record_tsv):
        profile = parse_report(two_record_tsv)
        once = serialize_report(profile)
        twice = serialize_report(parse_report(once))
        assert once == twice

    def test_empty_title_round_trips(self):
        profile = ResearcherProfile(
            name="n",
            records=[PublicationRecord("", 2018, 2, {2018: 2})],
        )
        again = parse_report(serialize_report(profile))
        assert again.records[0].title == ""
        assert profiles_equal_modulo_warnings(profile, again)

    def test_tab_in_title_sanitized_with_warning(self):
        profile = ResearcherProfile(
            name="n",
            records=[PublicationRecord("bad\ttitle", 2018, 1, {2018: 1})],
        )
        with pytest.warns(ReportWarning):
            data = serialize_report(profile, ReportFormat.TSV)
        again = parse_report(data)
        assert again.records[0].title == "bad title"

    def test_csv_keeps_tabs_and_commas_exactly(self):
        profile = ResearcherProfile(
            name="Comma, Name",
            records=[PublicationRecord('has "quotes", commas', 2018, 1, {2018: 1})],
        )
        again = parse_report(serialize_report(profile, ReportFormat.CSV), ReportFormat.CSV)
        assert profiles_equal_modulo_warnings(profile, again)

    def test_window_covers_all_cited_years(self):
        profile = ResearcherProfile(
            name="n",
            records=[
                PublicationRecord("a", 2000, 1, {2003: 1}),
                PublicationRecord("b", 2001, 2, {2001: 1, 2006: 1}),
            ],
        )
        text = serialize_report(profile).decode()
        header = [l for l in text.splitlines() if l.startswith("Title")][0]
        assert header.split("\t")[3:] == [str(y) for y in range(2001, 2007)]

    @settings(max_examples=150, deadline=None)
    @given(st.integers(min_value=0, max_value=2 ** 63))
    def test_round_trip_random_profiles(self, seed):
        rng = random.Random(seed)
        profile = random_profile(rng)
        for fmt in ReportFormat:
            again = parse_report(serialize_report(profile, fmt), fmt)
            assert profiles_equal_modulo_warnings(profile, again)


class TestTotality:
    """Any byte input must land in a profile or a declared error."""

    @settings(max_examples=300, deadline=None)
    @given(st.binary(max_size=200))
    def test_random_bytes_never_crash(self, data):
        try:
            profile = parse_report(data)
            assert profile.records
        except PapertrailError:
            pass

    @settings(max_examples=300, deadline=None)
    @given(st.binary(max_size=300), st.sampled_from(list(ReportFormat)))
    def test_mutated_documents_never_crash(self, noise, fmt):
        base = bytearray(
            b"# researcher\tA\nTitle\tPublication Year\tTotal Citations\t2010\t2011\n"
            b"p\t2010\t3\t1\t2\n"
        )
        base.extend(noise)
        try:
            parse_report(bytes(base), fmt)
        except PapertrailError:
            pass
