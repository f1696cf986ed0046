"""Bibliographic record parsing: BibTeX and DBLP XML, plus export."""

import pytest

from ontonav.errors import ParseError, ValidationError
from ontonav.records import ArticleRecord, parse_records, render_bibtex


class TestBibtexParsing:
    def test_braced_values(self):
        records, report = parse_records(
            "@article{k1, title = {A Braced Title}, author = {Doe, Jo}, year = {1999}}"
        )
        assert report.parsed == 1
        (rec,) = records
        assert rec.key == "k1"
        assert rec.title == "A Braced Title"
        assert rec.authors == ("Doe, Jo",)
        assert rec.year == 1999

    def test_quoted_and_bare_values(self):
        records, _ = parse_records(
            '@article{k2, title = "Quoted Title", year = 2001, journal = {V}}'
        )
        (rec,) = records
        assert rec.title == "Quoted Title"
        assert rec.year == 2001

    def test_nested_braces_flattened(self):
        records, _ = parse_records(
            "@article{k3, title = {The {SQL} Standard and {B}-trees}}"
        )
        assert records[0].title == "The SQL Standard and B-trees"

    def test_multiple_authors_split_on_and(self):
        records, _ = parse_records(
            "@article{k4, title = {T}, author = {Doe, Jo and Roe, Max and Poe, Ada}}"
        )
        assert records[0].authors == ("Doe, Jo", "Roe, Max", "Poe, Ada")

    def test_inproceedings_booktitle_becomes_venue(self):
        records, _ = parse_records(
            "@inproceedings{k5, title = {T}, booktitle = {Workshop Notes}}"
        )
        assert records[0].venue == "Workshop Notes"

    def test_url_and_ee_feed_uri(self):
        records, _ = parse_records(
            "@article{k6, title = {T}, ee = {http://example.org/x}}"
        )
        assert records[0].uri == "http://example.org/x"

    def test_missing_title_skipped_with_position(self):
        text = "@article{k7, author = {Doe, Jo}}\n@article{k8, title = {Kept}}"
        records, report = parse_records(text)
        assert [r.key for r in records] == ["k8"]
        assert len(report.skipped) == 1
        skip = report.skipped[0]
        assert skip.key == "k7"
        assert "title" in skip.reason
        assert skip.position == "line 1"

    def test_missing_key_skipped(self):
        records, report = parse_records("@article{, title = {T}}")
        assert records == []
        assert "citation key" in report.skipped[0].reason

    def test_concatenation_skipped_entry_only(self):
        text = (
            '@string{js = {Journal}}\n'
            '@article{k9, title = js # { of Testing}, year = {2000}}\n'
            "@article{k10, title = {Unaffected}}"
        )
        records, report = parse_records(text)
        assert [r.key for r in records] == ["k10"]
        reasons = [s.reason for s in report.skipped]
        assert any("concatenation" in r for r in reasons)
        assert any("@string" in n for n in report.notes)

    def test_unbalanced_braces_resync_at_next_entry(self):
        text = "@article{k11, title = {broken\n@article{k12, title = {Kept}}"
        records, report = parse_records(text)
        assert [r.key for r in records] == ["k12"]
        assert len(report.skipped) == 1

    def test_comment_entries_silently_ignored(self):
        records, report = parse_records(
            "@comment{anything goes here}\n@article{k13, title = {T}}"
        )
        assert [r.key for r in records] == ["k13"]
        assert report.skipped == []
        assert report.notes == []

    def test_preamble_noted(self):
        _, report = parse_records('@preamble{"\\latexmacro"}')
        assert any("@preamble" in n for n in report.notes)

    def test_unparseable_year_noted_not_fatal(self):
        records, report = parse_records(
            "@article{k14, title = {T}, year = {MMIV}}"
        )
        assert records[0].year is None
        assert any("year" in n for n in report.notes)

    def test_latin1_bytes_fallback(self):
        text = "@article{k15, title = {Génération d'images}}"
        records, _ = parse_records(text.encode("latin-1"))
        assert records[0].title == "Génération d'images"

    def test_utf8_bytes(self):
        text = "@article{k16, title = {Génération d'images}}"
        records, _ = parse_records(text.encode("utf-8"))
        assert records[0].title == "Génération d'images"

    def test_whitespace_in_values_collapsed(self):
        records, _ = parse_records(
            "@article{k17, title = {Line\n  broken   title}}"
        )
        assert records[0].title == "Line broken title"

    def test_empty_input(self):
        records, report = parse_records("")
        assert records == []
        assert report.parsed == 0

    def test_unknown_format_rejected(self):
        with pytest.raises(ValidationError):
            parse_records("x", "endnote")


DBLP_DOC = """<?xml version="1.0" encoding="UTF-8"?>
<dblp>
  <article key="journals/x/Doe99" mdate="2002-01-03">
    <author>Jo Doe</author>
    <title>Storage <i>systems</i> in practice</title>
    <journal>Journal X</journal>
    <year>1999</year>
    <ee>http://example.org/doe99</ee>
  </article>
  <inproceedings key="conf/y/Roe01">
    <author>Max Roe</author>
    <author>Ada Poe</author>
    <title>Indexing revisited</title>
    <booktitle>Conf Y</booktitle>
    <year>2001</year>
  </inproceedings>
  <phdthesis key="phd/z/Poe02">
    <author>Ada Poe</author>
    <title>A thesis outside scope</title>
  </phdthesis>
</dblp>
"""


class TestDblpParsing:
    def test_articles_and_inproceedings_parsed(self):
        records, report = parse_records(DBLP_DOC, "dblp-xml")
        assert report.parsed == 2
        by_key = {r.key: r for r in records}
        art = by_key["journals/x/Doe99"]
        assert art.title == "Storage systems in practice"  # markup flattened
        assert art.venue == "Journal X"
        assert art.year == 1999
        assert art.uri == "http://example.org/doe99"
        inp = by_key["conf/y/Roe01"]
        assert inp.authors == ("Max Roe", "Ada Poe")
        assert inp.venue == "Conf Y"

    def test_other_kinds_ignored(self):
        records, _ = parse_records(DBLP_DOC, "dblp-xml")
        assert all(r.key != "phd/z/Poe02" for r in records)

    def test_missing_key_attribute_skipped(self):
        doc = "<dblp><article><title>No key</title></article></dblp>"
        records, report = parse_records(doc, "dblp-xml")
        assert records == []
        assert len(report.skipped) == 1
        assert "key" in report.skipped[0].reason

    def test_missing_title_skipped(self):
        doc = '<dblp><article key="a/b/c"><year>1999</year></article></dblp>'
        records, report = parse_records(doc, "dblp-xml")
        assert records == []
        assert "title" in report.skipped[0].reason

    def test_broken_xml_is_fatal(self):
        with pytest.raises(ParseError):
            parse_records("<dblp><article key='x'>", "dblp-xml")


class TestRenderBibtex:
    def test_round_trip_fields(self):
        original = ArticleRecord(
            key="rt1",
            title="Round Trip",
            authors=("Doe, Jo", "Roe, Max"),
            year=2002,
            venue="Journal Z",
            uri="http://example.org/rt1",
        )
        text = render_bibtex([original])
        records, report = parse_records(text)
        assert report.skipped == []
        (again,) = records
        assert again.same_fields(original)

    def test_none_year_omitted(self):
        text = render_bibtex(
            [ArticleRecord(key="rt2", title="No Year", authors=(), year=None, venue="")]
        )
        assert "year" not in text
        records, _ = parse_records(text)
        assert records[0].year is None


class TestSameFields:
    def test_ignores_derived_state(self):
        a = ArticleRecord(key="k", title="T", authors=("A",), year=2000, venue="V")
        b = ArticleRecord(
            key="k",
            title="T",
            authors=("A",),
            year=2000,
            venue="V",
            title_lemmas=frozenset({"t"}),
            assigned_nodes=frozenset({"H.3"}),
            orphan_host="X",
        )
        assert a.same_fields(b)

    def test_detects_field_change(self):
        a = ArticleRecord(key="k", title="T", authors=(), year=2000, venue="V")
        b = ArticleRecord(key="k", title="T2", authors=(), year=2000, venue="V")
        assert not a.same_fields(b)
