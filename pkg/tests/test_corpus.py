import random
import unicodedata

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finevents.corpus import (
    CategoryMap,
    IngestReport,
    clean_text,
    dedupe,
    filter_retained,
    ingest_corpus,
    parse_articles,
    standardize_category,
    tag_sectors,
)
from finevents.types import CanonicalCategory, Language, NewsArticle, SectorTag


def make_record(**overrides):
    record = {
        "date": "2023-03-24",
        "headline": "Cement sales rise",
        "url": "https://example.com/a1",
        "source": "Dawn",
        "category": "Business",
        "news": "cement sales rose sharply this month",
        "language": "English",
    }
    record.update(overrides)
    return record


def make_article(**overrides):
    fields = {
        "id": "a1",
        "date": __import__("datetime").date(2023, 3, 24),
        "headline": "headline",
        "url": "https://example.com/a1",
        "source": "Dawn",
        "language": Language.ENGLISH,
        "raw_category": "Business",
        "category": CanonicalCategory.BUSINESS,
        "body": "body text",
    }
    fields.update(overrides)
    return NewsArticle(**fields)


class TestParseArticles:
    def test_table1_english_row(self):
        record = make_record(
            date="2021-06-24",
            headline="Withdrawal of GST on agri equipment, apparatus suggested",
            url="https://www.brecorder.com/news/40102555",
            source="Business Recorder",
            category="Business",
        )
        articles = parse_articles([record])
        assert len(articles) == 1
        assert articles[0].date.isoformat() == "2021-06-24"
        assert articles[0].source == "Business Recorder"
        assert articles[0].raw_category == "Business"

    def test_empty_headline_dropped(self):
        report = IngestReport()
        articles = parse_articles([make_record(headline="")], report=report)
        assert articles == []
        assert report.dropped_null == 1

    def test_date_format_normalization(self):
        # both accepted formats normalize to the same ISO date
        records = [
            make_record(date="24-03-2023", url="https://e.com/1"),
            make_record(date="2023-03-24", url="https://e.com/2"),
        ]
        articles = parse_articles(records)
        assert [a.date.isoformat() for a in articles] == ["2023-03-24", "2023-03-24"]

    def test_month_name_date_format(self):
        articles = parse_articles([make_record(date="March 24, 2023")])
        assert articles[0].date.isoformat() == "2023-03-24"

    def test_bad_date_dropped_and_counted(self):
        report = IngestReport()
        articles = parse_articles([make_record(date="24/03/23")], report=report)
        assert articles == []
        assert report.dropped_date == 1

    def test_output_sorted_by_date_source_url(self):
        records = [
            make_record(date="2023-03-25", url="https://e.com/z", source="Jang"),
            make_record(date="2023-03-24", url="https://e.com/b", source="Dawn"),
            make_record(date="2023-03-24", url="https://e.com/a", source="Dawn"),
        ]
        articles = parse_articles(records)
        assert [(a.date.isoformat(), a.source, a.url) for a in articles] == [
            ("2023-03-24", "Dawn", "https://e.com/a"),
            ("2023-03-24", "Dawn", "https://e.com/b"),
            ("2023-03-25", "Jang", "https://e.com/z"),
        ]


class TestCleanText:
    def test_html_and_case_and_punctuation(self):
        assert clean_text("<p>Stock UP!</p>", Language.ENGLISH, frozenset()) == "stock up"

    def test_empty_input(self):
        assert clean_text("", Language.ENGLISH, frozenset()) == ""

    def test_urdu_nfc_normalization(self):
        # ALEF + combining MADDA composes to the precomposed character
        decomposed = "آپ"
        cleaned = clean_text(decomposed, Language.URDU)
        assert cleaned == unicodedata.normalize("NFC", decomposed)
        assert cleaned.startswith("آ")

    def test_urdu_not_casefolded(self):
        text = "معیشت ABC"
        # Latin letters embedded in Urdu text keep their case
        assert "ABC" in clean_text(text, Language.URDU)

    def test_stopword_removal(self):
        out = clean_text("The market is up", Language.ENGLISH, frozenset({"the", "is"}))
        assert out == "market up"

    def test_html_entity_unescaped(self):
        out = clean_text("Business &amp; Finance", Language.ENGLISH, frozenset())
        assert out == "business finance"

    @given(st.text(max_size=200))
    @settings(max_examples=200, deadline=None)
    def test_no_tag_chars_and_no_double_spaces(self, text):
        cleaned = clean_text(text, Language.ENGLISH, frozenset())
        assert "<" not in cleaned and ">" not in cleaned
        assert "  " not in cleaned
        assert cleaned == cleaned.strip()


class TestDedupe:
    def test_first_occurrence_kept(self):
        a = make_article(url="https://e.com/x", headline="a")
        b = make_article(url="https://e.com/x", headline="b")
        c = make_article(url="https://e.com/y", headline="c")
        assert dedupe([a, b, c]) == [a, c]

    def test_already_unique_unchanged(self):
        arts = [make_article(url=f"https://e.com/{i}") for i in range(5)]
        assert dedupe(arts) == arts

    def test_planted_duplicates_against_hashset_oracle(self):
        rng = random.Random(7)
        unique = [make_article(url=f"https://e.com/{i}") for i in range(800)]
        dupes = [make_article(url=f"https://e.com/{rng.randrange(800)}") for _ in range(200)]
        mixed = unique + dupes
        rng.shuffle(mixed)
        report = IngestReport()
        result = dedupe(mixed, report=report)
        # independent oracle: count distinct urls with a set
        assert len(result) == len({a.url for a in mixed}) == 800
        assert report.duplicates_removed == 200

    @given(st.lists(st.integers(min_value=0, max_value=20), max_size=40))
    @settings(max_examples=100, deadline=None)
    def test_idempotent_and_shrinking(self, url_ids):
        arts = [make_article(url=f"https://e.com/{i}") for i in url_ids]
        once = dedupe(arts)
        assert dedupe(once) == once
        assert len(once) <= len(arts)


class TestCategories:
    def test_mapped_entry(self):
        cmap = CategoryMap({"Dawn": {"Business & Finance": CanonicalCategory.BUSINESS}})
        assert standardize_category("Dawn", "Business & Finance", cmap) is CanonicalCategory.BUSINESS

    def test_unmapped_resolves_to_others(self):
        cmap = CategoryMap({"Dawn": {"Business & Finance": CanonicalCategory.BUSINESS}})
        assert standardize_category("Dawn", "Sports", cmap) is CanonicalCategory.OTHERS

    def test_identity_entry(self):
        cmap = CategoryMap({"Tribune": {"Pakistan": CanonicalCategory.PAKISTAN}})
        assert standardize_category("Tribune", "Pakistan", cmap) is CanonicalCategory.PAKISTAN

    def test_filter_retained_mixed(self):
        arts = [make_article(url=f"u{i}", category=CanonicalCategory.BUSINESS) for i in range(3)]
        arts += [make_article(url=f"o{i}", category=CanonicalCategory.OTHERS) for i in range(2)]
        assert len(filter_retained(arts)) == 3

    def test_filter_all_others(self):
        arts = [make_article(url=f"o{i}", category=CanonicalCategory.OTHERS) for i in range(4)]
        assert filter_retained(arts) == []

    def test_filter_matches_comprehension_oracle(self):
        rng = random.Random(3)
        cats = list(CanonicalCategory)
        arts = [make_article(url=f"u{i}", category=rng.choice(cats)) for i in range(100)]
        oracle = [a for a in arts if a.category.value in {"Pakistan", "Business", "World"}]
        assert filter_retained(arts) == oracle


class TestSectorTags:
    KEYWORDS = {
        SectorTag.CEMENT: frozenset({"cement", "clinker", "kiln", "limestone", "mortar"}),
        SectorTag.OIL_AND_GAS: frozenset({"oil", "gas", "petroleum", "refinery", "barrel", "crude"}),
        SectorTag.ECONOMIC: frozenset({"inflation", "reserves", "deficit", "exports", "remittance"}),
    }

    def test_four_distinct_keywords_tag(self):
        art = make_article(body="cement clinker kiln limestone output rose")
        assert tag_sectors(art, self.KEYWORDS) == frozenset({SectorTag.CEMENT})

    def test_exactly_three_keywords_no_tag(self):
        art = make_article(body="cement clinker kiln output rose again cement clinker")
        assert tag_sectors(art, self.KEYWORDS) == frozenset()

    def test_multiple_tags(self):
        art = make_article(
            body="oil gas petroleum refinery barrel inflation reserves deficit exports price"
        )
        assert tag_sectors(art, self.KEYWORDS) == frozenset(
            {SectorTag.OIL_AND_GAS, SectorTag.ECONOMIC}
        )

    def test_repeated_tokens_count_once(self):
        art = make_article(body="oil oil oil oil oil gas gas")
        assert tag_sectors(art, self.KEYWORDS) == frozenset()

    def test_empty_keyword_list_warns_and_never_tags(self):
        report = IngestReport()
        art = make_article(body="cement clinker kiln limestone")
        tags = tag_sectors(art, {SectorTag.CEMENT: frozenset()}, report=report)
        assert tags == frozenset()
        assert any("Cement" in w for w in report.warnings)


class TestIngestPipeline:
    RECORDS = [
        make_record(url="https://e.com/1", date="24-03-2023", category="Business & Finance"),
        make_record(url="https://e.com/1", date="2023-03-24", category="Business & Finance"),
        make_record(url="https://e.com/2", category="Sports"),
        make_record(url="https://e.com/3", headline=""),
        make_record(url="https://e.com/4", date="not a date"),
    ]
    CMAP = CategoryMap({"Dawn": {"Business & Finance": CanonicalCategory.BUSINESS}})

    def test_counts(self):
        articles, report = ingest_corpus(list(self.RECORDS), category_map=self.CMAP)
        assert report.read == 5
        assert report.dropped_null == 1
        assert report.dropped_date == 1
        assert report.duplicates_removed == 1
        assert report.retained == 1
        assert len(articles) == 1
        assert articles[0].category is CanonicalCategory.BUSINESS

    def test_every_retained_article_in_retained_categories(self):
        articles, _ = ingest_corpus(list(self.RECORDS), category_map=self.CMAP)
        assert all(a.category.value in {"Pakistan", "Business", "World"} for a in articles)

    def test_deterministic_across_input_order(self):
        shuffled = list(self.RECORDS)
        random.Random(11).shuffle(shuffled)
        a1, _ = ingest_corpus(list(self.RECORDS), category_map=self.CMAP)
        a2, _ = ingest_corpus(shuffled, category_map=self.CMAP)
        assert [a.to_dict() for a in a1] == [a.to_dict() for a in a2]
