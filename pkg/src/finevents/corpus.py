"""Corpus ingestion: parsing, text cleaning, dedup, categories, sector tags.

Raw records arrive as key-value dicts (one JSONL line each) with at least
``{date, headline, url, category, news, source}`` and usually ``language``.
The ingest pipeline is parse -> clean -> dedupe -> standardize -> filter ->
tag, and is deterministic: identical inputs yield identical output in
(date, source, url) order regardless of how input files were scheduled.
"""

from __future__ import annotations

import dataclasses
import datetime as dt
import functools
import hashlib
import html
import json
import re
import unicodedata
from dataclasses import dataclass, field

from .types import (
    RETAINED_CATEGORIES,
    CanonicalCategory,
    Language,
    NewsArticle,
    SectorTag,
)

_TAG_RE = re.compile(r"<[^>]+>")

# Small conventional English stopword list; external config files override it.
DEFAULT_ENGLISH_STOPWORDS = frozenset(
    """a about above after again against all am an and any are as at be because
    been before being below between both but by could did do does doing down
    during each few for from further had has have having he her here hers
    herself him himself his how i if in into is it its itself just me more
    most my myself no nor not now of off on once only or other our ours
    ourselves out over own s same she should so some such t than that the
    their theirs them themselves then there these they this those through to
    too under until up very was we were what when where which while who whom
    why will with you your yours yourself yourselves""".split()
)


@dataclass
class IngestReport:
    """Counts and warnings accumulated across the ingest stages."""

    read: int = 0
    dropped_null: int = 0
    dropped_date: int = 0
    duplicates_removed: int = 0
    retained: int = 0
    warnings: list[str] = field(default_factory=list)

    def warn(self, message: str) -> None:
        self.warnings.append(message)

    def to_dict(self) -> dict:
        return {
            "read": self.read,
            "dropped_null": self.dropped_null,
            "dropped_date": self.dropped_date,
            "duplicates_removed": self.duplicates_removed,
            "retained": self.retained,
            "warnings": list(self.warnings),
        }


def article_id_for_url(url: str) -> str:
    """Stable, content-independent article id derived from the URL."""
    return hashlib.sha256(url.encode("utf-8")).hexdigest()[:16]


# Accepted input date formats: ISO-8601, DD-MM-YYYY, "Month DD, YYYY".
def parse_article_date(value: str) -> dt.date:
    text = str(value).strip()
    try:
        return dt.date.fromisoformat(text)
    except ValueError:
        pass
    for fmt in ("%d-%m-%Y", "%B %d, %Y"):
        try:
            return dt.datetime.strptime(text, fmt).date()
        except ValueError:
            continue
    raise ValueError(f"unsupported date format: {value!r}")


@functools.lru_cache(maxsize=4096)
def _strippable(ch: str) -> bool:
    # punctuation (P*) and symbols (S*) are replaced with spaces
    return unicodedata.category(ch)[0] in ("P", "S")


def clean_text(text: str, language: Language, stopwords: frozenset[str] | None = None) -> str:
    """Clean one text field: tags, punctuation, stopwords, casing, spacing.

    English text is lowercased; Urdu text is NFC-normalized and never
    case-folded. Output contains no HTML tag characters and no runs of
    whitespace; it may be empty.
    """
    if not text:
        return ""
    text = html.unescape(text)
    text = _TAG_RE.sub(" ", text)
    text = unicodedata.normalize("NFC", text)
    if language is Language.ENGLISH:
        text = text.lower()
    text = "".join(" " if _strippable(ch) else ch for ch in text)
    tokens = text.split()
    if stopwords:
        tokens = [tok for tok in tokens if tok not in stopwords]
    return " ".join(tokens)


_MANDATORY_FIELDS = ("date", "headline", "url", "source", "category", "news")


def parse_articles(
    raw_records,
    language: Language | None = None,
    report: IngestReport | None = None,
) -> list[NewsArticle]:
    """Parse raw records into articles, dropping incomplete or undated ones.

    A record's own ``language`` field wins over the ``language`` argument.
    Output is sorted by (date, source, url); drops are tallied in ``report``.
    """
    report = report if report is not None else IngestReport()
    articles = []
    for record in raw_records:
        report.read += 1
        if not isinstance(record, dict):
            report.dropped_null += 1
            continue
        values = {}
        missing = False
        for name in _MANDATORY_FIELDS:
            value = record.get(name)
            if value is None or not str(value).strip():
                missing = True
                break
            values[name] = str(value).strip()
        if missing:
            report.dropped_null += 1
            continue
        lang_raw = record.get("language")
        try:
            lang = Language.parse(lang_raw) if lang_raw else language
        except ValueError:
            lang = None
        if lang is None:
            report.dropped_null += 1
            continue
        try:
            date = parse_article_date(values["date"])
        except ValueError:
            report.dropped_date += 1
            continue
        articles.append(
            NewsArticle(
                id=article_id_for_url(values["url"]),
                date=date,
                headline=values["headline"],
                url=values["url"],
                source=values["source"],
                language=lang,
                raw_category=values["category"],
                category=CanonicalCategory.OTHERS,
                body=values["news"],
            )
        )
    articles.sort(key=NewsArticle.sort_key)
    return articles


def clean_articles(
    articles: list[NewsArticle],
    stopwords_by_language: dict[Language, frozenset[str]] | None = None,
    report: IngestReport | None = None,
) -> list[NewsArticle]:
    """Apply clean_text to headline and body; drop articles cleaned to empty."""
    stopwords_by_language = stopwords_by_language or {}
    cleaned = []
    for article in articles:
        stopwords = stopwords_by_language.get(article.language)
        if stopwords is None and article.language is Language.ENGLISH:
            stopwords = DEFAULT_ENGLISH_STOPWORDS
        headline = clean_text(article.headline, article.language, stopwords)
        body = clean_text(article.body, article.language, stopwords)
        if not headline or not body:
            if report is not None:
                report.dropped_null += 1
            continue
        cleaned.append(dataclasses.replace(article, headline=headline, body=body))
    return cleaned


def dedupe(articles: list[NewsArticle], report: IngestReport | None = None) -> list[NewsArticle]:
    """Keep the first occurrence of each URL; order is preserved."""
    seen: set[str] = set()
    out = []
    for article in articles:
        if article.url in seen:
            if report is not None:
                report.duplicates_removed += 1
            continue
        seen.add(article.url)
        out.append(article)
    return out


class CategoryMap:
    """Per-source mapping of raw category labels to the canonical set.

    Lookup tries the source's own entries, then entries under the ``"*"``
    pseudo-source, and resolves to Others when no entry matches. The default
    map carries identity entries for the four canonical names under ``"*"``.
    """

    def __init__(self, mapping: dict[str, dict[str, CanonicalCategory]] | None = None):
        self._mapping = {
            source: {raw.strip(): cat for raw, cat in entries.items()}
            for source, entries in (mapping or {}).items()
        }

    def lookup(self, source: str, raw_category: str) -> CanonicalCategory:
        raw = str(raw_category).strip()
        for key in (source, "*"):
            entry = self._mapping.get(key, {}).get(raw)
            if entry is not None:
                return entry
        return CanonicalCategory.OTHERS

    @classmethod
    def identity_default(cls) -> "CategoryMap":
        return cls({"*": {cat.value: cat for cat in CanonicalCategory}})

    @classmethod
    def from_json(cls, path) -> "CategoryMap":
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        mapping = {
            source: {raw: CanonicalCategory.parse(cat) for raw, cat in entries.items()}
            for source, entries in data.items()
        }
        return cls(mapping)


def standardize_category(source: str, raw_category: str, category_map: CategoryMap) -> CanonicalCategory:
    return category_map.lookup(source, raw_category)


def standardize_articles(articles: list[NewsArticle], category_map: CategoryMap) -> list[NewsArticle]:
    return [
        dataclasses.replace(a, category=standardize_category(a.source, a.raw_category, category_map))
        for a in articles
    ]


def filter_retained(articles: list[NewsArticle]) -> list[NewsArticle]:
    """Keep only the retained categories (Pakistan, Business, World)."""
    return [a for a in articles if a.category in RETAINED_CATEGORIES]


def _normalize_keyword(keyword: str) -> str:
    text = unicodedata.normalize("NFC", str(keyword)).lower()
    text = "".join(" " if _strippable(ch) else ch for ch in text)
    return " ".join(text.split())


def tag_sectors(
    article: NewsArticle,
    keyword_lists: dict[SectorTag, frozenset[str]],
    report: IngestReport | None = None,
) -> frozenset[SectorTag]:
    """Assign a sector tag iff more than three DISTINCT keywords match the body.

    Matching is token-boundary safe: single-word keywords match body tokens,
    multi-word keywords match contiguous token runs.
    """
    tokens = set(article.body.split())
    padded_body = f" {article.body} "
    tags = set()
    for tag, keywords in keyword_lists.items():
        if not keywords:
            if report is not None:
                report.warn(f"empty keyword list for sector tag {tag.value!r}")
            continue
        distinct = 0
        for keyword in keywords:
            normalized = _normalize_keyword(keyword)
            if not normalized:
                continue
            if " " in normalized:
                hit = f" {normalized} " in padded_body
            else:
                hit = normalized in tokens
            if hit:
                distinct += 1
                if distinct > 3:
                    break
        if distinct > 3:
            tags.add(tag)
    return frozenset(tags)


def tag_articles(
    articles: list[NewsArticle],
    keyword_lists: dict[SectorTag, frozenset[str]],
    report: IngestReport | None = None,
) -> list[NewsArticle]:
    # warn once per empty list, not once per article
    if report is not None:
        for tag, keywords in keyword_lists.items():
            if not keywords:
                report.warn(f"empty keyword list for sector tag {tag.value!r}")
    return [
        dataclasses.replace(a, sector_tags=tag_sectors(a, keyword_lists, report=None))
        for a in articles
    ]


def load_sector_keywords(path) -> dict[SectorTag, frozenset[str]]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return {SectorTag.parse(tag): frozenset(words) for tag, words in data.items()}


def load_stopwords(path) -> frozenset[str]:
    """One word per line; blank lines and #-comments ignored."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if word and not word.startswith("#"):
                words.add(unicodedata.normalize("NFC", word))
    return frozenset(words)


def ingest_corpus(
    raw_records,
    *,
    language: Language | None = None,
    category_map: CategoryMap | None = None,
    sector_keywords: dict[SectorTag, frozenset[str]] | None = None,
    stopwords_by_language: dict[Language, frozenset[str]] | None = None,
    report: IngestReport | None = None,
) -> tuple[list[NewsArticle], IngestReport]:
    """Run the full ingest chain and return (articles, report)."""
    report = report if report is not None else IngestReport()
    category_map = category_map or CategoryMap.identity_default()
    articles = parse_articles(raw_records, language=language, report=report)
    articles = clean_articles(articles, stopwords_by_language, report=report)
    articles = dedupe(articles, report=report)
    articles = standardize_articles(articles, category_map)
    articles = filter_retained(articles)
    if sector_keywords:
        articles = tag_articles(articles, sector_keywords, report=report)
    report.retained = len(articles)
    return articles, report
