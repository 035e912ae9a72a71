"""Domain types shared across the pipeline.

All types are immutable after construction and safe to share between
threads. Serialization helpers (``to_dict`` / ``from_dict``) define the
JSONL schemas used by the stage artifacts, so round-tripping through them
is lossless.
"""

from __future__ import annotations

import datetime as dt
import enum
from dataclasses import dataclass, field

import numpy as np


class Language(str, enum.Enum):
    ENGLISH = "English"
    URDU = "Urdu"

    @classmethod
    def parse(cls, value: str) -> "Language":
        for member in cls:
            if member.value.lower() == str(value).strip().lower():
                return member
        raise ValueError(f"unknown language: {value!r}")


class CanonicalCategory(str, enum.Enum):
    PAKISTAN = "Pakistan"
    BUSINESS = "Business"
    WORLD = "World"
    OTHERS = "Others"

    @classmethod
    def parse(cls, value: str) -> "CanonicalCategory":
        for member in cls:
            if member.value.lower() == str(value).strip().lower():
                return member
        raise ValueError(f"unknown category: {value!r}")


#: Tie-break ranking for event categories; lower wins. Others ranks last so
#: it can never win a tie against a retained category.
CATEGORY_PRIORITY = {
    CanonicalCategory.BUSINESS: 1,
    CanonicalCategory.PAKISTAN: 2,
    CanonicalCategory.WORLD: 3,
    CanonicalCategory.OTHERS: 4,
}

#: Categories kept after corpus filtering.
RETAINED_CATEGORIES = frozenset(
    {CanonicalCategory.PAKISTAN, CanonicalCategory.BUSINESS, CanonicalCategory.WORLD}
)


class SectorTag(str, enum.Enum):
    OIL_AND_GAS = "Oil & Gas"
    CEMENT = "Cement"
    ECONOMIC = "Economic"

    @classmethod
    def parse(cls, value: str) -> "SectorTag":
        normalized = str(value).strip().lower().replace("&", "and").replace(" ", "")
        for member in cls:
            if member.value.lower().replace("&", "and").replace(" ", "") == normalized:
                return member
        raise ValueError(f"unknown sector tag: {value!r}")


class Polarity(enum.IntEnum):
    NEGATIVE = 0
    NEUTRAL = 1
    POSITIVE = 2


class NerLabel(str, enum.Enum):
    PERSON = "Person"
    LOCATION = "Location"
    ORGANIZATION = "Organization"
    MISCELLANEOUS = "Miscellaneous"
    OTHER = "Other"

    @classmethod
    def parse(cls, value: str) -> "NerLabel":
        for member in cls:
            if member.value.lower() == str(value).strip().lower():
                return member
        raise ValueError(f"unknown NER label: {value!r}")


def parse_iso_date(value: str) -> dt.date:
    return dt.date.fromisoformat(str(value))


@dataclass(frozen=True)
class NewsArticle:
    """One cleaned, categorized news record."""

    id: str
    date: dt.date
    headline: str
    url: str
    source: str
    language: Language
    raw_category: str
    category: CanonicalCategory
    body: str
    sector_tags: frozenset[SectorTag] = field(default_factory=frozenset)

    def sort_key(self) -> tuple:
        return (self.date, self.source, self.url)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "date": self.date.isoformat(),
            "headline": self.headline,
            "url": self.url,
            "source": self.source,
            "language": self.language.value,
            "raw_category": self.raw_category,
            "category": self.category.value,
            "body": self.body,
            "sector_tags": sorted(tag.value for tag in self.sector_tags),
        }

    @classmethod
    def from_dict(cls, row: dict) -> "NewsArticle":
        return cls(
            id=row["id"],
            date=parse_iso_date(row["date"]),
            headline=row["headline"],
            url=row["url"],
            source=row["source"],
            language=Language.parse(row["language"]),
            raw_category=row.get("raw_category", ""),
            category=CanonicalCategory.parse(row["category"]),
            body=row["body"],
            sector_tags=frozenset(SectorTag.parse(t) for t in row.get("sector_tags", [])),
        )


@dataclass(frozen=True)
class NerSpan:
    start: int
    end: int
    label: NerLabel
    surface: str

    def to_dict(self) -> dict:
        return {"start": self.start, "end": self.end, "label": self.label.value, "surface": self.surface}

    @classmethod
    def from_dict(cls, row: dict) -> "NerSpan":
        return cls(
            start=int(row["start"]),
            end=int(row["end"]),
            label=NerLabel.parse(row["label"]),
            surface=row.get("surface", ""),
        )


@dataclass(frozen=True)
class Annotation:
    """Per-article sidecar: sentence polarities and NER spans."""

    article_id: str
    sentence_polarities: tuple[Polarity, ...]
    ner_spans: tuple[NerSpan, ...] = ()

    def to_dict(self) -> dict:
        return {
            "article_id": self.article_id,
            "sentence_polarities": [int(p) for p in self.sentence_polarities],
            "ner": [span.to_dict() for span in self.ner_spans],
        }

    @classmethod
    def from_dict(cls, row: dict) -> "Annotation":
        return cls(
            article_id=row["article_id"],
            sentence_polarities=tuple(Polarity(int(p)) for p in row.get("sentence_polarities", [])),
            ner_spans=tuple(NerSpan.from_dict(s) for s in row.get("ner", [])),
        )


@dataclass(frozen=True)
class KeywordSet:
    """Ranked keywords for one article; terms unique, scores >= 0."""

    article_id: str
    keywords: tuple[tuple[str, float], ...]

    def terms(self) -> list[str]:
        return [term for term, _ in self.keywords]

    def to_dict(self) -> dict:
        return {"article_id": self.article_id, "keywords": [[t, s] for t, s in self.keywords]}

    @classmethod
    def from_dict(cls, row: dict) -> "KeywordSet":
        return cls(
            article_id=row["article_id"],
            keywords=tuple((t, float(s)) for t, s in row.get("keywords", [])),
        )


class AnnotatedArticle:
    """A news article joined with its annotation and embedding.

    ``tokens`` is the unique-token set of the cleaned body, used for the
    intersection-rate overlap measure. The embedding is stored alongside a
    precomputed unit vector so pairwise cosine work never renormalizes.
    """

    __slots__ = ("article", "annotation", "embedding", "unit_embedding", "tokens", "_sentiment")

    def __init__(self, article: NewsArticle, annotation: Annotation, embedding: np.ndarray):
        vec = np.asarray(embedding, dtype=np.float64)
        norm = float(np.linalg.norm(vec))
        if vec.ndim != 1:
            raise ValueError(f"embedding for {article.id} must be 1-D, got shape {vec.shape}")
        if not np.all(np.isfinite(vec)):
            raise ValueError(f"embedding for {article.id} contains non-finite values")
        if norm == 0.0:
            raise ValueError(f"embedding for {article.id} is all-zero")
        self.article = article
        self.annotation = annotation
        self.embedding = vec
        self.unit_embedding = vec / norm
        self.tokens = frozenset(article.body.split())
        self._sentiment: Polarity | None = None

    @property
    def id(self) -> str:
        return self.article.id

    @property
    def date(self) -> dt.date:
        return self.article.date

    @property
    def language(self) -> Language:
        return self.article.language

    def sentiment(self) -> Polarity:
        # lazy majority vote; import here to avoid a module cycle
        if self._sentiment is None:
            from .annotations import article_sentiment

            self._sentiment = article_sentiment(list(self.annotation.sentence_polarities))
        return self._sentiment


@dataclass(frozen=True)
class EventRecord:
    """A group of linked articles with inherited features (one event)."""

    event_id: str
    name: str
    date: dt.date
    sources: frozenset[str]
    article_ids: tuple[str, ...]
    description: str
    majority_category: CanonicalCategory
    purity: float
    sector_category: SectorTag | None
    sentiment: Polarity
    similarity_score: float
    language: Language
    extraction_mode: str

    @property
    def article_count(self) -> int:
        return len(self.article_ids)

    def to_dict(self) -> dict:
        return {
            "event_id": self.event_id,
            "event_name": self.name,
            "date": self.date.isoformat(),
            "sources": sorted(self.sources),
            "articles": self.article_count,
            "article_ids": list(self.article_ids),
            "description": self.description,
            "majority_category": self.majority_category.value,
            "sector_category": self.sector_category.value if self.sector_category else None,
            "sentiment": int(self.sentiment),
            "similarity_score": self.similarity_score,
            "purity": self.purity,
            "language": self.language.value,
            "extraction_mode": self.extraction_mode,
        }

    @classmethod
    def from_dict(cls, row: dict) -> "EventRecord":
        sector = row.get("sector_category")
        return cls(
            event_id=row["event_id"],
            name=row["event_name"],
            date=parse_iso_date(row["date"]),
            sources=frozenset(row["sources"]),
            article_ids=tuple(row["article_ids"]),
            description=row["description"],
            majority_category=CanonicalCategory.parse(row["majority_category"]),
            purity=float(row["purity"]),
            sector_category=SectorTag.parse(sector) if sector else None,
            sentiment=Polarity(int(row["sentiment"])),
            similarity_score=float(row["similarity_score"]),
            language=Language.parse(row["language"]),
            extraction_mode=row["extraction_mode"],
        )


@dataclass(frozen=True)
class EventSet:
    events: tuple[EventRecord, ...]
    extraction_mode: str  # "one_day" | "five_day"


@dataclass(frozen=True)
class StockQuote:
    """One OHLCV row for an index or ticker."""

    date: dt.date
    open: float
    high: float
    low: float
    close: float
    volume: int
    change_pct: float | None = None
    sector: str | None = None
    symbol: str | None = None

    def to_dict(self) -> dict:
        return {
            "date": self.date.isoformat(),
            "open": self.open,
            "high": self.high,
            "low": self.low,
            "close": self.close,
            "volume": self.volume,
            "change_pct": self.change_pct,
            "sector": self.sector,
            "symbol": self.symbol,
        }

    @classmethod
    def from_dict(cls, row: dict) -> "StockQuote":
        return cls(
            date=parse_iso_date(row["date"]),
            open=float(row["open"]),
            high=float(row["high"]),
            low=float(row["low"]),
            close=float(row["close"]),
            volume=int(row["volume"]),
            change_pct=None if row.get("change_pct") is None else float(row["change_pct"]),
            sector=row.get("sector"),
            symbol=row.get("symbol"),
        )


@dataclass(frozen=True)
class TimelineBucket:
    """Fortnightly aggregate of event sentiment counts and price movement."""

    start_date: dt.date
    end_date: dt.date
    positive: int
    neutral: int
    negative: int
    open_close_delta_pct: float | None
    event_ids: tuple[str, ...]

    @property
    def net_sentiment(self) -> int:
        return self.positive - self.negative

    def to_dict(self) -> dict:
        return {
            "start_date": self.start_date.isoformat(),
            "end_date": self.end_date.isoformat(),
            "positive": self.positive,
            "neutral": self.neutral,
            "negative": self.negative,
            "net_sentiment": self.net_sentiment,
            "open_close_delta_pct": self.open_close_delta_pct,
            "events": list(self.event_ids),
        }

    @classmethod
    def from_dict(cls, row: dict) -> "TimelineBucket":
        return cls(
            start_date=parse_iso_date(row["start_date"]),
            end_date=parse_iso_date(row["end_date"]),
            positive=int(row["positive"]),
            neutral=int(row["neutral"]),
            negative=int(row["negative"]),
            open_close_delta_pct=(
                None if row.get("open_close_delta_pct") is None else float(row["open_close_delta_pct"])
            ),
            event_ids=tuple(row.get("events", [])),
        )


@dataclass(frozen=True)
class CorrelationReport:
    buckets: int
    sign_agreement_rate: float
    pearson_r: float | None
    pearson_undefined: bool = False

    def to_dict(self) -> dict:
        return {
            "buckets": self.buckets,
            "sign_agreement_rate": self.sign_agreement_rate,
            "pearson_r": self.pearson_r,
            "pearson_undefined": self.pearson_undefined,
        }
