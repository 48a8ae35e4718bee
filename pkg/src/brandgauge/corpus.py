"""Corpus ingestion: URL rules, paragraph extraction, timestamps, stats.

URL classification matches whole, lowercased path segments against the
fixed inclusion/exclusion keyword sets; exclusion always wins and the
first matching segment decides the page kind.
"""
from __future__ import annotations

import calendar
import html.parser
import json
import re
from dataclasses import dataclass, field
from datetime import date
from typing import IO, Iterable, Optional, Sequence, Union
from urllib.parse import urlparse

from .errors import BrandGaugeError

__all__ = [
    "PageType",
    "CrawlRecord",
    "CompanyMeta",
    "PostingStats",
    "read_company_metadata",
    "STATIC_KIND_OF",
    "DYNAMIC_KINDS",
    "EXCLUSION_KEYWORDS",
    "classify_url",
    "extract_text",
    "extract_paragraphs",
    "parse_timestamp",
    "posting_stats",
    "month_end_fraction",
    "write_corpus",
    "read_corpus",
]

# segment -> static kind (the about aliases collapse onto "about")
STATIC_KIND_OF = {
    "introduction": "introduction",
    "about": "about",
    "about-us": "about",
    "who-we-are": "about",
    "why-choose-us": "about",
    "commitment": "commitment",
    "people": "people",
    "vision": "vision",
    "strength": "strength",
    "history": "history",
    "approach": "approach",
    "benefits": "benefits",
}

DYNAMIC_KINDS = frozenset({"media", "blog", "news", "press", "investors"})

# inclusion keywords that belong to neither kind set fall into dynamic(other)
OTHER_INCLUSION_KEYWORDS = frozenset({"social"})

EXCLUSION_KEYWORDS = frozenset(
    {
        "job",
        "jcr_content",
        "events",
        "legal",
        "help",
        "showroom",
        "products",
        "store",
        "project",
        "career",
        "policy",
        "disclaimer",
        "report",
    }
)

DEFAULT_DATE_RANGE = (date(2000, 1, 1), date(2017, 9, 30))


@dataclass(frozen=True)
class PageType:
    klass: str  # "static" | "dynamic" | "excluded"
    kind: Optional[str] = None

    def as_str(self) -> str:
        return self.klass if self.kind is None else f"{self.klass}({self.kind})"


@dataclass(frozen=True)
class CrawlRecord:
    id: str
    url: str
    company: str
    page_type: PageType
    text: str
    timestamp: Optional[date] = None
    source_meta: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CompanyMeta:
    company: str
    fortune_rank: Optional[int] = None
    sector: Optional[str] = None


@dataclass(frozen=True)
class PostingStats:
    iat_days: tuple[int, ...]
    ccdf: tuple[tuple[int, float], ...]
    month_end_fraction: float

    def ccdf_at(self, days: int) -> float:
        """Fraction of inter-arrival times >= days."""
        if not self.iat_days:
            return 0.0
        return sum(1 for x in self.iat_days if x >= days) / len(self.iat_days)


def classify_url(url: str) -> PageType:
    """Whole-segment keyword matching over the lowercased URL path.
    Exclusion wins over inclusion; the first matching segment sets the
    kind; no keyword at all means the page is excluded from the corpus."""
    if not url or not url.strip():
        raise BrandGaugeError("unparseable url: empty")
    parsed = urlparse(url.strip())
    path = parsed.path if parsed.netloc else url.strip()
    if parsed.scheme and not parsed.netloc:
        raise BrandGaugeError(f"unparseable url: {url!r}")
    segments = [seg.lower() for seg in path.split("/") if seg]
    for seg in segments:
        if seg in EXCLUSION_KEYWORDS:
            return PageType("excluded", None)
    for seg in segments:
        if seg in STATIC_KIND_OF:
            return PageType("static", STATIC_KIND_OF[seg])
        if seg in DYNAMIC_KINDS:
            return PageType("dynamic", seg)
        if seg in OTHER_INCLUSION_KEYWORDS:
            return PageType("dynamic", "other")
    return PageType("excluded", None)


class _ParagraphParser(html.parser.HTMLParser):
    _SKIP = {"script", "style"}

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.paragraphs: list[str] = []
        self._depth = 0
        self._skip_depth = 0
        self._buf: list[str] = []
        self.warning = False

    def handle_starttag(self, tag, attrs):
        if tag in self._SKIP:
            self._skip_depth += 1
        elif tag == "p":
            if self._depth > 0:
                self._flush()  # nested <p>: browsers auto-close
            self._depth = 1
        elif tag == "br" and self._depth:
            self._buf.append(" ")

    def handle_endtag(self, tag):
        if tag in self._SKIP:
            self._skip_depth = max(0, self._skip_depth - 1)
        elif tag == "p":
            if self._depth == 0:
                self.warning = True
            self._flush()
            self._depth = 0

    def handle_data(self, data):
        if self._depth and not self._skip_depth:
            self._buf.append(data)

    def _flush(self):
        text = re.sub(r"\s+", " ", "".join(self._buf)).strip()
        self._buf = []
        if text:
            self.paragraphs.append(text)

    def close(self):
        super().close()
        if self._depth:
            self.warning = True
            self._flush()


def extract_paragraphs(markup: str) -> tuple[list[str], bool]:
    """Paragraph texts in document order plus a best-effort warning flag;
    never raises on malformed markup."""
    parser = _ParagraphParser()
    try:
        parser.feed(markup)
        parser.close()
    except Exception:
        parser.warning = True
    return parser.paragraphs, parser.warning


def extract_text(markup: str) -> str:
    """Inner text of all paragraph elements joined by blank lines."""
    paragraphs, _ = extract_paragraphs(markup)
    return "\n\n".join(paragraphs)


_MONTHS = {
    name.lower(): i
    for i, name in enumerate(calendar.month_name)
    if name
}
_MONTHS.update(
    {name.lower(): i for i, name in enumerate(calendar.month_abbr) if name}
)
_MONTH_PATTERN = "|".join(sorted(_MONTHS, key=len, reverse=True))

_ISO_RE = re.compile(r"(?<!\d)(\d{4})-(\d{2})-(\d{2})(?!\d)")
_MDY_RE = re.compile(
    rf"\b({_MONTH_PATTERN})\.?\s+(\d{{1,2}})(?:st|nd|rd|th)?\s*,\s*(\d{{4}})\b",
    re.IGNORECASE,
)
_DMY_RE = re.compile(
    rf"\b(\d{{1,2}})(?:st|nd|rd|th)?\s+({_MONTH_PATTERN})\.?\s+(\d{{4}})\b",
    re.IGNORECASE,
)
_META_RE = re.compile(
    r"<meta\b[^>]*(?:date|publish|pubdate|dc\.date|timestamp|time)[^>]*"
    r"content\s*=\s*[\"']([^\"']+)[\"']",
    re.IGNORECASE,
)


def _safe_date(year: int, month: int, day: int) -> Optional[date]:
    try:
        return date(year, month, day)
    except ValueError:
        return None


def parse_timestamp(
    text: str,
    date_range: tuple[date, date] = DEFAULT_DATE_RANGE,
) -> Optional[date]:
    """First timestamp found, pattern priority ISO > 'Month DD, YYYY' >
    'DD Month YYYY' > meta-tag content. Dates outside the validity window
    yield None."""
    found: Optional[date] = None
    for m in _ISO_RE.finditer(text):
        found = _safe_date(int(m.group(1)), int(m.group(2)), int(m.group(3)))
        if found:
            break
    if found is None:
        for m in _MDY_RE.finditer(text):
            found = _safe_date(
                int(m.group(3)), _MONTHS[m.group(1).lower()], int(m.group(2))
            )
            if found:
                break
    if found is None:
        for m in _DMY_RE.finditer(text):
            found = _safe_date(
                int(m.group(3)), _MONTHS[m.group(2).lower()], int(m.group(1))
            )
            if found:
                break
    if found is None:
        for m in _META_RE.finditer(text):
            found = parse_timestamp(m.group(1), date_range)
            if found:
                return found
    if found is None:
        return None
    lo, hi = date_range
    if not lo <= found <= hi:
        return None
    return found


def month_end_fraction(dates: Sequence[date]) -> float:
    """Fraction of posts on the first two or last two days of a month."""
    if not dates:
        raise BrandGaugeError("no dated posts")
    hits = 0
    for d in dates:
        last = calendar.monthrange(d.year, d.month)[1]
        if d.day in (1, 2, last, last - 1):
            hits += 1
    return hits / len(dates)


def posting_stats(records: Iterable[Union[CrawlRecord, date]]) -> PostingStats:
    """Inter-arrival times between consecutive dated posts, their CCDF,
    and the month-end posting fraction. Needs >= 2 dated records."""
    dates = []
    for r in records:
        d = r if isinstance(r, date) else r.timestamp
        if d is not None:
            dates.append(d)
    dates.sort()
    if len(dates) < 2:
        raise BrandGaugeError("need at least 2 dated records for inter-arrival times")
    iats = tuple((b - a).days for a, b in zip(dates, dates[1:]))
    n = len(iats)
    ccdf = tuple((d, sum(1 for x in iats if x >= d) / n) for d in sorted(set(iats)))
    return PostingStats(iats, ccdf, month_end_fraction(dates))


# ---------------------------------------------------------------------------
# JSONL persistence


def _record_to_json(record: CrawlRecord) -> dict:
    out = {
        "id": record.id,
        "url": record.url,
        "company": record.company,
        "page_type": record.page_type.klass,
        "kind": record.page_type.kind,
        "text": record.text,
    }
    if record.timestamp is not None:
        out["timestamp"] = record.timestamp.isoformat()
    if record.source_meta:
        out["source_meta"] = record.source_meta
    return out


def _record_from_json(obj: dict) -> CrawlRecord:
    ts = obj.get("timestamp")
    return CrawlRecord(
        id=str(obj["id"]),
        url=obj.get("url", ""),
        company=obj.get("company", ""),
        page_type=PageType(obj.get("page_type", "excluded"), obj.get("kind")),
        text=obj.get("text", ""),
        timestamp=date.fromisoformat(ts) if ts else None,
        source_meta=obj.get("source_meta", {}),
    )


def write_corpus(records: Iterable[CrawlRecord], target: Union[str, IO[str]], append: bool = False) -> int:
    """Append-only JSONL writer; returns the number of records written."""
    n = 0
    if isinstance(target, str):
        with open(target, "a" if append else "w", encoding="utf-8") as fh:
            return write_corpus(records, fh)
    for record in records:
        target.write(json.dumps(_record_to_json(record), ensure_ascii=False) + "\n")
        n += 1
    return n


def read_corpus(source: Union[str, IO[str]]) -> list[CrawlRecord]:
    if isinstance(source, str):
        with open(source, encoding="utf-8") as fh:
            return read_corpus(fh)
    out = []
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            out.append(_record_from_json(json.loads(line)))
        except (json.JSONDecodeError, KeyError) as exc:
            raise BrandGaugeError(f"corpus line {lineno}: {exc}")
    return out


def read_company_metadata(source: Union[str, IO[str]]) -> dict[str, CompanyMeta]:
    """JSONL records {company, fortune_rank, sector} keyed by company."""
    if isinstance(source, str):
        with open(source, encoding="utf-8") as fh:
            return read_company_metadata(fh)
    out: dict[str, CompanyMeta] = {}
    for lineno, line in enumerate(source, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            meta = CompanyMeta(
                company=str(obj["company"]),
                fortune_rank=obj.get("fortune_rank"),
                sector=obj.get("sector"),
            )
        except (json.JSONDecodeError, KeyError) as exc:
            raise BrandGaugeError(f"company metadata line {lineno}: {exc}")
        out[meta.company] = meta
    return out


def ascii_ratio(text: str) -> float:
    """Simple non-English heuristic input: share of ASCII characters."""
    if not text:
        return 1.0
    return sum(1 for c in text if ord(c) < 128) / len(text)
