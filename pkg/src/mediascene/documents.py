"""Typed multimedia documents and their metadata.

A document describes one media asset (what it is, where it came from, what
it depicts) independently of how it is placed in a 3D scene. Two dates are
kept apart: ``publication_date`` is when the asset was published,
``reference_date`` is the moment the content depicts (future dates are
legal; planned projects are depicted too).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from typing import Any, Iterable

from .errors import InvalidParameterError, InvalidRangeError


class MediaKind(Enum):
    IMAGE = "image"
    ANIMATED_IMAGE = "animated_image"
    VIDEO = "video"
    VIDEO_360 = "video_360"
    TEXT = "text"
    PDF = "pdf"
    WEB_PAGE = "web_page"


@dataclass(frozen=True)
class MultimediaDocument:
    id: str
    kind: MediaKind
    source: str
    title: str = ""
    description: str = ""
    provenance_source: str = ""
    publication_date: date | None = None
    reference_date: date | None = None
    tags: frozenset[str] = frozenset()
    extensions: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.id:
            raise InvalidParameterError("document id must be non-empty")
        if not self.source:
            raise InvalidParameterError(f"document {self.id!r}: source must be non-empty")
        object.__setattr__(self, "tags", frozenset(self.tags))


@dataclass(frozen=True)
class Thumbnail:
    document_id: str
    image_source: str
    locked_image_source: str | None = None
    extensions: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.image_source:
            raise InvalidParameterError(
                f"thumbnail for {self.document_id!r}: image_source must be non-empty"
            )


@dataclass(frozen=True)
class DocumentFilter:
    """Conjunction of optional criteria; absent fields do not constrain.

    ``tags`` requires the document to carry every listed tag; ``kinds`` is
    a membership test; ``date_range`` is inclusive and matched against the
    reference date.
    """

    title_substring: str | None = None
    date_range: tuple[date, date] | None = None
    tags: frozenset[str] | None = None
    kinds: frozenset[MediaKind] | None = None

    def __post_init__(self):
        if self.date_range is not None:
            lo, hi = self.date_range
            if lo > hi:
                raise InvalidRangeError(f"date range start {lo} after end {hi}")
            object.__setattr__(self, "date_range", (lo, hi))
        if self.tags is not None:
            object.__setattr__(self, "tags", frozenset(self.tags))
        if self.kinds is not None:
            object.__setattr__(self, "kinds", frozenset(self.kinds))

    def matches(self, doc: MultimediaDocument) -> bool:
        if (
            self.title_substring is not None
            and self.title_substring.lower() not in doc.title.lower()
        ):
            return False
        if self.date_range is not None:
            if doc.reference_date is None:
                return False
            lo, hi = self.date_range
            if not lo <= doc.reference_date <= hi:
                return False
        if self.tags is not None and not self.tags <= doc.tags:
            return False
        if self.kinds is not None and doc.kind not in self.kinds:
            return False
        return True


def filter_documents(
    docs: Iterable[MultimediaDocument], criteria: DocumentFilter
) -> list[MultimediaDocument]:
    """Documents satisfying every present criterion, in input order."""
    return [d for d in docs if criteria.matches(d)]


def sort_by_reference_date(docs: Iterable[MultimediaDocument]) -> list[MultimediaDocument]:
    """Stable ascending sort by reference date; undated documents go last."""
    return sorted(docs, key=lambda d: (d.reference_date is None, d.reference_date or date.min))
