"""Per-year drill-down: most-cited authors and works with shares.

Given a referenced publication year (typically a detected peak), these
queries answer "who and what drives the citations to that year".  The
share denominator is ALL references to that year, including ones whose
author could not be parsed; those appear as an explicit unattributed
count rather than silently shrinking the denominator.
"""

from __future__ import annotations

from dataclasses import dataclass

from .corpus import Corpus, RefKey, reference_key
from .spectrum import Peak
from .textnorm import UNKNOWN_AUTHOR

__all__ = [
    "AuthorShare",
    "WorkShare",
    "YearProfile",
    "AuthorWorkBreakdown",
    "round_share",
    "drill_year",
    "author_breakdown",
    "profile_all_peaks",
]


@dataclass(frozen=True, slots=True)
class AuthorShare:
    name: str
    count: int
    share: float


@dataclass(frozen=True, slots=True)
class WorkShare:
    key: RefKey
    count: int
    share: float


@dataclass(frozen=True, slots=True)
class YearProfile:
    """Top authors and works cited for one referenced publication year."""

    year: int
    total_refs: int
    author_rows: tuple[AuthorShare, ...]
    work_rows: tuple[WorkShare, ...]
    unattributed: int


@dataclass(frozen=True, slots=True)
class AuthorWorkBreakdown:
    """One author's cited works within one year, with within-author shares."""

    author: str
    year: int
    total_refs: int
    rows: tuple[WorkShare, ...]


def round_share(count: int, total: int) -> float:
    """Percentage share rounded to one decimal, halves away from zero.

    Integer arithmetic throughout: share reporting must not depend on
    binary float rounding (13/24 is 54.1666..%, reported 54.2).
    """
    if total <= 0:
        raise ValueError("share denominator must be positive")
    if count < 0:
        raise ValueError("share numerator must be non-negative")
    return ((2000 * count + total) // (2 * total)) / 10.0


def _year_refs(corpus: Corpus, year: int):
    for ref in corpus.iter_refs():
        if ref.year == year:
            yield ref


def drill_year(corpus: Corpus, year: int, top_k: int = 10) -> YearProfile:
    """Most-cited first authors and works for one year.

    Rows are sorted by count descending then name/key ascending and
    truncated to ``top_k``; shares are percentages of all references to
    the year.  A year with no references yields an empty profile.
    """
    if top_k < 1:
        raise ValueError("top_k must be at least 1")
    author_counts: dict[str, int] = {}
    work_counts: dict[RefKey, int] = {}
    total = 0
    unattributed = 0
    for ref in _year_refs(corpus, year):
        total += 1
        if ref.first_author is None:
            unattributed += 1
        else:
            author_counts[ref.first_author] = author_counts.get(ref.first_author, 0) + 1
        key = reference_key(ref)
        work_counts[key] = work_counts.get(key, 0) + 1

    authors = sorted(author_counts.items(), key=lambda kv: (-kv[1], kv[0]))[:top_k]
    works = sorted(work_counts.items(), key=lambda kv: (-kv[1], kv[0]))[:top_k]
    return YearProfile(
        year=year,
        total_refs=total,
        author_rows=tuple(
            AuthorShare(name, count, round_share(count, total)) for name, count in authors
        ),
        work_rows=tuple(
            WorkShare(key, count, round_share(count, total)) for key, count in works
        ),
        unattributed=unattributed,
    )


def author_breakdown(corpus: Corpus, author: str, year: int) -> AuthorWorkBreakdown:
    """One author's works cited in one year, shares within the author.

    ``author`` must already be in normalized form (as produced by
    normalize_author and reported by drill_year).  An author absent in
    that year yields an empty breakdown.
    """
    if author == UNKNOWN_AUTHOR:
        raise ValueError("cannot break down the unattributed bucket by work")
    work_counts: dict[RefKey, int] = {}
    total = 0
    for ref in _year_refs(corpus, year):
        if ref.first_author != author:
            continue
        total += 1
        key = reference_key(ref)
        work_counts[key] = work_counts.get(key, 0) + 1

    works = sorted(work_counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return AuthorWorkBreakdown(
        author=author,
        year=year,
        total_refs=total,
        rows=tuple(
            WorkShare(key, count, round_share(count, total)) for key, count in works
        ),
    )


def profile_all_peaks(
    corpus: Corpus, peaks: list[Peak], top_k: int = 10
) -> list[YearProfile]:
    """One YearProfile per peak, in ascending year order (not peak rank)."""
    return [drill_year(corpus, year, top_k) for year in sorted(p.year for p in peaks)]
