"""Dataset statistics and quartile analysis of context-dependent phenomena.

dataset_stats counts segments and distinct sub-documents at each
filtering level. assign_quartiles splits a score ranking into four
count-balanced bins (quartile 1 = best scores); the distribution of
externally annotated pronoun examples over those quartiles shows whether
the document filter concentrates context-consistent translations at the
top of the ranking.

Phenomenon annotations come from an external TSV (sub_doc_id, category)
produced by a pronoun-annotation toolkit; this module only consumes it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import RecordParseError
from .records import AnnotatedRecord

LEVELS = ("docs", "loose75", "medium50", "strict25")

CATEGORIES = ("inter_fem", "inter_masc", "inter_neut",
              "intra_fem", "intra_masc", "intra_neut")


@dataclass(frozen=True, slots=True)
class PhenomenonExample:
    """One annotated gendered-pronoun example tied to a scored sub-document."""

    sub_doc_id: str
    category: str
    score: float

    def __post_init__(self) -> None:
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")


@dataclass(frozen=True, slots=True)
class LevelStats:
    n_segments: int
    n_subdocs: int


@dataclass
class StatsReport:
    """Segment and sub-document counts per filtering level."""

    levels: dict[str, LevelStats] = field(default_factory=dict)

    def __getitem__(self, level: str) -> LevelStats:
        return self.levels[level]


def dataset_stats(rows: Iterable[tuple[AnnotatedRecord, frozenset[str]]],
                  ) -> StatsReport:
    """Exact per-level counts over a stream of (record, kept_at tags).

    The "docs" level covers every record carrying a sub_doc_id; the three
    cutoff levels count records whose tags include them.
    """
    seg_counts = {level: 0 for level in LEVELS}
    subdoc_sets: dict[str, set[str]] = {level: set() for level in LEVELS}
    for record, kept_at in rows:
        if record.sub_doc_id is None:
            continue
        seg_counts["docs"] += 1
        subdoc_sets["docs"].add(record.sub_doc_id)
        for tag in kept_at:
            if tag in seg_counts:
                seg_counts[tag] += 1
                subdoc_sets[tag].add(record.sub_doc_id)
    return StatsReport(levels={
        level: LevelStats(seg_counts[level], len(subdoc_sets[level]))
        for level in LEVELS})


def assign_quartiles(scores: Sequence[float]) -> list[int]:
    """Quartile id (1..4) per score, 1 holding the highest scores.

    Bins are count-balanced: sizes differ by at most one, with earlier
    quartiles taking the remainder. Ties keep input order (stable sort).
    """
    for s in scores:
        if not math.isfinite(s):
            raise ValueError(f"non-finite score {s!r}")
    n = len(scores)
    if n == 0:
        return []
    order = sorted(range(n), key=lambda i: -scores[i])
    base, rem = divmod(n, 4)
    sizes = [base + (1 if q < rem else 0) for q in range(4)]
    result = [0] * n
    position = 0
    for quartile, size in enumerate(sizes, start=1):
        for idx in order[position:position + size]:
            result[idx] = quartile
        position += size
    return result


class QuartileAssignment:
    """Lookup from a score value to its quartile in a fixed corpus ranking.

    A score occurring in several quartiles (ties straddling a boundary)
    resolves to the best one, keeping the lookup deterministic.
    """

    def __init__(self, scores: Sequence[float]) -> None:
        quartiles = assign_quartiles(scores)
        table: dict[float, int] = {}
        for score, quartile in zip(scores, quartiles):
            best = table.get(score)
            if best is None or quartile < best:
                table[score] = quartile
        self._table = table

    def quartile_of(self, score: float) -> int:
        try:
            return self._table[score]
        except KeyError:
            raise KeyError(f"score {score!r} is not part of this "
                           "ranking") from None

    def __contains__(self, score: float) -> bool:
        return score in self._table


def phenomenon_distribution(examples: Sequence[PhenomenonExample],
                            quartiles: QuartileAssignment,
                            ) -> dict[str, list[float]]:
    """Row-normalized percentage of each category's examples per quartile.

    Every category present in the input gets a 4-entry row summing to 100
    (up to float arithmetic).
    """
    counts: dict[str, list[int]] = {}
    for example in examples:
        row = counts.setdefault(example.category, [0, 0, 0, 0])
        row[quartiles.quartile_of(example.score) - 1] += 1
    out: dict[str, list[float]] = {}
    for category in CATEGORIES:
        if category not in counts:
            continue
        row = counts[category]
        total = sum(row)
        out[category] = [100.0 * c / total for c in row]
    return out


def load_phenomenon_examples(path: str | Path,
                             scores_by_subdoc: Mapping[str, float],
                             ) -> list[PhenomenonExample]:
    """Read a (sub_doc_id, category) TSV and attach sub-document scores.

    Unknown categories and unknown sub-documents are input errors carrying
    the offending line number.
    """
    examples: list[PhenomenonExample] = []
    with open(path, encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise RecordParseError("expected 2 columns "
                                       "(sub_doc_id, category)", number)
            sub_doc_id, category = parts
            if category not in CATEGORIES:
                raise RecordParseError(f"unknown category {category!r}",
                                       number, "category")
            if sub_doc_id not in scores_by_subdoc:
                raise RecordParseError(f"unknown sub-document "
                                       f"{sub_doc_id!r}", number, "sub_doc_id")
            examples.append(PhenomenonExample(
                sub_doc_id, category, scores_by_subdoc[sub_doc_id]))
    return examples


def render_stats_table(report: StatsReport) -> str:
    """Aligned plain-text rendering of a stats report."""
    headers = ["level", "n_segments", "n_subdocs"]
    rows = [[level, str(report[level].n_segments),
             str(report[level].n_subdocs)] for level in LEVELS]
    return _render_table(headers, rows)


def render_distribution_table(dist: Mapping[str, Sequence[float]]) -> str:
    """Aligned plain-text rendering of a category x quartile table."""
    headers = ["category", "q1", "q2", "q3", "q4"]
    rows = [[category, *(f"{pct:.1f}" for pct in dist[category])]
            for category in CATEGORIES if category in dist]
    return _render_table(headers, rows)


def _render_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return "\n".join(lines)
