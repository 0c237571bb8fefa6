"""Independent brute-force oracles the implementation is checked against.

Everything here is deliberately written as a different formulation from
the production code path (index slicing instead of streaming scans,
materialized sorts instead of incremental ranking) so a shared bug cannot
hide on both sides.
"""

from __future__ import annotations

from collections import Counter
from decimal import ROUND_HALF_UP, Decimal
from typing import Sequence

from docbitext.records import AnnotatedRecord


def naive_window_ranges(n: int, window: int, stride: int,
                        ) -> list[tuple[int, int]]:
    """Enumerate window index ranges [start, end) over n segments.

    Full windows sit at every stride offset that fits; if the last full
    window stops short of the end, one clipped tail window at the next
    offset covers the remainder (when that offset still lies inside the
    document). Documents shorter than the window get a single
    whole-document window.
    """
    if n <= window:
        return [(0, n)]
    offsets = list(range(0, n - window + 1, stride))
    ranges = [(i, i + window) for i in offsets]
    nxt = offsets[-1] + stride
    if ranges[-1][1] < n and nxt < n:
        ranges.append((nxt, n))
    return ranges


def naive_subdoc_score(subdoc_pairs: Sequence[tuple[str, str]],
                       window: int, stride: int, score_fn) -> float:
    """Mean window score via explicit enumeration and joining."""
    n = len(subdoc_pairs)
    scores = []
    for start, end in naive_window_ranges(n, window, stride):
        src = " ".join(p[0] for p in subdoc_pairs[start:end])
        tgt = " ".join(p[1] for p in subdoc_pairs[start:end])
        scores.append(score_fn(src, tgt))
    return sum(scores) / len(scores)


def _record_excluded(record: AnnotatedRecord, lid_threshold: float,
                     dup_threshold: int) -> bool:
    for ann in (record.src_ann, record.tgt_ann):
        if ann.start_char is None:
            return True
        if ann.lid_prob <= lid_threshold:
            return True
        if ann.dup_count is not None and ann.dup_count > dup_threshold:
            return True
    return False


def naive_break(records: Sequence[AnnotatedRecord], lid_threshold: float,
                dup_threshold: int, min_len: int,
                ) -> list[list[AnnotatedRecord]]:
    """Index-slicing splitter: exclude, cut, filter by length."""
    n = len(records)
    excluded = [_record_excluded(r, lid_threshold, dup_threshold)
                for r in records]
    # Candidate intervals between excluded records.
    intervals: list[tuple[int, int]] = []
    start = 0
    for i in range(n + 1):
        if i == n or excluded[i]:
            if i > start:
                intervals.append((start, i))
            start = i + 1
    # Cut each interval at non-consecutive adjacent pairs.
    runs: list[list[AnnotatedRecord]] = []
    for lo, hi in intervals:
        cuts = [lo]
        for i in range(lo + 1, hi):
            prev, nxt = records[i - 1], records[i]
            src_ok = nxt.src_ann.start_char == prev.src_ann.end_char + 2
            tgt_ok = nxt.tgt_ann.start_char == prev.tgt_ann.end_char + 2
            if not (src_ok and tgt_ok):
                cuts.append(i)
        cuts.append(hi)
        for a, b in zip(cuts, cuts[1:]):
            if b - a >= min_len:
                runs.append(list(records[a:b]))
    return runs


def half_up(value: Decimal) -> int:
    return int(value.quantize(Decimal("1"), rounding=ROUND_HALF_UP))


def naive_select_ids(items: Sequence[tuple[str, float]],
                     fraction: float) -> set[str]:
    """Kept sub_doc_ids by materialized sort and decimal half-up slice."""
    ranked = sorted(items, key=lambda it: (-it[1], it[0]))
    k = half_up(Decimal(str(fraction)) * len(ranked))
    return {sub_doc_id for sub_doc_id, _ in ranked[:k]}


def naive_quartiles(scores: Sequence[float]) -> list[int]:
    """Quartile per input position via a materialized descending sort."""
    n = len(scores)
    order = sorted(range(n), key=lambda i: (-scores[i], i))
    # Count-balanced: the first n % 4 quartiles take the extra element.
    base, rem = divmod(n, 4)
    sizes = [base + 1] * rem + [base] * (4 - rem)
    result = [0] * n
    pos = 0
    for quartile, size in enumerate(sizes, start=1):
        for idx in order[pos:pos + size]:
            result[idx] = quartile
        pos += size
    return result


def naive_pair_counts(pairs: Sequence[tuple[str, str]]) -> Counter:
    """Recount of per-side text occurrences."""
    counter: Counter = Counter()
    counter.update(("src", s) for s, _ in pairs)
    counter.update(("tgt", t) for _, t in pairs)
    return counter


def naive_dedup(pairs: Sequence[tuple[str, str]]) -> list[tuple[str, str]]:
    return list(dict.fromkeys(pairs))
