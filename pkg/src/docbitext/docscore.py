"""Sliding-window document quality scoring and top-fraction selection.

A sub-document is scored by sliding a window over its segments, scoring
each window's concatenated source/target texts with a quality-estimation
backend, and averaging the window scores. Sub-documents are then ranked
per corpus and the top 75/50/25% retained as progressively stricter
filtering levels.

Windows start at offsets 0, stride, 2*stride, ...; the final window is
clipped at the document boundary and emission stops once a window reaches
the end, so at stride 1 a document of n >= w segments yields exactly
n - w + 1 windows. Sub-documents shorter than the window get one
whole-document window rather than being dropped.

The real QE model lives behind ScorerHandle (local) or an HTTP service
(remote_score_batch). mock_score is the deterministic stand-in used in
tests and offline runs: trigram-set overlap, cheap and model-free.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import requests

from .errors import ProtocolError, ScoringError, SchemaError, RecordParseError
from .records import ABSENT, COLUMNS, AnnotatedRecord, SubDocument, \
    parse_record, serialize_record

MOCK_BACKEND_ID = "mock-trigram-v1"

# Filtering levels: tag -> retained fraction of the score ranking.
CUTOFF_FRACTIONS = {"loose75": 0.75, "medium50": 0.50, "strict25": 0.25}


@dataclass(frozen=True, slots=True)
class WindowConfig:
    window: int = 3
    stride: int = 1

    def __post_init__(self) -> None:
        if self.window < 1 or self.stride < 1:
            raise ValueError("window and stride must be positive")


@dataclass(frozen=True)
class ScorerHandle:
    """A batch QE scorer: order-preserving, one score in [0,1] per pair."""

    identifier: str
    score_batch: Callable[[Sequence[tuple[str, str]]], list[float]]


@dataclass(frozen=True, slots=True)
class ScoredSubDocument:
    """A sub-document's document-level score and its filtering decisions."""

    sub_doc_id: str
    n_segments: int
    score: float
    kept_at: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if self.n_segments < 1:
            raise ValueError("n_segments must be positive")
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score {self.score} outside [0, 1]")


def _trigrams(text: str) -> set[str]:
    # Strings shorter than a trigram contribute themselves as one gram, so
    # equal short strings still compare as equal sets.
    return {text[i:i + 3] for i in range(max(1, len(text) - 2))}


def mock_score(src: str, tgt: str) -> float:
    """Deterministic QE stand-in: lowercased character-trigram set overlap.

    |A n B| / max(1, |A u B|); symmetric, 1.0 exactly when the trigram
    sets coincide, 0.0 when they are disjoint.
    """
    a = _trigrams(src.lower())
    b = _trigrams(tgt.lower())
    return len(a & b) / max(1, len(a | b))


def mock_scorer() -> ScorerHandle:
    return ScorerHandle(
        MOCK_BACKEND_ID,
        lambda pairs: [mock_score(s, t) for s, t in pairs])


def windows(subdoc: SubDocument, cfg: WindowConfig | None = None,
            ) -> list[tuple[str, str]]:
    """Window texts for one sub-document, each side joined by single spaces."""
    cfg = cfg or WindowConfig()
    src_texts = [r.src_text for r in subdoc.records]
    tgt_texts = [r.tgt_text for r in subdoc.records]
    n = len(src_texts)
    out: list[tuple[str, str]] = []
    i = 0
    while i < n:
        end = min(i + cfg.window, n)
        out.append((" ".join(src_texts[i:end]), " ".join(tgt_texts[i:end])))
        if end >= n:
            break
        i += cfg.stride
    return out


def score_subdoc(subdoc: SubDocument, scorer: ScorerHandle,
                 cfg: WindowConfig | None = None) -> float:
    """Arithmetic mean of the per-window QE scores.

    All-or-nothing: a scorer failure aborts the sub-document rather than
    averaging partial results.
    """
    wins = windows(subdoc, cfg)
    try:
        scores = scorer.score_batch(wins)
    except ScoringError:
        raise
    except Exception as exc:
        raise ScoringError(f"scorer {scorer.identifier!r} failed on "
                           f"{subdoc.sub_doc_id} ({len(wins)} windows): {exc}"
                           ) from exc
    if len(scores) != len(wins):
        raise ProtocolError(f"scorer returned {len(scores)} scores for "
                            f"{len(wins)} windows on {subdoc.sub_doc_id}")
    return sum(scores) / len(scores)


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def select_top(scored: Sequence[ScoredSubDocument],
               fraction: float) -> list[ScoredSubDocument]:
    """Keep the top round(fraction * N) sub-documents by score.

    Ranking is descending by score with ties broken by ascending
    sub_doc_id, so releases are reproducible. Returns the kept
    sub-documents in rank order.
    """
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction {fraction} outside (0, 1]")
    ranked = sorted(scored, key=lambda s: (-s.score, s.sub_doc_id))
    return ranked[:_round_half_up(fraction * len(ranked))]


def assign_cutoff_tags(scored: Sequence[ScoredSubDocument],
                       ) -> list[ScoredSubDocument]:
    """Stamp each sub-document with the filtering levels that keep it.

    Tags nest by construction: anything kept at strict25 is kept at
    medium50 and loose75. Input order is preserved.
    """
    n = len(scored)
    if n == 0:
        return []
    ranked = sorted(scored, key=lambda s: (-s.score, s.sub_doc_id))
    rank_of = {s.sub_doc_id: i for i, s in enumerate(ranked)}
    keep_counts = {tag: _round_half_up(frac * n)
                   for tag, frac in CUTOFF_FRACTIONS.items()}
    out = []
    for s in scored:
        rank = rank_of[s.sub_doc_id]
        tags = frozenset(tag for tag, k in keep_counts.items() if rank < k)
        out.append(replace(s, kept_at=tags))
    return out


def remote_score_batch(pairs: Sequence[tuple[str, str]], endpoint: str,
                       batch_size: int = 128, max_retries: int = 3,
                       backoff: float = 0.5, timeout: float = 60.0,
                       workers: int = 1,
                       session: requests.Session | None = None) -> list[float]:
    """Score pairs against a scoring service, preserving input order.

    Requests go out in batches of batch_size to POST {endpoint}/score,
    fanned out over up to `workers` concurrent requests with results
    restored to input order. Transient failures (connection errors, 5xx,
    429) are retried with exponential backoff; anything else, or
    exhaustion of retries, raises ScoringError naming the failing batch.
    A response whose score count disagrees with its request raises
    ProtocolError.
    """
    if batch_size < 1:
        raise ValueError("batch_size must be positive")
    if workers < 1:
        raise ValueError("workers must be positive")
    url = endpoint.rstrip("/") + "/score"
    batches = [pairs[start:start + batch_size]
               for start in range(0, len(pairs), batch_size)]

    def score_one(item: tuple[int, Sequence[tuple[str, str]]],
                  sess: requests.Session | None) -> list[float]:
        batch_index, batch = item
        payload = {"pairs": [{"src": s, "tgt": t} for s, t in batch]}
        response = _post_with_retries(sess, url, payload, batch_index,
                                      max_retries, backoff, timeout)
        body = response.json()
        got = body.get("scores")
        if not isinstance(got, list) or len(got) != len(batch):
            raise ProtocolError(
                f"service returned {len(got) if isinstance(got, list) else 'no'} "
                f"scores for {len(batch)} pairs", batch_index=batch_index)
        return [float(x) for x in got]

    scores: list[float] = []
    if workers == 1 or len(batches) <= 1:
        own_session = session is None
        sess = session or requests.Session()
        try:
            for item in enumerate(batches):
                scores.extend(score_one(item, sess))
        finally:
            if own_session:
                sess.close()
    else:
        # Sessions are not shared across threads; each request stands alone.
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(lambda item: score_one(item, None),
                                  enumerate(batches)):
                scores.extend(chunk)
    return scores


def _post_with_retries(sess: requests.Session | None, url: str, payload: dict,
                       batch_index: int, max_retries: int, backoff: float,
                       timeout: float) -> requests.Response:
    post = sess.post if sess is not None else requests.post
    last_error = "no attempt made"
    for attempt in range(max_retries + 1):
        try:
            response = post(url, json=payload, timeout=timeout)
        except requests.RequestException as exc:
            last_error = str(exc)
        else:
            if response.status_code // 100 == 2:
                return response
            last_error = f"HTTP {response.status_code}"
            if response.status_code not in (429,) and response.status_code < 500:
                raise ScoringError(f"service rejected request: {last_error}",
                                   batch_index=batch_index)
        if attempt < max_retries:
            time.sleep(backoff * (2 ** attempt))
    raise ScoringError(f"service unreachable after {max_retries + 1} "
                       f"attempts: {last_error}", batch_index=batch_index)


def remote_scorer(endpoint: str, batch_size: int = 128,
                  workers: int = 1,
                  session: requests.Session | None = None) -> ScorerHandle:
    """ScorerHandle backed by a remote scoring service."""
    return ScorerHandle(
        f"remote:{endpoint}",
        lambda pairs: remote_score_batch(pairs, endpoint,
                                         batch_size=batch_size,
                                         workers=workers,
                                         session=session))


def score_subdocuments(subdocs: Sequence[SubDocument], scorer: ScorerHandle,
                       cfg: WindowConfig | None = None,
                       ) -> list[ScoredSubDocument]:
    """Score many sub-documents through one batched scorer pass.

    All windows are flattened into a single score_batch call (the remote
    backend re-batches internally), then averaged per sub-document; the
    result is identical to scoring each sub-document alone.
    """
    cfg = cfg or WindowConfig()
    per_subdoc = [windows(sd, cfg) for sd in subdocs]
    flat: list[tuple[str, str]] = [w for wins in per_subdoc for w in wins]
    scores = scorer.score_batch(flat)
    if len(scores) != len(flat):
        raise ProtocolError(f"scorer returned {len(scores)} scores for "
                            f"{len(flat)} windows")
    out: list[ScoredSubDocument] = []
    offset = 0
    for subdoc, wins in zip(subdocs, per_subdoc):
        chunk = scores[offset:offset + len(wins)]
        offset += len(wins)
        out.append(ScoredSubDocument(
            sub_doc_id=subdoc.sub_doc_id,
            n_segments=len(subdoc),
            score=sum(chunk) / len(chunk),
        ))
    return out


def serialize_scored_row(record: AnnotatedRecord,
                         kept_at: frozenset[str]) -> str:
    """A record line plus the kept_at tag column (comma-joined, '-' if none)."""
    tags = ",".join(sorted(kept_at)) if kept_at else ABSENT
    return serialize_record(record) + "\t" + tags


def parse_scored_row(line: str, line_number: int | None = None,
                     ) -> tuple[AnnotatedRecord, frozenset[str]]:
    fields = line.rstrip("\n").split("\t")
    if len(fields) != len(COLUMNS) + 1:
        raise SchemaError(
            f"expected {len(COLUMNS) + 1} columns (record + kept_at), "
            f"got {len(fields)}"
            + (f" at line {line_number}" if line_number is not None else ""))
    record = parse_record("\t".join(fields[:-1]), line_number)
    tag_field = fields[-1]
    if tag_field == ABSENT:
        return record, frozenset()
    tags = frozenset(tag_field.split(","))
    unknown = tags - CUTOFF_FRACTIONS.keys()
    if unknown:
        raise RecordParseError(f"unknown kept_at tags {sorted(unknown)}",
                               line_number, "kept_at")
    return record, tags
