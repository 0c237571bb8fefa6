"""Align bitext segments back into their monolingual documents.

Each segment is located in the normalized document text via exact string
matching, walking forward through the document so repeated text anchors
to the occurrence that preserves document flow. From the matched span we
derive the paragraph index, sentence index, and character offsets; a
language-id probability and corpus-wide duplication count complete the
per-side annotation.

Duplication counting is the first pass of a two-pass pipeline: counts
need global visibility over the corpus before any document is annotated.
At desk scale an in-memory table suffices; shard the counting and merge
tables if a corpus outgrows memory.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import PipelineError
from .monodoc import MonoDocument
from .records import AnnotatedRecord, SideAnnotation

SRC = "src"
TGT = "tgt"


@dataclass(frozen=True)
class ClassifierHandle:
    """A language-id classifier behind a stable interface.

    classify(text, target_lang) returns the probability that text is in
    target_lang, in [0, 1], deterministic for fixed inputs. Real fastText
    style models plug in here; tests use lookup tables.
    """

    identifier: str
    classify: Callable[[str, str], float]


def constant_classifier(prob: float = 1.0) -> ClassifierHandle:
    return ClassifierHandle(f"constant:{prob}", lambda text, lang: prob)


def table_classifier(table: dict[str, float],
                     default: float = 1.0) -> ClassifierHandle:
    """Classifier returning per-text probabilities from a lookup table."""
    return ClassifierHandle("table", lambda text, lang: table.get(text, default))


@dataclass
class DupTable:
    """Exact corpus-wide occurrence counts per (side, segment text)."""

    counts: dict[tuple[str, str], int] = field(default_factory=dict)

    def add(self, side: str, text: str) -> None:
        key = (side, text)
        self.counts[key] = self.counts.get(key, 0) + 1

    def count(self, side: str, text: str) -> int:
        return self.counts.get((side, text), 0)

    def __len__(self) -> int:
        return len(self.counts)


def count_duplicates(pairs: Iterable[tuple[str, str]]) -> DupTable:
    """First pipeline pass: exact occurrence counts for every side text."""
    table = DupTable()
    for src_text, tgt_text in pairs:
        table.add(SRC, src_text)
        table.add(TGT, tgt_text)
    return table


def match_segment(doc: MonoDocument, segment_text: str,
                  search_from: int = 0) -> tuple[int, int] | None:
    """Locate the leftmost exact occurrence of a segment at or after an offset.

    Falls back to the leftmost occurrence overall when nothing matches at
    or after search_from; returns None when the text is absent entirely.
    end_char is inclusive.
    """
    if not segment_text:
        raise ValueError("segment_text must be non-empty")
    start = doc.norm_text.find(segment_text, search_from)
    if start == -1 and search_from > 0:
        start = doc.norm_text.find(segment_text)
    if start == -1:
        return None
    return start, start + len(segment_text) - 1


def _annotate_side(doc: MonoDocument, text: str, search_from: int,
                   lid: ClassifierHandle, dups: DupTable | None,
                   side: str) -> tuple[SideAnnotation, int]:
    """Annotate one side of a segment; returns (annotation, next search_from)."""
    lid_prob = lid.classify(text, doc.lang) if text else 0.0
    dup_count = dups.count(side, text) if dups is not None else None
    span = match_segment(doc, text, search_from) if text else None
    if span is None:
        ann = SideAnnotation(None, None, None, None,
                             lid_prob=lid_prob, dup_count=dup_count)
        return ann, search_from
    start, end = span
    ann = SideAnnotation(
        paragraph_idx=doc.paragraph_of[start],
        sentence_idx=doc.sentence_index_at(start),
        start_char=start,
        end_char=end,
        lid_prob=lid_prob,
        dup_count=dup_count,
    )
    return ann, end + 1


def annotate_document(doc_pair: tuple[MonoDocument, MonoDocument],
                      segments: Iterable[tuple[str, str]],
                      lid: ClassifierHandle,
                      dups: DupTable | None = None,
                      corpus_id: str = "other") -> list[AnnotatedRecord]:
    """Second pipeline pass: annotate every segment pair of one document.

    Segments must arrive in original bitext order. Matching on each side
    resumes just past the previous match, so duplicated text anchors to
    successive occurrences. Segments absent from a document are emitted
    with a not-found marker on that side rather than dropped. Pass dups
    only for corpora with meaningful boilerplate counts; other corpora
    leave dup_count unannotated.
    """
    src_doc, tgt_doc = doc_pair
    if src_doc.doc_id != tgt_doc.doc_id:
        raise PipelineError(f"document sides disagree: "
                            f"{src_doc.doc_id!r} vs {tgt_doc.doc_id!r}")
    records: list[AnnotatedRecord] = []
    search_src = 0
    search_tgt = 0
    for seg_index, (src_text, tgt_text) in enumerate(segments):
        src_ann, search_src = _annotate_side(
            src_doc, src_text, search_src, lid, dups, SRC)
        tgt_ann, search_tgt = _annotate_side(
            tgt_doc, tgt_text, search_tgt, lid, dups, TGT)
        records.append(AnnotatedRecord(
            corpus_id=corpus_id,
            doc_id=src_doc.doc_id,
            seg_index=seg_index,
            src_text=src_text,
            tgt_text=tgt_text,
            src_ann=src_ann,
            tgt_ann=tgt_ann,
        ))
    return records
