"""Split annotated documents into sub-documents of usable context.

Two adjacent segments originally sat next to each other in the document
iff the next start offset is exactly two past the previous inclusive end
offset (one normalized space between them). A document's record sequence
is cut wherever that adjacency fails on either side, and additionally
around any record that itself fails a quality condition:

  * the segment was not found in the document on either side,
  * the language-id probability is not above the threshold on both sides,
  * the duplication count exceeds the threshold on either side.

Failing records are excluded (the cut happens around them); surviving
runs shorter than the minimum length are discarded. What remains are the
sub-documents: maximal runs of consecutive, criteria-passing segments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import PipelineError
from .records import AnnotatedRecord, SideAnnotation, SubDocument


@dataclass(frozen=True, slots=True)
class BreakConfig:
    """Thresholds controlling the three break conditions.

    Keeping is strict: a record survives with lid_prob strictly above
    lid_threshold and dup_count at most dup_threshold (strictly more
    breaks).
    """

    lid_threshold: float = 0.5
    dup_threshold: int = 100
    min_subdoc_len: int = 2

    def __post_init__(self) -> None:
        if not 0.0 <= self.lid_threshold <= 1.0:
            raise ValueError("lid_threshold outside [0, 1]")
        if self.min_subdoc_len < 2:
            raise ValueError("min_subdoc_len must be at least 2")


def is_consecutive(prev: SideAnnotation, nxt: SideAnnotation) -> bool:
    """True iff nxt directly followed prev in the original document.

    Not-found annotations are never consecutive with anything.
    """
    if not prev.found or not nxt.found:
        return False
    return nxt.start_char == prev.end_char + 2


def record_passes(record: AnnotatedRecord, cfg: BreakConfig) -> bool:
    """Per-record quality conditions; failing on either side excludes it."""
    for ann in (record.src_ann, record.tgt_ann):
        if not ann.found:
            return False
        if not ann.lid_prob > cfg.lid_threshold:
            return False
        if ann.dup_count is not None and ann.dup_count > cfg.dup_threshold:
            return False
    return True


def _pair_consecutive(prev: AnnotatedRecord, nxt: AnnotatedRecord) -> bool:
    return (is_consecutive(prev.src_ann, nxt.src_ann)
            and is_consecutive(prev.tgt_ann, nxt.tgt_ann))


def break_document(records: Sequence[AnnotatedRecord],
                   cfg: BreakConfig | None = None) -> list[SubDocument]:
    """Cut one document's record sequence into sub-documents.

    Records must all share one doc_id and be sorted by seg_index.
    Surviving runs are numbered doc_id#0, doc_id#1, ... in document order.
    """
    cfg = cfg or BreakConfig()
    if not records:
        return []
    doc_id = records[0].doc_id
    for prev, nxt in zip(records, records[1:]):
        if nxt.doc_id != doc_id:
            raise PipelineError(f"mixed doc_ids in one break call: "
                                f"{doc_id!r} vs {nxt.doc_id!r}")
        if nxt.seg_index <= prev.seg_index:
            raise PipelineError(f"records not sorted by seg_index in "
                                f"document {doc_id!r}")

    runs: list[list[AnnotatedRecord]] = []
    current: list[AnnotatedRecord] = []
    for record in records:
        if not record_passes(record, cfg):
            if current:
                runs.append(current)
                current = []
            continue
        if current and not _pair_consecutive(current[-1], record):
            runs.append(current)
            current = []
        current.append(record)
    if current:
        runs.append(current)

    subdocs: list[SubDocument] = []
    for run in runs:
        if len(run) < cfg.min_subdoc_len:
            continue
        subdocs.append(SubDocument(
            sub_doc_id=f"{doc_id}#{len(subdocs)}",
            records=tuple(run),
            parent_doc_id=doc_id,
        ))
    return subdocs


def validate_subdocument(subdoc: SubDocument, cfg: BreakConfig | None = None,
                         ) -> None:
    """Re-check every emitted sub-document invariant; raises on violation."""
    cfg = cfg or BreakConfig()
    if len(subdoc.records) < cfg.min_subdoc_len:
        raise ValueError(f"{subdoc.sub_doc_id}: shorter than minimum length")
    for record in subdoc.records:
        if record.doc_id != subdoc.parent_doc_id:
            raise ValueError(f"{subdoc.sub_doc_id}: foreign record "
                             f"{record.doc_id}/{record.seg_index}")
        if not record_passes(record, cfg):
            raise ValueError(f"{subdoc.sub_doc_id}: record "
                             f"{record.seg_index} fails a break condition")
    for prev, nxt in zip(subdoc.records, subdoc.records[1:]):
        if not _pair_consecutive(prev, nxt):
            raise ValueError(f"{subdoc.sub_doc_id}: records "
                             f"{prev.seg_index},{nxt.seg_index} not consecutive")
