"""Record schema for annotated bitext and its bit-exact TSV serialization.

One record is one aligned source/target segment pair plus per-side span,
language-id, and duplication annotations. Every pipeline stage reads and
writes this format, so the encoding is fixed:

    corpus_id  doc_id  seg_index  src_text  tgt_text
    src_paragraph_idx  src_sentence_idx  src_start_char  src_end_char
    src_lid_prob  src_dup_count
    tgt_paragraph_idx  tgt_sentence_idx  tgt_start_char  tgt_end_char
    tgt_lid_prob  tgt_dup_count
    sub_doc_id  slide_score

Tab-separated, UTF-8, LF line endings. Absent optional fields are "-".
Floats are written with exactly 4 decimal places, which also means
lid_prob and slide_score are stored at 4-decimal precision: a record
whose floats are multiples of 1e-4 round-trips bit-exactly.

A side whose segment text could not be located in its monolingual
document carries a not-found marker: all four span fields are "-" while
lid_prob (computed from the text itself) stays present.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Iterator

from .errors import EncodingError, RecordParseError, SchemaError

CORPUS_TAGS = ("paracrawl", "news_commentary", "europarl", "other")

COLUMNS = (
    "corpus_id", "doc_id", "seg_index", "src_text", "tgt_text",
    "src_paragraph_idx", "src_sentence_idx", "src_start_char",
    "src_end_char", "src_lid_prob", "src_dup_count",
    "tgt_paragraph_idx", "tgt_sentence_idx", "tgt_start_char",
    "tgt_end_char", "tgt_lid_prob", "tgt_dup_count",
    "sub_doc_id", "slide_score",
)

ABSENT = "-"


@dataclass(frozen=True, slots=True)
class SideAnnotation:
    """Per-side annotations of one segment against its monolingual document.

    start_char/end_char are offsets into the whitespace-normalized document
    text; end_char is inclusive. The four span fields are either all set
    (segment found) or all None (not-found marker).
    """

    paragraph_idx: int | None
    sentence_idx: int | None
    start_char: int | None
    end_char: int | None
    lid_prob: float
    dup_count: int | None = None

    def __post_init__(self) -> None:
        span = (self.paragraph_idx, self.sentence_idx,
                self.start_char, self.end_char)
        present = [v for v in span if v is not None]
        if present and len(present) != len(span):
            raise ValueError("span fields must be all set or all absent")
        if present:
            if min(present) < 0:
                raise ValueError("span fields must be non-negative")
            if self.start_char > self.end_char:
                raise ValueError(
                    f"start_char {self.start_char} > end_char {self.end_char}")
        if not 0.0 <= self.lid_prob <= 1.0:
            raise ValueError(f"lid_prob {self.lid_prob} outside [0, 1]")
        if self.dup_count is not None and self.dup_count < 0:
            raise ValueError("dup_count must be non-negative")

    @property
    def found(self) -> bool:
        return self.start_char is not None


NOT_FOUND_SPAN = (None, None, None, None)


@dataclass(frozen=True, slots=True)
class AnnotatedRecord:
    """One aligned segment pair with both sides' annotations."""

    corpus_id: str
    doc_id: str
    seg_index: int
    src_text: str
    tgt_text: str
    src_ann: SideAnnotation
    tgt_ann: SideAnnotation
    sub_doc_id: str | None = None
    slide_score: float | None = None

    def __post_init__(self) -> None:
        if self.corpus_id not in CORPUS_TAGS:
            raise ValueError(f"unknown corpus_id {self.corpus_id!r}")
        if self.seg_index < 0:
            raise ValueError("seg_index must be non-negative")
        if self.slide_score is not None and not 0.0 <= self.slide_score <= 1.0:
            raise ValueError(f"slide_score {self.slide_score} outside [0, 1]")


@dataclass(frozen=True, slots=True)
class SubDocument:
    """A maximal run of consecutive, criteria-passing records in one document."""

    sub_doc_id: str
    records: tuple[AnnotatedRecord, ...]
    parent_doc_id: str

    def __post_init__(self) -> None:
        if len(self.records) < 2:
            raise ValueError("a sub-document holds at least two records")

    def __len__(self) -> int:
        return len(self.records)

    def tagged_records(self) -> Iterator[AnnotatedRecord]:
        """Records with sub_doc_id stamped in, for serialization."""
        for r in self.records:
            yield replace(r, sub_doc_id=self.sub_doc_id)


def _fmt_opt_int(value: int | None) -> str:
    return ABSENT if value is None else str(value)


def _fmt_float(value: float) -> str:
    return f"{value:.4f}"


def _fmt_opt_float(value: float | None) -> str:
    return ABSENT if value is None else f"{value:.4f}"


def _fmt_side(ann: SideAnnotation) -> list[str]:
    return [
        _fmt_opt_int(ann.paragraph_idx),
        _fmt_opt_int(ann.sentence_idx),
        _fmt_opt_int(ann.start_char),
        _fmt_opt_int(ann.end_char),
        _fmt_float(ann.lid_prob),
        _fmt_opt_int(ann.dup_count),
    ]


def serialize_record(record: AnnotatedRecord) -> str:
    """Encode a record as one TSV line (no trailing newline).

    Deterministic and injective on valid records. Raises EncodingError if
    a text field still contains a tab or newline; normalization upstream
    is responsible for removing those.
    """
    for name, text in (("src_text", record.src_text),
                       ("tgt_text", record.tgt_text),
                       ("doc_id", record.doc_id),
                       ("sub_doc_id", record.sub_doc_id or "")):
        if "\t" in text or "\n" in text or "\r" in text:
            raise EncodingError(f"{name} contains tab or newline; "
                                "normalize before serializing")
    fields = [
        record.corpus_id,
        record.doc_id,
        str(record.seg_index),
        record.src_text,
        record.tgt_text,
        *_fmt_side(record.src_ann),
        *_fmt_side(record.tgt_ann),
        record.sub_doc_id if record.sub_doc_id is not None else ABSENT,
        _fmt_opt_float(record.slide_score),
    ]
    return "\t".join(fields)


def _parse_opt_int(field: str, column: str, line_number: int | None) -> int | None:
    if field == ABSENT:
        return None
    try:
        return int(field)
    except ValueError:
        raise RecordParseError(f"expected integer, got {field!r}",
                               line_number, column) from None


def _parse_float(field: str, column: str, line_number: int | None) -> float:
    try:
        return float(field)
    except ValueError:
        raise RecordParseError(f"expected number, got {field!r}",
                               line_number, column) from None


def parse_record(line: str, line_number: int | None = None) -> AnnotatedRecord:
    """Decode one TSV line into a validated AnnotatedRecord.

    Raises SchemaError on a wrong column count and RecordParseError
    (naming the column and line) on unparseable fields.
    """
    fields = line.rstrip("\n").split("\t")
    if len(fields) != len(COLUMNS):
        raise SchemaError(
            f"expected {len(COLUMNS)} columns "
            f"({', '.join(COLUMNS[:3])}, ...), got {len(fields)}"
            + (f" at line {line_number}" if line_number is not None else ""))
    row = dict(zip(COLUMNS, fields))

    def side(prefix: str) -> SideAnnotation:
        try:
            return SideAnnotation(
                paragraph_idx=_parse_opt_int(row[f"{prefix}_paragraph_idx"],
                                             f"{prefix}_paragraph_idx", line_number),
                sentence_idx=_parse_opt_int(row[f"{prefix}_sentence_idx"],
                                            f"{prefix}_sentence_idx", line_number),
                start_char=_parse_opt_int(row[f"{prefix}_start_char"],
                                          f"{prefix}_start_char", line_number),
                end_char=_parse_opt_int(row[f"{prefix}_end_char"],
                                        f"{prefix}_end_char", line_number),
                lid_prob=_parse_float(row[f"{prefix}_lid_prob"],
                                      f"{prefix}_lid_prob", line_number),
                dup_count=_parse_opt_int(row[f"{prefix}_dup_count"],
                                         f"{prefix}_dup_count", line_number),
            )
        except ValueError as exc:
            if isinstance(exc, RecordParseError):
                raise
            raise RecordParseError(str(exc), line_number,
                                   f"{prefix} annotation") from None

    try:
        seg_index = int(row["seg_index"])
    except ValueError:
        raise RecordParseError(f"expected integer, got {row['seg_index']!r}",
                               line_number, "seg_index") from None
    slide = row["slide_score"]
    try:
        return AnnotatedRecord(
            corpus_id=row["corpus_id"],
            doc_id=row["doc_id"],
            seg_index=seg_index,
            src_text=row["src_text"],
            tgt_text=row["tgt_text"],
            src_ann=side("src"),
            tgt_ann=side("tgt"),
            sub_doc_id=None if row["sub_doc_id"] == ABSENT else row["sub_doc_id"],
            slide_score=None if slide == ABSENT
            else _parse_float(slide, "slide_score", line_number),
        )
    except ValueError as exc:
        if isinstance(exc, RecordParseError):
            raise
        raise RecordParseError(str(exc), line_number) from None


def read_records(path: str | Path) -> Iterator[AnnotatedRecord]:
    """Stream records from a TSV file, reporting line numbers on errors."""
    with open(path, encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if line.strip() == "":
                continue
            yield parse_record(line, line_number=number)


def write_records(path: str | Path, records: Iterable[AnnotatedRecord]) -> int:
    """Write records as TSV. Returns the number of lines written."""
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        for record in records:
            handle.write(serialize_record(record))
            handle.write("\n")
            count += 1
    return count
