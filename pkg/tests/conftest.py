"""Shared fixtures and deterministic generators for the test suite."""

from __future__ import annotations

import random
import string

import pytest

from docbitext.records import AnnotatedRecord, SideAnnotation, SubDocument

WORDS = ("alpha", "beta", "gamma", "delta", "omega", "nova", "terra",
         "lumen", "orbit", "quartz", "ember", "fjord")


def random_sentence(rng: random.Random, min_words: int = 2,
                    max_words: int = 6) -> str:
    n = rng.randint(min_words, max_words)
    words = [rng.choice(WORDS) for _ in range(n)]
    words[0] = words[0].capitalize()
    return " ".join(words) + rng.choice(".!?")


def random_text(rng: random.Random, max_len: int = 12) -> str:
    n = rng.randint(0, max_len)
    return "".join(rng.choice(string.ascii_lowercase + " ") for _ in range(n))


def make_side(start: int, length: int, lid: float = 1.0,
              dup: int | None = 1, paragraph: int = 0,
              sentence: int = 0) -> SideAnnotation:
    return SideAnnotation(paragraph_idx=paragraph, sentence_idx=sentence,
                          start_char=start, end_char=start + length - 1,
                          lid_prob=lid, dup_count=dup)


def not_found_side(lid: float = 1.0, dup: int | None = 1) -> SideAnnotation:
    return SideAnnotation(None, None, None, None, lid_prob=lid, dup_count=dup)


def make_record(doc_id: str, seg_index: int, src_ann: SideAnnotation,
                tgt_ann: SideAnnotation, src_text: str | None = None,
                tgt_text: str | None = None,
                corpus_id: str = "paracrawl") -> AnnotatedRecord:
    return AnnotatedRecord(
        corpus_id=corpus_id,
        doc_id=doc_id,
        seg_index=seg_index,
        src_text=src_text if src_text is not None else f"src {seg_index}",
        tgt_text=tgt_text if tgt_text is not None else f"tgt {seg_index}",
        src_ann=src_ann,
        tgt_ann=tgt_ann,
    )


def consecutive_records(doc_id: str, n: int, seg_len: int = 10,
                        corpus_id: str = "paracrawl",
                        texts: list[tuple[str, str]] | None = None,
                        ) -> list[AnnotatedRecord]:
    """n records whose spans are consecutive on both sides."""
    records = []
    src_start = tgt_start = 0
    for i in range(n):
        if texts is not None:
            src_text, tgt_text = texts[i]
            src_len, tgt_len = len(src_text), len(tgt_text)
        else:
            src_text, tgt_text = f"src {i}", f"tgt {i}"
            src_len = tgt_len = seg_len
        records.append(make_record(
            doc_id, i,
            make_side(src_start, src_len),
            make_side(tgt_start, tgt_len),
            src_text=src_text, tgt_text=tgt_text,
            corpus_id=corpus_id))
        # Next start = this inclusive end + 2, i.e. advance by len + 1.
        src_start += src_len + 1
        tgt_start += tgt_len + 1
    return records


def make_subdoc(doc_id: str, n: int,
                texts: list[tuple[str, str]] | None = None,
                sub_index: int = 0) -> SubDocument:
    records = consecutive_records(doc_id, n, texts=texts)
    return SubDocument(sub_doc_id=f"{doc_id}#{sub_index}",
                       records=tuple(records), parent_doc_id=doc_id)


def random_valid_record(rng: random.Random) -> AnnotatedRecord:
    """A schema-valid record with 4-decimal-quantized floats."""

    def side() -> SideAnnotation:
        if rng.random() < 0.15:
            return SideAnnotation(
                None, None, None, None,
                lid_prob=rng.randint(0, 10000) / 10000,
                dup_count=None if rng.random() < 0.5 else rng.randint(0, 500))
        start = rng.randint(0, 5000)
        return SideAnnotation(
            paragraph_idx=rng.randint(0, 30),
            sentence_idx=rng.randint(0, 200),
            start_char=start,
            end_char=start + rng.randint(0, 300),
            lid_prob=rng.randint(0, 10000) / 10000,
            dup_count=None if rng.random() < 0.5 else rng.randint(0, 500))

    def clean_text() -> str:
        return random_text(rng).strip() or "x"

    record = AnnotatedRecord(
        corpus_id=rng.choice(("paracrawl", "news_commentary",
                              "europarl", "other")),
        doc_id=f"doc-{rng.randint(0, 999)}",
        seg_index=rng.randint(0, 400),
        src_text=clean_text(),
        tgt_text=clean_text(),
        src_ann=side(),
        tgt_ann=side(),
        sub_doc_id=None if rng.random() < 0.5
        else f"doc-{rng.randint(0, 999)}#{rng.randint(0, 9)}",
        slide_score=None if rng.random() < 0.5
        else rng.randint(0, 10000) / 10000,
    )
    return record


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240612)
