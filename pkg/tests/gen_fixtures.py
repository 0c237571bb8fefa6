"""Regenerate the committed CLI fixtures.

    cd tests && python3 gen_fixtures.py

fixture_broken.tsv is a small corpus of sub-document-tagged records (the
input to `score`). golden_score_strict25.tsv is the expected output of

    docbitext score --input fixture_broken.tsv --scorer mock --fraction 0.25

computed here by the naive oracle (explicit window enumeration, an
independent trigram overlap, decimal half-up selection), never by the
production scoring path.
"""

from __future__ import annotations

import random
from pathlib import Path

from docbitext.records import AnnotatedRecord, SideAnnotation, \
    serialize_record

from oracles import naive_select_ids, naive_window_ranges

DATA_DIR = Path(__file__).parent / "data"

WORDS = ("alpha", "beta", "gamma", "delta", "omega", "nova", "terra",
         "lumen", "orbit", "quartz")


def oracle_trigram_overlap(src: str, tgt: str) -> float:
    """Independent recomputation of the trigram-overlap mock."""
    def grams(text: str) -> set[str]:
        text = text.lower()
        if len(text) < 3:
            return {text}
        out = set()
        for i in range(len(text) - 2):
            out.add(text[i] + text[i + 1] + text[i + 2])
        return out
    a, b = grams(src), grams(tgt)
    union = a | b
    return len(a & b) / (len(union) if union else 1)


def build_corpus() -> list[tuple[str, list[AnnotatedRecord]]]:
    rng = random.Random(515151)
    corpus: list[tuple[str, list[AnnotatedRecord]]] = []
    for d in range(8):
        doc_id = f"web{d:02d}"
        n = rng.randint(2, 6)
        records = []
        src_start = tgt_start = 0
        for i in range(n):
            src_words = [rng.choice(WORDS) for _ in range(rng.randint(2, 5))]
            # Target shares a sliding share of the source words, so the
            # trigram overlap (and hence the score) varies per document.
            keep = rng.randint(0, len(src_words))
            tgt_words = src_words[:keep] + \
                [rng.choice(WORDS) for _ in range(len(src_words) - keep)]
            src_text = " ".join(src_words) + "."
            tgt_text = " ".join(tgt_words) + "."
            records.append(AnnotatedRecord(
                corpus_id="paracrawl",
                doc_id=doc_id,
                seg_index=i,
                src_text=src_text,
                tgt_text=tgt_text,
                src_ann=SideAnnotation(0, i, src_start,
                                       src_start + len(src_text) - 1,
                                       lid_prob=0.99, dup_count=1),
                tgt_ann=SideAnnotation(0, i, tgt_start,
                                       tgt_start + len(tgt_text) - 1,
                                       lid_prob=0.98, dup_count=1),
                sub_doc_id=f"{doc_id}#0",
            ))
            src_start += len(src_text) + 1
            tgt_start += len(tgt_text) + 1
        corpus.append((f"{doc_id}#0", records))
    return corpus


def main() -> None:
    DATA_DIR.mkdir(exist_ok=True)
    corpus = build_corpus()

    with open(DATA_DIR / "fixture_broken.tsv", "w", encoding="utf-8",
              newline="\n") as handle:
        for _, records in corpus:
            for record in records:
                handle.write(serialize_record(record) + "\n")

    # Oracle scoring: enumerate windows, score, average.
    scores: dict[str, float] = {}
    for sub_doc_id, records in corpus:
        window_scores = []
        for a, b in naive_window_ranges(len(records), 3, 1):
            src = " ".join(r.src_text for r in records[a:b])
            tgt = " ".join(r.tgt_text for r in records[a:b])
            window_scores.append(oracle_trigram_overlap(src, tgt))
        scores[sub_doc_id] = sum(window_scores) / len(window_scores)

    items = list(scores.items())
    kept = {tag: naive_select_ids(items, frac)
            for tag, frac in (("loose75", 0.75), ("medium50", 0.5),
                              ("strict25", 0.25))}

    with open(DATA_DIR / "golden_score_strict25.tsv", "w", encoding="utf-8",
              newline="\n") as handle:
        for sub_doc_id, records in corpus:
            if sub_doc_id not in kept["strict25"]:
                continue
            tags = sorted(tag for tag, ids in kept.items()
                          if sub_doc_id in ids)
            for record in records:
                from dataclasses import replace
                scored = replace(record, slide_score=scores[sub_doc_id])
                handle.write(serialize_record(scored) + "\t"
                             + ",".join(tags) + "\n")
    print(f"wrote fixtures for {len(corpus)} sub-documents; "
          f"strict25 keeps {len(kept['strict25'])}")


if __name__ == "__main__":
    main()
