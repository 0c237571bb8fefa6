"""Monolingual document indexing: whitespace normalization, paragraph map,
and rule-based sentence boundaries.

Segment offsets everywhere in the pipeline refer to the normalized text
produced here, so normalization must be deterministic and idempotent:
every maximal run of Unicode whitespace becomes a single space and the
result carries no leading or trailing whitespace.

Paragraphs are the blank-line-delimited blocks of the *raw* text (one or
more whitespace-only lines separate two paragraphs); their indices are
carried over onto normalized offsets. Sentence boundaries come from a
deterministic rule-based splitter compatible with one-prefix-per-line
non-breaking-prefix files.
"""

from __future__ import annotations

import re
import warnings
from bisect import bisect_right
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

# Terminal punctuation directly followed by the single inter-token space.
_BOUNDARY = re.compile(r"[.!?](?= )")

_OPENING_QUOTES = frozenset("\"'“‘«([")

# Minimal per-language non-breaking prefixes (tokens that end with a period
# without ending a sentence). Callers needing full coverage pass their own
# list loaded via load_prefix_file().
NONBREAKING_PREFIXES: dict[str, frozenset[str]] = {
    "en": frozenset({"Mr", "Mrs", "Ms", "Dr", "Prof", "St", "Jr", "Sr",
                     "vs", "etc", "e.g", "i.e", "No", "Vol", "Fig", "Inc",
                     "Ltd", "Co", "Corp", "approx"}),
    "de": frozenset({"Dr", "Prof", "Nr", "Abs", "bzw", "ca", "usw", "z.B",
                     "d.h", "u.a", "Hr", "Fr", "St"}),
    "fr": frozenset({"M", "MM", "Mme", "Mlle", "Dr", "St", "ex", "cf",
                     "art", "etc"}),
    "es": frozenset({"Sr", "Sra", "Srta", "Dr", "Dra", "Ud", "Uds", "etc",
                     "art", "pág"}),
    "it": frozenset({"Sig", "Dott", "Prof", "Ing", "ecc", "art", "pag"}),
    "pl": frozenset({"prof", "dr", "inż", "mgr", "np", "itd", "itp", "tzn",
                     "ul", "str"}),
    "pt": frozenset({"Sr", "Sra", "Dr", "Dra", "Prof", "etc", "pág", "art"}),
}


class ParagraphMap:
    """Total map from normalized character offset to paragraph index.

    Backed by the sorted start offsets of each paragraph in the normalized
    text; the single joining space between two paragraphs belongs to the
    preceding paragraph.
    """

    __slots__ = ("_starts", "_length")

    def __init__(self, starts: Iterable[int], length: int) -> None:
        self._starts = tuple(starts)
        self._length = length

    def __getitem__(self, offset: int) -> int:
        if not 0 <= offset < self._length:
            raise KeyError(offset)
        return bisect_right(self._starts, offset) - 1

    def __len__(self) -> int:
        """Number of paragraphs."""
        return len(self._starts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ParagraphMap):
            return NotImplemented
        return self._starts == other._starts and self._length == other._length

    def __repr__(self) -> str:
        return f"ParagraphMap(starts={self._starts!r}, length={self._length})"

    @property
    def starts(self) -> tuple[int, ...]:
        return self._starts

    @property
    def covered_length(self) -> int:
        return self._length


def normalize_whitespace(raw: str) -> tuple[str, ParagraphMap]:
    """Collapse whitespace runs to single spaces and map paragraphs.

    Paragraph boundaries are decided on the raw text (blank lines) before
    collapsing, then re-expressed as offsets into the normalized text.
    Empty or whitespace-only input yields ("", empty map).
    """
    paragraphs: list[str] = []
    block: list[str] = []
    for line in raw.split("\n"):
        if line.strip():
            block.append(line)
        elif block:
            paragraphs.append("\n".join(block))
            block = []
    if block:
        paragraphs.append("\n".join(block))

    norm_parts = [" ".join(p.split()) for p in paragraphs]
    starts: list[int] = []
    offset = 0
    for part in norm_parts:
        starts.append(offset)
        offset += len(part) + 1  # the joining space
    norm_text = " ".join(norm_parts)
    return norm_text, ParagraphMap(starts, len(norm_text))


def load_prefix_file(path: str | Path) -> frozenset[str]:
    """Load a non-breaking-prefix file: one prefix per line.

    Compatible with common splitter prefix files: lines starting with '#'
    are comments, an inline '#NUMERIC_ONLY#' marker is stripped, and any
    trailing period on the prefix itself is dropped.
    """
    prefixes: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.split("#NUMERIC_ONLY#")[0].strip()
            if not line or line.startswith("#"):
                continue
            prefixes.add(line.rstrip("."))
    return frozenset(prefixes)


def split_sentences(norm_text: str, lang: str,
                    prefixes: frozenset[str] | None = None,
                    ) -> list[tuple[int, int]]:
    """Detect sentence spans in normalized text.

    Returns inclusive (start_char, end_char) spans; the single space
    between two sentences belongs to neither span. A boundary is placed
    after ``. ! ?`` when the next character is uppercase or an opening
    quote/bracket, unless the word ending in the period is a known
    non-breaking prefix. Unknown languages fall back to language-neutral
    rules (no prefix list) with a warning.
    """
    if prefixes is None:
        if lang in NONBREAKING_PREFIXES:
            prefixes = NONBREAKING_PREFIXES[lang]
        else:
            warnings.warn(f"no sentence-splitting rules for language "
                          f"{lang!r}; using language-neutral rules")
            prefixes = frozenset()
    if not norm_text:
        return []

    spans: list[tuple[int, int]] = []
    start = 0
    for match in _BOUNDARY.finditer(norm_text):
        terminal = match.start()
        nxt = terminal + 2  # character after the single space
        if nxt >= len(norm_text):
            break
        first = norm_text[nxt]
        if not (first.isupper() or first in _OPENING_QUOTES):
            continue
        if norm_text[terminal] == ".":
            last_space = norm_text.rfind(" ", start, terminal)
            word_start = last_space + 1 if last_space >= 0 else start
            word = norm_text[word_start:terminal + 1].rstrip(".")
            if word in prefixes:
                continue
        spans.append((start, terminal))
        start = nxt
    spans.append((start, len(norm_text) - 1))
    return spans


@dataclass(slots=True)
class MonoDocument:
    """An indexed monolingual document.

    norm_text is the offset coordinate system used by all span
    annotations; sentence_spans are inclusive and strictly increasing.
    """

    doc_id: str
    raw_text: str
    norm_text: str
    paragraph_of: ParagraphMap
    sentence_spans: tuple[tuple[int, int], ...]
    lang: str
    _sentence_starts: tuple[int, ...] = field(repr=False, default=())

    def __post_init__(self) -> None:
        if not self._sentence_starts:
            self._sentence_starts = tuple(s for s, _ in self.sentence_spans)

    def sentence_index_at(self, offset: int) -> int:
        """Index of the sentence span containing a normalized offset."""
        idx = bisect_right(self._sentence_starts, offset) - 1
        if idx < 0:
            raise KeyError(offset)
        return idx


SentenceSplitter = Callable[[str], list[tuple[int, int]]]


def index_document(doc_id: str, raw_text: str, lang: str,
                   prefixes: frozenset[str] | None = None,
                   splitter: SentenceSplitter | None = None) -> MonoDocument:
    """Normalize a raw document and build its paragraph and sentence indexes.

    A custom splitter (normalized text -> inclusive sentence spans) may be
    plugged in; the default is the rule-based split_sentences.
    """
    norm_text, paragraph_of = normalize_whitespace(raw_text)
    if not norm_text:
        spans: list[tuple[int, int]] = []
    elif splitter is not None:
        spans = splitter(norm_text)
    else:
        spans = split_sentences(norm_text, lang, prefixes)
    return MonoDocument(
        doc_id=doc_id,
        raw_text=raw_text,
        norm_text=norm_text,
        paragraph_of=paragraph_of,
        sentence_spans=tuple(spans),
        lang=lang,
    )
