"""Traditional sentence-level bitext filtering baseline.

Applies the classic cleaning rules in a fixed order to each deduplicated
pair and reports the first failing rule's reason tag:

    empty   -> a side is empty (or whitespace only)
    punct   -> more than half the non-space characters are punctuation
    charset -> too few characters from the language's expected set
    ratio   -> token length ratio between sides exceeds the limit
    lid     -> target language probability below threshold under every
               configured classifier
    sim     -> cross-lingual similarity below threshold

The charset rule needs a per-language expected character set, derived
from a histogram file (one character per line, optional tab + count).
Similarity models (LASER-class) plug in behind SimilarityHandle; the
deterministic trigram mock doubles as an offline stand-in.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import ConfigError
from .reconstruct import ClassifierHandle

REJECT_REASONS = ("empty", "punct", "charset", "ratio", "lid", "sim")


@dataclass(frozen=True, slots=True)
class SentFilterConfig:
    max_punct_frac: float = 0.5
    max_len_ratio: float = 1.5
    lid_threshold: float = 0.5
    sim_threshold: float = 0.85
    charset_min_frac: float = 0.8

    def __post_init__(self) -> None:
        for name in ("max_punct_frac", "lid_threshold", "sim_threshold",
                     "charset_min_frac"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} {value} outside [0, 1]")
        if self.max_len_ratio < 1.0:
            raise ValueError("max_len_ratio must be at least 1")


@dataclass(frozen=True)
class SimilarityHandle:
    """Cross-lingual similarity scorer in [0, 1], deterministic per backend."""

    identifier: str
    similarity: Callable[[str, str], float]


def load_charset(path: str | Path) -> frozenset[str]:
    """Expected character set from a histogram file.

    Each line holds one character, optionally followed by a tab and its
    corpus count (the count is ignored here; listing a character marks it
    as expected). Whitespace characters never need listing.
    """
    chars: set[str] = set()
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.rstrip("\n")
            if not line:
                continue
            chars.add(line.split("\t")[0])
    return frozenset(chars)


def _punct_fraction(text: str) -> float:
    non_space = [c for c in text if not c.isspace()]
    if not non_space:
        return 0.0
    punct = sum(1 for c in non_space
                if unicodedata.category(c).startswith("P"))
    return punct / len(non_space)


def _charset_fraction(text: str, allowed: frozenset[str]) -> float:
    non_space = [c for c in text if not c.isspace()]
    if not non_space:
        return 1.0
    inside = sum(1 for c in non_space if c in allowed)
    return inside / len(non_space)


def filter_record(src: str, tgt: str, cfg: SentFilterConfig,
                  lid_classifiers: Sequence[ClassifierHandle],
                  sim: SimilarityHandle,
                  charsets: Mapping[str, frozenset[str]],
                  src_lang: str, tgt_lang: str) -> str | None:
    """Apply the rules in order; None keeps the pair, else the reason tag.

    The lid rule rejects only when every configured classifier puts the
    target below threshold, mirroring a dual-classifier pipeline where
    one tool vouching for the language is enough.
    """
    if not src.strip() or not tgt.strip():
        return "empty"
    if (_punct_fraction(src) > cfg.max_punct_frac
            or _punct_fraction(tgt) > cfg.max_punct_frac):
        return "punct"
    for text, lang in ((src, src_lang), (tgt, tgt_lang)):
        allowed = charsets.get(lang)
        if allowed is None:
            raise ConfigError(f"no character set configured for "
                              f"language {lang!r}")
        if _charset_fraction(text, allowed) < cfg.charset_min_frac:
            return "charset"
    n_src = len(src.split())
    n_tgt = len(tgt.split())
    if max(n_src, n_tgt) / min(n_src, n_tgt) > cfg.max_len_ratio:
        return "ratio"
    if lid_classifiers and all(
            handle.classify(tgt, tgt_lang) < cfg.lid_threshold
            for handle in lid_classifiers):
        return "lid"
    if sim.similarity(src, tgt) < cfg.sim_threshold:
        return "sim"
    return None


def dedup_stream(pairs: Iterable[tuple[str, str]],
                 ) -> Iterator[tuple[str, str]]:
    """Drop exact (src, tgt) duplicates, keeping first occurrences in order."""
    seen: set[tuple[str, str]] = set()
    for pair in pairs:
        if pair in seen:
            continue
        seen.add(pair)
        yield pair
