"""Context-concatenated sample emission and training-stream mixing.

Training samples are greedy left-to-right chunks of a sub-document:
extend the current chunk while it stays within the segment cap and the
token cap, where the token count is taken on the longer side and counts
each separator as one token. A lone segment that already busts the token
cap is emitted as a flagged oversize singleton; truncating it would
silently corrupt the alignment.

Inference inputs are one sample per segment: the segment plus as much
preceding context as the same caps admit, the scored segment always last
so consumers can split on the final separator.

Segments are joined as "a <sep> b", so with the default whitespace
tokenizer the side token count equals the sum of segment token counts
plus one per separator.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Callable, Iterable, Iterator

from .records import SubDocument


def whitespace_tokens(text: str) -> int:
    return len(text.split())


@dataclass(frozen=True)
class ContextConfig:
    max_segments: int = 10
    max_tokens: int = 256
    separator: str = "<eos>"
    tokenizer: Callable[[str], int] = whitespace_tokens

    def __post_init__(self) -> None:
        if self.max_segments < 1 or self.max_tokens < 1:
            raise ValueError("max_segments and max_tokens must be positive")
        if not self.separator:
            raise ValueError("separator must be non-empty")


@dataclass(frozen=True, slots=True)
class ContextSample:
    """One training or inference sample spanning a run of segments."""

    sub_doc_id: str
    first_seg_index: int
    last_seg_index: int
    src_text: str
    tgt_text: str
    n_segments: int
    oversize: bool = False

    def __post_init__(self) -> None:
        if self.n_segments != self.last_seg_index - self.first_seg_index + 1:
            raise ValueError("n_segments disagrees with the segment range")


def _side_token_counts(subdoc: SubDocument, cfg: ContextConfig,
                       ) -> tuple[list[int], list[int]]:
    tok = cfg.tokenizer
    return ([tok(r.src_text) for r in subdoc.records],
            [tok(r.tgt_text) for r in subdoc.records])


def _build_sample(subdoc: SubDocument, lo: int, hi: int,
                  cfg: ContextConfig, oversize: bool) -> ContextSample:
    """Sample over record positions [lo, hi] within the sub-document."""
    chunk = subdoc.records[lo:hi + 1]
    joiner = f" {cfg.separator} "
    return ContextSample(
        sub_doc_id=subdoc.sub_doc_id,
        first_seg_index=chunk[0].seg_index,
        last_seg_index=chunk[-1].seg_index,
        src_text=joiner.join(r.src_text for r in chunk),
        tgt_text=joiner.join(r.tgt_text for r in chunk),
        n_segments=len(chunk),
        oversize=oversize,
    )


def emit_train_samples(subdoc: SubDocument,
                       cfg: ContextConfig | None = None,
                       ) -> list[ContextSample]:
    """Greedy partition of a sub-document into capped training chunks.

    Chunks cover the sub-document exactly once, in order.
    """
    cfg = cfg or ContextConfig()
    src_toks, tgt_toks = _side_token_counts(subdoc, cfg)
    samples: list[ContextSample] = []
    lo = 0
    n = len(subdoc.records)
    while lo < n:
        if max(src_toks[lo], tgt_toks[lo]) > cfg.max_tokens:
            samples.append(_build_sample(subdoc, lo, lo, cfg, oversize=True))
            lo += 1
            continue
        src_sum = src_toks[lo]
        tgt_sum = tgt_toks[lo]
        hi = lo
        while hi + 1 < n and hi + 1 - lo + 1 <= cfg.max_segments:
            seps = hi + 1 - lo  # separators once the next segment joins
            longer = max(src_sum + src_toks[hi + 1],
                         tgt_sum + tgt_toks[hi + 1]) + seps
            if longer > cfg.max_tokens:
                break
            hi += 1
            src_sum += src_toks[hi]
            tgt_sum += tgt_toks[hi]
        samples.append(_build_sample(subdoc, lo, hi, cfg, oversize=False))
        lo = hi + 1
    return samples


def emit_eval_inputs(subdoc: SubDocument,
                     cfg: ContextConfig | None = None,
                     ) -> list[ContextSample]:
    """One inference input per segment with maximal preceding context.

    A segment that alone exceeds the token cap becomes an oversize
    singleton, never truncated.
    """
    cfg = cfg or ContextConfig()
    src_toks, tgt_toks = _side_token_counts(subdoc, cfg)
    samples: list[ContextSample] = []
    for i in range(len(subdoc.records)):
        if max(src_toks[i], tgt_toks[i]) > cfg.max_tokens:
            samples.append(_build_sample(subdoc, i, i, cfg, oversize=True))
            continue
        src_sum = src_toks[i]
        tgt_sum = tgt_toks[i]
        lo = i
        while lo > 0 and i - (lo - 1) + 1 <= cfg.max_segments:
            seps = i - lo + 1
            longer = max(src_sum + src_toks[lo - 1],
                         tgt_sum + tgt_toks[lo - 1]) + seps
            if longer > cfg.max_tokens:
                break
            lo -= 1
            src_sum += src_toks[lo]
            tgt_sum += tgt_toks[lo]
        samples.append(_build_sample(subdoc, lo, i, cfg, oversize=False))
    return samples


def _cycled(stream: Iterable) -> Iterator:
    """Repeat a stream indefinitely; an empty stream stays exhausted."""
    cache: list = []
    for item in stream:
        cache.append(item)
        yield item
    while cache:
        yield from cache


def mix_streams(first: Iterable, second: Iterable,
                ratio: tuple[int, int] = (1, 1), seed: int = 0,
                cycle: bool = False) -> Iterator:
    """Deterministically interleave two sample streams.

    Takes ratio[0] items from the first stream, then ratio[1] from the
    second, repeating. Without cycling, an exhausted stream hands the
    remainder over to the other; with cycling, exhausted streams restart,
    producing a training-style endless stream (unless both are empty).
    The seed is accepted for interface stability with randomized mixing
    policies; the alternating policy is deterministic and ignores it.
    """
    a, b = ratio
    if a < 1 or b < 1:
        raise ValueError("ratio parts must be positive")
    del seed
    iters = [_cycled(first) if cycle else iter(first),
             _cycled(second) if cycle else iter(second)]
    takes = (a, b)
    alive = [True, True]
    which = 0
    while any(alive):
        if alive[which]:
            chunk = list(islice(iters[which], takes[which]))
            if len(chunk) < takes[which]:
                alive[which] = False
            yield from chunk
        which = 1 - which
