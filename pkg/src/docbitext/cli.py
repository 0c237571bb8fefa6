"""Pipeline command line: composable stages over streaming TSV files.

    docbitext reconstruct   align bitext segments into monolingual docs
    docbitext break         cut annotated docs into sub-documents
    docbitext score         sliding-window QE scoring + cutoff tags
    docbitext filter-docs   keep the top fraction / a tagged level
    docbitext filter-sents  sentence-level baseline filtering
    docbitext contextgen    emit context-concatenated samples
    docbitext stats         per-level dataset statistics
    docbitext analyze       quartile distribution of phenomenon examples

Stages communicate through files only. Every output is written atomically
(temp file + rename) with a run manifest (resolved parameters, input
digests, record counts) at <output>.manifest.json, so multi-day corpus
runs are resumable and auditable. Re-running a stage with identical
inputs, configuration, and seed produces byte-identical output.

A YAML config file supplies defaults; command-line flags win over file
values. The scoring endpoint may also come from the DOCBITEXT_SCORER
environment variable (flag > environment > config).

Exit codes: 0 success, 1 usage error, 2 input/schema error, 3 scoring
service error.
"""

from __future__ import annotations

import argparse
import base64
import hashlib
import json
import os
import sys
import tempfile
from dataclasses import replace
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

import yaml

from . import analysis, contextgen, docbreak, docscore, sentfilter
from .errors import ConfigError, InputError, PipelineError, ScoringError
from .monodoc import MonoDocument, index_document, load_prefix_file
from .records import (ABSENT, CORPUS_TAGS, AnnotatedRecord, SubDocument,
                      parse_record, serialize_record)
from .reconstruct import (ClassifierHandle, annotate_document,
                          constant_classifier, count_duplicates,
                          table_classifier)

SCORER_ENV_VAR = "DOCBITEXT_SCORER"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_SERVICE = 3


class _Parser(argparse.ArgumentParser):
    """argparse variant honoring this tool's exit-code contract."""

    def error(self, message: str) -> None:  # noqa: D102
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------------------
# Config, atomic writes, manifests
# ---------------------------------------------------------------------------

def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as handle:
            data = yaml.safe_load(handle) or {}
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"config file {path} is not valid YAML: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a mapping")
    return data


def cfg_value(flag_value, config: dict, *keys, default=None):
    """Resolve one setting: flag wins, then config file, then default."""
    if flag_value is not None:
        return flag_value
    node = config
    for key in keys:
        if not isinstance(node, dict) or key not in node:
            return default
        node = node[key]
    return node


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 20), b""):
            digest.update(block)
    return "sha256:" + digest.hexdigest()


class StageWriter:
    """Atomic multi-file stage output plus its manifest."""

    def __init__(self, command: str, parameters: dict,
                 inputs: Sequence[str | Path]) -> None:
        self.command = command
        self.parameters = parameters
        self.inputs = [Path(p) for p in inputs]
        self.outputs: dict[str, dict] = {}

    def write_lines(self, path: str | Path, lines: Iterable[str]) -> int:
        """Write one output file atomically; returns the line count."""
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        count = 0
        fd, tmp_name = tempfile.mkstemp(dir=target.parent,
                                        prefix=f".{target.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
                for line in lines:
                    handle.write(line)
                    handle.write("\n")
                    count += 1
            os.replace(tmp_name, target)
        except BaseException:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise
        self.outputs[str(target)] = {"records": count,
                                     "digest": _sha256(target)}
        return count

    def finish(self) -> None:
        """Write the manifest next to the first output."""
        if not self.outputs:
            return
        manifest = {
            "command": self.command,
            "parameters": self.parameters,
            "inputs": {str(p): _sha256(p) for p in self.inputs if p.exists()},
            "outputs": self.outputs,
        }
        primary = Path(next(iter(self.outputs)))
        target = primary.with_name(primary.name + ".manifest.json")
        fd, tmp_name = tempfile.mkstemp(dir=target.parent,
                                        prefix=f".{target.name}.", suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            json.dump(manifest, handle, indent=2, sort_keys=True,
                      ensure_ascii=False)
            handle.write("\n")
        os.replace(tmp_name, target)


# ---------------------------------------------------------------------------
# Shared readers and handle builders
# ---------------------------------------------------------------------------

def _read_tsv(path: str | Path, n_columns: int,
              what: str) -> Iterator[tuple[int, list[str]]]:
    with open(path, encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != n_columns:
                raise InputError(f"{what}: expected {n_columns} columns, "
                                 f"got {len(fields)} at line {number}")
            yield number, fields


def read_bitext(path: str | Path) -> Iterator[tuple[str, str, str]]:
    """(doc_id, src_text, tgt_text) rows in document order."""
    for _, fields in _read_tsv(path, 3, "bitext input"):
        yield fields[0], fields[1], fields[2]


def read_pairs(path: str | Path) -> Iterator[tuple[str, str]]:
    """(src, tgt) rows of a 2-column TSV."""
    for _, fields in _read_tsv(path, 2, "sentence pair input"):
        yield fields[0], fields[1]


def read_annotated(path: str | Path) -> Iterator[AnnotatedRecord]:
    with open(path, encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if line.strip() == "":
                continue
            yield parse_record(line, line_number=number)


def read_scored(path: str | Path,
                ) -> Iterator[tuple[AnnotatedRecord, frozenset[str]]]:
    with open(path, encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if line.strip() == "":
                continue
            yield docscore.parse_scored_row(line, line_number=number)


def group_consecutive(items: Iterable, key: Callable) -> Iterator[list]:
    """Group a pre-sorted stream into runs sharing a key."""
    current_key = None
    group: list = []
    for item in items:
        k = key(item)
        if group and k != current_key:
            yield group
            group = []
        current_key = k
        group.append(item)
    if group:
        yield group


def read_subdocuments(path: str | Path) -> list[SubDocument]:
    """Rebuild sub-documents from a broken or scored records file.

    Sniffs per line whether the trailing kept_at column is present, so the
    same reader serves `break` output and `score` output.
    """
    subdocs: list[SubDocument] = []
    rows: list[AnnotatedRecord] = []
    with open(path, encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if line.strip() == "":
                continue
            n_fields = line.rstrip("\n").count("\t") + 1
            if n_fields == len(docscore.COLUMNS) + 1:
                record, _ = docscore.parse_scored_row(line, line_number=number)
            else:
                record = parse_record(line, line_number=number)
            if record.sub_doc_id is None:
                raise InputError(f"line {number}: record carries no "
                                 "sub_doc_id; run `break` first")
            rows.append(record)
    for group in group_consecutive(rows, key=lambda r: r.sub_doc_id):
        subdocs.append(SubDocument(
            sub_doc_id=group[0].sub_doc_id,
            records=tuple(group),
            parent_doc_id=group[0].doc_id,
        ))
    return subdocs


class MonoStore:
    """Monolingual document store: directory of files or a 2-column TSV.

    Directory mode reads <dir>/<doc_id> lazily; TSV mode loads
    (doc_id, base64-encoded raw text) rows up front.
    """

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self._table: dict[str, str] | None = None
        if self.path.is_dir():
            return
        if not self.path.exists():
            raise ConfigError(f"monolingual store not found: {self.path}")
        table: dict[str, str] = {}
        for number, fields in _read_tsv(self.path, 2, "monolingual store"):
            doc_id, encoded = fields
            try:
                table[doc_id] = base64.b64decode(encoded).decode("utf-8")
            except Exception:
                raise InputError(f"monolingual store line {number}: "
                                 "invalid base64 document") from None
        self._table = table

    def get(self, doc_id: str) -> str | None:
        if self._table is not None:
            return self._table.get(doc_id)
        candidate = self.path / doc_id
        if not candidate.is_file():
            return None
        return candidate.read_text(encoding="utf-8")


def build_classifier(spec: str) -> ClassifierHandle:
    """LID backend from a spec string: constant:<p> or table:<path>."""
    if spec.startswith("constant:"):
        return constant_classifier(float(spec.split(":", 1)[1]))
    if spec.startswith("table:"):
        path = spec.split(":", 1)[1]
        table: dict[str, float] = {}
        for _, fields in _read_tsv(path, 2, "LID table"):
            table[fields[0]] = float(fields[1])
        return table_classifier(table)
    raise ConfigError(f"unknown LID spec {spec!r} "
                      "(use constant:<p> or table:<path>)")


def build_similarity(spec: str) -> sentfilter.SimilarityHandle:
    if spec == "mock":
        return sentfilter.SimilarityHandle(docscore.MOCK_BACKEND_ID,
                                           docscore.mock_score)
    if spec.startswith("constant:"):
        value = float(spec.split(":", 1)[1])
        return sentfilter.SimilarityHandle(spec, lambda s, t: value)
    raise ConfigError(f"unknown similarity spec {spec!r} "
                      "(use mock or constant:<x>)")


def build_scorer(spec: str, batch_size: int, workers: int,
                 ) -> docscore.ScorerHandle:
    if spec == "mock":
        return docscore.mock_scorer()
    if spec.startswith("http://") or spec.startswith("https://"):
        return docscore.remote_scorer(spec, batch_size=batch_size,
                                      workers=workers)
    raise ConfigError(f"unknown scorer {spec!r} (use mock or an http(s) URL)")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_reconstruct(args: argparse.Namespace, config: dict) -> int:
    corpus = cfg_value(args.corpus, config, "corpus", default="other")
    if corpus not in CORPUS_TAGS:
        raise ConfigError(f"unknown corpus tag {corpus!r}")
    src_lang = cfg_value(args.src_lang, config, "src_lang", default="en")
    tgt_lang = cfg_value(args.tgt_lang, config, "tgt_lang", default="en")
    lid_spec = cfg_value(args.lid, config, "lid", default="constant:1.0")
    lid = build_classifier(lid_spec)
    count_dups = args.count_dups
    if count_dups is None:
        count_dups = corpus == "paracrawl"

    src_mono = cfg_value(args.src_mono, config, "paths", "src_mono")
    tgt_mono = cfg_value(args.tgt_mono, config, "paths", "tgt_mono")
    if src_mono is None or tgt_mono is None:
        raise ConfigError("monolingual stores required "
                          "(--src-mono/--tgt-mono or paths in config)")
    src_store = MonoStore(src_mono)
    tgt_store = MonoStore(tgt_mono)
    prefixes = {
        "src": load_prefix_file(args.src_prefixes)
        if args.src_prefixes else None,
        "tgt": load_prefix_file(args.tgt_prefixes)
        if args.tgt_prefixes else None,
    }

    dups = None
    if count_dups:
        dups = count_duplicates((s, t) for _, s, t in read_bitext(args.input))

    def indexed(store: MonoStore, doc_id: str, lang: str,
                side: str) -> MonoDocument:
        # A doc_id missing from its store yields an empty document, so its
        # segments come out as not-found markers rather than crashing.
        return index_document(doc_id, store.get(doc_id) or "", lang,
                              prefixes=prefixes[side])

    def lines() -> Iterator[str]:
        groups = group_consecutive(read_bitext(args.input), key=lambda r: r[0])
        for group in groups:
            doc_id = group[0][0]
            pair = (indexed(src_store, doc_id, src_lang, "src"),
                    indexed(tgt_store, doc_id, tgt_lang, "tgt"))
            segments = [(s, t) for _, s, t in group]
            for record in annotate_document(pair, segments, lid, dups,
                                            corpus_id=corpus):
                yield serialize_record(record)

    writer = StageWriter("reconstruct", {
        "corpus": corpus, "src_lang": src_lang, "tgt_lang": tgt_lang,
        "lid": lid_spec, "count_dups": count_dups,
        "src_prefixes": args.src_prefixes, "tgt_prefixes": args.tgt_prefixes,
    }, inputs=[args.input])
    writer.write_lines(args.output, lines())
    writer.finish()
    return EXIT_OK


def cmd_break(args: argparse.Namespace, config: dict) -> int:
    cfg = docbreak.BreakConfig(
        lid_threshold=cfg_value(args.lid_threshold, config,
                                "break", "lid_threshold", default=0.5),
        dup_threshold=cfg_value(args.dup_threshold, config,
                                "break", "dup_threshold", default=100),
        min_subdoc_len=cfg_value(args.min_len, config,
                                 "break", "min_subdoc_len", default=2),
    )

    def lines() -> Iterator[str]:
        groups = group_consecutive(read_annotated(args.input),
                                   key=lambda r: r.doc_id)
        for group in groups:
            for subdoc in docbreak.break_document(group, cfg):
                for record in subdoc.tagged_records():
                    yield serialize_record(record)

    writer = StageWriter("break", {
        "lid_threshold": cfg.lid_threshold,
        "dup_threshold": cfg.dup_threshold,
        "min_subdoc_len": cfg.min_subdoc_len,
    }, inputs=[args.input])
    writer.write_lines(args.output, lines())
    writer.finish()
    return EXIT_OK


def cmd_score(args: argparse.Namespace, config: dict) -> int:
    scorer_spec = args.scorer or os.environ.get(SCORER_ENV_VAR) \
        or cfg_value(None, config, "scorer", default="mock")
    wcfg = docscore.WindowConfig(
        window=cfg_value(args.window, config, "window", "window", default=3),
        stride=cfg_value(args.stride, config, "window", "stride", default=1),
    )
    workers = cfg_value(args.workers, config, "workers", default=1)
    scorer = build_scorer(scorer_spec, batch_size=args.batch_size,
                          workers=workers)

    subdocs = read_subdocuments(args.input)
    scored = docscore.score_subdocuments(subdocs, scorer, wcfg)
    tagged = docscore.assign_cutoff_tags(scored)
    by_id = {s.sub_doc_id: s for s in tagged}
    if args.fraction is not None:
        kept_ids = {s.sub_doc_id
                    for s in docscore.select_top(scored, args.fraction)}
    else:
        kept_ids = None

    def lines() -> Iterator[str]:
        for subdoc in subdocs:
            info = by_id[subdoc.sub_doc_id]
            if kept_ids is not None and subdoc.sub_doc_id not in kept_ids:
                continue
            for record in subdoc.tagged_records():
                record = replace(record, slide_score=info.score)
                yield docscore.serialize_scored_row(record, info.kept_at)

    writer = StageWriter("score", {
        "scorer": scorer_spec, "window": wcfg.window, "stride": wcfg.stride,
        "batch_size": args.batch_size, "workers": workers,
        "fraction": args.fraction,
    }, inputs=[args.input])
    writer.write_lines(args.output, lines())
    writer.finish()
    return EXIT_OK


def cmd_filter_docs(args: argparse.Namespace, config: dict) -> int:
    rows = list(read_scored(args.input))
    if args.level is not None:
        kept_ids = {r.sub_doc_id for r, tags in rows if args.level in tags}
        parameters = {"level": args.level}
    else:
        groups = group_consecutive(rows, key=lambda rt: rt[0].sub_doc_id)
        scored = []
        for group in groups:
            record = group[0][0]
            if record.slide_score is None:
                raise InputError(f"sub-document {record.sub_doc_id} has no "
                                 "slide_score; run `score` first")
            scored.append(docscore.ScoredSubDocument(
                sub_doc_id=record.sub_doc_id,
                n_segments=len(group),
                score=record.slide_score,
            ))
        kept = docscore.select_top(scored, args.fraction)
        kept_ids = {s.sub_doc_id for s in kept}
        parameters = {"fraction": args.fraction}

    def lines() -> Iterator[str]:
        for record, tags in rows:
            if record.sub_doc_id in kept_ids:
                yield docscore.serialize_scored_row(record, tags)

    writer = StageWriter("filter-docs", parameters, inputs=[args.input])
    writer.write_lines(args.output, lines())
    writer.finish()
    return EXIT_OK


def cmd_filter_sents(args: argparse.Namespace, config: dict) -> int:
    cfg = sentfilter.SentFilterConfig(
        max_punct_frac=cfg_value(args.max_punct_frac, config,
                                 "sentfilter", "max_punct_frac", default=0.5),
        max_len_ratio=cfg_value(args.max_len_ratio, config,
                                "sentfilter", "max_len_ratio", default=1.5),
        lid_threshold=cfg_value(args.lid_threshold, config,
                                "sentfilter", "lid_threshold", default=0.5),
        sim_threshold=cfg_value(args.sim_threshold, config,
                                "sentfilter", "sim_threshold", default=0.85),
        charset_min_frac=cfg_value(args.charset_min_frac, config,
                                   "sentfilter", "charset_min_frac",
                                   default=0.8),
    )
    src_lang = cfg_value(args.src_lang, config, "src_lang", default="en")
    tgt_lang = cfg_value(args.tgt_lang, config, "tgt_lang", default="en")

    charset_specs = dict(
        cfg_value(None, config, "sentfilter", "charsets", default={}))
    for item in args.charset or []:
        if "=" not in item:
            raise ConfigError(f"--charset expects LANG=PATH, got {item!r}")
        lang, path = item.split("=", 1)
        charset_specs[lang] = path
    charsets = {lang: sentfilter.load_charset(path)
                for lang, path in charset_specs.items()}

    lid_specs = list(args.lid or cfg_value(None, config, "sentfilter", "lid",
                                           default=["constant:1.0"]))
    classifiers = [build_classifier(spec) for spec in lid_specs]
    sim_spec = cfg_value(args.sim, config, "sentfilter", "sim", default="mock")
    sim = build_similarity(sim_spec)

    kept_lines: list[str] = []
    reject_lines: list[str] = []
    reason_counts = {reason: 0 for reason in sentfilter.REJECT_REASONS}
    deduped = sentfilter.dedup_stream(read_pairs(args.input))
    for src, tgt in deduped:
        reason = sentfilter.filter_record(src, tgt, cfg, classifiers, sim,
                                          charsets, src_lang, tgt_lang)
        if reason is None:
            kept_lines.append(f"{src}\t{tgt}")
        else:
            reason_counts[reason] += 1
            reject_lines.append(f"{src}\t{tgt}\t{reason}")

    writer = StageWriter("filter-sents", {
        "max_punct_frac": cfg.max_punct_frac,
        "max_len_ratio": cfg.max_len_ratio,
        "lid_threshold": cfg.lid_threshold,
        "sim_threshold": cfg.sim_threshold,
        "charset_min_frac": cfg.charset_min_frac,
        "src_lang": src_lang, "tgt_lang": tgt_lang,
        "lid": lid_specs, "sim": sim_spec,
        "reject_counts": reason_counts,
    }, inputs=[args.input])
    writer.write_lines(args.output, kept_lines)
    writer.write_lines(args.reject_log, reject_lines)
    writer.finish()
    return EXIT_OK


def cmd_contextgen(args: argparse.Namespace, config: dict) -> int:
    cfg = contextgen.ContextConfig(
        max_segments=cfg_value(args.max_segments, config,
                               "context", "max_segments", default=10),
        max_tokens=cfg_value(args.max_tokens, config,
                             "context", "max_tokens", default=256),
        separator=cfg_value(args.separator, config,
                            "context", "separator", default="<eos>"),
    )
    seed = cfg_value(args.seed, config, "seed", default=0)
    emit = (contextgen.emit_train_samples if args.mode == "train"
            else contextgen.emit_eval_inputs)
    samples = [sample for subdoc in read_subdocuments(args.input)
               for sample in emit(subdoc, cfg)]

    rows: Iterable
    if args.mix is not None:
        sentence_stream = list(read_pairs(args.mix))
        rows = contextgen.mix_streams(samples, sentence_stream, seed=seed)
    else:
        rows = samples

    sample_lines: list[str] = []
    sidecar_lines: list[str] = []
    for row in rows:
        if isinstance(row, contextgen.ContextSample):
            sample_lines.append(f"{row.src_text}\t{row.tgt_text}")
            sidecar_lines.append(
                f"{row.sub_doc_id}\t{row.first_seg_index}"
                f"\t{row.last_seg_index}\t{int(row.oversize)}")
        else:
            src, tgt = row
            sample_lines.append(f"{src}\t{tgt}")
            sidecar_lines.append(f"{ABSENT}\t{ABSENT}\t{ABSENT}\t{ABSENT}")

    writer = StageWriter("contextgen", {
        "mode": args.mode, "max_segments": cfg.max_segments,
        "max_tokens": cfg.max_tokens, "separator": cfg.separator,
        "mix": args.mix, "seed": seed,
    }, inputs=[p for p in (args.input, args.mix) if p is not None])
    writer.write_lines(args.output, sample_lines)
    writer.write_lines(args.sidecar, sidecar_lines)
    writer.finish()
    return EXIT_OK


def cmd_stats(args: argparse.Namespace, config: dict) -> int:
    report = analysis.dataset_stats(read_scored(args.input))

    def lines() -> Iterator[str]:
        yield "level\tn_segments\tn_subdocs"
        for level in analysis.LEVELS:
            stats = report[level]
            yield f"{level}\t{stats.n_segments}\t{stats.n_subdocs}"

    writer = StageWriter("stats", {}, inputs=[args.input])
    writer.write_lines(args.output, lines())
    writer.finish()
    print(analysis.render_stats_table(report))
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace, config: dict) -> int:
    scores_by_subdoc: dict[str, float] = {}
    subdoc_scores: list[float] = []
    for record, _ in read_scored(args.input):
        if record.sub_doc_id is None or record.slide_score is None:
            continue
        if record.sub_doc_id not in scores_by_subdoc:
            scores_by_subdoc[record.sub_doc_id] = record.slide_score
            subdoc_scores.append(record.slide_score)
    quartiles = analysis.QuartileAssignment(subdoc_scores)
    examples = analysis.load_phenomenon_examples(args.phenomena,
                                                 scores_by_subdoc)
    dist = analysis.phenomenon_distribution(examples, quartiles)

    def lines() -> Iterator[str]:
        yield "category\tq1\tq2\tq3\tq4"
        for category in analysis.CATEGORIES:
            if category in dist:
                row = "\t".join(f"{pct:.1f}" for pct in dist[category])
                yield f"{category}\t{row}"

    writer = StageWriter("analyze", {}, inputs=[args.input, args.phenomena])
    writer.write_lines(args.output, lines())
    writer.finish()
    print(analysis.render_distribution_table(dist))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument wiring
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="docbitext", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--config", help="YAML config file (flags override)")
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("reconstruct", cmd_reconstruct,
            "align bitext segments into monolingual documents")
    p.add_argument("--input", required=True,
                   help="bitext TSV: doc_id, src_text, tgt_text")
    p.add_argument("--output", required=True)
    p.add_argument("--src-mono", help="source monolingual store (dir or TSV)")
    p.add_argument("--tgt-mono", help="target monolingual store (dir or TSV)")
    p.add_argument("--src-lang")
    p.add_argument("--tgt-lang")
    p.add_argument("--corpus", choices=CORPUS_TAGS)
    p.add_argument("--lid", help="constant:<p> or table:<path>")
    p.add_argument("--count-dups", action=argparse.BooleanOptionalAction,
                   help="count duplications (default: only for paracrawl)")
    p.add_argument("--src-prefixes",
                   help="non-breaking-prefix file for the source language")
    p.add_argument("--tgt-prefixes",
                   help="non-breaking-prefix file for the target language")

    p = add("break", cmd_break, "cut annotated documents into sub-documents")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--lid-threshold", type=float)
    p.add_argument("--dup-threshold", type=int)
    p.add_argument("--min-len", type=int)

    p = add("score", cmd_score, "sliding-window QE scoring + cutoff tags")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--scorer", help="mock or service URL "
                   f"(env {SCORER_ENV_VAR} overrides config)")
    p.add_argument("--window", type=int)
    p.add_argument("--stride", type=int)
    p.add_argument("--batch-size", type=int, default=128)
    p.add_argument("--workers", type=int)
    p.add_argument("--fraction", type=float,
                   help="additionally keep only the top fraction")

    p = add("filter-docs", cmd_filter_docs,
            "keep the top fraction or a tagged level of scored rows")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--fraction", type=float)
    group.add_argument("--level", choices=sorted(docscore.CUTOFF_FRACTIONS))

    p = add("filter-sents", cmd_filter_sents,
            "sentence-level baseline filtering")
    p.add_argument("--input", required=True, help="2-column TSV: src, tgt")
    p.add_argument("--output", required=True)
    p.add_argument("--reject-log", required=True)
    p.add_argument("--src-lang")
    p.add_argument("--tgt-lang")
    p.add_argument("--charset", action="append", metavar="LANG=PATH")
    p.add_argument("--lid", action="append",
                   help="LID spec; repeat for a second classifier")
    p.add_argument("--sim", help="mock or constant:<x>")
    p.add_argument("--max-punct-frac", type=float)
    p.add_argument("--max-len-ratio", type=float)
    p.add_argument("--lid-threshold", type=float)
    p.add_argument("--sim-threshold", type=float)
    p.add_argument("--charset-min-frac", type=float)

    p = add("contextgen", cmd_contextgen,
            "emit context-concatenated samples")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--sidecar", required=True,
                   help="sub_doc_id + segment range per emitted sample")
    p.add_argument("--mode", choices=("train", "eval"), default="train")
    p.add_argument("--max-segments", type=int)
    p.add_argument("--max-tokens", type=int)
    p.add_argument("--separator")
    p.add_argument("--mix", help="2-column sentence TSV mixed 1:1")
    p.add_argument("--seed", type=int)

    p = add("stats", cmd_stats, "per-level dataset statistics")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)

    p = add("analyze", cmd_analyze,
            "quartile distribution of phenomenon examples")
    p.add_argument("--input", required=True)
    p.add_argument("--phenomena", required=True,
                   help="TSV: sub_doc_id, category")
    p.add_argument("--output", required=True)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        config = load_config(args.config)
        return args.func(args, config)
    except ScoringError as exc:
        print(f"docbitext {args.command}: scoring service error: {exc}",
              file=sys.stderr)
        return EXIT_SERVICE
    except (InputError, PipelineError, FileNotFoundError, ValueError) as exc:
        print(f"docbitext {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
