"""Toolkit for restoring document-level structure to sentence-level bitext.

Pipeline stages, each usable as a library or through the CLI:

  * reconstruct — exact-match segment spans into monolingual documents,
    annotating paragraph/sentence indices, character offsets, language-id
    probability, and corpus-wide duplication counts;
  * docbreak — cut each document into sub-documents of consecutive,
    criteria-passing segments;
  * docscore — sliding-window quality scores per sub-document and
    top-fraction retention (loose/medium/strict levels);
  * sentfilter — the traditional sentence-level filtering baseline;
  * contextgen — context-concatenated training samples and contextual
    inference inputs;
  * analysis — dataset statistics and quartile analysis.
"""

from .analysis import (PhenomenonExample, QuartileAssignment, StatsReport,
                       assign_quartiles, dataset_stats,
                       phenomenon_distribution)
from .contextgen import (ContextConfig, ContextSample, emit_eval_inputs,
                         emit_train_samples, mix_streams)
from .docbreak import BreakConfig, break_document, is_consecutive
from .docscore import (CUTOFF_FRACTIONS, ScoredSubDocument, ScorerHandle,
                       WindowConfig, assign_cutoff_tags, mock_score,
                       mock_scorer, remote_score_batch, score_subdoc,
                       select_top, windows)
from .monodoc import (MonoDocument, ParagraphMap, index_document,
                      load_prefix_file, normalize_whitespace, split_sentences)
from .records import (AnnotatedRecord, SideAnnotation, SubDocument,
                      parse_record, serialize_record)
from .reconstruct import (ClassifierHandle, DupTable, annotate_document,
                          count_duplicates, match_segment)
from .sentfilter import (SentFilterConfig, SimilarityHandle, dedup_stream,
                         filter_record)

__version__ = "0.1.0"

__all__ = [
    "AnnotatedRecord", "BreakConfig", "CUTOFF_FRACTIONS", "ClassifierHandle",
    "ContextConfig", "ContextSample", "DupTable", "MonoDocument",
    "ParagraphMap", "PhenomenonExample", "QuartileAssignment",
    "ScoredSubDocument", "ScorerHandle", "SentFilterConfig", "SideAnnotation",
    "SimilarityHandle", "StatsReport", "SubDocument", "WindowConfig",
    "annotate_document", "assign_cutoff_tags", "assign_quartiles",
    "break_document", "count_duplicates", "dataset_stats", "dedup_stream",
    "emit_eval_inputs", "emit_train_samples", "filter_record",
    "index_document", "is_consecutive", "load_prefix_file", "match_segment",
    "mix_streams", "mock_score", "mock_scorer", "normalize_whitespace",
    "parse_record", "phenomenon_distribution", "remote_score_batch",
    "score_subdoc", "select_top", "serialize_record", "split_sentences",
    "windows",
]
