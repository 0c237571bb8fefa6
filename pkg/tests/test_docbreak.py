"""Sub-document extraction: consecutiveness rule and break conditions."""

import random
from dataclasses import replace

import pytest

from docbitext.docbreak import (BreakConfig, break_document, is_consecutive,
                                validate_subdocument)
from docbitext.errors import PipelineError

from conftest import consecutive_records, make_record, make_side, \
    not_found_side
from oracles import naive_break


def test_figure_offsets_are_consecutive():
    prev = make_side(1793, 35)          # ends at 1827
    nxt = make_side(1829, 20)
    assert prev.end_char == 1827
    assert is_consecutive(prev, nxt) is True


def test_gap_of_one_rule_instance():
    assert is_consecutive(make_side(0, 6), make_side(7, 3)) is True


def test_gap_of_two_is_not_consecutive():
    assert is_consecutive(make_side(0, 11), make_side(13, 3)) is False


def test_not_found_is_never_consecutive():
    assert is_consecutive(not_found_side(), make_side(0, 3)) is False
    assert is_consecutive(make_side(0, 3), not_found_side()) is False


def test_high_dup_record_splits_into_two_kept_runs():
    records = consecutive_records("d", 5)
    records[2] = replace(records[2],
                         src_ann=replace(records[2].src_ann, dup_count=101))
    subdocs = break_document(records, BreakConfig())
    assert [len(sd) for sd in subdocs] == [2, 2]
    assert [r.seg_index for r in subdocs[0].records] == [0, 1]
    assert [r.seg_index for r in subdocs[1].records] == [3, 4]
    assert subdocs[0].sub_doc_id == "d#0"
    assert subdocs[1].sub_doc_id == "d#1"


def test_minimum_two_records_survive():
    records = consecutive_records("d", 2)
    subdocs = break_document(records)
    assert len(subdocs) == 1
    assert len(subdocs[0]) == 2


def test_low_lid_middle_record_discards_everything():
    records = consecutive_records("d", 3)
    records[1] = replace(records[1],
                         tgt_ann=replace(records[1].tgt_ann, lid_prob=0.4))
    assert break_document(records) == []


def test_threshold_edges_keep_is_strict_on_lid_only():
    # lid exactly at threshold is excluded; dup exactly at threshold is kept.
    records = consecutive_records("d", 2)
    at_lid = replace(records[0],
                     src_ann=replace(records[0].src_ann, lid_prob=0.5))
    assert break_document([at_lid, records[1]]) == []
    at_dup = replace(records[0],
                     src_ann=replace(records[0].src_ann, dup_count=100))
    assert len(break_document([at_dup, records[1]])) == 1


def test_absent_dup_count_never_breaks():
    records = consecutive_records("d", 2, corpus_id="europarl")
    records = [replace(r, src_ann=replace(r.src_ann, dup_count=None),
                       tgt_ann=replace(r.tgt_ann, dup_count=None))
               for r in records]
    assert len(break_document(records)) == 1


def test_unsorted_input_is_pipeline_error():
    records = consecutive_records("d", 3)
    with pytest.raises(PipelineError):
        break_document([records[1], records[0], records[2]])


def test_mixed_doc_ids_rejected():
    a = consecutive_records("a", 2)
    b = consecutive_records("b", 2)
    with pytest.raises(PipelineError):
        break_document([a[0], b[1]])


def _random_document(rng: random.Random, doc_id: str,
                     n: int) -> list:
    """Records covering all three break conditions plus adjacency gaps."""
    records = []
    src_start = tgt_start = 0
    for i in range(n):
        src_len = rng.randint(3, 30)
        tgt_len = rng.randint(3, 30)
        roll = rng.random()
        if roll < 0.12:
            src_ann = not_found_side()
            tgt_ann = make_side(tgt_start, tgt_len)
        elif roll < 0.2:
            src_ann = make_side(src_start, src_len)
            tgt_ann = not_found_side()
        else:
            lid_src = rng.choice((1.0, 0.9, 0.5, 0.4))
            lid_tgt = rng.choice((1.0, 0.9, 0.5, 0.4))
            dup_src = rng.choice((1, 5, 100, 101, 500, None))
            dup_tgt = rng.choice((1, 5, 100, 101, 500, None))
            src_ann = make_side(src_start, src_len, lid=lid_src, dup=dup_src)
            tgt_ann = make_side(tgt_start, tgt_len, lid=lid_tgt, dup=dup_tgt)
        records.append(make_record(doc_id, i, src_ann, tgt_ann))
        # Advance by len + 1 for consecutiveness; occasionally leave a
        # gap so adjacency fails without any exclusion.
        src_gap = rng.choice((1, 1, 1, 1, 2, 4))
        tgt_gap = rng.choice((1, 1, 1, 1, 2, 3))
        src_start += src_len + src_gap
        tgt_start += tgt_len + tgt_gap
    return records


def test_break_matches_brute_force_oracle_on_500_documents():
    rng = random.Random(4242)
    cfg = BreakConfig()
    for case in range(500):
        records = _random_document(rng, f"doc{case}", rng.randint(0, 20))
        got = break_document(records, cfg)
        expected = naive_break(records, cfg.lid_threshold,
                               cfg.dup_threshold, cfg.min_subdoc_len)
        assert [[r.seg_index for r in sd.records] for sd in got] \
            == [[r.seg_index for r in run] for run in expected]
        for sd in got:
            validate_subdocument(sd, cfg)


def test_partition_property():
    rng = random.Random(11)
    for case in range(100):
        records = _random_document(rng, f"p{case}", rng.randint(0, 20))
        subdocs = break_document(records)
        seen = [r.seg_index for sd in subdocs for r in sd.records]
        assert len(seen) == len(set(seen))  # no record in two sub-documents
        assert seen == sorted(seen)         # order preserving
        assert set(seen) <= {r.seg_index for r in records}


def test_break_config_validation():
    with pytest.raises(ValueError):
        BreakConfig(min_subdoc_len=1)
    with pytest.raises(ValueError):
        BreakConfig(lid_threshold=1.5)
