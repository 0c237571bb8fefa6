"""Dataset statistics, quartile assignment, phenomenon distributions."""

import random

import pytest

from docbitext.analysis import (CATEGORIES, LEVELS, QuartileAssignment,
                                assign_quartiles, dataset_stats,
                                load_phenomenon_examples,
                                phenomenon_distribution,
                                render_distribution_table,
                                render_stats_table)
from docbitext.errors import RecordParseError

from conftest import make_subdoc
from oracles import naive_quartiles


def _rows(sizes_and_tags):
    """(record, kept_at) rows built from (size, tags) per sub-document."""
    rows = []
    for k, (size, tags) in enumerate(sizes_and_tags):
        subdoc = make_subdoc(f"doc{k}", size, sub_index=0)
        for record in subdoc.tagged_records():
            rows.append((record, frozenset(tags)))
    return rows


def test_dataset_stats_hand_counted_fixture():
    rows = _rows([
        (2, {"loose75", "medium50"}),
        (3, {"loose75", "medium50"}),
        (4, {"loose75"}),
    ])
    report = dataset_stats(rows)
    assert report["docs"].n_segments == 9
    assert report["docs"].n_subdocs == 3
    assert report["loose75"].n_segments == 9
    assert report["medium50"].n_segments == 5
    assert report["medium50"].n_subdocs == 2
    assert report["strict25"].n_segments == 0


def test_dataset_stats_empty_stream():
    report = dataset_stats([])
    for level in LEVELS:
        assert report[level].n_segments == 0
        assert report[level].n_subdocs == 0


def test_dataset_stats_monotone_and_ratio_on_synthetic_corpus():
    from docbitext.docscore import ScoredSubDocument, assign_cutoff_tags
    rng = random.Random(60)
    sizes = [rng.randint(2, 6) for _ in range(400)]
    scored = [ScoredSubDocument(f"doc{i}#0", n, rng.random())
              for i, n in enumerate(sizes)]
    tags_by_id = {s.sub_doc_id: s.kept_at for s in assign_cutoff_tags(scored)}
    rows = []
    for i, n in enumerate(sizes):
        subdoc = make_subdoc(f"doc{i}", n)
        for record in subdoc.tagged_records():
            rows.append((record, tags_by_id[subdoc.sub_doc_id]))
    report = dataset_stats(rows)
    segs = [report[level].n_segments for level in LEVELS]
    docs = [report[level].n_subdocs for level in LEVELS]
    assert segs == sorted(segs, reverse=True)
    assert docs == sorted(docs, reverse=True)
    assert report["loose75"].n_subdocs == 300  # 0.75 * 400 exactly
    ratio = report["loose75"].n_subdocs / report["docs"].n_subdocs
    assert abs(ratio - 0.75) < 1 / 400


def test_quartiles_divide_eight_evenly():
    quartiles = assign_quartiles([0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2])
    assert quartiles == [1, 1, 2, 2, 3, 3, 4, 4]


def test_quartile_singleton():
    assert assign_quartiles([0.9]) == [1]


def test_quartiles_10001_sizes_and_oracle():
    rng = random.Random(31)
    scores = [rng.random() for _ in range(10001)]
    quartiles = assign_quartiles(scores)
    from collections import Counter
    sizes = Counter(quartiles)
    assert sizes[1] == 2501
    assert sizes[2] == sizes[3] == sizes[4] == 2500
    assert quartiles == naive_quartiles(scores)


def test_quartiles_ties_stable_input_order():
    quartiles = assign_quartiles([0.5, 0.5, 0.5, 0.5])
    assert quartiles == [1, 2, 3, 4]


def test_quartiles_reject_non_finite():
    with pytest.raises(ValueError):
        assign_quartiles([0.5, float("nan")])


def test_quartile_assignment_lookup():
    qa = QuartileAssignment([0.9, 0.7, 0.5, 0.3])
    assert qa.quartile_of(0.9) == 1
    assert qa.quartile_of(0.3) == 4
    assert 0.7 in qa
    with pytest.raises(KeyError):
        qa.quartile_of(0.123)


def _example(category, score, sub_doc_id="d#0"):
    from docbitext.analysis import PhenomenonExample
    return PhenomenonExample(sub_doc_id, category, score)


def test_distribution_degenerate_all_in_q1():
    qa = QuartileAssignment([0.9])
    examples = [_example("inter_fem", 0.9) for _ in range(3)]
    dist = phenomenon_distribution(examples, qa)
    assert dist["inter_fem"] == [100.0, 0.0, 0.0, 0.0]


def test_distribution_recovers_planted_percentages():
    # 200 sub-documents with distinct scores; plant a known distribution.
    scores = [1 - i / 1000 for i in range(200)]
    qa = QuartileAssignment(scores)
    planted = {"intra_fem": (20, 10, 8, 2), "inter_neut": (5, 5, 5, 5)}
    examples = []
    for category, per_quartile in planted.items():
        for quartile, count in enumerate(per_quartile):
            base = quartile * 50  # each quartile holds 50 scores
            for j in range(count):
                examples.append(_example(category, scores[base + j]))
    dist = phenomenon_distribution(examples, qa)
    assert dist["intra_fem"] == [50.0, 25.0, 20.0, 5.0]
    assert dist["inter_neut"] == [25.0, 25.0, 25.0, 25.0]
    for row in dist.values():
        assert abs(sum(row) - 100.0) < 0.2


def test_distribution_rows_sum_to_100(rng):
    scores = sorted({rng.random() for _ in range(500)}, reverse=True)
    qa = QuartileAssignment(scores)
    examples = [_example(rng.choice(CATEGORIES), rng.choice(scores))
                for _ in range(3000)]
    dist = phenomenon_distribution(examples, qa)
    for row in dist.values():
        rounded = [round(p, 1) for p in row]
        assert abs(sum(rounded) - 100.0) <= 0.2


def test_load_phenomenon_examples_errors_carry_line_numbers(tmp_path):
    path = tmp_path / "phenomena.tsv"
    path.write_text("d#0\tinter_fem\nd#0\tbogus_tag\n", encoding="utf-8")
    with pytest.raises(RecordParseError, match="line 2"):
        load_phenomenon_examples(path, {"d#0": 0.9})
    path.write_text("d#0\tinter_fem\nmissing#9\tinter_fem\n",
                    encoding="utf-8")
    with pytest.raises(RecordParseError, match="line 2.*missing#9"):
        load_phenomenon_examples(path, {"d#0": 0.9})


def test_render_tables_are_aligned():
    report = dataset_stats(_rows([(2, {"loose75"})]))
    text = render_stats_table(report)
    lines = text.splitlines()
    assert lines[0].startswith("level")
    assert len({len(line) for line in lines}) <= 2  # header + uniform rows

    qa = QuartileAssignment([0.9, 0.5])
    dist = phenomenon_distribution(
        [_example("intra_fem", 0.9), _example("intra_fem", 0.5)], qa)
    table = render_distribution_table(dist)
    assert "intra_fem" in table and "50.0" in table
