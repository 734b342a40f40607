import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cliquebench.carb import (
    ExtractionTuple,
    carb_score,
    cell_score,
    match_table,
)

from conftest import extraction_tuples, random_extractions


def t(predicate, *args, **kw):
    return ExtractionTuple.from_strings(predicate, list(args), **kw)


def test_tuple_validation():
    with pytest.raises(ValueError):
        ExtractionTuple(predicate=(), args=(("a",),))
    with pytest.raises(ValueError):
        ExtractionTuple(predicate=("p",), args=())


def test_from_strings_tokenizes():
    tup = t("was Appointed", "He", time="in 1840,")
    assert tup.predicate == ("was", "appointed")
    assert tup.args == (("he",),)
    assert tup.time == ("in", "1840", ",")


def test_slots_append_time_and_location_last():
    tup = t("met", "grant", "lee", time="monday", location="city hall")
    assert tup.slots() == (
        ("met",), ("grant",), ("lee",), ("monday",), ("city", "hall"),
    )
    assert tup.token_count() == 6


def test_cell_identity():
    tup = t("met", "grant", "lee")
    cell = cell_score(tup, tup)
    assert (cell.precision, cell.recall, cell.f1) == (1.0, 1.0, 1.0)


def test_cell_partial_overlap():
    gold = t("assassinated", "booth", "lincoln")
    system = t("killed", "booth", "lincoln")
    cell = cell_score(gold, system)
    assert cell.precision == pytest.approx(2 / 3)
    assert cell.recall == pytest.approx(2 / 3)
    assert cell.f1 == pytest.approx(2 / 3)


def test_cell_disjoint_is_zero():
    cell = cell_score(t("met", "grant"), t("flew", "zeppelin"))
    assert (cell.precision, cell.recall, cell.f1) == (0.0, 0.0, 0.0)


def test_cell_multiset_matching_caps_repeats():
    gold = t("saw", "the city")
    system = ExtractionTuple(predicate=("saw",), args=(("city", "city", "city"),))
    cell = cell_score(gold, system)
    # 'city' matches once, 'saw' matches once
    assert cell.precision == pytest.approx(2 / 4)
    assert cell.recall == pytest.approx(2 / 3)


def test_cell_misaligned_slot_counts():
    gold = t("met", "grant", "lee")
    system = t("met", "grant")
    cell = cell_score(gold, system)
    assert cell.precision == pytest.approx(2 / 2)
    assert cell.recall == pytest.approx(2 / 3)


def test_match_table_shape():
    table = match_table([t("a", "b"), t("c", "d")], [t("a", "b")])
    assert table.rows == 2
    assert table.cols == 1


def test_score_identity():
    gold = [t("met", "grant", "lee")]
    score = carb_score(gold, gold)
    assert (score.precision, score.recall, score.f1) == (1.0, 1.0, 1.0)
    assert score.matched_pairs == ((0, 0),)


def test_score_exact_plus_disjoint_system():
    gold = [t("met", "grant", "lee")]
    system = [t("met", "grant", "lee"), t("flew", "zeppelin", "paris")]
    score = carb_score(gold, system)
    assert score.recall == 1.0
    assert score.precision == 0.5
    assert score.f1 == pytest.approx(2 / 3)


def test_score_two_gold_one_exact_system():
    gold = [t("met", "grant", "lee"), t("saw", "army", "city")]
    score = carb_score(gold, [t("met", "grant", "lee")])
    assert score.recall == 0.5
    assert score.precision == 1.0
    assert score.f1 == pytest.approx(2 / 3)


def test_score_empty_system_is_zero():
    score = carb_score([t("met", "grant")], [])
    assert (score.precision, score.recall, score.f1) == (0.0, 0.0, 0.0)


def test_score_rejects_empty_gold():
    with pytest.raises(ValueError):
        carb_score([], [t("met", "grant")])


def test_scores_are_permutation_invariant_on_random_cases():
    rng = random.Random(402)
    for _ in range(300):
        gold = random_extractions(rng, 1, 4)
        system = random_extractions(rng, 0, 4)
        base = carb_score(gold, system)
        shuffled_gold = gold[:]
        shuffled_system = system[:]
        rng.shuffle(shuffled_gold)
        rng.shuffle(shuffled_system)
        other = carb_score(shuffled_gold, shuffled_system)
        assert other.precision == base.precision
        assert other.recall == base.recall
        assert other.f1 == base.f1


@given(st.lists(extraction_tuples, min_size=1, max_size=4, unique=True))
def test_scoring_gold_against_itself_is_perfect(gold):
    score = carb_score(gold, gold)
    assert (score.precision, score.recall, score.f1) == (1.0, 1.0, 1.0)


@given(
    st.lists(extraction_tuples, min_size=1, max_size=3),
    st.lists(extraction_tuples, min_size=0, max_size=3),
)
def test_score_bounds_and_f1_zero_rule(gold, system):
    score = carb_score(gold, system)
    assert 0.0 <= score.precision <= 1.0
    assert 0.0 <= score.recall <= 1.0
    assert 0.0 <= score.f1 <= 1.0
    assert (score.f1 == 0.0) == (score.precision == 0.0 or score.recall == 0.0)
    # one-to-one matching in both coordinates
    gold_ids = [g for g, _ in score.matched_pairs]
    sys_ids = [s for _, s in score.matched_pairs]
    assert len(set(gold_ids)) == len(gold_ids)
    assert len(set(sys_ids)) == len(sys_ids)


@given(extraction_tuples, st.lists(extraction_tuples, min_size=0, max_size=3))
def test_duplicating_a_matched_tuple_never_helps(gold, extra_system):
    # single gold: the duplicate cannot match anything new, so precision
    # cannot rise and recall (row maxima) is untouched
    system = [gold] + extra_system
    base = carb_score([gold], system)
    dup = carb_score([gold], system + [gold])
    assert dup.precision <= base.precision + 1e-12
    assert dup.recall == base.recall
