import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cliquebench.carb import ExtractionTuple, SentenceScore, carb_score
from cliquebench.robustness import (
    Clique,
    SentenceEntry,
    score_benchmark,
    score_clique,
    worst_case,
)

from conftest import random_extractions


def entry(sid, gold):
    return SentenceEntry(id=sid, text=sid, gold=tuple(gold))


def simple_tuple(*tokens):
    return ExtractionTuple(predicate=(tokens[0],), args=(tuple(tokens[1:]) or ("x",),))


def make_clique(rng, cid, size):
    sentences = tuple(
        entry(f"{cid}-s{i}", random_extractions(rng, 1, 3)) for i in range(size)
    )
    return Clique(id=cid, sentences=sentences)


def test_clique_validation():
    with pytest.raises(ValueError):
        Clique(id="c", sentences=())
    with pytest.raises(ValueError):
        Clique(id="c", sentences=(SentenceEntry(id="s", text="t"),))


@pytest.mark.parametrize(
    "f1s,expected",
    [
        ((0.486, 0.378, 0.553, 0.119), 0.119),
        ((0.597, 0.414, 0.359, 0.157), 0.157),
        ((0.48, 0.421, 0.533, 0.334), 0.334),
    ],
)
def test_worst_case_selects_minimum_f1(f1s, expected):
    scores = [SentenceScore(f, f, f) for f in f1s]
    result = worst_case("clique", scores)
    assert result.robust.f1 == expected
    assert result.worst_index == f1s.index(expected)
    assert result.robust is result.per_sentence[result.worst_index]


def test_worst_case_ties_go_to_lowest_index():
    scores = [SentenceScore(0.9, 0.1, 0.3), SentenceScore(0.1, 0.9, 0.3)]
    result = worst_case("clique", scores)
    assert result.worst_index == 0
    assert result.robust.precision == 0.9


def test_score_clique_single_sentence():
    gold = [simple_tuple("met", "grant", "lee")]
    clique = Clique(id="c", sentences=(entry("s0", gold),))
    result = score_clique(clique, {"s0": gold})
    assert result.robust.f1 == 1.0
    assert result.worst_index == 0


def test_score_clique_requires_every_sentence_id():
    gold = [simple_tuple("met", "grant")]
    clique = Clique(id="c", sentences=(entry("s0", gold), entry("s1", gold)))
    with pytest.raises(ValueError, match="s1"):
        score_clique(clique, {"s0": gold})


def test_empty_output_dominates_worst_case():
    gold = [simple_tuple("met", "grant")]
    clique = Clique(id="c", sentences=(entry("s0", gold), entry("s1", gold)))
    result = score_clique(clique, {"s0": gold, "s1": []})
    assert result.worst_index == 1
    assert result.robust.f1 == 0.0


def test_benchmark_means():
    gold_a = [simple_tuple("met", "grant")]
    gold_b = [simple_tuple("saw", "army")]
    cliques = [
        Clique(id="a", sentences=(entry("a0", gold_a),)),
        Clique(id="b", sentences=(entry("b0", gold_b), entry("b1", gold_b))),
    ]
    outputs = {"a0": gold_a, "b0": gold_b, "b1": []}
    report = score_benchmark(cliques, outputs)
    assert report.mean_robust_f1 == pytest.approx((1.0 + 0.0) / 2)
    assert report.mean_carb_f1 == pytest.approx((1.0 + 1.0 + 0.0) / 3)
    weighted = score_benchmark(cliques, outputs, weight_by_size=True)
    assert weighted.mean_robust_f1 == pytest.approx((1 * 1.0 + 2 * 0.0) / 3)


def test_perfect_outputs_score_one_everywhere():
    rng = random.Random(11)
    cliques = [make_clique(rng, f"c{i}", rng.randint(1, 3)) for i in range(5)]
    outputs = {e.id: list(e.gold) for c in cliques for e in c.sentences}
    report = score_benchmark(cliques, outputs)
    assert report.mean_robust_f1 == 1.0
    assert report.mean_carb_f1 == 1.0


def test_benchmark_rejects_empty_clique_list():
    with pytest.raises(ValueError):
        score_benchmark([], {})


def test_robust_equals_min_and_benchmark_is_order_invariant():
    rng = random.Random(7)
    cliques = [make_clique(rng, f"c{i}", rng.randint(1, 4)) for i in range(40)]
    outputs = {
        e.id: random_extractions(rng, 0, 3) for c in cliques for e in c.sentences
    }
    report = score_benchmark(cliques, outputs)
    for cs in report.clique_scores:
        assert cs.robust.f1 == min(s.f1 for s in cs.per_sentence)
        assert cs.robust.f1 <= sum(s.f1 for s in cs.per_sentence) / len(cs.per_sentence)
    shuffled = cliques[:]
    rng.shuffle(shuffled)
    again = score_benchmark(shuffled, outputs)
    assert again.mean_robust_f1 == pytest.approx(report.mean_robust_f1)
    assert again.mean_carb_f1 == pytest.approx(report.mean_carb_f1)


def test_removing_a_sentence_never_decreases_robust_f1():
    rng = random.Random(23)
    for _ in range(50):
        clique = make_clique(rng, "c", rng.randint(2, 4))
        outputs = {e.id: random_extractions(rng, 0, 3) for e in clique.sentences}
        full = score_clique(clique, outputs)
        for drop in range(len(clique.sentences)):
            kept = tuple(e for i, e in enumerate(clique.sentences) if i != drop)
            sub = score_clique(Clique(id="c", sentences=kept), outputs)
            assert sub.robust.f1 >= full.robust.f1


@given(st.data())
def test_worst_case_never_exceeds_any_sentence(data):
    f1s = data.draw(
        st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=1, max_size=6)
    )
    scores = [SentenceScore(f, f, f) for f in f1s]
    result = worst_case("c", scores)
    assert all(result.robust.f1 <= s.f1 for s in scores)
