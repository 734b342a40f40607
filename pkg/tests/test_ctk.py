import pytest
from hypothesis import given, settings

from cliquebench.syntax import (
    CtkConfig,
    ctk_kernel,
    ctk_kernel_bruteforce,
    ctk_similarity,
)
from cliquebench.trees import parse_tree

from conftest import productive_trees, trees

UNIT = CtkConfig(decay=1.0)


@pytest.mark.parametrize("decay", [0.0, -0.5, 1.01])
def test_config_rejects_bad_decay(decay):
    with pytest.raises(ValueError):
        CtkConfig(decay=decay)


def test_kernel_counts_shared_fragments():
    t = parse_tree("(S (NP a) (VP b))")
    assert ctk_kernel(t, t, UNIT) == 6.0


def test_kernel_on_partially_shared_trees():
    t1 = parse_tree("(S (NP a) (VP b))")
    t2 = parse_tree("(S (NP a) (VP c))")
    assert ctk_kernel(t1, t2, UNIT) == 3.0
    assert ctk_similarity(t1, t2, UNIT) == 0.5


def test_disjoint_productions_share_nothing():
    t1 = parse_tree("(S (NP a) (VP b))")
    t2 = parse_tree("(X (Y p) (Z q))")
    assert ctk_kernel(t1, t2, UNIT) == 0.0
    assert ctk_similarity(t1, t2, UNIT) == 0.0


def test_similarity_identity():
    t = parse_tree("(S (NP (DT the) (NN cat)) (VP sat))")
    assert ctk_similarity(t, t) == 1.0
    assert ctk_similarity(t, t, CtkConfig(decay=0.3)) == 1.0


def test_bare_leaf_has_zero_self_kernel():
    # no production at all: the normalization convention yields 0
    leaf = parse_tree("(X)")
    assert ctk_kernel(leaf, leaf) == 0.0
    assert ctk_similarity(leaf, leaf) == 0.0


def test_decay_weights_fragments_by_production_count():
    t = parse_tree("(S (NP a) (VP b))")
    lam = 0.5
    # fragments rooted at NP/VP carry one production; at S: 1..3 productions
    expected = 2 * lam + lam * (1 + lam) * (1 + lam)
    assert ctk_kernel(t, t, CtkConfig(decay=lam)) == pytest.approx(expected)
    assert ctk_kernel_bruteforce(t, t, CtkConfig(decay=lam)) == pytest.approx(expected)


@given(trees, trees)
def test_kernel_is_symmetric(t1, t2):
    assert ctk_kernel(t1, t2) == pytest.approx(ctk_kernel(t2, t1), abs=1e-12)


@settings(max_examples=150)
@given(trees, trees)
def test_kernel_matches_bruteforce_enumeration(t1, t2):
    for decay in (0.4, 1.0):
        cfg = CtkConfig(decay=decay)
        assert ctk_kernel(t1, t2, cfg) == pytest.approx(
            ctk_kernel_bruteforce(t1, t2, cfg), abs=1e-9
        )


@given(productive_trees)
def test_self_similarity_is_one(tree):
    assert ctk_similarity(tree, tree, CtkConfig(decay=0.7)) == pytest.approx(1.0)


@given(productive_trees, productive_trees)
def test_similarity_is_bounded(t1, t2):
    value = ctk_similarity(t1, t2, CtkConfig(decay=0.6))
    assert 0.0 <= value <= 1.0 + 1e-12
