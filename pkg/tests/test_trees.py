import pytest
from hypothesis import given
from hypothesis import strategies as st

from cliquebench.trees import (
    ConstituencyTree,
    TreeParseError,
    level_order,
    parse_tree,
    prune,
    serialize_tree,
    strip_decorations,
)

from conftest import trees


def test_parse_basic():
    tree = parse_tree("(S (NP a) (VP b))")
    assert tree.label == "S"
    assert [c.label for c in tree.children] == ["NP", "VP"]
    assert tree.children[0].children[0] == ConstituencyTree("a", (), is_word=True)


def test_parse_single_node():
    tree = parse_tree("(X)")
    assert tree == ConstituencyTree("X")
    assert tree.is_leaf


def test_parse_tolerates_extra_whitespace():
    assert parse_tree("( S  ( NP a )   (VP b) )") == parse_tree("(S (NP a) (VP b))")


@pytest.mark.parametrize(
    "text,offset",
    [
        ("(S (NP a)", 9),
        ("", 0),
        ("   ", 3),
        ("()", 1),
        ("(S a) b", 6),
        ("x(S a)", 0),
    ],
)
def test_parse_errors_carry_offset(text, offset):
    with pytest.raises(TreeParseError) as err:
        parse_tree(text)
    assert err.value.offset == offset


def test_strip_decorations():
    assert strip_decorations("NP-SBJ") == "NP"
    assert strip_decorations("PP=2") == "PP"
    assert strip_decorations("NP-SBJ-1") == "NP"
    assert strip_decorations("-NONE-") == "-NONE-"
    assert strip_decorations("NN") == "NN"


def test_parse_strips_tags_on_labels_not_words():
    tree = parse_tree("(S (NP-SBJ x-y))")
    assert tree.children[0].label == "NP"
    assert tree.children[0].children[0].label == "x-y"  # word kept verbatim
    raw = parse_tree("(S (NP-SBJ x-y))", strip_tags=False)
    assert raw.children[0].label == "NP-SBJ"


def test_node_label_validation():
    with pytest.raises(ValueError):
        ConstituencyTree("")
    with pytest.raises(ValueError):
        ConstituencyTree("a b")
    with pytest.raises(ValueError):
        ConstituencyTree("w", (ConstituencyTree("x"),), is_word=True)


def test_prune_removes_deep_nodes():
    tree = parse_tree("(S (NP (DT the) (NN cat)) (VP sat))")
    pruned = prune(tree, 2)
    assert pruned.root == parse_tree("(S (NP) (VP))")
    assert pruned.height == 2


def test_prune_identity_when_height_covers_tree():
    tree = parse_tree("(S (NP a) (VP b))")
    assert prune(tree, tree.tree_height()).root == tree
    assert prune(tree, 10).root == tree


def test_prune_keeps_preterminal_at_cut():
    tree = parse_tree("(S (NP (DT the)))")
    assert prune(tree, 3).root == parse_tree("(S (NP (DT)))")


def test_prune_rejects_zero_height():
    with pytest.raises(ValueError):
        prune(parse_tree("(X)"), 0)


def test_level_order_examples():
    assert level_order(parse_tree("(S (NP) (VP))")) == ("S", "NP", "VP")
    # breadth first, not pre-order
    assert level_order(parse_tree("(S (NP (DT)) (VP))")) == ("S", "NP", "VP", "DT")
    assert level_order(parse_tree("(X)")) == ("X",)


def test_level_order_can_drop_words():
    tree = parse_tree("(S (NP (DT the) (NN cat)) (VP sat))")
    assert level_order(tree) == ("S", "NP", "VP", "DT", "NN", "sat", "the", "cat")
    assert level_order(tree, include_words=False) == ("S", "NP", "VP", "DT", "NN")


@given(trees)
def test_parse_serialize_round_trip(tree):
    assert parse_tree(serialize_tree(tree), strip_tags=False) == tree


@given(trees, st.integers(min_value=1, max_value=5))
def test_prune_is_idempotent_and_bounds_depth(tree, height):
    once = prune(tree, height).root
    assert prune(once, height).root == once
    assert once.tree_height() <= height


@given(trees)
def test_level_order_covers_all_nodes(tree):
    sequence = level_order(tree)
    assert len(sequence) == tree.node_count()
    assert sequence[0] == tree.label
