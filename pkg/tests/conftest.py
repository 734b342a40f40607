import random

import hypothesis.strategies as st

from cliquebench.carb import ExtractionTuple
from cliquebench.trees import ConstituencyTree

PHRASE_LABELS = ("S", "NP", "VP", "PP", "SBAR", "ADJP")
POS_LABELS = ("DT", "NN", "VB", "IN", "JJ")
WORDS = ("the", "cat", "dog", "sat", "on", "mat", "old", "river", "ran", "by")
VOCAB = ("booth", "lincoln", "grant", "lee", "met", "killed", "saw", "city", "war", "army")

labels = st.sampled_from(PHRASE_LABELS + POS_LABELS)

word_leaves = st.builds(
    ConstituencyTree, st.sampled_from(WORDS), st.just(()), st.just(True)
)
category_leaves = st.builds(ConstituencyTree, labels, st.just(()), st.just(False))

#: Arbitrary trees; the root may be a bare category leaf but never a word.
trees = st.recursive(
    word_leaves | category_leaves,
    lambda child: st.builds(
        ConstituencyTree,
        labels,
        st.lists(child, min_size=1, max_size=3).map(tuple),
    ),
    max_leaves=8,
).filter(lambda t: not t.is_word)

#: Trees guaranteed to contain at least one production (root has children),
#: which keeps self-kernels positive.
productive_trees = st.builds(
    ConstituencyTree,
    labels,
    st.lists(trees | word_leaves, min_size=1, max_size=3).map(tuple),
)

#: Short label sequences over a tiny alphabet; repeats are frequent on
#: purpose, to exercise the one-to-one matching guards.
label_sequences = st.lists(st.sampled_from("abcd"), min_size=1, max_size=10)

token_slots = st.lists(st.sampled_from(VOCAB), min_size=1, max_size=3).map(tuple)

extraction_tuples = st.builds(
    ExtractionTuple,
    predicate=token_slots,
    args=st.lists(token_slots, min_size=1, max_size=3).map(tuple),
)


def random_extraction(rng: random.Random) -> ExtractionTuple:
    pick = lambda k: tuple(rng.choice(VOCAB) for _ in range(k))
    return ExtractionTuple(
        predicate=pick(rng.randint(1, 2)),
        args=tuple(pick(rng.randint(1, 3)) for _ in range(rng.randint(1, 3))),
    )


def random_extractions(rng: random.Random, low: int, high: int) -> list[ExtractionTuple]:
    return [random_extraction(rng) for _ in range(rng.randint(low, high))]
