"""The free-group action used as the word-problem oracle.

These tests only pin down the oracle itself; agreement between the oracle
and the canonical form is covered in the braid core tests.
"""

import random

from braidsig.freegroup import free_reduce, generator_image, words_equal


def test_free_reduce():
    assert free_reduce([1, -1]) == ()
    assert free_reduce([1, 2, -2, -1]) == ()
    assert free_reduce([1, 2, -1]) == (1, 2, -1)
    assert free_reduce([]) == ()


def test_generator_action_shape():
    # one positive crossing: x1 -> x1 x2 x1^-1, x2 -> x1, x3 fixed
    assert generator_image([1], 3, 1) == (1, 2, -1)
    assert generator_image([1], 3, 2) == (1,)
    assert generator_image([1], 3, 3) == (3,)


def test_inverse_crossing_undoes():
    rng = random.Random(5)
    for _ in range(100):
        letters = [rng.choice([1, -1]) * rng.randrange(1, 4) for _ in range(8)]
        undo = [-l for l in reversed(letters)]
        for k in range(1, 5):
            assert generator_image(letters + undo, 4, k) == (k,)


def test_braid_relations_hold():
    assert words_equal([1, 2, 1], [2, 1, 2], 3)
    assert words_equal([1, 3], [3, 1], 5)
    assert words_equal([1, -1], [], 3)


def test_distinct_words_differ():
    # exponent sums differ, so the automorphisms must differ
    assert not words_equal([1], [1, 1], 3)
    assert not words_equal([1], [2], 3)
