import random

import pytest

from braidsig.braid import Braid, BraidWord, normalize


def word(n: int, *letters: int) -> BraidWord:
    return BraidWord(n, tuple(letters))


def braid_of(n: int, *letters: int) -> Braid:
    return normalize(word(n, *letters))


def random_word(rng: random.Random, n: int, length: int) -> BraidWord:
    letters = tuple(rng.choice([1, -1]) * rng.randrange(1, n) for _ in range(length))
    return BraidWord(n, letters)


def random_braid_via_word(rng: random.Random, n: int, length: int) -> Braid:
    return normalize(random_word(rng, n, length))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xBADC0DE)
