"""Random braids with a bounded number of canonical factors.

A braid with 0 <= inf <= sup <= l is generated by concatenating l uniform
random canonical factors and normalizing.  The result is *not* uniform over
that set (normalization merges factor sequences), but it matches the
standard generator this construction is taken from; see the package notes.

Block sampling draws the factors from the subgroup braiding only the left
or right strand block.  The two blocks commute elementwise because their
generator ranges are separated by one unused generator.  The sampled word
is retained alongside the braid as syntactic evidence of membership.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .braid import Braid, BraidWord, factor_to_word, from_factors
from .rng import XofStream


class Block(enum.Enum):
    LEFT = "left"
    RIGHT = "right"
    FULL = "full"


def generator_range(block: Block, n: int) -> range:
    """1-based generator indices available to a block."""
    m = n // 2
    if block is Block.LEFT:
        return range(1, m)
    if block is Block.RIGHT:
        return range(m + 1, n)
    return range(1, n)


def strand_range(block: Block, n: int) -> range:
    """1-based strands a block is allowed to braid."""
    m = n // 2
    if block is Block.LEFT:
        return range(1, m + 1)
    if block is Block.RIGHT:
        return range(m + 1, n + 1)
    return range(1, n + 1)


@dataclass(frozen=True)
class SampleParams:
    n: int
    l: int
    seed: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"strand count must be at least 2, got {self.n}")
        if self.l < 1:
            raise ValueError(f"factor budget must be at least 1, got {self.l}")

    def stream(self) -> XofStream:
        return XofStream(self.seed)


@dataclass(frozen=True)
class TaggedBraid:
    """A braid plus the block it was sampled from and its word evidence."""

    braid: Braid
    block: Block
    word: BraidWord

    def __post_init__(self) -> None:
        allowed = generator_range(self.block, self.braid.n)
        for letter in self.word.letters:
            if abs(letter) not in allowed:
                raise ValueError(
                    f"letter {letter} outside the {self.block.value} block range {allowed!r}"
                )


def random_factor(n: int, stream: XofStream) -> tuple[int, ...]:
    """Uniform random canonical factor, as a permutation image."""
    return stream.permutation(n)


def random_braid(n: int, l: int, stream: XofStream) -> Braid:
    return from_factors(n, [random_factor(n, stream) for _ in range(l)])


def _embedded_factor(n: int, strands: range, stream: XofStream) -> tuple[int, ...]:
    """Random permutation of a 1-based strand range, identity elsewhere."""
    base = strands.start - 1
    sub = stream.permutation(len(strands))
    image = list(range(n))
    for i, x in enumerate(sub):
        image[base + i] = base + x
    return tuple(image)


def _block_braid(n: int, l: int, strands: range, block: Block, stream: XofStream) -> TaggedBraid:
    factors = [_embedded_factor(n, strands, stream) for _ in range(l)]
    letters: list[int] = []
    for f in factors:
        letters.extend(factor_to_word(n, f).letters)
    return TaggedBraid(
        braid=from_factors(n, factors),
        block=block,
        word=BraidWord(n, tuple(letters)),
    )


def random_block_braid(n: int, l: int, block: Block, stream: XofStream) -> TaggedBraid:
    if block is Block.FULL:
        raise ValueError("full-block sampling has no word evidence; use random_braid")
    if not generator_range(block, n):
        raise ValueError(f"{block.value} block is trivial at n={n}; need n >= 4")
    return _block_braid(n, l, strand_range(block, n), block, stream)


def commuting_strand_ranges(n: int) -> tuple[range, range]:
    """Two disjoint right-block strand ranges separated by one unused generator."""
    if n < 10:
        raise ValueError(f"commuting-pair sampling needs n >= 10, got {n}")
    m = n // 2
    gens = n - 1 - m  # generators in the right block
    h = (gens - 1) // 2
    return range(m + 1, m + h + 2), range(m + h + 2, n + 1)


def random_commuting_rb_pair(
    n: int, l: int, stream: XofStream
) -> tuple[TaggedBraid, TaggedBraid]:
    """Two right-block braids that commute by far-commutation.

    The first is sampled from the lower half of the right block's strands,
    the second from the upper half, with a one-generator gap between them.
    """
    lo, hi = commuting_strand_ranges(n)
    a = _block_braid(n, l, lo, Block.RIGHT, stream)
    b = _block_braid(n, l, hi, Block.RIGHT, stream)
    return a, b
