"""Independent word-problem oracle via the action on a free group.

The braid group on n strands acts faithfully on the free group with
generators x_1..x_n: the i-th positive crossing sends x_i to x_i x_{i+1}
x_i^-1 and x_{i+1} to x_i, fixing the rest.  Two braid words are equal in
the group iff they induce the same endomorphism, which is checked on each
free generator as a freely reduced word.

This module never touches canonical forms; it exists so the normal-form
code has something independent to be tested against.

Free words are tuples of nonzero ints: +k is x_k, -k is x_k^-1 (1-based).
Braid letters use the same signed 1-based convention as words elsewhere.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def free_reduce(symbols: Iterable[int]) -> tuple[int, ...]:
    """Freely reduce a word, cancelling adjacent s, -s pairs."""
    stack: list[int] = []
    for s in symbols:
        if stack and stack[-1] == -s:
            stack.pop()
        else:
            stack.append(s)
    return tuple(stack)


def _apply_letter(letter: int, word: Sequence[int]) -> tuple[int, ...]:
    """Image of a free word under the substitution of one braid letter."""
    i = abs(letter)
    out: list[int] = []

    def emit(s: int) -> None:
        if out and out[-1] == -s:
            out.pop()
        else:
            out.append(s)

    if letter > 0:
        for s in word:
            a = abs(s)
            if a == i:
                if s > 0:
                    emit(i), emit(i + 1), emit(-i)
                else:
                    emit(i), emit(-(i + 1)), emit(-i)
            elif a == i + 1:
                emit(i if s > 0 else -i)
            else:
                emit(s)
    else:
        for s in word:
            a = abs(s)
            if a == i:
                emit(i + 1 if s > 0 else -(i + 1))
            elif a == i + 1:
                if s > 0:
                    emit(-(i + 1)), emit(i), emit(i + 1)
                else:
                    emit(-(i + 1)), emit(-i), emit(i + 1)
            else:
                emit(s)
    return tuple(out)


def generator_image(letters: Sequence[int], n: int, k: int) -> tuple[int, ...]:
    """Image of the free generator x_k under the automorphism of a braid word."""
    if not 1 <= k <= n:
        raise ValueError(f"free generator {k} out of range for n={n}")
    word: tuple[int, ...] = (k,)
    for letter in letters:
        if not 1 <= abs(letter) <= n - 1:
            raise ValueError(f"braid letter {letter} out of range for n={n}")
        word = _apply_letter(letter, word)
    return word


def words_equal(v: Sequence[int], w: Sequence[int], n: int) -> bool:
    """Decide equality of two braid words on n strands.

    Compares the induced free-group automorphisms generator by generator,
    with an early exit on the first mismatch.
    """
    for k in range(1, n + 1):
        if generator_image(v, n, k) != generator_image(w, n, k):
            return False
    return True
