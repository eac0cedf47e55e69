"""Permutations of the points [0, n) stored as image tuples.

A permutation ``p`` is the tuple ``(p(0), ..., p(n-1))``.  Composition is
left to right: ``compose(p, q)(i) = q(p(i))``.  This matches the stacking
order of braids, where the first factor of a product sits on top, so the
permutation of a braid word is the left-to-right fold of its letters.

Descent positions are 0-based throughout this module: position ``i`` refers
to the adjacent pair ``(i, i+1)``.  The braid layer converts to the 1-based
generator indexing used in words and serialized files.
"""

from __future__ import annotations

from typing import Sequence


def is_permutation(image: Sequence[int]) -> bool:
    """Check that ``image`` is a bijection of [0, n)."""
    n = len(image)
    seen = [False] * n
    for x in image:
        if not 0 <= x < n or seen[x]:
            return False
        seen[x] = True
    return True


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def is_identity(p: Sequence[int]) -> bool:
    return all(p[i] == i for i in range(len(p)))


def adjacent_transposition(n: int, i: int) -> tuple[int, ...]:
    """The transposition swapping points i and i+1 (0-based)."""
    if not 0 <= i < n - 1:
        raise ValueError(f"transposition position {i} out of range for n={n}")
    p = list(range(n))
    p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


def reversal(n: int) -> tuple[int, ...]:
    """The order-reversing permutation, image of the positive half twist."""
    return tuple(n - 1 - i for i in range(n))


def is_reversal(p: Sequence[int]) -> bool:
    n = len(p)
    return all(p[i] == n - 1 - i for i in range(n))


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Left-to-right composition: apply p, then q."""
    if len(p) != len(q):
        raise ValueError(f"cannot compose permutations on {len(p)} and {len(q)} points")
    return tuple(q[x] for x in p)


def inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def conjugate_by_reversal(p: Sequence[int]) -> tuple[int, ...]:
    """w0 . p . w0, the image of a factor under conjugation by the half twist."""
    n = len(p)
    return tuple(n - 1 - p[n - 1 - i] for i in range(n))


def inversions(p: Sequence[int]) -> int:
    """Number of inversions; the positive word length of the factor."""
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def descent_mask(p: Sequence[int]) -> int:
    """Bitmask of positions i with p(i) > p(i+1).

    These are the crossings that can be stripped from the front of the
    permutation braid of p (its starting set, 0-based).
    """
    mask = 0
    for i in range(len(p) - 1):
        if p[i] > p[i + 1]:
            mask |= 1 << i
    return mask


def descent_positions(p: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i in range(len(p) - 1) if p[i] > p[i + 1])


# ---------------------------------------------------------------------------
# The lattice of simple elements (prefix order on permutation braids)
# ---------------------------------------------------------------------------
#
# u is a prefix of w when w = u v with inversion counts adding.  Common
# prefixes are closed under join, so the greatest common prefix exists and
# is reached greedily: strip any front crossing available to both.  Suffixes
# work mirror-image, and the join comes from the complement anti-bijection
# x -> x^-1 . w0, which swaps the prefix and suffix orders.

def prefix_meet(u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    """Greatest common prefix of two permutation braids."""
    n = len(u)
    ru, rv = list(u), list(v)
    m = list(range(n))
    im = list(range(n))  # inverse of m, to append crossings in O(1)
    while True:
        i = -1
        for j in range(n - 1):
            if ru[j] > ru[j + 1] and rv[j] > rv[j + 1]:
                i = j
                break
        if i < 0:
            return tuple(m)
        p, q = im[i], im[i + 1]  # m gains the crossing at its back
        m[p], m[q] = i + 1, i
        im[i], im[i + 1] = q, p
        ru[i], ru[i + 1] = ru[i + 1], ru[i]  # residuals lose it at the front
        rv[i], rv[i + 1] = rv[i + 1], rv[i]


def suffix_meet(u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    """Greatest common suffix of two permutation braids."""
    n = len(u)
    ru, rv = list(u), list(v)
    iru, irv = list(inverse(u)), list(inverse(v))
    m = identity(n)
    while True:
        i = -1
        for j in range(n - 1):
            if iru[j] > iru[j + 1] and irv[j] > irv[j + 1]:
                i = j
                break
        if i < 0:
            return m
        t = adjacent_transposition(n, i)
        m = compose(t, m)
        # strip the crossing from the right of both residuals
        a, b = iru[i], iru[i + 1]
        ru[a], ru[b] = i + 1, i
        iru[i], iru[i + 1] = b, a
        a, b = irv[i], irv[i + 1]
        rv[a], rv[b] = i + 1, i
        irv[i], irv[i + 1] = b, a


def prefix_join(u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    """Least common multiple of two permutation braids in the prefix order."""
    n = len(u)
    rev = reversal(n)
    cu = compose(inverse(u), rev)  # right complement: u . cu = half twist
    cv = compose(inverse(v), rev)
    return compose(rev, inverse(suffix_meet(cu, cv)))


def transport(s: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    """The part of s not absorbed by v: v^-1 (s v prefix-join)."""
    return compose(inverse(v), prefix_join(s, v))


def lehmer_encode(p: Sequence[int]) -> tuple[int, ...]:
    """Lehmer code: digit j counts later points with smaller image."""
    n = len(p)
    return tuple(sum(1 for j in range(i + 1, n) if p[j] < p[i]) for i in range(n))


def lehmer_decode(n: int, digits: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`lehmer_encode`; digit j must lie in [0, n-1-j]."""
    if len(digits) != n:
        raise ValueError(f"expected {n} digits, got {len(digits)}")
    pool = list(range(n))
    image = []
    for j, d in enumerate(digits):
        if not 0 <= d <= n - 1 - j:
            raise ValueError(f"digit {d} at position {j} out of range [0, {n - 1 - j}]")
        image.append(pool.pop(d))
    return tuple(image)
