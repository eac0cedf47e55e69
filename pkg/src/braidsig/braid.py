"""Braid group elements in left canonical form.

A braid on n strands is stored as a triple ``(n, inf, factors)``:

- ``inf`` is the (possibly negative) power of the fundamental half twist
  that leads the normal form;
- ``factors`` is the sequence of canonical factors, each a permutation
  braid given by its image tuple (see :mod:`braidsig.permutations`).

The stored form is always the left canonical one: no factor is the identity
or the half twist, and for each adjacent pair the finishing set of the left
factor contains the starting set of the right factor.  Equality of braids
is therefore plain component equality, and braids are hashable.

Words over the Artin generators are the import/export format.  A word is a
sequence of signed 1-based letters: ``+i`` and ``-i`` stand for the i-th
elementary crossing and its inverse.  Negative letters are absorbed by
rewriting each as a negative half twist followed by the complementary
permutation braid, then commuting all the twists to the front.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .permutations import (
    adjacent_transposition,
    compose,
    conjugate_by_reversal,
    descent_positions,
    identity as identity_perm,
    inverse as inverse_perm,
    inversions,
    is_identity as is_identity_perm,
    is_permutation,
    is_reversal,
    reversal,
)


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators: signed 1-based letters."""

    n: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"strand count must be at least 2, got {self.n}")
        for letter in self.letters:
            if letter == 0 or not 1 <= abs(letter) <= self.n - 1:
                raise ValueError(f"letter {letter} out of range for n={self.n}")

    def __len__(self) -> int:
        return len(self.letters)

    def inverse_word(self) -> "BraidWord":
        return BraidWord(self.n, tuple(-letter for letter in reversed(self.letters)))

    def concat(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise ValueError(f"strand counts differ: {self.n} != {other.n}")
        return BraidWord(self.n, self.letters + other.letters)

    def exponent_sum(self) -> int:
        return sum(1 if letter > 0 else -1 for letter in self.letters)


@dataclass(frozen=True)
class Braid:
    """A braid in left canonical form.  Build via the module constructors."""

    n: int
    inf: int
    factors: tuple[tuple[int, ...], ...]

    @property
    def sup(self) -> int:
        return self.inf + len(self.factors)

    def __len__(self) -> int:
        """Canonical length: the number of factors."""
        return len(self.factors)

    def is_identity(self) -> bool:
        return self.inf == 0 and not self.factors

    def __mul__(self, other: "Braid") -> "Braid":
        if not isinstance(other, Braid):
            return NotImplemented
        if self.n != other.n:
            raise ValueError(f"strand counts differ: {self.n} != {other.n}")
        n = self.n
        if not self.factors:
            return Braid(n, self.inf + other.inf, other.factors)
        if not other.factors:
            if other.inf % 2 == 0:
                return Braid(n, self.inf + other.inf, self.factors)
            twisted = tuple(conjugate_by_reversal(f) for f in self.factors)
            return Braid(n, self.inf + other.inf, twisted)
        if other.inf % 2 == 0:
            left = list(self.factors)
        else:
            left = [conjugate_by_reversal(f) for f in self.factors]
        seq = left + list(other.factors)
        junction = len(left) - 1
        d, factors = _canonical_factors(n, seq, dirty=(junction,))
        return Braid(n, self.inf + other.inf + d, factors)

    def inverse(self) -> "Braid":
        """Group inverse, computed factorwise through left complements."""
        n, p, fs = self.n, self.inf, self.factors
        k = len(fs)
        if k == 0:
            return Braid(n, -p, ())
        rev = reversal(n)
        out: list[tuple[int, ...]] = [()] * k
        e = -p
        for j in range(k, 0, -1):
            a = fs[k - j]
            c = compose(rev, inverse_perm(a))  # left complement: half twist minus a
            if e % 2:
                c = conjugate_by_reversal(c)
            out[j - 1] = c
            e -= 1
        d, factors = _canonical_factors(n, out)
        return Braid(n, -(p + k) + d, factors)

    def __pow__(self, e: int) -> "Braid":
        if e == 0:
            return identity(self.n)
        if e < 0:
            return (self ** (-e)).inverse()
        acc = identity(self.n)
        base = self
        while e:
            if e & 1:
                acc = acc * base
            e >>= 1
            if e:
                base = base * base
        return acc

    def tau(self) -> "Braid":
        """Conjugation by the half twist; an involution sending each
        generator index i to n-i."""
        return Braid(self.n, self.inf, tuple(conjugate_by_reversal(f) for f in self.factors))

    def underlying_permutation(self) -> tuple[int, ...]:
        p = reversal(self.n) if self.inf % 2 else identity_perm(self.n)
        for f in self.factors:
            p = compose(p, f)
        return p

    def exponent_sum(self) -> int:
        """Letter-sign sum; invariant under conjugation."""
        half_twist_length = self.n * (self.n - 1) // 2
        return self.inf * half_twist_length + sum(inversions(f) for f in self.factors)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def identity(n: int) -> Braid:
    _check_n(n)
    return Braid(n, 0, ())


def delta(n: int) -> Braid:
    """The fundamental half twist."""
    _check_n(n)
    return Braid(n, 1, ())


def generator(n: int, i: int) -> Braid:
    """The i-th Artin generator (1-based).  At n=2 the lone crossing is
    already the half twist."""
    _check_n(n)
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range for n={n}")
    return from_permutation(n, adjacent_transposition(n, i - 1))


def from_permutation(n: int, image: Sequence[int]) -> Braid:
    """The permutation braid of an image tuple (positive lift)."""
    _check_n(n)
    if len(image) != n or not is_permutation(image):
        raise ValueError(f"not a permutation of {n} points: {image!r}")
    p = tuple(image)
    if is_identity_perm(p):
        return identity(n)
    if is_reversal(p):
        return delta(n)
    return Braid(n, 0, (p,))


def from_factors(n: int, factors: Iterable[Sequence[int]], twist: int = 0) -> Braid:
    """Normal form of a half-twist power followed by permutation braids."""
    _check_n(n)
    seq = [tuple(f) for f in factors]
    for f in seq:
        if len(f) != n or not is_permutation(f):
            raise ValueError(f"not a permutation of {n} points: {f!r}")
    d, out = _canonical_factors(n, seq)
    return Braid(n, twist + d, out)


def normalize(word: BraidWord) -> Braid:
    """Left canonical form of the braid a word represents."""
    n = word.n
    rev = reversal(n)
    seq: list[tuple[int, ...]] = []
    twists: list[int] = []
    for letter in word.letters:
        t = adjacent_transposition(n, abs(letter) - 1)
        if letter > 0:
            seq.append(t)
            twists.append(0)
        else:
            seq.append(compose(rev, t))  # half twist with the crossing undone
            twists.append(-1)
    e = 0
    for idx in range(len(seq) - 1, -1, -1):
        if e % 2:
            seq[idx] = conjugate_by_reversal(seq[idx])
        e += twists[idx]
    d, factors = _canonical_factors(n, seq)
    return Braid(n, e + d, factors)


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"strand count must be at least 2, got {n}")


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------

def underlying_perm(word: BraidWord) -> tuple[int, ...]:
    """Image of a word under the strand-permutation homomorphism.

    Letter signs are ignored: a crossing and its inverse permute the
    endpoints identically.
    """
    p = identity_perm(word.n)
    for letter in word.letters:
        p = compose(p, adjacent_transposition(word.n, abs(letter) - 1))
    return p


def factor_to_word(n: int, image: Sequence[int]) -> BraidWord:
    """Positive word realizing a permutation braid.

    Strips the lowest available front crossing at each step, so the word
    length equals the inversion count and the result is deterministic.
    """
    if len(image) != n or not is_permutation(image):
        raise ValueError(f"not a permutation of {n} points: {image!r}")
    p = list(image)
    letters: list[int] = []
    while True:
        pos = next((i for i in range(n - 1) if p[i] > p[i + 1]), None)
        if pos is None:
            break
        letters.append(pos + 1)
        p[pos], p[pos + 1] = p[pos + 1], p[pos]
    return BraidWord(n, tuple(letters))


def delta_word(n: int) -> BraidWord:
    """The product formula for the half twist: descending runs of generators."""
    letters = []
    for run in range(n - 1, 0, -1):
        letters.extend(range(1, run + 1))
    return BraidWord(n, tuple(letters))


def to_word(x: Braid) -> BraidWord:
    """A word representing the braid: half-twist powers, then factor words."""
    letters: list[int] = []
    dw = delta_word(x.n).letters
    if x.inf >= 0:
        letters.extend(dw * x.inf)
    else:
        letters.extend(tuple(-l for l in reversed(dw)) * -x.inf)
    for f in x.factors:
        letters.extend(factor_to_word(x.n, f).letters)
    return BraidWord(x.n, tuple(letters))


# ---------------------------------------------------------------------------
# Starting and finishing sets
# ---------------------------------------------------------------------------

def starting_set(image: Sequence[int]) -> frozenset[int]:
    """Generators (1-based) that can be stripped from the front of a
    permutation braid: the descents of the image."""
    return frozenset(i + 1 for i in descent_positions(image))


def finishing_set(image: Sequence[int]) -> frozenset[int]:
    """Generators (1-based) that can be stripped from the back: the
    descents of the inverse image."""
    return frozenset(i + 1 for i in descent_positions(inverse_perm(image)))


def is_left_weighted_pair(a: Sequence[int], b: Sequence[int]) -> bool:
    return starting_set(b) <= finishing_set(a)


def validate_normal_form(x: Braid) -> None:
    """Raise ValueError unless the stored data is a left canonical form."""
    _check_n(x.n)
    for f in x.factors:
        if len(f) != x.n or not is_permutation(f):
            raise ValueError(f"factor is not a permutation of {x.n} points: {f!r}")
        if is_identity_perm(f):
            raise ValueError("identity factor in canonical form")
        if is_reversal(f):
            raise ValueError("half-twist factor in canonical form")
    for a, b in zip(x.factors, x.factors[1:]):
        if not is_left_weighted_pair(a, b):
            raise ValueError(f"adjacent pair not left-weighted: {a!r}, {b!r}")


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def enumerate_permutation_braids(n: int) -> int:
    """Count distinct braids arising from the positive words of all
    permutations.  Test-scale only."""
    _check_n(n)
    if n > 6:
        raise ValueError(f"permutation-braid enumeration capped at n=6, got {n}")
    seen = {normalize(factor_to_word(n, p)) for p in itertools.permutations(range(n))}
    return len(seen)


# ---------------------------------------------------------------------------
# Normalization kernel
# ---------------------------------------------------------------------------

def _canonical_factors(
    n: int,
    factors: Sequence[tuple[int, ...]],
    dirty: tuple[int, ...] | None = None,
) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Left-weight a factor sequence.

    Returns ``(d, out)`` where d counts the half twists that surfaced at the
    front.  ``dirty`` optionally lists the only adjacent-pair indices that
    may violate left-weighting; omitted means all pairs are suspect.
    """
    work = [list(f) for f in factors]
    invs = [list(inverse_perm(f)) for f in factors]
    k = len(work)

    if k >= 2:
        if dirty is None:
            pending = list(range(k - 2, -1, -1))
            in_pending = [True] * (k - 1)
        else:
            in_pending = [False] * (k - 1)
            pending = []
            for i in dirty:
                if 0 <= i < k - 1 and not in_pending[i]:
                    pending.append(i)
                    in_pending[i] = True
        while pending:
            i = pending.pop()
            in_pending[i] = False
            a, ia = work[i], invs[i]
            b, ib = work[i + 1], invs[i + 1]
            moved = False
            while True:
                sb = 0
                for j in range(n - 1):
                    if b[j] > b[j + 1]:
                        sb |= 1 << j
                fa = 0
                for j in range(n - 1):
                    if ia[j] > ia[j + 1]:
                        fa |= 1 << j
                d = sb & ~fa
                if not d:
                    break
                j = (d & -d).bit_length() - 1
                # a gains the crossing at its back: values j, j+1 swap places.
                p, q = ia[j], ia[j + 1]
                a[p], a[q] = j + 1, j
                ia[j], ia[j + 1] = q, p
                # b loses the crossing at its front: entries j, j+1 swap.
                u, v = b[j], b[j + 1]
                b[j], b[j + 1] = v, u
                ib[u], ib[v] = j + 1, j
                moved = True
            if moved:
                for nb in (i - 1, i + 1):
                    if 0 <= nb < k - 1 and not in_pending[nb]:
                        pending.append(nb)
                        in_pending[nb] = True

    # At the fixpoint half twists have migrated to the front and identities
    # to the back; strip both.
    lo, hi = 0, k
    while lo < hi and all(work[lo][i] == n - 1 - i for i in range(n)):
        lo += 1
    while lo < hi and all(work[hi - 1][i] == i for i in range(n)):
        hi -= 1
    return lo, tuple(tuple(f) for f in work[lo:hi])
