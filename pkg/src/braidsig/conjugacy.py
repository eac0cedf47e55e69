"""Conjugacy decision through summit representatives.

Two braids are conjugate iff they share a super summit element: a
conjugate whose half-twist power is maximal and whose canonical length is
minimal over the class.  A representative is reached by cycling (rotate
the first factor to the back) until the power stops growing, then
decycling (rotate the last factor to the front) until the length stops
shrinking; each is abandoned after n(n-1)/2 consecutive non-improving
steps, which certifies stability.

Membership of a representative in the other braid's super summit set is
then decided by closing the set under conjugation.  Closing under all
simple elements is exact but has n! candidates; instead, for each set
element and each generator we conjugate by the *minimal* simple element
that extends the generator and stays inside the summit stratum.  These
minimal conjugators connect the whole super summit set, so a completed
closure without a match soundly reports non-conjugacy.

The minimal element above a seed t is found by iterating two
necessary-divisor steps until both vanish.  Writing the set element as
D^p Y with complement C (so Y C = D^k), a simple t keeps the power iff
tau^p(t) divides Y t, and keeps the length iff t divides C tau^{p+k}(t).
When a divisibility A | B d fails at d = e, the defect B^-1 (A join B)
must divide any completing d, so it can be multiplied onto t; defects are
computed by transporting A along a factor chain of B.

Every search is bounded by an explicit budget; exceeding it yields the
third verdict, inconclusive, which callers must treat as distinct from
non-conjugacy.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .braid import Braid, delta, from_factors, from_permutation, identity
from .permutations import (
    adjacent_transposition,
    compose,
    conjugate_by_reversal,
    inversions,
    is_identity as is_identity_perm,
    reversal,
    transport,
)


class Verdict(enum.Enum):
    CONJUGATE = "conjugate"
    NOT_CONJUGATE = "not-conjugate"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SummitBudget:
    max_set_size: int = 20000
    max_iterations: int = 1_000_000

    def __post_init__(self) -> None:
        if self.max_set_size < 1 or self.max_iterations < 1:
            raise ValueError("budget limits must be positive")


DEFAULT_BUDGET = SummitBudget()


@dataclass(frozen=True)
class ConjugacyVerdict:
    kind: Verdict
    witness: Braid | None = None
    reason: str | None = None

    def __post_init__(self) -> None:
        if self.kind is Verdict.CONJUGATE and self.witness is None:
            raise ValueError("a conjugate verdict must carry a witness")


class BudgetExceededError(RuntimeError):
    pass


class _Meter:
    __slots__ = ("left",)

    def __init__(self, limit: int):
        self.left = limit

    def tick(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise BudgetExceededError("iteration budget exhausted")


# ---------------------------------------------------------------------------
# Cycling and decycling
# ---------------------------------------------------------------------------

def cycling_with_conjugator(x: Braid) -> tuple[Braid, Braid]:
    """Rotate the first factor to the back; returns (result, c) with
    c^-1 x c = result.  A braid without factors is returned unchanged."""
    if not x.factors:
        return x, identity(x.n)
    first = x.factors[0]
    if x.inf % 2:
        first = conjugate_by_reversal(first)
    z = from_factors(x.n, x.factors[1:] + (first,), twist=x.inf)
    return z, from_permutation(x.n, first)


def cycling(x: Braid) -> Braid:
    return cycling_with_conjugator(x)[0]


def decycling_with_conjugator(x: Braid) -> tuple[Braid, Braid]:
    """Rotate the last factor to the front; returns (result, c) with
    c^-1 x c = result."""
    if not x.factors:
        return x, identity(x.n)
    last = x.factors[-1]
    moved = conjugate_by_reversal(last) if x.inf % 2 else last
    z = from_factors(x.n, (moved,) + x.factors[:-1], twist=x.inf)
    return z, from_permutation(x.n, last).inverse()


def decycling(x: Braid) -> Braid:
    return decycling_with_conjugator(x)[0]


def summit_representative(
    x: Braid, budget: SummitBudget = DEFAULT_BUDGET, _meter: _Meter | None = None
) -> tuple[Braid, Braid]:
    """A super summit element of x's class, with the conjugator reaching it.

    Raises :class:`BudgetExceededError` when the iteration budget runs out;
    callers surface that as an inconclusive verdict.
    """
    meter = _meter if _meter is not None else _Meter(budget.max_iterations)
    n = x.n
    threshold = max(1, n * (n - 1) // 2)
    z, conj = x, identity(n)
    improved = True
    while improved:
        improved = False
        trial, acc, steps = z, identity(n), 0
        while trial.factors and steps < threshold:
            meter.tick()
            trial, c = cycling_with_conjugator(trial)
            acc = acc * c
            steps += 1
            if trial.inf > z.inf:
                z, conj = trial, conj * acc
                acc, steps = identity(n), 0
                improved = True
        trial, acc, steps = z, identity(n), 0
        while trial.factors and steps < threshold:
            meter.tick()
            trial, c = decycling_with_conjugator(trial)
            acc = acc * c
            steps += 1
            if trial.sup < z.sup:
                z, conj = trial, conj * acc
                acc, steps = identity(n), 0
                improved = True
    return z, conj


# ---------------------------------------------------------------------------
# Summit set closure
# ---------------------------------------------------------------------------

class _Stratum:
    """Per-element data for minimal-conjugator queries against one braid."""

    def __init__(self, z: Braid):
        self.n = z.n
        self.parity_p = z.inf % 2
        self.parity_pk = z.sup % 2
        self.chain = z.factors
        k = len(z.factors)
        comp = Braid(z.n, 0, z.factors).inverse() * delta(z.n) ** k
        if comp.inf < 0:
            raise RuntimeError("factor complement is not positive")
        self.comp_chain = (reversal(z.n),) * comp.inf + comp.factors

    def min_conjugator(self, seed: tuple[int, ...], meter: _Meter) -> tuple[int, ...]:
        """Minimal simple element extending ``seed`` whose conjugate of the
        braid stays in its stratum.  The half twist always qualifies, so the
        defect loop terminates within one twist length."""
        t = seed
        while True:
            meter.tick()
            # power condition: tau^p(t) must divide Y t
            s = conjugate_by_reversal(t) if self.parity_p else t
            for v in self.chain:
                s = transport(s, v)
            s = transport(s, t)
            if not is_identity_perm(s):
                t = self._grow(t, s)
                continue
            # length condition: t must divide C tau^{p+k}(t)
            s = t
            for v in self.comp_chain:
                s = transport(s, v)
            s = transport(s, conjugate_by_reversal(t) if self.parity_pk else t)
            if not is_identity_perm(s):
                t = self._grow(t, conjugate_by_reversal(s) if self.parity_pk else s)
                continue
            return t

    @staticmethod
    def _grow(t: tuple[int, ...], e: tuple[int, ...]) -> tuple[int, ...]:
        grown = compose(t, e)
        if inversions(grown) != inversions(t) + inversions(e):
            raise RuntimeError("minimal conjugator left the simple-element lattice")
        return grown


class SummitClosure:
    """The lazily grown super summit set of a base braid.

    Elements map to witnesses: ``w`` with ``w^-1 * base * w == element``.
    The set starts out seeded with the representative's cycling, decycling
    and twist orbits (cheap conjugations that stay in the stratum), then
    grows by minimal-conjugator expansion.  The closure and its iteration
    meter persist across queries, so one instance can serve several
    conjugacy questions against the same base.
    """

    _ORBIT_CAP = 512

    def __init__(
        self,
        base: Braid,
        budget: SummitBudget = DEFAULT_BUDGET,
        _meter: _Meter | None = None,
    ):
        self.base = base
        self.budget = budget
        self._meter = _meter if _meter is not None else _Meter(budget.max_iterations)
        self.rep, rep_conj = summit_representative(base, _meter=self._meter)
        self._elements: dict[Braid, Braid] = {}
        self._queue: deque[Braid] = deque()
        self._atoms = [adjacent_transposition(base.n, i) for i in range(base.n - 1)]
        self._add(self.rep, rep_conj)
        self._seed_orbits()

    @property
    def elements(self) -> dict[Braid, Braid]:
        return self._elements

    def _add(self, z: Braid, witness: Braid) -> bool:
        if z in self._elements:
            return False
        if len(self._elements) >= self.budget.max_set_size:
            raise BudgetExceededError("summit set size budget exhausted")
        self._elements[z] = witness
        self._queue.append(z)
        return True

    def _seed_orbits(self) -> None:
        half_twist = delta(self.base.n)
        for step in (cycling_with_conjugator, decycling_with_conjugator):
            z, w = self.rep, self._elements[self.rep]
            for _ in range(self._ORBIT_CAP):
                self._meter.tick()
                z, c = step(z)
                w = w * c
                if not self._add(z, w):
                    break
        for z, w in list(self._elements.items()):
            self._add(z.tau(), w * half_twist)

    @property
    def complete(self) -> bool:
        return not self._queue

    def __len__(self) -> int:
        return len(self._elements)

    def grow_one(self) -> list[Braid]:
        """Expand one queued element under its minimal conjugators, returning
        the elements that are new to the set."""
        z = self._queue.popleft()
        wz = self._elements[z]
        stratum = _Stratum(z)
        p, q = self.rep.inf, self.rep.sup
        new: list[Braid] = []
        tried: set[tuple[int, ...]] = set()
        for atom in self._atoms:
            c = stratum.min_conjugator(atom, self._meter)
            if c in tried:
                continue
            tried.add(c)
            cb = from_permutation(self.base.n, c)
            z2 = cb.inverse() * z * cb
            if z2.inf != p or z2.sup != q:
                raise RuntimeError("minimal conjugator left the summit stratum")
            if self._add(z2, wz * cb):
                new.append(z2)
        return new

    def find(self, target: Braid) -> Braid | None:
        """Witness conjugating the base to ``target``, or None when the
        completed closure certifies there is none."""
        if target in self._elements:
            return self._elements[target]
        while self._queue:
            self.grow_one()
            if target in self._elements:
                return self._elements[target]
        return None

    def decide(self, other: Braid) -> ConjugacyVerdict:
        """Verdict for the question: is ``other`` conjugate to the base?

        Runs the bilateral search between a fresh closure of ``other`` and
        this (persistent, possibly already grown) closure, so repeated
        queries against one base share their exploration.
        """
        if other.n != self.base.n:
            raise ValueError(f"strand counts differ: {other.n} != {self.base.n}")
        if other == self.base:
            return ConjugacyVerdict(Verdict.CONJUGATE, witness=identity(other.n))
        if other.exponent_sum() != self.base.exponent_sum():
            return ConjugacyVerdict(Verdict.NOT_CONJUGATE)
        try:
            mine = SummitClosure(other, self.budget)
        except BudgetExceededError as exc:
            return ConjugacyVerdict(Verdict.INCONCLUSIVE, reason=str(exc))
        return _intersect_closures(mine, self)


def _intersect_closures(cx: SummitClosure, cy: SummitClosure) -> ConjugacyVerdict:
    """Bilateral search: grow both summit sets (smaller side first) until
    they intersect or one of them completes.  A completed side is a full
    super summit set, so an empty intersection then certifies
    non-conjugacy.  The verdict answers: is cx.base conjugate to cy.base?
    """
    if (cx.rep.inf, cx.rep.sup) != (cy.rep.inf, cy.rep.sup):
        return ConjugacyVerdict(Verdict.NOT_CONJUGATE)

    def witness_for(z: Braid) -> Braid:
        c = cx.elements[z] * cy.elements[z].inverse()
        if c.inverse() * cx.base * c != cy.base:
            raise RuntimeError("summit closures produced an invalid witness")
        return c

    small, big = (cx, cy) if len(cx.elements) <= len(cy.elements) else (cy, cx)
    for z in small.elements:
        if z in big.elements:
            return ConjugacyVerdict(Verdict.CONJUGATE, witness=witness_for(z))
    try:
        while True:
            if cx.complete or cy.complete:
                return ConjugacyVerdict(Verdict.NOT_CONJUGATE)
            side, other = (cx, cy) if len(cx) <= len(cy) else (cy, cx)
            for z in side.grow_one():
                if z in other.elements:
                    return ConjugacyVerdict(Verdict.CONJUGATE, witness=witness_for(z))
    except BudgetExceededError as exc:
        return ConjugacyVerdict(Verdict.INCONCLUSIVE, reason=str(exc))


def is_conjugate(x: Braid, y: Braid, budget: SummitBudget = DEFAULT_BUDGET) -> ConjugacyVerdict:
    """Decide whether y is a conjugate of x.

    A conjugate verdict carries a witness c with c^-1 x c = y.  Exhausting
    the budget yields an inconclusive verdict, which verifiers must treat
    as failure distinct from non-conjugacy.
    """
    if x.n != y.n:
        raise ValueError(f"strand counts differ: {x.n} != {y.n}")
    if x == y:
        return ConjugacyVerdict(Verdict.CONJUGATE, witness=identity(x.n))
    if x.exponent_sum() != y.exponent_sum():
        return ConjugacyVerdict(Verdict.NOT_CONJUGATE)
    meter = _Meter(budget.max_iterations)
    try:
        cx = SummitClosure(x, budget, _meter=meter)
        cy = SummitClosure(y, budget, _meter=meter)
    except BudgetExceededError as exc:
        return ConjugacyVerdict(Verdict.INCONCLUSIVE, reason=str(exc))
    return _intersect_closures(cx, cy)
