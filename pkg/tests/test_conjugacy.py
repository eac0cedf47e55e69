import itertools
import random

import pytest

from braidsig.braid import delta, from_permutation, generator, identity, normalize
from braidsig.conjugacy import (
    ConjugacyVerdict,
    SummitBudget,
    SummitClosure,
    Verdict,
    cycling,
    cycling_with_conjugator,
    decycling,
    decycling_with_conjugator,
    is_conjugate,
    summit_representative,
)
from braidsig.rng import XofStream
from braidsig.sample import random_braid

from conftest import braid_of, random_braid_via_word


def conjugate_by(x, c):
    return c.inverse() * x * c


class TestCycling:
    def test_no_factors_is_fixed(self):
        assert cycling(delta(4) ** 2) == delta(4) ** 2
        assert decycling(identity(4)) == identity(4)

    def test_conjugator_is_witness(self, rng):
        for _ in range(50):
            x = random_braid_via_word(rng, 5, 10)
            z, c = cycling_with_conjugator(x)
            assert conjugate_by(x, c) == z
            z, c = decycling_with_conjugator(x)
            assert conjugate_by(x, c) == z

    def test_cycling_never_lowers_twist_power(self, rng):
        # the rotated product is a half-twist power times a positive braid
        for _ in range(100):
            x = random_braid_via_word(rng, 4, 8)
            z = x
            for _ in range(4 * len(x)):
                z2 = cycling(z)
                assert z2.inf >= z.inf
                assert z2.sup <= z.sup
                z = z2

    def test_decycling_never_raises_length_bound(self, rng):
        for _ in range(100):
            x = random_braid_via_word(rng, 4, 8)
            z = x
            for _ in range(4 * len(x)):
                z2 = decycling(z)
                assert z2.sup <= z.sup
                assert z2.inf >= z.inf
                z = z2


class TestSummitRepresentative:
    def test_half_twist_power_is_its_own_summit(self):
        for e in (-2, -1, 0, 1, 3):
            rep, conj = summit_representative(delta(4) ** e)
            assert rep == delta(4) ** e
            assert conj == identity(4)

    def test_conjugator_reaches_representative(self, rng):
        for _ in range(50):
            x = random_braid_via_word(rng, 5, 10)
            rep, conj = summit_representative(x)
            assert conjugate_by(x, conj) == rep

    def test_class_invariance_of_interval(self, rng):
        for _ in range(50):
            n = rng.choice([4, 5, 6])
            x = random_braid_via_word(rng, n, 8)
            c = random_braid_via_word(rng, n, 8)
            rx, _ = summit_representative(x)
            ry, _ = summit_representative(conjugate_by(x, c))
            assert (rx.inf, rx.sup) == (ry.inf, ry.sup)

    def test_no_bounded_conjugate_beats_the_representative(self, rng):
        """Independent maximality check: any conjugate is a positive-braid
        conjugate (central full twists cancel), so a breadth-first search
        over bounded positive conjugators must never improve on the
        representative's power or length."""
        for _ in range(12):
            n = rng.choice([3, 4])
            x = random_braid_via_word(rng, n, rng.randrange(1, 9))
            rep, _ = summit_representative(x)
            gens = [generator(n, i) for i in range(1, n)]
            frontier, seen = {x}, {x}
            for _depth in range(6):
                nxt = set()
                for z in frontier:
                    for g in gens:
                        z2 = conjugate_by(z, g)
                        if z2 not in seen:
                            seen.add(z2)
                            nxt.add(z2)
                            assert z2.inf <= rep.inf
                            assert z2.sup >= rep.sup
                frontier = nxt


class TestIsConjugate:
    def test_constructed_conjugates_found_with_witness(self):
        stream = XofStream(2024)
        for _ in range(40):
            x = random_braid(8, 4, stream)
            c = random_braid(8, 3, stream)
            verdict = is_conjugate(x, conjugate_by(x, c))
            assert verdict.kind is Verdict.CONJUGATE
            w = verdict.witness
            assert conjugate_by(x, w) == conjugate_by(x, c)

    def test_exponent_sum_mismatch(self):
        assert is_conjugate(braid_of(3, 1), braid_of(3, 1, 1)).kind is Verdict.NOT_CONJUGATE

    def test_generators_conjugate_via_twist(self):
        verdict = is_conjugate(generator(3, 1), generator(3, 2))
        assert verdict.kind is Verdict.CONJUGATE
        assert conjugate_by(generator(3, 1), verdict.witness) == generator(3, 2)

    def test_equal_inputs(self):
        x = braid_of(4, 1, 2, 3)
        v = is_conjugate(x, x)
        assert v.kind is Verdict.CONJUGATE and v.witness == identity(4)

    def test_strand_count_mismatch(self):
        with pytest.raises(ValueError):
            is_conjugate(generator(3, 1), generator(4, 1))

    def test_verdict_symmetry(self, rng):
        for _ in range(20):
            x = random_braid_via_word(rng, 4, 6)
            y = random_braid_via_word(rng, 4, 6)
            assert is_conjugate(x, y).kind == is_conjugate(y, x).kind

    def test_tiny_budget_is_inconclusive(self):
        stream = XofStream(5)
        x = random_braid(6, 3, stream)
        c = random_braid(6, 3, stream)
        verdict = is_conjugate(x, conjugate_by(x, c), SummitBudget(max_set_size=20000, max_iterations=3))
        assert verdict.kind is Verdict.INCONCLUSIVE
        assert verdict.reason

    def test_conjugate_verdict_requires_witness(self):
        with pytest.raises(ValueError):
            ConjugacyVerdict(Verdict.CONJUGATE)


def braids_of_length_up_to(n, max_len):
    """All braids given by words of bounded length (as words over signed letters)."""
    letters = [i for i in range(1, n)] + [-i for i in range(1, n)]
    seen = {}
    from braidsig.braid import BraidWord

    for length in range(max_len + 1):
        for combo in itertools.product(letters, repeat=length):
            b = normalize(BraidWord(n, combo))
            seen.setdefault(b, combo)
    return seen


class TestBruteForceAgreement:
    def test_short_word_pairs_at_three_strands(self):
        """Exhaustive conjugator search never contradicts the decision
        procedure on sampled short-word pairs."""
        n = 3
        conjugators = list(braids_of_length_up_to(n, 4))
        rng = random.Random(99)
        elements = list(braids_of_length_up_to(n, 4))
        pairs = [(rng.choice(elements), rng.choice(elements)) for _ in range(40)]
        # seed in some guaranteed-conjugate pairs
        for _ in range(10):
            x = rng.choice(elements)
            c = rng.choice(conjugators)
            pairs.append((x, conjugate_by(x, c)))
        for x, y in pairs:
            brute = any(conjugate_by(x, c) == y for c in conjugators)
            verdict = is_conjugate(x, y)
            assert verdict.kind is not Verdict.INCONCLUSIVE
            if brute:
                assert verdict.kind is Verdict.CONJUGATE
            if verdict.kind is Verdict.NOT_CONJUGATE:
                assert not brute


class TestSummitClosure:
    def test_matches_full_simple_element_closure(self):
        """The minimal-conjugator expansion must produce exactly the closure
        under conjugation by all nontrivial simple elements."""
        stream = XofStream(3141)
        for n, l in ((4, 3), (5, 3)):
            simples = [
                from_permutation(n, p) for p in itertools.permutations(range(n))
            ]
            simples = [s for s in simples if not s.is_identity()] + [delta(n)]
            for _ in range(6):
                x = random_braid(n, l, stream)
                closure = SummitClosure(x)
                while not closure.complete:
                    closure.grow_one()
                rep = closure.rep
                expected = {rep}
                queue = [rep]
                while queue:
                    z = queue.pop()
                    for s in simples:
                        z2 = conjugate_by(z, s)
                        if z2.inf == rep.inf and z2.sup == rep.sup and z2 not in expected:
                            expected.add(z2)
                            queue.append(z2)
                assert set(closure.elements) == expected

    def test_witnesses_are_valid(self):
        stream = XofStream(59)
        x = random_braid(5, 3, stream)
        closure = SummitClosure(x)
        while not closure.complete:
            closure.grow_one()
        for z, w in closure.elements.items():
            assert conjugate_by(x, w) == z

    def test_find_grows_to_target(self):
        stream = XofStream(67)
        x = random_braid(5, 3, stream)
        c = random_braid(5, 2, stream)
        closure = SummitClosure(x)
        rep_other, conj = summit_representative(c.inverse() * x * c)
        w = closure.find(rep_other)
        assert w is not None and conjugate_by(x, w) == rep_other
        assert closure.find(delta(5) ** 99) is None  # finishes the closure

    def test_decide_reuses_closure(self):
        stream = XofStream(61)
        x = random_braid(6, 3, stream)
        closure = SummitClosure(x)
        c = random_braid(6, 2, stream)
        verdict = closure.decide(conjugate_by(x, c))
        assert verdict.kind is Verdict.CONJUGATE
        assert conjugate_by(conjugate_by(x, c), verdict.witness) == x
        other = random_braid(6, 3, stream)
        sym = closure.decide(other)
        assert sym.kind == is_conjugate(other, x).kind
