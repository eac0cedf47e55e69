import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from braidsig import permutations as P
from braidsig.braid import (
    Braid,
    BraidWord,
    delta,
    delta_word,
    enumerate_permutation_braids,
    factor_to_word,
    finishing_set,
    from_factors,
    from_permutation,
    generator,
    identity,
    normalize,
    starting_set,
    to_word,
    underlying_perm,
    validate_normal_form,
)
from braidsig.freegroup import words_equal

from conftest import braid_of, random_braid_via_word, random_word, word


def one_based(image):
    return tuple(v - 1 for v in image)


class TestNormalizeExamples:
    def test_cancelling_pair_is_identity(self):
        assert normalize(word(3, 1, -1)) == Braid(3, 0, ())

    def test_half_twist_product_formula(self):
        assert normalize(word(3, 1, 2, 1)) == Braid(3, 1, ())
        for n in range(2, 7):
            assert normalize(delta_word(n)) == delta(n)

    def test_single_negative_crossing(self):
        assert normalize(word(3, -1)) == Braid(3, -1, (one_based([3, 1, 2]),))

    def test_round_trip_idempotent(self, rng):
        for _ in range(100):
            n = rng.choice([3, 4, 5])
            x = random_braid_via_word(rng, n, rng.randrange(0, 12))
            assert normalize(to_word(x)) == x


class TestEqExamples:
    def test_adjacent_relation(self):
        assert braid_of(3, 1, 2, 1) == braid_of(3, 2, 1, 2)

    def test_far_commutation(self):
        assert braid_of(5, 1, 3) == braid_of(5, 3, 1)

    def test_distinct_generators_differ(self):
        assert braid_of(3, 1) != braid_of(3, 2)
        assert not words_equal((1,), (2,), 3)


class TestGroupOperations:
    def test_mul_identity_and_inverse(self, rng):
        for _ in range(50):
            x = random_braid_via_word(rng, 4, 10)
            assert x * identity(4) == x
            assert identity(4) * x == x
            assert (x * x.inverse()).is_identity()
            assert (x.inverse() * x).is_identity()

    def test_mul_matches_word_concatenation(self):
        assert generator(3, 1) * generator(3, 2) == braid_of(3, 1, 2)

    def test_mul_mismatched_strands(self):
        with pytest.raises(ValueError):
            generator(3, 1) * generator(4, 1)

    def test_inverse_examples(self):
        assert identity(3).inverse() == identity(3)
        assert generator(3, 1).inverse() == braid_of(3, -1)

    def test_inverse_matches_word_route(self, rng):
        # independent route: reverse the word, negate the signs, normalize
        for _ in range(80):
            n = rng.choice([3, 4, 6])
            w = random_word(rng, n, rng.randrange(0, 12))
            assert normalize(w).inverse() == normalize(w.inverse_word())

    def test_double_inverse(self, rng):
        for _ in range(100):
            x = random_braid_via_word(rng, 5, 10)
            assert x.inverse().inverse() == x

    def test_pow_examples(self, rng):
        x = random_braid_via_word(rng, 4, 8)
        assert x**0 == identity(4)
        assert x**1 == x
        assert generator(3, 1) ** 4 == braid_of(3, 1, 1, 1, 1)

    def test_pow_additivity_and_negatives(self, rng):
        for _ in range(40):
            x = random_braid_via_word(rng, 4, 6)
            a, b = rng.randrange(-4, 5), rng.randrange(-4, 5)
            assert x ** (a + b) == (x**a) * (x**b)
            assert x**-3 == (x**3).inverse()

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_associativity(self, data):
        n = data.draw(st.integers(3, 5))
        letters = st.lists(
            st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i])), max_size=8
        )
        x = normalize(BraidWord(n, tuple(data.draw(letters))))
        y = normalize(BraidWord(n, tuple(data.draw(letters))))
        z = normalize(BraidWord(n, tuple(data.draw(letters))))
        assert (x * y) * z == x * (y * z)

    def test_half_twist_square_central(self, rng):
        for _ in range(100):
            n = rng.choice([3, 4, 5])
            x = random_braid_via_word(rng, n, 10)
            d2 = delta(n) ** 2
            assert d2 * x == x * d2


class TestTau:
    def test_identity_fixed(self):
        assert identity(4).tau() == identity(4)

    def test_generator_mirrored_and_oracle_confirms(self):
        for n in range(3, 6):
            assert generator(n, 1).tau() == generator(n, n - 1)
            dw = delta_word(n).letters
            conjugated = tuple(-l for l in reversed(dw)) + (1,) + dw
            assert words_equal(conjugated, (n - 1,), n)

    def test_involution(self, rng):
        for _ in range(100):
            x = random_braid_via_word(rng, 5, 8)
            assert x.tau().tau() == x

    def test_tau_is_half_twist_conjugation(self, rng):
        for _ in range(30):
            n = rng.choice([3, 4, 5])
            x = random_braid_via_word(rng, n, 8)
            d = delta(n)
            assert x.tau() == d.inverse() * x * d


class TestUnderlyingPermutation:
    def test_examples(self):
        assert underlying_perm(word(3)) == P.identity(3)
        assert underlying_perm(word(3, 1)) == one_based([2, 1, 3])
        assert underlying_perm(word(3, 1, 2, 1)) == one_based([3, 2, 1])

    def test_sign_ignored(self):
        assert underlying_perm(word(3, -1)) == underlying_perm(word(3, 1))

    def test_homomorphism(self, rng):
        for _ in range(100):
            n = rng.choice([3, 4, 5])
            v = random_word(rng, n, rng.randrange(0, 10))
            w = random_word(rng, n, rng.randrange(0, 10))
            assert underlying_perm(v.concat(w)) == P.compose(underlying_perm(v), underlying_perm(w))

    def test_braid_method_agrees_with_word(self, rng):
        for _ in range(50):
            w = random_word(rng, 4, 10)
            assert normalize(w).underlying_permutation() == underlying_perm(w)


class TestFactorWords:
    def test_identity_is_empty(self):
        assert factor_to_word(3, P.identity(3)).letters == ()

    def test_transposition_is_single_letter(self):
        assert factor_to_word(3, one_based([2, 1, 3])).letters == (1,)

    def test_half_twist_word(self):
        w = factor_to_word(3, one_based([3, 2, 1]))
        assert len(w.letters) == 3
        assert words_equal(w.letters, (1, 2, 1), 3)

    def test_length_is_inversion_count(self):
        for p in itertools.permutations(range(4)):
            w = factor_to_word(4, p)
            assert len(w.letters) == P.inversions(p)
            assert underlying_perm(w) == p


def left_divides_by_oracle(n, i, a):
    """sigma_i left-divides the permutation braid of a, decided by brute
    force over all shorter permutation braids plus the word oracle."""
    wa = factor_to_word(n, a).letters
    for b in itertools.permutations(range(n)):
        if P.inversions(b) != P.inversions(a) - 1:
            continue
        if words_equal((i,) + factor_to_word(n, b).letters, wa, n):
            return True
    return False


def right_divides_by_oracle(n, i, a):
    wa = factor_to_word(n, a).letters
    for b in itertools.permutations(range(n)):
        if P.inversions(b) != P.inversions(a) - 1:
            continue
        if words_equal(factor_to_word(n, b).letters + (i,), wa, n):
            return True
    return False


class TestStartingFinishingSets:
    def test_identity_empty(self):
        assert starting_set(P.identity(4)) == frozenset()
        assert finishing_set(P.identity(4)) == frozenset()

    def test_transposition_singleton(self):
        for n in (3, 4):
            for i in range(1, n):
                t = P.adjacent_transposition(n, i - 1)
                assert starting_set(t) == {i}
                assert finishing_set(t) == {i}

    def test_half_twist_full(self):
        assert starting_set(P.reversal(4)) == {1, 2, 3}

    @pytest.mark.parametrize("n", [3, 4])
    def test_descent_rules_match_divisibility_oracle(self, n):
        """The combinatorial rules must agree with braid divisibility,
        exhaustively over all permutation braids."""
        for a in itertools.permutations(range(n)):
            assert starting_set(a) == {
                i for i in range(1, n) if left_divides_by_oracle(n, i, a)
            }
            assert finishing_set(a) == {
                i for i in range(1, n) if right_divides_by_oracle(n, i, a)
            }

    def test_finishing_is_starting_of_reversed_braid(self):
        # reversing a positive word inverts the permutation
        for a in itertools.permutations(range(4)):
            rev_letters = tuple(reversed(factor_to_word(4, a).letters))
            assert finishing_set(a) == starting_set(underlying_perm(BraidWord(4, rev_letters)))


class TestNormalFormValidity:
    def test_every_operation_output_validates(self, rng):
        for _ in range(80):
            n = rng.choice([3, 4, 5])
            x = random_braid_via_word(rng, n, rng.randrange(0, 12))
            y = random_braid_via_word(rng, n, rng.randrange(0, 12))
            for value in (x, y, x * y, x.inverse(), x**3, x.tau()):
                validate_normal_form(value)

    def test_validator_rejects_bad_forms(self):
        with pytest.raises(ValueError):
            validate_normal_form(Braid(3, 0, (P.identity(3),)))
        with pytest.raises(ValueError):
            validate_normal_form(Braid(3, 0, (P.reversal(3),)))
        # (s1, s1) is not left-weighted: S(right) = {1} but F(left) = {1}? it is;
        # use (s2, s1) at n=3 whose transfer is pending
        t1 = P.adjacent_transposition(3, 0)
        t2 = P.adjacent_transposition(3, 1)
        with pytest.raises(ValueError):
            validate_normal_form(Braid(3, 0, (t2, t1)))


class TestRelationSoundness:
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_all_relations(self, n):
        for i in range(1, n):
            for j in range(1, n):
                if abs(i - j) >= 2:
                    assert braid_of(n, i, j) == braid_of(n, j, i)
        for i in range(1, n - 1):
            assert braid_of(n, i, i + 1, i) == braid_of(n, i + 1, i, i + 1)


class TestOracleEquivalence:
    def test_sampled_words_agree(self):
        rng = random.Random(101)
        for n in (3, 4):
            for _ in range(150):
                v = random_word(rng, n, rng.randrange(0, 13))
                w = random_word(rng, n, rng.randrange(0, 13))
                assert (normalize(v) == normalize(w)) == words_equal(v.letters, w.letters, n)


class TestExponentSum:
    def test_matches_word_sign_sum(self, rng):
        for _ in range(100):
            n = rng.choice([3, 4, 5])
            w = random_word(rng, n, rng.randrange(0, 14))
            assert normalize(w).exponent_sum() == w.exponent_sum()

    def test_invariant_under_conjugation(self, rng):
        for _ in range(50):
            x = random_braid_via_word(rng, 4, 8)
            c = random_braid_via_word(rng, 4, 8)
            assert (c.inverse() * x * c).exponent_sum() == x.exponent_sum()


class TestEnumeration:
    def test_counts_match_factorials(self):
        assert enumerate_permutation_braids(2) == 2
        assert enumerate_permutation_braids(3) == 6
        assert enumerate_permutation_braids(4) == 24

    def test_guard(self):
        with pytest.raises(ValueError):
            enumerate_permutation_braids(7)


class TestConstructors:
    def test_from_permutation_special_cases(self):
        assert from_permutation(3, P.identity(3)) == identity(3)
        assert from_permutation(3, P.reversal(3)) == delta(3)
        assert from_permutation(3, one_based([2, 1, 3])) == generator(3, 1)

    def test_from_factors_matches_word_product(self, rng):
        for _ in range(40):
            n = rng.choice([3, 4, 5])
            perms = [tuple(rng.sample(range(n), n)) for _ in range(rng.randrange(0, 5))]
            via_words = identity(n)
            for p in perms:
                via_words = via_words * normalize(factor_to_word(n, p))
            assert from_factors(n, perms) == via_words

    def test_word_validation(self):
        with pytest.raises(ValueError):
            BraidWord(3, (3,))
        with pytest.raises(ValueError):
            BraidWord(3, (0,))
        with pytest.raises(ValueError):
            BraidWord(1, ())
