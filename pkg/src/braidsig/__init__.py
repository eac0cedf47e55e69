"""Braid-group toolkit: canonical forms, conjugacy decision, and group signatures."""

from .braid import (
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
from .conjugacy import (
    ConjugacyVerdict,
    SummitBudget,
    SummitClosure,
    Verdict,
    cycling,
    decycling,
    is_conjugate,
    summit_representative,
)
from .freegroup import words_equal
from .hashing import HashParams, hash_to_braid
from .rng import XofStream
from .sample import (
    Block,
    SampleParams,
    TaggedBraid,
    random_block_braid,
    random_braid,
    random_commuting_rb_pair,
    random_factor,
)

__all__ = [
    "Block",
    "Braid",
    "BraidWord",
    "ConjugacyVerdict",
    "HashParams",
    "SampleParams",
    "SummitBudget",
    "SummitClosure",
    "TaggedBraid",
    "Verdict",
    "XofStream",
    "cycling",
    "decycling",
    "delta",
    "delta_word",
    "enumerate_permutation_braids",
    "factor_to_word",
    "finishing_set",
    "from_factors",
    "from_permutation",
    "generator",
    "hash_to_braid",
    "identity",
    "is_conjugate",
    "normalize",
    "random_block_braid",
    "random_braid",
    "random_commuting_rb_pair",
    "random_factor",
    "starting_set",
    "summit_representative",
    "to_word",
    "underlying_perm",
    "validate_normal_form",
    "words_equal",
]
