import os
import random
import sys

import pytest

# Add the parent directory to sys.path to allow importing from the parent directory
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from console import run_checks
from automaton.graph import InverseAutomaton
from automaton.instances import random_generators
from automaton.subgroup import stallings, subgroup_member
from decision.radical import (
    RadicalWitness,
    image_is_radical_closed,
    is_aperiodic_automaton,
    is_radical_closed,
    radical_member,
    radical_witness_search,
)
from encoding.codes import TARGET, encode_words, make_aperiodic_encoding
from freegroup.words import Alphabet, AlphabetMismatchError, Word, free_multiply, invert, power, reduced_words
from monoid.injection import UNDEFINED, PartialInjection

AB = Alphabet.of("a", "b")


def w(text, alphabet=AB):
    return Word.parse(text, alphabet)


def table_automaton(n):
    a = tuple(i + 1 if i + 1 < n else UNDEFINED for i in range(n))
    return InverseAutomaton(AB, n, (PartialInjection(a), PartialInjection.identity(n)), 0, 0)


def assert_valid_witness(m, witness):
    assert witness.power >= 2
    assert not subgroup_member(m, witness.g)
    assert subgroup_member(m, power(witness.g, witness.power))


def short_radical_witness(m, max_length, max_power):
    """Brute force: some reduced g outside H with g^N in H, 2 <= N <= max_power."""
    for g in reduced_words(m.alphabet, max_length):
        if not g or subgroup_member(m, g):
            continue
        if any(subgroup_member(m, power(g, n)) for n in range(2, max_power + 1)):
            return g
    return None


def test_is_aperiodic_automaton_examples():
    for n in range(1, 7):
        assert is_aperiodic_automaton(table_automaton(n))
    assert not is_aperiodic_automaton(stallings([w("a a")]))
    assert is_aperiodic_automaton(stallings([w("a"), w("b")]))
    assert stallings([w("a"), w("b")]).state_count == 1


def test_is_radical_closed_examples():
    verdict = is_radical_closed([w("a a")])
    assert not verdict.closed
    assert verdict.witness == RadicalWitness(w("a"), 2)
    assert str(verdict.witness) == "a ^ 2"

    assert is_radical_closed([w("a")]).closed
    assert is_radical_closed([w("a b a^-1"), w("a a b a^-1 a^-1")]).closed
    assert is_radical_closed([w("b"), w("a b a^-1"), w("a a b a^-1 a^-1")]).closed

    cube = is_radical_closed([w("a b a b a b")])
    assert not cube.closed
    assert cube.witness == RadicalWitness(w("a b"), 3)


def test_radical_member_examples():
    m = stallings([w("a a")])
    assert radical_member(m, w("a"))
    assert radical_member(m, w("a^-1"))
    assert not radical_member(m, w("b"))
    assert radical_member(m, w(""))
    assert radical_member(m, w("a b b^-1 a^-1 a"))
    assert not radical_member(m, w("b a b^-1"))
    assert not radical_member(stallings([w("b")]), w("a"))
    h = stallings([w("a b a^-1")])
    assert radical_member(h, w("a b b a^-1"))
    assert not radical_member(h, w("b a"))
    with pytest.raises(AlphabetMismatchError):
        radical_member(m, Word.parse("a", Alphabet.of("a")))


def test_subgroup_lies_in_its_radical():
    rng = random.Random(41)
    for _ in range(60):
        generators = random_generators(rng, AB, 3, 4)
        m = stallings(generators)
        element = Word.empty(AB)
        for _ in range(4):
            g = rng.choice(generators)
            element = free_multiply(element, g if rng.random() < 0.5 else invert(g))
            assert radical_member(m, element)


def test_radical_member_agrees_with_powers():
    rng = random.Random(42)
    for _ in range(60):
        m = stallings(random_generators(rng, AB, 2, 4))
        bound = 2 * m.state_count
        for g in reduced_words(AB, 3):
            expected = any(subgroup_member(m, power(g, n)) for n in range(1, bound + 1))
            assert radical_member(m, g) == expected


def test_witnesses_are_valid():
    rng = random.Random(43)
    seen = 0
    for _ in range(80):
        generators = random_generators(rng, AB, 2, 4)
        m = stallings(generators)
        verdict = is_radical_closed(generators)
        assert verdict.closed == is_aperiodic_automaton(m)
        if verdict.closed:
            assert verdict.witness is None
            continue
        seen += 1
        assert_valid_witness(m, verdict.witness)
        # with no search at all the witness is read off a periodic element
        assert_valid_witness(m, is_radical_closed(generators, witness_length=0).witness)
    assert seen


def test_witness_search_is_shortlex_first():
    m = stallings([w("b a a b^-1")])
    assert radical_witness_search(m, 1) is None
    assert radical_witness_search(m, 3) == RadicalWitness(w("b a b^-1"), 2)
    assert radical_witness_search(stallings([w("a")]), 4) is None


def test_radical_closure_matches_brute_force():
    rng = random.Random(44)
    for _ in range(100):
        generators = random_generators(rng, AB, 3, 4)
        m = stallings(generators)
        verdict = is_radical_closed(generators)
        found = short_radical_witness(m, 6, 4)
        if found is not None:
            assert not verdict.closed
        if not verdict.closed and len(verdict.witness.g) <= 6 and verdict.witness.power <= 4:
            assert found is not None


def test_aperiodic_encoding_preserves_radical_closure():
    rng = random.Random(45)
    for _ in range(100):
        e = make_aperiodic_encoding(rng.randint(3, 5))
        generators = random_generators(rng, e.source, 2, 3)
        before = is_radical_closed(generators, e.source)
        after = is_radical_closed(encode_words(e, generators), TARGET)
        assert before.closed == after.closed


def test_image_is_radical_closed():
    for n in range(1, 6):
        assert image_is_radical_closed(make_aperiodic_encoding(n)).closed


if __name__ == "__main__":
    sys.exit(run_checks("Radical closure", dict(globals())))
