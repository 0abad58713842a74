import os
import random
import sys

import pytest

# Add the parent directory to sys.path to allow importing from the parent directory
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from console import run_checks
from automaton.graph import Edge, RawGraph, accepted_words, isomorphic
from automaton.instances import random_generators, random_inverse_automaton
from automaton.product import intersect_empty
from automaton.subgroup import accepts, rank, stallings, subgroup_member
from encoding.codes import (
    TARGET,
    NotAGroupCodeError,
    decode_word,
    encode_automaton,
    encode_word,
    encode_words,
    is_group_code,
    make_aperiodic_encoding,
    make_encoding,
    parse_encoding_file,
    recognize_nielsen_codeword,
)
from freegroup.words import Alphabet, AlphabetMismatchError, Word, free_multiply, random_word, reduce


def t(text):
    return Word.parse(text, TARGET)


def s(e, text):
    return Word.parse(text, e.source)


def test_aperiodic_encoding_images():
    assert str(make_aperiodic_encoding(1).images[0]) == "b"
    assert str(make_aperiodic_encoding(2).images[1]) == "a b a^-1"
    e = make_aperiodic_encoding(4)
    assert str(e.images[3]) == "a a a b a^-1 a^-1 a^-1"
    assert e.source.letters == ("x_1", "x_2", "x_3", "x_4")
    assert e.target == TARGET
    assert rank(e.image_automaton) == 4
    with pytest.raises(ValueError):
        make_aperiodic_encoding(0)


def test_is_group_code_examples():
    assert is_group_code([t("b"), t("a b a^-1"), t("a a b a^-1 a^-1")])
    assert not is_group_code([t("a"), t("a a")])
    assert is_group_code([t("a b"), t("b a")])
    assert not is_group_code([t("a b"), t("a b")])
    assert not is_group_code([t("a a^-1")])
    for n in range(1, 9):
        assert is_group_code(list(make_aperiodic_encoding(n).images))


def test_is_group_code_rejects_dependent_sets():
    rng = random.Random(3)
    rejected = 0
    while rejected < 20:
        u = random_word(TARGET, rng.randint(1, 4), rng)
        v = random_word(TARGET, rng.randint(1, 4), rng)
        uv = free_multiply(u, v)
        if not uv:
            continue
        words = [u, uv, v]
        rng.shuffle(words)
        assert not is_group_code(words)
        rejected += 1


def test_encode_word_examples():
    e = make_aperiodic_encoding(3)
    assert str(encode_word(e, s(e, "x_1"))) == "b"
    assert str(encode_word(e, s(e, "x_2 x_1^-1"))) == "a b a^-1 b^-1"
    assert encode_word(e, s(e, "x_2 x_2^-1")).is_empty()
    assert [str(x) for x in encode_words(e, [s(e, "x_3"), s(e, "x_2 x_3")])] == \
        ["a a b a^-1 a^-1", "a b a b a^-1 a^-1"]
    with pytest.raises(AlphabetMismatchError):
        encode_word(e, t("a"))


def test_decode_word_examples():
    e = make_aperiodic_encoding(3)
    assert str(decode_word(e, t("b"))) == "x_1"
    assert decode_word(e, t("a b")) is None
    assert str(decode_word(e, t("a b a^-1 b^-1"))) == "x_2 x_1^-1"
    assert decode_word(e, t("")).is_empty()
    assert str(decode_word(e, t("a b a b^-1 a^-1 a^-1 b^-1 a a b a^-1 a^-1"))) == "x_2 x_3^-1 x_1^-1 x_3"
    # returns to the base state do not delimit code words
    assert str(decode_word(e, t("a b a b a^-1 b^-1 a^-1"))) == "x_2 x_3 x_2^-1"
    with pytest.raises(AlphabetMismatchError):
        decode_word(e, s(e, "x_1"))


def test_encoding_is_an_injective_morphism():
    rng = random.Random(21)
    for n in (1, 2, 3, 5):
        e = make_aperiodic_encoding(n)
        for _ in range(60):
            u = random_word(e.source, rng.randint(0, 6), rng, reduced=False)
            v = random_word(e.source, rng.randint(0, 6), rng, reduced=False)
            assert encode_word(e, free_multiply(u, v)) == free_multiply(encode_word(e, u), encode_word(e, v))
            assert decode_word(e, encode_word(e, u)) == reduce(u)
            image = encode_word(e, u)
            assert subgroup_member(e.image_automaton, image)


def test_arbitrary_codes_round_trip():
    rng = random.Random(22)
    built = 0
    while built < 30:
        images = [random_word(TARGET, rng.randint(1, 4), rng) for _ in range(rng.randint(1, 3))]
        if not is_group_code(images):
            with pytest.raises(NotAGroupCodeError):
                make_encoding(images)
            continue
        e = make_encoding(images)
        built += 1
        for _ in range(20):
            u = random_word(e.source, rng.randint(0, 6), rng)
            assert decode_word(e, encode_word(e, u)) == u
        outside = random_word(TARGET, rng.randint(1, 6), rng)
        decoded = decode_word(e, outside)
        assert (decoded is None) != subgroup_member(e.image_automaton, outside)


def test_make_encoding_checks():
    with pytest.raises(NotAGroupCodeError):
        make_encoding([t("a"), t("a a")])
    with pytest.raises(ValueError):
        make_encoding([t("a")], Alphabet.of("x", "y"))
    with pytest.raises(AlphabetMismatchError):
        make_encoding([Word.parse("x", Alphabet.of("x"))])
    e = make_encoding([t("a b a^-1 b^-1 a")], Alphabet.of("z"))
    assert str(e.images[0]) == "a b a^-1 b^-1 a"
    assert str(decode_word(e, t("a^-1 b a b^-1 a^-1"))) == "z^-1"


def test_parse_encoding_file():
    e = parse_encoding_file("# two petals\nimage p a b\nimage q b a   # second\n")
    assert e.source.letters == ("p", "q")
    assert str(decode_word(e, t("a b a^-1 b^-1"))) == "p q^-1"
    with pytest.raises(ValueError):
        parse_encoding_file("")
    with pytest.raises(ValueError):
        parse_encoding_file("image p\n")
    with pytest.raises(NotAGroupCodeError):
        parse_encoding_file("image p a\nimage q a a\n")


def test_encode_automaton_examples():
    e = make_aperiodic_encoding(2)
    single = RawGraph(e.source, 2, (Edge(0, 1, 1),), 0, 1).to_inverse()
    m = encode_automaton(e, single)
    assert (m.state_count, m.start, m.accept) == (4, 0, 3)
    assert list(m.edges()) == [Edge(0, 0, 1), Edge(3, 0, 2), Edge(1, 1, 2)]

    loop = encode_automaton(e, stallings([s(e, "x_1")]))
    assert loop == stallings([t("b")])
    assert loop.state_count == 1

    both = encode_automaton(e, stallings([s(e, "x_1"), s(e, "x_2")]))
    assert isomorphic(both, stallings([t("b"), t("a b a^-1")]))
    with pytest.raises(AlphabetMismatchError):
        encode_automaton(e, stallings([t("b")]))


def test_encoded_automaton_language():
    rng = random.Random(16)
    e = make_aperiodic_encoding(3)
    for _ in range(100):
        m = random_inverse_automaton(rng, e.source, 4)
        encoded = encode_automaton(e, m)
        reduced = {x for x in accepted_words(encoded, 6) if reduce(x) == x}
        images = {encode_word(e, u) for u in accepted_words(m, 6)}
        assert reduced == {x for x in images if len(x) <= 6}
        assert {encode_word(e, u) for u in accepted_words(m, 4) if len(encode_word(e, u)) <= 6} <= reduced


def test_encoding_preserves_intersection_emptiness():
    rng = random.Random(18)
    for _ in range(50):
        e = make_aperiodic_encoding(rng.randint(2, 3))
        ms = [random_inverse_automaton(rng, e.source, 4) for _ in range(rng.randint(1, 3))]
        encoded = [encode_automaton(e, m) for m in ms]
        before, after = intersect_empty(ms), intersect_empty(encoded)
        assert before.empty == after.empty
        if not after.empty:
            assert all(accepts(m, before.witness) for m in ms)
            assert all(accepts(m, after.witness) for m in encoded)
            assert decode_word(e, after.witness) is not None


def test_rank_is_preserved_by_encoding():
    rng = random.Random(17)
    e = make_aperiodic_encoding(3)
    for _ in range(100):
        generators = random_generators(rng, e.source)
        assert rank(stallings(generators)) == rank(stallings(encode_words(e, generators)))


def test_recognize_nielsen_codeword():
    assert recognize_nielsen_codeword(t("b"))
    assert recognize_nielsen_codeword(t("a a b a^-1 a^-1"))
    assert not recognize_nielsen_codeword(t("a b a"))
    assert not recognize_nielsen_codeword(t("a b a^-1 a^-1"))
    assert not recognize_nielsen_codeword(t("a^-1 b a"))
    assert not recognize_nielsen_codeword(t(""))
    assert not recognize_nielsen_codeword(t("b b"))


if __name__ == "__main__":
    sys.exit(run_checks("Group encodings", dict(globals())))
