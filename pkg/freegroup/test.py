import os
import random
import sys

import pytest

# Add the parent directory to sys.path to allow importing from the parent directory
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from console import run_checks
from freegroup.words import (
    Alphabet,
    AlphabetMismatchError,
    Word,
    WordSyntaxError,
    cyclic_decompose,
    free_multiply,
    invert,
    is_dyck,
    is_reduced,
    power,
    random_word,
    reduce,
    reduced_words,
)

AB = Alphabet.of("a", "b")


def w(text, alphabet=AB):
    return Word.parse(text, alphabet)


def test_reduce_examples():
    assert str(reduce(w("a a^-1 b"))) == "b"
    assert str(reduce(w("b a^-1 a b^-1 a"))) == "a"
    assert str(reduce(w("a b"))) == "a b"
    assert reduce(w("a a^-1")) == Word.empty(AB)


def test_invert_examples():
    assert str(invert(w("a b^-1"))) == "b a^-1"
    assert invert(w("")) == w("")
    assert str(invert(w("a a"))) == "a^-1 a^-1"


def test_free_multiply_examples():
    assert str(free_multiply(w("a b"), w("b^-1 a"))) == "a a"
    assert free_multiply(w("a"), w("a^-1")).is_empty()
    assert str(free_multiply(w("b"), w("b"))) == "b b"
    with pytest.raises(AlphabetMismatchError):
        free_multiply(w("a"), Word.parse("a", Alphabet.of("a")))


def test_is_dyck_examples():
    assert is_dyck(w("a b b^-1 a^-1"))
    assert is_dyck(w(""))
    assert not is_dyck(w("a b a^-1"))


def test_cyclic_decompose_examples():
    assert tuple(map(str, cyclic_decompose(w("a b a^-1")))) == ("a", "b")
    assert tuple(map(str, cyclic_decompose(w("b a")))) == ("", "b a")
    assert tuple(map(str, cyclic_decompose(w("a b a b^-1 a^-1")))) == ("a b", "a")
    with pytest.raises(ValueError):
        cyclic_decompose(w(""))
    with pytest.raises(ValueError):
        cyclic_decompose(w("a a^-1 b"))


def test_word_syntax():
    x = Alphabet.of("x_1", "x_2", "x_10")
    assert str(Word.parse("x_10   x_2^-1", x)) == "x_10 x_2^-1"
    with pytest.raises(WordSyntaxError):
        Word.parse("c", AB)
    with pytest.raises(WordSyntaxError):
        Alphabet.of("a", "a")
    with pytest.raises(WordSyntaxError):
        Alphabet.of("a^")
    with pytest.raises(WordSyntaxError):
        Alphabet.of("a#b")
    assert Alphabet.from_words(["b a^-1", "c a"]).letters == ("b", "a", "c")


def test_reduction_laws():
    rng = random.Random(7)
    for _ in range(300):
        u = random_word(AB, rng.randint(0, 10), rng, reduced=False)
        v = random_word(AB, rng.randint(0, 10), rng, reduced=False)
        x = random_word(AB, rng.randint(0, 10), rng, reduced=False)
        assert reduce(reduce(u)) == reduce(u)
        assert is_reduced(reduce(u))
        assert len(reduce(u)) <= len(u)
        assert reduce(u + invert(u)).is_empty()
        assert invert(invert(u)) == u
        assert free_multiply(free_multiply(u, v), x) == free_multiply(u, free_multiply(v, x))


def test_cyclic_decomposition_laws():
    rng = random.Random(11)
    for _ in range(300):
        g = random_word(AB, rng.randint(1, 9), rng)
        u, c = cyclic_decompose(g)
        assert c
        assert not (len(c) > 1 and c.letters[0] == c.letters[-1].inverse())
        assert u + c + invert(u) == g
        for k in range(1, 4):
            spelled = u + power(c, k) + invert(u)
            assert reduce(spelled) == spelled


def test_reduced_words_shortlex():
    words = list(reduced_words(AB, 3))
    # 1 + 4 + 4*3 + 4*9
    assert len(words) == 53
    assert all(is_reduced(x) for x in words)
    assert [len(x) for x in words] == sorted(len(x) for x in words)
    assert [str(x) for x in words[:5]] == ["", "a", "a^-1", "b", "b^-1"]
    assert len(set(words)) == len(words)


if __name__ == "__main__":
    sys.exit(run_checks("Free-group words", dict(globals())))
