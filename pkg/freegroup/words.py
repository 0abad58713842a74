"""
Words over a named alphabet and the free-group operations on them.

A word is a sequence of signed letters; free reduction cancels adjacent
pairs x x^-1 and x^-1 x. All values here are immutable.
"""
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence, Tuple


class WordSyntaxError(ValueError):
    """Raised when a word or letter name does not follow the text syntax."""


class AlphabetMismatchError(ValueError):
    """Raised when two values over different alphabets are combined."""


INVERSE_SUFFIX = "^-1"
_FORBIDDEN = ("^", "#")


def _check_letter_name(name: str) -> None:
    if not name or not name.isprintable() or any(ch.isspace() for ch in name):
        raise WordSyntaxError(f"Invalid letter name {name!r}")
    if any(bad in name for bad in _FORBIDDEN):
        raise WordSyntaxError(f"Letter name {name!r} may not contain '^' or '#'")


@dataclass(frozen=True)
class Alphabet:
    """An ordered list of distinct letter names."""

    letters: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if not self.letters:
            raise WordSyntaxError("An alphabet needs at least one letter")
        for name in self.letters:
            _check_letter_name(name)
        if len(set(self.letters)) != len(self.letters):
            raise WordSyntaxError(f"Duplicate letter names in {' '.join(self.letters)}")

    @classmethod
    def of(cls, *names: str) -> "Alphabet":
        return cls(tuple(names))

    @classmethod
    def from_words(cls, texts: Iterable[str]) -> "Alphabet":
        """Infers an alphabet from word texts, letters in order of first appearance."""
        seen = []
        for text in texts:
            for token in text.split():
                name = token[:-len(INVERSE_SUFFIX)] if token.endswith(INVERSE_SUFFIX) else token
                if name not in seen:
                    seen.append(name)
        return cls(tuple(seen))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def index(self, name: str) -> int:
        try:
            return self.letters.index(name)
        except ValueError:
            raise WordSyntaxError(
                f"Letter {name!r} is not in the alphabet {' '.join(self.letters)}"
            ) from None

    def signed_letters(self) -> Tuple["SignedLetter", ...]:
        """All signed letters in canonical order: a, a^-1, b, b^-1, ..."""
        return tuple(SignedLetter(i, sign) for i in range(len(self.letters)) for sign in (1, -1))

    def name(self, letter: "SignedLetter") -> str:
        base = self.letters[letter.index]
        return base if letter.sign > 0 else base + INVERSE_SUFFIX

    def __str__(self) -> str:
        return " ".join(self.letters)


class SignedLetter(NamedTuple):
    index: int
    sign: int

    def inverse(self) -> "SignedLetter":
        return SignedLetter(self.index, -self.sign)


@dataclass(frozen=True)
class Word:
    """A possibly unreduced word; the empty word denotes the identity."""

    alphabet: Alphabet
    letters: Tuple[SignedLetter, ...] = ()

    def __post_init__(self):
        letters = tuple(SignedLetter(*letter) for letter in self.letters)
        for letter in letters:
            if not 0 <= letter.index < len(self.alphabet) or letter.sign not in (1, -1):
                raise WordSyntaxError(f"Letter {letter} is not valid over {self.alphabet}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet) -> "Word":
        letters = []
        for token in text.split():
            if token.endswith(INVERSE_SUFFIX):
                letters.append(SignedLetter(alphabet.index(token[:-len(INVERSE_SUFFIX)]), -1))
            else:
                letters.append(SignedLetter(alphabet.index(token), 1))
        return cls(alphabet, tuple(letters))

    @classmethod
    def empty(cls, alphabet: Alphabet) -> "Word":
        return cls(alphabet, ())

    def __str__(self) -> str:
        return " ".join(self.alphabet.name(letter) for letter in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[SignedLetter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __add__(self, other: "Word") -> "Word":
        """Concatenation without reduction."""
        _same_alphabet(self, other)
        return Word(self.alphabet, self.letters + other.letters)

    def is_empty(self) -> bool:
        return not self.letters


def _same_alphabet(u: Word, v: Word) -> None:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatchError(f"Alphabets differ: [{u.alphabet}] vs [{v.alphabet}]")


def _reduce_letters(letters: Sequence[SignedLetter]) -> Tuple[SignedLetter, ...]:
    stack = []
    for letter in letters:
        if stack and stack[-1].index == letter.index and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def reduce(w: Word) -> Word:
    """Returns red(w), the freely reduced form of w (single stack pass)."""
    return Word(w.alphabet, _reduce_letters(w.letters))


def is_reduced(w: Word) -> bool:
    return all(not (x.index == y.index and x.sign == -y.sign)
               for x, y in zip(w.letters, w.letters[1:]))


def invert(w: Word) -> Word:
    return Word(w.alphabet, tuple(letter.inverse() for letter in reversed(w.letters)))


def free_multiply(u: Word, v: Word) -> Word:
    _same_alphabet(u, v)
    return Word(u.alphabet, _reduce_letters(u.letters + v.letters))


def is_dyck(w: Word) -> bool:
    return not _reduce_letters(w.letters)


def power(w: Word, k: int) -> Word:
    """k-fold concatenation of w, not reduced."""
    if k < 0:
        raise ValueError("Negative powers are written as powers of invert(w)")
    return Word(w.alphabet, w.letters * k)


def cyclic_decompose(w: Word) -> Tuple[Word, Word]:
    """
    Splits a reduced non-empty word as w = u c u^-1 with c cyclically reduced.

    No cancellation occurs at the junctions, and u is as long as possible.

    Returns:
        tuple: (u, c)
    """
    if not w:
        raise ValueError("cyclic_decompose needs a non-empty word")
    if not is_reduced(w):
        raise ValueError(f"cyclic_decompose needs a reduced word, got '{w}'")
    letters = w.letters
    k = 0
    while k < len(letters) - 1 - k and letters[k] == letters[-1 - k].inverse():
        k += 1
    return Word(w.alphabet, letters[:k]), Word(w.alphabet, letters[k:len(letters) - k])


def reduced_words(alphabet: Alphabet, max_length: int) -> Iterator[Word]:
    """Yields every reduced word of length <= max_length in shortlex order."""
    signed = alphabet.signed_letters()
    frontier = [()]
    yield Word(alphabet, ())
    for _ in range(max_length):
        extended = []
        for letters in frontier:
            for letter in signed:
                if letters and letters[-1] == letter.inverse():
                    continue
                extended.append(letters + (letter,))
        for letters in extended:
            yield Word(alphabet, letters)
        frontier = extended


def random_word(alphabet: Alphabet, length: int, rng: Optional[random.Random] = None,
                reduced: bool = True) -> Word:
    """Draws a uniformly random (by default reduced) word of the given length."""
    rng = rng or random.Random()
    signed = alphabet.signed_letters()
    letters = []
    while len(letters) < length:
        letter = rng.choice(signed)
        if reduced and letters and letters[-1] == letter.inverse():
            continue
        letters.append(letter)
    return Word(alphabet, tuple(letters))
