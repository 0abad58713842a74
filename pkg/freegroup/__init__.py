from .words import (
    Alphabet,
    AlphabetMismatchError,
    SignedLetter,
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
