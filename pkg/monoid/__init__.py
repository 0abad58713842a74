"""
Partial injections, transition monoids and the Kozen reduction.

Only the injection module is imported here: the automaton package builds on
it, while `monoid.transition` and `monoid.kozen` build on the automaton package.
"""
from .injection import (
    UNDEFINED,
    PartialInjection,
    SizeMismatchError,
    compose,
    inverse,
)
