"""
Decision procedures built on subgroup automata: aperiodicity, radical
closure and radical membership.

H = <Y> is radical-closed when g^N in H forces g in H. This holds exactly
when the transition monoid of the Stallings graph A_H is aperiodic.
"""
import logging
import os
import sys
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Sequence, Tuple

# Add the parent directory to sys.path to allow importing sibling packages
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import group_settings
from automaton.graph import InverseAutomaton, path_to
from automaton.subgroup import stallings
from encoding.codes import GroupEncoding
from freegroup.words import Alphabet, AlphabetMismatchError, SignedLetter, Word, cyclic_decompose, invert, reduce
from monoid.transition import find_periodic_element

logger = logging.getLogger(__name__)


class WitnessNotFoundError(RuntimeError):
    """A non-aperiodic subgroup automaton yielded no radical witness (a bug)."""


class RadicalWitness(NamedTuple):
    g: Word
    power: int

    def __str__(self) -> str:
        return f"{self.g or '1'} ^ {self.power}"


@dataclass(frozen=True)
class RadicalVerdict:
    closed: bool
    witness: Optional[RadicalWitness] = None


def is_aperiodic_automaton(m: InverseAutomaton, limit: Optional[int] = None) -> bool:
    return find_periodic_element(m, limit) is None


def _root_exponent(m: InverseAutomaton, u: Word, c: Word) -> Optional[int]:
    """
    Smallest N in 1..2|Q| with u c^N u^-1 accepted, or None.

    Reading u then c repeatedly follows an injective chain of states, so it
    closes up within |Q| rounds when it closes at all.
    """
    state = m.read(m.start, u)
    back = invert(u)
    for n in range(1, 2 * m.state_count + 1):
        state = m.read(state, c)
        if state is None:
            return None
        if m.read(state, back) == m.accept:
            return n
    return None


def radical_member(m: InverseAutomaton, g: Word) -> bool:
    """True iff g^N lies in H for some N >= 1."""
    if g.alphabet != m.alphabet:
        raise AlphabetMismatchError(f"Word '{g}' is not over [{m.alphabet}]")
    reduced = reduce(g)
    if not reduced:
        return True
    return _root_exponent(m, *cyclic_decompose(reduced)) is not None


def _candidates(m: InverseAutomaton, length: int) -> Iterator[Word]:
    """
    Reduced words of one length in lexicographic order, skipping those whose
    first ceil(length / 2) letters cannot be read from the start state; such
    words have no power in H.
    """
    signed = m.alphabet.signed_letters()
    checked = (length + 1) // 2

    def extend(letters: Tuple[SignedLetter, ...], state: Optional[int]) -> Iterator[Word]:
        if len(letters) == length:
            yield Word(m.alphabet, letters)
            return
        for letter in signed:
            if letters and letters[-1] == letter.inverse():
                continue
            next_state = None
            if len(letters) < checked:
                next_state = m.step(state, letter)
                if next_state is None:
                    continue
            yield from extend(letters + (letter,), next_state)

    yield from extend((), m.start)


def radical_witness_search(m: InverseAutomaton, max_length: int) -> Optional[RadicalWitness]:
    """First (g, N) with g^N in H and g not in H, words by length then lexicographic."""
    for length in range(1, max_length + 1):
        for g in _candidates(m, length):
            n = _root_exponent(m, *cyclic_decompose(g))
            if n is not None and n >= 2:
                return RadicalWitness(g, n)
    return None


def _constructed_witness(m: InverseAutomaton) -> Optional[RadicalWitness]:
    # a letter word w moving q around a cycle of length >= 2 gives g = u w u^-1
    periodic = find_periodic_element(m)
    if periodic is None:
        return None
    u = path_to(m, periodic.cycle[0])
    if u is None:
        return None
    g = reduce(u + periodic.word + invert(u))
    n = _root_exponent(m, *cyclic_decompose(g)) if g else None
    if n is None or n < 2:
        return None
    return RadicalWitness(g, n)


def is_radical_closed(generators: Sequence[Word], alphabet: Optional[Alphabet] = None,
                      witness_length: Optional[int] = None,
                      limit: Optional[int] = None) -> RadicalVerdict:
    """
    Decides radical closure of H = <generators> through aperiodicity of A_H.

    When H is not closed, the witness is the first one in shortlex order up
    to the configured length, or one read off a periodic monoid element.

    Raises:
        WitnessNotFoundError: if no witness can be produced for a
            non-aperiodic A_H
    """
    m = stallings(generators, alphabet)
    if is_aperiodic_automaton(m, limit):
        return RadicalVerdict(True)
    witness_length = group_settings.witness_length() if witness_length is None else witness_length
    witness = radical_witness_search(m, witness_length)
    if witness is None:
        logger.debug("no witness up to length %d, reading one off the monoid", witness_length)
        witness = _constructed_witness(m)
    if witness is None:
        raise WitnessNotFoundError("A_H is not aperiodic but no radical witness was found")
    return RadicalVerdict(False, witness)


def image_is_radical_closed(e: GroupEncoding, limit: Optional[int] = None) -> RadicalVerdict:
    """Radical closure of the image subgroup; when closed, e preserves radical closure."""
    return is_radical_closed(list(e.images), limit=limit)
