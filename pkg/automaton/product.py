"""
Intersection emptiness for inverse automata by breadth-first search over
tuples of states.
"""
import logging
from collections import deque
from typing import Dict, NamedTuple, Optional, Sequence, Tuple

from freegroup.words import AlphabetMismatchError, SignedLetter, Word

from .graph import InverseAutomaton

logger = logging.getLogger(__name__)


class IntersectionResult(NamedTuple):
    empty: bool
    witness: Optional[Word]


def intersect_empty(ms: Sequence[InverseAutomaton]) -> IntersectionResult:
    """
    Decides whether the accepted languages of `ms` have empty intersection.

    Steps by every signed letter defined in all components, so the witness
    (when there is one) is a shortest word in the intersection, first in
    canonical letter order.
    """
    if not ms:
        raise ValueError("intersect_empty needs at least one automaton")
    alphabet = ms[0].alphabet
    for m in ms[1:]:
        if m.alphabet != alphabet:
            raise AlphabetMismatchError(f"Alphabets differ: [{alphabet}] vs [{m.alphabet}]")
    signed = alphabet.signed_letters()
    origin = tuple(m.start for m in ms)
    goal = tuple(m.accept for m in ms)
    previous: Dict[Tuple[int, ...], Tuple[Tuple[int, ...], Optional[SignedLetter]]] = {origin: (origin, None)}
    queue = deque([origin])
    while queue and goal not in previous:
        states = queue.popleft()
        for letter in signed:
            reached = []
            for m, p in zip(ms, states):
                q = m.step(p, letter)
                if q is None:
                    break
                reached.append(q)
            else:
                target = tuple(reached)
                if target not in previous:
                    previous[target] = (states, letter)
                    queue.append(target)
    logger.debug("explored %d state tuples", len(previous))
    if goal not in previous:
        return IntersectionResult(True, None)
    letters = []
    states = goal
    while states != origin:
        states, letter = previous[states]
        letters.append(letter)
    return IntersectionResult(False, Word(alphabet, tuple(reversed(letters))))
