"""
Subgroup automata: flower graphs, Stallings graphs, membership and rank.
"""
import logging
from typing import List, Optional, Sequence

import networkx as nx

from freegroup.words import Alphabet, AlphabetMismatchError, Word, reduce
from monoid.injection import UNDEFINED, PartialInjection

from .graph import Edge, InverseAutomaton, RawGraph, fold

logger = logging.getLogger(__name__)


def _common_alphabet(words: Sequence[Word], alphabet: Optional[Alphabet]) -> Alphabet:
    if alphabet is None:
        if not words:
            raise ValueError("An alphabet is required when no generators are given")
        alphabet = words[0].alphabet
    for w in words:
        if w.alphabet != alphabet:
            raise AlphabetMismatchError(f"Generator '{w}' is not over [{alphabet}]")
    return alphabet


def flower(generators: Sequence[Word], alphabet: Optional[Alphabet] = None) -> RawGraph:
    """
    Glues one cycle per reduced generator at the base state 0.

    Empty generators (after reduction) are skipped.
    """
    alphabet = _common_alphabet(generators, alphabet)
    edges: List[Edge] = []
    state_count = 1
    for w in generators:
        letters = reduce(w).letters
        if not letters:
            continue
        path = [0] + list(range(state_count, state_count + len(letters) - 1)) + [0]
        state_count += len(letters) - 1
        for i, letter in enumerate(letters):
            if letter.sign > 0:
                edges.append(Edge(path[i], letter.index, path[i + 1]))
            else:
                edges.append(Edge(path[i + 1], letter.index, path[i]))
    return RawGraph(alphabet, state_count, tuple(edges), 0, 0)


def trim_core(m: InverseAutomaton) -> InverseAutomaton:
    """Prunes non-base states of degree <= 1 until none is left."""
    if m.start != m.accept:
        raise ValueError("trim_core needs start == accept")
    alive = set(range(m.state_count))
    images = [list(f.image) for f in m.transitions]
    inverses = [[UNDEFINED] * m.state_count for _ in images]
    for x, image in enumerate(images):
        for p, q in enumerate(image):
            if q != UNDEFINED:
                inverses[x][q] = p

    def degree(p: int) -> int:
        return sum((image[p] != UNDEFINED) + (inverse[p] != UNDEFINED)
                   for image, inverse in zip(images, inverses))

    pending = [p for p in alive if p != m.start and degree(p) <= 1]
    while pending:
        p = pending.pop()
        if p not in alive:
            continue
        alive.discard(p)
        for image, inverse in zip(images, inverses):
            for table, other in ((image, inverse), (inverse, image)):
                q = table[p]
                if q != UNDEFINED:
                    table[p] = UNDEFINED
                    other[q] = UNDEFINED
                    if q in alive and q != m.start and degree(q) <= 1:
                        pending.append(q)

    kept = sorted(alive)
    if len(kept) == m.state_count:
        return m
    logger.debug("trimmed %d dangling states", m.state_count - len(kept))
    new_of = {p: i for i, p in enumerate(kept)}
    transitions = tuple(
        PartialInjection(tuple(new_of[image[p]] if image[p] != UNDEFINED else UNDEFINED for p in kept))
        for image in images
    )
    trimmed = InverseAutomaton(m.alphabet, len(kept), transitions, new_of[m.start], new_of[m.accept])
    return trimmed.canonical()[0]


def stallings(generators: Sequence[Word], alphabet: Optional[Alphabet] = None) -> InverseAutomaton:
    """The core subgroup automaton A_H of H = <generators>."""
    folded, _ = fold(flower(generators, alphabet))
    return trim_core(folded)


def accepts(m: InverseAutomaton, w: Word) -> bool:
    if w.alphabet != m.alphabet:
        raise AlphabetMismatchError(f"Word '{w}' is not over [{m.alphabet}]")
    return m.read(m.start, w) == m.accept


def subgroup_member(m: InverseAutomaton, w: Word) -> bool:
    """Decides red(w) in H for a subgroup automaton m."""
    return accepts(m, reduce(w))


def rank(m: InverseAutomaton) -> int:
    """Rank of the subgroup recognised by a connected core graph: E - V + 1."""
    if not nx.is_weakly_connected(m.to_networkx()):
        raise ValueError("rank needs a connected automaton")
    return m.edge_count - m.state_count + 1
