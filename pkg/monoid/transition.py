"""
Breadth-first closures of partial injections: transition monoids of inverse
automata, aperiodicity, and membership in a generated inverse monoid.
"""
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

# Add the parent directory to sys.path to allow importing sibling packages
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
import group_settings
from automaton.graph import InverseAutomaton
from freegroup.words import Word

from .injection import PartialInjection, check_sizes, compose_images, invert_images

logger = logging.getLogger(__name__)

Image = Tuple[int, ...]
Parents = Dict[Image, Optional[Tuple[Image, int]]]


class MonoidLimitExceeded(RuntimeError):
    """Raised when a closure grows past the configured element limit."""


def closure(generators: Sequence[Image], size: int, limit: Optional[int] = None,
            target: Optional[Image] = None,
            stop: Optional[Callable[[Image], bool]] = None) -> Tuple[Parents, Optional[Image]]:
    """
    Breadth-first closure of {identity} under left composition by generators.

    Elements are discovered by increasing expression length, so following
    the parent links gives a shortest generator expression. The search ends
    early when `target` is found or `stop` accepts an element.

    Returns:
        tuple: (parent links keyed by image, the element that ended the
        search or None)
    """
    limit = group_settings.monoid_limit() if limit is None else limit
    identity = tuple(range(size))
    parents: Parents = {identity: None}
    if identity == target or (stop is not None and stop(identity)):
        return parents, identity
    frontier = [identity]
    while frontier:
        discovered = []
        for element in frontier:
            for index, generator in enumerate(generators):
                product = compose_images(generator, element)
                if product in parents:
                    continue
                parents[product] = (element, index)
                if len(parents) > limit:
                    raise MonoidLimitExceeded(
                        f"closure exceeded {limit} elements (raise GROUPCODES_MONOID_LIMIT or --limit)"
                    )
                if product == target or (stop is not None and stop(product)):
                    return parents, product
                discovered.append(product)
        logger.debug("closure layer: %d new, %d total", len(discovered), len(parents))
        frontier = discovered
    return parents, None


def expression(parents: Parents, element: Image) -> List[int]:
    """Generator indices in the order they are applied (first applied first)."""
    indices = []
    link = parents[element]
    while link is not None:
        element, index = link
        indices.append(index)
        link = parents[element]
    return list(reversed(indices))


@dataclass(frozen=True)
class TransitionMonoid:
    """
    The monoid of state maps of an inverse automaton, generated by the
    letters and their inverses. Elements are sorted by image tuple.
    """

    elements: Tuple[PartialInjection, ...]
    generator_names: Tuple[str, ...]
    _words: Dict[PartialInjection, Word] = field(default_factory=dict, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, f: PartialInjection) -> bool:
        return f in self._words

    def word_for(self, f: PartialInjection) -> Word:
        """A shortest letter word acting as f."""
        return self._words[f]


def _letter_generators(m: InverseAutomaton) -> Tuple[List[Image], List]:
    generators, letters = [], []
    for letter in m.alphabet.signed_letters():
        image = m.transitions[letter.index].image
        generators.append(image if letter.sign > 0 else invert_images(image))
        letters.append(letter)
    return generators, letters


def transition_monoid(m: InverseAutomaton, limit: Optional[int] = None) -> TransitionMonoid:
    generators, letters = _letter_generators(m)
    parents, _ = closure(generators, m.state_count, limit)
    words = {
        PartialInjection(image): Word(m.alphabet, tuple(letters[i] for i in expression(parents, image)))
        for image in parents
    }
    logger.debug("transition monoid on %d states has %d elements", m.state_count, len(words))
    return TransitionMonoid(
        tuple(sorted(words)),
        tuple(m.alphabet.name(letter) for letter in letters),
        words,
    )


def _stabilises(f: PartialInjection) -> bool:
    powers = {f.image: 1}
    current, k = f.image, 1
    while True:
        current = compose_images(current, f.image)
        k += 1
        if current in powers:
            return k - powers[current] == 1
        powers[current] = k


def is_aperiodic(tm: TransitionMonoid) -> bool:
    """True iff every element m has some k with m^(k+1) = m^k."""
    return all(_stabilises(f) for f in tm.elements)


def long_cycle(image: Image) -> Optional[Tuple[int, ...]]:
    """The first cycle of length >= 2 of a partial injection, if any."""
    for start, y in enumerate(image):
        if y == start or y < 0:
            continue
        orbit = [start]
        while y >= 0 and y != start and len(orbit) <= len(image):
            orbit.append(y)
            y = image[y]
        if y == start:
            return tuple(orbit)
    return None


class PeriodicElement(NamedTuple):
    element: PartialInjection
    word: Word
    cycle: Tuple[int, ...]


def find_periodic_element(m: InverseAutomaton, limit: Optional[int] = None) -> Optional[PeriodicElement]:
    """
    An element of the transition monoid with a cycle of length >= 2, found
    by a closure that stops at the first one; None iff the monoid is aperiodic.
    """
    generators, letters = _letter_generators(m)
    parents, found = closure(generators, m.state_count, limit,
                             stop=lambda image: long_cycle(image) is not None)
    if found is None:
        return None
    word = Word(m.alphabet, tuple(letters[i] for i in expression(parents, found)))
    return PeriodicElement(PartialInjection(found), word, long_cycle(found))


def inverse_monoid_witness(f0: PartialInjection, gens: Sequence[PartialInjection],
                           names: Optional[Sequence[str]] = None,
                           limit: Optional[int] = None) -> Optional[List[str]]:
    """
    A shortest expression of f0 over gens and their inverses, in composition
    order (the last name is applied first); [] for the identity, None when
    f0 is not in the generated inverse monoid.
    """
    size = check_sizes([f0, *gens])
    names = list(names) if names is not None else [f"f_{i}" for i in range(1, len(gens) + 1)]
    generators, labels = [], []
    for name, g in zip(names, gens):
        generators.extend([g.image, invert_images(g.image)])
        labels.extend([name, name + "^-1"])
    parents, found = closure(generators, size, limit, target=f0.image)
    if found is None:
        return None
    return [labels[i] for i in reversed(expression(parents, found))]


def inverse_monoid_member(f0: PartialInjection, gens: Sequence[PartialInjection],
                          limit: Optional[int] = None) -> bool:
    return inverse_monoid_witness(f0, gens, limit=limit) is not None
