"""
Seeded random instances for cross-validating the constructions.
"""
import random
from typing import List

from freegroup.words import Alphabet, Word, random_word
from monoid.injection import UNDEFINED, PartialInjection

from .graph import Edge, InverseAutomaton, RawGraph


def random_raw_graph(rng: random.Random, alphabet: Alphabet, max_states: int = 8,
                     max_edges: int = 12) -> RawGraph:
    states = rng.randint(1, max_states)
    edges = tuple(
        Edge(rng.randrange(states), rng.randrange(len(alphabet)), rng.randrange(states))
        for _ in range(rng.randint(0, max_edges))
    )
    return RawGraph(alphabet, states, edges, rng.randrange(states), rng.randrange(states))


def random_injection(rng: random.Random, size: int, density: float = 0.6) -> PartialInjection:
    targets = list(range(size))
    rng.shuffle(targets)
    return PartialInjection(tuple(t if rng.random() < density else UNDEFINED for t in targets))


def random_inverse_automaton(rng: random.Random, alphabet: Alphabet, max_states: int = 5,
                             density: float = 0.6, distinct_ends: bool = False) -> InverseAutomaton:
    states = rng.randint(2 if distinct_ends else 1, max_states)
    start = rng.randrange(states)
    accept = rng.randrange(states)
    while distinct_ends and accept == start:
        accept = rng.randrange(states)
    transitions = tuple(random_injection(rng, states, density) for _ in alphabet)
    return InverseAutomaton(alphabet, states, transitions, start, accept)


def random_generators(rng: random.Random, alphabet: Alphabet, max_count: int = 3,
                      max_length: int = 4) -> List[Word]:
    return [random_word(alphabet, rng.randint(1, max_length), rng)
            for _ in range(rng.randint(1, max_count))]
