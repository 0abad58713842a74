"""
Automata with involution over a free-group alphabet.

A RawGraph stores only positive-letter edges p -x-> q; the reverse edge
q -x^-1-> p is implicit. Folding a RawGraph yields an InverseAutomaton,
whose letter actions are partial injections on the states.
"""
import logging
import os
import random
import sys
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, NamedTuple, Optional, Set, Tuple

import networkx as nx

# Add the parent directory to sys.path to allow importing sibling packages
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from freegroup.words import Alphabet, AlphabetMismatchError, SignedLetter, Word, invert
from monoid.injection import UNDEFINED, PartialInjection, invert_images

from .unionfind import UnionFind

logger = logging.getLogger(__name__)


class Edge(NamedTuple):
    source: int
    letter: int
    target: int


@dataclass(frozen=True)
class RawGraph:
    """Edge-multiset automaton before folding; parallel edges are allowed."""

    alphabet: Alphabet
    state_count: int
    edges: Tuple[Edge, ...]
    start: int = 0
    accept: int = 0

    def __post_init__(self):
        edges = tuple(Edge(*edge) for edge in self.edges)
        for p, x, q in edges:
            if not (0 <= p < self.state_count and 0 <= q < self.state_count):
                raise ValueError(f"Edge {p} -{x}-> {q} leaves the {self.state_count} states")
            if not 0 <= x < len(self.alphabet):
                raise ValueError(f"Edge letter index {x} is outside the alphabet")
        if not (0 <= self.start < self.state_count and 0 <= self.accept < self.state_count):
            raise ValueError("Start and accept must be states of the graph")
        object.__setattr__(self, "edges", edges)

    def signed_edges(self) -> Iterator[Tuple[int, SignedLetter, int]]:
        for p, x, q in self.edges:
            yield p, SignedLetter(x, 1), q
            yield q, SignedLetter(x, -1), p

    def successors(self) -> Dict[Tuple[int, SignedLetter], List[int]]:
        table: Dict[Tuple[int, SignedLetter], List[int]] = {}
        for p, letter, q in self.signed_edges():
            table.setdefault((p, letter), []).append(q)
        return table

    def read_set(self, states, word: Word) -> Set[int]:
        """All states reachable from `states` along paths labelled `word`."""
        table = self.successors()
        current = set(states)
        for letter in word:
            current = {q for p in current for q in table.get((p, letter), ())}
            if not current:
                break
        return current

    def is_deterministic(self) -> bool:
        return all(len(set(targets)) == len(targets) == 1
                   for targets in self.successors().values())

    def to_inverse(self) -> "InverseAutomaton":
        """Reads a deterministic graph as an inverse automaton, keeping state numbers."""
        if not self.is_deterministic():
            raise ValueError("Graph is not deterministic; fold it first")
        images = [[UNDEFINED] * self.state_count for _ in self.alphabet]
        for p, x, q in self.edges:
            images[x][p] = q
        return InverseAutomaton(
            self.alphabet,
            self.state_count,
            tuple(PartialInjection(tuple(image)) for image in images),
            self.start,
            self.accept,
        )


@dataclass(frozen=True)
class InverseAutomaton:
    """
    A folded automaton (Q, A, delta, start, accept).

    transitions[x] is the partial injection delta(., x); delta(., x^-1) is its
    inverse and is derived, never stored.
    """

    alphabet: Alphabet
    state_count: int
    transitions: Tuple[PartialInjection, ...]
    start: int = 0
    accept: int = 0
    _inverses: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        transitions = tuple(self.transitions)
        if len(transitions) != len(self.alphabet):
            raise ValueError(f"Need one transition map per letter of [{self.alphabet}]")
        if any(f.size != self.state_count for f in transitions):
            raise ValueError(f"Transition maps must act on {self.state_count} states")
        if not (0 <= self.start < self.state_count and 0 <= self.accept < self.state_count):
            raise ValueError("Start and accept must be states of the automaton")
        object.__setattr__(self, "transitions", transitions)
        object.__setattr__(self, "_inverses", tuple(invert_images(f.image) for f in transitions))

    def step(self, state: int, letter: SignedLetter) -> Optional[int]:
        if letter.sign > 0:
            target = self.transitions[letter.index].image[state]
        else:
            target = self._inverses[letter.index][state]
        return None if target == UNDEFINED else target

    def read(self, state: Optional[int], word: Word) -> Optional[int]:
        for letter in word:
            if state is None:
                return None
            state = self.step(state, letter)
        return state

    @property
    def edge_count(self) -> int:
        return sum(len(f.domain()) for f in self.transitions)

    def edges(self) -> Iterator[Edge]:
        """Positive edges, letter-major then by source."""
        for x, f in enumerate(self.transitions):
            for p, q in f.items():
                yield Edge(p, x, q)

    def degree(self, state: int) -> int:
        return sum(self.step(state, letter) is not None for letter in self.alphabet.signed_letters())

    def to_raw(self) -> RawGraph:
        return RawGraph(self.alphabet, self.state_count, tuple(self.edges()), self.start, self.accept)

    def canonical(self) -> Tuple["InverseAutomaton", List[int]]:
        """
        Renumbers states breadth-first from the start state.

        Letters are visited in alphabet order, positive before negative.
        States not reachable from the start follow, component by component,
        in order of their smallest old number.

        Returns:
            tuple: (renumbered automaton, list mapping old state -> new state)
        """
        signed = self.alphabet.signed_letters()
        order: List[int] = []
        new_of = [UNDEFINED] * self.state_count
        roots = [self.start] + [q for q in range(self.state_count) if q != self.start]
        for root in roots:
            if new_of[root] != UNDEFINED:
                continue
            new_of[root] = len(order)
            order.append(root)
            queue = deque([root])
            while queue:
                p = queue.popleft()
                for letter in signed:
                    q = self.step(p, letter)
                    if q is not None and new_of[q] == UNDEFINED:
                        new_of[q] = len(order)
                        order.append(q)
                        queue.append(q)
        images = []
        for f in self.transitions:
            image = [UNDEFINED] * self.state_count
            for p, q in f.items():
                image[new_of[p]] = new_of[q]
            images.append(PartialInjection(tuple(image)))
        renumbered = InverseAutomaton(
            self.alphabet, self.state_count, tuple(images), new_of[self.start], new_of[self.accept]
        )
        return renumbered, new_of

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(range(self.state_count))
        for p, x, q in self.edges():
            graph.add_edge(p, q, label=self.alphabet.letters[x])
        return graph


class FoldMerge(NamedTuple):
    """
    One fold step: the raw edges via_left -letter-> left and
    via_right -letter-> right started in one class, so left and right merged.
    """

    left: int
    right: int
    letter: SignedLetter
    via_left: int
    via_right: int


@dataclass(frozen=True)
class FoldTrace:
    class_of: Tuple[int, ...]
    merges: Tuple[FoldMerge, ...]


def fold(graph: RawGraph, rng: Optional[random.Random] = None) -> Tuple[InverseAutomaton, FoldTrace]:
    """
    Folds a raw graph as much as possible (Stallings folding).

    Uses a union-find over the raw states and a worklist of signed edges.
    Every class keeps one representative edge per signed letter; a second
    edge with the same letter and a target in another class forces a merge,
    after which the absorbed class's representatives are re-queued.

    Args:
        graph (RawGraph): the automaton with involution to fold
        rng (random.Random, optional): shuffles the initial worklist, giving
            a different fold order

    Returns:
        tuple: (InverseAutomaton in canonical numbering, FoldTrace)
    """
    uf = UnionFind(graph.state_count)
    worklist = list(graph.signed_edges())
    if rng is not None:
        rng.shuffle(worklist)
    queue = deque(worklist)
    representative: Dict[int, Dict[SignedLetter, Tuple[int, int]]] = {}
    merges: List[FoldMerge] = []

    while queue:
        source, letter, target = queue.popleft()
        table = representative.setdefault(uf.find(source), {})
        seen = table.get(letter)
        if seen is None:
            table[letter] = (source, target)
            continue
        seen_source, seen_target = seen
        a, b = uf.find(seen_target), uf.find(target)
        if a == b:
            continue
        merges.append(FoldMerge(seen_target, target, letter, seen_source, source))
        root = uf.union(a, b)
        loser = b if root == a else a
        for moved_letter, (s, t) in representative.pop(loser, {}).items():
            queue.append((s, moved_letter, t))

    logger.debug("folded %d states into %d classes with %d merges",
                 graph.state_count, graph.state_count - len(merges), len(merges))

    roots = uf.classes()
    class_index: Dict[int, int] = {}
    for root in roots:
        class_index.setdefault(root, len(class_index))
    size = len(class_index)
    images = [[UNDEFINED] * size for _ in graph.alphabet]
    for root, table in representative.items():
        for letter, (_, target) in table.items():
            if letter.sign > 0:
                images[letter.index][class_index[root]] = class_index[uf.find(target)]
    folded = InverseAutomaton(
        graph.alphabet,
        size,
        tuple(PartialInjection(tuple(image)) for image in images),
        class_index[roots[graph.start]],
        class_index[roots[graph.accept]],
    )
    canonical, new_of = folded.canonical()
    class_of = tuple(new_of[class_index[root]] for root in roots)
    return canonical, FoldTrace(class_of, tuple(merges))


def merge_witness(graph: RawGraph, trace: FoldTrace, k: int) -> Word:
    """
    A Dyck word labelling a path in `graph` from merges[k].left to merges[k].right.

    Built inductively: letter^-1, then a path between the two source
    states through earlier merges, then letter.
    """
    cache: Dict[int, Word] = {}

    def witness(j: int) -> Word:
        if j not in cache:
            merge = trace.merges[j]
            back = Word(graph.alphabet, (merge.letter.inverse(),))
            forth = Word(graph.alphabet, (merge.letter,))
            cache[j] = back + _connecting_word(merge.via_left, merge.via_right, j) + forth
        return cache[j]

    def _connecting_word(p: int, q: int, before: int) -> Word:
        # merges[:before] form a forest on the raw states; walk its unique p-q path
        adjacent: Dict[int, List[Tuple[int, int, bool]]] = {}
        for j in range(before):
            merge = trace.merges[j]
            adjacent.setdefault(merge.left, []).append((merge.right, j, True))
            adjacent.setdefault(merge.right, []).append((merge.left, j, False))
        previous: Dict[int, Tuple[int, int, bool]] = {p: (p, -1, True)}
        queue = deque([p])
        while queue and q not in previous:
            v = queue.popleft()
            for u, j, forward in adjacent.get(v, ()):
                if u not in previous:
                    previous[u] = (v, j, forward)
                    queue.append(u)
        if q not in previous:
            raise ValueError(f"States {p} and {q} were not merged before step {before}")
        steps = []
        v = q
        while v != p:
            v, j, forward = previous[v]
            steps.append((j, forward))
        word = Word.empty(graph.alphabet)
        for j, forward in reversed(steps):
            word = word + (witness(j) if forward else invert(witness(j)))
        return word

    return witness(k)


def dyck_closure(graph: RawGraph) -> Set[Tuple[int, int]]:
    """Pairs of states joined by a path whose label reduces to the empty word."""
    predecessors: Dict[Tuple[int, SignedLetter], Set[int]] = {}
    for p, letter, q in graph.signed_edges():
        predecessors.setdefault((q, letter), set()).add(p)
    signed = graph.alphabet.signed_letters()
    related = {(p, p) for p in range(graph.state_count)}
    changed = True
    while changed:
        changed = False
        grown = set(related)
        for p, q in related:
            # p' -x-> p ~ q -x^-1-> q'
            for letter in signed:
                for p2 in predecessors.get((p, letter), ()):
                    for q2 in predecessors.get((q, letter), ()):
                        grown.add((p2, q2))
        by_first: Dict[int, Set[int]] = {}
        for p, q in grown:
            by_first.setdefault(p, set()).add(q)
        for p, q in list(grown):
            for r in by_first.get(q, ()):
                grown.add((p, r))
        if grown != related:
            related = grown
            changed = True
    return related


def isomorphic(m1: InverseAutomaton, m2: InverseAutomaton) -> bool:
    """
    Label-preserving isomorphism sending start to start and accept to accept.

    Determinism makes the match from a root forced, so components are
    matched by parallel breadth-first traversal.
    """
    if m1.alphabet != m2.alphabet:
        raise AlphabetMismatchError(f"Alphabets differ: [{m1.alphabet}] vs [{m2.alphabet}]")
    if m1.state_count != m2.state_count or m1.edge_count != m2.edge_count:
        return False
    forward: Dict[int, int] = {}
    backward: Dict[int, int] = {}
    signed = m1.alphabet.signed_letters()

    def extend(r1: int, r2: int) -> bool:
        local_f: Dict[int, int] = {r1: r2}
        local_b: Dict[int, int] = {r2: r1}
        queue = deque([(r1, r2)])
        while queue:
            p, q = queue.popleft()
            for letter in signed:
                n1, n2 = m1.step(p, letter), m2.step(q, letter)
                if (n1 is None) != (n2 is None):
                    return False
                if n1 is None:
                    continue
                mapped = local_f.get(n1, forward.get(n1))
                if mapped is not None:
                    if mapped != n2:
                        return False
                    continue
                if n2 in local_b or n2 in backward:
                    return False
                local_f[n1] = n2
                local_b[n2] = n1
                queue.append((n1, n2))
        forward.update(local_f)
        backward.update(local_b)
        return True

    if not extend(m1.start, m2.start):
        return False
    if m1.accept in forward:
        if forward[m1.accept] != m2.accept:
            return False
    elif m2.accept in backward or not extend(m1.accept, m2.accept):
        return False
    for p in range(m1.state_count):
        if p in forward:
            continue
        if not any(q not in backward and extend(p, q) for q in range(m2.state_count)):
            return False
    return len(forward) == m1.state_count


def path_to(m: InverseAutomaton, state: int) -> Optional[Word]:
    """Shortest word (canonical letter order) leading from the start to `state`."""
    signed = m.alphabet.signed_letters()
    previous: Dict[int, Tuple[int, Optional[SignedLetter]]] = {m.start: (m.start, None)}
    queue = deque([m.start])
    while queue and state not in previous:
        p = queue.popleft()
        for letter in signed:
            q = m.step(p, letter)
            if q is not None and q not in previous:
                previous[q] = (p, letter)
                queue.append(q)
    if state not in previous:
        return None
    letters = []
    while state != m.start:
        state, letter = previous[state]
        letters.append(letter)
    return Word(m.alphabet, tuple(reversed(letters)))


def accepted_words(automaton, max_length: int) -> Iterator[Word]:
    """
    Every word of length <= max_length accepted by an InverseAutomaton or
    RawGraph, reduced or not, in shortlex order.
    """
    raw = automaton.to_raw() if isinstance(automaton, InverseAutomaton) else automaton
    table = raw.successors()
    signed = raw.alphabet.signed_letters()
    frontier = [((), frozenset([raw.start]))]
    for length in range(max_length + 1):
        extended = []
        for letters, states in frontier:
            if raw.accept in states:
                yield Word(raw.alphabet, letters)
            if length == max_length:
                continue
            for letter in signed:
                reached = frozenset(q for p in states for q in table.get((p, letter), ()))
                if reached:
                    extended.append((letters + (letter,), reached))
        frontier = extended


def to_dot(m: InverseAutomaton, name: str = "automaton") -> str:
    """Graphviz description of the automaton (debugging aid for --dot)."""
    graph = m.to_networkx()
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for state in graph.nodes:
        shape = "doublecircle" if state == m.accept else "circle"
        lines.append(f'  {state} [shape={shape}];')
    lines.append(f'  start [shape=point]; start -> {m.start};')
    for p, q, label in sorted(graph.edges(data="label"), key=lambda e: (e[2], e[0], e[1])):
        lines.append(f'  {p} -> {q} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
