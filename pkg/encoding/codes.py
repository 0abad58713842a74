"""
Group encodings of a source alphabet X into the free group on {a, b}.

A group encoding maps each x in X to a reduced word over {a, b} such that the
induced morphism FG(X) -> FG({a, b}) is injective; the image words then form
a group code.
"""
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

# Add the parent directory to sys.path to allow importing sibling packages
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from automaton.graph import Edge, InverseAutomaton, RawGraph, fold
from automaton.subgroup import rank, stallings
from freegroup.words import (
    Alphabet,
    AlphabetMismatchError,
    SignedLetter,
    Word,
    free_multiply,
    invert,
    reduce,
)
from monoid.injection import UNDEFINED, PartialInjection

logger = logging.getLogger(__name__)

TARGET = Alphabet.of("a", "b")


class NotAGroupCodeError(ValueError):
    """Raised when proposed images do not form a group code."""


def is_group_code(words: Sequence[Word]) -> bool:
    """
    True iff the words reduce to distinct non-empty words generating a free
    group of rank len(words), i.e. they form a basis of the subgroup.
    """
    reduced = [reduce(w) for w in words]
    if any(not w for w in reduced) or len(set(reduced)) != len(reduced):
        return False
    if not reduced:
        return True
    return rank(stallings(reduced)) == len(reduced)


@dataclass(frozen=True)
class GroupEncoding:
    """
    An injective map source letter -> reduced word over {a, b}.

    image_automaton is the Stallings graph of the images; labels[(p, x)] is
    the source word carried by its transition p -x-> q, so that the product
    of labels along a loop at the base decodes the word read.
    """

    source: Alphabet
    images: Tuple[Word, ...]
    image_automaton: InverseAutomaton = field(compare=False)
    labels: Dict[Tuple[int, int], Word] = field(compare=False, repr=False)

    @property
    def target(self) -> Alphabet:
        return TARGET

    def image_of(self, letter: SignedLetter) -> Word:
        image = self.images[letter.index]
        return image if letter.sign > 0 else invert(image)


def _labelled_fold(images: Sequence[Word], source: Alphabet):
    """
    Folds the flower of `images` while tracking, on every edge, the source
    word it spells. Merging two targets re-gauges the edges at the absorbed
    state; parallel edges with different labels mean the images satisfy a
    relation, so they are not a group code.
    """
    one = Word.empty(source)
    edges: List[list] = []
    state_count = 1
    for i, image in enumerate(images):
        letters = image.letters
        path = [0] + list(range(state_count, state_count + len(letters) - 1)) + [0]
        state_count += len(letters) - 1
        for k, letter in enumerate(letters):
            label = Word(source, ((i, 1),)) if k == 0 else one
            if letter.sign > 0:
                edges.append([path[k], letter.index, path[k + 1], label])
            else:
                edges.append([path[k + 1], letter.index, path[k], invert(label)])

    while True:
        conflict = None
        seen: Dict[Tuple[int, SignedLetter], Tuple[int, int, Word]] = {}
        for n, (p, x, q, label) in enumerate(edges):
            for state, letter, other, carried in ((p, SignedLetter(x, 1), q, label),
                                                  (q, SignedLetter(x, -1), p, invert(label))):
                key = (state, letter)
                if key in seen:
                    conflict = (seen[key], (n, other, carried))
                    break
                seen[key] = (n, other, carried)
            if conflict:
                break
        if conflict is None:
            break
        (n1, t1, g1), (n2, t2, g2) = conflict
        if t1 == t2:
            if reduce(g1) != reduce(g2):
                raise NotAGroupCodeError("images satisfy a relation: " + ", ".join(map(str, images)))
            del edges[n2]
            continue
        if t2 == 0:
            (t1, g1), (t2, g2) = (t2, g2), (t1, g1)
        gauge = free_multiply(invert(g1), g2)
        for edge in edges:
            if edge[0] == t2:
                edge[3] = free_multiply(gauge, edge[3])
                edge[0] = t1
            if edge[2] == t2:
                edge[3] = free_multiply(edge[3], invert(gauge))
                edge[2] = t1

    used = sorted({0} | {edge[0] for edge in edges} | {edge[2] for edge in edges})
    index = {p: i for i, p in enumerate(used)}
    table = [[UNDEFINED] * len(used) for _ in TARGET]
    for p, x, q, _ in edges:
        table[x][index[p]] = index[q]
    folded = InverseAutomaton(TARGET, len(used), tuple(PartialInjection(tuple(t)) for t in table), 0, 0)
    canonical, new_of = folded.canonical()
    labels = {(new_of[index[p]], x): reduce(label) for p, x, q, label in edges}
    return canonical, labels


def make_encoding(images: Sequence[Word], source: Optional[Alphabet] = None) -> GroupEncoding:
    """
    Builds a group encoding from arbitrary images over {a, b}.

    Raises:
        NotAGroupCodeError: if the images are not a group code
    """
    if source is None:
        source = Alphabet(tuple(f"x_{i}" for i in range(1, len(images) + 1)))
    if len(images) != len(source):
        raise ValueError(f"Need {len(source)} images, got {len(images)}")
    for image in images:
        if image.alphabet != TARGET:
            raise AlphabetMismatchError(f"Image '{image}' is not over [{TARGET}]")
    reduced = tuple(reduce(image) for image in images)
    if not is_group_code(reduced):
        raise NotAGroupCodeError("Images are not a group code: " + ", ".join(map(str, reduced)))
    automaton, labels = _labelled_fold(reduced, source)
    logger.debug("encoding of %d letters: image automaton with %d states",
                 len(source), automaton.state_count)
    return GroupEncoding(source, reduced, automaton, labels)


def make_aperiodic_encoding(n: int) -> GroupEncoding:
    """The code x_i -> a^(i-1) b a^-(i-1), whose image subgroup is radical-closed."""
    if n < 1:
        raise ValueError("The aperiodic encoding needs n >= 1")
    source = Alphabet(tuple(f"x_{i}" for i in range(1, n + 1)))
    a, a_inv, b = SignedLetter(0, 1), SignedLetter(0, -1), SignedLetter(1, 1)
    images = [Word(TARGET, (a,) * i + (b,) + (a_inv,) * i) for i in range(n)]
    return make_encoding(images, source)


def encode_word(e: GroupEncoding, w: Word) -> Word:
    if w.alphabet != e.source:
        raise AlphabetMismatchError(f"Word '{w}' is not over the source [{e.source}]")
    letters = []
    for letter in w:
        letters.extend(e.image_of(letter).letters)
    return reduce(Word(TARGET, tuple(letters)))


def encode_words(e: GroupEncoding, ws: Sequence[Word]) -> List[Word]:
    return [encode_word(e, w) for w in ws]


def decode_word(e: GroupEncoding, w: Word) -> Optional[Word]:
    """
    The unique source word u with encode_word(e, u) = red(w), or None when
    red(w) lies outside the image subgroup.
    """
    if w.alphabet != TARGET:
        raise AlphabetMismatchError(f"Word '{w}' is not over [{TARGET}]")
    m = e.image_automaton
    state = m.start
    decoded = Word.empty(e.source)
    for letter in reduce(w):
        target = m.step(state, letter)
        if target is None:
            return None
        if letter.sign > 0:
            label = e.labels[(state, letter.index)]
        else:
            label = invert(e.labels[(target, letter.index)])
        decoded = free_multiply(decoded, label)
        state = target
    return decoded if state == m.accept else None


def encode_automaton(e: GroupEncoding, m: InverseAutomaton) -> InverseAutomaton:
    """
    Replaces every transition p -x-> q by a fresh path labelled by the image
    of x, then folds. Start and accept follow the fold.
    """
    if m.alphabet != e.source:
        raise AlphabetMismatchError(f"Automaton is over [{m.alphabet}], not the source [{e.source}]")
    edges: List[Edge] = []
    state_count = m.state_count
    for p, x, q in m.edges():
        letters = e.images[x].letters
        path = [p] + list(range(state_count, state_count + len(letters) - 1)) + [q]
        state_count += len(letters) - 1
        for k, letter in enumerate(letters):
            if letter.sign > 0:
                edges.append(Edge(path[k], letter.index, path[k + 1]))
            else:
                edges.append(Edge(path[k + 1], letter.index, path[k]))
    subdivided = RawGraph(TARGET, state_count, tuple(edges), m.start, m.accept)
    folded, _ = fold(subdivided)
    return folded


def recognize_nielsen_codeword(w: Word) -> bool:
    """True iff w is literally a^n b a^-n for some n >= 0 (single scan)."""
    names = [w.alphabet.name(letter) for letter in w]
    i = 0
    while i < len(names) and names[i] == "a":
        i += 1
    lead = i
    if i == len(names) or names[i] != "b":
        return False
    i += 1
    while i < len(names) and names[i] == "a^-1":
        i += 1
    return i == len(names) and i - lead - 1 == lead


def parse_encoding_file(text: str, origin: str = "<text>") -> GroupEncoding:
    """Reads `image <source letter> <word over a, b>` lines."""
    names: List[str] = []
    images: List[Word] = []
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, *fields = line.split()
        if keyword != "image" or len(fields) < 2:
            raise ValueError(f"{origin}:{number}: expected 'image <letter> <word>'")
        names.append(fields[0])
        images.append(Word.parse(" ".join(fields[1:]), TARGET))
    if not names:
        raise ValueError(f"{origin}: no 'image' lines")
    return make_encoding(images, Alphabet(tuple(names)))
