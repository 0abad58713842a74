"""
Kozen's reduction from intersection emptiness of inverse automata over two
letters to membership in a 3-generated inverse monoid of partial injections.

The point set is S = {o_1, o_2} followed by the state blocks Q_1, ..., Q_k.
f_0 lies in the inverse monoid generated by f_init, f_alpha, f_beta iff the
languages of the automata intersect.
"""
from dataclasses import dataclass
from typing import Sequence, Tuple

from automaton.graph import InverseAutomaton
from freegroup.words import AlphabetMismatchError

from .injection import UNDEFINED, PartialInjection

O_1, O_2 = 0, 1
GENERATOR_NAMES = ("f_init", "f_alpha", "f_beta")


@dataclass(frozen=True)
class KozenInstance:
    size: int
    f_init: PartialInjection
    f_alpha: PartialInjection
    f_beta: PartialInjection
    f_0: PartialInjection

    def generators(self) -> Tuple[PartialInjection, PartialInjection, PartialInjection]:
        return self.f_init, self.f_alpha, self.f_beta

    def named_maps(self):
        return list(zip(GENERATOR_NAMES + ("f_0",), self.generators() + (self.f_0,)))


def kozen_reduce(ms: Sequence[InverseAutomaton]) -> KozenInstance:
    if not ms:
        raise ValueError("kozen_reduce needs at least one automaton")
    alphabet = ms[0].alphabet
    if len(alphabet) != 2:
        raise ValueError(f"kozen_reduce needs a two-letter alphabet, got [{alphabet}]")
    offsets = []
    size = 2
    for i, m in enumerate(ms, start=1):
        if m.alphabet != alphabet:
            raise AlphabetMismatchError(f"Automaton {i} is over [{m.alphabet}], not [{alphabet}]")
        if m.start == m.accept:
            raise ValueError(f"Automaton {i} has start == accept")
        offsets.append(size)
        size += m.state_count

    letters = []
    for x in range(2):
        image = [UNDEFINED] * size
        image[O_2] = O_2
        for offset, m in zip(offsets, ms):
            for p, q in m.transitions[x].items():
                image[offset + p] = offset + q
        letters.append(PartialInjection(tuple(image)))

    init = [UNDEFINED] * size
    test = [UNDEFINED] * size
    init[O_1] = test[O_1] = O_2
    for offset, m in zip(offsets, ms):
        init[offset + m.start] = offset + m.start
        test[offset + m.start] = offset + m.accept
    return KozenInstance(size, PartialInjection(tuple(init)), letters[0], letters[1],
                         PartialInjection(tuple(test)))
