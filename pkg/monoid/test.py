import os
import random
import sys
from itertools import product
from math import comb, factorial

import pytest

# Add the parent directory to sys.path to allow importing from the parent directory
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from console import run_checks
from automaton.graph import Edge, InverseAutomaton, RawGraph
from automaton.instances import random_injection, random_inverse_automaton
from automaton.product import intersect_empty
from automaton.subgroup import stallings
from freegroup.words import Alphabet, Word
from monoid.fileformat import InjectionFormatError, format_injections, parse_injections
from monoid.injection import UNDEFINED, PartialInjection, SizeMismatchError, compose, inverse
from monoid.kozen import kozen_reduce
from monoid.transition import (
    MonoidLimitExceeded,
    closure,
    find_periodic_element,
    inverse_monoid_member,
    inverse_monoid_witness,
    is_aperiodic,
    transition_monoid,
)

U = UNDEFINED
AB = Alphabet.of("a", "b")


def pi(*image):
    return PartialInjection(tuple(image))


def table_automaton(n):
    a = tuple(i + 1 if i + 1 < n else U for i in range(n))
    return InverseAutomaton(AB, n, (PartialInjection(a), PartialInjection.identity(n)), 0, 0)


def automaton(states, edges, start, accept):
    return RawGraph(AB, states, tuple(Edge(p, AB.index(x), q) for p, x, q in edges), start, accept).to_inverse()


def power(f, k):
    result = PartialInjection.identity(f.size)
    for _ in range(k):
        result = compose(f, result)
    return result


def in_nontrivial_group(f, limit):
    """f is not idempotent and f^p = f for some p >= 2."""
    current = compose(f, f)
    if current == f:
        return False
    for _ in range(limit):
        if current == f:
            return True
        current = compose(f, current)
    return False


def test_compose_examples():
    assert compose(pi(1, U), pi(U, 0)) == pi(U, 1)
    g = pi(2, U, 0)
    assert compose(PartialInjection.identity(3), g) == g
    shift = pi(1, 2, U)
    assert compose(shift, shift) == pi(2, U, U)
    with pytest.raises(SizeMismatchError):
        compose(pi(0), pi(0, 1))


def test_inverse_examples():
    assert inverse(pi(1, 2, U)) == pi(U, 0, 1)
    assert inverse(PartialInjection.identity(3)) == PartialInjection.identity(3)
    assert inverse(PartialInjection.empty(3)) == PartialInjection.empty(3)
    rng = random.Random(1)
    for _ in range(50):
        f = random_injection(rng, 5)
        assert inverse(inverse(f)) == f


def test_partial_injection_invariants():
    with pytest.raises(ValueError):
        pi(1, 1)
    with pytest.raises(ValueError):
        pi(0, 2)
    f = PartialInjection.from_mapping(4, {0: 2, 2: 0, 3: 3})
    assert f.image == (2, U, 0, 3)
    assert f.domain() == (0, 2, 3)
    assert f.cycles() == [(0, 2), (3,)]
    assert not f.is_idempotent()
    assert pi(0, U, 2).is_idempotent()
    assert str(f) == "0->2 2->0 3->3"


def test_transition_monoid_examples():
    c3 = transition_monoid(table_automaton(3))
    assert PartialInjection.identity(3) in c3
    assert all(not any(len(cycle) > 1 for cycle in f.cycles()) for f in c3.elements)
    assert is_aperiodic(c3)

    two_cycle = transition_monoid(stallings([Word.parse("a a", AB)]))
    assert pi(1, 0) in two_cycle
    assert not is_aperiodic(two_cycle)

    one = InverseAutomaton(Alphabet.of("a"), 1, (pi(0),), 0, 0)
    trivial = transition_monoid(one)
    assert trivial.elements == (pi(0),)
    assert is_aperiodic(trivial)
    assert trivial.generator_names == ("a", "a^-1")


def test_transition_monoid_words_act_as_elements():
    rng = random.Random(9)
    for _ in range(40):
        m = random_inverse_automaton(rng, AB, 4)
        tm = transition_monoid(m)
        assert PartialInjection.identity(m.state_count) in tm
        for f in tm.elements:
            w = tm.word_for(f)
            for p in range(m.state_count):
                q = m.read(p, w)
                assert (U if q is None else q) == f(p)


def test_code_family_monoids_are_aperiodic():
    for n in range(1, 7):
        tm = transition_monoid(table_automaton(n))
        assert is_aperiodic(tm)
        assert find_periodic_element(table_automaton(n)) is None
        # one-generator monoid with zero: a^n is the empty map
        a = table_automaton(n).transitions[0]
        assert power(a, n) == PartialInjection.empty(n)


def test_closure_sanity():
    n = 3
    generators = [(1, 2, 0), (1, 0, 2), (U, 1, 2)]
    parents, _ = closure(generators, n)
    elements = {PartialInjection(image) for image in parents}
    assert len(elements) == sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1)) == 34

    rng = random.Random(12)
    for _ in range(30):
        size = rng.randint(1, 4)
        gens = [random_injection(rng, size) for _ in range(rng.randint(1, 3))]
        images = [g.image for g in gens] + [inverse(g).image for g in gens]
        parents, _ = closure(images, size)
        elements = {PartialInjection(image) for image in parents}
        assert PartialInjection.identity(size) in elements
        assert len(elements) <= sum(comb(size, k) ** 2 * factorial(k) for k in range(size + 1))
        for f, g in product(elements, repeat=2):
            assert compose(f, g) in elements
        assert all(inverse(f) in elements for f in elements)


def test_closure_limit():
    with pytest.raises(MonoidLimitExceeded):
        closure([(1, 2, 0), (1, 0, 2), (U, 1, 2)], 3, limit=10)
    with pytest.raises(MonoidLimitExceeded):
        transition_monoid(stallings([Word.parse("a a a", AB)]), limit=2)


def test_aperiodicity_criteria_agree():
    rng = random.Random(10)
    for _ in range(80):
        m = random_inverse_automaton(rng, AB, 3)
        tm = transition_monoid(m)
        aperiodic = is_aperiodic(tm)
        assert aperiodic == (find_periodic_element(m) is None)
        assert aperiodic == (not any(in_nontrivial_group(f, len(tm)) for f in tm.elements))
        if aperiodic:
            k = len(tm)
            assert all(power(f, k) == power(f, k + 1) for f in tm.elements)
        else:
            periodic = find_periodic_element(m)
            assert len(periodic.cycle) >= 2
            acted = [m.read(p, periodic.word) for p in periodic.cycle]
            assert acted == list(periodic.cycle[1:] + periodic.cycle[:1])


def test_inverse_monoid_member_examples():
    assert inverse_monoid_member(PartialInjection.identity(2), [pi(1, 0)])
    assert inverse_monoid_witness(PartialInjection.identity(2), [pi(1, 0)]) == []
    swap = pi(1, 0)
    # the swap and its inverse only generate {id, swap}
    assert not inverse_monoid_member(pi(1, U), [swap])
    assert inverse_monoid_witness(pi(1, U), [swap, pi(0, U)], ["s", "e"]) == ["s", "e"]
    assert not inverse_monoid_member(pi(1, 2, 0), [pi(1, 0, U)])
    with pytest.raises(SizeMismatchError):
        inverse_monoid_member(pi(0), [pi(1, 0)])


def test_inverse_monoid_witness_composes_to_target():
    rng = random.Random(13)
    for _ in range(40):
        size = rng.randint(1, 4)
        gens = [random_injection(rng, size) for _ in range(rng.randint(1, 3))]
        names = [f"g{i}" for i in range(len(gens))]
        by_name = dict(zip(names, gens))
        by_name.update({name + "^-1": inverse(g) for name, g in zip(names, gens)})
        target = random_injection(rng, size)
        expression = inverse_monoid_witness(target, gens, names)
        if expression is None:
            continue
        composed = PartialInjection.identity(size)
        for name in expression:
            composed = compose(composed, by_name[name])
        assert composed == target


def test_kozen_single_automaton():
    m = automaton(2, [(0, "a", 1)], 0, 1)
    instance = kozen_reduce([m])
    assert instance.size == 4
    assert instance.f_0 == pi(1, U, 3, U)
    assert instance.f_init == pi(1, U, 2, U)
    assert instance.f_alpha == pi(U, 1, 3, U)
    assert instance.f_beta == pi(U, 1, U, U)
    assert instance.f_0 == compose(instance.f_alpha, instance.f_init)
    assert inverse_monoid_member(instance.f_0, instance.generators())

    unreachable = automaton(2, [(0, "b", 0)], 0, 1)
    assert not inverse_monoid_member(kozen_reduce([unreachable]).f_0, kozen_reduce([unreachable]).generators())

    pair = kozen_reduce([m, m])
    assert pair.size == 6
    assert inverse_monoid_member(pair.f_0, pair.generators()) == (not intersect_empty([m, m]).empty)


def test_kozen_rejects_bad_input():
    with pytest.raises(ValueError):
        kozen_reduce([])
    with pytest.raises(ValueError):
        kozen_reduce([automaton(1, [], 0, 0)])
    three = Alphabet.of("a", "b", "c")
    with pytest.raises(ValueError):
        kozen_reduce([InverseAutomaton(three, 2, (pi(1, U),) * 3, 0, 1)])


def test_kozen_matches_intersection():
    rng = random.Random(33)
    for _ in range(50):
        ms = [random_inverse_automaton(rng, AB, 4, distinct_ends=True) for _ in range(rng.randint(1, 3))]
        instance = kozen_reduce(ms)
        member = inverse_monoid_member(instance.f_0, instance.generators())
        assert member == (not intersect_empty(ms).empty)


def test_injection_file_format():
    text = "# maps\nsize 3\nmap f 0->1 1->2\nmap empty\n"
    size, maps = parse_injections(text)
    assert size == 3
    assert maps == [("f", pi(1, 2, U)), ("empty", PartialInjection.empty(3))]
    assert format_injections(size, maps) == "size 3\nmap f 0->1 1->2\nmap empty\n"
    for bad in ("map f 0->1\n", "size 2\nmap f 0->1 0->0\n", "size 2\nmap f 0->5\n",
                "size 2\nmap f 0-1\n", "size two\n", "size 2\nmap\n", "size 2\nrow 0\n", "map"):
        with pytest.raises(InjectionFormatError):
            parse_injections(bad)


if __name__ == "__main__":
    sys.exit(run_checks("Partial injections and monoids", dict(globals())))
