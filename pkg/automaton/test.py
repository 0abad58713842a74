import os
import random
import sys

import pytest

# Add the parent directory to sys.path to allow importing from the parent directory
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from console import run_checks
from automaton.fileformat import AutomatonFormatError, format_automaton, parse_automaton
from automaton.graph import (
    Edge,
    InverseAutomaton,
    RawGraph,
    accepted_words,
    dyck_closure,
    fold,
    isomorphic,
    merge_witness,
    path_to,
)
from automaton.instances import random_generators, random_inverse_automaton, random_raw_graph
from automaton.product import intersect_empty
from automaton.subgroup import accepts, flower, rank, stallings, subgroup_member, trim_core
from freegroup.words import Alphabet, AlphabetMismatchError, Word, free_multiply, invert, is_dyck, reduce, reduced_words
from monoid.injection import UNDEFINED, PartialInjection

AB = Alphabet.of("a", "b")


def w(text, alphabet=AB):
    return Word.parse(text, alphabet)


def words(*texts):
    return [w(t) for t in texts]


def code_generators(n):
    return [w(" ".join(["a"] * i + ["b"] + ["a^-1"] * i)) for i in range(n)]


def table_automaton(n):
    """a: i -> i+1 (undefined at the last state), b fixes every state."""
    a = tuple(i + 1 if i + 1 < n else UNDEFINED for i in range(n))
    return InverseAutomaton(AB, n, (PartialInjection(a), PartialInjection.identity(n)), 0, 0)


def automaton(states, edges, start=0, accept=0, alphabet=AB):
    raw = RawGraph(alphabet, states, tuple(Edge(p, alphabet.index(x), q) for p, x, q in edges), start, accept)
    return raw.to_inverse()


def test_fold_examples():
    g = RawGraph(AB, 3, (Edge(0, 0, 1), Edge(0, 0, 2)), 0, 0)
    m, trace = fold(g)
    assert m.state_count == 2
    assert list(m.edges()) == [Edge(0, 0, 1)]
    assert trace.class_of == (0, 1, 1)
    assert len(trace.merges) == 1

    cn3 = table_automaton(3).to_raw()
    m, trace = fold(cn3)
    assert isomorphic(m, table_automaton(3))
    assert sorted(trace.class_of) == [0, 1, 2]
    assert trace.merges == ()

    petals = flower(words("a b a^-1", "a a b a^-1 a^-1"))
    assert petals.state_count == 7
    m, _ = fold(petals)
    assert m == automaton(3, [(0, "a", 1), (1, "a", 2), (1, "b", 1), (2, "b", 2)])


def test_flower_examples():
    g = flower(words("b"))
    assert (g.state_count, g.edges) == (1, (Edge(0, 1, 0),))
    g = flower(words("a b a^-1"))
    assert g.state_count == 3
    assert set(g.edges) == {Edge(0, 0, 1), Edge(1, 1, 2), Edge(0, 0, 2)}
    assert flower(code_generators(3)).state_count == 7
    assert flower(words("", "a a^-1", "b")).state_count == 1


def test_stallings_examples():
    assert stallings(words("a a")) == automaton(2, [(0, "a", 1), (1, "a", 0)])
    assert stallings(words("a b a^-1", "a a b a^-1 a^-1")) == \
        automaton(3, [(0, "a", 1), (1, "a", 2), (1, "b", 1), (2, "b", 2)])
    assert stallings([], AB).state_count == 1


def test_code_family_automata():
    for n in range(1, 7):
        m = stallings(code_generators(n))
        assert isomorphic(m, table_automaton(n))
        assert rank(m) == n
    # order of the petals does not matter
    assert isomorphic(stallings(code_generators(4)), stallings(list(reversed(code_generators(4)))))


def test_accepts_examples():
    h = stallings(words("a a"))
    assert accepts(h, w("a a"))
    assert not accepts(h, w("a"))
    assert accepts(stallings(words("a b a^-1")), w("a b b a^-1"))
    with pytest.raises(AlphabetMismatchError):
        accepts(h, Word.parse("a", Alphabet.of("a")))


def test_subgroup_member_examples():
    c3 = stallings(code_generators(3))
    assert subgroup_member(c3, w("a b a^-1"))
    assert not subgroup_member(c3, w("a"))
    assert subgroup_member(c3, w(""))
    assert subgroup_member(c3, w("a b b^-1 a^-1 b"))


def test_trim_core_examples():
    path = automaton(3, [(0, "a", 1), (1, "b", 2)])
    trimmed = trim_core(path)
    assert (trimmed.state_count, trimmed.edge_count) == (1, 0)
    c3 = stallings(code_generators(3))
    assert trim_core(c3) == c3
    assert trim_core(table_automaton(3)) == table_automaton(3)
    with pytest.raises(ValueError):
        trim_core(automaton(2, [(0, "a", 1)], 0, 1))


def test_rank_examples():
    assert rank(stallings(words("a b a^-1", "a a b a^-1 a^-1"))) == 2
    assert rank(stallings(code_generators(3))) == 3
    assert rank(stallings([], AB)) == 0
    with pytest.raises(ValueError):
        rank(automaton(2, [(0, "a", 0)]))


def test_intersect_examples():
    loop_a = automaton(1, [(0, "a", 0)])
    loop_b = automaton(1, [(0, "b", 0)])
    result = intersect_empty([loop_a, loop_b])
    assert (result.empty, result.witness) == (False, w(""))

    path_a = automaton(2, [(0, "a", 1)], 0, 1)
    path_b = automaton(2, [(0, "b", 1)], 0, 1)
    assert intersect_empty([path_a, path_b]).empty

    a2, a3 = stallings(words("a a")), stallings(words("a a a"))
    # the identity lies in every subgroup; a^6 is the shortest non-trivial common element
    assert intersect_empty([a2, a3]).witness == w("")
    common = [x for x in reduced_words(AB, 6) if x and subgroup_member(a2, x) and subgroup_member(a3, x)]
    assert [str(x) for x in common] == ["a a a a a a", "a^-1 a^-1 a^-1 a^-1 a^-1 a^-1"]

    with pytest.raises(AlphabetMismatchError):
        intersect_empty([a2, stallings([Word.parse("a", Alphabet.of("a"))])])


def test_intersect_witness_is_shortest():
    rng = random.Random(5)
    for _ in range(60):
        ms = [random_inverse_automaton(rng, AB, 4) for _ in range(rng.randint(1, 3))]
        result = intersect_empty(ms)
        if result.empty or not result.witness:
            continue
        assert all(accepts(m, result.witness) for m in ms)
        shorter = (x for x in reduced_words(AB, len(result.witness) - 1) if all(accepts(m, x) for m in ms))
        assert next(shorter, None) is None


def test_isomorphic_examples():
    c3 = stallings(code_generators(3))
    assert isomorphic(c3, c3)
    assert not isomorphic(stallings(words("a")), stallings(words("a a")))
    # same shape, different accept state
    assert not isomorphic(automaton(2, [(0, "a", 1)], 0, 0), automaton(2, [(0, "a", 1)], 0, 1))


def test_fold_confluence():
    rng = random.Random(2024)
    for _ in range(200):
        g = random_raw_graph(rng, AB)
        reference, trace = fold(g)
        assert sorted(set(trace.class_of)) == list(range(reference.state_count))
        for _ in range(5):
            other, _ = fold(g, random.Random(rng.random()))
            assert isomorphic(reference, other)


def test_group_language_is_reduced_language():
    rng = random.Random(14)
    for _ in range(100):
        m = random_inverse_automaton(rng, AB, 5)
        reduced = {x for x in accepted_words(m, 4) if reduce(x) == x}
        from_long = {reduce(x) for x in accepted_words(m, 8) if len(reduce(x)) <= 4}
        assert reduced == from_long


def test_folding_preserves_reduced_language():
    rng = random.Random(15)
    for _ in range(100):
        g = random_raw_graph(rng, AB, max_states=6, max_edges=8)
        m, trace = fold(g)
        raw = {reduce(x) for x in accepted_words(g, 6)}
        folded = {reduce(x) for x in accepted_words(m, 6)}
        assert {x for x in raw if len(x) <= 4} <= folded
        # the other direction: folded states are exactly the Dyck-connected raw states
        classes = {(p, q) for p in range(g.state_count) for q in range(g.state_count)
                   if trace.class_of[p] == trace.class_of[q]}
        assert dyck_closure(g) == classes


def _dyck_paths_within_classes(g, class_of, max_length):
    table = g.successors()
    signed = AB.signed_letters()

    def walk(relation, stack, length):
        if not stack:
            assert all(class_of[p] == class_of[q] for p, q in relation)
        if length == max_length:
            return
        for letter in signed:
            after = stack[:-1] if stack and stack[-1] == letter.inverse() else stack + (letter,)
            if len(after) > max_length - length - 1:
                continue
            moved = {(p, r) for p, q in relation for r in table.get((q, letter), ())}
            if moved:
                walk(moved, after, length + 1)

    walk({(p, p) for p in range(g.state_count)}, (), 0)


def test_dyck_paths_join_folded_states():
    rng = random.Random(31)
    for _ in range(100):
        g = random_raw_graph(rng, AB)
        _, trace = fold(g)
        _dyck_paths_within_classes(g, trace.class_of, 8)


def test_merge_witnesses():
    rng = random.Random(32)
    for _ in range(100):
        g = random_raw_graph(rng, AB)
        _, trace = fold(g, random.Random(rng.random()))
        for k, merge in enumerate(trace.merges):
            witness = merge_witness(g, trace, k)
            assert is_dyck(witness)
            assert merge.right in g.read_set({merge.left}, witness)


def _in_subgroup_by_dyck(generators, x):
    """x is in <generators> iff the end of an x-labelled tail at the base is Dyck-joined to the base."""
    petals = flower(generators, AB)
    edges = list(petals.edges)
    previous = 0
    for i, letter in enumerate(x.letters):
        nxt = petals.state_count + i
        edges.append(Edge(previous, letter.index, nxt) if letter.sign > 0 else Edge(nxt, letter.index, previous))
        previous = nxt
    g = RawGraph(AB, petals.state_count + len(x), tuple(edges), 0, 0)
    return (previous, 0) in dyck_closure(g)


def test_membership_matches_generator_products():
    rng = random.Random(6)
    for _ in range(100):
        generators = random_generators(rng, AB, max_count=3, max_length=4)
        m = stallings(generators)
        factors = generators + [invert(y) for y in generators]
        longest = max(len(y) for y in generators)
        products = {Word.empty(AB)}
        layer = {Word.empty(AB)}
        for count in range(1, 7):
            # a product longer than this cannot come back to length 6 within six factors
            bound = 6 + longest * (6 - count)
            layer = {q for q in (free_multiply(p, y) for p in layer for y in factors)
                     if len(q) <= bound} - products
            products |= layer
        accepted = {x for x in reduced_words(AB, 6) if subgroup_member(m, x)}
        short_products = {p for p in products if len(p) <= 6}
        assert short_products <= accepted
        for x in accepted - short_products:
            assert _in_subgroup_by_dyck(generators, x)


def test_rank_bounded_by_generator_count():
    rng = random.Random(8)
    for _ in range(100):
        generators = random_generators(rng, AB)
        assert rank(stallings(generators)) <= len(generators)


def test_path_to():
    c3 = stallings(code_generators(3))
    assert path_to(c3, 2) == w("a a")
    assert path_to(c3, 0) == w("")
    assert path_to(automaton(2, []), 1) is None


def test_file_format():
    text = """
    # the C_3 table
    alphabet a b
    states 3
    start 0
    accept 0
    edge 0 a 1
    edge 1 a 2
    edge 0 b 0   # loop
    edge 1 b 1
    edge 2 b 2
    """
    g = parse_automaton(text)
    assert g.is_deterministic()
    assert g.to_inverse() == table_automaton(3)
    assert parse_automaton(format_automaton(table_automaton(3))).to_inverse() == table_automaton(3)

    nondeterministic = parse_automaton("alphabet a\nstates 3\nstart 0\naccept 0\nedge 0 a 1\nedge 0 a 2\n")
    assert not nondeterministic.is_deterministic()
    with pytest.raises(ValueError):
        nondeterministic.to_inverse()

    for bad in ("states 1\nstart 0\naccept 0\n",
                "alphabet a\nstates 1\nstart 0\n",
                "alphabet a\nstates 1\nstart 0\naccept 0\nedge 0 c 0\n",
                "alphabet a\nstates 1\nstart 0\naccept 0\nedge 0 a 4\n",
                "alphabet a\nstates x\nstart 0\naccept 0\n",
                "alphabet a\nstates 1\nstart 0\naccept 0\nloop 0 a\n"):
        with pytest.raises(AutomatonFormatError):
            parse_automaton(bad)


if __name__ == "__main__":
    sys.exit(run_checks("Automata and Stallings folding", dict(globals())))
