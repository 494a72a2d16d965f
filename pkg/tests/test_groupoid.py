import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crossnorm.groupoid import Graph, Word, WordError, compose, format_word, identity, invert, reduce

# a triangle with a loop and a parallel edge
GRAPH = Graph(["p", "q", "r"], {"a": ("p", "q"), "b": ("q", "r"), "c": ("p", "r"), "l": ("q", "q")})


@st.composite
def words(draw, start="p", max_len=12):
    here = start
    letters = []
    for _ in range(draw(st.integers(0, max_len))):
        options = [(e, 1) for e, (s, _) in GRAPH.edges.items() if s == here]
        options += [(e, -1) for e, (_, t) in GRAPH.edges.items() if t == here]
        e, s = draw(st.sampled_from(sorted(options)))
        letters.append((e, s))
        here = GRAPH.edges[e][1] if s > 0 else GRAPH.edges[e][0]
    return Word(start, here, tuple(letters))


def _perm_oracle(seed: int):
    """A graph morphism into the groupoid of bijections between 4-element
    sets attached to the objects."""
    rng = random.Random(seed)
    perms = {}
    for e in GRAPH.edges:
        p = list(range(4))
        rng.shuffle(p)
        perms[e] = tuple(p)

    def evaluate(w: Word):
        out = tuple(range(4))
        for e, s in w.letters:
            p = perms[e]
            if s < 0:
                inv = [0] * 4
                for i, j in enumerate(p):
                    inv[j] = i
                p = tuple(inv)
            out = tuple(p[i] for i in out)
        return out

    return evaluate


def test_reduce_cancels_adjacent_pairs():
    w = Word("p", "q", (("a", 1), ("l", 1), ("l", -1)))
    assert reduce(w).letters == (("a", 1),)
    assert format_word(identity("p")) == "0"


def test_compose_checks_endpoints():
    a, b = GRAPH.gen("a"), GRAPH.gen("b")
    assert compose(a, b) == Word("p", "r", (("a", 1), ("b", 1)))
    with pytest.raises(WordError):
        compose(b, a)


def test_parse_and_format():
    w = GRAPH.parse("a + l - a")
    assert (w.start, w.end) == ("p", "p")
    assert format_word(w) == "a + l - a"
    assert GRAPH.parse("0", "q") == identity("q")
    with pytest.raises(WordError):
        GRAPH.parse("a b")
    with pytest.raises(WordError):
        GRAPH.parse("a + c")


@given(words())
def test_reduce_idempotent_and_keeps_endpoints(w):
    r = reduce(w)
    assert reduce(r) == r
    assert (r.start, r.end) == (w.start, w.end)


@given(words())
def test_inverse_cancels(w):
    assert (w + invert(w)) == identity(w.start)
    assert (invert(w) + w) == identity(w.end)


@settings(max_examples=50)
@given(words(), st.integers(0, 5))
def test_reduce_preserves_image_in_finite_groupoid(w, seed):
    evaluate = _perm_oracle(seed)
    assert evaluate(reduce(w)) == evaluate(w)


def test_compose_is_associative():
    a, b, l = GRAPH.gen("a"), GRAPH.gen("b"), GRAPH.gen("l")
    for x, y, z in itertools.product([a], [l, -l], [b]):
        assert (x + y) + z == x + (y + z)


def test_spanning_forest_paths():
    tree = GRAPH.spanning_forest()
    for p, w in tree.items():
        assert w.end == p
        assert w.start == tree["p"].start
    assert tree["p"].is_identity
    two = Graph(["x", "y", "z"], {"e": ("x", "y")})
    assert sorted(map(sorted, two.components())) == [["x", "y"], ["z"]]
