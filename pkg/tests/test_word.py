from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gicarkit.diagram import (
    adjoint,
    compose,
    count_formula,
    enumerate_diagrams,
    identity,
    tensor_rect,
)
from gicarkit.word import (
    Letter,
    MalformedWordError,
    StandardWord,
    Word,
    compose_words,
    enumerate_standard,
    generator_diagram,
    normalize,
    parse_word,
    psi,
    psi_inverse,
    random_word,
    rewrite_trace,
    tensor_words,
)

seeds = st.integers(0, 2**32 - 1)


def word_from_seed(seed: int, max_size: int = 6, max_len: int = 12) -> Word:
    return random_word(random.Random(seed), max_size=max_size, max_len=max_len)


def generator_oracle(w: Word):
    """Compose generator diagrams letter by letter (rightmost letter first)."""
    out = identity(w.source, "ann")
    for letter, level in zip(reversed(w.letters), reversed(w.levels())):
        out = compose(out, generator_diagram(letter, level))
    return out


# -- parsing -------------------------------------------------------------------


def test_parse_text_syntax():
    w = parse_word("a3 a1 t^2 a*2 a*4 @5")
    assert w.source == 5
    assert [str(x) for x in w.letters] == ["a3", "a1", "t^2", "a*2", "a*4"]
    assert parse_word("a2* @3").letters == parse_word("a*2 @3").letters


@pytest.mark.parametrize("text", ["q1 @2", "a0 @2", "a*5 @3", "a1 a2", "t^x @2", "a1 @-1"])
def test_parse_rejects_malformed_words(text):
    with pytest.raises(MalformedWordError):
        parse_word(text)


def test_standard_word_validation():
    with pytest.raises(ValueError):
        StandardWord(3, (2, 1), 0, ())
    with pytest.raises(ValueError):
        StandardWord(3, (), 3, ())
    assert StandardWord(3, (), 2, ()).n == 3


# -- normal form ---------------------------------------------------------------


def test_cap_then_rotation():
    for n in range(1, 6):
        assert normalize(f"a*1 t @{n}") == StandardWord(n, (), 0, (n,))


def test_create_annihilate_create():
    assert normalize("a1 a*1 a1 @3") == normalize("a1 @3")


def test_normal_form_text():
    assert str(normalize("a3 a1 t^2 a*2 a*4 @5")) == "a3 a1 t^2 a*2 a*4 @5"


@settings(max_examples=500, deadline=None)
@given(seeds)
def test_normalize_preserves_diagram(seed):
    w = word_from_seed(seed, max_len=10)
    s = normalize(w)
    assert psi(s) == psi(w)
    assert psi(w) == generator_oracle(w)


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_normalize_is_idempotent_and_stable(seed):
    w = word_from_seed(seed)
    s = normalize(w)
    assert normalize(s.as_word()) == s
    trace = rewrite_trace(w)
    assert trace[0] == w
    assert normalize(trace[-1]) == s


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_psi_of_normal_form_matches_generators(seed):
    s = normalize(word_from_seed(seed))
    assert psi(s) == generator_oracle(s.as_word())


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_adjoint_commutes_with_psi(seed):
    w = word_from_seed(seed)
    assert psi(w.adjoint()) == adjoint(psi(w))
    assert normalize(w).adjoint() == normalize(w.adjoint())


def test_compose_words_examples():
    assert compose_words("a1 @0", "a*1 @1") == StandardWord(0, (), 0, ())
    for m in range(4):
        for n in range(4):
            for s in enumerate_standard(m, n):
                assert compose_words(s.as_word(), Word(n, ())) == s


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_compose_words_associative(data):
    sizes = [data.draw(st.integers(0, 3)) for _ in range(4)]
    a, b, c = (data.draw(st.sampled_from(enumerate_standard(sizes[i], sizes[i + 1]))) for i in range(3))
    left = compose_words(compose_words(a, b), c)
    right = compose_words(a, compose_words(b, c))
    assert left == right
    assert psi(left) == compose(compose(psi(a), psi(b)), psi(c))


def test_relation_rotation_shifts_creation():
    for n in range(1, 6):
        for i in range(2, n + 2):
            assert normalize(f"a{i} t @{n}") == normalize(f"t a{i - 1} @{n}")
        assert normalize(f"t a{n + 1} @{n}") == normalize(f"a1 @{n}")


# -- the word/diagram bijection ------------------------------------------------


def test_psi_of_creation():
    for n in range(5):
        for i in range(1, n + 2):
            d = psi(f"a{i} @{n}")
            assert d.m == n and d.n == n + 1
            assert dict(d.through) == {j: (j if j < i else j + 1) for j in range(1, n + 1)}
            assert d.cups == (i,)


def test_psi_of_rotation():
    for n in range(2, 6):
        d = psi(f"t @{n}")
        assert dict(d.through) == {j: j % n + 1 for j in range(1, n + 1)}
        assert d.offset == 1


def test_empty_matching_inverse():
    for m in range(4):
        for n in range(4):
            (d,) = enumerate_diagrams("ann", m, n, 0)
            assert psi_inverse(d) == StandardWord(m, tuple(range(1, n + 1)), 0, tuple(range(1, m + 1)))


def test_round_trip_generator_pair():
    s = normalize("a2 a*1 @3")
    assert psi_inverse(psi(s)) == s


def test_round_trip_exhaustive():
    for m in range(5):
        for n in range(5):
            for d in enumerate_diagrams("ann", m, n):
                assert psi(psi_inverse(d)) == d
            words = enumerate_standard(m, n)
            assert len(words) == count_formula(m, n)
            for s in words:
                assert psi_inverse(psi(s)) == s


def test_rectangular_words_match_rect_diagrams():
    for m in range(4):
        for n in range(4):
            words = enumerate_standard(m, n, rect=True)
            assert len(words) == len(enumerate_diagrams("rect", m, n))
            for s in words:
                assert psi(s, rect=True).kind == "rect"


def test_enumerate_standard_counts():
    assert enumerate_standard(0, 0) == [StandardWord(0, (), 0, ())]
    assert len(enumerate_standard(2, 2)) == 7


# -- tensor products -----------------------------------------------------------


def test_tensor_examples():
    assert tensor_words("a1 @0", "a1 @0") == normalize("a2 a1 @0")
    assert tensor_words("@2", "a1 a*2 @2") == normalize("a3 a*4 @4")
    assert tensor_words("a1 a*2 @2", "@2") == normalize("a1 a*2 @4")


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_tensor_matches_rect_diagrams(data):
    sizes = [data.draw(st.integers(0, 3)) for _ in range(4)]
    w1 = data.draw(st.sampled_from(enumerate_standard(sizes[0], sizes[1], rect=True)))
    w2 = data.draw(st.sampled_from(enumerate_standard(sizes[2], sizes[3], rect=True)))
    assert psi(tensor_words(w1, w2), rect=True) == tensor_rect(psi(w1, rect=True), psi(w2, rect=True))


def test_json_round_trip():
    for s in enumerate_standard(3, 3):
        assert StandardWord.from_json(s.to_json()) == s


def test_letter_targets():
    assert Letter("a", 2).target(3) == 4
    assert Letter("s", 2).target(3) == 2
    assert Letter("t", 1).target(3) == 3
