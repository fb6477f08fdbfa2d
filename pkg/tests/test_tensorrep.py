from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gicarkit.algebra import minimal_projection
from gicarkit.scalar import Matrix
from gicarkit.tensorrep import (
    ToyContext,
    annihilate_matrix,
    annular_degeneracy_report,
    create_matrix,
    evaluation_rank,
    faithfulness_rank,
    necklace_count,
    odd_jones,
    projection_trace,
    represent,
    represent_via_words,
    rotate_matrix,
    separating_test,
    toy_annihilate,
    toy_create,
    toy_module,
)
from gicarkit.word import StandardWord, enumerate_standard, psi, random_word, tensor_words


def e0_projection(ctx: ToyContext) -> Matrix:
    z = ctx.vector([0])
    return z @ z.H


def test_create_from_vacuum():
    ctx = ToyContext(2)
    assert toy_create(ctx, 1, ctx.vector([])) == ctx.vector([0])


def test_annihilate_kills_perp():
    ctx = ToyContext(2)
    assert toy_annihilate(ctx, 2, ctx.vector([0, 1, 0])).is_zero()
    assert toy_annihilate(ctx, 2, ctx.vector([2, 0, 1])) == ctx.vector([2, 1])


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 2), st.integers(0, 3), st.data())
def test_create_annihilate_adjoint(d, m, data):
    ctx = ToyContext(d)
    i = data.draw(st.integers(1, m + 1))
    vals = st.fractions(min_value=-2, max_value=2, max_denominator=3)
    u = Matrix.from_lists([[x] for x in data.draw(st.lists(vals, min_size=ctx.dim(m), max_size=ctx.dim(m)))])
    v = Matrix.from_lists([[x] for x in data.draw(st.lists(vals, min_size=ctx.dim(m + 1), max_size=ctx.dim(m + 1)))])
    a, s = create_matrix(ctx, i, m), annihilate_matrix(ctx, i, m + 1)
    assert ((a @ u).H @ v) == (u.H @ (s @ v))
    assert a.H == s


def test_single_odd_jones():
    ctx = ToyContext(2)
    e = odd_jones(ctx, 1, 1)
    assert e == e0_projection(ctx)
    assert e.trace() == 1


def test_odd_jones_equivalences():
    ctx = ToyContext(2)
    for m in (2, 3):
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                if i == j:
                    continue
                x = create_matrix(ctx, i, m - 1) @ annihilate_matrix(ctx, j, m)
                assert x @ x.H == odd_jones(ctx, i, m)
                assert x.H @ x == odd_jones(ctx, j, m)
                assert odd_jones(ctx, i, m) != odd_jones(ctx, j, m)


def test_all_broken_projection():
    ctx = ToyContext(2)
    p = e0_projection(ctx)
    assert represent_via_words(minimal_projection("bb"), ctx) == p.kron(p)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_projection_traces(d):
    ctx = ToyContext(d)
    for pattern in ["", "b", "d", "bd", "dd", "bdd", "dbdd"]:
        assert projection_trace(ctx, pattern) == d ** pattern.count("d")


def test_rotation_relation():
    ctx = ToyContext(2)
    for m in range(2, 5):
        for i in range(2, m + 1):
            assert represent(f"a{i} t @{m - 1}", ctx) == represent(f"t a{i - 1} @{m - 1}", ctx)
        assert rotate_matrix(ctx, m).H @ rotate_matrix(ctx, m) == Matrix.identity(ctx.dim(m))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 2))
def test_words_and_diagrams_agree(seed, d):
    """Letter-by-letter matrices against direct diagram semantics."""
    ctx = ToyContext(d)
    w = random_word(random.Random(seed), max_size=4, max_len=8)
    assert represent(w, ctx) == represent(psi(w), ctx)


def test_separating_examples():
    ctx = ToyContext(2)
    for n in range(4):
        res = separating_test(StandardWord(n, (), 0, ()), ctx)
        assert res["value"] == 1 and res["source"] == res["target"]
        assert res["source"] == ctx.vector([1] * n)
    res = separating_test(StandardWord(2, (1,), 0, (2,)), ctx)
    assert res["source"] == ctx.vector([1, 0]) and res["target"] == ctx.vector([0, 1])
    assert res["value"] == 1 and res["vanishing"]


@pytest.mark.parametrize("d", [1, 2])
def test_standard_words_are_independent(d):
    ctx = ToyContext(d)
    for m in range(4):
        for n in range(4):
            rank, size = evaluation_rank(m, n, ctx)
            assert rank == size
            assert faithfulness_rank(m, n, ctx) == (size, size)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_tensor_functor(data):
    ctx = ToyContext(data.draw(st.integers(1, 2)))
    sizes = [data.draw(st.integers(0, 2)) for _ in range(4)]
    w1 = data.draw(st.sampled_from(enumerate_standard(sizes[0], sizes[1], rect=True)))
    w2 = data.draw(st.sampled_from(enumerate_standard(sizes[2], sizes[3], rect=True)))
    assert represent(tensor_words(w1, w2), ctx) == represent(w1, ctx).kron(represent(w2, ctx))


def test_toy_modules_satisfy_relations():
    for d in (1, 2):
        assert toy_module(ToyContext(d), 4, "ann").check_relations() == []
        assert toy_module(ToyContext(d), 3, "rect").check_relations() == []


def test_necklace_values():
    assert necklace_count(2, 0, 2) == 3
    assert necklace_count(2, 1, 2) == 1
    assert necklace_count(3, 1, 2) == 2
    assert necklace_count(4, 0, 2) == 6


def test_necklace_counts_partition_the_tensor_space():
    for d in range(4):
        for k in range(1, 7):
            assert sum(necklace_count(k, r, d) for r in range(k)) == d**k


def test_degeneracy_report_examples():
    zero = annular_degeneracy_report(ToyContext(0), 3)
    assert zero["multiplicities"] == [{"kind": "ann", "k": 0, "r": 0, "multiplicity": 1}]
    rect = annular_degeneracy_report(ToyContext(1), 4, "rect")
    assert [row["multiplicity"] for row in rect["multiplicities"]] == [1] * 5
    ann = annular_degeneracy_report(ToyContext(2), 2)
    table = {(row["k"], row["r"]): row["multiplicity"] for row in ann["multiplicities"]}
    assert table[(2, 0)] == 3 and table[(2, 1)] == 1
    assert ann["ok"] and rect["ok"] and zero["ok"]


def test_negative_dimension_rejected():
    with pytest.raises(ValueError):
        ToyContext(-1)
