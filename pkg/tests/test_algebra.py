from __future__ import annotations

import itertools
from math import comb

import pytest

from gicarkit.algebra import (
    ProjectionPattern,
    bratteli,
    bratteli_dot,
    matrix_unit,
    minimal_projection,
    pascal_row,
    rotational_idempotent,
    unit_labels,
    wedderburn_check,
)
from gicarkit.diagram import AnnDiagram, Decorated, RectDiagram, enumerate_diagrams, expand_decorated, identity
from gicarkit.lincomb import LinComb
from gicarkit.scalar import Matrix, zeta
from gicarkit.tensorrep import ToyContext, necklace_count, represent
from gicarkit.word import psi


def patterns(n: int):
    return ["".join(p) for p in itertools.product("bd", repeat=n)]


def test_single_strand_patterns():
    e1 = LinComb.basis(RectDiagram(1, 1, ()))
    one = LinComb.basis(identity(1, "rect"))
    assert minimal_projection("b") == e1
    assert minimal_projection("d") == one - e1


def test_pattern_parsing():
    p = ProjectionPattern.parse("bdd")
    assert p.n == 3 and p.dotted == (2, 3)
    assert ProjectionPattern.from_dotted(3, [2, 3]) == p
    with pytest.raises(ValueError):
        ProjectionPattern.parse("bx")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_minimal_projections_orthogonal_and_complete(n):
    projs = {p: minimal_projection(p) for p in patterns(n)}
    total = LinComb()
    for p, x in projs.items():
        total = total + x
        assert x.adjoint() == x
        for q, y in projs.items():
            assert x @ y == (x if p == q else LinComb())
    assert total == LinComb.basis(identity(n, "rect"))


def test_rotational_idempotent_weight_one():
    want = LinComb.basis(identity(1, "ann")) - LinComb.basis(AnnDiagram(1, 1, ()))
    assert rotational_idempotent(1, 0) == want


def test_rotational_idempotent_sign():
    p = rotational_idempotent(2, 1)
    rotation = LinComb.basis(psi("t @2"))
    assert rotation @ p == p.scale(-1)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_rotational_idempotents_split_the_dotted_identity(k):
    dotted = expand_decorated(Decorated(identity(k, "ann"), frozenset(range(1, k + 1))))
    rotation = LinComb.basis(psi(f"t @{k}"))
    ps = [rotational_idempotent(k, r) for r in range(k)]
    total = LinComb()
    for r, p in enumerate(ps):
        assert p @ p == p and p.adjoint() == p and not p.is_zero()
        assert rotation @ p == p.scale(zeta(k, r))
        for s, q in enumerate(ps):
            if s != r:
                assert p @ q == LinComb()
        total = total + p
    assert total == dotted


def test_rect_wedderburn():
    rep = wedderburn_check("rect", 3)
    assert rep["ok"]
    assert [s["size"] for s in rep["summands"]] == [1, 3, 3, 1]
    assert rep["dimension"]["units"] == 20


def test_ann_wedderburn_small():
    rep = wedderburn_check("ann", 2)
    assert rep["ok"]
    assert [(s["k"], s["copies"], s["size"]) for s in rep["summands"]] == [(0, 1, 1), (1, 1, 2), (2, 2, 1)]
    assert rep["dimension"]["units"] == 7
    rep3 = wedderburn_check("ann", 3)
    assert rep3["ok"] and rep3["dimension"]["enumerated"] == 31


@pytest.mark.parametrize("kind,n,d", [("rect", 3, 2), ("ann", 3, 2), ("ann", 2, 3)])
def test_units_are_matrix_units_in_tensor_representation(kind, n, d):
    """Independent check: represent every unit on (C^(d+1))^n and multiply matrices."""
    ctx = ToyContext(d)
    labels = unit_labels(kind, n)
    mats = {lab: represent(expand_decorated(matrix_unit(kind, n, lab[2], lab[3], lab[1])), ctx) for lab in labels}
    zero = Matrix.zeros(ctx.dim(n), ctx.dim(n))
    total = zero
    for (k, r, S, T), x in mats.items():
        assert x.H == mats[(k, r, T, S)]
        for (k2, r2, S2, T2), y in mats.items():
            want = mats[(k, r, S, T2)] if (k, r, T) == (k2, r2, S2) else zero
            assert x @ y == want
        if S == T:
            total = total + x
            expected = d**k if kind == "rect" else necklace_count(k, r, d)
            assert x.trace() == expected
    assert total == Matrix.identity(ctx.dim(n))


def test_bratteli_rows():
    rows = bratteli(6)
    assert rows[0].multiplicities == (1,)
    assert rows[4].multiplicities == (1, 4, 6, 4, 1)
    assert all(r.multiplicities == pascal_row(r.level) for r in rows)
    for r in rows[:-1]:
        assert sorted(e[:2] for e in r.edges) == sorted([(k, k) for k in range(r.level + 1)] + [(k, k + 1) for k in range(r.level + 1)])
        assert {e[2] for e in r.edges} == {1}


def test_bratteli_dot():
    dot = bratteli_dot(bratteli(2))
    assert dot.startswith("digraph bratteli {")
    assert dot.count("->") == 6
    assert '"(2,1):2"' in dot


def test_dimension_counts_match_enumeration():
    for n in range(4):
        assert len(enumerate_diagrams("rect", n, n)) == sum(comb(n, k) ** 2 for k in range(n + 1))
        assert len(unit_labels("rect", n)) == len(enumerate_diagrams("rect", n, n))
        assert len(unit_labels("ann", n)) == len(enumerate_diagrams("ann", n, n))
