from __future__ import annotations

import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gicarkit.diagram import (
    AnnDiagram,
    Decorated,
    RectDiagram,
    adjoint,
    compose,
    compose_decorated,
    count_formula,
    diagram_from_json,
    enumerate_diagrams,
    expand_decorated,
    identity,
    tensor_rect,
)
from gicarkit.lincomb import LinComb
from gicarkit.word import psi

# -- independent oracles -------------------------------------------------------


def partial_maps(m: int, n: int):
    """Every partial injection {1..m} -> {1..n} as a sorted tuple of pairs."""
    for k in range(min(m, n) + 1):
        for dom in itertools.combinations(range(1, m + 1), k):
            for img in itertools.permutations(range(1, n + 1), k):
                yield tuple(zip(dom, img))


def is_monotone(pairs) -> bool:
    imgs = [b for _, b in sorted(pairs)]
    return imgs == sorted(imgs)


def is_cyclically_monotone(pairs) -> bool:
    imgs = [b for _, b in sorted(pairs)]
    return any(imgs[s:] + imgs[:s] == sorted(imgs) for s in range(max(len(imgs), 1)))


def tensor_semantics(d, basis_size: int = 2) -> dict:
    """Action on slot tuples: caps need slot value 0, cups write 0, strings move values."""
    out = {}
    for t in itertools.product(range(basis_size), repeat=d.m):
        if any(t[c - 1] != 0 for c in d.caps):
            continue
        res = [0] * d.n
        for a, b in d.through:
            res[b - 1] = t[a - 1]
        out[t] = tuple(res)
    return out


def semantic_compose(first: dict, second: dict) -> dict:
    return {t: second[u] for t, u in first.items() if u in second}


def all_diagrams(kind: str, top: int = 3):
    return [d for m in range(top + 1) for n in range(top + 1) for d in enumerate_diagrams(kind, m, n)]


@st.composite
def diagram_chain(draw, kind: str, length: int, top: int = 4):
    sizes = [draw(st.integers(0, top)) for _ in range(length + 1)]
    return [draw(st.sampled_from(enumerate_diagrams(kind, sizes[i], sizes[i + 1]))) for i in range(length)]


# -- composition ---------------------------------------------------------------


def test_rook_example():
    f = RectDiagram(3, 3, ((2, 1), (3, 3)))
    g = RectDiagram(3, 3, ((1, 2),))
    assert compose(g, f) == RectDiagram(3, 3, ((1, 1),))
    assert (f @ g) == compose(g, f)


def test_identity_is_neutral():
    for d in all_diagrams("ann", 3):
        assert compose(identity(d.m, "ann"), d) == d
        assert compose(d, identity(d.n, "ann")) == d


def test_rotation_has_order_n():
    rho = psi("t @5")
    power = identity(5, "ann")
    for _ in range(4):
        power = compose(power, rho)
    assert compose(rho, power) == identity(5, "ann")
    assert power != identity(5, "ann")


def test_no_through_strings_gives_empty_matching():
    for m in range(4):
        for n in range(4):
            for f in enumerate_diagrams("ann", m, n, 0):
                g = compose(f, adjoint(f))
                assert g.m == m and g.n == m and g.t == 0


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(["rect", "ann"]).flatmap(lambda kind: diagram_chain(kind, 2)))
def test_composition_matches_tensor_semantics(chain):
    f, g = chain
    assert tensor_semantics(compose(f, g)) == semantic_compose(tensor_semantics(f), tensor_semantics(g))


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(["rect", "ann"]).flatmap(lambda kind: diagram_chain(kind, 3)))
def test_associativity(chain):
    f, g, h = chain
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_rect_composition_is_partial_function_composition():
    for f in enumerate_diagrams("rect", 3, 3):
        for g in enumerate_diagrams("rect", 3, 2):
            want = {a: dict(g.through)[b] for a, b in f.through if b in dict(g.through)}
            assert dict(compose(f, g).through) == want


# -- tensor and adjoint --------------------------------------------------------


def test_tensor_examples():
    one = identity(1, "rect")
    assert tensor_rect(one, one) == identity(2, "rect")
    cap = RectDiagram(1, 0, ())
    cup = RectDiagram(0, 1, ())
    both = tensor_rect(cap, cup)
    assert both == RectDiagram(1, 1, ())
    assert both.caps == (1,) and both.cups == (1,)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_interchange_law(data):
    a, b = data.draw(diagram_chain("rect", 2, top=2))
    c, d = data.draw(diagram_chain("rect", 2, top=2))
    assert compose(tensor_rect(a, c), tensor_rect(b, d)) == tensor_rect(compose(a, b), compose(c, d))


def test_adjoint_examples():
    for n in range(4):
        assert adjoint(identity(n, "ann")) == identity(n, "ann")
    for n in range(4):
        for i in range(1, n + 2):
            assert adjoint(psi(f"a{i} @{n}")) == psi(f"a*{i} @{n + 1}")
    for d in enumerate_diagrams("ann", 3, 4):
        assert adjoint(adjoint(d)) == d


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["rect", "ann"]).flatmap(lambda kind: diagram_chain(kind, 2)))
def test_adjoint_reverses_composition(chain):
    f, g = chain
    assert adjoint(compose(f, g)) == compose(adjoint(g), adjoint(f))


# -- decorated calculus --------------------------------------------------------


def test_single_dotted_strand():
    dotted = Decorated(identity(1, "rect"), frozenset({1}))
    want = LinComb.basis(identity(1, "rect")) - LinComb.basis(RectDiagram(1, 1, ()))
    assert expand_decorated(dotted) == want


def test_no_dots_expands_to_base():
    d = RectDiagram(2, 3, ((1, 2),))
    assert expand_decorated(Decorated(d, frozenset())) == LinComb.basis(d)


def test_dotted_identity_squares_to_itself():
    dot2 = expand_decorated(Decorated(identity(2, "rect"), frozenset({1, 2})))
    assert len(dot2) == 4
    assert dot2 @ dot2 == dot2


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_decorated_composition_agrees_with_expansion(data):
    f, g = data.draw(diagram_chain("rect", 2, top=3))
    fd = Decorated(f, frozenset(data.draw(st.sets(st.sampled_from(f.domain))) if f.domain else ()))
    gd = Decorated(g, frozenset(data.draw(st.sets(st.sampled_from(g.domain))) if g.domain else ()))
    direct = compose_decorated(fd, gd)
    expanded = expand_decorated(gd) @ expand_decorated(fd)
    assert (LinComb() if direct is None else expand_decorated(direct)) == expanded


# -- enumeration and counting ----------------------------------------------------


def test_enumeration_examples():
    assert len(enumerate_diagrams("ann", 2, 2, 1)) == 4
    assert len(enumerate_diagrams("rect", 2, 2)) == 6
    assert len(enumerate_diagrams("ann", 3, 3)) == 31
    assert count_formula(2, 2, 1) == 4
    assert count_formula(0, 7) == 1


@pytest.mark.parametrize("kind", ["rect", "ann"])
def test_enumeration_matches_brute_force(kind):
    test = is_monotone if kind == "rect" else is_cyclically_monotone
    for m in range(5):
        for n in range(5):
            want = {p for p in partial_maps(m, n) if test(p)}
            got = {tuple(sorted(d.through)) for d in enumerate_diagrams(kind, m, n)}
            assert got == want, (m, n)
            assert len(enumerate_diagrams(kind, m, n)) == len(want)


def test_count_formula_closed_forms():
    for m in range(1, 7):
        for n in range(m, 7):
            for k in range(1, m + 1):
                assert count_formula(m, n, k) == m * comb(n, k) * comb(m - 1, k - 1)
    for n in range(7):
        assert count_formula(n, n, kind="rect") == comb(2 * n, n)


def test_enumeration_order_is_deterministic():
    a = enumerate_diagrams("ann", 3, 3)
    assert a == enumerate_diagrams("ann", 3, 3)
    assert [d.t for d in a] == sorted(d.t for d in a)


def test_json_round_trip():
    for d in all_diagrams("ann", 3) + all_diagrams("rect", 3):
        assert diagram_from_json(d.to_json()) == d
    dec = Decorated(RectDiagram(3, 3, ((1, 2), (2, 3))), frozenset({1}))
    assert diagram_from_json(dec.to_json()) == dec


def test_invalid_diagrams_rejected():
    with pytest.raises(ValueError):
        RectDiagram(2, 2, ((1, 2), (2, 1)))
    with pytest.raises(ValueError):
        AnnDiagram(3, 3, ((1, 2), (2, 1), (3, 3)))
    with pytest.raises(ValueError):
        compose(identity(2, "rect"), identity(3, "rect"))
