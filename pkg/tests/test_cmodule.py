from __future__ import annotations

import random
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gicarkit.cmodule import (
    IrrModuleSpec,
    ModuleRelationError,
    SequenceModule,
    change_basis,
    decompose,
    direct_sum,
    extend_morphism,
    irr_matrices,
    is_intertwiner,
    is_isometry,
    lowest_weight_space,
    random_basis_change,
    self_intertwiner_dimension,
)
from gicarkit.scalar import Matrix
from gicarkit.tensorrep import ToyContext, necklace_count, toy_module


def specs(kind: str, k_max: int = 3):
    for k in range(k_max + 1):
        for r in range(max(k, 1)) if kind == "ann" else [0]:
            yield IrrModuleSpec(kind, k, r)


def test_spec_validation():
    with pytest.raises(ValueError):
        IrrModuleSpec("rect", 2, 1)
    with pytest.raises(ValueError):
        IrrModuleSpec("ann", 2, 2)
    assert IrrModuleSpec("ann", 3, 1).order == 3


def test_dimension_example():
    assert irr_matrices(IrrModuleSpec("ann", 2, 1), 4).dims[4] == 6


def test_weight_zero_module():
    mod = irr_matrices(IrrModuleSpec("rect", 0), 5)
    assert mod.dims == [1] * 6
    for (m, i), a in mod.annihilate.items():
        assert a == Matrix.from_lists([[1]])


@pytest.mark.parametrize("kind", ["rect", "ann"])
def test_irreducibles(kind):
    for spec in specs(kind):
        mod = irr_matrices(spec, 6)
        assert mod.dims == [comb(m, spec.k) for m in range(7)]
        assert all(mod.gram[m] == Matrix.identity(mod.dims[m]) for m in range(7))
        assert mod.check_relations() == []
        assert decompose(mod) == [(IrrModuleSpec(kind, spec.k, spec.r, 6), 1)]


def test_lowest_weight_space_of_irreducible():
    for spec in specs("ann"):
        space = lowest_weight_space(irr_matrices(spec, 4), spec.k)
        assert {r: v.ncols for r, v in space.items()} == {r: int(r == spec.r) for r in range(max(spec.k, 1))}
    space = lowest_weight_space(irr_matrices(IrrModuleSpec("rect", 2), 4), 2)
    assert space.ncols == 1


def test_toy_weight_one_space_has_dimension_d():
    for d in range(1, 4):
        space = lowest_weight_space(toy_module(ToyContext(d), 2, "ann"), 1)
        assert space[0].ncols == d


@pytest.mark.parametrize("d", [1, 2, 3])
def test_necklace_multiplicities(d):
    for k in range(1, 5):
        space = lowest_weight_space(toy_module(ToyContext(d), k, "ann"), k)
        assert {r: v.ncols for r, v in space.items()} == {r: necklace_count(k, r, d) for r in range(k)}


def test_toy_rect_binomial_decomposition():
    found = decompose(toy_module(ToyContext(1), 4, "rect"))
    assert [(s.k, m) for s, m in found] == [(k, 1) for k in range(5)]


def test_broken_module_is_rejected():
    mod = irr_matrices(IrrModuleSpec("rect", 1), 3)
    mod.create[(1, 1)] = mod.create[(1, 1)].scale(2)
    assert mod.check_relations()
    with pytest.raises(ModuleRelationError):
        decompose(mod)


def test_radical_is_quotiented():
    base = irr_matrices(IrrModuleSpec("ann", 2, 1), 4)
    double = direct_sum([base, base])
    # a Gram form with a null copy: [[G, G], [G, G]]
    gram = [Matrix.identity(d).hstack(Matrix.identity(d)).vstack(Matrix.identity(d).hstack(Matrix.identity(d))) for d in base.dims]
    degenerate = SequenceModule(double.kind, double.m_max, double.dims, gram, double.create, double.annihilate, double.rotate)
    assert degenerate.check_relations() == []
    assert [(s.k, s.r, m) for s, m in decompose(degenerate)] == [(2, 1, 1)]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["rect", "ann"]))
def test_decompose_inverts_direct_sum(seed, kind):
    rng = random.Random(seed)
    chosen = rng.sample(list(specs(kind)), rng.randint(1, 3))
    expected = {}
    mods = []
    for spec in chosen:
        mult = rng.randint(1, 3)
        expected[(spec.k, spec.r)] = mult
        mods += [irr_matrices(spec, 4)] * mult
    mod = direct_sum(mods)
    mod = change_basis(mod, [random_basis_change(d, rng) for d in mod.dims])
    assert mod.check_relations() == []
    assert {(s.k, s.r): m for s, m in decompose(mod)} == expected


def test_extend_morphism_gives_isometric_intertwiner():
    v = irr_matrices(IrrModuleSpec("ann", 2, 1), 4)
    w = irr_matrices(IrrModuleSpec("ann", 1, 0), 4)
    dst = direct_sum([w, v])
    generator = Matrix.from_lists([[1]])
    image = Matrix.from_columns(dst.dims[2], [{w.dims[2]: 1}])
    maps = extend_morphism(v, dst, 2, generator, image)
    assert is_intertwiner(v, dst, maps)
    assert is_isometry(v, dst, maps)
    doubled = extend_morphism(v, dst, 2, generator, image.scale(2))
    assert is_intertwiner(v, dst, doubled) and not is_isometry(v, dst, doubled)


def test_self_intertwiners():
    v = irr_matrices(IrrModuleSpec("ann", 3, 1), 4)
    w = irr_matrices(IrrModuleSpec("ann", 3, 2), 4)
    assert self_intertwiner_dimension(v) == 1
    assert self_intertwiner_dimension(direct_sum([v, v])) == 4
    assert self_intertwiner_dimension(direct_sum([v, w])) == 2


def test_json_round_trip():
    mod = irr_matrices(IrrModuleSpec("ann", 3, 2), 4)
    again = SequenceModule.from_json(mod.to_json())
    assert again.dims == mod.dims
    assert all(again.create[key] == a for key, a in mod.create.items())
    assert all(again.rotate[m] == a for m, a in mod.rotate.items())
    assert decompose(again) == decompose(mod)
