"""Finite-dimensional modules over the rectangular and annular categories.

A :class:`SequenceModule` stores, for levels m = 0..m_max, a Gram matrix and
the matrices of every creation (m -> m+1), annihilation (m -> m-1) and, for
annular modules, rotation (m -> m).  Inner products are conjugate-linear in
the first slot: <u, v> = u^H G v.

The irreducible module of weight k (and rotation eigenvalue w = z_k^r in the
annular case) has basis a_I g over increasing I of size m - k, where g is a
unit lowest-weight vector.  Its matrices are obtained by normalising the word
g a_I: a surviving annihilator kills g and t^s acts by w^s.

:func:`decompose` reads multiplicities off the uncappable vectors: at weight w
the joint kernel of the annihilators is the orthogonal complement of what
lower weights generate, and in the annular case it further splits into
rotation eigenspaces.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, lcm
from typing import Sequence

from .scalar import Matrix, Scalar, zeta
from .word import ANNIHILATE, CREATE, ROTATE, Letter, StandardWord, Word, normalize

__all__ = [
    "IrrModuleSpec",
    "ModuleRelationError",
    "SequenceModule",
    "change_basis",
    "decompose",
    "direct_sum",
    "extend_morphism",
    "irr_matrices",
    "lowest_weight_space",
]


class ModuleRelationError(ValueError):
    """A defining identity fails in a supplied module."""


@dataclass(frozen=True)
class IrrModuleSpec:
    kind: str
    k: int
    r: int = 0
    m_max: int | None = None

    def __post_init__(self):
        if self.kind not in ("rect", "ann"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.k < 0:
            raise ValueError("weight must be non-negative")
        if self.kind == "rect" and self.r != 0:
            raise ValueError("rectangular modules have no rotation index")
        if self.kind == "ann" and not 0 <= self.r < max(self.k, 1):
            raise ValueError("rotation index out of range")

    @property
    def order(self) -> int:
        return self.k if self.kind == "ann" and self.k >= 2 else 1

    def label(self) -> str:
        return f"V^{self.k}" if self.kind == "rect" else f"V^({self.k},{self.r})"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "k": self.k}
        if self.kind == "ann":
            out["r"] = self.r
        return out


@dataclass
class SequenceModule:
    kind: str
    m_max: int
    dims: list[int]
    gram: list[Matrix]
    create: dict[tuple[int, int], Matrix] = field(default_factory=dict)
    annihilate: dict[tuple[int, int], Matrix] = field(default_factory=dict)
    rotate: dict[int, Matrix] = field(default_factory=dict)

    @property
    def order(self) -> int:
        o = 1
        for mats in (self.gram, self.create.values(), self.annihilate.values(), self.rotate.values()):
            for mat in mats:
                o = lcm(o, mat.order())
        return o

    def lift(self, order: int) -> "SequenceModule":
        return SequenceModule(
            self.kind,
            self.m_max,
            list(self.dims),
            [g.lift(order) for g in self.gram],
            {key: a.lift(order) for key, a in self.create.items()},
            {key: a.lift(order) for key, a in self.annihilate.items()},
            {key: a.lift(order) for key, a in self.rotate.items()},
        )

    def letter_matrix(self, letter: Letter, level: int) -> Matrix:
        if letter.kind == CREATE:
            return self.create[(level, letter.index)]
        if letter.kind == ANNIHILATE:
            return self.annihilate[(level, letter.index)]
        mat = Matrix.identity(self.dims[level])
        if level >= 2 and self.kind == "ann":
            for _ in range(letter.index % level):
                mat = self.rotate[level] @ mat
        return mat

    def word_matrix(self, word: Word) -> Matrix:
        mat = Matrix.identity(self.dims[word.source])
        for letter, level in zip(reversed(word.letters), reversed(word.levels())):
            mat = self.letter_matrix(letter, level) @ mat
        return mat

    def check_relations(self) -> list[str]:
        """Every failing defining identity, described in one line each."""
        fails: list[str] = []
        top = self.m_max
        cr, an = self.create, self.annihilate
        for m in range(top + 1):
            g = self.gram[m]
            if g.shape != (self.dims[m], self.dims[m]) or g.H != g:
                fails.append(f"Gram matrix at level {m} is not Hermitian of size {self.dims[m]}")
        for m in range(top):
            for i in range(1, m + 2):
                a, s = cr[(m, i)], an[(m + 1, i)]
                if a.H @ self.gram[m + 1] != self.gram[m] @ s:
                    fails.append(f"adjointness of a{i} at level {m}")
        for m in range(top - 1):
            for j in range(2, m + 3):
                for i in range(1, j):
                    if cr[(m + 1, i)] @ cr[(m, j - 1)] != cr[(m + 1, j)] @ cr[(m, i)]:
                        fails.append(f"a{i} a{j - 1} = a{j} a{i} at level {m}")
        for m in range(2, top + 1):
            for j in range(2, m + 1):
                for i in range(1, j):
                    if an[(m - 1, i)] @ an[(m, j)] != an[(m - 1, j - 1)] @ an[(m, i)]:
                        fails.append(f"a*{i} a*{j} = a*{j - 1} a*{i} at level {m}")
        for m in range(top):
            for j in range(1, m + 2):
                for i in range(1, m + 2):
                    lhs = an[(m + 1, i)] @ cr[(m, j)]
                    if i == j:
                        rhs = Matrix.identity(self.dims[m])
                    elif i < j:
                        rhs = cr[(m - 1, j - 1)] @ an[(m, i)]
                    else:
                        rhs = cr[(m - 1, j)] @ an[(m, i - 1)]
                    if lhs != rhs:
                        fails.append(f"a*{i} a{j} relation at level {m}")
        if self.kind == "ann":
            for m in range(top + 1):
                t = self.rotate.get(m, Matrix.identity(self.dims[m]))
                if m <= 1 and t != Matrix.identity(self.dims[m]):
                    fails.append(f"rotation at level {m} is not the identity")
                power = Matrix.identity(self.dims[m])
                for _ in range(max(m, 1)):
                    power = t @ power
                if power != Matrix.identity(self.dims[m]):
                    fails.append(f"t^{m} = id at level {m}")
                if t.H @ self.gram[m] @ t != self.gram[m]:
                    fails.append(f"rotation is not unitary at level {m}")
            for m in range(top):
                t_lo, t_hi = self._rot(m), self._rot(m + 1)
                for j in range(1, m + 1):
                    if t_hi @ cr[(m, j)] != cr[(m, j + 1)] @ t_lo:
                        fails.append(f"t a{j} = a{j + 1} t at level {m}")
                if t_hi @ cr[(m, m + 1)] != cr[(m, 1)]:
                    fails.append(f"t a{m + 1} = a1 at level {m}")
            for m in range(1, top + 1):
                t_lo, t_hi = self._rot(m - 1), self._rot(m)
                for i in range(2, m + 1):
                    if an[(m, i)] @ t_hi != t_lo @ an[(m, i - 1)]:
                        fails.append(f"a*{i} t = t a*{i - 1} at level {m}")
                if an[(m, 1)] @ t_hi != an[(m, m)]:
                    fails.append(f"a*1 t = a*{m} at level {m}")
        return fails

    def _rot(self, m: int) -> Matrix:
        return self.rotate.get(m, Matrix.identity(self.dims[m]))

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "m_max": self.m_max,
            "dims": list(self.dims),
            "gram": [g.to_json() for g in self.gram],
            "create": {f"{m},{i}": a.to_json() for (m, i), a in sorted(self.create.items())},
            "annihilate": {f"{m},{i}": a.to_json() for (m, i), a in sorted(self.annihilate.items())},
            "rotate": {str(m): a.to_json() for m, a in sorted(self.rotate.items())},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SequenceModule":
        def keyed(d):
            return {tuple(int(x) for x in k.split(",")): Matrix.from_json(v) for k, v in d.items()}

        return cls(
            obj["kind"],
            int(obj["m_max"]),
            [int(x) for x in obj["dims"]],
            [Matrix.from_json(g) for g in obj["gram"]],
            keyed(obj.get("create", {})),
            keyed(obj.get("annihilate", {})),
            {int(k): Matrix.from_json(v) for k, v in obj.get("rotate", {}).items()},
        )


# -- irreducible modules ------------------------------------------------------


def _cup_sets(m: int, k: int) -> list[tuple[int, ...]]:
    return list(combinations(range(1, m + 1), m - k)) if m >= k else []


def irr_matrices(spec: IrrModuleSpec, m_max: int | None = None) -> SequenceModule:
    """Orthonormal-basis matrices of the irreducible module described by spec."""
    if m_max is None:
        m_max = spec.m_max if spec.m_max is not None else spec.k
    k, kind = spec.k, spec.kind
    order = spec.order

    def eigen(power: int) -> Scalar:
        return zeta(order, spec.r * power) if kind == "ann" else 1

    bases = [_cup_sets(m, k) for m in range(m_max + 1)]
    index = [{I: pos for pos, I in enumerate(b)} for b in bases]
    dims = [len(b) for b in bases]

    def act(letter: Letter, m: int) -> Matrix:
        tgt = letter.target(m)
        cols = []
        for I in bases[m]:
            std = normalize(Word(k, (letter,) + StandardWord(k, I).letters()))
            if std.J:
                cols.append({})
            else:
                cols.append({index[tgt][std.I]: eigen(std.r)})
        return Matrix.from_columns(dims[tgt], cols)

    gram = []
    for m in range(m_max + 1):
        rows = []
        for a in bases[m]:
            wa = StandardWord(k, a).as_word()
            row = {}
            for pos, b in enumerate(bases[m]):
                std = normalize(StandardWord(k, b).as_word().then(wa.adjoint()))
                if not std.J:
                    assert not std.I
                    row[pos] = eigen(std.r)
            rows.append(row)
        gram.append(Matrix(dims[m], dims[m], rows))

    create = {(m, i): act(Letter(CREATE, i), m) for m in range(m_max) for i in range(1, m + 2)}
    annihilate = {(m, i): act(Letter(ANNIHILATE, i), m) for m in range(1, m_max + 1) for i in range(1, m + 1)}
    rotate = {}
    if kind == "ann":
        rotate = {m: act(Letter(ROTATE, 1), m) for m in range(m_max + 1)}
    return SequenceModule(kind, m_max, dims, gram, create, annihilate, rotate)


# -- constructions ------------------------------------------------------------


def _block_diag(mats: Sequence[Matrix]) -> Matrix:
    rows: list[dict[int, Scalar]] = []
    ncols = sum(m.ncols for m in mats)
    off = 0
    for mat in mats:
        for r in mat.rows:
            rows.append({j + off: v for j, v in r.items()})
        off += mat.ncols
    return Matrix(len(rows), ncols, rows)


def direct_sum(mods: Sequence[SequenceModule]) -> SequenceModule:
    if not mods:
        raise ValueError("empty direct sum")
    kind, top = mods[0].kind, mods[0].m_max
    if any(m.kind != kind or m.m_max != top for m in mods):
        raise ValueError("summands must share kind and level range")
    order = lcm(*(m.order for m in mods))
    mods = [m.lift(order) for m in mods]
    return SequenceModule(
        kind,
        top,
        [sum(m.dims[l] for m in mods) for l in range(top + 1)],
        [_block_diag([m.gram[l] for m in mods]) for l in range(top + 1)],
        {key: _block_diag([m.create[key] for m in mods]) for key in mods[0].create},
        {key: _block_diag([m.annihilate[key] for m in mods]) for key in mods[0].annihilate},
        {key: _block_diag([m.rotate[key] for m in mods]) for key in mods[0].rotate},
    )


def change_basis(mod: SequenceModule, basis: Sequence[Matrix]) -> SequenceModule:
    """Same module in new coordinates: old vector = basis[m] @ new vector."""
    inv = [b.inverse() for b in basis]
    return SequenceModule(
        mod.kind,
        mod.m_max,
        list(mod.dims),
        [b.H @ g @ b for b, g in zip(basis, mod.gram)],
        {(m, i): inv[m + 1] @ a @ basis[m] for (m, i), a in mod.create.items()},
        {(m, i): inv[m - 1] @ a @ basis[m] for (m, i), a in mod.annihilate.items()},
        {m: inv[m] @ a @ basis[m] for m, a in mod.rotate.items()},
    )


def random_basis_change(dim: int, rng: random.Random, shears: int = 3) -> Matrix:
    """Sparse random invertible rational matrix: a permutation with a few shears."""
    perm = list(range(dim))
    rng.shuffle(perm)
    mat = Matrix(dim, dim, [{perm[i]: rng.choice((1, -1, 2))} for i in range(dim)])
    for _ in range(shears if dim > 1 else 0):
        a, b = rng.sample(range(dim), 2)
        shear = Matrix.identity(dim)
        shear.rows[a][b] = rng.choice((1, -1, 2, -2))
        mat = mat @ shear
    return mat


def quotient_radical(mod: SequenceModule) -> SequenceModule:
    """Quotient every level by the radical of its Gram form."""
    keep, proj, emb = [], [], []
    for m in range(mod.m_max + 1):
        g = mod.gram[m]
        _, used = g.T.rref()
        used = sorted(used)
        sub = g.block(used, used)
        if sub.rank() != len(used):
            raise ModuleRelationError(f"Gram form at level {m} is not positive semidefinite")
        keep.append(used)
        proj.append(sub.inverse() @ g.block(used, list(range(g.ncols))))
        emb.append(Matrix(g.nrows, len(used), [{used.index(i): 1} if i in used else {} for i in range(g.nrows)]))
    if all(len(u) == d for u, d in zip(keep, mod.dims)):
        return mod
    return SequenceModule(
        mod.kind,
        mod.m_max,
        [len(u) for u in keep],
        [mod.gram[m].block(keep[m], keep[m]) for m in range(mod.m_max + 1)],
        {(m, i): proj[m + 1] @ a @ emb[m] for (m, i), a in mod.create.items()},
        {(m, i): proj[m - 1] @ a @ emb[m] for (m, i), a in mod.annihilate.items()},
        {m: proj[m] @ a @ emb[m] for m, a in mod.rotate.items()},
    )


# -- decomposition ------------------------------------------------------------


def _uncappable(mod: SequenceModule, k: int) -> Matrix:
    """Columns spanning the joint kernel of all annihilators at level k."""
    dim = mod.dims[k]
    if k == 0 or dim == 0:
        return Matrix.identity(dim)
    stacked = mod.annihilate[(k, 1)]
    for i in range(2, k + 1):
        stacked = stacked.vstack(mod.annihilate[(k, i)])
    return stacked.kernel()


def lowest_weight_space(mod: SequenceModule, k: int) -> Matrix | dict[int, Matrix]:
    """Uncappable vectors at level k; annular modules split them by rotation eigenvalue z_k^r."""
    base = _uncappable(mod, k)
    if mod.kind == "rect":
        return base
    if k <= 1 or base.ncols == 0:
        return {r: (base if r == 0 else Matrix(mod.dims[k], 0)) for r in range(max(k, 1))}
    order = lcm(mod.order, k)
    rot = mod.rotate[k].lift(order)
    base = base.lift(order)
    restricted = base.solve(rot @ base)
    out = {}
    for r in range(k):
        shifted = restricted - Matrix.identity(base.ncols).scale(zeta(k, r))
        out[r] = base @ shifted.kernel()
    return out


def _generate(mod: SequenceModule, vectors: Matrix, k: int) -> dict[int, Matrix]:
    """Column bases of the submodule levels generated from level-k vectors by creations."""
    spans = {k: vectors}
    for m in range(k, mod.m_max):
        cur = spans[m]
        imgs = None
        for i in range(1, m + 2):
            img = mod.create[(m, i)] @ cur
            imgs = img if imgs is None else imgs.hstack(img)
        spans[m + 1] = imgs.column_basis() if imgs is not None else Matrix(mod.dims[m + 1], 0)
    return spans


def decompose(mod: SequenceModule, verify: bool = True) -> list[tuple[IrrModuleSpec, int]]:
    """Multiplicities of the irreducible summands of a module.

    With ``verify`` set, each isotypic component is also generated explicitly
    from its uncappable vectors, its level dimensions are compared with
    mult * C(m, k), and all cross Gram blocks between different components
    are checked to vanish.
    """
    fails = mod.check_relations()
    if fails:
        raise ModuleRelationError(fails[0])
    mod = quotient_radical(mod)
    found: list[tuple[IrrModuleSpec, int, Matrix]] = []
    for k in range(mod.m_max + 1):
        space = lowest_weight_space(mod, k)
        if mod.kind == "rect":
            if space.ncols:
                found.append((IrrModuleSpec("rect", k, 0, mod.m_max), space.ncols, space))
        else:
            for r, vecs in sorted(space.items()):
                if vecs.ncols:
                    found.append((IrrModuleSpec("ann", k, r, mod.m_max), vecs.ncols, vecs))
    for m in range(mod.m_max + 1):
        total = sum(mult * comb(m, spec.k) for spec, mult, _ in found)
        if total != mod.dims[m]:
            raise ModuleRelationError(f"dimension mismatch at level {m}: {total} != {mod.dims[m]}")
    if verify:
        order = lcm(mod.order, *(v.order() for _, _, v in found)) if found else 1
        lifted = mod.lift(order)
        comps = []
        for spec, mult, vecs in found:
            spans = _generate(lifted, vecs.lift(order), spec.k)
            for m, span in spans.items():
                if span.ncols != mult * comb(m, spec.k):
                    raise ModuleRelationError(f"{spec.label()} generates the wrong dimension at level {m}")
            comps.append(spans)
        for a in range(len(comps)):
            for b in range(a + 1, len(comps)):
                for m in set(comps[a]) & set(comps[b]):
                    cross = comps[a][m].H @ lifted.gram[m] @ comps[b][m]
                    if not cross.is_zero():
                        raise ModuleRelationError(f"components {a} and {b} are not orthogonal at level {m}")
    return [(spec, mult) for spec, mult, _ in found]


# -- morphisms ----------------------------------------------------------------


def _create_chain(mod: SequenceModule, vec: Matrix, k: int, cups: Sequence[int]) -> Matrix:
    out = vec
    for step, i in enumerate(cups):
        out = mod.create[(k + step, i)] @ out
    return out


def extend_morphism(src: SequenceModule, dst: SequenceModule, k: int, generator: Matrix, image: Matrix) -> dict[int, Matrix]:
    """Level maps sending a_I generator to a_I image; src must be generated freely by generator."""
    maps = {}
    for m in range(src.m_max + 1):
        if m < k:
            maps[m] = Matrix(dst.dims[m], src.dims[m])
            continue
        sets = _cup_sets(m, k)
        xs = [_create_chain(src, generator, k, I) for I in sets]
        ys = [_create_chain(dst, image, k, I) for I in sets]
        x = Matrix.from_columns(src.dims[m], [c.column(0) for c in xs])
        y = Matrix.from_columns(dst.dims[m], [c.column(0) for c in ys])
        if x.nrows != x.ncols or x.rank() != x.ncols:
            raise ValueError(f"source is not freely generated at level {m}")
        maps[m] = y @ x.inverse()
    return maps


def is_intertwiner(src: SequenceModule, dst: SequenceModule, maps: dict[int, Matrix]) -> bool:
    for (m, i), a in src.create.items():
        if maps[m + 1] @ a != dst.create[(m, i)] @ maps[m]:
            return False
    for (m, i), a in src.annihilate.items():
        if maps[m - 1] @ a != dst.annihilate[(m, i)] @ maps[m]:
            return False
    for m, a in src.rotate.items():
        if maps[m] @ a != dst.rotate[m] @ maps[m]:
            return False
    return True


def is_isometry(src: SequenceModule, dst: SequenceModule, maps: dict[int, Matrix]) -> bool:
    return all(maps[m].H @ dst.gram[m] @ maps[m] == src.gram[m] for m in range(src.m_max + 1))


def self_intertwiner_dimension(mod: SequenceModule) -> int:
    """Dimension of the space of level-wise maps commuting with every generator."""
    offsets, total = [], 0
    for d in mod.dims:
        offsets.append(total)
        total += d * d
    eqs: list[dict[int, Scalar]] = []

    def add(a: Matrix, m_src: int, m_dst: int) -> None:
        # X_dst a - a X_src = 0, entries (p, q)
        dd, ds = mod.dims[m_dst], mod.dims[m_src]
        acols = a.columns()
        for p in range(dd):
            for q in range(ds):
                row: dict[int, Scalar] = {}
                for s, v in acols[q].items():
                    key = offsets[m_dst] + p * dd + s
                    row[key] = row.get(key, 0) + v
                for s, v in a.rows[p].items():
                    key = offsets[m_src] + s * ds + q
                    row[key] = row.get(key, 0) - v
                row = {x: y for x, y in row.items() if y}
                if row:
                    eqs.append(row)

    for (m, _), a in mod.create.items():
        add(a, m, m + 1)
    for (m, _), a in mod.annihilate.items():
        add(a, m, m - 1)
    for m, a in mod.rotate.items():
        add(a, m, m)
    from .scalar import vectors_rank

    return total - vectors_rank(eqs)
