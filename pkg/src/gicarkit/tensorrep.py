"""Tensor-power representation over a one-dimensional base algebra.

H has orthonormal basis e_0 (the marked vector) and e_1..e_d spanning its
orthogonal complement K, with e_1 the fixed unit vector of K.  Level m is
H^(x)m with the product basis indexed by tuples in {0..d}^m, ordered
lexicographically with the first slot most significant, so tensor products of
operators are Kronecker products.

``a_i`` inserts e_0 into slot i, ``a_i*`` pairs slot i with e_0 and removes
it, and the rotation moves the factor in slot j to slot j+1 (the last factor
wraps to the front).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, lcm
from typing import Sequence, Union

from .algebra import ProjectionPattern, minimal_projection
from .cmodule import SequenceModule, decompose, lowest_weight_space
from .diagram import AnnDiagram, RectDiagram, count_formula
from .lincomb import LinComb
from .scalar import Matrix, Scalar, simplify, vectors_rank, zeta
from .word import (
    ANNIHILATE,
    CREATE,
    ROTATE,
    Letter,
    StandardWord,
    Word,
    enumerate_standard,
    parse_word,
    psi_inverse,
    tensor_words,
)

__all__ = [
    "ToyContext",
    "annular_degeneracy_report",
    "necklace_count",
    "odd_jones",
    "represent",
    "separating_test",
    "toy_annihilate",
    "toy_create",
    "toy_module",
]


@dataclass(frozen=True)
class ToyContext:
    d: int

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("d must be non-negative")

    def dim(self, m: int) -> int:
        return (self.d + 1) ** m

    def basis(self, m: int) -> list[tuple[int, ...]]:
        return list(itertools.product(range(self.d + 1), repeat=m))

    def index(self, t: Sequence[int]) -> int:
        out = 0
        for x in t:
            out = out * (self.d + 1) + x
        return out

    def vector(self, slots: Sequence[int]) -> Matrix:
        """Column for a product basis vector, e.g. (1, 0) = e_1 (x) e_0."""
        return Matrix.from_columns(self.dim(len(slots)), [{self.index(slots): 1}])

    def perp(self) -> int:
        if self.d < 1:
            raise ValueError("a vector orthogonal to e_0 needs d >= 1")
        return 1


@lru_cache(maxsize=None)
def create_matrix(ctx: ToyContext, i: int, m: int) -> Matrix:
    if not 1 <= i <= m + 1:
        raise IndexError(f"a{i} is not defined on level {m}")
    cols = [{ctx.index(t[: i - 1] + (0,) + t[i - 1 :]): 1} for t in ctx.basis(m)]
    return Matrix.from_columns(ctx.dim(m + 1), cols)


@lru_cache(maxsize=None)
def annihilate_matrix(ctx: ToyContext, i: int, m: int) -> Matrix:
    if not 1 <= i <= m:
        raise IndexError(f"a*{i} is not defined on level {m}")
    cols = [{ctx.index(t[: i - 1] + t[i:]): 1} if t[i - 1] == 0 else {} for t in ctx.basis(m)]
    return Matrix.from_columns(ctx.dim(m - 1), cols)


@lru_cache(maxsize=None)
def rotate_matrix(ctx: ToyContext, m: int) -> Matrix:
    if m <= 1:
        return Matrix.identity(ctx.dim(m))
    cols = [{ctx.index((t[-1],) + t[:-1]): 1} for t in ctx.basis(m)]
    return Matrix.from_columns(ctx.dim(m), cols)


def toy_create(ctx: ToyContext, i: int, v: Matrix) -> Matrix:
    m = _level(ctx, v)
    return create_matrix(ctx, i, m) @ v


def toy_annihilate(ctx: ToyContext, i: int, v: Matrix) -> Matrix:
    m = _level(ctx, v)
    return annihilate_matrix(ctx, i, m) @ v


def _level(ctx: ToyContext, v: Matrix) -> int:
    m, size = 0, 1
    while size < v.nrows:
        size *= ctx.d + 1
        m += 1
    if size != v.nrows:
        raise ValueError("vector length is not a power of d+1")
    if ctx.d == 0:
        raise ValueError("level is ambiguous when d = 0; use the matrix helpers")
    return m


def odd_jones(ctx: ToyContext, i: int, m: int) -> Matrix:
    """a_i a_i* on level m."""
    return create_matrix(ctx, i, m - 1) @ annihilate_matrix(ctx, i, m)


def letter_matrix(ctx: ToyContext, letter: Letter, level: int) -> Matrix:
    if letter.kind == CREATE:
        return create_matrix(ctx, letter.index, level)
    if letter.kind == ANNIHILATE:
        return annihilate_matrix(ctx, letter.index, level)
    out = Matrix.identity(ctx.dim(level))
    for _ in range(letter.index % level if level > 1 else 0):
        out = rotate_matrix(ctx, level) @ out
    return out


def diagram_matrix(ctx: ToyContext, d: Union[RectDiagram, AnnDiagram]) -> Matrix:
    """Direct semantics: caps pair with e_0, cups insert e_0, through strings move factors."""
    caps = d.caps
    cols = []
    for t in ctx.basis(d.m):
        if any(t[c - 1] != 0 for c in caps):
            cols.append({})
            continue
        out = [0] * d.n
        for a, b in d.through:
            out[b - 1] = t[a - 1]
        cols.append({ctx.index(out): 1})
    return Matrix.from_columns(ctx.dim(d.n), cols)


def represent(c, ctx: ToyContext) -> Matrix:
    """Matrix of a word, standard word, diagram, or linear combination of those."""
    if isinstance(c, str):
        c = parse_word(c)
    if isinstance(c, StandardWord):
        c = c.as_word()
    if isinstance(c, Word):
        out = Matrix.identity(ctx.dim(c.source))
        for letter, level in zip(reversed(c.letters), reversed(c.levels())):
            out = letter_matrix(ctx, letter, level) @ out
        return out
    if isinstance(c, (RectDiagram, AnnDiagram)):
        return diagram_matrix(ctx, c)
    if isinstance(c, LinComb):
        out = None
        for key, coeff in c.items():
            term = represent(key, ctx).scale(coeff)
            out = term if out is None else out + term
        if out is None:
            raise ValueError("cannot infer the shape of an empty combination")
        return out
    raise TypeError(f"cannot represent {type(c).__name__}")


def represent_via_words(c: LinComb, ctx: ToyContext) -> Matrix:
    """Represent a diagram combination by first turning each diagram into its standard word."""
    return represent(c.map(psi_inverse), ctx)


def projection_trace(ctx: ToyContext, pattern: ProjectionPattern | str) -> Scalar:
    return simplify(represent_via_words(minimal_projection(pattern), ctx).trace())


def toy_module(ctx: ToyContext, m_max: int, kind: str = "ann") -> SequenceModule:
    dims = [ctx.dim(m) for m in range(m_max + 1)]
    return SequenceModule(
        kind,
        m_max,
        dims,
        [Matrix.identity(x) for x in dims],
        {(m, i): create_matrix(ctx, i, m) for m in range(m_max) for i in range(1, m + 2)},
        {(m, i): annihilate_matrix(ctx, i, m) for m in range(1, m_max + 1) for i in range(1, m + 1)},
        {m: rotate_matrix(ctx, m) for m in range(m_max + 1)} if kind == "ann" else {},
    )


# -- separating vectors and linear independence -------------------------------


def _inner(u: Matrix, v: Matrix) -> Scalar:
    """<u, v> for real column vectors (the toy matrices are rational)."""
    return simplify((u.H @ v)[0, 0]) if u.nrows else 0


def separating_vectors(x: StandardWord, ctx: ToyContext) -> tuple[Matrix, Matrix]:
    perp = ctx.perp()
    source = ctx.vector([0 if j in set(x.J) else perp for j in range(1, x.m + 1)])
    target = ctx.vector([0 if i in set(x.I) else perp for i in range(1, x.n + 1)])
    return source, target


def separating_test(x: StandardWord, ctx: ToyContext) -> dict:
    """Value <x source, target> for the separating vectors and the vanishing check on longer words."""
    if ctx.d < 1:
        raise ValueError("separating vectors need d >= 1")
    if not x.is_rect():
        raise ValueError("separating vectors are defined for rectangular words")
    source, target = separating_vectors(x, ctx)
    value = _inner(represent(x, ctx) @ source, target)
    length = len(x.I) + len(x.J)
    vanish = True
    for y in enumerate_standard(x.m, x.n, rect=True):
        if y != x and len(y.I) + len(y.J) >= length:
            if _inner(represent(y, ctx) @ source, target) != 0:
                vanish = False
    return {"word": str(x), "source": source, "target": target, "value": value, "vanishing": vanish}


def evaluation_rank(m: int, n: int, ctx: ToyContext) -> tuple[int, int]:
    """(rank, size) of the matrix <y xi_x, eta_x> over all rectangular standard words."""
    words = enumerate_standard(m, n, rect=True)
    mats = [represent(y, ctx) for y in words]
    vecs = [separating_vectors(x, ctx) for x in words]
    rows = []
    for mat in mats:
        row = {}
        for col, (source, target) in enumerate(vecs):
            val = _inner(mat @ source, target)
            if val:
                row[col] = val
        rows.append(row)
    return vectors_rank(rows), len(words)


def faithfulness_rank(m: int, n: int, ctx: ToyContext) -> tuple[int, int]:
    """(rank, size) of the span of represented rectangular standard words."""
    words = enumerate_standard(m, n, rect=True)
    return vectors_rank(represent(w, ctx).flatten() for w in words), len(words)


# -- annular multiplicities ----------------------------------------------------


def necklace_count(k: int, r: int, d: int) -> int:
    """(1/k) sum_j w^-j d^gcd(j, k) with w = z_k^r."""
    if k == 0:
        return 1
    total = sum((zeta(k, -r * j) * d ** gcd(j, k) for j in range(k)), 0)
    val = simplify(total * Fraction(1, k))
    if not isinstance(val, int):
        raise ArithmeticError(f"necklace count is not an integer: {val}")
    return val


def uncappable_multiplicities(ctx: ToyContext, k: int) -> dict[int, int]:
    """Rotation-eigenvalue multiplicities of the uncappable vectors at level k."""
    mod = toy_module(ctx, k, "ann")
    space = lowest_weight_space(mod, k)
    return {r: vecs.ncols for r, vecs in space.items()}


def annular_degeneracy_report(ctx: ToyContext, m_max: int, kind: str = "ann") -> dict:
    """Multiplicity table of the toy module, alongside the d = 0 degenerate case."""

    def table(c: ToyContext) -> list[dict]:
        found = decompose(toy_module(c, m_max, kind))
        return [dict(spec.to_json(), multiplicity=mult) for spec, mult in found]

    rows = table(ctx)
    degenerate = table(ToyContext(0))
    expected = []
    if kind == "ann":
        for k in range(m_max + 1):
            for r in range(max(k, 1)):
                expected.append({"kind": "ann", "k": k, "r": r, "multiplicity": necklace_count(k, r, ctx.d)})
    else:
        expected = [{"kind": "rect", "k": k, "multiplicity": ctx.d**k} for k in range(m_max + 1)]
    expected = [e for e in expected if e["multiplicity"]]
    return {
        "d": ctx.d,
        "m_max": m_max,
        "kind": kind,
        "multiplicities": rows,
        "expected": expected,
        "degenerate_d0": degenerate,
        "ok": rows == expected and degenerate == [dict({"kind": kind, "k": 0}, **({"r": 0} if kind == "ann" else {}), multiplicity=1)],
    }


# -- the identity suite --------------------------------------------------------


def toy_suite(ds: Sequence[int] = (1, 2, 3), m_max: int = 4, trace_max: int = 4) -> list[tuple[str, bool, str]]:
    """Every identity of the toy realization as (name, passed, detail)."""
    out: list[tuple[str, bool, str]] = []

    def record(name: str, ok: bool, detail: str = "") -> None:
        out.append((name, bool(ok), detail))

    for d in ds:
        ctx = ToyContext(d)
        small = min(m_max, 4 if d <= 2 else 3)
        rect_fails = toy_module(ctx, small, "rect").check_relations()
        record(f"creation/annihilation relations d={d} m<={small}", not rect_fails, "; ".join(rect_fails[:2]))
        ann_fails = toy_module(ctx, m_max, "ann").check_relations()
        record(f"annular relations d={d} m<={m_max}", not ann_fails, "; ".join(ann_fails[:2]))

        ok = True
        for m in range(1, m_max + 1):
            for i in range(1, m + 1):
                e = odd_jones(ctx, i, m)
                proj = Matrix.identity(ctx.dim(i - 1)).kron(ctx.vector([0]) @ ctx.vector([0]).H).kron(
                    Matrix.identity(ctx.dim(m - i))
                )
                ok &= e == proj and e @ e == e and e.H == e
        record(f"odd Jones projections d={d}", ok)

        ok = True
        for m in range(2, min(m_max, 3) + 1):
            for i in range(1, m + 1):
                for j in range(1, m + 1):
                    if i == j:
                        continue
                    x = create_matrix(ctx, i, m - 1) @ annihilate_matrix(ctx, j, m)
                    ok &= x @ x.H == odd_jones(ctx, i, m) and x.H @ x == odd_jones(ctx, j, m)
                    ok &= odd_jones(ctx, i, m) != odd_jones(ctx, j, m)
        record(f"odd Jones equivalences d={d}", ok)

        ok, detail = True, []
        for n in range(trace_max + 1):
            for D in itertools.product("bd", repeat=n):
                pat = "".join(D)
                via_words = represent_via_words(minimal_projection(pat), ctx)
                direct = represent(minimal_projection(pat), ctx)
                tr = simplify(via_words.trace())
                if tr != d ** pat.count("d") or via_words != direct:
                    ok = False
                    detail.append(f"{pat}:{tr}")
        record(f"minimal projection traces d={d}", ok, ",".join(detail[:3]))

        ok = True
        for m in range(0, 5):
            for n in range(0, 5):
                for x in enumerate_standard(m, n, rect=True):
                    res = separating_test(x, ctx)
                    ok &= res["value"] == 1 and res["vanishing"]
        record(f"separating vectors d={d}", ok)

        ok = True
        for m in range(0, 5):
            for n in range(0, 5):
                rank, size = evaluation_rank(m, n, ctx)
                ok &= rank == size
        record(f"standard words independent d={d}", ok)

        ok = True
        for w1, w2 in _tensor_samples():
            lhs = represent(tensor_words(w1, w2), ctx)
            rhs = represent(w1, ctx).kron(represent(w2, ctx))
            ok &= lhs == rhs
        record(f"tensor functor d={d}", ok)
    return out


def _tensor_samples() -> list[tuple[StandardWord, StandardWord]]:
    words = [w for m in range(3) for n in range(3) for w in enumerate_standard(m, n, rect=True)]
    return [(a, b) for a in words for b in words if a.m + b.m <= 3 and a.n + b.n <= 3]
