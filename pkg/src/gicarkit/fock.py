"""Fermionic Fock space on n modes, GICAR operators and their diagrammatic model.

Conventions: ``a_i`` creates mode i and ``a_i*`` annihilates it.  Wedge basis
vectors are indexed by sorted tuples S; ``a_i`` sends S to S+{i} with sign
(-1)^#{j in S : j < i}, and ``a_i*`` removes i with the same sign.  Matrices
use the basis ordered by (|S|, S).

Fock words are written in operator order (rightmost acts first), e.g.
``"a1 a3*"`` is a_1 a_3*.

The diagram side: the vector for S is the rectangular diagram with cups at the
top points in S and dotted through strings everywhere else.  The algebra map
sends a bilinear a_x a_y* to

* the broken strand at x when x = y,
* the dotted hop from bottom x to top x+1 when y = x+1 (and its adjoint when
  y = x-1),
* a commutator of nearest-neighbour hops otherwise,

and a_y* a_x to delta_xy minus that.  Longer monomials are reduced to products
of bilinears with the anticommutation relations.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .diagram import Decorated, RectDiagram, expand_decorated, identity
from .lincomb import LinComb
from .scalar import Matrix, Scalar, conj, vectors_rank

__all__ = [
    "DVector",
    "FockVector",
    "big_theta",
    "car_annihilate",
    "car_create",
    "d_action",
    "fock_basis",
    "gicar_element",
    "parse_fock_word",
    "theta",
]

CRE, ANN = "c", "a"
FockWord = tuple[tuple[str, int], ...]


def fock_basis(n: int) -> list[tuple[int, ...]]:
    """Wedge basis subsets ordered by (size, lexicographic)."""
    return [S for k in range(n + 1) for S in combinations(range(1, n + 1), k)]


@lru_cache(maxsize=None)
def _basis_index(n: int) -> dict[tuple[int, ...], int]:
    return {S: idx for idx, S in enumerate(fock_basis(n))}


@dataclass
class FockVector:
    """Finite sum of wedge basis vectors."""

    n: int
    coeffs: dict[tuple[int, ...], Scalar] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {tuple(sorted(S)): v for S, v in self.coeffs.items() if v}

    @classmethod
    def basis(cls, n: int, S: Iterable[int]) -> "FockVector":
        return cls(n, {tuple(sorted(S)): 1})

    @classmethod
    def vacuum(cls, n: int) -> "FockVector":
        return cls(n, {(): 1})

    def inner(self, other: "FockVector") -> Scalar:
        """Conjugate-linear in self."""
        return sum((conj(v) * other.coeffs.get(S, 0) for S, v in self.coeffs.items()), 0)

    def to_dense(self) -> dict[int, Scalar]:
        idx = _basis_index(self.n)
        return {idx[S]: v for S, v in self.coeffs.items()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return self.n == other.n and all(self.coeffs.get(k, 0) == other.coeffs.get(k, 0) for k in keys)


def _sign(S: Sequence[int], i: int) -> int:
    return -1 if sum(1 for j in S if j < i) % 2 else 1


def _check_mode(i: int, n: int) -> None:
    if not 1 <= i <= n:
        raise IndexError(f"mode {i} out of range 1..{n}")


def car_create(i: int, v: FockVector) -> FockVector:
    _check_mode(i, v.n)
    out: dict[tuple[int, ...], Scalar] = {}
    for S, c in v.coeffs.items():
        if i not in S:
            T = tuple(sorted(S + (i,)))
            out[T] = out.get(T, 0) + _sign(S, i) * c
    return FockVector(v.n, out)


def car_annihilate(i: int, v: FockVector) -> FockVector:
    _check_mode(i, v.n)
    out: dict[tuple[int, ...], Scalar] = {}
    for S, c in v.coeffs.items():
        if i in S:
            T = tuple(j for j in S if j != i)
            out[T] = out.get(T, 0) + _sign(S, i) * c
    return FockVector(v.n, out)


# -- operator matrices --------------------------------------------------------

_FOCK_TOKEN = re.compile(r"^a(?:(\d+)\*|\*(\d+)|(\d+))$")


def parse_fock_word(text: str) -> FockWord:
    """``"a1 a3*"`` -> (('c', 1), ('a', 3)); ``a*3`` is accepted too."""
    out = []
    for tok in text.replace(",", " ").split():
        mt = _FOCK_TOKEN.match(tok)
        if not mt:
            raise ValueError(f"bad Fock token {tok!r}")
        post, pre, cre = mt.groups()
        out.append((CRE, int(cre)) if cre else (ANN, int(post or pre)))
    return tuple(out)


def _as_fock_word(word) -> FockWord:
    if isinstance(word, str):
        return parse_fock_word(word)
    return tuple((k, int(i)) for k, i in word)


@lru_cache(maxsize=None)
def mode_operator(kind: str, i: int, n: int) -> Matrix:
    """Matrix of a_i (kind 'c') or a_i* (kind 'a') on the 2^n-dim Fock space."""
    _check_mode(i, n)
    idx = _basis_index(n)
    rows: list[dict[int, Scalar]] = [{} for _ in idx]
    for S, col in idx.items():
        if (kind == CRE) == (i in S):
            continue
        T = tuple(sorted(S + (i,))) if kind == CRE else tuple(j for j in S if j != i)
        rows[idx[T]][col] = _sign(S, i)
    return Matrix(len(idx), len(idx), rows)


def is_gauge_invariant(word) -> bool:
    w = _as_fock_word(word)
    return sum(1 for k, _ in w if k == CRE) == sum(1 for k, _ in w if k == ANN)


def gicar_element(word, n: int) -> Matrix:
    """Matrix of a Fock word; non-gauge-invariant words trigger a warning."""
    w = _as_fock_word(word)
    if not is_gauge_invariant(w):
        warnings.warn(f"word {w} is not gauge invariant", stacklevel=2)
    out = Matrix.identity(2**n)
    for kind, i in w:
        out = out @ mode_operator(kind, i, n)
    return out


def f_word(i: int) -> FockWord:
    """f_i = a_i* a_i."""
    return ((ANN, i), (CRE, i))


def u_word(i: int) -> FockWord:
    """u_i = a_i* a_(i+1)."""
    return ((ANN, i), (CRE, i + 1))


def adjoint_word(word) -> FockWord:
    return tuple((CRE if k == ANN else ANN, i) for k, i in reversed(_as_fock_word(word)))


def gicar_monomials(n: int) -> list[FockWord]:
    """Normal-ordered monomials a_I a*_J with |I| = |J|."""
    out = []
    for k in range(n + 1):
        for I in combinations(range(1, n + 1), k):
            for J in combinations(range(1, n + 1), k):
                out.append(tuple((CRE, i) for i in reversed(I)) + tuple((ANN, j) for j in J))
    return out


def generator_words(n: int) -> list[FockWord]:
    """f_i, u_i and u_i* for the given n."""
    out = [f_word(i) for i in range(1, n + 1)]
    out += [u_word(i) for i in range(1, n)]
    out += [adjoint_word(u_word(i)) for i in range(1, n)]
    return out


# -- the algebra map to dotted diagrams ---------------------------------------


def _rect(n: int, pairs) -> RectDiagram:
    return RectDiagram(n, n, tuple(pairs))


@lru_cache(maxsize=None)
def _hop(x: int, y: int, n: int) -> LinComb:
    """Dotted-calculus image of a_x a_y*."""
    if x == y:
        return LinComb.basis(Decorated(_rect(n, ((j, j) for j in range(1, n + 1) if j != x))))
    if y == x + 1:
        pairs = [(j, j) for j in range(1, n + 1) if j not in (x, x + 1)] + [(x, x + 1)]
        return LinComb.basis(Decorated(_rect(n, pairs), frozenset({x})))
    if y == x - 1:
        return _hop(y, x, n).adjoint()
    z = x + 1 if x < y else x - 1
    return _hop(x, z, n) @ _hop(z, y, n) - _hop(z, y, n) @ _hop(x, z, n)


def _identity_dec(n: int) -> LinComb:
    return LinComb.basis(Decorated(identity(n)))


@lru_cache(maxsize=None)
def _theta_dec(word: FockWord, n: int) -> LinComb:
    if not word:
        return _identity_dec(n)
    first = word[0][0]
    p = next((q for q in range(1, len(word)) if word[q][0] != first), None)
    if p is None:
        raise ValueError("word is not gauge invariant")
    if p == 1:
        (k0, i0), (_, i1) = word[0], word[1]
        if k0 == CRE:
            pair = _hop(i0, i1, n)
        else:
            pair = (_identity_dec(n) if i0 == i1 else LinComb()) - _hop(i1, i0, n)
        return pair @ _theta_dec(word[2:], n)
    # anticommute word[p] one step to the left
    left, right = word[p - 1], word[p]
    swapped = word[: p - 1] + (right, left) + word[p + 1 :]
    out = _theta_dec(swapped, n).scale(-1)
    if left[1] == right[1]:
        out = out + _theta_dec(word[: p - 1] + word[p + 1 :], n)
    return out


def theta_decorated(word, n: int) -> LinComb:
    w = _as_fock_word(word)
    for _, i in w:
        _check_mode(i, n)
    if not is_gauge_invariant(w):
        raise ValueError(f"word {w} is not gauge invariant")
    return _theta_dec(w, n)


def theta(word, n: int) -> LinComb:
    """Image of a gauge-invariant Fock word as a combination of plain rectangular diagrams."""
    return expand_decorated(theta_decorated(word, n))


# -- the diagram space ---------------------------------------------------------


@dataclass
class DVector:
    """Combination of all-dotted diagrams in the diagram space, keyed by cup set."""

    n: int
    coeffs: dict[tuple[int, ...], Scalar] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {tuple(sorted(S)): v for S, v in self.coeffs.items() if v}

    def inner(self, other: "DVector") -> Scalar:
        return sum((conj(v) * other.coeffs.get(S, 0) for S, v in self.coeffs.items()), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DVector):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return self.n == other.n and all(self.coeffs.get(k, 0) == other.coeffs.get(k, 0) for k in keys)


def d_diagram(n: int, cups: Sequence[int]) -> Decorated:
    """All-dotted diagram with no caps and cups at the given top points."""
    tops = [j for j in range(1, n + 1) if j not in set(cups)]
    base = RectDiagram(len(tops), n, tuple(enumerate(tops, start=1)))
    return Decorated(base, frozenset(range(1, len(tops) + 1)))


def big_theta(v: FockVector) -> DVector:
    return DVector(v.n, dict(v.coeffs))


def _read_cups(d: Decorated | None, n: int) -> tuple[int, ...] | None:
    if d is None:
        return None
    assert not d.base.caps and d.dotted == set(d.base.domain), "left the diagram space"
    return d.base.cups


def d_action(c: LinComb, v: DVector) -> DVector:
    """Action of a combination of (plain or dotted) diagrams in RP(n, n)."""
    out: dict[tuple[int, ...], Scalar] = {}
    for key, coeff in c.items():
        dec = key if isinstance(key, Decorated) else Decorated(key)
        if dec.m != v.n or dec.n != v.n:
            raise ValueError("size mismatch")
        for S, x in v.coeffs.items():
            cups = _read_cups(dec @ d_diagram(v.n, S), v.n)
            if cups is not None:
                out[cups] = out.get(cups, 0) + coeff * x
    return DVector(v.n, out)


def d_matrix(c: LinComb, n: int) -> Matrix:
    """Matrix of a diagram combination on the diagram space in the (|S|, S) basis."""
    idx = _basis_index(n)
    cols = []
    for S in fock_basis(n):
        img = d_action(c, DVector(n, {S: 1}))
        cols.append({idx[T]: x for T, x in img.coeffs.items()})
    return Matrix.from_columns(len(idx), cols)


# -- representation-theoretic checks ------------------------------------------


def span_dimension(n: int) -> int:
    """Rank of all normal-ordered GICAR monomials acting on Fock space."""
    return vectors_rank(gicar_element(w, n).flatten() for w in gicar_monomials(n))


def particle_block(n: int, k: int) -> list[int]:
    idx = _basis_index(n)
    return [idx[S] for S in combinations(range(1, n + 1), k)]


def commutant_dimension(mats: Sequence[Matrix]) -> int:
    """Dimension of {X : XA = AX for all A} for square matrices of one size."""
    if not mats:
        raise ValueError("need at least one matrix")
    d = mats[0].nrows
    # unknown X[p][q] lives at coordinate p*d + q
    eqs: list[dict[int, Scalar]] = []
    for A in mats:
        cols = A.columns()
        for i in range(d):
            for j in range(d):
                # (XA - AX)[i][j] = sum_q X[i][q] A[q][j] - sum_p A[i][p] X[p][j]
                row: dict[int, Scalar] = {}
                for q, v in cols[j].items():
                    row[i * d + q] = row.get(i * d + q, 0) + v
                for p, v in A.rows[i].items():
                    row[p * d + j] = row.get(p * d + j, 0) - v
                row = {key: val for key, val in row.items() if val}
                if row:
                    eqs.append(row)
    return d * d - vectors_rank(eqs)


def block_commutant_dimension(n: int, k: int) -> int:
    block = particle_block(n, k)
    mats = [gicar_element(w, n).block(block, block) for w in generator_words(n)]
    if not mats:
        mats = [Matrix.identity(len(block))]
    return commutant_dimension(mats)


def regular_multiplicities(n: int) -> list[int]:
    """Multiplicity of each particle-number block in the left regular module.

    The isotypic piece G z_k (z_k the block projection) has dimension
    mult_k * C(n, k), and each left ideal G q_S for a minimal projection q_S
    is checked to be a copy of the block by comparing ranks.
    """
    mons = [gicar_element(w, n) for w in gicar_monomials(n)]
    idx = _basis_index(n)
    mults = []
    for k in range(n + 1):
        block = particle_block(n, k)
        zk = Matrix(2**n, 2**n, [{i: 1} if i in set(block) else {} for i in range(2**n)])
        dim_iso = vectors_rank((x @ zk).flatten() for x in mons)
        for S in combinations(range(1, n + 1), k):
            q = minimal_projection_matrix(n, S)
            ideal_rank = vectors_rank((x @ q).flatten() for x in mons)
            orbit_rank = vectors_rank(x.column(idx[S]) for x in mons)
            if ideal_rank != orbit_rank or orbit_rank != len(block):
                raise AssertionError(f"left ideal for {S} is not a copy of the k={k} block")
        mults.append(dim_iso // len(block))
    return mults


def minimal_projection_matrix(n: int, occupied: Sequence[int]) -> Matrix:
    """Product of a_i a_i* over occupied modes and a_j* a_j over the rest."""
    word: list[tuple[str, int]] = []
    for i in range(1, n + 1):
        word += [(CRE, i), (ANN, i)] if i in set(occupied) else [(ANN, i), (CRE, i)]
    return gicar_element(tuple(word), n)


def branching(n: int, k: int) -> dict:
    """Split the k-particle block of n modes under the algebra of the first n-1 modes."""
    idx = _basis_index(n)
    block = [S for S in combinations(range(1, n + 1), k)]
    without = [S for S in block if n not in S]
    with_last = [S for S in block if n in S]
    gens = [gicar_element(w, n) for w in generator_words(n - 1)] if n > 1 else []
    pieces = {}
    ok = True
    for name, part, smaller_k in (("k", without, k), ("k-1", with_last, k - 1)):
        rows = [idx[S] for S in part]
        others = [idx[S] for S in block if S not in set(part)]
        # invariance: no leakage into the other piece
        for g in gens:
            if not g.block(others, rows).is_zero():
                ok = False
        # the piece equals the smaller Fock block via S -> S minus {n}
        if 0 <= smaller_k <= n - 1 and part:
            small_idx = _basis_index(n - 1)
            small_rows = [small_idx[tuple(j for j in S if j != n)] for S in part]
            small_gens = [gicar_element(w, n - 1) for w in generator_words(n - 1)] if n > 1 else []
            for g, h in zip(gens, small_gens):
                if g.block(rows, rows) != h.block(small_rows, small_rows):
                    ok = False
        pieces[name] = len(part)
    pieces["expected"] = (comb(n - 1, k), comb(n - 1, k - 1) if k >= 1 else 0)
    pieces["ok"] = ok and (pieces["k"], pieces["k-1"]) == pieces["expected"]
    return pieces
