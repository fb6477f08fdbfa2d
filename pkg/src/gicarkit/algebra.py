"""Semisimple structure of the planar rook algebras RP_n and AP_n.

Minimal projections are tensor products of the broken strand ``b`` (cap over
cup) and the dotted strand ``d``.  Matrix units between projections with the
same dotted set size are products of dotted hops along a path of single-step
moves; annular matrix units additionally average dotted rotations against a
root of unity.  Everything is checked in the dotted calculus and, where a sum
of many terms is involved, in the plain diagram basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import Sequence

from .diagram import (
    AnnDiagram,
    Decorated,
    RectDiagram,
    count_formula,
    enumerate_diagrams,
    expand_decorated,
    identity,
)
from .lincomb import LinComb
from .scalar import zeta

__all__ = [
    "BratteliRow",
    "ProjectionPattern",
    "bratteli",
    "bratteli_dot",
    "matrix_unit",
    "minimal_projection",
    "rotational_idempotent",
    "wedderburn_check",
]


@dataclass(frozen=True)
class ProjectionPattern:
    """Sequence over {'b', 'd'}: broken or dotted strand at each position."""

    pattern: tuple[str, ...]

    def __post_init__(self):
        pat = tuple(self.pattern)
        if any(p not in ("b", "d") for p in pat):
            raise ValueError("pattern letters must be 'b' (broken) or 'd' (dotted)")
        object.__setattr__(self, "pattern", pat)

    @classmethod
    def parse(cls, text: str) -> "ProjectionPattern":
        return cls(tuple(text.strip()))

    @classmethod
    def from_dotted(cls, n: int, dotted: Sequence[int]) -> "ProjectionPattern":
        ds = set(dotted)
        return cls(tuple("d" if i in ds else "b" for i in range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.pattern)

    @property
    def dotted(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.pattern, start=1) if p == "d")

    def __str__(self) -> str:
        return "".join(self.pattern)


def _partial_units(n: int, S: Sequence[int], T: Sequence[int], annular: bool = False, offset: int = 0) -> Decorated:
    """Dotted strings from T to S (with an offset), broken everywhere else."""
    if annular:
        base = AnnDiagram.from_sets(n, n, T, S, offset)
    else:
        base = RectDiagram(n, n, tuple(zip(sorted(T), sorted(S))))
    return Decorated(base, frozenset(T))


def projection_decorated(p: ProjectionPattern | str) -> Decorated:
    if isinstance(p, str):
        p = ProjectionPattern.parse(p)
    return _partial_units(p.n, p.dotted, p.dotted)


def minimal_projection(p: ProjectionPattern | str) -> LinComb:
    """Plain-diagram expansion of the minimal projection with the given pattern."""
    return expand_decorated(projection_decorated(p))


def _hop_right(n: int, x: int) -> Decorated:
    """Dotted string from bottom x to top x+1, cap at bottom x+1, cup at top x."""
    pairs = [(j, j) for j in range(1, n + 1) if j not in (x, x + 1)] + [(x, x + 1)]
    return Decorated(RectDiagram(n, n, tuple(pairs)), frozenset({x}))


def path_unit(n: int, S: Sequence[int], T: Sequence[int]) -> Decorated | None:
    """Matrix unit from T to S built from single dotted hops, each sandwiched by projections."""
    S, T = sorted(S), sorted(T)
    if len(S) != len(T):
        raise ValueError("unit between different weights")
    cur = list(T)
    acc: Decorated | None = projection_decorated(ProjectionPattern.from_dotted(n, cur))

    def step(x: int, y: int) -> None:
        nonlocal acc
        hop = _hop_right(n, x) if y == x + 1 else _hop_right(n, y).adjoint()
        before = projection_decorated(ProjectionPattern.from_dotted(n, cur))
        cur[cur.index(x)] = y
        after = projection_decorated(ProjectionPattern.from_dotted(n, cur))
        for factor in (before, hop, after):
            acc = None if acc is None else factor @ acc

    for idx in reversed(range(len(S))):
        while cur[idx] < S[idx]:
            step(cur[idx], cur[idx] + 1)
    for idx in range(len(S)):
        while cur[idx] > S[idx]:
            step(cur[idx], cur[idx] - 1)
    return acc


def rect_unit(n: int, S: Sequence[int], T: Sequence[int]) -> Decorated:
    return _partial_units(n, S, T)


def _ann(d: Decorated) -> Decorated:
    base = d.base
    if isinstance(base, RectDiagram):
        base = base.as_annular()
    return Decorated(base, d.dotted)


def rotational_idempotent_decorated(n: int, S: Sequence[int], r: int) -> LinComb:
    """(1/k) sum_j w^-j (dotted rotation)^j on the strings at S, broken elsewhere; w = z_k^r."""
    k = len(S)
    if k == 0:
        return LinComb.basis(_ann(_partial_units(n, S, S)))
    if not 0 <= r < k:
        raise ValueError("rotation index out of range")
    terms = {}
    for j in range(k):
        key = _partial_units(n, S, S, annular=True, offset=j)
        terms[key] = terms.get(key, 0) + Fraction(1, k) * zeta(k, -r * j)
    return LinComb(terms)


def rotational_idempotent(k: int, r: int) -> LinComb:
    """Plain annular expansion of the weight-k idempotent with rotation eigenvalue z_k^r."""
    if k < 1:
        raise ValueError("k must be positive")
    return expand_decorated(rotational_idempotent_decorated(k, range(1, k + 1), r))


def matrix_unit(kind: str, n: int, S: Sequence[int], T: Sequence[int], r: int = 0) -> LinComb:
    """Matrix unit in the dotted calculus.

    Rectangular: the path-built unit from T to S.  Annular: the rectangular
    units through the leftmost k-subset with the rotational idempotent in
    between.
    """
    S, T = tuple(sorted(S)), tuple(sorted(T))
    k = len(S)
    if kind == "rect":
        unit = path_unit(n, S, T)
        return LinComb() if unit is None else LinComb.basis(unit)
    base = tuple(range(1, k + 1))
    left = LinComb.basis(_ann(path_unit(n, S, base)))
    right = LinComb.basis(_ann(path_unit(n, base, T)))
    return left @ rotational_idempotent_decorated(n, base, r) @ right


def unit_labels(kind: str, n: int) -> list[tuple[int, int, tuple[int, ...], tuple[int, ...]]]:
    """(k, r, S, T) for every matrix unit, in a fixed order."""
    out = []
    for k in range(n + 1):
        subsets = list(combinations(range(1, n + 1), k))
        copies = 1 if kind == "rect" or k == 0 else k
        for r in range(copies):
            for S in subsets:
                for T in subsets:
                    out.append((k, r, S, T))
    return out


def wedderburn_check(kind: str, n: int) -> dict:
    """Build the full matrix-unit system of RP_n or AP_n and verify it.

    The units are nonzero and satisfy E_ab E_cd = delta_bc E_ad with E_ab* =
    E_ba, so they are linearly independent; their number equals the number of
    basis diagrams, hence they form a basis.  The diagonal units sum to the
    identity.
    """
    if kind not in ("rect", "ann"):
        raise ValueError(f"unknown kind {kind!r}")
    labels = unit_labels(kind, n)
    units = {lab: matrix_unit(kind, n, lab[2], lab[3], lab[1]) for lab in labels}
    checks: dict[str, bool] = {}

    checks["units_nonzero"] = all(not expand_decorated(u).is_zero() for u in units.values())

    if kind == "rect":
        direct = all(
            units[lab] == LinComb.basis(rect_unit(n, lab[2], lab[3])) for lab in labels
        )
        checks["path_units_match_direct"] = direct

    products_ok = True
    by_block: dict[tuple[int, int], list] = {}
    for lab in labels:
        by_block.setdefault((lab[0], lab[1]), []).append(lab)
    for lab1 in labels:
        for lab2 in labels:
            prod = units[lab1] @ units[lab2]
            same = (lab1[0], lab1[1]) == (lab2[0], lab2[1]) and lab1[3] == lab2[2]
            expected = units[(lab1[0], lab1[1], lab1[2], lab2[3])] if same else LinComb()
            if prod != expected:
                products_ok = False
                break
        if not products_ok:
            break
    checks["unit_products"] = products_ok

    checks["adjoints"] = all(
        units[lab].adjoint() == units[(lab[0], lab[1], lab[3], lab[2])] for lab in labels
    )

    total = LinComb()
    for lab in labels:
        if lab[2] == lab[3]:
            total = total + expand_decorated(units[lab])
    ident = identity(n, "rect" if kind == "rect" else "ann")
    checks["identity_decomposition"] = total == LinComb.basis(ident)

    if kind == "ann":
        refine = True
        for k in range(2, n + 1):
            for S in combinations(range(1, n + 1), k):
                pieces = LinComb()
                for r in range(k):
                    pieces = pieces + expand_decorated(units[(k, r, S, S)])
                if pieces != expand_decorated(LinComb.basis(_ann(rect_unit(n, S, S)))):
                    refine = False
        checks["annular_refinement"] = refine

    dim_units = len(labels)
    dim_enum = len(enumerate_diagrams(kind, n, n))
    dim_formula = count_formula(n, n, kind=kind)
    checks["dimension"] = dim_units == dim_enum == dim_formula

    summands = []
    for k in range(n + 1):
        copies = 1 if kind == "rect" or k == 0 else k
        summands.append({"k": k, "copies": copies, "size": comb(n, k)})
    return {
        "kind": kind,
        "n": n,
        "summands": summands,
        "dimension": {"units": dim_units, "enumerated": dim_enum, "formula": dim_formula},
        "checks": checks,
        "ok": all(checks.values()),
    }


# -- Bratteli diagram ---------------------------------------------------------


@dataclass(frozen=True)
class BratteliRow:
    level: int
    multiplicities: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (k at this level, k at next level, multiplicity)


def _right_inclusion(d: Decorated) -> Decorated:
    base = d.base
    grown = RectDiagram(base.m + 1, base.n + 1, base.through + ((base.m + 1, base.n + 1),))
    return Decorated(grown, d.dotted)


def bratteli(n_max: int) -> list[BratteliRow]:
    """Rows 0..n_max; edges found by splitting included minimal projections.

    A projection q at level n is included by adding a plain strand on the
    right.  Each level-(n+1) minimal projection q' either kills it or
    satisfies q' (q + strand) = q', and the included projection is the sum of
    the q' of the second kind.  Edge multiplicities count those q' by dotted
    weight and must agree across a whole block.
    """
    rows = []
    for n in range(n_max + 1):
        pats = [ProjectionPattern.from_dotted(n, D) for k in range(n + 1) for D in combinations(range(1, n + 1), k)]
        mults = tuple(sum(1 for p in pats if len(p.dotted) == k) for k in range(n + 1))
        edges: list[tuple[int, int, int]] = []
        if n < n_max:
            nxt = [ProjectionPattern.from_dotted(n + 1, D) for k in range(n + 2) for D in combinations(range(1, n + 2), k)]
            nxt_dec = [projection_decorated(p) for p in nxt]
            per_block: dict[int, set] = {}
            for p in pats:
                inc = _right_inclusion(projection_decorated(p))
                counts = [0] * (n + 2)
                for q, qd in zip(nxt, nxt_dec):
                    prod = qd @ inc
                    if prod is None:
                        continue
                    if prod != qd:
                        raise AssertionError("included projection does not split into minimal ones")
                    counts[len(q.dotted)] += 1
                per_block.setdefault(len(p.dotted), set()).add(tuple(counts))
            for k in range(n + 1):
                (counts,) = per_block[k]  # a block must branch uniformly
                for k2, c in enumerate(counts):
                    if c:
                        edges.append((k, k2, c))
        rows.append(BratteliRow(n, mults, tuple(edges)))
    return rows


def bratteli_dot(rows: Sequence[BratteliRow]) -> str:
    """DOT graph with node labels "(n,k):C(n,k)"."""
    lines = ["digraph bratteli {", "  rankdir=TB;"]
    for row in rows:
        names = []
        for k, mult in enumerate(row.multiplicities):
            name = f"n{row.level}k{k}"
            names.append(name)
            lines.append(f'  {name} [label="({row.level},{k}):{mult}"];')
        lines.append("  { rank=same; " + " ".join(names) + " }")
    for row in rows:
        for k, k2, c in row.edges:
            attr = "" if c == 1 else f' [label="{c}"]'
            lines.append(f"  n{row.level}k{k} -> n{row.level + 1}k{k2}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def pascal_row(n: int) -> tuple[int, ...]:
    return tuple(comb(n, k) for k in range(n + 1))


def annular_order(n: int) -> int:
    """Scalar order needed for all annular units of AP_n."""
    return lcm(*range(1, n + 1)) if n else 1
