"""Basis diagrams of the rectangular and annular planar rook categories.

A diagram with ``m`` inner (lower) points and ``n`` outer (upper) points is a
partial injection from ``{1..m}`` to ``{1..n}``, listed as sorted pairs
``(inner, outer)``.  Inner points outside the domain are caps, outer points
outside the image are cups.

Rectangular diagrams are order preserving.  Annular diagrams only preserve
cyclic order; writing the domain as ``s_1 < ... < s_t`` and the image as
``u_1 < ... < u_t`` the matching is ``s_j -> u_(j+o mod t)`` for an offset
``o``.  A rectangular diagram is exactly an annular one with offset 0.

Composition follows the convention ``compose(f, g) = g after f`` while
``x @ y`` is operator order, ``x after y``.  Closed loops are deleted with
weight 1.

A :class:`Decorated` diagram carries dots on some through strings.  A dotted
string stands for identity minus the broken (cap plus cup) string, so a dotted
diagram is a signed sum of plain diagrams (:func:`expand_decorated`).  Dotted
diagrams also compose directly: a dot that ends up on a cap, cup or closed
loop kills the term, and a through string carrying any dot stays dotted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Union

from .lincomb import LinComb

__all__ = [
    "AnnDiagram",
    "Decorated",
    "Diagram",
    "RectDiagram",
    "adjoint",
    "compose",
    "compose_ann",
    "compose_rect",
    "count_formula",
    "diagram_from_json",
    "enumerate_diagrams",
    "expand_decorated",
    "identity",
    "tensor_rect",
]


def _is_cyclic_monotone(images: list[int]) -> bool:
    drops = sum(1 for a, b in zip(images, images[1:]) if b < a)
    if drops == 0:
        return True
    return drops == 1 and images[-1] < images[0]


@dataclass(frozen=True)
class _Base:
    m: int
    n: int
    through: tuple[tuple[int, int], ...]

    kind = ""

    def __post_init__(self):
        through = tuple(sorted((int(a), int(b)) for a, b in self.through))
        object.__setattr__(self, "through", through)
        if self.m < 0 or self.n < 0:
            raise ValueError("negative boundary size")
        dom = [a for a, _ in through]
        img = [b for _, b in through]
        if len(set(dom)) != len(dom) or len(set(img)) != len(img):
            raise ValueError("through strings must form a partial injection")
        if any(not 1 <= a <= self.m for a in dom) or any(not 1 <= b <= self.n for b in img):
            raise ValueError("boundary point out of range")
        self._check_planar(img)

    def _check_planar(self, images: list[int]) -> None:
        raise NotImplementedError

    # -- basic data ---------------------------------------------------------
    @property
    def t(self) -> int:
        return len(self.through)

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.through)

    @property
    def image(self) -> tuple[int, ...]:
        return tuple(sorted(b for _, b in self.through))

    @property
    def caps(self) -> tuple[int, ...]:
        dom = set(self.domain)
        return tuple(i for i in range(1, self.m + 1) if i not in dom)

    @property
    def cups(self) -> tuple[int, ...]:
        img = set(self.image)
        return tuple(i for i in range(1, self.n + 1) if i not in img)

    def as_map(self) -> dict[int, int]:
        return dict(self.through)

    @property
    def offset(self) -> int:
        if not self.through:
            return 0
        return self.image.index(self.through[0][1])

    def adjoint(self):
        return type(self)(self.n, self.m, tuple((b, a) for a, b in self.through))

    def __matmul__(self, other):
        return compose(other, self)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "m": self.m,
            "n": self.n,
            "through": [list(p) for p in self.through],
            "offset": self.offset,
        }

    def __repr__(self) -> str:
        body = ",".join(f"{a}>{b}" for a, b in self.through)
        return f"{self.kind}({self.m},{self.n}:{body})"


@dataclass(frozen=True, repr=False)
class RectDiagram(_Base):
    """Order-preserving partial injection; basis morphism of the rectangular category."""

    kind = "rect"

    def _check_planar(self, images: list[int]) -> None:
        if any(b <= a for a, b in zip(images, images[1:])):
            raise ValueError("rectangular diagram must be order preserving")

    def as_annular(self) -> "AnnDiagram":
        return AnnDiagram(self.m, self.n, self.through)


@dataclass(frozen=True, repr=False)
class AnnDiagram(_Base):
    """Cyclic-order-preserving partial injection; basis morphism of the annular category."""

    kind = "ann"

    def _check_planar(self, images: list[int]) -> None:
        if not _is_cyclic_monotone(images):
            raise ValueError("annular diagram must preserve cyclic order")

    @classmethod
    def from_sets(cls, m: int, n: int, domain, image, offset: int) -> "AnnDiagram":
        dom = sorted(domain)
        img = sorted(image)
        if len(dom) != len(img):
            raise ValueError("domain and image sizes differ")
        t = len(dom)
        pairs = tuple((dom[j], img[(j + offset) % t]) for j in range(t)) if t else ()
        return cls(m, n, pairs)

    def is_rect(self) -> bool:
        return self.offset == 0

    def as_rect(self) -> RectDiagram:
        return RectDiagram(self.m, self.n, self.through)


Diagram = Union[RectDiagram, AnnDiagram]


def identity(n: int, kind: str = "rect") -> Diagram:
    cls = RectDiagram if kind == "rect" else AnnDiagram
    return cls(n, n, tuple((i, i) for i in range(1, n + 1)))


def _compose_maps(f: _Base, g: _Base) -> tuple[tuple[int, int], ...]:
    gm = g.as_map()
    return tuple((a, gm[b]) for a, b in f.through if b in gm)


def compose(f: Diagram, g: Diagram) -> Diagram:
    """g after f, for f in (m, n) and g in (n, p)."""
    if f.n != g.m:
        raise ValueError(f"boundary mismatch: {f.n} outer points vs {g.m} inner points")
    if isinstance(f, RectDiagram) and isinstance(g, RectDiagram):
        return RectDiagram(f.m, g.n, _compose_maps(f, g))
    return AnnDiagram(f.m, g.n, _compose_maps(f, g))


def compose_rect(f: RectDiagram, g: RectDiagram) -> RectDiagram:
    if not (isinstance(f, RectDiagram) and isinstance(g, RectDiagram)):
        raise TypeError("compose_rect expects rectangular diagrams")
    return compose(f, g)  # type: ignore[return-value]


def compose_ann(f: Diagram, g: Diagram) -> AnnDiagram:
    fa = f.as_annular() if isinstance(f, RectDiagram) else f
    ga = g.as_annular() if isinstance(g, RectDiagram) else g
    return compose(fa, ga)  # type: ignore[return-value]


def tensor_rect(f: RectDiagram, g: RectDiagram) -> RectDiagram:
    """Horizontal juxtaposition, f on the left."""
    pairs = f.through + tuple((a + f.m, b + f.n) for a, b in g.through)
    return RectDiagram(f.m + g.m, f.n + g.n, pairs)


def adjoint(d):
    return d.adjoint()


# -- decorated diagrams -------------------------------------------------------


@dataclass(frozen=True)
class Decorated:
    """A plain diagram with dots on the through strings starting at ``dotted``."""

    base: Diagram
    dotted: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "dotted", frozenset(self.dotted))
        if not self.dotted <= set(self.base.domain):
            raise ValueError("dots must sit on through strings")

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def n(self) -> int:
        return self.base.n

    def adjoint(self) -> "Decorated":
        fm = self.base.as_map()
        return Decorated(self.base.adjoint(), frozenset(fm[a] for a in self.dotted))

    def __matmul__(self, other: "Decorated") -> "Decorated | None":
        return compose_decorated(other, self)

    def to_json(self) -> dict:
        out = self.base.to_json()
        out["dotted"] = sorted(self.dotted)
        return out

    def __repr__(self) -> str:
        return f"Dec({self.base!r};dots={sorted(self.dotted)})"


def compose_decorated(f: Decorated, g: Decorated) -> Decorated | None:
    """g after f in the dotted calculus; None when a dot is lost."""
    if f.base.n != g.base.m:
        raise ValueError("boundary mismatch")
    fm = f.base.as_map()
    gm = g.base.as_map()
    # a dotted segment of g whose inner end is not reached by f becomes a cup
    f_img = set(fm.values())
    for b in g.dotted:
        if b not in f_img:
            return None
    pairs = []
    dots = set()
    for a, b in fm.items():
        if b in gm:
            pairs.append((a, gm[b]))
            if a in f.dotted or b in g.dotted:
                dots.add(a)
        elif a in f.dotted:
            return None
    base = compose(f.base, g.base)
    return Decorated(type(base)(base.m, base.n, tuple(pairs)), frozenset(dots))


def expand_decorated(d: Decorated | LinComb) -> LinComb:
    """Plain-diagram expansion; dotted string = identity - broken string."""
    if isinstance(d, LinComb):
        return d.map(expand_decorated)
    dotted = sorted(d.dotted)
    terms: dict = {}
    for r in range(len(dotted) + 1):
        for broken in itertools.combinations(dotted, r):
            bset = set(broken)
            pairs = tuple(p for p in d.base.through if p[0] not in bset)
            key = type(d.base)(d.base.m, d.base.n, pairs)
            terms[key] = terms.get(key, 0) + (-1) ** r
    return LinComb(terms)


def plain(d: Diagram) -> Decorated:
    return Decorated(d, frozenset())


# -- enumeration and counting -------------------------------------------------


def _subsets(n: int, t: int) -> Iterator[tuple[int, ...]]:
    return itertools.combinations(range(1, n + 1), t)


def enumerate_diagrams(kind: str, m: int, n: int, k: int | None = None) -> list[Diagram]:
    """All basis diagrams in canonical order (t, S, T, offset)."""
    if kind not in ("rect", "ann"):
        raise ValueError(f"unknown kind {kind!r}")
    out: list[Diagram] = []
    ts = range(min(m, n) + 1) if k is None else ([k] if 0 <= k <= min(m, n) else [])
    for t in ts:
        for dom in _subsets(m, t):
            for img in _subsets(n, t):
                if kind == "rect":
                    out.append(RectDiagram(m, n, tuple(zip(dom, img))))
                else:
                    for o in range(max(t, 1)):
                        out.append(AnnDiagram.from_sets(m, n, dom, img, o))
    return out


def count_formula(m: int, n: int, k: int | None = None, kind: str = "ann") -> int:
    """Closed-form number of basis diagrams, optionally with exactly k through strings."""
    if k is None:
        return sum(count_formula(m, n, j, kind) for j in range(min(m, n) + 1))
    if k < 0 or k > min(m, n):
        return 0
    if kind == "rect":
        return comb(m, k) * comb(n, k)
    if k == 0:
        return 1
    small, large = sorted((m, n))
    return small * comb(large, k) * comb(small - 1, k - 1)


def diagram_from_json(obj: dict) -> Diagram | Decorated:
    kind = obj.get("kind", "rect")
    cls = RectDiagram if kind == "rect" else AnnDiagram
    base = cls(int(obj["m"]), int(obj["n"]), tuple(tuple(p) for p in obj.get("through", [])))
    if "offset" in obj and base.offset != int(obj["offset"]) % max(base.t, 1):
        raise ValueError("offset does not match the through strings")
    if "dotted" in obj:
        return Decorated(base, frozenset(int(i) for i in obj["dotted"]))
    return base
