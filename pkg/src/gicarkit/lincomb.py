"""Formal linear combinations of hashable basis objects with exact coefficients."""

from __future__ import annotations

from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Union

from .scalar import Scalar, conj, scalar_to_json, simplify

__all__ = ["LinComb"]


class LinComb:
    """Finite sum of basis keys with nonzero scalar coefficients.

    Keys are any hashable objects.  When keys implement ``@`` (operator
    composition, ``x @ y`` meaning x after y) and ``adjoint()``, the
    combination inherits them bilinearly.  A key product may return ``None``
    to signal zero.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Hashable, Scalar] | Iterable[tuple[Hashable, Scalar]] | None = None):
        acc: dict[Hashable, Scalar] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, v in items:
                acc[k] = acc.get(k, 0) + v
        self.terms = {k: simplify(v) for k, v in acc.items() if v}

    @classmethod
    def basis(cls, key: Hashable, coeff: Scalar = 1) -> "LinComb":
        return cls({key: coeff})

    # -- container protocol -------------------------------------------------
    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.terms)

    def items(self):
        return self.terms.items()

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, key: Hashable) -> Scalar:
        return self.terms.get(key, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        inner = " + ".join(f"({v})*{k!r}" for k, v in self.terms.items())
        return f"LinComb[{inner or '0'}]"

    # -- linear structure ---------------------------------------------------
    def __add__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LinComb(out)

    def __sub__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        return self + other.scale(-1)

    def __neg__(self) -> "LinComb":
        return self.scale(-1)

    def scale(self, c: Scalar) -> "LinComb":
        return LinComb({k: c * v for k, v in self.terms.items()})

    def __mul__(self, c: Scalar) -> "LinComb":
        if isinstance(c, LinComb):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    # -- maps ---------------------------------------------------------------
    def map(self, fn: Callable[[Hashable], Union[Hashable, "LinComb", None]]) -> "LinComb":
        """Linear extension of fn; fn may return a key, a LinComb or None (zero)."""
        out: dict[Hashable, Scalar] = {}
        for k, v in self.terms.items():
            img = fn(k)
            if img is None:
                continue
            if isinstance(img, LinComb):
                for k2, v2 in img.terms.items():
                    out[k2] = out.get(k2, 0) + v * v2
            else:
                out[img] = out.get(img, 0) + v
        return LinComb(out)

    def __matmul__(self, other: "LinComb") -> "LinComb":
        out: dict[Hashable, Scalar] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = k1 @ k2
                if k is None:
                    continue
                out[k] = out.get(k, 0) + v1 * v2
        return LinComb(out)

    def adjoint(self) -> "LinComb":
        return LinComb({k.adjoint(): conj(v) for k, v in self.terms.items()})

    def to_json(self, key_json: Callable[[Hashable], Any] | None = None) -> list:
        key_json = key_json or (lambda k: k.to_json())
        rows = [{"coeff": scalar_to_json(v), "term": key_json(k)} for k, v in self.terms.items()]
        rows.sort(key=lambda r: repr(r["term"]))
        return rows
