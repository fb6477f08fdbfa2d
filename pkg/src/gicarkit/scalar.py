"""Exact arithmetic in cyclotomic fields and a small sparse exact linear algebra kit.

A :class:`Cyc` is an element of Q(z) where z is a primitive N-th root of unity.
It is stored as integer numerators over one positive common denominator, with
coefficients on the power basis 1, z, ..., z^(phi(N)-1), i.e. reduced modulo the
N-th cyclotomic polynomial.  Plain ``int`` and ``Fraction`` values are accepted
everywhere a scalar is expected and behave as elements of order 1.

:class:`Matrix` is a sparse row-dict matrix over such scalars.  Elimination is
done incrementally in reduced row echelon form, which keeps the very sparse
matrices produced by diagram and tensor representations cheap.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Iterator, Sequence, Union

__all__ = [
    "Cyc",
    "Matrix",
    "OrderMismatchError",
    "Scalar",
    "conj",
    "cyc_arith",
    "cyclotomic_poly",
    "is_zero",
    "lift",
    "mat_kernel",
    "order_of",
    "scalar_from_json",
    "scalar_to_json",
    "zeta",
]


class OrderMismatchError(ValueError):
    """Raised when two scalars of incompatible root-of-unity orders are combined."""


Scalar = Union[int, Fraction, "Cyc"]


@lru_cache(maxsize=None)
def cyclotomic_poly(order: int) -> tuple[int, ...]:
    """Integer coefficients (constant term first) of the order-th cyclotomic polynomial."""
    if order < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (order - 1) + [1]
    for div in range(1, order):
        if order % div == 0:
            num = _poly_divexact(num, list(cyclotomic_poly(div)))
    return tuple(num)


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for shift in range(len(out) - 1, -1, -1):
        c = num[shift + len(den) - 1] // lead
        out[shift] = c
        if c:
            for k, dk in enumerate(den):
                num[shift + k] -= c * dk
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def _phi(order: int) -> int:
    return len(cyclotomic_poly(order)) - 1


@lru_cache(maxsize=None)
def _power_table(order: int) -> tuple[tuple[int, ...], ...]:
    """Row j holds z^j reduced mod the cyclotomic polynomial, for 0 <= j < max(N, 2*phi)."""
    phi = _phi(order)
    poly = cyclotomic_poly(order)
    rows: list[tuple[int, ...]] = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(max(order, 2 * phi)):
        rows.append(tuple(cur))
        # multiply by z and reduce the overflowing top coefficient
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, poly)]
    return tuple(rows)


class Cyc:
    """Element of the cyclotomic field Q(z_N); immutable."""

    __slots__ = ("order", "nums", "den")

    order: int
    nums: tuple[int, ...]
    den: int

    def __init__(self, order: int, nums: Sequence[int], den: int = 1):
        # trusted constructor: caller supplies a reduced-length integer vector
        phi = _phi(order)
        if len(nums) != phi:
            raise ValueError(f"expected {phi} coefficients for order {order}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            nums = [-c for c in nums]
            den = -den
        g = reduce(math.gcd, nums, den)
        if g > 1:
            nums = [c // g for c in nums]
            den //= g
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "nums", tuple(nums))
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("Cyc is immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_coeffs(cls, order: int, coeffs: Iterable[int | Fraction]) -> "Cyc":
        """Build sum_j coeffs[j] z^j for any number of coefficients, reducing exponents mod N."""
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        phi = _phi(order)
        table = _power_table(order)
        acc = [0] * phi
        for j, c in enumerate(coeffs):
            if c:
                ci = c.numerator * (den // c.denominator)
                row = table[j % order]
                for t in range(phi):
                    if row[t]:
                        acc[t] += ci * row[t]
        return cls(order, acc, den)

    @classmethod
    def rational(cls, value: int | Fraction, order: int = 1) -> "Cyc":
        value = Fraction(value)
        nums = [0] * _phi(order)
        nums[0] = value.numerator
        return cls(order, nums, value.denominator)

    # -- inspection ---------------------------------------------------------
    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.nums[0], self.den)

    def coeffs(self) -> list[Fraction]:
        return [Fraction(c, self.den) for c in self.nums]

    def __bool__(self) -> bool:
        return any(self.nums)

    def __repr__(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs()):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                base = f"z{self.order}" + (f"^{j}" if j > 1 else "")
                terms.append(base if c == 1 else f"{c}*{base}")
        return " + ".join(terms) if terms else "0"

    # -- order handling -----------------------------------------------------
    def lift(self, order: int) -> "Cyc":
        """Embed into Q(z_order); requires self.order | order."""
        if order == self.order:
            return self
        if order % self.order:
            raise OrderMismatchError(f"cannot embed order {self.order} into order {order}")
        step = order // self.order
        phi = _phi(order)
        table = _power_table(order)
        acc = [0] * phi
        for j, c in enumerate(self.nums):
            if c:
                row = table[(j * step) % order]
                for t in range(phi):
                    if row[t]:
                        acc[t] += c * row[t]
        return Cyc(order, acc, self.den)

    def _coerce(self, other) -> "Cyc | None":
        if isinstance(other, Cyc):
            if other.order == self.order:
                return other
            if other.is_rational():
                return Cyc.rational(other.to_fraction(), self.order)
            if self.is_rational():
                return None  # caller swaps roles
            raise OrderMismatchError(f"orders {self.order} and {other.order} differ")
        if isinstance(other, (int, Fraction)):
            return Cyc.rational(other, self.order)
        return NotImplemented  # type: ignore[return-value]

    def _pair(self, other) -> tuple["Cyc", "Cyc"]:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError
        if o is None:
            return Cyc.rational(self.to_fraction(), other.order), other
        return self, o

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return Cyc(a.order, [x * b.den + y * a.den for x, y in zip(a.nums, b.nums)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self) -> "Cyc":
        return Cyc(self.order, [-x for x in self.nums], self.den)

    def __sub__(self, other):
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        return Cyc(a.order, [x * b.den - y * a.den for x, y in zip(a.nums, b.nums)], a.den * b.den)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Cyc(self.order, [x * other.numerator for x in self.nums], self.den * other.denominator)
        try:
            a, b = self._pair(other)
        except TypeError:
            return NotImplemented
        phi = len(a.nums)
        if phi == 1:
            return Cyc(a.order, [a.nums[0] * b.nums[0]], a.den * b.den)
        prod = [0] * (2 * phi - 1)
        for i, x in enumerate(a.nums):
            if x:
                for j, y in enumerate(b.nums):
                    if y:
                        prod[i + j] += x * y
        table = _power_table(a.order)
        acc = prod[:phi]
        for j in range(phi, 2 * phi - 1):
            c = prod[j]
            if c:
                row = table[j]
                for t in range(phi):
                    if row[t]:
                        acc[t] += c * row[t]
        return Cyc(a.order, acc, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Cyc.rational(1 / self.to_fraction(), self.order)
        # solve (multiplication-by-self) x = 1 over Q
        phi = len(self.nums)
        cols = []
        for i in range(phi):
            unit = [0] * phi
            unit[i] = 1
            cols.append((self * Cyc(self.order, unit)).coeffs())
        rows = [[cols[j][i] for j in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        for c in range(phi):
            p = next(r for r in range(c, phi) if rows[r][c])
            rows[c], rows[p] = rows[p], rows[c]
            piv = rows[c][c]
            rows[c] = [v / piv for v in rows[c]]
            for r in range(phi):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[c])]
        return Cyc.from_coeffs(self.order, [rows[i][phi] for i in range(phi)])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, Cyc):
            a, b = self._pair(other)
            return a * b.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exp: int) -> "Cyc":
        if exp < 0:
            return self.inverse() ** (-exp)
        out = Cyc.rational(1, self.order)
        base = self
        while exp:
            if exp & 1:
                out = out * base
            base = base * base
            exp >>= 1
        return out

    def conj(self) -> "Cyc":
        """Complex conjugate, z -> z^(N-1)."""
        if self.is_rational():
            return self
        coeffs = [Fraction(0)] * self.order
        for j, c in enumerate(self.coeffs()):
            coeffs[(-j) % self.order] += c
        return Cyc.from_coeffs(self.order, coeffs)

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.nums[0], self.den) == other
        if isinstance(other, Cyc):
            if self.order == other.order:
                return self.nums == other.nums and self.den == other.den
            common = math.lcm(self.order, other.order)
            a, b = self.lift(common), other.lift(common)
            return a.nums == b.nums and a.den == b.den
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        cs = self.coeffs()
        return {
            "order": self.order,
            "num": [str(c.numerator) for c in cs],
            "den": [str(c.denominator) for c in cs],
        }


# -- free functions over the Scalar union -------------------------------------


def zeta(order: int, power: int = 1) -> Scalar:
    """z_order ** power; returned as an int when the value is rational."""
    if order <= 2:
        return 1 if order == 1 or power % 2 == 0 else -1
    nums = _power_table(order)[power % order]
    return Cyc(order, nums)


def order_of(x: Scalar) -> int:
    return x.order if isinstance(x, Cyc) else 1


def is_zero(x: Scalar) -> bool:
    return not x


def conj(x: Scalar) -> Scalar:
    return x.conj() if isinstance(x, Cyc) else x


def lift(x: Scalar, order: int) -> Scalar:
    if isinstance(x, Cyc):
        return x.lift(order)
    return x


def simplify(x: Scalar) -> Scalar:
    """Return a rational value as Fraction/int when possible."""
    if isinstance(x, Cyc) and x.is_rational():
        x = x.to_fraction()
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


def cyc_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Apply op in {add, sub, mul} exactly."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def scalar_to_json(x: Scalar) -> dict:
    if isinstance(x, Cyc):
        return x.to_json()
    x = Fraction(x)
    return {"order": 1, "num": [str(x.numerator)], "den": [str(x.denominator)]}


def scalar_from_json(obj: dict) -> Scalar:
    order = int(obj["order"])
    coeffs = [Fraction(int(n), int(d)) for n, d in zip(obj["num"], obj["den"])]
    return simplify(Cyc.from_coeffs(order, coeffs))


def _inv(x: Scalar) -> Scalar:
    if isinstance(x, Cyc):
        return x.inverse()
    return Fraction(1, 1) / x


# -- sparse exact matrices ----------------------------------------------------


class Matrix:
    """Sparse exact matrix stored as a list of {column: value} row dicts.

    Treated as immutable by convention: every operation returns a new matrix.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: list[dict[int, Scalar]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        self.rows = rows

    # -- constructors -------------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def from_lists(cls, data: Sequence[Sequence[Scalar]], ncols: int | None = None) -> "Matrix":
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            rows.append({j: v for j, v in enumerate(r) if v})
        return cls(len(data), ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[dict[int, Scalar]]) -> "Matrix":
        rows: list[dict[int, Scalar]] = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        return cls(nrows, len(columns), rows)

    # -- access -------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.rows[i].get(j, 0)

    def to_lists(self) -> list[list[Scalar]]:
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self.rows]

    def column(self, j: int) -> dict[int, Scalar]:
        return {i: r[j] for i, r in enumerate(self.rows) if j in r}

    def columns(self) -> list[dict[int, Scalar]]:
        cols: list[dict[int, Scalar]] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # -- algebra ------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return all(not v for r in self.rows for v in r.values())

    def _combine(self, other: "Matrix", sign: int) -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = []
        for a, b in zip(self.rows, other.rows):
            r = dict(a)
            for j, v in b.items():
                w = r.get(j, 0) + sign * v
                if w:
                    r[j] = w
                else:
                    r.pop(j, None)
            rows.append(r)
        return Matrix(self.nrows, self.ncols, rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, 1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, -1)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c: Scalar) -> "Matrix":
        if not c:
            return Matrix.zeros(self.nrows, self.ncols)
        return Matrix(self.nrows, self.ncols, [{j: c * v for j, v in r.items()} for r in self.rows])

    def __mul__(self, c: Scalar) -> "Matrix":
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other.rows
        out = []
        for r in self.rows:
            acc: dict[int, Scalar] = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.append({j: v for j, v in acc.items() if v})
        return Matrix(self.nrows, other.ncols, out)

    def apply(self, vec: dict[int, Scalar]) -> dict[int, Scalar]:
        """Matrix times a sparse column vector given as {index: value}."""
        out: dict[int, Scalar] = {}
        for i, r in enumerate(self.rows):
            s: Scalar = 0
            for j, v in vec.items():
                a = r.get(j)
                if a:
                    s = s + a * v
            if s:
                out[i] = s
        return out

    @property
    def T(self) -> "Matrix":
        rows: list[dict[int, Scalar]] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                rows[j][i] = v
        return Matrix(self.ncols, self.nrows, rows)

    @property
    def H(self) -> "Matrix":
        """Conjugate transpose."""
        rows: list[dict[int, Scalar]] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                rows[j][i] = conj(v)
        return Matrix(self.ncols, self.nrows, rows)

    def conj(self) -> "Matrix":
        return Matrix(self.nrows, self.ncols, [{j: conj(v) for j, v in r.items()} for r in self.rows])

    def kron(self, other: "Matrix") -> "Matrix":
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append({j * other.ncols + l: a * b for j, a in r.items() for l, b in s.items()})
        return Matrix(self.nrows * other.nrows, self.ncols * other.ncols, rows)

    def trace(self) -> Scalar:
        if self.nrows != self.ncols:
            raise ValueError("trace of non-square matrix")
        s: Scalar = 0
        for i, r in enumerate(self.rows):
            s = s + r.get(i, 0)
        return s

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        rows = [dict(a) for a in self.rows]
        for r, b in zip(rows, other.rows):
            for j, v in b.items():
                r[j + self.ncols] = v
        return Matrix(self.nrows, self.ncols + other.ncols, rows)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return Matrix(self.nrows + other.nrows, self.ncols, [dict(r) for r in self.rows + other.rows])

    def block(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        cidx = {c: k for k, c in enumerate(cols)}
        out = []
        for i in rows:
            out.append({cidx[j]: v for j, v in self.rows[i].items() if j in cidx})
        return Matrix(len(rows), len(cols), out)

    def lift(self, order: int) -> "Matrix":
        return Matrix(self.nrows, self.ncols, [{j: lift(v, order) for j, v in r.items()} for r in self.rows])

    def order(self) -> int:
        o = 1
        for r in self.rows:
            for v in r.values():
                o = math.lcm(o, order_of(v))
        return o

    def flatten(self) -> dict[int, Scalar]:
        """Entries as one sparse vector of length nrows*ncols (row major)."""
        return {i * self.ncols + j: v for i, r in enumerate(self.rows) for j, v in r.items()}

    # -- elimination --------------------------------------------------------
    def rref(self) -> tuple[dict[int, dict[int, Scalar]], list[int]]:
        """Pivot rows of the reduced row echelon form, keyed by pivot column."""
        return _rref(self.rows)

    def rank(self) -> int:
        return len(_rref(self.rows)[0])

    def kernel(self) -> "Matrix":
        """Matrix whose columns form a basis of the right kernel."""
        pivots, _ = _rref(self.rows)
        free = [c for c in range(self.ncols) if c not in pivots]
        cols = []
        for f in free:
            vec: dict[int, Scalar] = {f: 1}
            for p, row in pivots.items():
                v = row.get(f)
                if v:
                    vec[p] = -v
            cols.append(vec)
        return Matrix.from_columns(self.ncols, cols)

    def solve(self, rhs: "Matrix") -> "Matrix":
        """Some X with self @ X = rhs; raises ValueError when inconsistent."""
        aug = self.hstack(rhs)
        pivots, _ = _rref(aug.rows)
        if any(p >= self.ncols for p in pivots):
            raise ValueError("inconsistent linear system")
        rows: list[dict[int, Scalar]] = [{} for _ in range(self.ncols)]
        for p, row in pivots.items():
            rows[p] = {j - self.ncols: v for j, v in row.items() if j >= self.ncols}
        return Matrix(self.ncols, rhs.ncols, rows)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        if self.rank() != self.nrows:
            raise ZeroDivisionError("singular matrix")
        return self.solve(Matrix.identity(self.nrows))

    def column_basis(self) -> "Matrix":
        """Subset of columns forming a basis of the column space."""
        _, order = _rref(self.T.rows)
        cols = self.columns()
        return Matrix.from_columns(self.nrows, [cols[i] for i in order])

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [[scalar_to_json(v) for v in r] for r in self.to_lists()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Matrix":
        data = [[scalar_from_json(v) for v in r] for r in obj["entries"]]
        return cls.from_lists(data, ncols=int(obj["cols"])) if data else cls.zeros(int(obj["rows"]), int(obj["cols"]))


def _rref(rows: Iterable[dict[int, Scalar]]) -> tuple[dict[int, dict[int, Scalar]], list[int]]:
    """Incremental sparse RREF.

    Returns the pivot rows keyed by pivot column (pivot entry normalised to 1)
    and the indices of the input rows that contributed a new pivot.
    """
    pivots: dict[int, dict[int, Scalar]] = {}
    used: list[int] = []
    for idx, src in enumerate(rows):
        row = {j: v for j, v in src.items() if v}
        for c in [c for c in row if c in pivots]:
            f = row.get(c)
            if not f:
                continue
            for j, v in pivots[c].items():
                w = row.get(j, 0) - f * v
                if w:
                    row[j] = w
                else:
                    row.pop(j, None)
        if not row:
            continue
        p = min(row)
        inv = _inv(row[p])
        row = {j: v * inv for j, v in row.items()}
        row[p] = 1
        for q, prow in pivots.items():
            f = prow.get(p)
            if f:
                for j, v in row.items():
                    w = prow.get(j, 0) - f * v
                    if w:
                        prow[j] = w
                    else:
                        prow.pop(j, None)
        pivots[p] = row
        used.append(idx)
    return pivots, used


def mat_kernel(m: Matrix) -> list[Matrix]:
    """Basis of the right kernel as a list of column matrices."""
    k = m.kernel()
    return [Matrix.from_columns(m.ncols, [c]) for c in k.columns()]


def vectors_rank(vectors: Iterable[dict[int, Scalar]]) -> int:
    """Rank of a family of sparse vectors."""
    return len(_rref(vectors)[0])


def iter_nonzero(m: Matrix) -> Iterator[tuple[int, int, Scalar]]:
    for i, r in enumerate(m.rows):
        for j, v in r.items():
            if v:
                yield i, j, v
