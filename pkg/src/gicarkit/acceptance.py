"""Acceptance suites shared by the test suite and ``gicarkit verify``.

Each suite returns a :class:`VerifyReport` whose checks are listed in a fixed
order.  ``limit`` caps the size parameters of a suite (useful for quick runs);
``None`` means the full acceptance sizes.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import comb
from typing import Any, Callable

from . import algebra, cmodule, diagram, fock, tensorrep, word
from .lincomb import LinComb
from .scalar import Matrix

__all__ = ["Check", "VerifyReport", "SUITES", "run_suite", "run_all"]


@dataclass
class Check:
    identifier: str
    expected: Any
    got: Any
    passed: bool

    def to_json(self) -> dict:
        return {"id": self.identifier, "expected": _plain(self.expected), "got": _plain(self.got), "pass": self.passed}


@dataclass
class VerifyReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0
    budget: float | None = None

    def check(self, identifier: str, expected: Any, got: Any) -> bool:
        ok = expected == got
        self.checks.append(Check(identifier, expected, got, ok))
        return ok

    @property
    def failures(self) -> int:
        return sum(1 for c in self.checks if not c.passed)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def to_json(self, meta: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "checks": [c.to_json() for c in self.checks],
            "totals": {"checks": len(self.checks), "failures": self.failures},
        }
        if meta:
            out["seconds"] = round(self.seconds, 3)
        return out


def _plain(x: Any) -> Any:
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return str(x)


def _cap(default: int, limit: int | None) -> int:
    return default if limit is None else min(default, limit)


# -- 1. counting ---------------------------------------------------------------


def suite_counting(limit: int | None = None) -> VerifyReport:
    rep = VerifyReport("counting", budget=10.0)
    top = _cap(6, limit)
    bad_k, bad_total = [], []
    for m in range(1, top + 1):
        for n in range(m, top + 1):
            for k in range(1, m + 1):
                got = len(diagram.enumerate_diagrams("ann", m, n, k))
                if got != m * comb(n, k) * comb(m - 1, k - 1):
                    bad_k.append((m, n, k, got))
    for m in range(0, top + 1):
        for n in range(0, top + 1):
            if len(diagram.enumerate_diagrams("ann", m, n)) != diagram.count_formula(m, n, kind="ann"):
                bad_total.append((m, n))
    rep.check(f"|AP(m,n;k)| = m C(n,k) C(m-1,k-1), 1<=k<=m<=n<={top}", [], bad_k)
    rep.check(f"|AP(m,n)| matches closed form, m,n<={top}", [], bad_total)
    rows = _cap(8, limit)
    got = [len(diagram.enumerate_diagrams("rect", n, n)) for n in range(rows + 1)]
    rep.check(f"|RP(n,n)| = sum C(n,k)^2, n<={rows}", [comb(2 * n, n) for n in range(rows + 1)], got)
    return rep


# -- 2. standard form ----------------------------------------------------------


def suite_standard_form(limit: int | None = None, samples: int = 10_000, seed: int = 0) -> VerifyReport:
    rep = VerifyReport("standard_form", budget=30.0)
    rng = random.Random(seed)
    size = _cap(6, limit)
    not_idem, not_psi = 0, 0
    for _ in range(samples):
        w = word.random_word(rng, max_size=size, max_len=12)
        s = word.normalize(w)
        if word.normalize(s.as_word()) != s:
            not_idem += 1
        if word.psi(w) != word.psi(s):
            not_psi += 1
    rep.check(f"normalize idempotent on {samples} random words", 0, not_idem)
    rep.check(f"psi(w) = psi(normalize(w)) on {samples} random words", 0, not_psi)
    top = _cap(4, limit)
    bad_diag, bad_word = [], []
    for m in range(top + 1):
        for n in range(top + 1):
            for d in diagram.enumerate_diagrams("ann", m, n):
                if word.psi(word.psi_inverse(d)) != d:
                    bad_diag.append(d.to_json())
            for s in word.enumerate_standard(m, n):
                if word.psi_inverse(word.psi(s)) != s:
                    bad_word.append(str(s))
    rep.check(f"psi . psi_inverse = id on AP(m,n), m,n<={top}", [], bad_diag)
    rep.check(f"psi_inverse . psi = id on standard words, m,n<={top}", [], bad_word)
    return rep


# -- 3. GICAR structure --------------------------------------------------------


def suite_gicar(limit: int | None = None) -> VerifyReport:
    rep = VerifyReport("gicar")
    top = _cap(4, limit)
    rep.check(
        f"dim span GICAR monomials, n=1..{top}",
        [comb(2 * n, n) for n in range(1, top + 1)],
        [fock.span_dimension(n) for n in range(1, top + 1)],
    )
    bad = []
    for n in range(1, top + 1):
        subsets = fock.fock_basis(n)
        projs = {S: fock.minimal_projection_matrix(n, S) for S in subsets}
        total = Matrix.zeros(2**n, 2**n)
        for S, p in projs.items():
            total = total + p
            if p.is_zero():
                bad.append((n, S, "zero"))
            for T, q in projs.items():
                want = p if S == T else Matrix.zeros(2**n, 2**n)
                if p @ q != want:
                    bad.append((n, S, T))
        if total != Matrix.identity(2**n):
            bad.append((n, "sum"))
    rep.check(f"minimal projections orthogonal and complete, n<={top}", [], bad)
    bad = []
    for n in range(1, top + 1):
        images = []
        for S in fock.fock_basis(n):
            w = []
            for i in range(1, n + 1):
                w += [(fock.CRE, i), (fock.ANN, i)] if i in S else [(fock.ANN, i), (fock.CRE, i)]
            img = fock.theta(tuple(w), n)
            if img.is_zero() or img @ img != img:
                bad.append((n, S))
            if any(img == other for other in images):
                bad.append((n, S, "duplicate"))
            images.append(img)
    rep.check(f"theta of minimal projections distinct nonzero idempotents, n<={top}", [], bad)
    rows_n = _cap(8, limit)
    rows = algebra.bratteli(rows_n)
    rep.check(
        f"Bratteli rows are Pascal rows, n<={rows_n}",
        [algebra.pascal_row(n) for n in range(rows_n + 1)],
        [tuple(r.multiplicities) for r in rows],
    )
    rep.check("Bratteli edge multiplicities", {1}, {e[2] for r in rows for e in r.edges})
    return rep


# -- 4. theta / big_theta intertwining -------------------------------------------


def suite_theta(limit: int | None = None) -> VerifyReport:
    rep = VerifyReport("theta")
    top = _cap(4, limit)
    bad = []
    for n in range(1, top + 1):
        basis = [fock.FockVector.basis(n, S) for S in fock.fock_basis(n)]
        for u in basis:
            for v in basis:
                if fock.big_theta(u).inner(fock.big_theta(v)) != u.inner(v):
                    bad.append((n, u.coeffs, v.coeffs))
    rep.check(f"big_theta preserves inner products, n<={top}", [], bad)
    bad = []
    for n in range(1, top + 1):
        mons = fock.gicar_monomials(n)
        images = {w: fock.theta(w, n) for w in mons}
        for x in mons:
            for y in mons:
                if fock.theta(x + fock.adjoint_word(y), n) != images[x] @ images[y].adjoint():
                    bad.append((n, x, y))
    rep.check(f"theta(x y*) = theta(x) theta(y)*, n<={top}", [], bad)
    bad = []
    for n in range(1, top + 1):
        for w in fock.generator_words(n):
            img = fock.theta(w, n)
            op = fock.gicar_element(w, n)
            for col, S in enumerate(fock.fock_basis(n)):
                v = fock.FockVector.basis(n, S)
                lhs = fock.d_action(img, fock.big_theta(v))
                rhs = fock.DVector(n, {T: c for T, c in _column_by_subset(op, col, n).items()})
                if lhs != rhs:
                    bad.append((n, w, S))
    rep.check(f"big_theta(x v) = theta(x) big_theta(v) for f_i, u_i, u_i*, n<={top}", [], bad)
    if top >= 3:
        got = fock.theta("a1 a3*", 3)
        hop12 = diagram.Decorated(diagram.RectDiagram(3, 3, ((1, 2), (2, 3))), frozenset({1, 2}))
        hop13 = diagram.Decorated(diagram.RectDiagram(3, 3, ((1, 3),)), frozenset({1}))
        want = diagram.expand_decorated(LinComb.basis(hop12) - LinComb.basis(hop13))
        rep.check("theta(a1 a3*) two-term combination at n=3", True, got == want)
    return rep


def _column_by_subset(op: Matrix, col: int, n: int) -> dict:
    subsets = fock.fock_basis(n)
    return {subsets[row]: v for row, v in op.column(col).items()}


# -- 5. representation theory of the GICAR algebra ------------------------------


def suite_gicar_reps(limit: int | None = None) -> VerifyReport:
    rep = VerifyReport("gicar_reps")
    top = _cap(4, limit)
    for n in range(1, top + 1):
        rep.check(f"commutant of each particle block is 1-dim, n={n}", [1] * (n + 1),
                  [fock.block_commutant_dimension(n, k) for k in range(n + 1)])
        rep.check(f"regular multiplicities C(n,k), n={n}", [comb(n, k) for k in range(n + 1)],
                  fock.regular_multiplicities(n))
        rep.check(f"branching k-block = (k-1) + k blocks, n={n}", [True] * (n + 1),
                  [fock.branching(n, k)["ok"] for k in range(n + 1)])
    return rep


# -- 6. annular algebra --------------------------------------------------------


def suite_annular(limit: int | None = None) -> VerifyReport:
    rep = VerifyReport("annular")
    top = _cap(4, limit)
    for n in range(top + 1):
        res = algebra.wedderburn_check("ann", n)
        rep.check(f"wedderburn_check(ann, {n}) ok", True, res["ok"])
        want = [(0, 1, 1)] + [(k, k, comb(n, k)) for k in range(1, n + 1)]
        got = [(s["k"], s["copies"], s["size"]) for s in res["summands"]]
        rep.check(f"summand pattern C + sum k M_C(n,k), n={n}", want, got)
        dims = res["dimension"]
        rep.check(f"unit count = enumeration = closed form, n={n}", [dims["formula"]] * 2,
                  [dims["units"], dims["enumerated"]])
    known = {2: 7, 3: 31}
    for n, value in known.items():
        if n <= top:
            rep.check(f"dim AP_{n}", value, len(diagram.enumerate_diagrams("ann", n, n)))
    return rep


# -- 7. irreducible modules ----------------------------------------------------


def suite_modules(limit: int | None = None, trials: int = 20, seed: int = 7) -> VerifyReport:
    rep = VerifyReport("modules")
    k_top, m_top = _cap(3, limit), _cap(6, limit)
    bad_gram, bad_dim, bad_rel = [], [], []
    for kind in ("rect", "ann"):
        for k in range(k_top + 1):
            for r in range(max(k, 1)) if kind == "ann" else [0]:
                mod = cmodule.irr_matrices(cmodule.IrrModuleSpec(kind, k, r), m_top)
                label = f"{kind} k={k} r={r}"
                if any(mod.gram[m] != Matrix.identity(mod.dims[m]) for m in range(m_top + 1)):
                    bad_gram.append(label)
                if mod.dims != [comb(m, k) for m in range(m_top + 1)]:
                    bad_dim.append(label)
                if mod.check_relations():
                    bad_rel.append(label)
    rep.check(f"Gram = identity, k<={k_top}, m<={m_top}", [], bad_gram)
    rep.check(f"dim V_m = C(m,k), k<={k_top}, m<={m_top}", [], bad_dim)
    rep.check("irreducible modules satisfy the defining relations", [], bad_rel)
    rng = random.Random(seed)
    m_max = _cap(5, limit)
    bad = []
    for trial in range(trials):
        kind = rng.choice(["rect", "ann"])
        types = [(k, r) for k in range(k_top + 1) for r in (range(max(k, 1)) if kind == "ann" else [0])]
        expected = {}
        mods = []
        for k, r in rng.sample(types, rng.randint(1, min(3, len(types)))):
            mult = rng.randint(1, 3)
            expected[(k, r)] = mult
            mods += [cmodule.irr_matrices(cmodule.IrrModuleSpec(kind, k, r), m_max)] * mult
        mod = cmodule.direct_sum(mods)
        mod = cmodule.change_basis(mod, [cmodule.random_basis_change(x, rng) for x in mod.dims])
        got = {(s.k, s.r): mult for s, mult in cmodule.decompose(mod)}
        if got != expected:
            bad.append((trial, kind, sorted(expected.items()), sorted(got.items())))
    rep.check(f"decompose inverts direct_sum on {trials} randomized assemblies", [], bad)
    return rep


# -- 8. toy tensor representation ----------------------------------------------


def suite_toy(limit: int | None = None) -> VerifyReport:
    rep = VerifyReport("toy", budget=60.0)
    m_max = _cap(4, limit)
    for name, ok, detail in tensorrep.toy_suite(ds=(1, 2, 3), m_max=m_max, trace_max=m_max):
        rep.checks.append(Check(name, True, ok if ok else detail or ok, ok))
    return rep


# -- 9. cross-module consistency -----------------------------------------------


def suite_consistency(limit: int | None = None) -> VerifyReport:
    rep = VerifyReport("consistency")
    top = _cap(6, limit)
    bad = []
    for m in range(top + 1):
        for n in range(top + 1):
            counts = (
                diagram.count_formula(m, n, kind="ann"),
                len(word.enumerate_standard(m, n)),
                len(diagram.enumerate_diagrams("ann", m, n)),
            )
            if len(set(counts)) != 1:
                bad.append((m, n, counts))
    rep.check(f"count_formula = |standard words| = |AP(m,n)|, m,n<={top}", [], bad)
    k_top, d_top = _cap(4, limit), 3
    bad = []
    for d in range(1, d_top + 1):
        ctx = tensorrep.ToyContext(d)
        for k in range(1, k_top + 1):
            got = tensorrep.uncappable_multiplicities(ctx, k)
            want = {r: tensorrep.necklace_count(k, r, d) for r in range(k)}
            if got != want:
                bad.append((d, k, got, want))
    rep.check(f"toy annular multiplicities = necklace formula, k<={k_top}, d<={d_top}", [], bad)
    return rep


SUITES: dict[str, Callable[[int | None], VerifyReport]] = {
    "counting": suite_counting,
    "standard_form": suite_standard_form,
    "gicar": suite_gicar,
    "theta": suite_theta,
    "gicar_reps": suite_gicar_reps,
    "annular": suite_annular,
    "modules": suite_modules,
    "toy": suite_toy,
    "consistency": suite_consistency,
}


def run_suite(name: str, limit: int | None = None) -> VerifyReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    start = time.perf_counter()
    rep = SUITES[name](limit)
    rep.seconds = time.perf_counter() - start
    return rep


def run_all(limit: int | None = None) -> list[VerifyReport]:
    return [run_suite(name, limit) for name in sorted(SUITES)]
