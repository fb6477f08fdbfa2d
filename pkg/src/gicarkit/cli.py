"""Command-line front end for gicarkit.

Every subcommand writes canonical JSON by default (sorted keys, two-space
indent) or a short text rendering with ``--text``.  Bratteli diagrams can also
be written as DOT.  Errors produce one line on stderr and exit status 2.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Any, Sequence

from . import __version__, acceptance, algebra, cmodule, diagram, fock, tensorrep, word
from .lincomb import LinComb
from .scalar import Cyc, Matrix, scalar_to_json

DEFAULT_CAP = 8


class CliError(Exception):
    """A user-facing error reported as a single line."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # one-line diagnostics instead of usage dumps
        raise CliError(message)


def size_cap() -> int:
    raw = os.environ.get("GICARKIT_MAX", str(DEFAULT_CAP))
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"GICARKIT_MAX must be an integer, got {raw!r}") from None


def _check_size(*sizes: int) -> None:
    cap = size_cap()
    if max(sizes, default=0) > cap:
        raise CliError(f"size {max(sizes)} exceeds the cap {cap} (raise GICARKIT_MAX to allow it)")


def _load_json(text: str) -> Any:
    """Parse inline JSON, ``@path`` or ``-`` for stdin."""
    if text == "-":
        text = sys.stdin.read()
    elif text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed JSON: {exc}") from None


def _scalar_text(x) -> str:
    return str(x)


def _comb_text(c: LinComb) -> str:
    if c.is_zero():
        return "0"
    parts = [f"({_scalar_text(v)}) {_key_text(k)}" for k, v in c.items()]
    return "\n".join(sorted(parts))


def _key_text(k) -> str:
    if hasattr(k, "to_json"):
        return json.dumps(k.to_json(), sort_keys=True)
    return str(k)


def _matrix_text(m: Matrix) -> str:
    return "\n".join(" ".join(_scalar_text(v) for v in row) for row in m.to_lists())


# -- subcommands ---------------------------------------------------------------
# Each handler returns (json_payload, text_rendering, exit_status).


def cmd_compose(args):
    first = diagram.diagram_from_json(_load_json(args.first))
    second = diagram.diagram_from_json(_load_json(args.then))
    if isinstance(first, diagram.Decorated) or isinstance(second, diagram.Decorated):
        f = first if isinstance(first, diagram.Decorated) else diagram.plain(first)
        g = second if isinstance(second, diagram.Decorated) else diagram.plain(second)
        out = diagram.compose_decorated(f, g)
        payload = None if out is None else out.to_json()
    else:
        payload = diagram.compose(first, second).to_json()
    return payload, "0" if payload is None else json.dumps(payload, sort_keys=True), 0


def cmd_enumerate(args):
    _check_size(args.m, args.n)
    items = diagram.enumerate_diagrams(args.kind, args.m, args.n, args.k)
    payload = [d.to_json() for d in items]
    return payload, "\n".join(json.dumps(p, sort_keys=True) for p in payload), 0


def cmd_count(args):
    value = diagram.count_formula(args.m, args.n, args.k, kind=args.kind)
    if args.check:
        _check_size(args.m, args.n)
        found = len(diagram.enumerate_diagrams(args.kind, args.m, args.n, args.k))
        if found != value:
            raise CliError(f"enumeration gives {found} but the formula gives {value}")
    return value, str(value), 0


def cmd_normalize(args):
    w = word.parse_word(args.word)
    s = word.normalize(w)
    payload = s.to_json()
    if args.trace:
        payload["trace"] = [str(x) for x in word.rewrite_trace(w)]
    text = "\n".join(payload.get("trace", [])) if args.trace else str(s)
    return payload, text, 0


def cmd_psi(args):
    d = word.psi(word.parse_word(args.word), rect=args.rect)
    return d.to_json(), json.dumps(d.to_json(), sort_keys=True), 0


def cmd_psi_inv(args):
    d = diagram.diagram_from_json(_load_json(args.diagram))
    if isinstance(d, diagram.Decorated):
        raise CliError("psi-inv takes a plain diagram")
    s = word.psi_inverse(d)
    return s.to_json(), str(s), 0


def cmd_theta(args):
    _check_size(args.n)
    img = fock.theta(args.word, args.n)
    return img.to_json(), _comb_text(img), 0


def cmd_fock_matrix(args):
    _check_size(args.n)
    mat = fock.gicar_element(args.word, args.n)
    payload = dict(mat.to_json(), basis=[list(S) for S in fock.fock_basis(args.n)])
    return payload, _matrix_text(mat), 0


def cmd_wedderburn(args):
    _check_size(args.n)
    rep = algebra.wedderburn_check(args.kind, args.n)
    lines = [f"{args.kind} n={args.n}: {'ok' if rep['ok'] else 'FAILED'}"]
    lines += [f"  k={s['k']}: {s['copies']} x M_{s['size']}" for s in rep["summands"]]
    lines += [f"  {name}: {'pass' if v else 'FAIL'}" for name, v in rep["checks"].items()]
    return rep, "\n".join(lines), 0 if rep["ok"] else 1


def cmd_bratteli(args):
    _check_size(args.max)
    rows = algebra.bratteli(args.max)
    if args.dot is not None:
        dot = algebra.bratteli_dot(rows)
        if args.dot == "-":
            return None, dot.rstrip("\n"), 0
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
    payload = [{"level": r.level, "multiplicities": list(r.multiplicities), "edges": [list(e) for e in r.edges]} for r in rows]
    text = "\n".join(" ".join(map(str, r.multiplicities)) for r in rows)
    return payload, text, 0


def _omega_to_r(kind: str, k: int, omega: str | None, r: int | None) -> int:
    if kind == "rect":
        return 0
    if r is not None:
        return r
    if omega is None or omega == "1":
        return 0
    if omega == "-1":
        if k % 2:
            raise CliError(f"-1 is not a rotation eigenvalue at weight {k}")
        return k // 2
    for prefix in ("zeta^", "z^"):
        if omega.startswith(prefix):
            return int(omega[len(prefix):]) % max(k, 1)
    raise CliError(f"cannot read eigenvalue {omega!r}; use 1, -1 or zeta^r")


def cmd_irr(args):
    _check_size(args.mmax)
    r = _omega_to_r(args.kind, args.k, args.omega, args.r)
    mod = cmodule.irr_matrices(cmodule.IrrModuleSpec(args.kind, args.k, r), args.mmax)
    payload = dict(mod.to_json(), irreducible=cmodule.IrrModuleSpec(args.kind, args.k, r).to_json())
    return payload, f"{cmodule.IrrModuleSpec(args.kind, args.k, r).label()} dims {mod.dims}", 0


def cmd_decompose(args):
    try:
        mod = cmodule.SequenceModule.from_json(_load_json(args.module))
    except (KeyError, TypeError) as exc:
        raise CliError(f"malformed module bundle: missing {exc}") from None
    _check_size(mod.m_max)
    found = cmodule.decompose(mod)
    payload = [dict(spec.to_json(), multiplicity=mult) for spec, mult in found]
    text = "\n".join(f"{spec.label()} x {mult}" for spec, mult in found)
    return payload, text, 0


def cmd_toy(args):
    if args.d < 0:
        raise CliError("--d must be non-negative")
    _check_size(args.mmax)
    ctx = tensorrep.ToyContext(args.d)
    if args.action == "trace":
        pattern = algebra.ProjectionPattern.parse(args.pattern)
        _check_size(pattern.n)
        value = tensorrep.projection_trace(ctx, pattern)
        return scalar_to_json(value), str(value), 0
    if args.action == "report":
        rep = tensorrep.annular_degeneracy_report(ctx, args.mmax, args.kind)
        text = "\n".join(
            f"k={row['k']}" + (f" r={row['r']}" if "r" in row else "") + f": {row['multiplicity']}"
            for row in rep["multiplicities"]
        )
        return rep, text, 0 if rep["ok"] else 1
    if args.d < 1:
        raise CliError("the identity suite needs --d >= 1")
    results = tensorrep.toy_suite(ds=(args.d,), m_max=args.mmax, trace_max=args.mmax)
    payload = [{"id": name, "pass": ok, "detail": detail} for name, ok, detail in results]
    text = "\n".join(f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok, _ in results)
    return payload, text, 0 if all(ok for _, ok, _ in results) else 1


def cmd_verify(args):
    names = sorted(acceptance.SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        try:
            reports.append(acceptance.run_suite(name, args.max))
        except KeyError as exc:
            raise CliError(exc.args[0]) from None
    failures = sum(r.failures for r in reports)
    payload = {
        "suites": [r.to_json(meta=args.meta) for r in reports],
        "totals": {"checks": sum(len(r.checks) for r in reports), "failures": failures},
    }
    lines = []
    for r in reports:
        lines += [f"{'PASS' if c.passed else 'FAIL'}  {r.suite}: {c.identifier}" for c in r.checks]
    lines.append(f"{payload['totals']['checks']} checks, {failures} failures")
    return payload, "\n".join(lines), 0 if failures == 0 else 1


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="text", action="store_false", default=False, help="JSON output (default)")
    fmt.add_argument("--text", dest="text", action="store_true", help="plain text output")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--meta", action="store_true", help="wrap output with version and timing")

    parser = _Parser(prog="gicarkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"gicarkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, handler, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("compose", cmd_compose, "compose two diagrams (first, then second)")
    p.add_argument("first", help="diagram JSON, @file or -")
    p.add_argument("then", help="diagram JSON applied after the first")

    for name, handler, help_text in (("enumerate", cmd_enumerate, "list diagrams"), ("count", cmd_count, "count diagrams")):
        p = add(name, handler, help_text)
        p.add_argument("--kind", choices=["rect", "ann"], default="ann")
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, default=None, help="number of through strings")
        if name == "count":
            p.add_argument("--check", action="store_true", help="cross-check against enumeration")

    p = add("normalize", cmd_normalize, "rewrite a word to standard form")
    p.add_argument("word", help='e.g. "a3 a1 t^2 a*2 a*4 @5"')
    p.add_argument("--trace", action="store_true", help="include every rewriting step")

    p = add("psi", cmd_psi, "diagram of a word")
    p.add_argument("word")
    p.add_argument("--rect", action="store_true", help="return a rectangular diagram")

    p = add("psi-inv", cmd_psi_inv, "standard word of a diagram")
    p.add_argument("diagram", help="diagram JSON, @file or -")

    for name, handler, help_text in (("theta", cmd_theta, "diagram image of a Fock word"), ("fock-matrix", cmd_fock_matrix, "Fock-space matrix of a word")):
        p = add(name, handler, help_text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--word", required=True, help='e.g. "a1 a3*"')

    p = add("wedderburn", cmd_wedderburn, "verify the matrix-unit system")
    p.add_argument("--kind", choices=["rect", "ann"], default="ann")
    p.add_argument("--n", type=int, required=True)

    p = add("bratteli", cmd_bratteli, "Bratteli diagram of the tower")
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--dot", metavar="FILE", help="write DOT to FILE (- for stdout)")

    p = add("irr", cmd_irr, "generator matrices of an irreducible module")
    p.add_argument("--kind", choices=["rect", "ann"], default="ann")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--omega", help="rotation eigenvalue: 1, -1 or zeta^r")
    p.add_argument("--r", type=int, help="rotation eigenvalue as an exponent of zeta_k")
    p.add_argument("--mmax", type=int, default=4)

    p = add("decompose", cmd_decompose, "decompose a module bundle into irreducibles")
    p.add_argument("module", help="module JSON, @file or -")

    p = add("toy", cmd_toy, "tensor-power representation")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--mmax", type=int, default=4)
    p.add_argument("action", choices=["verify", "trace", "report"])
    p.add_argument("--pattern", default="d", help="minimal projection pattern for trace, e.g. bdd")
    p.add_argument("--kind", choices=["rect", "ann"], default="ann", help="module kind for report")

    p = add("verify", cmd_verify, "run acceptance suites")
    p.add_argument("--suite", default="all", help=f"one of: all, {', '.join(sorted(acceptance.SUITES))}")
    p.add_argument("--max", type=int, default=None, help="cap on suite size parameters")
    return parser


def _to_jsonable(x: Any) -> Any:
    if isinstance(x, (Cyc,)):
        return x.to_json()
    if hasattr(x, "numerator") and not isinstance(x, (int, bool)):
        return scalar_to_json(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        start = time.perf_counter()
        payload, text, status = args.handler(args)
        if args.text or (args.command == "bratteli" and payload is None):
            out = text
        else:
            if args.meta:
                payload = {"result": payload, "meta": {"version": __version__, "seconds": round(time.perf_counter() - start, 3)}}
            out = json.dumps(payload, sort_keys=True, indent=2, default=_to_jsonable)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(out + "\n")
        else:
            sys.stdout.write(out + "\n")
        return status
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    except Exception as exc:  # noqa: BLE001 - every failure becomes one diagnostic line
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        sys.stderr.write(f"gicarkit: error: {msg}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
