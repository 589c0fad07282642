"""Command-line interface: ``mfg <group> <command> [options]``.

Exit codes: 0 success, 1 verification failure (counterexample JSON on
stdout), 2 input error (error JSON on stderr).
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Any, Callable

from . import acceptance, ck
from .errors import InputError, MFGError, NotANormalizer, ParseError
from .full_group import (
    apply,
    cocycle_counterexamples,
    cocycles,
    compose,
    invert,
    is_af,
    lemma32_generator,
    lemma33_mover,
    permutation_element,
)
from .orbit_equiv import (
    DEFAULT_BOUNDS,
    DEFAULT_DEPTH,
    conjugate_table,
    golden_mean_example,
    is_uniform_orbit_equivalence,
    round_trip_failures,
    transport_diagonal,
    verify_orbit_cocycles,
)
from .points import sweep
from .serialize import (
    cocycle_data_from,
    dumps,
    element_from,
    load_json,
    phase_from,
    point_from,
    shift_from,
    table_from,
    tailmap_from,
)
from .shift import format_word, parse_word


class Outcome:
    """What a command produced: a JSON payload, optional human text, exit code."""

    def __init__(self, payload: Any, text: str | None = None, code: int = 0):
        self.payload = payload
        self.text = text
        self.code = code


def default_bounds() -> tuple[int, int, int]:
    raw = os.environ.get("MFG_BOUNDS")
    if not raw:
        return (*DEFAULT_BOUNDS, DEFAULT_DEPTH)
    try:
        p, q, d = (int(x) for x in raw.split(","))
    except ValueError:
        raise ParseError(f"MFG_BOUNDS must look like P,Q,D, got {raw!r}") from None
    return _check_bounds((p, q, d))


def _check_bounds(b) -> tuple[int, int, int]:
    if any(x < 1 for x in b):
        raise ParseError("all bounds must be positive")
    return tuple(b)


def _bounds(args) -> tuple[int, int, int]:
    return _check_bounds(args.bounds) if args.bounds else default_bounds()


# -- shift ---------------------------------------------------------------------
def cmd_shift_check_i(args) -> Outcome:
    s = shift_from(load_json(args.matrix))
    ok = s.condition_I
    return Outcome({"condition_I": ok, "transpose_condition_I": s.transpose_condition_I}, str(ok).lower())


def cmd_shift_words(args) -> Outcome:
    s = shift_from(load_json(args.matrix))
    if args.k < 0:
        raise ParseError("-k must be non-negative")
    words = [format_word(w) for w in s.words(args.k)]
    return Outcome({"k": args.k, "count": len(words), "words": words}, "\n".join(words) or "(empty word)")


# -- fg ------------------------------------------------------------------------
def _table(arg, shift=None):
    return table_from(load_json(arg), shift)


def cmd_fg_validate(args) -> Outcome:
    return Outcome(_table(args.table).to_json())


def cmd_fg_apply(args) -> Outcome:
    tau = _table(args.table)
    images = {p: str(apply(tau, point_from(p, tau.shift))) for p in args.point}
    return Outcome(images, "\n".join(f"{p} -> {q}" for p, q in images.items()))


def cmd_fg_compose(args) -> Outcome:
    t1 = _table(args.first)
    t2 = _table(args.second, t1.shift)
    return Outcome(compose(t1, t2).to_json())


def cmd_fg_invert(args) -> Outcome:
    return Outcome(invert(_table(args.table)).to_json())


def cmd_fg_cocycles(args) -> Outcome:
    tau = _table(args.table)
    pair = cocycles(tau)
    p, q, _ = _bounds(args)
    bad = cocycle_counterexamples(tau, pair.k, pair.l, sweep(tau.shift, p, q))
    payload = {"k": pair.k.to_json(), "l": pair.l.to_json(), "counterexamples": [str(x) for x in bad]}
    return Outcome(payload, code=1 if bad else 0)


def cmd_fg_is_af(args) -> Outcome:
    ok = is_af(_table(args.table))
    return Outcome({"is_af": ok}, str(ok).lower())


def cmd_fg_lemma32(args) -> Outcome:
    s = shift_from(load_json(args.matrix))
    return Outcome(lemma32_generator(s, s.check_word(parse_word(args.mu))).to_json())


def cmd_fg_lemma33(args) -> Outcome:
    s = shift_from(load_json(args.matrix))
    return Outcome(lemma33_mover(s, point_from(args.point, s), args.symbol).to_json())


def cmd_fg_perm(args) -> Outcome:
    s = shift_from(load_json(args.matrix))
    raw = load_json(args.perms)
    if not isinstance(raw, dict):
        raise ParseError('permutations are {"i": {"mu": "nu", ...}, ...}')
    try:
        perms = {int(i): {parse_word(a): parse_word(b) for a, b in m.items()} for i, m in raw.items()}
    except (AttributeError, ValueError):
        raise ParseError("malformed permutation map") from None
    return Outcome(permutation_element(s, args.p, perms).to_json())


# -- ck ------------------------------------------------------------------------
def _element(arg, shift=None):
    return element_from(load_json(arg), shift)


def cmd_ck_relations(args) -> Outcome:
    s = shift_from(load_json(args.matrix))
    zero = ck.CKElement.zero(s, args.order)
    gens = {i: ck.generator(s, i, args.order) for i in s.symbols}
    failures = []
    if sum((g * g.adjoint() for g in gens.values()), zero) != ck.CKElement.one(s, args.order):
        failures.append("sum_j S_j S_j^* = 1")
    for i, g in gens.items():
        rhs = sum((ck.CKElement.projection(s, (j,), args.order) for j in s.successors(i)), zero)
        if g.adjoint() * g != rhs:
            failures.append(f"S_{i}^* S_{i} = sum_j A({i},j) S_j S_j^*")
    payload = {"relations": 2, "instances": 1 + s.n, "failures": failures}
    if failures:
        return Outcome(payload, code=1)
    return Outcome(payload, "2 relations verified")


def cmd_ck_normal_form(args) -> Outcome:
    e = ck.normal_form(_element(args.element))
    return Outcome(e.to_json(), repr(e))


def cmd_ck_equals(args) -> Outcome:
    a = _element(args.first)
    b = _element(args.second, a.shift)
    ok = ck.equals(a, b)
    return Outcome({"equal": ok}, str(ok).lower(), 0 if ok else 1)


def cmd_ck_u_from_table(args) -> Outcome:
    u = ck.unitary_from_table(_table(args.table), args.order)
    return Outcome(u.to_json(), repr(u))


def cmd_ck_decompose(args) -> Outcome:
    v = _element(args.element)
    if not ck.is_normalizer(v):
        raise NotANormalizer("element does not normalize the diagonal")
    d, tau = ck.normalizer_decompose(v)
    return Outcome({"phase": d.to_json(), "table": tau.to_json()})


def cmd_ck_expectation(args) -> Outcome:
    e = ck.conditional_expectation(_element(args.element))
    return Outcome(e.to_json(), repr(e))


def cmd_ck_strip_prefix(args) -> Outcome:
    v = _element(args.element)
    if args.n < 0:
        raise ParseError("-n must be non-negative")
    parts = ck.strip_prefix(v, args.n)
    return Outcome({format_word(mu): e.to_json() for mu, e in parts.items()})


def cmd_ck_lambda(args) -> Outcome:
    e = _element(args.element)
    u1 = phase_from(load_json(args.cocycle), e.shift, e.m)
    out = ck.cocycle_automorphism(u1, e)
    return Outcome(out.to_json(), repr(out))


def cmd_ck_solve(args) -> Outcome:
    s = shift_from(load_json(args.matrix))
    u1 = phase_from(load_json(args.cocycle), s, args.order)
    v = ck.solve_coboundary(u1, args.depth)
    if v is None:
        return Outcome({"coboundary": False, "depth": args.depth}, code=1)
    return Outcome({"coboundary": True, "depth": args.depth, "witness": v.to_json()})


# -- oe ------------------------------------------------------------------------
def cmd_oe_example(args) -> Outcome:
    h, data = golden_mean_example()
    return Outcome({"map": h.to_json(), "cocycles": data.to_json()})


def cmd_oe_apply(args) -> Outcome:
    h = tailmap_from(load_json(args.map))
    g = h.inverse() if args.inverse else h
    images = {p: str(g(point_from(p, g.source))) for p in args.point}
    return Outcome(images, "\n".join(f"{p} -> {q}" for p, q in images.items()))


def cmd_oe_verify(args) -> Outcome:
    h = tailmap_from(load_json(args.map))
    p, q, _ = _bounds(args)
    report = round_trip_failures(h, (p, q))
    if args.cocycles:
        data = cocycle_data_from(load_json(args.cocycles), h)
        report += verify_orbit_cocycles(h, data, (p, q), args.powers)
    return Outcome(report, "verified" if not report else None, 1 if report else 0)


def cmd_oe_conjugate(args) -> Outcome:
    h = tailmap_from(load_json(args.map))
    tau = _table(args.table, h.source)
    p, q, d = _bounds(args)
    return Outcome(conjugate_table(h, tau, d, (p, q)).to_json())


def cmd_oe_transport(args) -> Outcome:
    h = tailmap_from(load_json(args.map))
    f = _element(args.element, h.source)
    p, q, d = _bounds(args)
    g = transport_diagonal(h, f, d, (p, q))
    return Outcome(g.to_json(), repr(g))


def cmd_oe_uniform(args) -> Outcome:
    h = tailmap_from(load_json(args.map))
    p, q, _ = _bounds(args)
    report = is_uniform_orbit_equivalence(h, args.k1, args.k2, (p, q))
    return Outcome(report, "uniform" if not report else None, 1 if report else 0)


# -- suite ---------------------------------------------------------------------
def cmd_suite_acceptance(args) -> Outcome:
    p, q, d = _bounds(args)
    lines: list[str] = []
    echo = (lambda s: None) if args.json else lines.append
    results = acceptance.run_all((p, q), d, echo=echo)
    ok = all(r["passed"] for r in results)
    return Outcome(results, "\n".join(lines), 0 if ok else 1)


# -- parser --------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mfg", description="Exact workbench for Markov shifts and Cuntz-Krieger algebras.")
    parser.add_argument("--json", action="store_true", help="print JSON (sorted keys) instead of text")
    groups = parser.add_subparsers(dest="group", required=True)

    def command(group, name: str, fn: Callable, help: str, *, bounds=False):
        p = group.add_parser(name, help=help)
        p.set_defaults(func=fn)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print JSON")
        if bounds:
            p.add_argument("--bounds", type=int, nargs=3, metavar=("P", "Q", "D"), help="preperiod, period and depth bounds")
        return p

    def matrix(p):
        p.add_argument("--matrix", required=True, help="shift name, inline JSON, file path, or - for stdin")

    g = groups.add_parser("shift", help="matrices and words").add_subparsers(dest="command", required=True)
    matrix(command(g, "check-i", cmd_shift_check_i, "decide condition (I)"))
    p = command(g, "words", cmd_shift_words, "list admissible words of length k")
    matrix(p)
    p.add_argument("-k", type=int, required=True)

    g = groups.add_parser("fg", help="prefix-exchange tables").add_subparsers(dest="command", required=True)
    command(g, "validate", cmd_fg_validate, "validate and canonicalize a table").add_argument("table")
    p = command(g, "apply", cmd_fg_apply, "apply a table to points")
    p.add_argument("table")
    p.add_argument("point", nargs="+", help='points like "21|1"')
    p = command(g, "compose", cmd_fg_compose, "first o second")
    p.add_argument("first")
    p.add_argument("second")
    command(g, "invert", cmd_fg_invert, "inverse table").add_argument("table")
    command(g, "cocycles", cmd_fg_cocycles, "orbit cocycles, checked on the sweep", bounds=True).add_argument("table")
    command(g, "is-af", cmd_fg_is_af, "length-preserving test").add_argument("table")
    p = command(g, "gen-lemma32", cmd_fg_lemma32, "element acting as the shift on U_mu")
    matrix(p)
    p.add_argument("--mu", required=True)
    p = command(g, "gen-lemma33", cmd_fg_lemma33, "element moving x to j x")
    matrix(p)
    p.add_argument("--point", required=True)
    p.add_argument("--symbol", type=int, required=True)
    p = command(g, "gen-perm", cmd_fg_perm, "permutation element of length p")
    matrix(p)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--perms", required=True, help='{"i": {"mu": "nu"}}, unlisted words fixed')

    g = groups.add_parser("ck", help="Cuntz-Krieger algebra").add_subparsers(dest="command", required=True)
    p = command(g, "relations", cmd_ck_relations, "verify the defining relations")
    matrix(p)
    p.add_argument("--order", type=int, default=ck.DEFAULT_ORDER, help="cyclotomic order M")
    command(g, "normal-form", cmd_ck_normal_form, "normal form of an element").add_argument("element")
    p = command(g, "equals", cmd_ck_equals, "decide equality (exit 1 when different)")
    p.add_argument("first")
    p.add_argument("second")
    p = command(g, "u-from-table", cmd_ck_u_from_table, "unitary implementing a table")
    p.add_argument("table")
    p.add_argument("--order", type=int, default=ck.DEFAULT_ORDER)
    command(g, "decompose", cmd_ck_decompose, "split a normalizer as phase times u_tau").add_argument("element")
    command(g, "expectation", cmd_ck_expectation, "degree-0 part").add_argument("element")
    p = command(g, "strip-prefix", cmd_ck_strip_prefix, "coefficients E(S_mu^* v) for |mu| = n")
    p.add_argument("element")
    p.add_argument("-n", type=int, required=True)
    p = command(g, "lambda", cmd_ck_lambda, "apply the automorphism of a one-cocycle")
    p.add_argument("element")
    p.add_argument("--cocycle", required=True, help="phase function JSON")
    p = command(g, "solve-coboundary", cmd_ck_solve, "find v with U1 = v phi_A(v^*) (exit 1 if none)")
    matrix(p)
    p.add_argument("--cocycle", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--order", type=int, default=ck.DEFAULT_ORDER)

    g = groups.add_parser("oe", help="orbit equivalences").add_subparsers(dest="command", required=True)
    command(g, "example-golden-mean", cmd_oe_example, "the golden-mean map and its cocycles")
    p = command(g, "apply", cmd_oe_apply, "apply a map to points")
    p.add_argument("--map", required=True, help='TailMap JSON or "golden-mean"')
    p.add_argument("--inverse", action="store_true")
    p.add_argument("point", nargs="+")
    p = command(g, "verify", cmd_oe_verify, "round trip and cocycle identities", bounds=True)
    p.add_argument("--map", required=True)
    p.add_argument("--cocycles", help='cocycle JSON or "golden-mean"')
    p.add_argument("--powers", type=int, default=3)
    p = command(g, "conjugate", cmd_oe_conjugate, "table of h o tau o h^-1", bounds=True)
    p.add_argument("--map", required=True)
    p.add_argument("table")
    p = command(g, "transport", cmd_oe_transport, "f o h^-1 for a diagonal f", bounds=True)
    p.add_argument("--map", required=True)
    p.add_argument("element")
    p = command(g, "uniform", cmd_oe_uniform, "uniform orbit check with constants k1, k2", bounds=True)
    p.add_argument("--map", required=True)
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)

    g = groups.add_parser("suite", help="acceptance suite").add_subparsers(dest="command", required=True)
    command(g, "acceptance", cmd_suite_acceptance, "run every acceptance criterion", bounds=True)
    return parser


def _emit(outcome: Outcome, as_json: bool, out) -> None:
    if as_json or outcome.text is None:
        out.write(dumps(outcome.payload) + "\n")
    elif outcome.text:
        out.write(outcome.text + "\n")


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        outcome = args.func(args)
    except MFGError as exc:
        err.write(dumps({"error": exc.code, "message": str(exc)}) + "\n")
        return 2 if isinstance(exc, InputError) else 1
    except (ValueError, TypeError, KeyError) as exc:
        err.write(dumps({"error": "InvalidInput", "message": str(exc)}) + "\n")
        return 2
    try:
        _emit(outcome, args.json, out)
    except BrokenPipeError:
        pass
    return outcome.code


if __name__ == "__main__":
    sys.exit(main())
