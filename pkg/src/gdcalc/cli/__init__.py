"""Command-line surface: document transforms, identity checks, verify.

Exit codes: 0 success (or all checks passed), 1 a check failed (identity
violation, twisted-check false, no primitive, not gauge-equivalent),
2 malformed input (parse or schema error; message names the line).
All successful outputs are byte-deterministic for fixed inputs.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional, Sequence

from .. import _fastsweep as fs
from ..chevalley import evaluate, phi
from ..deform import ArtinSeries, GaugeParam, defect_series, gauge_equivalent, gauge_flow, mc_solve, series_make
from ..exactcore import VarContext, poly_add
from ..hochschild import (
    brace,
    cup,
    delta_primitive,
    gerstenhaber,
    hkr,
    hoch_delta,
    i_func_hoch,
)
from ..polyvec import (
    contract,
    d_form,
    form_wedge,
    i_func_mv,
    mv_make,
    schouten,
    wedge_mv,
)
from ..twistcheck import NotClosedError, is_twisted_poisson, make_twisted, mc_defect
from . import suites
from .docfmt import (
    CochainSpec,
    Document,
    ParseError,
    doc_form,
    doc_multidiffop,
    doc_multivector,
    doc_polynomial,
    doc_series,
    parse_document,
    serialize_document,
)

__all__ = ["main"]


class _CliError(Exception):
    """Schema-level problem outside the parser; exits with code 2."""


def _read_doc(path: str) -> Document:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise _CliError(f"{path}: {exc.strerror or exc}") from None
    try:
        return parse_document(text)
    except ParseError as exc:
        raise _CliError(f"{path}: {exc}") from None


def _want(doc: Document, kind: str, path: str) -> Document:
    if doc.kind != kind:
        raise _CliError(f"{path}: expected a {kind} document, found {doc.kind}")
    return doc


def _same_ctx(docs: Sequence[Document], paths: Sequence[str]) -> VarContext:
    ctx = docs[0].ctx
    for d, p in zip(docs[1:], paths[1:]):
        if d.ctx != ctx:
            raise _CliError(f"{p}: context differs from {paths[0]}")
    return ctx


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _term_count(v) -> int:
    return sum(len(p) for p in v.terms.values())


def _problem_fields(doc: Document, path: str, names: Sequence[str]) -> Dict[str, Document]:
    if doc.kind != "problem":
        raise _CliError(f"{path}: expected a problem document")
    fields = doc.payload.fields
    for n in names:
        if n not in fields:
            raise _CliError(f"{path}: problem is missing field {n!r}")
    return fields


def _make_twisted_checked(form_doc: Document, path: str):
    try:
        return make_twisted(form_doc.payload)
    except NotClosedError as exc:
        raise _CliError(f"{path}: {exc}") from None
    except ValueError as exc:
        raise _CliError(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# document transforms


def cmd_poly(args) -> int:
    docs = [_want(_read_doc(p), "polynomial", p) for p in args.files]
    ctx = _same_ctx(docs, args.files)
    total = {}
    for d in docs:
        total = poly_add(total, d.payload)
    _emit(serialize_document(doc_polynomial(ctx, total)))
    return 0


def cmd_wedge(args) -> int:
    docs = [_read_doc(p) for p in args.files]
    _same_ctx(docs, args.files)
    kinds = {d.kind for d in docs}
    if kinds == {"multivector"}:
        acc = docs[0].payload
        for d in docs[1:]:
            acc = wedge_mv(acc, d.payload)
        _emit(serialize_document(doc_multivector(acc)))
    elif kinds == {"form"}:
        acc = docs[0].payload
        for d in docs[1:]:
            acc = form_wedge(acc, d.payload)
        _emit(serialize_document(doc_form(acc)))
    else:
        raise _CliError("wedge needs all-multivector or all-form inputs")
    return 0


def cmd_schouten(args) -> int:
    a = _want(_read_doc(args.a), "multivector", args.a)
    b = _want(_read_doc(args.b), "multivector", args.b)
    _same_ctx([a, b], [args.a, args.b])
    _emit(serialize_document(doc_multivector(schouten(a.payload, b.payload))))
    return 0


def cmd_d(args) -> int:
    a = _want(_read_doc(args.file), "form", args.file)
    _emit(serialize_document(doc_form(d_form(a.payload))))
    return 0


def cmd_contract(args) -> int:
    a = _want(_read_doc(args.form), "form", args.form)
    v = _want(_read_doc(args.multivector), "multivector", args.multivector)
    _same_ctx([a, v], [args.form, args.multivector])
    try:
        got = contract(a.payload, v.payload)
    except ValueError as exc:
        raise _CliError(str(exc)) from None
    _emit(serialize_document(doc_multivector(got)))
    return 0


def cmd_ia(args) -> int:
    a = _want(_read_doc(args.function), "polynomial", args.function)
    v = _want(_read_doc(args.multivector), "multivector", args.multivector)
    _same_ctx([a, v], [args.function, args.multivector])
    _emit(serialize_document(doc_multivector(i_func_mv(a.payload, v.payload))))
    return 0


def cmd_phi_eval(args) -> int:
    spec_doc = _read_doc(args.spec)
    if spec_doc.kind == "form":
        spec = CochainSpec("phi", len(args.multivectors), spec_doc.payload)
    elif spec_doc.kind == "cochain-spec":
        spec = spec_doc.payload
    else:
        raise _CliError(f"{args.spec}: expected a form or cochain-spec document")
    mv_docs = [_want(_read_doc(p), "multivector", p) for p in args.multivectors]
    _same_ctx([spec_doc] + mv_docs, [args.spec] + list(args.multivectors))
    if spec.tag == "m":
        from ..chevalley import structure_cochain

        c = structure_cochain(spec_doc.ctx)
    else:
        if spec.arity != len(mv_docs):
            raise _CliError(
                f"cochain arity {spec.arity} but {len(mv_docs)} arguments given"
            )
        try:
            c = phi(spec.form, spec.arity)
        except ValueError as exc:
            raise _CliError(str(exc)) from None
    try:
        got = evaluate(c, tuple(d.payload for d in mv_docs))
    except ValueError as exc:
        raise _CliError(str(exc)) from None
    _emit(serialize_document(doc_multivector(got)))
    return 0


# ---------------------------------------------------------------------------
# check commands


def _render_checks(title: str, reports: List[fs.CheckReport], emit: str) -> int:
    failed = [r for r in reports if not r.passed]
    if emit == "json":
        payload = {
            "command": title,
            "checks": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "checked": r.checked,
                    "trivial": r.trivial,
                    "witness": r.witness,
                }
                for r in reports
            ],
            "result": "PASS" if not failed else "FAIL",
        }
        _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        lines = [f"{title} report"]
        for r in reports:
            status = "pass" if r.passed else "FAIL"
            lines.append(
                f"check {r.name}: {status} checked={r.checked} trivial={r.trivial}"
            )
            if not r.passed and r.witness:
                lines.append(f"witness {r.witness}")
        lines.append("result " + ("PASS" if not failed else "FAIL"))
        _emit("\n".join(lines) + "\n")
    return 0 if not failed else 1


def cmd_lemma_check(args) -> int:
    n = args.dim
    if n < 1:
        raise _CliError("--dim must be at least 1")
    ctx = VarContext(tuple(f"x{i+1}" for i in range(n)))
    deg = args.bounds_degree
    fmax = min(3, n)
    reports = [
        fs.lemma_differential(ctx, form_degree_max=fmax, coeff_degree=deg),
        fs.lemma_bracket_vanishes(
            ctx, form_degree_max=fmax, coeff_degree=deg if n <= 3 else 0
        ),
        fs.lemma_pairing_on_vectors(ctx, coeff_degree=deg),
    ]
    return _render_checks("lemma-check", reports, args.emit)


def cmd_linfty_check(args) -> int:
    h = _want(_read_doc(args.form), "form", args.form)
    c = args.bounds_degree
    try:
        reports = [
            fs.linfty_jacobi(h.ctx, h.payload, poly_degree=min(2, c)),
            fs.linfty_mixed(h.ctx, h.payload, poly_degree=min(1, c)),
            fs.linfty_ternary(h.ctx, h.payload, poly_degree=min(0, c)),
        ]
    except ValueError as exc:
        raise _CliError(str(exc)) from None
    return _render_checks("linfty-check", reports, args.emit)


def _twisted_inputs(args) -> tuple:
    if args.pi is None:
        doc = _read_doc(args.problem)
        f = _problem_fields(doc, args.problem, ("h", "pi"))
        h_doc = _want(f["h"], "form", args.problem)
        pi_doc = _want(f["pi"], "multivector", args.problem)
        return h_doc, pi_doc, args.problem
    h_doc = _want(_read_doc(args.problem), "form", args.problem)
    pi_doc = _want(_read_doc(args.pi), "multivector", args.pi)
    _same_ctx([h_doc, pi_doc], [args.problem, args.pi])
    return h_doc, pi_doc, args.problem


def cmd_twisted_check(args) -> int:
    h_doc, pi_doc, path = _twisted_inputs(args)
    s = _make_twisted_checked(h_doc, path)
    try:
        ok = is_twisted_poisson(s, pi_doc.payload)
        terms = _term_count(mc_defect(s, pi_doc.payload))
    except ValueError as exc:
        raise _CliError(str(exc)) from None
    if args.emit == "json":
        payload = {
            "command": "twisted-check",
            "twisted_poisson": ok,
            "defect_terms": terms,
        }
        _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        _emit(
            "twisted-check report\n"
            f"twisted-poisson {str(ok).lower()}\n"
            f"defect-terms {terms}\n"
        )
    return 0 if ok else 1


def _series_problem(args, field: str) -> tuple:
    doc = _read_doc(args.problem)
    f = _problem_fields(doc, args.problem, ("h", field))
    h_doc = _want(f["h"], "form", args.problem)
    s_doc = _want(f[field], "artin-series", args.problem)
    return doc, h_doc, s_doc


def cmd_mc_defect(args) -> int:
    doc, h_doc, s_doc = _series_problem(args, "series")
    s = _make_twisted_checked(h_doc, args.problem)
    try:
        d = defect_series(s, s_doc.payload)
    except ValueError as exc:
        raise _CliError(str(exc)) from None
    counts = {k: _term_count(v) for k, v in sorted(d.items())}
    all_zero = all(c == 0 for c in counts.values())
    if args.emit == "json":
        payload = {
            "command": "mc-defect",
            "truncation": s_doc.payload.ring.truncation,
            "order_terms": {str(k): v for k, v in counts.items()},
            "zero": all_zero,
        }
        _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        lines = ["mc-defect report", f"truncation {s_doc.payload.ring.truncation}"]
        for k, v in counts.items():
            lines.append(f"order {k} terms {v}")
        lines.append(f"zero {str(all_zero).lower()}")
        _emit("\n".join(lines) + "\n")
    return 0 if all_zero else 1


def cmd_defect_series(args) -> int:
    doc, h_doc, s_doc = _series_problem(args, "series")
    s = _make_twisted_checked(h_doc, args.problem)
    try:
        d = defect_series(s, s_doc.payload)
    except ValueError as exc:
        raise _CliError(str(exc)) from None
    out = series_make(s_doc.payload.ring, {k: v for k, v in d.items()})
    _emit(serialize_document(doc_series(doc.ctx, out)))
    return 0


def cmd_mc_solve(args) -> int:
    doc = _read_doc(args.problem)
    f = _problem_fields(doc, args.problem, ("h", "pi1"))
    h_doc = _want(f["h"], "form", args.problem)
    pi_doc = _want(f["pi1"], "multivector", args.problem)
    s = _make_twisted_checked(h_doc, args.problem)
    try:
        rep = mc_solve(s, pi_doc.payload, args.truncation, poly_degree=args.bounds_degree)
    except ValueError as exc:
        raise _CliError(str(exc)) from None
    if rep.status == "solved":
        d = defect_series(s, rep.solution)
        counts = {k: _term_count(v) for k, v in sorted(d.items())}
        sol_text = serialize_document(doc_series(doc.ctx, rep.solution))
        if args.emit == "json":
            payload = {
                "command": "mc-solve",
                "status": rep.status,
                "poly_degree": rep.poly_degree,
                "residual_terms": {str(k): v for k, v in counts.items()},
                "solution": sol_text,
            }
            _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
        else:
            lines = ["mc-solve report", f"status {rep.status}", f"poly-degree {rep.poly_degree}"]
            for k, v in counts.items():
                lines.append(f"residual-terms order {k}: {v}")
            lines.append("solution")
            _emit("\n".join(lines) + "\n" + sol_text)
        return 0
    res_doc = serialize_document(doc_multivector(rep.residual))
    if args.emit == "json":
        payload = {
            "command": "mc-solve",
            "status": rep.status,
            "poly_degree": rep.poly_degree,
            "obstruction_order": rep.order,
            "residual_terms": {str(rep.order): _term_count(rep.residual)},
            "residual": res_doc,
        }
        _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        lines = [
            "mc-solve report",
            f"status {rep.status}",
            f"poly-degree {rep.poly_degree}",
            f"obstruction-order {rep.order}",
            f"residual-terms order {rep.order}: {_term_count(rep.residual)}",
            "residual",
        ]
        _emit("\n".join(lines) + "\n" + res_doc)
    return 1


def cmd_gauge(args) -> int:
    doc = _read_doc(args.problem)
    f = _problem_fields(doc, args.problem, ("h", "series", "xi"))
    h_doc = _want(f["h"], "form", args.problem)
    s_doc = _want(f["series"], "artin-series", args.problem)
    xi_doc = _want(f["xi"], "artin-series", args.problem)
    if xi_doc.payload.ring != s_doc.payload.ring:
        raise _CliError(f"{args.problem}: xi and series truncations differ")
    s = _make_twisted_checked(h_doc, args.problem)
    try:
        xi = GaugeParam(xi_doc.payload.ring, dict(xi_doc.payload.coeffs))
        moved = gauge_flow(s, s_doc.payload, xi)
    except ValueError as exc:
        raise _CliError(str(exc)) from None
    _emit(serialize_document(doc_series(doc.ctx, moved)))
    return 0


def cmd_gauge_equiv(args) -> int:
    doc = _read_doc(args.problem)
    f = _problem_fields(doc, args.problem, ("a", "b", "h"))
    h_doc = _want(f["h"], "form", args.problem)
    a_doc = _want(f["a"], "artin-series", args.problem)
    b_doc = _want(f["b"], "artin-series", args.problem)
    s = _make_twisted_checked(h_doc, args.problem)
    try:
        rep = gauge_equivalent(
            s, a_doc.payload, b_doc.payload, poly_degree=args.bounds_degree
        )
    except ValueError as exc:
        raise _CliError(str(exc)) from None
    wit_text = None
    if rep.equivalent and rep.witness is not None:
        wit_series = series_make(rep.witness.ring, dict(rep.witness.coeffs))
        wit_text = serialize_document(doc_series(doc.ctx, wit_series))
    if args.emit == "json":
        payload = {
            "command": "gauge-equiv",
            "equivalent": rep.equivalent,
            "poly_degree": rep.poly_degree,
            "witness": wit_text,
        }
        _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        lines = ["gauge-equiv report", f"equivalent {str(rep.equivalent).lower()}"]
        if wit_text is not None:
            lines.append("witness")
            _emit("\n".join(lines) + "\n" + wit_text)
        else:
            _emit("\n".join(lines) + "\n")
    return 0 if rep.equivalent else 1


# ---------------------------------------------------------------------------
# hochschild subcommands


def _read_mdo(path: str):
    return _want(_read_doc(path), "multidiffop", path)


def cmd_hoch(args) -> int:
    sub = args.hoch_cmd
    if sub == "delta":
        d = _read_mdo(args.files[0])
        _emit(serialize_document(doc_multidiffop(hoch_delta(d.payload))))
        return 0
    if sub in ("gb", "cup"):
        a, b = _read_mdo(args.files[0]), _read_mdo(args.files[1])
        _same_ctx([a, b], args.files[:2])
        op = gerstenhaber if sub == "gb" else cup
        _emit(serialize_document(doc_multidiffop(op(a.payload, b.payload))))
        return 0
    if sub == "brace":
        outer = _read_mdo(args.files[0])
        inner = [_read_mdo(p) for p in args.files[1:]]
        if not inner:
            raise _CliError("brace needs at least one insertion operand")
        _same_ctx([outer] + inner, args.files)
        try:
            got = brace(outer.payload, [d.payload for d in inner])
        except ValueError as exc:
            raise _CliError(str(exc)) from None
        _emit(serialize_document(doc_multidiffop(got)))
        return 0
    if sub == "ia":
        a = _want(_read_doc(args.files[0]), "polynomial", args.files[0])
        d = _read_mdo(args.files[1])
        _same_ctx([a, d], args.files[:2])
        _emit(serialize_document(doc_multidiffop(i_func_hoch(a.payload, d.payload))))
        return 0
    if sub == "hkr":
        v = _want(_read_doc(args.files[0]), "multivector", args.files[0])
        _emit(serialize_document(doc_multidiffop(hkr(v.payload))))
        return 0
    if sub == "primitive":
        d = _read_mdo(args.files[0])
        try:
            res = delta_primitive(
                d.payload, poly_degree=args.bounds_degree, op_order=args.bounds_order
            )
        except ValueError as exc:
            raise _CliError(str(exc)) from None
        if args.emit == "json":
            payload = {
                "command": "hoch primitive",
                "found": res.found,
                "rank": res.rank,
                "primitive": serialize_document(doc_multidiffop(res.primitive))
                if res.found
                else None,
                "residual_terms": 0 if res.found else _term_count(res.residual),
            }
            _emit(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
        else:
            lines = ["primitive report", f"found {str(res.found).lower()}", f"rank {res.rank}"]
            if res.found:
                lines.append("primitive")
                _emit(
                    "\n".join(lines)
                    + "\n"
                    + serialize_document(doc_multidiffop(res.primitive))
                )
            else:
                lines.append(f"residual-terms {_term_count(res.residual)}")
                _emit("\n".join(lines) + "\n")
        return 0 if res.found else 1
    raise _CliError(f"unknown hoch subcommand {sub!r}")


def cmd_verify(args) -> int:
    lines = suites.run_verify(args.suite)
    if args.emit == "json":
        _emit(suites.render_json(args.suite, lines))
    else:
        _emit(suites.render_text(args.suite, lines))
    return 0 if all(ln.passed for ln in lines) else 1


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gdcalc",
        description="Exact calculus on polynomial multivector fields: brackets, "
        "contraction cochains, twisted structures, Hochschild operators, and "
        "order-by-order deformation solving.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_emit(sp):
        sp.add_argument("--emit", choices=("text", "json"), default="text")

    sp = sub.add_parser("poly", help="sum polynomial documents")
    sp.add_argument("files", nargs="+")
    sp.set_defaults(fn=cmd_poly)

    sp = sub.add_parser("wedge", help="wedge multivector or form documents")
    sp.add_argument("files", nargs="+")
    sp.set_defaults(fn=cmd_wedge)

    sp = sub.add_parser("schouten", help="bracket of two multivector documents")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.set_defaults(fn=cmd_schouten)

    sp = sub.add_parser("d", help="exterior derivative of a form document")
    sp.add_argument("file")
    sp.set_defaults(fn=cmd_d)

    sp = sub.add_parser("contract", help="pair a one-form against a multivector")
    sp.add_argument("form")
    sp.add_argument("multivector")
    sp.set_defaults(fn=cmd_contract)

    sp = sub.add_parser("ia", help="contract a multivector by a function")
    sp.add_argument("function")
    sp.add_argument("multivector")
    sp.set_defaults(fn=cmd_ia)

    sp = sub.add_parser(
        "phi-eval", help="evaluate the contraction cochain of a form on arguments"
    )
    sp.add_argument("spec", help="form or cochain-spec document")
    sp.add_argument("multivectors", nargs="*")
    sp.set_defaults(fn=cmd_phi_eval)

    sp = sub.add_parser("lemma-check", help="sweep the contraction-cochain identities")
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--bounds-degree", type=int, default=1)
    add_emit(sp)
    sp.set_defaults(fn=cmd_lemma_check)

    sp = sub.add_parser(
        "linfty-check", help="sweep the three homotopy relations for a 3-form"
    )
    sp.add_argument("form")
    sp.add_argument("--bounds-degree", type=int, default=2)
    add_emit(sp)
    sp.set_defaults(fn=cmd_linfty_check)

    sp = sub.add_parser("twisted-check", help="is the bivector twisted-Poisson for H?")
    sp.add_argument("problem", help="problem document with fields h, pi (or a form)")
    sp.add_argument("pi", nargs="?", default=None, help="multivector document")
    add_emit(sp)
    sp.set_defaults(fn=cmd_twisted_check)

    sp = sub.add_parser("mc-defect", help="order-by-order defect of a series")
    sp.add_argument("problem", help="problem document with fields h, series")
    add_emit(sp)
    sp.set_defaults(fn=cmd_mc_defect)

    sp = sub.add_parser("defect-series", help="emit the defect as a series document")
    sp.add_argument("problem", help="problem document with fields h, series")
    sp.set_defaults(fn=cmd_defect_series)

    sp = sub.add_parser("mc-solve", help="extend a bivector to a solution order by order")
    sp.add_argument("problem", help="problem document with fields h, pi1")
    sp.add_argument("--truncation", type=int, default=2)
    sp.add_argument("--bounds-degree", type=int, default=1)
    add_emit(sp)
    sp.set_defaults(fn=cmd_mc_solve)

    sp = sub.add_parser("gauge", help="apply a gauge flow to a series")
    sp.add_argument("problem", help="problem document with fields h, series, xi")
    sp.set_defaults(fn=cmd_gauge)

    sp = sub.add_parser("gauge-equiv", help="search for a gauge taking a to b")
    sp.add_argument("problem", help="problem document with fields a, b, h")
    sp.add_argument("--bounds-degree", type=int, default=1)
    add_emit(sp)
    sp.set_defaults(fn=cmd_gauge_equiv)

    sp = sub.add_parser("hoch", help="Hochschild operator commands")
    hsub = sp.add_subparsers(dest="hoch_cmd", required=True)
    for name, nfiles, helptext in [
        ("delta", 1, "simplicial differential of an operator document"),
        ("gb", 2, "Gerstenhaber bracket of two operator documents"),
        ("cup", 2, "cup product of two operator documents"),
        ("brace", None, "insert operators into the first operand's slots"),
        ("ia", 2, "contract an operator by a function (polynomial doc first)"),
        ("hkr", 1, "alternation embedding of a multivector document"),
        ("primitive", 1, "search for a differential primitive within bounds"),
    ]:
        hp = hsub.add_parser(name, help=helptext)
        if nfiles is None:
            hp.add_argument("files", nargs="+")
        else:
            hp.add_argument("files", nargs=nfiles)
        if name == "primitive":
            hp.add_argument("--bounds-degree", type=int, default=2)
            hp.add_argument("--bounds-order", type=int, default=2)
            add_emit(hp)
        hp.set_defaults(fn=cmd_hoch, hoch_cmd=name)

    sp = sub.add_parser("verify", help="run the identity suites and corpus checks")
    sp.add_argument(
        "--suite",
        choices=("schouten", "lemma", "linfty", "hochschild", "deform", "all"),
        default="all",
    )
    add_emit(sp)
    sp.set_defaults(fn=cmd_verify)

    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
