"""Command-line front end.

Every command produces one document with the keys ``command``, ``inputs``,
``result`` and ``diagnostics`` in that order.  ``--format text`` renders the
same document for people.  Exit codes: 0 success, 2 user or parse error,
3 resource limit, 4 unsupported construct.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from typing import Sequence

from . import __version__
from .blowup import blowup_point_charts, dicritical_probe, transform_form
from .classify import classify_reduced_2d, jet_comparison_probe
from .errors import JetfolError, UserInputError
from .foliation import (
    format_form,
    integrability_check,
    order_criterion_check,
    saturate_form,
    singular_ideal,
    finite_order,
)
from .groebner import step_budget
from .jets import jet_ideal_foliation, jet_ideal_scheme
from .parsing import infer_context, parse_form, parse_ideal, parse_point, parse_polynomial
from .printing import format_point, format_polynomial, format_rational
from .resolve import classification_document, report_render, report_text, resolve_2d, singular_points_2d
from .tangency import full_tangency_up_to, strong_tangency_up_to, weak_tangency


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so usage errors share the exit code of parse errors."""

    def error(self, message):
        raise UserInputError(message)


def _names(args) -> list[str] | None:
    if not args.vars:
        return None
    return [v.strip() for v in args.vars.split(",") if v.strip()]


def _point(args, n: int):
    if getattr(args, "point", None) is None:
        return None
    pt = parse_point(args.point)
    if len(pt) != n:
        raise UserInputError(f"point {args.point} has {len(pt)} coordinates, expected {n}")
    return pt


def _poly_list(ps) -> list[str]:
    return [format_polynomial(p) for p in ps]


def _jet_doc(jet) -> dict:
    return {
        "variables": list(jet.ctx.names),
        "generators": [format_polynomial(p) for _, p in jet.coefficients if p],
        "by_power": {str(k): _poly_list(v) for k, v in sorted(jet.by_power().items()) if any(v)},
    }


# ---------------------------------------------------------------------------
# commands


def cmd_jets(args) -> tuple[dict, dict]:
    if args.kind == "scheme":
        if args.ideal is None:
            raise UserInputError("jets scheme needs --ideal")
        ideal = parse_ideal(args.ideal, variables=_names(args))
        jet = jet_ideal_scheme(ideal, args.order, _point(args, len(ideal.ctx)))
        inputs = {"ideal": _poly_list(ideal.generators)}
    else:
        if args.form is None:
            raise UserInputError("jets foliation needs --form")
        form = parse_form(args.form, variables=_names(args))
        jet = jet_ideal_foliation(form, args.order, _point(args, form.n))
        inputs = {"form": format_form(form)}
    inputs.update(kind=args.kind, order=args.order, point=args.point)
    return inputs, _jet_doc(jet)


def cmd_tangency(args) -> tuple[dict, dict]:
    ctx = infer_context(args.form, [args.ideal], variables=_names(args))
    form = parse_form(args.form, ctx)
    ideal = parse_ideal(args.ideal, ctx)
    if args.mode == "weak":
        v = weak_tangency(ideal, form, args.containment)
    elif args.mode == "strong":
        v = strong_tangency_up_to(ideal, form, args.order, args.containment)
    else:
        v = full_tangency_up_to(ideal, form, args.order, args.containment)
    failure = None
    if v.first_failure is not None:
        f = v.first_failure
        failure = {
            "order": f.order,
            "generator": None if f.generator is None else format_polynomial(f.generator),
            "jet": None if f.jet is None else [[format_rational(c) for c in arc] for arc in f.jet],
            "note": f.note,
        }
    inputs = {"mode": args.mode, "ideal": _poly_list(ideal.generators), "form": format_form(form),
              "order": args.order, "containment": args.containment}
    result = {"mode": v.mode, "result": v.result, "max_order_checked": v.max_order_checked,
              "containment": v.containment, "first_failure": failure}
    return inputs, result


def cmd_classify(args) -> tuple[dict, dict]:
    form = parse_form(args.form, variables=_names(args))
    pt = _point(args, form.n) or (0,) * form.n
    return {"form": format_form(form), "point": format_point(pt)}, classification_document(classify_reduced_2d(form, pt))


def cmd_saturate(args) -> tuple[dict, dict]:
    form = parse_form(args.form, variables=_names(args))
    factor, sat = saturate_form(form)
    return {"form": format_form(form)}, {"factor": format_polynomial(factor), "saturated_form": format_form(sat)}


def cmd_integrable(args) -> tuple[dict, dict]:
    form = parse_form(args.form, variables=_names(args))
    r = integrability_check(form)
    witness = None
    if r.witness is not None:
        i, j, k, c = r.witness
        names = form.ctx.names
        witness = {"component": [names[i], names[j], names[k]], "coefficient": format_polynomial(c)}
    return {"form": format_form(form)}, {"integrable": r.integrable, "witness": witness}


def cmd_singular(args) -> tuple[dict, dict]:
    form = parse_form(args.form, variables=_names(args))
    ideal = singular_ideal(form)
    result = {"ideal": _poly_list(ideal.generators), "rational_points": None, "residual": None}
    if form.n == 2 and saturate_form(form)[0] == 1:
        pts, residual = singular_points_2d(form)
        result["rational_points"] = [format_point(p) for p in pts]
        if any(not g.is_constant() for g in residual.generators):
            result["residual"] = _poly_list(residual.generators)
    return {"form": format_form(form)}, result


def cmd_blowup(args) -> tuple[dict, dict]:
    form = parse_form(args.form, variables=_names(args))
    charts = blowup_point_charts(form.ctx, _point(args, form.n))
    if not 1 <= args.chart <= len(charts):
        raise UserInputError(f"chart must be between 1 and {len(charts)}")
    t = transform_form(form, charts[args.chart - 1])
    inputs = {"form": format_form(form), "point": format_point(t.chart.center), "chart": args.chart}
    result = {
        "substitution": t.chart.describe(),
        "variables": list(t.chart.source.names),
        "total_transform": format_form(t.raw_form),
        "factor": format_polynomial(t.factor),
        "exceptional_multiplicity": t.exceptional_multiplicity,
        "saturated_form": format_form(t.saturated_form),
        "exceptional_invariant": t.exceptional_invariant,
    }
    return inputs, result


def cmd_resolve(args) -> tuple[dict, dict]:
    form = parse_form(args.form, variables=_names(args))
    report = resolve_2d(form, args.max_depth)
    result = report_render(report)
    result["text"] = report_text(report)
    return {"form": format_form(form), "max_depth": args.max_depth}, result


def cmd_probe(args) -> tuple[dict, dict]:
    form = parse_form(args.form, variables=_names(args))
    if args.kind == "dicritical":
        r = dicritical_probe(form, args.max_depth)
        witness = None
        if r.witness is not None:
            witness = [
                {"center": format_point(s.point), "substitution": s.transform.chart.describe(),
                 "saturated_form": format_form(s.transform.saturated_form),
                 "exceptional_invariant": s.transform.exceptional_invariant}
                for s in r.witness
            ]
        inputs = {"kind": args.kind, "form": format_form(form), "max_depth": args.max_depth}
        return inputs, {"dicritical": r.dicritical, "depth_searched": r.depth_searched,
                        "message": r.message, "witness": witness, "skipped": list(r.skipped)}
    if args.t is None:
        raise UserInputError("probe jets-vs-nc needs --t")
    pt = _point(args, form.n)
    c = jet_comparison_probe(form, args.t, args.order, pt)
    inputs = {"kind": args.kind, "form": format_form(form), "t": args.t, "order": args.order,
              "point": None if pt is None else format_point(pt)}
    result = {"verdict": c.verdict, "max_order": c.max_order, "first_divergence": c.first_divergence,
              "nc_components": c.nc_components, "matched_components": c.matched_components,
              "per_order": list(c.per_order)}
    return inputs, result


def cmd_check(args) -> tuple[dict, dict]:
    ctx = infer_context(args.form, poly_texts=[args.g], variables=_names(args))
    form = parse_form(args.form, ctx)
    g = parse_polynomial(args.g, ctx)
    pt = _point(args, form.n) or (0,) * form.n
    r = order_criterion_check(form, g, pt)
    inputs = {"check": args.kind, "form": format_form(form), "g": format_polynomial(g), "point": format_point(pt)}
    return inputs, {"holds": r.holds, "order_g": finite_order(r.order_g),
                    "min_order_b": finite_order(r.min_order_b), "point_is_singular": r.point_is_singular}


# ---------------------------------------------------------------------------
# argument parsing and output


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--budget", type=int, default=None, help="cap on Groebner reduction steps")
    common.add_argument("--vars", default=None, help="comma-separated variable order, e.g. x,y")

    p = _Parser(prog="jetfol", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--version", action="version", version=f"jetfol {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("jets", parents=[common], help="jet ideals of schemes and foliations")
    s.add_argument("kind", choices=("scheme", "foliation"))
    s.add_argument("--ideal")
    s.add_argument("--form")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--point")
    s.set_defaults(func=cmd_jets)

    s = sub.add_parser("tangency", parents=[common], help="weak, strong or full tangency")
    s.add_argument("--mode", choices=("weak", "strong", "full"), default="strong")
    s.add_argument("--ideal", required=True)
    s.add_argument("--form", required=True)
    s.add_argument("--order", type=int, default=5)
    s.add_argument("--containment", choices=("scheme", "set"), default="scheme")
    s.set_defaults(func=cmd_tangency)

    s = sub.add_parser("classify", parents=[common], help="classify a planar singular point")
    s.add_argument("--form", required=True)
    s.add_argument("--point")
    s.set_defaults(func=cmd_classify)

    for name, func, text in (
        ("saturate", cmd_saturate, "divide out the coefficient gcd"),
        ("integrable", cmd_integrable, "check the integrability condition"),
        ("singular", cmd_singular, "singular ideal and rational singular points"),
    ):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("--form", required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("blowup", parents=[common], help="transform a form through one blow-up chart")
    s.add_argument("--form", required=True)
    s.add_argument("--point")
    s.add_argument("--chart", type=int, default=1, help="1-based index of the kept coordinate")
    s.set_defaults(func=cmd_blowup)

    s = sub.add_parser("resolve", parents=[common], help="bounded resolution of a planar foliation")
    s.add_argument("--form", required=True)
    s.add_argument("--max-depth", type=int, default=6)
    s.set_defaults(func=cmd_resolve)

    s = sub.add_parser("probe", parents=[common], help="dicriticality and jet comparison probes")
    s.add_argument("kind", choices=("dicritical", "jets-vs-nc"))
    s.add_argument("--form", required=True)
    s.add_argument("--max-depth", type=int, default=3)
    s.add_argument("--t", type=int)
    s.add_argument("--order", type=int, default=5)
    s.add_argument("--point")
    s.set_defaults(func=cmd_probe)

    s = sub.add_parser("check", parents=[common], help="pointwise checks")
    s.add_argument("kind", choices=("order-criterion",))
    s.add_argument("--form", required=True)
    s.add_argument("--g", required=True)
    s.add_argument("--point")
    s.set_defaults(func=cmd_check)
    return p


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _text(doc: dict) -> str:
    result = doc["result"]
    lines = [f"command: {doc['command']}"]
    if isinstance(result, dict) and "text" in result:
        lines.append(result["text"])
    elif result is not None:
        for k, v in result.items():
            lines.append(f"{k}: {json.dumps(v) if isinstance(v, (dict, list)) else v}")
    for d in doc["diagnostics"]:
        lines.append(f"{d['level']}: {d['message']}")
    return "\n".join(lines)


def run(argv: Sequence[str] | None = None) -> tuple[int, dict, str]:
    """Execute a command; returns (exit code, document, output format)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "text" if "--format=text" in argv or "text" in argv[1:] and argv[argv.index("text") - 1] == "--format" else "json"
    command = next((a for a in argv if not a.startswith("-")), None)
    doc = {"command": command, "inputs": None, "result": None, "diagnostics": []}
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        doc["command"] = args.command + (f" {args.kind}" if hasattr(args, "kind") else "")
        if args.budget is not None and args.budget < 1:
            raise UserInputError("budget must be positive")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            if args.budget is not None:
                with step_budget(args.budget):
                    inputs, result = args.func(args)
            else:
                inputs, result = args.func(args)
        doc["inputs"] = inputs
        doc["result"] = result
        doc["diagnostics"] = [{"level": "warning", "kind": w.category.__name__, "message": str(w.message)} for w in caught]
        return 0, _jsonable(doc), fmt
    except JetfolError as exc:
        doc["diagnostics"].append({"level": "error", "kind": type(exc).__name__, "message": str(exc)})
        return exc.exit_code, _jsonable(doc), fmt


def main(argv: Sequence[str] | None = None) -> int:
    code, doc, fmt = run(argv)
    if fmt == "text":
        print(_text(doc), file=sys.stdout if code == 0 else sys.stderr)
    else:
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    return code


if __name__ == "__main__":
    sys.exit(main())
