"""Command-line front end.

Exit codes: 0 success, 2 parse error, 3 math or truncation error, 4 bound
exhaustion in the Saito oracle.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .curve import (CharExponents, NotIrreducibleError, Parametrization, char_exponents, conductor,
                    default_truncation, generic_parametrization, monomial_equation_parametrization,
                    monomial_parametrization, newton_edge, parametrize_equation, puiseux_pairs,
                    semigroup_from_char)
from .exact import BivariatePoly, TruncationError
from .grammar import (ParseError, parse_char, parse_equation, parse_one_form, parse_pairs_char, parse_param,
                      parse_semigroup_char)
from .moduli import classify_rigidity, closed_form_rigid, generic_dimension
from .resolution import ResolutionError, resolve
from .saito import (BoundExhausted, Direction, check_saito_criterion, default_bounds, delta_p_data,
                    foliation_mult_identity,
                    min_saito_valuation, numbered_dual_tree, saito_basis, verify_generic_minimum)

EXIT_OK, EXIT_PARSE, EXIT_MATH, EXIT_BOUND = 0, 2, 3, 4
SCHEMA_VERSION = 1


class UsageError(ValueError):
    pass


# -- serialization -------------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _meta(command: str, args, **extra) -> dict:
    meta = {"tool": "planebranch", "version": __version__, "command": command,
            "schema": f"planebranch/{command}/v{SCHEMA_VERSION}",
            "seed": getattr(args, "seed", None), "truncation": getattr(args, "truncation", None)}
    meta.update(extra)
    return meta


# -- curve sources ---------------------------------------------------------------

def _add_source(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--param", help='parametrization, e.g. "x=t^8; y=t^20+t^30+t^35"')
    g.add_argument("--equation", help='curve equation, e.g. "y^6-x^7+x^4*y^4"')
    g.add_argument("--char", help='characteristic exponents, e.g. "8,20,30,35"')
    g.add_argument("--pairs", help='Puiseux pairs, e.g. "(2,5),(2,15),(2,35)"')
    g.add_argument("--semigroup", help='semigroup generators, e.g. "8,20,50,105"')
    p.add_argument("--seed", type=int, default=0, help="seed for generic coefficients (default 0)")
    p.add_argument("--truncation", type=_positive, default=None, help="series truncation order")
    p.add_argument("--monomial", action="store_true",
                   help="for class sources, use the member with only characteristic terms")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _class_source(args) -> Optional[CharExponents]:
    if args.char is not None:
        return parse_char(args.char)
    if args.pairs is not None:
        return parse_pairs_char(args.pairs)
    if args.semigroup is not None:
        return parse_semigroup_char(args.semigroup)
    return None


def _equation_param(f: BivariatePoly, trunc: Optional[int]) -> Parametrization:
    exact = monomial_equation_parametrization(f)
    if exact is not None and trunc is None:
        return exact
    edge = newton_edge(f)
    if edge is None:
        raise UsageError("equation is not of the form c1*y^a + c2*x^b + (higher weight) with gcd(a,b)=1; "
                         "supply --param instead")
    a, b = edge[0], edge[1]
    if trunc is None:
        trunc = default_truncation(CharExponents(tuple(sorted((a, b))))) if min(a, b) > 1 else max(a, b) + 4
    return parametrize_equation(f, trunc)


def curve_param(args) -> Parametrization:
    c = _class_source(args)
    if c is not None:
        if args.monomial:
            p = monomial_parametrization(c)
            return p if args.truncation is None else p.with_truncation(args.truncation)
        return generic_parametrization(c, args.seed, args.truncation)
    if args.param is not None:
        return parse_param(args.param, args.truncation)
    return _equation_param(parse_equation(args.equation), args.truncation)


def _direction(args) -> Direction:
    name = getattr(args, "direction", "none")
    if name == "custom":
        params = [parse_param(t, args.truncation) for t in (args.direction_param or [])]
        if not 1 <= len(params) <= 2:
            raise UsageError("--direction custom needs one or two --direction-param values")
        return Direction.custom(params)
    if args.direction_param:
        raise UsageError("--direction-param requires --direction custom")
    return Direction.from_name(name)


# -- commands ------------------------------------------------------------------------

def _invariants_of(c: CharExponents) -> dict:
    s = semigroup_from_char(c)
    return {"char_exponents": list(c.betas), "puiseux_pairs": [list(pq) for pq in puiseux_pairs(c)],
            "semigroup": list(s.generators), "conductor": conductor(s), "nu": c.multiplicity,
            "genus": c.genus}


def cmd_invariants(args) -> dict:
    c = _class_source(args)
    if c is None:
        c = char_exponents(curve_param(args))
    out = _invariants_of(c)
    out["meta"] = _meta("invariants", args)
    return out


def _resolution_json(r) -> dict:
    return {
        "N": r.N,
        "steps": [{"index": s.index, "chart": s.chart, "center_divisors": list(s.center_divisors),
                   "strict_mult": s.strict_mult, "reduced_total_mult": s.reduced_total_mult,
                   "translation": s.translation} for s in r.steps],
        "strict_mults": r.strict_mults,
        "reduced_total_mults": r.reduced_total_mults,
        "proximity": r.proximity.tolist(),
        "inverse": r.proximity_inverse.tolist(),
        "intersection": r.intersection.tolist(),
        "dual_edges": [list(e) for e in r.edges],
        "intersection_sign_matches": list(r.sign_matches),
        "curve_attach": r.final_attach,
    }


def cmd_resolve(args) -> dict:
    param = curve_param(args)
    r = resolve(param)
    out = _resolution_json(r)
    out["parametrization"] = str(param)
    out["meta"] = _meta("resolve", args, working_truncation=r.truncation)
    if args.dot:
        _write(args.dot, r.to_dot())
    return out


def cmd_dim(args) -> dict:
    param = curve_param(args)
    r = resolve(param)
    if r.N == 0:
        out = {"N": 0, "reduced_total_mults": [], "sigmas": [], "total": 0, "rigid": True}
    else:
        rep = generic_dimension(r)
        out = {"N": rep.N, "reduced_total_mults": list(rep.reduced_total_mults), "sigmas": list(rep.sigmas),
               "total": rep.total, "rigid": rep.rigid}
    out["char_exponents"] = list(char_exponents(param).betas)
    out["meta"] = _meta("dim", args, working_truncation=r.truncation)
    return out


def _form_json(w) -> dict:
    return {"form": str(w), "valuation": w.valuation()}


def cmd_saito(args) -> dict:
    d = _direction(args)
    bounds = {"degree_bound": args.degree_bound, "jet_order": args.jet_order}
    out: dict = {"direction": d.name()}
    c = _class_source(args)
    if args.generic:
        if c is None:
            raise UsageError("--generic needs a class source (--char, --pairs or --semigroup)")
        seeds = list(range(args.seed, args.seed + args.seeds))
        rep = verify_generic_minimum(c, d, seeds, check_stability=not args.no_stability)
        out.update({"char_exponents": list(c.betas), "expected": rep.expected, "all_match": rep.all_match,
                    "results": rep.results})
        out["meta"] = _meta("saito", args, bounds=bounds, seeds=seeds)
        return out
    if args.equation is not None:
        curve = parse_equation(args.equation)
    elif c is not None and not args.monomial and args.truncation is None:
        curve = _oracle_generic(c, d, args)
    else:
        curve = curve_param(args)
    res = min_saito_valuation(curve, d, args.degree_bound, args.jet_order,
                              check_stability=args.stability)
    out.update({"nu_min": res.nu_min, "nu_S_d": res.nu_S_d, "expected_generic": res.nu_S_d // 2,
                "certificate": str(res.certificate), "route": res.route, "exact": res.exact,
                "cross_check": res.cross_check, "stable": res.stable})
    bounds = {"degree_bound": res.degree_bound, "jet_order": res.jet_order}
    if args.basis_check:
        w1, w2 = (parse_one_form(t) for t in args.basis_check)
        rep = check_saito_criterion(w1, w2, curve, d)
        out["criterion"] = _criterion_json(rep)
    if args.find_basis:
        if not isinstance(curve, BivariatePoly):
            raise UsageError("--find-basis needs --equation")
        b = saito_basis(curve, d)
        out["basis"] = {"forms": [_form_json(w) for w in b.forms], "valuations": list(b.valuations),
                        "criterion": _criterion_json(b.report), "degree_bound": b.degree_bound}
    out["meta"] = _meta("saito", args, bounds=bounds)
    return out


def _oracle_generic(c: CharExponents, d: Direction, args) -> Parametrization:
    """Generic member truncated deep enough for the oracle's jet order."""
    rough = generic_parametrization(c, args.seed)
    M, _ = default_bounds(rough, c.multiplicity + len(d))
    M = max(M, args.jet_order or 0)
    return generic_parametrization(c, args.seed, max(M + c.betas[-1] + 2, rough.truncation_order))


def _criterion_json(rep) -> dict:
    return {"tangent": list(rep.tangent), "nu_wedge": rep.nu_wedge, "nu_S_d": rep.nu_S_d,
            "valuation_ok": rep.valuation_ok, "vanishes": rep.vanishes, "unit": rep.unit,
            "quotient": rep.quotient, "verdict": rep.verdict, "method": rep.method}


def cmd_tree(args) -> dict:
    d = _direction(args)
    param = curve_param(args)
    r = resolve(param)
    data = delta_p_data(r, d)
    tree = numbered_dual_tree(r, d, data.p)
    rep = data.report
    out = {"direction": data.direction, "delta": list(data.delta), "v": list(data.v), "p": list(data.p),
           "properties": {"prop1": [list(t) for t in rep.prop1], "prop1_ok": rep.prop1_ok, "prop2": rep.prop2,
                          "prop3": rep.prop3, "prop3_ok": rep.prop3_ok, "violations": rep.violations,
                          "all_pass": rep.all_pass},
           "tree": {"N": tree.N, "edges": [list(e) for e in tree.edges], "numbering": list(tree.numbering),
                    "rule_numbering": list(tree.rule_numbering),
                    "direction_attach": list(tree.direction_attach), "curve_attach": tree.curve_attach,
                    "self_intersections": list(tree.self_intersections),
                    "last_dicritical": tree.last_dicritical},
           "dot": tree.to_dot()}
    if r.N:
        lhs, rhs, eq = foliation_mult_identity(r, data.delta, data.p)
        out["foliation_identity"] = {"lhs": lhs, "rhs": rhs, "equal": eq}
    out["meta"] = _meta("tree", args, working_truncation=r.truncation)
    if args.dot:
        _write(args.dot, tree.to_dot())
    return out


def cmd_rigid(args) -> dict:
    rows = []
    for e in classify_rigidity(args.max_mult, args.bound, args.seed):
        rows.append({"char_exponents": list(e.char.betas), "semigroup": list(semigroup_from_char(e.char).generators),
                     "dimension": e.dimension, "rigid": e.rigid, "closed_form_rigid": closed_form_rigid(e.char)})
    rigid = [r["char_exponents"] for r in rows if r["rigid"]]
    return {"classes": rows, "rigid": rigid, "count": len(rows),
            "agrees_with_closed_form": all(r["rigid"] == r["closed_form_rigid"] for r in rows),
            "meta": _meta("rigid", args, bounds={"max_mult": args.max_mult, "bound": args.bound})}


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="planebranch", description="Invariants, resolution, moduli dimension "
                                 "and Saito-module valuations of plane branches.")
    ap.add_argument("--version", action="version", version=f"planebranch {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="characteristic exponents, Puiseux pairs, semigroup, conductor")
    _add_source(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("resolve", help="blow-up resolution data")
    _add_source(p)
    p.add_argument("--dot", metavar="FILE", help="write the dual graph in DOT")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("dim", help="generic dimension of the moduli space")
    _add_source(p)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("saito", help="minimal valuation in the Saito module")
    _add_source(p)
    _add_direction(p, ("none", "x", "y", "xy"))
    p.add_argument("--degree-bound", type=_positive, default=None)
    p.add_argument("--jet-order", type=_positive, default=None)
    p.add_argument("--stability", action="store_true", help="rerun with doubled bounds")
    p.add_argument("--generic", action="store_true", help="check generic members of a class")
    p.add_argument("--seeds", type=_positive, default=5, help="number of seeds with --generic")
    p.add_argument("--no-stability", action="store_true", help="skip the doubling check with --generic")
    p.add_argument("--basis-check", nargs=2, metavar=("FORM1", "FORM2"),
                   help='check the Saito criterion for two forms, e.g. "(-7*y)*dx + (6*x)*dy"')
    p.add_argument("--find-basis", action="store_true", help="search a certified polynomial basis")
    p.set_defaults(func=cmd_saito)

    p = sub.add_parser("tree", help="delta sequence, p-vector and numbered dual tree")
    _add_source(p)
    _add_direction(p, ("none", "x", "y", "xy", "custom"))
    p.add_argument("--dot", metavar="FILE", help="write the numbered tree in DOT")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("rigid", help="rigidity classification")
    p.add_argument("--max-mult", type=_positive, required=True)
    p.add_argument("--bound", type=_positive, default=40, help="bound on the largest semigroup generator")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_rigid)
    return ap


def _add_direction(p, choices):
    p.add_argument("--direction", choices=choices, default="none")
    p.add_argument("--direction-param", action="append", metavar="PARAM",
                   help="smooth germ for --direction custom (repeat for two)")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except ParseError as exc:
        _fail(exc, "parse")
        return EXIT_PARSE
    except BoundExhausted as exc:
        _fail(exc, "bound", "raise --degree-bound and --jet-order")
        return EXIT_BOUND
    except (UsageError, ArithmeticError, NotIrreducibleError, ResolutionError, TruncationError,
            ValueError) as exc:
        _fail(exc, "math", "increase --truncation" if isinstance(exc, TruncationError) else None)
        return EXIT_MATH
    sys.stdout.write(dumps(out))
    return EXIT_OK


def _fail(exc: Exception, kind: str, advice: Optional[str] = None):
    payload = {"error": kind, "message": str(exc)}
    if advice:
        payload["advice"] = advice
    if isinstance(exc, ParseError):
        payload["position"] = exc.position
    sys.stderr.write(dumps(payload))


if __name__ == "__main__":
    sys.exit(main())
