"""Command-line front end.  Output is deterministic: sorted JSON keys, exact
fractions as "p/q" strings, fixed seeds.  Exit codes: 0 ok, 1 domain error,
2 usage error.  Diagram nodes are numbered from 1 on the command line."""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction

from . import branch, jets, reduce, rootsys, sncombin, trig
from .dunkl import ParamFunction
from .errors import DomainError, InvariantViolation
from .exactalg import MultiPoly, ParamScalar, fraction_str, parse_rational

DEFAULTS = {"window": 24, "dmax": 6, "order": 6, "trials": 20, "seed": 0}


# --- argument types -------------------------------------------------------------------


def _ctype(text):
    try:
        return rootsys.CartanType.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _rational(text):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _param(text):
    if text.strip().lower() in ("symbolic", "k", "k1"):
        return "symbolic"
    return _rational(text)


def _nodes(text):
    if text.strip().lower() in ("", "none", "-"):
        return ()
    try:
        nodes = tuple(sorted({int(x) for x in text.replace(" ", "").split(",")}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"nodes must be comma-separated integers, got {text!r}")
    if any(n < 1 for n in nodes):
        raise argparse.ArgumentTypeError("nodes are numbered from 1")
    return tuple(n - 1 for n in nodes)


# --- serialisation -------------------------------------------------------------------


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return fraction_str(x)
    if isinstance(x, ParamScalar):
        return fraction_str(x.constant()) if x.is_constant() else str(x)
    if isinstance(x, (reduce.Line, MultiPoly, rootsys.CartanType)):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in x]
        return sorted(items, key=str) if isinstance(x, (set, frozenset)) else items
    raise TypeError(f"cannot serialise {type(x).__name__}")


def render_table(data, indent=0) -> str:
    pad = "  " * indent
    if isinstance(data, dict):
        lines = []
        for k in sorted(data):
            v = data[k]
            if isinstance(v, dict) or (isinstance(v, list) and v and isinstance(v[0], (dict, list))):
                lines.append(f"{pad}{k}:")
                lines.append(render_table(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_flat(v)}")
        return "\n".join(lines)
    if isinstance(data, list) and data and isinstance(data[0], (dict, list)):
        if isinstance(data[0], dict):
            return f"\n{pad}-\n".join(render_table(v, indent) for v in data)
        return "\n".join(f"{pad}{_flat(v)}" for v in data)
    return f"{pad}{_flat(data)}"


def _flat(v):
    if isinstance(v, list):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else str(v)


# --- commands ---------------------------------------------------------------------------


def cmd_roots(a):
    rs = rootsys.build(a.type)
    out = {"type": str(a.type), "rank": rs.rank, "degrees": rs.degrees, "degree_source": rs.degree_source,
           "coxeter_number": rs.coxeter_number, "order": rs.order, "num_reflections": rs.num_reflections}
    if rs.has_matrices:
        out["cartan_matrix"] = [list(map(int, r)) for r in rs.cartan]
        out["positive_roots"] = [list(r) for r in rs.positive_roots]
        out["highest_root"] = list(rs.highest_root())
    return out


def cmd_group(a):
    rs = rootsys.build(a.type)
    out = {"type": str(a.type), "order": rs.order, "num_reflections": rs.num_reflections}
    if rs.has_matrices:
        classes = {}
        for s in rs.reflections:
            classes[s.length_class] = classes.get(s.length_class, 0) + 1
        out["reflections_by_length"] = classes
        out["length_distribution"] = rootsys.length_distribution(rs)
    return out


def cmd_cuspidal(a):
    res = reduce.cuspidal_numbers(a.type)
    return {"full": [str(d) for d in res.full], "non_coxeter": [str(d) for d in res.non_coxeter]}


def cmd_djo(a):
    fams = reduce.djo_lines(a.type)
    return {"families": [str(f) for f in fams], "window": a.window,
            "lines": [str(x) for x in sorted(reduce.djo_line_set(a.type, a.window))]}


def _param_function(rs, c, c_short=None):
    if c == "symbolic":
        return ParamFunction.symbolic(rs)
    return ParamFunction.make(rs, c, c_short)


def cmd_scan(a):
    rs = rootsys.build(a.type)
    res = reduce.singular_scan(rs, _param_function(rs, a.c, a.c_short), a.dmax)
    return {"dmax": a.dmax, "reducible": res.reducible, "singular_degrees": res.singular_degrees,
            "vectors": {str(r.degree): [str(v) for v in r.vectors] for r in res.reports if r.vectors},
            "conclusive": res.conclusive}


def cmd_scan_symbolic(a):
    rs = rootsys.build(a.type)
    out = {"degree": a.degree,
           "equal_parameter_values": reduce.singular_values_in_degree(rs, a.degree, two_parameter=False)}
    if len({s.length_class for s in rs.reflections}) == 2:
        rep = reduce.singular_values_in_degree(rs, a.degree, two_parameter=True)
        out["lines"] = [str(x) for x in rep.lines]
        out["unfactored"] = rep.unfactored
    return out


def cmd_aspherical(a):
    q = sncombin.q_set(a.n)
    out = {"n": a.n, "q_set": list(q.values), "fda": sncombin.fda_sn(a.n, full=True)}
    if a.recursive:
        s = sncombin.sigma_recursive(a.n)
        out["recursive"] = list(s.values)
        out["recursive_equals_q_set"] = s.values == q.values
    return out


def cmd_mregular(a):
    return {"n": a.n, "m": a.m, "partitions": sncombin.partition_count(a.n),
            "m_regular": sncombin.m_regular_brute(a.n, a.m), "aspherical": sncombin.count_aspherical(a.n, a.m)}


def cmd_supports(a):
    return sncombin.support_count(a.n, a.m)


def cmd_em_bn(a):
    return [{"m": p.m, "l": p.l, "sign": "+" if p.sign > 0 else "-", "c": p.c, "aspherical": p.aspherical}
            for p in sncombin.em_bn_parameters(a.n)]


def cmd_strongly_singular(a):
    return {"convention": a.convention, "values": reduce.strongly_singular(a.type, a.window, a.convention)}


def cmd_branch(a):
    m = branch.restriction_multiplicities(rootsys.build(a.type), a.parabolic)
    return {"parent": m.parent, "parabolic": m.parabolic, "nodes": [n + 1 for n in m.nodes],
            "rows": list(m.row_labels), "columns": list(m.col_labels), "matrix": [list(r) for r in m.matrix]}


def cmd_kz(a):
    res = branch.kz_residue_matrices(rootsys.build(a.type), a.parabolic, a.tau, a.xi)
    return {"multiplicity": res.multiplicity, "notice": res.notice,
            "residues": [{"hyperplane": list(r.hyperplane), "reflections": [list(x) for x in r.reflections],
                          "matrix": r.matrix, "trace": r.trace, "det": r.det} for r in res.residues]}


def cmd_theta(a):
    rs = rootsys.build(a.type)
    rep = jets.verify_theta_relations(rs, a.parabolic, c=_param_function(rs, a.c), N=a.order,
                                      trials=a.trials, seed=a.seed)
    return {"group": rep.group, "parabolic": rep.parabolic, "base_point": list(rep.base_point),
            "order": rep.order, "trials": rep.trials, "seed": rep.seed, "passed": rep.passed,
            "representative_independent": rep.representative_independent,
            "equivariance_preserved": rep.equivariance_preserved,
            "relations": [{"relation": r.name, "verified_below_degree": r.order, "checks": r.checks,
                           "passed": r.passed} for r in rep.relations]}


def cmd_bds(a):
    return [{"deleted": e.deleted, "mark": e.mark, "type": e.label()} for e in rootsys.bds_subsystems(a.type)]


def cmd_trig_locus(a):
    loc = trig.trig_locus(a.type, a.window)
    return {"type": str(a.type), "window": a.window, "num_lines": len(loc.lines),
            "additional": [str(x) for x in loc.additional_sorted()],
            "strata": [s.label() for s in trig.strata(a.type)]}


def cmd_trig_query(a):
    q = trig.is_trig_reducible(a.type, a.k1, a.k2)
    return {"reducible": q.reducible, "witness": q.witness}


# --- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cherednik", description="Exact invariants of rational and trigonometric Cherednik algebras.")
    p.add_argument("--format", choices=["json", "table"], default="table")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=["json", "table"], default=argparse.SUPPRESS)
        sp.set_defaults(func=fn)
        return sp

    def typed(name, fn, help_):
        sp = add(name, fn, help_)
        sp.add_argument("type", type=_ctype)
        return sp

    typed("roots", cmd_roots, "root and degree data")
    typed("group", cmd_group, "group order and reflections")
    typed("cuspidal", cmd_cuspidal, "cuspidal numbers")
    typed("djo", cmd_djo, "closed-form reducibility lines").add_argument("--window", type=int, default=DEFAULTS["window"])
    sp = typed("scan", cmd_scan, "singular vectors at a numeric parameter")
    sp.add_argument("--c", type=_rational, required=True)
    sp.add_argument("--c-short", type=_rational, default=None)
    sp.add_argument("--dmax", type=int, default=DEFAULTS["dmax"])
    typed("scan-symbolic", cmd_scan_symbolic, "parameter values with singular vectors in one degree").add_argument(
        "--degree", type=int, required=True)
    sp = add("aspherical-sn", cmd_aspherical, "aspherical values for S_n")
    sp.add_argument("n", type=int)
    sp.add_argument("--recursive", action="store_true")
    for name, fn, help_ in (("mregular", cmd_mregular, "m-regular partition counts"),
                            ("supports", cmd_supports, "number of possible supports")):
        sp = add(name, fn, help_)
        sp.add_argument("n", type=int)
        sp.add_argument("m", type=int)
    add("em-bn", cmd_em_bn, "B_n example parameters").add_argument("n", type=int)
    sp = typed("strongly-singular", cmd_strongly_singular, "strongly singular values")
    sp.add_argument("--window", type=_rational, default=Fraction(1))
    sp.add_argument("--convention", choices=sorted(reduce.CONVENTIONS), default="inclusive")
    typed("branch", cmd_branch, "restriction multiplicities").add_argument("--parabolic", type=_nodes, required=True)
    sp = typed("kz-residues", cmd_kz, "partial KZ residues")
    sp.add_argument("--parabolic", type=_nodes, required=True)
    sp.add_argument("--tau", required=True)
    sp.add_argument("--xi", required=True)
    sp = typed("theta-check", cmd_theta, "jet-level check of the completion map")
    sp.add_argument("--parabolic", type=_nodes, required=True)
    sp.add_argument("--order", type=int, default=DEFAULTS["order"])
    sp.add_argument("--trials", type=int, default=DEFAULTS["trials"])
    sp.add_argument("--seed", type=int, default=DEFAULTS["seed"])
    sp.add_argument("--c", type=_param, default=Fraction(1, 3))
    typed("bds", cmd_bds, "one-vertex deletions of the extended diagram")
    typed("trig-locus", cmd_trig_locus, "trigonometric reducibility lines").add_argument(
        "--window", type=int, default=DEFAULTS["window"])
    sp = typed("trig-query", cmd_trig_query, "is (k1, k2) on the trigonometric locus")
    sp.add_argument("--k1", type=_rational, required=True)
    sp.add_argument("--k2", type=_rational, default=None)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        data = jsonable(args.func(args))
    except (DomainError, InvariantViolation) as exc:
        kind = "domain error" if isinstance(exc, DomainError) else "invariant violated"
        print(f"{kind}: {exc}", file=err)
        return 1
    if args.format == "json":
        print(json.dumps(data, sort_keys=True, separators=(",", ":")), file=out)
    else:
        print(render_table(data), file=out)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
