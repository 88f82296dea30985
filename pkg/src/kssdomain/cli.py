"""Command-line interface.

Exit codes: 0 success, 2 malformed input, 3 model validation failure,
4 degenerate request (5 if an internal cross-check fails).  Errors are
reported as JSON on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import chambers as ch
from . import polytope as poly
from . import svg, toric
from .domains import ValuationTable, delta_at, kss_domain, lc_polytope
from .errors import InputError, KssError, ModelValidationError
from .exact import format_rat, qvec, unit
from .io import dumps, load_family, load_model
from .oracle import grid_oracle
from .polytope import Halfspace
from .toric import PairModel


def parse_point(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    return qvec(part for part in text.split(","))


def _require_toric(model, command: str) -> PairModel:
    if not isinstance(model, PairModel):
        raise InputError(f"'{command}' needs a toric model")
    return model


def cmd_validate(args):
    m = load_model(args.model)
    if isinstance(m, ValuationTable):
        return {"valid": True, "kind": "table", "name": m.name, "k": m.k, "rows": len(m.rows), "certified": m.certified}
    X = m.base
    return {
        "valid": True,
        "kind": "toric",
        "name": m.name,
        "dim": X.d,
        "degree": format_rat(X.degree),
        "anticanonical_polytope": X.P.to_json(),
        "cones": [
            {"vertex": [format_rat(c) for c in cone.vertex], "rays": [X.ray_label(i) for i in cone.rays]}
            for cone in X.cones
        ],
        "divisors": [
            {
                "name": D.name,
                "coeffs": [format_rat(a) for a in D.coeffs],
                "witness": [format_rat(c) for c in D.witness],
                "index": D.index,
            }
            for D in m.divisors
        ],
    }


def cmd_invariants(args):
    m = load_model(args.model)
    rows = []
    if isinstance(m, ValuationTable):
        for r in m.rows:
            rows.append({"label": r.label, "A": format_rat(r.A), "S": format_rat(r.S), "T": None, "ord": [format_rat(o) for o in r.ord]})
    else:
        X = m.base
        for i, r in enumerate(X.rays):
            rows.append(
                {
                    "label": X.ray_label(i),
                    "A": format_rat(toric.log_discrepancy(X, r)),
                    "S": format_rat(toric.s_invariant(X, r)),
                    "T": format_rat(toric.t_invariant(X, r)),
                    "ord": [format_rat(toric.div_order(X, D, r)) for D in m.divisors],
                }
            )
    return {"model": m.name, "valuations": rows}


def cmd_delta(args):
    m = load_model(args.model)
    out = delta_at(m, parse_point(args.at)).to_json()
    out["model"] = m.name
    return out


def _slice(p: poly.Polytope, values) -> poly.Polytope:
    """Intersection of ``p`` with ``x_j = values[j-2]`` for ``j >= 2``, projected to ``(x_0, x_1)``."""
    k = p.ambient
    if len(values) != k - 2:
        raise InputError(f"--slice needs {k - 2} values for k = {k}")
    eqs = []
    for j, c in enumerate(values, start=2):
        e = unit(k, j)
        eqs += [Halfspace.geq(e, c), Halfspace.leq(e, c)]
    cut = poly.intersect(p, extra=eqs) if not p.is_empty else p
    hs = []
    for h in cut.halfspaces:
        normal = h.normal[:2]
        rest = sum((a * c for a, c in zip(h.normal[2:], values)), 0)
        hs.append(poly.constraint(normal, h.offset - rest))
    return poly.from_halfspaces(2, hs)


def cmd_domain(args):
    m = load_model(args.model)
    res = kss_domain(m)
    doc = res.to_json()
    if args.svg:
        fig_doc = doc
        if m.k >= 3:
            if args.slice is None:
                raise InputError("SVG for k >= 3 needs --slice")
            sliced = _slice(res.domain, parse_point(args.slice))
            fig_doc = dict(sliced.to_json(), model=m.name, mu=doc["mu"], facet_provenance=[], interval=None)
        elif args.slice:
            raise InputError("--slice only applies when k >= 3")
        Path(args.svg).write_text(svg.render_domain(fig_doc), encoding="utf-8")
    return doc


def cmd_lc(args):
    m = load_model(args.model)
    out = lc_polytope(m).to_json()
    out["model"] = m.name
    return out


def cmd_mu(args):
    m = load_model(args.model)
    res = kss_domain(m)
    return {
        "model": m.name,
        "mu": None if res.mu is None else format_rat(res.mu),
        "gap": None if res.gap is None else format_rat(res.gap),
        "in_E": res.in_E,
    }


def cmd_sm(args):
    m = _require_toric(load_model(args.model), "sm")
    X = m.base
    i = X.ray_index(args.ray)
    r = X.rays[i]
    return {
        "model": m.name,
        "ray": X.ray_label(i),
        "m": args.m,
        "S_m": format_rat(toric.s_m_invariant(X, r, args.m)),
        "S": format_rat(toric.s_invariant(X, r)),
        "lattice_points": len(toric.lattice_points(X.P, args.m)),
    }


def cmd_chambers(args):
    family = load_family(args.family)
    cx = ch.chamber_complex(family)
    doc = cx.to_json()
    if args.svg:
        fig_doc = doc
        if cx.k >= 3:
            if args.slice is None:
                raise InputError("SVG for k >= 3 needs --slice")
            values = parse_point(args.slice)
            chambers = []
            for c in cx.chambers:
                s = _slice(c.closure, values)
                if s.dim == 2:
                    chambers.append({"vertices": s.to_json()["vertices"], "statuses": c.statuses})
            fig_doc = {"k": 2, "walls": [], "chambers": chambers}
        Path(args.svg).write_text(svg.render_chambers(fig_doc), encoding="utf-8")
    return doc


def cmd_crossing(args):
    family = load_family(args.family)
    cx = ch.chamber_complex(family)
    return ch.crossing_report(cx, args.model, parse_point(getattr(args, "from")), parse_point(args.to)).to_json()


def cmd_oracle(args):
    m = load_model(args.model)
    return grid_oracle(m, args.grid).to_json()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kssdomain", description="K-semistable domains of log Fano pairs, computed exactly.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="write JSON here instead of stdout")
        return sp

    sp = add("validate", cmd_validate, "validate a model file")
    sp.add_argument("model")
    sp = add("invariants", cmd_invariants, "per-valuation A, S, T and orders")
    sp.add_argument("model")
    sp = add("delta", cmd_delta, "delta invariant at a coefficient vector")
    sp.add_argument("model")
    sp.add_argument("--at", required=True, help="comma-separated rationals, e.g. 1/4,1/3")
    sp = add("domain", cmd_domain, "K-semistable domain")
    sp.add_argument("model")
    sp.add_argument("--svg")
    sp.add_argument("--slice", help="values of x3..xk for SVG output when k >= 3")
    sp = add("lc", cmd_lc, "log canonical polytope")
    sp.add_argument("model")
    sp = add("mu", cmd_mu, "minimal coefficient mass and its gap to 1")
    sp.add_argument("model")
    sp = add("sm", cmd_sm, "basis-type approximation S_m for one ray")
    sp.add_argument("model")
    sp.add_argument("--ray", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp = add("chambers", cmd_chambers, "chamber decomposition of a family")
    sp.add_argument("family")
    sp.add_argument("--svg")
    sp.add_argument("--slice")
    sp = add("crossing", cmd_crossing, "walls crossed by a segment")
    sp.add_argument("family")
    sp.add_argument("--model", required=True)
    sp.add_argument("--from", required=True)
    sp.add_argument("--to", required=True)
    sp = add("oracle", cmd_oracle, "brute-force grid check of the domain")
    sp.add_argument("model")
    sp.add_argument("--grid", type=int, required=True)
    return p


def _error(exc: Exception) -> dict:
    out = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ModelValidationError):
        out["reason"] = exc.reason
        out["message"] = exc.message
    return out


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        doc = args.func(args)
    except KssError as exc:
        sys.stderr.write(json.dumps(_error(exc), sort_keys=True) + "\n")
        return exc.exit_code
    text = dumps(doc)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
