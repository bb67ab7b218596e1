"""Input documents and the JSON / text form of a report."""

from __future__ import annotations

import json
from typing import Any, Dict, List, Tuple

from ..algebra.field import FunctionField, RatFunc
from ..engine.pipeline import GroupDesc, Options, PipelineError, PPVReport, SemiInvariant
from ..groups.mult import AddGroupDesc, MultGroupDesc
from .parser import parse_ratfunc

SCHEMA_VERSION = "ppvgroup.report/1"
OPTION_KEYS = ("max_theta_order", "finite_order_bound", "lattice_search_bound")


class DocumentError(ValueError):
    pass


def load_input(doc: Dict[str, Any]) -> Tuple[FunctionField, RatFunc, RatFunc, Options]:
    if not isinstance(doc, dict):
        raise DocumentError("input document must be a JSON object")
    params = doc.get("parameters", [])
    if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
        raise DocumentError("'parameters' must be a list of names")
    try:
        field = FunctionField(params)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    eq = doc.get("equation")
    if not isinstance(eq, dict) or not all(isinstance(eq.get(k), str) for k in ("a1", "a0")):
        raise DocumentError("'equation' must hold string fields 'a1' and 'a0'")
    a1 = _expr(eq["a1"], field, "equation.a1")
    a0 = _expr(eq["a0"], field, "equation.a0")
    raw = doc.get("options", {}) or {}
    if not isinstance(raw, dict):
        raise DocumentError("'options' must be an object")
    opts = Options()
    for k, v in raw.items():
        if k in OPTION_KEYS:
            setattr(opts, k, v)
        elif k == "semi_invariants":
            opts.semi_invariants = [_semi(s, field) for s in v]
        elif k == "assume":
            if not isinstance(v, list) or not all(isinstance(s, str) for s in v):
                raise DocumentError("'options.assume' must be a list of strings")
            opts.assume = list(v)
        else:
            raise DocumentError(f"unknown option {k!r}")
    try:
        opts.validate()
    except PipelineError as exc:
        raise DocumentError(str(exc)) from None
    return field, a1, a0, opts


def _expr(text: str, field: FunctionField, where: str) -> RatFunc:
    try:
        return parse_ratfunc(text, field)
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from exc


def _semi(s: Any, field: FunctionField) -> SemiInvariant:
    if not isinstance(s, dict) or not isinstance(s.get("order"), int) or not isinstance(s.get("v"), str):
        raise DocumentError("semi-invariants need 'label', integer 'order' and expression 'v'")
    return SemiInvariant(str(s.get("label", "chi")), s["order"], _expr(s["v"], field, "semi_invariants.v"))


def _s(v: RatFunc) -> str:
    return str(v)


def mult_to_dict(d: MultGroupDesc, symbol: str) -> Dict[str, Any]:
    if d.is_finite:
        return {"kind": "finite", "order": d.order, "witness": _s(d.witness)}
    return {
        "kind": "infinite",
        "relations": [{"poly": str(r.poly),
                       "equation": f"{r.poly.render_applied(symbol)} = 0",
                       "witness": _s(r.witness)} for r in d.relations],
        "dimensions_by_order": list(d.dims),
    }


def add_to_dict(b: AddGroupDesc) -> Dict[str, Any]:
    out: Dict[str, Any] = {"kind": b.kind}
    if b.relations:
        out["relations"] = [str(p) for p in b.relations]
    out["facts"] = list(b.facts)
    return out


def group_to_dict(g: GroupDesc) -> Dict[str, Any]:
    return {"shape": g.shape, "membership": list(g.membership), "relations": list(g.relations)}


def report_to_dict(rep: PPVReport) -> Dict[str, Any]:
    tag = rep.H.case
    H: Dict[str, Any] = {"group": group_to_dict(rep.H.group)}
    if tag.kind == "I":
        H["riccati_solutions"] = [_s(u) for u in tag.solutions]
        H["u"] = _s(tag.u)
        H["A"] = mult_to_dict(rep.H.A, "a")
        H["B"] = add_to_dict(rep.H.B)
    elif tag.kind == "II":
        c2 = tag.quadratic
        H["w2"] = _s(c2.w2)
        H["v"] = _s(c2.v)
        H["phi"] = _s(c2.phi)
        H["A"] = mult_to_dict(rep.H.A, "a")
    elif tag.kind == "III":
        H["finite_group"] = rep.H.finite_group
        H["minimal_polynomial"] = [_s(c) for c in tag.finite.minpoly]
    else:
        H["pi_prime"] = [[_s(c) for c in d] for d in rep.H.pi_prime]
        H["pi_prime_witnesses"] = [_s(f) for f in rep.H.pi_prime_witnesses]
    C = rep.coupling
    data: Dict[str, Any] = {}
    wits: List[str] = []
    if C.kind == "PowerCoupling":
        data = {"k1": C.k1, "k2": C.k2, "lattice": [list(v) for v in C.lattice]}
        wits = [_s(C.witness)]
    elif C.kind in ("MultMultCoupling", "AddMultCoupling"):
        data = {"pairs": [{"p": str(pr.p), "q": str(pr.q), "f": _s(pr.witness)} for pr in C.pairs]}
        wits = [_s(pr.witness) for pr in C.pairs]
        if C.kind == "AddMultCoupling":
            data["eta2"] = _s(C.witness)
    elif C.kind == "DihedralCoupling":
        data = {"k": C.k1}
        wits = [_s(C.witness)]
    elif C.kind == "FiniteCoupling":
        data = {"label": C.label, "k1": C.k1, "k2": C.k2}
        wits = [_s(C.witness)]
    dims = {}
    if rep.H.A is not None and not rep.H.A.is_finite:
        dims["A"] = list(rep.H.A.dims)
    if not rep.D.is_finite:
        dims["D"] = list(rep.D.dims)
    o = rep.options
    return {
        "schema": SCHEMA_VERSION,
        "parameters": list(rep.q.field.params),
        "input": {"a1": _s(rep.a1), "a0": _s(rep.a0)},
        "normalized": {"r1": _s(rep.r1), "r0": _s(rep.r0), "q": _s(rep.q)},
        "case": tag.kind,
        "H": H,
        "D": mult_to_dict(rep.D, "e"),
        "coupling": {"kind": C.kind, "data": data, "witnesses": wits, "skipped": list(C.skipped)},
        "G": group_to_dict(rep.G),
        "assumptions": list(rep.assumptions),
        "completeness": "complete" if rep.complete else "partial",
        "partial_reasons": list(rep.partial_reasons),
        "truncation": {
            "max_theta_order": o.max_theta_order,
            "finite_order_bound": o.finite_order_bound,
            "lattice_search_bound": o.lattice_search_bound,
            "relation_dimensions": dims,
        },
    }


def dumps(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render_report_text(rep: PPVReport) -> str:
    d = report_to_dict(rep)
    out = [f"Case {d['case']}",
           f"r1 = {d['normalized']['r1']}",
           f"r0 = {d['normalized']['r0']}",
           f"q  = {d['normalized']['q']}"]
    H = d["H"]
    if "u" in H:
        out.append(f"u  = {H['u']}")
    for key in ("w2", "v", "finite_group"):
        if key in H:
            out.append(f"{key} = {H[key]}")
    for name, g in (("A", H.get("A")), ("D", d["D"])):
        if g is None:
            continue
        if g["kind"] == "finite":
            out.append(f"{name}: roots of unity of order {g['order']}")
        else:
            out.append(f"{name}: " + ("; ".join(r["equation"] for r in g["relations"]) or "Gm"))
    if "B" in H:
        out.append(f"B: {H['B']['kind']}")
    out.append(f"coupling: {d['coupling']['kind']}")
    out.append("G = " + rep.G.render().replace("\n", "\n    "))
    if d["assumptions"]:
        out.append("assumptions:")
        out += [f"  {a}" for a in d["assumptions"]]
    out.append(f"completeness: {d['completeness']}")
    out += [f"  {r}" for r in d["partial_reasons"]]
    return "\n".join(out) + "\n"
