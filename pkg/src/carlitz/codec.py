"""JSON encodings for elements, series, presentations, and reports.

Element encoding (the wire format everything else builds on):

    {"p": 3, "m": 1, "e": 1, "ram": 2, "prec": 200|null,
     "coeffs": [[exp, [f_p coords...]], ...]}      # sorted by exp ascending

EXACT elements carry "prec": null.  Series add {"t_deg", "coeffs", "tail"};
presentation files are {"name", "r", "phi", "phi_den", "psi", "provenance"}.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List, Optional

from .fields import EXACT, FieldConfig, LocalElement, NormInfo, _INF
from .motives import MotivePresentation, TPolyMatrix
from .relations import (Certification, EvaluatedRelation, FqRat, GammaEntry,
                        RelationReport, RelationVector, SearchBounds)
from .series import (AffineTail, MinTail, OmegaTail, ProductTail, ScaledTail,
                     ShiftedTail, TailBound, TateSeries, UserTail)
from .tpoly import TPoly


# -- elements ---------------------------------------------------------------

def element_to_json(x: LocalElement) -> Dict[str, Any]:
    cfg = x.config
    R = cfg.residue
    return {
        "p": cfg.p, "m": cfg.m, "e": cfg.e, "ram": cfg.ram,
        "prec": x.prec,
        "coeffs": [[exp, list(R.coords(code))] for exp, code in x.items()],
    }


def element_from_json(data: Dict[str, Any], cfg: FieldConfig) -> LocalElement:
    for key in ("p", "m", "e", "ram"):
        if key in data and data[key] != getattr(cfg, key):
            raise ValueError(f"element {key}={data[key]} does not match config")
    R = cfg.residue
    support = {int(exp): R.from_coords(coords) for exp, coords in data["coeffs"]}
    return LocalElement(cfg, support, data.get("prec", EXACT))


# -- tails --------------------------------------------------------------------

def tail_to_json(tail: Optional[TailBound]) -> Optional[Dict[str, Any]]:
    if tail is None:
        return None
    if isinstance(tail, OmegaTail):
        return {"kind": "OMEGA", "lead": tail.lead, "q": tail.q}
    if isinstance(tail, AffineTail):
        return {"kind": "LALPHA", "base": tail.base, "step": tail.step}
    if isinstance(tail, UserTail):
        return {"kind": "USER", "start": tail.start, "values": tail.values,
                "step": tail.step}
    if isinstance(tail, ScaledTail):
        return {"kind": "PRODUCT", "variant": "scaled", "factor": tail.factor,
                "inner": tail_to_json(tail.inner)}
    if isinstance(tail, ShiftedTail):
        return {"kind": "PRODUCT", "variant": "shifted", "shift": tail.shift,
                "inner": tail_to_json(tail.inner)}
    if isinstance(tail, MinTail):
        return {"kind": "PRODUCT", "variant": "min",
                "a": tail_to_json(tail.a), "b": tail_to_json(tail.b)}
    if isinstance(tail, ProductTail):
        return {"kind": "PRODUCT", "variant": "product",
                "floors_a": tail.floors_a, "floors_b": tail.floors_b,
                "tail_a": tail_to_json(tail.tail_a),
                "tail_b": tail_to_json(tail.tail_b)}
    raise TypeError(f"unknown tail type {type(tail).__name__}")


def tail_from_json(data: Optional[Dict[str, Any]]) -> Optional[TailBound]:
    if data is None:
        return None
    kind = data["kind"]
    if kind == "OMEGA":
        return OmegaTail(data["lead"], data["q"])
    if kind == "LALPHA":
        return AffineTail(data["base"], data["step"])
    if kind == "USER":
        return UserTail(data["start"], data["values"], data["step"])
    if kind == "PRODUCT":
        variant = data.get("variant", "product")
        if variant == "scaled":
            return ScaledTail(tail_from_json(data["inner"]), data["factor"])
        if variant == "shifted":
            return ShiftedTail(tail_from_json(data["inner"]), data["shift"])
        if variant == "min":
            return MinTail(tail_from_json(data["a"]), tail_from_json(data["b"]))
        return ProductTail(data["floors_a"], tail_from_json(data["tail_a"]),
                           data["floors_b"], tail_from_json(data["tail_b"]))
    raise ValueError(f"unknown tail kind {kind!r}")


# -- series -------------------------------------------------------------------

def series_to_json(f: TateSeries) -> Dict[str, Any]:
    return {
        "t_deg": f.t_deg,
        "coeffs": [element_to_json(c) for c in f.coeffs],
        "tail": tail_to_json(f.tail),
    }


def series_from_json(data: Dict[str, Any], cfg: FieldConfig) -> TateSeries:
    coeffs = [element_from_json(c, cfg) for c in data["coeffs"]]
    return TateSeries(cfg, coeffs, tail_from_json(data.get("tail")))


# -- polynomials ----------------------------------------------------------------

def tpoly_to_json(p: TPoly) -> List[Dict[str, Any]]:
    return [element_to_json(c) for c in p.coeffs]


def tpoly_from_json(data: List[Dict[str, Any]], cfg: FieldConfig) -> TPoly:
    return TPoly(cfg, [element_from_json(c, cfg) for c in data])


# -- norms -------------------------------------------------------------------------

def logq_to_json(x) -> Optional[Dict[str, int]]:
    if x == -_INF:
        return None
    f = Fraction(x)
    return {"num": f.numerator, "den": f.denominator}


def norm_to_json(n: NormInfo) -> Dict[str, Any]:
    return {
        "valuation": n.valuation,
        "log_q_norm": logq_to_json(n.log_q_norm),
        "is_upper_bound": n.is_upper_bound,
    }


# -- presentations --------------------------------------------------------------------

def presentation_to_json(p: MotivePresentation) -> Dict[str, Any]:
    return {
        "name": p.name,
        "r": p.r,
        "phi": [[tpoly_to_json(p.phi_num[i, j]) for j in range(p.r)]
                for i in range(p.r)],
        "phi_den": tpoly_to_json(p.phi_den),
        "psi": [[series_to_json(s) for s in row] for row in p.psi],
        "provenance": p.provenance,
    }


def presentation_from_json(data: Dict[str, Any], cfg: FieldConfig) -> MotivePresentation:
    r = data["r"]
    phi = TPolyMatrix(cfg, [[tpoly_from_json(e, cfg) for e in row]
                            for row in data["phi"]])
    den = (tpoly_from_json(data["phi_den"], cfg)
           if data.get("phi_den") else TPoly.one(cfg))
    psi = [[series_from_json(s, cfg) for s in row] for row in data["psi"]]
    t_deg = min(s.t_deg for row in psi for s in row)
    precs = [s.min_coeff_prec() for row in psi for s in row]
    precs = [p for p in precs if p is not None]
    return MotivePresentation(
        name=data.get("name", "unnamed"), r=r, phi_num=phi, phi_den=den,
        psi=psi, provenance=data.get("provenance", "USER"), config=cfg,
        t_deg=t_deg, prec=min(precs) if precs else cfg.default_prec)


# -- relation reports -------------------------------------------------------------------

def _ratfun_to_json(f: FqRat) -> Dict[str, Any]:
    return {"num": list(f.num), "den": list(f.den)}


def bounds_to_json(b: SearchBounds) -> Dict[str, Any]:
    return {"d_t": b.d_t, "v_lo": b.v_lo, "v_hi": b.v_hi, "prec": b.prec,
            "t_deg": b.t_deg, "margin": b.margin}


def relation_to_json(rel: RelationVector) -> Dict[str, Any]:
    return {"slots": [tpoly_to_json(s) for s in rel.slots]}


def _evaluated_to_json(ev: EvaluatedRelation) -> Dict[str, Any]:
    return {
        "c_const": element_to_json(ev.c_const),
        "c_pitilde": element_to_json(ev.c_pitilde),
        "c_log": [element_to_json(c) for c in ev.c_log],
        "artifact_norm": norm_to_json(ev.artifact_norm) if ev.artifact_norm else None,
        "identity_residual": norm_to_json(ev.identity_residual),
    }


def _certification_to_json(c: Certification) -> Dict[str, Any]:
    return {
        "certified": c.certified,
        "residual_log_q": logq_to_json(c.residual_log_q),
        "threshold_log_q": logq_to_json(c.threshold_log_q),
        "prec": c.prec, "t_deg": c.t_deg,
    }


def _gamma_entry_to_json(g: GammaEntry) -> Dict[str, Any]:
    return {
        "const": _ratfun_to_json(g.g_const),
        "X0": _ratfun_to_json(g.g_x0),
        "Xi": [_ratfun_to_json(x) for x in g.g_xi],
        "F": [_ratfun_to_json(x) for x in g.f_form],
        "b0": _ratfun_to_json(g.b0),
        "b": [_ratfun_to_json(x) for x in g.b],
        "f_poly": [element_to_json(c) for c in g.f_poly],
        "scale": element_to_json(g.scale),
    }


def report_to_json(rep: RelationReport) -> Dict[str, Any]:
    return {
        "alphas": [element_to_json(a) for a in rep.alphas],
        "bounds": bounds_to_json(rep.bounds),
        "relations": [relation_to_json(r) for r in rep.relations],
        "kernel_dim": rep.kernel_dim,
        "certifications": [_certification_to_json(c) for c in rep.certifications],
        "evaluated": [_evaluated_to_json(e) for e in rep.evaluated],
        "gamma": {
            "dim": rep.gamma_dim,
            "polys": [_gamma_entry_to_json(g) for g in rep.gamma],
            "v_forms": [[_ratfun_to_json(x) for x in g.f_form] for g in rep.gamma],
        },
        "certified_at": {"prec": rep.certified_prec, "t_deg": rep.certified_t_deg},
    }
