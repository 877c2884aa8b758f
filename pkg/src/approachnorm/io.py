"""JSON file formats.  Rationals travel as strings, infinity as ``"inf"``."""
from __future__ import annotations

import json
import os
from typing import Optional, Union

from .extension import ConditionFailed, ExtensionResult, NoExtension
from .functions import Development, FnOverSpace
from .interpolation import InterpolationResult
from .maps import SpaceMap
from .separation import Certificate, FrameVerdict, NormalityVerdict, Scale
from .space import FiniteSpace, validate
from .values import fmt

PathOrDoc = Union[str, dict]


def _load(src: PathOrDoc, base: Optional[str] = None):
    if isinstance(src, dict):
        return src, base
    path = src
    if base and not os.path.isabs(path) and not os.path.exists(path):
        path = os.path.join(base, path)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh), os.path.dirname(os.path.abspath(path))


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


# -- spaces ---------------------------------------------------------------------


def space_from_json(doc: dict) -> FiniteSpace:
    if not isinstance(doc, dict) or "points" not in doc or "q" not in doc:
        raise ValueError('a space document needs "points" and "q"')
    return validate(doc["points"], doc["q"])


def load_space(src: PathOrDoc, base: Optional[str] = None) -> FiniteSpace:
    doc, _ = _load(src, base)
    return space_from_json(doc)


def space_to_json(s: FiniteSpace) -> dict:
    return {"points": list(s.points), "q": [[fmt(v) for v in row] for row in s.q]}


def set_to_json(s: FiniteSpace, A) -> list:
    return s.ordered(A)


# -- functions ----------------------------------------------------------------------


def function_from_json(doc: dict, space: Optional[FiniteSpace] = None, base=None) -> FnOverSpace:
    if space is None:
        if "space" not in doc:
            raise ValueError('function document has no "space" and none was given')
        space = load_space(doc["space"], base)
    bound = doc.get("bound")
    return FnOverSpace.from_mapping(space, doc["values"], bound)


def load_function(src: PathOrDoc, space: Optional[FiniteSpace] = None) -> FnOverSpace:
    doc, base = _load(src)
    return function_from_json(doc, space, base)


def function_to_json(f: FnOverSpace) -> dict:
    out = {"values": {p: fmt(v) for p, v in zip(f.space.points, f.values)}}
    if f.bound is not None:
        out["bound"] = fmt(f.bound)
    return out


def development_from_json(doc: dict) -> Development:
    return Development(doc["epsilon"], tuple((b["set"], b["level"]) for b in doc["blocks"]))


def load_development(src: PathOrDoc) -> Development:
    doc, _ = _load(src)
    return development_from_json(doc)


def development_to_json(s: FiniteSpace, dev: Development) -> dict:
    return {
        "epsilon": fmt(dev.epsilon),
        "blocks": [{"set": s.ordered(M), "level": fmt(m)} for M, m in dev.blocks],
    }


# -- scales, verdicts ----------------------------------------------------------------


def scale_from_json(doc: dict) -> Scale:
    return Scale(tuple((b["threshold"], b["set"]) for b in doc["breakpoints"]))


def load_scale(src: PathOrDoc) -> Scale:
    doc, _ = _load(src)
    return scale_from_json(doc)


def scale_to_json(s: FiniteSpace, F: Scale) -> dict:
    return {"breakpoints": [{"threshold": fmt(t), "set": s.ordered(S)} for t, S in F.breakpoints]}


def certificate_to_json(s: FiniteSpace, c: Certificate) -> dict:
    return {
        "A": s.ordered(c.A),
        "B": s.ordered(c.B),
        "gamma": fmt(c.gamma),
        "urysohn": {"orientation": "gamma on A, 0 on B", **function_to_json(c.function)},
        "scale": {"orientation": "0 on A, gamma on B", **scale_to_json(s, c.scale)},
    }


def verdict_to_json(s: FiniteSpace, v: NormalityVerdict) -> dict:
    out = {"normal": v.normal, "sampled": v.sampled}
    if v.witness is not None:
        w = v.witness
        out["witness"] = {
            "A": s.ordered(w.A),
            "B": s.ordered(w.B),
            "gamma": fmt(w.gamma),
            "shortfall": fmt(w.shortfall),
        }
    if v.certificates:
        out["certificates"] = [certificate_to_json(s, c) for c in v.certificates]
    return out


def frame_to_json(s: FiniteSpace, v: FrameVerdict, label: str) -> dict:
    out = {"holds": v.holds}
    if v.witness is not None:
        A, B, g = v.witness
        out["witness"] = {"A": s.ordered(A), "B": s.ordered(B), label: fmt(g)}
    return out


def interpolation_to_json(r: InterpolationResult) -> dict:
    out = {"status": r.status}
    if r.interpolant is not None:
        out["interpolant"] = function_to_json(r.interpolant)["values"]
    if r.point is not None:
        out["point"] = r.point
        out["gap"] = fmt(r.gap)
    for key, stages in (("stages", r.stages), ("dual_stages", r.dual_stages)):
        if stages:
            out[key] = [
                {
                    "n": st.n,
                    "f_n": function_to_json(st.f_n)["values"],
                    "lower_ok": st.lower_ok,
                    "upper_ok": st.upper_ok,
                    "bound": fmt(st.bound),
                }
                for st in stages
            ]
    return out


def extension_to_json(s: FiniteSpace, r: ExtensionResult) -> dict:
    out = {"status": r.status}
    if r.extension is not None:
        out["extension"] = function_to_json(r.extension)["values"]
    f = r.failure
    if isinstance(f, ConditionFailed):
        out["failure"] = {
            "x": f.x,
            "l": f.l,
            "k": f.k,
            "epsilon": fmt(f.epsilon),
            "block_l": {"set": f.block_l[0], "level": fmt(f.block_l[1])},
            "block_k": {"set": f.block_k[0], "level": fmt(f.block_k[1])},
        }
    elif isinstance(f, NoExtension):
        out["failure"] = {"point": f.point, "gap": fmt(f.gap)}
    for key in ("mu_hat", "mu_check", "lower_hat", "upper_check"):
        g = getattr(r, key)
        if g is not None:
            out.setdefault("intermediates", {})[key] = function_to_json(g)["values"]
    return out


# -- maps ---------------------------------------------------------------------------------


def load_map(src: PathOrDoc) -> SpaceMap:
    doc, base = _load(src)
    dom = load_space(doc["domain"], base)
    cod = load_space(doc["codomain"], base)
    return SpaceMap.from_mapping(dom, cod, doc["assignment"])
