"""Command-line front end.

Every command prints one JSON document on stdout.  Exit status: 0 when the
operation succeeds or the property holds, 1 when the property fails (the
witness is in the JSON), 2 for invalid input (a JSON diagnostic goes to
stderr).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import catalog, io
from .errors import ApproachError, StageSeparationFailure
from .extension import tietze_extend
from .functions import canonical_development
from .interpolation import kt_direct, kt_staged
from .maps import is_closed_expansive, is_contraction_map, is_open_expansive
from .oracle import (
    oracle_closed_expansive,
    oracle_hull,
    oracle_kt_exists,
    oracle_open_expansive,
    oracle_urysohn_exists,
)
from .separation import (
    NoWitness,
    contraction_to_scale,
    frame_condition2,
    frame_condition3,
    gamma_separated_direct,
    is_normal,
    prop_inequal_check,
    scale_to_contraction,
    separation_degree,
    urysohn,
    verify_normal_scale,
)
from .space import distance, enlargement, subspace
from .values import ext, fmt


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors become JSON diagnostics like every other input error
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _set(text: str) -> list:
    return [p.strip() for p in text.split(",") if p.strip()] if text else []


def _out(doc, code=0):
    sys.stdout.write(io.dumps(doc) + "\n")
    return code


# -- command handlers ------------------------------------------------------------------


def cmd_validate(a):
    s = io.load_space(a.space)
    return _out({"valid": True, "points": list(s.points)})


def cmd_distance(a):
    s = io.load_space(a.space)
    return _out({"distance": fmt(distance(s, a.x, _set(a.a)))})


def cmd_enlarge(a):
    s = io.load_space(a.space)
    return _out({"set": s.ordered(enlargement(s, _set(a.a), ext(a.eps)))})


def cmd_separation(a):
    s = io.load_space(a.space)
    A, B = _set(a.a), _set(a.b)
    doc = {"degree": fmt(separation_degree(s, A, B))}
    if a.gamma is None:
        return _out(doc)
    g = ext(a.gamma)
    doc["gamma"] = fmt(g)
    doc["separated"] = gamma_separated_direct(s, A, B, g)
    doc["equivalent_forms"] = list(prop_inequal_check(s, A, B, g))
    return _out(doc, 0 if doc["separated"] else 1)


def cmd_urysohn(a):
    s = io.load_space(a.space)
    f = urysohn(s, _set(a.a), _set(a.b), a.gamma)
    if isinstance(f, NoWitness):
        return _out({"exists": False, "shortfall": fmt(f.shortfall)}, 1)
    return _out({"exists": True, "orientation": "gamma on A, 0 on B", **io.function_to_json(f)})


def cmd_scale(a):
    s = io.load_space(a.space)
    if a.action == "from-fn":
        f = io.load_function(a.f, s)
        return _out(io.scale_to_json(s, contraction_to_scale(s, f)))
    F = io.load_scale(a.scale)
    if a.action == "to-fn":
        return _out(io.function_to_json(scale_to_contraction(s, F)))
    ok = verify_normal_scale(s, F, _set(a.a), _set(a.b), ext(a.gamma))
    return _out({"valid": ok}, 0 if ok else 1)


def cmd_normality(a):
    s = io.load_space(a.space)
    certify = []
    for pair in a.certify or []:
        left, _, right = pair.partition(":")
        certify.append((_set(left), _set(right)))
    v = is_normal(
        s,
        jobs=a.jobs,
        exhaustive=True if a.exhaustive else None,
        samples=a.samples,
        seed=a.seed,
        certify=certify,
    )
    return _out(io.verdict_to_json(s, v), 0 if v.normal else 1)


def cmd_frame(a):
    s = io.load_space(a.space)
    if a.which == "cond2":
        v = frame_condition2(s)
        doc = io.frame_to_json(s, v, "gamma")
    else:
        v = frame_condition3(s)
        doc = io.frame_to_json(s, v, "epsilon")
    return _out(doc, 0 if v.holds else 1)


def cmd_interpolate(a):
    s = io.load_space(a.space)
    g = io.load_function(a.g, s)
    h = io.load_function(a.h, s)
    if a.staged is None:
        r = kt_direct(s, g, h)
    else:
        try:
            r = kt_staged(s, g, h, a.staged)
        except StageSeparationFailure as e:
            return _out({"status": "stage_separation_failure", "m": e.m, "k": e.k, "n": e.n,
                         "reason": e.reason}, 1)
    return _out(io.interpolation_to_json(r), 0 if r.found else 1)


def cmd_extend(a):
    s = io.load_space(a.space)
    sub = subspace(s, _set(a.subspace))
    f = io.load_function(a.f, sub)
    gamma = ext(a.gamma)
    dev = None
    if a.dev:
        dev = io.load_development(a.dev)
    elif a.dev_canonical:
        dev = canonical_development(f, ext(a.dev_canonical))
    r = tietze_extend(s, f, gamma, dev)
    return _out(io.extension_to_json(s, r), 0 if r.extended else 1)


def cmd_check_map(a):
    m = io.load_map(a.map)
    pred = {"contraction": is_contraction_map, "closed": is_closed_expansive,
            "open": is_open_expansive}[a.predicate]
    ok = pred(m)
    return _out({"predicate": a.predicate, "holds": ok}, 0 if ok else 1)


def cmd_catalog(a):
    if a.action == "list":
        rows = []
        for name in catalog.names():
            e = catalog.get(name)
            rows.append({"name": name, "defaults": {k: str(v) for k, v in e.params.items()},
                         "note": e.note})
        return _out(rows)
    params = {}
    for item in a.params:
        k, sep, v = item.partition("=")
        if not sep:
            raise InputError(f"parameter {item!r} is not key=value")
        params[k] = v
    e = catalog.get(a.name, params)
    return _out(io.space_to_json(e.space))


def cmd_oracle(a):
    s = io.load_space(a.space) if a.space else None
    if a.query == "urysohn":
        ok = oracle_urysohn_exists(s, _set(a.a), _set(a.b), a.gamma)
        return _out({"exists": ok}, 0 if ok else 1)
    if a.query == "hull":
        f = io.load_function(a.f, s)
        return _out(io.function_to_json(oracle_hull(s, f, a.side)))
    if a.query == "kt":
        ok = oracle_kt_exists(s, io.load_function(a.g, s), io.load_function(a.h, s))
        return _out({"exists": ok}, 0 if ok else 1)
    m = io.load_map(a.map)
    ok = (oracle_closed_expansive if a.query == "closed" else oracle_open_expansive)(m)
    return _out({"predicate": a.query, "holds": ok}, 0 if ok else 1)


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="approachnorm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def space_cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("space", help="space JSON file")
        sp.set_defaults(fn=fn)
        return sp

    space_cmd("validate", cmd_validate, "check the distance axioms")
    sp = space_cmd("distance", cmd_distance, "distance from a point to a set")
    sp.add_argument("--x", required=True)
    sp.add_argument("--a", default="", help="comma-separated points")
    sp = space_cmd("enlarge", cmd_enlarge, "epsilon-enlargement of a set")
    sp.add_argument("--a", default="")
    sp.add_argument("--eps", required=True)
    sp = space_cmd("separation", cmd_separation, "separation degree (and a gamma test)")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--gamma")
    sp = space_cmd("urysohn", cmd_urysohn, "Urysohn contraction, gamma on A and 0 on B")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--gamma", required=True)

    sp = sub.add_parser("scale", help="contractive scales")
    sp.add_argument("action", choices=["from-fn", "to-fn", "verify"])
    sp.add_argument("space")
    sp.add_argument("--f", help="function JSON (from-fn)")
    sp.add_argument("--scale", help="scale JSON (to-fn, verify)")
    sp.add_argument("--a", default="")
    sp.add_argument("--b", default="")
    sp.add_argument("--gamma", default="1")
    sp.set_defaults(fn=cmd_scale)

    sp = space_cmd("normality", cmd_normality, "decide normality")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--exhaustive", action="store_true", help="check every pair even above 10 points")
    sp.add_argument("--samples", type=int, default=20000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--certify", action="append", metavar="A:B",
                    help="attach a certificate for this pair, e.g. x:y,z")

    sp = sub.add_parser("frame", help="splitting and frame normality conditions")
    sp.add_argument("which", choices=["cond2", "cond3"])
    sp.add_argument("space")
    sp.set_defaults(fn=cmd_frame)

    sp = sub.add_parser("interpolate", help="contraction between g and h")
    sp.add_argument("--space", required=True)
    sp.add_argument("--g", required=True)
    sp.add_argument("--h", required=True)
    sp.add_argument("--staged", type=int, metavar="N")
    sp.set_defaults(fn=cmd_interpolate)

    sp = sub.add_parser("extend", help="contractive extension from a subspace")
    sp.add_argument("--space", required=True)
    sp.add_argument("--subspace", required=True)
    sp.add_argument("--f", required=True)
    sp.add_argument("--gamma", required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--dev")
    g.add_argument("--dev-canonical", metavar="EPS")
    sp.set_defaults(fn=cmd_extend)

    sp = sub.add_parser("check-map", help="map predicates")
    sp.add_argument("map")
    sp.add_argument("--predicate", choices=["contraction", "closed", "open"], required=True)
    sp.set_defaults(fn=cmd_check_map)

    sp = sub.add_parser("catalog", help="named instances")
    sp.add_argument("action", choices=["list", "emit"])
    sp.add_argument("name", nargs="?")
    sp.add_argument("params", nargs="*", help="key=value")
    sp.set_defaults(fn=cmd_catalog)

    sp = sub.add_parser("oracle", help="brute-force checks for small instances")
    sp.add_argument("query", choices=["urysohn", "hull", "kt", "closed", "open"])
    sp.add_argument("space", nargs="?")
    sp.add_argument("--a", default="")
    sp.add_argument("--b", default="")
    sp.add_argument("--gamma")
    sp.add_argument("--f")
    sp.add_argument("--side", choices=["lower", "upper"], default="lower")
    sp.add_argument("--g")
    sp.add_argument("--h")
    sp.add_argument("--map")
    sp.set_defaults(fn=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except InputError as e:
        return _fail(e)
    except SystemExit as e:  # --help
        return 2 if e.code else 0
    if args.command == "catalog" and args.action == "emit" and not args.name:
        return _fail(InputError("catalog emit needs a NAME"))
    try:
        return args.fn(args)
    except (ApproachError, InputError, ValueError, TypeError, KeyError, OSError,
            json.JSONDecodeError) as e:
        return _fail(e)


def _fail(e) -> int:
    if isinstance(e, ApproachError):
        doc = e.payload()
    else:
        doc = {"error": type(e).__name__, "message": str(e)}
    sys.stderr.write(io.dumps(doc) + "\n")
    return 2


if __name__ == "__main__":
    sys.exit(main())
