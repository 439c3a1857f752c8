"""Command-line front end.

Reads a polytope (and optional heights / subfan / refinement) from a JSON
file, dispatches one of the computation commands, and emits a deterministic
report in JSON or plain text.  Exit codes: 0 success, 1 input error,
2 computation error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import hodge, invariants as inv
from .fans import Refinement, TruncatedNormalFan, cone_contains, identity_refinement
from .generators import instance_corpus
from .laurent import LaurentPoly
from .linalg import primitive
from .polytope import LatticePolytope
from .subdivision import CellComplex, HeightFunction, regular_subdivision, trivial_subdivision
from .verify import run_checks

SCHEMA_VERSION = 1


class InputError(Exception):
    pass


class ParsedInput:
    def __init__(self, polytope, height_fn, subfan, refinement, raw_bytes):
        self.polytope = polytope
        self.height_fn = height_fn
        self.subfan = subfan
        self.refinement = refinement
        self.raw_bytes = raw_bytes


def _parse_height(value, where):
    if isinstance(value, bool):
        raise InputError(f"{where}: height must be an integer or 'p/q' string")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}: bad height {value!r}: {exc}") from None
    raise InputError(f"{where}: height must be an integer or 'p/q' string")


def parse_input(path: str) -> ParsedInput:
    """Parse and validate the JSON input file."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: top level must be an object")
    if "dim" not in data or "points" not in data:
        raise InputError(f"{path}: required fields: dim, points")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise InputError(f"{path}: dim must be a nonnegative integer")
    points = data["points"]
    if not isinstance(points, list) or not points:
        raise InputError(f"{path}: points must be a nonempty list")
    coords = []
    heights = {}
    any_height = False
    for i, entry in enumerate(points):
        where = f"{path}: points[{i}]"
        if not isinstance(entry, dict) or "coords" not in entry:
            raise InputError(f"{where}: expected an object with 'coords'")
        c = entry["coords"]
        if (
            not isinstance(c, list)
            or len(c) != dim
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in c)
        ):
            raise InputError(
                f"{where}: coords must be a list of {dim} integers (lattice points only)"
            )
        pt = tuple(c)
        coords.append(pt)
        if "height" in entry:
            any_height = True
            heights[pt] = _parse_height(entry["height"], where)
        else:
            heights[pt] = Fraction(0)
    try:
        polytope = LatticePolytope.convex_hull(coords)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None
    height_fn = None
    if any_height:
        try:
            height_fn = HeightFunction(polytope, heights)
        except ValueError as exc:
            raise InputError(f"{path}: {exc}") from None
    subfan = data.get("subfan")
    refinement = data.get("refinement")
    return ParsedInput(polytope, height_fn, subfan, refinement, raw)


def build_complex(parsed: ParsedInput) -> CellComplex:
    """Subdivision from the input, rewritten full-dimensionally if needed."""
    if parsed.height_fn is None:
        s = trivial_subdivision(parsed.polytope)
    else:
        s = regular_subdivision(parsed.height_fn)
    p = s.polytope
    if p.dim < p.ambient_dim:
        _, map_ = p.normalize_full_dim()
        s = s.transform(map_)
    return s


def _resolve_subfan(fan: TruncatedNormalFan, cone_list, path="input"):
    """Map a user cone list (ray lists) to face ids of the truncated fan."""
    by_rays = {rays: fid for fid, rays in fan.cone_rays.items()}
    ids = []
    for i, cone in enumerate(cone_list):
        rays = cone.get("rays") if isinstance(cone, dict) else cone
        if not isinstance(rays, list):
            raise InputError(f"{path}: subfan[{i}] must have a ray list")
        key = tuple(sorted(primitive(tuple(r)) for r in rays))
        if key == ():
            ids.append(fan.lattice.top)
            continue
        if key not in by_rays:
            raise InputError(f"{path}: subfan[{i}] is not a cone of the truncated normal fan")
        ids.append(by_rays[key])
    if fan.lattice.top not in ids:
        ids.append(fan.lattice.top)
    try:
        return fan.subfan(ids), ids
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _resolve_refinement(fan: TruncatedNormalFan, subfan_ids, cone_list, path="input"):
    """Build a refinement from user cones carrying sigma indices."""
    cones = {(): fan.lattice.top}
    for i, cone in enumerate(cone_list):
        if not isinstance(cone, dict) or "rays" not in cone or "sigma" not in cone:
            raise InputError(f"{path}: refinement[{i}] needs 'rays' and 'sigma'")
        rays = tuple(sorted(primitive(tuple(r)) for r in cone["rays"]))
        sigma = cone["sigma"]
        if not isinstance(sigma, int) or not 0 <= sigma < len(subfan_ids):
            raise InputError(f"{path}: refinement[{i}].sigma out of range")
        fid = subfan_ids[sigma]
        coarse = fan.cone_rays[fid]
        for r in rays:
            if not cone_contains(coarse, r):
                raise InputError(
                    f"{path}: refinement[{i}] has a ray outside its sigma cone"
                )
        for other in fan.face_ids:
            if set(fid) < set(other) and all(
                cone_contains(fan.cone_rays[other], r) for r in rays
            ):
                raise InputError(
                    f"{path}: refinement[{i}].sigma is not the smallest containing cone"
                )
        cones[rays] = fid
    return Refinement(fan, cones, simplicial=False)


# -- report assembly ----------------------------------------------------------


def _poly(p: LaurentPoly):
    return {"terms": p.to_json_obj(), "pretty": str(p)}


def _table(table: dict):
    return {",".join(map(str, k)): str(v) for k, v in sorted(table.items())}


def _report(command: str, parsed: ParsedInput, results, tables=None, checks=None):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input_hash": hashlib.sha256(parsed.raw_bytes).hexdigest(),
        "results": results,
        "tables": tables or {},
        "checks": checks or [],
    }


def _emit(report: dict, fmt: str, out=None) -> None:
    if out is None:
        out = sys.stdout
    if fmt == "json":
        json.dump(report, out, indent=2)
        out.write("\n")
        return
    out.write(f"# {report['command']} (input {report['input_hash'][:12]})\n")
    for name, value in report["results"].items():
        if isinstance(value, dict) and "pretty" in value:
            out.write(f"{name} = {value['pretty']}\n")
        else:
            out.write(f"{name} = {value}\n")
    for name, table in report["tables"].items():
        out.write(f"[{name}]\n")
        for k, v in table.items():
            out.write(f"  {k}: {v}\n")
    for check in report["checks"]:
        detail = f"  ({check['detail']})" if check.get("detail") else ""
        out.write(f"check {check['name']}: {check['status']}{detail}\n")


# -- commands -------------------------------------------------------------------


def cmd_hstar(parsed: ParsedInput, args) -> dict:
    p = parsed.polytope
    results = {
        "h_star": _poly(inv.h_star(p)),
        "local_h_star": _poly(inv.local_h_star(p)),
        "mixed_h_star": _poly(inv.mixed_h_star(p)),
        "normalized_volume": str(p.normalized_volume()),
    }
    limit = min(args.max_dilation, 12)
    ehrhart = {str(m): str(p.lattice_point_count(m)) for m in range(limit + 1)}
    return _report("hstar", parsed, results, tables={"ehrhart": ehrhart})


def cmd_gpoly(parsed: ParsedInput, args) -> dict:
    p = parsed.polytope
    lattice = p.face_lattice()
    g = inv.g_of_interval(lattice, (), lattice.top)
    gd = inv.g_of_interval(lattice, (), lattice.top, dual=True)
    results = {
        "g": _poly(g),
        "g_dual": _poly(gd),
        "f_vector": str(list(lattice.f_vector())),
    }
    full = p if p.dim == p.ambient_dim else p.normalize_full_dim()[0]
    results["intersection_lefschetz"] = _poly(inv.e_int_lef(full))
    return _report("gpoly", parsed, results)


def cmd_invariants(parsed: ParsedInput, args) -> dict:
    s = build_complex(parsed)
    bundle = inv.InvariantBundle(s)
    results = {
        "h_star": _poly(bundle.h_star()),
        "local_h_star": _poly(bundle.local_h_star()),
        "mixed_h_star": _poly(bundle.mixed()),
        "limit_mixed_h_star": _poly(bundle.limit_mixed()),
        "local_limit_mixed_h_star": _poly(bundle.local_limit_mixed()),
        "refined_limit_mixed_h_star": _poly(bundle.refined()),
        "maximal_cells": str(len(s.maximal_cells)),
    }
    return _report("invariants", parsed, results)


def cmd_hodge(parsed: ParsedInput, args) -> dict:
    s = build_complex(parsed)
    e_ref = hodge.refined_E(s)
    psi = hodge.nearby_fiber_E(s)
    cls = hodge.as_class_polynomial(psi)
    table = hodge.refined_hodge_numbers(s)
    results = {
        "refined_E": _poly(e_ref),
        "nearby_fiber_E": _poly(psi),
        "hodge_deligne": _poly(hodge.hodge_deligne(s.polytope)),
        "chi_y": _poly(hodge.chi_y(s.polytope)),
        "euler_characteristic": str(hodge.euler_characteristic(s.polytope)),
    }
    if cls is not None:
        results["nearby_fiber_class"] = _poly(cls)
    tables = {
        "refined_hodge_numbers": _table(table.refined),
        "limit_hodge_numbers": _table(table.limit),
        "local_hodge_numbers": _table(table.local),
    }
    if parsed.subfan is not None:
        fan = TruncatedNormalFan(s.polytope)
        sel, ids = _resolve_subfan(fan, parsed.subfan)
        if parsed.refinement is not None:
            refinement = _resolve_refinement(fan, ids, parsed.refinement)
        else:
            refinement = identity_refinement(fan, sel)
        results["partial_compactification_E"] = _poly(
            hodge.partial_compactification_E(s, refinement=refinement)
        )
        results["partial_compactification_psi"] = _poly(
            hodge.partial_compactification_psi(s, refinement=refinement)
        )
    return _report("hodge", parsed, results, tables=tables)


def cmd_intersection(parsed: ParsedInput, args) -> dict:
    s = build_complex(parsed)
    e_int = hodge.intersection_E(s)
    strata = hodge.sum_over_strata_E_int(s)
    results = {
        "intersection_E": _poly(e_int),
        "intersection_lefschetz": _poly(inv.e_int_lef(s.polytope)),
        "strata_sum": _poly(strata),
    }
    checks = [
        {
            "name": "strata_sum_is_intersection_E",
            "status": "pass" if strata == e_int else "fail",
            "detail": "",
        }
    ]
    return _report("intersection", parsed, results, checks=checks)


def cmd_stringy(parsed: ParsedInput, args) -> dict:
    s = build_complex(parsed)
    e_st = hodge.stringy_E(s)
    results = {
        "stringy_E": _poly(e_st),
        "stringy_E_generic": _poly(hodge.stringy_E_generic(s)),
        "dual_polytope_vertices": str(
            [list(v) for v in s.polytope.dual_polytope().vertices]
        ),
    }
    return _report("stringy", parsed, results)


def cmd_nearby(parsed: ParsedInput, args) -> dict:
    s = build_complex(parsed)
    psi = hodge.nearby_fiber_E(s)
    cls = hodge.as_class_polynomial(psi)
    results = {
        "nearby_fiber_E": _poly(psi),
        "euler_characteristic": str(hodge.euler_characteristic(s.polytope)),
    }
    if cls is not None:
        results["nearby_fiber_class"] = _poly(cls)
    return _report("nearby", parsed, results)


def cmd_dk_check(parsed: ParsedInput, args) -> dict:
    s = build_complex(parsed)
    direct = hodge.refined_E(s)
    reconstructed = hodge.dk_reconstruct(s)
    ok = direct == reconstructed
    results = {
        "refined_E": _poly(direct),
        "reconstructed_E": _poly(reconstructed),
    }
    checks = [
        {
            "name": "reconstruction_matches",
            "status": "pass" if ok else "fail",
            "detail": "" if ok else "independent reconstruction disagrees",
        }
    ]
    return _report("dk-check", parsed, results, checks=checks)


def cmd_verify(parsed: ParsedInput, args) -> dict:
    s = build_complex(parsed)
    checks = [
        {"name": c.name, "status": c.status, "detail": c.detail}
        for c in run_checks(s)
    ]
    if args.random:
        for i, instance in enumerate(instance_corpus(args.seed, args.random)):
            for c in run_checks(instance):
                checks.append(
                    {
                        "name": f"random[{i}].{c.name}",
                        "status": c.status,
                        "detail": c.detail,
                    }
                )
    return _report("verify", parsed, {}, checks=checks)


_COMMANDS = {
    "hstar": cmd_hstar,
    "gpoly": cmd_gpoly,
    "invariants": cmd_invariants,
    "hodge": cmd_hodge,
    "intersection": cmd_intersection,
    "stringy": cmd_stringy,
    "nearby": cmd_nearby,
    "dk-check": cmd_dk_check,
    "verify": cmd_verify,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyhodge",
        description=(
            "Exact combinatorial Hodge-theoretic invariants of lattice polytopes "
            "with regular subdivisions"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", help="JSON input file")
        p.add_argument("--format", choices=("json", "text"), default="json")
        if name == "hstar":
            p.add_argument(
                "--max-dilation",
                type=int,
                default=6,
                help="largest dilate whose point count is reported",
            )
        if name == "verify":
            p.add_argument(
                "--random",
                type=int,
                default=0,
                metavar="N",
                help="also verify N random instances",
            )
            p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        parsed = parse_input(args.input)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    try:
        report = _COMMANDS[args.command](parsed, args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 2
    _emit(report, args.format)
    failed = any(c["status"] == "fail" for c in report.get("checks", []))
    return 3 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
