"""Command-line front end.

Every subcommand reads JSON/flag inputs, delegates to exactly one library
operation, and writes canonical JSON (rationals as strings) with an embedded
run manifest. Exit codes: 0 success, 1 input/validation error, 2 computation
error (budget exceeded, degenerate configuration).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from . import serialize as ser
from .charges import (ChargeParams, SlopeProfile, charge_row,
                      gieseker_compare, heart_position, k3_charge,
                      phase_compare, surface_charge)
from .errors import BudgetError, ChargeError, DegenerateError, LatticeError, \
    PresentationError, StabkitError
from .gaussian import GaussianRational, as_fraction
from .hn import hn_filtration, seesaw_check, validate, validate_or_raise
from .lattice import ChernCharacter, MukaiVector, mukai_pairing
from .manifest import build_manifest
from .nef import bb_square, lagrangian_candidates, moduli_dimension, \
    omega_class, wall_report
from .support import (build_q_z, charge_kernel, charge_norm_form,
                      discreteness_classes, effective_budget,
                      equivalent_support_roundtrip, min_root_norm)
from .svgplot import render_walls_svg
from .walls import (Region, SliceParams, chambers_along_path,
                    nesting_check, sampling_oracle, scan_walls)

INFINITY_TOKENS = {"inf", "+inf", "infinity"}


def _parse_vec_int(text: str) -> List[int]:
    return [int(x) for x in text.split(",") if x.strip() != ""]


def _parse_vec_rat(text: str) -> List[Fraction]:
    return [as_fraction(x.strip()) for x in text.split(",") if x.strip() != ""]


def _parse_range(text: str) -> Tuple[Fraction, Fraction]:
    lo, _, hi = text.partition(":")
    if not _:
        raise ValueError(f"expected lo:hi range, got {text!r}")
    return as_fraction(lo), as_fraction(hi)


def _parse_gauss(text: str) -> GaussianRational:
    re, im = _parse_vec_rat(text)
    return GaussianRational(re, im)


def _load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def _emit(args, payload: Dict[str, Any], summary: str,
          inputs: Optional[Dict[str, str]] = None,
          bounds: Optional[Dict[str, Any]] = None) -> None:
    manifest = build_manifest(sys.argv[1:], inputs or {}, bounds or {},
                              seed=getattr(args, "seed", None))
    doc = {"manifest": manifest.to_json(), "result": payload}
    text = ser.dumps(doc)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    print(summary, file=sys.stderr)


def _mukai(text: str) -> MukaiVector:
    return MukaiVector.from_coords(_parse_vec_int(text))


def _lattice(args):
    return ser.lattice_from_json(_load_json(args.lattice))


def _params(args, lat) -> ChargeParams:
    return ChargeParams(lat, tuple(_parse_vec_rat(args.beta)),
                        tuple(_parse_vec_rat(args.omega)))


# -- subcommand handlers ---------------------------------------------------------


def cmd_pairing(args) -> None:
    lat = _lattice(args)
    v, w = _mukai(args.v), _mukai(args.w)
    val = mukai_pairing(v, w, lat)
    _emit(args, {"value": str(val)}, f"({args.v}, {args.w}) = {val}",
          inputs={"lattice": args.lattice})


def cmd_charge(args) -> None:
    lat = _lattice(args)
    params = _params(args, lat)
    if lat.k3:
        z = k3_charge(_mukai(args.v), params)
    else:
        c0, *c1, c2 = _parse_vec_rat(args.v)
        z = surface_charge(ChernCharacter(c0, tuple(c1), c2), params)
    _emit(args, ser.gauss_to_json(z), f"Z = {z}", inputs={"lattice": args.lattice})


def cmd_phase_compare(args) -> None:
    order = phase_compare(_parse_gauss(args.z1), _parse_gauss(args.z2))
    _emit(args, {"order": order.name}, f"phase order: {order.name}")


def cmd_heart(args) -> None:
    slopes = tuple("inf" if s.strip().lower() in INFINITY_TOKENS else as_fraction(s)
                   for s in args.slopes.split(","))
    pos = heart_position(SlopeProfile(slopes))
    _emit(args, {"position": pos.value}, f"heart position: {pos.value}")


def cmd_hn(args) -> None:
    cat = ser.category_from_json(_load_json(args.category))
    charge = ser.charge_row_from_json(_load_json(args.charge))
    validate_or_raise(cat, charge)
    filt = hn_filtration(cat, charge, args.object)
    seesaw = seesaw_check(cat, charge)
    payload = {
        "steps": list(filt.steps),
        "factor_ids": list(filt.factor_ids),
        "factor_classes": [[str(x) for x in cls] for cls in filt.factor_classes],
        "notes": list(filt.notes),
        "seesaw_violations": [vi.message for vi in seesaw],
    }
    _emit(args, payload,
          f"HN filtration of {args.object}: {' < '.join(filt.steps)}",
          inputs={"category": args.category, "charge": args.charge})


def cmd_validate_category(args) -> None:
    cat = ser.category_from_json(_load_json(args.category))
    charge = ser.charge_row_from_json(_load_json(args.charge))
    violations = validate(cat, charge)
    payload = {"violations": [
        {"code": v.code, "subject": v.subject, "message": v.message}
        for v in violations]}
    _emit(args, payload, f"{len(violations)} violation(s)",
          inputs={"category": args.category, "charge": args.charge})


def cmd_support(args) -> None:
    lat = _lattice(args)
    lat.require_even()
    params = _params(args, lat)
    gram = lat.mukai_gram()
    z_row = charge_row(params)
    kernel = charge_kernel(z_row, gram)
    s = charge_norm_form(z_row, kernel, gram)
    budget = effective_budget(args.budget)
    res = min_root_norm(z_row, kernel, s, gram, budget=budget,
                        start_bound=as_fraction(args.start_bound))
    payload: Dict[str, Any] = {
        "kernel_basis": [[str(x) for x in b] for b in kernel.basis],
        "norm_form": [[str(x) for x in row] for row in s],
        "root_search": {
            "c_squared": str(res.c_squared) if res.found else None,
            "witness": ser.mukai_to_json(res.witness) if res.found else None,
            "bound_reached": str(res.bound_reached),
            "points_visited": res.points_visited,
        },
    }
    summary = "no roots in searched region"
    if res.found:
        q_z = build_q_z(z_row, s, res.c_squared, gram)
        classes = [v.coords() for v in
                   (res.witness, MukaiVector.from_coords([0] * (lat.mukai_rank - 1) + [1]))]
        if args.classes:
            classes = [tuple(_parse_vec_int(c)) for c in args.classes]
        roundtrip = equivalent_support_roundtrip(q_z, z_row, classes)
        disc = discreteness_classes(z_row, s, res.c_squared, gram,
                                    radius_sq=res.c_squared * 4, budget=budget)
        payload["q_z"] = [[str(x) for x in row] for row in q_z.gram]
        payload["roundtrip"] = {
            "k": str(roundtrip.k_const),
            "c_squared": str(roundtrip.c_squared),
            "all_pass": roundtrip.all_pass,
            "classes_checked": len(roundtrip.verdicts),
            "verdicts": [
                {"class": [str(x) for x in v.cls],
                 "q_value": str(v.q_value),
                 "skipped": v.skipped,
                 "passed": v.passed}
                for v in roundtrip.verdicts],
        }
        payload["discreteness_sample"] = {
            "radius_sq": str(res.c_squared * 4),
            "classes": len(disc),
        }
        summary = (f"C^2 = {res.c_squared}, witness {res.witness.coords()}, "
                   f"roundtrip {'ok' if roundtrip.all_pass else 'FAILED'}")
    _emit(args, payload, summary, inputs={"lattice": args.lattice},
          bounds={"budget": budget})


def _slice_and_region(args, lat) -> Tuple[SliceParams, Region]:
    slice_ = SliceParams(lat, tuple(_parse_vec_rat(args.beta0)))
    b_lo, b_hi = _parse_range(args.b)
    t_lo, t_hi = _parse_range(args.t)
    return slice_, Region(b_lo, b_hi, t_lo, t_hi)


def _wall_payload(walls, region: Region) -> Dict[str, Any]:
    return {
        "region": {"b_min": str(region.b_min), "b_max": str(region.b_max),
                   "t_min": str(region.t_min), "t_max": str(region.t_max)},
        "walls": [ser.wall_to_json(w, f"W{i}") for i, w in enumerate(walls)],
    }


def cmd_walls(args) -> None:
    lat = _lattice(args)
    slice_, region = _slice_and_region(args, lat)
    v = _mukai(args.v)
    walls = scan_walls(v, slice_, region, args.bound)
    nest = nesting_check(v, slice_, walls) if lat.rank == 1 else None
    payload = _wall_payload(walls, region)
    payload["v"] = ser.mukai_to_json(v)
    payload["beta0"] = [str(x) for x in slice_.beta0]
    payload["note"] = ("potential walls (charge alignment); actual-wall "
                       "certification is object-level and out of scope")
    if nest is not None:
        payload["nesting"] = {
            "pairs_checked": nest.pairs_checked,
            "violations": len(nest.violations),
            "touching": len(nest.touching),
        }
    summary = f"{len(walls)} potential wall(s)"
    if args.grid:
        oracle = sampling_oracle(v, slice_, region, args.grid, args.bound)
        detected = {ow.locus.key() for ow in oracle if ow.detected}
        enumerated = {w.key() for w in walls}
        payload["oracle"] = {
            "grid": args.grid,
            "detected": len(detected),
            "agrees": detected == enumerated,
        }
        summary += f"; oracle {'agrees' if detected == enumerated else 'DISAGREES'}"
    _emit(args, payload, summary, inputs={"lattice": args.lattice},
          bounds={"bound": args.bound, "grid": args.grid})


def cmd_chambers(args) -> None:
    doc = _load_json(args.walls)
    walls = [ser.wall_from_json(w) for w in doc["result"]["walls"]]
    t_lo, t_hi = _parse_range(args.t)
    b_star = as_fraction(args.b)
    # v and slice are embedded in the wall data; the crossings only need the conics
    path = chambers_along_path(None, None, b_star, t_lo, t_hi, walls)
    payload = {
        "b": str(b_star),
        "t_range": [str(t_lo), str(t_hi)],
        "crossings": [
            {"t_squared": str(c.t_squared), "t": c.t_decimal(30),
             "wall": ser.wall_to_json(c.wall, f"X{i}")}
            for i, c in enumerate(path.crossings)],
        "coincident_walls": [ser.wall_to_json(w, f"C{i}")
                             for i, w in enumerate(path.coincident_walls)],
        "chambers": path.chamber_count,
        "top_chamber": "large-volume limit: the chamber above the last "
                       "crossing is the Gieseker chamber",
    }
    _emit(args, payload,
          f"{len(path.crossings)} crossing(s), {path.chamber_count} chamber(s)",
          inputs={"walls": args.walls})


def cmd_plot(args) -> None:
    if not args.out:
        raise ValueError("plot needs --out for the SVG file")
    doc = _load_json(args.walls)
    res = doc["result"]
    walls = [ser.wall_from_json(w) for w in res["walls"]]
    region = Region(as_fraction(res["region"]["b_min"]),
                    as_fraction(res["region"]["b_max"]),
                    as_fraction(res["region"]["t_min"]),
                    as_fraction(res["region"]["t_max"]))
    manifest = build_manifest(sys.argv[1:], {"walls": args.walls}, {})
    svg = render_walls_svg(walls, region, timestamp=manifest.timestamp,
                           title="potential walls")
    with open(args.out, "w", encoding="utf-8") as f:
        f.write(svg)
    print(f"wrote {args.out} ({len(walls)} wall(s))", file=sys.stderr)


def cmd_nef(args) -> None:
    lat = _lattice(args)
    lat.require_even()
    params = _params(args, lat)
    params.require_heart()
    v = _mukai(args.v)
    z_row = charge_row(params)
    om = omega_class(v, z_row, lat)
    sq = bb_square(om, lat)
    dim = moduli_dimension(v, lat)
    payload = {
        "omega_class": [str(x) for x in om.coords],
        "bb_square": str(sq),
        "moduli_dimension": dim.dimension,
        "flags": {"rigid": dim.rigid, "isotropic": dim.isotropic},
    }
    _emit(args, payload,
          f"q(l_sigma) = {sq}, dim M = {dim.dimension}",
          inputs={"lattice": args.lattice})


def cmd_classify_wall(args) -> None:
    lat = _lattice(args)
    lat.require_even()
    slice_ = SliceParams(lat, tuple(_parse_vec_rat(args.beta0)))
    v, w = _mukai(args.v), _mukai(args.w)
    point = None
    if args.point:
        b, t = _parse_vec_rat(args.point)
        point = (b, t)
    rep = wall_report(v, w, slice_, point=point, pairing_bound=args.bound,
                      max_m=args.max_m, box=args.box)
    payload = {
        "wall": ser.wall_to_json(rep.wall, "W"),
        "hw_basis": [ser.mukai_to_json(b) for b in rep.hw.basis],
        "hw_gram": [[str(x) for x in row] for row in rep.hw.gram2],
        "v_in_hw": list(rep.v_in_hw),
        "roots": [ser.mukai_to_json(r) for r in rep.roots],
        "isotropic": [ser.mukai_to_json(r) for r in rep.isotropic] or "none",
        "decompositions": [
            {"parts": [list(p) for p in d.parts], "m": d.m, "slack": d.slack}
            for d in rep.decompositions],
        "hints": {
            "has_root": rep.has_root,
            "has_isotropic": rep.has_isotropic,
            "admits_totally_semistable_candidate":
                rep.admits_totally_semistable_candidate,
            "provenance": "advisory numerical hints, not a classification",
        },
    }
    if rep.point_residual is not None:
        payload["point_residual"] = str(rep.point_residual)
    _emit(args, payload,
          f"H_W gram {rep.hw.gram2}; root: {rep.has_root}, "
          f"isotropic: {rep.has_isotropic}",
          inputs={"lattice": args.lattice},
          bounds={"max_m": args.max_m, "box": args.box})


def cmd_lagrangian(args) -> None:
    lat = _lattice(args)
    lat.require_even()
    v = _mukai(args.v)
    cands = lagrangian_candidates(v, lat, args.bound)
    payload = {"candidates": [ser.mukai_to_json(u) for u in cands]}
    _emit(args, payload, f"{len(cands)} Lagrangian candidate ray(s)",
          inputs={"lattice": args.lattice}, bounds={"bound": args.bound})


def cmd_gieseker(args) -> None:
    pa = _parse_vec_rat(args.p)
    pb = _parse_vec_rat(args.q)
    order = gieseker_compare(pa, pb)
    _emit(args, {"order": order.name}, f"gieseker order: {order.name}")


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="stabkit",
        description="Exact numerical toolkit for stability conditions on "
                    "surfaces: charges, filtrations, support forms, walls "
                    "and nef classes.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--out", help="write JSON here instead of stdout")
        p.add_argument("--seed", type=int, default=None)
        return p

    p = add("pairing", cmd_pairing, "extended-lattice pairing of two classes")
    p.add_argument("--lattice", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)

    p = add("charge", cmd_charge, "central charge of a class at (beta, omega)")
    p.add_argument("--lattice", required=True)
    p.add_argument("--v", required=True,
                   help="Mukai coords r,c..,s (K3) or ch0,c1..,ch2 (surface)")
    p.add_argument("--beta", required=True)
    p.add_argument("--omega", required=True)

    p = add("phase-compare", cmd_phase_compare, "exact phase order of two charges")
    p.add_argument("--z1", required=True, help="re,im")
    p.add_argument("--z2", required=True, help="re,im")

    p = add("heart", cmd_heart, "tilted-heart position from a slope profile")
    p.add_argument("--slopes", required=True, help="decreasing list, e.g. inf,3,-1")

    p = add("hn", cmd_hn, "Harder-Narasimhan filtration in a finite presentation")
    p.add_argument("--category", required=True)
    p.add_argument("--charge", required=True)
    p.add_argument("--object", required=True)

    p = add("validate-category", cmd_validate_category,
            "list presentation violations")
    p.add_argument("--category", required=True)
    p.add_argument("--charge", required=True)

    p = add("support", cmd_support,
            "kernel, norm form, minimal root norm and support form of a charge")
    p.add_argument("--lattice", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--omega", required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--start-bound", default="8",
                   help="initial root-search bound (doubles until a root is found)")
    p.add_argument("--classes", nargs="*", default=None,
                   help="classes for the roundtrip check, each r,c..,s")

    p = add("walls", cmd_walls, "potential walls for v on a (b, t) slice")
    p.add_argument("--lattice", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--beta0", required=True)
    p.add_argument("--b", required=True, help="range lo:hi")
    p.add_argument("--t", required=True, help="range lo:hi, t>0")
    p.add_argument("--bound", type=int, default=8)
    p.add_argument("--grid", type=int, default=0,
                   help="also run the sign-flip sampling oracle on an NxN grid")

    p = add("chambers", cmd_chambers, "wall crossings along a vertical path")
    p.add_argument("--walls", required=True, help="walls JSON from the walls command")
    p.add_argument("--b", required=True)
    p.add_argument("--t", required=True, help="range lo:hi")

    p = add("plot", cmd_plot, "render a walls JSON to SVG (--out required)")
    p.add_argument("--walls", required=True)

    p = add("nef", cmd_nef, "nef divisor class data for (v, beta, omega)")
    p.add_argument("--lattice", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--omega", required=True)

    p = add("classify-wall", cmd_classify_wall, "rank-2 wall report for (v, w)")
    p.add_argument("--lattice", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--beta0", required=True)
    p.add_argument("--point", default=None, help="b,t on the wall")
    p.add_argument("--bound", type=int, default=None,
                   help="root pairing bound |(delta, v)|; default max(v^2, 2)")
    p.add_argument("--max-m", type=int, default=3)
    p.add_argument("--box", type=int, default=10)

    p = add("lagrangian", cmd_lagrangian, "square-zero classes in v-perp")
    p.add_argument("--lattice", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--bound", type=int, default=8)

    p = add("gieseker", cmd_gieseker,
            "eventual comparison of reduced Hilbert polynomials")
    p.add_argument("--p", required=True, help="coefficients, constant first")
    p.add_argument("--q", required=True, help="coefficients, constant first")

    return ap


_VALUE_FLAGS = {"--b", "--t", "--z1", "--z2", "--point", "--beta", "--beta0",
                "--omega", "--v", "--w", "--p", "--q", "--slopes"}


def _normalize_argv(argv: List[str]) -> List[str]:
    """Glue values onto their flags so ranges like ``--b -3:0`` parse even
    though the value starts with a dash."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = ap.parse_args(_normalize_argv(list(argv)))
    try:
        args.fn(args)
    except (LatticeError, ChargeError, PresentationError, ValueError,
            FileNotFoundError, KeyError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except (BudgetError, DegenerateError) as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return 2
    except StabkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
