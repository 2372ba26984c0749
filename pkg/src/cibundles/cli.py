"""Command-line entry point.

Exit status: 0 success, 1 a computed value disagreed with its published
anchor, 2 usage error, 3 internal inconsistency (two independent routes in
the toolkit disagreed).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Callable

from . import __version__
from .errors import DegenerateSample, InternalInconsistency, SingularAlong

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
SEED_ENV = "CIBUNDLES_SEED"


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


@dataclass
class RunConfig:
    prime: int | str = "auto"
    seed: int = 0
    format: str = "text"
    only: list[str] = field(default_factory=list)
    lines_d: int = 6
    planes_d: int = 3
    cone_d: int = 6
    surface: tuple[int, ...] = (4, 6)


def _field(cfg_prime, orders=(), avoid=()):
    from .field import field_for
    try:
        return field_for(orders, avoid, cfg_prime)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# run-all

@dataclass
class AnchorRow:
    name: str
    expected: object
    computed: object

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def to_json(self) -> dict:
        return {"name": self.name, "expected": self.expected, "computed": self.computed,
                "status": "PASS" if self.passed else "FAIL"}


def run_examples_all(cfg: RunConfig) -> dict:
    """Run every worked example and compare each published number with the computed one."""
    from .bott import bott_line_count
    from .bundle import chern_data, cohomology_of_E, component_report, ext1_check
    from .cayley_bacharach import build_z_configuration, cayley_bacharach_check
    from .fano import fermat_lines

    rows: list[AnchorRow] = []
    want = set(cfg.only) or {"quintic", "fermat4", "spinor", "fermat5", "cone46", "bundle"}

    def guarded(fn: Callable):
        try:
            return fn()
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    if "quintic" in want:
        rows.append(AnchorRow("lines on a general quintic threefold", 2875, bott_line_count(4, 5, cfg.seed)))
        comp = guarded(lambda: component_report("quintic", seed=cfg.seed, prime=cfg.prime))
        rows.append(AnchorRow("quintic: zero-dimensional components", [2875, 0], list(comp.components[0])))
        # cross-check, not an anchor: localization vs direct enumeration on the Fermat cubic
        F3 = _field(cfg.prime, [3], [3, 2])
        if bott_line_count(3, 3, cfg.seed) != len(fermat_lines(3, F3).items):
            raise InternalInconsistency("27 lines: localization and enumeration disagree")
    if "fermat4" in want:
        d = cfg.lines_d
        comp = guarded(lambda: component_report("fermat4", d1=d, seed=cfg.seed, prime=cfg.prime))
        rows.append(AnchorRow(f"Fermat lines, d1={d} (3*d1^2)", 3 * d * d, comp.details["lines"]))
        rows.append(AnchorRow(f"isolated lines, d1={d}", [3 * d * d, 0], list(comp.components[0])))
        rows.append(AnchorRow(f"normal bundle splitting, d1={d}", [-((d - 3) // 2), (3 - d) // 2],
                              comp.details["splitting"]))
    if "spinor" in want:
        comp = guarded(lambda: component_report("spinor", seed=cfg.seed, prime=cfg.prime))
        rows.append(AnchorRow("quadric fourfold: components", [2, 0], list(comp.components[0])))
        rows.append(AnchorRow("quadric fourfold: h0(E)", 4, comp.details["h0_E"]))
    if "fermat5" in want:
        d = cfg.planes_d
        comp = guarded(lambda: component_report("fermat5", d1=d, seed=cfg.seed, prime=cfg.prime))
        rows.append(AnchorRow(f"Fermat planes in P^5, d1={d} (15*d1^3)", 15 * d ** 3, comp.details["planes"]))
        rows.append(AnchorRow(f"isolated planes, d1={d}", [15 * d ** 3, 0], list(comp.components[0])))
    if "cone46" in want:
        d = cfg.cone_d
        comp = guarded(lambda: component_report("cone46", d1=d, seed=cfg.seed, prime=cfg.prime))
        rows.append(AnchorRow(f"cone families, d1={d}", [d, 1], list(comp.components[0])))
        rows.append(AnchorRow("linear conditions at m1 (d1+1)", d + 1, comp.details["ranks"]["m1"]))
        rows.append(AnchorRow("linear conditions at m2 (d1+1)", d + 1, comp.details["ranks"]["m2"]))
    if "bundle" in want:
        n, degs = 2 + len(cfg.surface), cfg.surface
        d1 = degs[0]
        e = 1
        for x in degs[1:]:
            e *= x
        delta = int(d1 == 2)
        chern = guarded(lambda: chern_data(n, degs))
        h = cohomology_of_E(n, degs)
        rows.append(AnchorRow(f"c2 = (d1-1)e for {list(degs)}", (d1 - 1) * e, chern["c2"]))
        rows.append(AnchorRow(f"ext1 for {list(degs)}", 1, ext1_check(n, degs)))
        rows.append(AnchorRow(f"h0(E) = 3 + delta for {list(degs)}", 3 + delta, h[0]))
        rows.append(AnchorRow(f"h1(E) for {list(degs)}", 0, h[1]))
        F = _field(cfg.prime)
        Z = build_z_configuration(n, degs, F, cfg.seed)
        rows.append(AnchorRow(f"Z has Cayley-Bacharach for O(d-n), {list(degs)}", True,
                              cayley_bacharach_check(Z, sum(degs) - n).holds))
    return {"rows": [r.to_json() for r in rows], "passed": all(r.passed for r in rows),
            "seed": cfg.seed, "prime": cfg.prime}


# subcommand handlers: each returns (json document, text rendering, exit code)

def cmd_cohomology(args, cfg):
    from .hilbert import CIType, ideal_sheaf_cohomology, structure_sheaf_cohomology
    try:
        ci = CIType(args.n, tuple(args.degrees))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fn = ideal_sheaf_cohomology if args.sheaf == "ideal" else structure_sheaf_cohomology
    doc = fn(ci, args.twist).to_json()
    return doc, f"h = {doc['h']}  chi = {doc['chi']}", EXIT_OK


def cmd_cb(args, cfg):
    from .cayley_bacharach import (PointSet, build_grid_scheme, build_z_configuration, cayley_bacharach_check,
                                   h0_ideal_points, random_points)
    F = _field(cfg.prime)
    try:
        if args.points:
            Z = PointSet.load(args.points, F)
        elif args.grid:
            Z = build_grid_scheme(args.ambient, args.grid, F, cfg.seed)
        elif args.z_config:
            Z = build_z_configuration(args.ambient, args.z_config, F, cfg.seed)
        elif args.random:
            Z = random_points(args.ambient, args.random, F, cfg.seed)
        else:
            raise UsageError("one of --grid, --z-config, --random, --points is required")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = cayley_bacharach_check(Z, args.m)
    doc = {"holds": res.holds, "witness": list(res.witness) if res.witness else None,
           "points": len(Z), "m": args.m, "h0": h0_ideal_points(Z, args.m), "prime": F.p}
    text = f"holds: {str(res.holds).lower()}" + ("" if res.holds else f"  witness: {list(res.witness)}")
    return doc, text, EXIT_OK


def _fano_text(doc, label):
    dims = sorted(set(doc["component_dims"]))
    return f"{label}: {len(doc['items'])}  components: {doc['component_count']} (dims {dims})"


def cmd_fano_lines(args, cfg):
    from .fano import fermat_lines, perturbed_fermat_lines
    F = _field(cfg.prime, [args.d], [args.d, args.d - 1])
    if args.surface_only:
        rep = fermat_lines(args.d, F)
    else:
        rep, _, _ = perturbed_fermat_lines(args.d, F, cfg.seed)
    doc = rep.to_json()
    return doc, _fano_text(doc, "lines"), EXIT_OK


def cmd_fano_planes(args, cfg):
    from .fano import fermat_planes_p5
    F = _field(cfg.prime, [args.d], [args.d, args.d - 1])
    try:
        doc = fermat_planes_p5(args.d, F).to_json()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return doc, _fano_text(doc, "planes"), EXIT_OK


def cmd_fano_splitting(args, cfg):
    from .fano import normal_bundle_splitting
    from .poly import parse_poly
    from .subspace import LinearSubspace
    F = _field(cfg.prime)
    with open(args.hypersurface) as fh:
        f = parse_poly(fh.read(), field=F)
    with open(args.line) as fh:
        data = json.load(fh)
    pts = data["points"] if isinstance(data, dict) else data
    try:
        f = parse_poly(str(f), num_vars=len(pts[0]), field=F) if f.num_vars < len(pts[0]) else f
        comp = normal_bundle_splitting(f, LinearSubspace.from_points(pts, F), detail=True)
    except SingularAlong as exc:
        return {"error": str(exc), "singular": True}, f"singular: {exc}", EXIT_FAIL
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    st = comp.splitting
    doc = {"splitting": list(st.twists), "rank": st.rank, "degree": st.degree, "h0": st.h0(),
           "h": {str(k): v for k, v in sorted(comp.h.items())}}
    return doc, f"splitting {st}  h0(N) = {st.h0()}", EXIT_OK


def cmd_fano_bott(args, cfg):
    from .bott import bott_line_count
    try:
        count = bott_line_count(args.n, args.deg, cfg.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return {"n": args.n, "deg": args.deg, "count": count}, str(count), EXIT_OK


def cmd_fano_example46(args, cfg):
    from .cones import example46
    F = _field(cfg.prime, [args.d], [args.d, args.d - 1])
    doc = example46(args.d, F, cfg.seed).to_json()
    text = f"cone families: {doc['component_count']}  ranks: m1={doc['ranks']['m1']} m2={doc['ranks']['m2']}"
    return doc, text, EXIT_OK


def cmd_bundle(args, cfg):
    from .bundle import bundle_report
    try:
        rep = bundle_report(args.n, tuple(args.degrees))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = rep.to_json()
    text = (f"c2 = {doc['chern']['c2']}  h = {doc['h']}  chi = {doc['chi']}  ext1 = {doc['ext1']}  "
            f"K_X = {doc['params']['K_X']}H")
    return doc, text, EXIT_OK


def cmd_components(args, cfg):
    from .bundle import component_report
    try:
        res = component_report(args.example, args.d1, args.d2, args.d3, cfg.seed, cfg.prime)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = res.to_json()
    text = ", ".join(f"{c} component(s) of dimension {k}" for c, k in res.components)
    return doc, text, EXIT_OK


def cmd_examples(args, cfg):
    if args.only:
        cfg.only = args.only
    doc = run_examples_all(cfg)
    width = max(len(r["name"]) for r in doc["rows"])
    lines = [f"{r['name']:<{width}}  {json.dumps(r['expected']):>10}  {json.dumps(r['computed']):>10}  {r['status']}"
             for r in doc["rows"]]
    lines.append("ALL PASS" if doc["passed"] else "SOME FAILED")
    return doc, "\n".join(lines), EXIT_OK if doc["passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", default=argparse.SUPPRESS,
                        help="field characteristic, or 'auto' (smallest admissible prime above 10^6)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help=f"seed for all random choices (default: ${SEED_ENV} or 0)")
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="cibundles", parents=[common],
                                description="Exact checks for bundles on complete-intersection surfaces.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cohomology", parents=[common],
                       help="h^i of O_X(m) or I_X(m) for a complete intersection (anchor: h^1(O_X(m)) = 0 on surfaces)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--degrees", type=_int_list, required=True)
    c.add_argument("--twist", type=int, required=True)
    c.add_argument("--sheaf", choices=("structure", "ideal"), default="structure")
    c.set_defaults(handler=cmd_cohomology)

    c = sub.add_parser("cb", parents=[common],
                       help="Cayley-Bacharach check for a point set (anchor: the (3,3) grid at m = 3 holds)")
    c.add_argument("--grid", type=_int_list, help="degrees of the hyperplane-union divisors")
    c.add_argument("--z-config", type=_int_list, help="surface degrees d1,...,d_{n-2}: Z inside a plane")
    c.add_argument("--random", type=int, help="number of random points")
    c.add_argument("--points", help="JSON file with a list of homogeneous coordinate vectors")
    c.add_argument("--ambient", type=int, default=2)
    c.add_argument("--m", type=int, required=True)
    c.set_defaults(handler=cmd_cb)

    fano = sub.add_parser("fano", parents=[common], help="linear spaces on hypersurfaces")
    fsub = fano.add_subparsers(dest="fano_command", required=True)
    c = fsub.add_parser("lines-fermat", parents=[common],
                        help="the 3d^2 Fermat lines and their normal bundles (anchor: 108 isolated lines for d = 6)")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--surface-only", action="store_true", help="skip the perturbed threefold")
    c.set_defaults(handler=cmd_fano_lines)
    c = fsub.add_parser("planes-fermat", parents=[common],
                        help="the 15d^3 planes on the Fermat fourfold (anchor: 405 for d = 3)")
    c.add_argument("--d", type=int, required=True)
    c.set_defaults(handler=cmd_fano_planes)
    c = fsub.add_parser("splitting", parents=[common], help="normal bundle splitting type of a line on a hypersurface")
    c.add_argument("--hypersurface", required=True, help="file holding the equation in text form")
    c.add_argument("--line", required=True, help="JSON file with two points spanning the line")
    c.set_defaults(handler=cmd_fano_splitting)
    c = fsub.add_parser("bott", parents=[common],
                        help="line count by torus localization (anchor: 2875 on the quintic threefold)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--deg", type=int, required=True)
    c.set_defaults(handler=cmd_fano_bott)
    c = fsub.add_parser("example46", parents=[common],
                        help="cone families on g + h = 0 (anchor: d cone families, rank d + 1)")
    c.add_argument("--d", type=int, required=True)
    c.set_defaults(handler=cmd_fano_example46)

    c = sub.add_parser("bundle", parents=[common],
                       help="Chern data and cohomology of E (anchor: h^0 = 3 + delta, h^1 = 0, ext^1 = 1)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--degrees", type=_int_list, required=True)
    c.set_defaults(handler=cmd_bundle)

    c = sub.add_parser("components", parents=[common], help="moduli component counts for one worked example")
    c.add_argument("--example", required=True, choices=("quintic", "fermat4", "spinor", "fermat5", "cone46"))
    c.add_argument("--d1", type=int)
    c.add_argument("--d2", type=int)
    c.add_argument("--d3", type=int)
    c.set_defaults(handler=cmd_components)

    ex = sub.add_parser("examples", parents=[common], help="worked examples against their published numbers")
    esub = ex.add_subparsers(dest="examples_command", required=True)
    c = esub.add_parser("run-all", parents=[common], help="run every example; exit 1 if any anchor fails")
    c.add_argument("--only", nargs="*", choices=("quintic", "fermat4", "spinor", "fermat5", "cone46", "bundle"))
    c.set_defaults(handler=cmd_examples)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    seed = getattr(args, "seed", None)
    if seed is None:
        try:
            seed = int(os.environ.get(SEED_ENV, "0"))
        except ValueError:
            parser.error(f"${SEED_ENV} must be an integer")
    cfg = RunConfig(prime=getattr(args, "prime", "auto"), seed=seed, format=getattr(args, "format", "text"))
    try:
        doc, text, code = args.handler(args, cfg)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except DegenerateSample as exc:
        print(f"degenerate sample: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if cfg.format == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
