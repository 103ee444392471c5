"""Command line surface: tessera {list|verify|analyze|render|project|expand}.

Reports go to stdout as JSON with stable key order and no timestamps, so
repeated runs with the same inputs are byte-identical.  Exit codes:
0 success, 1 validation or argument failure, 2 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field as dc_field

from . import analysis, engine, render, rules
from .engine import CapExceededError, DEFAULT_CAP
from .numberfield import DEFAULT_PRECISION_BITS, SilverIndex
from .rules import RuleError, RuleSystem

REPORT_SCHEMA = "tessera-report-v1"


@dataclass
class Config:
    precision_bits: int = DEFAULT_PRECISION_BITS
    eps_geo: float = 1e-9
    tile_cap: int = DEFAULT_CAP
    output_dir: str = "."
    style: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.precision_bits < 16 or self.eps_geo <= 0 or self.tile_cap < 1:
            raise ValueError("config values must be positive (precision >= 16, cap >= 1)")

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            obj = json.load(fh)
        allowed = {"precision_bits", "eps_geo", "tile_cap", "output_dir", "style"}
        extra = set(obj) - allowed
        if extra:
            raise ValueError(f"unknown config field(s): {sorted(extra)}")
        return cls(**obj)

    def make_style(self):
        return render.Style(**{k: tuple(v) if isinstance(v, list) else v
                               for k, v in self.style.items()})


def resolve_rule(name, config: Config) -> RuleSystem:
    if name.endswith(".json") or os.path.sep in name or os.path.exists(name):
        return rules.load_rule(name, config.precision_bits)
    return rules.catalog(name)


def resolve_type(rule: RuleSystem, spec):
    if spec is None:
        return 0
    try:
        tid = int(spec)
    except ValueError:
        return rule.type_by_name(str(spec)).id
    if not 0 <= tid < len(rule.tile_types):
        raise RuleError(f"type id {tid} out of range for {rule.name}")
    return tid


def _radix_label(rule: RuleSystem) -> str:
    if rule.complex_radix is not None:
        return rule.complex_radix.form
    return str(rule.field.min_poly)


def _emit(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=1) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_list(args, config: Config) -> int:
    lines = []
    for name in rules.CATALOG_NAMES:
        r = rules.catalog(name)
        lines.append(f"{name:26s} dim={r.dimension} radix={_radix_label(r)} "
                     f"types={len(r.tile_types)}")
    lines.append("silver-1d:<bits>           parametric 1-D silver rules, e.g. silver-1d:1011")
    lines.append("cartesian:<bits>:<mode>    cartesian squares, mode translation|isometry")
    sys.stdout.write("\n".join(sorted(lines)) + "\n")
    return 0


def cmd_verify(args, config: Config) -> int:
    rule = resolve_rule(args.rule, config)
    mr = rules.validate_measure(rule, config.eps_geo)
    report = {
        "schema": REPORT_SCHEMA,
        "rule": rule.name,
        "depth": args.depth,
        "measure_check": {
            "ok": mr.ok,
            "exact": mr.exact,
            "failures": mr.failures,
            "digit_bound_required": mr.digit_bound_required,
            "digit_bound_actual": mr.digit_bound_actual,
        },
    }
    ok = mr.ok
    if rule.equivalence == "measure-only":
        report["geometry"] = "skipped (measure-only rule)"
    else:
        tid = resolve_type(rule, args.type)
        tol = 1e-6 if rule.name.startswith("taylor") else config.eps_geo
        tiling = engine.decompose(rule, tid, args.depth, config.tile_cap)
        dr = engine.disjointness_report(tiling)
        area_ok = dr.area_deficit <= tol * max(1.0, dr.expected_area) * max(1, args.depth)
        overlap_ok = dr.max_overlap <= tol * dr.largest_tile_area if dr.largest_tile_area else True
        count_ok = dr.tile_count == rule.partition_matrix().power(args.depth).row_sum(tid)
        report.update({
            "tile_count": dr.tile_count,
            "area_deficit": dr.area_deficit,
            "max_overlap": dr.max_overlap,
            "area_ok": area_ok,
            "overlap_ok": overlap_ok,
            "count_ok": count_ok,
        })
        ok = ok and area_ok and overlap_ok and count_ok
    report["ok"] = ok
    _emit(report)
    return 0 if ok else 1


def cmd_analyze(args, config: Config) -> int:
    rule = resolve_rule(args.rule, config)
    u = rule.partition_matrix()
    eig = analysis.dominant_eigen(u)
    verdict = analysis.aperiodicity_by_irrationality(rule)
    report = {
        "schema": REPORT_SCHEMA,
        "rule": rule.name,
        "partition_matrix": [list(r) for r in u.entries],
        "eigenvalue": eig.eigenvalue,
        "eigenvector": list(eig.eigenvector),
        "residual": eig.residual,
        "radix_min_poly": str(rule.field.min_poly) if rule.complex_radix is None
                          else str(rule.complex_radix.min_poly),
        "aperiodicity": {
            "method": verdict.method,
            "verdict": verdict.verdict,
            "evidence": verdict.evidence,
        },
    }
    if rule.complex_radix is None:
        witness = analysis.z_rho_member(rule.field.from_rational(2), max_degree=20)
        report["two_in_Zrho"] = witness if witness is not None else "none-up-to-20"
    else:
        report["two_in_Zrho"] = None
    if rule.name.startswith("silver-1d:"):
        b = SilverIndex.parse(rule.name.split(":", 1)[1])
        report["silver_identity"] = analysis.silver_identity_check(b)
    _emit(report)
    return 0


def cmd_render(args, config: Config) -> int:
    rule = resolve_rule(args.rule, config)
    style = config.make_style()
    tid = resolve_type(rule, args.type)
    out_path = args.out or os.path.join(
        config.output_dir,
        f"{rule.name.replace(':', '_')}_{args.mode}_d{args.depth}.svg",
    )
    if args.mode == "tiles":
        if rule.dimension != 2:
            raise RuleError("mode 'tiles' needs a 2-D rule (try barcode)")
        tiling = engine.decompose(rule, tid, args.depth, config.tile_cap)
        doc = render.render_tiling(tiling, style)
        n = len(tiling.tiles)
    elif args.mode == "barcode":
        if rule.dimension != 1:
            raise RuleError("mode 'barcode' needs a 1-D rule (try tiles)")
        tiling = engine.decompose(rule, tid, args.depth, config.tile_cap)
        doc = render.render_barcode(tiling, style)
        n = len(tiling.tiles)
    elif args.mode == "points":
        es = []
        for d in range(1, args.depth + 1):
            es.extend(engine.expansions(rule, tid, d, config.tile_cap))
        doc = render.render_points(es, style)
        n = len(es)
    elif args.mode == "curves":
        tiling = engine.decompose(rule, tid, args.depth, config.tile_cap)
        doc = render.render_decorations(tiling, style, curves_only=args.curves_only,
                                        pinwheel=args.pinwheel)
        n = len(tiling.tiles)
    elif args.mode == "path":
        es = engine.expansions(rule, tid, args.depth, config.tile_cap)
        pick = max(range(len(es)), key=lambda i: (abs(es[i].value), -i))
        p = engine.path(es[pick])
        context = engine.decompose(rule, tid, args.depth, config.tile_cap) \
            if rule.dimension == 2 else None
        doc = render.render_path(p, context, style)
        n = len(es[pick].steps)
    else:
        raise RuleError(f"unknown render mode {args.mode!r}")
    with open(out_path, "w") as fh:
        fh.write(doc)
    sys.stdout.write(f"wrote {out_path} ({n} elements, mode {args.mode})\n")
    return 0


def cmd_project(args, config: Config) -> int:
    rule = resolve_rule(args.rule, config)
    if rule.dimension != 2:
        raise RuleError("project needs a 2-D rule")
    projected = engine.project_to_1d(rule)
    out_path = args.out or os.path.join(
        config.output_dir, f"{rule.name.replace(':', '_')}_projected.json")
    rules.save_rule(projected, out_path)
    u = projected.partition_matrix()
    _emit({
        "schema": REPORT_SCHEMA,
        "rule": rule.name,
        "projected_rule": projected.name,
        "out": out_path,
        "partition_matrix": [list(r) for r in u.entries],
        "interval_lengths": [float(t.length) for t in projected.tile_types],
        "digits": [d.value(projected.multiplier_value(), 1).real
                   for d in projected.digit_set()],
    })
    return 0


def cmd_expand(args, config: Config) -> int:
    rule = resolve_rule(args.rule, config)
    tid = resolve_type(rule, args.type)
    fn = engine.decompose if args.mode == "decompose" else engine.inflate_outward
    tiling = fn(rule, tid, args.depth, config.tile_cap)
    tiles = [
        {
            "type": t.type_id,
            "scale": t.transform.scale_exponent,
            "rot": t.transform.rotation_power,
            "conj": t.transform.conjugate,
            "translation": [t.transform.translation.real, t.transform.translation.imag],
        }
        for t in tiling.tiles
    ]
    _emit({
        "schema": REPORT_SCHEMA,
        "rule": rule.name,
        "root_type": tid,
        "depth": args.depth,
        "mode": tiling.mode,
        "tile_count": len(tiles),
        "tiles": tiles,
    })
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--precision", type=int, help="radix precision in bits")
    common.add_argument("--cap", type=int, help="tile count cap")

    p = argparse.ArgumentParser(
        prog="tessera",
        description="Substitution tilings as positional number systems.",
        epilog="Rules are catalog names, parametric names (silver-1d:<bits>, "
               "cartesian:<bits>:<translation|isometry>), or paths to rule JSON files.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("list", parents=[common], help="list catalog rules")
    sp.set_defaults(fn=cmd_list)

    sp = sub.add_parser("verify", parents=[common], help="measure and geometry checks")
    sp.add_argument("rule")
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--type", default=None)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("analyze", parents=[common], help="spectral and aperiodicity report")
    sp.add_argument("rule")
    sp.set_defaults(fn=cmd_analyze)

    sp = sub.add_parser("render", parents=[common], help="write an SVG figure")
    sp.add_argument("rule")
    sp.add_argument("--mode", default="tiles",
                    choices=["tiles", "barcode", "points", "curves", "path"])
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--type", default=None)
    sp.add_argument("--out", default=None)
    sp.add_argument("--pinwheel", type=int, default=1,
                    help="render-time rotated copies (powers of u)")
    sp.add_argument("--curves-only", action="store_true")
    sp.set_defaults(fn=cmd_render)

    sp = sub.add_parser("project", parents=[common], help="measure-preserving projection to 1-D")
    sp.add_argument("rule")
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_project)

    sp = sub.add_parser("expand", parents=[common], help="tile list report")
    sp.add_argument("rule")
    sp.add_argument("--depth", type=int, default=2)
    sp.add_argument("--type", default=None)
    sp.add_argument("--mode", default="decompose", choices=["decompose", "inflate"])
    sp.set_defaults(fn=cmd_expand)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = Config.load(args.config) if args.config else Config()
        if args.precision:
            config.precision_bits = args.precision
        if args.cap:
            config.tile_cap = args.cap
        return args.fn(args, config)
    except CapExceededError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except (RuleError, ValueError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
