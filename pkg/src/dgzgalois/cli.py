"""Command-line front end: build, verify-facts, scan, certify.

Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.
JSON output is deterministic (sorted keys, no timings) for a fixed configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import SCHEMA_VERSION, default_L
from . import projplane as pp
from .dgzcurve import (ConstructionError, build_dgz, check_construction, expected_singular_set,
                       singular_locus, verify_fact3, verify_fact4)
from .fieldcore import FieldCtx, FieldError, prime_power
from .galois import (DecideConfig, ScanConfig, SearchBounds, Verdict, decide, recheck_negative,
                     recheck_positive, theorem_scan)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    q: int
    L: int
    ext_bound: int | None
    samples: int
    seed: int
    format: str
    out: str | None

    def to_json(self) -> dict:
        return {"q": self.q, "L": self.L, "ext_bound": self.ext_bound,
                "samples": self.samples, "seed": self.seed}


def _config(args) -> RunConfig:
    try:
        prime_power(args.q)
    except FieldError as exc:
        raise UsageError(str(exc)) from None
    L = args.L if args.L is not None else default_L(args.q)
    if L < 1:
        raise UsageError("--L must be positive")
    if args.ext_bound is not None and args.ext_bound < 1:
        raise UsageError("--ext-bound must be positive")
    if args.samples < 0:
        raise UsageError("--samples must be non-negative")
    return RunConfig(args.q, L, args.ext_bound, args.samples, args.seed, args.format, args.out)


def _need_divides(cfg: RunConfig, k: int) -> None:
    if cfg.L % k:
        raise UsageError(f"extension degree {k} does not divide --L {cfg.L}")


def _curve(cfg: RunConfig):
    return build_dgz(cfg.q, cfg.L)


# -- commands ----------------------------------------------------------------

def cmd_build(cfg: RunConfig) -> dict:
    try:
        curve = _curve(cfg)
    except ConstructionError as exc:
        return {"command": "build", "config": cfg.to_json(), "error": str(exc), "pass": False}
    report = curve.to_json()
    report["command"] = "build"
    report["config"] = cfg.to_json()
    report["checks"] = check_construction(curve)
    report["pass"] = all(report["checks"].values())
    return report


def cmd_verify_facts(cfg: RunConfig) -> dict:
    k = cfg.ext_bound or 2
    _need_divides(cfg, k)
    curve = _curve(cfg)
    checks = check_construction(curve)
    report = {"command": "verify-facts", "config": cfg.to_json(), "construction": checks}
    if cfg.q == 2:
        report["facts"] = {"status": "skipped",
                           "reason": "the singular-locus and line-order facts are only claimed for q > 2"}
        report["pass"] = all(checks.values())
        return report
    sing = singular_locus(curve, k)
    expected = expected_singular_set(curve, k)
    rational = [P for P in sing if P.def_degree == 1]
    f3 = verify_fact3(curve, k)
    f4 = verify_fact4(curve, k)
    report["singular_locus"] = {
        "degree": k,
        "count": len(sing),
        "expected_count": len(expected),
        "equals_expected": set(sing) == expected,
        "rational_count": len(rational),
    }
    report["fact3"] = f3
    report["fact4"] = f4
    report["pass"] = (all(checks.values()) and set(sing) == expected and not rational
                      and f3["pass"] and f4["pass"])
    return report


def cmd_scan(cfg: RunConfig) -> dict:
    top = cfg.ext_bound if cfg.ext_bound is not None else 4
    exhaustive = min(2, top)
    sample_degrees = tuple(range(3, top + 1))
    for k in (exhaustive,) + (sample_degrees if cfg.samples else ()):
        _need_divides(cfg, k)
    curve = _curve(cfg)
    sc = ScanConfig(samples=cfg.samples, seed=cfg.seed, sample_degrees=sample_degrees,
                    exhaustive_degree=exhaustive,
                    decide=DecideConfig(bounds=SearchBounds(seed=cfg.seed)))
    report = theorem_scan(curve, sc)
    report["command"] = "scan"
    report["config"] = cfg.to_json()
    report["pass"] = report["summary"]["pass"]
    return report


def _parse_fq(ctx: FieldCtx, q: int, token: str) -> int:
    try:
        v = int(token)
    except ValueError:
        raise UsageError(f"malformed coordinate digit {token!r}") from None
    if not 0 <= v < q:
        raise UsageError(f"digit {v} is not an element of F_{q} (expected 0..{q - 1})")
    # base-p digits of v are coordinates over F_p in the basis of powers of theta_1
    theta = ctx.subfield_generator(1)
    out, power = 0, 1
    while v:
        v, r = divmod(v, ctx.p)
        out = ctx.add(out, ctx.mul(ctx.from_int(r), power))
        power = ctx.mul(power, theta)
    return out


def parse_point(ctx: FieldCtx, q: int, text: str, subfield: int | None):
    """Parse "c,c,c"; each coordinate is d0:d1:... over F_q in the basis 1, theta_k, theta_k^2, ..."""
    parts = [t.strip() for t in text.split(",")]
    if len(parts) != 3 or not all(parts):
        raise UsageError(f"--point needs three comma-separated coordinates, got {text!r}")
    digits = [p.split(":") for p in parts]
    k = subfield or max(len(d) for d in digits)
    if any(len(d) > k for d in digits):
        raise UsageError(f"a coordinate has more than {k} digits for the degree-{k} subfield")
    if ctx.L % k:
        raise UsageError(f"subfield degree {k} does not divide L={ctx.L}")
    theta = ctx.subfield_generator(k)
    coords = []
    for ds in digits:
        val, power = 0, 1
        for d in ds:
            val = ctx.add(val, ctx.mul(_parse_fq(ctx, q, d), power))
            power = ctx.mul(power, theta)
        coords.append(val)
    if not any(coords):
        raise UsageError("(0,0,0) is not a projective point")
    return pp.point(ctx, coords), k


def cmd_certify(cfg: RunConfig, point_text: str, subfield: int | None) -> dict:
    if subfield is not None and subfield < 1:
        raise UsageError("--subfield must be positive")
    curve = _curve(cfg)
    P, k = parse_point(curve.ctx, cfg.q, point_text, subfield)
    bound = cfg.ext_bound
    if bound is not None and P.def_degree > bound:
        raise UsageError(f"point of degree {P.def_degree} exceeds --ext-bound {bound}")
    cert = decide(curve, P, DecideConfig(bounds=SearchBounds(seed=cfg.seed)))
    report = {"command": "certify", "config": cfg.to_json(), "input": point_text,
              "subfield": k, "field": curve.ctx.header(), "certificate": cert.to_json(curve.ctx)}
    if cert.verdict is Verdict.POSITIVE:
        recheck = recheck_positive(curve, P, cert.evidence)
        report["recheck"] = recheck
        report["pass"] = recheck["pass"]
    elif cert.verdict is Verdict.NEGATIVE:
        ok = recheck_negative(curve, cert.evidence)
        report["recheck"] = {"profile_reproduced": ok, "pass": ok}
        report["pass"] = ok
    else:
        report["pass"] = False
    return report


# -- output ------------------------------------------------------------------

def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_text(report: dict) -> str:
    cmd = report.get("command")
    cfg = report.get("config", {})
    lines = [f"{cmd}  q={cfg.get('q')}  L={cfg.get('L')}"]
    if "error" in report:
        lines.append(f"error: {report['error']}")
    if cmd == "build" and "degree" in report:
        lines.append(f"degree {report['degree']}, {len(report['f'])} terms")
        lines += [f"  {k}: {v}" for k, v in report["checks"].items()]
    elif cmd == "verify-facts":
        lines += [f"  construction {k}: {v}" for k, v in report["construction"].items()]
        if "facts" in report:
            lines.append(f"  facts {report['facts']['status']}: {report['facts']['reason']}")
        else:
            s = report["singular_locus"]
            lines.append(f"  singular points over degree {s['degree']}: {s['count']} "
                         f"(expected {s['expected_count']}, rational {s['rational_count']})")
            f3, f4 = report["fact3"], report["fact4"]
            lines.append(f"  fact3: {f3['pairs_checked']} pairs, orders {f3['order_histogram']}, "
                         f"{len(f3['violations'])} violations")
            lines.append(f"  fact4: {f4['smooth_points']} smooth points, "
                         f"{len(f4['violations'])} violations")
    elif cmd == "scan":
        s = report["summary"]
        lines.append(f"  scanned {s['scanned']}: galois {s['galois_count']} (expected {s['expected']}), "
                     f"negative {s['negative']}, inconclusive {len(s['inconclusive'])}")
    elif cmd == "certify":
        c = report["certificate"]
        lines.append(f"  point {c['point']['coords']} (degree {c['point']['def_degree']}): "
                     f"{c['verdict']}, deg pi = {c['deg_pi']}")
        ev = c["evidence"]
        if c["verdict"] == "Positive":
            lines.append(f"  group order {ev['order']}, {len(ev['generators'])} generators")
        elif c["verdict"] == "Negative":
            lines.append(f"  obstruction {ev['kind']} {ev['indices']} on a {ev['line_source']} line")
    lines.append("PASS" if report.get("pass") else "FAIL")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, required=True, help="field size, a prime power")
    common.add_argument("--L", type=int, default=None,
                        help="working field degree over F_q (default 12; 24 when q=2)")
    common.add_argument("--ext-bound", type=int, default=None,
                        help="max extension degree (default 2 for verify-facts, 4 for scan)")
    common.add_argument("--samples", type=int, default=50, help="sampled points per degree")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    ap = argparse.ArgumentParser(prog="dgzgalois", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="construct F = D1/D2 and write curve.json")
    sub.add_parser("verify-facts", parents=[common], help="singular locus and line-order facts")
    sub.add_parser("scan", parents=[common], help="decide every scanned point")
    c = sub.add_parser("certify", parents=[common], help="certificate for one point")
    c.add_argument("--point", required=True,
                   help="x,y,z; each coordinate d0:d1:... over F_q in the basis of the subfield generator")
    c.add_argument("--subfield", type=int, default=None,
                   help="degree of the subfield the coordinates live in (default: longest digit vector)")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "build":
            report = cmd_build(cfg)
        elif args.command == "verify-facts":
            report = cmd_verify_facts(cfg)
        elif args.command == "scan":
            report = cmd_scan(cfg)
        else:
            report = cmd_certify(cfg, args.point, args.subfield)
    except (UsageError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = {"schema_version": SCHEMA_VERSION, **report}
    text = render_json(report) if cfg.format == "json" else render_text(report)
    if cfg.out:
        try:
            with open(cfg.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {cfg.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return EXIT_PASS if report.get("pass") else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
