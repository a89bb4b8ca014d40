"""Command-line front end: ``mrq <command> [options]``.

Exit codes: 0 all checks pass, 1 a checked claim failed, 2 engine error, 64 usage.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from fractions import Fraction
from typing import Callable

from mrq import __version__, ctest, dwz, seqcheck
from mrq.envelope import envelope, pl_minimax

EXIT_OK, EXIT_FAIL, EXIT_ENGINE, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n")


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _k_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        a = b = None
    if not sep or a is None or a > b:
        raise argparse.ArgumentTypeError(f"expected A..B with A <= B, got {text!r}")
    return a, b


# -- individual checks ---------------------------------------------------------------
# each returns (passed, details)

def check_relators(samples: int = 100, seed: int = 0, bound: int = 50):
    rng = random.Random(seed)
    failures = []
    for _ in range(samples):
        p = dwz.HomParams(*(rng.randint(-bound, bound) for _ in range(3)))
        if not dwz.verify_relators(p):
            failures.append([p.k, p.ell, p.q])
    return not failures, {"samples": samples, "seed": seed, "failures": failures[:10]}


def check_negative_control(seed: int = 0):
    p = dwz.HomParams(*random.Random(seed).choices(range(-10, 11), k=3))
    res = dwz.relator_residuals(p, d_shift=1)
    broken = sorted(name for name, v in res.items() if v)
    ok = broken == ["R4"]
    return ok, {
        "params": [p.k, p.ell, p.q],
        "failing_relators": broken,
        "status": "expected-fail: confirmed" if ok else "expected-fail: NOT confirmed",
    }


def check_ctest(max_len: int = 2):
    rep = ctest.ctest_sweep(max_len)
    return rep["counterexamples"] == 0, rep


def check_cyclicity(samples: int = 1000, seed: int = 0):
    rep = ctest.cyclicity_sweep(samples, 4, seed)
    return rep["violations"] == 0, rep


def check_homology():
    rep = dwz.homology_report()
    ok = (
        rep["G_w"] == {"betti": 4, "torsion": []}
        and all(v == {"betti": 3, "torsion": []} for v in rep["M_tilde"].values())
        and rep["verdict"] == "distinct"
    )
    return ok, rep


def zlaw_report(lo: int, hi: int) -> dict:
    ks = [k for k in range(lo, hi + 1) if k]
    offsets = dwz.z_law_offsets(ks)
    by_sign = {}
    for name, sign in (("positive", 1), ("negative", -1)):
        vals = {offsets[k] for k in ks if k * sign > 0}
        by_sign[name] = sorted(vals)
    return {
        "k_range": [lo, hi],
        "tr_w": dwz.w_length(),
        "offsets_by_sign": by_sign,
        "constant_per_sign": all(len(v) <= 1 for v in by_sign.values()),
    }


def check_zlaw():
    pos = zlaw_report(5, 50)
    neg = zlaw_report(-50, -5)
    ok = pos["constant_per_sign"] and neg["constant_per_sign"]
    return ok, {"positive": pos["offsets_by_sign"]["positive"], "negative": neg["offsets_by_sign"]["negative"]}


def check_twist(samples: int = 500, seed: int = 0):
    rep = seqcheck.twist_sweep(samples, seed)
    return rep["violations"] == 0, rep


def run_checks(checks: list[tuple[str, Callable]], timings: bool) -> tuple[int, dict]:
    results = []
    worst = EXIT_OK
    for name, fn in checks:
        t0 = time.perf_counter()
        try:
            ok, details = fn()
        except Exception as exc:  # surfaced as an engine error, not a failed claim
            entry = {"name": name, "status": "error", "error": f"{type(exc).__name__}: {exc}"}
            worst = EXIT_ENGINE
        else:
            entry = {"name": name, "status": "pass" if ok else "fail", "details": details}
            if not ok and worst == EXIT_OK:
                worst = EXIT_FAIL
        if timings:
            entry["seconds"] = round(time.perf_counter() - t0, 3)
        results.append(entry)
    return worst, {"version": __version__, "checks": results, "ok": worst == EXIT_OK}


# -- commands ------------------------------------------------------------------------

def cmd_verify_all(args) -> int:
    checks = [
        ("relators", lambda: check_relators(args.samples, args.seed)),
        ("ctest_sweep", lambda: check_ctest(args.max_len)),
        ("cyclicity", lambda: check_cyclicity(1000, args.seed)),
        ("homology", check_homology),
        ("z_length_law", check_zlaw),
        ("twist_growth", lambda: check_twist(500, args.seed)),
    ]
    if args.negative_control:
        checks.insert(1, ("negative_control", lambda: check_negative_control(args.seed)))
    code, report = run_checks(checks, args.timings)
    _emit_json(report)
    return code


def cmd_ctest_sweep(args) -> int:
    ok, rep = check_ctest(args.max_len)
    _emit_json(rep)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_shorten(args) -> int:
    if any(k == 0 for k in args.k):
        raise UsageError("k = 0 is not allowed")
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["k", "genset", "l_star", "q_star", "max_length", "normalized", "normalized_decimal", "error"])
    code = EXIT_OK
    for k in args.k:
        try:
            r = dwz.shorten(k, s=args.genset)
        except dwz.WindowBoundaryError as exc:
            writer.writerow([k, args.genset, "", "", "", "", "", str(exc)])
            code = EXIT_FAIL
            continue
        writer.writerow([
            k, r.genset, r.ell_star, r.q_star, r.max_length,
            _frac(r.normalized), f"{float(r.normalized):.9f}", "",
        ])
    sys.stdout.write(out.getvalue())
    return code


def cmd_envelope(args) -> int:
    terms = dwz.envelope_terms(args.genset)
    x_star, value = pl_minimax(terms)
    profile = []
    if args.k is not None:
        if args.k == 0:
            raise UsageError("--k must be nonzero")
        grid = [Fraction(l, args.k) for l in range(-3 * abs(args.k), 3 * abs(args.k) + 1, max(1, abs(args.k) // 20))]
        profile = dwz.normalized_profile(args.k, args.genset, grid)
    svg = render_envelope_svg(terms, x_star, value, profile, args.genset)
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    except OSError as exc:
        print(f"mrq: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    print(f"x*={_frac(x_star)} value={_frac(value)}")
    return EXIT_OK


def cmd_homology(args) -> int:
    ok, rep = check_homology()
    _emit_json(rep)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_zlaw(args) -> int:
    rep = zlaw_report(*args.k_range)
    _emit_json(rep)
    return EXIT_OK if rep["constant_per_sign"] else EXIT_FAIL


def cmd_twist_sweep(args) -> int:
    ok, rep = check_twist(args.samples, args.seed)
    _emit_json(rep)
    return EXIT_OK if ok else EXIT_FAIL


# -- svg -----------------------------------------------------------------------------

_COLORS = ("#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")


def render_envelope_svg(terms, x_star, value, profile=(), title="") -> str:
    """Plain polyline plot of the terms and their upper envelope on ``[-3, 3]``."""
    width, height, pad = 640, 420, 40
    xs = [Fraction(i, 20) for i in range(-60, 61)]
    y_max = max(envelope(terms, x) for x in xs)

    def px(x):
        return pad + float((x + 3) / 6) * (width - 2 * pad)

    def py(y):
        return height - pad - float(y / y_max) * (height - 2 * pad)

    def poly(f, color, w):
        pts = " ".join(f"{px(x):.2f},{py(f(x)):.2f}" for x in xs)
        return f'<polyline fill="none" stroke="{color}" stroke-width="{w}" points="{pts}"/>'

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f"<!-- mrq {__version__} -->",
        '<rect width="100%" height="100%" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{px(0):.2f}" y1="{pad}" x2="{px(0):.2f}" y2="{height - pad}" stroke="#bbb"/>',
    ]
    for t in range(-3, 4):
        lines.append(f'<text x="{px(t):.2f}" y="{height - pad + 16}" font-size="11" text-anchor="middle">{t}</text>')
    for term, color in zip(terms, _COLORS * 2):
        lines.append(poly(term, color, 1))
    lines.append(poly(lambda x: envelope(terms, x), "black", 2.5))
    for x, y in profile:
        if -3 <= x <= 3:
            lines.append(f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="2" fill="#d62728"/>')
    lines.append(f'<circle cx="{px(x_star):.2f}" cy="{py(value):.2f}" r="4" fill="red"/>')
    label = f"x*={_frac(x_star)} value={_frac(value)}"
    lines.append(f'<text x="{pad}" y="{pad - 12}" font-size="13">{title} {label}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# -- entry point ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mrq", description="Exact checks on free-group words and the D_{w,z} family.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify-all", help="run every check and emit a JSON report")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=100, help="random (k, l, q) triples for the relator check")
    v.add_argument("--max-len", type=int, default=2, help="word-length bound of the C-test sweep")
    v.add_argument("--negative-control", action="store_true")
    v.add_argument("--timings", action="store_true", help="include wall-clock seconds (breaks byte-identity)")
    v.set_defaults(func=cmd_verify_all)

    c = sub.add_parser("ctest-sweep")
    c.add_argument("--max-len", type=int, default=2)
    c.set_defaults(func=cmd_ctest_sweep)

    s = sub.add_parser("shorten")
    s.add_argument("--genset", choices=("g", "u"), default="g")
    s.add_argument("--k", type=_int_list, required=True)
    s.set_defaults(func=cmd_shorten)

    e = sub.add_parser("envelope")
    e.add_argument("--genset", choices=("g", "u"), default="g")
    e.add_argument("--out", required=True)
    e.add_argument("--k", type=int)
    e.set_defaults(func=cmd_envelope)

    h = sub.add_parser("homology")
    h.set_defaults(func=cmd_homology)

    z = sub.add_parser("zlaw")
    z.add_argument("--k-range", type=_k_range, default=(-50, 50))
    z.set_defaults(func=cmd_zlaw)

    t = sub.add_parser("twist-sweep")
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--samples", type=int, default=500)
    t.set_defaults(func=cmd_twist_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"mrq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        print(f"mrq: engine error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
