"""Command-line front end.

Exit status: 0 success, 1 domain error, 2 usage error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from . import analysis
from .analysis import ConsistencyError
from .complex import TypeDComplex
from .curves import Multicurve, fast_double, verify_main_theorem
from .doubling import double_via_oracle
from .ingest import (
    BUILTINS, TEST_PAIRING_INDICES, KnotInput, builtin_knot, parse, pairing_fixture,
    segments_document,
)
from .segments import decompose, fmt_rational

EXIT_DOMAIN, EXIT_USAGE, EXIT_VERIFY = 1, 2, 3


class VerificationFailure(Exception):
    pass


# -- helpers --------------------------------------------------------------------


def load_input(args) -> KnotInput:
    if args.knot:
        inp = builtin_knot(args.knot)
    else:
        if args.file == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(args.file, "rb") as fh:
                data = fh.read()
        inp = parse(data)
    if getattr(args, "ungraded", False):
        inp = strip_gradings(inp)
    return inp


def strip_gradings(inp: KnotInput) -> KnotInput:
    if inp.tier == "cfd":
        c: TypeDComplex = inp.payload.copy()
        c.generators = {n: replace(g, grading=None) for n, g in c.generators.items()}
        return KnotInput(inp.name, inp.tier, c)
    if inp.tier == "segments":
        return KnotInput(inp.name, inp.tier, inp.payload.ungraded())
    return inp


def curves_document(inp: KnotInput, m: Multicurve) -> dict:
    curves = []
    for c in m:
        d = {"kind": c.kind, "param": c.param}
        if m.graded and c.kind != "r":
            r, a1, a2 = c.shift
            d.update(delta=fmt_rational(r), alex1=fmt_rational(a1), alex2=fmt_rational(a2))
        curves.append(d)
    return {"name": inp.name, "tier": inp.tier, "graded": m.graded, "curves": curves}


def emit(args, text: str, doc: dict) -> None:
    if args.format == "json":
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    elif text:
        print(text)


def note_precision(inp: KnotInput) -> None:
    if inp.tier == "hfk_minus":
        print("note: hfk_minus input determines the curves only up to grading", file=sys.stderr)


# -- commands -------------------------------------------------------------------


def cmd_double(args) -> int:
    inp = load_input(args)
    note_precision(inp)
    fast = fast_double(decompose(inp))
    if inp.tier == "cfd":
        oracle = double_via_oracle(inp)
        if oracle != fast:
            raise VerificationFailure("fast path and oracle disagree; run `verify` for the diff")
    emit(args, fast.render(), curves_document(inp, fast))
    return 0


def cmd_segments(args) -> int:
    inp = load_input(args)
    note_precision(inp)
    dec = decompose(inp)
    doc = {"name": inp.name, "tier": inp.tier, "graded": dec.graded}
    doc.update(segments_document(dec))
    emit(args, dec.render(), doc)
    return 0


def cmd_verify(args) -> int:
    inp = load_input(args)
    v = verify_main_theorem(inp)
    doc = {
        "name": inp.name,
        "equal": v.equal,
        "fast": curves_document(inp, v.fast)["curves"],
        "oracle": curves_document(inp, v.oracle)["curves"],
        "diff": v.diff(),
    }
    emit(args, v.render(), doc)
    return 0 if v.equal else EXIT_VERIFY


def cmd_pair(args) -> int:
    n = analysis.floer_dim(args.theory, args.left, args.right)
    emit(args, str(n), {"theory": args.theory, "left": args.left, "right": args.right, "dim": n})
    return 0


def cmd_cable(args, parser) -> int:
    if args.knot or args.file:
        inp = load_input(args)
        note_precision(inp)
        s = analysis.cable_summary(decompose(inp), args.t)
        doc = {"name": inp.name, "t": args.t, "dim": s["dim"], "lower": s["lower"], "upper": s["upper"],
               "segment_counts": s["segment_counts"]["total"]}
        emit(args, f"dim={s['dim']} lower={s['lower']} upper={s['upper']}", doc)
        return 0
    missing = [f"--{k}" for k in ("d", "lmax", "tau") if getattr(args, k) is None]
    if missing:
        parser.error(f"cable needs --knot/--file, or all of --d --lmax --tau (missing {' '.join(missing)})")
    lower, upper = analysis.cable_bounds(args.d, args.lmax, args.tau, args.t)
    emit(args, f"lower={lower} upper={upper}", {"t": args.t, "lower": lower, "upper": upper})
    return 0


def cmd_kh_bound(args) -> int:
    n = analysis.khovanov_cable_lower_bound(args.d, args.theta2, args.t)
    emit(args, str(n), {"d": args.d, "theta2": args.theta2, "t": args.t, "lower_bound": n})
    return 0


def selftest_checks():
    """Yield (label, passed) for the pairing fixtures and the built-in knots."""
    expected = {0: "r[0]", 1: "r[-2]", -2: "r[4]"}
    for i in TEST_PAIRING_INDICES:
        got = double_via_oracle(pairing_fixture(i)).render()
        yield f"pairing fixture i={i} -> {expected[i]}", got == expected[i]
    golden = {
        "unknot": ["r[0]"],
        "trefoil": ["r[4]", "s[2] d=2 a1=1 a2=1", "sbar[2] d=2 a1=-1 a2=-1"],
        "figure8": ["r[0]", "s[2] d=0 a1=-1 a2=-1", "s[2] d=1 a1=1 a2=1",
                    "sbar[2] d=0 a1=1 a2=1", "sbar[2] d=1 a1=-1 a2=-1"],
        "torus_3_4": ["r[12]", "s[2] d=6 a1=5 a2=5", "s[4] d=2 a1=-2 a2=-2",
                      "sbar[2] d=6 a1=-5 a2=-5", "sbar[4] d=2 a1=2 a2=2"],
    }
    for name in BUILTINS:
        inp = builtin_knot(name)
        got = fast_double(decompose(inp)).render().splitlines()
        yield f"{name}: fast path matches the known multicurve", got == golden[name]
        if inp.tier == "cfd":
            yield f"{name}: oracle agrees with fast path", verify_main_theorem(inp).equal
    cables = {("trefoil", 3): 7, ("torus_3_4", 5): 13, ("unknot", 0): 1}
    for (name, t), want in cables.items():
        got = analysis.cable_hfk_dim(decompose(builtin_knot(name)), t)
        yield f"{name}: cable t={t} has dimension {want}", got == want


def cmd_selftest(args) -> int:
    results = list(selftest_checks())
    lines = [f"{'PASS' if ok else 'FAIL'} {label}" for label, ok in results]
    ok = all(ok for _, ok in results)
    doc = {"passed": ok, "checks": [{"check": l, "passed": p} for l, p in results]}
    emit(args, "\n".join(lines), doc)
    return 0 if ok else EXIT_VERIFY


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="doubletangle",
        description="Curve invariants of double tangles computed from knot Floer data.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def with_format(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        return sp

    def with_input(sp, required=True):
        g = sp.add_mutually_exclusive_group(required=required)
        g.add_argument("--knot", choices=sorted(BUILTINS), help="built-in knot")
        g.add_argument("--file", help="JSON input document ('-' for stdin)")
        sp.add_argument("--ungraded", action="store_true", help="drop gradings from the input")
        return sp

    with_format(with_input(sub.add_parser("double", help="print the multicurve of the double tangle")))
    with_format(with_input(sub.add_parser("segments", help="print the curve segments of the knot")))
    with_format(with_input(sub.add_parser("verify", help="compare the fast path with the oracle")))

    sp = with_format(sub.add_parser("pair", help="Floer homology dimension of two curves"))
    sp.add_argument("--theory", choices=analysis.THEORIES, default="HF")
    sp.add_argument("--left", required=True, help="curve such as r[7]")
    sp.add_argument("--right", required=True, help="curve such as s[2]")

    sp = with_format(with_input(sub.add_parser("cable", help="HFK dimension of the (2, 2t+1)-cable"), required=False))
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--d", type=int, help="dim HFK-hat, when no knot is given")
    sp.add_argument("--lmax", type=int, help="largest torsion order, when no knot is given")
    sp.add_argument("--tau", type=int, help="tau invariant, when no knot is given")

    sp = with_format(sub.add_parser("kh-bound", help="Khovanov lower bound for the cable"))
    sp.add_argument("--d", type=int, required=True, help="dim of reduced Khovanov homology")
    sp.add_argument("--theta2", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)

    with_format(sub.add_parser("selftest", help="run the built-in fixtures"))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "double":
            return cmd_double(args)
        if args.command == "segments":
            return cmd_segments(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "pair":
            return cmd_pair(args)
        if args.command == "cable":
            return cmd_cable(args, parser)
        if args.command == "kh-bound":
            return cmd_kh_bound(args)
        return cmd_selftest(args)
    except (VerificationFailure, ConsistencyError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
