"""Command-line interface.

Exit codes: 0 success, 1 other error, 2 parse error, 3 hypothesis not met,
4 search limit exceeded, 5 verification failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .colouring import DEFAULT_NODE_CAP, colouring_polynomial, enumerate_colourings
from .diagram import (BraidWord, WirtingerCode, braid_symmetry, braid_to_long_wirtinger, list_fixtures,
                      load_fixture, parse_braid_word, parse_pd, pd_to_long_wirtinger, wirtinger_symmetry)
from .errors import ColpolyError, HypothesisError, ParseError, VerificationFailure
from .group_ring import RingElement, render, to_json
from .groups import PointedGroup, build_named_group
from .quandle import section_cocycle
from .state_sum import state_sum
from .verify import run_suite
from .yang_baxter import build_yb_operator, closed_trace, covering_operator, long_partial_trace

VARIANTS = ("none", "obv", "inv", "rev")


class KnotSource:
    """A knot given as a braid (preferred for symmetries) or a Wirtinger code."""

    def __init__(self, label, braid: BraidWord | None = None, code: WirtingerCode | None = None):
        self.label, self.braid, self._code = label, braid, code

    def variant_braid(self, variant):
        return None if self.braid is None else braid_symmetry(self.braid, variant)

    def variant_code(self, variant):
        if self.braid is not None:
            return braid_to_long_wirtinger(self.variant_braid(variant))
        return wirtinger_symmetry(self._code, variant)


def resolve_knot(args) -> KnotSource:
    given = [s for s in ("knot", "braid", "pd", "wirtinger") if getattr(args, s, None)]
    if len(given) != 1:
        raise ParseError("give exactly one of --knot, --braid, --pd, --wirtinger")
    if args.knot:
        fx = load_fixture(args.knot)
        braid = fx.braid()
        return KnotSource(fx.name, braid, None if braid is not None else fx.code())
    if args.braid:
        return KnotSource(args.braid, parse_braid_word(args.braid))
    if args.pd:
        return KnotSource("pd", None, pd_to_long_wirtinger(parse_pd(args.pd), args.cut_arc))
    text = args.wirtinger
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    return KnotSource("wirtinger", None, WirtingerCode.from_json(text))


def parse_variants(text):
    if text in (None, "", "none"):
        return ["none"]
    if text == "all":
        return list(VARIANTS)
    out = [v.strip() for v in text.split(",") if v.strip()]
    bad = [v for v in out if v not in VARIANTS]
    if bad:
        raise ParseError(f"unknown symmetry {bad[0]!r}; use none, obv, inv, rev or all")
    return out


def _variable(G: PointedGroup):
    gen = G.longitude_subgroup().generator()
    return ("x", gen) if gen == G.basepoint else ("t", gen)


def describe_lambda(G: PointedGroup):
    lam = G.longitude_subgroup()
    var, gen = _variable(G)
    if gen is None:
        return f"Lambda has order {lam.order} (not cyclic)"
    shape = "cyclic" if lam.is_abelian() else "non-abelian"
    gen_text = "x" if var == "x" else f"t = {G.format_element(gen)}"
    return f"Lambda = <{gen_text}>, {shape} of order {lam.order}"


def _text(P: RingElement, G):
    var, gen = _variable(G)
    return render(P, var=var, generator=gen)


def compute(pipeline, source: KnotSource, variant, G, args):
    code = source.variant_code(variant)
    if pipeline == "colouring":
        return colouring_polynomial(code, G, workers=args.workers, node_cap=args.node_cap)
    if pipeline == "statesum":
        lam = section_cocycle(G)
        return state_sum(code, lam.quandle, lam, full=getattr(args, "full", False),
                         workers=args.workers, node_cap=args.node_cap)
    braid = source.variant_braid(variant)
    if braid is None:
        raise HypothesisError("Yang-Baxter traces need a braid (use --braid or a braid fixture)")
    if pipeline == "yb-closed":
        return closed_trace(braid, build_yb_operator(G))
    if pipeline == "yb-long":
        op, cov = covering_operator(G)
        return long_partial_trace(braid, op, cov)
    raise ParseError(f"unknown pipeline {pipeline!r}")


def _check_pipeline(pipeline, G):
    if pipeline != "colouring" and not G.longitude_subgroup().is_abelian():
        raise HypothesisError("state sums and Yang-Baxter traces need an abelian longitude group")


def run_invariant(args, pipeline=None, out=None):
    out = out or sys.stdout
    pipeline = pipeline or args.pipeline
    source = resolve_knot(args)
    G = build_named_group(args.group, args.basepoint)
    _check_pipeline(pipeline, G)
    variants = parse_variants(args.symmetries)
    results = []
    for v in variants:
        t0 = time.perf_counter()
        P = compute(pipeline, source, v, G, args)
        results.append((v, P, time.perf_counter() - t0))
    if args.format == "json":
        doc = {"knot": source.label, "group": G.meta.get("descriptor", G.name),
               "basepoint": G.format_element(G.basepoint), "pipeline": pipeline,
               "lambda": describe_lambda(G),
               "results": [{"variant": v, "text": _text(P, G), "polynomial": to_json(P),
                            "seconds": round(dt, 3)} for v, P, dt in results]}
        json.dump(doc, out, indent=2)
        out.write("\n")
    else:
        out.write(f"# {source.label} over {G.name}, x = {G.format_element(G.basepoint)}; {describe_lambda(G)}\n")
        for v, P, dt in results:
            name = source.label if v == "none" else f"{source.label}^{v}"
            out.write(f"{name}: {_text(P, G)}    ({dt:.2f}s)\n")
    return 0


def run_colourings(args, out=None):
    out = out or sys.stdout
    source = resolve_knot(args)
    G = build_named_group(args.group, args.basepoint)
    variant = parse_variants(args.symmetries)[0]
    cols = enumerate_colourings(source.variant_code(variant), G, workers=args.workers, node_cap=args.node_cap)
    if args.format == "json":
        json.dump({"knot": source.label, "group": G.meta.get("descriptor", G.name),
                   "basepoint": G.format_element(G.basepoint),
                   "colourings": [c.to_json(G) for c in cols]}, out, indent=2)
        out.write("\n")
    else:
        out.write(f"{len(cols)} colourings\n")
        for c in cols[: args.limit]:
            arcs = " ".join(G.format_element(g) for g in c.arcs)
            out.write(f"{arcs}  | longitude {G.format_element(c.longitude)}\n")
        if len(cols) > args.limit:
            out.write(f"... {len(cols) - args.limit} more\n")
    return 0


def run_yb(args, out=None):
    out = out or sys.stdout
    return run_invariant(args, "yb-closed" if args.mode == "closed" else "yb-long", out)


def run_verify(args, out=None):
    out = out or sys.stdout
    checks = []
    for c in run_suite(args.suite):
        checks.append(c)
        if args.format != "json":
            out.write(c.line() + "\n")
            out.flush()
    failed = [c for c in checks if not c.ok]
    if args.format == "json":
        json.dump({"suite": args.suite, "passed": len(checks) - len(failed), "failed": len(failed),
                   "checks": [c.to_json() for c in checks]}, out, indent=2)
        out.write("\n")
    else:
        out.write(f"{len(checks) - len(failed)} passed, {len(failed)} failed\n")
    return VerificationFailure.exit_code if failed else 0


def run_fixtures(args, out=None):
    out = out or sys.stdout
    names = [args.show] if args.show else list_fixtures()
    for name in names:
        fx = load_fixture(name)
        if args.show:
            for key in ("name", "encoding", "data", "provenance", "calibration"):
                out.write(f"{key}: {getattr(fx, key)}\n")
            out.write(f"wirtinger: {json.dumps(fx.code().to_json())}\n")
        else:
            out.write(f"{fx.name:20s} {fx.encoding:6s} {fx.code().n:3d} crossings  {fx.provenance}\n")
    return 0


def _knot_options(p):
    src = p.add_argument_group("knot")
    src.add_argument("--knot", help="fixture name (see the fixtures subcommand)")
    src.add_argument("--braid", help="braid word, e.g. 's1 s2^-1 s1 s2^-1' or 'aBaB'")
    src.add_argument("--pd", help="PD code, e.g. 'X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]'")
    src.add_argument("--wirtinger", help='JSON {"kappa": [...], "eps": [...]} or a file containing it')
    src.add_argument("--cut-arc", type=int, default=None, help="PD edge to cut open (default: smallest label)")
    p.add_argument("--group", default="A5", help="A5, S7, PSL2_7, M11, Aff5, D6, C3 or <(1,2,3),(1,2)>")
    p.add_argument("--basepoint", default=None, help="cycle notation, order:k, mat:a,b,c,d or default")
    p.add_argument("--symmetries", default="none", help="none, all, or a comma list of obv,inv,rev")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)


def build_parser():
    parser = argparse.ArgumentParser(prog="colpoly", description="Knot colouring polynomials over finite groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariant", help="colouring polynomial (or another pipeline) per symmetry variant")
    _knot_options(p)
    p.add_argument("--pipeline", choices=("colouring", "statesum", "yb-closed", "yb-long"), default="colouring")
    p.set_defaults(func=run_invariant)

    p = sub.add_parser("colourings", help="list colourings with their longitudes")
    _knot_options(p)
    p.add_argument("--limit", type=int, default=50, help="rows shown in text mode")
    p.set_defaults(func=run_colourings)

    p = sub.add_parser("statesum", help="cocycle state sum over the conjugation quandle")
    _knot_options(p)
    p.add_argument("--full", action="store_true", help="enumerate every colour of arc 0")
    p.set_defaults(func=lambda a, out=None: run_invariant(a, "statesum", out))

    p = sub.add_parser("yb-trace", help="Yang-Baxter trace of a braid")
    _knot_options(p)
    p.add_argument("--mode", choices=("closed", "long"), default="closed")
    p.set_defaults(func=run_yb)

    p = sub.add_parser("verify", help="run self-check suites")
    p.add_argument("suite", choices=("axioms", "cocycle", "yb", "theorems", "golden", "all"))
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=run_verify)

    p = sub.add_parser("fixtures", help="list or show knot fixtures")
    p.add_argument("--show", metavar="NAME")
    p.set_defaults(func=run_fixtures)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ColpolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # noqa: BLE001 - last-resort exit code
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
