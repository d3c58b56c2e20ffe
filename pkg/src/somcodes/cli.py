"""Command-line entry point.

    somcodes example ex-3.1a
    somcodes analyze --field GF3^5 --fn "fa:a=1;quad:g@0,1@1,2@2" --kind punctured
    somcodes search triple --m 7 --wt 4 --budget 100000 --seed 1
    somcodes theory T_ccww_odd --param p=3 --param n=5 --param s=2 --param eps=1

Exit codes: 0 = success or match, 2 = computed result differs from the
expectation, 1 = usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import CodesError

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _err(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


# ---------------------------------------------------------------------------
# example


def cmd_example(args) -> int:
    from .presets import PRESETS, evaluate_preset, get_preset

    if args.name == "list":
        for name, p in PRESETS.items():
            print(f"{name}\t{p.field}\t{p.kind}\t{p.descriptor}")
        return EXIT_OK
    preset = get_preset(args.name)
    t0 = time.perf_counter()
    out = evaluate_preset(preset, threads=args.threads)
    elapsed = time.perf_counter() - t0
    if args.json:
        print(_dump(out))
    else:
        rep = out["report"]
        print(f"preset {preset.name}: {preset.descriptor} ({preset.kind}, beta domain {out['beta_domain']})")
        print(f"  params    {rep['params']}")
        print("  weights   " + " ".join(f"{w}:{m}" for w, m in rep["weights"]))
        for c in out["checks"]:
            status = "ok" if c["ok"] else "MISMATCH"
            detail = f"expected={c['expected']} computed={c['computed']}"
            if c["ok"] and len(detail) > 80:
                detail = ""
            print(f"  {c['check']:<28}{status:<10}{detail}".rstrip())
        if "minimality_witness" in rep:
            print(f"  covering pair: {rep['minimality_witness']}")
        if "errata" in out:
            print(f"  errata: {out['errata']['note']}")
        for note in out.get("notes", []):
            print(f"  note: {note}")
        print(f"  result: {'MATCH' if out['match'] else 'MISMATCH'}")
    print(f"{preset.name}: {elapsed:.2f} s", file=sys.stderr)
    return EXIT_OK if out["match"] else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# analyze


def _beta_basis(ctx, text: str):
    from .galois import trace_kernel_subspace
    from .pfunc import parse_element

    if text == "full":
        return None
    if not text.startswith("V:"):
        raise CodesError(f"beta domain must be 'full' or 'V:w1,w2', got {text!r}")
    ws = [parse_element(ctx, w) for w in text[2:].split(",") if w.strip()]
    return trace_kernel_subspace(ctx, ws)


def cmd_analyze(args) -> int:
    from .codes import CodeSpec, analyze
    from .galois import parse_field_spec
    from .pfunc import parse_descriptor
    from .walsh import classify, walsh_transform

    # build everything before printing so a bad input leaves no partial output
    ctx = parse_field_spec(args.field)
    f = parse_descriptor(ctx, args.fn)
    spec = CodeSpec(f, args.kind, _beta_basis(ctx, args.beta_domain))
    spectrum = walsh_transform(f)
    report = analyze(spec, spectrum, minimality=args.minimality, threads=args.threads)
    out = report.to_json()
    out["descriptor"] = f.descriptor
    out["kind"] = args.kind
    out["beta_domain"] = args.beta_domain
    out["profile"] = classify(spectrum).summary()
    if f.family == "fa":
        out["base_profile"] = classify(walsh_transform(f.params["base"])).summary()
    if args.emit_spectrum:
        with open(args.emit_spectrum, "w") as fh:
            fh.write(spectrum.to_csv())
    if args.csv:
        sys.stdout.write(report.distribution.to_csv())
    else:
        print(_dump(out) if args.json else json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


# ---------------------------------------------------------------------------
# search


def cmd_search(args) -> int:
    from .search import PlateauedQuadratic, SearchTask, TripleLambda, WPair, run

    if args.budget < 1:
        return _err("budget must be at least 1")
    if args.family == "triple":
        fam = TripleLambda(args.m, args.wt, args.l1)
    elif args.family == "wpair":
        if not (args.l1 and args.l2):
            return _err("wpair needs --l1 and --l2")
        fam = WPair(args.m, args.l1, args.l2, args.w1)
    else:
        fixed = {}
        for item in args.fix or []:
            pos, _, val = item.partition("=")
            try:
                fixed[int(pos)] = val
            except ValueError:
                return _err(f"--fix expects i=element, got {item!r}")
        fam = PlateauedQuadratic(args.p, args.n, args.s, not args.allow_balanced, fixed)
    res = run(SearchTask(fam, args.budget, args.seed, args.limit, args.threads))
    for cert in res.results:
        print(_dump(cert))
    print(_dump(res.summary()), file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# theory


def cmd_theory(args) -> int:
    from .theory import predict

    params = {}
    for item in args.param or []:
        k, _, v = item.partition("=")
        try:
            params[k] = int(v)
        except ValueError:
            return _err(f"--param expects key=integer, got {item!r}")
    if args.printed:
        params["printed"] = True
    try:
        pred = predict(args.theorem, **params)
    except (TypeError, ValueError) as exc:
        return _err(str(exc))
    print(_dump(pred.to_json()))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="somcodes", description="Self-orthogonal minimal codes from p-ary functions")
    sub = ap.add_subparsers(dest="cmd", required=True)

    ex = sub.add_parser("example", help="run a named worked example ('list' shows them)")
    ex.add_argument("name")
    ex.add_argument("--json", action="store_true", help="print the full JSON record")
    ex.add_argument("--threads", type=int, default=1)
    ex.set_defaults(func=cmd_example)

    an = sub.add_parser("analyze", help="build a code from a function and analyse it")
    an.add_argument("--field", required=True, help="preset name (GF3^5) or 'p=3 n=5 [mod=...]'")
    an.add_argument("--fn", required=True, help="function descriptor, e.g. 'quad:1@0,g^23@1'")
    an.add_argument("--kind", choices=["punctured", "full", "augmented"], default="punctured")
    an.add_argument("--beta-domain", default="full", help="'full' or 'V:w1,w2'")
    an.add_argument("--minimality", choices=["auto", "exact", "walsh", "ab"], default="auto")
    an.add_argument("--json", action="store_true", help="compact single-line JSON")
    an.add_argument("--csv", action="store_true", help="print the weight distribution as CSV")
    an.add_argument("--emit-spectrum", metavar="PATH", help="write the Walsh spectrum counts as CSV")
    an.add_argument("--threads", type=int, default=1)
    an.set_defaults(func=cmd_analyze)

    se = sub.add_parser("search", help="search for admissible parameters (JSON lines)")
    se.add_argument("family", choices=["triple", "wpair", "quad"])
    se.add_argument("--m", type=int, default=8, help="half degree for the binary families")
    se.add_argument("--wt", type=int, default=4, help="target t-vector weight (triple)")
    se.add_argument("--l1")
    se.add_argument("--l2")
    se.add_argument("--w1")
    se.add_argument("--p", type=int, default=3)
    se.add_argument("--n", type=int, default=5)
    se.add_argument("--s", type=int, default=1)
    se.add_argument("--fix", action="append", metavar="I=ELEM", help="fix quadratic coefficient I")
    se.add_argument("--allow-balanced", action="store_true")
    se.add_argument("--budget", type=int, default=100_000)
    se.add_argument("--seed", type=int, default=0)
    se.add_argument("--limit", type=int)
    se.add_argument("--threads", type=int, default=1)
    se.set_defaults(func=cmd_search)

    th = sub.add_parser("theory", help="evaluate a closed-form table")
    th.add_argument("theorem")
    th.add_argument("--param", action="append", metavar="K=V")
    th.add_argument("--printed", action="store_true", help="use rows exactly as printed (T_ccww_odd)")
    th.set_defaults(func=cmd_theory)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CodesError as exc:
        return _err(str(exc))
    except OSError as exc:
        return _err(str(exc))


if __name__ == "__main__":
    sys.exit(main())
