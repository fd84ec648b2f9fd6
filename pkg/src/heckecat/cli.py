"""Command-line front end: ``heckecat group|kl|basis|apply|verify|cache``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import functors as F
from .coxeter import CoxeterGroup, build_group
from .errors import HeckeCatError, NotRightDescent, SFinite
from .hecke import KLCache, kl_cache, q_poly_str, set_kl_cache
from .kgroup import NABLA, SIMPLE, BasisTag, CharacterVector, change_basis, parse_class
from .oracle import CHECKS, DEFAULT_SEED, verify_suite


def default_cache_dir() -> Path:
    env = os.environ.get("HECKECAT_CACHE")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or str(Path.home() / ".cache")
    return Path(base) / "heckecat"


def _group(args) -> CoxeterGroup:
    g = build_group(args.cartan)
    if args.no_cache:
        set_kl_cache(g, KLCache.compute(g))
    return g


def _kl(args, g: CoxeterGroup) -> KLCache:
    return kl_cache(g, None if args.no_cache else args.cache_dir)


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _emit_vector(args, vec: CharacterVector) -> str:
    if args.format == "json":
        return json.dumps(vec.to_json(), ensure_ascii=False)
    if args.format == "csv":
        g = vec.group
        rows = [["basis", "w", "coeff"]]
        rows += [[vec.basis.value, g.word_str(w), str(p)] for w, p in vec.items()]
        return _csv(rows)
    return str(vec)


# -- subcommands ---------------------------------------------------------


def cmd_group(args) -> int:
    g = build_group(args.cartan)
    rows = []
    if args.elements:
        for w in g:
            rows.append(
                {
                    "index": w,
                    "word": g.word_str(w),
                    "length": g.ell(w),
                    "left_descents": sorted(g.descents(w, "left")),
                    "right_descents": sorted(g.descents(w, "right")),
                }
            )
    if args.format == "json":
        out = {
            "cartan": str(g.cartan),
            "order": g.order,
            "rank": g.rank,
            "w0": g.word_str(g.w0),
            "length_w0": g.ell(g.w0),
        }
        if args.elements:
            out["elements"] = rows
        print(json.dumps(out))
    elif args.format == "csv":
        table = [["index", "word", "length", "left_descents", "right_descents"]]
        for r in rows or [{"index": w, "word": g.word_str(w), "length": g.ell(w),
                           "left_descents": sorted(g.descents(w, "left")),
                           "right_descents": sorted(g.descents(w, "right"))} for w in g]:
            table.append([r["index"], r["word"], r["length"],
                          "".join(map(str, r["left_descents"])), "".join(map(str, r["right_descents"]))])
        print(_csv(table))
    else:
        print(f"type {g.cartan}: {g.order} elements, rank {g.rank}")
        print(f"w0 = {g.word_str(g.w0)}, l(w0) = {g.ell(g.w0)}")
        for r in rows:
            ld = "".join(map(str, r["left_descents"])) or "-"
            rd = "".join(map(str, r["right_descents"])) or "-"
            print(f"  {r['word']:>12}  l={r['length']:<3} L={ld:<6} R={rd}")
    return 0


def cmd_kl(args) -> int:
    g = _group(args)
    kl = _kl(args, g)
    if args.basis:
        if args.w is None:
            raise HeckeCatError("--basis needs --w")
        w = g.element(args.w)
        h = kl.basis(args.basis, w)
        if args.format == "json":
            print(json.dumps(h.to_json()))
        elif args.format == "csv":
            print(_csv([["w", "coeff"]] + [[g.word_str(y), str(p)] for y, p in h.items()]))
        else:
            print(f"{args.basis}[{g.word_str(w)}] = {h}")
        return 0
    xs = [g.element(args.x)] if args.x is not None else list(g)
    ys = [g.element(args.y)] if args.y is not None else list(g)
    pairs = [(x, y) for y in ys for x in xs if g.bruhat_leq(x, y)]
    if args.x is not None and args.y is not None and not pairs:
        pairs = [(xs[0], ys[0])]
    if args.format == "json":
        print(json.dumps([
            {"x": g.word_str(x), "y": g.word_str(y), "P": list(kl.kl_poly(x, y)), "mu": kl.mu(x, y)} for x, y in pairs
        ]))
    elif args.format == "csv":
        print(_csv([["x", "y", "P", "mu"]] + [[g.word_str(x), g.word_str(y), q_poly_str(kl.kl_poly(x, y)), kl.mu(x, y)] for x, y in pairs]))
    elif len(pairs) == 1 and args.x is not None and args.y is not None:
        print(q_poly_str(kl.kl_poly(*pairs[0])))
    else:
        width = max(len(g.word_str(w)) for w in g)
        for x, y in pairs:
            print(f"P[{g.word_str(x):>{width}}, {g.word_str(y):>{width}}] = {q_poly_str(kl.kl_poly(x, y)):<12} mu = {kl.mu(x, y)}")
    return 0


def cmd_basis(args) -> int:
    g = _group(args)
    _kl(args, g)
    vec = parse_class(g, args.cls)
    target = BasisTag.parse(args.to) if args.to else vec.basis
    print(_emit_vector(args, change_basis(vec, target)))
    return 0


def _single_simple(vec: CharacterVector):
    s = change_basis(vec, SIMPLE)
    if len(s) != 1:
        return None
    ((x, c),) = s.items()
    if c.is_monomial() and c.coeff(c.min_degree()) == 1:
        return x, c.min_degree()
    return None


def cmd_apply(args) -> int:
    g = _group(args)
    _kl(args, g)
    vec = parse_class(g, args.cls)
    out_basis = BasisTag.parse(args.basis) if args.basis else vec.basis
    steps = F.parse_functor_expr(args.functor)
    # a single T[s] / C[s] on one simple class is the underived functor
    if not args.derived and len(steps) == 1 and steps[0][0] in (F.FunctorKind.TWIST, F.FunctorKind.SHUFFLE):
        kind, arg = steps[0]
        w = g.element(arg)
        simple = _single_simple(vec)
        if simple is not None and g.ell(w) == 1:
            x, k = simple
            s = g.reduced_word(w)[0]
            try:
                fn = F.ts_simple if kind is F.FunctorKind.TWIST else F.cs_simple
                res = fn(g, s, x).char.shift(k)
            except SFinite as exc:
                raise type(exc)(f"{exc}; pass --derived for the Euler characteristic of the derived functor") from None
            except NotRightDescent as exc:
                raise type(exc)(f"{exc}; pass --derived for the Euler characteristic of the derived functor") from None
            print(_emit_vector(args, change_basis(res, out_basis)))
            return 0
    res = F.apply_functor_expr(args.functor, vec)
    print(_emit_vector(args, change_basis(res, out_basis)))
    return 0


def cmd_verify(args) -> int:
    g = _group(args)
    _kl(args, g)
    checks = None
    if args.checks:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    report = verify_suite(g, checks, seed=args.seed)
    if args.json:
        Path(args.json).write_text(report.dumps())
    if args.format == "json":
        print(report.dumps())
    elif args.format == "csv":
        rows = [["check", "instances", "pass", "counterexample"]]
        rows += [[c.name, c.count, "PASS" if c.passed else "FAIL", c.counterexample or ""] for c in report.checks]
        print(_csv(rows))
    else:
        print(report.text())
    return 0 if report.passed else 1


def cmd_cache(args) -> int:
    cache_dir = Path(args.cache_dir)
    path = cache_dir / f"kl_{build_group(args.cartan).cartan}.json" if args.cartan else None
    if args.action == "build":
        g = build_group(args.cartan)
        KLCache.compute(g).save(path)
        print(f"wrote {path}")
    elif args.action == "show":
        if path is None:
            files = sorted(cache_dir.glob("kl_*.json")) if cache_dir.exists() else []
            print(f"cache directory {cache_dir}")
            for f in files:
                print(f"  {f.name}  {f.stat().st_size} bytes")
        elif not path.exists():
            print(f"no cache for {args.cartan} at {path}")
            return 1
        else:
            c = KLCache.load(path)
            print(f"{path}: {len(c._P)} P entries, {len(c.mu_pairs())} nonzero mu, validated")
    elif args.action == "clear":
        targets = [path] if path is not None else (sorted(cache_dir.glob("kl_*.json")) if cache_dir.exists() else [])
        for f in targets:
            if f.exists():
                f.unlink()
                print(f"removed {f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--cache-dir", default=None, help="KL table cache directory (env HECKECAT_CACHE)")
    common.add_argument("--no-cache", action="store_true", help="recompute KL tables, ignore the cache")

    p = argparse.ArgumentParser(prog="heckecat", description="Hecke algebra and graded category O K-group calculator")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("group", parents=[common], help="Weyl group summary")
    sp.add_argument("cartan")
    sp.add_argument("--elements", action="store_true", help="list every element")
    sp.set_defaults(fn=cmd_group)

    sp = sub.add_parser("kl", parents=[common], help="KL polynomials, mu and basis expansions")
    sp.add_argument("cartan")
    sp.add_argument("--x")
    sp.add_argument("--y")
    sp.add_argument("--basis", choices=["H", "uH", "ucH", "huH", "hucH"])
    sp.add_argument("--w")
    sp.set_defaults(fn=cmd_kl)

    sp = sub.add_parser("basis", parents=[common], help="rewrite a class in another basis")
    sp.add_argument("cartan")
    sp.add_argument("cls", metavar="class", help='e.g. "L[121]" or "nabla[e]<1>"')
    sp.add_argument("--to", help="target basis (Delta, Nabla, L, P, T, I)")
    sp.set_defaults(fn=cmd_basis)

    sp = sub.add_parser("apply", parents=[common], help="apply functors to a class")
    sp.add_argument("cartan")
    sp.add_argument("functor", help='e.g. "T[1]", "C[12] theta[2]" (applied right to left)')
    sp.add_argument("cls", metavar="class")
    sp.add_argument("--basis", help="output basis (defaults to the input basis)")
    sp.add_argument("--derived", action="store_true", help="use derived T/C even on a single simple class")
    sp.set_defaults(fn=cmd_apply)

    sp = sub.add_parser("verify", parents=[common], help="run the identity battery")
    sp.add_argument("cartan")
    sp.add_argument("--checks", help="comma-separated subset of: " + ", ".join(CHECKS))
    sp.add_argument("--json", help="write the JSON report to this file")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("cache", parents=[common], help="manage cached KL tables")
    sp.add_argument("action", choices=["build", "show", "clear"])
    sp.add_argument("cartan", nargs="?")
    sp.set_defaults(fn=cmd_cache)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cache_dir is None:
        args.cache_dir = str(default_cache_dir())
    if args.command == "cache" and args.action == "build" and not args.cartan:
        parser.error("cache build needs a Cartan type")
    try:
        return args.fn(args)
    except KeyError as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 2
    except HeckeCatError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
