"""The ``ecirr`` command line.

Exit status: 0 success, 1 domain failure (the error class name is printed
on stderr), 2 usage error.  ``data/...`` paths that do not exist relative
to the working directory are looked up in the data shipped with the package.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from importlib import resources
from pathlib import Path

from . import __version__
from .curve import Curve, count_points, is_ordinary, verify_endomorphism
from .errors import EcirrError
from .ff import FieldCtx
from .graph import build_graph, summary, to_dot, tree_profiles, trajectory
from .poly import Poly, factor, is_irreducible
from .quadorder import QuadInt, QuadOrder, check_val_lemma, frobenius_from_trace, nu_alpha
from .ratmap import RationalMap, r_transform
from .sequence import SequenceParams, growth_diagnostic, run_detailed


class UsageError(Exception):
    pass


# -- input helpers -----------------------------------------------------------


def resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    parts = p.parts
    if parts and parts[0] == "data":
        packaged = resources.files("ecirr").joinpath(*parts)
        if packaged.is_file():
            return Path(str(packaged))
    raise UsageError(f"file not found: {path}")


def load_json(path: str):
    try:
        return json.loads(resolve(path).read_text())
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON ({e})") from e


def parse_json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{what}: expected JSON, got {text!r}") from e


def parse_field(text: str) -> FieldCtx:
    """'83', '83^3', a JSON object, or a path to one."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*", text)
    if m:
        return FieldCtx.extension(int(m.group(1)), int(m.group(2) or 1))
    obj = parse_json_arg(text, "--field") if text.lstrip().startswith("{") else load_json(text)
    return FieldCtx.from_json(obj)


def load_map(path: str) -> RationalMap:
    obj = load_json(path)
    # a fixture file bundles curve, map and alpha
    return RationalMap.from_json(obj.get("map", obj))


def load_curve(path: str) -> Curve:
    obj = load_json(path)
    return Curve.from_json(obj.get("curve", obj))


def parse_poly(ctx: FieldCtx, text: str) -> Poly:
    obj = parse_json_arg(text, "polynomial") if text.lstrip().startswith("[") else load_json(text)
    return Poly.from_json(ctx, obj)


def parse_quad(order: QuadOrder, text: str) -> QuadInt:
    obj = parse_json_arg(text, "quadratic integer")
    if isinstance(obj, dict):
        return QuadInt.from_json(obj)
    if isinstance(obj, list) and len(obj) == 2:
        return order(*obj)
    raise UsageError(f"expected [c0, c1] or a QuadInt object, got {text!r}")


# -- output helpers ----------------------------------------------------------


def poly_out(f: Poly, full: bool):
    if full:
        return f.to_list()
    return {"degree": f.degree, "sha256": f.fingerprint()}


def poly_text(f: Poly, full: bool) -> str:
    if full or f.degree <= 12:
        return json.dumps(f.to_list())
    return f"<degree {f.degree}, sha256 {f.fingerprint()}>"


def emit(args, obj: dict, text: str):
    if args.emit == "json":
        print(json.dumps(obj, indent=1))
    else:
        print(text)


# -- subcommands ---------------------------------------------------------------


def cmd_transform(args) -> int:
    m = load_map(args.map)
    g = parse_poly(m.ctx, args.poly)
    h = r_transform(g, m)
    emit(args, {"degree": h.degree, "poly": poly_out(h, args.full)},
         f"degree {h.degree}\n{poly_text(h, args.full)}")
    return 0


def cmd_factor(args) -> int:
    if args.map:
        ctx = load_map(args.map).ctx
    elif args.field:
        ctx = parse_field(args.field)
    else:
        raise UsageError("factor needs --field or --map")
    f = parse_poly(ctx, args.poly)
    fac = factor(f, seed=args.seed)
    obj = {
        "degree": f.degree,
        "irreducible": len(fac.factors) == 1 and fac.factors[0][1] == 1,
        "unit": fac.unit.to_json(),
        "degrees": fac.degrees(),
        "factors": [{"poly": poly_out(g, args.full), "multiplicity": e} for g, e in fac.factors],
    }
    lines = [f"degree {f.degree}, unit {fac.unit!r}"]
    lines += [f"  deg {g.degree:>5}  x{e}  {poly_text(g, args.full)}" for g, e in fac.factors]
    emit(args, obj, "\n".join(lines))
    return 0


def cmd_iterate(args) -> int:
    m = load_map(args.map)
    f0 = parse_poly(m.ctx, args.f0)
    verify = {"auto": None, "on": True, "off": False}[args.verify_sub2]
    params = SequenceParams(m, f0.degree, args.k0, args.selection, args.max_sub1_steps, verify)
    if args.curve:
        rep = verify_endomorphism(load_curve(args.curve), m, seed=args.seed)
        if not rep.passed:
            print("InvalidMap: map failed endomorphism verification", file=sys.stderr)
            return 1
    res = run_detailed(f0, params, args.target, seed=args.seed)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, f in enumerate(res.polys):
            (out / f"f{i}.json").write_text(json.dumps(f.to_list()) + "\n")
    obj = res.to_json(full=args.full)
    obj["growth"] = growth_diagnostic(m.ctx.p, m.ctx.n, params.d, m.l)
    lines = [f"f_{i}: degree {f.degree}  {poly_text(f, args.full)}" for i, f in enumerate(res.polys)]
    lines.append(f"switch to SUB2 at index {res.switch_index}, restarts {res.state.retries}, "
                 f"factorizations {res.state.factorizations}")
    emit(args, obj, "\n".join(lines))
    return 0


def cmd_graph(args) -> int:
    m = load_map(args.map)
    field = parse_field(args.field) if args.field else FieldCtx.extension(m.ctx.p, 2 * m.ctx.n)
    g = build_graph(m, field)
    if args.emit == "dot":
        sys.stdout.write(to_dot(g))
        return 0
    obj = summary(g, args.subfield_deg)
    if args.start is not None:
        tail, cyc = trajectory(g, g.point_of(args.start))
        obj["trajectory"] = {"tail": [repr(x) for x in tail], "cycle": [repr(x) for x in cyc]}
    if args.emit == "json":
        if args.subfield_deg is not None:
            obj["profiles"] = [p.to_json() for p in tree_profiles(g, args.subfield_deg)]
        print(json.dumps(obj, indent=1))
    else:
        print("\n".join(f"{k}: {v}" for k, v in obj.items()))
    return 0


def cmd_verify_endo(args) -> int:
    rep = verify_endomorphism(load_curve(args.curve), load_map(args.map), args.samples, args.seed)
    lines = [f"{'PASS' if rep.passed else 'FAIL'} ({rep.mode})"]
    lines += [f"  {f}" for f in rep.failures[:10]]
    emit(args, rep.to_json(), "\n".join(lines))
    return 0 if rep.passed else 1


def cmd_count_points(args) -> int:
    c = load_curve(args.curve)
    rows = []
    for k in range(1, args.ext + 1):
        cc = c if k == 1 else c.base_change(FieldCtx.extension(c.ctx.p, c.ctx.n * k))
        data = count_points(cc)
        rows.append({"q": data.q, "count": data.count, "trace": data.trace})
    obj = {"counts": rows, "ordinary": is_ordinary(c)}
    text = "\n".join(f"q = {r['q']}: #E = {r['count']}, trace {r['trace']}" for r in rows)
    emit(args, obj, text + f"\nordinary: {obj['ordinary']}")
    return 0


def cmd_valuation(args) -> int:
    R = QuadOrder(args.D)
    alpha = parse_quad(R, args.alpha)
    if args.beta is not None:
        beta = parse_quad(R, args.beta)
        k, cof = nu_alpha(beta, alpha)
        obj = {"nu_alpha": k, "cofactor": cof.to_json()}
        if args.lemma:
            obj["lemma"] = check_val_lemma(beta, alpha, alpha.norm()).to_json()
        text = f"nu_alpha = {k}, cofactor = ({cof.c0}, {cof.c1})"
        if args.lemma:
            text += f"\nlemma valuations {obj['lemma']['valuations']} holds={obj['lemma']['holds']}"
        emit(args, obj, text)
        return 0
    if args.trace is None or args.q is None:
        raise UsageError("valuation needs --beta, or --trace and --q")
    rows = []
    for pi in frobenius_from_trace(R, args.trace, args.q):
        k, _ = nu_alpha(pi ** (2 * args.d) - 1, alpha)
        rows.append({"pi": pi.to_json(), "k0": k})
    text = "\n".join(f"pi = ({r['pi']['c0']}, {r['pi']['c1']}): nu_alpha(pi^{2 * args.d} - 1) = {r['k0']}"
                     for r in rows)
    emit(args, {"d": args.d, "conjugates": rows}, text)
    return 0


EXPECTED_DEGREES = [3, 6, 102, 1734]


def cmd_reproduce_paper(args) -> int:
    meta = load_json("data/f83_example.json")
    checks = []

    def check(name, ok, detail=""):
        checks.append({"check": name, "ok": bool(ok), "detail": detail})
        return ok

    E = load_curve(args.curve)
    m = load_map(args.map)
    data = count_points(E)
    ok = check("curve: #E(F_83) and ordinary", is_ordinary(E),
               f"#E = {data.count}, trace {data.trace}")
    ok &= check("map is an endomorphism", verify_endomorphism(E, m, seed=args.seed).passed, f"l = {m.l}")
    growth = growth_diagnostic(m.ctx.p, m.ctx.n, meta["d"], m.l)
    q_mod = growth["q=p^(nd)"]["q_mod_l"]
    ok &= check("q = 83^3 is not 1 mod 17", q_mod != 1, f"83^3 mod 17 = {q_mod}")

    R = QuadOrder(meta["alpha"]["D"])
    alpha = QuadInt.from_json(meta["alpha"])
    k0s = [nu_alpha(pi ** (2 * meta["d"]) - 1, alpha)[0] for pi in frobenius_from_trace(R, data.trace, data.q)]
    k0 = max(k0s)
    degrees = []
    if ok:
        f0 = Poly.from_json(m.ctx, meta["f0"])
        t = time.perf_counter()
        res = run_detailed(f0, SequenceParams(m, meta["d"], k0), args.target, seed=args.seed)
        degrees = res.degrees
        ok &= check("degree sequence", degrees == EXPECTED_DEGREES[: args.target + 1],
                    f"{degrees} in {time.perf_counter() - t:.1f}s")
        sub1 = [i for i in range(1, len(res.polys)) if i <= res.switch_index]
        ok &= check("SUB1 outputs irreducible", all(is_irreducible(res.polys[i]) for i in sub1),
                    f"f_{', f_'.join(map(str, sub1))}" if sub1 else "none")
        sub2 = list(range(res.switch_index + 1, len(res.polys)))
        if sub2:
            check("SUB2 outputs irreducible", True,
                  f"f_{', f_'.join(map(str, sub2))} checked by is_irreducible during the run")
    report = {"passed": bool(ok), "k0_by_conjugate": k0s, "growth": growth, "degrees": degrees, "checks": checks}
    lines = [f"[{'PASS' if c['ok'] else 'FAIL'}] {c['check']}: {c['detail']}" for c in checks]
    lines += [f"k0 by conjugate: {k0s}",
              "i  deg f_i", *(f"{i}  {dg}" for i, dg in enumerate(degrees)),
              "PASS" if ok else "FAIL"]
    emit(args, report, "\n".join(lines))
    return 0 if ok else 1


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def flags(formats=("json", "text"), default="text"):
        fp = argparse.ArgumentParser(add_help=False)
        fp.add_argument("--emit", choices=list(formats), default=default)
        fp.add_argument("--seed", type=int, default=0)
        fp.add_argument("--full", action="store_true", help="print full coefficient lists")
        return fp

    common = flags()

    ap = argparse.ArgumentParser(prog="ecirr", description="Irreducible polynomial sequences from elliptic-curve endomorphisms.")
    ap.add_argument("--version", action="version", version=f"ecirr {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("iterate", parents=[common], help="build f_0, ..., f_target")
    p.add_argument("--map", required=True)
    p.add_argument("--curve", help="verify the map against this curve first")
    p.add_argument("--f0", required=True)
    p.add_argument("--target", type=int, default=3)
    p.add_argument("--selection", default="largest-degree")
    p.add_argument("--k0", type=int)
    p.add_argument("--max-sub1-steps", type=int, default=12)
    p.add_argument("--verify-sub2", choices=["auto", "on", "off"], default="auto")
    p.add_argument("--out", help="directory for f<i>.json files")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("transform", parents=[common], help="r-transform of one polynomial")
    p.add_argument("--map", required=True)
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("factor", parents=[common], help="factor a polynomial")
    p.add_argument("--poly", required=True)
    p.add_argument("--field")
    p.add_argument("--map", help="take the field from this map")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("graph", parents=[flags(("dot", "json", "summary"), "summary")],
                       help="functional graph of r on P^1(F_q)")
    p.add_argument("--map", required=True)
    p.add_argument("--field", help="graph field, e.g. 17^4 (default: quadratic extension)")
    p.add_argument("--subfield-deg", type=int)
    p.add_argument("--start", type=int, help="node index whose trajectory to report")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("verify-endo", parents=[common], help="check that a map is an endomorphism")
    p.add_argument("--curve", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=cmd_verify_endo)

    p = sub.add_parser("count-points", parents=[common], help="#E over F_q and extensions")
    p.add_argument("--curve", required=True)
    p.add_argument("--ext", type=int, default=1, help="also count over F_{q^k}, k <= ext")
    p.set_defaults(func=cmd_count_points)

    p = sub.add_parser("valuation", parents=[common], help="alpha-adic valuations in the CM order")
    p.add_argument("--D", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta")
    p.add_argument("--lemma", action="store_true", help="also tabulate nu(beta^e - 1), e = 1..l")
    p.add_argument("--trace", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--d", type=int, default=1)
    p.set_defaults(func=cmd_valuation)

    p = sub.add_parser("reproduce-paper", parents=[common], help="end-to-end F_83, l = 17 example")
    p.add_argument("--curve", default="data/f83_curve.json")
    p.add_argument("--map", default="data/f83_l17.json")
    p.add_argument("--target", type=int, default=3, choices=range(0, 4))
    p.set_defaults(func=cmd_reproduce_paper)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        ap.print_usage(sys.stderr)
        print(f"ecirr: error: {e}", file=sys.stderr)
        return 2
    except EcirrError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except KeyError as e:
        print(f"ecirr: error: missing key {e} in input", file=sys.stderr)
        return 2
    except (ValueError, TypeError) as e:
        print(f"ecirr: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
