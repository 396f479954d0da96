"""Command-line entry points.

Exit status: 0 on success, 1 for a successfully computed negative answer
(not exact, not null-homotopic, law failures, ...), 2 for input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from .complexes import ChainMap, Complex, is_quasi_iso, null_homotopy, shift
from .exactalg.linalg import Ring
from .exactalg.modules import FPModule, describe
from .serialize import dumps, matrix_to_record, num
from .workspace import Workspace, WorkspaceError, parse_module


@dataclass
class CommandResult:
    text: str
    record: dict = field(default_factory=dict)
    status: int = 0


class InputError(Exception):
    pass


def mod_str(M: FPModule) -> str:
    return str(M)


def mod_rec(M: FPModule) -> dict:
    free, tors = M.canonical()
    return {"ring": M.ring.value, "free_rank": free, "torsion": [num(d) for d in tors], "text": str(M)}


def complex_text(X: Complex, name: str = "X") -> str:
    if X.is_zero():
        return f"{name} = 0"
    lines = [f"{name}:"]
    for n in X.degrees:
        line = f"  degree {n}: {X[n]}"
        if n < X.hi and X[n].ngens and X[n + 1].ngens:
            line += f"   d = {matrix_to_record(X.d(n).matrix)}"
        lines.append(line.replace("'", ""))
    return "\n".join(lines)


def complex_rec(X: Complex) -> dict:
    return {"lo": num(X.lo), "modules": [[num(m) for m in M.moduli] for M in X.modules],
            "diffs": [matrix_to_record(d.matrix) for d in X.diffs]}


def _ws(args) -> Workspace:
    if not args.workspace:
        raise InputError("this command needs a workspace (-w FILE)")
    return Workspace.load(args.workspace)


def _ws_optional(args) -> Workspace:
    return Workspace.load(args.workspace) if args.workspace else Workspace()


# ---------------------------------------------------------------------------
# Commands.


def cmd_cohomology(args) -> CommandResult:
    X = _ws(args).complex(args.complex)
    degs = [args.degree] if args.degree is not None else list(X.degrees)
    groups = {n: X.cohomology(n).group for n in degs}
    text = "\n".join(f"H^{n} ≅ {mod_str(g)}" for n, g in groups.items()) or "all cohomology vanishes"
    return CommandResult(text, {"complex": args.complex,
                                "cohomology": {num(n): mod_rec(g) for n, g in groups.items()}})


def cmd_shift(args) -> CommandResult:
    X = shift(_ws(args).complex(args.complex), args.k)
    return CommandResult(complex_text(X, f"Sigma^{args.k} {args.complex}"), {"complex": complex_rec(X)})


def cmd_cone(args) -> CommandResult:
    from .triangle import cone

    C, _ = cone(_ws(args).map(args.map))
    return CommandResult(complex_text(C, f"cone({args.map})"), {"cone": complex_rec(C)})


def cmd_rotate(args) -> CommandResult:
    from .triangle import certify_exact, cone, rotate

    _, T = cone(_ws(args).map(args.map))
    R = rotate(T)
    ok = certify_exact(R) is not None
    text = "\n".join([complex_text(R.X, "first"), complex_text(R.Y, "second"), complex_text(R.Z, "third"),
                      "rotated triangle certified exact" if ok else "rotated triangle NOT exact"])
    return CommandResult(text, {"certified": ok, "objects": [complex_rec(R.X), complex_rec(R.Y),
                                                               complex_rec(R.Z)]}, 0 if ok else 1)


def _triangle(ws, args):
    from .triangle import Triangle

    a, b, c = ws.map(args.a), ws.map(args.b), ws.map(args.c)
    return Triangle(a, b, ChainMap(c.source, c.target, c.components, check=False))


def cmd_certify(args) -> CommandResult:
    from .triangle import certify_exact

    ws = _ws(args)
    try:
        T = _triangle(ws, args)
    except ValueError as e:
        raise InputError(str(e))
    cert = certify_exact(T)
    if cert is None:
        return CommandResult("not exact: no isomorphism to the cone triangle exists",
                             {"exact": False}, 1)
    return CommandResult("exact (certificate verifies)" if cert.verify() else "certificate failed",
                         {"exact": True, "verified": cert.verify()})


def cmd_les(args) -> CommandResult:
    from .triangle import cone, long_exact_sequence

    ws = _ws(args)
    if args.map:
        _, T = cone(ws.map(args.map))
    else:
        T = _triangle(ws, args)
    try:
        les = long_exact_sequence(T)
    except ValueError as e:
        return CommandResult(f"not exact: {e}", {"exact": False}, 1)
    lines, rec = [], []
    for i, (label, f) in enumerate(les.maps):
        ok = les.exact_at[i] if i < len(les.exact_at) else None
        lines.append(f"{label}: {mod_str(f.source)} -> {mod_str(f.target)}"
                     + ("" if ok is None else ("   exact after" if ok else "   NOT exact after")))
        rec.append({"label": label, "source": mod_rec(f.source), "target": mod_rec(f.target),
                    "matrix": matrix_to_record(f.matrix), "exact_after": ok})
    if les.connecting_ok:
        good = all(les.connecting_ok.values())
        lines.append("connecting maps equal H^{n+1}a" if good else "connecting map mismatch")
    lines.append("sequence exact" if les.exact else "sequence NOT exact")
    return CommandResult("\n".join(lines), {"maps": rec, "exact": les.exact,
                                           "connecting_ok": {num(k): v for k, v in les.connecting_ok.items()}},
                         0 if les.exact else 1)


def cmd_octahedron(args) -> CommandResult:
    from .triangle import octahedron

    ws = _ws(args)
    oc = octahedron(ws.map(args.f), ws.map(args.g))
    ok = oc.verify()
    lines = [complex_text(oc.alpha.Z, "cone(f)"), complex_text(oc.beta.Z, "cone(g)"),
             complex_text(oc.gamma.Z, "cone(gf)")]
    lines += [f"face {f.name}: homotopy recorded" for f in oc.faces]
    lines.append("all four triangles certified; epsilon triangle certified" if ok else "verification FAILED")
    return CommandResult("\n".join(lines), {"verified": ok, "faces": [f.name for f in oc.faces]},
                         0 if ok else 1)


def cmd_pushout(args) -> CommandResult:
    from .triangle import homotopy_pushout

    ws = _ws(args)
    sq = homotopy_pushout(ws.map(args.f), ws.map(args.g))
    ok = sq.verify()
    return CommandResult(complex_text(sq.b1.target, "Z") + ("\nhomotopy cartesian square verified" if ok
                                                             else "\nverification FAILED"),
                         {"Z": complex_rec(sq.b1.target), "verified": ok}, 0 if ok else 1)


def cmd_homk(args) -> CommandResult:
    from .homotopycat import hom_k

    ws = _ws(args)
    if args.null:
        f = ws.map(args.null)
        h = null_homotopy(f)
        if h is None:
            return CommandResult(f"{args.null} is not null-homotopic", {"null_homotopic": False}, 1)
        return CommandResult(f"{args.null} is null-homotopic", {"null_homotopic": True})
    if not (args.x and args.y):
        raise InputError("homk needs -x and -y, or --null MAP")
    G = hom_k(ws.complex(args.x), ws.complex(args.y)).group
    return CommandResult(f"Hom_K({args.x}, {args.y}) ≅ {mod_str(G)}", {"group": mod_rec(G)})


def cmd_weakker(args) -> CommandResult:
    from .homotopycat import weak_kernel, weak_kernel_exact

    f = _ws(args).map(args.map)
    w = weak_kernel(f)
    ok = weak_kernel_exact(f, [f.source, f.target, w.source])
    return CommandResult(complex_text(w.source, "W") + ("\nexact on test objects" if ok else "\nNOT exact"),
                         {"W": complex_rec(w.source), "exact": ok}, 0 if ok else 1)


def cmd_homd(args) -> CommandResult:
    from .derivedcat import hom_d

    ws = _ws(args)
    G = hom_d(ws.complex(args.x), ws.complex(args.y)).group
    return CommandResult(f"Hom_D({args.x}, {args.y}) ≅ {mod_str(G)}", {"group": mod_rec(G)})


def cmd_compose_roof(args) -> CommandResult:
    from .derivedcat import compose_roofs, hom_d

    ws = _ws(args)
    r1, r2 = ws.roof(args.first), ws.roof(args.second)
    try:
        r = compose_roofs(r1, r2)
    except ValueError as e:
        raise InputError(str(e))
    hd = hom_d(r.X, r.Y)
    cls = hd.normal_form(r)
    cls = hd.group.reduce(cls)
    return CommandResult(f"composite class {[num(x) for x in cls]} in Hom_D ≅ {mod_str(hd.group)}",
                         {"class": [num(x) for x in cls], "group": mod_rec(hd.group)})


def cmd_roof_eq(args) -> CommandResult:
    from .derivedcat import roofs_equivalent

    ws = _ws(args)
    eq = roofs_equivalent(ws.roof(args.first), ws.roof(args.second))
    return CommandResult("equivalent" if eq else "not equivalent", {"equivalent": eq}, 0 if eq else 1)


def _modules(args):
    ws = _ws_optional(args)
    try:
        return ws.module(args.source), ws.module(args.target)
    except WorkspaceError:
        raise


def cmd_ext(args) -> CommandResult:
    from .derivedcat import ext_tor

    A, B = _modules(args)
    G = ext_tor("ext", A, B, args.n)
    return CommandResult(f"Ext^{args.n} ≅ {mod_str(G)}", {"group": mod_rec(G), "n": args.n})


def cmd_tor(args) -> CommandResult:
    from .derivedcat import ext_tor

    A, B = _modules(args)
    G = ext_tor("tor", A, B, args.n)
    return CommandResult(f"Tor_{args.n} ≅ {mod_str(G)}", {"group": mod_rec(G), "n": args.n})


def cmd_zero_in_d(args) -> CommandResult:
    from .derivedcat import is_zero_in_d

    ws = _ws(args)
    if args.identity:
        f = ChainMap.identity(ws.complex(args.identity))
    elif args.map:
        f = ws.map(args.map)
    else:
        raise InputError("zero-in-d needs -f MAP or --identity COMPLEX")
    z = is_zero_in_d(f)
    nh = null_homotopy(f) is not None
    lines = ["zero in D" if z.is_zero else "nonzero in D",
             "null-homotopic" if nh else "not null-homotopic"]
    return CommandResult("\n".join(lines), {"zero_in_d": z.is_zero, "null_homotopic": nh},
                         0 if z.is_zero else 1)


def cmd_decompose(args) -> CommandResult:
    from .derivedcat import hereditary_decompose

    X = _ws(args).complex(args.complex)
    H, r = hereditary_decompose(X)
    ok = bool(is_quasi_iso(r.alpha)) and bool(is_quasi_iso(r.sigma))
    lines = [f"H^{n} ≅ {mod_str(H[n])}" for n in H.degrees] or ["X is acyclic"]
    lines.append("roof legs are quasi-isomorphisms" if ok else "roof legs FAILED")
    return CommandResult("\n".join(lines), {"H": complex_rec(H), "verified": ok}, 0 if ok else 1)


def cmd_ses_triangle(args) -> CommandResult:
    from .derivedcat import triangle_from_ses

    ws = _ws(args)
    a, b = ws.map(args.alpha), ws.map(args.beta)
    try:
        st = triangle_from_ses(a[0], b[0])
    except ValueError as e:
        raise InputError(str(e))
    cls = st.ext_group.reduce(st.gamma_class)
    return CommandResult(f"gamma class {[num(x) for x in cls]} in Ext^1 ≅ {mod_str(st.ext_group)}",
                         {"class": [num(x) for x in cls], "ext1": mod_rec(st.ext_group)})


def cmd_dg_check(args) -> CommandResult:
    from .dg import check_dg_algebra

    A = _ws(args).dga(args.algebra)
    report = check_dg_algebra(A)
    text = "valid dg algebra" if report.valid else "\n".join(report.lines())
    return CommandResult(text, {"valid": report.valid, "violations": [
        {"axiom": v.axiom, "location": list(v.location), "degree": v.degree} for v in report.violations]},
        0 if report.valid else 1)


def _dims(degrees) -> Dict[int, int]:
    out = {}
    for d in degrees:
        out[d] = out.get(d, 0) + 1
    return dict(sorted(out.items()))


def cmd_dg_end(args) -> CommandResult:
    from .dg import check_dg_algebra, dga_cohomology, end_complex_as_dga

    ws = _ws(args)
    X = ws.complex(args.complex)
    if X.ring is not Ring.QQ:
        raise InputError("End dg algebras are built over Q")
    A = end_complex_as_dga(X)
    dims = _dims(A.degrees)
    coh = {n: dga_cohomology(A, n) for n in dims}
    valid = check_dg_algebra(A).valid
    lines = [f"degree {n}: dim {d}, H^{n} dim {coh[n]}" for n, d in dims.items()]
    lines.append("valid dg algebra" if valid else "INVALID")
    if args.save:
        ws.dgas[args.save] = A
        ws.save(args.out or args.workspace)
        lines.append(f"saved as {args.save}")
    return CommandResult("\n".join(lines), {"dims": {num(k): v for k, v in dims.items()},
                                            "cohomology": {num(k): v for k, v in coh.items()},
                                            "valid": valid})


def cmd_dg_dual(args) -> CommandResult:
    from .dg import check_dg_module, dg_dual, evaluation_map, free_module

    A = _ws(args).dga(args.algebra)
    F = free_module(A)
    D = dg_dual(F)
    valid = check_dg_module(D).valid
    bidual = evaluation_map(F).verify()
    lines = [f"D(A) degree {n}: dim {d}" for n, d in _dims(D.degrees).items()]
    lines.append("dual is a valid module over the opposite algebra" if valid else "dual INVALID")
    lines.append("evaluation map to the double dual is a dg isomorphism" if bidual else "biduality FAILED")
    return CommandResult("\n".join(lines), {"dims": {num(k): v for k, v in _dims(D.degrees).items()},
                                            "valid": valid, "biduality": bidual},
                         0 if valid and bidual else 1)


def cmd_laws(args) -> CommandResult:
    from .laws.generate import InstanceGenSpec
    from .laws.report import run_law_suite
    from .laws.suites import SUITES

    if args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; known: {', '.join(SUITES)}")
    try:
        spec = InstanceGenSpec(ring=Ring.parse(args.ring), max_gens=args.max_gens, span=args.span,
                               max_torsion=args.max_torsion, seed=args.seed or 0, count=args.count)
    except ValueError as e:
        raise InputError(str(e))
    rep = run_law_suite(args.suite, spec, threads=args.threads)
    return CommandResult(rep.to_text().rstrip("\n"), rep.to_record(), 0 if rep.ok else 1)


def cmd_validate(args) -> CommandResult:
    ws = _ws(args)
    counts = {"modules": len(ws.modules), "complexes": len(ws.complexes), "maps": len(ws.maps),
              "roofs": len(ws.roofs), "dgas": len(ws.dgas)}
    text = "workspace valid: " + ", ".join(f"{v} {k}" for k, v in counts.items())
    return CommandResult(text, {"valid": True, "counts": counts})


# ---------------------------------------------------------------------------
# Parser.


def build_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a subcommand's defaults from overwriting flags given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-w", "--workspace", default=argparse.SUPPRESS, help="workspace file")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit a structured record")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed")
    p = argparse.ArgumentParser(prog="dercat", parents=[common],
                                description="Exact homological algebra over Z and Q.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(fn=fn)
        return s

    s = add("cohomology", cmd_cohomology, "cohomology of a complex")
    s.add_argument("-x", "--complex", required=True)
    s.add_argument("--degree", type=int)
    s = add("shift", cmd_shift, "shifted complex")
    s.add_argument("-x", "--complex", required=True)
    s.add_argument("-k", type=int, default=1)
    s = add("cone", cmd_cone, "mapping cone of a map")
    s.add_argument("-f", "--map", required=True)
    s = add("rotate", cmd_rotate, "rotate the cone triangle of a map")
    s.add_argument("-f", "--map", required=True)
    for name, fn, h in (("certify", cmd_certify, "certify a triangle exact"),
                        ("les", cmd_les, "long exact cohomology sequence")):
        s = add(name, fn, h)
        s.add_argument("-a")
        s.add_argument("-b")
        s.add_argument("-c")
        if name == "les":
            s.add_argument("-f", "--map", help="use the cone triangle of this map")
    s = add("octahedron", cmd_octahedron, "octahedral diagram of a composable pair")
    s.add_argument("-f", required=True)
    s.add_argument("-g", required=True)
    s = add("pushout", cmd_pushout, "homotopy pushout of two maps")
    s.add_argument("-f", required=True)
    s.add_argument("-g", required=True)
    s = add("homk", cmd_homk, "Hom in the homotopy category")
    s.add_argument("-x")
    s.add_argument("-y")
    s.add_argument("--null", help="decide whether this map is null-homotopic")
    s = add("weakker", cmd_weakker, "weak kernel of a map")
    s.add_argument("-f", "--map", required=True)
    s = add("homd", cmd_homd, "Hom in the derived category")
    s.add_argument("-x", required=True)
    s.add_argument("-y", required=True)
    for name, fn, h in (("compose-roof", cmd_compose_roof, "compose two roofs"),
                        ("roof-eq", cmd_roof_eq, "decide equality of two roofs")):
        s = add(name, fn, h)
        s.add_argument("-r", "--first", required=True)
        s.add_argument("-s", "--second", required=True)
    for name, fn, h in (("ext", cmd_ext, "Ext of modules"), ("tor", cmd_tor, "Tor of modules")):
        s = add(name, fn, h)
        s.add_argument("--from", dest="source", required=True, help="module name or literal like Z/4")
        s.add_argument("--to", dest="target", required=True)
        s.add_argument("-n", type=int, required=True)
    s = add("zero-in-d", cmd_zero_in_d, "decide whether a map vanishes in D")
    s.add_argument("-f", "--map")
    s.add_argument("--identity", metavar="COMPLEX")
    s = add("decompose", cmd_decompose, "split a complex into its cohomology")
    s.add_argument("-x", "--complex", required=True)
    s = add("ses-triangle", cmd_ses_triangle, "triangle of a short exact sequence")
    s.add_argument("--alpha", required=True)
    s.add_argument("--beta", required=True)
    s = add("dg-check", cmd_dg_check, "validate a dg algebra")
    s.add_argument("-a", "--algebra", required=True)
    s = add("dg-end", cmd_dg_end, "End dg algebra of a complex over Q")
    s.add_argument("-x", "--complex", required=True)
    s.add_argument("--save", help="store the algebra under this name")
    s.add_argument("--out", help="file to write the updated workspace to")
    s = add("dg-dual", cmd_dg_dual, "dual of the free module of a dg algebra")
    s.add_argument("-a", "--algebra", required=True)
    s = add("laws", cmd_laws, "run a law suite")
    s.add_argument("--suite", required=True)
    s.add_argument("--count", type=int, default=20)
    s.add_argument("--ring", default="Z")
    s.add_argument("--max-gens", type=int, default=2)
    s.add_argument("--span", type=int, default=3)
    s.add_argument("--max-torsion", type=int, default=12)
    s.add_argument("--threads", type=int, default=1)
    add("validate", cmd_validate, "load and validate a workspace")
    return p


def run_command(argv: List[str]) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return CommandResult("", {}, 2 if e.code else 0)
    for name, default in (("workspace", None), ("json", False), ("seed", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    if args.command in ("certify",) or (args.command == "les" and not args.map):
        if not (args.a and args.b and args.c):
            return CommandResult("error: need -a, -b and -c (or -f for les)", {"error": "missing maps"}, 2)
    try:
        res = args.fn(args)
    except (WorkspaceError, InputError) as e:
        return CommandResult(f"error: {e}", {"error": str(e)}, 2)
    res.record = {"command": args.command, **res.record}
    res._json = args.json
    return res


def main(argv: Optional[List[str]] = None) -> int:
    res = run_command(sys.argv[1:] if argv is None else argv)
    as_json = getattr(res, "_json", False)
    if as_json:
        sys.stdout.write(dumps({"status": res.status, **res.record}))
    elif res.text:
        stream = sys.stderr if res.status == 2 else sys.stdout
        stream.write(res.text + "\n")
    return res.status


if __name__ == "__main__":
    sys.exit(main())
