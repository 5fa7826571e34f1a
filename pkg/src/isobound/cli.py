"""Command line entry point.

Exit codes: 0 on success, 1 when a verification fails (no distinguishing
prime, a falsified bound, a failed audit), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from . import chebotarev as cheb
from . import deviation as dev
from .arith import radical
from .elliptic import (
    DEFAULT_AP_CAP,
    BadReduction,
    WeierstrassCurve,
    ap,
    bad_primes_radical,
    cm_and_finite_j_check,
    curve_from_text,
    distinguishing_prime,
    has_good_reduction,
    mod2_image_class,
    mod2_isomorphic,
    quadratic_twist,
    read_curves,
    twist_parameter,
)
from .groups import algorithms as alg
from .groups.io import audit, iter_dataset, read_group
from .pipeline import (
    CMCurve,
    Status,
    classify_pair,
    isogeny_bound,
    serre_bound,
    serre_bound_from_rad,
    verify_pair,
)


class UsageError(Exception):
    pass


def _emit(args, report: dict, text: str) -> None:
    print(json.dumps(report, default=str) if args.json else text)


def _curve(text: Optional[str], what: str) -> WeierstrassCurve:
    if not text:
        raise UsageError(f"missing {what}")
    try:
        return curve_from_text(text)
    except ValueError as exc:
        raise UsageError(f"bad curve {text!r}: {exc}") from None


def _curves_from_file(path: str) -> list[WeierstrassCurve]:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"curve file not found: {path}")
    try:
        return read_curves(p)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _pairs(args) -> list[tuple[WeierstrassCurve, WeierstrassCurve]]:
    """--file lists curves taken two at a time; otherwise --curve1/--curve2."""
    if args.file:
        curves = _curves_from_file(args.file)
        if len(curves) < 2 or len(curves) % 2:
            raise UsageError("a pair file needs an even number (>= 2) of curves")
        return list(zip(curves[::2], curves[1::2]))
    return [(_curve(args.curve1, "--curve1"), _curve(args.curve2, "--curve2"))]


def _report_text(d: dict) -> str:
    lines = [f"case: {d['case']} ({d['evidence']})", f"rad(2NN'): {d['rad']}", f"bound: {d['bound']} [{d['formula']}]"]
    if d.get("status") != "UNVERIFIED":
        if d["prime"] is not None:
            lines.append(f"distinguishing prime: p = {d['prime']}, a_p = {d['ap1']} vs {d['ap2']}")
        lines.append(f"status: {d['status']}")
    return "\n".join(lines)


# ------------------------------------------------------------------ commands


def cmd_isogeny_bound(args) -> int:
    if args.rad is not None:
        if not args.case:
            raise UsageError("--rad needs --case")
        try:
            rep = isogeny_bound(args.case, args.rad, args.delta_order)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        d = rep.as_dict()
        _emit(args, d, _report_text(d))
        return 0
    code = 0
    for E, F in _pairs(args):
        if args.verify:
            rep = verify_pair(E, F, args.cap, delta_order=args.delta_order)
            if rep.status is not Status.VERIFIED:
                code = 1
        else:
            rad = radical(2 * bad_primes_radical(E) * bad_primes_radical(F))
            rep = isogeny_bound(classify_pair(E, F), rad, args.delta_order)
        d = rep.as_dict()
        _emit(args, d, _report_text(d))
    return code


def cmd_serre_bound(args) -> int:
    if args.rad is not None:
        try:
            rep = serre_bound_from_rad(args.rad)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        E = _curve(args.curve, "--curve")
        try:
            rep = serre_bound(E)
        except CMCurve as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    d = rep.as_dict()
    text = [
        f"rad(2N): {rep.rad2N}",
        f"C_E <= {rep.c_e_bound_improved} (improved)",
        f"C_E <= {rep.c_e_bound_mw} (MW)",
    ]
    if rep.finite_j_shortcut:
        text.append("j is on the finite exceptional list: C_E <= 2")
    _emit(args, d, "\n".join(text))
    return 0


def cmd_distinguish(args) -> int:
    code = 0
    for E, F in _pairs(args):
        rec = distinguishing_prime(E, F, args.cap)
        d = {"prime": rec.p if rec else None, "ap1": rec.ap_E if rec else None, "ap2": rec.ap_Eprime if rec else None}
        if rec is None:
            code = 1
            text = f"no distinguishing prime up to {args.cap}"
        else:
            text = f"p = {rec.p}: a_p = {rec.ap_E} vs {rec.ap_Eprime}"
        _emit(args, d, text)
    return code


def cmd_collapse(args) -> int:
    path = Path(args.table)
    if not path.is_file():
        raise UsageError(f"table file not found: {args.table}")
    try:
        rows = cheb.read_table_csv(path)
        table = cheb.collapse_table(rows)
    except cheb.CollapseFailed as exc:
        print(f"collapse failed: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        raise UsageError(f"{args.table}: {exc}") from None
    convention = "strict-max" if args.strict_max else "reference"
    derived = {n: cheb.collapsed_coefficients(n, table, convention) for n in (72, 96, 128) if n <= table.max_degree}
    if args.json:
        print(json.dumps({
            "rows": [[r.n_min, r.n_max, str(r.triple), r.p0] for r in table.rows],
            "convention": convention,
            "derived": {str(n): str(t) for n, t in derived.items()},
        }))
        return 0
    print(cheb.format_table_csv(table), end="")
    print()
    print(cheb.render_table(table))
    print()
    for n, t in derived.items():
        print(f"n <= {n} ({convention}): {t}")
    return 0


def _load_group(path: str):
    if not Path(path).is_file():
        raise UsageError(f"group file not found: {path}")
    try:
        return read_group(path)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_group(args) -> int:
    op = args.op
    if op == "audit":
        if not Path(args.files[0]).is_file():
            raise UsageError(f"dataset not found: {args.files[0]}")
        res = audit(iter_dataset(Path(args.files[0]).read_text()))
        d = {
            "checked": len(res.checked),
            "agrees": res.agrees,
            "unexpected": list(res.unexpected),
            "absent": list(res.absent),
            "missing_orders": list(res.missing_orders),
        }
        _emit(args, d, "\n".join(f"{k}: {v}" for k, v in d.items()))
        return 0 if res.agrees else 1
    need = 2 if op in ("hom", "iso") else 1
    if len(args.files) != need:
        raise UsageError(f"group {op} takes {need} file(s)")
    G = _load_group(args.files[0])
    if op == "close":
        d = {"order": G.order, "generators": len(G.generators)}
        text = f"order {G.order}"
    elif op == "classes":
        sizes = alg.conjugacy_classes(G).sizes()
        d = {"classes": len(sizes), "sizes": sizes}
        text = f"{len(sizes)} classes, sizes {sizes}"
    elif op == "normals":
        sizes = [len(N) for N in alg.normal_subgroups(G)]
        d = {"count": len(sizes), "sizes": sizes}
        text = f"{len(sizes)} normal subgroups, orders {sizes}"
    elif op == "quotient-check":
        w = alg.has_quotient_with_element_order_gt(G, args.k, proper=args.proper)
        d = {
            "found": w is not None,
            "quotient_order": G.order // len(w.normal_subgroup) if w else None,
            "element_order": w.order if w else None,
            "problematic": alg.is_problematic(G),
        }
        if w is None:
            text = f"no quotient has an element of order > {args.k}"
        else:
            text = f"quotient of order {d['quotient_order']} has an element of order {w.order}"
        text += "\nproblematic: " + ("yes" if d["problematic"] else "no")
    else:
        H = _load_group(args.files[1])
        if op == "hom":
            try:
                found = alg.hom_exists(G, H, surjective=args.surjective)
            except alg.GroupTooLarge as exc:
                raise UsageError(str(exc)) from None
            d = {"hom": found}
            kind = "surjective homomorphism" if args.surjective else "nontrivial homomorphism"
            text = f"{kind}: {'yes' if found else 'no'}"
        else:
            found = alg.iso_test(G, H)
            d = {"isomorphic": found}
            text = f"isomorphic: {'yes' if found else 'no'}"
    _emit(args, d, text)
    return 0


def cmd_deviation(args) -> int:
    if not Path(args.reps).is_file():
        raise UsageError(f"representation file not found: {args.reps}")
    if args.table and not Path(args.table).is_file():
        raise UsageError(f"table file not found: {args.table}")
    try:
        rp = dev.read_rep_pair(args.reps, args.table)
    except ValueError as exc:
        raise UsageError(f"{args.reps}: {exc}") from None
    module = dev.algebra_closure(rp)
    delta = dev.deviation_group(rp, module)
    alpha = dev.compute_alpha(rp)
    ab = dev.compute_beta(rp)
    d = {
        "rank": module.rank,
        "delta_order": delta.order,
        "alpha": None if alpha is dev.TRACES_EQUAL else alpha,
        "beta": ab.beta,
        "phi_order": None,
        "class_size": None,
        "class_where": None,
    }
    lines = [f"M rank: {module.rank}", f"|delta(G)|: {delta.order}"]
    if alpha is dev.TRACES_EQUAL:
        lines.append(f"alpha: TracesEqual (traces agree mod 2^{rp.k})")
    else:
        lines.append(f"alpha: {alpha}")
    lines.append(f"beta: {ab.beta if ab.beta is not None else f'>= {rp.k}'}")
    if ab.beta not in (None, 0):
        phi = dev.phi_map(rp, ab)
        d["phi_order"] = phi.order
        lines.append(f"|phi(G)|: {phi.order}")
    if alpha is not dev.TRACES_EQUAL:
        C = dev.distinguishing_class(rp, delta)
        d["class_size"] = len(C.delta_class)
        d["class_where"] = list(C.where)
        lines.append(f"C: {len(C.delta_class)} element(s) of delta(G)" + (
            f", {len(C.phi_class)} of phi(G)" if C.phi_class is not None else ""))
    _emit(args, d, "\n".join(lines))
    return 0


def default_curve_file() -> Path:
    return Path(str(resources.files("isobound") / "data" / "curves.txt"))


def suite_pairs(curves: Sequence[WeierstrassCurve], stride: int = 2) -> list[tuple[WeierstrassCurve, WeierstrassCurve]]:
    """Nearby pairs with different conductor radicals (hence not isogenous)."""
    rads = [bad_primes_radical(E) for E in curves]
    out = []
    for i in range(len(curves)):
        for j in range(i + 1, min(i + 1 + stride, len(curves))):
            if rads[i] != rads[j]:
                out.append((curves[i], curves[j]))
    return out


def cmd_verify_suite(args) -> int:
    curves = _curves_from_file(args.file) if args.file else read_curves(default_curve_file())
    failures = 0
    pairs = suite_pairs(curves)
    for E, F in pairs:
        rep = verify_pair(E, F, args.cap)
        d = {"pair": f"{E.label or E.ainvs}/{F.label or F.ainvs}", **rep.as_dict()}
        ok = rep.status is Status.VERIFIED
        failures += not ok
        text = f"{d['pair']:<12} {d['case']:<16} rad={d['rad']:<6} p={d['prime']} bound={d['bound']} {d['status']}"
        _emit(args, d, text)
    if not args.json:
        print(f"{len(pairs) - failures}/{len(pairs)} pairs verified")
    return 1 if failures else 0


def cmd_curve(args) -> int:
    op = args.op
    E = _curve(args.curve, "--curve")
    if op == "ap":
        if args.p is not None:
            try:
                val = ap(E, args.p)
            except BadReduction as exc:
                raise UsageError(str(exc)) from None
            _emit(args, {"p": args.p, "ap": val}, f"a_{args.p} = {val}")
            return 0
        import sympy

        vals = {int(p): ap(E, int(p)) for p in sympy.primerange(2, args.cap + 1) if has_good_reduction(E, int(p))}
        _emit(args, {str(p): a for p, a in vals.items()}, " ".join(f"{p}:{a}" for p, a in vals.items()))
    elif op == "radical":
        r = bad_primes_radical(E)
        _emit(args, {"radical": r, "rad2N": radical(2 * r)}, f"rad(N) = {r}, rad(2N) = {radical(2 * r)}")
    elif op == "mod2":
        c = mod2_image_class(E)
        flags = cm_and_finite_j_check(E)
        d = {"image": c.image.value, "absolutely_irreducible": c.absolutely_irreducible, "j": str(flags.j), "cm": flags.is_cm_j}
        text = f"mod 2 image: {c.image.value} (absolutely irreducible: {c.absolutely_irreducible}); j = {flags.j}, CM j: {flags.is_cm_j}"
        if args.curve2:
            F = _curve(args.curve2, "--curve2")
            cmp = mod2_isomorphic(E, F, args.cap)
            d["relation"] = cmp.relation.value
            d["rigorous"] = cmp.rigorous
            text += f"\nrelation: {cmp.relation.value} ({cmp.evidence})"
        _emit(args, d, text)
    elif op == "twist":
        if args.curve2:
            dd = twist_parameter(E, _curve(args.curve2, "--curve2"))
            _emit(args, {"d": dd}, f"twist parameter: {dd}" if dd is not None else "not quadratic twists")
        else:
            if args.d is None:
                raise UsageError("curve twist needs --d or --curve2")
            T = quadratic_twist(E, args.d)
            _emit(args, {"ainvs": list(T.ainvs)}, " ".join(map(str, T.ainvs)))
    elif op == "distinguish":
        F = _curve(args.curve2, "--curve2")
        rec = distinguishing_prime(E, F, args.cap)
        d = {"prime": rec.p if rec else None, "ap1": rec.ap_E if rec else None, "ap2": rec.ap_Eprime if rec else None}
        _emit(args, d, f"p = {rec.p}: a_p = {rec.ap_E} vs {rec.ap_Eprime}" if rec else f"none up to {args.cap}")
        return 0 if rec else 1
    return 0


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="isobound", description="Isogeny and open-image bounds for elliptic curves over Q.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, cap_default=None):
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        p.add_argument("--cap", type=int, default=cap_default, help="search limit for primes")

    p = sub.add_parser("isogeny-bound", help="case and bound for a curve pair")
    common(p)
    p.add_argument("--curve1")
    p.add_argument("--curve2")
    p.add_argument("--file", help="curve file; consecutive lines form pairs")
    p.add_argument("--verify", action="store_true", help="also search for the least distinguishing prime")
    p.add_argument("--delta-order", type=int)
    p.add_argument("--rad", type=int, help="evaluate the bound for this rad(2NN') directly")
    p.add_argument("--case", choices=["Mod2Distinct", "Mod2IsoAbsIrred", "QuadraticTwistNonCM", "Generic"])
    p.set_defaults(func=cmd_isogeny_bound)

    p = sub.add_parser("serre-bound", help="bounds on the open-image constant")
    common(p)
    p.add_argument("--curve")
    p.add_argument("--rad", type=int, help="rad(2N) given directly")
    p.set_defaults(func=cmd_serre_bound)

    p = sub.add_parser("distinguish", help="least prime with different traces")
    common(p, 1000)
    p.add_argument("--curve1")
    p.add_argument("--curve2")
    p.add_argument("--file")
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("collapse", help="collapse a degree/discriminant table")
    common(p)
    p.add_argument("--table", required=True)
    p.add_argument("--strict-max", action="store_true", help="per-component maxima instead of the reference coefficients")
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("group", help="finite group utilities")
    common(p)
    p.add_argument("op", choices=["close", "classes", "normals", "quotient-check", "hom", "iso", "audit"])
    p.add_argument("files", nargs="+")
    p.add_argument("--k", type=int, default=3, help="element order threshold for quotient-check")
    p.add_argument("--proper", action="store_true", help="only proper quotients")
    p.add_argument("--surjective", action="store_true")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("deviation", help="deviation-group analysis")
    common(p)
    p.add_argument("op", choices=["analyze"])
    p.add_argument("--reps", required=True)
    p.add_argument("--table", help="multiplication table of the group")
    p.set_defaults(func=cmd_deviation)

    p = sub.add_parser("verify-suite", help="verify the bound on a corpus of curve pairs")
    common(p)
    p.add_argument("--file", help="curve file (default: bundled small-conductor curves)")
    p.set_defaults(func=cmd_verify_suite)

    p = sub.add_parser("curve", help="single-curve utilities")
    common(p, 200)
    p.add_argument("op", choices=["ap", "radical", "mod2", "twist", "distinguish"])
    p.add_argument("--curve", required=True)
    p.add_argument("--curve2")
    p.add_argument("--p", type=int)
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_curve)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
