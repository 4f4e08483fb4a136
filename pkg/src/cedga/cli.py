"""Command-line front end: ``cedga <subcommand> [options]``.

Exit status: 0 if every check passes, 1 if some check fails, 2 on usage
errors.  ``--format json`` prints a deterministic report with keys
``command``, ``params``, ``results`` and ``version``.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from . import __version__
from .ainfty import check_ainfty_relations, check_strict_unitality, morphism_defect
from .dga import DGAError, homology_dims, linear_part, twist, verify_augmentation, verify_dga
from .dgaparse import DGAParseError, load
from .fields import FieldError, field as as_field
from .freealg import format_poly
from .lambda_family import (
    A_PART,
    KnotParams,
    ParityError,
    build_ce_dga,
    canonical_augmentation,
    compare_differentials,
    compare_products,
    dual_algebra,
    documented_B_deviations,
    is_paired_quadruple,
    minimal_model,
    non_unit_products,
    normalized_dga,
    obstruction_check,
    printed_B_products,
    printed_mu2_A,
    printed_mu4_A,
    printed_twisted_differential,
    twisted_dga,
)
from .transfer import verify_contraction
from . import surface

PASS, FAIL, INFO = "pass", "fail", "info"


class UsageError(Exception):
    pass


def _vec(K, v: dict) -> dict:
    return {k: K.render(c) for k, c in sorted(v.items())}


def _table(K, tab: dict) -> list:
    return [{"args": list(args), "value": _vec(K, v)} for args, v in sorted(tab.items())]


def _result(ok, details) -> dict:
    status = INFO if ok is None else (PASS if ok else FAIL)
    return {"status": status, "details": details}


# -- subcommands ----------------------------------------------------------------

def cmd_verify(P: KnotParams, K) -> dict:
    d = build_ce_dga(P, K)
    rep = verify_dga(d)
    eps = canonical_augmentation(P, K)
    arep = verify_augmentation(d, eps)
    dev = compare_differentials(twisted_dga(P, K).differential, printed_twisted_differential(P, K))
    return {
        "dga": _result(rep.passed, {
            "generators": len(d.generators),
            "failures": [{"generator": c.name, "bad_degrees": c.bad_degrees, "d_squared": format_poly(c.d_squared)}
                         for c in rep.failures()],
        }),
        "augmentation": _result(arep.passed, {
            "nonzero_off_degree_zero": arep.nonzero_off_degree_zero,
            "nonvanishing": {g: K.render(v) for g, v in sorted(arep.nonvanishing.items())},
        }),
        "twist_golden": _result(not dev, {
            "mismatches": [{"generator": g, "computed": format_poly(a), "printed": format_poly(b)} for g, a, b in dev],
        }),
    }


def expected_linhom(P: KnotParams) -> dict:
    """One class for each of a0, b1..b6, in its DGA degree."""
    degs = {"a0": 1, **P.b_degrees()}
    out: dict = {}
    for g in A_PART:
        out[degs[g]] = out.get(degs[g], 0) + 1
    return dict(sorted(out.items()))


def cmd_linhom(P: KnotParams, K) -> dict:
    c = linear_part(normalized_dga(P, K))
    dims = homology_dims(c)
    want = expected_linhom(P)
    return {
        "d1_squared_zero": _result(c.composes_to_zero(), {}),
        "homology": _result(dims == want, {
            "dimensions": {str(k): v for k, v in sorted(dims.items())},
            "expected": {str(k): v for k, v in want.items()},
        }),
    }


def cmd_dual(P: KnotParams, K) -> dict:
    B = dual_algebra(P, K)
    rel = check_ainfty_relations(B, range(1, 5))
    unit = check_strict_unitality(B)
    computed = non_unit_products(B)
    dev = compare_products(computed, printed_B_products(P, K))
    documented = documented_B_deviations(P, K)
    F2 = as_field(2)
    dev2 = compare_products(non_unit_products(dual_algebra(P, F2)), printed_B_products(P, F2))
    ok = (not dev2) and sorted(dev) == sorted(documented)
    return {
        "ainfty_relations": _result(rel.passed, {
            "tested": {str(k): v for k, v in sorted(rel.tested.items())},
            "violations": len(rel.violations),
        }),
        "strict_unit": _result(unit.passed, {"failures": len(unit.failures)}),
        "printed_table": _result(ok, {
            "exact": not dev,
            "deviations": [
                {"arity": d, "args": list(a), "computed": _vec(K, x), "printed": _vec(K, y)} for d, a, x, y in dev
            ],
            "documented_in_SIGNS": len(documented),
            "f2_reduction_exact": not dev2,
        }),
        "products": _result(None, {str(d): _table(K, t) for d, t in sorted(computed.items())}),
    }


def cmd_transfer(P: KnotParams, K, max_arity: int) -> dict:
    B, c, A, Fm = minimal_model(P, K, max_arity)
    crep = verify_contraction(c)
    rel = check_ainfty_relations(A, range(1, max_arity + 1), mode="brute")
    names = list(A.basis)
    func_fail = [t for n in range(1, max_arity + 1) for t in itertools.product(names, repeat=n)
                 if morphism_defect(Fm, A, B, t)]
    mu2 = {k: v for k, v in A.products.get(2, {}).items() if A.unit not in k}
    mu3 = {k: v for k, v in A.products.get(3, {}).items()}
    out = {
        "contraction": _result(crep.passed, {
            "homotopy_identity": crep.homotopy_ok,
            "side_conditions": {k: not v for k, v in sorted(crep.side_conditions.items())},
        }),
        "ainfty_relations": _result(rel.passed, {
            "tested": {str(k): v for k, v in sorted(rel.tested.items())}, "violations": len(rel.violations),
        }),
        "functor_equations": _result(not func_fail, {"failures": [list(t) for t in func_fail[:20]]}),
        "mu2_printed": _result(mu2 == printed_mu2_A(P, K), {"computed": _table(K, mu2)}),
        "mu3_zero": _result(not mu3, {"nonzero": _table(K, mu3)}),
    }
    if max_arity >= 4:
        mu4 = A.products.get(4, {})
        printed = printed_mu4_A(P, K)
        ten = {t: A.mu(*t) for t in printed}
        bad_ten = [t for t in printed if ten[t] != printed[t]]
        off = {t: v for t, v in mu4.items() if A.unit not in t and not is_paired_quadruple(t)}
        out["mu4_printed"] = _result(not bad_ten, {
            "computed": _table(K, {t: v for t, v in ten.items() if v}),
            "mismatches": [{"args": list(t), "computed": _vec(K, ten[t]), "printed": _vec(K, printed[t])}
                           for t in bad_ten],
        })
        out["mu4_zero_elsewhere"] = _result(not off, {
            "nonzero_off_pattern": _table(K, off),
            "nonzero_paired": len([t for t in mu4 if is_paired_quadruple(t)]),
        })
    out["F_components"] = _result(None, {
        str(d): _table(K, {t: v for t, v in tab.items()}) for d, tab in sorted(Fm.components.items()) if d >= 2
    })
    return out


def cmd_obstruct(P: KnotParams, K, samples: int, seed: int) -> dict:
    r = obstruction_check(P, K, samples, seed)
    char2 = K.char == 2
    out = {
        "lhs_coefficient": _result(r.lhs_matches_printed, {
            "coefficient": K.render(r.lhs_coefficient),
            "printed": K.render(r.printed_lhs_coefficient),
            "lhs_total": r.lhs_total,
        }),
        "rhs_sampling": _result(r.rhs_random_failures == 0 if char2 else r.residual_consistent_with_sampling, {
            "samples": r.samples,
            "nonzero_rhs": r.rhs_random_failures,
            "residual_consistent_with_sampling": r.residual_consistent_with_sampling,
        }),
        "square_vanishing": _result(r.squares_vanish if char2 else None, {"H1_squares_vanish": r.squares_vanish}),
        "symbolic_residual": _result(
            (not r.symbolic_residual) if char2 else r.residual_matches_remark,
            {"residual": r.symbolic_residual},
        ),
        "verdict": _result(r.verdict if char2 else None, {
            "no_quasi_isomorphism": r.verdict,
        }),
    }
    return out


def cmd_formality(g: int, chat_extra: dict | None = None) -> dict:
    chat = surface.build_Chat(g, chat_extra)
    pres = {"C": surface.build_C(g), "Cprime": surface.build_Cprime(g), "Chat": chat, "H": surface.build_H(g)}
    maps = {
        "Phi": surface.build_Phi(g),
        "inclusion": surface.build_inclusion(g, chat),
        "PhiHat": surface.build_PhiHat(g, chat),
    }
    want = (1, 2 * g, 1)
    out = {}
    for name, P in pres.items():
        rep = surface.verify_dg_algebra(P)
        h = surface.cohomology_tuple(P)
        out[f"algebra_{name}"] = _result(rep.passed and h == want, {
            **rep.summary(),
            "first_associativity_failures": [list(t) for t in rep.associativity[:5]],
            "cohomology": list(h),
        })
    for name, f in maps.items():
        rep = surface.verify_dg_morphism(f)
        ranks = surface.induced_ranks(f)
        out[f"morphism_{name}"] = _result(rep.passed and surface.is_quasi_iso(f), {
            **rep.summary(),
            "quasi_iso": surface.is_quasi_iso(f),
            "induced_ranks": {str(k): list(v) for k, v in sorted(ranks.items())},
        })
    return out


def cmd_check(path: str) -> dict:
    try:
        doc = load(path)
    except DGAParseError as e:
        return {"parse": _result(False, {"line": e.line, "column": e.column, "message": e.message})}
    d = doc.dga()
    K = d.field
    rep = verify_dga(d)
    out = {
        "parse": _result(True, {"generators": len(d.generators), "field": K.name}),
        "dga": _result(rep.passed, {
            "failures": [{"generator": c.name, "bad_degrees": c.bad_degrees, "d_squared": format_poly(c.d_squared)}
                         for c in rep.failures()],
        }),
    }
    eps = doc.augmentation_map()
    target = d
    if eps is not None:
        arep = verify_augmentation(d, eps)
        out["augmentation"] = _result(arep.passed, {
            "nonzero_off_degree_zero": arep.nonzero_off_degree_zero,
            "nonvanishing": {g: K.render(v) for g, v in sorted(arep.nonvanishing.items())},
        })
        if not arep.passed or not rep.passed:
            return out
        target = twist(d, eps)
    if not rep.passed:
        return out
    try:
        c = linear_part(target)
    except DGAError as e:
        out["linearized"] = _result(False, {"message": str(e)})
        return out
    out["linearized"] = _result(c.composes_to_zero(), {
        "homology": {str(k): v for k, v in sorted(homology_dims(c).items())},
    })
    return out


# -- plumbing --------------------------------------------------------------------

def _family_args(sp):
    for name in ("p", "q", "r", "s"):
        sp.add_argument(f"--{name}", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cedga", description="Verification toolkit for the Λ(p,q,r,s) DGA family.")
    ap.add_argument("--version", action="version", version=f"cedga {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    def fam(name, help, field_default="Q"):
        sp = sub.add_parser(name, parents=[common], help=help)
        _family_args(sp)
        sp.add_argument("--field", default=field_default, help="2, another prime, or Q")
        return sp

    fam("verify", "DGA, augmentation and twist checks")
    fam("linhom", "linearized contact homology dimensions")
    fam("dual", "the dual A-infinity algebra B")
    sp = fam("transfer", "minimal model by homotopy transfer")
    sp.add_argument("--max-arity", type=int, default=4)
    sp = fam("obstruct", "obstruction to an A-infinity quasi-isomorphism onto H*(S_3)", field_default="2")
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=None)
    sp = sub.add_parser("formality", parents=[common], help="surface formality zig-zag (characteristic 2)")
    sp.add_argument("--genus", type=int, required=True)
    sp = sub.add_parser("check", parents=[common], help="parse, verify and linearize a .dga file")
    sp.add_argument("path")
    return ap


def run(args) -> dict:
    """Execute a parsed command line; returns the JSON report object."""
    params: dict = {}
    cmd = args.command
    if cmd in ("verify", "linhom", "dual", "transfer", "obstruct"):
        try:
            P = KnotParams(args.p, args.q, args.r, args.s)
            K = as_field(args.field)
        except (ParityError, FieldError) as e:
            raise UsageError(str(e)) from None
        params = {"p": P.p, "q": P.q, "r": P.r, "s": P.s, "field": K.name}
        if cmd == "verify":
            results = cmd_verify(P, K)
        elif cmd == "linhom":
            results = cmd_linhom(P, K)
        elif cmd == "dual":
            results = cmd_dual(P, K)
        elif cmd == "transfer":
            if args.max_arity < 2:
                raise UsageError("--max-arity must be at least 2")
            params["max_arity"] = args.max_arity
            results = cmd_transfer(P, K, args.max_arity)
        else:
            if args.samples <= 0:
                raise UsageError("--samples must be positive")
            if args.seed is None:
                raise UsageError("--seed is required when sampling")
            params.update(samples=args.samples, seed=args.seed)
            results = cmd_obstruct(P, K, args.samples, args.seed)
    elif cmd == "formality":
        if args.genus < 1:
            raise UsageError("--genus must be at least 1")
        params = {"genus": args.genus, "field": "2"}
        results = cmd_formality(args.genus)
    else:
        params = {"path": args.path}
        try:
            with open(args.path, "rb"):
                pass
        except OSError as e:
            raise UsageError(f"cannot read {args.path}: {e.strerror}") from None
        results = cmd_check(args.path)
    return {"command": cmd, "params": params, "results": results, "version": __version__}


def passed(report: dict) -> bool:
    return all(r["status"] != FAIL for r in report["results"].values())


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_text(report: dict) -> str:
    ps = " ".join(f"{k}={v}" for k, v in report["params"].items())
    lines = [f"cedga {report['command']} {ps}".rstrip()]
    for name, r in sorted(report["results"].items()):
        tag = r["status"].upper()
        lines.append(f"  [{tag:4}] {name}")
        d = r["details"]
        if r["status"] == INFO and isinstance(d, dict) and len(json.dumps(d)) > 400:
            lines.append(f"         ({len(d)} groups; use --format json for the full table)")
            continue
        for k, v in sorted(d.items()) if isinstance(d, dict) else []:
            s = json.dumps(v, sort_keys=True, ensure_ascii=False)
            if len(s) > 160:
                s = s[:157] + "..."
            lines.append(f"         {k}: {s}")
    lines.append("all checks passed" if passed(report) else "some checks FAILED")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        report = run(args)
    except UsageError as e:
        ap.print_usage(sys.stderr)
        print(f"cedga: error: {e}", file=sys.stderr)
        return 2
    out = render_json(report) if args.format == "json" else render_text(report)
    sys.stdout.write(out)
    return 0 if passed(report) else 1


if __name__ == "__main__":
    sys.exit(main())
