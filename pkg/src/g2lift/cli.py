"""Batch driver: every verification and emission task, with JSON reports.

Exit codes: 0 all checks passed, 1 mismatch, 2 usage error, 3 internal
invariant failure.  Reports are canonical (term lists sorted); wall time
and versions live under "meta", the checked content under "result".
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__, engine, lifting, presentations, structure
from .errors import G2LiftError, InternalInvariantError
from .lifting import LiftingSession
from .rootdata import NROOTS, RANK, ROOT_NAMES, BraidingConfig, DeformationParams
from .scalars import Scalar

try:
    from importlib.resources import files as _res_files
except ImportError:  # pragma: no cover
    _res_files = None


def refdata(name):
    return json.loads(_res_files("g2lift.refdata").joinpath(name).read_text())


def _emit_terms(field, terms):
    out = []
    for k, c in sorted(terms.items(), key=lambda kv: (kv[0][8:], kv[0][6:8], kv[0][:6])):
        sc = Scalar(field, {k[8:16]: c})
        out.append({"exps": list(k[:6]), "grp": list(k[6:8]), "coef": sc.emit()})
    return out


class UsageError(Exception):
    pass


def _config(args):
    n = args.N
    if n <= 4:
        from math import gcd
        raise UsageError(
            f"N must exceed 3, and N=4 is excluded (q12*q21 = q^-3 collides "
            f"with the diagonal there); got N={n}, (N,3)={gcd(max(n, 1), 3)}")
    return BraidingConfig(n, args.a)


def _resolve_generic(case_rels, cfg, params):
    """Resolve symbolic exponents (N, M, 2N, ...) in the generic reference
    and drop terms carrying switched-off mu parameters."""
    import re as _re
    values = {"N": cfg.N, "M": cfg.M}
    for k in (2, 3):
        values[f"{k}N"] = k * cfg.N
        values[f"{k}M"] = k * cfg.M

    def res(x):
        return values[x] if isinstance(x, str) else x

    mu_token = {"m1": 0, "m2": 5, "m12": 4, "m112": 2, "m1112": 1, "mb": 3}
    dead = {tok for tok, rank in mu_token.items() if not params.mu[rank]}
    out = []
    for rel in case_rels:
        rhs = []
        for item in rel["rhs"]:
            toks = set(_re.findall(r"m1112|m112|m12|m1|m2|mb", item["coef"]))
            if toks & dead:
                continue
            rhs.append({**item, "exps": [res(x) for x in item["exps"]],
                        "grp": [res(x) for x in item["grp"]]})
        out.append({"root": rel["root"], "power": res(rel["power"]), "rhs": rhs})
    return out


def write_report(args, report, passed, t0):
    doc = {
        "command": args.command,
        "config": {"N": args.N, "a": getattr(args, "a", None)},
        "pass": passed,
        "result": report,
        "meta": {
            "version": __version__,
            "wall_time_s": round(time.time() - t0, 3),
            "jobs": getattr(args, "jobs", 1),
        },
    }
    text = json.dumps(doc, indent=1, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return doc


# ---------------------------------------------------------------------------
# commands


def cmd_verify_brackets(args):
    cfg = _config(args)
    report = {}
    ok = True
    kinds = [("prenichols", DeformationParams.none())]
    if cfg.is_degenerate:
        lam = DeformationParams(lam=(True, True))
        kinds += [("cleft-lambda", lam), ("lift-lambda", lam)]
    for kind, params in kinds:
        alg = presentations.build(kind, cfg, params)
        fails = presentations.jacobi_cross_check(alg)
        letters = {n: alg.letter(n) for n in ROOT_NAMES}
        tail_fail = []
        for (i, j), tail in sorted(alg.bracket.items()):
            got = engine.qbracket(letters[ROOT_NAMES[i]], letters[ROOT_NAMES[j]])
            if got.terms != tail:
                tail_fail.append(f"{ROOT_NAMES[i]},{ROOT_NAMES[j]}")
        report[kind] = {"jacobi_failures": [list(x) for x in fails],
                        "table_failures": tail_fail}
        ok = ok and not fails and not tail_fail
    return report, ok


def cmd_verify_coproducts(args):
    cfg = _config(args)
    H = presentations.build("prenichols", cfg)
    dmap = structure.coproduct_map(H)
    disp = structure.displayed_coproducts(H)
    report = {}
    ok = True
    for root, want in disp.items():
        got = dmap.letter_images[RANK[root]].terms
        same = got == want
        report[root] = "match" if same else "MISMATCH"
        ok = ok and same
    return report, ok


def cmd_verify_scalars(args):
    cfg = _config(args)
    case = "coprime" if cfg.N % 3 else "divisible"
    if args.case and args.case != case:
        raise UsageError(f"N={cfg.N} is the {case} case, not {args.case}")
    H = presentations.build("prenichols", cfg)
    tab = structure.extract_table(H)
    closed = structure.closed_form_table(cfg)
    diffs = structure.diff_tables(H.field, tab, closed)
    report = {"case": case, "values": {}, "mismatches": []}
    ok = True
    for name in sorted(closed.values, key=lambda s: (s[0], int(s[1:]))):
        c, d, same = diffs[name]
        report["values"][name] = {"extracted": H.field.emit(c),
                                  "closed_form": H.field.emit(d),
                                  "match": same}
        if not same:
            report["mismatches"].append(name)
            ok = False
    return report, ok


def cmd_support(args):
    cfg = _config(args)
    H = presentations.build("prenichols", cfg)
    rep = structure.check_support(H)
    report = {f"{root}:{label}": [list(map(list, (k[:6], k[8:14]))) for _, k in bad]
              for (root, label), bad in rep.items()}
    ok = not any(rep.values())
    return report, ok


def cmd_twist(args):
    cfg = _config(args)
    src = BraidingConfig(args.N, args.from_a)
    tgt = BraidingConfig(args.N, args.to_a)
    Hs = presentations.build("prenichols", src)
    Ht = presentations.build("prenichols", tgt)
    report = {}
    ok = True
    for root in ROOT_NAMES:
        lhs, rhs = structure.transport_check(Hs, Ht, root)
        same = lhs.terms == rhs.terms
        report[root] = "match" if same else "MISMATCH"
        ok = ok and same
    return report, ok


def cmd_lie_check(args):
    cfg = _config(args)
    if cfg.N % 3 == 0 and not structure.hypothesis_holds(cfg):
        raise UsageError(
            f"braiding N={cfg.N}, a={cfg.a} violates the power hypothesis; "
            "only the direct extraction route applies")
    H = presentations.build("prenichols", cfg)
    tab = structure.extract_table(H)
    pred = structure.predict_table(cfg, tab)
    f = cfg.field
    report = {"fitted_from": ["a1", "a2", "a4", "a7", "a8"],
              "predicted": {}, "mismatches": []}
    ok = True
    for name in sorted(pred.values, key=lambda s: int(s[1:])):
        same = pred.values[name] == tab.values[name]
        report["predicted"][name] = {"lie_route": f.emit(pred.values[name]),
                                     "extracted": f.emit(tab.values[name]),
                                     "match": same}
        if not same:
            report["mismatches"].append(name)
            ok = False
    # the doubling identity a2 = 2 a3 a1^{-1}
    doubling = tab.values["a2"] == f.mul_int(
        f.div(tab.values["a3"], tab.values["a1"]), 2)
    report["a2_equals_2_a3_over_a1"] = doubling
    ok = ok and doubling
    return report, ok


def cmd_confluence(args):
    cfg = _config(args)
    params = _params_for(args.kind, cfg)
    power_tails = None
    if args.kind in ("cleft-lambda-mu", "lift-lambda-mu"):
        ses = LiftingSession(cfg, DeformationParams(
            lam=params.lam, mu=(True,) * NROOTS))
        if args.kind == "cleft-lambda-mu":
            secs, _ = ses.sections()
            power_tails = lifting.cleft_power_tails(ses.cleft, secs, ses.params)
        else:
            power_tails = ses.lift_power_tails()
        params = ses.params
    alg = presentations.build(args.kind, cfg, params, power_tails=power_tails)
    rep = presentations.check_local_confluence(alg)
    return rep.summary(), rep.all_resolved


def _params_for(kind, cfg):
    if kind in ("cleft-lambda", "lift-lambda", "cleft-lambda-mu", "lift-lambda-mu"):
        if cfg.is_degenerate:
            return DeformationParams(lam=(True, True))
        return DeformationParams.none()
    return DeformationParams.none()


def cmd_hilbert(args):
    cfg = _config(args)
    bound = tuple(int(x) for x in args.bound.split(","))
    params = _params_for(args.kind, cfg)
    if args.kind in ("cleft-lambda-mu", "lift-lambda-mu"):
        raise UsageError("hilbert applies to the unbounded and Nichols kinds")
    alg = presentations.build(args.kind, cfg, params)
    dims = presentations.hilbert_series(alg, bound)
    report = {"bound": list(bound),
              "dims": {f"{k[0]},{k[1]}": v for k, v in dims.items()}}
    ok = dims.get((0, 0), 0) == 1
    if args.kind == "nichols":
        want = presentations.truncation_product_dims(cfg, bound)
        same = dims == want
        report["truncation_product_match"] = same
        ok = ok and same
    return report, ok


def cmd_cleft(args):
    cfg = _config(args)
    ses = LiftingSession(cfg)
    rels = ses.cleft_presentation()
    ref = refdata("degenerate_cleft.json") if args.compare is None \
        else lifting.load_reference(args.compare)
    rep = lifting.compare(rels, ref, cfg.field, cfg)
    report = rep.summary()
    report["relations_computed"] = {
        rel.root: _emit_terms(cfg.field, rel.rhs) for rel in rels}
    return report, rep.match


def cmd_lift(args):
    cfg = _config(args)
    if args.case == "generic":
        from .rootdata import admissible_params
        params = admissible_params(cfg)
        ses = LiftingSession(cfg, params)
        rels = ses.generic_presentation()
        ref = refdata("generic_lifting.json") if args.compare is None \
            else lifting.load_reference(args.compare)
        case = "coprime" if cfg.N % 3 else "divisible"
        reference = {"name": ref["name"], "notes": ref.get("notes", []),
                     "relations": _resolve_generic(ref["cases"][case], cfg, params)}
        table = structure.extract_table(presentations.build("prenichols", cfg))
        rep = lifting.compare(rels, reference, cfg.field, cfg, table=table)
        report = rep.summary()
        report["relations_computed"] = {
            rel.root: _emit_terms(cfg.field, rel.rhs) for rel in rels}
        return report, rep.match
    # degenerate
    if not cfg.is_degenerate:
        raise UsageError("the degenerate case needs N=7, a=3")
    ses = LiftingSession(cfg)
    ref = refdata("degenerate_lifting.json") if args.compare is None \
        else lifting.load_reference(args.compare)
    roots = [args.root] if args.root else list(ROOT_NAMES)
    rels = _lift_with_runtime(ses, roots, args)
    f = cfg.field
    rels.append(lifting.Relation(
        "11112", 1, {(0,) * 6 + (0, 0) + (1, 0, 0, 0, 0, 0, 0, 0): f.one,
                     (0,) * 6 + (4, 1) + (1, 0, 0, 0, 0, 0, 0, 0): f.neg(f.one)}))
    rels.append(lifting.Relation(
        "serre-12-2", 1, {(0,) * 6 + (0, 0) + (0, 1, 0, 0, 0, 0, 0, 0): f.one,
                          (0,) * 6 + (1, 2) + (0, 1, 0, 0, 0, 0, 0, 0): f.neg(f.one)}))
    spot = None
    if not args.long and (args.root in (None, "beta")):
        spot = {"beta": beta_spot_keys(ref, cfg)}
    rep = lifting.compare(rels, ref, f, cfg,
                          roots=set(roots) | {"11112", "serre-12-2"},
                          spot_keys=spot)
    report = rep.summary()
    report["scope"] = "full" if args.long else "default (beta spot-checked)"
    if spot:
        report["beta_spot_coefficients"] = len(spot["beta"])
    return report, rep.match


def _lift_with_runtime(ses, roots, args):
    """Compute lift relations, routing the beta power through the chunked,
    checkpointed runner when jobs/checkpointing are requested."""
    if "beta" in roots and (args.jobs > 1 or args.checkpoint_dir):
        from . import runtime
        spec = {"N": ses.config.N, "a": ses.config.a,
                "lam": list(ses.params.lam), "mu": list(ses.params.mu),
                "map": "delta"}
        dm = ses.delta()
        tag = runtime.task_hash({"task": "lift-beta", **spec})
        tensor = runtime.staged_power(
            dm, RANK["beta"], 7, jobs=args.jobs,
            ckpt_dir=args.checkpoint_dir, tag=tag,
            session_spec=spec,
            log=(lambda m: print(f"[beta power] {m}", file=sys.stderr)))
        orig = dm.letter_power

        def letter_power(r, k, _orig=orig, _rank=RANK["beta"], _t=tensor):
            if r == _rank and k == 7:
                return _t
            return _orig(r, k)

        dm.letter_power = letter_power
    return ses.lift_presentation(roots=roots)


def beta_spot_keys(ref, cfg):
    """The named default-scope coefficients of the beta relation: the full
    first displayed bracket block (the pure-group g1^21 g2^14 monomials) and
    the closing parameter-only terms."""
    rel = next(r for r in ref["relations"] if r["root"] == "beta")
    keys = set()
    for item in rel["rhs"]:
        exps = tuple(item["exps"])
        grp = tuple(item["grp"])
        if any(exps):
            continue
        if grp in ((21, 14), (0, 0)):
            for key in lifting.reference_terms(
                    {"rhs": [item]}, cfg.field, cfg):
                keys.add(key)
    return keys


def cmd_emit_presentation(args):
    cfg = _config(args)
    params = _params_for(args.kind, cfg)
    power_tails = None
    if args.kind in ("cleft-lambda-mu", "lift-lambda-mu"):
        ses = LiftingSession(cfg)
        if args.kind == "cleft-lambda-mu":
            secs, _ = ses.sections()
            power_tails = lifting.cleft_power_tails(ses.cleft, secs, ses.params)
        else:
            power_tails = ses.lift_power_tails()
        params = ses.params
    alg = presentations.build(args.kind, cfg, params, power_tails=power_tails)
    rules = {
        "kind": args.kind,
        "bracket": [
            {"pair": [ROOT_NAMES[i], ROOT_NAMES[j]],
             "tail": _emit_terms(cfg.field, tail)}
            for (i, j), tail in sorted(alg.bracket.items())
        ],
        "power": [
            {"root": ROOT_NAMES[r], "exponent": cfg.n_alpha_by_rank[r],
             "tail": _emit_terms(cfg.field, tail)}
            for r, tail in sorted(alg.power.items())
        ],
    }
    return rules, True


COMMANDS = {
    "verify-brackets": cmd_verify_brackets,
    "verify-coproducts": cmd_verify_coproducts,
    "verify-scalars": cmd_verify_scalars,
    "support": cmd_support,
    "twist": cmd_twist,
    "lie-check": cmd_lie_check,
    "confluence": cmd_confluence,
    "hilbert": cmd_hilbert,
    "cleft": cmd_cleft,
    "lift": cmd_lift,
    "emit-presentation": cmd_emit_presentation,
}


def build_parser():
    p = argparse.ArgumentParser(prog="g2lift", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    kinds = list(presentations.KINDS)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--N", type=int, default=7)
        sp.add_argument("--a", type=int, default=3)
        sp.add_argument("--out", default=None)
        sp.add_argument("--jobs", type=int, default=1)
        if name == "verify-scalars":
            sp.add_argument("--case", choices=["coprime", "divisible"])
        if name == "twist":
            sp.add_argument("--from-a", dest="from_a", type=int, required=True)
            sp.add_argument("--to-a", dest="to_a", type=int, required=True)
        if name in ("confluence", "hilbert", "emit-presentation"):
            sp.add_argument("--kind", choices=kinds, default="prenichols")
        if name == "hilbert":
            sp.add_argument("--bound", default="12,8")
        if name in ("cleft", "lift"):
            sp.add_argument("--compare", default=None)
        if name == "lift":
            sp.add_argument("--case", choices=["generic", "degenerate"],
                            default="degenerate")
            sp.add_argument("--root", choices=list(ROOT_NAMES), default=None)
            sp.add_argument("--long", action="store_true")
            sp.add_argument("--checkpoint-dir", default=None)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.time()
    try:
        report, passed = COMMANDS[args.command](args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except InternalInvariantError as e:
        print(f"internal invariant failure: {e}", file=sys.stderr)
        return 3
    except G2LiftError as e:
        print(f"internal failure: {e}", file=sys.stderr)
        return 3
    doc = write_report(args, report, passed, t0)
    status = "PASS" if passed else "FAIL"
    print(f"{args.command}: {status} "
          f"({doc['meta']['wall_time_s']}s, N={args.N}, a={getattr(args,'a',None)})")
    if not passed:
        for line in json.dumps(report, indent=1, sort_keys=True).splitlines()[:40]:
            print("  " + line)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
