"""Command-line front end and the named verification suite.

Exit codes: 0 all good, 1 a verification check failed, 2 bad input,
3 a search budget truncated an exactness proof.  KHOCO_THREADS bounds the
verification work pool, KHOCO_BUDGET_MS bounds each individual search.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import builders, fixtures
from .annular import (annular_unlink_family, build_annular_complex,
                      tangle_closure_iso_check)
from .distance import (css_distance, dist2_necessary, homology_dims,
                       min_weight_nontrivial, brute_oracle)
from .errors import KhocoError, OracleRefused
from .khovanov import build_complex, mirror_matches_dual, reduction_iso
from .products import (closed_form_params, connect_sum_check,
                       factor_distances, family_cross_check,
                       hopf_recursion_check, tensor, tensor_upper_bound)
from .sequences import asymptotics_table, hopf_c_seq, series_coeffs
from .sl3 import (box_dual, box_mul, expand_F, is_signed_permutation,
                  min_combo_weight, ri_invariance_check, sl3_n_formula,
                  sl3_unknot_params, theta_pairing_matrix)


@dataclass
class VerificationRecord:
    check_id: str
    status: str  # pass | fail | skipped
    details: dict
    runtime: float

    def to_json(self):
        return {"check_id": self.check_id, "status": self.status,
                "details": self.details, "runtime": round(self.runtime, 3)}


def _budget_ms():
    env = os.environ.get("KHOCO_BUDGET_MS")
    return float(env) if env else None


# -- verification checks ---------------------------------------------------------


def check_hopf_baseline():
    d = fixtures.fixture("hopf")
    cx = build_complex(d, reduced=True)
    dims = cx.group_dims()
    hom = homology_dims(cx)
    d0 = min_weight_nontrivial(cx, 0).d_hat
    d2 = min_weight_nontrivial(cx, 2).d_hat
    ok = (dims == {0: 2, 1: 2, 2: 2} and hom == {0: 1, 1: 0, 2: 1}
          and d0 == 2 and d2 == 1)
    return ok, {"dims": dims, "homology": hom, "d_hat": {0: d0, 2: d2}}


_REDUCED_CORPUS = [
    "unknot0", "unknot_kink_pos", "unknot_kink_neg", "unknot_kink_pair",
    "hopf", "hopf_negative", "trefoil", "torus_2_4", "torus_2_5",
    "braid_s2m1s1m1s2s2", "braid_s1s2m1s1m1s2",
    "tree_unlink_1", "tree_unlink_2",
]


def check_reduced_equals_unreduced():
    budget = _budget_ms()
    rows = []
    ok = True
    for name in _REDUCED_CORPUS:
        d = fixtures.fixture(name)
        iso = reduction_iso(d)
        commutes = iso.commutes()
        hom = homology_dims(build_complex(d, reduced=True))
        per = {}
        for deg, h in sorted(hom.items()):
            if not h:
                continue
            red = css_distance(d, deg, reduced=True, budget_ms=budget,
                               check_mirror_agrees=False)
            unred = css_distance(d, deg, reduced=False, budget_ms=budget,
                                 check_mirror_agrees=False)
            per[deg] = (red.d, unred.d)
            ok = ok and red.d == unred.d and red.exact and unred.exact
        ok = ok and commutes
        rows.append({"fixture": name, "iso_commutes": commutes,
                     "distances": per})
    return ok, {"corpus": rows}


def check_connect_sum():
    budget = _budget_ms()
    pairs = [("unknot0", "unknot0"), ("unknot0", "hopf"), ("hopf", "hopf"),
             ("hopf", "trefoil"), ("unknot_kink_pos", "hopf"),
             ("trefoil", "unknot_kink_neg")]
    rows = []
    ok = True
    for a, b in pairs:
        rep = connect_sum_check(fixtures.fixture(a), fixtures.fixture(b),
                                budget_ms=budget)
        ok = ok and rep["ok"]
        rows.append({"pair": (a, b), "ok": rep["ok"]})
    return ok, {"pairs": rows}


def check_riiriicex_chain():
    vals = {}
    for name, want in (("riiriicex_top", 2), ("riiriicex_middle", 2),
                       ("riiriicex_bottom", 4)):
        cx = build_complex(fixtures.fixture(name))
        vals[name] = min_weight_nontrivial(cx, 0).d_hat
        vals[name + "_expected"] = want
    ok = (vals["riiriicex_top"] == 2 and vals["riiriicex_middle"] == 2
          and vals["riiriicex_bottom"] == 4)
    return ok, vals


def check_riicex_pair():
    vals = {}
    for name in ("riicex_top", "riicex_bottom"):
        rep = css_distance(fixtures.fixture(name), 0,
                           check_mirror_agrees=False)
        vals[name] = rep.d
    ok = vals["riicex_top"] == 2 and vals["riicex_bottom"] == 2
    return ok, vals


def check_riii_braids():
    budget = _budget_ms()
    d2 = css_distance(fixtures.fixture("braid_s2m1s1m1s2s2"), 0,
                      budget_ms=budget)
    d4 = css_distance(fixtures.fixture("braid_s1s2m1s1m1s2"), 0,
                      budget_ms=budget)
    necessary = dist2_necessary(fixtures.fixture("braid_s1s2m1s1m1s2"), 0)
    ok = d2.d == 2 and d4.d == 4 and necessary is False
    return ok, {"before": d2.d, "after": d4.d,
                "dist2_necessary_on_after": necessary}


def check_rii_doubling():
    budget = _budget_ms()
    rows = []
    ok = True
    for base in ("unknot", "hopf"):
        disjoint = fixtures.fixture(f"slide_{base}_disjoint")
        under = fixtures.fixture(f"slide_{base}_under")
        over = fixtures.fixture(f"slide_{base}_over")
        hom = homology_dims(build_complex(disjoint))
        for deg, h in sorted(hom.items()):
            if not h:
                continue
            d0 = css_distance(disjoint, deg, budget_ms=budget,
                              check_mirror_agrees=False).d
            d1 = css_distance(under, deg, budget_ms=budget,
                              check_mirror_agrees=False).d
            rows.append({"base": base, "degree": deg, "before": d0,
                         "after": d1, "doubled": d1 == 2 * d0})
            ok = ok and d1 == 2 * d0
        cu = build_complex(under)
        co = build_complex(over)
        for deg in cu.degrees():
            du = min_weight_nontrivial(cu, deg, budget_ms=budget).d_hat
            do = min_weight_nontrivial(co, deg, budget_ms=budget).d_hat
            if du != do:
                ok = False
                rows.append({"base": base, "degree": deg,
                             "overstrand_mismatch": (du, do)})
    # the general corollary instance: two nontrivial disjoint links joined
    both = fixtures.fixture("join_hopfs_disjoint")
    joined = fixtures.fixture("join_hopfs")
    for deg, h in sorted(homology_dims(build_complex(both)).items()):
        if not h:
            continue
        d0 = css_distance(both, deg, budget_ms=budget,
                          check_mirror_agrees=False).d
        d1 = css_distance(joined, deg, budget_ms=budget,
                          check_mirror_agrees=False).d
        rows.append({"base": "hopf+hopf", "degree": deg, "before": d0,
                     "after": d1, "doubled": d1 == 2 * d0})
        ok = ok and d1 == 2 * d0
    return ok, {"rows": rows}


def check_hopf_recursion():
    budget = _budget_ms()
    rows = []
    ok = True
    for name in ("unknot0", "hopf", "trefoil"):
        rep = hopf_recursion_check(fixtures.fixture(name), budget_ms=budget)
        ok = ok and rep["ok"]
        rows.append({"diagram": name, "ok": rep["ok"]})
    return ok, {"rows": rows}


def check_iterated_hopf_family():
    budget = _budget_ms()
    rows = []
    ok = True
    for ell in (1, 2):
        rep = family_cross_check("iterated-hopf", (ell,), budget_ms=budget)
        ok = ok and rep["ok"] and rep["exact"]
        rows.append(rep)
    return ok, {"rows": rows}


def check_torus_family():
    budget = _budget_ms()
    rows = []
    ok = True
    for ell in range(2, 6):
        d = builders.torus_link(ell, pointed=True)
        cx = build_complex(d, reduced=True)
        hom = homology_dims(cx)
        for r in range(ell + 1):
            if not hom.get(r):
                continue
            found = min_weight_nontrivial(cx, r, budget_ms=budget)
            want = 2 if r == 0 else math.comb(ell, r)
            row = {"ell": ell, "degree": r, "d_hat": found.d_hat,
                   "expected": want}
            try:
                oracle_d, _ = brute_oracle(cx, r)
                row["oracle"] = oracle_d
                ok = ok and found.d_hat == oracle_d
            except OracleRefused:
                row["oracle"] = None
            ok = ok and found.d_hat == want
            rows.append(row)
    return ok, {"rows": rows}


def check_tangle_closures():
    rows = []
    ok = True
    for name in ("annular_tangle_trivial", "annular_tangle_2_3",
                 "annular_tangle_2_4"):
        rep = tangle_closure_iso_check(fixtures.fixture(name))
        ok = ok and rep["ok"]
        rows.append({"fixture": name, "ok": rep["ok"]})
    return ok, {"rows": rows}


def check_annular_table():
    budget = _budget_ms()
    table = {1: 1, 2: 2, 3: 3, 4: 5}
    rows = []
    ok = True
    for ell, want in table.items():
        rep = annular_unlink_family(ell, budget_ms=budget)
        rows.append({"ell": ell, "d": rep.d, "expected": want,
                     "exact": rep.exact})
        ok = ok and rep.exact and rep.d == want
    rep5 = annular_unlink_family(5, budget_ms=budget)
    bound5 = rep5.d if rep5.exact else max(rep5.budget.get("lower_bound", 0), 0)
    rows.append({"ell": 5, "d": rep5.d, "certified_at_least": bound5,
                 "exact": rep5.exact, "published_bound": 3})
    ok = ok and (rep5.exact and rep5.d >= 3 or bound5 >= 3)
    return ok, {"rows": rows}


def check_sl3():
    budget = _budget_ms()
    details = {}
    ok = True
    closure = all(box_mul(i, j) == (i + j) % 3 for i in range(3) for j in range(3))
    duality = all(box_dual(i) == (2, (2 - i) % 3) for i in range(3))
    details["box"] = {"closure": closure, "negative_duality": duality}
    ok = ok and closure and duality

    dims = {}
    for s in range(0, 9):
        perm = is_signed_permutation(theta_pairing_matrix(s)) if s <= 8 else None
        dims[s] = {"dim": 3 * 2 ** s, "pairing_signed_perm": perm}
        ok = ok and perm
    details["theta"] = dims

    weights = {}
    for ell in range(1, 9):
        got = tuple(expand_F(i, ell).weight for i in range(3))
        want = (3 ** ell, 2 * 3 ** ell, 3 ** (ell + 1))
        mc = min_combo_weight(ell)
        weights[ell] = {"F_weights": got, "expected": want,
                        "min_combo": mc, "expected_min": 3 ** ell}
        ok = ok and got == want and mc == 3 ** ell
    details["generators"] = weights

    params, tier2 = sl3_unknot_params(1, tier=2, budget_ms=budget)
    t2_ok = (params.n, params.k, params.d) == (39, 3, 3) and all(
        b["homology"] == {0: 3} and b["d_hat"] == 3 and b["exact"]
        for b in tier2["bases"].values())
    details["tier2_l1"] = {"params": (params.n, params.k, params.d),
                           "bases": tier2["bases"], "ok": t2_ok}
    ok = ok and t2_ok

    series = series_coeffs("sl3", 200).terms
    formula_ok = all(series[m] == sl3_n_formula(m) for m in range(201))
    details["n_formula_vs_series"] = formula_ok
    ok = ok and formula_ok

    ri = [ri_invariance_check(1, 1), ri_invariance_check(2, 1)]
    details["ri_invariance"] = ri
    ok = ok and all(r["ok"] and r["exact"] for r in ri)
    return ok, details


def check_asymptotics():
    c = hopf_c_seq(200).terms
    series = series_coeffs("hopf", 200).terms
    eq = all(series[m] == c[m] for m in range(201))
    rows = []
    ok = eq
    for name, idx in (("hopf-c", 200), ("iterated-hopf-n", 200),
                      ("sl3-n", 200), ("tree-unlink-n", 400),
                      ("branched-unknot-n", 200)):
        row = asymptotics_table(name, [idx])[0]
        rows.append({"sequence": name, **{k: v for k, v in row.items()
                                          if k != "term"}})
        ok = ok and row["rel_error"] <= 0.01
    return ok, {"hopf_seq_equals_series": eq, "ratio_tests": rows}


def check_tensor_conjecture():
    budget = _budget_ms()
    pairs = [("hopf", "hopf"), ("hopf", "trefoil"), ("unknot0", "hopf")]
    rows = []
    ok = True
    for a, b in pairs:
        ca = build_complex(fixtures.fixture(a), reduced=True)
        cb = build_complex(fixtures.fixture(b), reduced=True)
        da = factor_distances(ca, budget_ms=budget)
        db = factor_distances(cb, budget_ms=budget)
        prod = tensor(ca, cb)
        for m in prod.degrees():
            bound = tensor_upper_bound(da, db, m)
            if bound == math.inf:
                continue
            found = min_weight_nontrivial(prod, m, budget_ms=budget)
            rows.append({"pair": (a, b), "degree": m,
                         "measured": found.d_hat, "bound": bound,
                         "equal": found.d_hat == bound})
            ok = ok and found.d_hat == bound
    return ok, {"rows": rows}


def check_tree_unlink_family():
    budget = _budget_ms()
    rows = []
    ok = True
    for ell in (1, 2, 3):
        rep = family_cross_check("tree-unlink", (ell,), budget_ms=budget)
        ok = ok and rep["ok"]
        rows.append(rep)
    star = family_cross_check("tree-unlink", (3,), budget_ms=budget,
                              tree_edges=builders.star_tree(3))
    ok = ok and star["ok"]
    rows.append({**star, "shape": "star"})
    return ok, {"rows": rows}


def check_branched_unknot_family():
    budget = _budget_ms()
    rows = []
    ok = True
    for m in (1, 2):
        rep = family_cross_check("branched-unknot", (1, m), budget_ms=budget)
        ok = ok and rep["ok"]
        rows.append(rep)
    return ok, {"rows": rows}


def check_mirror_duality():
    rows = []
    ok = True
    for name in ("hopf", "trefoil", "braid_s1s2m1s1m1s2"):
        d = fixtures.fixture(name)
        m_ok = mirror_matches_dual(d) and mirror_matches_dual(d, reduced=True)
        rows.append({"fixture": name, "ok": m_ok})
        ok = ok and m_ok
    return ok, {"rows": rows}


CHECKS = {
    "hopf-baseline": ("5", check_hopf_baseline),
    "thm-reduced-unreduced": ("3", check_reduced_equals_unreduced),
    "thm-connect-sum": ("3", check_connect_sum),
    "fig-RIIRIIcex": ("3", check_riiriicex_chain),
    "fig-RIIcex": ("3", check_riicex_pair),
    "fig-RIIIcexbraid": ("3", check_riii_braids),
    "thm-unknot-RII": ("3", check_rii_doubling),
    "prop-mirror-complex": ("2", check_mirror_duality),
    "thm-hopf-recursion": ("5", check_hopf_recursion),
    "iterated-hopf-family": ("5", check_iterated_hopf_family),
    "torus-family": ("5", check_torus_family),
    "tree-unlink-family": ("3", check_tree_unlink_family),
    "branched-unknot-family": ("3", check_branched_unknot_family),
    "prop-tanglesprop": ("4", check_tangle_closures),
    "table-annular-Dl": ("4", check_annular_table),
    "thm-main-sl3": ("6", check_sl3),
    "appendix-asymptotics": ("B", check_asymptotics),
    "tensor-conjecture": ("5", check_tensor_conjecture),
}


def cmd_verify_paper(section=None, jobs=None) -> list[VerificationRecord]:
    names = sorted(cid for cid, (sec, _) in CHECKS.items()
                   if section is None or sec == section)
    if jobs is None:
        jobs = int(os.environ.get("KHOCO_THREADS", "1"))

    def run(cid):
        start = time.monotonic()
        try:
            ok, details = CHECKS[cid][1]()
            status = "pass" if ok else "fail"
        except KhocoError as e:
            status, details = "skipped", {"reason": str(e)}
        return VerificationRecord(cid, status, details,
                                  time.monotonic() - start)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(run, names))
    else:
        records = [run(cid) for cid in names]
    return sorted(records, key=lambda r: r.check_id)


# -- argument parsing --------------------------------------------------------------


def _report_out(report, as_csv: bool):
    doc = report.to_json()
    if as_csv:
        keys = ["degree", "n", "k", "d_hat", "d_hat_dual", "d", "method", "exact"]
        print(",".join(str(doc[k]) for k in keys))
    else:
        print(json.dumps(doc, indent=1))
    return 3 if not doc["exact"] else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="khoco",
        description="CSS code parameters from Khovanov-type complexes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="full code report for a diagram")
    p.add_argument("diagram")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--convention", choices=("raw", "shifted"), default="raw")
    p.add_argument("--method", default="support-growth")
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("distance", help="homological distance only")
    p.add_argument("diagram")
    p.add_argument("--reduced", action="store_true")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--convention", choices=("raw", "shifted"), default="raw")
    p.add_argument("--method", default="support-growth")

    p = sub.add_parser("family", help="closed-form family parameters")
    p.add_argument("name")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--r", type=int)
    p.add_argument("--cross-check", action="store_true")
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("sl3", help="sl3 unknot codes")
    p.add_argument("what", choices=("unknot",))
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--tier", type=int, default=1)
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("annular", help="annular complexes and the unlink family")
    p.add_argument("fixture")
    p.add_argument("--adeg", type=int)
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("asymptotics", help="sequence terms vs comparators")
    p.add_argument("sequence")
    p.add_argument("--at", type=int, nargs="+", default=[50, 100, 200])
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("verify-paper", help="run the named verification suite")
    p.add_argument("--section", default=None)
    p.add_argument("--jobs", type=int, default=None)

    args = parser.parse_args(argv)
    budget = _budget_ms()

    try:
        if args.command in ("params", "distance"):
            diagram = fixtures.load(args.diagram)
            degree = args.degree
            if args.convention == "shifted":
                degree -= diagram.n_minus
            if args.command == "params":
                report = css_distance(diagram, degree, reduced=args.reduced,
                                      method=args.method, budget_ms=budget)
                return _report_out(report, args.csv)
            cx = build_complex(diagram, reduced=args.reduced)
            res = min_weight_nontrivial(cx, degree, args.method, budget)
            print(json.dumps({
                "degree": args.degree, "convention": args.convention,
                "d_hat": None if res.d_hat == math.inf else int(res.d_hat),
                "exact": res.exact, "method": res.method,
                "lower_bound": res.lower_bound}))
            return 0 if res.exact else 3

        if args.command == "family":
            if args.name == "torus-reduced":
                fam_args = (args.l, args.r if args.r is not None else 2)
            elif args.name == "branched-unknot":
                fam_args = (args.b, args.l)
            else:
                fam_args = (args.l,)
            params = closed_form_params(args.name, fam_args)
            if args.csv:
                print("family,args,n,k,d")
                print(params.csv_row())
            else:
                print(json.dumps({"family": params.family, "args": params.args,
                                  "n": params.n, "k": params.k, "d": params.d}))
            if getattr(args, "cross_check", False):
                rep = family_cross_check(args.name, fam_args, budget_ms=budget)
                print(json.dumps(rep))
                return 0 if rep["ok"] else 1
            return 0

        if args.command == "sl3":
            params, detail = sl3_unknot_params(args.l, tier=args.tier,
                                               budget_ms=budget)
            doc = {"n": params.n, "k": params.k, "d": params.d,
                   "tier": args.tier}
            if args.tier == 2:
                doc["bases"] = detail["bases"]
                witness = detail.get("witness")
                if witness is not None:
                    doc["witness"] = {"length": witness.length,
                                      "support": witness.support}
            else:
                doc["min_combo_weight"] = detail["min_combo_weight"]
            if args.csv:
                print("family,args,n,k,d")
                print(params.csv_row())
            else:
                print(json.dumps(doc))
            if args.tier == 2 and any(not b["exact"]
                                      for b in detail["bases"].values()):
                return 3
            return 0

        if args.command == "annular":
            if args.fixture.startswith("D") and args.fixture[1:].isdigit():
                report = annular_unlink_family(int(args.fixture[1:]),
                                               budget_ms=budget)
            else:
                diagram = fixtures.load(args.fixture)
                if args.adeg is None:
                    parser.error("--adeg is required for diagram fixtures")
                cx = build_annular_complex(diagram, args.adeg)
                res = min_weight_nontrivial(cx, 0, budget_ms=budget)
                dual = min_weight_nontrivial(cx.dual(), 0, budget_ms=budget)
                print(json.dumps({
                    "adeg": args.adeg,
                    "n": cx.dim(0),
                    "d_hat": None if res.d_hat == math.inf else int(res.d_hat),
                    "d_hat_dual": None if dual.d_hat == math.inf else int(dual.d_hat),
                    "d": None if min(res.d_hat, dual.d_hat) == math.inf
                    else int(min(res.d_hat, dual.d_hat)),
                    "exact": res.exact and dual.exact}))
                return 0 if res.exact and dual.exact else 3
            return _report_out(report, args.csv)

        if args.command == "asymptotics":
            rows = asymptotics_table(args.sequence, args.at)
            if args.csv:
                print("index,term,comparator,rel_error")
                for row in rows:
                    print(f"{row['index']},{row['term']},{row['comparator']},"
                          f"{row['rel_error']:.3e}")
            else:
                for row in rows:
                    out = dict(row)
                    out["term"] = str(out["term"])
                    print(json.dumps(out))
            return 0

        if args.command == "verify-paper":
            records = cmd_verify_paper(args.section, args.jobs)
            for rec in records:
                print(json.dumps(rec.to_json()))
            return 0 if all(r.status == "pass" for r in records) else 1
    except KhocoError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
