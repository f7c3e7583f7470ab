"""Command-line front end: verdicts, tables, oracle suites, Maslov numbers,
and the registry round-trip.  Exit codes: 0 success, 1 verdict/oracle
mismatch, 2 usage error."""

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .registry import load_registry
from . import casedriver
from .casedriver import run_family, maslov_number, main_theorem_scan


def _fmt_q(x):
    """Rationals serialize as p/q strings, never floats."""
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    return str(x)


def _fmt_tuple(t):
    if t is None:
        return ""
    return "(" + ",".join(_fmt_q(Fraction(x)) for x in t) + ")"


FAMILY_ALIASES = {
    "g2xg2": "g2xg2", "G2XG2": "g2xg2",
    "g2so4": "G2SO4", "G": "G2SO4", "G2SO4": "G2SO4",
    "b2": "b2", "B2": "b2",
    "diii": "DIII2", "DIII": "DIII2", "DIII2": "DIII2",
    "eiii": "EIII", "EIII": "EIII",
    "aiii": "AIII2", "AIII": "AIII2", "AIII2": "AIII2",
    "bdi": "BDI2", "BDI": "BDI2", "BDI2": "BDI2",
    "cii": "CII2", "CII": "CII2", "CII2": "CII2",
    "ai2": "AI2", "AI2": "AI2",
    "a2": "a2",
    "aii2": "AII2", "AII2": "AII2",
    "eiv": "EIV", "EIV": "EIV",
    "s1bdii": "S1xBDII", "S1xBDII": "S1xBDII",
    "bdiixbdii": "BDIIxBDII", "BDIIxBDII": "BDIIxBDII", "clifford": "BDIIxBDII",
}


def _resolve_family(name, args):
    if name not in FAMILY_ALIASES:
        raise UsageError("unknown family %r" % name)
    fid = FAMILY_ALIASES[name]
    params = {}
    if fid in ("AIII2", "CII2"):
        if args.m is None:
            raise UsageError("family %s needs --m" % fid)
        params["m"] = args.m
    elif fid == "BDI2":
        if args.m is not None:
            params["m"] = args.m
        elif args.p is not None:
            if args.parity not in ("even", "odd"):
                raise UsageError("BDI with --p needs --parity even|odd")
            params["m"] = 2 * args.p + (0 if args.parity == "even" else 1)
        else:
            raise UsageError("family BDI2 needs --m, or --p with --parity")
    elif fid == "S1xBDII":
        if args.n_param is None:
            raise UsageError("family S1xBDII needs --n")
        params["n"] = args.n_param
    elif fid == "BDIIxBDII":
        if args.p is None or args.q is None:
            raise UsageError("family BDIIxBDII needs --p and --q")
        params["p"] = args.p
        params["q"] = args.q
    return fid, params


class UsageError(Exception):
    pass


def _row_record(desc, row):
    return {
        "family": desc.label(),
        "Lambda": _fmt_tuple(row.lam),
        "Lambda1": _fmt_tuple(row.lam1),
        "Lambda2": _fmt_tuple(row.lam2),
        "mult": row.mult,
        "eigenvalue": _fmt_q(row.eig),
        "dim": row.dim,
        "k0_fixed": row.k0,
        "deck_fixed": "" if row.deck is None else row.deck,
        "provenance": row.provenance,
    }


_TABLE_FIELDS = ["family", "Lambda", "Lambda1", "Lambda2", "mult",
                 "eigenvalue", "dim", "k0_fixed", "deck_fixed", "provenance"]


def cmd_verdict(args):
    if args.all:
        report = main_theorem_scan(max_param=args.max_param)
        for e in report["instances"]:
            print("%-18s m=(%d,%d) n=%-3d %s nullity=%d n_hk=%d maslov=%d" %
                  (e["family"], e["m1"], e["m2"], e["n"],
                   "strict" if e["strictly_stable"] else
                   ("stable" if e["stable"] else "UNSTABLE"),
                   e["nullity"], e["n_hk"], e["maslov"]))
        if report["ok"]:
            print("main theorem scan: PASS (%d instances)" % len(report["instances"]))
            return 0
        print("main theorem scan: FAIL")
        for v in report["violations"]:
            print("  violation:", v)
        return 1
    if not args.family:
        raise UsageError("verdict needs --family or --all")
    fid, params = _resolve_family(args.family, args)
    v = run_family(fid, **params)
    print(v.summary())
    return 0 if v.matches_expected() else 1


def cmd_table(args):
    if not args.family:
        raise UsageError("table needs --family")
    fid, params = _resolve_family(args.family, args)
    v = run_family(fid, **params)
    rows = [r for r in v.rows if r.in_table or args.full]
    # attach resolved deck dims where available
    for r in rows:
        if r.deck is None:
            d = v.result.deck_at.get((r.lam, r.eig))
            if d is not None:
                r.deck = d
    recs = [_row_record(v.desc, r) for r in rows]
    out = sys.stdout
    if args.format == "json":
        json.dump(recs, out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        w = csv.DictWriter(out, fieldnames=_TABLE_FIELDS, lineterminator="\r\n")
        w.writeheader()
        for rec in recs:
            w.writerow(rec)
    else:
        widths = {f: max([len(f)] + [len(str(r[f])) for r in recs]) for f in _TABLE_FIELDS}
        line = "| " + " | ".join(f.ljust(widths[f]) for f in _TABLE_FIELDS) + " |"
        sep = "| " + " | ".join("-" * widths[f] for f in _TABLE_FIELDS) + " |"
        print(line)
        print(sep)
        for rec in recs:
            print("| " + " | ".join(str(rec[f]).ljust(widths[f]) for f in _TABLE_FIELDS) + " |")
    return 0


def cmd_maslov(args):
    if args.g is None or args.m1 is None:
        raise UsageError("maslov needs --g and --m1 (and --m2 for even g)")
    m2 = args.m2 if args.m2 is not None else args.m1
    if args.g % 2 == 0:
        n = args.g * (args.m1 + m2) // 2
    else:
        n = args.g * args.m1
    print(maslov_number(args.g, args.m1, m2, n))
    return 0


def cmd_oracle(args):
    from . import oracles
    checks = {
        "branching": oracles.check_branching,
        "dim-conservation": oracles.check_dim_conservation,
        "su2-spectrum": oracles.check_su2_spectrum,
        "generators": oracles.check_generators,
        "trace-integrality": oracles.check_trace_integrality,
        "golden": oracles.check_golden,
        "composition": oracles.check_composition,
        "roots": oracles.check_roots,
    }
    if args.check == "all":
        names = list(checks)
    elif args.check in checks:
        names = [args.check]
    else:
        raise UsageError("unknown oracle check %r (have: %s, all)"
                         % (args.check, ", ".join(sorted(checks))))
    failures = 0
    for name in names:
        ok, detail = checks[name](args)
        print("%-18s %s%s" % (name, "pass" if ok else "FAIL",
                              (" (%s)" % detail) if detail else ""))
        if not ok:
            failures += 1
    return 0 if failures == 0 else 1


def cmd_registry(args):
    reg = load_registry()
    with open(reg.path, "r", encoding="utf-8") as fh:
        original = fh.read()
    if reg.serialize() != original:
        print("registry round-trip: FAIL")
        return 1
    print("registry: %s" % reg.path)
    for fid in reg.family_ids():
        block = reg.blocks[fid]
        need = block.get("param")
        if need:
            mins = [int(x) for x in block.get("param_min").split(",")]
            names = [x.strip() for x in need.split(",")]
            params = dict(zip(names, mins))
        else:
            params = {}
        d = reg.descriptor(fid, **params)
        ok = d.check_kcoeffs()
        print("  %-12s g=%d n=%-4s n_hk=%-4d pair=%-5s m=(%d,%d) coeffs %s" %
              (d.label(), d.g, d.n, d.n_hk, d.pair_type, d.m1, d.m2,
               "ok" if ok else "MISMATCH"))
        if not ok:
            return 1
    print("round-trip: byte-identical; all composition coefficients verified")
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="isostab",
        description="Exact verification of Hamiltonian stability for Gauss "
                    "images of homogeneous isoparametric hypersurfaces.")
    sub = ap.add_subparsers(dest="cmd")

    def common(p):
        p.add_argument("--family", help="family id or alias")
        p.add_argument("--m", type=int, help="parameter m (AIII/BDI/CII)")
        p.add_argument("--p", type=int, help="parameter p (BDI parity form, Clifford)")
        p.add_argument("--q", type=int, help="parameter q (Clifford)")
        p.add_argument("--n", dest="n_param", type=int, help="parameter n (geodesic spheres)")
        p.add_argument("--parity", choices=["even", "odd"], help="BDI parity")
        p.add_argument("--bound", type=str, help="override enumeration bound (p/q)")
        p.add_argument("--parallel", action="store_true",
                       help="run independent families in parallel")

    pv = sub.add_parser("verdict", help="stability verdict for a family")
    common(pv)
    pv.add_argument("--all", action="store_true", help="scan the default grid")
    pv.add_argument("--max-param", type=int, default=8)
    pv.set_defaults(fn=cmd_verdict)

    pt = sub.add_parser("table", help="spectrum table for a family")
    common(pt)
    pt.add_argument("--format", choices=["md", "csv", "json"], default="md")
    pt.add_argument("--full", action="store_true",
                    help="include rows beyond the paper tables")
    pt.set_defaults(fn=cmd_table)

    po = sub.add_parser("oracle", help="property/oracle suites")
    common(po)
    po.add_argument("check", nargs="?", default="all")
    po.add_argument("--max-dim", type=int, default=500)
    po.add_argument("--max", dest="max_lm", type=int, default=8)
    po.set_defaults(fn=cmd_oracle)

    pm = sub.add_parser("maslov", help="minimal Maslov number 2n/g")
    pm.add_argument("--g", type=int)
    pm.add_argument("--m1", type=int)
    pm.add_argument("--m2", type=int)
    pm.set_defaults(fn=cmd_maslov)

    pr = sub.add_parser("registry", help="validate and round-trip the registry")
    pr.set_defaults(fn=cmd_registry)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if not getattr(args, "fn", None):
        ap.print_help()
        return 2
    try:
        return args.fn(args)
    except UsageError as e:
        print("usage error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
