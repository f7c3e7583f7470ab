"""Exhaustive property suites: closed-form branching against the weight
oracle, dimension conservation, the SU(2) model against its operator oracle,
generator orders, trace-average integrality, composition-coefficient
consistency, derived restricted roots, and golden-table diffs."""

import json
import os
from fractions import Fraction

from .exactalg import QI, Q
from .lattice import (Weight, SO, SU, Sp, Un, Spin, Torus, product, G2,
                      InnerProductSpec, to_basis)
from .repcore import weyl_dimension, freudenthal, enumerate_bounded
from .branching import (branch_so5_so4, branch_u_to_u1, branch_u_to_u2,
                        branch_so_even, branch_so_odd, branch_sp2,
                        branch_spin10, branch_spin8, su2_clebsch_gordan,
                        branch_by_weights, Embedding, quotient_char)
from .registry import load_registry

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "data", "golden")


def _golden(name):
    with open(os.path.join(GOLDEN_DIR, name), "r", encoding="utf-8") as fh:
        return json.load(fh)


def _dominants_below_dim(group, ip, maxdim, bound_guess=40):
    out = []
    for w in enumerate_bounded(group, ip, bound_guess):
        try:
            if weyl_dimension(w) <= maxdim:
                out.append(w)
        except ValueError:
            continue
    return out


def _cmp_rule_oracle(parent, sub, rule_fn, wrap, maxdim, emb=None):
    ip = InnerProductSpec(parent, "negative_trace")
    emb = emb or Embedding(parent, sub, None)
    checked = 0
    for w in _dominants_below_dim(parent, ip, maxdim):
        rule = {}
        for coords, mult in rule_fn(tuple(w.coords)):
            key = wrap(coords)
            rule[key] = rule.get(key, 0) + mult
        orc = {}
        for wp, mult in branch_by_weights(w, emb, cap=max(4 * maxdim, 2000)):
            orc[tuple(wp.coords)] = mult
        if rule != orc:
            return False, "mismatch at %s" % (w.coords,)
        checked += 1
    return True, "%d parents" % checked


def check_branching(args):
    maxdim = getattr(args, "max_dim", 500) or 500
    frac = lambda t: tuple(Fraction(x) for x in t)
    ok, msg = _cmp_rule_oracle(SO(5), SO(4), branch_so5_so4, frac, maxdim)
    if not ok:
        return False, "so5->so4 " + msg
    details = ["so5:" + msg]
    # U(5) > U(4) x U(1)
    ok, msg = _cmp_rule_oracle(Un(5), product(Un(4), Torus(1)),
                               branch_u_to_u1, frac, maxdim // 2)
    if not ok:
        return False, "u5->u4xu1 " + msg
    details.append("u5:" + msg)
    # U(4) > U(2) x U(2)
    ok, msg = _cmp_rule_oracle(Un(4), product(Un(2), Un(2)),
                               branch_u_to_u2, frac, maxdim // 2)
    if not ok:
        return False, "u4->u2xu2 " + msg
    details.append("u4:" + msg)
    # U(5) > U(2) x U(3)
    ok, msg = _cmp_rule_oracle(Un(5), product(Un(2), Un(3)),
                               branch_u_to_u2, frac, maxdim // 3)
    if not ok:
        return False, "u5->u2xu3 " + msg
    # Sp(2) > Sp(1) x Sp(1)
    ok, msg = _cmp_rule_oracle(Sp(2), product(Sp(1), Sp(1)),
                               branch_sp2, frac, maxdim)
    if not ok:
        return False, "sp2 " + msg
    details.append("sp2:" + msg)
    # Spin(10) > Spin(2).Spin(8) and Spin(8) > Spin(2).Spin(6)
    ip = InnerProductSpec(Spin(10), "negative_trace")
    checked = 0
    for w in _dominants_below_dim(Spin(10), ip, maxdim, bound_guess=12):
        rule = {}
        for coords, mult in branch_spin10(tuple(w.coords)):
            rule[frac(coords)] = rule.get(frac(coords), 0) + mult
        orc = {}
        sub = product(Torus(1), Spin(8))
        for wp, mult in branch_by_weights(w, Embedding(Spin(10), sub, None),
                                          cap=3000):
            orc[tuple(wp.coords)] = mult
        if rule != orc:
            return False, "spin10 mismatch at %s" % (w.coords,)
        checked += 1
    details.append("spin10:%d" % checked)
    ip8 = InnerProductSpec(Spin(8), "negative_trace")
    for w in _dominants_below_dim(Spin(8), ip8, maxdim, bound_guess=12):
        rule = {}
        for coords, mult in branch_spin8(tuple(w.coords)):
            rule[frac(coords)] = rule.get(frac(coords), 0) + mult
        orc = {}
        sub = product(Torus(1), Spin(6))
        for wp, mult in branch_by_weights(w, Embedding(Spin(8), sub, None),
                                          cap=3000):
            orc[tuple(wp.coords)] = mult
        if rule != orc:
            return False, "spin8 mismatch at %s" % (w.coords,)
    # SU(2) Clebsch-Gordan against the oracle on the product group
    g = product(SU(2), SU(2))
    emb = Embedding.from_root_pairs(
        g, SU(2), [((1, -1, 0, 0), (1, -1)), ((0, 0, 1, -1), (1, -1))],
        kernel=[(1, 1, 0, 0), (0, 0, 1, 1)])
    for a in range(0, 5):
        for b in range(0, 5):
            want = {}
            for coords, mult in su2_clebsch_gordan(a, b):
                want[coords[0]] = mult
            w = Weight(g, [Fraction(a, 2), Fraction(-a, 2),
                           Fraction(b, 2), Fraction(-b, 2)])
            got = {}
            for wp, mult in branch_by_weights(w, emb):
                got[int(wp.coords[0] - wp.coords[1])] = mult
            if want != got:
                return False, "su2 CG mismatch at %s" % ((a, b),)
    # the G2 > SU(3) golden table (McKay-Patera contents)
    from .families import _g2_su3_embedding, _su3_fund
    embg = _g2_su3_embedding()
    gold = _golden("g2xg2.json")["branching_table"]
    for key, terms in gold.items():
        mf = tuple(int(x) for x in key.strip("()").split(","))
        w = Weight(G2(), mf, "fund")
        got = {}
        for wp, mult in branch_by_weights(w, embg):
            got[_su3_fund(wp)] = mult
        want = {tuple(t[0]): t[1] for t in terms}
        if got != want:
            return False, "G2>SU(3) mismatch at %s" % (key,)
    return True, "; ".join(details)


def check_dim_conservation(args):
    maxdim = getattr(args, "max_dim", 500) or 500
    fam = getattr(args, "family", None)
    cases = []
    ip = InnerProductSpec(SO(5), "negative_trace")
    for w in _dominants_below_dim(SO(5), ip, maxdim):
        total = sum(m * weyl_dimension(Weight(SO(4), c))
                    for c, m in branch_so5_so4(tuple(w.coords)))
        cases.append((weyl_dimension(w), total, w))
    ipu = InnerProductSpec(Un(5), "negative_trace")
    sub = product(Un(4), Torus(1))
    for w in _dominants_below_dim(Un(5), ipu, maxdim // 2):
        total = 0
        for c, m in branch_u_to_u1(tuple(w.coords)):
            total += m * weyl_dimension(Weight(sub, c))
        cases.append((weyl_dimension(w), total, w))
    ipsp = InnerProductSpec(Sp(2), "negative_trace")
    s11 = product(Sp(1), Sp(1))
    for w in _dominants_below_dim(Sp(2), ipsp, maxdim):
        total = sum(m * weyl_dimension(Weight(s11, c))
                    for c, m in branch_sp2(tuple(w.coords)))
        cases.append((weyl_dimension(w), total, w))
    ips = InnerProductSpec(Spin(10), "negative_trace")
    s28 = product(Torus(1), Spin(8))
    for w in _dominants_below_dim(Spin(10), ips, maxdim, bound_guess=12):
        total = sum(m * weyl_dimension(Weight(s28, c))
                    for c, m in branch_spin10(tuple(w.coords)))
        cases.append((weyl_dimension(w), total, w))
    bad = [(d, t, w) for d, t, w in cases if d != t]
    if bad:
        return False, "first failure at %s" % (bad[0][2],)
    return True, "%d decompositions" % len(cases)


def check_su2_spectrum(args):
    from .fixedpoints import (su2_model_fixed_dim, su2_model_casimir_spectrum,
                              su2_model_deck_spectrum, g2so4_model_oracle)
    maxlm = getattr(args, "max_lm", 8) or 8
    rows = 0
    for l in range(0, maxlm + 1):
        for m in range(0, maxlm + 1 - l):
            if (l + m) % 2 or (l, m) == (0, 0):
                continue
            fix = su2_model_fixed_dim(l, m)
            spec = su2_model_casimir_spectrum(l, m)
            deck = su2_model_deck_spectrum(l, m)
            ofix, ospec, odeck = g2so4_model_oracle(l, m)
            if (fix, spec, deck) != (ofix, ospec, odeck):
                return False, "mismatch at (%d,%d)" % (l, m)
            rows += 1
    gold = _golden("g2so4.json")
    for row in gold["rows"]:
        l, m = row["lm"]
        if su2_model_fixed_dim(l, m) != row["fix"]:
            return False, "golden fix mismatch at (%d,%d)" % (l, m)
        want = sorted([Fraction(x) for x in row["spec"]], reverse=True)
        if su2_model_casimir_spectrum(l, m) != want:
            return False, "golden spectrum mismatch at (%d,%d)" % (l, m)
    return True, "%d rows compared" % rows


def check_generators(args):
    from . import families as F
    from .exactalg import mat_mul
    results = []

    def matpow_id(mat, k, dim):
        acc = [[QI(1 if i == j else 0) for j in range(dim)] for i in range(dim)]
        for _ in range(k):
            acc = mat_mul(acc, mat)
        ident = [[QI(1 if i == j else 0) for j in range(dim)] for i in range(dim)]
        return acc == ident

    b2 = F._b2_setup()
    g = [[QI(x) for x in row] for row in
         [[0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [1, 0, 0, 0, 0],
          [0, -1, 0, 0, 0], [0, 0, 0, 0, -1]]]
    results.append(("b2", matpow_id(g, 4, 5)))
    diii = F._diii_setup()
    gd = [[QI(x) for x in row] for row in
          [[0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [1, 0, 0, 0, 0],
           [0, -1, 0, 0, 0], [0, 0, 0, 0, 1]]]
    results.append(("DIII2", matpow_id(gd, 4, 5)))
    from .fixedpoints import e6_model, _deck_A, _mat2_mul
    m6 = e6_model()
    results.append(("EIII", matpow_id(m6.eiii_deck_generator(), 4, 27)))
    results.append(("EIV", matpow_id(m6.eiv_deck_generator(), 3, 27)))
    A = _deck_A()
    acc = ((QI(1), QI(0)), (QI(0), QI(1)))
    for _ in range(6):
        acc = _mat2_mul(acc, A)
    results.append(("G2SO4", acc == ((QI(1), QI(0)), (QI(0), QI(1)))))
    bad = [name for name, ok in results if not ok]
    if bad:
        return False, "order failures: %s" % bad
    return True, "%d generators" % len(results)


def check_trace_integrality(args):
    """Cyclic trace averages must be nonnegative integers (they raise
    otherwise); exercise them across the flag families."""
    from .fixedpoints import cyclic_deck_average, su3_z3_fixed_dim
    g2 = G2()
    count = 0
    ipB = InnerProductSpec(g2, "negative_killing")
    for w in enumerate_bounded(g2, ipB, 3):
        table = freudenthal(w)
        zero = tuple(Fraction(0) for _ in range(3))
        cyclic_deck_average(
            table,
            lambda mu: sum(to_basis(Weight(g2, mu), "root").coords),
            6, zero)
        count += 1
    su3 = SU(3)
    ip3 = InnerProductSpec(su3, "negative_killing")
    for w in enumerate_bounded(su3, ip3, 2):
        su3_z3_fixed_dim(freudenthal(w), tuple(Fraction(0) for _ in range(3)))
        count += 1
    return True, "%d averages" % count


def check_composition(args):
    from .casimirspec import (CompositionRule, ChainEigenvalues, compose_cL,
                              stage_coefficients, family_cL)
    reg = load_registry()
    for fid in reg.family_ids():
        block = reg.blocks[fid]
        need = block.get("param")
        cases = [{}]
        if need:
            names = [x.strip() for x in need.split(",")]
            mins = [int(x) for x in block.get("param_min").split(",")]
            cases = []
            for extra in (0, 1, 2):
                cases.append({nm: mn + extra for nm, mn in zip(names, mins)})
        for params in cases:
            d = reg.descriptor(fid, **params)
            if not d.check_kcoeffs():
                return False, "kcoeff mismatch %s %s" % (fid, params)
    # spot identity: compose_cL == family closed form on b2 chains
    d = reg.descriptor("b2")
    rule = d.composition_rule()
    b = d.kcoeffs
    for (cK, cK1) in ((Fraction(6), Fraction(4)), (Fraction(5), Fraction(0)),
                      (Fraction(8), Fraction(4))):
        chain = ChainEigenvalues(cK / d.stage_scales[0],
                                 cK1 / d.stage_scales[1])
        if compose_cL(rule, chain) != family_cL(b, cK, cK1):
            return False, "compose/family mismatch on b2"
    d = reg.descriptor("DIII2")
    rule = d.composition_rule()
    b = d.kcoeffs
    chain = ChainEigenvalues(Fraction(16) / 2, Fraction(4) / 2,
                             Fraction(12) / 2)
    if compose_cL(rule, chain) != family_cL(b, 16, 4, 12):
        return False, "compose/family mismatch on DIII"
    if family_cL(b, 16, 4, 12) != 18:
        return False, "DIII closed form is off"
    return True, "all registry families"


def check_roots(args):
    """Derived restricted-root data against the registry (model families)."""
    from . import families as F
    reg = load_registry()
    cases = [("b2", F._b2_setup()["pm"], reg.descriptor("b2")),
             ("DIII2", F._diii_setup()["pm"], reg.descriptor("DIII2")),
             ("AII2", F._aii_setup()["pm"], reg.descriptor("AII2")),
             ("BDI2(5)", F._bdi_setup(5)["pm"], reg.descriptor("BDI2", m=5)),
             ("AIII2(3)", F._aiii_setup(3)["pm"], reg.descriptor("AIII2", m=3)),
             ("CII2(3)", F._cii_setup(3)["pm"], reg.descriptor("CII2", m=3)),
             ("EIII", F._eiii_setup()["pm"], reg.descriptor("EIII")),
             ("EIV", F._eiv_setup()["pm"], reg.descriptor("EIV"))]
    for name, pm, d in cases:
        if pm.total_root_multiplicity() != d.n:
            return False, "%s: total multiplicity != n" % name
        if pm.gamma0_sq() != d.gamma0_sq:
            return False, "%s: gamma0^2 %s != registry %s" % (
                name, pm.gamma0_sq(), d.gamma0_sq)
        ratios = sorted({norm / pm.gamma0_sq()
                         for _, _, norm in pm.restricted_root_norms()})
        want = sorted({r for _, _, r in d.roots.roots})
        if ratios != want:
            return False, "%s: ratio set %s != registry %s" % (name, ratios, want)
    return True, "%d pair models" % len(cases)


def check_golden(args):
    from .casedriver import run_family
    # g2xg2 table
    gold = _golden("g2xg2.json")
    v = run_family("g2xg2")
    got = [r for r in v.rows if r.in_table]
    want = gold["rows"]
    if len(got) != len(want):
        return False, "g2xg2 row count %d != %d" % (len(got), len(want))
    gotset = {(r.lam, r.lam1, r.mult, r.eig, r.dim) for r in got}
    for wr in want:
        key = (tuple(wr["lam"]), tuple(wr["lam1"]), wr["mult"],
               Fraction(wr["eig"]), wr["dim"])
        if key not in gotset:
            return False, "g2xg2 missing row %s" % (wr,)
    if v.nullity != gold["nullity"] or v.strictly_stable != gold["strictly_stable"]:
        return False, "g2xg2 verdict mismatch"
    # EIII 20-row table
    gold = _golden("eiii.json")
    v = run_family("EIII")
    got = [r for r in v.rows if r.in_table]
    if len(got) != len(gold["rows"]):
        return False, "EIII row count %d != %d" % (len(got), len(gold["rows"]))
    gotset = {}
    for r in got:
        key = (tuple(Fraction(x) for x in r.lam),
               tuple(Fraction(x) for x in r.lam1),
               tuple(Fraction(x) for x in r.lam2))
        gotset[key] = gotset.get(key, 0)
        gotset[key] = r.eig
    for wr in gold["rows"]:
        key = (tuple(Fraction(x) for x in wr["lam"]),
               tuple(Fraction(x) for x in wr["lam1"]),
               tuple(Fraction(x) for x in wr["lam2"]))
        if key not in gotset or gotset[key] != Fraction(wr["eig"]):
            return False, "EIII row mismatch %s" % (wr,)
    if v.nullity != gold["nullity"]:
        return False, "EIII nullity"
    recorded = [r for r in v.rows if r.provenance == "recorded"]
    if len(recorded) > gold["max_recorded_rows"]:
        return False, "EIII recorded rows exceed cap"
    # b2 + DIII + sections 8-10 summary data
    gold = _golden("b2.json")
    v = run_family("b2")
    for key, info in gold["printed_eigs"].items():
        lam = tuple(int(x) for x in key.strip("()").split(","))
        ok = any(r.lam == lam and r.lam1 == tuple(info["lam1"])
                 and r.eig == Fraction(info["eig"]) for r in v.rows)
        if not ok:
            return False, "b2 printed eigenvalue missing at %s" % key
    if v.nullity != gold["nullity"]:
        return False, "b2 nullity"
    gold = _golden("diii.json")
    v = run_family("DIII2")
    per = {}
    for r in v.rows:
        if r.in_table:
            per.setdefault(r.lam, []).append(r.eig)
    for key, eigs in gold["eigsets"].items():
        lam = tuple(int(x) for x in key.strip("()").split(","))
        if sorted(per.get(lam, [])) != sorted(Fraction(x) for x in eigs):
            return False, "DIII eigenvalue set mismatch at %s" % key
    gold = _golden("g2so4.json")
    v = run_family("G2SO4")
    for key, surv in gold["deck_survivors"].items():
        lam = tuple(int(x) for x in key.strip("()").split(","))
        for eig_s, dim_s in surv.items():
            if v.result.deck_at.get((lam, Fraction(eig_s))) != dim_s:
                return False, "g2so4 deck mismatch at %s" % key
    return True, None
