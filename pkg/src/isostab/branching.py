"""The seven closed-form branching laws of the verification pipeline plus a
generic weight-restriction oracle.

Multiplicities come out of integer-coefficient Laurent polynomials in one
variable (quotient characters of SU(2)-strings); everything is exact.
"""

from fractions import Fraction

from .exactalg import mat_inverse, mat_vec
from .lattice import (Weight, simple_roots, std_dot, dominantize, is_dominant)
from .repcore import freudenthal, weyl_dimension, delta_vector, DEFAULT_CAP


class LaurentPoly:
    """Integer-coefficient Laurent polynomial in one variable (dict exp->coef)."""

    def __init__(self, coeffs=None):
        self.c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    self.c[int(e)] = int(v)

    @staticmethod
    def x(e=1, v=1):
        return LaurentPoly({e: v})

    @staticmethod
    def one():
        return LaurentPoly({0: 1})

    def __add__(self, other):
        out = dict(self.c)
        for e, v in other.c.items():
            out[e] = out.get(e, 0) + v
        return LaurentPoly(out)

    def __sub__(self, other):
        out = dict(self.c)
        for e, v in other.c.items():
            out[e] = out.get(e, 0) - v
        return LaurentPoly(out)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: v * other for e, v in self.c.items()})
        out = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + v1 * v2
        return LaurentPoly(out)

    def shift(self, k):
        return LaurentPoly({e + k: v for e, v in self.c.items()})

    def coeff(self, e):
        return self.c.get(int(e), 0)

    def divexact(self, other):
        """Exact division; raises if the division leaves a remainder."""
        rem = dict(self.c)
        lead = min(other.c)
        lv = other.c[lead]
        out = {}
        while rem:
            e = min(rem)
            q, r = divmod(rem[e], lv)
            if r:
                raise ValueError("inexact Laurent division")
            k = e - lead
            out[k] = out.get(k, 0) + q
            for e2, v2 in other.c.items():
                ee = e2 + k
                nv = rem.get(ee, 0) - q * v2
                if nv:
                    rem[ee] = nv
                elif ee in rem:
                    del rem[ee]
        return LaurentPoly(out)

    def is_symmetric(self):
        return all(self.coeff(-e) == v for e, v in self.c.items())

    def support(self):
        return sorted(self.c)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.c == other.c

    def __repr__(self):
        if not self.c:
            return "0"
        return " + ".join("%d*X^%d" % (v, e) for e, v in sorted(self.c.items()))


def symgeom(l):
    """(X^{l+1} - X^{-l-1}) / (X - X^{-1}) = X^l + X^{l-2} + ... + X^{-l}."""
    l = int(l)
    if l < 0:
        return LaurentPoly()
    return LaurentPoly({l - 2 * k: 1 for k in range(l + 1)})


def symgeom_odd(l):
    """(X^{l+1/2} - X^{-l-1/2}) / (X^{1/2} - X^{-1/2}) = sum_{k=-l}^{l} X^k."""
    l = int(l)
    if l < 0:
        return LaurentPoly()
    return LaurentPoly({k: 1 for k in range(-l, l + 1)})


def quotient_char(ls):
    """prod_i (X^{l_i+1} - X^{-l_i-1}) / (X - X^{-1})."""
    out = LaurentPoly.one()
    for l in ls:
        out = out * symgeom(l)
    return out


# ---------------------------------------------------------------------------
# closed-form rules.  All take/return plain coordinate tuples; drivers wrap
# them in Weight objects for the relevant groups.

def branch_so5_so4(lam):
    """(SO(5), SO(4)): k1 >= k1' >= k2 >= |k2'|, multiplicity one."""
    k1, k2 = int(lam[0]), int(lam[1])
    out = []
    for a in range(k2, k1 + 1):
        for b in range(-k2, k2 + 1):
            out.append(((a, b), 1))
    return out


def branch_u_to_u1(lam):
    """(U(m+1), U(m) x U(1)) interlacing with trace conservation.

    Returns [((q_1..q_m, q_last), 1)] with the U(1) charge last.
    """
    p = [int(x) for x in lam]
    m = len(p) - 1
    out = []

    def rec(i, cur):
        if i == m:
            qlast = sum(p) - sum(cur)
            out.append((tuple(cur) + (qlast,), 1))
            return
        lo, hi = p[i + 1], p[i]
        for q in range(lo, hi + 1):
            rec(i + 1, cur + [q])

    rec(0, [])
    return out


def branch_u_to_u2(lam):
    """(U(m), U(2) x U(m-2)); multiplicity from the Laurent coefficient."""
    p = [int(x) for x in lam]
    m = len(p)
    if m < 3:
        raise ValueError("need m >= 3")
    out = []

    def rec(i, cur):
        if i > m:
            q3m = cur  # q_3 .. q_m
            total = sum(p) - sum(q3m)
            rs = [p[0] - max(q3m[0], p[1])]
            for j in range(3, m):
                rs.append(min(q3m[j - 3], p[j - 2]) - max(q3m[j - 2], p[j - 1]))
            rs.append(min(q3m[m - 3], p[m - 2]) - p[m - 1])
            if any(r < 0 for r in rs):
                return
            num = LaurentPoly.one()
            for r in rs:
                num = num * (LaurentPoly.x(r + 1) - LaurentPoly.x(-r - 1))
            den = LaurentPoly.x(1) - LaurentPoly.x(-1)
            poly = num
            for _ in range(m - 2):
                poly = poly.divexact(den)
            for e, v in poly.c.items():
                s = e - 1  # q1 - q2
                if s < 0 or v <= 0:
                    continue
                if (total + s) % 2:
                    continue
                q1 = (total + s) // 2
                q2 = (total - s) // 2
                out.append(((q1, q2) + tuple(q3m), v))
            return
        lo, hi = p[i - 1], p[i - 3]
        prev = cur[-1] if len(cur) > 0 else None
        for q in range(lo, hi + 1):
            if prev is not None and q > prev:
                continue
            rec(i + 1, cur + [q])

    rec(3, [])
    merged = {}
    for w, v in out:
        merged[w] = merged.get(w, 0) + v
    return sorted(merged.items())


def branch_so_even(lam, p):
    """(SO(2p+2), SO(2) x SO(2p)) after Tsukamoto.

    lam = (h0, h1, ..., hp) with hp possibly negative (the epsilon sign);
    returns [((k0, k1, ..., kp'), mult)] with kp' possibly negative.
    """
    h = [int(x) for x in lam]
    assert len(h) == p + 1
    eps = 1 if h[p] >= 0 else -1
    habs = h[:p] + [abs(h[p])]
    out = {}

    def ranges(i):
        if i == 1:
            return range(habs[2] if p >= 2 else 0, habs[0] + 1)
        if i < p:
            return range(habs[i + 1], habs[i - 1] + 1)
        return range(0, habs[p - 1] + 1)

    def rec(i, ks):
        if i > p:
            for epsp in ((1, -1) if ks[-1] > 0 else (1,)):
                ls = [habs[0] - max(habs[1], ks[0])]
                for j in range(1, p):
                    ls.append(min(habs[j], ks[j - 1]) - max(habs[j + 1], ks[j]))
                lp = min(habs[p], ks[p - 1])
                poly = quotient_char(ls)
                shiftv = eps * epsp * lp
                for e, v in poly.c.items():
                    k0 = e + shiftv
                    if v:
                        key = (k0,) + tuple(ks[:p - 1]) + (epsp * ks[p - 1],)
                        out[key] = out.get(key, 0) + v
            return
        prev = ks[-1] if ks else None
        for k in ranges(i):
            if prev is not None and k > prev:
                continue
            rec(i + 1, ks + [k])

    rec(1, [])
    return sorted(out.items())


def branch_so_odd(lam, p):
    """(SO(2p+3), SO(2) x SO(2p+1)) after Tsukamoto."""
    h = [int(x) for x in lam]
    assert len(h) == p + 1 and h[p] >= 0
    out = {}

    def rec(i, ks):
        if i > p:
            ls = [h[0] - max(h[1] if p >= 1 else 0, ks[0] if p >= 1 else 0)] \
                if p >= 1 else []
            for j in range(1, p):
                ls.append(min(h[j], ks[j - 1]) - max(h[j + 1], ks[j]))
            if p >= 1:
                lp = min(h[p], ks[p - 1])
            else:
                lp = h[0]
            poly = quotient_char(ls) * symgeom_odd(lp)
            for e, v in poly.c.items():
                if v:
                    key = (e,) + tuple(ks)
                    out[key] = out.get(key, 0) + v
            return
        if i < p:
            lo, hi = h[i + 1], h[i - 1]
        else:
            lo, hi = 0, h[p - 1]
        prev = ks[-1] if ks else None
        for k in range(lo, hi + 1):
            if prev is not None and k > prev:
                continue
            rec(i + 1, ks + [k])

    rec(1, [])
    return sorted(out.items())


def branch_sp2(lam):
    """(Sp(2), Sp(1) x Sp(1)): multiplicity = Laurent coefficient of X^{q1+1}."""
    p1, p2 = int(lam[0]), int(lam[1])
    out = {}
    for q2 in range(0, p1 + 1):
        r0 = p1 - max(p2, q2)
        r1 = min(p2, q2)
        num = (LaurentPoly.x(r0 + 1) - LaurentPoly.x(-r0 - 1)) * \
              (LaurentPoly.x(r1 + 1) - LaurentPoly.x(-r1 - 1))
        poly = num.divexact(LaurentPoly.x(1) - LaurentPoly.x(-1))
        for e, v in poly.c.items():
            q1 = e - 1
            if q1 >= 0 and v > 0:
                key = (q1, q2)
                out[key] = out.get(key, 0) + v
    return sorted(out.items())


def su2_clebsch_gordan(a, b):
    """V_a (x) V_b = sum V_{a+b-2i}, i = 0..min(a,b)."""
    return [((a + b - 2 * i,), 1) for i in range(min(a, b) + 1)]


def _half_class(vals):
    fr = {Fraction(x) % 1 for x in vals}
    if fr <= {Fraction(0)}:
        return Fraction(0)
    if fr <= {Fraction(1, 2)}:
        return Fraction(1, 2)
    raise ValueError("mixed integral/half-integral weight %s" % (vals,))


def branch_spin10(lam):
    """(Spin(10), Spin(2).Spin(8)): returns [((q1, q2, q3, q4, q5'), mult)].

    Input (p1..p5) dominant for Spin(10) (p5 may be negative); q1 carries the
    Spin(2) charge, (q2, q3, q4, q5') is Spin(8)-dominant with sign on q5'.
    """
    p = [Fraction(x) for x in lam]
    eclass = _half_class(p)
    delta = 1 if p[4] >= 0 else -1
    pa = p[:4] + [abs(p[4])]
    out = {}

    def qrange(lo, hi):
        lo2, hi2 = max(lo, 0), hi
        q = lo2
        # keep the epsilon class
        if (q - eclass) % 1 != 0:
            q += Fraction(1, 2)
        while q <= hi2:
            yield q
            q += 1

    for q2 in qrange(pa[2], pa[0]):
        for q3 in qrange(pa[3], min(pa[1], q2)):
            for q4 in qrange(pa[4], min(pa[2], q3)):
                for q5 in qrange(0, min(pa[3], q4)):
                    l1 = pa[0] - max(pa[1], q2)
                    l2 = min(pa[1], q2) - max(pa[2], q3)
                    l3 = min(pa[2], q3) - max(pa[3], q4)
                    l4 = min(pa[3], q4) - max(pa[4], q5)
                    l5 = min(pa[4], q5)
                    if min(l1, l2, l3, l4) < 0:
                        continue
                    poly = quotient_char([l1, l2, l3, l4])
                    for dp in ((1, -1) if q5 > 0 else (1,)):
                        base = delta * dp * l5
                        for e, v in poly.c.items():
                            if not v:
                                continue
                            q1 = e + base
                            key = (q1, q2, q3, q4, dp * q5)
                            out[key] = out.get(key, 0) + v
    return sorted(out.items())


def branch_spin8(lam):
    """(Spin(8), Spin(2).Spin(6)): returns [((q2, q3, q4, q5'), mult)]."""
    p = [Fraction(x) for x in lam]
    eclass = _half_class(p)
    delta = 1 if p[3] >= 0 else -1
    pa = p[:3] + [abs(p[3])]
    out = {}

    def qrange(lo, hi):
        q = max(lo, 0)
        if (q - eclass) % 1 != 0:
            q += Fraction(1, 2)
        while q <= hi:
            yield q
            q += 1

    for q3 in qrange(pa[2], pa[0]):
        for q4 in qrange(pa[3], min(pa[1], q3)):
            for q5 in qrange(0, min(pa[2], q4)):
                l2 = pa[0] - max(pa[1], q3)
                l3 = min(pa[1], q3) - max(pa[2], q4)
                l4 = min(pa[2], q4) - max(pa[3], q5)
                l5 = min(pa[3], q5)
                if min(l2, l3, l4) < 0:
                    continue
                poly = quotient_char([l2, l3, l4])
                for dp in ((1, -1) if q5 > 0 else (1,)):
                    base = delta * dp * l5
                    for e, v in poly.c.items():
                        if not v:
                            continue
                        q2 = e + base
                        key = (q2, q3, q4, dp * q5)
                        out[key] = out.get(key, 0) + v
    return sorted(out.items())


# ---------------------------------------------------------------------------
# generic weight-restriction oracle

class Embedding:
    """Declared restriction of weights from a parent group to a subgroup.

    `matrix` maps parent epsilon coordinates to subgroup epsilon coordinates;
    None means plain coordinate identity (shared maximal torus).
    """

    def __init__(self, parent, sub, matrix=None):
        self.parent = parent
        self.sub = sub
        self.matrix = matrix

    def map_weight(self, coords):
        if self.matrix is None:
            return tuple(Fraction(x) for x in coords)
        return tuple(mat_vec(self.matrix, [Fraction(x) for x in coords]))

    @staticmethod
    def from_root_pairs(parent, sub, pairs, kernel=()):
        """Solve for the matrix sending given parent vectors to subgroup
        vectors, with optional kernel directions (mapped to zero)."""
        cols = parent.ncoords()
        rows = sub.ncoords()
        eqs = []
        rhs = []
        for pv, sv in pairs:
            eqs.append([Fraction(x) for x in pv])
            rhs.append([Fraction(x) for x in sv])
        for kv in kernel:
            eqs.append([Fraction(x) for x in kv])
            rhs.append([Fraction(0)] * rows)
        if len(eqs) != cols:
            raise ValueError("need exactly %d independent conditions" % cols)
        inv = mat_inverse(eqs)
        matrix = [[sum(inv[k][j] * rhs[k][i] for k in range(cols))
                   for j in range(cols)] for i in range(rows)]
        return Embedding(parent, sub, matrix)


def branch_by_weights(w, emb, cap=DEFAULT_CAP):
    """Restrict the irrep with highest weight w through `emb` and peel the
    result into subgroup irreducibles.  The independent oracle."""
    table = freudenthal(w, cap=cap)
    sub = emb.sub
    rest = {}
    for mu, m in table.items():
        v = emb.map_weight(mu)
        rest[v] = rest.get(v, 0) + m
    dsub = delta_vector(sub)
    out = []
    while any(rest.values()):
        best = None
        for mu, m in rest.items():
            if m <= 0:
                continue
            key = (std_dot(mu, dsub), mu)
            if best is None or key > best[0]:
                best = (key, mu, m)
        _, mu, m = best
        wmu = Weight(sub, mu)
        if not is_dominant(wmu):
            raise ValueError("peeling reached non-dominant leader %s "
                             "(wrong embedding?)" % (mu,))
        comp = freudenthal(wmu, cap=cap)
        for nu, mm in comp.items():
            nv = rest.get(nu, 0) - m * mm
            if nv < 0:
                raise ValueError("negative residual multiplicity at %s" % (nu,))
            rest[nu] = nv
        out.append((wmu, m))
    return out


def tensor_content(g, tables, cap=200000):
    """Decompose a product of weight tables (characters) into irreducibles.

    `tables` is a list of weight->mult dicts for the same group g.
    Returns [(Weight, mult)].
    """
    acc = None
    for t in tables:
        if acc is None:
            acc = dict(t)
            continue
        nxt = {}
        for u, mu in acc.items():
            for v, mv in t.items():
                w = tuple(a + b for a, b in zip(u, v))
                nxt[w] = nxt.get(w, 0) + mu * mv
        acc = nxt
    if sum(acc.values()) > cap:
        raise ValueError("tensor too large")
    dsub = delta_vector(g)
    out = []
    rest = acc
    while any(rest.values()):
        best = None
        for mu, m in rest.items():
            if m <= 0:
                continue
            key = (std_dot(mu, dsub), mu)
            if best is None or key > best[0]:
                best = (key, mu, m)
        _, mu, m = best
        wmu = Weight(g, mu)
        if not is_dominant(wmu):
            raise ValueError("non-dominant leader %s" % (mu,))
        comp = freudenthal(wmu, cap=cap)
        for nu, mm in comp.items():
            nv = rest.get(nu, 0) - m * mm
            if nv < 0:
                raise ValueError("negative residual multiplicity")
            rest[nu] = nv
        out.append((wmu, m))
    return out
