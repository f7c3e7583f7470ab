"""Representation invariants: Weyl dimension, Casimir eigenvalues, the
Freudenthal weight-multiplicity recursion, and bounded dominant-weight
enumeration.  The Freudenthal table doubles as the independent oracle for
every closed-form branching rule."""

from fractions import Fraction
from math import isqrt

from .exactalg import Q
from .lattice import (Weight, simple_roots, positive_roots, std_dot,
                      dominantize, is_dominant, is_dominant_eps,
                      fundamental_weights, pairing, to_basis)

DEFAULT_CAP = 2000


def delta_vector(g):
    """Half-sum of positive roots in epsilon coordinates."""
    nc = g.ncoords()
    acc = [Fraction(0)] * nc
    for a in positive_roots(g):
        for i in range(nc):
            acc[i] += a[i]
    return tuple(x / 2 for x in acc)


def weyl_dimension(w):
    """Dimension of the irreducible module with highest weight w."""
    w = to_basis(w, "eps") if w.basis != "eps" else w
    g = w.group
    if not is_dominant(w):
        raise ValueError("weight is not dominant: %r" % (w,))
    d = delta_vector(g)
    lam_d = [x + y for x, y in zip(w.coords, d)]
    num = Fraction(1)
    den = Fraction(1)
    for a in positive_roots(g):
        num *= std_dot(lam_d, a)
        den *= std_dot(d, a)
    dim = num / den
    if dim.denominator != 1 or dim <= 0:
        raise ValueError("Weyl dimension did not come out a positive integer")
    return int(dim)


def casimir_eigenvalue(w, ip):
    """-c(w, ip) = <w, w + 2 delta>_ip >= 0 for dominant w."""
    w = to_basis(w, "eps") if w.basis != "eps" else w
    if not is_dominant(w):
        raise ValueError("weight is not dominant: %r" % (w,))
    g = w.group
    d = delta_vector(g)
    shifted = Weight(g, [x + 2 * y for x, y in zip(w.coords, d)])
    return pairing(w, shifted, ip)


def _root_coords(g, vec):
    """Coordinates of vec in the simple-root basis; None if outside the span
    or non-rational.  Caller checks integrality/nonnegativity."""
    simples = simple_roots(g)
    r = len(simples)
    if r == 0:
        return [] if all(x == 0 for x in vec) else None
    from .exactalg import mat_inverse, mat_vec
    mat = [[std_dot(simples[i], simples[j]) for j in range(r)] for i in range(r)]
    rhs = [std_dot(vec, simples[i]) for i in range(r)]
    sol = mat_vec(mat_inverse(mat), rhs)
    # verify (vec may have a component off the root span, e.g. U(n) trace part)
    rec = [sum(sol[k] * simples[k][c] for k in range(r)) for c in range(len(vec))]
    if any(rec[c] != vec[c] for c in range(len(vec))):
        return None
    return sol


def dominant_weights_below(g, lam):
    """All dominant lattice points mu <= lam (lam - mu in the nonnegative
    integer root cone), as epsilon tuples with their level."""
    lam = tuple(Fraction(x) for x in lam)
    simples = simple_roots(g)
    r = len(simples)
    if r == 0:
        return [(lam, 0)]
    lowest = tuple(-x for x in dominantize(g, [-x for x in lam]))
    box = _root_coords(g, [a - b for a, b in zip(lam, lowest)])
    box = [int(b) for b in box]
    out = []
    # prune with the ball |mu + delta| <= |lam + delta|
    d = delta_vector(g)
    rbound = std_dot([a + b for a, b in zip(lam, d)],
                     [a + b for a, b in zip(lam, d)])

    def rec2(idx, partial):
        if idx == r:
            mu = partial
            if is_dominant_eps(g, mu):
                md = [a + b for a, b in zip(mu, d)]
                if std_dot(md, md) <= rbound:
                    out.append((tuple(mu), None))
            return
        cur = list(partial)
        for c in range(box[idx] + 1):
            rec2(idx + 1, cur)
            cur = [cur[k] - simples[idx][k] for k in range(len(cur))]

    rec2(0, list(lam))
    # recompute level for ordering
    final = []
    for mu, _ in out:
        rc = _root_coords(g, [a - b for a, b in zip(lam, mu)])
        if rc is None or any(x.denominator != 1 or x < 0 for x in rc):
            continue
        final.append((mu, int(sum(rc))))
    final.sort(key=lambda t: t[1])
    return final


_FREUDENTHAL_CACHE = {}


def freudenthal(w, cap=DEFAULT_CAP):
    """Weight multiplicities of the irreducible module with highest weight w.

    Returns dict {eps tuple: multiplicity} over the full weight system.
    Results are memoized per (group, weight).
    """
    w = to_basis(w, "eps") if w.basis != "eps" else w
    key = (w.group, w.coords)
    hit = _FREUDENTHAL_CACHE.get(key)
    if hit is not None:
        dim, table = hit
        if dim > cap:
            raise ValueError("dimension %d exceeds multiplicity cap %d" % (dim, cap))
        return table
    table = _freudenthal_impl(w, cap)
    _FREUDENTHAL_CACHE[key] = (sum(table.values()), table)
    return table


def weight_set_bfs(g, lam):
    """The full weight set of the irrep with highest weight lam, generated
    by root strings from the top (saturation); the Freudenthal mass check
    certifies completeness downstream."""
    simples = simple_roots(g)
    norms = [std_dot(a, a) for a in simples]
    seen = {tuple(lam)}
    frontier = [tuple(lam)]
    while frontier:
        nxt = []
        for v in frontier:
            for a, na in zip(simples, norms):
                k = 2 * std_dot(v, a) / na
                if k <= 0:
                    continue
                cur = v
                for _ in range(int(k)):
                    cur = tuple(x - y for x, y in zip(cur, a))
                    if cur not in seen:
                        seen.add(cur)
                        nxt.append(cur)
        frontier = nxt
    return seen


def _freudenthal_impl(w, cap):
    g = w.group
    dim = weyl_dimension(w)
    if dim > cap:
        raise ValueError("dimension %d exceeds multiplicity cap %d" % (dim, cap))
    lam = w.coords
    d = delta_vector(g)
    pos = positive_roots(g)
    wset = weight_set_bfs(g, lam)
    cands = []
    for mu in wset:
        if not is_dominant_eps(g, list(mu)):
            continue
        rc = _root_coords(g, [a - b for a, b in zip(lam, mu)])
        if rc is None or any(x.denominator != 1 or x < 0 for x in rc):
            raise ValueError("weight outside the root cone")
        cands.append((mu, int(sum(rc))))
    cands.sort(key=lambda t: t[1])
    ld = [a + b for a, b in zip(lam, d)]
    lam_norm = std_dot(ld, ld)
    mult = {}
    dom_index = {mu: lvl for mu, lvl in cands}

    def dom_mult(v):
        return mult.get(dominantize(g, v), 0)

    for mu, lvl in cands:
        if lvl == 0:
            mult[mu] = 1
            continue
        md = [a + b for a, b in zip(mu, d)]
        denom = lam_norm - std_dot(md, md)
        if denom == 0:
            mult[mu] = 0
            continue
        total = Fraction(0)
        for a in pos:
            k = 1
            while True:
                v = tuple(x + k * y for x, y in zip(mu, a))
                vd = dominantize(g, v)
                if vd not in dom_index:
                    break
                m = mult.get(vd, 0)
                if m:
                    total += 2 * m * std_dot(v, a)
                k += 1
        val = total / denom
        if val.denominator != 1 or val < 0:
            raise ValueError("Freudenthal recursion produced %s" % val)
        if val:
            mult[mu] = int(val)
    # expand Weyl orbits
    table = {}
    for mu, m in mult.items():
        if not m:
            continue
        orbit = {mu}
        queue = [mu]
        while queue:
            v = queue.pop()
            for a in simple_roots(g):
                den = std_dot(a, a)
                c = 2 * std_dot(v, a) / den
                if c == 0:
                    continue
                r = tuple(x - c * y for x, y in zip(v, a))
                if r not in orbit:
                    orbit.add(r)
                    queue.append(r)
        for v in orbit:
            table[v] = m
    if sum(table.values()) != dim:
        raise ValueError("weight table mass %d != dimension %d"
                         % (sum(table.values()), dim))
    return table


def weight_multiplicities(w, cap=DEFAULT_CAP):
    """Spec-facing alias: full weight table of the irrep with highest weight w."""
    return freudenthal(w, cap=cap)


def zero_weight_multiplicity(w, cap=DEFAULT_CAP):
    g = w.group if w.basis == "eps" else to_basis(w, "eps").group
    table = freudenthal(w, cap=cap)
    z = tuple(Fraction(0) for _ in range(g.ncoords()))
    return table.get(z, 0)


# ---------------------------------------------------------------------------
# bounded enumeration

def _enum_simple(g, ip, bound, half_integers=False):
    """Dominant weights of a simple group with <L, L>_ip <= bound, via
    fundamental coordinates (plus the half-integer classes for Spin)."""
    fw = fundamental_weights(g)
    r = len(fw)
    if r == 0:
        yield tuple()
        return
    sq = []
    for i in range(r):
        wi = Weight(g, fw[i])
        sq.append(pairing(wi, wi, ip))
    out = []

    integral = g.kind in ("SO", "Sp")

    def rec(idx, m):
        if idx == r:
            v = tuple(sum(m[k] * fw[k][c] for k in range(r))
                      for c in range(g.ncoords()))
            if integral and any(x.denominator != 1 for x in v):
                return
            wv = Weight(g, v)
            if pairing(wv, wv, ip) <= bound:
                out.append(v)
            return
        mi = 0
        while mi * mi * sq[idx] <= bound:
            rec(idx + 1, m + [mi])
            mi += 1

    rec(0, [])
    for v in out:
        yield v


def _enum_torus(g, ip, bound, step=Fraction(1)):
    r = g.n
    unit = Weight(g, [1 if i == 0 else 0 for i in range(r)])
    c = pairing(unit, unit, ip)
    cap = 0
    while (cap + 1) * (cap + 1) * step * step * c <= bound:
        cap += 1
    vals = [step * k for k in range(-cap, cap + 1)]
    out = [[]]
    for _ in range(r):
        out = [v + [x] for v in out for x in vals]
    for v in out:
        wv = Weight(g, v)
        if pairing(wv, wv, ip) <= bound:
            yield tuple(v)


def _enum_u(g, ip, bound):
    """Dominant U(n) weights (non-increasing integer tuples) with norm bound."""
    n = g.n
    unit = Weight(g, [1] + [0] * (n - 1))
    c = pairing(unit, unit, ip)
    cap = 0
    while (cap + 1) * (cap + 1) * c <= bound:
        cap += 1

    out = []

    def rec(idx, prev, acc, cur):
        if acc > bound:
            return
        if idx == n:
            out.append(tuple(cur))
            return
        for y in range(-cap, prev + 1):
            rec(idx + 1, y, acc + c * y * y, cur + [y])

    rec(0, cap, Fraction(0), [])
    for v in out:
        yield v


def enumerate_bounded(group, ip, bound, constraint=None, torus_step=Fraction(1)):
    """All dominant weights L with casimir_eigenvalue(L, ip) <= bound,
    sorted lexicographically on epsilon coordinates.

    `constraint` is an optional predicate on the Weight (lattice conditions,
    parity restrictions and the like).
    """
    bound = Fraction(bound)
    if bound < 0:
        raise ValueError("bound must be nonnegative")

    def block_gen(comp):
        if comp.kind == "T":
            return list(_enum_torus(comp, ip, bound, step=torus_step))
        if comp.kind == "U":
            return list(_enum_u(comp, ip, bound))
        vals = list(_enum_simple(comp, ip, bound))
        if comp.kind == "Spin":
            half = []
            fw = fundamental_weights(comp)
            r = comp.rank()
            # shift every candidate by the half-integer coset representative
            base = tuple(Fraction(1, 2) for _ in range(r))
            seen = set(vals)
            grid = _spin_half_candidates(comp, ip, bound)
            half.extend(grid)
            vals = vals + half
        return vals

    blocks = group.blocks() if group.is_product() else [(0, group.ncoords(), group)]
    partial = [tuple()]
    for lo, hi, comp in blocks:
        nxt = []
        gen = block_gen(comp)
        for head in partial:
            for tail in gen:
                nxt.append(head + tuple(tail))
        partial = nxt
    out = []
    for coords in partial:
        w = Weight(group, coords)
        if not is_dominant(w):
            continue
        if casimir_eigenvalue(w, ip) > bound:
            continue
        if constraint is not None and not constraint(w):
            continue
        out.append(w)
    out.sort(key=lambda w: w.coords)
    return out


def _spin_half_candidates(g, ip, bound):
    """Dominant half-integral weights of Spin(n) below the norm bound."""
    r = g.rank()
    unit = Weight(g, [Fraction(1, 2) if i == 0 else 0 for i in range(r)])
    c = pairing(unit, unit, ip) * 4  # pairing of eps_1 with itself
    cap = 0
    while Fraction(2 * cap + 3, 2) ** 2 * c <= bound * 4:
        cap += 1

    vals = [Fraction(2 * k + 1, 2) for k in range(-cap - 1, cap + 1)]
    out = []

    def rec(idx, prev, cur):
        if idx == r:
            w = tuple(cur)
            if is_dominant_eps(g, list(w)):
                wv = Weight(g, w)
                if pairing(wv, wv, ip) <= bound:
                    out.append(w)
            return
        for y in vals:
            if y > prev:
                continue
            rec(idx + 1, y, cur + [y])

    top = Fraction(2 * cap + 1, 2)
    rec(0, top, [])
    return out
