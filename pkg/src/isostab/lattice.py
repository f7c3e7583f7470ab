"""Weight and root lattices with exact rational coordinates.

Groups are identified by kind + rank; weights are coordinate vectors in a
declared basis (epsilon, fundamental, root, or the hatted Spin(8)-adapted
basis used for the EIII chain).  All pairings are exact.
"""

from fractions import Fraction

from .exactalg import Q, mat_inverse, mat_vec


# center orders; 0 means infinite (torus-like center: any finite order divides)
_CENTER = {
    "SU": lambda n: n,
    "U": lambda n: 0,
    "SO": lambda n: 2 if n % 2 == 0 else 1,
    "Spin": lambda n: 4 if n % 2 == 0 else 2,
    "Sp": lambda n: 2,
    "G2": lambda n: 1,
    "F4": lambda n: 1,
    "T": lambda n: 0,
}


class GroupId:
    """A compact group kind: simple classical/exceptional, torus, or a flat
    product, optionally modded by a finite central subgroup."""

    def __init__(self, kind, n=0, components=None, quotient=1):
        if components is not None:
            flat = []
            for c in components:
                if c.is_product():
                    flat.extend(c.components)
                else:
                    flat.append(c)
            self.kind = "product"
            self.n = 0
            self.components = tuple(flat)
        else:
            if kind not in _CENTER:
                raise ValueError("unknown group kind %r" % kind)
            self.kind = kind
            self.n = n
            self.components = None
        self.quotient = quotient
        if quotient > 1:
            z = self.center_order()
            if z != 0 and z % quotient != 0:
                raise ValueError("quotient order %d does not divide center order %d"
                                 % (quotient, z))

    def is_product(self):
        return self.kind == "product"

    def center_order(self):
        if self.is_product():
            orders = [c.center_order() for c in self.components]
            if any(o == 0 for o in orders):
                return 0
            prod = 1
            for o in orders:
                prod *= o
            return prod
        return _CENTER[self.kind](self.n)

    def rank(self):
        if self.is_product():
            return sum(c.rank() for c in self.components)
        if self.kind in ("SU",):
            return self.n - 1
        if self.kind in ("SO", "Spin"):
            return self.n // 2
        if self.kind == "Sp":
            return self.n
        if self.kind == "U":
            return self.n
        if self.kind == "G2":
            return 2
        if self.kind == "F4":
            return 4
        if self.kind == "T":
            return self.n
        raise ValueError(self.kind)

    def ncoords(self):
        """Length of the epsilon-coordinate vector."""
        if self.is_product():
            return sum(c.ncoords() for c in self.components)
        if self.kind in ("SU", "G2"):
            # sum-zero coordinates: n and 3 respectively
            return self.n if self.kind == "SU" else 3
        return self.rank()

    def blocks(self):
        """Coordinate slices per component (trivial slice for simple groups)."""
        if not self.is_product():
            return [(0, self.ncoords(), self)]
        out = []
        at = 0
        for c in self.components:
            w = c.ncoords()
            out.append((at, at + w, c))
            at += w
        return out

    def label(self):
        if self.is_product():
            s = "x".join(c.label() for c in self.components)
        elif self.kind in ("G2", "F4"):
            s = self.kind
        elif self.kind == "T":
            s = "T%d" % self.n
        else:
            s = "%s(%d)" % (self.kind, self.n)
        if self.quotient > 1:
            s += "/Z%d" % self.quotient
        return s

    def __eq__(self, other):
        return (isinstance(other, GroupId)
                and self.kind == other.kind and self.n == other.n
                and self.components == other.components
                and self.quotient == other.quotient)

    def __hash__(self):
        return hash((self.kind, self.n, self.components, self.quotient))

    def __repr__(self):
        return self.label()


def SU(n):
    return GroupId("SU", n)


def SO(n):
    return GroupId("SO", n)


def Spin(n):
    return GroupId("Spin", n)


def Sp(n):
    return GroupId("Sp", n)


def Un(n):
    return GroupId("U", n)


def G2():
    return GroupId("G2")


def F4():
    return GroupId("F4")


def Torus(k):
    return GroupId("T", k)


def product(*gs, quotient=1):
    return GroupId(None, components=list(gs), quotient=quotient)


# ---------------------------------------------------------------------------
# roots

def _vec(n, pairs):
    v = [Fraction(0)] * n
    for i, c in pairs:
        v[i] = Fraction(c)
    return tuple(v)


def simple_roots(g):
    """Simple roots in epsilon coordinates."""
    if g.is_product():
        out = []
        n = g.ncoords()
        for lo, hi, c in g.blocks():
            for a in simple_roots(c):
                out.append(tuple([Fraction(0)] * lo) + a + tuple([Fraction(0)] * (n - hi)))
        return out
    k, n = g.kind, g.n
    if k == "T":
        return []
    if k in ("SU", "U"):
        m = g.ncoords()
        return [_vec(m, [(i, 1), (i + 1, -1)]) for i in range(m - 1)]
    if k in ("SO", "Spin"):
        r = n // 2
        if n % 2 == 1:
            if r == 0:
                return []
            out = [_vec(r, [(i, 1), (i + 1, -1)]) for i in range(r - 1)]
            out.append(_vec(r, [(r - 1, 1)]))
            return out
        if r == 1:
            return []
        out = [_vec(r, [(i, 1), (i + 1, -1)]) for i in range(r - 1)]
        out.append(_vec(r, [(r - 2, 1), (r - 1, 1)]))
        return out
    if k == "Sp":
        r = n
        out = [_vec(r, [(i, 1), (i + 1, -1)]) for i in range(r - 1)]
        out.append(_vec(r, [(r - 1, 2)]))
        return out
    if k == "G2":
        return [_vec(3, [(0, 1), (1, -1)]), _vec(3, [(0, -2), (1, 1), (2, 1)])]
    if k == "F4":
        return [_vec(4, [(1, 1), (2, -1)]), _vec(4, [(2, 1), (3, -1)]),
                _vec(4, [(3, 1)]),
                _vec(4, [(0, Q(1, 2)), (1, Q(-1, 2)), (2, Q(-1, 2)), (3, Q(-1, 2))])]
    raise ValueError(k)


def positive_roots(g):
    if g.is_product():
        out = []
        n = g.ncoords()
        for lo, hi, c in g.blocks():
            for a in positive_roots(c):
                out.append(tuple([Fraction(0)] * lo) + a + tuple([Fraction(0)] * (n - hi)))
        return out
    k, n = g.kind, g.n
    if k == "T":
        return []
    if k in ("SU", "U"):
        m = g.ncoords()
        return [_vec(m, [(i, 1), (j, -1)]) for i in range(m) for j in range(i + 1, m)]
    if k in ("SO", "Spin"):
        r = n // 2
        out = []
        for i in range(r):
            for j in range(i + 1, r):
                out.append(_vec(r, [(i, 1), (j, -1)]))
                out.append(_vec(r, [(i, 1), (j, 1)]))
        if n % 2 == 1:
            for i in range(r):
                out.append(_vec(r, [(i, 1)]))
        return out
    if k == "Sp":
        r = n
        out = []
        for i in range(r):
            for j in range(i + 1, r):
                out.append(_vec(r, [(i, 1), (j, -1)]))
                out.append(_vec(r, [(i, 1), (j, 1)]))
        for i in range(r):
            out.append(_vec(r, [(i, 2)]))
        return out
    if k == "G2":
        a1, a2 = simple_roots(g)
        combos = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
        return [tuple(p * x + q * y for x, y in zip(a1, a2)) for p, q in combos]
    if k == "F4":
        out = []
        for i in range(4):
            out.append(_vec(4, [(i, 1)]))
            for j in range(i + 1, 4):
                out.append(_vec(4, [(i, 1), (j, -1)]))
                out.append(_vec(4, [(i, 1), (j, 1)]))
        from itertools import product as iproduct
        for signs in iproduct((1, -1), repeat=3):
            out.append(tuple(Q(s, 2) for s in (1,) + signs))
        return out
    raise ValueError(k)


def std_dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def dominantize(g, v):
    """Weyl-conjugate of v in the dominant chamber (std pairing)."""
    v = list(v)
    simples = simple_roots(g)
    changed = True
    while changed:
        changed = False
        for a in simples:
            num = std_dot(v, a)
            if num < 0:
                den = std_dot(a, a)
                c = 2 * num / den
                v = [x - c * y for x, y in zip(v, a)]
                changed = True
    return tuple(v)


def is_dominant_eps(g, v):
    return all(std_dot(v, a) >= 0 for a in simple_roots(g))


def fundamental_weights(g):
    """Fundamental weights in epsilon coordinates (simple groups only)."""
    if g.is_product():
        raise ValueError("fundamental weights are per simple factor")
    simples = simple_roots(g)
    r = len(simples)
    nc = g.ncoords()
    # Solve <w_i, a_j^vee> = delta_ij inside the span of the simple roots.
    rows = []
    for a in simples:
        den = std_dot(a, a)
        rows.append([2 * a[c] / den for c in range(nc)])
    # express w in the basis of simple roots: w = sum x_k alpha_k
    mat = [[sum(rows[j][c] * simples[k][c] for c in range(nc)) for k in range(r)]
           for j in range(r)]
    inv = mat_inverse(mat)
    out = []
    for i in range(r):
        coef = [inv[k][i] for k in range(r)]
        w = tuple(sum(coef[k] * simples[k][c] for k in range(r)) for c in range(nc))
        out.append(w)
    return out


# ---------------------------------------------------------------------------
# weights

class Weight:
    """Exact weight vector tagged with its group and coordinate basis."""

    __slots__ = ("group", "coords", "basis")

    def __init__(self, group, coords, basis="eps"):
        self.group = group
        self.coords = tuple(Fraction(c) for c in coords)
        self.basis = basis
        if basis == "eps" and len(self.coords) != group.ncoords():
            raise ValueError("expected %d coordinates, got %d"
                             % (group.ncoords(), len(self.coords)))
        if basis == "eps":
            _check_lattice(group, self.coords)

    def __eq__(self, other):
        return (isinstance(other, Weight) and self.group == other.group
                and self.basis == other.basis and self.coords == other.coords)

    def __hash__(self):
        return hash((self.group, self.basis, self.coords))

    def __repr__(self):
        return "Weight(%s, %s, %s)" % (self.group.label(), list(self.coords), self.basis)


def _check_lattice(g, coords):
    for lo, hi, c in (g.blocks() if g.is_product() else [(0, len(coords), g)]):
        part = coords[lo:hi]
        if c.kind == "Spin":
            fr = {x % 1 for x in part}
            if not (fr <= {Fraction(0)} or fr <= {Fraction(1, 2)}):
                raise ValueError("Spin weight must be integral or half-integral: %s" % (part,))


def to_basis(w, target):
    """Convert a weight between declared coordinate bases."""
    g = w.group
    if w.basis == target:
        return w
    key = (w.basis, target)
    if g.is_product():
        raise ValueError("basis conversion is declared per simple group")
    if g.kind == "G2" or g.kind == "F4" or g.kind in ("SU", "SO", "Spin", "Sp", "U"):
        if key == ("fund", "eps"):
            fw = fundamental_weights(g)
            nc = g.ncoords()
            v = tuple(sum(w.coords[i] * fw[i][c] for i in range(len(fw)))
                      for c in range(nc))
            return Weight(g, v, "eps")
        if key == ("eps", "fund"):
            out = []
            for a in simple_roots(g):
                out.append(2 * std_dot(w.coords, a) / std_dot(a, a))
            return Weight(g, out, "fund")
        if key == ("root", "eps"):
            simples = simple_roots(g)
            nc = g.ncoords()
            v = tuple(sum(w.coords[i] * simples[i][c] for i in range(len(simples)))
                      for c in range(nc))
            return Weight(g, v, "eps")
        if key == ("eps", "root"):
            simples = simple_roots(g)
            r = len(simples)
            mat = [[std_dot(simples[i], simples[j]) for j in range(r)] for i in range(r)]
            rhs = [std_dot(w.coords, simples[i]) for i in range(r)]
            sol = mat_vec(mat_inverse(mat), rhs)
            return Weight(g, sol, "root")
        if key in (("fund", "root"), ("root", "fund")):
            return to_basis(to_basis(w, "eps"), target)
    raise ValueError("no declared conversion %s -> %s for %s" % (w.basis, target, g.label()))


# hatted basis of the EIII chain: p-coordinate conversion (6 coords: p0..p5)
_HAT_FROM_P = [
    [Q(-1, 2), 3, 0, 0, 0, 0],
    [Q(-1, 4), Q(-1, 2), 0, 0, 0, 0],
    [0, 0, Q(1, 2), Q(1, 2), Q(1, 2), Q(1, 2)],
    [0, 0, Q(1, 2), Q(1, 2), Q(-1, 2), Q(-1, 2)],
    [0, 0, Q(1, 2), Q(-1, 2), Q(1, 2), Q(-1, 2)],
    [0, 0, Q(-1, 2), Q(1, 2), Q(1, 2), Q(-1, 2)],
]
_P_FROM_HAT = mat_inverse(_HAT_FROM_P)


def eiii_hat_from_p(p):
    return tuple(mat_vec(_HAT_FROM_P, [Fraction(x) for x in p]))


def eiii_p_from_hat(ph):
    return tuple(mat_vec(_P_FROM_HAT, [Fraction(x) for x in ph]))


# ---------------------------------------------------------------------------
# inner products

FORMS = ("negative_killing", "negative_trace", "negative_half_trace")


class InnerProductSpec:
    """Ad-invariant inner product choice; induces an exact pairing on weights."""

    def __init__(self, group, form, scale=1):
        if form not in FORMS:
            raise ValueError("unknown form %r" % form)
        self.group = group
        self.form = form
        self.scale = Fraction(scale)
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    def __repr__(self):
        return "InnerProductSpec(%s, %s, %s)" % (self.group.label(), self.form, self.scale)


def _dual_gram_simple(g, form):
    """Weight-space Gram matrix blocks for a simple factor, as a function
    ``pair(u, v)`` on coordinate slices."""
    k, n = g.kind, g.n
    if form == "negative_killing":
        roots = positive_roots(g)
        if not roots:
            raise ValueError("Killing form degenerate on a torus")
        nc = g.ncoords()
        # primal B = sum over all roots alpha alpha^T (positives doubled)
        mat = [[2 * sum(a[i] * a[j] for a in roots) for j in range(nc)] for i in range(nc)]
        if k in ("SU", "G2"):
            # sum-zero coordinates: invert on the traceless subspace
            def pair(u, v, mat=mat, nc=nc):
                su, sv = sum(u), sum(v)
                u0 = [x - su / nc for x in u]
                v0 = [x - sv / nc for x in v]
                # B restricted to traceless is c * standard with
                # c = B(e) / std(e) for any traceless e
                e = [Fraction(1), Fraction(-1)] + [Fraction(0)] * (nc - 2)
                c = sum(mat[i][j] * e[i] * e[j] for i in range(nc) for j in range(nc)) / 2
                return sum(x * y for x, y in zip(u0, v0)) / c
            return pair
        inv = mat_inverse(mat)

        def pair(u, v, inv=inv):
            return sum(inv[i][j] * u[i] * v[j]
                       for i in range(len(u)) for j in range(len(v)))
        return pair
    if k in ("SO", "Spin"):
        c = Q(1, 2) if form == "negative_trace" else Q(1, 1)

        def pair(u, v, c=c):
            return c * std_dot(u, v)
        return pair
    if k == "Sp":
        # sp(n) in u(2n): -tr gives eps pairing 1/2, -1/2 tr gives 1
        c = Q(1, 2) if form == "negative_trace" else Q(1, 1)

        def pair(u, v, c=c):
            return c * std_dot(u, v)
        return pair
    if k == "U":
        if form != "negative_trace":
            raise ValueError("use negative_trace for U(n) (real part of trace)")

        def pair(u, v):
            return std_dot(u, v)
        return pair
    if k == "SU":
        if form != "negative_trace":
            raise ValueError("use negative_trace or negative_killing for SU(n)")

        def pair(u, v, n=g.ncoords()):
            su, sv = sum(u), sum(v)
            return std_dot(u, v) - su * sv / n
        return pair
    if k == "T":
        # torus factors carry the ambient trace form; declared per family via scale
        if form == "negative_trace":
            def pair(u, v):
                return std_dot(u, v)
            return pair
        if form == "negative_half_trace":
            def pair(u, v):
                return std_dot(u, v)
            return pair
    raise ValueError("no %s pairing for %s" % (form, g.label()))


def pairing(a, b, ip):
    """Exact invariant pairing <a, b> of two weights under ip."""
    if a.group != b.group:
        raise ValueError("group mismatch")
    if a.basis != b.basis:
        raise ValueError("basis mismatch: %s vs %s" % (a.basis, b.basis))
    if a.basis != "eps":
        a = to_basis(a, "eps")
        b = to_basis(b, "eps")
    g = a.group
    total = Fraction(0)
    for lo, hi, comp in (g.blocks() if g.is_product() else [(0, g.ncoords(), g)]):
        pr = _dual_gram_simple(comp, ip.form)
        total += pr(a.coords[lo:hi], b.coords[lo:hi])
    return total / ip.scale


# ---------------------------------------------------------------------------
# dominance in the conventions the branching lemmas use

def is_dominant(w):
    """Dominance test in the recorded convention for the weight's group."""
    g = w.group
    if w.basis == "fund":
        return all(c >= 0 for c in w.coords)
    if w.basis != "eps":
        return is_dominant(to_basis(w, "eps"))
    for lo, hi, comp in (g.blocks() if g.is_product() else [(0, g.ncoords(), g)]):
        if not is_dominant_eps(comp, list(w.coords[lo:hi])):
            return False
    return True


class RestrictedRootData:
    """Positive restricted roots of a rank-2 pair with multiplicities and
    squared-length ratios to the highest root."""

    LEGAL_RATIOS = {
        "A1": {Q(1)},
        "A1xA1": {Q(1)},
        "A2": {Q(1)},
        "G2": {Q(1), Q(1, 3)},
        "B2": {Q(1), Q(1, 2)},
        "BC2": {Q(1), Q(1, 2), Q(1, 4)},
    }

    def __init__(self, pair_type, roots, gamma0_sq):
        if pair_type not in self.LEGAL_RATIOS:
            raise ValueError("unknown pair type %r" % pair_type)
        self.pair_type = pair_type
        self.roots = []
        legal = self.LEGAL_RATIOS[pair_type]
        for label, mult, ratio in roots:
            mult = int(mult)
            ratio = Fraction(ratio)
            if mult <= 0:
                raise ValueError("multiplicity must be positive")
            if ratio not in legal:
                raise ValueError("ratio %s illegal for type %s" % (ratio, pair_type))
            self.roots.append((label, mult, ratio))
        self.gamma0_sq = Fraction(gamma0_sq)

    def total_multiplicity(self):
        return sum(m for _, m, _ in self.roots)
