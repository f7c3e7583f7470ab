"""Fixed subspaces under K0 and under the deck group K_[a]/K0.

Three mechanisms, matched to how each family is computed:
  * explicit SU(2) x SU(2) polynomial models for (G2, SO(4)) and the binary
    tetrahedral model for (SU(3), SO(3)) -- finite character averages with
    exact Chebyshev values;
  * torus-lift trace averages for the flag families (G2 x G2, SU(3) x SU(3),
    SO(5) x SO(5)) -- rational counting identities over weight classes;
  * tensor models with exact deck matrices for the classical g = 4 chains
    and the Jordan-algebra model for EIII (see models.py / cayley.py).
"""

from fractions import Fraction

from .exactalg import QI, Q, is_zero, eig_rational
from .lattice import Weight, to_basis
from .repcore import freudenthal
from .cayley import (CayleyElement, cayley_mul, oct_unit, E6Model,
                     octonion_table)


# ---------------------------------------------------------------------------
# SU(2) characters at exact trace values

def su2_char(j, t):
    """Character of V_j at an SU(2) element of trace t (Chebyshev-type)."""
    t = Fraction(t) if not isinstance(t, QI) else t
    if j == 0:
        return Fraction(1) if not isinstance(t, QI) else QI(1)
    prev, cur = 1, t
    for _ in range(j - 1):
        prev, cur = cur, t * cur - prev
    return cur


# ---------------------------------------------------------------------------
# the (G2, SO(4)) model: K~ = SU(2) x SU(2), K~0 = Q8 (diagonal pairs),
# deck Z6 generated by (A, -A)

def _q8_matrices():
    i = QI(0, 1)
    I2 = ((QI(1), QI(0)), (QI(0), QI(1)))
    d = ((i, QI(0)), (QI(0), -i))
    w = ((QI(0), QI(-1)), (QI(1), QI(0)))
    dw = ((QI(0), -i), (-i, QI(0)))
    base = [I2, d, w, dw]
    out = []
    for m in base:
        out.append(m)
        out.append(tuple(tuple(-x for x in row) for row in m))
    return out


def _deck_A():
    h = QI(Q(1, 2), Q(1, 2))     # (1+i)/2
    hb = QI(Q(1, 2), Q(-1, 2))   # (1-i)/2
    return ((h, -hb), (h, hb))


def _mat2_mul(a, b):
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(2)), QI(0))
                       for j in range(2)) for i in range(2))


def _g2so4_group():
    """The 48 pairs (C, eps) with (C, eps*C) running over K~_[a]."""
    q8 = _q8_matrices()
    A = _deck_A()
    out = []
    cur = ((QI(1), QI(0)), (QI(0), QI(1)))
    for k in range(6):
        eps = (-1) ** k
        for q in q8:
            out.append((_mat2_mul(cur, q), eps))
        cur = _mat2_mul(cur, A)
    return out


_G2SO4_GROUP = None
_G2SO4_Q8 = None


def _group_g2so4():
    global _G2SO4_GROUP, _G2SO4_Q8
    if _G2SO4_GROUP is None:
        _G2SO4_GROUP = _g2so4_group()
        _G2SO4_Q8 = _q8_matrices()
    return _G2SO4_GROUP, _G2SO4_Q8


def g2so4_eigenvalue(l, m, j):
    """-c_L on the V_j Clebsch-Gordan component of V_l (x) V_m."""
    return Fraction(2 * l * (l + 2) + 6 * m * (m + 2) - j * (j + 2), 8)


def g2so4_component_dims(l, m):
    """{j: (dim of Q8-fixed part, dim of deck-fixed part)} over the
    Clebsch-Gordan components of V_l (x) V_m."""
    full, q8 = _group_g2so4()
    out = {}
    for j in range(abs(l - m), l + m + 1, 2):
        f8 = Fraction(0)
        for q in q8:
            t = q[0][0] + q[1][1]
            assert t.im == 0
            f8 += su2_char(j, t.re)
        f8 = f8 / 8
        f48 = Fraction(0)
        for C, eps in full:
            t = C[0][0] + C[1][1]
            assert t.im == 0
            f48 += (eps ** m) * su2_char(j, t.re)
        f48 = f48 / 48
        if f8.denominator != 1 or f48.denominator != 1 or f8 < 0 or f48 < 0:
            raise ValueError("character average is not a nonnegative integer")
        if f8 or f48:
            out[j] = (int(f8), int(f48))
    return out


def su2_model_fixed_dim(l, m):
    return sum(f8 for f8, _ in g2so4_component_dims(l, m).values())


def su2_model_casimir_spectrum(l, m):
    """Multiset of C_L eigenvalues on the K~0-fixed subspace of V_l (x) V_m,
    sorted (the table's convention lists c_L <= 0)."""
    out = []
    for j, (f8, _) in g2so4_component_dims(l, m).items():
        out.extend([-g2so4_eigenvalue(l, m, j)] * f8)
    return sorted(out, reverse=True)


def su2_model_deck_spectrum(l, m):
    """{-c_L eigenvalue: deck-fixed dimension} for V_l (x) V_m."""
    out = {}
    for j, (_, f48) in g2so4_component_dims(l, m).items():
        if f48:
            ev = g2so4_eigenvalue(l, m, j)
            out[ev] = out.get(ev, 0) + f48
    return out


# --- independent oracle: the tridiagonal operator on the monomial basis ----

def g2so4_model_oracle(l, m):
    """Spectrum on the K~0-fixed space computed from the explicit operator
    of the paper-displayed lemma, in the monomial basis (exact rationals).

    Returns (fixed dim, sorted eigenvalue multiset of C_L, deck dict).
    """
    dim = (l + 1) * (m + 1)

    def idx(i, a):
        return i * (m + 1) + a

    # C_L in the monomial basis: diagonal + rational off-diagonal entries
    rows = {}

    def add(r, c, v):
        row = rows.setdefault(r, {})
        row[c] = row.get(c, Fraction(0)) + v

    # diagonal term uses (2a - m); the displayed (4a - m) breaks the
    # (i, a) -> (l - i, m - a) symmetry the operator must have
    for i in range(l + 1):
        for a in range(m + 1):
            d = Fraction(l * (l + 2), 8) + Fraction(5 * m * (m + 2), 8) \
                - Fraction((2 * i - l) * (2 * a - m), 4)
            add(idx(i, a), idx(i, a), -d)
            if i + 1 <= l and a - 1 >= 0:
                add(idx(i + 1, a - 1), idx(i, a), Fraction((l - i) * a, 2))
            if i - 1 >= 0 and a + 1 <= m:
                add(idx(i - 1, a + 1), idx(i, a), Fraction(i * (m - a), 2))

    # group action on monomials z0^(l-i) z1^i etc: (rho(g) f)(z) = f(z g)
    def poly_action(g, deg):
        """Matrix of rho_deg(g) on monomials m_k = z0^(deg-k) z1^k."""
        a, b = g[0][0], g[0][1]
        c, d = g[1][0], g[1][1]
        # z0 -> a z0 + c z1 ; z1 -> b z0 + d z1   (row vector times matrix)
        from math import comb
        mat = [[QI(0)] * (deg + 1) for _ in range(deg + 1)]
        for k in range(deg + 1):
            # (a z0 + c z1)^(deg-k) (b z0 + d z1)^k
            acc = {0: QI(1)}
            for _ in range(deg - k):
                nxt = {}
                for e, v in acc.items():
                    if not is_zero(a):
                        nxt[e] = nxt.get(e, QI(0)) + v * a
                    if not is_zero(c):
                        nxt[e + 1] = nxt.get(e + 1, QI(0)) + v * c
                acc = nxt
            for _ in range(k):
                nxt = {}
                for e, v in acc.items():
                    if not is_zero(b):
                        nxt[e] = nxt.get(e, QI(0)) + v * b
                    if not is_zero(d):
                        nxt[e + 1] = nxt.get(e + 1, QI(0)) + v * d
                acc = nxt
            for e, v in acc.items():
                if not is_zero(v):
                    mat[e][k] = v
        return mat

    def pair_action(C, eps):
        Cm = poly_action(C, l)
        D = tuple(tuple(x * eps for x in row) for row in C)
        Dm = poly_action(D, m)
        out = [[QI(0)] * dim for _ in range(dim)]
        for i1 in range(l + 1):
            for i2 in range(l + 1):
                if is_zero(Cm[i1][i2]):
                    continue
                for a1 in range(m + 1):
                    for a2 in range(m + 1):
                        if is_zero(Dm[a1][a2]):
                            continue
                        out[idx(i1, a1)][idx(i2, a2)] = Cm[i1][i2] * Dm[a1][a2]
        return out

    full, q8 = _group_g2so4()
    # K~0-fixed subspace: average projector rank via kernel computations
    from .exactalg import kernel_basis
    stack = []
    for q in q8:
        mat = pair_action(q, 1)
        for r in range(dim):
            row = [mat[r][c] - (QI(1) if r == c else QI(0)) for c in range(dim)]
            stack.append(row)
    fixed = kernel_basis(stack, dim)
    # C_L matrix on the fixed space
    if not fixed:
        return 0, [], {}
    from .exactalg import SpanSolver
    solver = SpanSolver([list(v) for v in fixed])
    matL = []
    for v in fixed:
        img = [QI(0)] * dim
        for r, cols in rows.items():
            acc = QI(0)
            for c, val in cols.items():
                if not is_zero(v[c]):
                    acc = acc + QI(v[c]) * val
            img[r] = acc
        matL.append(solver.coords(img))
    n = len(fixed)

    def as_frac(x):
        if isinstance(x, QI):
            if x.im != 0:
                raise ValueError("operator matrix not real")
            return x.re
        return Fraction(x)

    matL = [[as_frac(matL[j][i]) for j in range(n)] for i in range(n)]
    eig = eig_rational(matL)
    spec = []
    deck = {}
    A = _deck_A()
    gmat = pair_action(A, -1)
    for lam, vecs in eig:
        spec.extend([lam] * len(vecs))
        # deck fixed inside eigenspace
        amb = []
        for coefs in vecs:
            v = [QI(0)] * dim
            for c, b in zip(coefs, fixed):
                if c:
                    for t in range(dim):
                        v[t] = v[t] + QI(b[t]) * c
            amb.append(v)
        stack2 = []
        for v in amb:
            img = [sum((gmat[r][c] * v[c] for c in range(dim) if not is_zero(v[c])), QI(0))
                   for r in range(dim)]
            stack2.append([img[t] - v[t] for t in range(dim)])
        mat2 = [[stack2[r][t] for r in range(len(amb))] for t in range(dim)]
        ker = kernel_basis(mat2, len(amb))
        if ker:
            deck[-lam] = deck.get(-lam, 0) + len(ker)
    return len(fixed), sorted(spec, reverse=True), deck


# ---------------------------------------------------------------------------
# the (SU(3), SO(3)) model: K~ = SU(2), K~0 = Q8, deck Z3 by the binary
# tetrahedral extension

def _binary_tetrahedral():
    i = QI(0, 1)
    h = Q(1, 2)
    # A3 = (-1 + i + j + k)/2 as an SU(2) matrix
    A3 = ((QI(-h, h), QI(h, h)), (QI(-h, h), QI(-h, -h)))
    q8 = _q8_matrices()
    out = []
    cur = ((QI(1), QI(0)), (QI(0), QI(1)))
    for k in range(3):
        for q in q8:
            out.append(_mat2_mul(cur, q))
        cur = _mat2_mul(cur, A3)
    return out


def ai2_fixed_dims(l):
    """(Q8-fixed dim, binary-tetrahedral-fixed dim) of V_l."""
    q8 = _q8_matrices()
    f8 = Fraction(0)
    for q in q8:
        t = q[0][0] + q[1][1]
        f8 += su2_char(l, t.re)
    f8 = f8 / 8
    g24 = _binary_tetrahedral()
    f24 = Fraction(0)
    for g in g24:
        t = g[0][0] + g[1][1]
        assert t.im == 0
        f24 += su2_char(l, t.re)
    f24 = f24 / 24
    if f8.denominator != 1 or f24.denominator != 1:
        raise ValueError("non-integral character average")
    return int(f8), int(f24)


# ---------------------------------------------------------------------------
# torus-lift deck averages for flag families

def cyclic_deck_average(table, exponent_fn, order, zero_weight):
    """(1/d) sum_j tr(u^j | V[0]) for an elliptic cyclic deck of lifts of
    Weyl rotations: equals (m0 + d*N0 - dim)/d where N0 counts weights with
    exponent_fn(mu) = 0 mod d."""
    dim = sum(table.values())
    m0 = table.get(zero_weight, 0)
    n0 = 0
    for mu, mult in table.items():
        e = exponent_fn(mu)
        if Fraction(e) % order == 0:
            n0 += mult
    val = Fraction(m0 + order * n0 - dim, order)
    if val.denominator != 1 or val < 0:
        raise ValueError("deck average %s is not a nonnegative integer" % val)
    return int(val)


def su3_reg3_trace(table):
    """Trace of an order-3 Weyl rotation lift on the zero-weight space of an
    SU(3) module, via the character at diag(1, w, w^2): sum of N_k w^k."""
    counts = [0, 0, 0]
    for mu, mult in table.items():
        e = mu[2] - mu[0]
        if Fraction(e).denominator != 1:
            raise ValueError("non-integral pairing exponent")
        counts[int(e) % 3] += mult
    # N0 + N1 w + N2 w^2 with w^2 = -1 - w: real iff N1 == N2
    if counts[1] != counts[2]:
        raise ValueError("reg3 character came out non-rational")
    return Fraction(counts[0] - counts[1])


def su3_z3_fixed_dim(table, zero_weight):
    """dim of the T^2.Z3-fixed space of an SU(3) module."""
    m0 = table.get(zero_weight, 0)
    tr = su3_reg3_trace(table)
    val = Fraction(m0 + 2 * tr, 3)
    if val.denominator != 1 or val < 0:
        raise ValueError("Z3 average %s is not a nonnegative integer" % val)
    return int(val)


# ---------------------------------------------------------------------------
# spec-level octonion / EIII entry points

_E6 = None


def e6_model():
    global _E6
    if _E6 is None:
        _E6 = E6Model()
    return _E6


def eiii_generator_action(vec27):
    """Apply the EIII deck generator to a 27-coordinate vector."""
    g = e6_model().eiii_deck_generator()
    return [sum((QI(g[i][j]) * vec27[j] for j in range(27)
                 if not is_zero(vec27[j])), QI(0)) for i in range(27)]
