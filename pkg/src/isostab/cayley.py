"""Cayley algebra, the exceptional Jordan algebra, and the 27-dimensional
model of e6 with its f4 and u(1)+so(10) subalgebras.

Coordinates on H_3(K)^C: (xi_1, xi_2, xi_3; x_1, x_2, x_3) with each x_i an
octonion given by eight coefficients over the standard units c_0=1, c_1..c_7.
Index layout in C^27: 0,1,2 for the diagonal, then 3..10, 11..18, 19..26 for
x_1, x_2, x_3.
"""

from fractions import Fraction

from .exactalg import QI, Q, is_zero, mat_mul, mat_inverse
from .models import SparseOp, Rep, PairModel, real_flatten


def _bring(i):
    """Normalize a unit index into 1..7 (indices live in Z_7 on {1..7})."""
    return (i - 1) % 7 + 1


def octonion_table():
    """table[i][j] = (k, s) meaning c_i c_j = s * c_k, with c_0 = 1."""
    t = [[None] * 8 for _ in range(8)]
    for i in range(8):
        t[0][i] = (i, 1)
        t[i][0] = (i, 1)
    for i in range(1, 8):
        t[i][i] = (0, -1)
    for i in range(1, 8):
        a, b, c = i, _bring(i + 1), _bring(i + 3)
        # c_i c_{i+1} = c_{i+3}; c_{i+1} c_{i+3} = c_i; c_{i+3} c_i = c_{i+1}
        for (p, q, r) in ((a, b, c), (b, c, a), (c, a, b)):
            t[p][q] = (r, 1)
            t[q][p] = (r, -1)
    for i in range(8):
        for j in range(8):
            if t[i][j] is None:
                raise ValueError("octonion table incomplete at %d,%d" % (i, j))
    return t


_OCT = octonion_table()


def oct_mul(x, y):
    """Product of two octonions given as length-8 coefficient lists."""
    out = [QI(0)] * 8
    for i in range(8):
        if is_zero(x[i]):
            continue
        for j in range(8):
            if is_zero(y[j]):
                continue
            k, s = _OCT[i][j]
            out[k] = out[k] + QI(x[i]) * y[j] * s
    return out


def oct_conj(x):
    return [QI(x[0])] + [-QI(c) for c in x[1:]]


def oct_inner(x, y):
    """C-bilinear extension of the canonical inner product."""
    return sum((QI(a) * b for a, b in zip(x, y)), QI(0))


def oct_unit(i):
    return [QI(1 if j == i else 0) for j in range(8)]


class CayleyElement:
    """Exact octonion over the Gaussian rationals."""

    def __init__(self, coords):
        if len(coords) != 8:
            raise ValueError("octonion needs 8 coordinates")
        self.coords = [QI(c) for c in coords]

    def __mul__(self, other):
        return CayleyElement(oct_mul(self.coords, other.coords))

    def conj(self):
        return CayleyElement(oct_conj(self.coords))

    def __add__(self, other):
        return CayleyElement([a + b for a, b in zip(self.coords, other.coords)])

    def __eq__(self, other):
        return self.coords == other.coords

    def norm_sq(self):
        return oct_inner(self.coords, self.coords)

    def __repr__(self):
        return "Cayley(%s)" % (self.coords,)


def cayley_mul(x, y):
    return x * y


# ---------------------------------------------------------------------------
# operators on the 27-dimensional module

DIM27 = 27


def _zero27():
    return [[QI(0)] * DIM27 for _ in range(DIM27)]


def _xslot(i, a):
    """Index of coefficient a of x_i (i = 1, 2, 3; a = 0..7)."""
    return 3 + 8 * (i - 1) + a


def op_R_diag(eta):
    """R(eta_1 e_1 + eta_2 e_2 + eta_3 e_3)."""
    m = _zero27()
    for i in range(3):
        m[i][i] = QI(eta[i])
    for i in (1, 2, 3):
        j, k = i % 3 + 1, (i + 1) % 3 + 1
        c = (QI(eta[j - 1]) + QI(eta[k - 1])) / 2
        for a in range(8):
            m[_xslot(i, a)][_xslot(i, a)] = c
    return m


def op_D_diag(zs):
    """D(z_1 e_1 + z_2 e_2 + z_3 e_3) with imaginary octonions z_i, sum 0."""
    m = _zero27()
    for i in (1, 2, 3):
        j, k = i % 3 + 1, (i + 1) % 3 + 1
        zj, zk = zs[j - 1], zs[k - 1]
        for a in range(8):
            x = oct_unit(a)
            res = [ (u - v) / 2 for u, v in zip(oct_mul(zj, x), oct_mul(x, zk))]
            for b in range(8):
                if not is_zero(res[b]):
                    m[_xslot(i, b)][_xslot(i, a)] = m[_xslot(i, b)][_xslot(i, a)] + res[b]
    return m


def op_D_u(i, x):
    """D(x u-bar_i); x a length-8 coefficient list."""
    m = _zero27()
    j, k = i % 3 + 1, (i + 1) % 3 + 1
    xb = oct_conj(x)
    for a in range(8):
        e = oct_unit(a)
        # action on x_i coordinates: (x, x_i)(e_j - e_k)
        val = QI(x[a])
        if not is_zero(val):
            m[j - 1][_xslot(i, a)] = m[j - 1][_xslot(i, a)] + val
            m[k - 1][_xslot(i, a)] = m[k - 1][_xslot(i, a)] - val
        # action on xi_j, xi_k: 1/2 (xi_k - xi_j) x u_i
        # handled below as columns of the diagonal slots
        # action on x_k coords: + 1/2 (bar{x_j} bar{x}) u_k  <- from x_j input
        res = [v / 2 for v in oct_mul(oct_conj(e), xb)]
        for b in range(8):
            if not is_zero(res[b]):
                m[_xslot(k, b)][_xslot(j, a)] = m[_xslot(k, b)][_xslot(j, a)] + res[b]
        # action on x_j coords: - 1/2 (bar{x} bar{x_k}) u_j  <- from x_k input
        res = [-v / 2 for v in oct_mul(xb, oct_conj(e))]
        for b in range(8):
            if not is_zero(res[b]):
                m[_xslot(j, b)][_xslot(k, a)] = m[_xslot(j, b)][_xslot(k, a)] + res[b]
    # diagonal inputs: v = xi_j e_j gives + 1/2 (xi_k - xi_j) x u_i
    for b in range(8):
        if not is_zero(QI(x[b])):
            m[_xslot(i, b)][j - 1] = m[_xslot(i, b)][j - 1] - QI(x[b]) / 2
            m[_xslot(i, b)][k - 1] = m[_xslot(i, b)][k - 1] + QI(x[b]) / 2
    return m


def op_R_u(i, x):
    """R(x u_i)."""
    m = _zero27()
    j, k = i % 3 + 1, (i + 1) % 3 + 1
    xb = oct_conj(x)
    for a in range(8):
        e = oct_unit(a)
        val = QI(x[a])
        if not is_zero(val):
            m[j - 1][_xslot(i, a)] = m[j - 1][_xslot(i, a)] + val
            m[k - 1][_xslot(i, a)] = m[k - 1][_xslot(i, a)] + val
        res = [v / 2 for v in oct_mul(oct_conj(e), xb)]
        for b in range(8):
            if not is_zero(res[b]):
                m[_xslot(k, b)][_xslot(j, a)] = m[_xslot(k, b)][_xslot(j, a)] + res[b]
        res = [v / 2 for v in oct_mul(xb, oct_conj(e))]
        for b in range(8):
            if not is_zero(res[b]):
                m[_xslot(j, b)][_xslot(k, a)] = m[_xslot(j, b)][_xslot(k, a)] + res[b]
    for b in range(8):
        if not is_zero(QI(x[b])):
            m[_xslot(i, b)][j - 1] = m[_xslot(i, b)][j - 1] + QI(x[b]) / 2
            m[_xslot(i, b)][k - 1] = m[_xslot(i, b)][k - 1] + QI(x[b]) / 2
    return m


def mat_scale_qi(m, c):
    return [[QI(x) * c for x in row] for row in m]


def mat_add_qi(a, b):
    return [[QI(x) + QI(y) for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def mat_comm_qi(a, b):
    ab = mat_mul(a, b)
    ba = mat_mul(b, a)
    return [[QI(x) - QI(y) for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


_I = QI(0, 1)


def d1r_basis():
    """D_{1,r} = D(c_r(-e_2 + e_3)), r = 1..7."""
    out = []
    for r in range(1, 8):
        z = [QI(0)] * 8
        z[r] = QI(1)
        zneg = [-c for c in z]
        out.append(op_D_diag([[QI(0)] * 8, zneg, z]))
    return out


def d0_basis():
    """Basis of D_0 = so(8): D_{1,r} (7) then D_{1,pq}, 1<=p<q<=7 (21)."""
    d1 = d1r_basis()
    out = list(d1)
    pq = {}
    for p in range(1, 8):
        for q in range(p + 1, 8):
            m = mat_comm_qi(d1[p - 1], d1[q - 1])
            out.append(m)
            pq[(p, q)] = m
    return out, d1, pq


class E6Model:
    """The 27-dimensional model with the EIII isotropy algebra and its
    fibration chain, plus f4 for the EIV case."""

    def __init__(self):
        d0, d1r, d1pq = d0_basis()
        self.d0 = d0
        self.d1r = {r: d1r[r - 1] for r in range(1, 8)}
        self.d1pq = d1pq
        # k = D_0 + D_1 + iR_1 + iR_0  (u(1) + so(10))
        self.k_basis = list(d0)
        for a in range(8):
            self.k_basis.append(op_D_u(1, oct_unit(a)))
        for a in range(8):
            self.k_basis.append(mat_scale_qi(op_R_u(1, oct_unit(a)), _I))
        self.k_basis.append(mat_scale_qi(op_R_diag([0, 1, -1]), _I))
        self.k_basis.append(mat_scale_qi(op_R_diag([2, -1, -1]), _I))
        # f4 = D_0 + D_1 + D_2 + D_3
        self.f4_basis = list(d0)
        for i in (1, 2, 3):
            for a in range(8):
                self.f4_basis.append(op_D_u(i, oct_unit(a)))
        # EIII maximal abelian subspace in p
        self.a_eiii = [
            mat_add_qi(op_D_u(2, oct_unit(0)),
                       mat_scale_qi(op_R_u(2, oct_unit(4)), _I)),
            mat_add_qi(op_D_u(2, oct_unit(0)),
                       mat_scale_qi(op_R_u(2, oct_unit(4)), QI(0) - _I)),
        ]
        # EIV maximal abelian subspace: i R(diag) traceless, orthogonal pair
        self.a_eiv = [
            mat_scale_qi(op_R_diag([0, 1, -1]), _I),
            mat_scale_qi(op_R_diag([2, -1, -1]), _I),
        ]

    # -- explicit group elements -------------------------------------------

    def alpha23(self, quarter_turns=2):
        """alpha_23(t) at t = quarter_turns * pi/2 as an exact matrix
        (phases are powers of i)."""
        ph = _I ** quarter_turns        # e^{i t} with t = quarter_turns pi/2
        m = _zero27()
        m[0][0] = QI(1)
        m[1][1] = ph
        m[2][2] = QI(1) / ph
        half = _I ** (quarter_turns // 2) if quarter_turns % 2 == 0 else None
        if half is None:
            raise ValueError("need an even number of quarter turns")
        for a in range(8):
            m[_xslot(1, a)][_xslot(1, a)] = QI(1)
            m[_xslot(3, a)][_xslot(3, a)] = half
            m[_xslot(2, a)][_xslot(2, a)] = QI(1) / half
        return m

    @staticmethod
    def _quat_split(x):
        """x = m + a e with m, a in H: returns (m, a) as length-4 coefficient
        lists over (1, c2, c3, c5)."""
        return ([x[0], x[2], x[3], x[5]], [x[4], x[1], x[6], QI(0) - QI(x[7])])

    @staticmethod
    def _quat_join(m, a):
        x = [QI(0)] * 8
        x[0], x[2], x[3], x[5] = QI(m[0]), QI(m[1]), QI(m[2]), QI(m[3])
        x[4], x[1], x[6] = QI(a[0]), QI(a[1]), QI(a[2])
        x[7] = QI(0) - QI(a[3])
        return x

    @staticmethod
    def _quat_conj(m):
        return [QI(m[0]), -QI(m[1]), -QI(m[2]), -QI(m[3])]

    def triality_alphas(self):
        """The三 alpha maps of the EIII deck generator as 8x8 matrices."""
        def build(fn):
            mat = [[QI(0)] * 8 for _ in range(8)]
            for a in range(8):
                x = oct_unit(a)
                y = fn(x)
                for b in range(8):
                    mat[b][a] = QI(y[b])
            return mat

        def a1(x):
            m, a = self._quat_split(x)
            mb, ab = self._quat_conj(m), self._quat_conj(a)
            return self._quat_join([-c for c in mb], ab)

        def a2(x):
            m, a = self._quat_split(x)
            mb, ab = self._quat_conj(m), self._quat_conj(a)
            return self._quat_join([-c for c in ab], [-c for c in mb])

        def a3(x):
            m, a = self._quat_split(x)
            return self._quat_join([-c for c in a], [-c for c in m])

        return build(a1), build(a2), build(a3)

    def spin8_element(self, a1, a2, a3):
        """(alpha_1, alpha_2, alpha_3) acting blockwise on the 27."""
        m = _zero27()
        for i in range(3):
            m[i][i] = QI(1)
        for (i, al) in ((1, a1), (2, a2), (3, a3)):
            for a in range(8):
                for b in range(8):
                    if not is_zero(al[b][a]):
                        m[_xslot(i, b)][_xslot(i, a)] = QI(al[b][a])
        return m

    def eiii_deck_generator(self):
        """alpha_23(pi) composed with the triality triple."""
        a1, a2, a3 = self.triality_alphas()
        return mat_mul(self.alpha23(2), self.spin8_element(a1, a2, a3))

    def eiv_deck_generator(self):
        """Conjugation by the 3-cycle on the Jordan coordinates."""
        m = _zero27()
        for i in range(3):
            m[(i + 1) % 3][i] = QI(1)
        for i in (1, 2, 3):
            ni = i % 3 + 1
            for a in range(8):
                m[_xslot(ni, a)][_xslot(i, a)] = QI(1)
        return m

    def trace_form_v3(self):
        """The invariant symmetric form on the C^10 block {xi_2, xi_3, x_1}:
        (u, v) = tr(u o v) restricted.  Returns the 10x10 Gram matrix in the
        block basis [xi_2, xi_3, x_1 coefficients]."""
        g = [[Fraction(0)] * 10 for _ in range(10)]
        g[0][0] = Fraction(1)
        g[1][1] = Fraction(1)
        # (x u_1, y u_1) = tr(x u_1 o y u_1) = 2 (x, y)
        for a in range(10 - 8, 10):
            pass
        for a in range(8):
            g[2 + a][2 + a] = Fraction(2)
        return g
