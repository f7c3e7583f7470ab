"""Exact linear algebra over the rationals and Gaussian rationals.

Everything downstream (weights, Casimir operators, fixed-point models)
runs on Fraction coefficients; no floats anywhere.
"""

from fractions import Fraction
from math import isqrt


def Q(x, y=None):
    """Shorthand Fraction constructor."""
    return Fraction(x) if y is None else Fraction(x, y)


class QI:
    """Gaussian rational a + b*i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, QI):
            self.re = re.re + Fraction(im)
            self.im = re.im
        else:
            self.re = Fraction(re)
            self.im = Fraction(im)

    @staticmethod
    def of(x):
        if isinstance(x, QI):
            return x
        return QI(x)

    def __add__(self, other):
        o = QI.of(other)
        return QI(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = QI.of(other)
        return QI(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = QI.of(other)
        return QI(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = QI.of(other)
        return QI(self.re * o.re - self.im * o.im,
                  self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QI.of(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QI((self.re * o.re + self.im * o.im) / n,
                  (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        return QI.of(other) / self

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = QI(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QI):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conj(self):
        return QI(self.re, -self.im)

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        return "(%s%+si)" % (self.re, self.im)


I = QI(0, 1)


def is_zero(x):
    if isinstance(x, QI):
        return x.re == 0 and x.im == 0
    return x == 0


# ---------------------------------------------------------------------------
# dense matrices: list of lists of Fraction (or QI)

def mat_identity(n, one=Fraction(1)):
    return [[one if i == j else one * 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    k = len(b)
    bt = list(zip(*b))
    out = []
    for ai in a:
        nz = [t for t in range(k) if not is_zero(ai[t])]
        out.append([sum(ai[t] * bj[t] for t in nz) for bj in bt])
    return out


def mat_vec(a, v):
    nz = [j for j in range(len(v)) if not is_zero(v[j])]
    return [sum(ai[j] * v[j] for j in nz) for ai in a]


def mat_add(a, b, c=1):
    return [[a[i][j] + c * b[i][j] for j in range(len(a[0]))]
            for i in range(len(a))]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def mat_trace(a):
    return sum(a[i][i] for i in range(len(a)))


def rref(rows, ncols=None):
    """Reduced row echelon form.  Returns (rref_rows, pivot_columns).

    `rows` is a list of row vectors (lists); modified copies are returned.
    Works over Fraction or QI entries.
    """
    m = [list(r) for r in rows]
    nr = len(m)
    nc = ncols if ncols is not None else (len(m[0]) if m else 0)
    pivots = []
    r = 0
    for c in range(nc):
        pr = None
        for i in range(r, nr):
            if not is_zero(m[i][c]):
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(nr):
            if i != r and not is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [m[i][j] - f * m[r][j] for j in range(nc)]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return m[:r], pivots


def kernel_basis(rows, ncols):
    """Basis of the right kernel {v : rows @ v = 0} as a list of vectors."""
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    zero = (rows[0][0] * 0) if rows and rows[0] else Fraction(0)
    one = zero + 1
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


class SpanSolver:
    """Reusable factorization for expressing vectors in a fixed row span."""

    def __init__(self, basis_rows):
        self.nb = len(basis_rows)
        self.nc = len(basis_rows[0]) if basis_rows else 0
        aug = [list(r) + [Fraction(1 if i == j else 0) for j in range(self.nb)]
               for i, r in enumerate(basis_rows)]
        red, _ = rref(aug, self.nc + self.nb)
        self.rows = []
        for row in red:
            p = next((c for c in range(self.nc) if not is_zero(row[c])), None)
            if p is not None:
                self.rows.append((p, row))

    def coords(self, target):
        """Coefficients over the original rows, or None if outside the span."""
        t = list(target)
        coeff = [Fraction(0)] * self.nb
        for p, row in self.rows:
            f = t[p]
            if is_zero(f):
                continue
            for j in range(self.nc):
                if not is_zero(row[j]):
                    t[j] = t[j] - f * row[j]
            for j in range(self.nb):
                if not is_zero(row[self.nc + j]):
                    coeff[j] = coeff[j] + f * row[self.nc + j]
        if any(not is_zero(x) for x in t):
            return None
        return coeff


def solve_in_span(basis_rows, target):
    """Express `target` in the row span of `basis_rows`; None if outside.

    Returns coefficient list x with sum x_i * basis_rows[i] == target.
    """
    if not basis_rows:
        return None if any(not is_zero(t) for t in target) else []
    nc = len(target)
    nb = len(basis_rows)
    aug = [list(r) + [Fraction(1 if i == j else 0) for j in range(nb)]
           for i, r in enumerate(basis_rows)]
    # Row reduce [B | I]; then express target against reduced rows.
    red, pivots = rref(aug, nc + len(basis_rows))
    t = list(target)
    coeff = [Fraction(0)] * len(basis_rows)
    for row in red:
        p = next((c for c in range(nc) if not is_zero(row[c])), None)
        if p is None:
            continue
        f = t[p]
        if is_zero(f):
            continue
        for j in range(nc):
            t[j] = t[j] - f * row[j]
        for j in range(len(basis_rows)):
            coeff[j] = coeff[j] + f * row[nc + j]
    if any(not is_zero(x) for x in t):
        return None
    return coeff


def mat_inverse(a):
    n = len(a)
    zero = a[0][0] * 0
    one = zero + 1
    aug = [list(a[i]) + [one if j == i else zero for j in range(n)]
           for i in range(n)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def charpoly(a):
    """Characteristic polynomial det(xI - A), Faddeev-LeVerrier.

    Returns coefficient list [c0, c1, ..., cn] with cn = 1 (x^n coefficient).
    """
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = mat_identity(n)
    c = Fraction(1)
    am = a
    for k in range(1, n + 1):
        if k > 1:
            m = mat_add(am, mat_scale(mat_identity(n), c))
            am = mat_mul(a, m)
        else:
            am = mat_mul(a, m)
        c = -mat_trace(am) / k
        coeffs[n - k] = c
    return coeffs


def rational_roots(coeffs):
    """All rational roots (with multiplicity) of a Fraction-coefficient poly.

    Raises ValueError if the polynomial does not split over Q; the spectra
    this engine meets are all rational, so a failure signals a modeling bug.
    """
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("zero polynomial")
    roots = []
    # strip zero roots
    while cs[0] == 0:
        roots.append(Fraction(0))
        cs = cs[1:]
    while len(cs) > 1:
        den = 1
        for c in cs:
            den = den * Fraction(c).denominator // _gcd(den, Fraction(c).denominator)
        ics = [int(c * den) for c in cs]
        a0, an = abs(ics[0]), abs(ics[-1])
        found = None
        for p in _divisors(a0):
            for q in _divisors(an):
                for r in (Fraction(p, q), Fraction(-p, q)):
                    if _poly_eval(cs, r) == 0:
                        found = r
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            raise ValueError("polynomial has an irrational root: %s" % cs)
        roots.append(found)
        cs = _poly_deflate(cs, found)
        while cs[0] == 0 and len(cs) > 1:
            roots.append(Fraction(0))
            cs = cs[1:]
    return sorted(roots)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    if n == 0:
        return [0]
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def _poly_eval(cs, x):
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _poly_deflate(cs, r):
    """Divide polynomial by (x - r); assumes r is a root."""
    n = len(cs) - 1
    out = [Fraction(0)] * n
    acc = Fraction(0)
    for k in range(n, 0, -1):
        acc = cs[k] + acc * r
        out[k - 1] = acc
    return out


def _krylov_minpoly_roots(a, v):
    """Rational roots of the minimal polynomial of `a` on the Krylov space
    of v.  Raises if that polynomial does not split over Q."""
    n = len(a)
    vecs = [list(v)]
    while True:
        w = mat_vec(a, vecs[-1])
        # try to express w in span(vecs)
        rows = [list(u) for u in vecs]
        sol = solve_in_span(rows, w)
        if sol is not None:
            # monic relation: a^k v = sum sol_i a^i v
            coeffs = [-c for c in sol] + [Fraction(1)]
            return rational_roots(coeffs)
        vecs.append(w)
        if len(vecs) > n:
            raise ValueError("Krylov iteration exceeded dimension")


def eig_rational(a):
    """Exact eigendecomposition of a Fraction matrix that is diagonalizable
    with rational spectrum.  Returns [(eigenvalue, eigenvector basis)] sorted.

    Spectrum is collected from Krylov minimal polynomials of basis vectors
    (cheap for operators with few distinct eigenvalues, e.g. Casimirs)."""
    n = len(a)
    if n == 0:
        return []
    roots = set()
    covered = 0
    out = []
    for b in range(n):
        if covered == n:
            break
        v = [Fraction(1 if i == b else 0) for i in range(n)]
        newroots = set(_krylov_minpoly_roots(a, v)) - roots
        if not newroots:
            continue
        roots |= newroots
        for lam in newroots:
            rows = [[a[i][j] - (lam if i == j else 0) for j in range(n)]
                    for i in range(n)]
            vecs = kernel_basis(rows, n)
            out.append((lam, vecs))
            covered += len(vecs)
    if covered != n:
        raise ValueError("matrix is not diagonalizable over Q")
    return sorted(out, key=lambda t: t[0])


def int_sqrt_floor(n):
    return isqrt(n)
