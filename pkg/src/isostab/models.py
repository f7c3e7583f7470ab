"""Explicit finite-dimensional models with exact Gaussian-rational matrices.

A `Rep` carries the sparse action of a fixed ordered basis of the isotropy
algebra k (and of declared finite group elements, e.g. the deck generator)
on one concrete vector space; functors build tensor/exterior/symmetric
powers and duals.  A `PairModel` derives the restricted-root grading
k0 < k1 < k2 < k from explicit matrices for k and the maximal abelian
subspace a, and assembles the composite Casimir operator of the Gauss
image from its defining sum.
"""

from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .exactalg import QI, Q, is_zero, kernel_basis, rref, mat_inverse, eig_rational


def qi(x):
    return x if isinstance(x, QI) else QI(x)


class SparseOp:
    """Column-sparse linear operator on C^dim."""

    __slots__ = ("dim", "cols")

    def __init__(self, dim, cols=None):
        self.dim = dim
        self.cols = cols if cols is not None else {}

    @staticmethod
    def from_dense(mat):
        dim = len(mat)
        cols = {}
        for j in range(dim):
            entries = [(i, qi(mat[i][j])) for i in range(dim)
                       if not is_zero(mat[i][j])]
            if entries:
                cols[j] = entries
        return SparseOp(dim, cols)

    def apply(self, vec):
        out = {}
        for j, c in vec.items():
            col = self.cols.get(j)
            if not col:
                continue
            for i, a in col:
                v = out.get(i)
                v = a * c if v is None else v + a * c
                if is_zero(v):
                    out.pop(i, None)
                else:
                    out[i] = v
        return out

    def entry(self, i, j):
        for r, a in self.cols.get(j, ()):
            if r == i:
                return a
        return QI(0)


def vec_add(a, b, c=1):
    out = dict(a)
    for i, v in b.items():
        w = out.get(i)
        w = qi(c) * v if w is None else w + qi(c) * v
        if is_zero(w):
            out.pop(i, None)
        else:
            out[i] = w
    return out


def vec_scale(a, c):
    return {i: qi(c) * v for i, v in a.items() if not is_zero(qi(c) * v)}


class Rep:
    """A module with the sparse action of an ordered Lie-generator list and
    named group elements.  `weight_fn` optionally tags basis vectors with
    torus weights for slicing."""

    def __init__(self, dim, gens, group_elems=None, labels=None):
        self.dim = dim
        self.gens = gens            # list of SparseOp
        self.group_elems = group_elems or {}
        self.labels = labels or [str(i) for i in range(dim)]

    def weights_of_basis(self, torus_indices):
        """Weight coordinates of every basis vector under torus generators
        (which must act diagonally with purely imaginary eigenvalues)."""
        out = []
        for b in range(self.dim):
            w = []
            for t in torus_indices:
                col = self.gens[t].cols.get(b, [])
                val = QI(0)
                for i, a in col:
                    if i == b:
                        val = a
                    elif not is_zero(a):
                        raise ValueError("torus generator not diagonal on basis")
                if val.re != 0:
                    raise ValueError("torus eigenvalue not purely imaginary")
                w.append(val.im)
            out.append(tuple(w))
        return out


def tensor(r1, r2):
    """Tensor product; Lie action by derivation, group elements diagonally."""
    dim = r1.dim * r2.dim

    def idx(i, j):
        return i * r2.dim + j

    gens = []
    for g1, g2 in zip(r1.gens, r2.gens):
        cols = {}
        for j1 in range(r1.dim):
            c1 = g1.cols.get(j1, ())
            for j2 in range(r2.dim):
                ent = [(idx(i, j2), a) for i, a in c1]
                c2 = g2.cols.get(j2, ())
                ent += [(idx(j1, i), a) for i, a in c2]
                if ent:
                    merged = {}
                    for i, a in ent:
                        merged[i] = merged.get(i, QI(0)) + a
                    lst = [(i, a) for i, a in merged.items() if not is_zero(a)]
                    if lst:
                        cols[idx(j1, j2)] = lst
        gens.append(SparseOp(dim, cols))
    elems = {}
    for name in r1.group_elems:
        m1, m2 = r1.group_elems[name], r2.group_elems[name]
        cols = {}
        for j1, c1 in m1.cols.items():
            for j2, c2 in m2.cols.items():
                lst = [(idx(i1, i2), a1 * a2) for i1, a1 in c1 for i2, a2 in c2]
                cols[idx(j1, j2)] = lst
        elems[name] = SparseOp(dim, cols)
    labels = ["%s*%s" % (a, b) for a in r1.labels for b in r2.labels]
    return Rep(dim, gens, elems, labels)


def _subset_sign(sub, item):
    """Insert item into sorted tuple sub; return (new tuple, sign) or None."""
    if item in sub:
        return None
    pos = 0
    while pos < len(sub) and sub[pos] < item:
        pos += 1
    return sub[:pos] + (item,) + sub[pos:], (-1) ** pos


def exterior(r, k):
    basis = list(combinations(range(r.dim), k))
    index = {b: n for n, b in enumerate(basis)}
    dim = len(basis)
    gens = []
    for g in r.gens:
        cols = {}
        for n, b in enumerate(basis):
            ent = {}
            for pos, j in enumerate(b):
                rest = b[:pos] + b[pos + 1:]
                for i, a in g.cols.get(j, ()):
                    res = _subset_sign(rest, i)
                    if res is None:
                        continue
                    nb, sg = res
                    # sign from removing j at pos then inserting i
                    coef = a * ((-1) ** pos) * sg
                    m = index[nb]
                    ent[m] = ent.get(m, QI(0)) + coef
            lst = [(m, a) for m, a in ent.items() if not is_zero(a)]
            if lst:
                cols[n] = lst
        gens.append(SparseOp(dim, cols))
    elems = {}
    for name, g in r.group_elems.items():
        cols = {}
        for n, b in enumerate(basis):
            ent = {}
            # expand the wedge of images; appending a factor behind `sub`
            # costs a transposition past every larger element already there
            acc = {(): QI(1)}
            for j in b:
                nxt = {}
                for sub, c in acc.items():
                    for i, a in g.cols.get(j, ()):
                        res = _subset_sign(sub, i)
                        if res is None:
                            continue
                        nb, sg = res
                        pos = nb.index(i)
                        sign = (-1) ** (len(sub) - pos)
                        nxt[nb] = nxt.get(nb, QI(0)) + c * a * sign
                acc = nxt
            for sub, c in acc.items():
                if not is_zero(c):
                    ent[index[sub]] = ent.get(index[sub], QI(0)) + c
            lst = [(m, a) for m, a in ent.items() if not is_zero(a)]
            if lst:
                cols[n] = lst
        elems[name] = SparseOp(dim, cols)
    labels = ["^".join(r.labels[i] for i in b) for b in basis]
    return Rep(dim, gens, elems, labels)


def trivial_rep(ngens, group_names=(), group_values=None):
    gens = [SparseOp(1, {}) for _ in range(ngens)]
    elems = {}
    for name in group_names:
        v = QI(1) if group_values is None else qi(group_values[name])
        elems[name] = SparseOp(1, {0: [(0, v)]})
    return Rep(1, gens, elems, ["1"])


def character_rep(ngens, lie_values, group_values):
    """One-dimensional module: Lie generators act by the given scalars,
    group elements by the given unit scalars."""
    gens = []
    for v in lie_values:
        v = qi(v)
        gens.append(SparseOp(1, {0: [(0, v)]} if not is_zero(v) else {}))
    elems = {name: SparseOp(1, {0: [(0, qi(v))]})
             for name, v in group_values.items()}
    return Rep(1, gens, elems, ["chi"])


def dual(r):
    """Dual module: X -> -X^T, g -> (g^T)^{-1} = conjugate action."""
    gens = []
    for g in r.gens:
        cols = {}
        for j, c in g.cols.items():
            for i, a in c:
                cols.setdefault(i, []).append((j, -a))
        gens.append(SparseOp(r.dim, cols))
    elems = {}
    for name, g in r.group_elems.items():
        # need inverse transpose; build dense, invert
        dense = [[g.entry(i, j) for j in range(r.dim)] for i in range(r.dim)]
        inv = mat_inverse(dense)
        cols = {}
        for j in range(r.dim):
            lst = [(i, inv[j][i]) for i in range(r.dim) if not is_zero(inv[j][i])]
            if lst:
                cols[j] = lst
        elems[name] = SparseOp(r.dim, cols)
    return Rep(r.dim, gens, elems, ["%s*" % l for l in r.labels])


# ---------------------------------------------------------------------------
# fixed subspaces and operators on them

class Subspace:
    """Subspace given by an exact basis of sparse vectors."""

    def __init__(self, dim_ambient, basis):
        self.dim_ambient = dim_ambient
        self.basis = basis

    @property
    def dim(self):
        return len(self.basis)

    def dense(self):
        out = []
        for v in self.basis:
            row = [QI(0)] * self.dim_ambient
            for i, c in v.items():
                row[i] = c
            out.append(row)
        return out

    def coords_of(self, vec):
        """Coordinates of an ambient sparse vector in this basis; raises if
        the vector leaves the subspace."""
        if not hasattr(self, "_solver"):
            from .exactalg import SpanSolver
            self._solver = SpanSolver(self.dense())
        target = [QI(0)] * self.dim_ambient
        for i, c in vec.items():
            target[i] = c
        sol = self._solver.coords(target)
        if sol is None:
            raise ValueError("vector not inside subspace")
        return sol

    def operator_matrix(self, apply_fn):
        """Matrix of a linear map (given as sparse-vector function) that
        preserves this subspace, in this basis."""
        cols = [self.coords_of(apply_fn(v)) for v in self.basis]
        n = self.dim
        return [[cols[j][i] for j in range(n)] for i in range(n)]


def combo_op(rep, coefs):
    """Assemble the SparseOp of a generator combination."""
    cols = {}
    for i, c in enumerate(coefs):
        if not c:
            continue
        for j, ent in rep.gens[i].cols.items():
            cur = cols.setdefault(j, {})
            for r, a in ent:
                cur[r] = cur.get(r, QI(0)) + a * c
    out = {}
    for j, cur in cols.items():
        lst = [(r, a) for r, a in cur.items() if not is_zero(a)]
        if lst:
            out[j] = lst
    return SparseOp(rep.dim, out)


def joint_kernel(rep, combos, space=None, extra_ops=()):
    """Common kernel of the given Lie-generator combinations (coefficient
    vectors over rep.gens) and extra SparseOps, inside `space`.

    Combinations that act diagonally on the standard basis are used as a
    cheap slice before any elimination."""
    if space is None:
        # pre-slice by diagonal combinations
        diag_ok = [True] * rep.dim
        rest = []
        for cv in combos:
            op = combo_op(rep, cv)
            diagonal = all(len(ent) == 1 and ent[0][0] == j
                           for j, ent in op.cols.items())
            if diagonal:
                for j, ent in op.cols.items():
                    diag_ok[j] = False
            else:
                rest.append(cv)
        basis = [{i: QI(1)} for i in range(rep.dim) if diag_ok[i]]
        return joint_kernel(rep, rest, space=basis, extra_ops=extra_ops)
    basis = list(space)

    def cut(apply_fn):
        nonlocal basis
        if not basis:
            return
        rows = [apply_fn(v) for v in basis]
        support = sorted({i for img in rows for i in img})
        if not support:
            return
        mat = [[rows[r].get(i, QI(0)) for r in range(len(basis))]
               for i in support]
        ker = kernel_basis(mat, len(basis))
        newb = []
        for coefs in ker:
            v = {}
            for c, b in zip(coefs, basis):
                if not is_zero(c):
                    v = vec_add(v, b, c)
            newb.append(v)
        basis = newb

    for cv in combos:
        cut(lambda v, cv=cv: apply_combo(rep, cv, v))
    for op in extra_ops:
        cut(lambda v, op=op: op.apply(v))
    return basis


def fixed_point_kernel_of_element(rep, name, space):
    """Intersect `space` with the fixed space of a group element."""
    g = rep.group_elems[name]
    basis = list(space)
    if not basis:
        return basis
    rows = []
    for v in basis:
        img = vec_add(g.apply(v), v, -1)
        rows.append(img)
    support = sorted({i for img in rows for i in img})
    if not support:
        return basis
    mat = [[rows[r].get(i, QI(0)) for r in range(len(basis))] for i in support]
    ker = kernel_basis(mat, len(basis))
    out = []
    for coefs in ker:
        v = {}
        for c, b in zip(coefs, basis):
            if not is_zero(c):
                v = vec_add(v, b, c)
        out.append(v)
    return out


def weight_zero_slice(rep, torus_ops, functional_rows):
    """Basis vectors annihilated by the given rational combinations of torus
    generators.  `functional_rows[k]` gives coefficients over `torus_ops`."""
    weights = rep.weights_of_basis(torus_ops)
    keep = []
    for b in range(rep.dim):
        w = weights[b]
        ok = True
        for row in functional_rows:
            if sum(r * x for r, x in zip(row, w)) != 0:
                ok = False
                break
        if ok:
            keep.append({b: QI(1)})
    return keep


def apply_combo(rep, coefs, vec):
    """Apply the linear combination sum_i coefs[i] * gens[i] to a vector."""
    out = {}
    for i, c in enumerate(coefs):
        if c:
            out = vec_add(out, rep.gens[i].apply(vec), c)
    return out


class BlockCasimir:
    """sum over blocks of sum_{a,b} M[a][b] X_a X_b, X given as coefficient
    vectors over the Rep's generator list."""

    def __init__(self, rep, blocks):
        self.rep = rep
        self.blocks = blocks

    def apply(self, vec):
        out = {}
        for coefvecs, mat in self.blocks:
            ys = [apply_combo(self.rep, cv, vec) for cv in coefvecs]
            n = len(coefvecs)
            for a in range(n):
                u = {}
                for b in range(n):
                    if mat[a][b]:
                        u = vec_add(u, ys[b], mat[a][b])
                if u:
                    out = vec_add(out, apply_combo(self.rep, coefvecs[a], u))
        return out


def real_flatten(mat):
    """Flatten a QI matrix to a rational vector (re parts then im parts)."""
    out = []
    for row in mat:
        for x in row:
            x = qi(x)
            out.append(x.re)
    for row in mat:
        for x in row:
            x = qi(x)
            out.append(x.im)
    return out


def mat_comm(a, b):
    from .exactalg import mat_mul, mat_add
    return mat_add(mat_mul(a, b), mat_mul(b, a), -1)


class PairModel:
    """Symmetric-pair data (U, K) given by explicit matrices in a faithful
    representation of u: a basis of k, a basis of the maximal abelian
    subspace a in p, and the trace form normalization.

    Derives the restricted-root grading of k, the stage subalgebras, the
    multiplicities m(gamma), and the composite Casimir coefficient data.
    """

    def __init__(self, k_basis, a_basis, form_scale=Fraction(1)):
        self.k_basis = k_basis          # list of dense QI matrices
        self.a_basis = a_basis          # [H1, H2] dense QI matrices
        self.form_scale = Fraction(form_scale)  # <X,Y> = -scale * Re tr(XY)
        self._grade()

    def ip(self, x, y):
        from .exactalg import mat_mul
        n = len(x)
        tr = QI(0)
        for i in range(n):
            for k in range(n):
                if not is_zero(x[i][k]) and not is_zero(y[k][i]):
                    tr = tr + qi(x[i][k]) * qi(y[k][i])
        if tr.im != 0:
            raise ValueError("trace form not real on k")
        return -self.form_scale * tr.re

    def _grade(self):
        ks = self.k_basis
        nk = len(ks)

        def sparsify(m):
            return {(i, j): qi(m[i][j]) for i in range(len(m))
                    for j in range(len(m)) if not is_zero(m[i][j])}

        def smul(a, b):
            cols = {}
            for (i, j), v in b.items():
                cols.setdefault(i, []).append((j, v))
            out = {}
            for (i, k), va in a.items():
                for j, vb in cols.get(k, ()):
                    key = (i, j)
                    cur = out.get(key)
                    cur = va * vb if cur is None else cur + va * vb
                    if is_zero(cur):
                        out.pop(key, None)
                    else:
                        out[key] = cur
            return out

        def scomm(a, b):
            out = dict(smul(a, b))
            for key, v in smul(b, a).items():
                cur = out.get(key, QI(0)) - v
                if is_zero(cur):
                    out.pop(key, None)
                else:
                    out[key] = cur
            return out

        ks_sp = [sparsify(m) for m in ks]
        a_sp = [sparsify(m) for m in self.a_basis]
        # flatten sparse matrices over the union support (re and im parts)
        support = sorted({key for m in ks_sp for key in m})
        pos = {key: n for n, key in enumerate(support)}
        ns = len(support)

        def flatten(msp):
            row = [Fraction(0)] * (2 * ns)
            for key, v in msp.items():
                if key not in pos:
                    raise ValueError("matrix is outside span(k) support")
                row[pos[key]] = v.re
                row[ns + pos[key]] = v.im
            return row

        from .exactalg import SpanSolver
        solver = SpanSolver([flatten(m) for m in ks_sp])

        def coords(msp):
            sol = solver.coords(flatten(msp))
            if sol is None:
                raise ValueError("matrix is outside span(k)")
            return sol

        # (ad H)^2 on k for both H's
        ad2 = []
        for H in a_sp:
            rows = []
            for X in ks_sp:
                Y = scomm(H, scomm(H, X))
                rows.append(coords(Y))
            # operator matrix: columns indexed by basis
            ad2.append([[rows[j][i] for j in range(nk)] for i in range(nk)])
        # joint eigensplit: eigenvalues are -gamma(H)^2 <= 0
        e1 = eig_rational(ad2[0])
        pieces = []
        for lam1, vecs1 in e1:
            # restrict second operator to this eigenspace
            sub = Subspace(nk, [dict((i, QI(c)) for i, c in enumerate(v) if c)
                                for v in vecs1])
            m2 = sub.operator_matrix(
                lambda vec: {i: sum((QI(ad2[1][i][j]) * vec.get(j, QI(0))
                                     for j in range(nk)), QI(0))
                             for i in range(nk)})
            m2q = [[x.re if isinstance(x, QI) else Fraction(x) for x in row]
                   for row in m2]
            for lam2, vecs2 in eig_rational(m2q):
                basis = []
                for coefs in vecs2:
                    acc = [Fraction(0)] * nk
                    for c, bvec in zip(coefs, sub.basis):
                        if c:
                            for i, bc in bvec.items():
                                acc[i] += c * (bc.re if isinstance(bc, QI) else bc)
                    basis.append(acc)
                pieces.append(((lam1, lam2), basis))
        # gamma(H_i)^2 = -eigenvalue; store coefficient vectors over k_basis
        self.graded = []
        for (l1, l2), basis in pieces:
            g2 = (-l1, -l2)
            self.graded.append((g2, [list(c) for c in basis]))
        self.graded.sort(key=lambda t: t[0])

    def matrix_of(self, coefs):
        ks = self.k_basis
        n = len(ks[0])
        acc = [[QI(0)] * n for _ in range(n)]
        for c, M in zip(coefs, ks):
            if c == 0:
                continue
            for i in range(n):
                for j in range(n):
                    if not is_zero(M[i][j]):
                        acc[i][j] = acc[i][j] + qi(M[i][j]) * c
        return acc

    def k0(self):
        """Coefficient vectors (over k_basis) spanning the centralizer of a."""
        for g2, coefs in self.graded:
            if g2 == (0, 0):
                return coefs
        return []

    def root_pieces(self):
        return [(g2, coefs) for g2, coefs in self.graded if g2 != (0, 0)]

    def _kgram(self):
        if not hasattr(self, "_kg"):
            ks = self.k_basis
            self._kg = [[self.ip(x, y) for y in ks] for x in ks]
        return self._kg

    def ip_coefs(self, a, b):
        kg = self._kgram()
        n = len(a)
        return sum(a[i] * kg[i][j] * b[j]
                   for i in range(n) if a[i] for j in range(n) if b[j])

    def _pieces_with_norms(self):
        G = [[self.ip(x, y) for y in self.a_basis] for x in self.a_basis]
        if G[0][1] != 0 or G[1][0] != 0:
            raise ValueError("a-basis must be orthogonal")
        out = []
        for (s1, s2), coefs in self.root_pieces():
            norm = s1 / G[0][0] + s2 / G[1][1]
            out.append(((s1, s2), coefs, norm))
        return out

    def restricted_root_norms(self):
        """[((gamma(H1)^2, gamma(H2)^2), multiplicity, |gamma|^2_u)]."""
        return [(s, len(coefs), norm)
                for s, coefs, norm in self._pieces_with_norms()]

    def total_root_multiplicity(self):
        return sum(m for _, m, _ in self.restricted_root_norms())

    def gamma0_sq(self):
        return max(norm for _, _, norm in self.restricted_root_norms())

    def composite_casimir_blocks(self):
        """Blocks (coefvecs, coefmatrix) such that the Gauss-image Casimir is
        C_L = sum over blocks sum_{a,b} coefmatrix[a][b] X_a X_b, where the
        X are the coefvec combinations of the k-basis generators."""
        out = []
        for _, coefs, norm in self._pieces_with_norms():
            G = [[self.ip_coefs(x, y) for y in coefs] for x in coefs]
            inv = mat_inverse(G)
            n = len(coefs)
            mat = [[inv[i][j] / norm for j in range(n)] for i in range(n)]
            out.append((coefs, mat))
        return out

    def subalg_casimir_blocks(self, which):
        """Casimir blocks (no 1/|gamma|^2 weights) for a stage subalgebra:
        which = 'full' (all root pieces), 'long' (ratio-1 pieces), or
        'long+half' (ratio 1 and 1/2)."""
        g0 = self.gamma0_sq()
        out = []
        for _, coefs, norm in self._pieces_with_norms():
            ratio = norm / g0
            if which == "long" and ratio != 1:
                continue
            if which == "long+half" and ratio not in (Fraction(1), Fraction(1, 2)):
                continue
            G = [[self.ip_coefs(x, y) for y in coefs] for x in coefs]
            out.append((coefs, mat_inverse(G)))
        return out
