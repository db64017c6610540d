"""Exact linear algebra over the rationals.

Matrices are lists of lists of Fraction; all routines are deterministic
(fixed pivot order) so downstream bases never depend on evaluation order.
"""

from fractions import Fraction

F0 = Fraction(0)
F1 = Fraction(1)


def zeros(nrows, ncols):
    return [[F0] * ncols for _ in range(nrows)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = F1
    return m


def copy_matrix(m):
    return [row[:] for row in m]


def shape(m):
    return (len(m), len(m[0]) if m else 0)


def mat_mul(a, b):
    n, k = len(a), len(b)
    p = len(b[0]) if b else 0
    out = zeros(n, p)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(p):
                    if bt[j]:
                        oi[j] += c * bt[j]
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_vec(a, v):
    return [sum((c * x for c, x in zip(row, v) if c), F0) for row in a]


def transpose(m):
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def is_zero_matrix(m):
    return all(all(x == 0 for x in row) for row in m)


def rref(m):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = copy_matrix(m)
    nrows, ncols = len(m), len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = F1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(m):
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m, ncols=None):
    """Basis (list of vectors) of the right nullspace of m."""
    if not m:
        return [] if not ncols else [
            [F1 if i == j else F0 for i in range(ncols)] for j in range(ncols)
        ]
    red, pivots = rref(m)
    ncols = len(m[0])
    piv_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in piv_set:
            continue
        v = [F0] * ncols
        v[free] = F1
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][free]
        basis.append(v)
    return basis


def row_space_basis(rows):
    """Independent subset echelonized; rows of the rref with zero rows dropped."""
    if not rows:
        return []
    red, pivots = rref(rows)
    return red[: len(pivots)]


def solve(a, b):
    """One solution x of a x = b, or None if inconsistent."""
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    aug = [a[i][:] + [b[i]] for i in range(nrows)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [F0] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def in_span(rows_rref, pivots, v):
    """Test membership of v in the row space given its rref and pivots."""
    v = v[:]
    for r, pc in enumerate(pivots):
        if v[pc]:
            f = v[pc]
            v = [x - f * y for x, y in zip(v, rows_rref[r])]
    return all(x == 0 for x in v)


def reduce_mod_rows(rows_rref, pivots, v):
    """Remainder of v after elimination against an rref row basis."""
    v = v[:]
    for r, pc in enumerate(pivots):
        if v[pc]:
            f = v[pc]
            v = [x - f * y for x, y in zip(v, rows_rref[r])]
    return v


def invert(m):
    """Inverse of a square matrix, or None if singular."""
    n = len(m)
    aug = [m[i][:] + [F1 if j == i else F0 for j in range(n)] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red[:n]]


class SparseRREF:
    """Incremental Gaussian elimination on sparse vectors {index: Fraction}.

    Pivot of a vector is its largest index, so elimination rewrites
    later-ordered coordinates in terms of earlier ones.  Used for path-class
    reduction where indices follow the (length, lex) path order.
    """

    def __init__(self):
        self.rows = {}  # pivot index -> normalized sparse row

    def reduce(self, vec):
        """Fully reduce a sparse vector against the current rows."""
        vec = {j: c for j, c in vec.items() if c}
        while True:
            target = None
            for j in sorted(vec, reverse=True):
                if j in self.rows:
                    target = j
                    break
            if target is None:
                return vec
            f = vec[target]
            for j, c in self.rows[target].items():
                nv = vec.get(j, F0) - f * c
                if nv:
                    vec[j] = nv
                else:
                    vec.pop(j, None)

    def add(self, vec):
        """Insert a vector; returns its pivot index or None if dependent."""
        vec = self.reduce(vec)
        if not vec:
            return None
        piv = max(vec)
        inv = F1 / vec[piv]
        row = {j: c * inv for j, c in vec.items()}
        # keep stored rows fully reduced against one another
        for p, r in list(self.rows.items()):
            if piv in r:
                f = r[piv]
                for j, c in row.items():
                    nv = r.get(j, F0) - f * c
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
        self.rows[piv] = row
        return piv
