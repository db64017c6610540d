"""Representations of bound quiver algebras and the homological toolkit.

A representation assigns a rational vector space to each vertex and a matrix
to each arrow; the matrix of an arrow u -> w has shape dims[w] x dims[u].
Morphism blocks follow the same covariant convention.
"""

import math
from fractions import Fraction

from . import linalg
from .errors import AlgebraMismatch, HgaError, NotGorensteinVerified, UnknownVertex
from .linalg import F0, F1


def mmul(a, b, bcols):
    """Matrix product tolerant of zero-dimensional factors."""
    if not a:
        return []
    if not b:
        return [[F0] * bcols for _ in a]
    return linalg.mat_mul(a, b)


class Representation:
    def __init__(self, algebra, dims, maps, check=True):
        self.algebra = algebra
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.vertices}
        quiver = algebra.presentation.quiver
        self.maps = {}
        for ar in quiver.arrows:
            m = maps.get(ar.name)
            if m is None:
                m = [[F0] * self.dims[ar.source] for _ in range(self.dims[ar.target])]
            self.maps[ar.name] = [[Fraction(x) for x in row] for row in m]
        if check:
            self._check()

    def _check(self):
        quiver = self.algebra.presentation.quiver
        for ar in quiver.arrows:
            m = self.maps[ar.name]
            if len(m) != self.dims[ar.target] or any(
                len(row) != self.dims[ar.source] for row in m
            ):
                raise ValueError(f"matrix shape mismatch at arrow {ar.name}")
        for rel in self.algebra.presentation.relations:
            src = quiver.path_source(rel.terms[0][1])
            tgt = quiver.path_target(rel.terms[0][1])
            total = [[F0] * self.dims[src] for _ in range(self.dims[tgt])]
            for coef, path in rel.terms:
                pm = self.path_matrix(path)
                total = linalg.mat_add(total, linalg.mat_scale(coef, pm)) \
                    if total else pm
            if not all(all(x == 0 for x in row) for row in total):
                raise ValueError("representation does not satisfy the relations")

    @property
    def total_dim(self):
        return sum(self.dims.values())

    def dim_vector(self):
        return tuple(self.dims[v] for v in self.algebra.vertices)

    def is_zero(self):
        return self.total_dim == 0

    def path_matrix(self, path):
        """Matrix of a path of arrow names (application order)."""
        quiver = self.algebra.presentation.quiver
        mat = self.maps[path[0]]
        for name in path[1:]:
            mat = mmul(self.maps[name], mat,
                       self.dims[quiver.path_source(path)])
        return mat

    def basis_matrix(self, i):
        """Matrix of the i-th algebra basis element on this representation."""
        alg = self.algebra
        if i < len(alg.vertices):
            n = self.dims[alg.vertices[i]]
            return linalg.identity(n)
        return self.path_matrix(alg.basis_labels[i])

    def element_matrix(self, elem, src, tgt):
        """Matrix of a sparse algebra element with the given endpoints."""
        alg = self.algebra
        total = [[F0] * self.dims[src] for _ in range(self.dims[tgt])]
        for i, c in elem.items():
            if alg.basis_src[i] != src or alg.basis_tgt[i] != tgt:
                raise ValueError("element not homogeneous for the endpoints")
            total = linalg.mat_add(total, linalg.mat_scale(c, self.basis_matrix(i)))
        return total

    def __repr__(self):
        return f"Representation(dims={self.dims})"


class Morphism:
    def __init__(self, source, target, blocks, check=True):
        if source.algebra is not target.algebra:
            raise AlgebraMismatch("morphism between different algebras")
        self.source = source
        self.target = target
        self.blocks = {}
        for v in source.algebra.vertices:
            b = blocks.get(v)
            if b is None:
                b = [[F0] * source.dims[v] for _ in range(target.dims[v])]
            self.blocks[v] = [[Fraction(x) for x in row] for row in b]
        if check:
            self._check()

    def _check(self):
        quiver = self.source.algebra.presentation.quiver
        for ar in quiver.arrows:
            u, w = ar.source, ar.target
            left = mmul(self.target.maps[ar.name], self.blocks[u],
                        self.source.dims[u])
            right = mmul(self.blocks[w], self.source.maps[ar.name],
                         self.source.dims[u])
            if left != right:
                raise ValueError(f"blocks do not commute with arrow {ar.name}")

    def compose(self, other):
        """self after other (other applied first)."""
        if other.target is not self.source:
            if other.target.dims != self.source.dims:
                raise AlgebraMismatch("morphisms not composable")
        blocks = {
            v: mmul(self.blocks[v], other.blocks[v], other.source.dims[v])
            for v in self.source.algebra.vertices
        }
        return Morphism(other.source, self.target, blocks, check=False)

    def add(self, other):
        blocks = {
            v: linalg.mat_add(self.blocks[v], other.blocks[v])
            for v in self.blocks
        }
        return Morphism(self.source, self.target, blocks, check=False)

    def scale(self, c):
        blocks = {v: linalg.mat_scale(Fraction(c), b) for v, b in self.blocks.items()}
        return Morphism(self.source, self.target, blocks, check=False)

    def is_zero(self):
        return all(
            all(all(x == 0 for x in row) for row in b) for b in self.blocks.values()
        )

    def is_iso(self):
        return all(
            self.source.dims[v] == self.target.dims[v]
            and (self.source.dims[v] == 0 or linalg.invert(self.blocks[v]) is not None)
            for v in self.blocks
        )

    def flatten(self):
        out = []
        for v in self.source.algebra.vertices:
            for row in self.blocks[v]:
                out.extend(row)
        return out

    def __repr__(self):
        return f"Morphism({self.source.dims} -> {self.target.dims})"


def zero_representation(algebra):
    return Representation(algebra, {}, {}, check=False)


def zero_morphism(source, target):
    return Morphism(source, target, {}, check=False)


def identity_morphism(m):
    blocks = {v: linalg.identity(m.dims[v]) for v in m.algebra.vertices}
    return Morphism(m, m, blocks, check=False)


def _proj_cache(alg):
    if not hasattr(alg, "_projectives"):
        alg._projectives = {}
    return alg._projectives


def projective(alg, v):
    """Indecomposable projective at a vertex: basis elements with source v."""
    if v not in alg.e_index:
        raise UnknownVertex(f"unknown vertex {v!r}")
    cache = _proj_cache(alg)
    if v in cache:
        return cache[v]
    basis_ids = {w: [] for w in alg.vertices}
    for i in range(alg.dim):
        if alg.basis_src[i] == v:
            basis_ids[alg.basis_tgt[i]].append(i)
    dims = {w: len(basis_ids[w]) for w in alg.vertices}
    pos = {}
    for w in alg.vertices:
        for k, i in enumerate(basis_ids[w]):
            pos[i] = k
    maps = {}
    for ar in alg.presentation.quiver.arrows:
        u, w = ar.source, ar.target
        mat = [[F0] * dims[u] for _ in range(dims[w])]
        ai = alg.arrow_class[ar.name]
        for col, b in enumerate(basis_ids[u]):
            prod = alg.mult_basis(ai, b)
            for t, c in prod.items():
                mat[pos[t]][col] = c
        maps[ar.name] = mat
    rep = Representation(alg, dims, maps, check=False)
    rep.proj_vertex = v
    rep.proj_basis_ids = basis_ids
    rep.proj_pos = pos
    rep.gen_pos = pos[alg.e_index[v]]
    cache[v] = rep
    return rep


def simple(alg, v):
    if v not in alg.e_index:
        raise UnknownVertex(f"unknown vertex {v!r}")
    return Representation(alg, {v: 1}, {}, check=False)


def dual(m):
    """D: representations of A to representations of the opposite algebra."""
    op = m.algebra.opposite()
    maps = {ar.name: linalg.transpose(m.maps[ar.name])
            for ar in m.algebra.presentation.quiver.arrows}
    return Representation(op, dict(m.dims), maps, check=False)


def dual_morphism(f):
    """D on morphisms; contravariant."""
    dm, dn = dual(f.target), dual(f.source)
    blocks = {v: linalg.transpose(f.blocks[v]) for v in f.blocks}
    return Morphism(dm, dn, blocks, check=False)


def injective(alg, v):
    return dual(projective(alg.opposite(), v))


def direct_sum(reps):
    """Direct sum with inclusion and projection morphisms per summand."""
    if not reps:
        raise ValueError("empty direct sum; use zero_representation")
    alg = reps[0].algebra
    for r in reps:
        if r.algebra is not alg:
            raise AlgebraMismatch("direct sum across algebras")
    dims = {v: sum(r.dims[v] for r in reps) for v in alg.vertices}
    offsets = []
    run = {v: 0 for v in alg.vertices}
    for r in reps:
        offsets.append(dict(run))
        for v in alg.vertices:
            run[v] += r.dims[v]
    maps = {}
    for ar in alg.presentation.quiver.arrows:
        u, w = ar.source, ar.target
        mat = [[F0] * dims[u] for _ in range(dims[w])]
        for r, off in zip(reps, offsets):
            block = r.maps[ar.name]
            for i, row in enumerate(block):
                for j, x in enumerate(row):
                    if x:
                        mat[off[w] + i][off[u] + j] = x
        maps[ar.name] = mat
    total = Representation(alg, dims, maps, check=False)
    incls, projs = [], []
    for r, off in zip(reps, offsets):
        inc = {}
        prj = {}
        for v in alg.vertices:
            im = [[F0] * r.dims[v] for _ in range(dims[v])]
            pm = [[F0] * dims[v] for _ in range(r.dims[v])]
            for k in range(r.dims[v]):
                im[off[v] + k][k] = F1
                pm[k][off[v] + k] = F1
            inc[v] = im
            prj[v] = pm
        incls.append(Morphism(r, total, inc, check=False))
        projs.append(Morphism(total, r, prj, check=False))
    return total, incls, projs


def hom_basis(m, n):
    """Basis of Hom(m, n) as a list of morphisms; deterministic order."""
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("Hom across different algebras")
    alg = m.algebra
    var_index = {}
    for v in alg.vertices:
        for i in range(n.dims[v]):
            for j in range(m.dims[v]):
                var_index[(v, i, j)] = len(var_index)
    nvars = len(var_index)
    rows = []
    for ar in alg.presentation.quiver.arrows:
        u, w = ar.source, ar.target
        na, ma = n.maps[ar.name], m.maps[ar.name]
        for i in range(n.dims[w]):
            for j in range(m.dims[u]):
                row = [F0] * nvars
                for k in range(n.dims[u]):
                    if na[i][k]:
                        row[var_index[(u, k, j)]] += na[i][k]
                for l in range(m.dims[w]):
                    if ma[l][j]:
                        row[var_index[(w, i, l)]] -= ma[l][j]
                if any(row):
                    rows.append(row)
    basis = []
    for sol in linalg.nullspace(rows, ncols=nvars):
        blocks = {
            v: [[sol[var_index[(v, i, j)]] for j in range(m.dims[v])]
                for i in range(n.dims[v])]
            for v in alg.vertices
        }
        basis.append(Morphism(m, n, blocks, check=False))
    return basis


def hom_dim(m, n):
    return len(hom_basis(m, n))


def kernel(f):
    """Kernel subrepresentation with its inclusion."""
    m = f.source
    alg = m.algebra
    kbasis = {}
    for v in alg.vertices:
        kbasis[v] = linalg.nullspace(f.blocks[v], ncols=m.dims[v])
    dims = {v: len(kbasis[v]) for v in alg.vertices}
    incl_blocks = {
        v: linalg.transpose(kbasis[v]) if kbasis[v] else
        [[] for _ in range(m.dims[v])]
        for v in alg.vertices
    }
    maps = {}
    for ar in alg.presentation.quiver.arrows:
        u, w = ar.source, ar.target
        mat = [[F0] * dims[u] for _ in range(dims[w])]
        bw = incl_blocks[w]
        for col, kv in enumerate(kbasis[u]):
            img = linalg.mat_vec(m.maps[ar.name], kv) if m.maps[ar.name] else []
            sol = linalg.solve(bw, img) if dims[w] else (
                None if any(img) else [])
            if sol is None:
                raise HgaError("kernel is not a subrepresentation")
            for row, x in enumerate(sol):
                mat[row][col] = x
        maps[ar.name] = mat
    k = Representation(alg, dims, maps, check=False)
    incl = Morphism(k, m, incl_blocks, check=False)
    return k, incl


def cokernel(f):
    """Cokernel with projection; the projection records coordinate sections."""
    n = f.target
    alg = n.algebra
    proj_blocks = {}
    section = {}
    for v in alg.vertices:
        img_rows = linalg.transpose(f.blocks[v]) if f.blocks[v] else []
        red, pivots = linalg.rref(img_rows) if img_rows else ([], [])
        piv_set = set(pivots)
        free = [k for k in range(n.dims[v]) if k not in piv_set]
        section[v] = free
        pm = []
        for k in free:
            e = [F0] * n.dims[v]
            e[k] = F1
            # row of the projection: class coordinates of each unit vector
            pm.append(e)
        # projection of a unit vector: reduce then read free coords
        cols = []
        for k in range(n.dims[v]):
            e = [F0] * n.dims[v]
            e[k] = F1
            r = linalg.reduce_mod_rows(red[: len(pivots)], pivots, e)
            cols.append([r[x] for x in free])
        proj_blocks[v] = linalg.transpose(cols) if cols else [
            [] for _ in free]
        if not cols and free:
            proj_blocks[v] = [[] for _ in free]
    dims = {v: len(section[v]) for v in alg.vertices}
    maps = {}
    for ar in alg.presentation.quiver.arrows:
        u, w = ar.source, ar.target
        mat = [[F0] * dims[u] for _ in range(dims[w])]
        for col, k in enumerate(section[u]):
            e = [F0] * n.dims[u]
            e[k] = F1
            img = linalg.mat_vec(n.maps[ar.name], e) if n.maps[ar.name] else []
            cls = linalg.mat_vec(proj_blocks[w], img) if dims[w] else []
            for row, x in enumerate(cls):
                mat[row][col] = x
        maps[ar.name] = mat
    c = Representation(alg, dims, maps, check=False)
    proj = Morphism(n, c, proj_blocks, check=False)
    proj.section_coords = section
    return c, proj


def sub_representation(n, vectors):
    """Subrepresentation spanned by given vectors per vertex, with inclusion."""
    alg = n.algebra
    basis = {}
    for v in alg.vertices:
        rows = [vec for vec in vectors.get(v, []) if any(vec)]
        basis[v] = linalg.row_space_basis(rows) if rows else []
    # close under arrows
    changed = True
    while changed:
        changed = False
        for ar in alg.presentation.quiver.arrows:
            u, w = ar.source, ar.target
            for vec in basis[u]:
                img = linalg.mat_vec(n.maps[ar.name], vec) if n.maps[ar.name] else []
                if img and any(img):
                    new = linalg.row_space_basis(basis[w] + [img])
                    if len(new) != len(basis[w]):
                        basis[w] = new
                        changed = True
    dims = {v: len(basis[v]) for v in alg.vertices}
    incl_blocks = {
        v: linalg.transpose(basis[v]) if basis[v] else
        [[] for _ in range(n.dims[v])]
        for v in alg.vertices
    }
    maps = {}
    for ar in alg.presentation.quiver.arrows:
        u, w = ar.source, ar.target
        mat = [[F0] * dims[u] for _ in range(dims[w])]
        for col, vec in enumerate(basis[u]):
            img = linalg.mat_vec(n.maps[ar.name], vec) if n.maps[ar.name] else []
            sol = linalg.solve(incl_blocks[w], img) if dims[w] else (
                None if any(img) else [])
            if sol is None:
                raise HgaError("span is not arrow-closed")
            for row, x in enumerate(sol):
                mat[row][col] = x
        maps[ar.name] = mat
    s = Representation(alg, dims, maps, check=False)
    return s, Morphism(s, n, incl_blocks, check=False)


def image(f):
    vectors = {}
    for v in f.target.algebra.vertices:
        vectors[v] = linalg.transpose(f.blocks[v]) if f.blocks[v] else []
    return sub_representation(f.target, vectors)


def radical_vectors(m):
    """Spanning vectors of rad M per vertex (images of all arrows)."""
    alg = m.algebra
    out = {v: [] for v in alg.vertices}
    for ar in alg.presentation.quiver.arrows:
        cols = linalg.transpose(m.maps[ar.name]) if m.maps[ar.name] else []
        out[ar.target].extend(col for col in cols if any(col))
    return out


def top_dims(m):
    rad = radical_vectors(m)
    return {
        v: m.dims[v] - len(linalg.row_space_basis(rad[v]) if rad[v] else [])
        for v in m.algebra.vertices
    }


def projective_cover(m):
    """Minimal projective cover; returns (P, epi, summand vertex list)."""
    alg = m.algebra
    rad = radical_vectors(m)
    summands = []
    lifts = []
    for v in alg.vertices:
        piv = set(linalg.rref(rad[v])[1]) if rad[v] else set()
        for k in range(m.dims[v]):
            if k not in piv:
                e = [F0] * m.dims[v]
                e[k] = F1
                summands.append(v)
                lifts.append((v, e))
    if not summands:
        p = zero_representation(alg)
        return p, Morphism(p, m, {}, check=False), []
    ps = [projective(alg, v) for v in summands]
    total, incls, _ = direct_sum(ps)
    blocks = {w: [[F0] * total.dims[w] for _ in range(m.dims[w])]
              for w in alg.vertices}
    off = {w: 0 for w in alg.vertices}
    for p, (v, lift) in zip(ps, lifts):
        for w in alg.vertices:
            for col, b in enumerate(p.proj_basis_ids[w]):
                mat = m.basis_matrix(b)
                vec = linalg.mat_vec(mat, lift) if mat else []
                for row, x in enumerate(vec):
                    blocks[w][row][off[w] + col] = x
        for w in alg.vertices:
            off[w] += p.dims[w]
    epi = Morphism(total, m, blocks, check=False)
    return total, epi, summands


def syzygy(m):
    _, epi, _ = projective_cover(m)
    k, _ = kernel(epi)
    return k


def minimal_resolution(m, length):
    """Terms and differentials of a minimal projective resolution.

    Returns (terms, diffs, summand_lists, finished) with diffs[0]: P0 -> m
    and diffs[i]: P_i -> P_{i-1}; stops early once a kernel vanishes.
    The partial resolution is cached on the representation and extended
    on demand.
    """
    state = getattr(m, "_res_cache", None)
    if state is None:
        state = {
            "terms": [], "diffs": [], "summands": [],
            "finished": False, "current": m, "incl": None,
        }
        m._res_cache = state
    while not state["finished"] and len(state["terms"]) < length + 1:
        p, epi, summands = projective_cover(state["current"])
        d = epi if state["incl"] is None else state["incl"].compose(epi)
        state["terms"].append(p)
        state["diffs"].append(d)
        state["summands"].append(summands)
        k, ki = kernel(epi)
        if k.is_zero():
            state["finished"] = True
        else:
            state["current"], state["incl"] = k, ki
    n = length + 1
    return (
        state["terms"][:n], state["diffs"][:n], state["summands"][:n],
        state["finished"] and len(state["terms"]) <= n,
    )


def is_projective(m):
    if m.is_zero():
        return True
    _, epi, _ = projective_cover(m)
    k, _ = kernel(epi)
    return k.is_zero()


def is_injective(m):
    return is_projective(dual(m))


def _hom_flat_rank(mors):
    rows = [f.flatten() for f in mors]
    rows = [r for r in rows if any(r)]
    return len(linalg.row_space_basis(rows)) if rows else 0


def ext_dim(m, n, i):
    """dim Ext^i(m, n) from a minimal projective resolution of m."""
    if i < 0:
        raise ValueError("negative cohomological degree")
    if i == 0:
        return hom_dim(m, n)
    terms, diffs, _, finished = minimal_resolution(m, i + 1)
    if len(terms) <= i:
        return 0
    hom_i = hom_basis(terms[i], n)
    if len(terms) > i + 1:
        delta_i = [f.compose(diffs[i + 1]) for f in hom_i]
        rank_i = _hom_flat_rank(delta_i)
    else:
        rank_i = 0
    hom_prev = hom_basis(terms[i - 1], n)
    delta_prev = [f.compose(diffs[i]) for f in hom_prev]
    rank_prev = _hom_flat_rank(delta_prev)
    return len(hom_i) - rank_i - rank_prev


def proj_dim(m, cap=None):
    """Projective dimension; math.inf on syzygy periodicity."""
    if m.is_zero():
        return 0
    alg = m.algebra
    if cap is None:
        cap = 3 * alg.dim + 8
    seen = []
    current = m
    for step in range(cap):
        p, epi, _ = projective_cover(current)
        k, _ = kernel(epi)
        if k.is_zero():
            return step
        for old in seen:
            if old.dim_vector() == k.dim_vector() and is_isomorphic(old, k):
                return math.inf
        seen.append(k)
        current = k
    raise HgaError("projective dimension undecided within the step cap")


def inj_dim(m, cap=None):
    return proj_dim(dual(m), cap=cap)


def is_isomorphic(m, n):
    """Isomorphism test: dimension checks, then invertible Hom combinations."""
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("isomorphism test across algebras")
    if m.dim_vector() != n.dim_vector():
        return False
    if m.is_zero():
        return True
    basis = hom_basis(m, n)
    if not basis:
        return False
    back = hom_basis(n, m)
    if len(back) != len(basis):
        return False
    for f in basis:
        if f.is_iso():
            return True
    import random

    rng = random.Random(0)
    for trial in range(120):
        combo = basis[0].scale(0)
        for f in basis:
            combo = combo.add(f.scale(rng.randint(-6, 6)))
        if combo.is_iso():
            return True
    return False


def factor_through(f, g):
    """Morphism h with f = g . h, if one exists (else None).

    f: X -> N, g: M -> N, h: X -> M.
    """
    x, n, mrep = f.source, f.target, g.source
    alg = x.algebra
    var_index = {}
    for v in alg.vertices:
        for i in range(mrep.dims[v]):
            for j in range(x.dims[v]):
                var_index[(v, i, j)] = len(var_index)
    nvars = len(var_index)
    rows, rhs = [], []
    # commuting with arrows
    for ar in alg.presentation.quiver.arrows:
        u, w = ar.source, ar.target
        ma, xa = mrep.maps[ar.name], x.maps[ar.name]
        for i in range(mrep.dims[w]):
            for j in range(x.dims[u]):
                row = [F0] * nvars
                for k in range(mrep.dims[u]):
                    if ma[i][k]:
                        row[var_index[(u, k, j)]] += ma[i][k]
                for l in range(x.dims[w]):
                    if xa[l][j]:
                        row[var_index[(w, i, l)]] -= xa[l][j]
                rows.append(row)
                rhs.append(F0)
    # g h = f
    for v in alg.vertices:
        gb, fb = g.blocks[v], f.blocks[v]
        for i in range(n.dims[v]):
            for j in range(x.dims[v]):
                row = [F0] * nvars
                for k in range(mrep.dims[v]):
                    if gb[i][k]:
                        row[var_index[(v, k, j)]] += gb[i][k]
                rows.append(row)
                rhs.append(fb[i][j])
    if not rows:
        return zero_morphism(x, mrep)
    sol = linalg.solve(rows, rhs)
    if sol is None:
        return None
    blocks = {
        v: [[sol[var_index[(v, i, j)]] for j in range(x.dims[v])]
            for i in range(mrep.dims[v])]
        for v in alg.vertices
    }
    return Morphism(x, mrep, blocks, check=False)


def right_mult_morphism(alg, src_vertex, tgt_vertex, elem):
    """Morphism P_tgt -> P_src given by right multiplication with elem,
    where elem has source src_vertex and target tgt_vertex in the algebra."""
    pt = projective(alg, tgt_vertex)
    ps = projective(alg, src_vertex)
    blocks = {}
    for w in alg.vertices:
        mat = [[F0] * pt.dims[w] for _ in range(ps.dims[w])]
        for col, b in enumerate(pt.proj_basis_ids[w]):
            out = {}
            for i, c in elem.items():
                prod = alg.mult_basis(b, i)
                for t, ct in prod.items():
                    out[t] = out.get(t, F0) + c * ct
            for t, c in out.items():
                if c:
                    mat[ps.proj_pos[t]][col] = c
        blocks[w] = mat
    return Morphism(pt, ps, blocks, check=False)


def presentation_matrix(m):
    """Minimal presentation P1 -> P0 -> m as an element matrix.

    Returns (tgt_vertices, src_vertices, elems) where elems[k][l] is the
    sparse algebra element of the component P_{src[l]} -> P_{tgt[k]}.
    """
    alg = m.algebra
    p0, epi0, tgts = projective_cover(m)
    k, ki = kernel(epi0)
    p1, epi1, srcs = projective_cover(k)
    d1 = ki.compose(epi1)
    # locate generator coordinates inside the direct sums
    ps0 = [projective(alg, v) for v in tgts]
    ps1 = [projective(alg, v) for v in srcs]
    off0 = {w: [] for w in alg.vertices}
    run = {w: 0 for w in alg.vertices}
    starts0 = []
    for p in ps0:
        starts0.append({w: run[w] for w in alg.vertices})
        for w in alg.vertices:
            run[w] += p.dims[w]
    run = {w: 0 for w in alg.vertices}
    starts1 = []
    for p in ps1:
        starts1.append({w: run[w] for w in alg.vertices})
        for w in alg.vertices:
            run[w] += p.dims[w]
    elems = [[{} for _ in srcs] for _ in tgts]
    for l, (p1s, u) in enumerate(zip(ps1, srcs)):
        gen_row = starts1[l][u] + p1s.gen_pos
        col = [d1.blocks[u][i][gen_row] for i in range(p0.dims[u])]
        for kidx, (p0s, vk) in enumerate(zip(ps0, tgts)):
            elem = {}
            start = starts0[kidx][u]
            for pos in range(p0s.dims[u]):
                c = col[start + pos]
                if c:
                    elem[p0s.proj_basis_ids[u][pos]] = c
            elems[kidx][l] = elem
    return tgts, srcs, elems, (p0, epi0, p1, d1)


def transpose(m):
    """Tr over the opposite algebra, from the minimal presentation."""
    alg = m.algebra
    op = alg.opposite()
    tgts, srcs, elems, _ = presentation_matrix(m)
    if not srcs:
        # m is projective (possibly zero): transpose vanishes
        return zero_representation(op)
    if not tgts:
        return zero_representation(op)
    src_reps = [projective(op, v) for v in tgts]
    tgt_reps = [projective(op, u) for u in srcs]
    big_src, src_incl, src_proj = (
        direct_sum(src_reps) if src_reps else (zero_representation(op), [], [])
    )
    big_tgt, tgt_incl, tgt_proj = (
        direct_sum(tgt_reps) if tgt_reps else (zero_representation(op), [], [])
    )
    total = zero_morphism(big_src, big_tgt)
    for kidx, vk in enumerate(tgts):
        for l, ul in enumerate(srcs):
            elem = elems[kidx][l]
            if not elem:
                continue
            comp = right_mult_morphism(op, ul, vk, elem)
            total = total.add(
                tgt_incl[l].compose(comp).compose(src_proj[kidx])
            )
    c, _ = cokernel(total)
    return c


def ar_translate(m):
    """tau = D Tr from a minimal presentation."""
    return dual(transpose(m))


def ar_translate_inverse(m):
    """tau^- = Tr D."""
    return transpose(dual(m))


def cosyzygy(m):
    return dual(syzygy(dual(m)))


def syzygy_power(m, k):
    current = m
    for _ in range(k):
        current = syzygy(current)
    return current


def cosyzygy_power(m, k):
    current = m
    for _ in range(k):
        current = cosyzygy(current)
    return current


def higher_translate(m, d):
    """tau_d = tau of the (d-1)-st syzygy."""
    return ar_translate(syzygy_power(m, d - 1))


def higher_translate_inverse(m, d):
    """tau_d^- = tau^- of the (d-1)-st cosyzygy."""
    return ar_translate_inverse(cosyzygy_power(m, d - 1))


def translate(m, d=1, mode=None):
    """Dispatch by mode name: 'tau', 'tau-', 'tau_d', 'tau_d-'."""
    if mode in (None, "tau"):
        return ar_translate(m)
    if mode == "tau-":
        return ar_translate_inverse(m)
    if mode == "tau_d":
        return higher_translate(m, d)
    if mode == "tau_d-":
        return higher_translate_inverse(m, d)
    raise ValueError(f"unknown translate mode {mode!r}")


def _split_by_idempotent(m, e):
    """Split m as im(e) + ker(e) for an idempotent endomorphism e."""
    im, ii = image(e)
    k, ki = kernel(e)
    if im.total_dim + k.total_dim != m.total_dim:
        return None
    if im.is_zero() or k.is_zero():
        return None
    return [(im, ii), (k, ki)]


def _min_poly(phi):
    """Minimal polynomial coefficients (ascending) of an endomorphism."""
    flat_powers = []
    current = identity_morphism(phi.source)
    while True:
        flat_powers.append(current.flatten())
        rows = flat_powers
        red, pivots = linalg.rref(rows)
        if len(pivots) < len(rows):
            # last power depends on the previous ones
            sol = linalg.solve(
                linalg.transpose(flat_powers[:-1]), flat_powers[-1]
            )
            return [-c for c in sol] + [F1]
        current = current.compose(phi)


def _poly_eval_morphism(coeffs, phi):
    result = phi.scale(0)
    power = identity_morphism(phi.source)
    for c in coeffs:
        if c:
            result = result.add(power.scale(c))
        power = power.compose(phi)
    return result


def _try_split(m, phi):
    """Look for an idempotent from a coprime factor split of phi's min poly."""
    import sympy

    coeffs = _min_poly(phi)
    x = sympy.symbols("x")
    poly = sympy.Poly(
        [sympy.Rational(str(c)) for c in reversed(coeffs)], x, domain="QQ"
    )
    factors = poly.factor_list()[1]
    if len(factors) < 2:
        return None
    g1 = factors[0][0] ** factors[0][1]
    g2 = factors[1][0] ** factors[1][1]
    for f, e in factors[2:]:
        g2 = g2 * f**e
    s, t, h = g1.gcdex(g2)
    # s g1 + t g2 = h with h a nonzero constant, so (t g2)/h is idempotent
    c = sympy.Rational(str(h.all_coeffs()[0]))
    tg2 = (t * g2).all_coeffs()[::-1]
    ecoeffs = [Fraction(str(q / c)) for q in tg2]
    e = _poly_eval_morphism(ecoeffs, phi)
    if e.is_zero() or e.add(identity_morphism(m).scale(-1)).is_zero():
        return None
    if not e.compose(e).add(e.scale(-1)).is_zero():
        return None
    return _split_by_idempotent(m, e)


def decompose_indecomposables(m):
    """Direct summand list [(summand, inclusion)] via End idempotents."""
    if m.is_zero():
        return []
    end = hom_basis(m, m)
    if len(end) == 1:
        return [(m, identity_morphism(m))]
    import random

    candidates = list(end)
    for i in range(len(end)):
        for j in range(i + 1, len(end)):
            candidates.append(end[i].add(end[j]))
    rng = random.Random(0)
    for _ in range(30):
        combo = end[0].scale(0)
        for f in end:
            combo = combo.add(f.scale(rng.randint(-5, 5)))
        candidates.append(combo)
    for phi in candidates:
        split = _try_split(m, phi)
        if split:
            out = []
            for part, incl in split:
                for sub, sub_incl in decompose_indecomposables(part):
                    out.append((sub, incl.compose(sub_incl)))
            return out
    return [(m, identity_morphism(m))]


def regular_module(alg):
    total, _, _ = direct_sum([projective(alg, v) for v in alg.vertices])
    return total


def homological_dims(alg, cap=None):
    """Record of projective dimensions of simples, global dimension, dominant
    dimension and the two one-sided self-injective dimensions."""
    if alg._homdims is not None:
        return alg._homdims
    proj_dims = {v: proj_dim(simple(alg, v), cap=cap) for v in alg.vertices}
    global_dim = max(proj_dims.values()) if proj_dims else 0
    op = alg.opposite()
    inj_of_a = max(
        proj_dim(dual(projective(alg, v)), cap=cap) for v in alg.vertices
    )
    proj_of_da = max(
        proj_dim(injective(alg, v), cap=cap) for v in alg.vertices
    )
    # dominant dimension via the minimal injective coresolution of A
    proj_inj = {w: is_projective(injective(alg, w)) for w in alg.vertices}
    da = direct_sum([dual(projective(alg, v)) for v in alg.vertices])[0]
    dom = 0
    current = da
    incl = None
    steps_cap = cap if cap is not None else 3 * alg.dim + 8
    finished_all_projective = False
    hit_non_projective = False
    for _ in range(steps_cap):
        p, epi, summands = projective_cover(current)
        if not all(proj_inj[w] for w in summands):
            hit_non_projective = True
            break
        dom += 1
        k, ki = kernel(epi)
        if k.is_zero():
            finished_all_projective = True
            break
        current = k
    if not finished_all_projective and not hit_non_projective:
        raise HgaError("dominant dimension undecided within the step cap")
    dominant = math.inf if finished_all_projective else dom
    record = {
        "projDims": proj_dims,
        "globalDim": global_dim,
        "dominantDim": dominant,
        "injDimOfA": inj_of_a,
        "projDimOfDA": proj_of_da,
    }
    alg._homdims = record
    return record


def is_gorenstein_projective(m, n=None):
    """Ext^i(m, A) = 0 for 1 <= i <= n over a verified Gorenstein algebra."""
    alg = m.algebra
    if alg._homdims is None:
        raise NotGorensteinVerified(
            "run homological_dims on the algebra before this test"
        )
    rec = alg._homdims
    if rec["injDimOfA"] != rec["projDimOfDA"] or rec["injDimOfA"] == math.inf:
        raise NotGorensteinVerified("algebra is not Gorenstein")
    if n is None:
        n = rec["injDimOfA"]
    reg = regular_module(alg)
    return all(ext_dim(m, reg, i) == 0 for i in range(1, n + 1))


def representation_to_dict(m):
    return {
        "dims": {v: m.dims[v] for v in m.algebra.vertices},
        "maps": {
            name: [[str(x) for x in row] for row in mat]
            for name, mat in m.maps.items()
        },
    }


def representation_from_dict(alg, d):
    maps = {
        name: [[Fraction(x) for x in row] for row in mat]
        for name, mat in d.get("maps", {}).items()
    }
    return Representation(alg, d["dims"], maps)
