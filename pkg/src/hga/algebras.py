"""Finite-dimensional bound quiver algebras with exact rational arithmetic.

An Algebra carries a basis of path classes, a closed multiplication table and
one idempotent per vertex.  Products follow the composition convention of
presentations: mult(i, j) is "basis j first, then basis i".
"""

from fractions import Fraction

from . import linalg
from .errors import (
    EmptyIdempotent,
    InvalidPresentation,
    NotAdmissible,
)
from .linalg import F0, F1, SparseRREF
from .presentations import (
    Arrow,
    BoundQuiverPresentation,
    Quiver,
    RelationElement,
)


class Algebra:
    """Basis of path classes plus exact structure constants.

    basis_labels[i] is ("e", v) for a vertex idempotent or a tuple of arrow
    names (application order) for a path class.  The first len(vertices)
    basis slots are the vertex idempotents, in vertex order.
    """

    def __init__(self, vertices, basis_labels, basis_src, basis_tgt, mult,
                 presentation=None, arrow_class=None):
        self.vertices = list(vertices)
        self.basis_labels = list(basis_labels)
        self.basis_src = list(basis_src)
        self.basis_tgt = list(basis_tgt)
        self.mult = mult
        self.presentation = presentation
        self.arrow_class = arrow_class or {}
        self.e_index = {v: i for i, v in enumerate(self.vertices)}
        self.monomial = all(len(t) <= 1 for t in mult.values())
        self._op = None
        self._minpres = None
        self._homdims = None
        self._basis_by_src_tgt = None

    @property
    def dim(self):
        return len(self.basis_labels)

    def radical_indices(self):
        return list(range(len(self.vertices), self.dim))

    def basis_by_src_tgt(self):
        if self._basis_by_src_tgt is None:
            table = {}
            for i in range(self.dim):
                table.setdefault((self.basis_src[i], self.basis_tgt[i]), []).append(i)
            self._basis_by_src_tgt = table
        return self._basis_by_src_tgt

    def mult_basis(self, i, j):
        """Product basis_i * basis_j (j applied first); sparse dict."""
        return self.mult.get((i, j), {})

    def mult_elements(self, x, y):
        """Product of sparse elements x * y (y applied first)."""
        out = {}
        for i, ci in x.items():
            for j, cj in y.items():
                prod = self.mult.get((i, j))
                if prod:
                    c = ci * cj
                    for k, ck in prod.items():
                        nv = out.get(k, F0) + c * ck
                        if nv:
                            out[k] = nv
                        else:
                            out.pop(k, None)
        return out

    def unit(self, i, coef=F1):
        return {i: coef}

    def identity_element(self):
        return {i: F1 for i in range(len(self.vertices))}

    def path_value(self, path):
        """Value of an arrow-name path (application order) as a sparse element."""
        if not path:
            raise ValueError("empty path")
        value = self.unit(self.arrow_class[path[0]])
        for name in path[1:]:
            value = self.mult_elements(self.unit(self.arrow_class[name]), value)
        return value

    def relation_value(self, relation):
        total = {}
        for coef, path in relation.terms:
            val = self.path_value(path)
            for k, c in val.items():
                nv = total.get(k, F0) + coef * c
                if nv:
                    total[k] = nv
                else:
                    total.pop(k, None)
        return total

    def rad_nilpotency(self):
        """Least N with rad^N = 0."""
        rad = [self.unit(i) for i in self.radical_indices()]
        span = rad
        n = 1
        while span:
            rr = SparseRREF()
            nxt = []
            for x in span:
                for r in rad:
                    prod = self.mult_elements(r, x)
                    if prod and rr.add(dict(prod)) is not None:
                        nxt.append(prod)
            span = nxt
            n += 1
            if n > self.dim + 2:
                raise NotAdmissible("radical is not nilpotent")
        return n

    def opposite(self):
        """Opposite algebra; involutive up to identity on basis ids."""
        if self._op is None:
            self._op = _build_opposite(self)
            self._op._op = self
        return self._op

    def __repr__(self):
        return f"Algebra(dim={self.dim}, vertices={len(self.vertices)})"


def _build_opposite(a):
    quiver = a.presentation.quiver
    op_quiver = Quiver(
        list(quiver.vertices),
        [(ar.name, ar.target, ar.source) for ar in quiver.arrows],
    )
    op_relations = [
        RelationElement([(c, tuple(reversed(p))) for c, p in r.terms])
        for r in a.presentation.relations
    ]
    op_pres = BoundQuiverPresentation(op_quiver, op_relations)
    op_mult = {}
    for (i, j), terms in a.mult.items():
        op_mult[(j, i)] = dict(terms)
    nv = len(a.vertices)
    labels = [
        lab if i < nv else tuple(reversed(lab))
        for i, lab in enumerate(a.basis_labels)
    ]
    op = Algebra(
        a.vertices,
        labels,
        a.basis_tgt,
        a.basis_src,
        op_mult,
        presentation=op_pres,
        arrow_class=dict(a.arrow_class),
    )
    return op


def opposite(a):
    return a.opposite()


def _sorted_arrow_names(quiver):
    return sorted(a.name for a in quiver.arrows)


def build_algebra(presentation, length_cap=None):
    """Quotient of the path algebra by the relation ideal, via degreewise
    exact row reduction.  Raises NotAdmissible if path classes keep appearing
    up to the length cap."""
    quiver = presentation.quiver
    nv = len(quiver.vertices)
    max_term_len = max(
        (len(p) for r in presentation.relations for _, p in r.terms),
        default=0,
    )
    if length_cap is None:
        length_cap = max(2 * nv, 2 * max_term_len, 8)

    arrow = quiver.arrow_by_name
    # paths of length >= 1, indexed in (length, lex) order
    path_index = {}
    paths_of_len = {0: [()]}
    arrows_sorted = _sorted_arrow_names(quiver)
    paths_of_len[1] = [(n,) for n in arrows_sorted]
    for p in paths_of_len[1]:
        path_index[p] = len(path_index)

    def extend_paths(length):
        if length in paths_of_len:
            return paths_of_len[length]
        prev = extend_paths(length - 1)
        out = []
        for p in prev:
            tgt = arrow[p[-1]].target
            for nxt in arrows_sorted:
                if arrow[nxt].source == tgt:
                    out.append(p + (nxt,))
        out.sort()
        for p in out:
            path_index[p] = len(path_index)
        paths_of_len[length] = out
        return out

    relations = presentation.relations
    rel_info = []
    for r in relations:
        lens = [len(p) for _, p in r.terms]
        src = quiver.path_source(r.terms[0][1])
        tgt = quiver.path_target(r.terms[0][1])
        rel_info.append((r, max(lens), src, tgt))
    max_rel_len = max((m for _, m, _, _ in rel_info), default=0)
    spread = max(
        (max(len(p) for _, p in r.terms) - min(len(p) for _, p in r.terms)
         for r in relations),
        default=0,
    )

    ideal = SparseRREF()

    def add_ideal_vectors(length):
        """All u*r*w whose longest term has length exactly `length`."""
        for r, lmax, src, tgt in rel_info:
            room = length - lmax
            if room < 0:
                continue
            for pre_len in range(room + 1):
                suf_len = room - pre_len
                prefixes = (
                    [p for p in extend_paths(pre_len)
                     if pre_len == 0 or arrow[p[-1]].target == src]
                    if pre_len else [()]
                )
                suffixes = (
                    [p for p in extend_paths(suf_len)
                     if suf_len == 0 or arrow[p[0]].source == tgt]
                    if suf_len else [()]
                )
                for u in prefixes:
                    if u and arrow[u[-1]].target != src:
                        continue
                    for w in suffixes:
                        if w and arrow[w[0]].source != tgt:
                            continue
                        vec = {}
                        ok = True
                        for coef, term in r.terms:
                            full = u + term + w
                            idx = path_index.get(full)
                            if idx is None:
                                ok = False
                                break
                            vec[idx] = vec.get(idx, F0) + coef
                        if ok:
                            vec = {k: c for k, c in vec.items() if c}
                            if vec:
                                ideal.add(vec)

    closure_len = None
    length = 1
    while True:
        length += 1
        if length > length_cap:
            raise NotAdmissible(
                f"path classes still appearing at length cap {length_cap}"
            )
        extend_paths(length)
        add_ideal_vectors(length)
        survivors = [p for p in paths_of_len[length]
                     if path_index[p] not in ideal.rows]
        if not survivors and length >= max_rel_len:
            closure_len = length
            break
    # safety margin for relations mixing term lengths
    for extra in range(1, spread + 1):
        extend_paths(closure_len + extra)
        add_ideal_vectors(closure_len + extra)

    basis_paths = []
    for ln in range(1, closure_len):
        basis_paths.extend(
            p for p in paths_of_len[ln] if path_index[p] not in ideal.rows
        )
    if any(path_index[p] not in ideal.rows for p in paths_of_len[closure_len]):
        raise NotAdmissible("ideal closure unstable after margin pass")

    basis_labels = [("e", v) for v in quiver.vertices] + basis_paths
    basis_src = list(quiver.vertices) + [arrow[p[0]].source for p in basis_paths]
    basis_tgt = list(quiver.vertices) + [arrow[p[-1]].target for p in basis_paths]
    basis_id = {p: nv + k for k, p in enumerate(basis_paths)}

    def reduce_to_basis(path):
        """Class of a path (length <= closure_len) as {basis id: coef}."""
        rem = ideal.reduce({path_index[path]: F1})
        out = {}
        for idx, c in rem.items():
            # index -> path; survivors only
            out[basis_id[index_to_path[idx]]] = c
        return out

    index_to_path = {}
    for ln, plist in paths_of_len.items():
        if ln == 0:
            continue
        for p in plist:
            index_to_path[path_index[p]] = p

    # left action of each arrow on the basis
    arrow_action = {}
    for name in arrows_sorted:
        ar = arrow[name]
        action = {}
        for b in range(len(basis_labels)):
            if b < nv:
                if ar.source == quiver.vertices[b]:
                    action[b] = reduce_to_basis((name,))
            else:
                lab = basis_labels[b]
                if arrow[lab[-1]].target == ar.source:
                    action[b] = reduce_to_basis(lab + (name,))
        arrow_action[name] = action

    def left_mult_by_basis(i, vec):
        if i < nv:
            v = quiver.vertices[i]
            return {k: c for k, c in vec.items() if basis_tgt[k] == v}
        lab = basis_labels[i]
        for name in lab:
            nxt = {}
            act = arrow_action[name]
            for k, c in vec.items():
                row = act.get(k)
                if row:
                    for t, ct in row.items():
                        val = nxt.get(t, F0) + c * ct
                        if val:
                            nxt[t] = val
                        else:
                            nxt.pop(t, None)
            vec = nxt
            if not vec:
                break
        return vec

    mult = {}
    dim = len(basis_labels)
    for j in range(dim):
        vec_j = {j: F1}
        for i in range(dim):
            if basis_src[i] != basis_tgt[j]:
                continue
            prod = left_mult_by_basis(i, vec_j)
            if prod:
                mult[(i, j)] = prod

    arrow_class = {}
    for name in arrows_sorted:
        cls = reduce_to_basis((name,))
        if len(cls) != 1 or next(iter(cls.values())) != 1:
            raise InvalidPresentation(f"arrow {name} not a basis class")
        arrow_class[name] = next(iter(cls))

    return Algebra(
        list(quiver.vertices), basis_labels, basis_src, basis_tgt, mult,
        presentation=presentation, arrow_class=arrow_class,
    )


def _arrow_layer(a):
    """Per vertex pair, basis elements lifting a basis of rad / rad^2.

    Returns a list of (source, target, basis id) in deterministic order.
    """
    nv = len(a.vertices)
    rad_ids = a.radical_indices()
    blocks = {}
    for b in rad_ids:
        blocks.setdefault((a.basis_src[b], a.basis_tgt[b]), []).append(b)
    rad2 = {}
    for i in rad_ids:
        for j in rad_ids:
            if a.basis_src[i] != a.basis_tgt[j]:
                continue
            prod = a.mult.get((i, j))
            if prod:
                key = (a.basis_src[j], a.basis_tgt[i])
                rad2.setdefault(key, []).append(prod)
    out = []
    for key in sorted(blocks, key=lambda st: (str(st[0]), str(st[1]))):
        span = SparseRREF()
        for vec in rad2.get(key, []):
            span.add(dict(vec))
        for b in blocks[key]:
            if span.add({b: F1}) is not None:
                out.append((key[0], key[1], b))
    return out


def _extend_generated(kgen, generators, length, paths_of_len, arrow, path_index):
    """Add u*g*w for each recorded generator g, longest term exactly `length`."""
    for g_terms, g_lmax, g_src, g_tgt in generators:
        room = length - g_lmax
        if room < 0:
            continue
        for pre_len in range(room + 1):
            suf_len = room - pre_len
            prefixes = paths_of_len.get(pre_len, []) if pre_len else [()]
            suffixes = paths_of_len.get(suf_len, []) if suf_len else [()]
            for u in prefixes:
                if u and arrow[u[-1]].target != g_src:
                    continue
                for w in suffixes:
                    if w and arrow[w[0]].source != g_tgt:
                        continue
                    vec = {}
                    for coef, term in g_terms:
                        idx = path_index[u + term + w]
                        vec[idx] = vec.get(idx, F0) + coef
                    vec = {k: c for k, c in vec.items() if c}
                    if vec:
                        kgen.add(vec)


def minimal_presentation(a, validate=True):
    """Quiver with rad/rad^2 arrows plus a minimal generating set of the
    kernel ideal, found degree by degree.

    The returned presentation carries `arrow_representatives`, mapping each
    arrow name to its representing element of `a` (sparse over a's basis).
    """
    arrow_layer = _arrow_layer(a)
    name_count = {}
    arrows = []
    reps = {}
    for src, tgt, b in arrow_layer:
        base = f"{src}_{tgt}"
        k = name_count.get(base, 0)
        name_count[base] = k + 1
        name = base if k == 0 else f"{base}_{k}"
        arrows.append(Arrow(name, src, tgt))
        reps[name] = {b: F1}
    quiver = Quiver(list(a.vertices), arrows)
    arrow_by_name = quiver.arrow_by_name
    arrows_sorted = sorted(reps)

    nilp = a.rad_nilpotency()
    lmax_search = nilp + 1

    path_index = {}
    paths_of_len = {1: [(n,) for n in arrows_sorted]}
    values = {}
    for p in paths_of_len[1]:
        path_index[p] = len(path_index)
        values[p] = reps[p[0]]

    def extend_paths(length):
        if length in paths_of_len:
            return paths_of_len[length]
        prev = extend_paths(length - 1)
        out = []
        for p in prev:
            tgt = arrow_by_name[p[-1]].target
            for nxt in arrows_sorted:
                if arrow_by_name[nxt].source == tgt:
                    out.append(p + (nxt,))
        out.sort()
        for p in out:
            path_index[p] = len(path_index)
            values[p] = a.mult_elements(reps[p[-1]], values[p[:-1]])
        paths_of_len[length] = out
        return out

    kgen = SparseRREF()
    generators = []  # (terms, lmax, src, tgt)
    relations = []
    length = 1
    stable_since = None
    while True:
        length += 1
        if length > lmax_search + a.dim:
            raise InvalidPresentation("relation search failed to stabilize")
        extend_paths(length)
        _extend_generated(kgen, generators, length, paths_of_len,
                          arrow_by_name, path_index)
        # full kernel at this length, one vertex-pair block at a time
        blocks = {}
        for ln in range(2, length + 1):
            for p in paths_of_len[ln]:
                key = (arrow_by_name[p[0]].source, arrow_by_name[p[-1]].target)
                blocks.setdefault(key, []).append(p)
        new_here = False
        for key in sorted(blocks, key=lambda st: (str(st[0]), str(st[1]))):
            cols = blocks[key]
            coord_ids = sorted(
                i for i in range(a.dim)
                if a.basis_src[i] == key[0] and a.basis_tgt[i] == key[1]
            )
            pos = {b: r for r, b in enumerate(coord_ids)}
            matrix = [[F0] * len(cols) for _ in coord_ids]
            for c, p in enumerate(cols):
                for b, coef in values[p].items():
                    matrix[pos[b]][c] = coef
            for kv in linalg.nullspace(matrix, ncols=len(cols)):
                vec = {path_index[cols[c]]: coef
                       for c, coef in enumerate(kv) if coef}
                rem = kgen.reduce(vec)
                if not rem:
                    continue
                piv = max(rem)
                inv = F1 / rem[piv]
                rem = {j: c * inv for j, c in rem.items()}
                idx_to_path = {path_index[p]: p for p in cols}
                terms = sorted(
                    ((c, idx_to_path[j]) for j, c in rem.items()),
                    key=lambda t: (len(t[1]), t[1]),
                )
                g_lmax = max(len(p) for _, p in terms)
                generators.append((terms, g_lmax, key[0], key[1]))
                relations.append(RelationElement(list(terms)))
                kgen.add(dict(rem))
                new_here = True
        if length >= lmax_search and not new_here:
            break

    pres = BoundQuiverPresentation(quiver, relations)
    pres.arrow_representatives = reps
    if validate:
        rebuilt = build_algebra(pres)
        if rebuilt.dim != a.dim:
            raise InvalidPresentation(
                f"presentation round-trip changed dimension "
                f"({a.dim} -> {rebuilt.dim})"
            )
    return pres


def represent(raw):
    """Rebuild a raw structure-constant algebra as a presented one.

    The result carries `raw`, plus exact change-of-basis matrices
    `to_raw` / `from_raw` between the rebuilt path-class basis and the raw
    basis.
    """
    pres = minimal_presentation(raw, validate=False)
    alg = build_algebra(pres)
    if alg.dim != raw.dim:
        raise InvalidPresentation(
            f"re-presentation changed dimension ({raw.dim} -> {alg.dim})"
        )
    reps = pres.arrow_representatives
    nv = len(raw.vertices)
    to_raw_cols = []
    for i in range(alg.dim):
        if i < nv:
            elem = {raw.e_index[alg.vertices[i]]: F1}
        else:
            path = alg.basis_labels[i]
            elem = reps[path[0]]
            for name in path[1:]:
                elem = raw.mult_elements(reps[name], elem)
        col = [F0] * raw.dim
        for b, c in elem.items():
            col[b] = c
        to_raw_cols.append(col)
    to_raw = linalg.transpose(to_raw_cols)
    from_raw = linalg.invert(to_raw)
    if from_raw is None:
        raise InvalidPresentation("re-presentation basis is degenerate")
    alg.raw = raw
    alg.to_raw = to_raw
    alg.from_raw = from_raw
    return alg


def from_raw_element(alg, raw_vec):
    """Transport a sparse element of alg.raw into alg coordinates."""
    out = {}
    for b, c in raw_vec.items():
        for i in range(alg.dim):
            coef = alg.from_raw[i][b]
            if coef:
                nv = out.get(i, F0) + c * coef
                if nv:
                    out[i] = nv
                else:
                    out.pop(i, None)
    return out


def idempotent_subalgebra(a, e):
    """Corner algebra eAe for a vertex-subset idempotent, re-presented on its
    own quiver.  The raw corner (kept as `.raw`) records `ambient` and
    `ambient_ids` into a's basis."""
    e.validate(a.vertices)
    if not e.vertex_subset:
        raise EmptyIdempotent("idempotent over the empty vertex set")
    keep = e.vertex_subset
    ids = [i for i in range(a.dim)
           if a.basis_src[i] in keep and a.basis_tgt[i] in keep]
    new_pos = {b: k for k, b in enumerate(ids)}
    mult = {}
    for k, i in enumerate(ids):
        for l, j in enumerate(ids):
            prod = a.mult.get((i, j))
            if prod:
                mult[(k, l)] = {new_pos[t]: c for t, c in prod.items()}
    raw = Algebra(
        [v for v in a.vertices if v in keep],
        [a.basis_labels[i] for i in ids],
        [a.basis_src[i] for i in ids],
        [a.basis_tgt[i] for i in ids],
        mult,
    )
    raw.ambient = a
    raw.ambient_ids = ids
    return represent(raw)


def quotient_by_idempotent(a, f):
    """Quotient of a by the two-sided ideal generated by a vertex-subset
    idempotent, re-presented on its own quiver.  The raw quotient records
    `ambient`, `kept_ids` and the eliminating row basis `ideal_span`."""
    f.validate(a.vertices)
    cut = f.vertex_subset
    span = SparseRREF()
    for v in cut:
        ev = a.e_index[v]
        into = [j for j in range(a.dim) if a.basis_tgt[j] == v]
        outof = [i for i in range(a.dim) if a.basis_src[i] == v]
        for j in into:
            for i in outof:
                prod = a.mult.get((i, j))
                if prod:
                    span.add(dict(prod))
        span.add({ev: F1})
    probe = SparseRREF()
    probe.rows = {p: dict(r) for p, r in span.rows.items()}
    kept = []
    for b in range(a.dim):
        if probe.add({b: F1}) is not None:
            kept.append(b)
    new_pos = {b: k for k, b in enumerate(kept)}

    def reduce_class(vec):
        rem = span.reduce(dict(vec))
        return {new_pos[b]: c for b, c in rem.items()}

    mult = {}
    for k, i in enumerate(kept):
        for l, j in enumerate(kept):
            prod = a.mult.get((i, j))
            if prod:
                cls = reduce_class(prod)
                if cls:
                    mult[(k, l)] = cls
    raw = Algebra(
        [v for v in a.vertices if v not in cut],
        [a.basis_labels[i] for i in kept],
        [a.basis_src[i] for i in kept],
        [a.basis_tgt[i] for i in kept],
        mult,
    )
    raw.ambient = a
    raw.kept_ids = kept
    raw.ideal_span = span
    return represent(raw)


def quotient_class(raw_quotient, ambient_vec):
    """Class of an ambient sparse element inside a raw quotient algebra."""
    rem = raw_quotient.ideal_span.reduce(dict(ambient_vec))
    pos = {b: k for k, b in enumerate(raw_quotient.kept_ids)}
    return {pos[b]: c for b, c in rem.items()}
