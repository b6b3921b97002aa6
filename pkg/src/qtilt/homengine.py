"""Minimal projective resolutions and the homological operators built on
them: Ext groups, projective/injective/global dimension, the transpose,
and the higher translates tau_n / tau_n^- with their finiteness probe.

A minimal resolution is grown by iterated projective covers and cached on
the module, so deeper requests extend earlier work.  Differentials are
also kept as matrices of algebra elements between the generator vertices;
dualizing those element matrices into the opposite algebra is what powers
the transpose and the Ext-against-the-algebra module structure.
"""

from typing import Dict, List, Optional, Tuple

from .errors import InconclusiveError, QtiltError
from .exactla import Matrix, column_space_basis
from .quivercore import BoundQuiverAlgebra, Path, opposite
from .repcore import (ModuleMap, Representation, _proj_layout, cokernel_rep,
                      dual, inj, kernel_rep, proj_map_from_images, proj_sum,
                      projective_cover, simple, zero_rep)

DEFAULT_BOUND = 64


class InfinityMarker:
    """Result of a dimension search that exceeded its step bound."""

    __slots__ = ("bound",)

    def __init__(self, bound: int):
        self.bound = bound

    def __eq__(self, other):
        return isinstance(other, InfinityMarker)

    def __hash__(self):
        return hash("InfinityMarker")

    def __repr__(self):
        return f"infinite(>{self.bound})"


def is_finite(value) -> bool:
    return isinstance(value, int)


class MinimalResolution:
    """Chain of projective covers over a module.

    terms[i] is the i-th projective (a sum of indecomposable projectives
    with generator bookkeeping); maps[0] is the augmentation onto the
    module and maps[i] : terms[i] -> terms[i-1] for i >= 1.  ``terminated``
    means the last computed syzygy is zero.
    """

    def __init__(self, module: Representation):
        self.module = module
        self.terms: List[Representation] = []
        self.maps: List[ModuleMap] = []
        self.covers: List[ModuleMap] = []          # terms[i] -> syzygy(i)
        self.syzygies: Dict[int, Representation] = {0: module}
        self._syz_incl: Dict[int, Optional[ModuleMap]] = {0: None}
        self.terminated = module.is_zero()

    def _syzygy_step(self, k: int) -> Representation:
        """Compute syzygies[k] = ker(covers[k-1]) on demand."""
        if k in self.syzygies:
            return self.syzygies[k]
        syz, incl = kernel_rep(self.covers[k - 1])
        self.syzygies[k] = syz
        self._syz_incl[k] = incl
        if syz.is_zero():
            self.terminated = True
        return syz

    @property
    def length(self) -> int:
        """Largest index with a nonzero term (-1 for the zero module)."""
        return len(self.terms) - 1

    def extend(self, upto: int) -> None:
        """Grow until terms[upto] exists or the resolution terminates; the
        kernel of the last cover is only taken when growth continues."""
        while not self.terminated and self.length < upto:
            k = len(self.terms)
            target = self._syzygy_step(k)
            if target.is_zero():
                break
            cover = projective_cover(target)
            self.terms.append(cover.projective)
            self.covers.append(cover.map)
            incl = self._syz_incl[k]
            self.maps.append(cover.map if incl is None else incl * cover.map)

    def term(self, i: int) -> Representation:
        """terms[i], or the empty projective sum beyond the computed end of
        a terminated resolution."""
        if i <= self.length:
            return self.terms[i]
        assert self.terminated
        return proj_sum(self.module.algebra, [])

    def generators(self, i: int) -> Tuple[str, ...]:
        t = self.term(i)
        return t.proj_gens if t.proj_gens is not None else ()

    def syzygy(self, k: int) -> Representation:
        """The k-th syzygy (k = 0 gives the module back)."""
        self.extend(k - 1)
        if k <= len(self.covers):
            return self._syzygy_step(k)
        assert self.terminated
        return zero_rep(self.module.algebra)

    def presentation_elements(self, i: int):
        """The differential terms[i] -> terms[i-1] as a matrix of algebra
        elements: entry [k][l] lives in e_{w_l} A e_{v_k} for generator k
        of terms[i-1] at v_k and generator l of terms[i] at w_l."""
        alg = self.module.algebra
        gens_lo = self.generators(i - 1)
        gens_hi = self.generators(i)
        X = [[[] for _ in gens_hi] for _ in gens_lo]
        if not gens_hi or not gens_lo or i > self.length:
            return X
        d = self.maps[i]
        layout_hi = _proj_layout(alg, gens_hi)
        layout_lo = _proj_layout(alg, gens_lo)
        for l, w in enumerate(gens_hi):
            epos = layout_hi[w].index((l, alg.basis_index(Path.trivial(w))))
            col = d.blocks[w].column(epos)
            for row_i, (k, x_idx) in enumerate(layout_lo[w]):
                c = col[row_i]
                if c != 0:
                    X[k][l].append((c, x_idx))
        return X


def min_proj_resolution(m: Representation, maxlen: int = DEFAULT_BOUND
                        ) -> MinimalResolution:
    """Minimal projective resolution, cached on the module and extended on
    demand; stops early at a zero syzygy and flags truncation otherwise."""
    res = m._cache.get("minres")
    if res is None:
        res = MinimalResolution(m)
        m._cache["minres"] = res
    res.extend(maxlen)
    return res


# ---------------------------------------------------------------------------
# maps between projective sums given by algebra-element matrices


def map_from_elements(p_src: Representation, p_tgt: Representation, Y
                      ) -> ModuleMap:
    """The map of projective sums sending generator s to
    sum_t Y[t][s] . gen_t, where Y[t][s] is a list of (coeff, basis index)
    in e_{src_vertex_s} A e_{tgt_vertex_t}."""
    alg = p_src.algebra
    field = alg.field
    gens_s = p_src.proj_gens
    gens_t = p_tgt.proj_gens
    layout_s = _proj_layout(alg, gens_s)
    layout_t = _proj_layout(alg, gens_t)
    blocks = {}
    for u in alg.quiver.vertices:
        tgt_pos = {key: i for i, key in enumerate(layout_t[u])}
        nrows = len(layout_t[u])
        cols = []
        for (s, x_idx) in layout_s[u]:
            col = [field.zero()] * nrows
            for t in range(len(gens_t)):
                for c, e_idx in Y[t][s]:
                    for y_idx, d in alg.basis_product(x_idx, e_idx):
                        pos = tgt_pos[(t, y_idx)]
                        col[pos] = field.canon(col[pos] + c * d)
            cols.append(col)
        blocks[u] = Matrix.from_cols(field, cols, nrows=nrows)
    return ModuleMap(p_src, p_tgt, blocks, validate=False)


def _op_items(alg: BoundQuiverAlgebra, items) -> List[Tuple[object, int]]:
    """Image of a block-pure element under the anti-isomorphism onto the
    opposite algebra, as (coeff, basis index) pairs there."""
    opp = opposite(alg)
    acc: Dict[int, object] = {}
    for c, idx in items:
        rev = alg.basis[idx].reversed()
        for k, d in opp.normal_form(rev).items():
            acc[k] = alg.field.canon(acc.get(k, 0) + c * d)
    return [(c, k) for k, c in sorted(acc.items()) if c != 0]


def _dualized_differential(res: MinimalResolution, i: int) -> ModuleMap:
    """Hom(-, algebra) applied to the differential terms[i] -> terms[i-1]:
    a map of projective sums over the opposite algebra."""
    alg = res.module.algebra
    opp = opposite(alg)
    gens_lo = res.generators(i - 1)
    gens_hi = res.generators(i)
    src = proj_sum(opp, gens_lo)
    tgt = proj_sum(opp, gens_hi)
    X = res.presentation_elements(i)
    Y = [[_op_items(alg, X[k][l]) for k in range(len(gens_lo))]
         for l in range(len(gens_hi))]
    return map_from_elements(src, tgt, Y)


def transpose(m: Representation) -> Representation:
    """Cokernel of the dualized minimal presentation; a module over the
    opposite algebra.  Minimality of the presentation keeps the result
    free of spurious projective summands."""
    res = min_proj_resolution(m, 1)
    d_star = _dualized_differential(res, 1)
    tr, _ = cokernel_rep(d_star)
    return tr


# ---------------------------------------------------------------------------
# Ext groups


class ExtResult:
    __slots__ = ("source", "target", "degree", "dim", "cocycles")

    def __init__(self, source, target, degree, dim, cocycles):
        self.source = source
        self.target = target
        self.degree = degree
        self.dim = dim
        self.cocycles = cocycles


def _hom_complex_differential(res: MinimalResolution, n: Representation,
                              i: int) -> Matrix:
    """Matrix of Hom(terms[i], n) -> Hom(terms[i+1], n), in generator
    coordinates: Hom out of a projective sum is the direct sum of the
    n-spaces at the generator vertices."""
    alg = res.module.algebra
    field = alg.field
    gens_lo = res.generators(i)
    gens_hi = res.generators(i + 1)
    rows_dim = sum(n.dims[w] for w in gens_hi)
    cols_dim = sum(n.dims[v] for v in gens_lo)
    if rows_dim == 0 or cols_dim == 0:
        return Matrix.zeros(field, rows_dim, cols_dim)
    X = res.presentation_elements(i + 1)
    row_off = []
    acc = 0
    for w in gens_hi:
        row_off.append(acc)
        acc += n.dims[w]
    col_off = []
    acc = 0
    for v in gens_lo:
        col_off.append(acc)
        acc += n.dims[v]
    rows = [[field.zero()] * cols_dim for _ in range(rows_dim)]
    for l, w in enumerate(gens_hi):
        for k, v in enumerate(gens_lo):
            items = X[k][l]
            if not items:
                continue
            act = n.act_block(items, v, w)
            for r in range(act.nrows):
                for c in range(act.ncols):
                    if act[(r, c)] != 0:
                        rows[row_off[l] + r][col_off[k] + c] = act[(r, c)]
    return Matrix(field, rows, ncols=cols_dim)


def _require_depth(res: MinimalResolution, depth: int, maxlen: int):
    res.extend(min(depth, maxlen))
    if not res.terminated and res.length < depth:
        raise InconclusiveError(
            f"resolution truncated at length {res.length} before degree "
            f"{depth}; raise the bound")


def ext(m: Representation, n: Representation, p: int,
        maxlen: int = DEFAULT_BOUND) -> ExtResult:
    """Ext^p(m, n) as the degree-p cohomology of Hom(P., n)."""
    if p < 0:
        raise QtiltError("negative Ext degree")
    if m.algebra is not n.algebra:
        from .errors import AlgebraMismatchError
        raise AlgebraMismatchError("Ext between modules over different algebras")
    if m.is_zero() or n.is_zero():
        return ExtResult(m, n, p, 0, [])
    res = min_proj_resolution(m, 0)
    _require_depth(res, p + 1, maxlen)
    if p > res.length and res.terminated:
        return ExtResult(m, n, p, 0, [])
    delta_p = _hom_complex_differential(res, n, p)
    kernel_vectors = _kernel_as_columns(delta_p)
    if p == 0:
        image = Matrix.zeros(n.algebra.field, delta_p.ncols, 0)
    else:
        delta_prev = _hom_complex_differential(res, n, p - 1)
        image = column_space_basis(delta_prev)
    dim = kernel_vectors.ncols - image.rank()
    cocycles = _cocycle_representatives(res, n, p, kernel_vectors, image)
    return ExtResult(m, n, p, dim, cocycles)


def _kernel_as_columns(mat: Matrix) -> Matrix:
    from .exactla import kernel_matrix
    return kernel_matrix(mat)


def _cocycle_representatives(res, n, p, kernel_vectors, image):
    """Kernel vectors completing a basis of the image span, returned as
    maps terms[p] -> n."""
    field = n.algebra.field
    gens = res.generators(p)
    reps = []
    current = image
    for j in range(kernel_vectors.ncols):
        col = kernel_vectors.column(j)
        cand = current.stack_right(Matrix.from_cols(field, [col],
                                                    nrows=kernel_vectors.nrows))
        if cand.rank() > current.ncols:
            current = column_space_basis(cand)
            reps.append(col)
    maps = []
    for vec in reps:
        images = []
        off = 0
        for v in gens:
            images.append(list(vec[off:off + n.dims[v]]))
            off += n.dims[v]
        maps.append(proj_map_from_images(res.term(p), n, images))
    return maps


def ext_dim(m, n, p, maxlen: int = DEFAULT_BOUND) -> int:
    return ext(m, n, p, maxlen).dim


def ext_module(m: Representation, p: int, maxlen: int = DEFAULT_BOUND
               ) -> Representation:
    """Ext^p(m, algebra) with its right-module structure, returned as a
    representation of the opposite algebra: the cohomology of the
    dualized resolution complex."""
    alg = m.algebra
    opp = opposite(alg)
    if m.is_zero():
        return zero_rep(opp)
    res = min_proj_resolution(m, 0)
    _require_depth(res, p + 1, maxlen)
    if p > res.length and res.terminated:
        return zero_rep(opp)
    out_map = _dualized_differential(res, p + 1)
    kernel, incl = kernel_rep(out_map)
    if p == 0:
        quotient, _ = cokernel_rep(ModuleMap.zero(zero_rep(opp), kernel))
        return quotient
    in_map = _dualized_differential(res, p)
    # factor the incoming map through the kernel (d* d* = 0)
    from .exactla import solve
    blocks = {}
    for v in opp.quiver.vertices:
        x = solve(incl.blocks[v], in_map.blocks[v])
        assert x is not None, "dualized complex is not a complex"
        blocks[v] = x
    factored = ModuleMap(in_map.source, kernel, blocks, validate=False)
    quotient, _ = cokernel_rep(factored)
    return quotient


# ---------------------------------------------------------------------------
# homological dimensions


def pd(m: Representation, bound: int = DEFAULT_BOUND):
    """Projective dimension, or an infinity marker past the step bound."""
    if m.is_zero():
        return 0
    res = min_proj_resolution(m, bound)
    if not res.terminated and res.length >= bound:
        # termination exactly at the bound is only visible one kernel later
        res.syzygy(res.length + 1)
    if res.terminated:
        return res.length
    return InfinityMarker(bound)


def injd(m: Representation, bound: int = DEFAULT_BOUND):
    """Injective dimension: the projective dimension of the dual over the
    opposite algebra."""
    if m.is_zero():
        return 0
    return pd(dual(m), bound)


def gldim(alg: BoundQuiverAlgebra, bound: int = DEFAULT_BOUND):
    """Global dimension: the maximum projective dimension of the vertex
    simples; infinity markers propagate."""
    got = alg._cache.get(("gldim", bound))
    if got is not None:
        return got
    best = 0
    out = None
    for v in alg.quiver.vertices:
        d = pd(simple(alg, v), bound)
        if not is_finite(d):
            out = d
            break
        best = max(best, d)
    if out is None:
        out = best
    alg._cache[("gldim", bound)] = out
    return out


# ---------------------------------------------------------------------------
# higher translates


def tau_n(m: Representation, n: int, maxlen: int = DEFAULT_BOUND
          ) -> Representation:
    """tau_n = D Tr of the (n-1)-st syzygy, computed off the cached minimal
    resolution; zero when the projective dimension is below n."""
    if n < 1:
        raise QtiltError("tau_n needs n >= 1")
    alg = m.algebra
    if m.is_zero():
        return zero_rep(alg)
    res = min_proj_resolution(m, 0)
    _require_depth(res, n, maxlen)
    if res.terminated and res.length < n:
        return zero_rep(alg)
    # transpose of the (n-1)-st syzygy: dualize its presentation
    # terms[n] -> terms[n-1]
    d_star = _dualized_differential_window(res, n)
    tr, _ = cokernel_rep(d_star)
    return dual(tr)


def _dualized_differential_window(res: MinimalResolution, i: int) -> ModuleMap:
    res.extend(i)
    return _dualized_differential(res, i)


def tau_n_minus(m: Representation, n: int, maxlen: int = DEFAULT_BOUND
                ) -> Representation:
    """tau_n^- = Tr of the (n-1)-st syzygy of the dual, taken over the
    opposite algebra; lands back in modules over the original algebra."""
    if n < 1:
        raise QtiltError("tau_n_minus needs n >= 1")
    alg = m.algebra
    if m.is_zero():
        return zero_rep(alg)
    dm = dual(m)
    res = min_proj_resolution(dm, 0)
    _require_depth(res, n, maxlen)
    if res.terminated and res.length < n:
        return zero_rep(alg)
    d_star = _dualized_differential_window(res, n)
    tr, _ = cokernel_rep(d_star)
    assert tr.algebra is alg
    return tr


def tau_n_ext(m: Representation, n: int, maxlen: int = DEFAULT_BOUND
              ) -> Representation:
    """The Ext form of tau_n: the dual of Ext^n(m, algebra).  Agrees with
    tau_n when the global dimension is at most n."""
    return dual(ext_module(m, n, maxlen))


def tau_n_minus_ext(m: Representation, n: int, maxlen: int = DEFAULT_BOUND
                    ) -> Representation:
    """The Ext form of tau_n^-: Ext^n over the opposite algebra of the
    dual, against that algebra."""
    return ext_module(dual(m), n, maxlen)


class ProbeResult:
    __slots__ = ("verdict", "iterations", "trace")

    def __init__(self, verdict, iterations, trace):
        self.verdict = verdict          # "finite" or "undetermined"
        self.iterations = iterations    # witness l, or max_iter
        self.trace = trace              # dim vector of each iterate

    def __repr__(self):
        return f"ProbeResult({self.verdict}, l={self.iterations})"


def tau_finiteness_probe(alg: BoundQuiverAlgebra, n: int,
                         max_iter: int = 10) -> ProbeResult:
    """Iterate tau_n on the injective cogenerator until an iterate
    vanishes (verdict "finite" with the witness exponent) or max_iter is
    reached ("undetermined").  Requires gl.dim <= n; iteration runs
    summand-by-summand, which is equivalent since tau_n is additive."""
    g = gldim(alg)
    if not is_finite(g) or g > n:
        raise QtiltError(
            f"probe needs global dimension <= {n}, found {g}")
    pieces = [inj(alg, v) for v in alg.quiver.vertices]
    trace = []
    for l in range(1, max_iter + 1):
        new_pieces = []
        for piece in pieces:
            t = tau_n(piece, n)
            if not t.is_zero():
                new_pieces.append(t)
        vec = [0] * len(alg.quiver.vertices)
        for piece in new_pieces:
            for i, v in enumerate(alg.quiver.vertices):
                vec[i] += piece.dims[v]
        trace.append(tuple(vec))
        pieces = new_pieces
        if not pieces:
            return ProbeResult("finite", l, trace)
    return ProbeResult("undetermined", max_iter, trace)
