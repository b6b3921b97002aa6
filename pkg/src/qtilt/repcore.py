"""Modules over a bound quiver algebra as quiver representations.

A representation assigns a space K^d to each vertex and a matrix to each
arrow (shape: target dimension by source dimension); every relation of the
algebra must evaluate to zero.  Module maps are vertex-indexed matrices
intertwining the arrow actions.  Projective modules carry their generator
bookkeeping so Hom spaces out of them need no linear solving.
"""

import random
from typing import Dict, List, Sequence, Tuple

from .errors import (AlgebraMismatchError, QtiltError, ShapeMismatchError,
                     UndecidedIsomorphismError)
from .exactla import (Matrix, block_diag, cokernel_data, column_space_basis,
                      hstack, kernel_basis, kernel_data, solve,
                      solve_against_kernel)
from .quivercore import (BoundQuiverAlgebra, Path, StructureConstantAlgebra,
                         opposite, primitive_orthogonal_idempotents)


class Representation:
    """A finite dimensional left module, stored vertexwise."""

    __slots__ = ("algebra", "dims", "mats", "proj_gens", "summands", "_cache")

    def __init__(self, algebra: BoundQuiverAlgebra, dims: Dict[str, int],
                 mats: Dict[str, Matrix], proj_gens=None, validate=True):
        self.summands = None  # set by direct_sum: list of (piece, incl, proj)
        self.algebra = algebra
        unknown = set(dims) - set(algebra.quiver.vertices)
        if unknown:
            raise QtiltError(f"unknown vertices in dimension vector: {unknown}")
        self.dims = {v: int(dims.get(v, 0)) for v in algebra.quiver.vertices}
        self.mats = {}
        for a in algebra.quiver.arrows:
            m = mats.get(a.name)
            if m is None:
                m = Matrix.zeros(algebra.field, self.dims[a.target],
                                 self.dims[a.source])
            self.mats[a.name] = m
        self.proj_gens = tuple(proj_gens) if proj_gens is not None else None
        self._cache: Dict = {}
        if validate:
            self._validate()

    def _validate(self):
        for a in self.algebra.quiver.arrows:
            m = self.mats[a.name]
            if (m.nrows, m.ncols) != (self.dims[a.target], self.dims[a.source]):
                raise ShapeMismatchError(
                    f"arrow {a.name}: matrix is {m.nrows}x{m.ncols}, expected "
                    f"{self.dims[a.target]}x{self.dims[a.source]}")
            if m.field != self.algebra.field:
                raise QtiltError(f"arrow {a.name}: wrong coefficient field")
        for rel in self.algebra.relations:
            if not self.evaluate_pathsum(rel).is_zero():
                raise QtiltError(f"relation {rel!r} does not vanish")

    # -- structure -----------------------------------------------------------

    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims[v] for v in self.algebra.quiver.vertices)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def act_path(self, p: Path) -> Matrix:
        """Matrix of a path acting on this module (source to target space)."""
        got = self._cache.get(("act", p))
        if got is not None:
            return got
        field = self.algebra.field
        if not p.arrows:
            m = Matrix.identity(field, self.dims[p.source])
        else:
            m = self.mats[p.arrows[-1]]
            for name in reversed(p.arrows[:-1]):
                m = self.mats[name] * m
        self._cache[("act", p)] = m
        return m

    def evaluate_pathsum(self, ps) -> Matrix:
        field = self.algebra.field
        acc = Matrix.zeros(field, self.dims[ps.target], self.dims[ps.source])
        for c, p in ps.terms:
            acc = acc + self.act_path(p).scale(c)
        return acc

    def act_block(self, items: Sequence[Tuple[object, int]],
                  source: str, target: str) -> Matrix:
        """Action matrix of a block-pure algebra element given as
        (coeff, basis index) pairs from e_target * A * e_source."""
        field = self.algebra.field
        acc = Matrix.zeros(field, self.dims[target], self.dims[source])
        for c, i in items:
            acc = acc + self.act_path(self.algebra.basis[i]).scale(c)
        return acc

    def __repr__(self):
        return f"Representation({self.algebra.name}, dim={self.dim_vector()})"


class ModuleMap:
    """A homomorphism of representations, one matrix per vertex."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: Representation, target: Representation,
                 blocks: Dict[str, Matrix], validate=True):
        if source.algebra is not target.algebra:
            raise AlgebraMismatchError("map between modules over different algebras")
        self.source = source
        self.target = target
        self.blocks = {}
        for v in source.algebra.quiver.vertices:
            b = blocks.get(v)
            if b is None:
                b = Matrix.zeros(source.algebra.field, target.dims[v],
                                 source.dims[v])
            self.blocks[v] = b
        if validate:
            self._validate()

    def _validate(self):
        for v in self.source.algebra.quiver.vertices:
            b = self.blocks[v]
            if (b.nrows, b.ncols) != (self.target.dims[v], self.source.dims[v]):
                raise ShapeMismatchError(f"block at {v} has wrong shape")
        for a in self.source.algebra.quiver.arrows:
            lhs = self.target.mats[a.name] * self.blocks[a.source]
            rhs = self.blocks[a.target] * self.source.mats[a.name]
            if lhs != rhs:
                raise QtiltError(f"map does not intertwine arrow {a.name}")

    @classmethod
    def identity(cls, m: Representation) -> "ModuleMap":
        field = m.algebra.field
        return cls(m, m, {v: Matrix.identity(field, m.dims[v])
                          for v in m.algebra.quiver.vertices}, validate=False)

    @classmethod
    def zero(cls, source, target) -> "ModuleMap":
        return cls(source, target, {}, validate=False)

    def __mul__(self, other: "ModuleMap") -> "ModuleMap":
        """Composition self after other."""
        if other.target is not self.source:
            if other.target.dims != self.source.dims:
                raise ShapeMismatchError("composition endpoints do not match")
        return ModuleMap(other.source, self.target,
                         {v: self.blocks[v] * other.blocks[v]
                          for v in self.blocks}, validate=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         {v: self.blocks[v] + other.blocks[v]
                          for v in self.blocks}, validate=False)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target,
                         {v: self.blocks[v].scale(c) for v in self.blocks},
                         validate=False)

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks.values())

    def is_injective(self) -> bool:
        return all(b.rank() == b.ncols for b in self.blocks.values())

    def is_surjective(self) -> bool:
        return all(b.rank() == b.nrows for b in self.blocks.values())

    def is_isomorphism(self) -> bool:
        return all(b.nrows == b.ncols and b.rank() == b.nrows
                   for b in self.blocks.values())

    def vectorize(self) -> Tuple:
        out = []
        for v in self.source.algebra.quiver.vertices:
            for row in self.blocks[v].rows:
                out.extend(row)
        return tuple(out)

    def __repr__(self):
        return f"ModuleMap({self.source.dim_vector()} -> {self.target.dim_vector()})"


# ---------------------------------------------------------------------------
# constructors


def zero_rep(alg) -> Representation:
    return Representation(alg, {}, {}, validate=False)


def simple(alg, v: str) -> Representation:
    """The simple module concentrated at a vertex."""
    if not alg.quiver.has_vertex(v):
        raise QtiltError(f"unknown vertex {v}")
    return Representation(alg, {v: 1}, {}, validate=False)


def _proj_layout(alg, gens: Sequence[str]):
    """Coordinates of a direct sum of projectives: at each vertex w, the
    concatenation over generators k of the basis of e_w * A * e_{v_k}."""
    layout = {w: [] for w in alg.quiver.vertices}
    for k, v in enumerate(gens):
        for w in alg.quiver.vertices:
            for idx in alg.block_indices(v, w):
                layout[w].append((k, idx))
    return layout


def proj_sum(alg, gens: Sequence[str]) -> Representation:
    """Direct sum of indecomposable projectives, one per generator vertex."""
    gens = tuple(gens)
    for v in gens:
        if not alg.quiver.has_vertex(v):
            raise QtiltError(f"unknown vertex {v}")
    layout = _proj_layout(alg, gens)
    dims = {w: len(layout[w]) for w in alg.quiver.vertices}
    field = alg.field
    mats = {}
    for a in alg.quiver.arrows:
        src, tgt = a.source, a.target
        a_idx = alg.basis_index(Path.from_arrow(alg.quiver.arrow(a.name)))
        cols = []
        tgt_pos = {key: i for i, key in enumerate(layout[tgt])}
        for (k, x_idx) in layout[src]:
            col = [field.zero()] * dims[tgt]
            for y_idx, c in alg.basis_product(a_idx, x_idx):
                col[tgt_pos[(k, y_idx)]] = c
            cols.append(col)
        mats[a.name] = Matrix.from_cols(field, cols, nrows=dims[tgt])
    rep = Representation(alg, dims, mats, proj_gens=gens, validate=False)
    return rep


def proj(alg, v: str) -> Representation:
    got = alg._cache.get(("proj", v))
    if got is None:
        got = proj_sum(alg, [v])
        alg._cache[("proj", v)] = got
    return got


def regular(alg) -> Representation:
    got = alg._cache.get("regular")
    if got is None:
        got = proj_sum(alg, list(alg.quiver.vertices))
        alg._cache["regular"] = got
    return got


def dual(m: Representation) -> Representation:
    """The K-dual as a module over the opposite algebra: spaces keep their
    dimensions, arrow matrices transpose onto the reversed arrows."""
    opp = opposite(m.algebra)
    mats = {a.name: m.mats[a.name].transpose() for a in m.algebra.quiver.arrows}
    return Representation(opp, dict(m.dims), mats, validate=False)


def inj(alg, v: str) -> Representation:
    """Indecomposable injective at a vertex: the dual of the projective at
    the same vertex over the opposite algebra."""
    got = alg._cache.get(("inj", v))
    if got is None:
        got = dual(proj(opposite(alg), v))
        alg._cache[("inj", v)] = got
    return got


def injective_cogenerator(alg) -> Representation:
    """Direct sum of all indecomposable injectives (the dual of the
    regular module of the opposite algebra)."""
    got = alg._cache.get("cogenerator")
    if got is None:
        got = dual(regular(opposite(alg)))
        alg._cache["cogenerator"] = got
    return got


def direct_sum(reps: Sequence[Representation]):
    """(sum, inclusions, projections), matrices block-diagonal in the
    given order."""
    assert reps
    alg = reps[0].algebra
    for r in reps:
        if r.algebra is not alg:
            raise AlgebraMismatchError("direct sum across algebras")
    field = alg.field
    verts = alg.quiver.vertices
    dims = {v: sum(r.dims[v] for r in reps) for v in verts}
    mats = {a.name: block_diag(field, [r.mats[a.name] for r in reps])
            for a in alg.quiver.arrows}
    total = Representation(alg, dims, mats, validate=False)
    one, zero = field.one(), field.zero()
    inclusions = []
    projections = []
    offset = {v: 0 for v in verts}
    for r in reps:
        iblocks = {}
        pblocks = {}
        for v in verts:
            d, D, off = r.dims[v], dims[v], offset[v]
            iblocks[v] = Matrix(field,
                                [[one if i == off + j else zero for j in range(d)]
                                 for i in range(D)], ncols=d)
            pblocks[v] = Matrix(field,
                                [[one if j == off + i else zero for j in range(D)]
                                 for i in range(d)], ncols=D)
            offset[v] += d
        inclusions.append(ModuleMap(r, total, iblocks, validate=False))
        projections.append(ModuleMap(total, r, pblocks, validate=False))
    total.summands = list(zip(reps, inclusions, projections))
    return total, inclusions, projections


# ---------------------------------------------------------------------------
# subquotients


def kernel_rep(f: ModuleMap):
    """(K, inclusion) with K the vertexwise kernel, arrows restricted.
    The induced arrow matrices are read off the free rows of the canonical
    kernel bases: the solutions exist because kernels are arrow-stable."""
    alg = f.source.algebra
    kds = {v: kernel_data(f.blocks[v]) for v in alg.quiver.vertices}
    dims = {v: kds[v].matrix.ncols for v in alg.quiver.vertices}
    mats = {}
    for a in alg.quiver.arrows:
        rhs = f.source.mats[a.name] * kds[a.source].matrix
        mats[a.name] = solve_against_kernel(kds[a.target], rhs)
    k = Representation(alg, dims, mats, validate=False)
    incl = ModuleMap(k, f.source, {v: kds[v].matrix
                                   for v in alg.quiver.vertices},
                     validate=False)
    return k, incl


def image_rep(f: ModuleMap):
    """(I, inclusion into the target)."""
    alg = f.source.algebra
    bases = {v: column_space_basis(f.blocks[v]) for v in alg.quiver.vertices}
    dims = {v: bases[v].ncols for v in alg.quiver.vertices}
    mats = {}
    for a in alg.quiver.arrows:
        rhs = f.target.mats[a.name] * bases[a.source]
        x = solve(bases[a.target], rhs)
        assert x is not None, "image is not arrow-stable"
        mats[a.name] = x
    i = Representation(alg, dims, mats, validate=False)
    incl = ModuleMap(i, f.target, {v: bases[v] for v in alg.quiver.vertices},
                     validate=False)
    return i, incl


def cokernel_rep(f: ModuleMap):
    """(C, projection from the target).  Quotient coordinates come from the
    left kernel of the image; the section is the standard vectors at the
    complementary positions, so entries stay small."""
    alg = f.source.algebra
    cds = {v: cokernel_data(f.blocks[v]) for v in alg.quiver.vertices}
    dims = {v: cds[v].projection.nrows for v in alg.quiver.vertices}
    mats = {}
    for a in alg.quiver.arrows:
        src, tgt = a.source, a.target
        sect = f.target.mats[a.name].take_columns(cds[src].complement)
        mats[a.name] = cds[tgt].projection * sect
    c = Representation(alg, dims, mats, validate=False)
    projm = ModuleMap(f.target, c,
                      {v: cds[v].projection for v in alg.quiver.vertices},
                      validate=False)
    return c, projm


def submodule_generated(m: Representation, vectors: Dict[str, List[Sequence]]):
    """(S, inclusion): the smallest subrepresentation containing the given
    vectors (dict vertex -> list of coordinate vectors)."""
    alg = m.algebra
    field = alg.field
    spans = {v: [list(x) for x in vectors.get(v, [])] for v in alg.quiver.vertices}

    def span_matrix(v):
        if not spans[v]:
            return Matrix.zeros(field, m.dims[v], 0)
        return column_space_basis(Matrix.from_cols(field, spans[v],
                                                   nrows=m.dims[v]))

    changed = True
    while changed:
        changed = False
        mats = {v: span_matrix(v) for v in alg.quiver.vertices}
        for a in alg.quiver.arrows:
            img = m.mats[a.name] * mats[a.source]
            for j in range(img.ncols):
                col = list(img.column(j))
                before = mats[a.target]
                test = before.stack_right(Matrix.from_cols(field, [col],
                                                           nrows=m.dims[a.target]))
                if test.rank() > before.ncols:
                    spans[a.target].append(col)
                    changed = True
    bases = {v: span_matrix(v) for v in alg.quiver.vertices}
    dims = {v: bases[v].ncols for v in alg.quiver.vertices}
    mats = {}
    for a in alg.quiver.arrows:
        x = solve(bases[a.target], m.mats[a.name] * bases[a.source])
        assert x is not None
        mats[a.name] = x
    s = Representation(alg, dims, mats, validate=False)
    incl = ModuleMap(s, m, dict(bases), validate=False)
    return s, incl


# ---------------------------------------------------------------------------
# top, radical, projective covers


class TopRadical:
    __slots__ = ("top", "projection", "radical", "inclusion", "sections")

    def __init__(self, top, projection, radical, inclusion, sections):
        self.top = top
        self.projection = projection
        self.radical = radical
        self.inclusion = inclusion
        self.sections = sections  # vertex -> column indices lifting the top


def _radical_bases(m: Representation) -> Dict[str, Matrix]:
    """Vertexwise basis of the arrow-ideal image (columns of the incoming
    arrow matrices at each vertex)."""
    alg = m.algebra
    field = alg.field
    out = {}
    for v in alg.quiver.vertices:
        incoming = [m.mats[a.name] for a in alg.quiver.arrows_into(v)]
        if incoming:
            out[v] = column_space_basis(hstack(incoming))
        else:
            out[v] = Matrix.zeros(field, m.dims[v], 0)
    return out


def _top_sections(m: Representation):
    """Per vertex, the standard coordinates complementing the radical:
    their classes form a basis of the top."""
    rad_bases = _radical_bases(m)
    return {v: cokernel_data(rad_bases[v]).complement
            for v in m.algebra.quiver.vertices}


def top_and_radical(m: Representation) -> TopRadical:
    """Radical = sum of arrow images; top = the semisimple quotient."""
    alg = m.algebra
    rad_bases = _radical_bases(m)
    rad_dims = {v: rad_bases[v].ncols for v in alg.quiver.vertices}
    rad_mats = {}
    for a in alg.quiver.arrows:
        x = solve(rad_bases[a.target], m.mats[a.name] * rad_bases[a.source])
        assert x is not None, "radical is not arrow-stable"
        rad_mats[a.name] = x
    radical = Representation(alg, rad_dims, rad_mats, validate=False)
    inclusion = ModuleMap(radical, m, dict(rad_bases), validate=False)
    top, projection = cokernel_rep(inclusion)
    assert all(mat.is_zero() for mat in top.mats.values()), \
        "top has nonzero arrow action"
    sections = {v: cokernel_data(rad_bases[v]).complement
                for v in alg.quiver.vertices}
    return TopRadical(top, projection, radical, inclusion, sections)


class Cover:
    __slots__ = ("projective", "map")

    def __init__(self, projective, map_):
        self.projective = projective
        self.map = map_


def proj_map_from_images(p: Representation, n: Representation,
                         images) -> ModuleMap:
    """The map out of a projective sum sending generator k to the given
    vector of n at the generator's vertex.  Columns are produced in one
    product per algebra basis element, grouping generators by vertex."""
    alg = p.algebra
    field = alg.field
    gens = p.proj_gens
    layout = _proj_layout(alg, gens)
    gens_at = {}
    for k, v in enumerate(gens):
        gens_at.setdefault(v, []).append(k)
    img_mat = {v: Matrix.from_cols(field, [list(images[k]) for k in ks],
                                   nrows=n.dims[v])
               for v, ks in gens_at.items()}
    gen_pos = {}
    for v, ks in gens_at.items():
        for pos, k in enumerate(ks):
            gen_pos[k] = pos
    blocks = {}
    for w in alg.quiver.vertices:
        total_cols = len(layout[w])
        col_of = {key: i for i, key in enumerate(layout[w])}
        cols = [None] * total_cols
        for v, ks in gens_at.items():
            for x_idx in alg.block_indices(v, w):
                prod = n.act_path(alg.basis[x_idx]) * img_mat[v]
                for k in ks:
                    cols[col_of[(k, x_idx)]] = prod.column(gen_pos[k])
        assert all(c is not None for c in cols)
        blocks[w] = Matrix.from_cols(field, cols, nrows=n.dims[w])
    return ModuleMap(p, n, blocks, validate=False)


def projective_cover(m: Representation) -> Cover:
    """P(top m) together with the lift of the top identification; the
    kernel sits inside rad P."""
    alg = m.algebra
    field = alg.field
    sections = _top_sections(m)
    gens = []
    images = []
    for v in alg.quiver.vertices:
        for col in sections[v]:
            gens.append(v)
            images.append([field.one() if i == col else field.zero()
                           for i in range(m.dims[v])])
    p = proj_sum(alg, gens)
    # surjective by construction: the images lift a basis of the top
    cover = proj_map_from_images(p, m, images)
    return Cover(p, cover)


# ---------------------------------------------------------------------------
# Hom spaces


def hom_space(m: Representation, n: Representation) -> List[ModuleMap]:
    """A basis of Hom(m, n).  Maps out of projective sums and in or out of
    known direct sums are assembled blockwise without solving."""
    if m.algebra is not n.algebra:
        raise AlgebraMismatchError("Hom between modules over different algebras")
    if m.proj_gens is not None:
        return _hom_from_projective(m, n)
    if m.summands is not None:
        out = []
        for piece, _, projection in m.summands:
            out.extend(h * projection for h in hom_space(piece, n))
        return out
    if n.summands is not None:
        out = []
        for piece, inclusion, _ in n.summands:
            out.extend(inclusion * h for h in hom_space(m, piece))
        return out
    return _hom_generic(m, n)


def _hom_from_projective(p: Representation, n: Representation) -> List[ModuleMap]:
    alg = p.algebra
    field = alg.field
    gens = p.proj_gens
    layout = _proj_layout(alg, gens)
    out = []
    for k, v in enumerate(gens):
        for b in range(n.dims[v]):
            blocks = {}
            for w in alg.quiver.vertices:
                cols = []
                for (k2, x_idx) in layout[w]:
                    if k2 != k:
                        cols.append([field.zero()] * n.dims[w])
                    else:
                        act = n.act_path(alg.basis[x_idx])
                        cols.append(list(act.column(b)))
                blocks[w] = Matrix.from_cols(field, cols, nrows=n.dims[w])
            out.append(ModuleMap(p, n, blocks, validate=False))
    return out


def _hom_generic(m: Representation, n: Representation) -> List[ModuleMap]:
    alg = m.algebra
    field = alg.field
    verts = alg.quiver.vertices
    offsets = {}
    total = 0
    for v in verts:
        offsets[v] = total
        total += n.dims[v] * m.dims[v]
    rows = []
    for a in alg.quiver.arrows:
        s, t = a.source, a.target
        ms, nt = m.dims[s], n.dims[t]
        Na, Ma = n.mats[a.name], m.mats[a.name]
        for r in range(nt):
            for c in range(ms):
                row = [field.zero()] * total
                for j in range(n.dims[s]):
                    if Na[(r, j)] != 0:
                        row[offsets[s] + j * m.dims[s] + c] = Na[(r, j)]
                for i in range(m.dims[t]):
                    if Ma[(i, c)] != 0:
                        idx = offsets[t] + r * m.dims[t] + i
                        row[idx] = field.canon(row[idx] - Ma[(i, c)])
                if any(x != 0 for x in row):
                    rows.append(row)
    if rows:
        system = Matrix(field, rows, ncols=total)
        basis = [list(v) for v in kernel_basis(system)]
    else:
        basis = [[field.one() if i == k else field.zero() for i in range(total)]
                 for k in range(total)]
    out = []
    for vec in basis:
        blocks = {}
        for v in verts:
            dn, dm = n.dims[v], m.dims[v]
            sub = vec[offsets[v]:offsets[v] + dn * dm]
            blocks[v] = Matrix(field, [sub[r * dm:(r + 1) * dm] for r in range(dn)],
                               ncols=dm)
        out.append(ModuleMap(m, n, blocks, validate=False))
    return out


def express_in_basis(maps: Sequence[ModuleMap], f: ModuleMap):
    """Coefficients of f on a basis of the Hom space, or None."""
    field = f.source.algebra.field
    cols = [mp.vectorize() for mp in maps]
    target = f.vectorize()
    b = Matrix.from_cols(field, cols, nrows=len(target)) if cols else \
        Matrix.zeros(field, len(target), 0)
    x = solve(b, Matrix.from_cols(field, [target], nrows=len(target)))
    if x is None:
        return None
    return tuple(x.column(0))


def endomorphism_algebra(m: Representation):
    """(StructureConstantAlgebra of End(m) with composition product,
    basis maps)."""
    basis = hom_space(m, m)
    field = m.algebra.field
    d = len(basis)
    cols = [mp.vectorize() for mp in basis]
    veclen = len(cols[0]) if cols else 0
    bmat = Matrix.from_cols(field, cols, nrows=veclen)
    prods = []
    for f in basis:
        for g in basis:
            prods.append((f * g).vectorize())
    sol = solve(bmat, Matrix.from_cols(field, prods, nrows=veclen)) if d else None
    table = []
    for i in range(d):
        row = []
        for j in range(d):
            row.append(tuple(sol.column(i * d + j)))
        table.append(tuple(row))
    unit = express_in_basis(basis, ModuleMap.identity(m))
    assert unit is not None, "identity is not in the computed End basis"
    sca = StructureConstantAlgebra(field, table, unit)
    return sca, basis


# ---------------------------------------------------------------------------
# decomposition and isomorphism


class Decomposition:
    """Indecomposable summands with multiplicities, plus the splitting
    idempotents (as endomorphisms of the input)."""

    __slots__ = ("module", "summands", "idempotents", "pieces")

    def __init__(self, module, summands, idempotents, pieces):
        self.module = module
        self.summands = summands          # list of (Representation, multiplicity)
        self.idempotents = idempotents    # list of ModuleMap, one per piece
        self.pieces = pieces              # list of (Representation, inclusion)

    def total_dim_vector(self):
        verts = self.module.algebra.quiver.vertices
        acc = [0] * len(verts)
        for rep, mult in self.summands:
            for i, v in enumerate(verts):
                acc[i] += mult * rep.dims[v]
        return tuple(acc)


def decompose(m: Representation, seed: int = 0) -> Decomposition:
    """Full decomposition into indecomposables via primitive idempotents of
    the endomorphism algebra.  Characteristic zero, split quotients only."""
    if m.is_zero():
        return Decomposition(m, [], [], [])
    sca, basis = endomorphism_algebra(m)
    if sca.dim == 1:
        return Decomposition(m, [(m, 1)], [ModuleMap.identity(m)],
                             [(m, ModuleMap.identity(m))])
    idems = primitive_orthogonal_idempotents(sca, seed)
    pieces = []
    maps = []
    for vec in idems:
        e = None
        for c, f in zip(vec, basis):
            if c != 0:
                e = f.scale(c) if e is None else e + f.scale(c)
        assert e is not None
        piece, incl = image_rep(e)
        pieces.append((piece, incl))
        maps.append(e)
    summands: List[Tuple[Representation, int]] = []
    for piece, _ in pieces:
        placed = False
        for i, (rep, mult) in enumerate(summands):
            if is_isomorphic(rep, piece, seed=seed):
                summands[i] = (rep, mult + 1)
                placed = True
                break
        if not placed:
            summands.append((piece, 1))
    dec = Decomposition(m, summands, maps, pieces)
    assert dec.total_dim_vector() == m.dim_vector(), \
        "decomposition does not re-sum to the module"
    return dec


def is_isomorphic(m: Representation, n: Representation, seed: int = 0,
                  grid_limit: int = 20000) -> bool:
    """Decide isomorphism by searching Hom(m, n) for an invertible map:
    seeded random combinations first, then an exhaustive small grid.
    Raises UndecidedIsomorphismError when the grid would exceed the
    budget."""
    if m.algebra is not n.algebra:
        raise AlgebraMismatchError("modules over different algebras")
    if m.dim_vector() != n.dim_vector():
        return False
    if m.is_zero():
        return True
    homs = hom_space(m, n)
    if not homs:
        return False
    d = len(homs)

    def invertible(coeffs) -> bool:
        f = None
        for c, h in zip(coeffs, homs):
            if c != 0:
                f = h.scale(c) if f is None else f + h.scale(c)
        if f is None:
            return False
        return f.is_isomorphism()

    rnd = random.Random(seed)
    for _ in range(20):
        if invertible([rnd.randint(-3, 3) for _ in range(d)]):
            return True
    # necessary conditions before the expensive exhaustive fallback
    if len(hom_space(n, m)) != d:
        return False
    if 5 ** d > grid_limit:
        raise UndecidedIsomorphismError(
            f"hom space dimension {d} exceeds the exhaustive search budget")
    from itertools import product
    for coeffs in product(range(-2, 3), repeat=d):
        if invertible(coeffs):
            return True
    return False


# ---------------------------------------------------------------------------
# seeded random modules


def random_module(alg, seed: int, max_dim: int = 3) -> Representation:
    """Deterministic pseudo-random module.  Relation-free algebras get
    random matrices directly; otherwise a random quotient of a small
    projective sum (always satisfies the relations)."""
    rnd = random.Random(seed)
    field = alg.field
    if not alg.relations:
        for _ in range(50):
            dims = {v: rnd.randint(0, max_dim) for v in alg.quiver.vertices}
            if sum(dims.values()) == 0:
                continue
            mats = {}
            for a in alg.quiver.arrows:
                rows = [[field.canon(rnd.randint(-2, 2) if rnd.random() < 0.7 else 0)
                         for _ in range(dims[a.source])]
                        for _ in range(dims[a.target])]
                mats[a.name] = Matrix(field, rows, ncols=dims[a.source])
            return Representation(alg, dims, mats)
        raise QtiltError("random module generation failed")
    for _ in range(50):
        gens = []
        for v in alg.quiver.vertices:
            gens.extend([v] * rnd.randint(0, 2))
        if not gens:
            continue
        p = proj_sum(alg, gens)
        vectors = {v: [] for v in alg.quiver.vertices}
        for _ in range(1 + rnd.randint(0, 2)):
            v = rnd.choice(alg.quiver.vertices)
            if p.dims[v] == 0:
                continue
            vectors[v].append([rnd.randint(-2, 2) for _ in range(p.dims[v])])
        if all(not vs for vs in vectors.values()):
            continue
        _, incl = submodule_generated(p, vectors)
        quot, _ = cokernel_rep(incl)
        if not quot.is_zero():
            return quot
    raise QtiltError("random module generation failed")
