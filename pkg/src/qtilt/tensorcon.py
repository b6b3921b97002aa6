"""Tensor products of bound quiver algebras, modules, and maps.

The product of two bound quiver algebras is materialized as a genuine
bound quiver algebra on the product quiver: one arrow per (factor arrow,
opposite-factor vertex), commutativity relations making the two factor
actions commute, and each factor relation tensored with every trivial
path.  The build asserts that the dimension comes out as the product of
the factor dimensions, which catches any mistake in the relation set.
"""

from typing import List, Tuple

from .errors import FieldMismatchError, QtiltError
from .exactla import Matrix, kron
from .homengine import ext_dim, min_proj_resolution
from .quivercore import (Arrow, BoundQuiverAlgebra, Path, PathSum, Quiver,
                         build_algebra)
from .repcore import ModuleMap, Representation, direct_sum, zero_rep


def _vname(u: str, v: str) -> str:
    return f"({u},{v})"


def _left_arrow(a: str, v: str) -> str:
    return f"{a}(x)e_{v}"


def _right_arrow(u: str, b: str) -> str:
    return f"e_{u}(x){b}"


class TensorAlgebraResult:
    """The product algebra together with the factor bookkeeping."""

    def __init__(self, algebra, left, right):
        self.algebra = algebra
        self.left = left
        self.right = right

    def vertex(self, u: str, v: str) -> str:
        return _vname(u, v)

    def left_arrow(self, a: str, v: str) -> str:
        return _left_arrow(a, v)

    def right_arrow(self, u: str, b: str) -> str:
        return _right_arrow(u, b)

    def idempotent(self, u: str, v: str):
        return self.algebra.idempotent(_vname(u, v))

    def vertex_pairs(self) -> List[Tuple[str, str]]:
        return [(u, v) for u in self.left.quiver.vertices
                for v in self.right.quiver.vertices]


def _lift_left_path(p: Path, v: str) -> Path:
    names = tuple(_left_arrow(a, v) for a in p.arrows)
    return Path(names, _vname(p.source, v), _vname(p.target, v))


def _lift_right_path(u: str, p: Path) -> Path:
    names = tuple(_right_arrow(u, b) for b in p.arrows)
    return Path(names, _vname(u, p.source), _vname(u, p.target))


def tensor_algebras(left: BoundQuiverAlgebra, right: BoundQuiverAlgebra
                    ) -> TensorAlgebraResult:
    """The tensor product algebra on the product quiver."""
    if left.field != right.field:
        raise FieldMismatchError("factors over different fields")
    field = left.field
    vertices = [_vname(u, v) for u in left.quiver.vertices
                for v in right.quiver.vertices]
    arrows = []
    for a in left.quiver.arrows:
        for v in right.quiver.vertices:
            arrows.append(Arrow(_left_arrow(a.name, v),
                                _vname(a.source, v), _vname(a.target, v)))
    for u in left.quiver.vertices:
        for b in right.quiver.arrows:
            arrows.append(Arrow(_right_arrow(u, b.name),
                                _vname(u, b.source), _vname(u, b.target)))
    quiver = Quiver(vertices, arrows)
    relations = []
    for r in left.relations:
        for v in right.quiver.vertices:
            relations.append(PathSum(field, [(c, _lift_left_path(p, v))
                                             for c, p in r.terms]))
    for u in left.quiver.vertices:
        for r in right.relations:
            relations.append(PathSum(field, [(c, _lift_right_path(u, p))
                                             for c, p in r.terms]))
    one = field.one()
    minus_one = field.canon(-1) if field.char == 0 else field.p - 1
    for a in left.quiver.arrows:
        for b in right.quiver.arrows:
            first = Path((_left_arrow(a.name, b.target),
                          _right_arrow(a.source, b.name)),
                         _vname(a.source, b.source), _vname(a.target, b.target))
            second = Path((_right_arrow(a.target, b.name),
                           _left_arrow(a.name, b.source)),
                          _vname(a.source, b.source), _vname(a.target, b.target))
            relations.append(PathSum(field, [(one, first), (minus_one, second)]))
    alg = build_algebra(quiver, relations, field,
                        maxdeg=left.maxdeg + right.maxdeg,
                        name=f"{left.name}(x){right.name}")
    if alg.dim != left.dim * right.dim:
        raise QtiltError(
            f"tensor algebra dimension {alg.dim} differs from "
            f"{left.dim}*{right.dim}; relation set is wrong")
    return TensorAlgebraResult(alg, left, right)


def tensor_modules(t: TensorAlgebraResult, m: Representation,
                   n: Representation, validate: bool = True) -> Representation:
    """The product-algebra module M (x) N: Kronecker-product vertex spaces,
    each factor acting on its own tensor leg."""
    if m.algebra is not t.left or n.algebra is not t.right:
        raise QtiltError("factors do not live over the factor algebras")
    field = t.algebra.field
    dims = {}
    for u in t.left.quiver.vertices:
        for v in t.right.quiver.vertices:
            dims[_vname(u, v)] = m.dims[u] * n.dims[v]
    mats = {}
    for a in t.left.quiver.arrows:
        for v in t.right.quiver.vertices:
            mats[_left_arrow(a.name, v)] = kron(
                m.mats[a.name], Matrix.identity(field, n.dims[v]))
    for u in t.left.quiver.vertices:
        for b in t.right.quiver.arrows:
            mats[_right_arrow(u, b.name)] = kron(
                Matrix.identity(field, m.dims[u]), n.mats[b.name])
    return Representation(t.algebra, dims, mats, validate=validate)


def tensor_maps(t: TensorAlgebraResult, f: ModuleMap, g: ModuleMap,
                validate: bool = True) -> ModuleMap:
    """Vertexwise Kronecker product of two module maps."""
    source = tensor_modules(t, f.source, g.source, validate=False)
    target = tensor_modules(t, f.target, g.target, validate=False)
    blocks = {}
    for u in t.left.quiver.vertices:
        for v in t.right.quiver.vertices:
            blocks[_vname(u, v)] = kron(f.blocks[u], g.blocks[v])
    return ModuleMap(source, target, blocks, validate=validate)


class TotalComplex:
    """The totalized tensor product of the factor minimal resolutions:
    terms[p] = sum of P_i (x) Q_j over i+j=p, with the sign (-1)^i on the
    second-factor differential.  maps[0] is the augmentation onto
    M (x) N and maps[p] : terms[p] -> terms[p-1]."""

    def __init__(self, module, terms, maps):
        self.module = module
        self.terms = terms
        self.maps = maps

    @property
    def length(self):
        return len(self.terms) - 1


def tensor_total_complex(t: TensorAlgebraResult, m: Representation,
                         n: Representation, upto: int) -> TotalComplex:
    resm = min_proj_resolution(m, upto)
    resn = min_proj_resolution(n, upto)
    if not (resm.terminated and resn.terminated):
        raise QtiltError("factor resolutions not finite within the bound")
    field = t.algebra.field
    product = tensor_modules(t, m, n, validate=False)
    sign_one = field.one()
    sign_minus = field.canon(-1) if field.char == 0 else field.p - 1

    def components(p):
        out = []
        for i in range(p + 1):
            j = p - i
            if i <= resm.length and j <= resn.length:
                out.append((i, j))
        return out

    depth = min(upto, resm.length + resn.length)
    terms = []
    term_parts = []
    inclusions = []
    projections = []
    for p in range(depth + 1):
        comps = components(p)
        parts = [tensor_modules(t, resm.term(i), resn.term(j), validate=False)
                 for (i, j) in comps]
        if parts:
            total, incls, projs = direct_sum(parts)
        else:
            total, incls, projs = zero_rep(t.algebra), [], []
        terms.append(total)
        term_parts.append(comps)
        inclusions.append(incls)
        projections.append(projs)
    maps = [None] * (depth + 1)
    # augmentation through the (0,0) component
    aug_block = tensor_maps(t, resm.maps[0], resn.maps[0], validate=False)
    aug = ModuleMap(terms[0], product,
                    {v: aug_block.blocks[v] * projections[0][0].blocks[v]
                     for v in t.algebra.quiver.vertices}, validate=False)
    maps[0] = aug
    for p in range(1, depth + 1):
        src_comps = term_parts[p]
        tgt_comps = term_parts[p - 1]
        tgt_pos = {c: k for k, c in enumerate(tgt_comps)}
        total_map = ModuleMap.zero(terms[p], terms[p - 1])
        for s_idx, (i, j) in enumerate(src_comps):
            if i >= 1 and (i - 1, j) in tgt_pos:
                idm = ModuleMap.identity(resn.term(j))
                block = tensor_maps(t, resm.maps[i], idm, validate=False)
                piece = inclusions[p - 1][tgt_pos[(i - 1, j)]] * block * \
                    projections[p][s_idx]
                total_map = total_map + piece
            if j >= 1 and (i, j - 1) in tgt_pos:
                idm = ModuleMap.identity(resm.term(i))
                block = tensor_maps(t, idm, resn.maps[j], validate=False)
                sign = sign_one if i % 2 == 0 else sign_minus
                piece = inclusions[p - 1][tgt_pos[(i, j - 1)]] * block * \
                    projections[p][s_idx]
                total_map = total_map + piece.scale(sign)
        maps[p] = total_map
    return TotalComplex(product, terms, maps)


class KunnethReport:
    """Per-degree comparison of Ext over the product against the
    convolution of the factor Ext dimensions."""

    def __init__(self, rows):
        self.rows = rows  # list of (degree, product_dim, convolution_dim)

    @property
    def all_equal(self) -> bool:
        return all(a == b for _, a, b in self.rows)

    def __repr__(self):
        body = ", ".join(f"q={q}: {a}|{b}" for q, a, b in self.rows)
        return f"KunnethReport({body})"


def kunneth_verify(t: TensorAlgebraResult, m: Representation,
                   n: Representation, mprime: Representation,
                   nprime: Representation, pmax: int) -> KunnethReport:
    """Compare dim Ext^q(M (x) M', N (x) N') over the product algebra with
    the convolution of the factor Ext dimensions, for q up to pmax.  The
    product side resolves M (x) M' from scratch; the factor side only sees
    the factor algebras, so the two routes are independent."""
    source = tensor_modules(t, m, mprime, validate=False)
    target = tensor_modules(t, n, nprime, validate=False)
    left_dims = [ext_dim(m, n, i) for i in range(pmax + 1)]
    right_dims = [ext_dim(mprime, nprime, j) for j in range(pmax + 1)]
    rows = []
    for q in range(pmax + 1):
        lhs = ext_dim(source, target, q)
        rhs = sum(left_dims[i] * right_dims[q - i] for i in range(q + 1))
        rows.append((q, lhs, rhs))
    return KunnethReport(rows)


def structural_suite(t: TensorAlgebraResult, seed: int = 0,
                     module_count: int = 4):
    """Exact structural checks for the tensor constructions: radical
    formula, flag preservation, simples/projectives/injectives and
    idempotents, module radicals and tops, projective covers, dimension
    additivity.  Returns (name, ok, detail) triples."""
    from .homengine import gldim, injd, is_finite, pd
    from .quivercore import multiply, radical_basis, semisimple_and_basic_flags
    from .repcore import (decompose, endomorphism_algebra, inj, is_isomorphic,
                          proj, projective_cover, random_module, simple,
                          top_and_radical)
    from .quivercore import abstract_radical

    alg = t.algebra
    results = []

    rl, dl = len(radical_basis(t.left)), t.left.dim
    rr, dr = len(radical_basis(t.right)), t.right.dim
    got = len(radical_basis(alg))
    want = rl * dr + dl * rr - rl * rr
    results.append(("radical_formula", got == want, f"{got}={want}"))

    sl = semisimple_and_basic_flags(t.left)
    sr = semisimple_and_basic_flags(t.right)
    sp = semisimple_and_basic_flags(alg)
    results.append(("semisimple_preservation",
                    sp[0] == (sl[0] and sr[0]), f"{sl[0]}*{sr[0]}->{sp[0]}"))
    results.append(("basic_preservation",
                    sp[1] == (sl[1] and sr[1]), f"{sl[1]}*{sr[1]}->{sp[1]}"))

    ok = True
    for u in t.left.quiver.vertices:
        for v in t.right.quiver.vertices:
            s = tensor_modules(t, simple(t.left, u), simple(t.right, v),
                               validate=False)
            ok = ok and s.total_dim() == 1 and s.dims[t.vertex(u, v)] == 1
    results.append(("simples", ok, "S(u)(x)S(v) simple"))

    ok = True
    total = alg.zero_element()
    for u in t.left.quiver.vertices:
        for v in t.right.quiver.vertices:
            e = t.idempotent(u, v)
            ok = ok and multiply(alg, e, e) == e
            total = tuple(alg.field.canon(a + b) for a, b in zip(total, e))
            sca, _ = endomorphism_algebra(proj(alg, t.vertex(u, v)))
            ok = ok and sca.dim - len(abstract_radical(sca)) == 1
    ok = ok and total == alg.unit()
    results.append(("idempotents", ok, "complete orthogonal primitive"))

    ok = True
    for u in t.left.quiver.vertices:
        for v in t.right.quiver.vertices:
            pp = tensor_modules(t, proj(t.left, u), proj(t.right, v),
                                validate=False)
            ok = ok and is_isomorphic(pp, proj(alg, t.vertex(u, v)), seed=seed)
    results.append(("projectives", ok, "P(u)(x)P(v)"))

    ok = True
    for u in t.left.quiver.vertices:
        for v in t.right.quiver.vertices:
            ii = tensor_modules(t, inj(t.left, u), inj(t.right, v),
                                validate=False)
            ok = ok and is_isomorphic(ii, inj(alg, t.vertex(u, v)), seed=seed)
    results.append(("injectives", ok, "I(u)(x)I(v)"))

    pairs = [(random_module(t.left, seed=seed + 2 * k),
              random_module(t.right, seed=seed + 2 * k + 1))
             for k in range(module_count)]

    ok = True
    for m, n in pairs:
        prod = tensor_modules(t, m, n, validate=False)
        radp = top_and_radical(prod).radical
        radm = top_and_radical(m).radical
        radn = top_and_radical(n).radical
        for u in t.left.quiver.vertices:
            for v in t.right.quiver.vertices:
                want = radm.dims[u] * n.dims[v] + m.dims[u] * radn.dims[v] \
                    - radm.dims[u] * radn.dims[v]
                ok = ok and radp.dims[t.vertex(u, v)] == want
    results.append(("module_radical", ok, f"{len(pairs)} pairs"))

    ok = True
    for m, n in pairs:
        prod = tensor_modules(t, m, n, validate=False)
        tp = top_and_radical(prod).top
        tm = top_and_radical(m).top
        tn = top_and_radical(n).top
        for u in t.left.quiver.vertices:
            for v in t.right.quiver.vertices:
                ok = ok and tp.dims[t.vertex(u, v)] == tm.dims[u] * tn.dims[v]
    results.append(("module_top", ok, f"{len(pairs)} pairs"))

    ok = True
    for m, n in pairs:
        cm = projective_cover(m).projective
        cn = projective_cover(n).projective
        direct = projective_cover(tensor_modules(t, m, n,
                                                 validate=False)).projective
        ok = ok and is_isomorphic(direct, tensor_modules(t, cm, cn,
                                                         validate=False),
                                  seed=seed)
    results.append(("projective_covers", ok, f"{len(pairs)} pairs"))

    ok = True
    detail = []
    for m, n in pairs[:2]:
        pm, pn = pd(m), pd(n)
        im, in_ = injd(m), injd(n)
        prod = tensor_modules(t, m, n, validate=False)
        if is_finite(pm) and is_finite(pn):
            ok = ok and pd(prod) == pm + pn
            detail.append(f"pd{pm}+{pn}")
        if is_finite(im) and is_finite(in_):
            ok = ok and injd(prod) == im + in_
            detail.append(f"id{im}+{in_}")
    results.append(("dimension_additivity", ok, ",".join(detail) or "skipped"))

    gl, gr = gldim(t.left), gldim(t.right)
    gp = gldim(alg)
    if is_finite(gl) and is_finite(gr):
        results.append(("gldim_additivity", gp == gl + gr, f"{gl}+{gr}={gp}"))
    else:
        results.append(("gldim_additivity", not is_finite(gp),
                        "infinite factors"))

    ok = True
    for m, n in pairs[:2]:
        dm = decompose(m, seed)
        dn = decompose(n, seed)
        dp = decompose(tensor_modules(t, m, n, validate=False), seed)
        want = sum(am * bm for _, am in dm.summands for _, bm in dn.summands)
        ok = ok and len(dp.pieces) == want
    results.append(("indecomposables", ok, "piece counts multiply"))

    return results
