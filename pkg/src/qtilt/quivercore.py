"""Quivers, paths, relations, and bound quiver algebras.

Paths compose right to left: in ``b*a`` the arrow ``a`` acts first, so a
path is admissible when the target of each arrow equals the source of the
next one applied.  The algebra basis is computed degree by degree as the
path space modulo the span of the relation ideal, which terminates for
admissible ideals; each basis element is represented by a single path.
"""

from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .errors import (NotAdmissibleError, NonSplitError, QtiltError,
                     UnsupportedCharacteristicError)
from .exactla import Matrix, QQ, kernel_basis, rref, solve


class Arrow(NamedTuple):
    name: str
    source: str
    target: str


class Quiver:
    """Finite directed graph with named vertices and arrows."""

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Arrow]):
        self.vertices = tuple(vertices)
        self.arrows = tuple(Arrow(*a) for a in arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise QtiltError("duplicate vertex names")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QtiltError("duplicate arrow names")
        if set(names) & set(self.vertices):
            raise QtiltError("arrow names clash with vertex names")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise QtiltError(f"arrow {a.name} has unknown endpoint")
        self._arrow_by_name = {a.name: a for a in self.arrows}
        self._vertex_pos = {v: i for i, v in enumerate(self.vertices)}

    def arrow(self, name: str) -> Arrow:
        return self._arrow_by_name[name]

    def has_vertex(self, v: str) -> bool:
        return v in self._vertex_pos

    def vertex_position(self, v: str) -> int:
        return self._vertex_pos[v]

    def arrows_from(self, v: str) -> List[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def arrows_into(self, v: str) -> List[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices,
                      [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and self.arrows == other.arrows)

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"


class Path:
    """A path in a quiver; ``arrows`` lists names left to right, the
    rightmost acting first.  Trivial paths have an empty arrow tuple."""

    __slots__ = ("arrows", "source", "target")

    def __init__(self, arrows: Tuple[str, ...], source: str, target: str):
        self.arrows = tuple(arrows)
        self.source = source
        self.target = target

    @classmethod
    def trivial(cls, v: str) -> "Path":
        return cls((), v, v)

    @classmethod
    def from_arrow(cls, a: Arrow) -> "Path":
        return cls((a.name,), a.source, a.target)

    @classmethod
    def of(cls, quiver: Quiver, names: Sequence[str]) -> "Path":
        """Build a path from arrow names in print order, validating
        composability."""
        if not names:
            raise QtiltError("empty arrow list; use Path.trivial")
        arrows = [quiver.arrow(n) for n in names]
        for late, early in zip(arrows, arrows[1:]):
            if late.source != early.target:
                raise QtiltError(
                    f"arrows {late.name}*{early.name} do not compose")
        return cls(tuple(names), arrows[-1].source, arrows[0].target)

    @property
    def degree(self) -> int:
        return len(self.arrows)

    def __mul__(self, other: "Path") -> Optional["Path"]:
        """Composition self*other (other acts first); None if endpoints
        do not match."""
        if self.source != other.target:
            return None
        return Path(self.arrows + other.arrows, other.source, self.target)

    def reversed(self) -> "Path":
        return Path(tuple(reversed(self.arrows)), self.target, self.source)

    def sort_key(self):
        return (self.degree, self.arrows, self.source)

    def __eq__(self, other):
        return (isinstance(other, Path) and self.arrows == other.arrows
                and self.source == other.source)

    def __hash__(self):
        return hash((self.arrows, self.source))

    def __repr__(self):
        return format_path(self)


def format_path(p: Path) -> str:
    if not p.arrows:
        return f"e({p.source})"
    return "*".join(p.arrows)


class PathSum:
    """A linear combination of parallel paths (shared source and target)."""

    __slots__ = ("terms", "source", "target")

    def __init__(self, field, terms: Sequence[Tuple[object, Path]]):
        combined: Dict[Path, object] = {}
        for c, p in terms:
            c = field.canon(c)
            if p in combined:
                s = combined[p] + c
                combined[p] = field.canon(s % field.p if field.char else s)
            else:
                combined[p] = c
        items = [(c, p) for p, c in combined.items() if c != 0]
        items.sort(key=lambda t: t[1].sort_key())
        self.terms = tuple(items)
        if not self.terms:
            self.source = None
            self.target = None
            return
        first = self.terms[0][1]
        self.source, self.target = first.source, first.target
        for _, p in self.terms:
            if p.source != self.source or p.target != self.target:
                raise QtiltError("paths in a relation must be parallel")

    def is_zero(self) -> bool:
        return not self.terms

    def min_degree(self) -> int:
        return min(p.degree for _, p in self.terms)

    def max_degree(self) -> int:
        return max(p.degree for _, p in self.terms)

    def is_homogeneous(self) -> bool:
        return self.is_zero() or self.min_degree() == self.max_degree()

    def reversed(self) -> List[Tuple[object, Path]]:
        return [(c, p.reversed()) for c, p in self.terms]

    def format(self, field) -> str:
        return " + ".join(f"{field.fmt(c)} {format_path(p)}" for c, p in self.terms)

    def __repr__(self):
        return " + ".join(f"{c} {format_path(p)}" for c, p in self.terms)


# ---------------------------------------------------------------------------
# triangular span of ideal elements, keyed by leading path


class _IdealSpan:
    """Autoreduced triangular set of parallel-path combinations.  Rows are
    dicts path->coeff, keyed by their minimal path in sort order (longest
    paths first, so normal forms prefer shorter representatives)."""

    def __init__(self, field):
        self.field = field
        self.rows: Dict[Path, Dict[Path, object]] = {}

    @staticmethod
    def _lead(vec) -> Path:
        return min(vec, key=lambda p: (-p.degree, p.arrows, p.source))

    def reduce(self, vec: Dict[Path, object]) -> Dict[Path, object]:
        field = self.field
        vec = dict(vec)
        done: Dict[Path, object] = {}
        while vec:
            p = self._lead(vec)
            c = vec.pop(p)
            if c == 0:
                continue
            row = self.rows.get(p)
            if row is None:
                done[p] = c
                continue
            for q, d in row.items():
                if q is p or q == p:
                    continue
                s = vec.get(q, 0) - c * d
                if field.char:
                    s %= field.p
                if s == 0:
                    vec.pop(q, None)
                else:
                    vec[q] = s
        return done

    def insert(self, vec: Dict[Path, object]) -> bool:
        field = self.field
        nf = self.reduce(vec)
        if not nf:
            return False
        lead = self._lead(nf)
        lc = nf[lead]
        inv = field.inv(lc)
        if field.char:
            nf = {p: (c * inv) % field.p for p, c in nf.items()}
        else:
            nf = {p: field.canon(c * inv) for p, c in nf.items()}
        # autoreduce existing rows against the new one
        for row in list(self.rows.values()):
            if lead in row:
                f = row.pop(lead)
                for q, d in nf.items():
                    if q == lead:
                        continue
                    s = row.get(q, 0) - f * d
                    if field.char:
                        s %= field.p
                    if s == 0:
                        row.pop(q, None)
                    else:
                        row[q] = s
        nf[lead] = field.one()
        self.rows[lead] = nf
        return True

    def pivot_paths(self):
        return set(self.rows)


def _paths_of_degree(quiver: Quiver, d: int) -> List[Path]:
    if d == 0:
        return [Path.trivial(v) for v in quiver.vertices]
    cur = [Path.from_arrow(a) for a in quiver.arrows]
    for _ in range(d - 1):
        nxt = []
        for p in cur:
            for a in quiver.arrows:
                if a.source == p.target:
                    nxt.append(Path((a.name,) + p.arrows, p.source, a.target))
        cur = nxt
    cur.sort(key=Path.sort_key)
    return cur


class BoundQuiverAlgebra:
    """A path algebra modulo an admissible relation ideal, with a monomial
    basis, structure constants, and radical grading.

    Use :func:`build_algebra`; the constructor trusts precomputed data.
    """

    def __init__(self, name, field, quiver, relations, basis, span, nilpotency,
                 maxdeg):
        self.name = name
        self.field = field
        self.quiver = quiver
        self.relations = tuple(relations)
        self.basis = tuple(basis)                # Path monomial representatives
        self.dim = len(self.basis)
        self.nilpotency = nilpotency             # least N with rad^N = 0
        self.maxdeg = maxdeg
        self._span = span                        # _IdealSpan for normal forms
        self._index = {p: i for i, p in enumerate(self.basis)}
        self._blocks: Dict[Tuple[str, str], List[int]] = {}
        for i, p in enumerate(self.basis):
            self._blocks.setdefault((p.source, p.target), []).append(i)
        self._products: Dict[Tuple[int, int], Tuple[Tuple[int, object], ...]] = {}
        self._opposite: Optional["BoundQuiverAlgebra"] = None
        self._op_basis_images: Optional[List[Tuple]] = None
        self._cache: Dict = {}

    # -- basic structure ----------------------------------------------------

    def vertex_count(self) -> int:
        return len(self.quiver.vertices)

    def dims_by_degree(self) -> List[int]:
        out = [0] * self.nilpotency
        for p in self.basis:
            out[p.degree] += 1
        return out

    def block_indices(self, source: str, target: str) -> List[int]:
        """Basis indices of e_target * A * e_source."""
        return self._blocks.get((source, target), [])

    def zero_element(self) -> Tuple:
        return (self.field.zero(),) * self.dim

    def unit(self) -> Tuple:
        vec = [self.field.zero()] * self.dim
        for v in self.quiver.vertices:
            vec[self._index[Path.trivial(v)]] = self.field.one()
        return tuple(vec)

    def idempotent(self, v: str) -> Tuple:
        vec = [self.field.zero()] * self.dim
        vec[self._index[Path.trivial(v)]] = self.field.one()
        return tuple(vec)

    def basis_index(self, p: Path) -> int:
        return self._index[p]

    def normal_form(self, p: Path) -> Dict[int, object]:
        """Coefficients of a path on the monomial basis."""
        if p.degree >= self.nilpotency:
            return {}
        nf = self._span.reduce({p: self.field.one()})
        return {self._index[q]: c for q, c in nf.items()}

    def basis_product(self, i: int, j: int) -> Tuple[Tuple[int, object], ...]:
        """b_i * b_j as (index, coeff) pairs."""
        got = self._products.get((i, j))
        if got is not None:
            return got
        p, q = self.basis[i], self.basis[j]
        out: Tuple[Tuple[int, object], ...] = ()
        if p.source == q.target:
            pq = p * q
            out = tuple(sorted(self.normal_form(pq).items()))
        self._products[(i, j)] = out
        return out

    def radical_indices(self) -> List[int]:
        return [i for i, p in enumerate(self.basis) if p.degree >= 1]

    def __repr__(self):
        return f"BoundQuiverAlgebra({self.name}, dim={self.dim})"


def multiply(alg: BoundQuiverAlgebra, x: Sequence, y: Sequence) -> Tuple:
    """Bilinear product of coefficient vectors via structure constants."""
    if len(x) != alg.dim or len(y) != alg.dim:
        raise QtiltError("element vector length does not match the algebra")
    field = alg.field
    acc = [field.zero()] * alg.dim
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j, yj in enumerate(y):
            if yj == 0:
                continue
            for k, c in alg.basis_product(i, j):
                acc[k] += xi * yj * c
    if field.char:
        return tuple(v % field.p for v in acc)
    return tuple(field.canon(v) for v in acc)


def element_from_path(alg: BoundQuiverAlgebra, p: Path) -> Tuple:
    vec = [alg.field.zero()] * alg.dim
    for k, c in alg.normal_form(p).items():
        vec[k] = c
    return tuple(vec)


def _validate_relations(quiver: Quiver, relations) -> None:
    for r in relations:
        if r.is_zero():
            raise QtiltError("zero relation")
        for _, p in r.terms:
            if p.degree < 2:
                raise QtiltError(
                    f"relation path {format_path(p)} has length < 2")
            for name in p.arrows:
                if name not in quiver._arrow_by_name:
                    raise QtiltError(f"relation uses unknown arrow {name}")


def _vec_of(field, pathsum: PathSum) -> Dict[Path, object]:
    return {p: c for c, p in pathsum.terms}


def _mul_path_vec(field, vec: Dict[Path, object], arrow: Arrow, on_left: bool):
    out = {}
    ap = Path.from_arrow(arrow)
    for p, c in vec.items():
        q = (ap * p) if on_left else (p * ap)
        if q is not None:
            out[q] = c
    return out


def _graded_build(name, field, quiver, relations, maxdeg):
    span = _IdealSpan(field)
    rels_by_degree: Dict[int, List[Dict[Path, object]]] = {}
    for r in relations:
        rels_by_degree.setdefault(r.max_degree(), []).append(_vec_of(field, r))
    basis: List[Path] = list(_paths_of_degree(quiver, 0))
    # reduced rows spanning the degree-(d-1) ideal component seed degree d
    prev_rows: List[Dict[Path, object]] = []
    nilpotency = None
    for d in range(1, maxdeg + 1):
        paths_d = _paths_of_degree(quiver, d)
        for vec in prev_rows:
            for a in quiver.arrows:
                for on_left in (True, False):
                    prod = _mul_path_vec(field, vec, a, on_left)
                    if prod:
                        span.insert(prod)
        for vec in rels_by_degree.get(d, []):
            span.insert(vec)
        pivots = span.pivot_paths()
        basis_d = [p for p in paths_d if p not in pivots]
        if not basis_d:
            nilpotency = d
            break
        basis.extend(basis_d)
        prev_rows = [dict(row) for lead, row in span.rows.items()
                     if lead.degree == d]
    if nilpotency is None:
        raise NotAdmissibleError(
            f"quotient still nonzero at degree {maxdeg}; ideal not admissible "
            f"within the bound")
    return basis, span, nilpotency


def _ideal_span_to_cap(field, quiver, relations, cap):
    """Span of all u*r*w whose every homogeneous component has degree <= cap."""
    span = _IdealSpan(field)
    queue = []
    for r in relations:
        vec = _vec_of(field, r)
        if max(p.degree for p in vec) <= cap:
            queue.append(vec)
    for vec in queue:
        span.insert(vec)
    seen = 0
    while seen < len(queue):
        vec = queue[seen]
        seen += 1
        for a in quiver.arrows:
            for on_left in (True, False):
                prod = _mul_path_vec(field, vec, a, on_left)
                if prod and max(p.degree for p in prod) <= cap:
                    if span.insert(prod):
                        queue.append(prod)
    return span


def _filtered_build(name, field, quiver, relations, maxdeg):
    reldeg = max(r.max_degree() for r in relations)
    cap = max(4, reldeg + 2)
    detected = None
    while cap <= 2 * maxdeg + reldeg:
        span = _ideal_span_to_cap(field, quiver, relations, cap)
        for d in range(1, min(cap, maxdeg) + 1):
            paths_d = _paths_of_degree(quiver, d)
            if all(not span.reduce({p: field.one()}) for p in paths_d):
                detected = d
                break
        if detected is not None:
            break
        cap *= 2
    if detected is None:
        raise NotAdmissibleError(
            f"quotient still nonzero at degree {maxdeg}; ideal not admissible "
            f"within the bound")
    # enough slack that reductions below the nilpotency degree are exact
    final_cap = max(cap, 2 * (detected - 1)) + reldeg + detected
    span = _ideal_span_to_cap(field, quiver, relations, final_cap)
    nilpotency = detected
    for d in range(1, detected + 1):
        if all(not span.reduce({p: field.one()})
               for p in _paths_of_degree(quiver, d)):
            nilpotency = d
            break
    for d in range(nilpotency, min(final_cap, 2 * nilpotency - 2) + 1):
        for p in _paths_of_degree(quiver, d):
            if span.reduce({p: field.one()}):
                raise QtiltError("internal: ideal saturation cap too small")
    basis: List[Path] = []
    pivots = span.pivot_paths()
    for d in range(nilpotency):
        basis.extend(p for p in _paths_of_degree(quiver, d) if p not in pivots)
    return basis, span, nilpotency


def build_algebra(quiver: Quiver, relations: Sequence[PathSum], field=QQ,
                  maxdeg: int = 30, name: str = "algebra") -> BoundQuiverAlgebra:
    """Bound quiver algebra for an admissible relation ideal.

    The basis is found degree by degree as paths modulo the ideal span and
    the build stops at the first degree whose quotient vanishes, recording
    the radical nilpotency degree.  Raises NotAdmissibleError when the
    quotient is still nonzero at ``maxdeg``.
    """
    _validate_relations(quiver, relations)
    relations = tuple(relations)
    if all(r.is_homogeneous() for r in relations):
        basis, span, nilp = _graded_build(name, field, quiver, relations, maxdeg)
    else:
        basis, span, nilp = _filtered_build(name, field, quiver, relations, maxdeg)
    basis.sort(key=Path.sort_key)
    return BoundQuiverAlgebra(name, field, quiver, relations, basis, span,
                              nilp, maxdeg)


def opposite(alg: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    """The opposite algebra: arrows and relation paths reversed.  Applying
    it twice returns the original object."""
    if alg._opposite is not None:
        return alg._opposite
    oq = alg.quiver.opposite()
    orels = [PathSum(alg.field, r.reversed()) for r in alg.relations]
    opp = build_algebra(oq, orels, alg.field, alg.maxdeg, alg.name + "_op")
    alg._opposite = opp
    opp._opposite = alg
    return opp


def op_element(alg: BoundQuiverAlgebra, vec: Sequence) -> Tuple:
    """Image of an element under the canonical anti-isomorphism onto the
    opposite algebra."""
    opp = opposite(alg)
    if alg._op_basis_images is None:
        images = []
        for p in alg.basis:
            images.append(element_from_path(opp, p.reversed()))
        alg._op_basis_images = images
    field = alg.field
    acc = [field.zero()] * opp.dim
    for i, c in enumerate(vec):
        if c != 0:
            for k, d in enumerate(alg._op_basis_images[i]):
                if d != 0:
                    acc[k] += c * d
    if field.char:
        return tuple(v % field.p for v in acc)
    return tuple(field.canon(v) for v in acc)


def radical_basis(alg: BoundQuiverAlgebra) -> List[Tuple]:
    """Basis of rad(alg): the classes of all basis paths of length >= 1."""
    out = []
    for i in alg.radical_indices():
        vec = [alg.field.zero()] * alg.dim
        vec[i] = alg.field.one()
        out.append(tuple(vec))
    return out


def semisimple_and_basic_flags(alg: BoundQuiverAlgebra) -> Tuple[bool, bool]:
    """(is_semisimple, is_basic): the radical vanishes / every simple occurs
    once in the top of the regular module."""
    is_semisimple = not alg.radical_indices()
    # top of the regular module: one copy of each vertex simple iff the
    # degree-zero part is exactly the span of the trivial idempotents
    degree_zero = [p for p in alg.basis if p.degree == 0]
    is_basic = (len(degree_zero) == alg.vertex_count()
                and all(p.source == p.target for p in degree_zero))
    return is_semisimple, is_basic


# ---------------------------------------------------------------------------
# abstract algebras given by structure constants


class StructureConstantAlgebra:
    """Finite dimensional associative algebra given by a multiplication
    table on a fixed basis.  Validates associativity and the unit law
    (exhaustively in small dimension, on sampled triples beyond)."""

    def __init__(self, field, table, unit, validate: bool = True):
        self.field = field
        self.table = tuple(tuple(tuple(field.canon(c) for c in cell)
                                 for cell in row) for row in table)
        self.dim = len(self.table)
        self.unit = tuple(field.canon(c) for c in unit)
        if validate:
            self._validate()

    def _validate(self):
        n = self.dim
        for i in range(n):
            if len(self.table[i]) != n or any(len(c) != n for c in self.table[i]):
                raise QtiltError("structure constant table is not cubic")
        for i in range(n):
            ei = tuple(self.field.one() if k == i else self.field.zero()
                       for k in range(n))
            if self.mult(self.unit, ei) != ei or self.mult(ei, self.unit) != ei:
                raise QtiltError("unit law fails")
        if n <= 16:
            triples = ((i, j, k) for i in range(n) for j in range(n)
                       for k in range(n))
        else:
            import random
            rnd = random.Random(0)
            triples = ((rnd.randrange(n), rnd.randrange(n), rnd.randrange(n))
                       for _ in range(500))
        for i, j, k in triples:
            left = self._mult_vec_basis(self.table[i][j], k)
            right = self._mult_basis_vec(i, self.table[j][k])
            if left != right:
                raise QtiltError(f"associativity fails on basis triple "
                                 f"({i},{j},{k})")

    def _mult_vec_basis(self, vec, k):
        field = self.field
        acc = [field.zero()] * self.dim
        for l, c in enumerate(vec):
            if c != 0:
                for m, d in enumerate(self.table[l][k]):
                    if d != 0:
                        acc[m] += c * d
        if field.char:
            return tuple(x % field.p for x in acc)
        return tuple(field.canon(x) for x in acc)

    def _mult_basis_vec(self, i, vec):
        field = self.field
        acc = [field.zero()] * self.dim
        for l, c in enumerate(vec):
            if c != 0:
                for m, d in enumerate(self.table[i][l]):
                    if d != 0:
                        acc[m] += c * d
        if field.char:
            return tuple(x % field.p for x in acc)
        return tuple(field.canon(x) for x in acc)

    def mult(self, x: Sequence, y: Sequence) -> Tuple:
        field = self.field
        acc = [field.zero()] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                f = xi * yj
                for k, c in enumerate(self.table[i][j]):
                    if c != 0:
                        acc[k] += f * c
        if field.char:
            return tuple(v % field.p for v in acc)
        return tuple(field.canon(v) for v in acc)

    def left_mult_matrix(self, x: Sequence) -> Matrix:
        cols = []
        for j in range(self.dim):
            ej = tuple(self.field.one() if k == j else self.field.zero()
                       for k in range(self.dim))
            cols.append(self.mult(x, ej))
        return Matrix.from_cols(self.field, cols, nrows=self.dim)

    def basis_vector(self, i: int) -> Tuple:
        return tuple(self.field.one() if k == i else self.field.zero()
                     for k in range(self.dim))

    def __repr__(self):
        return f"StructureConstantAlgebra(dim={self.dim})"


def regular_structure_algebra(alg: BoundQuiverAlgebra) -> StructureConstantAlgebra:
    """The same algebra repackaged as an abstract multiplication table."""
    n = alg.dim
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            vec = [alg.field.zero()] * n
            for k, c in alg.basis_product(i, j):
                vec[k] = c
            row.append(tuple(vec))
        table.append(tuple(row))
    return StructureConstantAlgebra(alg.field, table, alg.unit(), validate=False)


def abstract_radical(a: StructureConstantAlgebra) -> List[Tuple]:
    """Radical via the trace form of the regular representation: x is
    radical iff trace(L_{xy}) vanishes for all y.  Characteristic zero
    only."""
    if a.field.char != 0:
        raise UnsupportedCharacteristicError(
            "trace-form radical needs characteristic zero")
    n = a.dim
    # trace of left multiplication by each basis element
    tr = []
    for k in range(n):
        t = 0
        for i in range(n):
            t += a.table[k][i][i]
        tr.append(t)
    gram = [[sum(a.table[i][j][k] * tr[k] for k in range(n))
             for j in range(n)] for i in range(n)]
    g = Matrix(a.field, gram)
    return [tuple(v) for v in kernel_basis(g.transpose())]


def minimal_polynomial(a: StructureConstantAlgebra, x: Sequence,
                       unit: Optional[Sequence] = None) -> List:
    """Monic minimal polynomial of x (low-to-high coefficients) relative
    to the given unit (defaults to the algebra unit)."""
    u = tuple(unit) if unit is not None else a.unit
    powers = [u]
    while True:
        cur = Matrix(a.field, powers)
        nxt = a.mult(x, powers[-1])
        sol = solve(cur.transpose(), Matrix.from_cols(a.field, [nxt],
                                                      nrows=a.dim))
        if sol is not None:
            coeffs = [-sol[(i, 0)] for i in range(len(powers))]
            coeffs.append(a.field.one())
            return [a.field.canon(c) for c in coeffs]
        powers.append(nxt)


# -- polynomial helpers over the rationals ----------------------------------

def poly_mul(f, g):
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, c in enumerate(f):
        if c:
            for j, d in enumerate(g):
                out[i + j] += Fraction(c) * Fraction(d)
    return out


def poly_divmod(f, g):
    f = [Fraction(c) for c in f]
    g = [Fraction(c) for c in g]
    while g and g[-1] == 0:
        g.pop()
    q = [Fraction(0)] * max(0, len(f) - len(g) + 1)
    r = f[:]
    while len(r) >= len(g) and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) < len(g):
            break
        c = r[-1] / g[-1]
        d = len(r) - len(g)
        q[d] = c
        for i, gc in enumerate(g):
            r[i + d] -= c * gc
    while r and r[-1] == 0:
        r.pop()
    return q, r


def poly_xgcd(f, g):
    """Extended gcd: (u, v, d) with u*f + v*g = d, d monic."""
    r0, r1 = [Fraction(c) for c in f], [Fraction(c) for c in g]
    u0, u1 = [Fraction(1)], [Fraction(0)]
    v0, v1 = [Fraction(0)], [Fraction(1)]
    while any(r1):
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _poly_sub(u0, poly_mul(q, u1))
        v0, v1 = v1, _poly_sub(v0, poly_mul(q, v1))
    lc = r0[-1]
    r0 = [c / lc for c in r0]
    u0 = [c / lc for c in u0]
    v0 = [c / lc for c in v0]
    return u0, v0, r0


def _poly_sub(f, g):
    n = max(len(f), len(g))
    out = [Fraction(0)] * n
    for i, c in enumerate(f):
        out[i] += Fraction(c)
    for i, c in enumerate(g):
        out[i] -= Fraction(c)
    while out and out[-1] == 0:
        out.pop()
    return out


def factor_rational_poly(coeffs) -> List[Tuple[List, int]]:
    """Irreducible monic factors with multiplicities, low-to-high coeffs."""
    import sympy

    t = sympy.Symbol("t")
    expr = sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
               * t ** i for i, c in enumerate(coeffs))
    _, factors = sympy.factor_list(expr, t)
    out = []
    for f, e in factors:
        poly = sympy.Poly(f, t)
        cs = [Fraction(str(c)) for c in reversed(poly.all_coeffs())]
        lc = cs[-1]
        cs = [c / lc for c in cs]
        out.append((cs, int(e)))
    out.sort(key=lambda fe: (len(fe[0]), [str(c) for c in fe[0]]))
    return out


def poly_eval_in_algebra(a: StructureConstantAlgebra, coeffs, x, unit=None):
    """Evaluate a polynomial at an algebra element (Horner), with the
    constant term against the given unit."""
    u = tuple(unit) if unit is not None else a.unit
    field = a.field
    acc = tuple(field.zero() for _ in range(a.dim))
    for c in reversed(list(coeffs)):
        acc = a.mult(x, acc)
        if c != 0:
            acc = tuple(field.canon(v + c * w) for v, w in zip(acc, u))
    return acc


# -- idempotent splitting and lifting ----------------------------------------

def quotient_by_radical(a: StructureConstantAlgebra):
    """(projection rows, section columns, quotient algebra) for a/rad(a)."""
    rad = abstract_radical(a)
    field = a.field
    if not rad:
        proj = Matrix.identity(field, a.dim)
        return proj, proj, a
    radm = Matrix(field, rad)
    res = rref(radm)
    piv = set(res.pivots)
    free = [j for j in range(a.dim) if j not in piv]
    s = len(free)
    # projection: normal form modulo the radical row space, in free coords
    zero = field.zero()
    proj_rows = []
    for k, fcol in enumerate(free):
        row = [zero] * a.dim
        row[fcol] = field.one()
        for r, c in enumerate(res.pivots):
            if res.matrix[(r, fcol)] != 0:
                row[c] = field.canon(-res.matrix[(r, fcol)])
        proj_rows.append(row)
    proj = Matrix(field, proj_rows)          # s x dim, maps A -> Abar coords
    section_cols = []
    for fcol in free:
        col = [zero] * a.dim
        col[fcol] = field.one()
        section_cols.append(col)
    section = Matrix.from_cols(field, section_cols, nrows=a.dim)

    def to_bar(vec):
        return tuple((proj * Matrix.from_cols(field, [vec], nrows=a.dim)).column(0))

    table = []
    for i in range(s):
        row = []
        for j in range(s):
            prod = a.mult(tuple(section.column(i)), tuple(section.column(j)))
            row.append(to_bar(prod))
        table.append(tuple(row))
    bar_unit = to_bar(a.unit)
    bar = StructureConstantAlgebra(field, table, bar_unit, validate=False)
    return proj, section, bar


def lift_idempotent(a: StructureConstantAlgebra, x: Sequence) -> Tuple:
    """Newton iteration x <- 3x^2 - 2x^3 from an idempotent mod rad."""
    field = a.field
    x = tuple(field.canon(c) for c in x)
    for _ in range(64):
        x2 = a.mult(x, x)
        if x2 == x:
            return x
        x3 = a.mult(x2, x)
        x = tuple(field.canon(3 * b - 2 * c) for b, c in zip(x2, x3))
    raise QtiltError("idempotent lifting did not converge")


def _split_semisimple(bar: StructureConstantAlgebra, seed: int = 0):
    """Primitive orthogonal idempotents of a semisimple algebra, or
    NonSplitError when a corner refuses to split over the base field."""
    import random

    field = bar.field
    work = [bar.unit]
    out = []
    while work:
        e = work.pop(0)
        corner = [bar.mult(bar.mult(e, bar.basis_vector(k)), e)
                  for k in range(bar.dim)]
        cm = Matrix(field, corner)
        cr = rref(cm)
        corner_basis = [corner[r] for r in _pivot_rows(cm, cr)]
        if cr.rank <= 1:
            out.append(e)
            continue
        rnd = random.Random(seed)
        seeds = [c for c in corner_basis if c != e]
        candidates = list(seeds)
        for i in range(len(seeds)):
            for j in range(i + 1, len(seeds)):
                candidates.append(tuple(field.canon(x + y)
                                        for x, y in zip(seeds[i], seeds[j])))
        for _ in range(60):
            candidates.append(tuple(
                field.canon(sum(rnd.randint(-3, 3) * v[k] for v in corner_basis))
                for k in range(bar.dim)))
        split = None
        saw_nonlinear = False
        for x in candidates:
            mu = minimal_polynomial(bar, x, unit=e)
            if len(mu) <= 2:
                continue
            factors = factor_rational_poly(mu)
            if len(factors) == 1:
                if len(factors[0][0]) > 2:
                    saw_nonlinear = True
                continue
            f = [Fraction(1)]
            for _ in range(factors[0][1]):
                f = poly_mul(f, factors[0][0])
            g = [Fraction(1)]
            for fac, mult in factors[1:]:
                for _ in range(mult):
                    g = poly_mul(g, fac)
            _, v, d = poly_xgcd(f, g)
            assert len(d) == 1, "factors of a minimal polynomial not coprime"
            e1 = poly_eval_in_algebra(bar, poly_mul(v, g), x, unit=e)
            split = e1
            break
        if split is None:
            raise NonSplitError(
                "semisimple quotient did not split into copies of the base "
                "field" + ("" if not saw_nonlinear else
                           " (an irreducible minimal polynomial of degree"
                           " > 1 appeared)"))
        e1 = split
        e2 = tuple(field.canon(a - b) for a, b in zip(e, e1))
        work.append(e1)
        work.append(e2)
    return out


def _pivot_rows(m: Matrix, res) -> List[int]:
    """Indices of input rows forming a basis of the row space: the pivot
    columns of the transpose mark the first rows at which the rank grows."""
    return list(rref(m.transpose()).pivots)


def primitive_orthogonal_idempotents(a: StructureConstantAlgebra,
                                     seed: int = 0) -> List[Tuple]:
    """A complete list of primitive orthogonal idempotents summing to 1,
    lifted from the semisimple quotient.  Requires characteristic zero and
    a split quotient."""
    if a.field.char != 0:
        raise UnsupportedCharacteristicError(
            "idempotent splitting needs characteristic zero")
    _, section, bar = quotient_by_radical(a)
    field = a.field
    bar_idems = _split_semisimple(bar, seed)
    if len(bar_idems) == 1:
        return [a.unit]
    lifted = []
    partial = tuple(field.zero() for _ in range(a.dim))
    for k, ebar in enumerate(bar_idems[:-1]):
        x = tuple((section * Matrix.from_cols(field, [ebar], nrows=bar.dim)
                   ).column(0))
        comp = tuple(field.canon(u - s) for u, s in zip(a.unit, partial))
        x = a.mult(a.mult(comp, x), comp)
        e = lift_idempotent(a, x)
        lifted.append(e)
        partial = tuple(field.canon(p + c) for p, c in zip(partial, e))
    last = tuple(field.canon(u - s) for u, s in zip(a.unit, partial))
    lifted.append(last)
    for i, e in enumerate(lifted):
        assert a.mult(e, e) == e, "lifted element is not idempotent"
        for j in range(i):
            z = tuple(field.zero() for _ in range(a.dim))
            assert a.mult(e, lifted[j]) == z and a.mult(lifted[j], e) == z
    return lifted
