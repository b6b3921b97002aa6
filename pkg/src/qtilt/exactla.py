"""Exact dense linear algebra over the rationals and over prime fields.

Entries over Q are stored as python ints where possible and
`fractions.Fraction` otherwise; prime-field entries are canonical residues
in [0, p).  Reduction uses an integer-scaled elimination with gcd
normalization after every row update, so intermediate growth stays small
on the structured matrices this package produces.  Reduced row echelon
form is unique over a field, so every code path below yields identical
results.
"""

from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import FieldMismatchError, ShapeMismatchError

# Dense block updates via numpy object arrays pay off only past this
# many cells; below it plain lists win.
_NUMPY_CELLS = 4096


class RationalField:
    """The field Q.  Elements are int or Fraction in lowest terms."""

    char = 0

    def canon(self, x):
        if type(x) is int:
            return x
        if type(x) is Fraction:
            return x.numerator if x.denominator == 1 else x
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f

    def parse(self, token: str):
        try:
            return self.canon(Fraction(token))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational literal {token!r}") from exc

    def fmt(self, x) -> str:
        return str(x)

    def zero(self):
        return 0

    def one(self):
        return 1

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverting zero")
        return self.canon(Fraction(1, 1) / x)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """The prime field F_p.  Elements are ints reduced into [0, p)."""

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p

    def canon(self, x):
        return int(x) % self.p

    def parse(self, token: str):
        try:
            return int(token) % self.p
        except ValueError as exc:
            raise ValueError(f"bad residue literal {token!r}") from exc

    def fmt(self, x) -> str:
        return str(x)

    def zero(self):
        return 0

    def one(self):
        return 1

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverting zero")
        return pow(x, self.p - 2, self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


def _check_same_field(a, b):
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} vs {b.field}")


def _density(rows, ncols) -> float:
    if not rows or ncols == 0:
        return 0.0
    step = max(1, len(rows) // 16)
    sampled = rows[::step]
    nz = sum(1 for row in sampled for v in row if v)
    return nz / (len(sampled) * ncols)


def _exact_div(x, s):
    """x / s, staying an int when the division is exact."""
    if type(x) is int and type(s) is int:
        q, r = divmod(x, s)
        if r == 0:
            return q
        return QQ.canon(Fraction(x, s))
    return QQ.canon(Fraction(x) / Fraction(s))


class Matrix:
    """Immutable dense matrix with exact entries over a fixed field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows: Sequence[Sequence], nrows=None, ncols=None):
        self.field = field
        rows = tuple(tuple(field.canon(x) for x in row) for row in rows)
        if rows:
            self.nrows = len(rows)
            self.ncols = len(rows[0])
            if any(len(r) != self.ncols for r in rows):
                raise ShapeMismatchError("ragged rows")
        else:
            self.nrows = 0
            self.ncols = 0 if ncols is None else ncols
        if nrows is not None and nrows != self.nrows:
            raise ShapeMismatchError("row count mismatch")
        self.rows = rows

    @classmethod
    def _raw(cls, field, rows: Tuple[Tuple, ...], ncols: int):
        """Trusted constructor: entries already canonical."""
        m = object.__new__(cls)
        m.field = field
        m.rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero()
        return cls._raw(field, tuple((z,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero(), field.one()
        rows = tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))
        return cls._raw(field, rows, n)

    @classmethod
    def from_cols(cls, field, cols: Sequence[Sequence], nrows=None):
        """Entries are trusted (already exact field elements)."""
        ncols = len(cols)
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        if ncols == 0:
            return cls.zeros(field, nrows, 0)
        if any(len(c) != nrows for c in cols):
            raise ShapeMismatchError("columns of unequal length")
        if nrows == 0:
            return cls._raw(field, (), ncols)
        return cls._raw(field, tuple(zip(*cols)), ncols)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.rows, self.ncols))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __repr__(self):
        body = "; ".join(" ".join(self.field.fmt(x) for x in row) for row in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: {body})"

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def column(self, j) -> Tuple:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> List[Tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        if self.ncols == 0:
            return Matrix._raw(self.field, (), self.nrows)
        if self.nrows == 0:
            return Matrix._raw(self.field, tuple(() for _ in range(self.ncols)), 0)
        return Matrix._raw(self.field, tuple(zip(*self.rows)), self.nrows)

    def __add__(self, other):
        _check_same_field(self, other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ShapeMismatchError("addition shape mismatch")
        if self.field.char == 0:
            rows = tuple(tuple(a + b for a, b in zip(r1, r2))
                         for r1, r2 in zip(self.rows, other.rows))
        else:
            p = self.field.p
            rows = tuple(tuple((a + b) % p for a, b in zip(r1, r2))
                         for r1, r2 in zip(self.rows, other.rows))
        return Matrix._raw(self.field, rows, self.ncols)

    def __sub__(self, other):
        return self + other.scale(-1 if other.field.char == 0 else other.field.p - 1)

    def __neg__(self):
        return self.scale(-1 if self.field.char == 0 else self.field.p - 1)

    def scale(self, c) -> "Matrix":
        c = self.field.canon(c)
        if self.field.char == 0:
            rows = tuple(tuple(c * x for x in row) for row in self.rows)
        else:
            p = self.field.p
            rows = tuple(tuple((c * x) % p for x in row) for row in self.rows)
        return Matrix._raw(self.field, rows, self.ncols)

    def __mul__(self, other):
        """Matrix product.  Skips zero entries on both sides; for wide
        dense right factors over Q the row updates run vectorized."""
        if not isinstance(other, Matrix):
            return NotImplemented
        _check_same_field(self, other)
        if self.ncols != other.nrows:
            raise ShapeMismatchError(
                f"product of {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        n = other.ncols
        modular = self.field.char != 0
        p = self.field.char
        if (not modular and n >= 48 and self.nrows * n >= _NUMPY_CELLS
                and _density(other.rows, n) > 0.3):
            B = np.array(other.rows, dtype=object)
            zero_row = (0,) * n
            out = []
            for arow in self.rows:
                acc = None
                for k, a in enumerate(arow):
                    if a:
                        term = B[k] if a == 1 else B[k] * a
                        acc = term.copy() if acc is None else acc + term
                out.append(zero_row if acc is None else tuple(acc))
            return Matrix._raw(self.field, tuple(out), n)
        bnz = [[(j, v) for j, v in enumerate(row) if v] for row in other.rows]
        out = []
        for arow in self.rows:
            acc = [0] * n
            for k, a in enumerate(arow):
                if a:
                    for j, v in bnz[k]:
                        acc[j] += a * v
            if modular:
                acc = [x % p for x in acc]
            out.append(tuple(acc))
        return Matrix._raw(self.field, tuple(out), n)

    def stack_right(self, other) -> "Matrix":
        _check_same_field(self, other)
        if self.nrows != other.nrows:
            raise ShapeMismatchError("hstack row mismatch")
        rows = tuple(r1 + r2 for r1, r2 in zip(self.rows, other.rows))
        return Matrix._raw(self.field, rows, self.ncols + other.ncols)

    def stack_below(self, other) -> "Matrix":
        _check_same_field(self, other)
        if self.ncols != other.ncols:
            raise ShapeMismatchError("vstack column mismatch")
        return Matrix._raw(self.field, self.rows + other.rows, self.ncols)

    def take_columns(self, js: Iterable[int]) -> "Matrix":
        js = list(js)
        rows = tuple(tuple(row[j] for j in js) for row in self.rows)
        return Matrix._raw(self.field, rows, len(js))

    def rank(self) -> int:
        return rref(self).rank


def hstack(mats: Sequence[Matrix]) -> Matrix:
    assert mats
    out = mats[0]
    for m in mats[1:]:
        out = out.stack_right(m)
    return out


def vstack(mats: Sequence[Matrix]) -> Matrix:
    assert mats
    out = mats[0]
    for m in mats[1:]:
        out = out.stack_below(m)
    return out


def block_diag(field, mats: Sequence[Matrix]) -> Matrix:
    nr = sum(m.nrows for m in mats)
    nc = sum(m.ncols for m in mats)
    z = field.zero()
    rows = [[z] * nc for _ in range(nr)]
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m.rows):
            rows[r0 + i][c0:c0 + m.ncols] = row
        r0 += m.nrows
        c0 += m.ncols
    return Matrix._raw(field, tuple(tuple(r) for r in rows), nc)


class RrefResult:
    __slots__ = ("matrix", "pivots", "rank")

    def __init__(self, matrix, pivots):
        self.matrix = matrix
        self.pivots = pivots
        self.rank = len(pivots)


# ---------------------------------------------------------------------------
# elimination cores


def _int_scale_row(row):
    """Clear denominators and strip content; preserves the row space."""
    den = 1
    all_int = True
    for x in row:
        if type(x) is not int:
            all_int = False
            d = x.denominator
            if d != 1:
                den = den * d // gcd(den, d)
    if all_int:
        row = list(row)
    elif den != 1:
        row = [x * den if type(x) is int else int(x * den) for x in row]
    else:
        row = [x if type(x) is int else x.numerator for x in row]
    g = 0
    for x in row:
        if x:
            g = gcd(g, abs(x))
            if g == 1:
                return row
    if g > 1:
        row = [x // g for x in row]
    return row


def _strip_row_gcd(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x if x > 0 else -x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _forward_eliminate_int(rows, ncols):
    """In-place integer echelon reduction; returns pivot (row, col) list."""
    m = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        best = None
        for i in range(r, m):
            v = rows[i][c]
            if v:
                a = v if v > 0 else -v
                if best is None or a < best[0]:
                    best = (a, i)
                    if a == 1:
                        break
        if best is None:
            continue
        i = best[1]
        if i != r:
            rows[r], rows[i] = rows[i], rows[r]
        p = rows[r][c]
        prow = rows[r]
        for j in range(r + 1, m):
            f = rows[j][c]
            if f:
                rows[j] = _strip_row_gcd(
                    [a * p - b * f for a, b in zip(rows[j], prow)])
        pivots.append((r, c))
        r += 1
    return pivots


def _forward_eliminate_numpy(rows, ncols):
    A = np.array(rows, dtype=object)
    m = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        best = None
        for i in range(r, m):
            v = A[i, c]
            if v:
                a = v if v > 0 else -v
                if best is None or a < best[0]:
                    best = (a, i)
                    if a == 1:
                        break
        if best is None:
            continue
        i = best[1]
        if i != r:
            A[[r, i], :] = A[[i, r], :]
        p = A[r, c]
        f = A[r + 1:, c]
        sel = np.nonzero(np.array([x != 0 for x in f], dtype=bool))[0] + (r + 1)
        if sel.size:
            upd = A[sel, c:] * p - A[sel, c][:, None] * A[r, c:][None, :]
            for k in range(upd.shape[0]):
                A[sel[k], c:] = _strip_row_gcd(list(upd[k]))
        pivots.append((r, c))
        r += 1
    return [list(row) for row in A], pivots


def _back_eliminate_int(rows, pivots):
    for idx in range(len(pivots) - 1, -1, -1):
        r, c = pivots[idx]
        p = rows[r][c]
        prow = rows[r]
        for j in range(r):
            f = rows[j][c]
            if f:
                rows[j] = _strip_row_gcd(
                    [a * p - b * f for a, b in zip(rows[j], prow)])


def _rref_qq(matrix: Matrix) -> RrefResult:
    ncols = matrix.ncols
    rows = [_int_scale_row(row) for row in matrix.rows]
    if matrix.nrows * ncols >= _NUMPY_CELLS:
        rows, pivots = _forward_eliminate_numpy(rows, ncols)
    else:
        pivots = _forward_eliminate_int(rows, ncols)
    _back_eliminate_int(rows, pivots)
    z = 0
    out = [(z,) * ncols] * matrix.nrows
    for r, c in pivots:
        p = rows[r][c]
        if p < 0:
            rows[r] = [-x for x in rows[r]]
            p = -p
        if p == 1:
            out[r] = tuple(rows[r])
        else:
            out[r] = tuple(QQ.canon(Fraction(x, p)) for x in rows[r])
    red = Matrix._raw(matrix.field, tuple(out), ncols)
    return RrefResult(red, tuple(c for _, c in pivots))


def _rref_fp(matrix: Matrix) -> RrefResult:
    p = matrix.field.p
    ncols = matrix.ncols
    rows = [list(row) for row in matrix.rows]
    m = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        pr = None
        for i in range(r, m):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        prow = rows[r]
        for j in range(m):
            if j != r and rows[j][c]:
                f = rows[j][c]
                rows[j] = [(a - f * b) % p for a, b in zip(rows[j], prow)]
        pivots.append((r, c))
        r += 1
    red = Matrix._raw(matrix.field, tuple(tuple(row) for row in rows), ncols)
    return RrefResult(red, tuple(c for _, c in pivots))


def rref(m: Matrix) -> RrefResult:
    """Reduced row echelon form with pivot columns and rank."""
    if m.nrows == 0 or m.ncols == 0:
        return RrefResult(m, ())
    if m.field.char == 0:
        return _rref_qq(m)
    return _rref_fp(m)


def _canonical_kernel_vector(field, vec):
    if field.char == 0:
        vec = _int_scale_row(list(vec))
        for x in vec:
            if x:
                if x < 0:
                    vec = [-y for y in vec]
                break
        return tuple(vec)
    p = field.p
    lead = next((x for x in vec if x), None)
    if lead is None:
        return tuple(vec)
    inv = pow(lead, p - 2, p)
    return tuple((x * inv) % p for x in vec)


def kernel_basis(m: Matrix) -> List[Tuple]:
    """Basis of the right null space; count equals cols - rank."""
    res = rref(m)
    piv = res.pivots
    pivset = set(piv)
    free = [j for j in range(m.ncols) if j not in pivset]
    R = res.matrix.rows
    basis = []
    for f in free:
        vec = [m.field.zero()] * m.ncols
        vec[f] = m.field.one()
        for r, c in enumerate(piv):
            if R[r][f]:
                vec[c] = -R[r][f] if m.field.char == 0 else (-R[r][f]) % m.field.p
        basis.append(_canonical_kernel_vector(m.field, vec))
    return basis


def kernel_matrix(m: Matrix) -> Matrix:
    """Kernel basis vectors as columns."""
    basis = kernel_basis(m)
    return Matrix.from_cols(m.field, basis, nrows=m.ncols)


class KernelData:
    """Kernel basis with its free-column structure: column i has value
    ``scales[i]`` at coordinate ``free[i]`` and zero at every other free
    coordinate, so linear systems against it solve by row reads."""

    __slots__ = ("matrix", "free", "scales")

    def __init__(self, matrix: Matrix, free, scales):
        self.matrix = matrix
        self.free = tuple(free)
        self.scales = tuple(scales)


def kernel_data(m: Matrix) -> KernelData:
    res = rref(m)
    pivset = set(res.pivots)
    free = [j for j in range(m.ncols) if j not in pivset]
    R = res.matrix.rows
    cols = []
    scales = []
    for f in free:
        vec = [m.field.zero()] * m.ncols
        vec[f] = m.field.one()
        for r, c in enumerate(res.pivots):
            if R[r][f]:
                vec[c] = -R[r][f] if m.field.char == 0 else (-R[r][f]) % m.field.p
        vec = _canonical_kernel_vector(m.field, vec)
        cols.append(vec)
        scales.append(vec[f])
    return KernelData(Matrix.from_cols(m.field, cols, nrows=m.ncols),
                      free, scales)


def solve_against_kernel(kd: KernelData, rhs: Matrix) -> Matrix:
    """The unique X with kd.matrix * X = rhs, assuming a solution exists
    (columns of rhs lie in the span); read off from the free rows."""
    field = rhs.field
    rows = []
    for f, s in zip(kd.free, kd.scales):
        row = rhs.rows[f]
        if s == 1:
            rows.append(tuple(row))
        elif field.char:
            inv = field.inv(s)
            rows.append(tuple((x * inv) % field.p for x in row))
        else:
            rows.append(tuple(_exact_div(x, s) for x in row))
    return Matrix._raw(field, tuple(rows), rhs.ncols)


class CokernelData:
    """Quotient data for the column space of a matrix: ``projection`` has
    ``projection * basis == 0`` and restricts to the identity on the
    standard vectors at ``complement`` positions (the section)."""

    __slots__ = ("projection", "complement")

    def __init__(self, projection: Matrix, complement):
        self.projection = projection
        self.complement = tuple(complement)


def cokernel_data(m: Matrix) -> CokernelData:
    """Projection onto the cokernel of the column space of m, with the
    complementary standard vectors as section.  Uses the left kernel, whose
    canonical basis is already normalized on its free coordinates."""
    field = m.field
    kd = kernel_data(m.transpose())
    rows = []
    for j in range(kd.matrix.ncols):
        col = kd.matrix.column(j)
        s = kd.scales[j]
        if s == 1:
            rows.append(col)
        elif field.char:
            inv = field.inv(s)
            rows.append(tuple((x * inv) % field.p for x in col))
        else:
            rows.append(tuple(_exact_div(x, s) for x in col))
    proj = Matrix._raw(field, tuple(rows), m.nrows)
    return CokernelData(proj, kd.free)


def solve(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Any X with a*X = b, or None when the system is inconsistent."""
    _check_same_field(a, b)
    if a.nrows != b.nrows:
        raise ShapeMismatchError("solve: row counts differ")
    if b.ncols == 0:
        return Matrix.zeros(a.field, a.ncols, 0)
    if a.ncols == 0:
        return None if not b.is_zero() else Matrix.zeros(a.field, 0, b.ncols)
    aug = a.stack_right(b)
    res = rref(aug)
    na = a.ncols
    if any(c >= na for c in res.pivots):
        return None
    z = a.field.zero()
    R = res.matrix.rows
    xrows = [[z] * b.ncols for _ in range(na)]
    for r, c in enumerate(res.pivots):
        xrows[c] = list(R[r][na:])
    return Matrix(a.field, xrows, ncols=b.ncols)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product: entry ((i*b.nrows+k),(j*b.ncols+l)) = a[i,j]*b[k,l]."""
    _check_same_field(a, b)
    field = a.field
    nr, nc = a.nrows * b.nrows, a.ncols * b.ncols
    z = field.zero()
    rows = [[z] * nc for _ in range(nr)]
    modular = field.char != 0
    for i, arow in enumerate(a.rows):
        for j, av in enumerate(arow):
            if av:
                for k, brow in enumerate(b.rows):
                    out = rows[i * b.nrows + k]
                    off = j * b.ncols
                    for l, bv in enumerate(brow):
                        if bv:
                            out[off + l] = (av * bv) % field.p if modular else av * bv
    return Matrix._raw(field, tuple(tuple(r) for r in rows), nc)


def column_space_basis(m: Matrix) -> Matrix:
    """The columns of m sitting at its rref pivot positions; these form a
    basis of the column space and stay as sparse as the input."""
    return m.take_columns(rref(m).pivots)
