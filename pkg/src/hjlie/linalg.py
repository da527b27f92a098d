"""Exact rational linear algebra: vectors, matrices, sparse rank-3 tensors.

Scalars are ``fractions.Fraction`` throughout; no floating point anywhere.
All returned bases are in reduced row echelon form, so every operation is
deterministic and results compare exactly across runs.
"""

from fractions import Fraction
from itertools import product

Rational = Fraction


def rat(x):
    """Coerce ints, strings like '-3/7', and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def qstr(x):
    """Canonical string form: 'p' for integers, 'p/q' otherwise."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# vectors (plain tuples of Fraction)
# ---------------------------------------------------------------------------

def vec(values):
    return tuple(rat(v) for v in values)


def zero_vec(n):
    return (Fraction(0),) * n


def unit_vec(n, i):
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u):
    return tuple(c * a for a in u)


def vec_dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vec(u):
    return all(a == 0 for a in u)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class Matrix:
    """Immutable dense matrix of Fractions, stored as a tuple of row tuples."""

    __slots__ = ("rows", "cols", "_r")

    def __init__(self, rows_data):
        rs = tuple(tuple(rat(x) for x in row) for row in rows_data)
        if rs and any(len(r) != len(rs[0]) for r in rs):
            raise ValueError("ragged matrix rows")
        self._r = rs
        self.rows = len(rs)
        self.cols = len(rs[0]) if rs else 0

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, diag):
        d = [rat(x) for x in diag]
        n = len(d)
        return cls([[d[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols):
        cols = [vec(c) for c in cols]
        n = len(cols[0]) if cols else 0
        return cls([[c[i] for c in cols] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self._r[i][j]

    def row(self, i):
        return self._r[i]

    def column(self, j):
        return tuple(r[j] for r in self._r)

    @property
    def entries(self):
        """Row-major flat tuple."""
        return tuple(x for row in self._r for x in row)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self._r == other._r

    def __hash__(self):
        return hash(self._r)

    def __add__(self, other):
        return Matrix([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self._r, other._r)])

    def __sub__(self, other):
        return Matrix([[a - b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self._r, other._r)])

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self._r])

    def scale(self, c):
        c = rat(c)
        return Matrix([[c * a for a in r] for r in self._r])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        bt = list(zip(*other._r)) if other._r else []
        return Matrix([[vec_dot(r, c) for c in bt] for r in self._r])

    def apply(self, v):
        """Matrix times column vector (tuple)."""
        if len(v) != self.cols:
            raise ValueError("vector length != cols")
        return tuple(vec_dot(r, v) for r in self._r)

    def transpose(self):
        return Matrix(list(zip(*self._r)) if self._r else [])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self):
        return self.rows == self.cols

    def is_zero(self):
        return all(a == 0 for r in self._r for a in r)

    def commutes_with(self, other):
        return self @ other == other @ self

    def __repr__(self):
        body = "; ".join(" ".join(qstr(x) for x in row) for row in self._r)
        return f"Matrix[{body}]"


def mat_pow(M, k):
    """M**k for integer k; negative k requires M invertible."""
    if k < 0:
        inv = inverse(M)
        if inv is None:
            raise ValueError("negative power of a singular matrix")
        M, k = inv, -k
    out = Matrix.identity(M.rows)
    for _ in range(k):
        out = out @ M
    return out


# ---------------------------------------------------------------------------
# elimination kernels
# ---------------------------------------------------------------------------

def _rref(rows):
    """Reduced row echelon form of a list of row lists (in place copy).

    Returns (rows, pivot_columns). Pivot order is leftmost column, topmost
    row; pivots normalized to 1 with full clearing above and below.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        if pv != 1:
            rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(M):
    """RREF of a Matrix; returns (Matrix, pivot column tuple)."""
    rows, pivots = _rref([list(r) for r in M._r])
    return Matrix(rows), tuple(pivots)


def rank(M):
    """Rank over the rationals."""
    _, pivots = _rref([list(r) for r in M._r])
    return len(pivots)


def nullspace(M):
    """Basis of {v : Mv = 0}, one vector per free column, deterministic.

    The basis matrix has an identity block on the free columns, which is the
    echelon normal form of the kernel.
    """
    rows, pivots = _rref([list(r) for r in M._r])
    n = M.cols
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(tuple(v))
    return basis


def solve(M, b):
    """One particular solution of Mx = b (free variables zero), or None."""
    if len(b) != M.rows:
        raise ValueError("rhs length != rows")
    aug = [list(r) + [rat(x)] for r, x in zip(M._r, b)]
    if M.rows == 0:
        return zero_vec(M.cols)
    rows, pivots = _rref(aug)
    n = M.cols
    if n in pivots:
        return None  # pivot in the augmented column: inconsistent
    x = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        x[p] = rows[r][n]
    return tuple(x)


def inverse(M):
    """Exact inverse, or None when singular. Requires a square matrix."""
    if not M.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = M.rows
    aug = [list(r) + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, r in enumerate(M._r)]
    rows, pivots = _rref(aug)
    if list(pivots) != list(range(n)):
        return None
    return Matrix([r[n:] for r in rows])


def echelon_basis(vectors):
    """Canonical RREF basis of the span of the given vectors."""
    rows = [list(v) for v in vectors if not is_zero_vec(v)]
    if not rows:
        return []
    red, pivots = _rref(rows)
    return [tuple(r) for r in red[: len(pivots)]]


class SpanReducer:
    """Membership tests against a fixed span, precomputed once.

    After full RREF the residual of v is v minus its pivot-coordinate
    combination of basis rows; v lies in the span iff the residual is zero.
    The residual is linear in v, which the solvers exploit.
    """

    def __init__(self, vectors):
        self.dim_ambient = len(vectors[0]) if vectors else 0
        red, pivots = _rref([list(v) for v in vectors]) if vectors else ([], [])
        self.basis = [tuple(r) for r in red[: len(pivots)]]
        self.pivots = tuple(pivots)

    @property
    def dim(self):
        return len(self.basis)

    def residual(self, v):
        out = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = out[p]
            if c != 0:
                out = [a - c * b for a, b in zip(out, row)]
        return tuple(out)

    def contains(self, v):
        return is_zero_vec(self.residual(v))

    def contains_all(self, vectors):
        return all(self.contains(v) for v in vectors)


# ---------------------------------------------------------------------------
# sparse rank-3 tensors
# ---------------------------------------------------------------------------

class Tensor3:
    """Sparse rank-3 tensor over Fraction; absent entries are zero."""

    __slots__ = ("dims", "_e")

    def __init__(self, dims, entries=None):
        self.dims = tuple(dims)
        store = {}
        for key, v in (entries or {}).items():
            i, j, k = key
            if not (0 <= i < dims[0] and 0 <= j < dims[1] and 0 <= k < dims[2]):
                raise ValueError(f"tensor index {key} out of bounds {dims}")
            v = rat(v)
            if v != 0:
                store[(i, j, k)] = v
        self._e = store

    def get(self, i, j, k):
        return self._e.get((i, j, k), Fraction(0))

    def items(self):
        """Entries in sorted index order (deterministic iteration)."""
        return sorted(self._e.items())

    def slice12(self, i, j):
        """The vector t(i, j, .) of length dims[2]."""
        return tuple(self.get(i, j, k) for k in range(self.dims[2]))

    def __eq__(self, other):
        return (isinstance(other, Tensor3) and self.dims == other.dims
                and self._e == other._e)

    def __hash__(self):
        return hash((self.dims, tuple(sorted(self._e.items()))))

    def __add__(self, other):
        if self.dims != other.dims:
            raise ValueError("tensor dims mismatch")
        keys = set(self._e) | set(other._e)
        return Tensor3(self.dims, {k: self.get(*k) + other.get(*k) for k in keys})

    def __sub__(self, other):
        if self.dims != other.dims:
            raise ValueError("tensor dims mismatch")
        keys = set(self._e) | set(other._e)
        return Tensor3(self.dims, {k: self.get(*k) - other.get(*k) for k in keys})

    def scale(self, c):
        c = rat(c)
        return Tensor3(self.dims, {k: c * v for k, v in self._e.items()})

    def is_zero(self):
        return not self._e

    def __repr__(self):
        ent = ", ".join(f"{k}:{qstr(v)}" for k, v in self.items())
        return f"Tensor3{self.dims}{{{ent}}}"


def bilinear_eval(t, u, v):
    """Contract a (n1, n2, m) tensor with vectors u, v: sum u_i v_j t(i,j,.)."""
    n1, n2, m = t.dims
    out = [Fraction(0)] * m
    for (i, j, k), c in t._e.items():
        if u[i] and v[j]:
            out[k] += u[i] * v[j] * c
    return tuple(out)


# ---------------------------------------------------------------------------
# linear systems over flattened unknowns
# ---------------------------------------------------------------------------

class LinearSystem:
    """Accumulates exact homogeneous/inhomogeneous equations in N unknowns."""

    def __init__(self, num_unknowns):
        self.n = num_unknowns
        self.rows = []
        self.rhs = []

    def add(self, coeffs, rhs=0):
        """coeffs: dict unknown-index -> Fraction (zeros may be omitted)."""
        row = [Fraction(0)] * self.n
        for idx, c in coeffs.items():
            row[idx] += rat(c)
        self.rows.append(row)
        self.rhs.append(rat(rhs))

    def add_vector_equation(self, coeff_vectors, rhs_vector=None):
        """One scalar equation per output coordinate.

        coeff_vectors: dict unknown-index -> tuple of output coordinates.
        """
        length = len(rhs_vector) if rhs_vector is not None else \
            len(next(iter(coeff_vectors.values())))
        for a in range(length):
            row = {idx: v[a] for idx, v in coeff_vectors.items() if v[a] != 0}
            self.add(row, rhs_vector[a] if rhs_vector is not None else 0)

    def solution_basis(self):
        """Nullspace basis of the homogeneous system (rhs ignored)."""
        if not self.rows:
            return [unit_vec(self.n, i) for i in range(self.n)]
        return nullspace(Matrix(self.rows))

    def particular_solution(self):
        """A solution of the inhomogeneous system, or None."""
        if not self.rows:
            return zero_vec(self.n)
        return solve(Matrix(self.rows), tuple(self.rhs))
