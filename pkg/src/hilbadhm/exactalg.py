"""Exact dense linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`. Matrices are small (a dozen or so
rows for the ADHM side, under a hundred for monad differentials) and are
treated as immutable values.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, SingularMatrixError

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("refusing to convert a float to an exact rational")
    return Fraction(x)


def _bitsize(q: Fraction) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


class Matrix:
    """Dense row-major rational matrix."""

    __slots__ = ("nrows", "ncols", "_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(to_rational(a) for a in r) for r in rows)
        if ncols is None:
            if not data:
                raise DimensionMismatch("cannot infer column count of an empty matrix")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
        self.nrows = len(data)
        self.ncols = ncols
        self._rows = data
        self._hash = None

    @classmethod
    def _raw(cls, rows, ncols):
        m = cls.__new__(cls)
        m._rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m._hash = None
        return m

    # constructors

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Matrix:
        return cls._raw(tuple((ZERO,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls.diag([ONE] * n)

    @classmethod
    def diag(cls, values: Sequence) -> Matrix:
        vals = [to_rational(v) for v in values]
        n = len(vals)
        rows = []
        for i, v in enumerate(vals):
            r = [ZERO] * n
            r[i] = v
            rows.append(tuple(r))
        return cls._raw(tuple(rows), n)

    @classmethod
    def column(cls, v: Sequence) -> Matrix:
        return cls._raw(tuple((to_rational(a),) for a in v), 1)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> Matrix:
        if not cols:
            if nrows is None:
                raise DimensionMismatch("need nrows for an empty column list")
            return cls.zeros(nrows, 0)
        return cls(zip(*cols), ncols=len(cols))

    @classmethod
    def block(cls, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
        """Assemble a block matrix; every block row must have equal heights."""
        rows = []
        ncols = None
        for brow in blocks:
            h = brow[0].nrows
            if any(b.nrows != h for b in brow):
                raise DimensionMismatch("block heights differ within a block row")
            w = sum(b.ncols for b in brow)
            if ncols is None:
                ncols = w
            elif w != ncols:
                raise DimensionMismatch("block rows have different total widths")
            for i in range(h):
                rows.append(tuple(a for b in brow for a in b._rows[i]))
        return cls._raw(tuple(rows), ncols or 0)

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple:
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    def entries(self) -> tuple:
        return tuple(a for r in self._rows for a in r)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nrows, self.ncols, self._rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self._rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    # arithmetic

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __neg__(self) -> Matrix:
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._rows), self.ncols)

    def scale(self, s) -> Matrix:
        s = to_rational(s)
        if s == 0:
            return Matrix.zeros(self.nrows, self.ncols)
        return Matrix._raw(tuple(tuple(s * a for a in r) for r in self._rows), self.ncols)

    def __rmul__(self, s) -> Matrix:
        return self.scale(s)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        orows = other._rows
        w = other.ncols
        out = []
        # skip zeros: monad coefficient matrices are mostly identity/zero blocks
        for r in self._rows:
            acc = [ZERO] * w
            for k, a in enumerate(r):
                if a:
                    ok = orows[k]
                    for j in range(w):
                        b = ok[j]
                        if b:
                            acc[j] += a * b
            out.append(tuple(acc))
        return Matrix._raw(tuple(out), w)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self._rows)

    def pow(self, k: int) -> Matrix:
        if self.nrows != self.ncols:
            raise DimensionMismatch("power of a non-square matrix")
        result = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> Matrix:
        if self.nrows == 0:
            return Matrix.zeros(self.ncols, 0)
        return Matrix._raw(tuple(zip(*self._rows)), self.nrows)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def is_zero(self) -> bool:
        return not any(a for r in self._rows for a in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def trace(self) -> Fraction:
        if not self.is_square():
            raise DimensionMismatch("trace of a non-square matrix")
        return sum((self._rows[i][i] for i in range(self.nrows)), ZERO)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix._raw(tuple(tuple(self._rows[i][j] for j in cols) for i in rows), len(cols))

    def with_entry(self, i: int, j: int, value) -> Matrix:
        rows = list(self._rows)
        r = list(rows[i])
        r[j] = to_rational(value)
        rows[i] = tuple(r)
        return Matrix._raw(tuple(rows), self.ncols)

    def rank(self) -> int:
        return mat_rank(self)

    def kernel(self) -> list[Vector]:
        return mat_kernel(self)

    def inverse(self) -> Matrix:
        return mat_inverse(self)

    def to_numpy(self, dtype=float):
        import numpy as np

        return np.array([[float(a) for a in r] for r in self._rows], dtype=dtype).reshape(
            self.nrows, self.ncols
        )


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


# elimination


def rref(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Reduced row echelon form. Returns (rows, pivot_columns).

    Among candidate pivots in a column the one with the smallest bit size is
    chosen; the RREF itself does not depend on that choice.
    """
    work = [list(r) for r in rows]
    pivots = []
    top = 0
    for j in range(ncols):
        if top == len(work):
            break
        best = None
        for i in range(top, len(work)):
            a = work[i][j]
            if a and (best is None or _bitsize(a) < _bitsize(work[best][j])):
                best = i
        if best is None:
            continue
        work[top], work[best] = work[best], work[top]
        prow = work[top]
        inv = ONE / prow[j]
        if inv != 1:
            prow = [a * inv for a in prow]
            work[top] = prow
        nz = [k for k in range(j, ncols) if prow[k]]
        for i in range(len(work)):
            if i != top:
                f = work[i][j]
                if f:
                    r = work[i]
                    for k in nz:
                        r[k] -= f * prow[k]
        pivots.append(j)
        top += 1
    return work[:top], pivots


def mat_rank(m: Matrix) -> int:
    return len(rref(m.rows, m.ncols)[1])


def mat_kernel(m: Matrix) -> list[Vector]:
    """Basis of the right null space, one vector per free column."""
    red, pivots = rref(m.rows, m.ncols)
    pivset = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = [ZERO] * m.ncols
        v[f] = ONE
        for r, p in zip(red, pivots):
            v[p] = -r[f]
        basis.append(tuple(v))
    return basis


def mat_inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    n = m.nrows
    aug = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m.rows)]
    red, pivots = rref(aug, 2 * n)
    if len(pivots) < n or pivots[n - 1] >= n:
        raise SingularMatrixError("matrix is singular")
    return Matrix._raw(tuple(tuple(r[n:]) for r in red), n)


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Some X with a @ X == b, or None when inconsistent."""
    if a.nrows != b.nrows:
        raise DimensionMismatch("row counts differ")
    n = a.ncols
    aug = [list(r) + list(s) for r, s in zip(a.rows, b.rows)]
    red, pivots = rref(aug, n + b.ncols)
    if any(p >= n for p in pivots):
        return None
    x = [[ZERO] * b.ncols for _ in range(n)]
    for r, p in zip(red, pivots):
        x[p] = r[n:]
    return Matrix(x, ncols=b.ncols)


def column_space_basis(m: Matrix) -> list[Vector]:
    """Pivot columns of m (a basis of its column space drawn from its columns)."""
    _, pivots = rref(m.rows, m.ncols)
    return [m.col(j) for j in pivots]


def charpoly(m: Matrix) -> list[Fraction]:
    """Characteristic polynomial det(t - m), coefficients from t^n down to t^0.

    Faddeev–LeVerrier recursion; exact over the rationals.
    """
    if not m.is_square():
        raise DimensionMismatch("charpoly of a non-square matrix")
    n = m.nrows
    coeffs = [ONE]
    mk = Matrix.zeros(n, n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(coeffs[-1])
        coeffs.append(-(m @ mk).trace() / k)
    return coeffs


class IncrementalSpan:
    """Span of inserted vectors, kept in reduced echelon form.

    Each echelon row remembers how it combines the accepted vectors, so a
    dependent vector can be written in terms of the accepted ones.
    """

    def __init__(self, ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.accepted: list[Vector] = []
        self._rows: list[list[Fraction]] = []
        self._combos: list[list[Fraction]] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.accepted)

    @property
    def basis(self) -> list[Vector]:
        """Echelon basis vectors."""
        return [tuple(r) for r in self._rows]

    def copy(self) -> IncrementalSpan:
        s = IncrementalSpan(self.ambient_dim)
        s.accepted = list(self.accepted)
        s._rows = [list(r) for r in self._rows]
        s._combos = [list(c) for c in self._combos]
        s.pivots = list(self.pivots)
        return s

    def _reduce(self, v):
        res = [to_rational(a) for a in v]
        combo = [ZERO] * len(self.accepted)
        for row, cmb, p in zip(self._rows, self._combos, self.pivots):
            f = res[p]
            if f:
                for k in range(p, self.ambient_dim):
                    if row[k]:
                        res[k] -= f * row[k]
                for k, a in enumerate(cmb):
                    if a:
                        combo[k] += f * a
        return res, combo

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coefficients of v in terms of the accepted vectors, or None if outside."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"expected length {self.ambient_dim}, got {len(v)}")
        res, combo = self._reduce(v)
        if any(res):
            return None
        return tuple(combo)

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def insert(self, v: Sequence) -> tuple[bool, Vector | None]:
        """Insert in place. Returns (was_new, coords); coords is None when new."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"expected length {self.ambient_dim}, got {len(v)}")
        res, combo = self._reduce(v)
        p = next((k for k, a in enumerate(res) if a), None)
        if p is None:
            return False, tuple(combo)
        # res = v - sum(combo_k * accepted_k)
        k_new = len(self.accepted)
        self.accepted.append(tuple(to_rational(a) for a in v))
        for cmb in self._combos:
            cmb.append(ZERO)
        cmb_new = [-a for a in combo] + [ONE]
        inv = ONE / res[p]
        res = [a * inv for a in res]
        cmb_new = [a * inv for a in cmb_new]
        for row, cmb in zip(self._rows, self._combos):
            f = row[p]
            if f:
                for k in range(self.ambient_dim):
                    if res[k]:
                        row[k] -= f * res[k]
                for k in range(k_new + 1):
                    if cmb_new[k]:
                        cmb[k] -= f * cmb_new[k]
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < p:
            pos += 1
        self._rows.insert(pos, res)
        self._combos.insert(pos, cmb_new)
        self.pivots.insert(pos, p)
        return True, None


def span_insert(s: IncrementalSpan, v: Sequence):
    """Functional insert: returns (new_span, was_new, coords) and leaves s untouched."""
    s2 = s.copy()
    was_new, coords = s2.insert(v)
    return s2, was_new, coords
