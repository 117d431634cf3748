"""Perfect extended monads attached to stable ADHM data.

Terms live in degrees 1-n, ..., 0, 1. Degree 1 is V, degree 0 is
V^n (+) W with W last, and degree d < 0 is V^(n choose 1-d), one copy of V
per (1-d)-subset of {0, ..., n-1} in lexicographic order. Writing
D_j = B_j z_n - z_j, the last differential is (D_0, ..., D_{n-1}, I z_n) and
the differential out of degree d < 0 sends the copy indexed by
S = (s_0 < ... < s_k) to sum_t (-1)^(t+1) D_{s_t} on the copy indexed by
S minus s_t. For n = 3 this reproduces the classical three-map monad on P^3.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .adhm import AdhmDatum, krylov, require_commuting
from .errors import DimensionMismatch, DomainError, UnstableError
from .exactalg import Matrix, mat_rank, to_rational


@dataclass(frozen=True)
class MonadShape:
    n: int
    c: int
    r: int = 1
    dims: dict = field(default_factory=dict)

    @classmethod
    def of(cls, n: int, c: int, r: int = 1) -> MonadShape:
        dims = {1: c, 0: n * c + r}
        for d in range(1 - n, 0):
            dims[d] = comb(n, 1 - d) * c
        return cls(n, c, r, dict(sorted(dims.items())))

    @property
    def degrees(self) -> list[int]:
        return sorted(self.dims)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (d % 2) * k for d, k in self.dims.items())


@dataclass(frozen=True)
class LinearFormMap:
    """sum_k z_k * coeffs[k], a matrix of linear forms in z_0, ..., z_n."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        shapes = {m.shape for m in self.coeffs}
        if len(shapes) != 1:
            raise DimensionMismatch("coefficient matrices must share one shape")

    @property
    def nrows(self) -> int:
        return self.coeffs[0].nrows

    @property
    def ncols(self) -> int:
        return self.coeffs[0].ncols

    def at(self, z: Sequence) -> Matrix:
        if len(z) != len(self.coeffs):
            raise DimensionMismatch(f"need {len(self.coeffs)} homogeneous coordinates")
        out = Matrix.zeros(self.nrows, self.ncols)
        for zk, m in zip(z, self.coeffs):
            zk = to_rational(zk)
            if zk:
                out = out + m.scale(zk)
        return out


@dataclass(frozen=True)
class ExtendedMonad:
    """alphas[d] is the differential from degree d to degree d + 1."""

    shape: MonadShape
    alphas: dict

    def differential(self, d: int) -> LinearFormMap:
        return self.alphas[d]


def monad_shape(n: int, c: int, r: int = 1) -> MonadShape:
    return MonadShape.of(n, c, r)


def _placed(blocks: dict, nrow: int, ncol: int, c: int) -> Matrix:
    """Block matrix of nrow x ncol c-blocks with the given nonzero blocks."""
    rows = []
    zero_row = [Fraction(0)] * (ncol * c)
    for bi in range(nrow):
        strip = [list(zero_row) for _ in range(c)]
        for (i, j), m in blocks.items():
            if i != bi:
                continue
            for a in range(m.nrows):
                strip[a][j * c:j * c + m.ncols] = m.rows[a]
        rows.extend(strip)
    return Matrix(rows, ncols=ncol * c)


def _d_coeffs(x: AdhmDatum, j: int, sign: int) -> list[Matrix]:
    """Coefficients of sign * (B_j z_n - z_j) in z_0..z_n."""
    c, n = x.c, x.n
    out = [Matrix.zeros(c, c) for _ in range(n + 1)]
    out[j] = Matrix.identity(c).scale(-sign)
    out[n] = x.B[j].scale(sign)
    return out


def _alpha0(x: AdhmDatum) -> LinearFormMap:
    n, c = x.n, x.c
    coeffs = []
    for k in range(n + 1):
        blocks = []
        for j in range(n):
            blocks.append(_d_coeffs(x, j, 1)[k])
        blocks.append(x.I if k == n else Matrix.zeros(c, 1))
        coeffs.append(Matrix.block([blocks]))
    return LinearFormMap(coeffs)


def _koszul(x: AdhmDatum, size: int, target_has_w: bool) -> LinearFormMap:
    """Differential from the size-subset term to the (size-1)-subset term."""
    n, c = x.n, x.c
    src = list(itertools.combinations(range(n), size))
    tgt = list(itertools.combinations(range(n), size - 1))
    tindex = {s: k for k, s in enumerate(tgt)}
    nrow = len(tgt)
    coeffs = []
    for k in range(n + 1):
        blocks = {}
        for col, s in enumerate(src):
            for t, j in enumerate(s):
                rest = s[:t] + s[t + 1:]
                sign = 1 if t % 2 else -1
                blocks[(tindex[rest], col)] = _d_coeffs(x, j, sign)[k]
        m = _placed(blocks, nrow, len(src), c)
        if target_has_w:
            m = Matrix.block([[m], [Matrix.zeros(1, m.ncols)]])
        coeffs.append(m)
    return LinearFormMap(coeffs)


def build_monad(x: AdhmDatum, check: bool = True) -> ExtendedMonad:
    """Extended monad of a commuting stable datum with n >= 2.

    With check=False the preconditions are skipped, which is how deliberately
    broken pseudo-monads are assembled for testing the complex conditions.
    """
    n = x.n
    if n < 2:
        raise DomainError("extended monads need n >= 2")
    if check:
        require_commuting(x)
        rank = krylov(x).rank
        if rank != x.c:
            raise UnstableError(rank, x.c)
    alphas = {0: _alpha0(x)}
    for d in range(-1, -n, -1):
        alphas[d] = _koszul(x, 1 - d, target_has_w=(d == -1))
    return ExtendedMonad(MonadShape.of(n, x.c), dict(sorted(alphas.items())))


@dataclass(frozen=True)
class ComplexViolation:
    degree: int  # source degree of the first map in the composite
    k: int
    l: int

    def __str__(self):
        if self.k == self.l:
            return f"alpha_{self.degree + 1}^{self.k} o alpha_{self.degree}^{self.k} != 0"
        return (
            f"alpha_{self.degree + 1}^{self.k} o alpha_{self.degree}^{self.l} + "
            f"alpha_{self.degree + 1}^{self.l} o alpha_{self.degree}^{self.k} != 0"
        )


def check_complex(m: ExtendedMonad):
    """Check that consecutive differentials compose to zero, coefficientwise.

    Returns (ok, violations). A composite of two linear-form matrices is a
    quadratic form, and it vanishes iff each symmetric coefficient does.
    """
    violations = []
    for d in sorted(m.alphas):
        if d + 1 not in m.alphas:
            continue
        a, b = m.alphas[d], m.alphas[d + 1]
        if b.ncols != a.nrows:
            raise DimensionMismatch(f"alpha_{d + 1} and alpha_{d} do not compose")
        nk = len(a.coeffs)
        prods = {}
        for k in range(nk):
            for l in range(nk):
                if not (b.coeffs[k].is_zero() or a.coeffs[l].is_zero()):
                    prods[(k, l)] = b.coeffs[k] @ a.coeffs[l]
        for k in range(nk):
            for l in range(k, nk):
                s = prods.get((k, l))
                if k != l:
                    t = prods.get((l, k))
                    s = t if s is None else (s if t is None else s + t)
                if s is not None and not s.is_zero():
                    violations.append(ComplexViolation(d, k, l))
    return not violations, violations


def fiber_profile(m: ExtendedMonad, z: Sequence) -> dict:
    """{degree: (rank of the outgoing map, cohomology dimension)} at the fiber z."""
    z = [to_rational(a) for a in z]
    if not any(z):
        raise DomainError("z = 0 is not a point of projective space")
    dims = m.shape.dims
    ranks = {d: mat_rank(a.at(z)) for d, a in m.alphas.items()}
    out = {}
    for d in m.shape.degrees:
        rout = ranks.get(d, 0)
        rin = ranks.get(d - 1, 0)
        out[d] = (rout, dims[d] - rout - rin)
    return out


def random_fiber(n: int, rng: random.Random, chart: bool | None = True, bound: int = 5) -> list:
    """Small random integer point of P^n.

    chart=True forces z_n != 0, chart=False forces z_n = 0, None allows both.
    """
    while True:
        z = [Fraction(rng.randint(-bound, bound)) for _ in range(n + 1)]
        if chart is False:
            z[n] = Fraction(0)
        if not any(z):
            continue
        if chart is True and z[n] == 0:
            continue
        return z


def alpha0_rank(x: AdhmDatum, z: Sequence) -> int:
    return mat_rank(_alpha0(x).at(z))


def check_surjectivity_certificate(x: AdhmDatum, samples: int, seed) -> bool | None:
    """Test that alpha_0 is fiberwise surjective exactly when x is stable.

    Stable x: every sampled chart fiber must have rank c. Unstable x: look for
    a rank-deficient fiber over a joint eigenvalue of the B_i acting on
    V / Sigma_X. Returns None if those eigenvalues are not all rational.
    """
    from .cycle import joint_eigenvalues
    from .errors import IrrationalEigenvalueError

    require_commuting(x)
    kr = krylov(x)
    c, n = x.c, x.n
    rng = random.Random(seed)
    if kr.rank == c:
        return all(alpha0_rank(x, random_fiber(n, rng)) == c for _ in range(samples))
    quotient = _quotient_action(x, kr.span.accepted)
    try:
        eigen = joint_eigenvalues(quotient)
    except IrrationalEigenvalueError:
        return None
    return any(alpha0_rank(x, list(lam) + [Fraction(1)]) < c for lam, _ in eigen)


def _quotient_action(x: AdhmDatum, sub_basis) -> list[Matrix]:
    """Matrices of the B_i on V / span(sub_basis)."""
    c = x.c
    cols = [list(v) for v in sub_basis]
    span_rank = len(cols)
    for e in range(c):
        unit = [Fraction(int(k == e)) for k in range(c)]
        trial = Matrix.from_columns(cols + [unit])
        if mat_rank(trial) > len(cols):
            cols.append(unit)
    p = Matrix.from_columns(cols)
    pinv = p.inverse()
    out = []
    for b in x.B:
        conj = pinv @ b @ p
        idx = list(range(span_rank, c))
        out.append(conj.submatrix(idx, idx))
    return out


__all__ = [
    "ComplexViolation",
    "ExtendedMonad",
    "LinearFormMap",
    "MonadShape",
    "build_monad",
    "check_complex",
    "check_surjectivity_certificate",
    "fiber_profile",
    "monad_shape",
]
