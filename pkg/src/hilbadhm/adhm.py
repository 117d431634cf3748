"""ADHM data for the Hilbert scheme of points and the ideal <-> datum bijection.

A datum is a tuple (B_0, ..., B_{n-1}, I) of c x c matrices and a vector in
V = Q^c. Commuting stable data up to simultaneous conjugation correspond to
ideals of colength c in Q[x0, ..., x{n-1}]: the ideal is the kernel of
p -> p(B) I, and conversely the B_i are multiplication by x_i on the quotient.
"""

from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DimensionMismatch,
    DomainError,
    ImproperIdealError,
    NonCommutingError,
    NotZeroDimensionalError,
    SingularMatrixError,
    UnstableError,
)
from .exactalg import IncrementalSpan, Matrix, Vector, commutator, mat_inverse, to_rational
from .poly import (
    GREVLEX,
    IdealPresentation,
    Monomial,
    Poly,
    as_order,
    divides,
    eval_poly_at_matrices,
    mono_str,
    normal_form,
    one_monomial,
    var_monomial,
)


@dataclass(frozen=True)
class AdhmDatum:
    B: tuple
    I: Matrix

    def __post_init__(self):
        B = tuple(b if isinstance(b, Matrix) else Matrix(b) for b in self.B)
        I = self.I
        if not isinstance(I, Matrix):
            I = Matrix.column(I)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "I", I)
        if not B:
            raise DimensionMismatch("need at least one matrix B_i")
        c = I.nrows
        if c == 0:
            raise DomainError("c = 0 is not allowed")
        if I.ncols != 1:
            raise DimensionMismatch("I must be a single column")
        for i, b in enumerate(B):
            if b.shape != (c, c):
                raise DimensionMismatch(f"B_{i} has shape {b.shape}, expected {(c, c)}")

    @property
    def n(self) -> int:
        return len(self.B)

    @property
    def c(self) -> int:
        return self.I.nrows

    @property
    def i_vector(self) -> Vector:
        return self.I.col(0)

    @classmethod
    def make(cls, B: Sequence, I: Sequence) -> AdhmDatum:
        return cls(tuple(Matrix(b) for b in B), Matrix.column(I))


@dataclass
class KrylovResult:
    rank: int
    basis_monomials: list
    span: IncrementalSpan


@dataclass(frozen=True)
class EquivalenceWitness:
    g: Matrix


def is_commuting(x: AdhmDatum):
    """(True, None) or (False, (i, j)) for the first non-commuting pair."""
    for i, j in itertools.combinations(range(x.n), 2):
        if not commutator(x.B[i], x.B[j]).is_zero():
            return False, (i, j)
    return True, None


def require_commuting(x: AdhmDatum) -> None:
    ok, pair = is_commuting(x)
    if not ok:
        raise NonCommutingError(pair)


def _sweep(x: AdhmDatum, order, on_dependent=None):
    """Walk monomials in increasing order, keeping those with new images.

    Skips multiples of monomials already found dependent. Returns
    (std_monomials, span, images) where images[m] = p_m(B) I.
    """
    key = order.key
    n = x.n
    span = IncrementalSpan(x.c)
    std: list = []
    images: dict = {}
    leads: list = []
    start = one_monomial(n)
    heap = [(key(start), start, None, None)]
    queued = {start}
    while heap:
        _, m, parent, var = heapq.heappop(heap)
        if any(divides(l, m) for l in leads):
            continue
        v = x.i_vector if parent is None else x.B[var].apply(images[parent])
        was_new, coords = span.insert(v)
        if was_new:
            std.append(m)
            images[m] = v
            for i in range(n):
                mi = tuple(e + (k == i) for k, e in enumerate(m))
                if mi not in queued:
                    queued.add(mi)
                    heapq.heappush(heap, (key(mi), mi, m, i))
        else:
            leads.append(m)
            if on_dependent is not None:
                on_dependent(m, coords, std)
    return std, span, images


def krylov(x: AdhmDatum, order=None) -> KrylovResult:
    """Basis of the smallest B-invariant subspace containing I(1).

    For commuting data the basis vectors are the images of the returned
    monomials, which are the standard monomials of the kernel ideal. For
    non-commuting data the closure is taken over all words in the B_i and the
    monomials record only the letter counts of the accepted words.
    """
    order = as_order(order)
    if is_commuting(x)[0]:
        std, span, _ = _sweep(x, order)
        return KrylovResult(len(std), std, span)
    span = IncrementalSpan(x.c)
    words: list = []
    queue = [(one_monomial(x.n), x.i_vector)]
    while queue:
        m, v = queue.pop(0)
        was_new, _ = span.insert(v)
        if was_new:
            words.append(m)
            for i in range(x.n):
                queue.append((tuple(e + (k == i) for k, e in enumerate(m)), x.B[i].apply(v)))
    return KrylovResult(span.rank, words, span)


def is_stable(x: AdhmDatum) -> bool:
    require_commuting(x)
    return krylov(x).rank == x.c


def apply_phi(x: AdhmDatum, p: Poly) -> Vector:
    """p(B_0, ..., B_{n-1}) I(1)."""
    require_commuting(x)
    if p.nvars != x.n:
        raise DimensionMismatch(f"polynomial in {p.nvars} variables for a datum with n = {x.n}")
    return eval_poly_at_matrices(p, x.B).apply(x.i_vector)


def datum_to_ideal(x: AdhmDatum, order=None) -> IdealPresentation:
    """Reduced Groebner basis of ker(p -> p(B) I) by a linear-algebra sweep."""
    order = as_order(order)
    require_commuting(x)
    gb: list = []

    def emit(m, coords, std):
        terms = {m: Fraction(1)}
        for mj, a in zip(std, coords):
            if a:
                terms[mj] = -a
        gb.append(Poly(terms, x.n))

    std, span, _ = _sweep(x, order, emit)
    if len(std) != x.c:
        raise UnstableError(len(std), x.c)
    gb.sort(key=lambda g: order.key(g.leading_monomial(order)))
    return IdealPresentation(list(gb), order, gb, std, x.n)


def ideal_to_datum(ideal: IdealPresentation) -> AdhmDatum:
    """Multiplication matrices on the standard-monomial basis, with I = [1]."""
    if ideal.reduced_gb is None:
        from .poly import groebner

        ideal = groebner(ideal.generators, ideal.order)
    std = ideal.std_monomials
    if std is None:
        raise NotZeroDimensionalError("ideal is not zero-dimensional")
    if not std:
        raise ImproperIdealError("the unit ideal has no points")
    n = ideal.nvars
    index = {m: k for k, m in enumerate(std)}
    c = len(std)
    mats = []
    for i in range(n):
        cols = []
        for m in std:
            nf = normal_form(Poly.monomial(tuple(e + (k == i) for k, e in enumerate(m))), ideal)
            col = [Fraction(0)] * c
            for t, a in nf.terms.items():
                col[index[t]] = a
            cols.append(col)
        mats.append(Matrix.from_columns(cols))
    nf1 = normal_form(Poly.constant(1, n), ideal)
    ivec = [Fraction(0)] * c
    for t, a in nf1.terms.items():
        ivec[index[t]] = a
    x = AdhmDatum(tuple(mats), Matrix.column(ivec))
    ok, pair = is_commuting(x)
    assert ok, f"multiplication matrices failed to commute at {pair}"
    return x


def act(g: Matrix, x: AdhmDatum) -> AdhmDatum:
    """g . (B, I) = (g B g^-1, g I)."""
    if g.shape != (x.c, x.c):
        raise DimensionMismatch(f"g has shape {g.shape}, expected {(x.c, x.c)}")
    ginv = mat_inverse(g)
    return AdhmDatum(tuple(g @ b @ ginv for b in x.B), g @ x.I)


def _krylov_matrix(x: AdhmDatum, monomials) -> Matrix:
    return Matrix.from_columns(
        [apply_phi(x, Poly.monomial(m)) for m in monomials], nrows=x.c
    )


def are_equivalent(x: AdhmDatum, y: AdhmDatum, order=None) -> EquivalenceWitness | None:
    """Witness g with g.x = y, or None when the kernel ideals differ."""
    order = as_order(order)
    if (x.n, x.c) != (y.n, y.c):
        return None
    jx = datum_to_ideal(x, order)
    jy = datum_to_ideal(y, order)
    if jx.reduced_gb != jy.reduced_gb:
        return None
    px = _krylov_matrix(x, jx.std_monomials)
    py = _krylov_matrix(y, jy.std_monomials)
    g = py @ mat_inverse(px)
    if act(g, x) != y:
        raise AssertionError("equal ideals but the constructed g does not conjugate x to y")
    return EquivalenceWitness(g)


def datum_from_points(points: Sequence[Sequence], n: int | None = None) -> AdhmDatum:
    """Diagonal datum supported at distinct points, I = (1, ..., 1)."""
    pts = [tuple(to_rational(a) for a in p) for p in points]
    if not pts:
        raise DomainError("need at least one point")
    if n is None:
        n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionMismatch(f"every point must have {n} coordinates")
    if len(set(pts)) != len(pts):
        raise DomainError("points must be pairwise distinct")
    B = tuple(Matrix.diag([p[i] for p in pts]) for i in range(n))
    return AdhmDatum(B, Matrix.column([1] * len(pts)))


def _rand_rational(rng: random.Random, radius: Fraction, denom: int = 8) -> Fraction:
    if radius == 0:
        return Fraction(0)
    k = rng.randint(-denom, denom)
    return radius * Fraction(k, denom)


def _rand_vector(rng: random.Random, c: int, bound: int = 3) -> list:
    while True:
        v = [Fraction(rng.randint(-bound, bound)) for _ in range(c)]
        if any(v):
            return v


def _entry_distance(x: AdhmDatum, y: AdhmDatum) -> Fraction:
    return max(
        (abs(a - b) for bx, by in zip(x.B, y.B) for a, b in zip(bx.entries(), by.entries())),
        default=Fraction(0),
    )


def stabilize_search(x: AdhmDatum, trials: int, seed, radius) -> AdhmDatum | None:
    """Randomized probe for a stable datum near x inside the commuting variety.

    Perturbations keep commutation exactly: B_i' = h(B_i + sum_k e_k p_k(B))h^-1
    with small rational e_k and h near the identity, plus freshly drawn I
    vectors. The first quarter of the trials only redraws I.
    Candidates farther than radius (entrywise, on the B_i) are discarded.
    Returns None if no trial produced a stable datum. A None says nothing
    about whether a stable deformation exists.
    """
    require_commuting(x)
    radius = to_rational(radius)
    if krylov(x).rank == x.c:
        return x
    rng = random.Random(seed)
    n, c = x.n, x.c
    # monomials of degree <= 2 as perturbation directions
    dirs = [m for m in itertools.product(range(3), repeat=n) if sum(m) <= 2]
    pure_i = max(1, trials // 4)
    for t in range(trials):
        if t < pure_i or radius == 0:
            B = x.B
        else:
            scale = radius * Fraction(1, 1 + t % 4)
            B = []
            for b in x.B:
                p = Poly.zero(n)
                for m in rng.sample(dirs, min(3, len(dirs))):
                    p = p + Poly.monomial(m, _rand_rational(rng, scale))
                B.append(b + eval_poly_at_matrices(p, x.B))
            if rng.random() < 0.5:
                e = Matrix.identity(c)
                i, j = rng.randrange(c), rng.randrange(c)
                if i != j:
                    e = e.with_entry(i, j, _rand_rational(rng, scale))
                    try:
                        einv = mat_inverse(e)
                        B = [e @ b @ einv for b in B]
                    except SingularMatrixError:
                        pass
        cand = AdhmDatum(tuple(B), x.I)
        if _entry_distance(x, cand) > radius or not is_commuting(cand)[0]:
            continue
        for _ in range(3):
            cand = AdhmDatum(cand.B, Matrix.column(_rand_vector(rng, c)))
            if krylov(cand).rank == c:
                return cand
    return None


def monomial_labels(monomials) -> list[str]:
    return [mono_str(m) for m in monomials]


__all__ = [
    "AdhmDatum",
    "EquivalenceWitness",
    "KrylovResult",
    "act",
    "apply_phi",
    "are_equivalent",
    "datum_from_points",
    "datum_to_ideal",
    "ideal_to_datum",
    "is_commuting",
    "is_stable",
    "krylov",
    "stabilize_search",
]
