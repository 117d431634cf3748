"""Seeded generators of ideals and ADHM data for tests and experiments."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .adhm import AdhmDatum, act, datum_from_points, ideal_to_datum
from .errors import SingularMatrixError
from .exactalg import Matrix, mat_inverse
from .poly import Poly, groebner


def _addable(staircase: frozenset, n: int):
    """Monomials that can be added to an order ideal keeping it an order ideal."""
    out = set()
    for m in staircase:
        for i in range(n):
            mi = tuple(e + (k == i) for k, e in enumerate(m))
            if mi in staircase:
                continue
            if all(
                tuple(e - (k == j) for k, e in enumerate(mi)) in staircase
                for j in range(n)
                if mi[j] > 0
            ):
                out.add(mi)
    return out


def staircases(n: int, size: int) -> list[frozenset]:
    """All order ideals of the given size in N^n (partitions, plane partitions, ...)."""
    level = {frozenset([(0,) * n])}
    for _ in range(size - 1):
        level = {s | {m} for s in level for m in _addable(s, n)}
    return sorted(level, key=lambda s: sorted(s))


def monomial_ideal_generators(staircase, n: int) -> list[Poly]:
    """Minimal monomial generators of the ideal whose standard set is the staircase."""
    outside = set()
    for m in staircase:
        for i in range(n):
            mi = tuple(e + (k == i) for k, e in enumerate(m))
            if mi not in staircase:
                outside.add(mi)
    minimal = [
        m for m in outside
        if not any(o != m and all(a <= b for a, b in zip(o, m)) for o in outside)
    ]
    return [Poly.monomial(m) for m in sorted(minimal)]


def monomial_ideal_corpus(n: int, max_colength: int):
    for c in range(1, max_colength + 1):
        for s in staircases(n, c):
            yield monomial_ideal_generators(s, n)


def random_staircase(n: int, c: int, rng: random.Random) -> frozenset:
    s = frozenset([(0,) * n])
    for _ in range(c - 1):
        s = s | {rng.choice(sorted(_addable(s, n)))}
    return s


def random_points(n: int, k: int, rng: random.Random, bound: int = 4, denom: int = 1) -> list:
    pts: list = []
    while len(pts) < k:
        p = tuple(Fraction(rng.randint(-bound * denom, bound * denom), denom) for _ in range(n))
        if p not in pts:
            pts.append(p)
    return pts


def circle_points(k: int, rng: random.Random, bound: int = 6) -> list:
    """k distinct rational points of x0^2 + x1^2 = 1 via t -> ((1-t^2), 2t)/(1+t^2)."""
    pts: list = []
    while len(pts) < k:
        t = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        p = ((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))
        if p not in pts:
            pts.append(p)
    return pts


def point_ideal_generators(points, n: int, rng: random.Random) -> list[Poly]:
    """A generating set of the vanishing ideal of distinct points.

    Small cases use products of one linear form per point (the product of
    comaximal maximal ideals is their intersection). Larger cases use a
    separating linear form and Lagrange interpolation of each coordinate.
    """
    k = len(points)
    if n ** k <= 32:
        gens = []
        for choice in itertools.product(range(n), repeat=k):
            f = Poly.constant(1, n)
            for p, i in zip(points, choice):
                f = f * (Poly.var(i, n) - p[i])
            gens.append(f)
        return gens
    # shape lemma: a separating linear form l, prod (l - l(p)), x_i - h_i(l)
    while True:
        a = [rng.randint(-3, 3) for _ in range(n)]
        values = [sum(ai * pi for ai, pi in zip(a, p)) for p in points]
        if any(a) and len(set(values)) == k:
            break
    ell = sum((Poly.var(i, n) * ai for i, ai in enumerate(a) if ai), Poly.zero(n))
    f = Poly.constant(1, n)
    for v in values:
        f = f * (ell - v)
    gens = [f]
    for i in range(n):
        h = Poly.zero(n)
        for idx, p in enumerate(points):
            basis = Poly.constant(1, n)
            for jdx, v in enumerate(values):
                if jdx != idx:
                    basis = basis * ((ell - v) * (1 / (values[idx] - v)))
            h = h + basis * p[i]
        gens.append(Poly.var(i, n) - h)
    return gens


def random_invertible(c: int, rng: random.Random, bound: int = 2) -> Matrix:
    while True:
        g = Matrix([[rng.randint(-bound, bound) for _ in range(c)] for _ in range(c)])
        try:
            mat_inverse(g)
        except SingularMatrixError:
            continue
        return g


def random_stable_datum(n: int, c: int, rng: random.Random, gauge: bool = True) -> AdhmDatum:
    """Either distinct points or a random monomial ideal, then randomly gauged."""
    if rng.random() < 0.5:
        x = datum_from_points(random_points(n, c, rng), n)
    else:
        x = ideal_to_datum(groebner(monomial_ideal_generators(random_staircase(n, c, rng), n)))
    if gauge:
        x = act(random_invertible(c, rng), x)
    return x


def random_unstable_datum(n: int, c: int, rng: random.Random) -> AdhmDatum:
    """Commuting datum whose I lies in a proper invariant subspace.

    Either block-diagonal (stable datum on the first block, I zero on the
    second) or I replaced by p(B) I for a singular p(B). Always gauged.
    """
    if c >= 2 and rng.random() < 0.5:
        c1 = rng.randint(1, c - 1)
        x1 = random_stable_datum(n, c1, rng, gauge=False)
        x2 = random_stable_datum(n, c - c1, rng, gauge=False)
        B = tuple(
            Matrix.block([[b1, Matrix.zeros(c1, c - c1)], [Matrix.zeros(c - c1, c1), b2]])
            for b1, b2 in zip(x1.B, x2.B)
        )
        I = Matrix.block([[x1.I], [Matrix.zeros(c - c1, 1)]])
        x = AdhmDatum(B, I)
    else:
        x = random_stable_datum(n, c, rng, gauge=False)
        from .cycle import joint_eigenvalues

        lam, _ = rng.choice(joint_eigenvalues(x.B))
        i = rng.randrange(n)
        shift = x.B[i] - Matrix.identity(c).scale(lam[i])
        x = AdhmDatum(x.B, shift @ x.I)
    return act(random_invertible(c, rng), x)


def block_triangular_unstable_datum(n: int, c: int, rng: random.Random) -> AdhmDatum:
    """B_i = p_i(M) for one block upper triangular M, I inside the top block.

    The top c1 coordinates span a proper subspace that every B_i preserves and
    that contains I, so the datum is unstable by construction. Always gauged.
    """
    if c < 2:
        raise ValueError("an unstable datum with a proper invariant subspace needs c >= 2")
    c1 = rng.randint(1, c - 1)
    rows = [[0] * c for _ in range(c)]
    for i in range(c):
        for j in range(c):
            if not (i >= c1 and j < c1):
                rows[i][j] = rng.randint(-2, 2)
    m = Matrix(rows)
    powers = [Matrix.identity(c), m, m @ m]
    B = []
    for _ in range(n):
        b = Matrix.zeros(c, c)
        for p in powers:
            b = b + p.scale(rng.randint(-2, 2))
        B.append(b)
    ivec = [rng.randint(-2, 2) for _ in range(c1)] + [0] * (c - c1)
    return act(random_invertible(c, rng), AdhmDatum(tuple(B), Matrix.column(ivec)))


def jordan_block(c: int, eigenvalue=0) -> Matrix:
    """Lower Jordan block: e_k -> e_{k+1} (plus eigenvalue on the diagonal)."""
    rows = [[Fraction(0)] * c for _ in range(c)]
    for k in range(c):
        rows[k][k] = Fraction(eigenvalue)
        if k + 1 < c:
            rows[k + 1][k] = Fraction(1)
    return Matrix(rows)


def jordan_tower_datum(n: int, c: int, rng: random.Random, I=None) -> AdhmDatum:
    """B_0 a nilpotent Jordan block, B_i for i > 0 random polynomials in B_0."""
    j = jordan_block(c)
    powers = [j.pow(k) for k in range(c)]
    B = [j]
    for _ in range(1, n):
        coeffs = [rng.randint(-2, 2) for _ in range(c)]
        m = Matrix.zeros(c, c)
        for a, p in zip(coeffs, powers):
            m = m + p.scale(a)
        B.append(m)
    if I is None:
        I = [0] * c
        I[-1] = 1
    return AdhmDatum(tuple(B), Matrix.column(I))


def diagonal_datum(n: int, c: int, rng: random.Random, I=None) -> AdhmDatum:
    x = datum_from_points(random_points(n, c, rng), n)
    if I is None:
        I = [rng.randint(0, 1) for _ in range(c)]
        I[rng.randrange(c)] = 0
    return AdhmDatum(x.B, Matrix.column(I))


__all__ = [
    "block_triangular_unstable_datum",
    "circle_points",
    "diagonal_datum",
    "jordan_block",
    "jordan_tower_datum",
    "monomial_ideal_corpus",
    "monomial_ideal_generators",
    "point_ideal_generators",
    "random_invertible",
    "random_points",
    "random_stable_datum",
    "random_staircase",
    "random_unstable_datum",
    "staircases",
]
