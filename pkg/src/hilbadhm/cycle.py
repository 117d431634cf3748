"""Hilbert-Chow map: the support cycle sum nu_l [p_l] of a commuting datum.

The exact path intersects generalized eigenspaces and needs every joint
eigenvalue to be rational. The approximate path works in floating point.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy

from .adhm import AdhmDatum, require_commuting
from .errors import ClusteringAmbiguityError, DomainError, IrrationalEigenvalueError
from .exactalg import Matrix, charpoly, mat_kernel, solve
from .poly import Poly, eval_poly_at_matrices


@dataclass(frozen=True)
class ZeroCycle:
    """Points with positive multiplicities. tolerance is None on the exact path."""

    points: tuple  # ((coords, multiplicity), ...)
    tolerance: float | None = None

    @property
    def exact(self) -> bool:
        return self.tolerance is None

    @property
    def field_tag(self) -> str:
        return "exact" if self.exact else f"approximate({self.tolerance:g})"

    @property
    def degree(self) -> int:
        return sum(mult for _, mult in self.points)

    @property
    def partition(self) -> tuple:
        return tuple(sorted((mult for _, mult in self.points), reverse=True))

    def as_dict(self) -> dict:
        return {tuple(p): mult for p, mult in self.points}


def _sort_points(points):
    def key(pm):
        return tuple((float(np.real(a)), float(np.imag(a))) for a in pm[0])

    return tuple(sorted(points, key=key))


def rational_roots(coeffs: Sequence[Fraction]):
    """Rational roots with multiplicity of a polynomial given high degree first.

    Raises IrrationalEigenvalueError naming a non-linear irreducible factor.
    """
    t = sympy.Symbol("t")
    p = sympy.Poly([sympy.Rational(a.numerator, a.denominator) for a in coeffs], t, domain="QQ")
    _, factors = p.factor_list()
    roots = []
    for f, mult in factors:
        if f.degree() != 1:
            raise IrrationalEigenvalueError(
                f"characteristic polynomial has the non-rational factor {f.as_expr()}; "
                "use the approximate path",
                factor=str(f.as_expr()),
            )
        a, b = f.all_coeffs()
        r = -sympy.Rational(b) / sympy.Rational(a)
        roots.append((Fraction(int(r.p), int(r.q)), mult))
    roots.sort()
    return roots


def _restrict(b: Matrix, basis: Matrix) -> Matrix:
    """Matrix of b on the invariant subspace spanned by the columns of basis."""
    r = solve(basis, b @ basis)
    if r is None:
        raise AssertionError("subspace is not invariant")
    return r


def joint_eigenvalues(mats: Sequence[Matrix]):
    """[(joint eigenvalue tuple, dim of joint generalized eigenspace)] for commuting mats."""
    c = mats[0].nrows
    if c == 0:
        return []
    out = []

    def recurse(i, basis: Matrix, prefix):
        if i == len(mats):
            out.append((tuple(prefix), basis.ncols))
            return
        r = _restrict(mats[i], basis)
        k = r.nrows
        for lam, _ in rational_roots(charpoly(r)):
            shifted = (r - Matrix.identity(k).scale(lam)).pow(k)
            ker = mat_kernel(shifted)
            if not ker:
                continue
            sub = basis @ Matrix.from_columns(ker)
            recurse(i + 1, sub, prefix + [lam])

    recurse(0, Matrix.identity(c), [])
    return out


def hilbert_chow_exact(x: AdhmDatum) -> ZeroCycle:
    require_commuting(x)
    pts = joint_eigenvalues(x.B)
    assert sum(m for _, m in pts) == x.c
    return ZeroCycle(_sort_points(pts))


def _single_linkage(points: np.ndarray, tol: float) -> list[list[int]]:
    n = len(points)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in itertools.combinations(range(n), 2):
        if np.max(np.abs(points[a] - points[b])) <= tol:
            parent[find(a)] = find(b)
    groups: dict = {}
    for a in range(n):
        groups.setdefault(find(a), []).append(a)
    return list(groups.values())


def _eig_points(x: AdhmDatum, tolerance: float, seed):
    """Literal eigenvector method: Rayleigh quotients on eigenvectors of L.

    Reliable for diagonalizable data and for data whose L is permutation
    triangular (LAPACK balancing isolates those eigenvalues exactly). Rounding
    splits a defective eigenvalue of a conjugated datum into a ring of radius
    about eps^(1/k), which this method cannot repair.
    """
    mats = [b.to_numpy() for b in x.B]
    rng = np.random.default_rng(seed)

    def draw(gamma):
        lmat = sum(g * m for g, m in zip(gamma, mats))
        _, vecs = np.linalg.eig(lmat)
        joint = np.array([[np.vdot(v, m @ v) / np.vdot(v, v) for m in mats] for v in vecs.T])
        return _single_linkage(joint, tolerance), joint

    for _ in range(8):
        cl1, joint = draw(rng.integers(1, 50, size=x.n))
        cl2, _ = draw(rng.integers(1, 50, size=x.n))
        if len(cl1) == len(cl2):
            break
    else:
        raise ClusteringAmbiguityError("distinct-eigenvalue count unstable across draws")
    return [(joint[g].mean(axis=0), len(g)) for g in cl1]


def _poly_at_matrix(coeffs, m: Matrix) -> Matrix:
    """Horner evaluation, coefficients high degree first."""
    out = Matrix.zeros(m.nrows, m.ncols)
    ident = Matrix.identity(m.nrows)
    for a in coeffs:
        out = out @ m + ident.scale(a)
    return out


def _trace_points(x: AdhmDatum, seed, digits: int = 30):
    """Certified multiplicities, coordinates from exact trace identities.

    For L = sum gamma_i B_i with random integer gamma, the squarefree
    factorization chi_L = prod f_k^k is exact. On the generalized eigenspace
    E_k of f_k, the coordinate x_i is h_i(L) for the h_i in Q[t]/(f_k) solving
    the trace equations tr(B_i L^a) = k * sum_theta h_i(theta) theta^a. The
    draw is accepted only if every B_i - h_i(L) is nilpotent on E_k, which
    proves that gamma separates the points. Only the roots theta of the
    squarefree f_k are then computed numerically.
    """
    rng = random.Random(seed)
    c, n = x.c, x.n
    t = sympy.Symbol("t")
    for _ in range(20):
        gamma = [rng.randint(1, 50) for _ in range(n)]
        lmat = Matrix.zeros(c, c)
        for g, b in zip(gamma, x.B):
            lmat = lmat + b.scale(g)
        chi = sympy.Poly([sympy.Rational(a.numerator, a.denominator) for a in charpoly(lmat)], t)
        _, parts = chi.sqf_list()
        out = []
        separating = True
        for f, k in parts:
            fco = [Fraction(int(a.p), int(a.q)) for a in f.all_coeffs()]
            d = len(fco) - 1
            basis = Matrix.from_columns(mat_kernel(_poly_at_matrix(fco, lmat).pow(k)))
            le = _restrict(lmat, basis)
            bes = [_restrict(b, basis) for b in x.B]
            lpow = [Matrix.identity(le.nrows)]
            for _ in range(2 * d):
                lpow.append(lpow[-1] @ le)
            hankel = Matrix([[lpow[a + b].trace() / k for b in range(d)] for a in range(d)])
            hs = []
            for be in bes:
                rhs = Matrix.column([(be @ lpow[a]).trace() / k for a in range(d)])
                h = [r[0] for r in solve(hankel, rhs).rows]  # low degree first
                if not (be - _poly_at_matrix(h[::-1], le)).pow(le.nrows).is_zero():
                    separating = False
                    break
                hs.append(h)
            if not separating:
                break
            for theta in f.nroots(n=digits):
                theta = complex(theta)
                coords = [sum(complex(a) * theta ** j for j, a in enumerate(h)) for h in hs]
                out.append((np.array(coords), k))
        if separating:
            return out
    raise ClusteringAmbiguityError("no separating linear combination found in 20 draws")


def hilbert_chow_approx(x: AdhmDatum, tolerance: float, seed=0, method: str = "trace") -> ZeroCycle:
    """Floating-point Hilbert-Chow cycle; points within tolerance are merged.

    method="trace" (default) certifies multiplicities exactly and computes
    only polynomial roots in floating point. method="eig" reads joint
    eigenvalues as Rayleigh quotients on eigenvectors of a random
    combination L, which is faster but can split defective eigenvalues of
    conjugated data. Points closer than tolerance merge into one point with
    summed multiplicity, so the result can lose points; clusters left within
    2*tolerance of each other raise ClusteringAmbiguityError.
    """
    require_commuting(x)
    if tolerance <= 0:
        raise DomainError("tolerance must be positive")
    if method == "trace":
        raw = _trace_points(x, seed)
    elif method == "eig":
        raw = _eig_points(x, tolerance, seed)
    else:
        raise DomainError(f"unknown method {method!r}")
    coords = np.array([p for p, _ in raw])
    weights = np.array([m for _, m in raw], dtype=float)
    clusters = _single_linkage(coords, tolerance)
    centers = [np.average(coords[g], axis=0, weights=weights[g]) for g in clusters]
    for a, b in itertools.combinations(range(len(centers)), 2):
        if np.max(np.abs(centers[a] - centers[b])) <= 2 * tolerance:
            raise ClusteringAmbiguityError(
                f"clusters {a} and {b} are within 2*tolerance of each other"
            )
    points = []
    for g, center in zip(clusters, centers):
        pt = tuple(float(np.real(a)) if abs(np.imag(a)) <= tolerance else complex(a) for a in center)
        points.append((pt, int(sum(raw[i][1] for i in g))))
    assert sum(m for _, m in points) == x.c
    return ZeroCycle(_sort_points(points), float(tolerance))


def cycle_trace_check(x: AdhmDatum, cyc: ZeroCycle, probes: Sequence[Poly]) -> bool:
    """trace p(B) == sum_l nu_l p(p_l) for every probe polynomial."""
    for p in probes:
        lhs = eval_poly_at_matrices(p, x.B).trace()
        if cyc.exact:
            rhs = sum((mult * p.evaluate(pt) for pt, mult in cyc.points), Fraction(0))
            if lhs != rhs:
                return False
        else:
            rhs = sum(mult * p.evaluate(pt) for pt, mult in cyc.points)
            radius = max((abs(a) for pt, _ in cyc.points for a in pt), default=0.0)
            deg = max(p.total_degree(), 1)
            norm = sum(abs(float(a)) for a in p.terms.values())
            bound = x.c * cyc.tolerance * norm * deg * (1 + radius) ** (deg - 1)
            if abs(complex(lhs) - complex(rhs)) > bound:
                return False
    return True


def monomial_probes(n: int, max_degree: int) -> list[Poly]:
    out = []
    for m in itertools.product(range(max_degree + 1), repeat=n):
        if sum(m) <= max_degree:
            out.append(Poly.monomial(m))
    return out


def cycles_agree(exact: ZeroCycle, approx: ZeroCycle, tol: float) -> bool:
    if exact.partition != approx.partition or len(exact.points) != len(approx.points):
        return False
    remaining = list(approx.points)
    for pt, mult in exact.points:
        hit = None
        for k, (q, m2) in enumerate(remaining):
            if m2 == mult and max(abs(complex(a) - complex(b)) for a, b in zip(pt, q)) <= tol:
                hit = k
                break
        if hit is None:
            return False
        remaining.pop(hit)
    return True
