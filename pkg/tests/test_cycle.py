import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hilbadhm.adhm import AdhmDatum, act, datum_from_points, ideal_to_datum
from hilbadhm.corpus import (
    monomial_ideal_generators,
    random_invertible,
    random_points,
    random_stable_datum,
    random_staircase,
)
from hilbadhm.cycle import (
    ZeroCycle,
    cycle_trace_check,
    cycles_agree,
    hilbert_chow_approx,
    hilbert_chow_exact,
    monomial_probes,
    rational_roots,
)
from hilbadhm.errors import ClusteringAmbiguityError, DomainError, IrrationalEigenvalueError, NonCommutingError
from hilbadhm.exactalg import Matrix
from hilbadhm.poly import Poly, groebner, parse_poly

seeds = st.integers(0, 10**6)
F = Fraction


def test_exact_examples(diag_points, jordan):
    assert hilbert_chow_exact(diag_points).as_dict() == {(0, 0): 1, (1, 0): 1}
    cyc = hilbert_chow_exact(jordan)
    assert cyc.as_dict() == {(0, 0): 2} and cyc.partition == (2,)
    pts = [(F(1, 2), F(-3)), (F(0), F(7)), (F(2), F(2))]
    assert hilbert_chow_exact(datum_from_points(pts)).as_dict() == {p: 1 for p in pts}


def test_exact_rejects_irrational():
    x = AdhmDatum((Matrix([[0, 2], [1, 0]]), Matrix.identity(2)), Matrix.column([1, 0]))
    with pytest.raises(IrrationalEigenvalueError) as e:
        hilbert_chow_exact(x)
    assert "t**2 - 2" in str(e.value)
    cyc = hilbert_chow_approx(x, 1e-8)
    xs = sorted(p[0] for p, _ in cyc.points)
    assert abs(xs[0] + 2**0.5) < 1e-12 and abs(xs[1] - 2**0.5) < 1e-12


def test_complex_eigenvalues_on_approx_path():
    x = AdhmDatum((Matrix([[0, -1], [1, 0]]),), Matrix.column([1, 0]))
    cyc = hilbert_chow_approx(x, 1e-8)
    assert sorted(p[0].imag for p, _ in cyc.points) == pytest.approx([-1, 1], abs=1e-12)


def test_non_commuting_rejected():
    x = AdhmDatum((Matrix([[0, 1], [0, 0]]), Matrix([[0, 0], [1, 0]])), Matrix.column([1, 0]))
    with pytest.raises(NonCommutingError):
        hilbert_chow_exact(x)
    with pytest.raises(NonCommutingError):
        hilbert_chow_approx(x, 1e-8)


def test_rational_roots():
    assert rational_roots([F(1), F(-3), F(2)]) == [(F(1), 1), (F(2), 1)]
    assert rational_roots([F(1), F(0), F(0)]) == [(F(0), 2)]


@pytest.mark.parametrize("method", ["trace", "eig"])
def test_approx_examples(diag_points, jordan, method):
    assert cycles_agree(hilbert_chow_exact(diag_points), hilbert_chow_approx(diag_points, 1e-8, method=method), 1e-8)
    cyc = hilbert_chow_approx(jordan, 1e-8, method=method)
    assert cyc.partition == (2,) and max(abs(a) for a in cyc.points[0][0]) < 1e-8
    assert cyc.field_tag == "approximate(1e-08)"


@pytest.mark.parametrize("method", ["trace", "eig"])
def test_close_points_merge(method):
    x = datum_from_points([(0, 0), (F(1, 10**9), 0)])
    cyc = hilbert_chow_approx(x, 1e-6, method=method)
    assert cyc.partition == (2,) and len(cyc.points) == 1
    assert len(hilbert_chow_approx(x, 1e-12).points) == 2


def test_ambiguous_clusters_raise():
    # two points 1.5e-6 apart: farther than tol = 1e-6, closer than 2 tol
    x = datum_from_points([(0, 0), (F(15, 10**7), 0)])
    with pytest.raises(ClusteringAmbiguityError) as e:
        hilbert_chow_approx(x, 1e-6)
    assert e.value.exit_code == 5


def test_bad_tolerance(jordan):
    with pytest.raises(DomainError):
        hilbert_chow_approx(jordan, 0)


def test_trace_check_examples(diag_points, jordan):
    cyc = hilbert_chow_exact(diag_points)
    assert cycle_trace_check(diag_points, cyc, [Poly.constant(1, 2), parse_poly("x0", 2)])
    assert diag_points.B[0].trace() == 1
    assert cycle_trace_check(jordan, hilbert_chow_exact(jordan), [parse_poly("x0*x1", 2)])
    wrong = ZeroCycle((((F(0), F(0)), 1), ((F(2), F(0)), 1)))
    assert not cycle_trace_check(diag_points, wrong, [parse_poly("x0", 2)])


def test_punctual_ideal_single_point():
    # m_p^3 at p = (1, -2): one point with multiplicity 6
    n = 2
    shifted = [parse_poly("x0 - 1", n), parse_poly("x1 + 2", n)]
    gens = [shifted[0] ** 3, shifted[0] ** 2 * shifted[1], shifted[0] * shifted[1] ** 2, shifted[1] ** 3]
    x = ideal_to_datum(groebner(gens))
    assert hilbert_chow_exact(x).as_dict() == {(1, -2): 6}


@given(seeds, st.integers(1, 3), st.integers(1, 5))
def test_multiplicity_and_trace_identity(seed, n, c):
    x = random_stable_datum(n, c, random.Random(seed))
    cyc = hilbert_chow_exact(x)
    assert cyc.degree == c == sum(cyc.partition)
    assert cycle_trace_check(x, cyc, monomial_probes(n, 3))


@given(seeds, st.integers(1, 3), st.integers(1, 5))
def test_gauge_invariance_of_cycle(seed, n, c):
    rng = random.Random(seed)
    x = random_stable_datum(n, c, rng)
    assert hilbert_chow_exact(act(random_invertible(c, rng), x)) == hilbert_chow_exact(x)


@given(seeds, st.integers(1, 3), st.integers(1, 6))
def test_paths_agree_on_conjugated_punctual_data(seed, n, c):
    # rounding splits these defective eigenvalues; the default path must still agree
    rng = random.Random(seed)
    x = ideal_to_datum(groebner(monomial_ideal_generators(random_staircase(n, c, rng), n)))
    x = act(random_invertible(c, rng), x)
    exact = hilbert_chow_exact(x)
    approx = hilbert_chow_approx(x, 1e-8, seed=seed)
    assert cycles_agree(exact, approx, 1e-8)
    assert cycle_trace_check(x, approx, monomial_probes(n, 3))


@given(seeds, st.integers(1, 4), st.integers(1, 6))
def test_radical_point_ideals(seed, n, k):
    rng = random.Random(seed)
    pts = random_points(n, k, rng)
    x = act(random_invertible(k, rng), datum_from_points(pts))
    assert hilbert_chow_exact(x).as_dict() == {p: 1 for p in pts}
