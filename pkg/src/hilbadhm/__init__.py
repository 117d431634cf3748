"""Exact commuting-matrix (ADHM) data for Hilbert schemes of points in affine space."""

from .adhm import (
    AdhmDatum,
    act,
    are_equivalent,
    datum_from_points,
    datum_to_ideal,
    ideal_to_datum,
    is_commuting,
    is_stable,
    krylov,
    stabilize_search,
)
from .cycle import ZeroCycle, cycle_trace_check, hilbert_chow_approx, hilbert_chow_exact
from .errors import (
    ClusteringAmbiguityError,
    DomainError,
    HilbAdhmError,
    NonCommutingError,
    ParseError,
    UnstableError,
)
from .exactalg import IncrementalSpan, Matrix
from .monad import ExtendedMonad, MonadShape, build_monad, check_complex, fiber_profile
from .poly import GREVLEX, LEX, IdealPresentation, MonomialOrder, Poly, groebner, normal_form, parse_poly
from .variety import VarietyConstraint, is_in_hilb_variety

__version__ = "0.1.0"
