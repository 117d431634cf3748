"""Hilbert schemes of points on an affine subvariety Y = Z(f_1, ..., f_k).

A stable datum lies over Y exactly when every f_j(B) vanishes. Y is taken at
face value as the given generator list, with no saturation or radical.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .adhm import AdhmDatum, datum_to_ideal, krylov, require_commuting
from .errors import DimensionMismatch, UnstableError
from .exactalg import Matrix
from .poly import IdealPresentation, Poly, normal_form, parse_poly_lines


@dataclass(frozen=True)
class VarietyConstraint:
    nvars: int
    generators: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for f in self.generators:
            if f.nvars != self.nvars:
                raise DimensionMismatch(f"generator {f} is not in {self.nvars} variables")

    @property
    def is_whole_space(self) -> bool:
        return not self.generators

    @classmethod
    def parse(cls, text: str, nvars: int) -> VarietyConstraint:
        return cls(nvars, tuple(parse_poly_lines(text, nvars)))

    def equation_count(self, c: int) -> int:
        """Upper bound on the scalar equations f_j(B) = 0 impose."""
        return len(self.generators) * c * c


@dataclass
class InclusionReport:
    contained: bool
    residues: list  # normal form of each generator modulo J

    def __bool__(self):
        return self.contained


def variety_residuals(x: AdhmDatum, y: VarietyConstraint) -> list[Matrix]:
    from .poly import eval_poly_at_matrices

    require_commuting(x)
    if y.nvars != x.n:
        raise DimensionMismatch(f"variety in {y.nvars} variables, datum has n = {x.n}")
    return [eval_poly_at_matrices(f, x.B) for f in y.generators]


def is_in_hilb_variety(x: AdhmDatum, y: VarietyConstraint, cross_check: bool = True) -> bool:
    require_commuting(x)
    rank = krylov(x).rank
    if rank != x.c:
        raise UnstableError(rank, x.c)
    member = all(r.is_zero() for r in variety_residuals(x, y))
    if cross_check and y.generators:
        ideal = datum_to_ideal(x)
        via_nf = all(normal_form(f, ideal).is_zero() for f in y.generators)
        assert via_nf == member, "residual and normal-form membership disagree"
    return member


def induced_quotient_ideal(J: IdealPresentation, y: VarietyConstraint) -> InclusionReport:
    """Is the ideal of Y contained in J, i.e. does the subscheme lie on Y?"""
    if y.nvars != J.nvars:
        raise DimensionMismatch("variety and ideal live in different rings")
    residues = [normal_form(f, J) for f in y.generators]
    return InclusionReport(all(r.is_zero() for r in residues), residues)


def normal_form_membership(x: AdhmDatum, y: VarietyConstraint) -> bool:
    ideal = datum_to_ideal(x)
    return all(normal_form(f, ideal).is_zero() for f in y.generators)


__all__ = [
    "InclusionReport",
    "VarietyConstraint",
    "induced_quotient_ideal",
    "is_in_hilb_variety",
    "normal_form_membership",
    "variety_residuals",
]
