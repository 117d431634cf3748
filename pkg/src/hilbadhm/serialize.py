"""Text formats: datum, ideal, monad and cycle documents.

Structured documents are JSON with rationals written as strings ("p/q" or
an integer), so every value round-trips exactly. Dumps use sorted keys and
fixed indentation, so equal values give byte-identical text.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .adhm import AdhmDatum
from .cycle import ZeroCycle
from .errors import ParseError
from .exactalg import Matrix
from .monad import ExtendedMonad, LinearFormMap, MonadShape
from .poly import IdealPresentation, as_order, mono_str, parse_poly, parse_poly_lines


def rat_str(q: Fraction) -> str:
    return str(q)


def parse_rational(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise ParseError(f"expected an integer or a 'p/q' string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError, TypeError):
        raise ParseError(f"not a rational number: {s!r}") from None


def matrix_to_doc(m: Matrix) -> list:
    return [[rat_str(a) for a in r] for r in m.rows]


def matrix_from_doc(rows, ncols: int | None = None) -> Matrix:
    if not isinstance(rows, list):
        raise ParseError("matrix must be a list of rows")
    parsed = []
    for r in rows:
        if not isinstance(r, list):
            raise ParseError("matrix row must be a list")
        parsed.append([parse_rational(a) for a in r])
    try:
        return Matrix(parsed, ncols=ncols)
    except ValueError as e:
        raise ParseError(str(e)) from None


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid document: {e.msg}", e.pos, text) from None


# datum


def datum_to_doc(x: AdhmDatum, basis=None) -> dict:
    doc = {
        "n": x.n,
        "c": x.c,
        "B": [matrix_to_doc(b) for b in x.B],
        "I": [rat_str(a) for a in x.i_vector],
    }
    if basis is not None:
        doc["basis"] = [mono_str(m) for m in basis]
    return doc


def datum_from_doc(doc) -> AdhmDatum:
    if not isinstance(doc, dict):
        raise ParseError("datum document must be an object")
    for k in ("n", "c", "B", "I"):
        if k not in doc:
            raise ParseError(f"datum document is missing {k!r}")
    n, c = doc["n"], doc["c"]
    B = tuple(matrix_from_doc(b, c) for b in doc["B"])
    I = doc["I"]
    if I and isinstance(I[0], list):
        I = [r[0] for r in I]
    ivec = [parse_rational(a) for a in I]
    if len(B) != n:
        raise ParseError(f"n = {n} but {len(B)} matrices given")
    if len(ivec) != c:
        raise ParseError(f"c = {c} but I has {len(ivec)} entries")
    try:
        return AdhmDatum(B, Matrix.column(ivec))
    except ValueError as e:
        raise ParseError(str(e)) from None


def dump_datum(x: AdhmDatum, basis=None) -> str:
    return dumps(datum_to_doc(x, basis))


def load_datum(text: str) -> AdhmDatum:
    return datum_from_doc(loads(text))


# ideal


def ideal_to_doc(ideal: IdealPresentation) -> dict:
    order = ideal.order
    gb = ideal.reduced_gb
    return {
        "nvars": ideal.nvars,
        "order": order.kind,
        "reduced_gb": None if gb is None else [g.format(order) for g in gb],
        "colength": None if ideal.std_monomials is None else len(ideal.std_monomials),
        "std_monomials": (
            None if ideal.std_monomials is None else [mono_str(m) for m in ideal.std_monomials]
        ),
    }


def ideal_from_doc(doc) -> IdealPresentation:
    nvars = doc["nvars"]
    order = as_order(doc.get("order", "grevlex"))
    gb = [parse_poly(s, nvars) for s in doc["reduced_gb"]]
    std = None
    if doc.get("std_monomials") is not None:
        std = [parse_poly(s, nvars).leading_monomial(order) for s in doc["std_monomials"]]
    return IdealPresentation(gb, order, gb, std, nvars)


def load_ideal_text(text: str, nvars: int | None = None) -> list:
    """Generators from an ideal file, inferring at least two variables by default."""
    if nvars is None:
        from .poly import max_variable_index

        body = [line.split("#", 1)[0] for line in text.splitlines()]
        nvars = max(2, max((max_variable_index(b) for b in body), default=-1) + 1)
    return parse_poly_lines(text, nvars)


def ideal_to_text(ideal: IdealPresentation) -> str:
    return "".join(g.format(ideal.order) + "\n" for g in ideal.reduced_gb)


# monad


def monad_to_doc(m: ExtendedMonad) -> dict:
    return {
        "n": m.shape.n,
        "c": m.shape.c,
        "r": m.shape.r,
        "dims": {str(d): k for d, k in m.shape.dims.items()},
        "alphas": {
            str(d): {
                "rows": a.nrows,
                "cols": a.ncols,
                "coeffs": [matrix_to_doc(k) for k in a.coeffs],
            }
            for d, a in m.alphas.items()
        },
    }


def monad_from_doc(doc) -> ExtendedMonad:
    try:
        dims = {int(d): k for d, k in doc["dims"].items()}
        shape = MonadShape(doc["n"], doc["c"], doc.get("r", 1), dict(sorted(dims.items())))
        alphas = {}
        for d, a in doc["alphas"].items():
            coeffs = tuple(matrix_from_doc(k, a["cols"]) for k in a["coeffs"])
            alphas[int(d)] = LinearFormMap(coeffs)
    except (KeyError, TypeError) as e:
        raise ParseError(f"malformed monad document: {e}") from None
    return ExtendedMonad(shape, dict(sorted(alphas.items())))


def dump_monad(m: ExtendedMonad) -> str:
    return dumps(monad_to_doc(m))


def load_monad(text: str) -> ExtendedMonad:
    return monad_from_doc(loads(text))


# cycle


def _coord_str(a) -> str:
    if isinstance(a, Fraction):
        return str(a)
    if isinstance(a, complex):
        return f"{a.real:.12g}{a.imag:+.12g}j"
    return f"{a:.12g}"


def cycle_to_doc(cyc: ZeroCycle, n: int) -> dict:
    return {
        "c": cyc.degree,
        "n": n,
        "field": cyc.field_tag,
        "partition": list(cyc.partition),
        "points": [
            {"coords": [_coord_str(a) for a in pt], "multiplicity": mult}
            for pt, mult in cyc.points
        ],
    }


def cycle_to_text(cyc: ZeroCycle, n: int) -> str:
    part = ",".join(str(k) for k in cyc.partition)
    lines = [f"# c={cyc.degree} n={n} partition=({part}) field={cyc.field_tag}"]
    rows = [("(" + ", ".join(_coord_str(a) for a in pt) + ")", mult) for pt, mult in cyc.points]
    width = max((len(r[0]) for r in rows), default=0)
    for coords, mult in rows:
        lines.append(f"{coords.ljust(width)} x{mult}")
    return "\n".join(lines) + "\n"


def cycle_from_text(text: str) -> ZeroCycle:
    """Parse the exact text format back (approximate cycles parse as floats)."""
    points = []
    tol = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if "approximate(" in line:
                tol = float(line.split("approximate(", 1)[1].rstrip(")"))
            continue
        coords, mult = line.rsplit("x", 1)
        inner = coords.strip().strip("()")
        vals = [s.strip() for s in inner.split(",")]
        if tol is None:
            pt = tuple(parse_rational(v) for v in vals)
        else:
            pt = tuple(complex(v) if "j" in v else float(v) for v in vals)
        points.append((pt, int(mult)))
    return ZeroCycle(tuple(points), tol)
