"""Sparse multivariate polynomials over Q, monomial orders and Groebner bases.

Monomials are exponent tuples. Variables are printed and parsed as
``x0 .. x{n-1}``; under every order ``x0 > x1 > ... > x{n-1}`` unless a
variable permutation is supplied.
"""

from __future__ import annotations

import heapq
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, MissingGroebnerBasis, ParseError
from .exactalg import Matrix, to_rational

Monomial = tuple  # tuple[int, ...]


def one_monomial(n: int) -> Monomial:
    return (0,) * n


def var_monomial(n: int, i: int) -> Monomial:
    return tuple(1 if k == i else 0 for k in range(n))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def degree(m: Monomial) -> int:
    return sum(m)


def mono_str(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"
    perm: tuple | None = None

    KINDS = ("grevlex", "lex", "deglex")

    def __post_init__(self):
        kind = {"graded-lex": "deglex", "grlex": "deglex"}.get(self.kind, self.kind)
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if self.perm is not None:
            object.__setattr__(self, "perm", tuple(self.perm))
            if sorted(self.perm) != list(range(len(self.perm))):
                raise ValueError("perm must be a permutation of 0..n-1")

    def key(self, m: Monomial):
        """Sort key: a < b in the order iff key(a) < key(b)."""
        if self.perm is not None:
            m = tuple(m[i] for i in self.perm)
        if self.kind == "lex":
            return m
        if self.kind == "deglex":
            return (sum(m), m)
        return (sum(m), tuple(-e for e in reversed(m)))

    def __str__(self):
        return self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def as_order(order) -> MonomialOrder:
    if order is None:
        return GREVLEX
    if isinstance(order, MonomialOrder):
        return order
    return MonomialOrder(order)


class Poly:
    """Immutable sparse polynomial: {exponent tuple: nonzero Fraction}."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = (), nvars: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        t = {}
        for m, a in items:
            m = tuple(int(e) for e in m)
            a = to_rational(a)
            if a:
                t[m] = t.get(m, 0) + a
                if not t[m]:
                    del t[m]
        if nvars is None:
            if not t:
                raise DimensionMismatch("nvars required for the zero polynomial")
            nvars = len(next(iter(t)))
        if any(len(m) != nvars for m in t):
            raise DimensionMismatch("monomial length differs from nvars")
        self.nvars = nvars
        self.terms = t
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> Poly:
        p = cls.__new__(cls)
        p.terms = terms
        p.nvars = nvars
        p._hash = None
        return p

    @classmethod
    def constant(cls, a, nvars: int) -> Poly:
        return cls({one_monomial(nvars): a}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> Poly:
        return cls._raw({var_monomial(nvars, i): Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, m: Monomial, coeff=1) -> Poly:
        return cls({tuple(m): coeff}, len(m))

    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls._raw({}, nvars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def monomials(self, order=None) -> list[Monomial]:
        """Monomials in decreasing order."""
        return sorted(self.terms, key=as_order(order).key, reverse=True)

    def leading_monomial(self, order=None) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=as_order(order).key)

    def leading_coefficient(self, order=None) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def coeff(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise DimensionMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        return Poly.constant(other, self.nvars)

    def __add__(self, other) -> Poly:
        other = self._coerce(other)
        t = dict(self.terms)
        for m, a in other.terms.items():
            s = t.get(m, 0) + a
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return Poly._raw(t, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw({m: -a for m, a in self.terms.items()}, self.nvars)

    def __sub__(self, other) -> Poly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Poly:
        return self._coerce(other) - self

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            a = to_rational(other)
            if not a:
                return Poly.zero(self.nvars)
            return Poly._raw({m: a * b for m, b in self.terms.items()}, self.nvars)
        other = self._coerce(other)
        t: dict = {}
        for m1, a1 in self.terms.items():
            for m2, a2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = t.get(m, 0) + a1 * a2
                if s:
                    t[m] = s
                else:
                    t.pop(m, None)
        return Poly._raw(t, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power")
        result = Poly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, m: Monomial, a) -> Poly:
        return Poly._raw({mono_mul(m, k): a * b for k, b in self.terms.items()}, self.nvars)

    def monic(self, order=None) -> Poly:
        return self * (1 / self.leading_coefficient(order))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def evaluate(self, point: Sequence):
        """Value at a point; works for Fractions, ints, floats or complex."""
        if len(point) != self.nvars:
            raise DimensionMismatch("point arity differs from nvars")
        total = 0
        for m, a in self.terms.items():
            v = a
            for x, e in zip(point, m):
                if e:
                    v = v * x**e
            total = total + v
        return total

    def format(self, order=None) -> str:
        if not self.terms:
            return "0"
        out = []
        for k, m in enumerate(self.monomials(order)):
            a = self.terms[m]
            sign = "-" if a < 0 else "+"
            a = abs(a)
            ms = mono_str(m)
            if ms == "1":
                body = str(a)
            elif a == 1:
                body = ms
            else:
                body = f"{a}*{ms}"
            if k == 0:
                out.append(("-" if sign == "-" else "") + body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly({self.format()!r}, nvars={self.nvars})"


def monomial_poly(m: Monomial) -> Poly:
    return Poly.monomial(m)


# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        num, var, ident, op = m.groups()
        if ident is not None:
            raise ParseError(f"unknown identifier {ident!r}", start, text)
        if num is not None:
            tokens.append(("num", int(num), start))
        elif var is not None:
            tokens.append(("var", int(var[1:]), start))
        else:
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text, nvars):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.fail(f"expected {op!r}", t)

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        sign = 1
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = self.term() * sign
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                acc = acc * self.power()
            elif t[0] == "op" and t[1] == "/":
                self.take()
                d = self.power()
                if d.total_degree() > 0 or d.is_zero():
                    self.fail("can only divide by a nonzero constant", t)
                acc = acc * (1 / d.coeff(one_monomial(self.nvars)))
            else:
                return acc

    def power(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                self.fail("exponent must be a non-negative integer", e)
            base = base ** e[1]
        return base

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return Poly.constant(t[1], self.nvars)
        if t[0] == "var":
            if t[1] >= self.nvars:
                self.fail(f"variable x{t[1]} out of range for {self.nvars} variables", t)
            return Poly.var(t[1], self.nvars)
        if t[0] == "op" and t[1] == "(":
            p = self.expr()
            self.expect(")")
            return p
        if t[0] == "op" and t[1] == "-":
            return -self.power()
        self.fail("expected a number, variable or '('", t)


def max_variable_index(text: str) -> int:
    """Largest i such that x{i} occurs in text, or -1."""
    return max((int(v) for v in re.findall(r"x(\d+)", text)), default=-1)


def parse_poly(text: str, nvars: int | None = None) -> Poly:
    """Parse e.g. ``"x0^2*x1 - 3/2*x2 + 1"``."""
    if nvars is None:
        nvars = max(max_variable_index(text) + 1, 1)
    return _Parser(text, nvars).parse()


def parse_poly_lines(text: str, nvars: int | None = None) -> list[Poly]:
    """One polynomial per line; blank lines and ``#`` comments ignored."""
    lines = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if nvars is None:
        nvars = max((max_variable_index(b) for _, b in lines), default=-1) + 1
        nvars = max(nvars, 1)
    polys = []
    for lineno, body in lines:
        try:
            polys.append(parse_poly(body, nvars))
        except ParseError as e:
            raise ParseError(f"line {lineno}: {e}", e.position, body) from None
    return polys


# division and Groebner bases


def _lead(p: Poly, key):
    m = max(p.terms, key=key)
    return m, p.terms[m]


def reduce_poly(p: Poly, basis: Sequence[Poly], order=None) -> Poly:
    """Full multivariate division remainder of p by basis."""
    order = as_order(order)
    key = order.key
    leads = [_lead(g, key) for g in basis]
    terms = dict(p.terms)
    rem: dict = {}
    # heap of pending monomials, largest first
    heap = [(_neg_key(key(m)), m) for m in terms]
    heapq.heapify(heap)
    seen = set(terms)
    while heap:
        _, m = heapq.heappop(heap)
        seen.discard(m)
        a = terms.pop(m, None)
        if not a:
            continue
        for g, (lm, lc) in zip(basis, leads):
            if divides(lm, m):
                q = mono_div(m, lm)
                f = a / lc
                for gm, gc in g.terms.items():
                    if gm == lm:
                        continue
                    t = mono_mul(gm, q)
                    s = terms.get(t, 0) - f * gc
                    if s:
                        terms[t] = s
                        if t not in seen:
                            seen.add(t)
                            heapq.heappush(heap, (_neg_key(key(t)), t))
                    else:
                        terms.pop(t, None)
                break
        else:
            rem[m] = a
    return Poly._raw(rem, p.nvars)


class _neg_key:
    """Wrap a sort key so heapq pops the largest first."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return self.k > other.k

    def __eq__(self, other):
        return self.k == other.k


def s_polynomial(f: Poly, g: Poly, order=None) -> Poly:
    key = as_order(order).key
    (lf, cf), (lg, cg) = _lead(f, key), _lead(g, key)
    l = mono_lcm(lf, lg)
    return f.mul_term(mono_div(l, lf), 1 / cf) - g.mul_term(mono_div(l, lg), 1 / cg)


def buchberger(gens: Sequence[Poly], order=None) -> list[Poly]:
    """A (non-reduced) Groebner basis.

    Pairs are processed smallest lcm first; the coprime-leading-term and
    chain criteria discard pairs that would reduce to zero.
    """
    order = as_order(order)
    key = order.key
    basis = [g.monic(order) for g in gens if not g.is_zero()]
    if not basis:
        return []
    leads = [g.leading_monomial(order) for g in basis]
    pairs = set(itertools.combinations(range(len(basis)), 2))

    def pair_key(ij):
        return (key(mono_lcm(leads[ij[0]], leads[ij[1]])), ij)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        li, lj = leads[i], leads[j]
        l = mono_lcm(li, lj)
        if mono_mul(li, lj) == l:
            continue
        if any(
            k != i and k != j
            and divides(leads[k], l)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        r = reduce_poly(s_polynomial(basis[i], basis[j], order), basis, order)
        if r.is_zero():
            continue
        r = r.monic(order)
        basis.append(r)
        leads.append(r.leading_monomial(order))
        k = len(basis) - 1
        pairs.update((a, k) for a in range(k))
    return basis


def reduce_basis(basis: Sequence[Poly], order=None) -> list[Poly]:
    """Reduced Groebner basis from any Groebner basis, sorted by leading monomial."""
    order = as_order(order)
    key = order.key
    polys = [g.monic(order) for g in basis if not g.is_zero()]
    leads = [g.leading_monomial(order) for g in polys]
    keep = []
    for i, (g, lm) in enumerate(zip(polys, leads)):
        redundant = any(
            j != i and divides(leads[j], lm) and (leads[j] != lm or j < i)
            for j in range(len(polys))
        )
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        lm = g.leading_monomial(order)
        tail = Poly._raw({m: a for m, a in g.terms.items() if m != lm}, g.nvars)
        tail = reduce_poly(tail, others, order)
        out.append(Poly.monomial(lm) + tail)
    out.sort(key=lambda g: key(g.leading_monomial(order)))
    return out


def standard_monomials(gb: Sequence[Poly], nvars: int, order=None) -> list[Monomial] | None:
    """Monomials outside the leading-term ideal, increasing; None if infinitely many."""
    order = as_order(order)
    leads = [g.leading_monomial(order) for g in gb]
    bounds = []
    for i in range(nvars):
        pure = [lm[i] for lm in leads if all(e == 0 for k, e in enumerate(lm) if k != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    out = []
    for m in itertools.product(*(range(b) for b in bounds)):
        if not any(divides(lm, m) for lm in leads):
            out.append(m)
    out.sort(key=order.key)
    return out


@dataclass
class IdealPresentation:
    generators: list
    order: MonomialOrder = GREVLEX
    reduced_gb: list | None = None
    std_monomials: list | None = None
    nvars: int = field(default=0)

    def __post_init__(self):
        self.order = as_order(self.order)
        if not self.nvars:
            src = self.generators or self.reduced_gb or []
            if not src:
                raise DimensionMismatch("cannot infer nvars of an empty ideal")
            self.nvars = src[0].nvars

    @property
    def colength(self) -> int | None:
        return colength(self)

    def same_ideal(self, other: IdealPresentation) -> bool:
        return self.order == other.order and self.reduced_gb == other.reduced_gb

    def __str__(self):
        gens = self.reduced_gb if self.reduced_gb is not None else self.generators
        return "<" + ", ".join(g.format(self.order) for g in gens) + ">"


def groebner(gens: Sequence[Poly], order=None) -> IdealPresentation:
    order = as_order(order)
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    nvars = gens[0].nvars
    if any(g.nvars != nvars for g in gens):
        raise DimensionMismatch("generators have different numbers of variables")
    gb = reduce_basis(buchberger(gens, order), order)
    if not gb:
        std = None
    else:
        std = standard_monomials(gb, nvars, order)
    return IdealPresentation(gens, order, gb, std, nvars)


def normal_form(p: Poly, ideal: IdealPresentation) -> Poly:
    if ideal.reduced_gb is None:
        raise MissingGroebnerBasis("ideal has no Groebner basis; call groebner() first")
    if p.nvars != ideal.nvars:
        raise DimensionMismatch("polynomial and ideal live in different rings")
    return reduce_poly(p, ideal.reduced_gb, ideal.order)


def colength(ideal: IdealPresentation) -> int | None:
    if ideal.reduced_gb is None:
        raise MissingGroebnerBasis("ideal has no Groebner basis; call groebner() first")
    if ideal.std_monomials is None:
        return None
    return len(ideal.std_monomials)


def is_groebner_basis(basis: Sequence[Poly], order=None) -> bool:
    """Buchberger's criterion: all S-polynomials reduce to zero."""
    order = as_order(order)
    for f, g in itertools.combinations(basis, 2):
        if not reduce_poly(s_polynomial(f, g, order), basis, order).is_zero():
            return False
    return True


def eval_poly_at_matrices(p: Poly, mats: Sequence[Matrix]) -> Matrix:
    """p(B_0, ..., B_{n-1}) for pairwise commuting square matrices."""
    if len(mats) != p.nvars:
        raise DimensionMismatch(f"{p.nvars} variables but {len(mats)} matrices")
    if not mats:
        raise DimensionMismatch("need at least one matrix")
    c = mats[0].nrows
    if any(m.shape != (c, c) for m in mats):
        raise DimensionMismatch("matrices must be square of equal size")
    powers: dict = {}

    def mpow(i, e):
        if (i, e) not in powers:
            powers[(i, e)] = mats[i].pow(e)
        return powers[(i, e)]

    total = Matrix.zeros(c, c)
    for m, a in p.terms.items():
        term = Matrix.identity(c)
        for i, e in enumerate(m):
            if e:
                term = term @ mpow(i, e)
        total = total + term.scale(a)
    return total
