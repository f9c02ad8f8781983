"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a tuple of (exponent-tuple, Fraction) terms stored in
canonical form: no zero coefficients, monomials pairwise distinct, sorted
descending under degrevlex.  Two polynomials are equal iff their canonical
term tuples are equal, regardless of which order an algorithm later uses to
traverse them.  All values here are immutable after construction and every
operation is a pure function, so everything is safe to share across threads.

The module also provides polynomial maps (tuples of components representing
a germ F: (C^m, 0) -> (C^n, 0)), composition, exact Jacobian determinants
(cofactor expansion for small matrices, fraction-free Bareiss elimination
above that), vanishing order at the origin and initial forms.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import PreconditionError
from .orders import (
    DEGREVLEX,
    Exponents,
    MonomialOrder,
    mono_div,
    mono_divides,
    mono_mul,
)

#: Distinguished value returned for the vanishing order of the zero polynomial
#: and for infinite staircases; callers must branch on it explicitly.
INFINITY = math.inf

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

Coefficient = Union[int, Fraction]


def _frac(value: Coefficient) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


_canon_key = DEGREVLEX.key


@dataclass(frozen=True)
class PolyRing:
    """A polynomial ring over the rationals with named variables."""

    variables: Tuple[str, ...]

    def __post_init__(self):
        if not isinstance(self.variables, tuple):
            object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise PreconditionError("a ring needs at least one variable")
        seen = set()
        for name in self.variables:
            if not _IDENT_RE.match(name or ""):
                raise PreconditionError(f"invalid variable name {name!r}")
            if name in seen:
                raise PreconditionError(f"duplicate variable name {name!r}")
            seen.add(name)

    @property
    def arity(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise PreconditionError(f"unknown variable {name!r}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, value: Coefficient) -> "Polynomial":
        c = _frac(value)
        if c == 0:
            return self.zero()
        return Polynomial(self, (((0,) * self.arity, c),))

    def var(self, which: Union[int, str]) -> "Polynomial":
        i = which if isinstance(which, int) else self.index(which)
        exps = tuple(1 if j == i else 0 for j in range(self.arity))
        return Polynomial(self, ((exps, Fraction(1)),))

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(i) for i in range(self.arity))

    def monomial(self, exps: Sequence[int], coeff: Coefficient = 1) -> "Polynomial":
        return self.polynomial({tuple(exps): _frac(coeff)})

    def polynomial(self, mapping: Dict[Exponents, Coefficient]) -> "Polynomial":
        """Canonicalize a monomial->coefficient mapping into a Polynomial."""
        terms = []
        for exps, coeff in mapping.items():
            c = _frac(coeff)
            if c == 0:
                continue
            exps = tuple(exps)
            if len(exps) != self.arity or any(e < 0 for e in exps):
                raise PreconditionError(f"bad exponent vector {exps} for {self}")
            terms.append((exps, c))
        terms.sort(key=lambda t: _canon_key(t[0]), reverse=True)
        return Polynomial(self, tuple(terms))

    def __str__(self) -> str:
        return "QQ[" + ",".join(self.variables) + "]"


class Polynomial:
    """Immutable canonical-form polynomial.  Use PolyRing builders or parse."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Tuple[Tuple[Exponents, Fraction], ...]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic predicates ---------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e, _ in self.terms)

    def constant_term(self) -> Fraction:
        for e, c in self.terms:
            if sum(e) == 0:
                return c
        return Fraction(0)

    def total_degree(self) -> int:
        """Max total degree of the terms; -1 for the zero polynomial."""
        return max((sum(e) for e, _ in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e, _ in self.terms}
        return len(degs) <= 1

    # -- arithmetic ---------------------------------------------------------

    def _check_ring(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise PreconditionError(
                f"ring mismatch: {self.ring} vs {other.ring}"
            )

    def __add__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        self._check_ring(other)
        acc = dict(self.terms)
        for e, c in other.terms:
            cur = acc.get(e)
            acc[e] = c if cur is None else cur + c
        return self.ring.polynomial(acc)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            if c == 0:
                return self.ring.zero()
            return Polynomial(self.ring, tuple((e, q * c) for e, q in self.terms))
        self._check_ring(other)
        acc: Dict[Exponents, Fraction] = {}
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                e = mono_mul(ea, eb)
                cur = acc.get(e)
                acc[e] = ca * cb if cur is None else cur + ca * cb
        return self.ring.polynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise PreconditionError("negative polynomial powers are not defined")
        result = self.ring.one()
        base = self
        k = n
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, point: Sequence[Coefficient]) -> Fraction:
        """Exact value of the polynomial at a rational point."""
        if len(point) != self.ring.arity:
            raise PreconditionError(
                f"point has {len(point)} coordinates, ring arity is {self.ring.arity}"
            )
        pt = [_frac(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms:
            v = c
            for i, ei in enumerate(e):
                if ei:
                    v *= pt[i] ** ei
            total += v
        return total

    def substitute(self, values: Sequence["Polynomial"]) -> "Polynomial":
        """Substitute a polynomial for each variable (basis of composition)."""
        if len(values) != self.ring.arity:
            raise PreconditionError(
                f"{len(values)} substitution values for arity {self.ring.arity}"
            )
        target = values[0].ring
        for v in values:
            if v.ring != target:
                raise PreconditionError("substitution values live in different rings")
        powers: List[Dict[int, Polynomial]] = [{0: target.one()} for _ in values]

        def power(i: int, n: int) -> Polynomial:
            cache = powers[i]
            if n not in cache:
                cache[n] = power(i, n - 1) * values[i]
            return cache[n]

        result = target.zero()
        for e, c in self.terms:
            part = target.constant(c)
            for i, ei in enumerate(e):
                if ei:
                    part = part * power(i, ei)
            result = result + part
        return result

    def partial(self, which: Union[int, str]) -> "Polynomial":
        """Partial derivative with respect to one ring variable."""
        i = which if isinstance(which, int) else self.ring.index(which)
        acc: Dict[Exponents, Fraction] = {}
        for e, c in self.terms:
            if e[i] == 0:
                continue
            de = list(e)
            de[i] -= 1
            acc[tuple(de)] = c * e[i]
        return self.ring.polynomial(acc)

    # -- germ-level views ----------------------------------------------------

    def order_at_origin(self) -> Union[int, float]:
        """Minimal total degree among terms; INFINITY for the zero polynomial."""
        if self.is_zero:
            return INFINITY
        return min(sum(e) for e, _ in self.terms)

    def initial_form(self) -> "Polynomial":
        """Homogeneous part of lowest total degree (the tangent-cone form)."""
        if self.is_zero:
            raise PreconditionError("the zero polynomial has no initial form")
        d = self.order_at_origin()
        return Polynomial(
            self.ring, tuple((e, c) for e, c in self.terms if sum(e) == d)
        )

    # -- order-dependent views ------------------------------------------------

    def sorted_terms(self, order: MonomialOrder) -> List[Tuple[Exponents, Fraction]]:
        """Terms sorted leading-first under the given order."""
        return sorted(self.terms, key=lambda t: order.key(t[0]), reverse=True)

    def leading_exponents(self, order: MonomialOrder) -> Exponents:
        if self.is_zero:
            raise PreconditionError("zero polynomial has no leading term")
        return max(self.terms, key=lambda t: order.key(t[0]))[0]

    def leading_coefficient(self, order: MonomialOrder) -> Fraction:
        if self.is_zero:
            raise PreconditionError("zero polynomial has no leading term")
        return max(self.terms, key=lambda t: order.key(t[0]))[1]

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "Polynomial":
        if self.is_zero:
            return self
        lc = self.leading_coefficient(order)
        return self * (1 / lc) if lc != 1 else self

    # -- rendering ------------------------------------------------------------

    def __str__(self) -> str:
        """Canonical text form; the normative serialization (parse round-trips)."""
        if self.is_zero:
            return "0"
        chunks: List[str] = []
        for idx, (e, c) in enumerate(self.terms):
            negative = c < 0
            mag = -c if negative else c
            factors = []
            if mag != 1 or sum(e) == 0:
                factors.append(str(mag))
            for name, exp in zip(self.ring.variables, e):
                if exp == 0:
                    continue
                factors.append(name if exp == 1 else f"{name}^{exp}")
            body = "*".join(factors)
            if idx == 0:
                chunks.append(f"-{body}" if negative else body)
            else:
                chunks.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"<{self}>"


def exact_divide(p: Polynomial, q: Polynomial) -> Polynomial:
    """Quotient p/q when q divides p exactly; raises otherwise.

    Used by fraction-free determinant elimination and squarefree parts, where
    divisibility is guaranteed by the algorithm.
    """
    if q.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    p._check_ring(q)
    if p.is_zero:
        return p
    q_lead_e, q_lead_c = max(q.terms, key=lambda t: _canon_key(t[0]))
    rem: Dict[Exponents, Fraction] = dict(p.terms)
    quot: Dict[Exponents, Fraction] = {}
    while rem:
        e = max(rem, key=_canon_key)
        c = rem[e]
        if not mono_divides(q_lead_e, e):
            raise PreconditionError(f"{q} does not divide {p} exactly")
        gamma = mono_div(e, q_lead_e)
        factor = c / q_lead_c
        quot[gamma] = quot.get(gamma, Fraction(0)) + factor
        for eq, cq in q.terms:
            key = mono_mul(gamma, eq)
            new = rem.get(key, Fraction(0)) - factor * cq
            if new == 0:
                rem.pop(key, None)
            else:
                rem[key] = new
    return p.ring.polynomial(quot)


# ---------------------------------------------------------------------------
# polynomial maps
# ---------------------------------------------------------------------------


def _default_codomain(n: int) -> PolyRing:
    return PolyRing(tuple(f"w{i + 1}" for i in range(n)))


@dataclass(frozen=True)
class PolyMap:
    """A polynomial map germ given by its components over one domain ring.

    ``codomain`` names the image-side coordinates (defaults to w1..wn); it is
    only consulted by image-side constructions, which rename internally if the
    two variable sets collide.
    """

    components: Tuple[Polynomial, ...]
    codomain: Optional[PolyRing] = None

    def __post_init__(self):
        if not isinstance(self.components, tuple):
            object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise PreconditionError("a map needs at least one component")
        ring = self.components[0].ring
        for c in self.components:
            if c.ring != ring:
                raise PreconditionError("map components live in different rings")
        if self.codomain is not None and self.codomain.arity != len(self.components):
            raise PreconditionError(
                f"codomain arity {self.codomain.arity} does not match "
                f"{len(self.components)} components"
            )

    @property
    def domain(self) -> PolyRing:
        return self.components[0].ring

    @property
    def codomain_arity(self) -> int:
        return len(self.components)

    @property
    def codomain_ring(self) -> PolyRing:
        return self.codomain if self.codomain is not None else _default_codomain(
            self.codomain_arity
        )

    @property
    def is_square(self) -> bool:
        return self.codomain_arity == self.domain.arity

    @property
    def is_germ(self) -> bool:
        """True iff every component vanishes at the origin."""
        return all(c.constant_term() == 0 for c in self.components)

    def require_germ(self) -> None:
        if not self.is_germ:
            raise PreconditionError("map is not a germ: some component F_i(0) != 0")

    def require_square(self) -> None:
        if not self.is_square:
            raise PreconditionError(
                f"map is not square: {self.domain.arity} -> {self.codomain_arity}"
            )

    def __call__(self, point: Sequence[Coefficient]) -> Tuple[Fraction, ...]:
        return tuple(c.evaluate(point) for c in self.components)

    def translate(self, point: Sequence[Coefficient]) -> "PolyMap":
        """The germ z -> F(point + z) - F(point) at the translated base point."""
        ring = self.domain
        shifted = [ring.var(i) + _frac(v) for i, v in enumerate(point)]
        comps = []
        for c in self.components:
            moved = c.substitute(shifted)
            comps.append(moved - c.evaluate(point))
        return PolyMap(tuple(comps), self.codomain)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def identity_map(ring: PolyRing) -> PolyMap:
    return PolyMap(ring.gens(), ring)


def compose_map(outer: PolyMap, inner: PolyMap) -> PolyMap:
    """The composite outer(inner(x)) as a polynomial map."""
    if outer.domain.arity != inner.codomain_arity:
        raise PreconditionError(
            f"cannot compose: inner has {inner.codomain_arity} components, "
            f"outer domain arity is {outer.domain.arity}"
        )
    comps = tuple(c.substitute(inner.components) for c in outer.components)
    return PolyMap(comps, outer.codomain)


def linear_map(ring: PolyRing, rows: Sequence[Sequence[int]],
               codomain: Optional[PolyRing] = None) -> PolyMap:
    """The linear map whose i-th component is sum_j rows[i][j] * x_j."""
    comps = []
    for row in rows:
        if len(row) != ring.arity:
            raise PreconditionError("matrix row length does not match arity")
        p = ring.zero()
        for j, a in enumerate(row):
            if a:
                p = p + ring.var(j) * a
        comps.append(p)
    return PolyMap(tuple(comps), codomain)


# ---------------------------------------------------------------------------
# Jacobians and exact determinants
# ---------------------------------------------------------------------------


def jacobian_matrix(F: PolyMap) -> List[List[Polynomial]]:
    """Row i is the gradient of component i, columns in ring variable order."""
    n = F.domain.arity
    return [[c.partial(j) for j in range(n)] for c in F.components]


def _det_cofactor(M: List[List[Polynomial]], ring: PolyRing) -> Polynomial:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    det = ring.zero()
    for j in range(n):
        if M[0][j].is_zero:
            continue
        minor = [[M[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = M[0][j] * _det_cofactor(minor, ring)
        det = det + term if j % 2 == 0 else det - term
    return det


def _det_bareiss(M: List[List[Polynomial]], ring: PolyRing) -> Polynomial:
    # Fraction-free elimination: every division below is exact.
    n = len(M)
    M = [list(row) for row in M]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if M[k][k].is_zero:
            for i in range(k + 1, n):
                if not M[i][k].is_zero:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return ring.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = exact_divide(num, prev)
            M[i][k] = ring.zero()
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


def determinant(M: List[List[Polynomial]], ring: PolyRing) -> Polynomial:
    if any(len(row) != len(M) for row in M):
        raise PreconditionError("determinant needs a square matrix")
    if len(M) <= 3:
        return _det_cofactor(M, ring)
    return _det_bareiss(M, ring)


def jacobian_determinant(F: PolyMap) -> Polynomial:
    """det of the matrix of partials; row i = gradient of component i."""
    F.require_square()
    return determinant(jacobian_matrix(F), F.domain)
