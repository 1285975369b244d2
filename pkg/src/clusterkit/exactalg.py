"""Exact multivariate Laurent-polynomial and rational-function arithmetic.

Values are immutable. A polynomial is a map from exponent tuples (one integer
per ambient variable, negative entries allowed) to nonzero arbitrary-precision
integer coefficients; the zero polynomial is the empty map. Rational functions
are kept fully reduced in a canonical form so that equal values always have
identical representations, which is what makes exact cycle detection possible
downstream.

Canonical form of a fraction:
  * numerator and denominator are ordinary polynomials (exponents >= 0),
  * their polynomial gcd is 1 and their joint integer content is 1,
  * the denominator's leading coefficient (graded-lex order) is positive.
"""

from __future__ import annotations

import math
import re
from functools import reduce
from typing import Iterable, Iterator, Mapping

from .errors import ContextMismatch, ParseError

Monomial = tuple[int, ...]


def grlex_key(exponents: Monomial) -> tuple[int, Monomial]:
    """Sort key realizing graded lexicographic order (total degree, then lex)."""
    return (sum(exponents), exponents)


class Context:
    """An ambient tuple of named variables.

    Every polynomial belongs to exactly one context; mixing contexts is a
    usage error, caught eagerly. Contexts compare by their name tuples.
    """

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names: {self.names}")
        self._index = {name: i for i, name in enumerate(self.names)}

    @classmethod
    def numbered(cls, prefix: str, n: int, start: int = 1) -> "Context":
        return cls(f"{prefix}{i}" for i in range(start, start + n))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def poly(self, terms: Mapping[Monomial, int]) -> "LaurentPoly":
        return LaurentPoly(self, terms)

    def const(self, c: int) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly(self, {})
        return LaurentPoly(self, {(0,) * self.nvars: int(c)})

    @property
    def zero(self) -> "LaurentPoly":
        return self.const(0)

    @property
    def one(self) -> "LaurentPoly":
        return self.const(1)

    def var(self, i: int) -> "LaurentPoly":
        """The i-th generator (0-based) as a polynomial."""
        expo = [0] * self.nvars
        expo[i] = 1
        return LaurentPoly(self, {tuple(expo): 1})

    def monomial(self, exponents: Iterable[int], coeff: int = 1) -> "LaurentPoly":
        expo = tuple(exponents)
        if len(expo) != self.nvars:
            raise ValueError("exponent vector length mismatch")
        if coeff == 0:
            return self.zero
        return LaurentPoly(self, {expo: coeff})

    def gens(self) -> tuple["LaurentPoly", ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def ratfn_gens(self) -> tuple["RationalFn", ...]:
        return tuple(RationalFn.from_laurent(g) for g in self.gens())

    def __eq__(self, other) -> bool:
        return isinstance(other, Context) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Context{self.names}"


def _check_same_context(a: "LaurentPoly", b: "LaurentPoly") -> None:
    if a.context != b.context:
        raise ContextMismatch(f"{a.context} vs {b.context}")


class LaurentPoly:
    """Immutable multivariate Laurent polynomial with integer coefficients."""

    __slots__ = ("context", "terms", "_hash")

    def __init__(self, context: Context, terms: Mapping[Monomial, int]):
        self.context = context
        self.terms = {e: int(c) for e, c in terms.items() if c != 0}
        self._hash: int | None = None

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.context.nvars: 1}

    def is_constant(self) -> bool:
        return not self.terms or self.terms.keys() == {(0,) * self.context.nvars}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> int:
        if self.is_zero():
            return 0
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def leading_monomial(self) -> Monomial:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grlex_key)

    def leading_coeff(self) -> int:
        return self.terms[self.leading_monomial()]

    def total_degree(self) -> int:
        if self.is_zero():
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        """Largest exponent of variable i (0 for the zero polynomial)."""
        if self.is_zero():
            return 0
        return max(e[i] for e in self.terms)

    def min_exponents(self) -> Monomial:
        """Entrywise minimum exponent vector over all terms."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        its = iter(self.terms)
        lo = list(next(its))
        for e in its:
            for i, v in enumerate(e):
                if v < lo[i]:
                    lo[i] = v
        return tuple(lo)

    def int_content(self) -> int:
        """gcd of all coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
            if g == 1:
                return 1
        return g

    def has_negative_exponent(self) -> bool:
        return any(v < 0 for e in self.terms for v in e)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            _check_same_context(self, other)
            return other
        if isinstance(other, int):
            return self.context.const(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(self.context, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.context, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.context.zero
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Monomial, int] = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return LaurentPoly(self.context, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial; use RationalFn")
        result = self.context.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def shift(self, exponents: Monomial) -> "LaurentPoly":
        """Multiply by the (Laurent) monomial with the given exponent vector."""
        return LaurentPoly(
            self.context,
            {tuple(x + y for x, y in zip(e, exponents)): c for e, c in self.terms.items()},
        )

    def scale(self, c: int) -> "LaurentPoly":
        if c == 0:
            return self.context.zero
        return LaurentPoly(self.context, {e: v * c for e, v in self.terms.items()})

    def divide_int(self, c: int) -> "LaurentPoly":
        """Exact division of all coefficients by c. Raises if not exact."""
        out = {}
        for e, v in self.terms.items():
            q, r = divmod(v, c)
            if r:
                raise ValueError(f"coefficient {v} not divisible by {c}")
            out[e] = q
        return LaurentPoly(self.context, out)

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        return (
            isinstance(other, LaurentPoly)
            and self.context == other.context
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.context.names, frozenset(self.terms.items())))
        return self._hash

    # -- rendering ----------------------------------------------------------

    def sorted_terms(self) -> Iterator[tuple[Monomial, int]]:
        """Terms in graded-lex descending order."""
        for e in sorted(self.terms, key=grlex_key, reverse=True):
            yield e, self.terms[e]

    def render(self) -> str:
        if self.is_zero():
            return "0"
        parts: list[str] = []
        for e, c in self.sorted_terms():
            factors = [
                f"{name}^{v}" if v != 1 else name
                for name, v in zip(self.context.names, e)
                if v != 0
            ]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"<LaurentPoly {self.render()}>"


# -- polynomial division and gcd ---------------------------------------------


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly | None:
    """Exact quotient a / b over the integers, or None when b does not divide a.

    Both arguments must have nonnegative exponents.
    """
    _check_same_context(a, b)
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return a.context.zero
    if b.is_monomial():
        be, bc = next(iter(b.terms.items()))
        out = {}
        for e, c in a.terms.items():
            q, r = divmod(c, bc)
            if r:
                return None
            ne = tuple(x - y for x, y in zip(e, be))
            if any(v < 0 for v in ne):
                return None
            out[ne] = q
        return LaurentPoly(a.context, out)
    rem = a
    lm_b = b.leading_monomial()
    lc_b = b.terms[lm_b]
    quot: dict[Monomial, int] = {}
    while not rem.is_zero():
        lm_r = rem.leading_monomial()
        qe = tuple(x - y for x, y in zip(lm_r, lm_b))
        if any(v < 0 for v in qe):
            return None
        qc, r = divmod(rem.terms[lm_r], lc_b)
        if r:
            return None
        quot[qe] = qc
        rem = rem - b.shift(qe).scale(qc)
    return LaurentPoly(a.context, quot)


def _coeffs_in(p: LaurentPoly, v: int) -> dict[int, LaurentPoly]:
    """Write p as a univariate polynomial in variable v with polynomial coefficients."""
    ctx = p.context
    buckets: dict[int, dict[Monomial, int]] = {}
    for e, c in p.terms.items():
        d = e[v]
        stripped = e[:v] + (0,) + e[v + 1 :]
        buckets.setdefault(d, {})[stripped] = c
    return {d: LaurentPoly(ctx, t) for d, t in buckets.items()}


def _sign_normalize(p: LaurentPoly) -> LaurentPoly:
    if p.is_zero():
        return p
    return -p if p.leading_coeff() < 0 else p


def _normalize_gcd(p: LaurentPoly) -> LaurentPoly:
    """Primitive (integer content 1), leading coefficient positive."""
    if p.is_zero():
        return p
    c = p.int_content()
    if p.leading_coeff() < 0:
        c = -c
    return p.divide_int(c) if c != 1 else p


def _prem(f: LaurentPoly, g: LaurentPoly, v: int) -> LaurentPoly:
    """Pseudo-remainder of f by g with respect to variable v (up to content)."""
    dg = g.degree_in(v)
    lc_g = _coeffs_in(g, v)[dg]
    r = f
    while not r.is_zero():
        dr = r.degree_in(v)
        if dr < dg:
            break
        lc_r = _coeffs_in(r, v)[dr]
        shift = [0] * f.context.nvars
        shift[v] = dr - dg
        r = r * lc_g - g.shift(tuple(shift)) * lc_r
    return r


def _content_primitive(p: LaurentPoly, v: int) -> tuple[LaurentPoly, LaurentPoly]:
    coeffs = _coeffs_in(p, v)
    content = reduce(poly_gcd, coeffs.values())
    prim = exact_div(p, content)
    assert prim is not None
    return content, prim


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor, primitive and sign-normalized.

    Primitive pseudo-remainder sequence recursing on the variable of highest
    degree. Inputs must have nonnegative exponents; strip Laurent monomial
    content first. gcd(a, 0) is the normalized a.
    """
    _check_same_context(a, b)
    if a.is_zero():
        return _normalize_gcd(b)
    if b.is_zero():
        return _normalize_gcd(a)
    if a.is_constant() or b.is_constant():
        return a.context.one
    # Fast path: one argument exactly divides the other.
    if len(a.terms) >= len(b.terms) and exact_div(a, b) is not None:
        return _normalize_gcd(b)
    if len(b.terms) > len(a.terms) and exact_div(b, a) is not None:
        return _normalize_gcd(a)
    v = max(
        range(a.context.nvars),
        key=lambda i: max(a.degree_in(i), b.degree_in(i)),
    )
    ca, pa = _content_primitive(a, v)
    cb, pb = _content_primitive(b, v)
    c = poly_gcd(ca, cb)
    if pa.degree_in(v) < pb.degree_in(v):
        pa, pb = pb, pa
    while not pb.is_zero():
        r = _prem(pa, pb, v)
        pa, pb = pb, _normalize_gcd(_content_primitive(r, v)[1]) if not r.is_zero() else r
    return _normalize_gcd(c * pa)


# -- rational functions -------------------------------------------------------


class RationalFn:
    """Immutable reduced quotient of two polynomials over the integers."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: LaurentPoly, den: LaurentPoly, _reduced: bool = False):
        if not _reduced:
            num, den = _reduce_fraction(num, den)
        self.num = num
        self.den = den
        self._hash: int | None = None

    @property
    def context(self) -> Context:
        return self.num.context

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RationalFn":
        """Embed a Laurent polynomial as a fraction (denominator a monomial)."""
        return cls(p, p.context.one)

    @classmethod
    def from_int(cls, context: Context, c: int) -> "RationalFn":
        return cls(context.const(c), context.one, _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def _coerce(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            if other.context != self.context:
                raise ContextMismatch(f"{self.context} vs {other.context}")
            return other
        if isinstance(other, LaurentPoly):
            return RationalFn.from_laurent(other)
        if isinstance(other, int):
            return RationalFn.from_int(self.context, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "RationalFn":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        return RationalFn(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self.num, self.den, _reduced=True)

    def __sub__(self, other) -> "RationalFn":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalFn":
        return (-self) + other

    def __mul__(self, other) -> "RationalFn":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # Cross-reduce first so the products below are already coprime.
        a, d = _reduce_fraction(self.num, other.den)
        c, b = _reduce_fraction(other.num, self.den)
        num, den = a * c, b * d
        if den.leading_coeff() < 0:
            num, den = -num, -den
        return RationalFn(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        num, den = self.den, self.num
        if den.leading_coeff() < 0:
            num, den = -num, -den
        return RationalFn(num, den, _reduced=True)

    def __truediv__(self, other) -> "RationalFn":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RationalFn":
        return self._coerce(other) / self

    def __pow__(self, k: int) -> "RationalFn":
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFn(self.num**k, self.den**k)

    def inverse_plus_one(self) -> "RationalFn":
        """Compute 1/self + 1 (a frequent step of coefficient dynamics)."""
        num, den = self.num + self.den, self.num
        if den.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if den.leading_coeff() < 0:
            num, den = -num, -den
        # num and den differ by self.den, which is coprime to self.num.
        return RationalFn(num, den, _reduced=True)

    def as_laurent(self) -> LaurentPoly | None:
        """The Laurent polynomial form, or None when the value is not Laurent.

        A reduced fraction is a Laurent polynomial exactly when its denominator
        is a single monomial with coefficient 1.
        """
        if self.is_zero():
            return self.context.zero
        if not self.den.is_monomial():
            return None
        e, c = next(iter(self.den.terms.items()))
        if c != 1:
            return None
        return self.num.shift(tuple(-v for v in e))

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.den.is_one() and self.num == other
        return (
            isinstance(other, RationalFn)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def render(self) -> str:
        if self.den.is_one():
            return self.num.render()
        ns = self.num.render()
        ds = self.den.render()
        if len(self.num.terms) > 1:
            ns = f"({ns})"
        if len(self.den.terms) > 1 or "*" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self) -> str:
        return f"<RationalFn {self.render()}>"


def _split_monomial_content(p: LaurentPoly) -> tuple[Monomial, LaurentPoly]:
    """Factor p = u^lo * q with q having entrywise-minimum exponent 0."""
    lo = p.min_exponents()
    if all(v == 0 for v in lo):
        return lo, p
    return lo, p.shift(tuple(-v for v in lo))


def _reduce_fraction(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Canonical reduced (num, den) pair; accepts arbitrary Laurent inputs."""
    _check_same_context(num, den)
    ctx = num.context
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return ctx.zero, ctx.one
    nlo, np_ = _split_monomial_content(num)
    dlo, dp = _split_monomial_content(den)
    net = tuple(a - b for a, b in zip(nlo, dlo))
    if not dp.is_constant() and not np_.is_constant():
        # Try exact division both ways before the general gcd; the quotient
        # is the common case along mutation paths (Laurent phenomenon).
        q = exact_div(np_, dp)
        if q is not None:
            np_, dp = q, ctx.one
        else:
            q = exact_div(dp, np_)
            if q is not None:
                np_, dp = ctx.one, q
            else:
                g = poly_gcd(np_, dp)
                if not g.is_one():
                    np_ = exact_div(np_, g)  # type: ignore[assignment]
                    dp = exact_div(dp, g)  # type: ignore[assignment]
                    assert np_ is not None and dp is not None
    ic = math.gcd(np_.int_content(), dp.int_content())
    if dp.leading_coeff() < 0:
        ic = -ic
    if ic != 1:
        np_ = np_.divide_int(ic)
        dp = dp.divide_int(ic)
    num_out = np_.shift(tuple(max(v, 0) for v in net))
    den_out = dp.shift(tuple(max(-v, 0) for v in net))
    return num_out, den_out


# -- semifields ----------------------------------------------------------------


class TropicalElement:
    """A monomial in the generators of a tropical semifield."""

    __slots__ = ("exponents",)

    def __init__(self, exponents: Iterable[int]):
        self.exponents = tuple(int(v) for v in exponents)

    def __eq__(self, other) -> bool:
        return isinstance(other, TropicalElement) and self.exponents == other.exponents

    def __hash__(self) -> int:
        return hash(self.exponents)

    def __repr__(self) -> str:
        return f"TropicalElement{self.exponents}"


class Semifield:
    """Abstract multiplicative group with an auxiliary addition."""

    def one(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def div(self, a, b):
        raise NotImplementedError

    def pow(self, a, k: int):
        raise NotImplementedError

    def add(self, a, b):
        """Auxiliary addition a (+) b."""
        raise NotImplementedError

    def to_field(self, a, context: Context) -> RationalFn:
        """Embed a semifield element into the ambient field of fractions."""
        raise NotImplementedError


class TropicalSemifield(Semifield):
    """Trop(u_1..u_m): monomials with entrywise-min auxiliary addition.

    ``positions`` locates each generator inside an ambient context so that
    elements can be embedded into the field when evaluating exchange relations.
    """

    def __init__(self, ngens: int, positions: tuple[int, ...] | None = None):
        self.ngens = ngens
        self.positions = positions

    def one(self) -> TropicalElement:
        return TropicalElement((0,) * self.ngens)

    def element(self, exponents: Iterable[int]) -> TropicalElement:
        e = TropicalElement(exponents)
        if len(e.exponents) != self.ngens:
            raise ValueError("generator count mismatch")
        return e

    def _check(self, a: TropicalElement) -> None:
        if len(a.exponents) != self.ngens:
            raise ContextMismatch("tropical element from a different semifield")

    def mul(self, a: TropicalElement, b: TropicalElement) -> TropicalElement:
        self._check(a), self._check(b)
        return TropicalElement(x + y for x, y in zip(a.exponents, b.exponents))

    def div(self, a: TropicalElement, b: TropicalElement) -> TropicalElement:
        self._check(a), self._check(b)
        return TropicalElement(x - y for x, y in zip(a.exponents, b.exponents))

    def pow(self, a: TropicalElement, k: int) -> TropicalElement:
        self._check(a)
        return TropicalElement(x * k for x in a.exponents)

    def add(self, a: TropicalElement, b: TropicalElement) -> TropicalElement:
        self._check(a), self._check(b)
        return TropicalElement(min(x, y) for x, y in zip(a.exponents, b.exponents))

    def to_field(self, a: TropicalElement, context: Context) -> RationalFn:
        if self.positions is None:
            raise ValueError("semifield has no embedding positions")
        expo = [0] * context.nvars
        for pos, v in zip(self.positions, a.exponents):
            expo[pos] = v
        return RationalFn.from_laurent(context.monomial(expo))


class FieldSemifield(Semifield):
    """The ambient field viewed as a semifield with ordinary addition."""

    def __init__(self, context: Context):
        self.context = context

    def one(self) -> RationalFn:
        return RationalFn.from_int(self.context, 1)

    def mul(self, a: RationalFn, b: RationalFn) -> RationalFn:
        return a * b

    def div(self, a: RationalFn, b: RationalFn) -> RationalFn:
        return a / b

    def pow(self, a: RationalFn, k: int) -> RationalFn:
        return a**k

    def add(self, a: RationalFn, b: RationalFn) -> RationalFn:
        return a + b

    def to_field(self, a: RationalFn, context: Context) -> RationalFn:
        if a.context != context:
            raise ContextMismatch("element lives in a different context")
        return a


class TrivialSemifield(Semifield):
    """The one-element semifield {1} with 1 (+) 1 = 1."""

    def one(self) -> int:
        return 1

    def mul(self, a, b):
        return 1

    def div(self, a, b):
        return 1

    def pow(self, a, k: int):
        return 1

    def add(self, a, b):
        return 1

    def to_field(self, a, context: Context) -> RationalFn:
        return RationalFn.from_int(context, 1)


# -- text format ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\^|-?\d+|[+\-*/()])")


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected input at {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


def parse_poly(context: Context, text: str) -> LaurentPoly:
    """Parse the canonical polynomial syntax, e.g. ``2*x1^-1*x2 - 3``."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial")
    result = context.zero
    i = 0
    n = len(tokens)
    while i < n:
        sign = 1
        while i < n and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise ParseError("dangling sign")
        coeff = sign
        expo = [0] * context.nvars
        expect_factor = True
        while i < n:
            tok = tokens[i]
            if expect_factor:
                if re.fullmatch(r"-?\d+", tok):
                    coeff *= int(tok)
                    i += 1
                elif tok in context.names:
                    vi = context.index(tok)
                    i += 1
                    if i < n and tokens[i] == "^":
                        i += 1
                        if i >= n or not re.fullmatch(r"-?\d+", tokens[i]):
                            raise ParseError("expected integer exponent after ^")
                        expo[vi] += int(tokens[i])
                        i += 1
                    else:
                        expo[vi] += 1
                else:
                    raise ParseError(f"unexpected token {tok!r}")
                expect_factor = False
            elif tok == "*":
                i += 1
                expect_factor = True
            else:
                break
        result = result + context.monomial(expo, coeff)
    return result


def parse_ratfn(context: Context, text: str) -> RationalFn:
    """Parse ``poly`` or ``num/den`` with optional parentheses around either part."""
    depth = 0
    split = None
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            if split is not None:
                raise ParseError("more than one top-level '/'")
            split = i
    def strip_parens(s: str) -> str:
        s = s.strip()
        if s.startswith("(") and s.endswith(")"):
            depth = 0
            for j, ch in enumerate(s):
                if ch == "(":
                    depth += 1
                elif ch == ")":
                    depth -= 1
                    if depth == 0 and j != len(s) - 1:
                        return s
            return s[1:-1]
        return s
    if split is None:
        return RationalFn.from_laurent(parse_poly(context, strip_parens(text)))
    num = parse_poly(context, strip_parens(text[:split]))
    den = parse_poly(context, strip_parens(text[split + 1 :]))
    if den.is_zero():
        raise ParseError("zero denominator")
    return RationalFn(num, den)
