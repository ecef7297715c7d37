"""Graded, degree-truncated noncommutative series.

An :class:`NCSeries` is a sparse map ``word -> coefficient`` over one of the
two alphabets, holding only words of weight ``<= degree``.  Coefficients
live in a :class:`Domain`: exact rationals, fixed-precision mpmath reals or
complexes, or symbolic polynomials (:class:`~hopfzeta.poly.Poly`).
Rationals embed into every other domain and reals embed into complexes;
any other mix raises :class:`DomainError`.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from numbers import Rational
from typing import Any, Callable, Iterable, Iterator, Mapping

from mpmath.ctx_mp import MPContext

from .poly import Poly
from .words import EMPTY, Alphabet, AlphabetError, Word, X


class DomainError(TypeError):
    pass


@functools.lru_cache(maxsize=None)
def mp_context(prec: int) -> MPContext:
    """A private mpmath context at ``prec`` bits (never mutated afterwards)."""
    if prec < 53:
        raise ValueError("precision must be at least 53 bits")
    ctx = MPContext()
    ctx.prec = prec
    return ctx


@dataclass(frozen=True)
class Domain:
    kind: str  # "QQ", "RR", "CC", "POLY"
    prec: int = 0

    @property
    def ctx(self) -> MPContext:
        return mp_context(self.prec)

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def coerce(self, x):
        k = self.kind
        if k == "QQ":
            if isinstance(x, (int, Rational)):
                return Fraction(x)
            raise DomainError(f"{type(x).__name__} is not an exact rational")
        if k == "POLY":
            try:
                return Poly.coerce(x)
            except TypeError as exc:
                raise DomainError(str(exc)) from None
        if isinstance(x, Poly):
            raise DomainError("symbolic coefficient in a numeric domain")
        if isinstance(x, Fraction):
            x = self.ctx.mpf(x.numerator) / x.denominator
        if k == "RR":
            if isinstance(x, complex) or getattr(x, "imag", 0):
                raise DomainError("complex value in a real domain")
            return self.ctx.mpf(x)
        return self.ctx.mpc(x)

    def embeds_into(self, other: "Domain") -> bool:
        if self == other or self.kind == "QQ":
            return True
        return self.kind == "RR" and other.kind == "CC" and self.prec <= other.prec

    def __str__(self) -> str:
        return f"{self.kind}({self.prec})" if self.prec else self.kind


QQ = Domain("QQ")
POLY = Domain("POLY")


def RR(prec: int = 128) -> Domain:
    return Domain("RR", prec)


def CC(prec: int = 128) -> Domain:
    return Domain("CC", prec)


def scalar_domain(c) -> Domain:
    """Smallest domain containing the scalar ``c``."""
    if isinstance(c, (int, Rational)):
        return QQ
    if isinstance(c, Poly):
        return POLY
    prec = getattr(getattr(c, "context", None), "prec", 53)
    if isinstance(c, complex) or type(c).__name__ == "mpc":
        return CC(max(prec, 53))
    return RR(max(prec, 53))


def common_domain(a: Domain, b: Domain) -> Domain:
    if a.embeds_into(b):
        return b
    if b.embeds_into(a):
        return a
    if {a.kind, b.kind} <= {"RR", "CC"}:
        return Domain("CC" if "CC" in (a.kind, b.kind) else "RR", max(a.prec, b.prec))
    raise DomainError(f"no common domain for {a} and {b}")


class NCSeries:
    """Immutable truncated series over ``alphabet`` with coefficients in ``domain``."""

    __slots__ = ("alphabet", "domain", "degree", "_c")

    def __init__(
        self,
        coeffs: Mapping[Word, Any] | Iterable[tuple[Word, Any]] = (),
        alphabet: Alphabet = X,
        degree: int = 0,
        domain: Domain = QQ,
    ):
        if degree < 0:
            raise ValueError("truncation degree must be non-negative")
        self.alphabet = alphabet
        self.domain = domain
        self.degree = degree
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[Word, Any] = {}
        for w, v in items:
            w = tuple(w)
            if alphabet.weight(w) > degree:
                continue
            v = domain.coerce(v)
            if v:
                c[alphabet.validate(w)] = c[w] + v if w in c else v
        self._c = {w: v for w, v in c.items() if v}

    @classmethod
    def _raw(cls, c: dict, alphabet: Alphabet, degree: int, domain: Domain) -> "NCSeries":
        s = cls.__new__(cls)
        s.alphabet, s.domain, s.degree, s._c = alphabet, domain, degree, c
        return s

    # constructors -------------------------------------------------------
    @classmethod
    def one(cls, alphabet: Alphabet = X, degree: int = 0, domain: Domain = QQ) -> "NCSeries":
        return cls({EMPTY: 1}, alphabet, degree, domain)

    @classmethod
    def zero(cls, alphabet: Alphabet = X, degree: int = 0, domain: Domain = QQ) -> "NCSeries":
        return cls({}, alphabet, degree, domain)

    @classmethod
    def word(cls, w: Word, alphabet: Alphabet = X, degree: int | None = None,
             coef=1, domain: Domain = QQ) -> "NCSeries":
        if degree is None:
            degree = alphabet.weight(w)
        return cls({tuple(w): coef}, alphabet, degree, domain)

    # access ---------------------------------------------------------------
    def __getitem__(self, w: Word):
        return self._c.get(tuple(w), self.domain.zero)

    coeff = __getitem__

    def __contains__(self, w: Word) -> bool:
        return tuple(w) in self._c

    def __len__(self) -> int:
        return len(self._c)

    def items(self):
        return self._c.items()

    def words(self):
        return self._c.keys()

    def terms(self) -> list[tuple[Word, Any]]:
        """Terms sorted by weight, then lexicographically."""
        wt = self.alphabet.weight
        return sorted(self._c.items(), key=lambda t: (wt(t[0]), t[0]))

    def __iter__(self) -> Iterator[tuple[Word, Any]]:
        return iter(self.terms())

    @property
    def constant_term(self):
        return self[EMPTY]

    def is_zero(self) -> bool:
        return not self._c

    def to_dict(self) -> dict[Word, Any]:
        return dict(self._c)

    # structure ----------------------------------------------------------
    def _check(self, other: "NCSeries") -> Domain:
        if not isinstance(other, NCSeries):
            raise TypeError(f"expected NCSeries, got {type(other).__name__}")
        if other.alphabet is not self.alphabet:
            raise AlphabetError(
                f"alphabet mismatch: {self.alphabet.value} vs {other.alphabet.value}"
            )
        return common_domain(self.domain, other.domain)

    def to_domain(self, domain: Domain) -> "NCSeries":
        if domain == self.domain:
            return self
        if not self.domain.embeds_into(domain):
            raise DomainError(f"cannot embed {self.domain} into {domain}")
        return NCSeries._raw(
            {w: domain.coerce(v) for w, v in self._c.items()}, self.alphabet, self.degree, domain
        )

    def map(self, f: Callable[[Any], Any], domain: Domain | None = None) -> "NCSeries":
        """Apply ``f`` to every coefficient (e.g. numeric evaluation of symbols)."""
        domain = domain or self.domain
        return NCSeries(((w, f(v)) for w, v in self._c.items()), self.alphabet, self.degree, domain)

    def truncate(self, degree: int) -> "NCSeries":
        degree = min(degree, self.degree)
        wt = self.alphabet.weight
        return NCSeries._raw(
            {w: v for w, v in self._c.items() if wt(w) <= degree}, self.alphabet, degree, self.domain
        )

    def homogeneous_part(self, n: int) -> "NCSeries":
        wt = self.alphabet.weight
        return NCSeries._raw(
            {w: v for w, v in self._c.items() if wt(w) == n}, self.alphabet, self.degree, self.domain
        )

    def with_degree(self, degree: int) -> "NCSeries":
        """Reinterpret with a new truncation degree (dropping terms above it)."""
        wt = self.alphabet.weight
        return NCSeries._raw(
            {w: v for w, v in self._c.items() if wt(w) <= degree}, self.alphabet, degree, self.domain
        )

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, NCSeries):
            return self + NCSeries.one(self.alphabet, self.degree, self.domain) * other
        dom = self._check(other)
        degree = min(self.degree, other.degree)
        wt = self.alphabet.weight
        out: dict[Word, Any] = {}
        for src in (self, other):
            conv = src.domain != dom
            for w, v in src._c.items():
                if wt(w) > degree:
                    continue
                if conv:
                    v = dom.coerce(v)
                out[w] = out[w] + v if w in out else v
        return NCSeries._raw({w: v for w, v in out.items() if v}, self.alphabet, degree, dom)

    __radd__ = __add__

    def __neg__(self) -> "NCSeries":
        return NCSeries._raw({w: -v for w, v in self._c.items()}, self.alphabet, self.degree, self.domain)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NCSeries":
        dom = common_domain(self.domain, scalar_domain(c))
        if not isinstance(c, (int, Rational)):
            c = dom.coerce(c)
        src = self.to_domain(dom)
        out = {}
        for w, v in src._c.items():
            p = v * c
            if p:
                out[w] = p
        return NCSeries._raw(out, self.alphabet, self.degree, dom)

    def __mul__(self, other):
        if not isinstance(other, NCSeries):
            return self.scale(other)
        dom = self._check(other)
        degree = min(self.degree, other.degree)
        wt = self.alphabet.weight
        a = [(u, wt(u), v if self.domain == dom else dom.coerce(v)) for u, v in self._c.items()]
        b = [(u, wt(u), v if other.domain == dom else dom.coerce(v)) for u, v in other._c.items()]
        out: dict[Word, Any] = {}
        for u, wu, cu in a:
            if wu > degree:
                continue
            for v, wv, cv in b:
                if wu + wv > degree:
                    continue
                w = u + v
                p = cu * cv
                out[w] = out[w] + p if w in out else p
        return NCSeries._raw({w: c for w, c in out.items() if c}, self.alphabet, degree, dom)

    def __rmul__(self, c):
        return self.scale(c)

    def __truediv__(self, c):
        if isinstance(c, int):
            c = Fraction(1, c)
        else:
            c = 1 / c
        return self.scale(c)

    def __pow__(self, n: int) -> "NCSeries":
        out = NCSeries.one(self.alphabet, self.degree, self.domain)
        for _ in range(n):
            out = out * self
        return out

    def _powers(self) -> Iterator["NCSeries"]:
        """s, s^2, ... until every power is truncated to zero."""
        p = self
        k = 1
        while not p.is_zero() and k <= self.degree:
            yield p
            p = p * self
            k += 1

    def exp(self) -> "NCSeries":
        if self.constant_term:
            raise ValueError("exp needs a series with zero constant term")
        out = NCSeries.one(self.alphabet, self.degree, self.domain)
        for k, p in enumerate(self._powers(), start=1):
            out = out + p * Fraction(1, factorial(k))
        return out

    def log(self) -> "NCSeries":
        if self.constant_term != 1:
            raise ValueError("log needs a series with constant term 1")
        t = self - 1
        out = NCSeries.zero(self.alphabet, self.degree, self.domain)
        for k, p in enumerate(t._powers(), start=1):
            out = out + p * Fraction((-1) ** (k + 1), k)
        return out

    def inverse(self) -> "NCSeries":
        """Concatenation inverse; the constant term must be an invertible scalar."""
        c0 = self.constant_term
        if not c0:
            raise ValueError("series with zero constant term is not invertible")
        if isinstance(c0, Poly):
            if not c0.is_constant():
                raise ValueError("constant term must be a scalar")
            c0 = c0.constant_term()
        inv0 = Fraction(1) / c0 if isinstance(c0, (int, Rational)) else 1 / c0
        t = 1 - self * inv0
        out = NCSeries.one(self.alphabet, self.degree, self.domain)
        for p in t._powers():
            out = out + p
        return out * inv0

    # comparison -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, NCSeries):
            return NotImplemented
        if other.alphabet is not self.alphabet:
            return False
        degree = min(self.degree, other.degree)
        wt = self.alphabet.weight
        keys = {w for w in self._c if wt(w) <= degree} | {w for w in other._c if wt(w) <= degree}
        return all(self[w] == other[w] for w in keys)

    __hash__ = None  # type: ignore[assignment]

    def max_abs_diff(self, other: "NCSeries") -> float:
        """Largest coefficient discrepancy on the common truncation."""
        if other.alphabet is not self.alphabet:
            raise AlphabetError("alphabet mismatch")
        degree = min(self.degree, other.degree)
        wt = self.alphabet.weight
        keys = {w for w in self._c if wt(w) <= degree} | {w for w in other._c if wt(w) <= degree}
        return max((float(abs(self[w] - other[w])) for w in keys), default=0.0)

    def __repr__(self) -> str:
        if not self._c:
            body = "0"
        else:
            body = " + ".join(f"({v})*{self.alphabet.format(w)}" for w, v in self.terms())
        return f"NCSeries[{self.alphabet.value}, D={self.degree}, {self.domain}]({body})"


def letter(a: int, alphabet: Alphabet = X, degree: int = 1, domain: Domain = QQ) -> NCSeries:
    return NCSeries.word((a,), alphabet, degree, 1, domain)


def bracket(a: NCSeries, b: NCSeries) -> NCSeries:
    return a * b - b * a


def ad_power(n: int, degree: int | None = None) -> NCSeries:
    """ad_{x0}^n x1 by iterated bracketing with x0 (exact rational, degree n+1)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    D = n + 1 if degree is None else degree
    x0 = NCSeries.word((0,), X, D)
    out = NCSeries.word((1,), X, D)
    for _ in range(n):
        out = bracket(x0, out)
    return out
