"""Sparse multivariate polynomials over the rationals.

A :class:`Poly` maps monomials to :class:`fractions.Fraction` coefficients.
A monomial is a tuple of ``(symbol, exponent)`` pairs sorted by symbol name,
so two equal polynomials always have identical internal dictionaries and
equality is exact.

>>> qc, qs = Poly.symbol("qc"), Poly.symbol("qs")
>>> (qc + qs) ** 2
qc^2 + 2*qc*qs + qs^2
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Any, Callable, Iterable, Iterator, Mapping

Monomial = tuple[tuple[str, int], ...]

ONE_MONOMIAL: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for s, e in b:
        exps[s] = exps.get(s, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class Poly:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Any] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def symbol(cls, name: str) -> "Poly":
        return cls({((name, 1),): 1})

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls({ONE_MONOMIAL: c})

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> "Poly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @staticmethod
    def coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Rational)):
            return Poly.constant(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Poly")

    # inspection -------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {ONE_MONOMIAL}

    def constant_term(self) -> Fraction:
        return self._terms.get(ONE_MONOMIAL, Fraction(0))

    def symbols(self) -> set[str]:
        return {s for m in self._terms for s, _ in m}

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self._terms), default=0)

    def total_degree(self) -> int:
        return max((_mono_degree(m) for m in self._terms), default=0)

    def weights(self, weight_of: Callable[[str], int]) -> set[int]:
        """Set of weighted degrees of the monomials."""
        return {sum(weight_of(s) * e for s, e in m) for m in self._terms}

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda t: _sort_key(t[0])))

    # arithmetic -------------------------------------------------------
    def __add__(self, other) -> "Poly":
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Rational)):
            if not other:
                return Poly._raw({})
            return Poly._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Rational)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self._terms == Poly.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    # substitution -----------------------------------------------------
    def evaluate(self, values: Mapping[str, Any] | Callable[[str], Any], one=1):
        """Substitute every symbol; ``values`` may be a mapping or a callable.

        Values may live in any ring that accepts rational scalars
        (floats, mpmath numbers, other polynomials).
        """
        lookup = values if callable(values) else values.__getitem__
        cache: dict[str, Any] = {}
        total = None
        for m, c in self._terms.items():
            term = one
            for s, e in m:
                if s not in cache:
                    cache[s] = lookup(s)
                term = term * cache[s] ** e
            term = term * c if not isinstance(term, (int, Fraction)) else Fraction(term) * c
            total = term if total is None else total + term
        if total is None:
            return one * 0
        return total

    def substitute(self, values: Mapping[str, "Poly"]) -> "Poly":
        """Partial substitution; symbols absent from ``values`` are kept."""
        def look(s):
            return Poly.coerce(values[s]) if s in values else Poly.symbol(s)
        return Poly.coerce(self.evaluate(look, one=Poly.constant(1)))

    def map_coefficients(self, f: Callable[[Fraction], Any]) -> "Poly":
        return Poly({m: f(c) for m, c in self._terms.items()})

    # printing ---------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self:
            mono = "*".join(s if e == 1 else f"{s}^{e}" for s, e in m)
            if not mono:
                parts.append(("-" if c < 0 else "+", str(abs(c))))
            elif abs(c) == 1:
                parts.append(("-" if c < 0 else "+", mono))
            else:
                parts.append(("-" if c < 0 else "+", f"{abs(c)}*{mono}"))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    __repr__ = __str__

    def to_latex(self, symbol_latex: Callable[[str], str] = lambda s: s) -> str:
        if not self._terms:
            return "0"
        out = []
        for m, c in self:
            mono = " ".join(
                symbol_latex(s) if e == 1 else f"{symbol_latex(s)}^{{{e}}}" for s, e in m
            )
            mag = abs(c)
            if mag.denominator != 1:
                coef = rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"
            else:
                coef = str(mag.numerator)
            if mono and mag == 1:
                coef = ""
            body = f"{coef} {mono}".strip()
            out.append(("-" if c < 0 else "+", body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += f" {sign} {body}"
        return s


def _sort_key(m: Monomial):
    return (_mono_degree(m), m)


def poly_sum(items: Iterable[Poly]) -> Poly:
    out: dict[Monomial, Fraction] = {}
    for p in items:
        for m, c in p.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return Poly._raw(out)
