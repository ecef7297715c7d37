"""Shuffle and stuffle products, their dual coproducts, and letter morphisms."""

from __future__ import annotations

import enum
import functools
import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Mapping

from .series import QQ, NCSeries
from .words import EMPTY, Alphabet, AlphabetError, Word, X, Y


class ProductKind(enum.Enum):
    SHUFFLE = "shuffle"
    STUFFLE = "stuffle"


SHUFFLE = ProductKind.SHUFFLE
STUFFLE = ProductKind.STUFFLE

Tensor = dict[tuple[Word, Word], Fraction]


@functools.lru_cache(maxsize=200_000)
def _sh(u: Word, v: Word) -> Mapping[Word, int]:
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: Counter = Counter()
    a, b = u[0], v[0]
    for w, c in _sh(u[1:], v).items():
        out[(a,) + w] += c
    for w, c in _sh(u, v[1:]).items():
        out[(b,) + w] += c
    return dict(out)


@functools.lru_cache(maxsize=200_000)
def _st(u: Word, v: Word) -> Mapping[Word, int]:
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: Counter = Counter()
    a, b = u[0], v[0]
    for w, c in _st(u[1:], v).items():
        out[(a,) + w] += c
    for w, c in _st(u, v[1:]).items():
        out[(b,) + w] += c
    for w, c in _st(u[1:], v[1:]).items():
        out[(a + b,) + w] += c
    return dict(out)


def word_product(u: Word, v: Word, kind: ProductKind) -> Mapping[Word, int]:
    """Raw ``word -> multiplicity`` map of ``u * v``; callers must not mutate it."""
    return _sh(tuple(u), tuple(v)) if kind is SHUFFLE else _st(tuple(u), tuple(v))


def shuffle(u: Word, v: Word, alphabet: Alphabet = X) -> NCSeries:
    u, v = alphabet.validate(u), alphabet.validate(v)
    return NCSeries(_sh(u, v), alphabet, alphabet.weight(u) + alphabet.weight(v))


def stuffle(u: Word, v: Word) -> NCSeries:
    u, v = Y.validate(u), Y.validate(v)
    return NCSeries(_st(u, v), Y, sum(u) + sum(v))


def product(u: Word, v: Word, kind: ProductKind, alphabet: Alphabet | None = None) -> NCSeries:
    if kind is STUFFLE:
        if alphabet not in (None, Y):
            raise AlphabetError("the stuffle product needs the indexed alphabet Y")
        return stuffle(u, v)
    return shuffle(u, v, alphabet or X)


def series_product(a: NCSeries, b: NCSeries, kind: ProductKind) -> NCSeries:
    """Bilinear extension of shuffle/stuffle to truncated series."""
    a._check(b)
    if kind is STUFFLE and a.alphabet is not Y:
        raise AlphabetError("the stuffle product needs the indexed alphabet Y")
    degree = min(a.degree, b.degree)
    wt = a.alphabet.weight
    out: dict[Word, Any] = {}
    for u, cu in a.items():
        wu = wt(u)
        for v, cv in b.items():
            if wu + wt(v) > degree:
                continue
            cc = cu * cv
            for w, m in word_product(u, v, kind).items():
                t = cc * m
                out[w] = out[w] + t if w in out else t
    dom = a.domain if b.domain.embeds_into(a.domain) else b.domain
    return NCSeries(out, a.alphabet, degree, dom)


def shuffle_power(s: NCSeries, n: int, kind: ProductKind = SHUFFLE) -> NCSeries:
    out = NCSeries.one(s.alphabet, s.degree, s.domain)
    for _ in range(n):
        out = series_product(out, s, kind)
    return out


# coproducts -----------------------------------------------------------------

def unshuffle_coproduct(w: Word, kind: ProductKind = SHUFFLE, alphabet: Alphabet | None = None) -> Tensor:
    """Dual coproduct: coefficient of ``u (x) v`` is the coefficient of w in u*v."""
    if kind is STUFFLE:
        alphabet = Y
    alphabet = alphabet or X
    w = alphabet.validate(w)
    out: Counter = Counter()
    if kind is SHUFFLE:
        n = len(w)
        for mask in range(2 ** n):
            u = tuple(w[i] for i in range(n) if mask >> i & 1)
            v = tuple(w[i] for i in range(n) if not mask >> i & 1)
            out[(u, v)] += 1
    else:
        # each letter y_s goes left, right, or splits as y_i (x) y_(s-i)
        choices = []
        for s in w:
            opts = [((s,), ()), ((), (s,))]
            opts += [((i,), (s - i,)) for i in range(1, s)]
            choices.append(opts)
        for pick in itertools.product(*choices):
            u = tuple(a for left, _ in pick for a in left)
            v = tuple(a for _, right in pick for a in right)
            out[(u, v)] += 1
    return {k: Fraction(c) for k, c in out.items()}


def counit(w: Word) -> int:
    return 1 if not w else 0


# group-like / primitive predicates -----------------------------------------

@dataclass
class CharacterReport:
    ok: bool
    residual: Any = 0
    failing_pair: tuple[Word, Word] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _close(a, b, tol) -> tuple[bool, Any]:
    d = a - b
    if tol is None:
        return (not d), d
    r = abs(d)
    return r <= tol, r


def is_group_like(s: NCSeries, kind: ProductKind = SHUFFLE, tol: float | None = None) -> CharacterReport:
    """Character test <S|u><S|v> == <S|u*v> for all u, v up to the truncation weight.

    ``tol=None`` demands exact equality (rationals, polynomials); otherwise the
    absolute residual of every pair must be ``<= tol``.
    """
    from .words import words_upto

    alpha = s.alphabet
    one = s.constant_term
    ok, r = _close(one, 1, tol)
    if not ok:
        return CharacterReport(False, r, (EMPTY, EMPTY))
    words = [w for w in words_upto(alpha, s.degree) if w]
    wt = alpha.weight
    worst = 0
    for i, u in enumerate(words):
        for v in words[i:]:
            if wt(u) + wt(v) > s.degree:
                continue
            lhs = s[u] * s[v]
            rhs = sum((s[w] * m for w, m in word_product(u, v, kind).items()), s.domain.zero)
            ok, r = _close(lhs, rhs, tol)
            if not ok:
                return CharacterReport(False, r, (u, v))
            if tol is not None and r > worst:
                worst = r
    return CharacterReport(True, worst)


def is_primitive(s: NCSeries, kind: ProductKind = SHUFFLE, tol: float | None = None) -> CharacterReport:
    """Primitive (Lie-like) test: <S|1> = 0 and <S|u*v> = 0 for nonempty u, v."""
    from .words import words_upto

    alpha = s.alphabet
    ok, r = _close(s.constant_term, 0, tol)
    if not ok:
        return CharacterReport(False, r, (EMPTY, EMPTY))
    words = [w for w in words_upto(alpha, s.degree) if w]
    wt = alpha.weight
    for i, u in enumerate(words):
        for v in words[i:]:
            if wt(u) + wt(v) > s.degree:
                continue
            val = sum((s[w] * m for w, m in word_product(u, v, kind).items()), s.domain.zero)
            ok, r = _close(val, 0, tol)
            if not ok:
                return CharacterReport(False, r, (u, v))
    return CharacterReport(True, 0)


# letter morphisms -------------------------------------------------------------

def pi_x(w: Word) -> Word:
    """y_n -> x0^(n-1) x1, extended multiplicatively."""
    out: list[int] = []
    for n in Y.validate(w):
        out.extend([0] * (n - 1))
        out.append(1)
    return tuple(out)


def pi_y_word(w: Word) -> Word | None:
    """Preimage of an X-word under pi_x, or None for words ending in x0."""
    w = X.validate(w)
    if w and w[-1] != 1:
        return None
    out, run = [], 0
    for a in w:
        if a == 0:
            run += 1
        else:
            out.append(run + 1)
            run = 0
    return tuple(out)


def project(s: NCSeries | Word, mode: str, variant: str = "morphism"):
    """Apply PiX, PiY or rho to a word or a series.

    * ``"PiX"``: Y -> X, y_n -> x0^(n-1) x1 (weight preserving).
    * ``"PiY"``: X -> Y on X*x1 + {1}; words ending in x0 are annihilated.
    * ``"Rho"``: x0 -> -x1, x1 -> -x0; ``variant="mirror"`` also reverses words.
    """
    if isinstance(s, NCSeries):
        return _project_series(s, mode, variant)
    w = tuple(s)
    if mode == "PiX":
        return pi_x(w)
    if mode == "PiY":
        return pi_y_word(w)
    if mode == "Rho":
        sign, img = rho_word(w, variant)
        return NCSeries.word(img, X, coef=sign)
    raise ValueError(f"unknown projection {mode!r}")


def rho_word(w: Word, variant: str = "morphism") -> tuple[int, Word]:
    w = X.validate(w)
    img = tuple(1 - a for a in w)
    if variant == "mirror":
        img = img[::-1]
    elif variant != "morphism":
        raise ValueError(f"unknown rho variant {variant!r}")
    return (-1) ** len(w), img


def _project_series(s: NCSeries, mode: str, variant: str) -> NCSeries:
    if mode == "PiX":
        if s.alphabet is not Y:
            raise AlphabetError("PiX takes a series over Y")
        return NCSeries._raw({pi_x(w): c for w, c in s.items()}, X, s.degree, s.domain)
    if s.alphabet is not X:
        raise AlphabetError(f"{mode} takes a series over X")
    if mode == "PiY":
        out = {}
        for w, c in s.items():
            v = pi_y_word(w)
            if v is not None:
                out[v] = c
        return NCSeries._raw(out, Y, s.degree, s.domain)
    if mode == "Rho":
        out = {}
        for w, c in s.items():
            sign, img = rho_word(w, variant)
            out[img] = c if sign > 0 else -c
        return NCSeries._raw(out, X, s.degree, s.domain)
    raise ValueError(f"unknown projection {mode!r}")


def tensor_apply(t: Tensor, f: Callable[[Word], Any], g: Callable[[Word], Any]):
    """Evaluate sum c * f(u) * g(v) over a tensor."""
    return sum(c * f(u) * g(v) for (u, v), c in t.items())
