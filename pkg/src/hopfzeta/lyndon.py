"""Lyndon words, Chen-Fox-Lyndon factorization, PBW/dual bases, and
exponential-product factorization of group-like series.

All functions take an optional letter ``order`` (a name from
:data:`hopfzeta.words.ORDERS` or a key function).  Lyndon words are defined
with respect to that order: ``w`` is Lyndon when it is strictly smaller
than each of its proper suffixes.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Any, Iterator, Sequence

from .poly import Poly
from .series import QQ, NCSeries, bracket
from .shuffle import SHUFFLE, STUFFLE, ProductKind, is_group_like, series_product, word_product
from .words import Alphabet, AlphabetError, Word, X, Y, keyed, order_key


class GroupLikeError(ValueError):
    """The input series is not a character for the requested product."""

    def __init__(self, msg, pair=None, residual=None):
        super().__init__(msg)
        self.pair = pair
        self.residual = residual


def is_lyndon(w: Sequence[int], order=None) -> bool:
    if not w:
        return False
    k = keyed(w, order_key(order))
    return all(k < k[i:] for i in range(1, len(k)))


def _duval_x(n: int, key) -> Iterator[Word]:
    """All Lyndon words of length <= n over {0, 1} (FKM generation)."""
    letters = sorted((0, 1), key=key)
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(letters[i] for i in w)
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == 1:
            w.pop()


def lyndon_words(alphabet: Alphabet, max_weight: int, order=None, by_weight: bool = False) -> list[Word]:
    """Lyndon words of weight <= max_weight, in lexicographic order for ``order``.

    With ``by_weight=True`` the list is sorted by weight first (the CLI order).
    """
    key = order_key(order)
    if max_weight < 1:
        return []
    if alphabet is X:
        out = list(_duval_x(max_weight, key))
    else:
        from .words import words_of_weight

        out = [w for n in range(1, max_weight + 1) for w in words_of_weight(Y, n) if is_lyndon(w, key)]
    if by_weight:
        out.sort(key=lambda w: (alphabet.weight(w), keyed(w, key)))
    else:
        out.sort(key=lambda w: keyed(w, key))
    return out


def cfl_factorize(w: Sequence[int], order=None) -> list[Word]:
    """Duval's algorithm: the non-increasing Lyndon factorization of ``w``."""
    key = order_key(order)
    w = tuple(w)
    k = keyed(w, key)
    n, i = len(w), 0
    out: list[Word] = []
    while i < n:
        j, m = i + 1, i
        while j < n and k[m] <= k[j]:
            m = i if k[m] < k[j] else m + 1
            j += 1
        while i <= m:
            out.append(w[i:i + j - m])
            i += j - m
    return out


def standard_factorization(l: Word, order=None) -> tuple[Word, Word]:
    """(u, v) with l = uv and v the longest proper Lyndon suffix."""
    if len(l) < 2:
        raise ValueError("letters have no standard factorization")
    for i in range(1, len(l)):
        if is_lyndon(l[i:], order):
            return l[:i], l[i:]
    raise AssertionError("unreachable for a Lyndon word")  # pragma: no cover


# PBW basis and its dual ------------------------------------------------------

def _alphabet_of(w: Word, alphabet: Alphabet | None) -> Alphabet:
    if alphabet is not None:
        return alphabet
    return X if all(a in (0, 1) for a in w) else Y


def pbw_lyndon(l: Word, alphabet: Alphabet = X, order=None) -> NCSeries:
    """Lyndon bracketing P_l (homogeneous, exact)."""
    D = alphabet.weight(l)
    if len(l) == 1:
        return NCSeries.word(l, alphabet, D)
    u, v = standard_factorization(l, order)
    return bracket(pbw_lyndon(u, alphabet, order).with_degree(D), pbw_lyndon(v, alphabet, order).with_degree(D))


def pbw(w: Word, alphabet: Alphabet | None = None, order=None) -> NCSeries:
    """P_w: product of the Lyndon bracketings of the CFL factors."""
    alphabet = _alphabet_of(w, alphabet)
    D = alphabet.weight(w)
    out = NCSeries.one(alphabet, D)
    for l in cfl_factorize(w, order):
        out = out * pbw_lyndon(l, alphabet, order).with_degree(D)
    return out


def dual_pbw(w: Word, alphabet: Alphabet | None = None, order=None) -> NCSeries:
    """S_w, the shuffle dual of the PBW basis.

    For Lyndon l = a.u, S_l = a.S_u; for w = l1^i1 ... lk^ik,
    S_w = S_l1^{sh i1} sh ... sh S_lk^{sh ik} / (i1! ... ik!).
    """
    alphabet = _alphabet_of(w, alphabet)
    return _dual(tuple(w), alphabet, order)


def _dual(w: Word, alphabet: Alphabet, order) -> NCSeries:
    D = alphabet.weight(w)
    if not w:
        return NCSeries.one(alphabet, 0)
    factors = cfl_factorize(w, order)
    if len(factors) == 1:
        head = NCSeries.word(w[:1], alphabet, D)
        return head * _dual(w[1:], alphabet, order).with_degree(D)
    out = NCSeries.one(alphabet, D)
    denom = 1
    run = 1
    for i, l in enumerate(factors):
        out = series_product(out, _dual(l, alphabet, order).with_degree(D), SHUFFLE)
        if i and factors[i - 1] == l:
            run += 1
            denom *= run
        else:
            run = 1
    return out * Fraction(1, denom)


def dual_bases(w: Word, alphabet: Alphabet | None = None, order=None) -> tuple[NCSeries, NCSeries]:
    return pbw(w, alphabet, order), dual_pbw(w, alphabet, order)


def pairing(a: NCSeries, b: NCSeries):
    """Standard pairing sum_w <a|w><b|w>."""
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    return sum((c * big[w] for w, c in small.items()), 0)


# stuffle primitives ------------------------------------------------------------

def stuffle_letter_primitive(s: int, degree: int | None = None) -> NCSeries:
    """pi_1(y_s) = sum_k (-1)^(k-1)/k sum_{s1+..+sk=s} y_s1 ... y_sk."""
    from .words import words_of_weight

    D = s if degree is None else degree
    out = {}
    for w in words_of_weight(Y, s):
        k = len(w)
        out[w] = Fraction((-1) ** (k - 1), k)
    return NCSeries(out, Y, D)


def stuffle_lyndon(l: Word, order="y1_largest") -> NCSeries:
    """Lie element Pi_l: Lyndon bracketing with letters replaced by pi_1(y_s).

    Primitive for the stuffle coproduct, with leading term l.
    """
    D = Y.weight(l)
    if len(l) == 1:
        return stuffle_letter_primitive(l[0], D)
    u, v = standard_factorization(l, order)
    return bracket(stuffle_lyndon(u, order).with_degree(D), stuffle_lyndon(v, order).with_degree(D))


def lie_basis(l: Word, kind: ProductKind, alphabet: Alphabet, order=None) -> NCSeries:
    if kind is STUFFLE:
        return stuffle_lyndon(l, order or "natural")
    return pbw_lyndon(l, alphabet, order)


# exponential factorization -----------------------------------------------------

def exp_product(coeffs: dict[Word, Any], kind: ProductKind, alphabet: Alphabet, degree: int,
                direction: str = "decreasing", order=None, domain=QQ) -> NCSeries:
    """Ordered product of exp(c_l * Lie_l) over the given Lyndon words.

    "decreasing" puts the largest Lyndon word leftmost.
    """
    key = order_key(order)
    words = sorted(coeffs, key=lambda w: keyed(w, key), reverse=(direction == "decreasing"))
    if direction not in ("decreasing", "increasing"):
        raise ValueError(f"unknown direction {direction!r}")
    out = NCSeries.one(alphabet, degree, domain)
    for l in words:
        c = coeffs[l]
        if not c or alphabet.weight(l) > degree:
            continue
        out = out * lie_basis(l, kind, alphabet, order).with_degree(degree).scale(c).exp()
    return out


def exp_factorize(series: NCSeries, kind: ProductKind = SHUFFLE, direction: str = "decreasing",
                  order=None, check: bool = True, tol=None) -> dict[Word, Any]:
    """Coefficients c_l with series = prod exp(c_l * Lie_l) up to its degree.

    Lie_l is the Lyndon bracketing P_l for the shuffle kind and the stuffle
    primitive Pi_l for the stuffle kind.  The solve is greedy: at each weight
    the degree-n discrepancy is read at the Lyndon words and the unit
    triangular system is solved by forward substitution.
    """
    alphabet, D = series.alphabet, series.degree
    if kind is STUFFLE and alphabet is not Y:
        raise AlphabetError("stuffle factorization needs the alphabet Y")
    if check:
        rep = is_group_like(series, kind, tol)
        if not rep.ok:
            raise GroupLikeError(
                f"series is not group-like: first failing pair {rep.failing_pair}",
                rep.failing_pair, rep.residual,
            )
    key = order_key(order)
    lyn = lyndon_words(alphabet, D, key)
    coeffs: dict[Word, Any] = {}
    wt = alphabet.weight
    for n in range(1, D + 1):
        layer = sorted((l for l in lyn if wt(l) == n), key=lambda w: (len(w), keyed(w, key)))
        if not layer:
            continue
        current = exp_product(coeffs, kind, alphabet, n, direction, key, series.domain)
        delta = {l: series[l] - current[l] for l in layer}
        basis = {l: lie_basis(l, kind, alphabet, key) for l in layer}
        for j, l in enumerate(layer):
            assert basis[l][l] == 1, "Lie basis must have unit leading coefficient"
            c = delta[l]
            for m in layer[:j]:
                c = c - coeffs[m] * basis[m][l]
            coeffs[l] = c
    return coeffs


# Lyndon-basis rewriting ----------------------------------------------------------

class _Rewriter:
    """Express words as polynomials (under shuffle or stuffle) in Lyndon words.

    Symbols are ``"l"`` plus the formatted Lyndon word, e.g. ``"l01"`` or
    ``"l[2,1]"``; :func:`symbol_word` inverts the naming.
    """

    def __init__(self, kind: ProductKind, alphabet: Alphabet, order):
        self.kind, self.alphabet, self.key = kind, alphabet, order_key(order)
        self.memo: dict[Word, Poly] = {}
        self.lock = threading.RLock()

    def symbol(self, l: Word) -> Poly:
        return Poly.symbol("l" + self.alphabet.format(l))

    def __call__(self, w: Word) -> Poly:
        with self.lock:
            return self._rewrite(tuple(w), set())

    def _rewrite(self, w: Word, stack: set) -> Poly:
        if w in self.memo:
            return self.memo[w]
        if not w:
            return Poly.constant(1)
        if w in stack:
            raise RuntimeError(f"rewriting cycle at {w}")
        stack.add(w)
        factors = cfl_factorize(w, self.key)
        if len(factors) == 1:
            res = self.symbol(w)
        else:
            prod = {(): 1}
            for l in factors:
                nxt: dict[Word, int] = {}
                for u, c in prod.items():
                    for v, m in word_product(u, l, self.kind).items():
                        nxt[v] = nxt.get(v, 0) + c * m
                prod = nxt
            alpha = 1
            run = 1
            for i in range(1, len(factors)):
                run = run + 1 if factors[i] == factors[i - 1] else 1
                alpha *= run
            assert prod.get(w) == alpha, f"leading coefficient of {w} is not {alpha}"
            res = Poly.constant(1)
            for l in factors:
                res = res * self.symbol(l)
            for u, c in prod.items():
                if u != w and c:
                    res = res - self._rewrite(u, stack) * c
            res = res / alpha
        stack.discard(w)
        self.memo[w] = res
        return res


def symbol_word(name: str, alphabet: Alphabet) -> Word:
    """Lyndon word behind a rewrite symbol."""
    if not name.startswith("l"):
        raise ValueError(f"not a Lyndon symbol: {name!r}")
    return alphabet.parse(name[1:])


_REWRITERS: dict[tuple, _Rewriter] = {}
_REWRITERS_LOCK = threading.Lock()


def lyndon_rewrite(w: Word, kind: ProductKind = SHUFFLE, alphabet: Alphabet | None = None, order=None) -> Poly:
    """``w`` as a polynomial in Lyndon-word symbols under the given product."""
    if kind is STUFFLE:
        alphabet = Y
    alphabet = alphabet or X
    w = alphabet.validate(w)
    if order is not None and not isinstance(order, str):
        return _Rewriter(kind, alphabet, order)(w)
    tag = (kind, alphabet, order or "natural")
    with _REWRITERS_LOCK:
        rw = _REWRITERS.get(tag)
        if rw is None:
            rw = _REWRITERS[tag] = _Rewriter(kind, alphabet, order)
    return rw(w)


def necklace_count(n: int, k: int = 2) -> int:
    """Number of Lyndon words of length n over k letters."""
    def mobius(m):
        res, p = 1, 2
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if m > 1 else res

    return sum(mobius(d) * k ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


__all__ = [
    "GroupLikeError", "is_lyndon", "lyndon_words", "cfl_factorize", "standard_factorization",
    "pbw_lyndon", "pbw", "dual_pbw", "dual_bases", "pairing", "stuffle_letter_primitive",
    "stuffle_lyndon", "lie_basis", "exp_product", "exp_factorize", "lyndon_rewrite", "symbol_word",
    "necklace_count",
]
