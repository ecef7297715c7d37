"""Multiple polylogarithms, harmonic sums, polyzetas and their generating series.

Conventions: for an X-word u = x0^(n1-1) x1 ... x0^(nr-1) x1,

    Li_u(z) = sum_{k1 > ... > kr > 0} z^k1 / (k1^n1 ... kr^nr),

the leftmost letter being the outermost integration.  Words ending in x0
are reached through the shuffle algebra: they are rewritten as polynomials
in Lyndon words, and the Lyndon word x0 is sent to log z.  This gives
Li_{x0^k}(z) = log(z)^k / k!, the normalisation forced by L(z) ~ exp(x0 log z).

Every numeric routine returns an :class:`Approx` carrying a rigorous error
bound (truncation tail plus a generous allowance for rounding).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

from .lyndon import lyndon_rewrite, symbol_word
from .series import CC, QQ, RR, NCSeries, mp_context
from .shuffle import SHUFFLE, pi_x, pi_y_word
from .words import Alphabet, AlphabetError, Word, X, Y, words_upto
from .zetacache import DEFAULT_CACHE, ZetaCache, ZetaCacheEntry

MAX_TERMS = 10_000_000
MAX_HARMONIC_N = 2_000_000


class NumericError(ArithmeticError):
    """Requested tolerance cannot be met within the iteration cap."""


class DivergentWordError(ValueError):
    pass


@dataclass(frozen=True)
class Approx:
    value: Any
    bound: float
    terms: int = 0

    def __float__(self) -> float:
        return float(self.value.real) if hasattr(self.value, "real") else float(self.value)

    def __complex__(self) -> complex:
        return complex(self.value)


def _ctx(prec):
    return mp_context(prec)


def _as_composition(w: Sequence[int], alphabet: Alphabet) -> Word | None:
    """Y-composition of w, or None when an X-word ends in x0."""
    if alphabet is Y:
        return Y.validate(w)
    return pi_y_word(w)


def _coerce_z(z, ctx):
    z = ctx.mpmathify(z)
    if isinstance(z, type(ctx.mpc(0))) and z.imag == 0:
        z = z.real
    return z


# nested sums -----------------------------------------------------------------------

def _nested_li(comp: Word, z, tol: float, ctx, max_terms: int = MAX_TERMS) -> Approx:
    """Li_comp(z) for |z| < 1 by the nested sum with a geometric tail bound.

    With b(k) = |z|^k (1 + ln k)^(r-1) / k^n1 bounding the k-th term and
    q = |z| (1 + 1/(K+1))^(r-1) bounding b(k+1)/b(k) for k > K, the tail
    after K terms is at most b(K+1) / (1 - q).
    """
    if not comp:
        return Approx(ctx.mpf(1), 0.0, 0)
    r = len(comp)
    n1 = comp[0]
    az = float(abs(z))
    if az >= 1:
        raise ValueError("nested sum needs |z| < 1")
    inner = [ctx.mpf(0)] * r  # inner[j] = H_{comp[j:]}(k-1) for j >= 1; inner[r] = 1
    inner.append(ctx.mpf(1))
    total = ctx.mpf(0) * z
    zk = ctx.mpf(1)
    K = 0
    abs_sum = 0.0
    while True:
        K += 1
        zk = zk * z
        # inner sums at k-1 are current; term uses inner[1]
        kk = ctx.mpf(K)
        term = zk * inner[1] / kk ** n1
        total += term
        abs_sum += float(abs(term))
        # advance inner sums to k: H_{c_j..}(k) = H_{c_j..}(k-1) + H_{c_{j+1}..}(k-1)/k^c_j
        for j in range(1, r):
            inner[j] = inner[j] + inner[j + 1] / kk ** comp[j]
        if K % 8 == 0 or K < 8:
            k1 = K + 1
            q = az * (1 + 1 / k1) ** (r - 1)
            if q < 1:
                b = math.exp(k1 * math.log(az) + (r - 1) * math.log1p(math.log(k1)) - n1 * math.log(k1)) if az > 0 else 0.0
                tail = b / (1 - q)
                rounding = (4 * r * K * abs_sum + 8) * 2.0 ** (-ctx.prec)
                if tail + rounding <= tol:
                    return Approx(total, tail + rounding, K)
        if K >= max_terms:
            raise NumericError(f"Li_{list(comp)} at |z|={az}: tolerance {tol} not reached in {max_terms} terms")


def _abs_poly_bound(poly, values: dict, errors: dict) -> float:
    """|P(v + e) - P(v)| <= |P|(|v| + e) - |P|(|v|) for a polynomial P.

    The difference of the two products is accumulated directly, so tiny
    errors are not swallowed by float rounding.
    """
    total = 0.0
    for mono, c in poly.terms.items():
        lo, diff = abs(float(c)), 0.0
        for s, e in mono:
            v = abs(complex(values[s]))
            for _ in range(e):
                diff = diff * (v + errors[s]) + lo * errors[s]
                lo *= v
        total += diff
    return total * (1 + 1e-12)


def polylog(w: Sequence[int], z, tol: float = 1e-20, alphabet: Alphabet = X, prec: int = 128,
            max_terms: int = MAX_TERMS) -> Approx:
    """Li_w(z) with an error bound <= tol.

    ``w`` may be an X-word (any word; words ending in x0 use the shuffle
    extension with log z) or a Y-word.  Requires |z| < 1, and z != 0 when
    log z is needed.
    """
    ctx = _ctx(prec)
    z = _coerce_z(z, ctx)
    w = alphabet.validate(w)
    comp = _as_composition(w, alphabet)
    if comp is not None:
        if abs(z) >= 1:
            raise ValueError("polylogarithm evaluation needs |z| < 1")
        return _nested_li(comp, z, tol, ctx, max_terms)
    # words ending in x0
    if z == 0:
        raise ValueError("log z is undefined at z = 0")
    if abs(z) >= 1:
        raise ValueError("polylogarithm evaluation needs |z| < 1")
    poly = lyndon_rewrite(w, SHUFFLE, X)
    syms = sorted(poly.symbols())
    sub_tol = tol * 1e-3
    for _ in range(6):
        values, errors, terms = {}, {}, 0
        for s in syms:
            l = symbol_word(s, X)
            if l == (0,):
                values[s] = ctx.log(z)
                errors[s] = 2.0 ** (-prec + 8) * (1 + abs(float(abs(values[s]))))
            else:
                a = _nested_li(pi_y_word(l), z, sub_tol, ctx, max_terms)
                values[s], errors[s] = a.value, a.bound
                terms = max(terms, a.terms)
        one = ctx.mpf(1)
        val = poly.evaluate(values, one=one)
        bound = _abs_poly_bound(poly, values, errors)
        bound += 2.0 ** (-prec + 8) * (1 + abs(float(abs(val))))
        if bound <= tol:
            return Approx(val, bound, terms)
        sub_tol *= max(tol / bound, 1e-6) / 2
    raise NumericError(f"Li_{w}: tolerance {tol} not reached")


# harmonic sums --------------------------------------------------------------------

@lru_cache(maxsize=100_000)
def _h_small(w: Word, N: int) -> Fraction:
    if not w:
        return Fraction(1)
    if N < len(w):
        return Fraction(0)
    return _h_small(w, N - 1) + _h_small(w[1:], N - 1) / Fraction(N) ** w[0]


def harmonic_sum(w: Sequence[int], N: int, alphabet: Alphabet = Y, domain=QQ):
    """H_w(N) = sum_{N >= k1 > ... > kr > 0} 1/(k1^n1 ... kr^nr).

    Exact (Fraction) in the default QQ domain; pass ``domain=RR(prec)`` for
    large N where exact denominators explode.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    comp = _as_composition(w, alphabet)
    if comp is None:
        raise AlphabetError("harmonic sums are indexed by words ending in x1")
    if domain == QQ and N <= 400:
        return _h_small(comp, N)
    one = domain.one
    r = len(comp)
    if r == 0:
        return one
    inner = [domain.zero] * (r + 1)
    inner[r] = one
    for k in range(1, N + 1):
        kk = Fraction(k) if domain == QQ else domain.ctx.mpf(k)
        # ascending j reads inner[j + 1] before it is advanced, i.e. at k - 1
        for j in range(r):
            inner[j] = inner[j] + inner[j + 1] / kk ** comp[j]
    return inner[0]


# polyzetas ----------------------------------------------------------------------------

def _tau(u: Word) -> Word:
    """Reverse and swap x0 <-> x1 (the path z -> 1 - z)."""
    return tuple(1 - a for a in reversed(u))


def _zeta_key(comp: Word) -> str:
    return ",".join(map(str, comp))


def zeta_value(w: Sequence[int], tol: float = 1e-10, alphabet: Alphabet = Y, prec: int = 128,
               method: str = "holder", cache: ZetaCache | None = DEFAULT_CACHE) -> Approx:
    """Convergent polyzeta zeta(n1, ..., nr) with n1 >= 2.

    ``holder`` (default) splits the path 0 -> 1 at 1/2:
    zeta(u) = sum_{u = ab} Li_{tau(a)}(1/2) Li_b(1/2), all terms converging
    like 2^-k.  ``harmonic`` uses the partial sum H_w(N) plus the integral
    tail bound int_N^oo x^-n1 (1 + ln x)^(r-1) dx, and raises
    :class:`NumericError` when N would exceed the cap.
    """
    comp = _as_composition(w, alphabet)
    if comp is None or not comp or comp[0] < 2:
        raise DivergentWordError(f"{alphabet.format(w)} is not a convergent word")
    key = _zeta_key(comp)
    if cache is not None:
        hit = cache.get(key, tol, prec)
        if hit is not None:
            v = hit.value if hit.precision_bits == prec else _ctx(prec).mpf(hit.value)
            return Approx(v, hit.error_bound, hit.N_used)
    if method == "holder":
        res = _zeta_holder(comp, tol, prec)
    elif method == "harmonic":
        res = _zeta_harmonic(comp, tol, prec)
    else:
        raise ValueError(f"unknown method {method!r}")
    if cache is not None:
        cache.put(ZetaCacheEntry(key, res.value, res.bound, res.terms, prec))
    return res


def _zeta_holder(comp: Word, tol: float, prec: int) -> Approx:
    ctx = _ctx(prec)
    u = pi_x(comp)
    n = len(u)
    half = ctx.mpf(1) / 2
    sub = tol / (8 * (n + 1))
    for _ in range(5):
        total = ctx.mpf(0)
        bound = 0.0
        N = 0
        for i in range(n + 1):
            a, b = u[:i], u[i:]
            A = _nested_li(pi_y_word(_tau(a)), half, sub, ctx)
            B = _nested_li(pi_y_word(b), half, sub, ctx)
            total += A.value * B.value
            va, vb = abs(float(A.value)), abs(float(B.value))
            bound += va * B.bound + vb * A.bound + A.bound * B.bound
            N = max(N, A.terms, B.terms)
        bound += 2.0 ** (-prec + 8) * (n + 1)
        if bound <= tol:
            return Approx(total, bound, N)
        sub *= tol / bound / 2
    raise NumericError(f"zeta({list(comp)}): tolerance {tol} not reached")


def harmonic_tail_bound(comp: Word, N: int, ctx=None) -> float:
    """Upper bound for zeta(comp) - H_comp(N), valid when n1 (1 + ln N) >= r - 1."""
    ctx = ctx or _ctx(64)
    s, m = comp[0], len(comp) - 1
    if s * (1 + math.log(N)) < m:
        raise ValueError("N too small for the monotone integral bound")
    u0 = 1 + ctx.log(N)
    val = ctx.e ** (s - 1) * ctx.gammainc(m + 1, (s - 1) * u0) / ctx.mpf(s - 1) ** (m + 1)
    return float(val) * (1 + 1e-12)


def _zeta_harmonic(comp: Word, tol: float, prec: int) -> Approx:
    ctx = _ctx(prec)
    N = 1024
    while True:
        if N * (comp[0]) >= 0 and comp[0] * (1 + math.log(N)) >= len(comp) - 1:
            tail = harmonic_tail_bound(comp, N, ctx)
            if tail <= tol / 2:
                break
        N *= 2
        if N > MAX_HARMONIC_N:
            raise NumericError(
                f"zeta({list(comp)}) by partial sums: tolerance {tol} needs N > {MAX_HARMONIC_N}"
            )
    # refine N by bisection to the smallest power-of-two step that works
    lo = N // 2
    while N - lo > max(1, N // 64):
        mid = (lo + N) // 2
        if comp[0] * (1 + math.log(mid)) >= len(comp) - 1 and harmonic_tail_bound(comp, mid, ctx) <= tol / 2:
            N = mid
        else:
            lo = mid
    tail = harmonic_tail_bound(comp, N, ctx)
    partial = harmonic_sum(comp, N, Y, RR(prec))
    # the tail is positive: report the midpoint of [H, H + tail]
    value = partial + ctx.mpf(tail) / 2
    bound = tail / 2 + N * len(comp) * 2.0 ** (-prec + 6)
    return Approx(value, bound, N)


# generating series ------------------------------------------------------------------------

def _num_domain(z, prec):
    ctx = _ctx(prec)
    z = _coerce_z(z, ctx)
    return (CC(prec) if isinstance(z, type(ctx.mpc(0))) else RR(prec)), z


def _series_tol(prec: int) -> float:
    return 2.0 ** (-(3 * prec) // 4)


def L_series(z, D: int, prec: int = 128, tol: float | None = None) -> NCSeries:
    """L(z) = sum Li_w(z) w over X-words of length <= D."""
    if D > 8:
        raise ValueError("D <= 8 for the polylogarithm generating series")
    dom, z = _num_domain(z, prec)
    tol = tol if tol is not None else _series_tol(prec)
    return NCSeries({w: polylog(w, z, tol, X, prec).value for w in words_upto(X, D)}, X, D, dom)


def H_series(N: int, D: int) -> NCSeries:
    """H(N) = sum H_w(N) w over Y-words of weight <= D (exact)."""
    return NCSeries({w: harmonic_sum(w, N) for w in words_upto(Y, D)}, Y, D, QQ)


def P_series(z, D: int, prec: int = 128, tol: float | None = None) -> NCSeries:
    """P(z) = sum Li_w(z)/(1 - z) w over Y-words of weight <= D."""
    dom, z = _num_domain(z, prec)
    tol = tol if tol is not None else _series_tol(prec)
    f = 1 / (1 - z)
    return NCSeries({w: polylog(w, z, tol, Y, prec).value * f for w in words_upto(Y, D)}, Y, D, dom)


def mono_series(z, D: int, prec: int = 128, form: str = "closed") -> NCSeries:
    """Mono(z) = exp(-(y1 + 1) log(1 - z)) = sum_k P_{y1^k}(z) y1^k.

    ``closed`` uses (-log(1-z))^k / (k! (1-z)); ``sums`` evaluates the
    nested sums P_{y1^k}(z).
    """
    dom, z = _num_domain(z, prec)
    ctx = _ctx(prec)
    out = {}
    for k in range(D + 1):
        w = (1,) * k
        if form == "closed":
            out[w] = (-ctx.log(1 - z)) ** k / ctx.factorial(k) / (1 - z)
        elif form == "sums":
            out[w] = polylog(w, z, _series_tol(prec), Y, prec).value / (1 - z)
        else:
            raise ValueError(f"unknown form {form!r}")
    return NCSeries(out, Y, D, dom)


def const_series(N: int, D: int, form: str = "harmonic") -> NCSeries:
    """Const(N) = sum_k H_{y1^k}(N) y1^k, or (``form="exp"``)
    exp(-sum_{k>=1} H_{y_k}(N) (-y1)^k / k), exact in rationals."""
    if form == "harmonic":
        return NCSeries({(1,) * k: harmonic_sum((1,) * k, N) for k in range(D + 1)}, Y, D, QQ)
    if form != "exp":
        raise ValueError(f"unknown form {form!r}")
    arg = NCSeries({(1,) * k: -harmonic_sum((k,), N) * Fraction((-1) ** k, k) for k in range(1, D + 1)}, Y, D, QQ)
    return arg.exp()


def generating_series(kind: str, param, D: int, prec: int = 128) -> NCSeries:
    kinds = {
        "L": lambda: L_series(param, D, prec),
        "H": lambda: H_series(int(param), D),
        "P": lambda: P_series(param, D, prec),
        "Mono": lambda: mono_series(param, D, prec),
        "Const": lambda: const_series(int(param), D),
    }
    try:
        return kinds[kind]()
    except KeyError:
        raise ValueError(f"unknown generating series {kind!r}") from None


def chen_series(z0, z1, D: int, prec: int = 128, method: str = "lyndon", steps: int = 4000) -> NCSeries:
    """Chen series S_{z0 ~> z1} of the forms x0: dz/z, x1: dz/(1-z), for 0 < z0, z1 < 1.

    ``lyndon`` uses S = L(z1) L(z0)^-1.  ``ode`` integrates
    dS/dz = (x0/z + x1/(1-z)) S from S(z0) = 1 with classical RK4 in
    floats; it is independent of the polylogarithm code and accurate to
    roughly 1e-13 at the default step count.
    """
    if D > 6:
        raise ValueError("D <= 6 for Chen series")
    for z in (z0, z1):
        if not 0 < float(z) < 1:
            raise ValueError("Chen series endpoints must lie in (0, 1)")
    if method == "lyndon":
        return L_series(z1, D, prec) * L_series(z0, D, prec).inverse()
    if method != "ode":
        raise ValueError(f"unknown method {method!r}")
    words = words_upto(X, D)
    index = {w: i for i, w in enumerate(words)}
    # coefficient of a.v is driven by omega_a(z) * S_v
    links = [(i, w[0], index[w[1:]]) for i, w in enumerate(words) if w]

    def deriv(z, y):
        om = (1.0 / z, 1.0 / (1.0 - z))
        out = [0.0] * len(y)
        for i, a, j in links:
            out[i] = om[a] * y[j]
        return out

    a, b = float(z0), float(z1)
    h = (b - a) / steps
    y = [0.0] * len(words)
    y[0] = 1.0
    z = a
    for _ in range(steps):
        k1 = deriv(z, y)
        k2 = deriv(z + h / 2, [u + h / 2 * k for u, k in zip(y, k1)])
        k3 = deriv(z + h / 2, [u + h / 2 * k for u, k in zip(y, k2)])
        k4 = deriv(z + h, [u + h * k for u, k in zip(y, k3)])
        y = [u + h / 6 * (p + 2 * q + 2 * r + s) for u, p, q, r, s in zip(y, k1, k2, k3, k4)]
        z += h
    return NCSeries(dict(zip(words, y)), X, D, RR(prec))
