"""Regularized zeta characters, the KZ associator and bridge relations.

Zeta polynomials are :class:`~hopfzeta.poly.Poly` objects in the symbols
``gamma`` (Euler's constant, weight 1) and ``zeta(n1,...,nr)`` keyed by
convergent Y-words (weight n1 + ... + nr).

Conventions used throughout:

* ``Z_shuffle = sum zeta_sh(w) w`` over X, with zeta_sh(x0) = zeta_sh(x1) = 0;
  ``Phi_KZ`` is the same series.
* ``Z_stuffle = sum zeta_st(w) w`` over Y, with zeta_st(y1) = 0.
* ``B(y1) = exp(gamma y1 - sum_{k>=2} zeta(k) (-y1)^k / k)``, written with
  partial Bell polynomials in t1 = gamma, t_l = (-1)^(l-1) (l-1)! zeta(l);
  this is 1/Gamma(1 + y1).  ``B' = exp(-gamma y1) B`` is gamma free.
* ``Psi_KZ = exp(gamma y1) Z_stuffle``; so <Psi_KZ|y1> = gamma.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Sequence

from .bell import bell_polynomial
from .lyndon import exp_factorize, lyndon_rewrite, symbol_word
from .poly import Poly, poly_sum
from .polylog import L_series, _abs_poly_bound, chen_series, zeta_value
from .series import CC, POLY, QQ, RR, NCSeries, ad_power, mp_context
from .shuffle import SHUFFLE, STUFFLE, is_group_like, is_primitive, pi_x, pi_y_word, project, shuffle
from .words import Alphabet, Word, X, Y, words_upto
from .zetacache import DEFAULT_CACHE

GAMMA = "gamma"
MAX_REG_WEIGHT = 8

_ZETA_RE = re.compile(r"^zeta\((\d+(?:,\d+)*)\)$")


# zeta polynomials ----------------------------------------------------------------

def zeta_symbol(w: Sequence[int]) -> Poly:
    """The symbol zeta(w) for a convergent Y-word."""
    w = Y.validate(w)
    if not w or w[0] < 2:
        raise ValueError(f"{Y.format(w)} is not convergent")
    return Poly.symbol("zeta(" + ",".join(map(str, w)) + ")")


def gamma_symbol() -> Poly:
    return Poly.symbol(GAMMA)


def symbol_word_of(name: str) -> Word | None:
    """Y-word behind ``zeta(...)``; None for gamma."""
    if name == GAMMA:
        return None
    m = _ZETA_RE.match(name)
    if not m:
        raise ValueError(f"not a zeta symbol: {name!r}")
    return tuple(int(t) for t in m.group(1).split(","))


def symbol_weight(name: str) -> int:
    w = symbol_word_of(name)
    return 1 if w is None else sum(w)


def weights(p: Poly) -> set[int]:
    return p.weights(symbol_weight)


def is_homogeneous(p: Poly) -> bool:
    return len(weights(p)) <= 1


def homogeneous_component(p: Poly, n: int) -> Poly:
    return Poly({m: c for m, c in p.terms.items() if sum(symbol_weight(s) * e for s, e in m) == n})


def gamma_degree(p: Poly) -> int:
    return p.degree_in(GAMMA)


def symbol_latex(name: str) -> str:
    w = symbol_word_of(name)
    if w is None:
        return r"\gamma"
    return r"\zeta(" + ",".join(map(str, w)) + ")"


@dataclass(frozen=True)
class ZetaEval:
    value: Any
    bound: float


def evaluate(p: Poly, tol: float = 1e-12, prec: int = 128, cache=DEFAULT_CACHE) -> ZetaEval:
    """Numeric value of a zeta polynomial with a propagated error bound.

    Each zeta symbol is evaluated to ``tol``; gamma comes from mpmath.
    """
    ctx = mp_context(prec)
    values, errors = {}, {}
    for s in p.symbols():
        w = symbol_word_of(s)
        if w is None:
            values[s] = +ctx.euler
            errors[s] = 2.0 ** (-prec + 2)
        else:
            a = zeta_value(w, tol=tol, prec=prec, cache=cache)
            values[s], errors[s] = a.value, a.bound
    val = p.evaluate(values, one=ctx.mpf(1))
    if isinstance(val, Fraction):
        val = ctx.mpf(val.numerator) / val.denominator
    return ZetaEval(val, _abs_poly_bound(p, values, errors) + 2.0 ** (-prec + 8) * (1 + float(abs(val))))


def to_numeric(s: NCSeries, tol: float = 1e-15, prec: int = 128, complex_: bool = False) -> NCSeries:
    """Evaluate every zeta-polynomial coefficient of a series."""
    dom = CC(prec) if complex_ else RR(prec)
    memo: dict[Poly, Any] = {}

    def f(c):
        c = Poly.coerce(c)
        if c not in memo:
            memo[c] = evaluate(c, tol, prec).value
        return memo[c]

    return NCSeries({w: f(c) for w, c in s.items()}, s.alphabet, s.degree, dom)


# regularized characters ---------------------------------------------------------------

_KINDS = {"shuffle": "shuffle_X", "shuffle_X": "shuffle_X", "stuffle": "stuffle_Y", "stuffle_Y": "stuffle_Y"}


def _reg_symbol_value(name: str, kind: str) -> Poly:
    if kind == "shuffle_X":
        l = symbol_word(name, X)
        if l in ((0,), (1,)):
            return Poly()
        return zeta_symbol(pi_y_word(l))
    l = symbol_word(name, Y)
    if l == (1,):
        return Poly()
    return zeta_symbol(l)


@lru_cache(maxsize=4096)
def _zeta_reg(w: Word, kind: str) -> Poly:
    if kind == "shuffle_X":
        poly = lyndon_rewrite(w, SHUFFLE, X, "natural")
    else:
        poly = lyndon_rewrite(w, STUFFLE, Y, "y1_largest")
    vals = {s: _reg_symbol_value(s, kind) for s in poly.symbols()}
    return Poly.coerce(poly.evaluate(vals, one=Poly.constant(1)))


def zeta_reg(w: Sequence[int], kind: str = "shuffle_X") -> Poly:
    """Regularized character value zeta_sh(w) (X-words) or zeta_st(w) (Y-words).

    The word is rewritten as a polynomial in Lyndon words (x0 < x1 for the
    shuffle; y1 largest for the stuffle, so every Lyndon word other than y1
    is convergent), then the divergent generators are set to 0.
    """
    try:
        kind = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}") from None
    alphabet = X if kind == "shuffle_X" else Y
    w = alphabet.validate(w)
    if alphabet.weight(w) > MAX_REG_WEIGHT:
        raise ValueError(f"weight above {MAX_REG_WEIGHT}")
    return _zeta_reg(w, kind)


# the series -------------------------------------------------------------------------------

def _check_D(D: int, cap: int = 5):
    if not 0 <= D <= cap:
        raise ValueError(f"truncation degree must be in 0..{cap}")


@lru_cache(maxsize=None)
def _z_shuffle(D: int) -> NCSeries:
    return NCSeries({w: zeta_reg(w, "shuffle_X") for w in words_upto(X, D)}, X, D, POLY)


@lru_cache(maxsize=None)
def _z_stuffle(D: int) -> NCSeries:
    return NCSeries({w: zeta_reg(w, "stuffle_Y") for w in words_upto(Y, D)}, Y, D, POLY)


def bell_t(l: int) -> Poly:
    """t_1 = gamma, t_l = (-1)^(l-1) (l-1)! zeta(l)."""
    if l == 1:
        return gamma_symbol()
    return zeta_symbol((l,)) * ((-1) ** (l - 1) * math.factorial(l - 1))


def b_series(D: int, prime: bool = False, alphabet: Alphabet = Y) -> NCSeries:
    """B(y1) = sum_n y1^n/n! sum_k b_{n,k}(t), or B' = exp(-gamma y1) B.

    ``alphabet=X`` gives the same series in x1.
    """
    letter = 1
    ts = [bell_t(l) for l in range(1, D + 1)]
    if prime:
        ts[0] = Poly()
    out = {(): Poly.constant(1)}
    for n in range(1, D + 1):
        coef = poly_sum(bell_polynomial(n, k, ts) for k in range(1, n + 1)) / math.factorial(n)
        out[(letter,) * n] = coef
    return NCSeries(out, alphabet, D, POLY)


def exp_gamma_y1(D: int, sign: int = 1) -> NCSeries:
    return NCSeries.word((1,), Y, D, gamma_symbol() * sign, POLY).exp()


def z_series(kind: str, D: int) -> NCSeries:
    """One of Z_shuffle, Z_stuffle, Phi_KZ, Psi_KZ, B, Bprime truncated at D."""
    _check_D(D)
    if kind in ("Z_shuffle", "Phi_KZ"):
        return _z_shuffle(D)
    if kind == "Z_stuffle":
        return _z_stuffle(D)
    if kind == "Psi_KZ":
        return exp_gamma_y1(D) * _z_stuffle(D)
    if kind == "B":
        return b_series(D)
    if kind == "Bprime":
        return b_series(D, prime=True)
    raise ValueError(f"unknown series {kind!r}")


# adjoint basis -----------------------------------------------------------------------------

def _circ(ls: Sequence[int], D: int) -> NCSeries:
    """x1 x0^l1 o (x1 x0^l2 o ( ... x1 x0^lk)), with x1 x0^l o P = x1 (x0^l sh P)."""
    tail = NCSeries.word((1,) + (0,) * ls[-1], X, D)
    for l in reversed(ls[:-1]):
        inner = NCSeries.zero(X, D)
        for w, c in tail.items():
            inner = inner + shuffle((0,) * l, w).with_degree(D) * c
        tail = NCSeries.word((1,), X, D) * inner
    return tail


def _compositions_upto(D: int) -> Iterable[tuple[int, ...]]:
    """Tuples (l1..lk), k >= 1, with sum (l_i + 1) <= D."""
    def rec(room):
        for l in range(room):
            yield (l,)
            for rest in rec(room - l - 1):
                yield (l,) + rest
    yield from rec(D)


def adjoint_expansion(D: int) -> NCSeries:
    """sum zeta_sh(x1x0^l1 o ... o x1x0^lk) prod (-1)^l_i ad_x0^l_i x1.

    The sign (-1)^(l1+...+lk) is what makes the expansion agree with Z_shuffle.
    """
    _check_D(D, 4)
    out = NCSeries.one(X, D, POLY)
    for ls in _compositions_upto(D):
        zeta = poly_sum(zeta_reg(w, "shuffle_X") * c for w, c in _circ(ls, D).items())
        if not zeta:
            continue
        prod = NCSeries.one(X, D)
        for l in ls:
            prod = prod * ad_power(l, D)
        sign = (-1) ** sum(ls)
        out = out + prod.to_domain(POLY).scale(zeta * sign)
    return out


# numeric series ------------------------------------------------------------------------------

def phi_numeric(D: int, prec: int = 128, tol: float = 1e-20, complex_: bool = False) -> NCSeries:
    return to_numeric(z_series("Phi_KZ", D), tol, prec, complex_)


def monodromy_series(which: str, D: int, prec: int = 128) -> NCSeries:
    """M0 = exp(2 pi i x0), M1 = Phi^-1 exp(-2 pi i x1) Phi (complex, numeric)."""
    _check_D(D, 4)
    ctx = mp_context(prec)
    dom = CC(prec)
    two_pi_i = ctx.mpc(0, 2 * ctx.pi)
    if which == "M0":
        return NCSeries.word((0,), X, D, two_pi_i, dom).exp()
    if which == "M1":
        phi = phi_numeric(D, prec, complex_=True)
        return phi.inverse() * NCSeries.word((1,), X, D, -two_pi_i, dom).exp() * phi
    raise ValueError(f"unknown monodromy {which!r}")


# group action ------------------------------------------------------------------------------------

class ActionError(ValueError):
    pass


@dataclass
class ActionResult:
    phi: NCSeries
    psi: NCSeries
    lemma_ok: bool

    def __iter__(self):
        return iter((self.phi, self.psi))


def act_by_exp(C: NCSeries, D: int | None = None, tol: float | None = None) -> ActionResult:
    """Phi = Phi_KZ e^C and Psi = B(y1) Pi_Y(Phi) for a Lie element C.

    Also checks the equivalence Psi = B Pi_Y Phi <=> e^(-gamma y1) Psi = B' Pi_Y Phi.
    Unpacks as ``(Phi, Psi)``.
    """
    D = C.degree if D is None else D
    _check_D(D)
    if C.alphabet is not X:
        raise ActionError("C must be a series over X")
    C = C.with_degree(D)
    rep = is_primitive(C, SHUFFLE, tol)
    if not rep.ok:
        raise ActionError(f"C is not a Lie element: failing pair {rep.failing_pair}")
    if C[(0,)] or C[(1,)]:
        raise ActionError("C must have zero coefficients on x0 and x1")
    Cp = C.to_domain(POLY)
    phi = z_series("Phi_KZ", D) * Cp.exp()
    pi = project(phi, "PiY")
    psi = b_series(D) * pi
    psi_prime = exp_gamma_y1(D, -1) * psi
    lemma_ok = psi_prime == b_series(D, prime=True) * pi
    if not lemma_ok:
        raise ActionError("B/B' equivalence failed")
    return ActionResult(phi, psi, lemma_ok)


def proposition_check(D: int, tol: float = 1e-8, prec: int = 128) -> dict:
    """Compare Pi_X Psi_KZ with B(x1) Phi_KZ numerically.

    Words in the image of Pi_X (ending in x1, or empty) are asserted; the
    residuals on words ending in x0 are only reported.
    """
    psi = to_numeric(z_series("Psi_KZ", D), 1e-20, prec)
    lhs = project(psi, "PiX")
    rhs = to_numeric(b_series(D, alphabet=X) * z_series("Phi_KZ", D), 1e-20, prec)
    image, other = 0.0, 0.0
    for w in words_upto(X, D):
        r = float(abs(lhs[w] - rhs[w]))
        if not w or w[-1] == 1:
            image = max(image, r)
        else:
            other = max(other, r)
    return {"image_residual": image, "off_image_residual": other, "ok": image <= tol}


# functional equation ----------------------------------------------------------------------------------

@dataclass
class FunctionalEquationReport:
    z: float
    D: int
    residuals: dict[str, float]
    passing: list[str]

    @property
    def selected(self) -> str | None:
        return min(self.passing, key=lambda v: self.residuals[v]) if self.passing else None


def functional_equation_check(z, D: int = 3, rho_variant: str | None = None, tol: float = 1e-6,
                              prec: int = 128) -> FunctionalEquationReport:
    """Max |<L(z)|w> - <rho[L(1-z)] Z_shuffle|w>| over words of weight <= D.

    rho: x0 -> -x1, x1 -> -x0, as a morphism or reversed ("mirror").
    With ``rho_variant=None`` both variants are measured.
    """
    _check_D(D, 3)
    ctx = mp_context(prec)
    z = ctx.mpf(z)
    left = L_series(z, D, prec)
    right_src = L_series(1 - z, D, prec)
    phi = phi_numeric(D, prec)
    variants = [rho_variant] if rho_variant else ["morphism", "mirror"]
    res = {}
    for v in variants:
        rhs = project(right_src, "Rho", v) * phi
        res[v] = left.max_abs_diff(rhs)
    return FunctionalEquationReport(float(z), D, res, [v for v in variants if res[v] <= tol])


# Chen regularization ----------------------------------------------------------------------------------

def regularization_drift(eps_values: Sequence[float] = (1e-2, 1e-3, 1e-4), D: int = 2,
                         prec: int = 96) -> list[float]:
    """Max coefficient distance between exp(x1 log e) S_{e ~> 1-e} exp(x0 log e)
    and Z_shuffle for each epsilon."""
    ctx = mp_context(prec)
    target = phi_numeric(D, prec)
    out = []
    for e in eps_values:
        e = ctx.mpf(e)
        tol = float(e) * 1e-4
        S = L_series(1 - e, D, prec, tol=tol) * L_series(e, D, prec, tol=tol).inverse()
        le = ctx.log(e)
        left = NCSeries.word((1,), X, D, le, RR(prec)).exp()
        right = NCSeries.word((0,), X, D, le, RR(prec)).exp()
        out.append(target.max_abs_diff(left * S * right))
    return out


# bridge relations ----------------------------------------------------------------------------------

@dataclass
class Relation:
    word: Word
    relation: Poly
    residual: float
    bound: float = 0.0

    def to_json(self) -> dict:
        return {"word": Y.format(self.word), "relation": str(self.relation), "residual": self.residual}


@dataclass
class BridgeReport:
    relations: list[Relation]
    lyndon_relations: list[tuple[Word, Poly]] = field(default_factory=list)
    coordinate_relations: list[tuple[Word, Poly]] = field(default_factory=list)


def normalize_relation(p: Poly) -> Poly:
    """Sign normalization: the leading monomial (highest degree, then name) is positive."""
    if not p:
        return p
    lead = max(p.terms, key=lambda m: (sum(e for _, e in m), m))
    return p if p.terms[lead] > 0 else -p


def bridge_series(D: int) -> NCSeries:
    """B'(y1) Pi_Y Z_shuffle, the gamma-free right-hand side."""
    return b_series(D, prime=True) * project(z_series("Z_shuffle", D), "PiY")


def bridge_relations(max_weight: int, tol: float = 1e-8, threshold: float = 1e-6,
                     prec: int = 128, lyndon: bool = True) -> BridgeReport:
    """Relations <Z_stuffle|w> - <B' Pi_Y Z_shuffle|w> = 0 for Y-words up to ``max_weight``.

    Every relation is asserted weight homogeneous and gamma free, then
    checked numerically (each zeta symbol to ``tol``); a residual above
    ``threshold`` raises ArithmeticError.  With ``lyndon=True`` each
    relation is also rewritten on zeta values of Lyndon words, and the two
    series are factorized over stuffle Lyndon words so that differences of
    their local coordinates are checked the same way.
    """
    _check_D(max_weight)
    left = z_series("Z_stuffle", max_weight)
    right = bridge_series(max_weight)
    seen: set[Poly] = set()
    rels: list[Relation] = []
    for w in words_upto(Y, max_weight):
        p = left[w] - right[w]
        _assert_clean(p, w)
        if not p:
            continue
        p = normalize_relation(p)
        if p in seen:
            continue
        seen.add(p)
        ev = evaluate(p, tol, prec)
        r = float(abs(ev.value))
        if r > threshold:
            raise ArithmeticError(f"relation from {Y.format(w)} fails numerically: {p} = {r:.3e}")
        rels.append(Relation(w, p, r, ev.bound))
    lyn: list[tuple[Word, Poly]] = []
    coords: list[tuple[Word, Poly]] = []
    if lyndon:
        lseen: set[Poly] = set()
        for rel in rels:
            q = normalize_relation(lyndon_form(rel.relation))
            _assert_clean(q, rel.word)
            if not q or q in lseen:
                continue
            lseen.add(q)
            r = float(abs(evaluate(q, tol, prec).value))
            if r > threshold:
                raise ArithmeticError(f"Lyndon form of {rel.relation} fails numerically: {q} = {r:.3e}")
            lyn.append((rel.word, q))
        cl = exp_factorize(left, STUFFLE, "increasing", "y1_largest", check=True)
        cr = exp_factorize(right, STUFFLE, "increasing", "y1_largest", check=False)
        for l in sorted(set(cl) | set(cr), key=lambda u: (Y.weight(u), u)):
            p = lyndon_form(Poly.coerce(cl.get(l, 0)) - Poly.coerce(cr.get(l, 0)))
            _assert_clean(p, l)
            if p:
                r = float(abs(evaluate(p, tol, prec).value))
                if r > threshold:
                    raise ArithmeticError(f"Lyndon coordinate {Y.format(l)} fails numerically: {p} = {r:.3e}")
                coords.append((l, normalize_relation(p)))
    return BridgeReport(rels, lyn, coords)


def lyndon_form(p: Poly) -> Poly:
    """Rewrite every zeta(w) through the stuffle Lyndon basis (y1 largest),
    leaving a polynomial in zeta values of Lyndon words."""
    vals = {}
    for s in p.symbols():
        w = symbol_word_of(s)
        vals[s] = gamma_symbol() if w is None else zeta_reg(w, "stuffle_Y")
    return p.substitute(vals)


def _assert_clean(p: Poly, w: Word):
    if gamma_degree(p):
        raise AssertionError(f"gamma did not cancel at {Y.format(w)}")
    if not is_homogeneous(p):
        raise AssertionError(f"relation at {Y.format(w)} is not weight homogeneous")
    if p and weights(p) != {Y.weight(w)}:
        raise AssertionError(f"relation at {Y.format(w)} has the wrong weight")
