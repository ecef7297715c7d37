"""The acceptance suite: thirteen desk-scale checks with time budgets.

Each ``criterion_N`` returns a :class:`CriterionResult`; a criterion passes
only if its check holds *and* it finished inside its time budget.
``run_all`` is what ``hopfzeta check`` and the test-suite call.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import associator as kz
from . import diagrams as dg
from .bell import bell_number
from .lyndon import GroupLikeError, dual_pbw, exp_factorize, exp_product, lyndon_words
from .polylog import L_series, chen_series, harmonic_sum, polylog, zeta_value
from .series import RR, mp_context
from .shuffle import SHUFFLE, STUFFLE, is_group_like, shuffle, stuffle, word_product
from .words import X, Y, words_upto

SEED = 20240917


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s / {self.budget:.0f}s)"


def _timed(number: int, name: str, budget: float):
    def deco(fn: Callable[[], tuple[bool, str]]):
        def run() -> CriterionResult:
            t0 = time.perf_counter()
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash is a failure, reported as such
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            dt = time.perf_counter() - t0
            if ok and dt > budget:
                ok, detail = False, detail + "; over time budget"
            return CriterionResult(number, name, ok, detail, dt, budget)
        run.number = number
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return deco


# 1 -------------------------------------------------------------------------------------

def _degree_patterns(max_rows: int, max_deg: int):
    out = [()]
    for p in range(1, max_rows + 1):
        out.extend(itertools.product(range(1, max_deg + 1), repeat=p))
    return out


@_timed(1, "deformed product associativity", 120)
def criterion_1():
    """Exhaustive on degree patterns of diagrams with <= 2 black and 2 white
    spots and entries <= 2 (which covers every labelled triple), literal
    checks on sampled triples, and 50 random larger triples."""
    pats = _degree_patterns(2, 4)
    bad = [(a, b, c) for a in pats for b in pats for c in pats
           if dg.pattern_associativity_defect(a, b, c) is not None]
    small = dg.labeled_diagrams(2, 2, 2, include_empty=True)
    rng = random.Random(SEED)
    literal = [tuple(rng.choice(small) for _ in range(3)) for _ in range(2000)]
    big = dg.labeled_diagrams(3, 3, 2)
    literal += [tuple(rng.choice(big) for _ in range(3)) for _ in range(50)]
    lit_bad = [t for t in literal if dg.associativity_defect(*t) is not None]
    ok = not bad and not lit_bad
    return ok, (f"{len(pats) ** 3} degree patterns ({len(small)}^3 labelled triples), "
                f"{len(literal)} literal triples; defects {len(bad)}/{len(lit_bad)}")


# 2 -------------------------------------------------------------------------------------

def small_diagrams(max_spots: int = 3, max_entry: int = 3) -> list:
    out = {dg.Diagram.empty()}
    for p in range(1, max_spots):
        for q in range(1, max_spots - p + 1):
            for d in dg.labeled_diagrams(p, q, max_entry):
                if d.rows == p and d.cols == q:
                    out.add(d.canonical())
    return sorted(out)


def _delta_tensor(t: dict) -> tuple[dict, dict]:
    """(Delta (x) id) and (id (x) Delta) applied to a tensor of diagrams."""
    left: dict = {}
    right: dict = {}
    for (a, b), c in t.items():
        for (a1, a2), c2 in dg.coproduct_bs(a).items():
            k = (a1, a2, b)
            left[k] = left.get(k, 0) + c * c2
        for (b1, b2), c2 in dg.coproduct_bs(b).items():
            k = (a, b1, b2)
            right[k] = right.get(k, 0) + c * c2
    return left, right


@_timed(2, "bialgebra axioms for the black-spot coproduct", 60)
def criterion_2():
    ds = small_diagrams(3, 3)
    fails = []
    for d in ds:
        delta = dg.coproduct_bs(d)
        l, r = _delta_tensor(delta)
        if l != r:
            fails.append(("coassoc", d))
        left_counit: dict = {}
        right_counit: dict = {}
        for (a, b), c in delta.items():
            if dg.counit(a):
                right_counit[b] = right_counit.get(b, 0) + c
            if dg.counit(b):
                left_counit[a] = left_counit.get(a, 0) + c
        if left_counit != {d: 1} or right_counit != {d: 1}:
            fails.append(("counit", d))
    for d1 in ds:
        for d2 in ds:
            if dg.coproduct_bs(dg.concat(d1, d2)) != dg.tensor_product(dg.coproduct_bs(d1), dg.coproduct_bs(d2)):
                fails.append(("mult", d1, d2))
    return not fails, f"{len(ds)} diagrams, {len(ds) ** 2} pairs; failures {len(fails)}"


# 3 -------------------------------------------------------------------------------------

@_timed(3, "diagram multiplicities sum to Bell(n)^2", 120)
def criterion_3():
    sums = []
    for n in range(1, 6):
        sums.append(sum(dg.multiplicity(d, "formula") for d in dg.diagrams_with_edges(n)))
    target = [bell_number(n) ** 2 for n in range(1, 6)]
    # direct enumeration of partition pairs for the smaller sizes
    enum_ok = all(dg.multiplicity(d, "enumerate") == dg.multiplicity(d, "formula")
                  for n in range(1, 5) for d in dg.diagrams_with_edges(n))
    return sums == target and enum_ok, f"sums {sums}, expected {target}, enumerate==formula: {enum_ok}"


# 4 -------------------------------------------------------------------------------------

@_timed(4, "Hadamard product: three computations agree", 60)
def criterion_4():
    rng = random.Random(SEED)
    bad = 0
    trials = 5
    for _ in range(trials):
        L = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(5)]
        V = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(5)]
        if not dg.hadamard_expansion_check(L, V, 5):
            bad += 1
    return bad == 0, f"{trials} random rational (L, V) at degree 5; mismatches {bad}"


# 5 -------------------------------------------------------------------------------------

@_timed(5, "diagram products map to shuffle/stuffle of words", 60)
def criterion_5():
    ds = dg.labeled_diagrams(2, 2, 2, include_empty=True)
    st = dg.DeformParams(1, 1)
    sh = dg.DeformParams(1, 0)
    bad = 0
    for d1 in ds:
        for d2 in ds:
            u, v = dg.word_image(d1), dg.word_image(d2)
            if dg.image_of_sum(dg.product(d1, d2, st)) != dict(word_product(u, v, STUFFLE)):
                bad += 1
            if dg.image_of_sum(dg.product(d1, d2, sh)) != dict(word_product(u, v, SHUFFLE)):
                bad += 1
    return bad == 0, f"{len(ds) ** 2} pairs at (qc,qs)=(1,1) and (1,0); mismatches {bad}"


# 6 -------------------------------------------------------------------------------------

@_timed(6, "harmonic sums are a stuffle character", 60)
def criterion_6():
    ws = [w for w in words_upto(Y, 4) if w]
    bad = 0
    checks = 0
    for N in range(0, 31):
        for i, u in enumerate(ws):
            for v in ws[i:]:
                lhs = harmonic_sum(u, N) * harmonic_sum(v, N)
                rhs = sum(m * harmonic_sum(w, N) for w, m in word_product(u, v, STUFFLE).items())
                checks += 1
                bad += lhs != rhs
    return bad == 0, f"{checks} exact identities (u, v of weight <= 4, N <= 30); failures {bad}"


# 7 -------------------------------------------------------------------------------------

@_timed(7, "polylogarithms at 1/2 are a shuffle character", 120)
def criterion_7():
    L = L_series(Fraction(1, 2), 8, prec=96, tol=1e-20)
    ws = [w for w in words_upto(X, 4) if w]
    worst = 0.0
    for i, u in enumerate(ws):
        for v in ws[i:]:
            rhs = sum(m * L[w] for w, m in word_product(u, v, SHUFFLE).items())
            worst = max(worst, float(abs(L[u] * L[v] - rhs)))
    return worst <= 1e-9, f"{len(ws) * (len(ws) + 1) // 2} pairs of weight <= 4; max residual {worst:.2e}"


# 8 -------------------------------------------------------------------------------------

def partial_sum_oracle(s: int, N: int = 1_000_000) -> float:
    """zeta(s) from float partial sums plus the midpoint of the integral tail bracket."""
    head = math.fsum(1.0 / k ** s for k in range(N, 0, -1))
    lo = 1.0 / ((s - 1) * (N + 1) ** (s - 1))
    hi = 1.0 / ((s - 1) * N ** (s - 1))
    return head + (lo + hi) / 2


@_timed(8, "numeric polyzetas", 60)
def criterion_8():
    z2 = zeta_value((2,), tol=1e-12, cache=None)
    z3 = zeta_value((3,), tol=1e-12, cache=None)
    o2, o3 = partial_sum_oracle(2), partial_sum_oracle(3)
    e2 = abs(float(z2.value) - 1.6449340668482264)
    e3 = abs(float(z3.value) - 1.2020569031595943)
    oe = max(abs(float(z2.value) - o2), abs(float(z3.value) - o3))
    z21 = zeta_value((2, 1), tol=1e-6, cache=None)
    z3b = zeta_value((3,), tol=1e-6, cache=None)
    r = abs(float(z21.value - z3b.value))
    ok = e2 <= 1e-8 and e3 <= 1e-8 and oe <= 1e-8 and r <= 2e-6
    return ok, f"|zeta(2)-ref| {e2:.1e}, |zeta(3)-ref| {e3:.1e}, vs oracle {oe:.1e}, zeta(2,1)-zeta(3) {r:.1e}"


# 9 -------------------------------------------------------------------------------------

@_timed(9, "bridge relations", 300)
def criterion_9():
    rep = kz.bridge_relations(4, tol=1e-8, threshold=1e-6)
    euler = kz.normalize_relation(kz.zeta_symbol((2, 1)) - kz.zeta_symbol((3,)))
    w3 = [r.relation for r in rep.relations if Y.weight(r.word) == 3]
    clean = all(kz.is_homogeneous(r.relation) and not kz.gamma_degree(r.relation) for r in rep.relations)
    worst = max((r.residual for r in rep.relations), default=0.0)
    ok = clean and euler in w3 and worst <= 1e-6
    return ok, (f"{len(rep.relations)} relations up to weight 4, max residual {worst:.1e}; "
                f"weight 3: {', '.join(map(str, w3))}")


# 10 ------------------------------------------------------------------------------------

@_timed(10, "Lyndon factorization of L(1/2)", 120)
def criterion_10():
    D = 4
    half = Fraction(1, 2)
    L = L_series(half, D, prec=128, tol=1e-25)
    coeffs = exp_factorize(L, SHUFFLE, "decreasing", check=True, tol=1e-15)
    rebuilt = exp_product(coeffs, SHUFFLE, X, D, "decreasing", domain=L.domain)
    recon = L.max_abs_diff(rebuilt)
    worst = 0.0
    for l in lyndon_words(X, D):
        # c_l = <L | S_l>, with Li values computed word by word
        expected = sum(c * polylog(w, half, 1e-20).value for w, c in dual_pbw(l, X).items())
        worst = max(worst, float(abs(coeffs[l] - expected)))
    ok = recon <= 1e-9 and worst <= 1e-9
    return ok, f"reconstruction {recon:.1e}, coefficient error {worst:.1e} over {len(coeffs)} Lyndon words"


# 11 ------------------------------------------------------------------------------------

@_timed(11, "functional equation L(z) = rho[L(1-z)] Z", 120)
def criterion_11():
    reports = [kz.functional_equation_check(z, 3) for z in (0.3, 0.5)]
    common = set(reports[0].passing) & set(reports[1].passing)
    desc = "; ".join(
        f"z={r.z}: " + ", ".join(f"{v} {x:.1e}" for v, x in sorted(r.residuals.items())) for r in reports
    )
    sel = sorted(common)[0] if common else None
    return sel is not None, f"selected variant: {sel}; {desc}"


# 12 ------------------------------------------------------------------------------------

@_timed(12, "Chen composition and regularization drift", 120)
def criterion_12():
    z0, z1, z2 = Fraction(1, 5), Fraction(2, 5), Fraction(3, 5)
    # the two factors come from the ODE, the composite from polylogarithms
    lhs = chen_series(z1, z2, 3, method="ode") * chen_series(z0, z1, 3, method="ode")
    rhs = chen_series(z0, z2, 3)
    res = lhs.max_abs_diff(rhs)
    drift = kz.regularization_drift((1e-2, 1e-3, 1e-4), 2)
    mono = all(a > b for a, b in zip(drift, drift[1:]))
    return res <= 1e-8 and mono, f"composition residual {res:.1e}; drift {', '.join(f'{d:.2e}' for d in drift)}"


# 13 ------------------------------------------------------------------------------------

@_timed(13, "adjoint-basis expansion equals Z_shuffle", 60)
def criterion_13():
    ok = all(kz.adjoint_expansion(D) == kz.z_series("Z_shuffle", D) for D in range(0, 4))
    return ok, "exact symbolic equality through degree 3" if ok else "mismatch"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9, criterion_10, criterion_11, criterion_12, criterion_13]


def run_all(only=None, echo: Callable[[str], None] | None = None) -> list[CriterionResult]:
    out = []
    for c in CRITERIA:
        if only and c.number not in only:
            continue
        r = c()
        if echo:
            echo(r.line())
        out.append(r)
    return out
