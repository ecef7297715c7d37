"""Bipartite diagrams: labelled and unlabelled, their products and coproduct.

A labelled diagram is a p x q matrix of non-negative integers with no zero
row or column.  Rows are the black spots, columns the white spots, and an
entry is the number of edges joining them.  An unlabelled :class:`Diagram`
is the class of a matrix under row and column permutations, represented by
its lexicographically least member.

The deformed product ``[d1|d2]`` sums over order-preserving placements of
the black spots of d2 among those of d1, where a d2 spot may also be
superposed on a d1 spot (rows add).  Columns of d2 follow those of d1.
A placement is weighted by

* ``qc`` to the sum of deg(b1)*deg(b2) over pairs with b2 (from d2) strictly
  to the left of b1 (from d1),
* ``qs`` to the sum of deg(b1)*deg(b2) over superposed pairs,

where deg is the row sum.  At (0, 0) only the block-diagonal concatenation
survives.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Any, Iterable, Iterator, Mapping

from .bell import SetPartition, set_partitions, EGFSeries, hadamard_exp
from .poly import Poly
from .words import Word

Matrix = tuple[tuple[int, ...], ...]

MAX_CANON_SPOTS = 8
MAX_MULT_EDGES = 7


# labelled diagrams -----------------------------------------------------------

@dataclass(frozen=True, order=True)
class LabeledDiagram:
    matrix: Matrix

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if m:
            q = len(m[0])
            if q == 0 or any(len(r) != q for r in m):
                raise ValueError("diagram matrix must be rectangular and non-empty")
            if any(x < 0 for r in m for x in r):
                raise ValueError("edge multiplicities must be non-negative")
            if any(not any(r) for r in m):
                raise ValueError("zero row (isolated black spot)")
            if any(not any(r[j] for r in m) for j in range(q)):
                raise ValueError("zero column (isolated white spot)")

    @classmethod
    def empty(cls) -> "LabeledDiagram":
        return cls(())

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def edges(self) -> int:
        return sum(map(sum, self.matrix))

    @property
    def row_degrees(self) -> tuple[int, ...]:
        """I(d): outgoing degree of each black spot, a composition of |d|."""
        return tuple(sum(r) for r in self.matrix)

    @property
    def col_degrees(self) -> tuple[int, ...]:
        return tuple(sum(r[j] for r in self.matrix) for j in range(self.cols))

    @property
    def alpha(self) -> tuple[int, ...]:
        """White spot type: entry i-1 counts white spots of degree i."""
        return _type_of(self.col_degrees, self.edges)

    @property
    def beta(self) -> tuple[int, ...]:
        """Black spot type."""
        return _type_of(self.row_degrees, self.edges)

    def canonical(self) -> "Diagram":
        return Diagram(canonical_matrix(self.matrix))

    def sub(self, rows: Iterable[int]) -> "LabeledDiagram":
        """d[I]: keep the given black spots and drop white spots left isolated."""
        kept = [self.matrix[i] for i in rows]
        if not kept:
            return LabeledDiagram.empty()
        cols = [j for j in range(self.cols) if any(r[j] for r in kept)]
        return LabeledDiagram(tuple(tuple(r[j] for j in cols) for r in kept))

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "matrix": [list(r) for r in self.matrix], "labeled": True}

    def __str__(self) -> str:
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.matrix) + "]"


def _type_of(degrees, n) -> tuple[int, ...]:
    t = [0] * n
    for d in degrees:
        t[d - 1] += 1
    return tuple(t)


def canonical_matrix(m: Matrix) -> Matrix:
    """Least matrix (row-major lex) over all row and column permutations."""
    if not m:
        return ()
    p, q = len(m), len(m[0])
    if p + q > 2 * MAX_CANON_SPOTS or q > MAX_CANON_SPOTS:
        raise ValueError("diagram too large to canonicalize")
    best = None
    for perm in itertools.permutations(range(q)):
        cand = tuple(sorted(tuple(r[j] for j in perm) for r in m))
        if best is None or cand < best:
            best = cand
    return best


@dataclass(frozen=True, order=True)
class Diagram:
    """Unlabelled diagram, stored as its canonical matrix."""

    matrix: Matrix

    def __post_init__(self):
        m = canonical_matrix(LabeledDiagram(self.matrix).matrix)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def empty(cls) -> "Diagram":
        return cls(())

    def labeled(self) -> LabeledDiagram:
        return LabeledDiagram(self.matrix)

    @property
    def edges(self) -> int:
        return sum(map(sum, self.matrix))

    @property
    def rows(self) -> int:
        return len(self.matrix)

    @property
    def cols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def alpha(self):
        return self.labeled().alpha

    @property
    def beta(self):
        return self.labeled().beta

    def to_json(self) -> dict:
        d = self.labeled().to_json()
        d["labeled"] = False
        return d

    def __str__(self) -> str:
        return str(self.labeled())


def from_json(obj: Mapping | str):
    if isinstance(obj, str):
        obj = json.loads(obj)
    m = tuple(tuple(r) for r in obj["matrix"])
    if len(m) != obj.get("rows", len(m)) or (m and len(m[0]) != obj.get("cols", len(m[0]))):
        raise ValueError("rows/cols do not match the matrix")
    return LabeledDiagram(m) if obj.get("labeled", True) else Diagram(m)


def diagram_of_pair(p1: SetPartition, p2: SetPartition, labeled: bool = False):
    """Block intersection matrix (rows: blocks of p1, columns: blocks of p2)."""
    if p1.n != p2.n:
        raise ValueError("partitions of different ground sets")
    m = tuple(tuple(len(set(b1) & set(b2)) for b2 in p2.blocks) for b1 in p1.blocks)
    return LabeledDiagram(m) if labeled else Diagram(m)


# multiplicities and enumeration ----------------------------------------------------

@lru_cache(maxsize=None)
def _pair_table(n: int) -> Counter:
    parts = list(set_partitions(n))
    table: Counter = Counter()
    for p1 in parts:
        for p2 in parts:
            table[diagram_of_pair(p1, p2).matrix] += 1
    return table


def _stabilizer_order(m: Matrix) -> int:
    if not m:
        return 1
    rows = sorted(m)
    row_mult = 1
    for c in Counter(rows).values():
        row_mult *= factorial(c)
    q = len(m[0])
    hits = sum(1 for perm in itertools.permutations(range(q))
               if sorted(tuple(r[j] for j in perm) for r in m) == rows)
    return hits * row_mult


def multiplicity(d, method: str = "enumerate") -> int:
    """Number of pairs of partitions of {1..|d|} whose diagram is d.

    ``enumerate`` counts pairs directly (|d| <= 7); ``formula`` uses
    |d|! / (prod m_ij! * |Stab(d)|) with Stab the row/column symmetries.
    """
    if isinstance(d, LabeledDiagram):
        d = d.canonical()
    n = d.edges
    if method == "formula":
        den = _stabilizer_order(d.matrix)
        for r in d.matrix:
            for x in r:
                den *= factorial(x)
        return factorial(n) // den
    if method != "enumerate":
        raise ValueError(f"unknown method {method!r}")
    if n > MAX_MULT_EDGES:
        raise ValueError(f"|d| = {n} exceeds the enumeration bound {MAX_MULT_EDGES}")
    return _pair_table(n)[d.matrix]


def _vectors(q: int, total: int) -> Iterator[tuple[int, ...]]:
    """Non-zero vectors of length q with entry sum <= total."""
    for comp in itertools.product(range(total + 1), repeat=q):
        s = sum(comp)
        if 0 < s <= total:
            yield comp


def diagrams_with_edges(n: int) -> list[Diagram]:
    """Every unlabelled diagram with exactly n edges (built row by row)."""
    out: set[Matrix] = set()
    for q in range(1, n + 1):
        vecs = sorted(_vectors(q, n))

        def rec(start, remaining, rows):
            if remaining == 0:
                if all(any(r[j] for r in rows) for j in range(q)):
                    out.add(canonical_matrix(tuple(rows)))
                return
            for i in range(start, len(vecs)):
                v = vecs[i]
                s = sum(v)
                if s <= remaining:
                    rec(i, remaining - s, rows + [v])

        rec(0, n, [])
    return [Diagram(m) for m in sorted(out)]


def labeled_diagrams(max_rows: int, max_cols: int, max_entry: int, include_empty: bool = False) -> list[LabeledDiagram]:
    out = [LabeledDiagram.empty()] if include_empty else []
    for p in range(1, max_rows + 1):
        for q in range(1, max_cols + 1):
            for flat in itertools.product(range(max_entry + 1), repeat=p * q):
                m = tuple(tuple(flat[i * q:(i + 1) * q]) for i in range(p))
                if any(not any(r) for r in m) or any(not any(r[j] for r in m) for j in range(q)):
                    continue
                out.append(LabeledDiagram(m))
    return out


# deformed product ---------------------------------------------------------------

@dataclass(frozen=True)
class DeformParams:
    qc: Any = None
    qs: Any = None

    def __post_init__(self):
        if self.qc is None:
            object.__setattr__(self, "qc", Poly.symbol("qc"))
        if self.qs is None:
            object.__setattr__(self, "qs", Poly.symbol("qs"))

    def weight(self, a: int, b: int):
        return self.qc ** a * self.qs ** b


@lru_cache(maxsize=None)
def _templates(p1: int, p2: int) -> tuple[tuple[tuple[int | None, int | None], ...], ...]:
    """Order-preserving quasi-shuffles of rows 0..p1-1 with 0..p2-1.

    Each template is a sequence of (i, j) slots; None marks an absent side,
    (i, j) with both set is a superposition.
    """
    out = []

    def rec(i, j, acc):
        if i == p1 and j == p2:
            out.append(tuple(acc))
            return
        if i < p1:
            rec(i + 1, j, acc + [(i, None)])
        if j < p2:
            rec(i, j + 1, acc + [(None, j)])
        if i < p1 and j < p2:
            rec(i + 1, j + 1, acc + [(i, j)])

    rec(0, 0, [])
    return tuple(out)


def _place(rows1, deg1, rows2, deg2, add):
    """Yield (rows, a, b) for every placement of rows2 among rows1."""
    for tpl in _templates(len(rows1), len(rows2)):
        rows = []
        a = b = 0
        seen2 = 0  # total degree of d2 spots strictly left of the current slot
        for i, j in tpl:
            if i is None:
                rows.append(rows2[j])
                seen2 += deg2[j]
            elif j is None:
                rows.append(rows1[i])
                a += deg1[i] * seen2
            else:
                rows.append(add(rows1[i], rows2[j]))
                a += deg1[i] * seen2
                b += deg1[i] * deg2[j]
                seen2 += deg2[j]
        yield tuple(rows), a, b


def _vec_add(u, v):
    return tuple(x + y for x, y in zip(u, v))


def _product_terms(m1: Matrix, m2: Matrix) -> list[tuple[Matrix, int, int]]:
    """(matrix, crossing exponent, superposition exponent) per placement."""
    if not m1:
        return [(m2, 0, 0)]
    if not m2:
        return [(m1, 0, 0)]
    q1, q2 = len(m1[0]), len(m2[0])
    r1 = [r + (0,) * q2 for r in m1]
    r2 = [(0,) * q1 + r for r in m2]
    return list(_place(r1, [sum(r) for r in m1], r2, [sum(r) for r in m2], _vec_add))


def product(d1: LabeledDiagram, d2: LabeledDiagram, params: DeformParams | None = None) -> dict[LabeledDiagram, Any]:
    """Deformed product [d1|d2] as a formal sum ``diagram -> coefficient``."""
    params = params or DeformParams()
    out: dict[LabeledDiagram, Any] = {}
    for m, a, b in _product_terms(d1.matrix, d2.matrix):
        c = params.weight(a, b)
        if not c:
            continue
        d = LabeledDiagram(m)
        out[d] = out[d] + c if d in out else c
    return {d: c for d, c in out.items() if c}


def product_sum(s1: Mapping[LabeledDiagram, Any], s2: Mapping[LabeledDiagram, Any],
                params: DeformParams | None = None) -> dict[LabeledDiagram, Any]:
    """Bilinear extension of :func:`product` to formal sums."""
    params = params or DeformParams()
    out: dict[LabeledDiagram, Any] = {}
    for d1, c1 in s1.items():
        for d2, c2 in s2.items():
            for d, c in product(d1, d2, params).items():
                t = c1 * c2 * c
                out[d] = out[d] + t if d in out else t
    return {d: c for d, c in out.items() if c}


def _matrix_triple(m1: Matrix, m2: Matrix, m3: Matrix) -> tuple[Counter, Counter]:
    """Both bracketings of a triple product as Counters over (matrix, a, b)."""
    left: Counter = Counter()
    for m, a, b in _product_terms(m1, m2):
        for mm, a2, b2 in _product_terms(m, m3):
            left[(mm, a + a2, b + b2)] += 1
    right: Counter = Counter()
    for m, a, b in _product_terms(m2, m3):
        for mm, a2, b2 in _product_terms(m1, m):
            right[(mm, a + a2, b + b2)] += 1
    return left, right


def _first_difference(left: Counter, right: Counter):
    for k in sorted(set(left) | set(right)):
        if left[k] != right[k]:
            return k
    return None


def associativity_defect(d1: LabeledDiagram, d2: LabeledDiagram, d3: LabeledDiagram):
    """None when ([d1|d2]|d3) == (d1|[d2|d3]) symbolically in qc, qs; else the
    first differing (matrix, qc-exponent, qs-exponent) key."""
    left, right = _matrix_triple(d1.matrix, d2.matrix, d3.matrix)
    return None if left == right else _first_difference(left, right)


def _label_add(u, v):
    return tuple(sorted(u + v))


@lru_cache(maxsize=None)
def pattern_associativity_defect(g1: tuple, g2: tuple, g3: tuple):
    """Associativity for generic diagrams with black-spot degrees g1, g2, g3.

    Rows are kept as formal labels ("which spots were superposed"), so the
    check holds for every triple of labelled diagrams with these degree
    sequences: their matrices are obtained from the labels by summing rows.
    """
    r1 = [(("a", i),) for i in range(len(g1))]
    r2 = [(("b", j),) for j in range(len(g2))]
    r3 = [(("c", k),) for k in range(len(g3))]

    def deg_of(rows, table):
        return [sum(table[s][i] for s, i in r) for r in rows]

    table = {"a": g1, "b": g2, "c": g3}

    def prod(ra, rb):
        if not ra:
            return [(tuple(rb), 0, 0)]
        if not rb:
            return [(tuple(ra), 0, 0)]
        return list(_place(ra, deg_of(ra, table), rb, deg_of(rb, table), _label_add))

    left: Counter = Counter()
    for m, a, b in prod(r1, r2):
        for mm, a2, b2 in prod(list(m), r3):
            left[(mm, a + a2, b + b2)] += 1
    right: Counter = Counter()
    for m, a, b in prod(r2, r3):
        for mm, a2, b2 in prod(r1, list(m)):
            right[(mm, a + a2, b + b2)] += 1
    return None if left == right else _first_difference(left, right)


# commutative product and black-spot coproduct -----------------------------------------

def concat(d1, d2):
    """Block-diagonal concatenation; on unlabelled diagrams this is commutative."""
    m1, m2 = d1.matrix, d2.matrix
    q1 = len(m1[0]) if m1 else 0
    q2 = len(m2[0]) if m2 else 0
    m = tuple(r + (0,) * q2 for r in m1) + tuple((0,) * q1 + r for r in m2)
    if isinstance(d1, Diagram) or isinstance(d2, Diagram):
        return Diagram(m)
    return LabeledDiagram(m)


def coproduct_bs(d) -> dict[tuple, int]:
    """Black spot coproduct: sum over splittings I + J of the black spots of
    d[I] (x) d[J].  Unlabelled inputs give unlabelled tensor factors."""
    lab = d.labeled() if isinstance(d, Diagram) else d
    out: Counter = Counter()
    p = lab.rows
    for mask in range(2 ** p):
        I = [i for i in range(p) if mask >> i & 1]
        J = [i for i in range(p) if not mask >> i & 1]
        a, b = lab.sub(I), lab.sub(J)
        if isinstance(d, Diagram):
            a, b = a.canonical(), b.canonical()
        out[(a, b)] += 1
    return dict(out)


def counit(d) -> int:
    return 1 if not d.matrix else 0


def tensor_product(t1: Mapping[tuple, Any], t2: Mapping[tuple, Any]) -> dict[tuple, Any]:
    """Product in DIAG (x) DIAG with the commutative concatenation."""
    out: Counter = Counter()
    for (a1, b1), c1 in t1.items():
        for (a2, b2), c2 in t2.items():
            out[(concat(a1, a2), concat(b1, b2))] += c1 * c2
    return {k: v for k, v in out.items() if v}


# morphisms onto words --------------------------------------------------------------

def word_image(d: LabeledDiagram) -> Word:
    """Indexed word x_{I(d,1)} ... x_{I(d,p)} (same tuple for the X and Y maps)."""
    return d.row_degrees


def image_of_sum(s: Mapping[LabeledDiagram, Any]) -> dict[Word, Any]:
    out: dict[Word, Any] = {}
    for d, c in s.items():
        w = word_image(d)
        out[w] = out[w] + c if w in out else c
    return {w: c for w, c in out.items() if c}


# diagram expansion of the Hadamard product ------------------------------------------------

def _type_power(vals, t):
    out = Fraction(1)
    for i, m in enumerate(t, start=1):
        if m:
            out *= Fraction(vals[i - 1]) ** m
    return out


@dataclass
class ExpansionReport:
    ok: bool
    componentwise: list
    substitution: list
    diagrams: list

    def __bool__(self) -> bool:
        return self.ok


def hadamard_expansion_check(L: list, V: list, D: int, mult_method: str = "formula") -> ExpansionReport:
    """Compare H(F, G) for F = exp(sum L_n z^n/n!), G = exp(sum V_n z^n/n!)
    computed componentwise, by substitution, and as the diagram sum
    sum_{|d|=n} mult(d) L^alpha(d) V^beta(d)."""
    if D > 6:
        raise ValueError("diagram expansion is limited to D <= 6")
    L = [Fraction(x) for x in L] + [Fraction(0)] * max(0, D - len(L))
    V = [Fraction(x) for x in V] + [Fraction(0)] * max(0, D - len(V))
    F = EGFSeries.exp_of(L, D)
    G = EGFSeries.exp_of(V, D)
    comp = list(hadamard_exp(F, G, "componentwise").coeffs)
    subs = list(hadamard_exp(F, G, "substitution").coeffs)
    diag = [Fraction(1)]
    for n in range(1, D + 1):
        total = Fraction(0)
        for d in diagrams_with_edges(n):
            total += multiplicity(d, mult_method) * _type_power(L, d.alpha) * _type_power(V, d.beta)
        diag.append(total)
    return ExpansionReport(comp == subs == diag, comp, subs, diag)
