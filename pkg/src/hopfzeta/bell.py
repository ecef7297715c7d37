"""Set partitions, Bell polynomials and the exponential Hadamard product.

Partitions of ``{1..n}`` are enumerated through restricted-growth strings,
which gives every partition exactly once.  Bell polynomials are sums of
type monomials ``X1^t1 X2^t2 ...``; they are computed by grouping the
partitions by type (the number of partitions of a given type is
``n! / prod(k!^t_k t_k!)``), and the brute-force sum over all partitions
is kept as :func:`bell_polynomial_bruteforce` for cross-checks.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Any, Callable, Iterator, Sequence

from .poly import Poly, poly_sum

MAX_N = 12


@dataclass(frozen=True)
class SetPartition:
    """A partition of {1..n}; blocks are sorted tuples ordered by their minimum."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, blocks, n: int | None = None) -> "SetPartition":
        bl = tuple(sorted(tuple(sorted(b)) for b in blocks))
        elems = [e for b in bl for e in b]
        if n is None:
            n = len(elems)
        if any(not b for b in bl) or sorted(elems) != list(range(1, n + 1)):
            raise ValueError("blocks must be disjoint, nonempty and cover {1..n}")
        return cls(n, bl)

    @classmethod
    def from_rgs(cls, rgs: Sequence[int]) -> "SetPartition":
        groups: dict[int, list[int]] = {}
        for i, b in enumerate(rgs, start=1):
            groups.setdefault(b, []).append(i)
        return cls(len(rgs), tuple(tuple(groups[b]) for b in sorted(groups)))

    @property
    def type(self) -> tuple[int, ...]:
        """Entry k-1 counts blocks of size k (length n)."""
        t = [0] * self.n
        for b in self.blocks:
            t[len(b) - 1] += 1
        return tuple(t)

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """a_1 = 0, a_{i+1} <= 1 + max(a_1..a_i)."""
    if n == 0:
        yield ()
        return
    a = [0] * n
    m = [0] * n  # m[i] = max(a[0..i])

    def rec(i):
        if i == n:
            yield tuple(a)
            return
        for v in range(m[i - 1] + 2):
            a[i] = v
            m[i] = max(m[i - 1], v)
            yield from rec(i + 1)

    yield from rec(1)


def _check_n(n: int):
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_N:
        raise ValueError(f"enumeration bound exceeded: n={n} > {MAX_N}")


def set_partitions(n: int, k: int | None = None, sizes: Sequence[int] | None = None) -> Iterator[SetPartition]:
    """All partitions of {1..n}, optionally with exactly ``k`` blocks and/or
    block sizes restricted to ``sizes``."""
    _check_n(n)
    allowed = set(sizes) if sizes is not None else None
    for rgs in restricted_growth_strings(n):
        if k is not None and (max(rgs, default=-1) + 1) != k:
            continue
        p = SetPartition.from_rgs(rgs)
        if allowed is not None and any(len(b) not in allowed for b in p.blocks):
            continue
        yield p


@lru_cache(maxsize=None)
def bell_number(n: int) -> int:
    # Bell triangle
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def integer_partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as non-increasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in integer_partitions(n - first, first):
            yield (first,) + rest


def type_count(t: Sequence[int]) -> int:
    """Number of set partitions of {1..n} with type t (n = sum k t_k)."""
    n = sum((k + 1) * m for k, m in enumerate(t))
    den = 1
    for k, m in enumerate(t, start=1):
        den *= factorial(k) ** m * factorial(m)
    return factorial(n) // den


def partition_types(n: int, k: int | None = None) -> Iterator[tuple[tuple[int, ...], int]]:
    """(type, count) pairs for partitions of {1..n} (with k blocks if given)."""
    for lam in integer_partitions(n):
        if k is not None and len(lam) != k:
            continue
        c = Counter(lam)
        t = tuple(c.get(i, 0) for i in range(1, n + 1))
        yield t, type_count(t)


def _values(variables, n: int) -> Callable[[int], Any]:
    if variables is None:
        return lambda i: Poly.symbol(f"X{i}")
    if isinstance(variables, str):
        return lambda i: Poly.symbol(f"{variables}{i}")
    seq = list(variables)
    if len(seq) < n:
        raise ValueError(f"need {n} values, got {len(seq)}")
    return lambda i: seq[i - 1]


def _type_monomial(t, val, one):
    out = one
    for i, m in enumerate(t, start=1):
        if m:
            out = out * val(i) ** m
    return out


def bell_polynomial(n: int, k: int | None = None, variables=None):
    """B_n (or the partial b_{n,k}) as a sum of type monomials.

    ``variables`` is ``None`` (symbols X1..Xn), a symbol prefix, or a
    sequence of values (rationals, floats, polynomials).
    """
    _check_n(n)
    if k is not None and not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    val = _values(variables, n)
    symbolic = variables is None or isinstance(variables, str)
    one = Poly.constant(1) if symbolic else 1
    total = None
    for t, c in partition_types(n, k):
        term = _type_monomial(t, val, one) * c
        total = term if total is None else total + term
    if total is None:
        total = one * 0
    return total


def bell_polynomial_bruteforce(n: int, k: int | None = None, variables=None):
    """Same as :func:`bell_polynomial` but literally summing over all partitions."""
    val = _values(variables, n)
    symbolic = variables is None or isinstance(variables, str)
    one = Poly.constant(1) if symbolic else 1
    if symbolic:
        return poly_sum(_type_monomial(p.type, val, one) for p in set_partitions(n, k))
    return sum((_type_monomial(p.type, val, one) for p in set_partitions(n, k)), one * 0)


# exponential generating series -----------------------------------------------------

class EGFSeries:
    """Truncated exponential generating series sum a_n z^n / n!, n <= D."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Any]):
        self.coeffs = tuple(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, EGFSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"EGFSeries({list(self.coeffs)!r})"

    @classmethod
    def exp_of(cls, x: Sequence[Any], D: int, one=Fraction(1)) -> "EGFSeries":
        """exp(sum_{n>=1} x_n z^n/n!) through z^D, by the EGF recursion
        a_{n+1} = sum_k C(n,k) x_{k+1} a_{n-k}."""
        a = [one]
        for n in range(D):
            s = one * 0
            for k in range(n + 1):
                if k < len(x):
                    s = s + comb(n, k) * x[k] * a[n - k]
            a.append(s)
        return cls(a)

    def __mul__(self, other: "EGFSeries") -> "EGFSeries":
        D = min(self.degree, other.degree)
        return EGFSeries(
            [sum((comb(n, k) * self[k] * other[n - k] for k in range(n + 1)), 0 * self[0]) for n in range(D + 1)]
        )


def hadamard_exp(F: EGFSeries, G: EGFSeries, method: str = "componentwise") -> EGFSeries:
    """Exponential Hadamard product H(F, G) = sum a_n b_n z^n/n!.

    ``substitution`` evaluates F(t d/dx)[G(x)] at x = 0 term by term: G is
    held as an ordinary polynomial in x, differentiated n times and
    evaluated at 0, then weighted by a_n t^n / n!.
    """
    if F.degree != G.degree:
        raise ValueError("series must share the truncation degree")
    D = F.degree
    if method == "componentwise":
        return EGFSeries([F[n] * G[n] for n in range(D + 1)])
    if method != "substitution":
        raise ValueError(f"unknown method {method!r}")
    # ordinary coefficients of G(x)
    g = [Fraction(1, factorial(m)) * G[m] for m in range(D + 1)]
    out = []
    deriv = list(g)
    for n in range(D + 1):
        at0 = deriv[0] if deriv else 0
        # coefficient of t^n is a_n/n! * at0; as an EGF coefficient multiply by n!
        ordinary = Fraction(1, factorial(n)) * F[n] * at0
        out.append(ordinary * factorial(n))
        deriv = [k * c for k, c in enumerate(deriv)][1:]
    return EGFSeries(out)
