"""Words over the two alphabets used throughout the package.

Words are plain tuples of non-negative integers.  Over ``X`` the letters
are ``0`` (x0) and ``1`` (x1); over ``Y`` the letter ``k`` stands for
``y_k`` with ``k >= 1``.  The alphabet is carried separately (by the
series or passed explicitly), which keeps words cheap dictionary keys.

Text encoding: X-words are strings over ``'0'``/``'1'`` (``"011"`` is
x0 x1 x1); Y-words are comma separated indices (``"2,1"`` is y2 y1).  The
empty string is the empty word in both cases.
"""

from __future__ import annotations

import enum
from typing import Callable, Iterator, Sequence

Word = tuple[int, ...]

EMPTY: Word = ()


class AlphabetError(ValueError):
    """Raised when a word or series does not belong to the expected alphabet."""


class Alphabet(enum.Enum):
    X = "X"
    Y = "Y"

    def weight(self, w: Sequence[int]) -> int:
        if self is Alphabet.X:
            return len(w)
        return sum(w)

    def validate(self, w: Sequence[int]) -> Word:
        w = tuple(int(a) for a in w)
        if self is Alphabet.X:
            if any(a not in (0, 1) for a in w):
                raise AlphabetError(f"{w} is not a word over X = {{x0, x1}}")
        elif any(a < 1 for a in w):
            raise AlphabetError(f"{w} is not a word over Y = {{y1, y2, ...}}")
        return w

    def parse(self, text: str) -> Word:
        text = text.strip()
        if self is Alphabet.X:
            if text in ("", "()"):
                return EMPTY
            return self.validate(int(ch) for ch in text)
        text = text.strip("[]() ")
        if not text:
            return EMPTY
        return self.validate(int(tok) for tok in text.split(","))

    def format(self, w: Sequence[int]) -> str:
        """Compact text form; the empty word prints as ``()`` / ``[]``."""
        if self is Alphabet.X:
            return "".join(map(str, w)) if w else "()"
        return "[" + ",".join(map(str, w)) + "]"

    def latex(self, w: Sequence[int]) -> str:
        if not w:
            return r"1_{X^*}" if self is Alphabet.X else r"1_{Y^*}"
        letter = "x" if self is Alphabet.X else "y"
        return "".join(f"{letter}_{{{a}}}" for a in w)

    def letters_upto(self, weight: int) -> list[int]:
        if self is Alphabet.X:
            return [0, 1]
        return list(range(1, weight + 1))


X = Alphabet.X
Y = Alphabet.Y


# Letter orders.  Lyndon machinery compares words through a key that maps
# each letter to a sortable integer.  "natural" is x0 < x1 and
# y1 < y2 < ...; "y1_largest" reverses the Y order (y1 > y2 > ...), under
# which every Lyndon word other than y1 is a convergent word.
OrderKey = Callable[[int], int]


def natural(a: int) -> int:
    return a


def y1_largest(a: int) -> int:
    return -a


ORDERS: dict[str, OrderKey] = {"natural": natural, "y1_largest": y1_largest}


def order_key(order: str | OrderKey | None) -> OrderKey:
    if order is None:
        return natural
    if callable(order):
        return order
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown letter order {order!r}") from None


def keyed(w: Sequence[int], key: OrderKey) -> tuple[int, ...]:
    return tuple(key(a) for a in w)


def words_of_weight(alphabet: Alphabet, n: int) -> Iterator[Word]:
    """All words of exact weight ``n``, in increasing natural lex order."""
    if n < 0:
        return
    if alphabet is X:
        if n == 0:
            yield EMPTY
            return
        for i in range(2 ** n):
            yield tuple((i >> (n - 1 - k)) & 1 for k in range(n))
        return
    # compositions of n
    if n == 0:
        yield EMPTY
        return

    def comps(m: int) -> Iterator[Word]:
        if m == 0:
            yield EMPTY
            return
        for first in range(1, m + 1):
            for rest in comps(m - first):
                yield (first,) + rest

    yield from comps(n)


def words_upto(alphabet: Alphabet, n: int) -> list[Word]:
    """All words of weight ``<= n`` sorted by (weight, word)."""
    out: list[Word] = []
    for k in range(n + 1):
        out.extend(sorted(words_of_weight(alphabet, k)))
    return out


def sort_key(alphabet: Alphabet):
    """Printing order: by weight, then lexicographically."""
    return lambda w: (alphabet.weight(w), w)


def x_word_to_composition(w: Sequence[int]) -> tuple[int, ...]:
    """Inverse of ``y_n -> x0^(n-1) x1`` on words of X*x1 (or the empty word)."""
    if w and w[-1] != 1:
        raise AlphabetError(f"{w} does not end with x1")
    comp, run = [], 0
    for a in w:
        if a == 0:
            run += 1
        else:
            comp.append(run + 1)
            run = 0
    return tuple(comp)


def composition_to_x_word(c: Sequence[int]) -> Word:
    out: list[int] = []
    for n in c:
        out.extend([0] * (n - 1))
        out.append(1)
    return tuple(out)


def is_convergent(w: Sequence[int], alphabet: Alphabet) -> bool:
    """Convergent words: x0 X* x1 over X, Y* minus y1 Y* over Y (empty excluded)."""
    if not w:
        return False
    if alphabet is X:
        return w[0] == 0 and w[-1] == 1
    return w[0] >= 2
