"""Reduced words in the free group F(u, v).

Words are stored as tuples of ``(letter, exponent)`` syllables with adjacent
letters distinct, so two words are equal exactly when their syllable tuples
are equal. The same syllable machinery is reused for words over the infinite
alphabet ``{B[k,l]}`` in :mod:`klein_bu.kerg`.
"""
from __future__ import annotations

import re
from typing import Hashable, Iterable

from .errors import ParseError

U = "u"
V = "v"
GENERATORS = (U, V)


def delta(n: int) -> int:
    """Parity of ``n``: 0 if even, 1 if odd (also for negative ``n``)."""
    return n % 2


def eps(n: int) -> int:
    """``(-1)**n``."""
    return -1 if n % 2 else 1


def sgn(n: int) -> int:
    if n > 0:
        return 1
    if n < 0:
        return -1
    return 0


def _push(syls: list, letter: Hashable, exp: int) -> None:
    # in-place append with cancellation against the tail
    if not exp:
        return
    if syls and syls[-1][0] == letter:
        e = syls[-1][1] + exp
        if e:
            syls[-1] = (letter, e)
        else:
            syls.pop()
    else:
        syls.append((letter, exp))


def reduce_syllables(stream: Iterable[tuple[Hashable, int]]) -> tuple:
    syls: list = []
    for letter, exp in stream:
        _push(syls, letter, exp)
    return tuple(syls)


class ReducedWord:
    """Freely reduced word over an arbitrary hashable alphabet."""

    __slots__ = ("syllables", "_hash")

    def __init__(self, syllables: Iterable[tuple[Hashable, int]] = ()):
        self.syllables = reduce_syllables(syllables)
        self._hash = None

    @classmethod
    def _raw(cls, syllables: tuple):
        obj = cls.__new__(cls)
        obj.syllables = syllables
        obj._hash = None
        return obj

    @classmethod
    def identity(cls):
        return cls._raw(())

    @classmethod
    def letter(cls, letter: Hashable, exp: int = 1):
        return cls._raw(((letter, exp),) if exp else ())

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.syllables == other.syllables

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.syllables))
        return self._hash

    def __bool__(self):
        return bool(self.syllables)

    def __len__(self):
        """Number of letters (sum of absolute exponents)."""
        return sum(abs(e) for _, e in self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def __mul__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if not other.syllables:
            return self
        if not self.syllables:
            return other
        left = list(self.syllables)
        right = other.syllables
        i = 0
        # cancel across the junction; after the first partial merge the rest is already reduced
        while i < len(right) and left and left[-1][0] == right[i][0]:
            letter = right[i][0]
            e = left[-1][1] + right[i][1]
            i += 1
            if e:
                left[-1] = (letter, e)
                break
            left.pop()
        left.extend(right[i:])
        return self._raw(tuple(left))

    def inverse(self):
        return self._raw(tuple((x, -e) for x, e in reversed(self.syllables)))

    def __invert__(self):
        return self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.identity()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conj(self, other):
        """``self * other * self^-1``."""
        return self * other * self.inverse()

    def letters(self):
        """Yield the word one signed letter at a time as ``(letter, ±1)``."""
        for x, e in self.syllables:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield x, step


class FreeWord(ReducedWord):
    """Element of F(u, v)."""

    __slots__ = ()

    def __repr__(self):
        return f"FreeWord({format_word(self)!r})"

    def __str__(self):
        return format_word(self)


def w_identity() -> FreeWord:
    return FreeWord.identity()


def w_mul(a: FreeWord, b: FreeWord) -> FreeWord:
    return a * b


def w_inv(a: FreeWord) -> FreeWord:
    return a.inverse()


def w_pow(a: FreeWord, n: int) -> FreeWord:
    return a ** n


def w_conj(c: FreeWord, a: FreeWord) -> FreeWord:
    return c * a * c.inverse()


def w_commutator(a: FreeWord, b: FreeWord) -> FreeWord:
    return a * b * a.inverse() * b.inverse()


def gen(letter: str, exp: int = 1) -> FreeWord:
    if letter not in GENERATORS:
        raise ValueError(f"unknown generator {letter!r}")
    return FreeWord.letter(letter, exp)


def apply_endo(img_u: FreeWord, img_v: FreeWord, w: FreeWord) -> FreeWord:
    """Image of ``w`` under the endomorphism u -> img_u, v -> img_v."""
    images = {U: img_u, V: img_v}
    result = FreeWord.identity()
    for x, e in w.syllables:
        result = result * images[x] ** e
    return result


_B = FreeWord(((U, 1), (V, 1), (U, 1), (V, -1)))


def word_B() -> FreeWord:
    """B = u v u v^-1."""
    return _B


def word_Bkl(k: int, l: int) -> FreeWord:
    """B_{k,l} = v^k u^l B u^-l v^-k."""
    return FreeWord(((V, k), (U, l))).conj(_B)


# -- text format -------------------------------------------------------------

_TERM = re.compile(r"([uvB])(?:\^(-?\d+))?\Z")


def parse_word(text: str) -> FreeWord:
    """Parse ``u v^-1 B^2``-style text; ``1`` is the identity."""
    tokens = text.split()
    if not tokens:
        raise ParseError("empty word")
    if tokens == ["1"]:
        return FreeWord.identity()
    result = FreeWord.identity()
    for tok in tokens:
        m = _TERM.match(tok)
        if m is None:
            raise ParseError(f"bad word term {tok!r}")
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if m.group(1) == "B":
            result = result * _B ** exp
        else:
            result = result * FreeWord.letter(m.group(1), exp)
    return result


def format_word(w: FreeWord) -> str:
    if not w.syllables:
        return "1"
    return " ".join(x if e == 1 else f"{x}^{e}" for x, e in w.syllables)
