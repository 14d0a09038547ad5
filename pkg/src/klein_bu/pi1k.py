"""The Klein bottle group Z ⋊ Z and homomorphisms Z^2 -> Z ⋊ Z.

Group law: (m1, n1)(m2, n2) = (m1 + (-1)^n1 m2, n1 + n2).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import NonCommuting, ParseError
from .word import U, FreeWord, delta, eps


class Pi1K(NamedTuple):
    m: int
    n: int

    def __mul__(self, other):  # type: ignore[override]
        if not isinstance(other, Pi1K):
            return NotImplemented
        return Pi1K(self.m + eps(self.n) * other.m, self.n + other.n)

    def inverse(self) -> "Pi1K":
        return Pi1K(-eps(self.n) * self.m, -self.n)

    def __pow__(self, t: int) -> "Pi1K":
        # even n: the m-coordinate adds up; odd n: a^2 = (0, 2n)
        if self.n % 2 == 0:
            return Pi1K(t * self.m, t * self.n)
        return Pi1K(self.m if t % 2 else 0, t * self.n)

    def __str__(self):
        return f"({self.m},{self.n})"


ONE = Pi1K(0, 0)


def k_mul(a: Pi1K, b: Pi1K) -> Pi1K:
    return a * b


def k_inv(a: Pi1K) -> Pi1K:
    return a.inverse()


def k_pow(a: Pi1K, t: int) -> Pi1K:
    return a ** t


def k_conj(c: Pi1K, a: Pi1K) -> Pi1K:
    """c a c^-1."""
    return Pi1K(eps(c.n) * a.m + (1 - eps(a.n)) * c.m, a.n)


def commutes(a: Pi1K, b: Pi1K) -> bool:
    return a.m * (1 - eps(b.n)) == b.m * (1 - eps(a.n))


def g_word(w: FreeWord) -> Pi1K:
    """Image of w under g: u -> (1,0), v -> (0,1)."""
    m = n = 0
    for x, e in w.syllables:
        if x == U:
            m += eps(n) * e
        else:
            n += e
    return Pi1K(m, n)


def h_iso(a: Pi1K) -> Pi1K:
    """The automorphism (1,0) -> (1,0), (0,1) -> (1,1)."""
    return Pi1K(a.m + delta(a.n), a.n)


def h_iso_inv(a: Pi1K) -> Pi1K:
    """Inverse of :func:`h_iso`: (0,1) -> (-1,1)."""
    return Pi1K(a.m - delta(a.n), a.n)


_PAIR = re.compile(r"\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*\Z")


def parse_pi1k(text: str) -> Pi1K:
    m = _PAIR.match(text)
    if m is None:
        raise ParseError(f"expected '(m,n)', got {text!r}")
    return Pi1K(int(m.group(1)), int(m.group(2)))


@dataclass(frozen=True)
class HomPair:
    """A homomorphism Z^2 -> Z ⋊ Z given by the images of (1,0) and (0,1)."""

    f10: Pi1K
    f01: Pi1K

    def __post_init__(self):
        object.__setattr__(self, "f10", Pi1K(*self.f10))
        object.__setattr__(self, "f01", Pi1K(*self.f01))
        if not commutes(self.f10, self.f01):
            raise NonCommuting(f"images {self.f10} and {self.f01} do not commute")

    def conjugate(self, c: Pi1K) -> "HomPair":
        return HomPair(k_conj(c, self.f10), k_conj(c, self.f01))

    def __call__(self, a: int, b: int) -> Pi1K:
        return self.f10 ** a * self.f01 ** b


@dataclass(frozen=True)
class HomNormalForm:
    """One of the four conjugacy normal forms of a map Z^2 -> Z ⋊ Z.

    Types 1-3 use ``i``; Type 4 uses ``r1`` (>= 0) and ``r2``.
    """

    type_tag: int
    s1: int
    s2: int
    i: Optional[int] = None
    r1: Optional[int] = None
    r2: Optional[int] = None

    def __post_init__(self):
        if self.type_tag not in (1, 2, 3, 4):
            raise ValueError(f"bad type {self.type_tag}")
        if self.type_tag == 4:
            if self.r1 is None or self.r2 is None or self.i is not None:
                raise ValueError("Type 4 takes r1, r2 and no i")
            if self.r1 < 0 or (self.r1 == 0 and self.r2 < 0):
                raise ValueError("Type 4 needs r1 >= 0, and r2 >= 0 when r1 = 0")
        elif self.i not in (0, 1) or self.r1 is not None or self.r2 is not None:
            raise ValueError("Types 1-3 take i in {0,1} and no r1, r2")

    def pair(self) -> HomPair:
        s1, s2, i = self.s1, self.s2, self.i
        if self.type_tag == 1:
            return HomPair(Pi1K(i, 2 * s1 + 1), Pi1K(0, 2 * s2))
        if self.type_tag == 2:
            return HomPair(Pi1K(i, 2 * s1 + 1), Pi1K(i, 2 * s2 + 1))
        if self.type_tag == 3:
            return HomPair(Pi1K(0, 2 * s1), Pi1K(i, 2 * s2 + 1))
        return HomPair(Pi1K(self.r1, 2 * s1), Pi1K(self.r2, 2 * s2))

    def as_dict(self) -> dict:
        d = {"type": self.type_tag, "s1": self.s1, "s2": self.s2}
        if self.type_tag == 4:
            d.update(r1=self.r1, r2=self.r2)
        else:
            d["i"] = self.i
        return d


def _odd_conjugator(m: int) -> tuple[int, Pi1K]:
    # conjugating (m, odd) by (p, 0) gives (m + 2p, odd)
    i = m % 2
    return i, Pi1K((i - m) // 2, 0)


def normalize_hom(h: HomPair) -> tuple[HomNormalForm, Pi1K]:
    """Return the normal form of ``h`` and a conjugator ``c`` taking ``h`` onto it."""
    if not commutes(h.f10, h.f01):
        raise NonCommuting(f"images {h.f10} and {h.f01} do not commute")
    (m1, n1), (m2, n2) = h.f10, h.f01
    odd1, odd2 = n1 % 2, n2 % 2
    if odd1 and not odd2:
        i, c = _odd_conjugator(m1)
        nf = HomNormalForm(1, (n1 - 1) // 2, n2 // 2, i=i)
    elif odd1 and odd2:
        i, c = _odd_conjugator(m1)
        nf = HomNormalForm(2, (n1 - 1) // 2, (n2 - 1) // 2, i=i)
    elif odd2:
        i, c = _odd_conjugator(m2)
        nf = HomNormalForm(3, n1 // 2, (n2 - 1) // 2, i=i)
    else:
        # even second coordinates: conjugation can only flip both signs
        flip = m1 < 0 or (m1 == 0 and m2 < 0)
        c = Pi1K(0, 1) if flip else ONE
        s = -1 if flip else 1
        nf = HomNormalForm(4, n1 // 2, n2 // 2, r1=s * m1, r2=s * m2)
    return nf, c
