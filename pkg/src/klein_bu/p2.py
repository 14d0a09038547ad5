"""The pure braid group P2(K^2) as F(u,v) ⋊_θ (Z ⋊ Z).

Elements are pairs ``(w; m, n)`` with product
``(w1; q1)(w2; q2) = (w1 θ(q1)(w2); q1 q2)``. Conjugation by the half-twist
σ (which is not itself an element of P2) is available as :func:`l_sigma`.
"""
from __future__ import annotations

import re
from functools import lru_cache
from typing import NamedTuple

from .errors import ParseError
from .pi1k import ONE, Pi1K, g_word
from .word import U, V, FreeWord, apply_endo, delta, eps, format_word, gen, parse_word, word_B

_B = word_B()


@lru_cache(maxsize=4096)
def _theta_images(m: int, parity: int) -> tuple[FreeWord, FreeWord]:
    d = parity
    img_u = _B ** (m - d) * gen(U, eps(d)) * _B ** (d - m)
    img_v = _B ** m * gen(V) * gen(U, -2 * m) * _B ** (d - m)
    return img_u, img_v


def theta(m: int, n: int, w: FreeWord) -> FreeWord:
    """The automorphism θ(m,n) of F(u,v); it depends only on m and n mod 2."""
    if m == 0 and n % 2 == 0:
        return w
    return apply_endo(*_theta_images(m, delta(n)), w)


class P2Elem(NamedTuple):
    w: FreeWord
    q: Pi1K

    @classmethod
    def of(cls, w: FreeWord = None, m: int = 0, n: int = 0) -> "P2Elem":
        return cls(FreeWord.identity() if w is None else w, Pi1K(m, n))

    def __mul__(self, other):  # type: ignore[override]
        if not isinstance(other, P2Elem):
            return NotImplemented
        return P2Elem(self.w * theta(self.q.m, self.q.n, other.w), self.q * other.q)

    def inverse(self) -> "P2Elem":
        qi = self.q.inverse()
        return P2Elem(theta(qi.m, qi.n, self.w.inverse()), qi)

    def __pow__(self, t: int) -> "P2Elem":
        if t < 0:
            return self.inverse() ** (-t)
        result, base = IDENTITY, self
        while t:
            if t & 1:
                result = result * base
            t >>= 1
            if t:
                base = base * base
        return result

    def __str__(self):
        return f"({format_word(self.w)}; {self.q.m}, {self.q.n})"


IDENTITY = P2Elem(FreeWord.identity(), ONE)


def p2_mul(a: P2Elem, b: P2Elem) -> P2Elem:
    return a * b


def p2_inv(a: P2Elem) -> P2Elem:
    return a.inverse()


def iota(w: FreeWord) -> P2Elem:
    return P2Elem(w, ONE)


def sigma_sq() -> P2Elem:
    """σ² = (B; 0, 0)."""
    return P2Elem(_B, ONE)


def p1_sharp(a: P2Elem) -> Pi1K:
    """Forget the second strand: (w; m, n) -> (m, n)."""
    return a.q


def _rho_letter_table() -> dict:
    # ρ(u) = B u^-1 B^-1, ρ(v) = v^-1 B; inverse letters via ρ(x^-1) = θ(g(x)^-1)(ρ(x)^-1)
    table = {
        (U, 1): _B * gen(U, -1) * _B.inverse(),
        (V, 1): gen(V, -1) * _B,
    }
    for x in (U, V):
        gi = g_word(gen(x)).inverse()
        table[(x, -1)] = theta(gi.m, gi.n, table[(x, 1)].inverse())
    return table


_RHO = _rho_letter_table()


@lru_cache(maxsize=8192)
def _twisted_rho_letter(m: int, parity: int, x: str, step: int) -> FreeWord:
    return theta(m, parity, _RHO[(x, step)])


def rho(w: FreeWord) -> FreeWord:
    """p_F ∘ l_σ ∘ ι, via the cocycle rule ρ(wz) = ρ(w) θ(g(w))(ρ(z))."""
    acc = FreeWord.identity()
    m = n = 0
    for x, step in w.letters():
        acc = acc * _twisted_rho_letter(m, n % 2, x, step)
        if x == U:
            m += eps(n) * step
        else:
            n += step
    return acc


def l_sigma(a: P2Elem) -> P2Elem:
    """Conjugation by σ, using (w; m, n) = (w; 0,0)(1; m,0)(1; 0,n)."""
    w, (m, n) = a
    return P2Elem(rho(w), g_word(w)) * P2Elem(FreeWord.identity(), Pi1K(m, 0)) * P2Elem(
        _B ** delta(n), Pi1K(0, n)
    )


def split_normal(w: FreeWord) -> tuple[int, int, FreeWord]:
    """Write w = u^r v^s x with (r, s) = g(w) and x in ker g."""
    r, s = g_word(w)
    x = gen(V, -s) * gen(U, -r) * w
    return r, s, x


_ELEM = re.compile(r"\s*\(([^;()]*);\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*\Z")


def parse_p2(text: str) -> P2Elem:
    """Parse ``(word; m, n)``."""
    match = _ELEM.match(text)
    if match is None:
        raise ParseError(f"expected '(word; m, n)', got {text!r}")
    return P2Elem(parse_word(match.group(1)), Pi1K(int(match.group(2)), int(match.group(3))))


def format_p2(a: P2Elem) -> str:
    return str(a)
