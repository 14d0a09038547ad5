"""The normal closure of σ², identified with ker g ⊂ F(u,v).

ker g is free on ``B[k,l] = v^k u^l B u^-l v^-k``. Words in ker g are
rewritten into that basis by Reidemeister-Schreier with transversal
``{v^k u^l}``, which first produces Schreier generators
``Γ[k,l] = v^k u^l v u^l v^(-k-1)`` and then expands each of them in the
B-basis.
"""
from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from typing import NamedTuple

from .errors import NotInKernel
from .p2 import rho, theta
from .pi1k import ONE, g_word
from .word import U, V, FreeWord, ReducedWord, delta, eps, gen, sgn, w_commutator, word_B, word_Bkl

_B = word_B()


# -- basis words -----------------------------------------------------------

class BBasisWord(ReducedWord):
    """Reduced word in the free generators ``B[k,l]``; letters are ``(k, l)`` pairs."""

    __slots__ = ()

    def __str__(self):
        if not self.syllables:
            return "1"
        return " ".join(
            f"B[{k},{l}]" if e == 1 else f"B[{k},{l}]^{e}" for (k, l), e in self.syllables
        )

    def __repr__(self):
        return f"BBasisWord({str(self)!r})"


def b_letter(k: int, l: int, exp: int = 1) -> BBasisWord:
    return BBasisWord.letter((k, l), exp)


class AbKerG:
    """Element of the abelianisation: a finite sparse vector indexed by (k, l)."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict = {}
        for key, val in items:
            key = (int(key[0]), int(key[1]))
            c[key] = c.get(key, 0) + val
        self._c = {key: c[key] for key in sorted(c) if c[key]}

    @classmethod
    def basis(cls, k: int, l: int, coeff: int = 1) -> "AbKerG":
        return cls({(k, l): coeff})

    def items(self):
        return self._c.items()

    def __getitem__(self, key):
        return self._c.get(tuple(key), 0)

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, AbKerG):
            return self._c == other._c
        if isinstance(other, Mapping):
            return self == AbKerG(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._c.items()))

    def __add__(self, other: "AbKerG") -> "AbKerG":
        return AbKerG(list(self._c.items()) + list(other._c.items()))

    def __neg__(self) -> "AbKerG":
        return AbKerG({key: -v for key, v in self._c.items()})

    def __sub__(self, other: "AbKerG") -> "AbKerG":
        return self + (-other)

    def __rmul__(self, n: int) -> "AbKerG":
        return AbKerG({key: n * v for key, v in self._c.items()})

    def map_basis(self, f) -> "AbKerG":
        """Extend ``f: (k, l) -> AbKerG`` linearly."""
        acc: list = []
        for key, c in self._c.items():
            acc.extend((k2, c * v) for k2, v in f(*key).items())
        return AbKerG(acc)

    def total(self) -> int:
        return sum(self._c.values())

    def to_json(self) -> str:
        return json.dumps([{"k": k, "l": l, "c": c} for (k, l), c in self._c.items()])

    @classmethod
    def from_json(cls, text: str) -> "AbKerG":
        return cls({(d["k"], d["l"]): d["c"] for d in json.loads(text)})

    def __repr__(self):
        return f"AbKerG({self._c!r})"


ZERO = AbKerG()


# -- membership, Reidemeister-Schreier ----------------------------------------

def in_kerg(w: FreeWord) -> bool:
    return g_word(w) == ONE


def _require_kernel(w: FreeWord) -> None:
    g = g_word(w)
    if g != ONE:
        raise NotInKernel(f"word {w} is not in ker g: g = ({g.m},{g.n})", g_value=g)


class GammaGen(NamedTuple):
    k: int
    l: int
    exp: int = 1


def gamma_word(k: int, l: int) -> FreeWord:
    """Γ[k,l] = v^k u^l v u^l v^(-k-1)."""
    return FreeWord(((V, k), (U, l), (V, 1), (U, l), (V, -k - 1)))


def rs_rewrite(w: FreeWord) -> list[GammaGen]:
    """Rewrite w ∈ ker g as a product of Schreier generators Γ[k,l]^±1."""
    _require_kernel(w)
    out: list[GammaGen] = []
    k = l = 0
    for x, e in w.syllables:
        if x == U:
            l += e
            continue
        for _ in range(abs(e)):
            if e > 0:
                if l:
                    out.append(GammaGen(k, l, 1))
                k, l = k + 1, -l
            else:
                if l:
                    out.append(GammaGen(k - 1, -l, -1))
                k, l = k - 1, -l
    assert (k, l) == (0, 0)
    return out


def gamma_product(gens: Iterable[GammaGen]) -> FreeWord:
    result = FreeWord.identity()
    for g in gens:
        result = result * gamma_word(g.k, g.l) ** g.exp
    return result


def gamma_to_b(g: GammaGen) -> BBasisWord:
    k, l = g.k, g.l
    if l >= 1:
        word = BBasisWord(((k, l - i), 1) for i in range(1, l + 1))
    elif l <= -1:
        word = BBasisWord(((k, l - 1 + i), -1) for i in range(1, -l + 1))
    else:
        raise ValueError("Γ[k,0] is trivial and not a generator")
    return word ** g.exp


def b_to_gamma(k: int, l: int) -> list[GammaGen]:
    """B[k,l] = Γ[k,l+1] Γ[k,l]^-1, dropping trivial Γ[k,0]."""
    out = []
    if l + 1:
        out.append(GammaGen(k, l + 1, 1))
    if l:
        out.append(GammaGen(k, l, -1))
    return out


def to_b_basis(w: FreeWord) -> BBasisWord:
    syls: list = []
    for g in rs_rewrite(w):
        syls.extend(gamma_to_b(g).syllables)
    return BBasisWord(syls)


def from_b_basis(bw: BBasisWord) -> FreeWord:
    result = FreeWord.identity()
    for (k, l), e in bw.syllables:
        result = result * word_Bkl(k, l) ** e
    return result


def abelianize(bw: BBasisWord) -> AbKerG:
    return AbKerG(bw.syllables)


def abelianize_word(w: FreeWord) -> AbKerG:
    return abelianize(to_b_basis(w))


# -- induced maps on the abelianisation -------------------------------------

def theta_ab(m: int, n: int, x: AbKerG) -> AbKerG:
    e = eps(n)
    return x.map_basis(lambda k, l: {(k, e * l - 2 * delta(k) * m): e})


def rho_ab(x: AbKerG) -> AbKerG:
    return x.map_basis(lambda k, l: {(-k, eps(k + 1) * l): eps(k)})


def c_ab(p: int, q: int, x: AbKerG) -> AbKerG:
    return x.map_basis(lambda k, l: {(k + p, l + eps(k) * q): 1})


def c_pq(p: int, q: int, x: FreeWord) -> FreeWord:
    """x -> v^p u^q x u^-q v^-p on ker g."""
    _require_kernel(x)
    return FreeWord(((V, p), (U, q))).conj(x)


# -- the special words T, I, O, J --------------------------------------------

def special_T(k: int, r: int) -> FreeWord:
    """T[k,r] = u^k (B^ε_r u^-ε_r)^(k ε_r)."""
    if r not in (0, 1):
        raise ValueError("r must be 0 or 1")
    e = eps(r)
    return gen(U, k) * (_B ** e * gen(U, -e)) ** (k * e)


def special_I(k: int) -> FreeWord:
    """I[k] = v^k (v B)^-k."""
    return gen(V, k) * (gen(V) * _B) ** (-k)


def special_O(k: int, l: int) -> FreeWord:
    """O[k,l] = [v^2k, u^l]."""
    return w_commutator(gen(V, 2 * k), gen(U, l))


def special_J(k: int, l: int) -> FreeWord:
    """J[k,l] = v^2k (v u^l)^-2k."""
    return gen(V, 2 * k) * (gen(V) * gen(U, l)) ** (-2 * k)


def closed_T_word(k: int, r: int) -> BBasisWord:
    s = sgn(k)
    # (σ_k + 1)/2 ∈ {0, 1}
    return BBasisWord(((0, k - s * i - r + (s + 1) // 2), s) for i in range(1, s * k + 1))


def closed_I_word(k: int) -> BBasisWord:
    s = sgn(k)
    if not s:
        return BBasisWord.identity()
    inner = BBasisWord(((i + k * (1 - s) // 2, 0), 1) for i in range(1, s * k + 1))
    return inner ** (-s)


def closed_J_word(k: int, l: int) -> BBasisWord:
    if k == 0 or l == 0:
        return BBasisWord.identity()
    e = sgn(l)
    omega = 1 if e == 1 else 0
    ka, la = abs(k), abs(l)
    if k > 0:
        return BBasisWord(
            ((2 * ka - 2 * i + 1, e * j - omega), -e)
            for i in range(1, ka + 1)
            for j in range(1, la + 1)
        )
    inner = BBasisWord(
        ((-2 * i + 1, e * j - omega), -e) for i in range(1, ka + 1) for j in range(1, la + 1)
    )
    return inner.inverse()


def closed_T_ab(k: int, r: int) -> AbKerG:
    s = sgn(k)
    # (σ_k(1 - 2r) - 1)/2 is an integer since σ_k(1-2r) = ±1
    off = (s * (1 - 2 * r) - 1) // 2
    return AbKerG(((0, s * (i + off)), s) for i in range(1, s * k + 1))


def closed_I_ab(k: int) -> AbKerG:
    s = sgn(k)
    return AbKerG(((s * i + (1 - s) // 2, 0), -s) for i in range(1, s * k + 1))


def closed_J_ab(k: int, l: int) -> AbKerG:
    sk, sl = sgn(k), sgn(l)
    return AbKerG(
        ((sk * (2 * i - 1), sl * (j - (1 + sl) // 2)), -sk * sl)
        for i in range(1, sk * k + 1)
        for j in range(1, sl * l + 1)
    )


def closed_O_ab(k: int, l: int) -> AbKerG:
    sk, sl = sgn(k), sgn(l)
    terms: list = []
    for i in range(1, sk * k + 1):
        for j in range(1, sl * l + 1):
            terms.append(((sk * (2 * i - 1), -sl * j + (sl - 1) // 2), sk * sl))
            terms.append(((sk * (2 * i - 1) - 1, sl * j - (1 + sl) // 2), -sk * sl))
    return AbKerG(terms)


# -- explicit conjugators ----------------------------------------------------

def conj_data_theta(m: int, n: int, k: int, l: int):
    """γ and target (k', l', sign) with θ(m,n)(B[k,l]) = γ B[k',l']^sign γ^-1."""
    gamma = theta(m, n, FreeWord(((V, k), (U, l)))) * gen(U, eps(n + 1) * l + 2 * delta(k) * m) * gen(V, -k)
    return gamma, (k, eps(n) * l - 2 * delta(k) * m, eps(n))


def conj_data_rho(k: int, l: int):
    """λ and target with ρ(B[k,l]) = λ B[k',l']^sign λ^-1."""
    lam = rho(FreeWord(((V, k), (U, l)))) * gen(U, eps(k) * l) * gen(V, k)
    return lam, (-k, eps(k + 1) * l, eps(k))


def conj_data_c(p: int, q: int, k: int, l: int):
    """η and target with c_{p,q}(B[k,l]) = η B[k',l'] η^-1."""
    eta = FreeWord(((V, p), (U, q), (V, k), (U, eps(k + 1) * q), (V, -k - p)))
    return eta, (k + p, l + eps(k) * q, 1)


def conj_identity_holds(lhs: FreeWord, conj: FreeWord, target: tuple[int, int, int]) -> bool:
    k, l, s = target
    return in_kerg(conj) and lhs == conj.conj(word_Bkl(k, l) ** s)
