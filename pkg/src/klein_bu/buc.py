"""Borsuk-Ulam classification of [T^2, K^2] for the involution τ1.

A class is *not* BU exactly when there are a, b in P2(K^2) with

    (i)   a l_σ(b) = b a
    (ii)  p1(a l_σ(a)) = α(1,0)
    (iii) p1(b) = α(0,1)

:func:`generate_witness` builds such pairs for every non-BU class with
``i = 0`` and :func:`verify_witness` checks them by plain P2 arithmetic.
The BU-positive direction is an obstruction argument: the mod-2 functionals
:func:`xi` and :func:`xi_all_ones` kill the image of the unknowns but not the
constant term (:func:`rhs_type2`, :func:`rhs_type4`).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import NotInSigma, PreconditionFail, ZeroInput, ZeroR2
from .kerg import AbKerG, closed_I_ab, closed_J_ab, closed_O_ab, closed_T_ab
from .p2 import IDENTITY, P2Elem, l_sigma, sigma_sq
from .pi1k import HomNormalForm, HomPair, Pi1K
from .word import U, V, FreeWord, delta, eps, word_B

_B = word_B()


def val2(t: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if t == 0:
        raise ZeroInput("2-adic valuation of 0 is undefined")
    t = abs(t)
    return (t & -t).bit_length() - 1


def odd_part(r: int) -> int:
    if r == 0:
        raise ZeroInput("odd part of 0 is undefined")
    return abs(r) >> val2(r)


# -- classification ----------------------------------------------------------

class Reason(str, enum.Enum):
    TYPE3 = "Type3"
    TYPE4_ODD_VALUATION = "Type4OddValuation"
    TYPE1 = "NotBU-Type1"
    TYPE2 = "NotBU-Type2"
    TYPE4_EVEN_S1 = "NotBU-Type4-EvenS1"
    TYPE4_VALUATION_FAIL = "NotBU-Type4-ValuationFail"
    TYPE4_ZERO_R2 = "NotBU-Type4-ZeroR2"


@dataclass(frozen=True)
class BUVerdict:
    has_bu: bool
    reason: Reason


def classify(nf: HomNormalForm) -> BUVerdict:
    if nf.type_tag == 3:
        return BUVerdict(True, Reason.TYPE3)
    if nf.type_tag == 1:
        return BUVerdict(False, Reason.TYPE1)
    if nf.type_tag == 2:
        return BUVerdict(False, Reason.TYPE2)
    if delta(nf.s1) == 0:
        return BUVerdict(False, Reason.TYPE4_EVEN_S1)
    if nf.r2 == 0:
        return BUVerdict(False, Reason.TYPE4_ZERO_R2)
    if nf.r1 != 0 and val2(nf.r1) <= val2(nf.r2):
        return BUVerdict(False, Reason.TYPE4_VALUATION_FAIL)
    return BUVerdict(True, Reason.TYPE4_ODD_VALUATION)


# -- witnesses ---------------------------------------------------------------

class WitnessStatus(str, enum.Enum):
    GENERATED = "Generated"
    UNSUPPORTED_I1 = "UnsupportedI1"
    NOT_APPLICABLE_BU = "NotApplicableBU"


@dataclass(frozen=True)
class WitnessPair:
    a: P2Elem | None
    b: P2Elem | None
    status: WitnessStatus
    # the homomorphism the pair is built for; None unless status is GENERATED
    target: HomPair | None = None


@dataclass(frozen=True)
class WitnessReport:
    cond_i: bool
    cond_ii: bool
    cond_iii: bool

    @property
    def ok(self) -> bool:
        return self.cond_i and self.cond_ii and self.cond_iii


def verify_witness(h: HomPair, a: P2Elem, b: P2Elem) -> WitnessReport:
    return WitnessReport(
        cond_i=a * l_sigma(b) == b * a,
        cond_ii=(a * l_sigma(a)).q == h.f10,
        cond_iii=b.q == h.f01,
    )


def in_sigma(rho_: int, gamma_: int, xi_: int, tau_: int) -> bool:
    if rho_ == 0 and xi_ == 0 and gamma_ in (1, 3) and tau_ in (0, 1):
        return True
    if gamma_ == 0 and tau_ == 0 and rho_ >= 0:
        return True
    return (rho_, gamma_, xi_, tau_) == (0, 2, 0, 0)


def sigma_table_witness(rho_: int, gamma_: int, xi_: int, tau_: int) -> WitnessPair:
    """Witness for α(1,0) = (rho_, gamma_), α(0,1) = (xi_, tau_) in the table Σ."""
    if not in_sigma(rho_, gamma_, xi_, tau_):
        raise NotInSigma(f"{(rho_, gamma_, xi_, tau_)} is not in Σ")
    dr, dg = delta(rho_), delta(gamma_)
    w = FreeWord(((U, dr), (V, dg))) * _B ** (dg * (gamma_ - dg) // 2)
    a = P2Elem(w, Pi1K((rho_ - dr) // 2, (gamma_ - dg) // 2))
    b = P2Elem(_B ** (-dr * xi_), Pi1K(xi_, tau_))
    return WitnessPair(a, b, WitnessStatus.GENERATED,
                       HomPair(Pi1K(rho_, gamma_), Pi1K(xi_, tau_)))


def type4_odd_witness(r1: int, r2: int) -> WitnessPair:
    """Witness for α(1,0) = (r1, 2 o(r1)), α(0,1) = (r2, 2m), m = r2 / 2^e(r1).

    Built from c = (u^(2^e(r1)) v^2; 0, 0) as a = (cσ)^o(r1) σ^-1 and
    b = (cσ)^2m, rewritten inside P2 using (cσ)^2 = c l_σ(c) σ².
    """
    if r1 <= 0:
        raise PreconditionFail("type4_odd_witness needs r1 > 0")
    e = val2(r1)
    if r2 != 0 and e > val2(r2):
        raise PreconditionFail(f"needs e(r1) <= e(r2), got e({r1})={e} > e({r2})")
    o = odd_part(r1)
    m = r2 >> e
    c = P2Elem(FreeWord(((U, 2 ** e), (V, 2))), Pi1K(0, 0))
    step = c * l_sigma(c) * sigma_sq()
    a = step ** ((o - 1) // 2) * c
    b = step ** m
    return WitnessPair(a, b, WitnessStatus.GENERATED,
                       HomPair(Pi1K(r1, 2 * o), Pi1K(r2, 2 * m)))


def shift_witness(wp: WitnessPair, k1: int, k2: int) -> WitnessPair:
    """Multiply a and b on the right by the central elements (1; 0, 2k1), (1; 0, 2k2).

    The target moves from (r1, s1), (r2, s2) to (r1, s1 + 4k1), (r2, s2 + 2k2).
    """
    if wp.status is not WitnessStatus.GENERATED:
        raise PreconditionFail("only generated witnesses can be shifted")
    if k1 == 0 and k2 == 0:
        return wp
    a = wp.a * P2Elem.of(m=0, n=2 * k1)
    b = wp.b * P2Elem.of(m=0, n=2 * k2)
    target = None
    if wp.target is not None:
        (m1, n1), (m2, n2) = wp.target.f10, wp.target.f01
        target = HomPair(Pi1K(m1, n1 + 4 * k1), Pi1K(m2, n2 + 2 * k2))
    return WitnessPair(a, b, wp.status, target)


def _shift_to(wp: WitnessPair, want: HomPair) -> WitnessPair:
    have = wp.target
    d1 = want.f10.n - have.f10.n
    d2 = want.f01.n - have.f01.n
    assert d1 % 4 == 0 and d2 % 2 == 0, (have, want)
    return shift_witness(wp, d1 // 4, d2 // 2)


def generate_witness(nf: HomNormalForm) -> WitnessPair:
    if classify(nf).has_bu:
        return WitnessPair(None, None, WitnessStatus.NOT_APPLICABLE_BU)
    if nf.type_tag in (1, 2) and nf.i == 1:
        return WitnessPair(None, None, WitnessStatus.UNSUPPORTED_I1)
    want = nf.pair()
    s1 = nf.s1
    if nf.type_tag == 1:
        base = sigma_table_witness(0, 2 * delta(s1) + 1, 0, 0)
    elif nf.type_tag == 2:
        base = sigma_table_witness(0, 2 * delta(s1) + 1, 0, 1)
    elif delta(s1) == 0:
        base = sigma_table_witness(nf.r1, 0, nf.r2, 0)
    elif nf.r1 > 0:
        base = type4_odd_witness(nf.r1, nf.r2)
    else:
        # r1 = r2 = 0 with s1 odd
        base = sigma_table_witness(0, 2, 0, 0)
    return _shift_to(base, want)


# -- obstruction maps on the abelianisation ---------------------------------

def mu1_ab(m1: int, n1: int, x: AbKerG) -> AbKerG:
    return x.map_basis(lambda k, l: AbKerG([((k, l - 2 * eps(k) * m1), 1), ((k, -l), 1)]))


def mu2_ab(m1: int, n1: int, s: int, x: AbKerG) -> AbKerG:
    if s not in (0, 1):
        raise PreconditionFail("s must be 0 or 1")
    ed = eps(delta(n1))

    def image(k, l):
        return AbKerG([
            ((-k, ed * eps(k + 1) * l + 2 * delta(k) * m1), eps(k) * ed),
            ((k + 2 * n1 - 2 * s, l - 2 * eps(k) * delta(n1 + 1) * m1), -1),
        ])

    return x.map_basis(image)


def mu_ab(n1: int, r2: int, x: AbKerG) -> AbKerG:
    def image(k, l):
        return AbKerG([
            ((k, l + 2 * eps(k) * delta(n1) * r2), 1),
            ((k, l - 2 * delta(k) * r2), -1),
        ])

    return x.map_basis(image)


def nu_ab(m1: int, n1: int, r1: int, r2: int, x: AbKerG) -> AbKerG:
    e1 = eps(n1)

    def image(k, l):
        return AbKerG([
            ((-k, e1 * eps(k + 1) * l - 2 * delta(k) * (m1 + 2 * delta(n1) * r2)), eps(k) * e1),
            ((k + 2 * (n1 - 1), l + eps(k) * (2 * delta(n1 + 1) * m1 - e1 * r1)), -1),
        ])

    return x.map_basis(image)


def rhs_type2(s: int, m1: int, n1: int) -> AbKerG:
    """Constant side of the abelianised equation for α(1,0) = (0,2s), α(0,1) = (0,1)."""
    if s not in (0, 1):
        raise PreconditionFail("s must be 0 or 1")
    d = delta(n1)
    k0 = 2 * n1 - 2 * s
    return (
        closed_I_ab(k0)
        - closed_T_ab(-2 * m1, d)
        - closed_O_ab(n1 - s, -2 * m1)
        + AbKerG([
            ((0, 0), -(m1 + d + eps(n1))),
            ((0, -2 * m1), -(m1 - d)),
            ((k0, -2 * delta(n1 + 1) * m1), -1),
            ((k0, 0), 1),
        ])
    )


def rhs_type4(r1: int, r2: int, m1: int, n1: int) -> AbKerG:
    """Constant side of the abelianised equation for α(1,0) = (r1,2), α(0,1) = (r2,0)."""
    d = delta(n1)
    return (
        closed_J_ab(n1 - 1, -2 * r2)
        - closed_O_ab(n1 - 1, 2 * d * r2)
        - closed_T_ab(2 * d * r2, d)
        + AbKerG([
            ((2 * (n1 - 1), 2 * delta(n1 + 1) * m1 - eps(n1) * r1), r2),
            ((0, 2 * d * r2), -(m1 - d)),
            ((0, 0), -(d * (1 - 2 * r2) - m1 + r2)),
        ])
    )


def xi(n1: int, r2: int, x: AbKerG) -> int:
    """ξ_{n1,r2}: counts (mod 2) the coefficients at B[n1-1, l] with 2^(e(r2)+1) | l."""
    if r2 == 0:
        raise ZeroR2("ξ needs r2 != 0")
    mod = 2 ** (val2(r2) + 1)
    return sum(c for (k, l), c in x.items() if k == n1 - 1 and l % mod == 0) % 2


def xi_all_ones(x: AbKerG) -> int:
    return x.total() % 2


def obstruction_check_type2(s: int, m1: int, n1: int) -> bool:
    return xi_all_ones(rhs_type2(s, m1, n1)) == 1


def obstruction_check_type4(r1: int, r2: int, m1: int, n1: int) -> bool:
    if r2 == 0:
        raise PreconditionFail("needs r2 != 0")
    if r1 < 0 or (r1 != 0 and val2(r1) <= val2(r2)):
        raise PreconditionFail("needs r1 = 0 or e(r1) > e(r2)")
    return xi(n1, r2, rhs_type4(r1, r2, m1, n1)) == 1
