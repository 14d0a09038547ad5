"""Deterministic replay of every structural identity the engine relies on.

Each suite returns ``(cases_checked, counterexample_or_None)``. Suites look
functions up through their modules at call time so that a patched function
(mutation testing) is actually exercised.
"""
from __future__ import annotations

import itertools
import random
import textwrap
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from . import buc, kerg, p2, pi1k, word
from .kerg import AbKerG, BBasisWord
from .p2 import P2Elem
from .pi1k import HomNormalForm, HomPair, Pi1K
from .word import U, V, FreeWord

DEFAULT_SEED = 42


@dataclass(frozen=True)
class SelftestConfig:
    seed: int = DEFAULT_SEED
    cases: int = 200
    word_len: int = 64
    kl_bound: int = 5
    factors: int = 12
    closed_bound: int = 6
    xi_bound: int = 8
    witness_s: int = 3
    witness_r1: int = 8
    witness_r2: int = 8

    def __post_init__(self):
        if self.cases < 1:
            raise ValueError("cases must be >= 1")
        for name in ("word_len", "kl_bound", "factors", "closed_bound", "xi_bound",
                     "witness_s", "witness_r1", "witness_r2"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


Outcome = tuple[int, Optional[str]]


class _Counter:
    """Count checks and remember the first failure."""

    def __init__(self):
        self.n = 0
        self.failure: Optional[str] = None

    def check(self, ok: bool, what: Callable[[], str]) -> bool:
        self.n += 1
        if not ok and self.failure is None:
            self.failure = what()
        return ok

    @property
    def outcome(self) -> Outcome:
        return self.n, self.failure


# -- random generators ---------------------------------------------------------

def random_letters(rng: random.Random, length: int) -> list[tuple[str, int]]:
    return [(rng.choice((U, V)), rng.choice((-1, 1))) for _ in range(length)]


def random_word(rng: random.Random, max_len: int) -> FreeWord:
    return FreeWord(random_letters(rng, rng.randint(0, max_len)))


def random_pi1k(rng: random.Random, bound: int) -> Pi1K:
    return Pi1K(rng.randint(-bound, bound), rng.randint(-bound, bound))


def random_p2(rng: random.Random, max_len: int, bound: int) -> P2Elem:
    return P2Elem(random_word(rng, max_len), random_pi1k(rng, bound))


def random_b_word(rng: random.Random, kl: int, factors: int) -> BBasisWord:
    n = rng.randint(0, factors)
    return BBasisWord(
        ((rng.randint(-kl, kl), rng.randint(-kl, kl)), rng.choice((-1, 1))) for _ in range(n)
    )


def random_kernel_word(rng: random.Random, kl: int, factors: int) -> FreeWord:
    return kerg.from_b_basis(random_b_word(rng, kl, factors))


def naive_reduce(letters: list[tuple[str, int]]) -> list[tuple[str, int]]:
    """One-letter-at-a-time stack cancellation, independent of ReducedWord."""
    stack: list[tuple[str, int]] = []
    for x, e in letters:
        for _ in range(abs(e)):
            s = 1 if e > 0 else -1
            if stack and stack[-1] == (x, -s):
                stack.pop()
            else:
                stack.append((x, s))
    return stack


def expand(w: FreeWord) -> list[tuple[str, int]]:
    return list(w.letters())


# -- word ----------------------------------------------------------------------

def suite_word(rng: random.Random, cfg: SelftestConfig) -> Outcome:
    c = _Counter()
    for _ in range(cfg.cases):
        stream = [(rng.choice((U, V)), rng.choice((-2, -1, 1, 2))) for _ in range(rng.randint(0, cfg.word_len))]
        w = FreeWord(stream)
        c.check(expand(w) == naive_reduce(stream), lambda: f"reduce({stream}) = {w}")
        c.check(FreeWord(w.syllables) == w, lambda: f"reduction not idempotent on {w}")
    letters = [FreeWord.letter(x, e) for x in (U, V) for e in (1, -1)]
    short = [FreeWord.identity()]
    for n in range(1, 4):
        short += [word.w_mul(word.w_mul(FreeWord.identity(), a), b)
                  for a in letters for b in short if len(b) == n - 1]
    short = list(set(short))
    ident = word.w_identity()
    for a, b, d in itertools.product(short, repeat=3):
        c.check(word.w_mul(word.w_mul(a, b), d) == word.w_mul(a, word.w_mul(b, d)),
                lambda: f"associativity fails on {a}, {b}, {d}")
    for a in short:
        c.check(word.w_mul(a, word.w_inv(a)) == ident and word.w_mul(ident, a) == a,
                lambda: f"inverse/identity fails on {a}")
    for _ in range(cfg.cases):
        iu, iv = random_word(rng, 6), random_word(rng, 6)
        w1, w2 = random_word(rng, 10), random_word(rng, 10)
        c.check(word.apply_endo(iu, iv, w1 * w2) == word.apply_endo(iu, iv, w1) * word.apply_endo(iu, iv, w2),
                lambda: f"apply_endo not multiplicative: u->{iu}, v->{iv}, {w1}, {w2}")
    for k, l in itertools.product(range(-8, 9), repeat=2):
        c.check(word.word_Bkl(k, l) == word.w_conj(FreeWord(((V, k), (U, l))), word.word_B()),
                lambda: f"word_Bkl({k},{l})")
    return c.outcome


# -- pi1k ----------------------------------------------------------------------

def brute_force_conjugator(h: HomPair, nf: HomNormalForm, bound: int = 4) -> Optional[Pi1K]:
    target = nf.pair()
    for p in range(-bound, bound + 1):
        for q in (0, 1):
            cc = Pi1K(p, q)
            if h.conjugate(cc) == target:
                return cc
    return None


def suite_pi1k(rng: random.Random, cfg: SelftestConfig) -> Outcome:
    c = _Counter()
    elems = [Pi1K(m, n) for m in range(-3, 4) for n in range(-3, 4)]
    one = Pi1K(0, 0)
    for a, b in itertools.product(elems, repeat=2):
        c.check(pi1k.k_mul(a, pi1k.k_inv(a)) == one, lambda: f"inverse of {a}")
        for d in elems[::5]:
            c.check(pi1k.k_mul(pi1k.k_mul(a, b), d) == pi1k.k_mul(a, pi1k.k_mul(b, d)),
                    lambda: f"associativity {a} {b} {d}")
        c.check(pi1k.h_iso(pi1k.k_mul(a, b)) == pi1k.k_mul(pi1k.h_iso(a), pi1k.h_iso(b)),
                lambda: f"h_iso not multiplicative on {a}, {b}")
        c.check(pi1k.h_iso_inv(pi1k.h_iso(a)) == a, lambda: f"h_iso inverse on {a}")
    for _ in range(cfg.cases):
        w1, w2 = random_word(rng, 12), random_word(rng, 12)
        c.check(pi1k.g_word(w1 * w2) == pi1k.k_mul(pi1k.g_word(w1), pi1k.g_word(w2)),
                lambda: f"g not multiplicative on {w1}, {w2}")
    for a, b in itertools.product(elems, repeat=2):
        if not pi1k.commutes(a, b):
            continue
        h = HomPair(a, b)
        nf, conj = pi1k.normalize_hom(h)
        c.check(h.conjugate(conj) == nf.pair(), lambda: f"conjugator {conj} does not normalize {h}")
        nf2, conj2 = pi1k.normalize_hom(nf.pair())
        c.check(nf2 == nf and conj2 == one, lambda: f"normalize not idempotent on {nf}")
        c.check(brute_force_conjugator(h, nf) is not None, lambda: f"no small conjugator for {h}")
    for s1, s2 in itertools.product(range(-3, 4), repeat=2):
        nf = HomNormalForm(1, s1, s2, i=0)
        img = HomPair(pi1k.h_iso(nf.pair().f10), pi1k.h_iso(nf.pair().f01))
        got, _ = pi1k.normalize_hom(img)
        c.check(got == HomNormalForm(1, s1, s2, i=1), lambda: f"h_iso moves {nf} to {got}")
    return c.outcome


# -- p2 ------------------------------------------------------------------------

def suite_p2(rng: random.Random, cfg: SelftestConfig) -> Outcome:
    c = _Counter()
    B = word.word_B()
    for _ in range(cfg.cases):
        q1, q2 = random_pi1k(rng, 4), random_pi1k(rng, 4)
        w = random_word(rng, 10)
        q = q1 * q2
        c.check(p2.theta(q.m, q.n, w) == p2.theta(q1.m, q1.n, p2.theta(q2.m, q2.n, w)),
                lambda: f"θ not an action: q1={q1}, q2={q2}, w={w}")
        c.check(p2.theta(q1.m, q1.n, w) == p2.theta(q1.m, word.delta(q1.n), w),
                lambda: f"θ({q1.m},{q1.n}) depends on more than the parity of n, w={w}")
        c.check(p2.theta(q1.m, q1.n, B) == B ** word.eps(q1.n), lambda: f"θ{q1}(B) != B^ε")
    for _ in range(cfg.cases):
        a, b, d = (random_p2(rng, 6, 3) for _ in range(3))
        c.check((a * b) * d == a * (b * d), lambda: f"P2 associativity {a} {b} {d}")
        c.check(a * a.inverse() == p2.IDENTITY and p2.IDENTITY * a == a, lambda: f"P2 inverse {a}")
        c.check(p2.l_sigma(a * b) == p2.l_sigma(a) * p2.l_sigma(b),
                lambda: f"l_σ not multiplicative on {a}, {b}")
        s2 = p2.sigma_sq()
        c.check(p2.l_sigma(p2.l_sigma(a)) == s2 * a * s2.inverse(), lambda: f"l_σ² != conj by σ² on {a}")
        w = random_word(rng, 10)
        c.check(p2.l_sigma(p2.iota(w)) == P2Elem(p2.rho(w), pi1k.g_word(w)), lambda: f"l_σ(w;0,0) != (ρ(w); g(w)) for {w}")
        x = random_kernel_word(rng, 3, 4)
        c.check(p2.rho(x * w) == p2.rho(x) * p2.rho(w), lambda: f"ρ(xw) != ρ(x)ρ(w) for x={x}")
        c.check(p2.p1_sharp(p2.l_sigma(p2.iota(x))) == Pi1K(0, 0), lambda: f"l_σ(x) not in ker p1 for {x}")
    one = FreeWord.identity()
    for t in range(-5, 6):
        lu = p2.l_sigma(p2.iota(word.gen(U, t)))
        c.check(lu == P2Elem((B * word.gen(U, -1)) ** t * B ** (-t), Pi1K(t, 0)), lambda: f"l_σ(u^{t})")
        lv = p2.l_sigma(p2.iota(word.gen(V, t)))
        expect = (word.gen(U) * word.gen(V)) ** (-t) * (word.gen(U) * B) ** word.delta(t)
        c.check(lv == P2Elem(expect, Pi1K(0, t)), lambda: f"l_σ(v^{t})")
        c.check(p2.l_sigma(P2Elem(one, Pi1K(t, 0))) == P2Elem(one, Pi1K(t, 0)), lambda: f"l_σ(1;{t},0)")
        c.check(p2.l_sigma(P2Elem(one, Pi1K(0, t))) == P2Elem(B ** word.delta(t), Pi1K(0, t)), lambda: f"l_σ(1;0,{t})")
    c.check(p2.l_sigma(p2.sigma_sq()) == p2.sigma_sq(), lambda: "l_σ(σ²) != σ²")
    return c.outcome


# -- kerg ----------------------------------------------------------------------

def suite_kerg(rng: random.Random, cfg: SelftestConfig) -> Outcome:
    c = _Counter()
    for _ in range(cfg.cases):
        bw = random_b_word(rng, cfg.kl_bound, cfg.factors)
        w = kerg.from_b_basis(bw)
        c.check(kerg.to_b_basis(w) == bw, lambda: f"to_b_basis(from_b_basis({bw})) = {kerg.to_b_basis(w)}")
        c.check(kerg.gamma_product(kerg.rs_rewrite(w)) == w, lambda: f"Γ-product does not rebuild {w}")
        m, n = rng.randint(-3, 3), rng.randint(-3, 3)
        p, q = rng.randint(-3, 3), rng.randint(-3, 3)
        ab = kerg.abelianize(bw)
        c.check(kerg.theta_ab(m, n, ab) == kerg.abelianize_word(p2.theta(m, n, w)), lambda: f"θ_Ab({m},{n}) on {bw}")
        c.check(kerg.rho_ab(ab) == kerg.abelianize_word(p2.rho(w)), lambda: f"ρ_Ab on {bw}")
        c.check(kerg.c_ab(p, q, ab) == kerg.abelianize_word(kerg.c_pq(p, q, w)), lambda: f"c_Ab({p},{q}) on {bw}")
    for k, l in itertools.product(range(-cfg.kl_bound, cfg.kl_bound + 1), repeat=2):
        gw = kerg.b_to_gamma(k, l)
        c.check(kerg.gamma_product(gw) == word.word_Bkl(k, l), lambda: f"B[{k},{l}] != Γ[k,l+1]Γ[k,l]^-1")
        if l:
            g = kerg.GammaGen(k, l)
            c.check(kerg.from_b_basis(kerg.gamma_to_b(g)) == kerg.gamma_word(k, l), lambda: f"Γ[{k},{l}] expansion")
    cb = cfg.closed_bound
    for k in range(-cb, cb + 1):
        for r in (0, 1):
            c.check(kerg.from_b_basis(kerg.closed_T_word(k, r)) == kerg.special_T(k, r), lambda: f"T[{k},{r}] word")
            c.check(kerg.abelianize_word(kerg.special_T(k, r)) == kerg.closed_T_ab(k, r), lambda: f"T~[{k},{r}]")
        c.check(kerg.from_b_basis(kerg.closed_I_word(k)) == kerg.special_I(k), lambda: f"I[{k}] word")
        c.check(kerg.abelianize_word(kerg.special_I(k)) == kerg.closed_I_ab(k), lambda: f"I~[{k}]")
        for l in range(-cb, cb + 1):
            if abs(k) <= 4 and abs(l) <= 4:
                c.check(kerg.from_b_basis(kerg.closed_J_word(k, l)) == kerg.special_J(k, l), lambda: f"J[{k},{l}] word")
            c.check(kerg.abelianize_word(kerg.special_J(k, l)) == kerg.closed_J_ab(k, l), lambda: f"J~[{k},{l}]")
            c.check(kerg.abelianize_word(kerg.special_O(k, l)) == kerg.closed_O_ab(k, l), lambda: f"O~[{k},{l}]")
    R = range(-3, 4)
    for m, n, k, l in itertools.product(R, repeat=4):
        g, t = kerg.conj_data_theta(m, n, k, l)
        c.check(kerg.conj_identity_holds(p2.theta(m, n, word.word_Bkl(k, l)), g, t), lambda: f"γ for θ({m},{n}), B[{k},{l}]")
        g, t = kerg.conj_data_c(m, n, k, l)
        c.check(kerg.conj_identity_holds(kerg.c_pq(m, n, word.word_Bkl(k, l)), g, t), lambda: f"η for c({m},{n}), B[{k},{l}]")
    for k, l in itertools.product(R, repeat=2):
        g, t = kerg.conj_data_rho(k, l)
        c.check(kerg.conj_identity_holds(p2.rho(word.word_Bkl(k, l)), g, t), lambda: f"λ for B[{k},{l}]")
        for m in R:
            for n in (0, 1):
                inv = Pi1K(m, n).inverse()
                xi_ = p2.theta(inv.m, inv.n, FreeWord(((V, k), (U, l))))
                pre = xi_.conj(word.word_B() ** word.eps(n))
                c.check(kerg.in_kerg(pre) and p2.theta(m, n, pre) == word.word_Bkl(k, l),
                        lambda: f"θ({m},{n}) preimage of B[{k},{l}]")
    return c.outcome


# -- buc -----------------------------------------------------------------------

def xi_grid(cfg: SelftestConfig) -> Iterator[tuple[int, int, int, int]]:
    """(n1, r2, m1, r1) with r1 = 0 or e(r1) > e(r2)."""
    for n1 in range(-3, 5):
        for r2 in range(-cfg.witness_r2, cfg.witness_r2 + 1):
            if r2 == 0:
                continue
            for m1 in range(-3, 4):
                for r1 in range(0, cfg.witness_r1 + 1):
                    if r1 == 0 or buc.val2(r1) > buc.val2(r2):
                        yield n1, r2, m1, r1


def witness_grid(cfg: SelftestConfig) -> Iterator[HomNormalForm]:
    S = range(0, cfg.witness_s + 1)
    for t in (1, 2, 3):
        for s1, s2 in itertools.product(S, repeat=2):
            yield HomNormalForm(t, s1, s2, i=0)
    for r1 in range(0, cfg.witness_r1 + 1):
        for r2 in range(-cfg.witness_r2, cfg.witness_r2 + 1):
            if r1 == 0 and r2 < 0:
                continue
            for s1, s2 in itertools.product(S, repeat=2):
                yield HomNormalForm(4, s1, s2, r1=r1, r2=r2)


def suite_buc(rng: random.Random, cfg: SelftestConfig) -> Outcome:
    c = _Counter()
    xb = cfg.xi_bound
    basis = [AbKerG.basis(k, l) for k in range(-xb, xb + 1) for l in range(-xb, xb + 1)]
    seen_mu = set()
    for n1, r2, m1, r1 in xi_grid(cfg):
        if (n1, r2) not in seen_mu:
            seen_mu.add((n1, r2))
            for bkl in basis:
                c.check(buc.xi(n1, r2, buc.mu_ab(n1, r2, bkl)) == 0, lambda: f"ξ∘μ != 0: n1={n1} r2={r2} {bkl}")
        if m1 == 0:
            for bkl in basis:
                c.check(buc.xi(n1, r2, buc.nu_ab(m1, n1, r1, r2, bkl)) == 0,
                        lambda: f"ξ∘ν != 0: m1={m1} n1={n1} r1={r1} r2={r2} {bkl}")
        d = word.delta(n1)
        c.check(buc.xi(n1, r2, kerg.closed_J_ab(n1 - 1, -2 * r2)) == word.delta(n1 + 1),
                lambda: f"ξ(J~) case value at n1={n1} r2={r2}")
        # O~[0, .] vanishes, so the value is 0 at n1 = 1
        c.check(buc.xi(n1, r2, kerg.closed_O_ab(n1 - 1, 2 * d * r2)) == int(d == 1 and n1 != 1),
                lambda: f"ξ(O~) case value at n1={n1} r2={r2}")
        c.check(buc.xi(n1, r2, kerg.closed_T_ab(2 * d * r2, d)) == int(n1 == 1),
                lambda: f"ξ(T~) case value at n1={n1} r2={r2}")
        c.check(buc.obstruction_check_type4(r1, r2, m1, n1), lambda: f"type-4 obstruction silent at {(r1, r2, m1, n1)}")
    # ν on the full m1 range is sampled to keep runtime bounded
    params = list(xi_grid(cfg))
    for _ in range(cfg.cases):
        n1, r2, m1, r1 = rng.choice(params)
        bkl = rng.choice(basis)
        c.check(buc.xi(n1, r2, buc.nu_ab(m1, n1, r1, r2, bkl)) == 0,
                lambda: f"ξ∘ν != 0: m1={m1} n1={n1} r1={r1} r2={r2} {bkl}")
    for s in (0, 1):
        for m1, n1 in itertools.product(range(-4, 5), repeat=2):
            c.check(buc.obstruction_check_type2(s, m1, n1), lambda: f"type-2 obstruction silent at s={s} m1={m1} n1={n1}")
    for r in range(-16, 17):
        if r == 0:
            continue
        mod = 2 ** (buc.val2(r) + 1)
        for off in range(-32, 32):
            cnt = sum(1 for t in range(off, off + 2 * abs(r)) if t % mod == 0)
            c.check(cnt == buc.odd_part(r), lambda: f"window count for r={r} at {off}")
    B = word.word_B()
    for _ in range(cfg.cases):
        a1, a2, b1 = (rng.randint(-3, 3) for _ in range(3))
        m1, n1, m2, n2 = (rng.randint(-3, 3) for _ in range(4))
        x, y = random_kernel_word(rng, 3, 4), random_kernel_word(rng, 3, 4)
        a = P2Elem(word.gen(U, a1) * word.gen(V, a2) * x, Pi1K(m1, n1))
        b = P2Elem(word.gen(U, b1) * y, Pi1K(m2, n2))
        d1, d2, e1 = word.delta(n1), word.delta(n2), word.eps(n1)
        ba = (word.gen(U, b1) * y * B ** (m2 - d2) * word.gen(U, a1 * word.eps(n2))
              * (B ** d2 * word.gen(V) * word.gen(U, -2 * m2)) ** a2 * B ** (d2 - m2) * p2.theta(m2, d2, x))
        alb = (word.gen(U, a1) * word.gen(V, a2) * x * B ** (m1 - d1) * (B ** e1 * word.gen(U, -e1)) ** b1
               * B ** (-e1 * b1 + d1 - m1) * p2.theta(m1 + e1 * b1, d1, p2.rho(y)) * B ** (d2 * e1))
        c.check((b * a).w == ba, lambda: f"p_F(ba) closed form, a={a}, b={b}")
        c.check((a * p2.l_sigma(b)).w == alb, lambda: f"p_F(a l_σ(b)) closed form, a={a}, b={b}")
    for nf in witness_grid(cfg):
        verdict = buc.classify(nf)
        if verdict.has_bu:
            if nf.type_tag == 4:
                for m1, n1 in itertools.product(range(-3, 4), range(-3, 5)):
                    c.check(buc.obstruction_check_type4(nf.r1, nf.r2, m1, n1),
                            lambda: f"BU class {nf.as_dict()} without obstruction at m1={m1} n1={n1}")
            else:
                s = word.delta(nf.s1)
                for m1, n1 in itertools.product(range(-3, 4), range(-3, 5)):
                    c.check(buc.obstruction_check_type2(s, m1, n1),
                            lambda: f"BU class {nf.as_dict()} without obstruction at m1={m1} n1={n1}")
            continue
        wp = buc.generate_witness(nf)
        ok = wp.status is buc.WitnessStatus.GENERATED and buc.verify_witness(nf.pair(), wp.a, wp.b).ok
        c.check(ok, lambda: f"no verified witness for {nf.as_dict()} (status {wp.status.value})")
    return c.outcome


SUITES: list[tuple[str, Callable[[random.Random, SelftestConfig], Outcome]]] = [
    ("word", suite_word),
    ("pi1k", suite_pi1k),
    ("p2", suite_p2),
    ("kerg", suite_kerg),
    ("buc", suite_buc),
]


def run_selftest(cfg: SelftestConfig, out=print) -> int:
    """Run all suites; return the CLI exit code (0 or 3)."""
    failures = []
    out(f"{'suite':<8}{'checks':>10}  status")
    for name, suite in SUITES:
        rng = random.Random(f"{cfg.seed}:{name}")
        try:
            n, failure = suite(rng, cfg)
        except Exception as exc:
            # a broken identity can surface as an error deep inside a check
            n, failure = "-", f"{type(exc).__name__}: {exc}"
        out(f"{name:<8}{n:>10}  {'ok' if failure is None else 'FAIL'}")
        if failure is not None:
            failures.append((name, failure))
    for name, failure in failures:
        out(f"counterexample [{name}]: {textwrap.shorten(failure, 400, placeholder=' ...')}")
    return 3 if failures else 0
