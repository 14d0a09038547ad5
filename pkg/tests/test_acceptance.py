"""Acceptance gate: one test group per numbered criterion.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary prints a
PASS/FAIL line per criterion.
"""
import inspect
import itertools
import random
import time

import pytest

import naive
from klein_bu import buc, kerg, p2, pi1k, word
from klein_bu.kerg import AbKerG, BBasisWord, GammaGen
from klein_bu.p2 import P2Elem
from klein_bu.pi1k import HomNormalForm, HomPair, Pi1K


def corpus(n=1000, bound=5, max_factors=12, seed=42):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        factors = [
            (rng.randint(-bound, bound), rng.randint(-bound, bound), rng.choice((-1, 1)))
            for _ in range(rng.randint(0, max_factors))
        ]
        out.append(factors)
    return out


def naive_word_of(factors):
    return naive.mul(*(naive.power(naive.Bkl(k, l), e) for k, l, e in factors))


def naive_b_reduce(factors):
    """Free reduction over the alphabet {B[k,l]}, one letter at a time."""
    out = []
    for k, l, e in factors:
        if out and out[-1] == ((k, l), -e):
            out.pop()
        else:
            out.append(((k, l), e))
    return out


def b_letters(bw: BBasisWord):
    out = []
    for key, e in bw.syllables:
        out.extend([(key, 1 if e > 0 else -1)] * abs(e))
    return out


CORPUS = corpus()


# -- 1 --------------------------------------------------------------------------

@pytest.mark.criterion(1)
def test_basis_round_trip():
    start = time.perf_counter()
    for factors in CORPUS:
        bw = BBasisWord(((k, l), e) for k, l, e in factors)
        w = kerg.from_b_basis(bw)
        assert naive.letters(w) == naive_word_of(factors)
        back = kerg.to_b_basis(w)
        assert b_letters(back) == naive_b_reduce(factors)
        assert kerg.from_b_basis(back) == w
    assert time.perf_counter() - start < 10.0


# -- 2 --------------------------------------------------------------------------

def naive_gamma(k, l):
    return naive.mul(naive.power(naive.V, k), naive.power(naive.U, l), naive.V,
                     naive.power(naive.U, l), naive.power(naive.V, -k - 1))


def gamma_as_b_product(k, l):
    # Γ[k,l] = Π_{i=1}^{l} B[k,l-i] for l >= 1, Π_{i=1}^{-l} B[k,l-1+i]^-1 for l <= -1
    if l >= 1:
        return naive.mul(*(naive.Bkl(k, l - i) for i in range(1, l + 1)))
    return naive.mul(*(naive.inv(naive.Bkl(k, l - 1 + i)) for i in range(1, -l + 1)))


@pytest.mark.criterion(2)
def test_rs_rewrite_reconstructs_corpus():
    for factors in CORPUS:
        w = naive.to_free(naive_word_of(factors))
        gens = kerg.rs_rewrite(w)
        rebuilt = naive.mul(*(naive.power(naive_gamma(g.k, g.l), g.exp) for g in gens))
        assert rebuilt == naive.letters(w)
        for g in gens:
            assert g.l != 0
            assert naive.letters(kerg.from_b_basis(kerg.gamma_to_b(g))) == naive.power(gamma_as_b_product(g.k, g.l), g.exp)


@pytest.mark.criterion(2)
def test_change_of_basis_both_directions():
    for k, l in itertools.product(range(-5, 6), repeat=2):
        if l:
            assert naive.letters(kerg.gamma_word(k, l)) == naive_gamma(k, l)
            assert gamma_as_b_product(k, l) == naive_gamma(k, l)
            expanded = kerg.gamma_to_b(GammaGen(k, l))
            assert naive.letters(kerg.from_b_basis(expanded)) == naive_gamma(k, l)
        # B[k,l] = Γ[k,l+1] Γ[k,l]^-1 with Γ[k,0] = 1
        g_next = naive_gamma(k, l + 1) if l + 1 else ()
        g_here = naive_gamma(k, l) if l else ()
        assert naive.mul(g_next, naive.inv(g_here)) == naive.Bkl(k, l)
        assert naive.letters(kerg.gamma_product(kerg.b_to_gamma(k, l))) == naive.Bkl(k, l)


@pytest.mark.criterion(2)
def test_worked_values_from_the_basis_proof():
    assert naive_gamma(0, 1) == naive.B == naive.Bkl(0, 0)
    assert kerg.rs_rewrite(word.word_B()) == [GammaGen(0, 1, 1)]
    assert kerg.gamma_to_b(GammaGen(0, 1)) == kerg.b_letter(0, 0)
    assert kerg.gamma_to_b(GammaGen(0, 2)) == BBasisWord((((0, 1), 1), ((0, 0), 1)))
    assert kerg.gamma_to_b(GammaGen(0, -1)) == kerg.b_letter(0, -1, -1)
    assert kerg.b_to_gamma(0, 0) == [GammaGen(0, 1, 1)]
    assert kerg.b_to_gamma(0, -1) == [GammaGen(0, -1, -1)]


# -- 3 --------------------------------------------------------------------------

def naive_T(k, r):
    e = naive.eps(r)
    return naive.mul(naive.power(naive.U, k), naive.power(naive.mul(naive.power(naive.B, e), naive.power(naive.U, -e)), k * e))


def naive_I(k):
    return naive.mul(naive.power(naive.V, k), naive.power(naive.mul(naive.V, naive.B), -k))


def naive_J(k, l):
    return naive.mul(naive.power(naive.V, 2 * k), naive.power(naive.mul(naive.V, naive.power(naive.U, l)), -2 * k))


def naive_O(k, l):
    a, b = naive.power(naive.V, 2 * k), naive.power(naive.U, l)
    return naive.mul(a, b, naive.inv(a), naive.inv(b))


def ab_of(letters_):
    return kerg.abelianize_word(naive.to_free(letters_))


@pytest.mark.criterion(3)
def test_word_level_closed_forms():
    for k in range(-6, 7):
        for r in (0, 1):
            assert naive.letters(kerg.from_b_basis(kerg.closed_T_word(k, r))) == naive_T(k, r), (k, r)
        assert naive.letters(kerg.from_b_basis(kerg.closed_I_word(k))) == naive_I(k), k
    for k, l in itertools.product(range(-4, 5), repeat=2):
        assert naive.letters(kerg.from_b_basis(kerg.closed_J_word(k, l))) == naive_J(k, l), (k, l)


@pytest.mark.criterion(3)
def test_abelianized_closed_forms():
    for k, l in itertools.product(range(-6, 7), repeat=2):
        assert kerg.closed_J_ab(k, l) == ab_of(naive_J(k, l)), (k, l)
        assert kerg.closed_O_ab(k, l) == ab_of(naive_O(k, l)), (k, l)
    for k in range(-6, 7):
        assert kerg.closed_I_ab(k) == ab_of(naive_I(k))
        for r in (0, 1):
            assert kerg.closed_T_ab(k, r) == ab_of(naive_T(k, r))


@pytest.mark.criterion(3)
def test_closed_form_worked_values():
    assert kerg.closed_T_word(1, 1) == kerg.b_letter(0, 0)
    assert kerg.closed_J_word(1, 1) == kerg.b_letter(1, 0, -1)
    assert kerg.closed_J_word(1, -1) == kerg.b_letter(1, -1)
    assert kerg.closed_I_ab(1) == {(1, 0): -1}
    assert kerg.closed_O_ab(1, 1) == {(1, -1): 1, (0, 0): -1}
    assert kerg.closed_T_ab(0, 0) == {}
    assert kerg.to_b_basis(kerg.special_O(1, 1)) == BBasisWord((((1, -1), 1), ((0, 0), -1)))


# -- 4 --------------------------------------------------------------------------

def lib(a):
    """Naive (letters, (m, n)) -> P2Elem."""
    return P2Elem(naive.to_free(a[0]), Pi1K(*a[1]))


def nv(a: P2Elem):
    return (naive.letters(a.w), tuple(a.q))


def random_letters(rng, n):
    return naive.reduce_letters((rng.choice("uv"), rng.choice((-1, 1))) for _ in range(n))


@pytest.mark.criterion(4)
def test_theta_action_parity_and_B():
    rng = random.Random(42)
    qs = [(m, n) for m in range(-3, 4) for n in range(-3, 4)]
    for q1 in qs:
        for _ in range(3):
            wl = random_letters(rng, 8)
            fw = naive.to_free(wl)
            assert naive.letters(p2.theta(*q1, fw)) == naive.theta(*q1, wl)
            assert p2.theta(q1[0], q1[1], fw) == p2.theta(q1[0], q1[1] % 2, fw)
            q2 = rng.choice(qs)
            q = naive.kmul(q1, q2)
            assert p2.theta(*q, fw) == p2.theta(*q1, p2.theta(*q2, fw))
        assert naive.letters(p2.theta(*q1, word.word_B())) == naive.power(naive.B, naive.eps(q1[1]))


@pytest.mark.criterion(4)
def test_lsigma_homomorphism_and_square():
    rng = random.Random(42)
    s2 = p2.sigma_sq()
    for _ in range(500):
        a = (random_letters(rng, 8), (rng.randint(-4, 4), rng.randint(-4, 4)))
        b = (random_letters(rng, 8), (rng.randint(-4, 4), rng.randint(-4, 4)))
        la, lb = p2.l_sigma(lib(a)), p2.l_sigma(lib(b))
        assert nv(la) == naive.lsigma(a)
        assert p2.l_sigma(lib(a) * lib(b)) == la * lb
        assert p2.l_sigma(la) == s2 * lib(a) * s2.inverse()
        # l_σ(w; 0, 0) = (ρ(w); g(w))
        assert nv(p2.l_sigma(lib((a[0], (0, 0))))) == (naive.letters(p2.rho(naive.to_free(a[0]))), naive.g(a[0]))


@pytest.mark.criterion(4)
def test_lsigma_closed_forms():
    B = naive.B
    one = ()
    for t in range(-5, 6):
        expect_u = (naive.mul(naive.power(naive.mul(B, naive.inv(naive.U)), t), naive.power(B, -t)), (t, 0))
        assert nv(p2.l_sigma(lib((naive.power(naive.U, t), (0, 0))))) == expect_u
        expect_v = (naive.mul(naive.power(naive.mul(naive.U, naive.V), -t),
                              naive.power(naive.mul(naive.U, B), naive.delta(t))), (0, t))
        assert nv(p2.l_sigma(lib((naive.power(naive.V, t), (0, 0))))) == expect_v
        assert nv(p2.l_sigma(lib((one, (t, 0))))) == (one, (t, 0))
        assert nv(p2.l_sigma(lib((one, (0, t))))) == (naive.power(B, naive.delta(t)), (0, t))
    assert p2.l_sigma(p2.sigma_sq()) == p2.sigma_sq()


# -- 5 --------------------------------------------------------------------------

def gamma_conj(m, n, k, l):
    vkul = naive.mul(naive.power(naive.V, k), naive.power(naive.U, l))
    return naive.mul(naive.theta(m, n, vkul), naive.power(naive.U, naive.eps(n + 1) * l + 2 * naive.delta(k) * m),
                     naive.power(naive.V, -k))


def lambda_conj(k, l):
    vkul = naive.mul(naive.power(naive.V, k), naive.power(naive.U, l))
    return naive.mul(naive.rho(vkul), naive.power(naive.U, naive.eps(k) * l), naive.power(naive.V, k))


def eta_conj(p, q, k, l):
    return naive.mul(naive.power(naive.V, p), naive.power(naive.U, q), naive.power(naive.V, k),
                     naive.power(naive.U, naive.eps(k + 1) * q), naive.power(naive.V, -k - p))


@pytest.mark.criterion(5)
def test_explicit_conjugators():
    R = range(-3, 4)
    for k, l in itertools.product(R, repeat=2):
        bkl = naive.Bkl(k, l)
        lam = lambda_conj(k, l)
        assert naive.g(lam) == (0, 0)
        assert naive.rho(bkl) == naive.conj(lam, naive.power(naive.Bkl(-k, naive.eps(k + 1) * l), naive.eps(k)))
        got_lam, target = kerg.conj_data_rho(k, l)
        assert naive.letters(got_lam) == lam and target == (-k, naive.eps(k + 1) * l, naive.eps(k))
        for m, n in itertools.product(R, repeat=2):
            gam = gamma_conj(m, n, k, l)
            assert naive.g(gam) == (0, 0)
            target = naive.power(naive.Bkl(k, naive.eps(n) * l - 2 * naive.delta(k) * m), naive.eps(n))
            assert naive.theta(m, n, bkl) == naive.conj(gam, target)
            assert naive.letters(kerg.conj_data_theta(m, n, k, l)[0]) == gam
            p, q = m, n
            eta = eta_conj(p, q, k, l)
            assert naive.g(eta) == (0, 0)
            cpq = naive.conj(naive.mul(naive.power(naive.V, p), naive.power(naive.U, q)), bkl)
            assert cpq == naive.conj(eta, naive.Bkl(k + p, l + naive.eps(k) * q))
            assert naive.letters(kerg.conj_data_c(p, q, k, l)[0]) == eta


# -- 6 --------------------------------------------------------------------------

def xi_ref(n1, r2, x: AbKerG) -> int:
    mod = 2 ** (naive.two_adic(r2) + 1)
    return sum(c for (k, l), c in x.items() if k == n1 - 1 and l % mod == 0) % 2


def type4_grid(r_bound=8, mn_bound=3):
    for r2 in range(-r_bound, r_bound + 1):
        if r2 == 0:
            continue
        for r1 in range(0, 2 * r_bound + 1):
            if r1 == 0 or naive.two_adic(r1) > naive.two_adic(r2):
                for m1, n1 in itertools.product(range(-mn_bound, mn_bound + 1), range(-mn_bound, mn_bound + 2)):
                    yield r1, r2, m1, n1


@pytest.mark.criterion(6)
def test_xi_kills_mu_and_nu():
    basis = [(k, l) for k in range(-8, 9) for l in range(-8, 9)]
    for n1 in range(-3, 5):
        for r2 in range(-8, 9):
            if r2 == 0:
                continue
            for k, l in basis:
                assert xi_ref(n1, r2, buc.mu_ab(n1, r2, AbKerG.basis(k, l))) == 0
            for r1 in (0, 2 * r2, 4 * r2, 8):
                if r1 < 0 or (r1 and naive.two_adic(r1) <= naive.two_adic(r2)):
                    continue
                for m1 in (-2, 0, 1, 3):
                    for k, l in basis:
                        assert xi_ref(n1, r2, buc.nu_ab(m1, n1, r1, r2, AbKerG.basis(k, l))) == 0


@pytest.mark.criterion(6)
def test_case_values_of_the_three_words():
    for n1 in range(-5, 7):
        for r2 in range(-8, 9):
            if r2 == 0:
                continue
            d = naive.delta(n1)
            j = xi_ref(n1, r2, kerg.closed_J_ab(n1 - 1, -2 * r2))
            o = xi_ref(n1, r2, kerg.closed_O_ab(n1 - 1, 2 * d * r2))
            t = xi_ref(n1, r2, kerg.closed_T_ab(2 * d * r2, d))
            if n1 % 2 == 0:
                assert (j, o, t) == (1, 0, 0)
            elif n1 == 1:
                assert (j, o, t) == (0, 0, 1)
            else:
                assert (j, o, t) == (0, 1, 0)
            assert buc.xi(n1, r2, kerg.closed_J_ab(n1 - 1, -2 * r2)) == j


@pytest.mark.criterion(6)
def test_obstruction_checks():
    for s in (0, 1):
        for m1, n1 in itertools.product(range(-4, 5), repeat=2):
            assert buc.obstruction_check_type2(s, m1, n1)
    for r1, r2, m1, n1 in type4_grid():
        rhs = buc.rhs_type4(r1, r2, m1, n1)
        assert xi_ref(n1, r2, rhs) == 1
        assert buc.obstruction_check_type4(r1, r2, m1, n1)


# -- 7 --------------------------------------------------------------------------

def witness_grid():
    S = range(0, 4)
    for t in (1, 2, 3):
        for s1, s2 in itertools.product(S, repeat=2):
            yield HomNormalForm(t, s1, s2, i=0)
    for r1 in range(0, 9):
        for r2 in range(-8, 9):
            if r1 == 0 and r2 < 0:
                continue
            for s1, s2 in itertools.product(S, repeat=2):
                yield HomNormalForm(4, s1, s2, r1=r1, r2=r2)


@pytest.mark.criterion(7)
def test_every_non_bu_class_has_a_verified_witness():
    start = time.perf_counter()
    checked = 0
    for nf in witness_grid():
        h = nf.pair()
        if naive.has_bu_direct(tuple(h.f10), tuple(h.f01)):
            continue
        wp = buc.generate_witness(nf)
        assert wp.status is buc.WitnessStatus.GENERATED, nf
        conds = naive.witness_conditions(tuple(h.f10), tuple(h.f01), nv(wp.a), nv(wp.b))
        assert conds == (True, True, True), (nf, str(wp.a), str(wp.b))
        assert buc.verify_witness(h, wp.a, wp.b).ok
        checked += 1
    assert checked > 1500
    assert time.perf_counter() - start < 60.0


# -- 8 --------------------------------------------------------------------------

GRID = [
    ((m1, n1), (m2, n2))
    for m1, n1, m2, n2 in itertools.product(range(-8, 9), range(-6, 7), range(-8, 9), range(-6, 7))
    if naive.commute((m1, n1), (m2, n2))
]


def disagreements():
    bad = []
    for f10, f01 in GRID:
        nf, _ = pi1k.normalize_hom(HomPair(f10, f01))
        if buc.classify(nf).has_bu != naive.has_bu_direct(f10, f01):
            bad.append((f10, f01))
    return bad


@pytest.mark.criterion(8)
def test_classifier_matches_direct_criterion():
    assert len(GRID) > 10000
    assert disagreements() == []


def _source_mutant(old, new):
    src = inspect.getsource(buc.classify)
    assert old in src, old
    ns = dict(vars(buc))
    exec(compile(src.replace(old, new, 1), "<mutant>", "exec"), ns)
    return ns["classify"]


MUTANTS = {
    "delta flipped": ("delta", lambda n: 1 - n % 2),
    "valuation capped at 1": ("val2", lambda t: min(1, (abs(t) & -abs(t)).bit_length() - 1)),
    "valuation replaced by floor log2": ("val2", lambda t: abs(t).bit_length() - 1),
    "strict comparison": ("classify", ("val2(nf.r1) <= val2(nf.r2)", "val2(nf.r1) < val2(nf.r2)")),
    "s1 parity test inverted": ("classify", ("delta(nf.s1) == 0", "delta(nf.s1) == 1")),
    "valuations swapped": ("classify", ("val2(nf.r1) <= val2(nf.r2)", "val2(nf.r2) <= val2(nf.r1)")),
}


@pytest.mark.criterion(8)
@pytest.mark.parametrize("name", sorted(MUTANTS))
def test_planted_mutant_is_detected(name, monkeypatch):
    attr, payload = MUTANTS[name]
    if attr == "classify":
        monkeypatch.setattr(buc, "classify", _source_mutant(*payload))
    else:
        monkeypatch.setattr(buc, attr, payload)
    assert disagreements(), f"mutant '{name}' survived"


# -- 9 --------------------------------------------------------------------------

def random_kernel(rng):
    return naive_word_of([(rng.randint(-3, 3), rng.randint(-3, 3), rng.choice((-1, 1)))
                          for _ in range(rng.randint(0, 4))])


@pytest.mark.criterion(9)
def test_decomposed_pair_closed_expressions():
    rng = random.Random(42)
    B, U, V = naive.B, naive.U, naive.V
    P = naive.power
    for _ in range(200):
        a1, a2, b1 = (rng.randint(-3, 3) for _ in range(3))
        m1, n1, m2, n2 = (rng.randint(-3, 3) for _ in range(4))
        x, y = random_kernel(rng), random_kernel(rng)
        a = (naive.mul(P(U, a1), P(V, a2), x), (m1, n1))
        b = (naive.mul(P(U, b1), y), (m2, n2))
        d1, d2, e1 = naive.delta(n1), naive.delta(n2), naive.eps(n1)
        ba = naive.mul(
            P(U, b1), y, P(B, m2 - d2), P(U, a1 * naive.eps(n2)),
            P(naive.mul(P(B, d2), V, P(U, -2 * m2)), a2), P(B, d2 - m2), naive.theta(m2, d2, x),
        )
        alb = naive.mul(
            P(U, a1), P(V, a2), x, P(B, m1 - d1), P(naive.mul(P(B, e1), P(U, -e1)), b1),
            P(B, -e1 * b1 + d1 - m1), naive.theta(m1 + e1 * b1, d1, naive.rho(y)), P(B, d2 * e1),
        )
        A, Bb = lib(a), lib(b)
        assert naive.letters((Bb * A).w) == ba
        assert naive.letters((A * p2.l_sigma(Bb)).w) == alb
