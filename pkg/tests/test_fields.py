import random
from fractions import Fraction

import pytest

from carlitz.errors import DivisionByIndistinguishableZero, NotAQthPower
from carlitz.fields import (FieldConfig, LocalElement, ResidueField,
                            _convolve_packed, local_arith, local_norm,
                            local_twist, minimal_irreducible)


# -- residue fields -----------------------------------------------------------

def _poly_eval_table(R):
    """Brute-force multiplication via polynomial arithmetic mod the modulus."""
    p, d, mod = R.p, R.d, R.modulus

    def mul(a, b):
        fa, fb = R.coords(a), R.coords(b)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(fa):
            for j, y in enumerate(fb):
                prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for j in range(d):
                    prod[k - d + j] = (prod[k - d + j] - c * mod[j]) % p
        return R.from_coords(prod[:d])

    return mul


@pytest.mark.parametrize("p,m,e", [(2, 1, 1), (3, 1, 1), (2, 2, 1), (2, 1, 2),
                                   (3, 1, 2), (3, 2, 1), (2, 2, 2), (3, 2, 2)])
def test_residue_arith_against_brute_force(p, m, e):
    # covers all orders up to q^e = 81
    R = ResidueField(p, m, e)
    naive_mul = _poly_eval_table(R)
    for a in R.elements():
        for b in R.elements():
            assert R.mul(a, b) == naive_mul(a, b)
            assert R.add(a, b) == R._digit_add(a, b)
    for a in R.elements():
        if a:
            assert R.mul(a, R.inv(a)) == 1
        assert R.frob_q(a) == R.pow(a, R.q)
        assert R.frob_q_inv(R.frob_q(a)) == a
        assert R.pow_q(a, e) == a  # c^(q^e) = c


def test_frobenius_is_automorphism(cfg9):
    R = cfg9.residue
    for a in range(R.order):
        for b in range(7, R.order, 11):
            assert R.frob_q(R.mul(a, b)) == R.mul(R.frob_q(a), R.frob_q(b))
            assert R.frob_q(R.add(a, b)) == R.add(R.frob_q(a), R.frob_q(b))


def test_minimal_irreducible_is_lex_smallest():
    for p, d in [(2, 2), (2, 3), (3, 2), (5, 2)]:
        mod = minimal_irreducible(p, d)
        # enumerate all monic irreducibles and compare integer encodings
        from carlitz.fields import _is_irreducible
        best = None
        for code in range(p ** d):
            coeffs = []
            c = code
            for _ in range(d):
                coeffs.append(c % p)
                c //= p
            f = tuple(coeffs + [1])
            if _is_irreducible(f, p):
                best = f
                break
        assert mod == best


def test_minimal_irreducible_known_values():
    assert minimal_irreducible(3, 1) == (0, 1)       # x
    assert minimal_irreducible(3, 2) == (1, 0, 1)    # x^2 + 1
    assert minimal_irreducible(2, 2) == (1, 1, 1)    # x^2 + x + 1


# -- config invariants ----------------------------------------------------------

def test_defining_relations(cfg3):
    th, z = cfg3.theta(), cfg3.zeta()
    assert (z ** (cfg3.q - 1)) == -th          # zeta^(q-1) = -theta exactly
    assert local_norm(th).log_q_norm == 1      # |theta| = q
    assert local_norm(th).valuation == -cfg3.ram
    assert local_norm(z).log_q_norm == Fraction(1, cfg3.q - 1)


def test_config_validation():
    with pytest.raises(ValueError):
        FieldConfig(4)            # not prime
    with pytest.raises(ValueError):
        FieldConfig(3, ram=3)     # not a multiple of q-1
    with pytest.raises(ValueError):
        FieldConfig(3, ram=2, default_prec=0)


# -- arithmetic and precision ------------------------------------------------------

def test_local_arith_examples(cfg3):
    th, z = cfg3.theta(), cfg3.zeta()
    assert local_arith("mul", th, local_arith("inv", th)) == cfg3.one()
    assert local_arith("pow", z, cfg3.q - 1) == -th
    geo = local_arith("inv", cfg3.one() - cfg3.pi())
    assert geo.prec == cfg3.default_prec
    assert all(geo.coeff(k) == 1 for k in range(0, 10))


def test_division_by_indistinguishable_zero(cfg3):
    z = cfg3.zero(prec=50)
    with pytest.raises(DivisionByIndistinguishableZero):
        z.inv()
    with pytest.raises(DivisionByIndistinguishableZero):
        cfg3.one() / z


def test_precision_propagation(cfg3):
    a = cfg3.element({1: 1}, prec=5)    # pi + O(pi^5)
    b = cfg3.element({-2: 2}, prec=4)   # -theta-ish + O(pi^4)
    assert (a + b).prec == 4
    assert (a * b).prec == min(5 + (-2), 4 + 1)
    assert (a - a).is_zero_at_prec()
    # division: prec - 2v rule through inv
    c = cfg3.element({-2: 1, 0: 1}, prec=6)
    assert c.inv().prec == 6 - 2 * (-2)


def test_exact_propagation(cfg3):
    th = cfg3.theta()
    assert (th * th + th).is_exact()
    assert th.inv().is_exact()                 # monomial inverse stays exact
    assert not (th + cfg3.one()).inv().is_exact()


def test_inverse_correctness_random(cfg3):
    rng = random.Random(7)
    for _ in range(25):
        support = {rng.randint(-6, 6): rng.randrange(1, 3) for _ in range(4)}
        x = LocalElement(cfg3, support)
        if not x.support:
            continue
        err = x * x.inv() - cfg3.one()
        assert err.is_zero_at_prec()
        assert err.prec >= cfg3.default_prec - 12


# -- ultrametric properties -------------------------------------------------------

def test_ultrametric(cfg3):
    rng = random.Random(3)
    for _ in range(60):
        a = LocalElement(cfg3, {rng.randint(-8, 8): rng.randrange(1, 3)
                                for _ in range(3)})
        b = LocalElement(cfg3, {rng.randint(-8, 8): rng.randrange(1, 3)
                                for _ in range(3)})
        if not a.support or not b.support:
            continue
        na, nb = a.norm_log_q(), b.norm_log_q()
        ns = (a + b).norm_log_q()
        if ns is not None:
            assert ns <= max(na, nb)
        if na != nb:
            assert ns == max(na, nb)
        assert (a * b).norm_log_q() == na + nb


# -- twisting ------------------------------------------------------------------------

def test_twist_basics(cfg3):
    th, z = cfg3.theta(), cfg3.zeta()
    assert local_twist(th, 1) == th ** cfg3.q
    assert local_twist(z, 1) == -th * z        # zeta^q = -theta zeta
    with pytest.raises(NotAQthPower):
        local_twist(th, -1)                    # q does not divide ram


def test_twist_laws(cfg3):
    rng = random.Random(11)
    for _ in range(30):
        a = LocalElement(cfg3, {rng.randint(-5, 5): rng.randrange(1, 3)
                                for _ in range(3)})
        b = LocalElement(cfg3, {rng.randint(-5, 5): rng.randrange(1, 3)
                                for _ in range(3)})
        assert local_twist(a * b, 1) == local_twist(a, 1) * local_twist(b, 1)
        assert local_twist(a + b, 1) == local_twist(a, 1) + local_twist(b, 1)
        assert local_twist(local_twist(a, 1), -1) == a
        if a.support:
            assert local_twist(a, 1).norm_log_q() == cfg3.q * a.norm_log_q()


def test_twist_precision(cfg3):
    a = cfg3.element({0: 1, 2: 2}, prec=10)
    assert a.twist(1).prec == 30
    aa = cfg3.element({0: 1, 3: 2}, prec=10)
    assert aa.twist(1).twist(-1).prec == 10


def test_twist_residue_extension(cfg9):
    # coefficient q-th roots via the residue Frobenius inverse
    R = cfg9.residue
    x = cfg9.element({cfg9.q: 5})
    y = x.twist(-1)
    assert y.twist(1) == x
    assert y.coeff(1) == R.frob_q_inv(5)


# -- norms and zero flags ----------------------------------------------------------

def test_norm_zero_at_precision(cfg3):
    z = cfg3.zero(prec=40)
    info = local_norm(z)
    assert info.is_upper_bound
    assert info.valuation is None
    assert info.log_q_norm == Fraction(-40, cfg3.ram)
    assert local_norm(cfg3.theta()).is_upper_bound is False


# -- packed convolution fast path -----------------------------------------------------

@pytest.mark.parametrize("p", [2, 3, 5])
def test_packed_convolution_matches_naive(p):
    rng = random.Random(5)
    for _ in range(15):
        sa = {rng.randint(-30, 200): rng.randrange(1, p) for _ in range(40)}
        sb = {rng.randint(-30, 200): rng.randrange(1, p) for _ in range(40)}
        for cap in (None, 150):
            packed = _convolve_packed(p, sa, sb, cap)
            naive = {}
            for ea, ca in sa.items():
                for eb, cb in sb.items():
                    e = ea + eb
                    if cap is not None and e >= cap:
                        continue
                    v = (naive.get(e, 0) + ca * cb) % p
                    naive[e] = v
            naive = {k: v for k, v in naive.items() if v}
            assert packed == naive
