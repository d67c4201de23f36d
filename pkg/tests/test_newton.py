import random
from fractions import Fraction

import pytest

from carlitz.analytic import carlitz_action, carlitz_exp, carlitz_log, t_power_coeffs
from carlitz.errors import ExtensionRequired, IndeterminateValuation
from carlitz.fields import LocalElement
from carlitz.newton import (division_points, newton_polygon, reduce_log,
                            torsion_points)


# -- Newton polygons -----------------------------------------------------------

def test_polygon_big_beta_hand_hull(cfg3):
    # x^q + theta x - beta with val(beta) = -q*ram: by hand the hull is the
    # single segment (0,-6) -> (3,0), slope +2, so roots have valuation -2
    q, ram = cfg3.q, cfg3.ram
    beta = cfg3.monomial(-q * ram)
    coeffs = [-beta, cfg3.theta()] + [cfg3.zero()] * (q - 2) + [cfg3.one()]
    np_ = newton_polygon(coeffs)
    assert np_.ord_zero == 0
    assert np_.vertices == ((0, -q * ram), (q, 0))
    assert len(np_.segments) == 1
    seg = np_.segments[0]
    assert seg.slope == Fraction(ram)
    assert seg.length == q
    # middle coefficient theta lies strictly above the hull


def test_polygon_linear(cfg3):
    a = cfg3.monomial(5, 2)
    np_ = newton_polygon([-a, cfg3.one()])
    assert len(np_.segments) == 1
    assert np_.segments[0].slope == Fraction(-5)
    assert np_.segments[0].length == 1


def test_polygon_torsion_case(cfg3):
    # x^q + theta x: root 0 plus q-1 roots of valuation -ram/(q-1)
    q, ram = cfg3.q, cfg3.ram
    coeffs = [cfg3.zero(), cfg3.theta()] + [cfg3.zero()] * (q - 2) + [cfg3.one()]
    np_ = newton_polygon(coeffs)
    assert np_.ord_zero == 1
    assert len(np_.segments) == 1
    seg = np_.segments[0]
    assert -seg.slope == Fraction(-ram, q - 1)  # root valuation
    assert seg.length == q - 1


def test_polygon_indeterminate(cfg3):
    # an uncertain coefficient sitting on the hull
    coeffs = [cfg3.monomial(-6), cfg3.zero(prec=-4), cfg3.zero(),
              cfg3.one()]
    with pytest.raises(IndeterminateValuation):
        newton_polygon(coeffs)
    with pytest.raises(IndeterminateValuation):
        newton_polygon([cfg3.one(), cfg3.zero(prec=10)])  # leading uncertain


# -- division points ----------------------------------------------------------------

def test_division_points_torsion(cfg3):
    pts = division_points(cfg3.zero(prec=100))
    assert len(pts) == cfg3.q
    vals = sorted(p.val_floor() for p in pts)
    assert vals[0] == -cfg3.ram // (cfg3.q - 1)
    zeta = cfg3.zeta()
    for c in range(1, cfg3.q):
        assert any((p - zeta.scale(c)).is_zero_at_prec() for p in pts)


def test_division_points_forward_oracle(cfg3):
    rng = random.Random(21)
    for _ in range(8):
        x0 = LocalElement(cfg3, {rng.randint(-2, 3): rng.randrange(1, 3),
                                 rng.randint(4, 8): rng.randrange(3)})
        beta = carlitz_action(t_power_coeffs(1), x0).truncate(90)
        roots = division_points(beta)
        assert len(roots) == cfg3.q
        assert any((r - x0).is_zero_at_prec() for r in roots)
        # residuals vanish and pairwise differences are torsion
        zeta = cfg3.zeta()
        for r in roots:
            resid = carlitz_action(t_power_coeffs(1), r) - beta
            assert resid.is_zero_at_prec()
        for i, r in enumerate(roots):
            for s in roots[i + 1:]:
                d = r - s
                assert any((d - zeta.scale(c)).is_zero_at_prec()
                           for c in range(1, cfg3.q))


def test_division_points_extension_required(cfg3):
    # val(beta) = -4 < -3 is outside the log domain and q does not divide -4
    beta = cfg3.theta() ** 2
    with pytest.raises(ExtensionRequired) as info:
        division_points(beta)
    assert info.value.kind == "slope"


def test_division_points_residual_split_failure(cfg4):
    # q = 4 boundary case |beta| = |theta|^(q/(q-1)): the residual is the
    # additive polynomial u^4 + u - bbar, identically constant as a map on
    # F_4 (u^4 = u), so it has no residue root and the root lives upstairs
    beta = cfg4.monomial(-cfg4.q * cfg4.ram // (cfg4.q - 1))
    with pytest.raises(ExtensionRequired) as info:
        division_points(beta)
    assert info.value.kind == "residual"


# -- reduce_log -----------------------------------------------------------------------

def test_reduce_log_already_small(cfg3):
    beta = cfg3.monomial(4)
    res = reduce_log(beta, 80)
    assert res.n == 0
    assert res.alpha == beta.truncate(80)


def test_reduce_log_forward_construction(cfg3):
    alpha0 = (cfg3.theta() ** 2).inv()
    beta = carlitz_action(t_power_coeffs(2), alpha0)
    res = reduce_log(beta.truncate(100))
    assert res.n == 2
    assert res.check_division.is_upper_bound
    assert res.check_exp.is_upper_bound
    diff = res.alpha - alpha0
    assert any((diff - t).is_zero_at_prec() for t in torsion_points(cfg3, 2, 100))


def test_reduce_log_out_of_domain(cfg3):
    # beta = C_{t^2}(theta) has valuation -18; two steps already bring it
    # into the log domain, then the greedy continues to the mirror bound
    beta = carlitz_action(t_power_coeffs(2), cfg3.theta()).truncate(80)
    res = reduce_log(beta)
    assert res.n >= 2
    assert res.alpha.val_floor() > cfg3.q * cfg3.ram // (cfg3.q - 1)
    assert res.check_division.is_upper_bound
    assert res.check_exp.is_upper_bound
    # the exp-side identity holds: exp(theta^n log alpha) = beta
    th_pow = cfg3.theta() ** res.n
    resid = carlitz_exp(th_pow * carlitz_log(res.alpha, 80), 80) - beta
    assert resid.is_zero_at_prec()


def test_reduce_log_rejects_zero(cfg3):
    with pytest.raises(IndeterminateValuation):
        reduce_log(cfg3.zero(prec=40))


def test_torsion_points_structure(cfg3):
    t1 = torsion_points(cfg3, 1, 80)
    assert len(t1) == cfg3.q
    t2 = torsion_points(cfg3, 2, 80)
    assert len(t2) == cfg3.q ** 2
    for p in t2:
        assert carlitz_action(t_power_coeffs(2), p).is_zero_at_prec()
