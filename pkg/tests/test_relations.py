import pytest

from carlitz.analytic import carlitz_action, t_power_coeffs
from carlitz.errors import NotCertified, UnderdeterminedSystem
from carlitz.relations import (FqRat, RelationVector, SearchBounds,
                               certify_relation, evaluate_relation_at_theta,
                               gamma_report, search_relations)
from carlitz.tpoly import TPoly

PREC = 120
T_DEG = 24


@pytest.fixture(scope="module")
def zeta_setup(cfg3):
    bounds = SearchBounds(d_t=1, v_lo=-1, v_hi=0, prec=PREC, t_deg=T_DEG)
    rels = search_relations(cfg3, [cfg3.zeta()], bounds)
    return bounds, rels


def test_zeta_relation_found(cfg3, zeta_setup):
    bounds, rels = zeta_setup
    assert len(rels) == 1
    rel = rels[0]
    z, th = cfg3.zeta(), cfg3.theta()
    # proportional to zeta(t-theta) X_0 - t X_1 - 1
    scale = -rel.slots[0].coeff(0)
    target = [TPoly(cfg3, [(-cfg3.one()) * scale]),
              TPoly(cfg3, [(-(z * th)) * scale, z * scale]),
              TPoly(cfg3, [cfg3.zero(), (-cfg3.one()) * scale])]
    assert list(rel.slots) == target


def test_zeta_relation_certifies_and_evaluates(cfg3, zeta_setup):
    bounds, rels = zeta_setup
    cert = certify_relation(cfg3, rels[0], [cfg3.zeta()], bounds)
    assert cert.certified
    assert cert.prec == 2 * PREC and cert.t_deg == 2 * T_DEG
    ev = evaluate_relation_at_theta(cfg3, rels[0], [cfg3.zeta()],
                                    certification=cert)
    # theta log(zeta) = pitilde: the pitilde and log coefficients are
    # proportional with ratio -1/theta
    assert ev.c_const.is_exact_zero()
    assert ev.artifact_norm is None
    assert (ev.c_pitilde * cfg3.theta() + ev.c_log[0]).is_exact_zero()
    assert ev.identity_residual.is_upper_bound


def test_zeta_gamma_report(cfg3, zeta_setup):
    bounds, rels = zeta_setup
    rep = gamma_report(cfg3, [cfg3.zeta()], bounds, relations=rels)
    assert rep.gamma_dim == 1
    assert rep.kernel_dim == 1
    g = rep.gamma[0]
    assert g.g_const == FqRat((1,), (1,))
    assert g.g_x0 == FqRat((2,), (1,))
    assert g.g_xi == (FqRat((0, 1), (1,)),)
    assert g.f_form == (FqRat((1,), (1,)),)
    assert g.b0 == FqRat((1, 1), (1,))
    assert g.b == (FqRat((1,), (1,)),)
    # f = zeta(t-theta) - 1 exactly
    z, th = cfg3.zeta(), cfg3.theta()
    assert list(g.f_poly) == [-(z * th) - cfg3.one(), z]
    # the engine's certified combination implies |Omega * Upsilon + 1| small:
    # equivalently the relation IS zeta(t-theta)X0 - tX1 - 1 (checked above)


def test_empty_alphas_no_relation(cfg3):
    bounds = SearchBounds(d_t=2, v_lo=-2, v_hi=1, prec=PREC, t_deg=T_DEG)
    rels = search_relations(cfg3, [], bounds)
    assert rels == []
    rels2 = search_relations(
        cfg3, [], SearchBounds(d_t=2, v_lo=-2, v_hi=1, prec=2 * PREC,
                               t_deg=T_DEG))
    assert rels2 == []


def test_module_law_relation(cfg3):
    th = cfg3.theta()
    alpha = th.inv()
    alpha2 = carlitz_action(t_power_coeffs(1), alpha)
    bounds = SearchBounds(d_t=2, v_lo=-2, v_hi=2, prec=PREC, t_deg=T_DEG)
    rep = gamma_report(cfg3, [alpha, alpha2], bounds)
    assert rep.gamma_dim == 2
    assert len(rep.relations) == 1
    ev = rep.evaluated[0]
    assert (ev.c_log[0] + th * ev.c_log[1]).is_exact_zero()
    assert ev.identity_residual.is_upper_bound
    # kernel dim exceeds the module rank: monomial/t-multiplied copies
    assert rep.kernel_dim > 1


def test_independent_pair_empty_kernel(cfg3):
    # doubled-precision protocol on a pair with (empirically) no relations
    alphas = [cfg3.theta().inv(), cfg3.pi()]
    bounds = SearchBounds(d_t=2, v_lo=-2, v_hi=2, prec=PREC, t_deg=T_DEG)
    assert search_relations(cfg3, alphas, bounds) == []
    bounds2 = SearchBounds(d_t=2, v_lo=-2, v_hi=2, prec=2 * PREC, t_deg=T_DEG)
    assert search_relations(cfg3, alphas, bounds2) == []
    rep = gamma_report(cfg3, alphas, bounds)
    assert rep.gamma_dim == 3
    assert rep.relations == ()


def test_gamma_dim_invariant(cfg3):
    # gamma_dim + #relations = r + 1 on the searched instances
    cases = [
        ([cfg3.zeta()], SearchBounds(d_t=1, v_lo=-1, v_hi=0, prec=PREC,
                                     t_deg=T_DEG)),
        ([cfg3.theta().inv(), cfg3.pi()],
         SearchBounds(d_t=2, v_lo=-2, v_hi=2, prec=PREC, t_deg=T_DEG)),
    ]
    for alphas, bounds in cases:
        rep = gamma_report(cfg3, alphas, bounds)
        assert rep.gamma_dim + len(rep.relations) == len(alphas) + 1
        for g in rep.gamma:
            # G(1, 0, ..., 0) = 0 exactly: X0 coefficient is minus the constant
            assert g.g_x0.den == g.g_const.den
            R = cfg3.residue
            assert g.g_x0.num == tuple(R.neg(c) for c in g.g_const.num)


def test_perturbed_relation_not_certified(cfg3, zeta_setup):
    bounds, rels = zeta_setup
    rel = rels[0]
    slots = list(rel.slots)
    slots[0] = slots[0] + TPoly(cfg3, [cfg3.pi()])
    fake = RelationVector(tuple(slots))
    cert = certify_relation(cfg3, fake, [cfg3.zeta()], bounds)
    assert not cert.certified
    with pytest.raises(NotCertified):
        evaluate_relation_at_theta(cfg3, fake, [cfg3.zeta()],
                                   certification=cert)


def test_zero_relation_rejected(cfg3, zeta_setup):
    bounds, _ = zeta_setup
    zero_rel = RelationVector((TPoly.zero(cfg3),) * 3)
    cert = certify_relation(cfg3, zero_rel, [cfg3.zeta()], bounds)
    assert not cert.certified


def test_underdetermined_guard(cfg3):
    bounds = SearchBounds(d_t=8, v_lo=-30, v_hi=30, prec=4, t_deg=2)
    with pytest.raises(UnderdeterminedSystem):
        search_relations(cfg3, [cfg3.zeta()], bounds)


def test_alphas_must_be_exact(cfg3):
    bounds = SearchBounds(d_t=1, v_lo=-1, v_hi=0, prec=PREC, t_deg=T_DEG)
    with pytest.raises(ValueError):
        search_relations(cfg3, [(cfg3.theta() + cfg3.one()).inv()], bounds)


def test_upsilon_identity(cfg3):
    # Upsilon := t L_zeta - zeta(t - theta) satisfies Omega * Upsilon = -1:
    # the series-level content of the recovered torsion relation
    from carlitz.analytic import build_L_alpha, build_omega
    from carlitz.series import TateSeries
    z, th = cfg3.zeta(), cfg3.theta()
    om = build_omega(cfg3, T_DEG, PREC)
    L = build_L_alpha(z, T_DEG, PREC)
    upsilon = L.t_shift(1) - TateSeries.from_poly(
        cfg3, [-(z * th), z], T_DEG)
    resid = om * upsilon + TateSeries.one(cfg3, T_DEG)
    assert resid.is_zero_at_prec()
    assert resid.min_coeff_prec() >= PREC - 3 * cfg3.ram


def test_margin4_keeps_margin2_relations(cfg3, zeta_setup):
    # re-running with margin 4 never loses a relation reported at margin 2
    bounds, rels = zeta_setup
    wide = SearchBounds(d_t=bounds.d_t, v_lo=bounds.v_lo, v_hi=bounds.v_hi,
                        prec=bounds.prec, t_deg=bounds.t_deg, margin=4)
    for rel in rels:
        assert certify_relation(cfg3, rel, [cfg3.zeta()], wide).certified


def test_kernel_monotone_under_refinement(cfg3):
    # spurious-relation hygiene: kernel dimension does not grow when the
    # precision budget is refined
    alphas = [cfg3.zeta()]
    dims = []
    for prec, t_deg in [(60, 12), (PREC, T_DEG), (2 * PREC, 2 * T_DEG)]:
        bounds = SearchBounds(d_t=1, v_lo=-1, v_hi=0, prec=prec, t_deg=t_deg)
        dims.append(len(search_relations(cfg3, alphas, bounds)))
    assert dims[0] >= dims[1] >= dims[2]
    assert dims[2] == 1
