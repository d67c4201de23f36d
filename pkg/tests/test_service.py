import pytest
from fastapi.testclient import TestClient

from carlitz import codec
from carlitz.analytic import pi_tilde
from carlitz.fields import FieldConfig
from carlitz.service import app

CFG = {"p": 3, "m": 1, "e": 1, "ram": 2, "prec": 100, "t_deg": 20, "seed": 0}


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_pitilde_endpoint(client):
    resp = client.post("/pitilde", json={"config": CFG})
    assert resp.status_code == 200
    cfg = FieldConfig(3, ram=2, default_prec=100)
    got = codec.element_from_json(resp.json()["value"], cfg)
    assert (got - pi_tilde(cfg, 100)).is_zero_at_prec()


def test_clog_expression_input(client):
    resp = client.post("/clog", json={"config": CFG, "z": "z"})
    assert resp.status_code == 200
    cfg = FieldConfig(3, ram=2, default_prec=100)
    got = codec.element_from_json(resp.json()["value"], cfg)
    # log_C(zeta) = pitilde / theta
    resid = got * cfg.theta() - pi_tilde(cfg, 100)
    assert resid.is_zero_at_prec()


def test_cexp_wire_format_input(client):
    cfg = FieldConfig(3, ram=2, default_prec=100)
    z = cfg.monomial(2)
    resp = client.post("/cexp", json={"config": CFG,
                                      "z": codec.element_to_json(z)})
    assert resp.status_code == 200


def test_caction_endpoint(client):
    resp = client.post("/caction", json={"config": CFG, "poly": "t", "x": "z"})
    assert resp.status_code == 200
    assert resp.json()["value"]["coeffs"] == []  # C_t(zeta) = 0 exactly
    assert resp.json()["value"]["prec"] is None


def test_omega_and_lalpha_series(client):
    resp = client.post("/omega", json={"config": CFG})
    assert resp.status_code == 200
    assert resp.json()["series"]["tail"]["kind"] == "OMEGA"
    resp = client.post("/lalpha", json={"config": CFG, "z": "z"})
    assert resp.status_code == 200
    assert resp.json()["series"]["tail"]["kind"] == "LALPHA"


def test_reduce_log_endpoint(client):
    resp = client.post("/reduce-log", json={"config": CFG, "z": "th^-2"})
    assert resp.status_code == 200
    assert resp.json()["n"] == 0


def test_verify_targets(client):
    for target in ("omega-fe", "pitilde-link", "torsion-log"):
        resp = client.post("/verify", json={"config": CFG, "target": target})
        assert resp.status_code == 200
        assert resp.json()["passed"] is True
    resp = client.post("/verify", json={"config": CFG, "target": "lalpha-fe",
                                        "alpha": "th^-1"})
    assert resp.status_code == 200
    assert resp.json()["passed"] is True


def test_verify_presentation_payload(client):
    cfg = FieldConfig(3, ram=6, default_prec=80)
    from carlitz.motives import make_carlitz_power
    pres = make_carlitz_power(cfg, 1, 8, 60)
    body = {"config": {**CFG, "ram": 6},
            "presentation": codec.presentation_to_json(pres)}
    resp = client.post("/verify", json=body)
    assert resp.status_code == 200
    assert resp.json()["passed"] is True


def test_relations_endpoint(client):
    resp = client.post("/relations", json={
        "config": CFG, "alphas": ["z"], "d_t": 1, "v_lo": -1, "v_hi": 0})
    assert resp.status_code == 200
    data = resp.json()
    assert data["gamma"]["dim"] == 1
    assert len(data["relations"]) == 1


def test_domain_error_maps_to_422(client):
    # log of theta^2 is outside the convergence domain
    resp = client.post("/clog", json={"config": CFG, "z": "th^2"})
    assert resp.status_code == 422
    assert resp.json()["error"] == "OutsideLogDomain"


def test_extension_required_payload(client):
    resp = client.post("/reduce-log", json={"config": CFG, "z": "th^2"})
    assert resp.status_code == 422
    data = resp.json()
    assert data["error"] == "ExtensionRequired"
    assert data["kind"] == "slope"


def test_syntax_error_maps_to_422(client):
    resp = client.post("/clog", json={"config": CFG, "z": "th $"})
    assert resp.status_code == 422
    assert resp.json()["error"] == "ExprSyntaxError"


def test_bad_config_maps_to_422(client):
    resp = client.post("/clog", json={"config": {**CFG, "p": 4}, "z": "z"})
    assert resp.status_code == 422
    assert resp.json()["error"] == "ValueError"
    resp = client.post("/clog", json={"config": {**CFG, "ram": 3}, "z": "z"})
    assert resp.status_code == 422
