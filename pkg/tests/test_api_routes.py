from ovalcodes.constructions import build_Gf
from ovalcodes.lincode import dump_matrix, matrix_to_json


def test_catalog(client):
    response = client.get("/api/opoly/catalog?m=4")
    assert response.status_code == 200
    families = [row["family"] for row in response.get_json()["catalog"]]
    assert "adelaide" in families


def test_catalog_requires_valid_m(client):
    assert client.get("/api/opoly/catalog").status_code == 400
    body = client.get("/api/opoly/catalog?m=1").get_json()
    assert body["kind"] == "FieldError"


def test_verify_opoly(client):
    body = client.get("/api/opoly/verify?family=segre&m=4").get_json()
    verdicts = {c["criterion"]: c["verdict"] for c in body["criteria"]}
    assert verdicts["oval (Segre)"] == "FAIL"
    assert client.get("/api/opoly/verify?family=translation&m=4&h=2").status_code == 400


def test_build_and_analyze(client, gf8, segre3):
    built = client.get("/api/code/build?construction=cf&family=segre&m=3").get_json()
    assert built == matrix_to_json(build_Gf(segre3, gf8))

    response = client.post("/api/code/analyze", json=built)
    assert response.status_code == 200
    report = response.get_json()
    assert report["summary"] == "[9,3,6] NMDS, Griesmer almost-optimal"
    assert report["enumerator"] == "1 + 42z^6 + 126z^7 + 189z^8 + 154z^9"


def test_analyze_rejects_bad_body(client, gf8, segre3):
    assert client.post("/api/code/analyze", data="not json").status_code == 400
    text = dump_matrix(build_Gf(segre3, gf8))
    response = client.post("/api/code/analyze", data=text[:40], content_type="application/json")
    assert response.status_code == 400


def test_analyze_over_budget(app, client):
    app.config["ENUMERATION_BUDGET"] = 64
    built = client.get("/api/code/build?construction=cf&family=segre&m=3").get_json()
    response = client.post("/api/code/analyze", json=built)
    assert response.status_code == 413
    assert response.get_json()["kind"] == "BudgetExceededError"


def test_theorem(client):
    body = client.get("/api/theorem/5.1?family=segre&m=3").get_json()
    assert body["verdict"] == "PASS"
    assert body["pairing"]["primal_words"] == 42


def test_theorem_refused(client):
    response = client.get("/api/theorem/4.1?family=segre&m=4")
    assert response.status_code == 422
    assert "m must be odd" in response.get_json()["error"]


def test_unparsable_query_integers_are_rejected(client):
    for query in ("m=3x", "m=3&modulus=zz", "m=3&alpha=0xq"):
        response = client.get(f"/api/opoly/catalog?{query}")
        assert response.status_code == 400
        assert response.get_json()["kind"] == "ConfigError"
    response = client.get("/api/opoly/verify?family=translation&m=5&h=abc")
    assert response.status_code == 400
    assert "'h'" in response.get_json()["error"]
    assert client.get("/api/opoly/verify?family=adelaide&m=4&beta=1,x").status_code == 400


def test_modulus_override_in_any_base(client):
    for modulus in ("0b1101", "13", "0xd"):
        assert client.get(f"/api/opoly/catalog?m=3&modulus={modulus}").status_code == 200


def test_analyze_rejects_non_integer_generator(client):
    body = {"m": 3, "modulus": 11, "q": 8, "k": 1, "n": 2, "generator": [[1.5, 2]]}
    response = client.post("/api/code/analyze", json=body)
    assert response.status_code == 400
    assert response.get_json()["kind"] == "CodeError"
