import pytest

from ovalcodes.errors import FieldError, HypothesisError, OvalPolyError
from ovalcodes.lincode import CodeClass
from ovalcodes.verification_service import THEOREMS, VerificationService


def test_list_catalog_rows():
    rows = VerificationService.list_catalog(3)
    families = [row["family"] for row in rows]
    assert "payne" in families
    segre_row = next(row for row in rows if row["family"] == "segre")
    assert segre_row["gf2_coefficients"] is True
    assert segre_row["polynomial"] == "x^6"
    assert segre_row["params"] == {}


def test_list_catalog_rejects_m1():
    with pytest.raises(FieldError):
        VerificationService.list_catalog(1)


def test_verify_opoly_segre_m5_all_pass():
    _, results = VerificationService.verify_opoly("segre", 5)
    assert [r.verdict for r in results] == ["PASS"] * 4
    assert all(r.seconds >= 0 for r in results)


def test_verify_opoly_segre_m4_fails_with_witness():
    _, results = VerificationService.verify_opoly("segre", 4)
    oval = results[0]
    assert oval.verdict == "FAIL"
    assert oval.witness is not None
    assert results[2].verdict == "FAIL"


def test_verify_opoly_translation_gcd_error():
    with pytest.raises(OvalPolyError):
        VerificationService.verify_opoly("translation", 4, {"h": 2})


def test_verify_opoly_skips_slope_above_cap():
    _, results = VerificationService.verify_opoly("translation", 9, {"h": 1})
    slope = next(r for r in results if r.name == "slope")
    assert slope.verdict == "SKIP"
    assert "capped" in slope.note


def test_theorem_4_1_segre_m3():
    result = VerificationService.verify_theorem("4.1", "segre", 3)
    assert result.passed
    assert [c for _, _, c in result.rows()][1:] == [42, 126, 189, 154]
    assert result.closed_form_ok
    assert result.pairing.ok
    assert result.to_json()["verdict"] == "PASS"


def test_theorem_3_1_translation_m4():
    result = VerificationService.verify_theorem("3.1", "translation", 4, {"h": 1})
    assert result.passed
    assert result.report.code_class is CodeClass.NMDS
    assert result.report.distance_optimal is True


def test_theorem_5_1_cherowitzo_m5():
    assert VerificationService.verify_theorem("5.1", "cherowitzo", 5).passed


def test_theorem_refuses_even_m():
    with pytest.raises(HypothesisError, match="m must be odd"):
        VerificationService.verify_theorem("4.1", "segre", 4)


def test_theorem_refuses_coefficients_outside_gf2():
    with pytest.raises(HypothesisError, match="GF\\(2\\)"):
        VerificationService.verify_theorem("5.1", "subiaco", 5)


def test_theorem_refuses_non_oval_and_small_m():
    with pytest.raises(HypothesisError):
        VerificationService.verify_theorem("3.1", "monomial", 3, {"k": 3})
    with pytest.raises(HypothesisError):
        VerificationService.verify_theorem("3.1", "translation", 2, {"h": 1})
    with pytest.raises(HypothesisError):
        VerificationService.verify_theorem("9.9", "segre", 3)


def test_probe_outside_hypotheses():
    # cf assumes odd m; at m = 4 the x^2 code is still built and classified
    result = VerificationService.probe("cf", "translation", 4, {"h": 1})
    assert result["theorem"] == "4.1"
    assert "m must be odd" in result["outside_hypotheses"]
    assert result["affine_root"] is not None
    assert result["report"]["n"] == 17


def test_probe_inside_hypotheses():
    result = VerificationService.probe("cfbar", "segre", 3)
    assert result["outside_hypotheses"] is False
    assert result["summary"].startswith("[10,3,7] NMDS")


def test_theorem_table_is_complete():
    assert set(THEOREMS) == {"3.1", "4.1", "5.1"}
