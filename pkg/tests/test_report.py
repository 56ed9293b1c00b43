import json
from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from projhermite.hermite import projective_hermite_constant
from projhermite.number_field import QuadraticField
from projhermite.report import SCHEMA_VERSION, build_report, from_json, rat, to_json, unrat


@pytest.fixture(scope="module")
def text39(k39):
    return to_json(build_report(projective_hermite_constant(k39)))


def test_header(text39):
    d = json.loads(text39)
    assert list(d)[:6] == ["schema_version", "D", "d_K", "h_K", "gamma_p_squared",
                           "gamma_p_display"]
    assert d["schema_version"] == SCHEMA_VERSION
    assert d["gamma_p_squared"] == "13/1" and d["gamma_p_display"] == "sqrt(13/1)"
    # cusps travel in the CLI micro-syntax a+bw/n
    assert d["cusp_reps"] == ["inf", "0+1w/2", "1+1w/2", "1+1w/3"]
    assert d["oracle"] is None


def test_domains_and_forms(text39):
    d = json.loads(text39)
    assert [x["how"] for x in d["domains"]] == ["direct", "direct", "reflect"]
    inf = d["domains"][0]
    assert len(inf["cells"]) == 5 and len(inf["vertices"]) == 13
    assert inf["h_min"] == "1/13"
    assert {x["form"]["b_im"] for x in d["extreme"]} == {"2/13", "-2/13"}
    assert all(x["minimizer"] == [[1, 0], [0, 0]] for x in d["extreme"])


def test_roundtrip(text39):
    r = from_json(text39)
    assert r.gamma_p_squared == 13
    assert r.domains[0].vertices[0][0].__class__ is Fr
    assert to_json(r) == text39


def test_roundtrip_with_oracle():
    from projhermite.hermite import OracleResult

    K = QuadraticField(1)
    t = to_json(build_report(projective_hermite_constant(K),
                             OracleResult(1.4142135, (0.5, 0.5, 0.7), 100, 20)))
    assert to_json(from_json(t)) == t
    assert json.loads(t)["oracle"] == {"grid_n": 100, "k_max": 20, "estimate": 1.4142135}


def test_rejects_other_schema(text39):
    d = json.loads(text39)
    d["schema_version"] = "2"
    with pytest.raises(ValueError):
        from_json(json.dumps(d))


def test_rejects_inconsistent_display(text39):
    d = json.loads(text39)
    d["gamma_p_display"] = "sqrt(12/1)"
    with pytest.raises(ValueError):
        from_json(json.dumps(d))


@given(st.fractions())
def test_rational_strings(q):
    s = rat(q)
    assert "/" in s and unrat(s) == q
