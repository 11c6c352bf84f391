"""Smoke tests for the pyaq extension module."""

import json

import pyaq


def test_arith():
    assert pyaq.square_class("-18") == (-1, "2")
    assert pyaq.hilbert_symbol("2", "3", "2") == -1
    assert pyaq.hilbert_symbol("-1", "-1", "oo") == -1
    assert pyaq.splitting_type(5, -1) == "split"
    assert pyaq.splitting_type(2, -1) == "ramified"


def test_forms():
    assert pyaq.is_isotropic("1,-1")
    assert not pyaq.is_isotropic("1,1,1")
    assert not pyaq.is_isotropic("1,-2,-3")
    assert pyaq.isotropic_vector("1,2,-3") == ["1", "1", "1"]
    assert pyaq.isotropic_vector("1,1,1") is None
    w = json.loads(pyaq.witt("1,-1,1,-1"))
    assert w["result"]["witt_index"] == 2
    assert pyaq.represents("1,1", "5") is not None
    assert pyaq.represents("1,1", "3") is None


def test_value_group():
    member = json.loads(pyaq.value_group_membership("1,1", "10"))
    assert member["result"]["outcome"] == "member"
    non = json.loads(pyaq.value_group_membership("1,1", "21"))
    assert non["result"]["outcome"] == "non-member"
    assert non["result"]["obstruction"]["p"] == "3"


def test_normalize():
    rep = json.loads(pyaq.normalize("x1^2 + x2^2 - x3^2 - 1"))
    assert rep["result"]["shape"] == "product"
    assert rep["result"]["psi"] == ["1", "1", "-1"]
    affine = json.loads(pyaq.normalize("x1^2 + x2"))
    assert affine["result"]["shape"] == "full-affine-space"


def test_connected():
    not_conn = json.loads(pyaq.connected("x1^2+x2^2+x3^2-1"))
    assert not_conn["result"]["verdict"] == "not-connected"
    conn = json.loads(pyaq.connected("1,1,1,1,1,1"))
    assert conn["result"]["verdict"] == "connected"
    assert conn["result"]["i1_psi"]["i1"]["exact"] == 2
    qc = json.loads(pyaq.connected("1,1,1", quadratically_closed=True))
    assert qc["result"]["verdict"] == "connected"
    gm = json.loads(pyaq.connected("1,1", quadratically_closed=True))
    assert gm["result"]["gm_type"]


def test_qvt_and_curves():
    no = json.loads(pyaq.qvt("2,3", "t"))
    assert no["result"]["outcome"] == "no"
    assert no["result"]["witness_point_text"] == "t"
    ok = json.loads(pyaq.qvt("1,-1", "(t^2+1)*t"))
    assert ok["result"]["outcome"] == "in-group-up-to-constant"
    good = json.loads(pyaq.good_curve("1,1,1", "(1-t^2)/(1+t^2);2t/(1+t^2);0"))
    assert good["result"]["goodness"]["outcome"] == "in-group-up-to-constant"


def test_pi0():
    rep = json.loads(pyaq.pi0("1,-1,-1"))
    assert rep["result"]["triviality"] == "non-trivial"
    assert rep["result"]["phi"] == ["1", "1"]
    real = json.loads(pyaq.pi0("1,-1,-1", field="R"))
    assert real["result"]["rank"]["value"] == 1


def test_chain_roundtrip():
    rep = json.loads(pyaq.chain("1,1", "1", "10"))
    assert rep["result"]["verified"]
    chain_json = json.dumps(rep["result"]["chain"])
    assert pyaq.verify_chain(chain_json)


def test_connect_points():
    rep = json.loads(pyaq.connect_points("1,1,1", "1,0,0", "0,1,0"))
    assert rep["result"]["outcome"] == "same-class"
    assert len(rep["result"]["hops"]) >= 1


def test_quadratic_fields():
    iso = json.loads(pyaq.is_isotropic_over("1,1", -1))
    assert iso["result"]["outcome"] == "isotropic"
    aniso = json.loads(pyaq.is_isotropic_over("1,1,1", 2))
    assert aniso["result"]["outcome"] == "anisotropic"
    assert aniso["result"]["obstruction"] == "real embeddings"
