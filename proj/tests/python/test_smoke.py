import os

import pytest

import monk

FIXTURES = os.environ.get("MONK_FIXTURES_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "fixtures"))


def read(name):
    with open(os.path.join(FIXTURES, name)) as f:
        return f.read()


def test_check_derivable():
    out = monk.check(read("groups.thy"), "x:G |- mul(inv(x),x) : G")
    assert out is not None
    assert out.startswith("kernel-derivation 1")


def test_check_underivable():
    assert monk.check(read("counterexample.thy"), "x:A |- x * x : A A") is None


def test_factorize_golden():
    out = monk.factorize(read("groups.thy"), "x:G |- mul(inv(x),x) : G")
    assert out["structural"] == "x:G |- x * x : G G"
    assert out["functional"] == "v1:G v2:G |- mul(inv(v1),v2) : G"


def test_eq_alphabetical():
    thy = read("groups.thy")
    assert monk.eq(thy, "x:G |- inv(x) : G", "y:G |- inv(y) : G")
    assert not monk.eq(thy, "x:G y:G |- mul(x,y) : G", "x:G y:G |- mul(y,x) : G")


def test_normalize_reparses():
    out = monk.normalize(read("groups.thy"), "x:G |- mul(inv(x),x) : G")
    assert out.startswith("kernel-normal 1")
    assert "functional: v1:G v2:G |- mul(inv(v1),v2) : G" in out


def test_model_check():
    thy = read("groups.thy")
    assert monk.model_check(thy, read("z2.model"))["ok"]
    bad = monk.model_check(thy, read("z2_broken.model"))
    assert not bad["ok"]
    assert "inv_r" in bad["report"]


def test_reconstruct():
    assert monk.reconstruct(2, "0111") == "x1 v x2"
    assert monk.reconstruct(1, "00") == "_|_ [dummy: x1]"
    assert monk.reconstruct(2, "0110") is None


def test_prove_check():
    out = monk.prove_check(read("cmi.thy"), read("proofs/comm_sym.prf"))
    assert out == "x:O y:O |- or(y,x) = or(x,y) : O"
    with pytest.raises(ValueError):
        monk.prove_check(read("cmi.thy"), read("proofs/bad_contraction.prf"))


def test_parse_error():
    with pytest.raises(ValueError):
        monk.check(read("groups.thy"), "x:G |- mul( : G")
