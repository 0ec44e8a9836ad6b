import json
import math

import affgrav


def test_scalar_arithmetic():
    r2 = affgrav.QR2Scalar.sqrt2()
    assert r2 * r2 == affgrav.QR2Scalar(2)
    assert str((affgrav.QR2Scalar(3) + r2).inverse()) == "3/7 - 1/7*sqrt2"
    assert math.isclose(float(r2), math.sqrt(2.0), rel_tol=1e-15)


def test_pipeline_prints_h4():
    p = affgrav.build_pipeline(8)
    assert p.order == 8
    assert p.h.coeffs()[4] == "(-1/10)*k1"
    assert str(p.v[6]) == "(2/315)*k3 + (11/315)*k1*k0"
    assert p.h[4].substitute({1: 1.0}) == -0.1


def test_verify_and_self_test():
    assert affgrav.verify(order=8)["ok"]
    flipped = affgrav.verify(order=8, self_test=True)
    assert not flipped["ok"]
    assert flipped["first_failure"] == "lemma4.leading.f"


def test_gravity_on_fixtures():
    deltas = affgrav.default_deltas()
    par = affgrav.gravity_samples(affgrav.fixture_curve("parabola"), deltas)
    assert affgrav.straightness(par) == (0.0, True)
    lin = affgrav.gravity_samples(affgrav.fixture_curve("kappa-poly:0,1"), deltas)
    fit = affgrav.fit_flatness(lin, 1.0)
    assert abs(fit["b"] + 0.1) <= 0.005


def test_cli_roundtrip():
    code, out, err = affgrav.run_cli(["expand", "--order", "6", "--format", "json"])
    assert code == 0 and err == ""
    assert json.loads(out)["h"]["coeffs"][3] == "(-1/4*sqrt2)*k0"
    code, _, err = affgrav.run_cli(["expand", "--order", "5"])
    assert code == 2 and "minimum" in err
